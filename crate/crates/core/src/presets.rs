//! Constructors for every spectral sequence handled by the engine.

use std::fmt;
use std::str::FromStr;

use crate::coefficients::{CyclicModule, Multiplier, RingContext, VarSet};
use crate::error::{Result, SsError};
use crate::page::{
    shift_page, Alphabet, CellKey, DifferentialRule, Grading, Monomial, Page, SpectralSequence, Summand, Window,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetId {
    HfpssEn,
    TateEn,
    TateEnModIk(u32),
    TateVkinv(u32),
    HossEnModIn,
    HfpssIen,
    PicSs,
}

impl PresetId {
    pub const NAMES: [&'static str; 7] =
        ["hfpss-en", "tate-en", "tate-en-mod-ik", "tate-vkinv", "hoss-en-mod-in", "hfpss-ien", "pic-ss"];

    pub fn name(&self) -> &'static str {
        match self {
            PresetId::HfpssEn => "hfpss-en",
            PresetId::TateEn => "tate-en",
            PresetId::TateEnModIk(_) => "tate-en-mod-ik",
            PresetId::TateVkinv(_) => "tate-vkinv",
            PresetId::HossEnModIn => "hoss-en-mod-in",
            PresetId::HfpssIen => "hfpss-ien",
            PresetId::PicSs => "pic-ss",
        }
    }

    /// Resolves a CLI name; `k` is required by the two parametrized presets.
    pub fn from_name(name: &str, k: Option<u32>) -> Result<Self> {
        let need_k = || k.ok_or_else(|| SsError::BadPreset(format!("{name} needs --k")));
        Ok(match name {
            "hfpss-en" => PresetId::HfpssEn,
            "tate-en" => PresetId::TateEn,
            "tate-en-mod-ik" => PresetId::TateEnModIk(need_k()?),
            "tate-vkinv" => PresetId::TateVkinv(need_k()?),
            "hoss-en-mod-in" => PresetId::HossEnModIn,
            "hfpss-ien" => PresetId::HfpssIen,
            "pic-ss" => PresetId::PicSs,
            _ => return Err(SsError::BadPreset(format!("unknown preset {name}"))),
        })
    }

    pub fn grading(&self) -> Grading {
        match self {
            PresetId::HfpssEn | PresetId::HfpssIen | PresetId::PicSs => Grading::Hfpss,
            PresetId::HossEnModIn => Grading::Hoss,
            _ => Grading::Tate,
        }
    }

    pub fn validate(&self, ctx: &RingContext) -> Result<()> {
        let n = ctx.height();
        match *self {
            PresetId::TateEnModIk(k) if k == 0 || k > n => {
                Err(SsError::BadPreset(format!("tate-en-mod-ik needs 1 <= k <= {n}, got {k}")))
            }
            PresetId::TateVkinv(k) if k >= n => {
                Err(SsError::BadPreset(format!("tate-vkinv needs 0 <= k <= {}, got {k}", n - 1)))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresetId::TateEnModIk(k) | PresetId::TateVkinv(k) => write!(f, "{}(k={k})", self.name()),
            _ => write!(f, "{}", self.name()),
        }
    }
}

impl FromStr for PresetId {
    type Err = SsError;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((name, k)) => {
                let k = k.parse().map_err(|_| SsError::BadPreset(s.to_string()))?;
                PresetId::from_name(name, Some(k))
            }
            None => PresetId::from_name(s, None),
        }
    }
}

/// Internal padding: twice the longest differential length, rounded up.
pub fn padding(ctx: &RingContext) -> i64 {
    1 << (ctx.height() + 2)
}

pub fn period(ctx: &RingContext) -> i64 {
    1 << (ctx.height() + 2)
}

/// Two periods of stems; filtrations suited to the grading.
pub fn default_window(id: PresetId, ctx: &RingContext) -> Window {
    let p = period(ctx);
    let filts = match id.grading() {
        Grading::Tate => (-p / 2, p / 2),
        _ => (0, p),
    };
    let stems = match id {
        PresetId::PicSs => (-1, 2),
        _ => (0, 2 * p),
    };
    Window { stems, filts, ys: (0, 1) }
}

fn pow2(e: u32) -> i64 {
    1i64 << e
}

fn rule(page: i64, alphabet: Alphabet, modulus: i64, residue: i64, delta: [i64; 3], l: u32, prov: String) -> DifferentialRule {
    DifferentialRule {
        page: page as u32,
        alphabet,
        gen: if alphabet == Alphabet::RoHfpss { 1 } else { 0 },
        modulus,
        residue: residue.rem_euclid(modulus),
        delta,
        multiplier: Multiplier::U(l as u8),
        min_source_filt: None,
        provenance: prov,
    }
}

/// `d_{2^{v+2}-1}(u_{2sigma}^{2^v}) = ubar_{v+1} ubar^{2^{v+1}-1} a_sigma^{2^{v+2}-1}`, extended multiplicatively.
pub fn hfpss_rules(ctx: &RingContext) -> Vec<DifferentialRule> {
    (0..ctx.height())
        .map(|v| {
            rule(
                pow2(v + 2) - 1,
                Alphabet::RoHfpss,
                pow2(v + 1),
                pow2(v),
                [pow2(v + 1) - 1, -pow2(v), pow2(v + 2) - 1],
                v + 1,
                format!("hfpss level {}", v + 1),
            )
        })
        .collect()
}

/// Tate rule of level `l` with the given residue on the `u`-exponent.
pub fn tate_rule(l: u32, residue: i64, prov: String) -> DifferentialRule {
    rule(
        pow2(l + 1) - 1,
        Alphabet::Tate,
        pow2(l + 1),
        residue,
        [-pow2(l), pow2(l + 1) - 1, 0],
        l,
        prov,
    )
}

pub fn tate_en_rules(ctx: &RingContext) -> Vec<DifferentialRule> {
    (1..=ctx.height()).map(|l| tate_rule(l, pow2(l), format!("tate-en level {l}"))).collect()
}

/// Families (1) for `l < k` and (2) for `k <= l <= n`.
pub fn mod_ik_rules(ctx: &RingContext, k: u32) -> Vec<DifferentialRule> {
    (1..=ctx.height())
        .map(|l| {
            if l < k {
                tate_rule(l, pow2(l + 1) - 1, format!("mod-I{k} family (1) level {l}"))
            } else {
                tate_rule(l, pow2(l) + pow2(k) - 1, format!("mod-I{k} family (2) level {l}"))
            }
        })
        .collect()
}

pub fn vkinv_rules(k: u32) -> Vec<DifferentialRule> {
    (1..=k).map(|l| tate_rule(l, pow2(l + 1) - 1, format!("v{k}-local level {l}"))).collect()
}

pub fn hoss_rules(ctx: &RingContext) -> Vec<DifferentialRule> {
    (1..=ctx.height())
        .map(|l| {
            rule(
                pow2(l + 1) - 1,
                Alphabet::Hoss,
                pow2(l + 1),
                pow2(l + 1) - 2,
                [-pow2(l), -(pow2(l + 1) - 1), 0],
                l,
                format!("orbit level {l}"),
            )
        })
        .collect()
}

fn base_vector(ctx: &RingContext, divided: VarSet) -> Vec<i32> {
    (1..ctx.height()).map(|v| if divided.contains(v as u8) { -1 } else { 0 }).collect()
}

fn filt_range(w: &Window, grading: Grading) -> std::ops::Range<i64> {
    let lo = grading.min_filt().map_or(w.filts.0, |m| w.filts.0.max(m));
    lo..w.filts.1
}

fn hfpss_page(ctx: &RingContext, window: Window, name: &str) -> Page {
    let padded = window.padded(padding(ctx));
    let mut page = Page::empty(name, ctx.height(), Grading::Hfpss, window, padded);
    let all = ctx.variables();
    let base = base_vector(ctx, VarSet::EMPTY);
    for x in padded.stems.0..padded.stems.1 {
        for c in filt_range(&padded, Grading::Hfpss) {
            for y in padded.ys.0..padded.ys.1 {
                if (x + y + c).rem_euclid(2) != 0 || (x - y - c).rem_euclid(4) != 0 {
                    continue;
                }
                let m = Monomial::ro((x + y + c) / 2, (x - y - c) / 4, c);
                let module =
                    if c == 0 { CyclicModule::witt(all) } else { CyclicModule::mod2(VarSet::EMPTY, all) };
                page.insert(Summand::new(m, module, base.clone()));
            }
        }
    }
    page
}

/// Tate page on `u^e alpha^i` with `e` of the given parity.
fn tate_page(
    ctx: &RingContext,
    window: Window,
    name: &str,
    odd: bool,
    divided_prefix: u8,
    module: CyclicModule,
    base: Vec<i32>,
) -> Page {
    let padded = window.padded(padding(ctx));
    let mut page = Page::empty(name, ctx.height(), Grading::Tate, window, padded);
    for t in padded.stems.0..padded.stems.1 {
        for i in filt_range(&padded, Grading::Tate) {
            if (t - i).rem_euclid(2) != 0 {
                continue;
            }
            let e = (t - i) / 2;
            if (e.rem_euclid(2) == 1) != odd {
                continue;
            }
            page.insert(Summand::new(Monomial::tate(e, i, divided_prefix), module, base.clone()));
        }
    }
    page
}

fn hoss_page(ctx: &RingContext, window: Window) -> Page {
    let padded = window.padded(padding(ctx));
    let n = ctx.height();
    let mut page = Page::empty("hoss-en-mod-in", n, Grading::Hoss, window, padded);
    let all = ctx.variables();
    let base = base_vector(ctx, all);
    for stem in padded.stems.0..padded.stems.1 {
        for s in filt_range(&padded, Grading::Hoss) {
            if (stem + s).rem_euclid(4) != 0 {
                continue;
            }
            let module = if s == 0 { CyclicModule::witt_divided(all) } else { CyclicModule::mod2(all, VarSet::EMPTY) };
            page.insert(Summand::new(Monomial::hoss((stem + s) / 2, s, n as u8), module, base.clone()));
        }
    }
    page
}

pub fn build(id: PresetId, ctx: &RingContext, window: Window) -> Result<SpectralSequence> {
    window.check()?;
    id.validate(ctx)?;
    let n = ctx.height();
    let all = ctx.variables();
    match id {
        PresetId::HfpssEn => SpectralSequence::new(hfpss_page(ctx, window, id.name()), hfpss_rules(ctx)),
        PresetId::TateEn => {
            let page = tate_page(
                ctx,
                window,
                id.name(),
                false,
                0,
                CyclicModule::mod2(VarSet::EMPTY, all),
                base_vector(ctx, VarSet::EMPTY),
            );
            SpectralSequence::new(page, tate_en_rules(ctx))
        }
        PresetId::TateEnModIk(k) => {
            let divided = VarSet::range(1, k);
            let surviving = all.difference(divided);
            let page = tate_page(
                ctx,
                window,
                id.name(),
                true,
                k as u8,
                CyclicModule::mod2(divided, surviving),
                base_vector(ctx, divided),
            );
            SpectralSequence::new(page, mod_ik_rules(ctx, k))
        }
        PresetId::TateVkinv(k) => {
            if k == 0 {
                let page = Page::empty(id.name(), n, Grading::Tate, window, window.padded(padding(ctx)));
                return SpectralSequence::new(page, Vec::new());
            }
            let divided = VarSet::range(1, k);
            let units = VarSet::from_vars(&[k as u8]);
            let surviving = all.difference(divided).difference(units);
            let page = tate_page(
                ctx,
                window,
                id.name(),
                true,
                k as u8,
                CyclicModule::mod2_localized(divided, surviving, units),
                base_vector(ctx, divided),
            );
            SpectralSequence::new(page, vkinv_rules(k))
        }
        PresetId::HossEnModIn => SpectralSequence::new(hoss_page(ctx, window), hoss_rules(ctx)),
        PresetId::HfpssIen => {
            let d = n as i64;
            let hoss_window = Window { stems: (d - window.stems.1 + 1, d - window.stems.0 + 1), ..window };
            let hoss = build(PresetId::HossEnModIn, ctx, hoss_window)?;
            let mut out = hoss.shifted(-d).dualized()?;
            out.e2.preset = id.name().to_string();
            debug_assert_eq!(out.e2.window, window);
            Ok(out)
        }
        PresetId::PicSs => {
            let additive = hfpss_page(ctx, window.shifted(-1), id.name());
            let mut page = shift_page(&additive, 1);
            page.cells.retain(|k, _| k.filt >= 2);
            for (filt, label) in [(0, "H0(Pic)"), (1, "H1(units)")] {
                let key = CellKey::new(0, filt);
                if page.padded.contains(&key) {
                    // placed in additive coordinates, before the stem shift
                    let gen = Monomial::formal(CellKey::new(-1, filt));
                    let mut s = Summand::new(gen, CyclicModule::z2(), base_vector(ctx, VarSet::EMPTY));
                    s.label = label.to_string();
                    page.insert(s);
                }
            }
            let rules = hfpss_rules(ctx)
                .into_iter()
                .map(|mut r| {
                    r.min_source_filt = Some(r.page as i64 + 1);
                    r.provenance = format!("imported {}", r.provenance);
                    r
                })
                .collect();
            SpectralSequence::new(page, rules)
        }
    }
}

/// Closed-form rules of a preset, as stated.
pub fn closed_form_rules(id: PresetId, ctx: &RingContext) -> Vec<DifferentialRule> {
    match id {
        PresetId::HfpssEn => hfpss_rules(ctx),
        PresetId::TateEn => tate_en_rules(ctx),
        PresetId::TateEnModIk(k) => mod_ik_rules(ctx, k),
        PresetId::TateVkinv(k) => vkinv_rules(k),
        PresetId::HossEnModIn => hoss_rules(ctx),
        PresetId::HfpssIen => crate::page::dualize_rules(&hoss_rules(ctx)),
        PresetId::PicSs => hfpss_rules(ctx),
    }
}
