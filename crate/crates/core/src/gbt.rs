//! Differential inference across the fiber sequences
//! `E_n/I_k^inf -> v_k^{-1} E_n/I_k^inf -> E_n/I_{k+1}^inf`.
//!
//! Three rules are implemented, each of which only emits a differential after
//! checking its hypotheses against pages computed by the engine:
//! transport along the connecting map when the middle term vanishes,
//! naturality along a page map, and the eight-class boundary pattern.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coefficients::{Multiplier, RingContext};
use crate::error::{Result, SsError};
use crate::page::{find_rule, leibniz_differential, CellKey, DifferentialRule, Monomial, Page, SpectralSequence, Window};
use crate::presets::{self, PresetId};

/// A class: coefficient monomial `prod u_i^{coeff_i}` times a generator monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassRef {
    pub monomial: Monomial,
    pub coeff: Vec<i32>,
}

impl ClassRef {
    pub fn new(monomial: Monomial, coeff: Vec<i32>) -> Self {
        Self { monomial, coeff }
    }

    fn times_coeff(&self, delta: &[i32]) -> Self {
        let coeff = self.coeff.iter().zip(delta).map(|(a, b)| a + b).collect();
        Self { monomial: self.monomial, coeff }
    }
}

impl fmt::Display for ClassRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.coeff.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "u{}.", i + 1)?,
                _ => write!(f, "u{}^{e}.", i + 1)?,
            }
        }
        write!(f, "{}", self.monomial)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialWitness {
    pub preset: String,
    pub page: u32,
    pub source: ClassRef,
    pub target: ClassRef,
    pub provenance: String,
}

impl fmt::Display for DifferentialWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: d{}({}) = {}", self.preset, self.page, self.source, self.target)
    }
}

/// The eight classes of the boundary pattern and the two page indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GBTWitness {
    pub r: u32,
    pub r_prime: u32,
    pub x: ClassRef,
    pub x_prime: ClassRef,
    pub y1: ClassRef,
    pub y1_prime: ClassRef,
    pub y2: ClassRef,
    pub y2_prime: ClassRef,
    pub z: ClassRef,
    pub z_prime: ClassRef,
}

/// Cell-wise description of a page map on generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellMap {
    Identity,
    /// Inverting `u_k`: classes keep generator and coefficient.
    Localization,
    /// `v_k^{-1} E/I_k -> E/I_{k+1}`: zero unless the `u_k`-exponent is negative.
    Quotient { k: u8 },
    /// `u^e alpha^i / 2 -> u^{e-1} alpha^{i+1}` into the unquotiented Tate page.
    Connecting,
}

impl CellMap {
    pub fn apply(&self, c: &ClassRef) -> Option<ClassRef> {
        match *self {
            CellMap::Identity | CellMap::Localization => Some(c.clone()),
            CellMap::Quotient { k } => {
                if c.coeff[k as usize - 1] >= 0 {
                    return None;
                }
                let m = Monomial { divided: k + 1, ..c.monomial };
                Some(ClassRef::new(m, c.coeff.clone()))
            }
            CellMap::Connecting => {
                let [e, i, _] = c.monomial.exps;
                (c.monomial.divided == 1).then(|| ClassRef::new(Monomial::tate(e - 1, i + 1, 0), c.coeff.clone()))
            }
        }
    }

    pub fn invert_connecting(c: &ClassRef) -> Option<ClassRef> {
        let [e, i, _] = c.monomial.exps;
        (c.monomial.divided == 0 && e.rem_euclid(2) == 0)
            .then(|| ClassRef::new(Monomial::tate(e + 1, i - 1, 1), c.coeff.clone()))
    }

    /// Bidegree change `(stem, filt)` of the map.
    pub fn degree(&self) -> (i64, i64) {
        match self {
            CellMap::Connecting => (-1, 1),
            _ => (0, 0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberSequenceSpec {
    pub k: u32,
    pub x: PresetId,
    pub y: PresetId,
    pub z: PresetId,
    pub i: CellMap,
    pub p: CellMap,
    pub boundary: Option<CellMap>,
}

impl FiberSequenceSpec {
    /// `E_n/I_k -> v_k^{-1}E_n/I_k -> E_n/I_{k+1}`, with `I_0 = 0`.
    pub fn standard(k: u32, ctx: &RingContext) -> Result<Self> {
        if k >= ctx.height() {
            return Err(SsError::BadPreset(format!("fiber sequence index {k} >= height")));
        }
        Ok(Self {
            k,
            x: if k == 0 { PresetId::TateEn } else { PresetId::TateEnModIk(k) },
            y: PresetId::TateVkinv(k),
            z: PresetId::TateEnModIk(k + 1),
            i: CellMap::Localization,
            p: CellMap::Quotient { k: k as u8 },
            boundary: (k == 0).then_some(CellMap::Connecting),
        })
    }
}

/// A spectral sequence with its pages computed once.
#[derive(Debug, Clone)]
pub struct Computed {
    pub id: PresetId,
    pub ss: SpectralSequence,
    pub pages: Vec<Page>,
}

impl Computed {
    pub fn new(id: PresetId, ctx: &RingContext, window: Window, rules: Vec<DifferentialRule>) -> Result<Self> {
        let base = presets::build(id, ctx, window)?;
        let ss = SpectralSequence::new(base.e2, rules)?;
        let pages = ss.pages()?;
        Ok(Self { id, ss, pages })
    }

    pub fn closed_form(id: PresetId, ctx: &RingContext, window: Window) -> Result<Self> {
        Self::new(id, ctx, window, presets::closed_form_rules(id, ctx))
    }

    pub fn page(&self, r: u32) -> &Page {
        let idx = (r.max(2) - 2) as usize;
        &self.pages[idx.min(self.pages.len() - 1)]
    }

    pub fn alive(&self, r: u32, c: &ClassRef) -> bool {
        let p = self.page(r);
        p.find(&c.monomial)
            .is_some_and(|s| !s.tainted && s.module.contains_monomial(&s.base, &c.coeff))
    }

    /// First page on which the class is no longer present, if it dies by page `r`.
    pub fn died_at(&self, r: u32, c: &ClassRef) -> Option<u32> {
        (2..=r).find(|q| !self.alive(*q, c))
    }

    pub fn key(&self, c: &ClassRef) -> CellKey {
        self.pages[0].key_of(&c.monomial)
    }
}

fn reject(msg: String) -> SsError {
    SsError::WitnessRejected(msg)
}

fn multiplier_between(source: &ClassRef, target: &ClassRef, ctx: &RingContext) -> Option<Multiplier> {
    let diff: Vec<i32> = target.coeff.iter().zip(&source.coeff).map(|(t, s)| t - s).collect();
    let nonzero: Vec<_> = diff.iter().enumerate().filter(|(_, d)| **d != 0).collect();
    match nonzero.as_slice() {
        [] => Some(Multiplier::U(ctx.height() as u8)),
        [(i, 1)] => Some(Multiplier::U(*i as u8 + 1)),
        _ => None,
    }
}

/// Checks `d_r(source) = target` against computed pages and the rule set.
pub fn verify_witness(c: &Computed, w: &DifferentialWitness) -> Result<()> {
    let ctx = c.pages[0].ctx();
    for (name, class) in [("source", &w.source), ("target", &w.target)] {
        if let Some(q) = c.died_at(w.page, class) {
            return Err(reject(format!("{w}: {name} {class} is gone on page {q}")));
        }
    }
    let s = c.page(w.page).find(&w.source.monomial).expect("alive implies present");
    let Some((tm, g)) = leibniz_differential(s, w.page, &c.ss.rules) else {
        return Err(reject(format!("{w}: no differential on page {} supports the source", w.page)));
    };
    if tm != w.target.monomial {
        return Err(reject(format!("{w}: rules send the source to {tm}")));
    }
    if multiplier_between(&w.source, &w.target, &ctx) != Some(g) {
        return Err(reject(format!("{w}: coefficient change is not multiplication by {g}")));
    }
    Ok(())
}

/// Transports a differential of `X` back along the connecting map into `Z`.
pub fn apply_connecting(
    fs: &FiberSequenceSpec,
    x: &Computed,
    y: &Computed,
    z: &Computed,
    known: &DifferentialWitness,
) -> Result<DifferentialWitness> {
    let Some(boundary) = fs.boundary else {
        return Err(reject(format!("no connecting map recorded for k={}", fs.k)));
    };
    verify_witness(x, known)?;
    let pre = |c: &ClassRef| {
        let out = CellMap::invert_connecting(c).ok_or_else(|| reject(format!("{c} is not in the image of the connecting map")))?;
        debug_assert_eq!(boundary.apply(&out).as_ref(), Some(c));
        let key = z.key(&out);
        if !y.pages[0].get(&key).is_empty() {
            return Err(reject(format!("middle term is nonzero at {key}; connecting map not invertible")));
        }
        if !z.alive(2, &out) {
            return Err(reject(format!("{out} is zero in {}", z.id)));
        }
        Ok(out)
    };
    let source = pre(&known.source)?;
    let target = pre(&known.target)?;
    Ok(DifferentialWitness {
        preset: z.id.to_string(),
        page: known.page,
        source,
        target,
        provenance: format!("connecting map applied to [{known}]"),
    })
}

/// `d_r f(x) = f(d_r x)`; `dst` need only be computed through earlier pages.
pub fn apply_naturality(f: CellMap, src: &Computed, dst: &Computed, known: &DifferentialWitness) -> Result<DifferentialWitness> {
    verify_witness(src, known)?;
    let image = |c: &ClassRef, name: &str| -> Result<ClassRef> {
        let fc = f.apply(c).ok_or_else(|| reject(format!("{name} {c} maps to zero in {}", dst.id)))?;
        if let Some(q) = dst.died_at(known.page, &fc) {
            return Err(reject(format!("image {fc} of the {name} dies on page {q} in {}", dst.id)));
        }
        Ok(fc)
    };
    let source = image(&known.source, "source")?;
    let target = image(&known.target, "target")?;
    if f == CellMap::Identity {
        return Ok(known.clone());
    }
    Ok(DifferentialWitness {
        preset: dst.id.to_string(),
        page: known.page,
        source,
        target,
        provenance: format!("naturality along {f:?} from [{known}]"),
    })
}

/// Multiplies a witness by a coefficient monomial, checking both ends stay nonzero.
pub fn apply_linearity(c: &Computed, known: &DifferentialWitness, delta: &[i32]) -> Result<DifferentialWitness> {
    verify_witness(c, known)?;
    let out = DifferentialWitness {
        preset: known.preset.clone(),
        page: known.page,
        source: known.source.times_coeff(delta),
        target: known.target.times_coeff(delta),
        provenance: format!("coefficient multiple of [{known}]"),
    };
    verify_witness(c, &out)?;
    Ok(out)
}

fn expect_cell(got: CellKey, want: CellKey, what: &str) -> Result<()> {
    if got != want {
        return Err(reject(format!("{what}: expected {want}, found {got}")));
    }
    Ok(())
}

/// The boundary pattern: from `d_r' x = x'`, `d_r y_j = y_j'`, `i(x) = y1'`,
/// `i(x') = y2'`, `p(y1) = z`, `p(y2) = z'`, conclude `d_r' z = z'`.
pub fn apply_gbt_case3(
    fs: &FiberSequenceSpec,
    x: &Computed,
    y: &Computed,
    z: &Computed,
    w: &GBTWitness,
) -> Result<DifferentialWitness> {
    if w.r >= w.r_prime {
        return Err(reject(format!("need r < r', got {} and {}", w.r, w.r_prime)));
    }
    let d = |page, source: &ClassRef, target: &ClassRef, preset: PresetId| DifferentialWitness {
        preset: preset.to_string(),
        page,
        source: source.clone(),
        target: target.clone(),
        provenance: "hypothesis".into(),
    };
    // degree audit first
    let step = |k: CellKey, r: u32| CellKey::new(k.stem - 1, k.filt + r as i64);
    expect_cell(x.key(&w.x_prime), step(x.key(&w.x), w.r_prime), "|x'|")?;
    expect_cell(y.key(&w.y1_prime), step(y.key(&w.y1), w.r), "|y1'|")?;
    expect_cell(y.key(&w.y2_prime), step(y.key(&w.y2), w.r), "|y2'|")?;
    expect_cell(z.key(&w.z_prime), step(z.key(&w.z), w.r_prime), "|z'|")?;

    verify_witness(x, &d(w.r_prime, &w.x, &w.x_prime, fs.x)).map_err(|e| reject(format!("d_r' x = x': {e}")))?;
    verify_witness(y, &d(w.r, &w.y1, &w.y1_prime, fs.y)).map_err(|e| reject(format!("d_r y1 = y1': {e}")))?;
    verify_witness(y, &d(w.r, &w.y2, &w.y2_prime, fs.y)).map_err(|e| reject(format!("d_r y2 = y2': {e}")))?;
    let maps = [
        ("i(x) = y1'", fs.i, &w.x, &w.y1_prime),
        ("i(x') = y2'", fs.i, &w.x_prime, &w.y2_prime),
        ("p(y1) = z", fs.p, &w.y1, &w.z),
        ("p(y2) = z'", fs.p, &w.y2, &w.z_prime),
    ];
    for (name, f, a, b) in maps {
        if f.apply(a).as_ref() != Some(b) {
            return Err(reject(format!("{name} fails")));
        }
    }
    for (name, c) in [("z", &w.z), ("z'", &w.z_prime)] {
        if let Some(q) = z.died_at(w.r_prime, c) {
            return Err(reject(format!("{name} = {c} is gone on page {q} of {}", z.id)));
        }
    }
    Ok(DifferentialWitness {
        preset: z.id.to_string(),
        page: w.r_prime,
        source: w.z.clone(),
        target: w.z_prime.clone(),
        provenance: format!("boundary pattern with r={}, r'={}", w.r, w.r_prime),
    })
}

/// Turns a single witness into the family obtained by multiplying with powers
/// of `u^{2^{l+1}}` and `alpha`, after checking both are cycles through page `r`
/// in the Tate spectral sequence of `E_n`.
pub fn generalize(w: &DifferentialWitness, tate_en: &Computed, ctx: &RingContext) -> Result<DifferentialRule> {
    let r = w.page;
    if !(r + 1).is_power_of_two() || r < 3 {
        return Err(reject(format!("{w}: page {r} is not of the form 2^(l+1)-1")));
    }
    let modulus = (r + 1) as i64;
    for m in [Monomial::tate(modulus, 0, 0), Monomial::tate(0, 1, 0)] {
        let c = ClassRef::new(m, vec![0; ctx.num_variables()]);
        if tate_en.died_at(r, &c).is_some() || find_rule(&m, r, &tate_en.ss.rules).is_some() {
            return Err(reject(format!("{m} is not a d{r}-cycle; cannot extend {w}")));
        }
    }
    let multiplier = multiplier_between(&w.source, &w.target, ctx)
        .ok_or_else(|| reject(format!("{w}: coefficient change is not a single generator")))?;
    let s = w.source.monomial.exps;
    let t = w.target.monomial.exps;
    Ok(DifferentialRule {
        page: r,
        alphabet: w.source.monomial.alphabet,
        gen: 0,
        modulus,
        residue: s[0].rem_euclid(modulus),
        delta: [t[0] - s[0], t[1] - s[1], t[2] - s[2]],
        multiplier,
        min_source_filt: None,
        provenance: format!("derived from {w}"),
    })
}

/// Window large enough for every class used by the derivation.
pub fn derivation_window(ctx: &RingContext) -> Window {
    let p = presets::period(ctx);
    Window { stems: (-p, 2 * p), filts: (-p, p), ys: (0, 1) }
}

fn unit(ctx: &RingContext, l: u32, e: i32) -> Vec<i32> {
    let mut v = vec![0; ctx.num_variables()];
    if l < ctx.height() {
        v[l as usize - 1] = e;
    }
    v
}

fn with_exp(mut v: Vec<i32>, l: u32, e: i32) -> Vec<i32> {
    v[l as usize - 1] = e;
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivationStep {
    pub preset: String,
    pub level: u32,
    pub method: String,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct Derivation {
    /// Derived rules of `E_n/I_K` keyed by `K`, and of `v_k^{-1}E_n/I_k` keyed by `k`.
    pub mod_ik: BTreeMap<u32, Vec<DifferentialRule>>,
    pub vkinv: BTreeMap<u32, Vec<DifferentialRule>>,
    pub boundary_witnesses: Vec<(u32, GBTWitness)>,
    pub trace: Vec<DerivationStep>,
}

/// The eight classes used for level `l` of `E_n/I_{k+1}`.
pub fn case3_witness(ctx: &RingContext, k: u32, l: u32) -> GBTWitness {
    let base_x: Vec<i32> = (1..ctx.height()).map(|v| if v < k { -1 } else { 0 }).collect();
    let r = (1u32 << (k + 1)) - 1;
    let rp = (1u32 << (l + 1)) - 1;
    let (r64, rp64) = (r as i64, rp as i64);
    let e0 = (1i64 << l) + (1i64 << k) - 1;
    let two_l = 1i64 << l;
    let two_k = 1i64 << k;
    let kd = k as u8;
    let ul = |v: Vec<i32>| {
        let u = unit(ctx, l, 1);
        v.iter().zip(&u).map(|(a, b)| a + b).collect::<Vec<i32>>()
    };
    let base_y = with_exp(base_x.clone(), k, -1);
    let x = ClassRef::new(Monomial::tate(e0, 0, kd), base_x.clone());
    let x_prime = ClassRef::new(Monomial::tate(e0 - two_l, rp64, kd), ul(base_x));
    let y1 = ClassRef::new(Monomial::tate(e0 + two_k, -r64, kd), base_y.clone());
    let y2 = ClassRef::new(Monomial::tate(e0 - two_l + two_k, rp64 - r64, kd), ul(base_y));
    let q = |c: &ClassRef| CellMap::Quotient { k: kd }.apply(c).expect("negative u_k exponent");
    GBTWitness {
        r,
        r_prime: rp,
        z: q(&y1),
        z_prime: q(&y2),
        y1_prime: x.clone(),
        y2_prime: x_prime.clone(),
        x,
        x_prime,
        y1,
        y2,
    }
}

/// Regenerates the differentials of every `E_n/I_K`, `1 <= K <= n`, starting
/// from the Tate spectral sequence of `E_n`.
pub fn derive_all(ctx: &RingContext) -> Result<Derivation> {
    let n = ctx.height();
    let window = derivation_window(ctx);
    let tate_en = Computed::closed_form(PresetId::TateEn, ctx, window)?;
    let mut out = Derivation {
        mod_ik: BTreeMap::new(),
        vkinv: BTreeMap::new(),
        boundary_witnesses: Vec::new(),
        trace: Vec::new(),
    };
    let zero = vec![0; ctx.num_variables()];
    let record = |out: &mut Derivation, w: &DifferentialWitness, level: u32, method: &str| {
        out.trace.push(DerivationStep {
            preset: w.preset.clone(),
            level,
            method: method.to_string(),
            witness: w.to_string(),
        });
    };

    let mut x = tate_en.clone();
    for k in 0..n {
        let fs = FiberSequenceSpec::standard(k, ctx)?;
        let mut y_rules = Vec::new();
        let mut z_rules = Vec::new();
        let y0 = Computed::new(fs.y, ctx, window, Vec::new())?;

        if k == 0 {
            let z0 = Computed::new(fs.z, ctx, window, Vec::new())?;
            for l in 1..=n {
                let rp = (1u32 << (l + 1)) - 1;
                let known = DifferentialWitness {
                    preset: x.id.to_string(),
                    page: rp,
                    source: ClassRef::new(Monomial::tate(1 << l, 1, 0), zero.clone()),
                    target: ClassRef::new(Monomial::tate(0, 1 << (l + 1), 0), unit(ctx, l, 1)),
                    provenance: "differential of E_n".into(),
                };
                let w = apply_connecting(&fs, &x, &y0, &z0, &known)?;
                record(&mut out, &w, l, "connecting");
                z_rules.push(generalize(&w, &tate_en, ctx)?);
            }
        } else {
            // the localized term, by naturality along i
            let mut y = y0;
            let mut y_witnesses = Vec::new();
            for l in 1..=k {
                let rp = (1u32 << (l + 1)) - 1;
                let t = (1i64 << (l + 1)) - 1;
                let src_coeff = if l < k { with_exp(x_base(ctx, k), l, -2) } else { x_base(ctx, k) };
                let tgt_coeff: Vec<i32> = src_coeff.iter().zip(unit(ctx, l, 1)).map(|(a, b)| a + b).collect();
                let known = DifferentialWitness {
                    preset: x.id.to_string(),
                    page: rp,
                    source: ClassRef::new(Monomial::tate(t, 0, k as u8), src_coeff),
                    target: ClassRef::new(Monomial::tate(t - (1 << l), rp as i64, k as u8), tgt_coeff),
                    provenance: format!("derived differential of {}", x.id),
                };
                let w = apply_naturality(fs.i, &x, &y, &known)?;
                record(&mut out, &w, l, "naturality");
                y_rules.push(generalize(&w, &tate_en, ctx)?);
                y = Computed::new(fs.y, ctx, window, y_rules.clone())?;
                y_witnesses.push(w);
            }
            // lower levels of the quotient, by naturality along p
            let mut z = Computed::new(fs.z, ctx, window, Vec::new())?;
            for (idx, w) in y_witnesses.iter().enumerate() {
                let l = idx as u32 + 1;
                let shift = unit(ctx, k, if l < k { -1 } else { -2 });
                let scaled = apply_linearity(&y, w, &shift)?;
                let wz = apply_naturality(fs.p, &y, &z, &scaled)?;
                record(&mut out, &wz, l, "naturality");
                z_rules.push(generalize(&wz, &tate_en, ctx)?);
                z = Computed::new(fs.z, ctx, window, z_rules.clone())?;
            }
            // higher levels, by the boundary pattern
            for l in k + 1..=n {
                let gw = case3_witness(ctx, k, l);
                let wz = apply_gbt_case3(&fs, &x, &y, &z, &gw)?;
                record(&mut out, &wz, l, "boundary pattern");
                z_rules.push(generalize(&wz, &tate_en, ctx)?);
                z = Computed::new(fs.z, ctx, window, z_rules.clone())?;
                out.boundary_witnesses.push((k, gw));
            }
            out.vkinv.insert(k, y_rules);
        }
        out.mod_ik.insert(k + 1, z_rules.clone());
        x = Computed::new(fs.z, ctx, window, z_rules)?;
    }
    Ok(out)
}

fn x_base(ctx: &RingContext, k: u32) -> Vec<i32> {
    (1..ctx.height()).map(|v| if v < k { -1 } else { 0 }).collect()
}

/// Sorted rule shapes, for comparing derived and stated rule sets.
pub fn signatures(rules: &[DifferentialRule]) -> Vec<crate::page::RuleSignature> {
    let mut v: Vec<_> = rules.iter().map(DifferentialRule::signature).collect();
    v.sort();
    v
}

/// Exactness of `X -i-> Y -p-> Z` on coefficient monomials of one generator,
/// for every exponent vector in `[-depth, depth]^{n-1}`.
pub fn les_spot_check(fs: &FiberSequenceSpec, ctx: &RingContext, depth: i32) -> Result<()> {
    if fs.k == 0 {
        return Ok(());
    }
    let k = fs.k;
    let m = Monomial::tate(1, 0, k as u8);
    let xmod = presets::build(fs.x, ctx, Window::new((2, 3), (0, 1))?)?;
    let ymod = presets::build(fs.y, ctx, Window::new((2, 3), (0, 1))?)?;
    let zmod = presets::build(fs.z, ctx, Window::new((2, 3), (0, 1))?)?;
    let xs = xmod.e2.find(&m).expect("generator present");
    let ys = ymod.e2.find(&m).expect("generator present");
    let zm = Monomial { divided: k as u8 + 1, ..m };
    let zs = zmod.e2.find(&zm).expect("generator present");
    let nv = ctx.num_variables();
    let mut coeff = vec![-depth; nv];
    loop {
        let in_x = xs.module.contains_monomial(&xs.base, &coeff);
        let in_y = ys.module.contains_monomial(&ys.base, &coeff);
        let c = ClassRef::new(m, coeff.clone());
        let pz = fs.p.apply(&c).is_some_and(|z| zs.module.contains_monomial(&zs.base, &z.coeff));
        // i injective, image of i = kernel of p, p onto
        if in_x && !in_y {
            return Err(SsError::Consistency(format!("i kills {c}")));
        }
        if in_y && (in_x == pz) {
            return Err(SsError::Consistency(format!("exactness fails at {c} in {}", fs.y)));
        }
        let z_nonzero = zs.module.contains_monomial(&zs.base, &coeff);
        if z_nonzero && !in_y {
            return Err(SsError::Consistency(format!("p misses {c}")));
        }
        let mut i = 0;
        while i < nv {
            coeff[i] += 1;
            if coeff[i] <= depth {
                break;
            }
            coeff[i] = -depth;
            i += 1;
        }
        if i == nv {
            return Ok(());
        }
    }
}
