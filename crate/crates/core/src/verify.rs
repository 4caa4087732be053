//! The full check pipeline behind `verify`: one entry per headline criterion.

use serde::{Deserialize, Serialize};

use crate::analysis::{self, ExoticReport, GapReport, ShiftMethod, ShiftReport};
use crate::coefficients::{CyclicModule, RingContext};
use crate::error::{Result, SsError};
use crate::gbt::{self, Computed, GBTWitness};
use crate::oracle;
use crate::page::{Monomial, Page, Window};
use crate::picard::{self, PicardReport};
use crate::presets::{self, PresetId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: u8,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(id: u8, name: &str, ok: bool, detail: String) -> Self {
        Self { id, name: name.to_string(), status: if ok { Status::Pass } else { Status::Fail }, detail }
    }

    fn skipped(id: u8, name: &str, why: &str) -> Self {
        Self { id, name: name.to_string(), status: Status::Skipped, detail: why.to_string() }
    }

    fn failed(id: u8, name: &str, e: SsError) -> Self {
        Self::new(id, name, false, e.to_string())
    }
}

/// Cell descriptors of the first figure, as shipped in `data/`.
pub const EINF_N2_GOLDEN: &str = include_str!("../data/hfpss_n2_einf.json");
pub const GBT_N2_WITNESS: &str = include_str!("../data/gbt_n2_witness.json");

#[derive(Deserialize)]
struct GoldenCell {
    stem: i64,
    filt: i64,
    glyph: String,
}

#[derive(Deserialize)]
struct Golden {
    window: GoldenWindow,
    legend: std::collections::BTreeMap<String, String>,
    cells: Vec<GoldenCell>,
}

#[derive(Deserialize)]
struct GoldenWindow {
    stems: (i64, i64),
    filts: (i64, i64),
}

pub type CellTriple = (i64, i64, String);

/// `(stem, filt, module)` triples of the golden chart.
pub fn einf_n2_golden() -> Result<(Window, Vec<CellTriple>)> {
    let g: Golden = serde_json::from_str(EINF_N2_GOLDEN).map_err(|e| SsError::Json(e.to_string()))?;
    let cells = g
        .cells
        .iter()
        .map(|c| {
            let m = g.legend.get(&c.glyph).cloned().ok_or_else(|| SsError::Json(format!("glyph {}", c.glyph)))?;
            Ok((c.stem, c.filt, m))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((Window::new(g.window.stems, g.window.filts)?, cells))
}

#[derive(Deserialize)]
pub struct WitnessFile {
    pub height: u32,
    pub k: u32,
    pub l: u32,
    pub witness: GBTWitness,
}

pub fn gbt_n2_witness() -> Result<WitnessFile> {
    serde_json::from_str(GBT_N2_WITNESS).map_err(|e| SsError::Json(e.to_string()))
}

pub fn cell_triples(p: &Page) -> Vec<CellTriple> {
    let mut v: Vec<_> = p
        .summands()
        .filter(|(k, _)| p.window.contains(k))
        .map(|(k, s)| (k.stem, k.filt, s.module.to_string()))
        .collect();
    v.sort();
    v
}

fn expected_picard_orders(n: u32) -> Vec<(i64, u64)> {
    let mut v = vec![(0, 2), (1, 2)];
    v.extend((1..=n).map(|k| (4 * (1i64 << (k - 1)) - 1, 2)));
    v
}

pub fn check_picard(ctx: &RingContext) -> (Check, Option<PicardReport>) {
    let name = "Picard orders";
    match picard::assemble_picard(ctx) {
        Ok(r) => {
            let n = ctx.height();
            let orders: Vec<(i64, u64)> = r.orders.iter().map(|(f, e)| (*f, e.order)).collect();
            let ok = r.total_order == 1u64 << (n + 2) && orders == expected_picard_orders(n) && r.lower_bound == r.total_order;
            let detail = format!("{} with orders {orders:?}", r.group);
            (Check::new(1, name, ok, detail), Some(r))
        }
        Err(e) => (Check::failed(1, name, e), None),
    }
}

pub fn check_gap(ctx: &RingContext) -> (Check, Option<GapReport>) {
    let name = "Gap theorem";
    match analysis::find_gap(ctx) {
        Ok(g) => {
            let p = presets::period(ctx);
            let ok = g.residues == [p - 3] && g.witness_families.iter().all(|f| f.survivors == f.size);
            let detail = format!(
                "residues {:?} mod {p}; witness families {:?}",
                g.residues,
                g.witness_families.iter().map(|f| (f.j, f.survivors, f.size)).collect::<Vec<_>>()
            );
            (Check::new(2, name, ok, detail), Some(g))
        }
        Err(e) => (Check::failed(2, name, e), None),
    }
}

/// `u_{2sigma}^{2^n} ubar^{2^{n+1}}`
pub fn periodicity_class(ctx: &RingContext) -> Monomial {
    let n = ctx.height();
    Monomial::ro(1 << (n + 1), 1 << n, 0)
}

pub fn check_periodicity(ctx: &RingContext) -> Check {
    let name = "Periodicity";
    let run = || -> Result<(bool, String)> {
        let ss = presets::build(PresetId::HfpssEn, ctx, presets::default_window(PresetId::HfpssEn, ctx))?;
        let einf = analysis::converged_einf(&ss)?;
        let period = analysis::minimal_period(&einf)?;
        let m = periodicity_class(ctx);
        let mut permanent = true;
        for p in ss.pages()? {
            let present = p.find(&m).is_some_and(|s| s.module == CyclicModule::witt(ctx.variables()));
            let supports = crate::page::find_rule(&m, p.r, &ss.rules).is_some();
            permanent &= present && !supports;
        }
        let ok = period == presets::period(ctx) && permanent;
        Ok((ok, format!("minimal period {period}; {m} permanent: {permanent}")))
    };
    match run() {
        Ok((ok, d)) => Check::new(3, name, ok, d),
        Err(e) => Check::failed(3, name, e),
    }
}

/// Filtration-0 stems on a Tate page and the stems supporting `d_r` from there.
pub fn tate_tower_stems(id: PresetId, ctx: &RingContext, r: u32) -> Result<(Vec<i64>, Vec<i64>)> {
    let ss = presets::build(id, ctx, presets::default_window(id, ctx))?;
    let p = ss.page(r)?;
    let towers = p.summands().filter(|(k, _)| k.filt == 0 && p.window.contains(k)).map(|(k, _)| k.stem).collect();
    let sources = crate::chart::arrows(&p, &ss.rules).iter().filter(|a| a.from.filt == 0).map(|a| a.from.stem).collect();
    Ok((towers, sources))
}

fn spacing(v: &[i64]) -> Option<i64> {
    let d = v.windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>();
    (!d.is_empty() && d.iter().all(|x| *x == d[0])).then(|| d[0])
}

pub fn check_figures(ctx: &RingContext) -> Check {
    let name = "Figure regression";
    if ctx.height() != 2 {
        return Check::skipped(4, name, "the charts are drawn at height 2");
    }
    let run = || -> Result<(bool, String)> {
        let (window, golden) = einf_n2_golden()?;
        let einf = presets::build(PresetId::HfpssEn, ctx, window)?.einf()?;
        let einf_ok = cell_triples(&einf) == golden;
        let mut towers = true;
        for k in [1, 2] {
            let id = PresetId::TateEnModIk(k);
            let (t3, s3) = tate_tower_stems(id, ctx, 3)?;
            let (t7, s7) = tate_tower_stems(id, ctx, 7)?;
            towers &= spacing(&t3) == Some(4) && spacing(&s3) == Some(8);
            towers &= spacing(&t7) == Some(8) && spacing(&s7) == Some(16);
        }
        let wf = gbt_n2_witness()?;
        let witness = gbt::case3_witness(ctx, wf.k, wf.l);
        let same = witness == wf.witness;
        let fs = gbt::FiberSequenceSpec::standard(wf.k, ctx)?;
        let w = gbt::derivation_window(ctx);
        let c = |id| Computed::closed_form(id, ctx, w);
        let d7 = gbt::apply_gbt_case3(&fs, &c(fs.x)?, &c(fs.y)?, &c(fs.z)?, &wf.witness)?;
        let carried = gbt::verify_witness(&c(fs.z)?, &d7).is_ok() && d7.page == 7;
        Ok((einf_ok && towers && same && carried, format!("E_inf chart {einf_ok}; towers {towers}; witness file {same}; {d7}")))
    };
    match run() {
        Ok((ok, d)) => Check::new(4, name, ok, d),
        Err(e) => Check::failed(4, name, e),
    }
}

pub fn check_gbt(ctx: &RingContext) -> Check {
    let name = "GBT derivation";
    let run = || -> Result<(bool, String)> {
        let n = ctx.height();
        let d = gbt::derive_all(ctx)?;
        let w = gbt::derivation_window(ctx);
        let mut ok = true;
        let mut compared = 0;
        for k in 1..=n {
            let id = PresetId::TateEnModIk(k);
            let derived = &d.mod_ik[&k];
            ok &= gbt::signatures(derived) == gbt::signatures(&presets::mod_ik_rules(ctx, k));
            let a = Computed::new(id, ctx, w, derived.clone())?;
            let b = Computed::closed_form(id, ctx, w)?;
            ok &= a.pages.iter().map(Page::descriptors).eq(b.pages.iter().map(Page::descriptors));
            compared += a.pages.len();
        }
        for (k, rules) in &d.vkinv {
            ok &= gbt::signatures(rules) == gbt::signatures(&presets::vkinv_rules(*k));
        }
        Ok((ok, format!("{} derivation steps; {compared} pages compared", d.trace.len())))
    };
    match run() {
        Ok((ok, d)) => Check::new(5, name, ok, d),
        Err(e) => Check::failed(5, name, e),
    }
}

/// Windows of several shapes and offsets, for emptiness checks.
pub fn probe_windows(ctx: &RingContext) -> Vec<Window> {
    let p = presets::period(ctx);
    vec![
        Window { stems: (0, 2 * p), filts: (-p / 2, p / 2), ys: (0, 1) },
        Window { stems: (-p, p), filts: (-p, p), ys: (0, 1) },
        Window { stems: (-3, 5), filts: (-2 * p, -p), ys: (0, 1) },
        Window { stems: (7, 8), filts: (3, 4), ys: (0, 1) },
    ]
}

pub fn check_tate(ctx: &RingContext) -> Check {
    let name = "Tate vanishing";
    let run = || -> Result<(bool, String)> {
        let n = ctx.height();
        let mut ok = true;
        for w in probe_windows(ctx) {
            ok &= presets::build(PresetId::TateEnModIk(n), ctx, w)?.einf()?.is_empty();
        }
        let mut collapse = Vec::new();
        for k in 0..n {
            let ss = presets::build(PresetId::TateVkinv(k), ctx, probe_windows(ctx)[1])?;
            let r = 1u32 << (k + 1);
            let p = ss.page(r)?;
            p.check_untainted()?;
            let empty = p.clipped().is_empty();
            let before = k == 0 || !ss.page(r - 1)?.clipped().is_empty();
            collapse.push((k, empty && before));
            ok &= empty && before;
        }
        Ok((ok, format!("mod I_n empty in {} windows; collapse {collapse:?}", probe_windows(ctx).len())))
    };
    match run() {
        Ok((ok, d)) => Check::new(6, name, ok, d),
        Err(e) => Check::failed(6, name, e),
    }
}

pub fn check_shift(ctx: &RingContext) -> (Check, Option<ShiftReport>) {
    let name = "Gross-Hopkins shift";
    match analysis::gh_shift(ctx, ShiftMethod::Both) {
        Ok(s) => {
            let n = ctx.height() as i64;
            let t = &s.longest_trace;
            let ok = s.shift == 4 + n
                && s.shift_mod4_is_n
                && s.det_twist_mod4_is_n
                && t.fires
                && t.source.0 == (1 << (n + 2)) - 2
                && t.source.0 == t.expected_stem;
            let detail = format!(
                "gap {:?}, pattern {:?}; trace d{} from {:?} to {:?}",
                s.gap_shift, s.pattern_candidates, t.page, t.source, t.target
            );
            (Check::new(7, name, ok, detail), Some(s))
        }
        Err(e) => (Check::failed(7, name, e), None),
    }
}

/// Largest enumeration the twisted-kernel oracle is allowed to run.
pub const TWISTED_BUDGET: u64 = 1 << 20;

/// Total-degree bound for the `(n, k)` enumeration: 3 when affordable, else 2.
pub fn twisted_degree(n: u32, k: u32) -> u32 {
    let nv = (n - k) as u64;
    let count = |d: u64| (0..d).map(|t| binom(t + nv.max(1) - 1, nv.max(1) - 1)).sum::<u64>();
    let q = 1u64 << n;
    let fits = |d: u64| {
        let c = if nv == 0 { 1 } else { count(d) };
        q.checked_pow(c as u32).is_some_and(|x| x <= TWISTED_BUDGET)
    };
    if fits(3) {
        3
    } else {
        2
    }
}

fn binom(a: u64, b: u64) -> u64 {
    (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
}

pub fn check_twisted(ctx: &RingContext) -> Check {
    let name = "Twisted-kernel oracle";
    let n = ctx.height();
    if n > 3 {
        return Check::skipped(8, name, "enumeration exceeds the oracle budget above height 3");
    }
    let mut ok = true;
    let mut found = Vec::new();
    for k in 1..=n {
        let sym = match picard::twisted_kernel(k, ctx) {
            Ok(s) => s,
            Err(e) => return Check::failed(8, name, e),
        };
        let mut brute: Vec<String> = oracle::twisted_kernel_bruteforce(n, k, twisted_degree(n, k))
            .iter()
            .map(|f| oracle::poly_to_string(f, k))
            .collect();
        brute.sort();
        let mut expected = sym.solutions.clone();
        expected.sort();
        ok &= brute == expected && sym.order == 2;
        found.push(format!("k={k}: {{{}}}", brute.join(", ")));
    }
    Check::new(8, name, ok, found.join("; "))
}

pub fn check_exotic(ctx: &RingContext, computed_shift: Option<i64>) -> (Check, Option<ExoticReport>) {
    let name = "Exotic ledger";
    let n = ctx.height();
    let (gh, src) = match computed_shift {
        Some(s) => (s, "computed"),
        None => (4 + n as i64, "declared"),
    };
    match analysis::exotic_ledger(n, gh, src) {
        Ok(r) => {
            let sign = if n.is_multiple_of(2) { 1 } else { -1 };
            let twist = 2 * n as i64 + 3 + sign;
            let ok = r.exotic_twist == twist && r.delta == twist.rem_euclid(r.modulus) && r.delta != 0;
            (Check::new(9, name, ok, format!("twist {} delta {} mod {}", r.exotic_twist, r.delta, r.modulus)), Some(r))
        }
        Err(e) => (Check::failed(9, name, e), None),
    }
}

/// Deterministic spot version of the property suites.
pub fn check_audits(ctx: &RingContext) -> Check {
    let name = "Engine audits";
    let run = || -> Result<String> {
        let mut pages = 0;
        for id in all_presets(ctx) {
            let ss = presets::build(id, ctx, presets::default_window(id, ctx))?;
            for p in ss.pages()? {
                p.audit()?;
                pages += 1;
            }
        }
        for id in [PresetId::TateEn, PresetId::TateEnModIk(ctx.height())] {
            let ss = presets::build(id, ctx, presets::default_window(id, ctx))?;
            let dual = ss.dualized()?;
            for p in dual.pages()? {
                p.audit()?;
                pages += 1;
            }
            let back = dual.dualized()?;
            if back.e2 != ss.e2 || gbt::signatures(&back.rules) != gbt::signatures(&ss.rules) {
                return Err(SsError::Consistency(format!("dualizing {id} twice changed it")));
            }
        }
        let d = oracle::truncation_depth();
        for m in crate::coefficients::catalog(ctx) {
            for g in crate::coefficients::multipliers(ctx) {
                let (k, c) = oracle::truncated_kernel_cokernel(&m, g, ctx, d);
                let (ks, cs) = crate::coefficients::mult_kernel_cokernel(&m, g, ctx)?;
                let nv = ctx.num_variables();
                if m.kind != crate::coefficients::CoeffKind::Z2 {
                    let ki = oracle::infer_descriptor(&k, nv);
                    let ci = oracle::infer_descriptor(&c, nv);
                    if ki != Some(ks) || ci != Some(cs) {
                        return Err(SsError::Consistency(format!("rule table disagrees with truncation on {m} by {g}")));
                    }
                }
            }
        }
        Ok(format!("{pages} pages audited; rule table exact at depth {d}"))
    };
    match run() {
        Ok(d) => Check::new(10, name, true, d),
        Err(e) => Check::failed(10, name, e),
    }
}

pub fn all_presets(ctx: &RingContext) -> Vec<PresetId> {
    let n = ctx.height();
    let mut v = vec![PresetId::HfpssEn, PresetId::TateEn, PresetId::HossEnModIn, PresetId::HfpssIen, PresetId::PicSs];
    v.extend((1..=n).map(PresetId::TateEnModIk));
    v.extend((0..n).map(PresetId::TateVkinv));
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub height: u32,
    pub ok: bool,
    pub checks: Vec<Check>,
    pub picard: Option<PicardReport>,
    pub gap: Option<GapReport>,
    pub shift: Option<ShiftReport>,
    pub exotic: Option<ExoticReport>,
}

pub fn run(ctx: &RingContext) -> VerifyReport {
    let (c1, picard) = check_picard(ctx);
    let (c2, gap) = check_gap(ctx);
    let (c7, shift) = check_shift(ctx);
    let (c9, exotic) = check_exotic(ctx, shift.as_ref().map(|s| s.shift));
    let checks = vec![
        c1,
        c2,
        check_periodicity(ctx),
        check_figures(ctx),
        check_gbt(ctx),
        check_tate(ctx),
        c7,
        check_twisted(ctx),
        c9,
        check_audits(ctx),
    ];
    let ok = checks.iter().all(|c| c.status != Status::Fail);
    VerifyReport { height: ctx.height(), ok, checks, picard, gap, shift, exotic }
}
