#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use ssforge::coefficients::{self, catalog, multipliers, pair_kernel_cokernel, pontryagin_dual};
use ssforge::oracle;
use ssforge::page::{find_rule, Page};
use ssforge::presets::{self, PresetId};
use ssforge::{CoeffKind, CyclicModule, Multiplier, RingContext, SpectralSequence, Window};

pub fn ctx(n: u32) -> RingContext {
    RingContext::new(n).unwrap()
}

pub fn presets_for(n: u32) -> Vec<PresetId> {
    ssforge::verify::all_presets(&ctx(n))
}

/// Presets whose pages are entirely 2-torsion.
pub fn torsion_presets_for(n: u32) -> Vec<PresetId> {
    let mut v = vec![PresetId::TateEn];
    v.extend((1..=n).map(PresetId::TateEnModIk));
    v.extend((0..n).map(PresetId::TateVkinv));
    v
}

pub fn module_and_multiplier() -> impl Strategy<Value = (u32, CyclicModule, Multiplier)> {
    (1u32..=4).prop_flat_map(|n| {
        let c = ctx(n);
        (Just(n), proptest::sample::select(catalog(&c)), proptest::sample::select(multipliers(&c)))
    })
}

pub fn preset_and_window(max_n: u32) -> impl Strategy<Value = (u32, PresetId, Window)> {
    (1u32..=max_n).prop_flat_map(|n| {
        let p = presets::period(&ctx(n));
        (
            Just(n),
            proptest::sample::select(presets_for(n)),
            -p..p,
            1..=p,
            -p / 2..p / 2,
            1..=p,
        )
            .prop_map(|(n, id, s0, w, f0, h)| (n, id, Window { stems: (s0, s0 + w), filts: (f0, f0 + h), ys: (0, 1) }))
    })
}

fn fail(msg: String) -> Result<(), String> {
    Err(msg)
}

/// Kernel, cokernel and dual stay inside the catalog and validate.
pub fn catalog_closure(n: u32, m: CyclicModule, g: Multiplier) -> Result<(), String> {
    let c = ctx(n);
    let cat = catalog(&c);
    let (k, q) = coefficients::mult_kernel_cokernel(&m, g, &c).map_err(|e| e.to_string())?;
    for x in [k, q] {
        x.validate(&c).map_err(|e| e.to_string())?;
        if !cat.contains(&x) {
            return fail(format!("{x} from {m} by {g} is outside the catalog"));
        }
    }
    if m.kind != CoeffKind::Witt {
        let d = pontryagin_dual(&m, "(0,0)").map_err(|e| e.to_string())?;
        if !cat.contains(&d) {
            return fail(format!("dual {d} of {m} is outside the catalog"));
        }
    }
    for t in &cat {
        if let Ok((a, b)) = pair_kernel_cokernel(&m, t, g, &c) {
            for x in [a, b] {
                if !cat.contains(&x) {
                    return fail(format!("pairing {m} -> {t} by {g} gave {x}"));
                }
            }
        }
    }
    Ok(())
}

/// The symbolic rule table agrees with the finite truncation model.
pub fn truncation_exact(n: u32, m: CyclicModule, g: Multiplier, depth: i32) -> Result<(), String> {
    if m.kind == CoeffKind::Z2 {
        return Ok(());
    }
    let c = ctx(n);
    let nv = c.num_variables();
    let (ks, qs) = coefficients::mult_kernel_cokernel(&m, g, &c).map_err(|e| e.to_string())?;
    let (k, q) = oracle::truncated_kernel_cokernel(&m, g, &c, depth);
    let (ki, qi) = (oracle::infer_descriptor(&k, nv), oracle::infer_descriptor(&q, nv));
    if ki != Some(ks) || qi != Some(qs) {
        return fail(format!("{m} by {g}: table ({ks}, {qs}), truncation ({ki:?}, {qi:?})"));
    }
    if matches!(m.kind, CoeffKind::Mod2 | CoeffKind::WittDivided) {
        let d = pontryagin_dual(&m, "(0,0)").map_err(|e| e.to_string())?;
        let di = oracle::infer_descriptor(&oracle::truncated_dual(&m, &c, depth), nv);
        if di != Some(d) {
            return fail(format!("dual of {m}: table {d}, truncation {di:?}"));
        }
        let dims = oracle::f2_dimensions(&oracle::truncated_dual(&m, &c, depth), &c);
        if dims.values().any(|d| *d != n) {
            return fail(format!("dual of {m} has a multidegree of dimension other than {n}"));
        }
    }
    Ok(())
}

fn build(n: u32, id: PresetId, w: Window) -> Result<SpectralSequence, String> {
    presets::build(id, &ctx(n), w).map_err(|e| e.to_string())
}

/// Dualizing a 2-torsion sequence twice returns its page and rule shapes.
pub fn dualize_involution(n: u32, id: PresetId, w: Window) -> Result<(), String> {
    let ss = build(n, id, w)?;
    let back = ss.dualized().and_then(|d| d.dualized()).map_err(|e| e.to_string())?;
    if back.e2 != ss.e2 {
        return fail(format!("{id}: page changed under double dual"));
    }
    if ssforge::gbt::signatures(&back.rules) != ssforge::gbt::signatures(&ss.rules) {
        return fail(format!("{id}: rules changed under double dual"));
    }
    for p in ss.dualized().map_err(|e| e.to_string())?.pages().map_err(|e| e.to_string())? {
        p.audit().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn in_window(p: &Page, w: &Window) -> Vec<(i64, i64, String)> {
    let mut v: Vec<_> = p
        .summands()
        .filter(|(k, _)| w.contains(k))
        .map(|(k, s)| (k.stem, k.filt, s.module.to_string()))
        .collect();
    v.sort();
    v
}

/// `E_inf` of a window equals `E_inf` of an enlarged window, restricted.
pub fn window_safety(n: u32, id: PresetId, w: Window, grow: (i64, i64, i64, i64)) -> Result<(), String> {
    let big = Window {
        stems: (w.stems.0 - grow.0, w.stems.1 + grow.1),
        filts: (w.filts.0 - grow.2, w.filts.1 + grow.3),
        ys: w.ys,
    };
    let small = build(n, id, w)?.einf().map_err(|e| format!("{id} {w:?}: {e}"))?;
    let large = build(n, id, big)?.einf().map_err(|e| format!("{id} {big:?}: {e}"))?;
    if in_window(&small, &w) != in_window(&large, &w) {
        return fail(format!("{id} at n={n}: {w:?} disagrees with {big:?}"));
    }
    Ok(())
}

/// Every differential moves by `(-1, r)` in the grading, and every rule
/// passes the bidegree check.
pub fn degree_audit(n: u32, id: PresetId, w: Window) -> Result<(), String> {
    let ss = build(n, id, w)?;
    for rule in &ss.rules {
        rule.check_degree(ss.e2.grading, ss.e2.transform.sign).map_err(|e| e.to_string())?;
    }
    for p in ss.pages().map_err(|e| e.to_string())? {
        p.audit().map_err(|e| e.to_string())?;
        let step = p.grading.filt_step(p.r);
        for (k, s) in p.summands() {
            if let Some(rule) = find_rule(&s.generator, p.r, &ss.rules) {
                let t = p.key_of(&s.generator.times(rule.delta));
                if t.stem != k.stem - 1 || t.filt != k.filt + step {
                    return fail(format!("{id}: d{} from {k} lands at {t}", p.r));
                }
            }
        }
    }
    Ok(())
}

/// No class that receives a nonzero `d_r` also supports one.
pub fn d_squared_zero(n: u32, id: PresetId, w: Window) -> Result<(), String> {
    let ss = build(n, id, w)?;
    for p in ss.pages().map_err(|e| e.to_string())? {
        for (k, s) in p.summands() {
            let Some(rule) = find_rule(&s.generator, p.r, &ss.rules) else { continue };
            let t = s.generator.times(rule.delta);
            if p.find(&t).is_none() {
                continue;
            }
            if let Some(rule2) = find_rule(&t, p.r, &ss.rules) {
                if p.find(&t.times(rule2.delta)).is_some() {
                    return fail(format!("{id}: d{0} d{0} nonzero from {k}", p.r));
                }
            }
        }
    }
    Ok(())
}

/// `E_inf` of the fixed points is invariant under a stem shift by one period.
pub fn periodicity(n: u32, start: i64) -> Result<(), String> {
    let c = ctx(n);
    let p = presets::period(&c);
    let w = Window { stems: (start, start + 2 * p), filts: (0, p), ys: (0, 1) };
    let e = build(n, PresetId::HfpssEn, w)?.einf().map_err(|e| e.to_string())?;
    let period = ssforge::analysis::minimal_period(&e).map_err(|e| e.to_string())?;
    if period != p {
        return fail(format!("n={n} from stem {start}: minimal period {period}, expected {p}"));
    }
    Ok(())
}

/// Runs `f` on `cases` generated inputs, returning the first failure.
pub fn run_property<S: Strategy>(
    cases: u32,
    strategy: S,
    f: impl Fn(S::Value) -> Result<(), String>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner
        .run(&strategy, |v| f(v).map_err(TestCaseError::fail))
        .map_err(|e| e.to_string())
}

pub fn all_properties(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let depth = oracle::truncation_depth();
    vec![
        ("catalog closure", run_property(cases, module_and_multiplier(), |(n, m, g)| catalog_closure(n, m, g))),
        (
            "truncation exactness",
            run_property(cases, module_and_multiplier(), move |(n, m, g)| truncation_exact(n, m, g, depth)),
        ),
        (
            "dualize involution",
            run_property(
                cases,
                (1u32..=3).prop_flat_map(|n| {
                    (Just(n), proptest::sample::select(torsion_presets_for(n)), -20i64..20, 1i64..24, -12i64..12, 1i64..16)
                }),
                |(n, id, s, w, f, h)| dualize_involution(n, id, Window { stems: (s, s + w), filts: (f, f + h), ys: (0, 1) }),
            ),
        ),
        (
            "window safety",
            run_property(cases, (preset_and_window(3), (0i64..12, 0i64..12, 0i64..8, 0i64..8)), |((n, id, w), g)| {
                window_safety(n, id, w, g)
            }),
        ),
        ("degree audits", run_property(cases, preset_and_window(3), |(n, id, w)| degree_audit(n, id, w))),
        ("d^2 = 0", run_property(cases, preset_and_window(3), |(n, id, w)| d_squared_zero(n, id, w))),
        ("periodicity", run_property(cases.min(16), (1u32..=3, -40i64..40), |(n, s)| periodicity(n, s))),
    ]
}
