use std::collections::BTreeMap;

use ssforge::coefficients::{catalog, mult_kernel_cokernel, multipliers, pontryagin_dual};
use ssforge::oracle;
use ssforge::presets::{self, PresetId};
use ssforge::verify;
use ssforge::{CoeffKind, RingContext, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Group {
    Z,
    Z2,
}

fn engine_cells(p: &ssforge::Page) -> BTreeMap<(i64, i64), Group> {
    verify::cell_triples(p)
        .into_iter()
        .map(|(s, f, m)| {
            let g = if m.starts_with("WITT") { Group::Z } else { Group::Z2 };
            ((s, f), g)
        })
        .collect()
}

/// `H^s(C2; pi_{2k})` with `C2` acting on `pi_{2k} = Z` by `(-1)^k`, at
/// `(stem, filt) = (2k - s, s)`.
fn ko_e2(w: &Window) -> BTreeMap<(i64, i64), Group> {
    let mut out = BTreeMap::new();
    for s in w.filts.0.max(0)..w.filts.1 {
        for stem in w.stems.0..w.stems.1 {
            let t = stem + s;
            if t.rem_euclid(2) != 0 {
                continue;
            }
            let k = t / 2;
            let g = match (s, k.rem_euclid(2)) {
                (0, 0) => Some(Group::Z),
                (0, _) => None,
                (s, k) if s % 2 == k => Some(Group::Z2),
                _ => None,
            };
            if let Some(g) = g {
                out.insert((stem, s), g);
            }
        }
    }
    out
}

/// `E_2 = Z[v^{+-1}, eta]/(2 eta)` with `d3(v) = eta^3`, so `d3(v^m eta^s)`
/// is nonzero exactly for odd `m` (on `Z`, the kernel is `2Z`, still `Z`).
fn ko_einf(w: &Window) -> BTreeMap<(i64, i64), Group> {
    let e2 = ko_e2(w);
    let mut out = BTreeMap::new();
    for (&(stem, s), &g) in &e2 {
        let m = (stem - s).div_euclid(4);
        let odd = m.rem_euclid(2) == 1;
        let survives = match g {
            Group::Z => true,
            // odd m supports a nonzero d3; even m with s >= 3 is hit from v^{m+1} eta^{s-3}
            Group::Z2 => !odd && s < 3,
        };
        if survives {
            out.insert((stem, s), g);
        }
    }
    out
}

#[test]
fn height_one_matches_ko() {
    let ctx = RingContext::new(1).unwrap();
    let w = Window { stems: (0, 16), filts: (0, 8), ys: (0, 1) };
    let ss = presets::build(PresetId::HfpssEn, &ctx, w).unwrap();
    assert_eq!(engine_cells(&ss.e2.clipped()), ko_e2(&w));
    let einf = ss.einf().unwrap();
    assert_eq!(engine_cells(&einf), ko_einf(&w));

    let mut by_stem = BTreeMap::<i64, Vec<Group>>::new();
    for ((s, _), g) in ko_einf(&w) {
        by_stem.entry(s).or_default().push(g);
    }
    let pattern: Vec<Vec<Group>> = (0..8).map(|s| by_stem.get(&s).cloned().unwrap_or_default()).collect();
    use Group::*;
    assert_eq!(pattern, vec![vec![Z], vec![Z2], vec![Z2], vec![], vec![Z], vec![], vec![], vec![]]);
}

#[test]
fn homotopy_table_height_one() {
    let ctx = RingContext::new(1).unwrap();
    let p = ssforge::analysis::hfpss_einf(&ctx).unwrap();
    let table = ssforge::analysis::homotopy_table(&p, 0..8).unwrap();
    let nonzero: Vec<i64> = table.iter().filter(|e| !e.is_zero()).map(|e| e.stem).collect();
    assert_eq!(nonzero, vec![0, 1, 2, 4]);
}

#[test]
fn homotopy_table_height_two() {
    let ctx = RingContext::new(2).unwrap();
    let p = ssforge::analysis::hfpss_einf(&ctx).unwrap();
    let table = ssforge::analysis::homotopy_table(&p, 0..16).unwrap();
    for e in &table {
        if (13..16).contains(&e.stem) {
            assert!(e.is_zero(), "stem {} should vanish", e.stem);
        }
    }
    assert_eq!(table[0].cells, vec![(0, "WITT({1})".to_string())]);
}

#[test]
fn rule_table_is_exact_on_the_whole_catalog() {
    let d = oracle::truncation_depth();
    for n in 1..=3 {
        let ctx = RingContext::new(n).unwrap();
        let nv = ctx.num_variables();
        for m in catalog(&ctx).into_iter().filter(|m| m.kind != CoeffKind::Z2) {
            for g in multipliers(&ctx) {
                let (ks, qs) = mult_kernel_cokernel(&m, g, &ctx).unwrap();
                let (k, q) = oracle::truncated_kernel_cokernel(&m, g, &ctx, d);
                assert_eq!(oracle::infer_descriptor(&k, nv), Some(ks), "kernel of {m} by {g} at n={n}");
                assert_eq!(oracle::infer_descriptor(&q, nv), Some(qs), "cokernel of {m} by {g} at n={n}");
            }
        }
    }
}

#[test]
fn duals_match_truncation() {
    let d = oracle::truncation_depth();
    for n in 1..=3 {
        let ctx = RingContext::new(n).unwrap();
        let nv = ctx.num_variables();
        for m in catalog(&ctx).into_iter().filter(|m| matches!(m.kind, CoeffKind::Mod2 | CoeffKind::WittDivided)) {
            let dual = pontryagin_dual(&m, "test").unwrap();
            assert_eq!(oracle::infer_descriptor(&oracle::truncated_dual(&m, &ctx, d), nv), Some(dual), "{m}");
            if m.kind == CoeffKind::Mod2 {
                assert_eq!(pontryagin_dual(&dual, "test").unwrap(), m);
            }
        }
    }
}

#[test]
fn twisted_kernels_match_enumeration() {
    for n in 1..=3 {
        let ctx = RingContext::new(n).unwrap();
        for k in 1..=n {
            let sym = ssforge::picard::twisted_kernel(k, &ctx).unwrap();
            let mut brute: Vec<String> = oracle::twisted_kernel_bruteforce(n, k, verify::twisted_degree(n, k))
                .iter()
                .map(|f| oracle::poly_to_string(f, k))
                .collect();
            brute.sort();
            let mut want = sym.solutions.clone();
            want.sort();
            assert_eq!(brute, want, "n={n} k={k}");
            assert_eq!(sym.order, 2);
        }
    }
}

#[test]
fn field_arithmetic() {
    for n in 1..=6 {
        let f = oracle::Gf2n::new(n);
        let q = f.size();
        assert_eq!(q, 1 << n);
        for a in 1..q.min(64) {
            // a^(q-1) = 1
            let mut x = 1;
            for _ in 0..q - 1 {
                x = f.mul(x, a);
            }
            assert_eq!(x, 1, "n={n} a={a}");
        }
    }
}
