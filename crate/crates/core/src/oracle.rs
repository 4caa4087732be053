//! Finite truncation models used to cross-check the symbolic layers.

use std::collections::{BTreeMap, BTreeSet};

use crate::coefficients::{CoeffKind, CyclicModule, Multiplier, RingContext, VarSet};

pub const DEFAULT_DEPTH: i32 = 6;

/// Oracle depth, overridable through `SSFORGE_TRUNCATION_DEPTH`.
pub fn truncation_depth() -> i32 {
    std::env::var("SSFORGE_TRUNCATION_DEPTH")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|d| *d >= 2)
        .unwrap_or(DEFAULT_DEPTH)
}

/// Range of one exponent in the truncation, and whether each end is a real
/// bound or an artefact of truncating.
#[derive(Debug, Clone, Copy)]
struct Axis {
    lo: i32,
    hi: i32,
    open_below: bool,
    open_above: bool,
}

impl Axis {
    fn killed() -> Self {
        Self { lo: 0, hi: 0, open_below: false, open_above: false }
    }
    fn surviving(d: i32) -> Self {
        Self { lo: 0, hi: d, open_below: false, open_above: true }
    }
    fn divided(d: i32) -> Self {
        Self { lo: -d, hi: -1, open_below: true, open_above: false }
    }
    fn unit(d: i32) -> Self {
        Self { lo: -d, hi: d, open_below: true, open_above: true }
    }
}

/// Axis 0 is the 2-adic direction; axis `i` is `u_i`.
fn axes(m: &CyclicModule, ctx: &RingContext, d: i32) -> Vec<Axis> {
    let two = match m.kind {
        CoeffKind::Witt => Axis::surviving(d),
        CoeffKind::WittDivided => Axis::divided(d),
        CoeffKind::Mod2 | CoeffKind::Z2 => Axis::killed(),
    };
    let mut out = vec![two];
    for v in 1..ctx.height() as u8 {
        out.push(if m.surviving.contains(v) {
            Axis::surviving(d)
        } else if m.divided.contains(v) {
            Axis::divided(d)
        } else if m.units.contains(v) {
            Axis::unit(d)
        } else {
            Axis::killed()
        });
    }
    out
}

fn enumerate(ax: &[Axis]) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for a in ax {
        out = out
            .into_iter()
            .flat_map(|v| {
                (a.lo..=a.hi).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Monomial basis of the truncated module.
pub fn basis(m: &CyclicModule, ctx: &RingContext, d: i32) -> Vec<Vec<i32>> {
    if m.is_zero() {
        return Vec::new();
    }
    enumerate(&axes(m, ctx, d))
}

fn classify(values: &BTreeSet<i32>) -> Option<char> {
    let lo = *values.first()?;
    let hi = *values.last()?;
    if (hi - lo + 1) as usize != values.len() {
        return None;
    }
    Some(match (lo, hi) {
        _ if lo == hi => 'k',
        _ if lo >= 0 => 's',
        _ if hi <= 0 => 'd',
        _ => 'u',
    })
}

/// Reads a catalog descriptor off a set of monomials, if it is one.
pub fn infer_descriptor(set: &BTreeSet<Vec<i32>>, nvars: usize) -> Option<CyclicModule> {
    if set.is_empty() {
        return Some(CyclicModule::zero());
    }
    let mut per_axis = vec![BTreeSet::new(); nvars + 1];
    for v in set {
        for (i, e) in v.iter().enumerate() {
            per_axis[i].insert(*e);
        }
    }
    if per_axis.iter().map(BTreeSet::len).product::<usize>() != set.len() {
        return None;
    }
    let mut divided = VarSet::EMPTY;
    let mut surviving = VarSet::EMPTY;
    let mut units = VarSet::EMPTY;
    for (i, vals) in per_axis.iter().enumerate().skip(1) {
        match classify(vals)? {
            's' => surviving.insert(i as u8),
            'd' => divided.insert(i as u8),
            'u' => units.insert(i as u8),
            _ => {}
        }
    }
    let m = match classify(&per_axis[0])? {
        'k' => CyclicModule::mod2_localized(divided, surviving, units),
        's' if divided.is_empty() && units.is_empty() => CyclicModule::witt(surviving),
        'd' if surviving.is_empty() && units.is_empty() => CyclicModule::witt_divided(divided),
        _ => return None,
    };
    Some(m)
}

/// Kernel and cokernel of `g` on the truncation, with truncation artefacts
/// (monomials pushed past an open end, or missing a preimage past one) removed.
pub fn truncated_kernel_cokernel(
    m: &CyclicModule,
    g: Multiplier,
    ctx: &RingContext,
    d: i32,
) -> (BTreeSet<Vec<i32>>, BTreeSet<Vec<i32>>) {
    let b = basis(m, ctx, d);
    if b.is_empty() {
        return (BTreeSet::new(), BTreeSet::new());
    }
    let ax = axes(m, ctx, d);
    let axis = match g {
        Multiplier::Two => Some(0usize),
        Multiplier::U(l) if (l as u32) < ctx.height() => Some(l as usize),
        Multiplier::U(_) => None,
    };
    let Some(a) = axis else {
        return (BTreeSet::new(), BTreeSet::new());
    };
    let set: BTreeSet<_> = b.iter().cloned().collect();
    let mut ker = BTreeSet::new();
    let mut image = BTreeSet::new();
    for v in &b {
        let mut w = v.clone();
        w[a] += 1;
        if set.contains(&w) {
            image.insert(w);
        } else if !(ax[a].open_above && w[a] > ax[a].hi) {
            ker.insert(v.clone());
        }
    }
    let coker = b
        .iter()
        .filter(|v| !image.contains(*v) && !(ax[a].open_below && v[a] == ax[a].lo))
        .cloned()
        .collect();
    (ker, coker)
}

/// Dual basis: degree `e` pairs with degree `-e`.
pub fn truncated_dual(m: &CyclicModule, ctx: &RingContext, d: i32) -> BTreeSet<Vec<i32>> {
    basis(m, ctx, d).into_iter().map(|v| v.into_iter().map(|e| -e).collect()).collect()
}

/// Dimension over `F_2` of each multidegree of a monomial set.
pub fn f2_dimensions(set: &BTreeSet<Vec<i32>>, ctx: &RingContext) -> BTreeMap<Vec<i32>, u32> {
    set.iter().map(|v| (v.clone(), ctx.residue_degree())).collect()
}

/// Arithmetic in `F_{2^n}` as polynomials over `F_2` modulo a fixed irreducible.
#[derive(Debug, Clone, Copy)]
pub struct Gf2n {
    pub n: u32,
    modulus: u32,
}

impl Gf2n {
    pub fn new(n: u32) -> Self {
        let modulus = match n {
            1 => 0b11,
            2 => 0b111,
            3 => 0b1011,
            4 => 0b10011,
            5 => 0b100101,
            6 => 0b1000011,
            _ => panic!("no modulus recorded for F_2^{n}"),
        };
        Self { n, modulus }
    }

    pub fn size(&self) -> u32 {
        1 << self.n
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut acc = 0u32;
        let mut a = a;
        let mut b = b;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & (1 << self.n) != 0 {
                a ^= self.modulus;
            }
        }
        acc
    }
}

pub type Poly = BTreeMap<Vec<u32>, u32>;

/// Renders a polynomial in `u_k, u_{k+1}, ...`; field elements print as integers.
pub fn poly_to_string(f: &Poly, k: u32) -> String {
    if f.is_empty() {
        return "0".to_string();
    }
    let terms: Vec<String> = f
        .iter()
        .map(|(e, c)| {
            let mut parts = Vec::new();
            if *c != 1 {
                parts.push(c.to_string());
            }
            for (i, x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => parts.push(format!("u{}", k + i as u32)),
                    _ => parts.push(format!("u{}^{x}", k + i as u32)),
                }
            }
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect();
    terms.join(" + ")
}

fn poly_mul(f: &Gf2n, a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = out.entry(e).or_insert(0);
            *c ^= f.mul(*ca, *cb);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(e.clone()).or_insert(0) ^= c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Solutions of `f (ubar_k + f) = 0` among polynomials in `u_k..u_{n-1}` of
/// total degree below `degree`, or of `xi + xi^2 = 0` in `F_{2^n}` when `k = n`.
/// Products are computed exactly, so no truncation of the target occurs.
pub fn twisted_kernel_bruteforce(n: u32, k: u32, degree: u32) -> Vec<Poly> {
    let field = Gf2n::new(n);
    let nv = (n - k) as usize;
    let mut monomials: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..nv {
        monomials = monomials
            .into_iter()
            .flat_map(|v| {
                (0..degree).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    monomials.retain(|v| v.iter().sum::<u32>() < degree);
    // u_k itself, or 1 when k = n
    let mut shift = Poly::new();
    let mut e = vec![0u32; nv];
    if nv > 0 {
        e[0] = 1;
    }
    shift.insert(e, 1);

    let q = field.size() as u64;
    let count = q.pow(monomials.len() as u32);
    let mut out = Vec::new();
    for idx in 0..count {
        let mut f = Poly::new();
        let mut rest = idx;
        for m in &monomials {
            let c = (rest % q) as u32;
            rest /= q;
            if c != 0 {
                f.insert(m.clone(), c);
            }
        }
        let value = poly_mul(&field, &f, &poly_add(&shift, &f));
        if value.is_empty() {
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for n in 1..=4 {
            let f = Gf2n::new(n);
            for a in 1..f.size() {
                let inv = (1..f.size()).filter(|b| f.mul(a, *b) == 1).count();
                assert_eq!(inv, 1, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn divided_slice_example() {
        let ctx = RingContext::new(3).unwrap();
        let m = CyclicModule::mod2(VarSet::from_vars(&[1]), VarSet::from_vars(&[2]));
        let (k, c) = truncated_kernel_cokernel(&m, Multiplier::U(1), &ctx, DEFAULT_DEPTH);
        assert_eq!(infer_descriptor(&k, 2), Some(CyclicModule::mod2(VarSet::EMPTY, VarSet::from_vars(&[2]))));
        assert_eq!(infer_descriptor(&c, 2), Some(CyclicModule::zero()));
    }

    #[test]
    fn twisted_kernel_n2_k1() {
        let sols = twisted_kernel_bruteforce(2, 1, 3);
        assert_eq!(sols.len(), 2);
        assert!(sols.contains(&Poly::new()));
        let u1: Poly = [(vec![1], 1)].into_iter().collect();
        assert!(sols.contains(&u1));
    }
}
