//! The closed catalog of coefficient modules that occur as page cells.
//!
//! Every cell of every page handled by the engine is a cyclic module over
//! `E_0 = W(F_q)[[u_1, ..., u_{n-1}]]` of one of a few shapes:
//!
//! * `W(F_q)[[u_j : j in B]]` (integral, [`CoeffKind::Witt`]),
//! * `F_q`-spans of monomials `prod u_i^{-a_i} prod u_j^{b_j}` with `a_i >= 1`
//!   for `i` in the divided set `A`, `b_j >= 0` for `j` in the surviving set `B`,
//!   and arbitrary exponents for localized variables ([`CoeffKind::Mod2`]),
//! * the 2-divisible torsion module `E_0 / (2^inf, u_A^inf)` that shows up as
//!   coinvariants in homotopy orbits ([`CoeffKind::WittDivided`]),
//! * a bare `Z/2` used for fringe classes of the Picard spectral sequence.
//!
//! Variables that are in none of the sets have been killed: they act as zero
//! on the module.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SsError};

/// Height-`n` coefficient context. `u_n` is the formal unit `1` and is never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingContext {
    height: u32,
}

impl RingContext {
    pub const MAX_HEIGHT: u32 = 16;

    pub fn new(height: u32) -> Result<Self> {
        if height == 0 || height > Self::MAX_HEIGHT {
            return Err(SsError::InvalidHeight(height));
        }
        Ok(Self { height })
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// `log2` of the residue field size; the field itself is never enumerated here.
    pub fn residue_degree(&self) -> u32 {
        self.height
    }

    /// The deformation parameters `u_1, ..., u_{n-1}`.
    pub fn variables(&self) -> VarSet {
        VarSet::range(1, self.height)
    }

    pub fn num_variables(&self) -> usize {
        (self.height - 1) as usize
    }
}

/// A set of deformation-parameter indices in `1..n`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<u8>", into = "Vec<u8>")]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    /// Variables `lo..hi` (half-open).
    pub fn range(lo: u32, hi: u32) -> Self {
        let mut s = VarSet::EMPTY;
        for v in lo..hi {
            s.insert(v as u8);
        }
        s
    }

    pub fn from_vars(vars: &[u8]) -> Self {
        let mut s = VarSet::EMPTY;
        for &v in vars {
            s.insert(v);
        }
        s
    }

    pub fn contains(&self, v: u8) -> bool {
        v < 32 && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: u8) {
        assert!(v > 0 && v < 32, "variable index {v} out of range");
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: u8) {
        if v < 32 {
            self.0 &= !(1 << v);
        }
    }

    pub fn without(mut self, v: u8) -> Self {
        self.remove(v);
        self
    }

    pub fn with(mut self, v: u8) -> Self {
        self.insert(v);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_disjoint(&self, other: VarSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(&self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn difference(&self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (1..32u8).filter(move |v| self.contains(*v))
    }

    pub fn max_var(&self) -> u8 {
        self.iter().last().unwrap_or(0)
    }
}

impl From<Vec<u8>> for VarSet {
    fn from(v: Vec<u8>) -> Self {
        VarSet::from_vars(&v)
    }
}

impl From<VarSet> for Vec<u8> {
    fn from(s: VarSet) -> Self {
        s.iter().collect()
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CoeffKind {
    Witt,
    Mod2,
    WittDivided,
    Z2,
}

/// One catalog module. The zero module is a distinguished value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicModule {
    pub kind: CoeffKind,
    pub divided: VarSet,
    pub surviving: VarSet,
    #[serde(default, skip_serializing_if = "VarSet::is_empty")]
    pub units: VarSet,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub zero: bool,
}

impl CyclicModule {
    pub fn zero() -> Self {
        Self {
            kind: CoeffKind::Mod2,
            divided: VarSet::EMPTY,
            surviving: VarSet::EMPTY,
            units: VarSet::EMPTY,
            zero: true,
        }
    }

    pub fn witt(surviving: VarSet) -> Self {
        Self {
            kind: CoeffKind::Witt,
            divided: VarSet::EMPTY,
            surviving,
            units: VarSet::EMPTY,
            zero: false,
        }
    }

    pub fn mod2(divided: VarSet, surviving: VarSet) -> Self {
        Self {
            kind: CoeffKind::Mod2,
            divided,
            surviving,
            units: VarSet::EMPTY,
            zero: false,
        }
    }

    /// Mod-2 module in which the variables in `units` have been inverted.
    pub fn mod2_localized(divided: VarSet, surviving: VarSet, units: VarSet) -> Self {
        Self {
            units,
            ..Self::mod2(divided, surviving)
        }
    }

    pub fn witt_divided(divided: VarSet) -> Self {
        Self {
            kind: CoeffKind::WittDivided,
            divided,
            surviving: VarSet::EMPTY,
            units: VarSet::EMPTY,
            zero: false,
        }
    }

    pub fn z2() -> Self {
        Self {
            kind: CoeffKind::Z2,
            divided: VarSet::EMPTY,
            surviving: VarSet::EMPTY,
            units: VarSet::EMPTY,
            zero: false,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// True for the residue field itself: mod 2 with every variable killed.
    pub fn is_residue_field(&self) -> bool {
        !self.zero
            && self.kind == CoeffKind::Mod2
            && self.divided.is_empty()
            && self.surviving.is_empty()
            && self.units.is_empty()
    }

    pub fn is_two_torsion(&self) -> bool {
        !self.zero && matches!(self.kind, CoeffKind::Mod2 | CoeffKind::Z2)
    }

    pub fn validate(&self, ctx: &RingContext) -> Result<()> {
        if self.zero {
            return Ok(());
        }
        let all = ctx.variables();
        let bad = |msg: &str| Err(SsError::InvalidModule(format!("{self}: {msg}")));
        if !self.divided.is_subset(all) || !self.surviving.is_subset(all) || !self.units.is_subset(all) {
            return bad("variable outside 1..n-1");
        }
        if !self.divided.is_disjoint(self.surviving)
            || !self.divided.is_disjoint(self.units)
            || !self.surviving.is_disjoint(self.units)
        {
            return bad("variable sets overlap");
        }
        match self.kind {
            CoeffKind::Witt if !self.divided.is_empty() || !self.units.is_empty() => {
                bad("integral modules carry no divided or localized variables")
            }
            CoeffKind::WittDivided if !self.surviving.is_empty() || !self.units.is_empty() => {
                bad("divisible torsion modules carry no power-series variables")
            }
            CoeffKind::Z2
                if !(self.divided.is_empty() && self.surviving.is_empty() && self.units.is_empty()) =>
            {
                bad("Z/2 carries no variables")
            }
            _ => Ok(()),
        }
    }

    /// Whether the coefficient monomial with exponent vector `exps` (index `i` is
    /// `u_{i+1}`) is a nonzero element, relative to the generator exponents `base`.
    pub fn contains_monomial(&self, base: &[i32], exps: &[i32]) -> bool {
        if self.zero {
            return false;
        }
        base.iter().zip(exps).enumerate().all(|(i, (&b, &e))| {
            let v = (i + 1) as u8;
            if self.surviving.contains(v) {
                e >= b
            } else if self.divided.contains(v) {
                e <= b
            } else if self.units.contains(v) {
                true
            } else {
                e == b
            }
        })
    }

    fn with_surviving(mut self, s: VarSet) -> Self {
        self.surviving = s;
        self
    }

    fn with_divided(mut self, d: VarSet) -> Self {
        self.divided = d;
        self
    }

    /// Short glyph-like tag used in text charts.
    pub fn tag(&self) -> char {
        if self.zero {
            return '.';
        }
        match self.kind {
            CoeffKind::Witt => '#',
            CoeffKind::WittDivided => '%',
            CoeffKind::Z2 => 'x',
            CoeffKind::Mod2 if self.is_residue_field() => 'o',
            CoeffKind::Mod2 => '*',
        }
    }
}

impl fmt::Display for CyclicModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        match self.kind {
            CoeffKind::Witt => write!(f, "WITT({})", self.surviving),
            CoeffKind::Mod2 if self.units.is_empty() => {
                write!(f, "MOD2({};{})", self.divided, self.surviving)
            }
            CoeffKind::Mod2 => write!(f, "MOD2({};{};inv{})", self.divided, self.surviving, self.units),
            CoeffKind::WittDivided => write!(f, "WITT_DIV({})", self.divided),
            CoeffKind::Z2 => write!(f, "Z/2"),
        }
    }
}

/// A ring generator acting on coefficient modules: `2` or `u_l` for `1 <= l <= n`,
/// with `u_n` the unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplier {
    Two,
    U(u8),
}

impl Multiplier {
    pub fn is_unit(&self, ctx: &RingContext) -> bool {
        matches!(self, Multiplier::U(l) if *l as u32 == ctx.height())
    }

    /// The variable this multiplier raises, if it is a stored deformation parameter.
    pub fn variable(&self, ctx: &RingContext) -> Option<u8> {
        match *self {
            Multiplier::U(l) if (l as u32) < ctx.height() => Some(l),
            _ => None,
        }
    }

    pub fn validate(&self, ctx: &RingContext) -> Result<()> {
        match *self {
            Multiplier::U(l) if l == 0 || l as u32 > ctx.height() => Err(SsError::InvalidModule(
                format!("multiplier u_{l} outside 1..={}", ctx.height()),
            )),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplier::Two => write!(f, "2"),
            Multiplier::U(l) => write!(f, "u{l}"),
        }
    }
}

/// Every catalog module at this height, zero included.
pub fn catalog(ctx: &RingContext) -> Vec<CyclicModule> {
    let vars: Vec<u8> = ctx.variables().iter().collect();
    let mut out = vec![CyclicModule::zero(), CyclicModule::z2()];
    for mask in 0u32..(1 << vars.len()) {
        let set = VarSet::from_vars(&vars.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect::<Vec<_>>());
        out.push(CyclicModule::witt(set));
        out.push(CyclicModule::witt_divided(set));
    }
    for code in 0u32..4u32.pow(vars.len() as u32) {
        let (mut a, mut b, mut u) = (VarSet::EMPTY, VarSet::EMPTY, VarSet::EMPTY);
        for (i, v) in vars.iter().enumerate() {
            match code / 4u32.pow(i as u32) % 4 {
                1 => a.insert(*v),
                2 => b.insert(*v),
                3 => u.insert(*v),
                _ => {}
            }
        }
        out.push(CyclicModule::mod2_localized(a, b, u));
    }
    out
}

pub fn multipliers(ctx: &RingContext) -> Vec<Multiplier> {
    std::iter::once(Multiplier::Two).chain((1..=ctx.height()).map(|l| Multiplier::U(l as u8))).collect()
}

/// Kernel and cokernel of multiplication by `g` on `m`.
pub fn mult_kernel_cokernel(
    m: &CyclicModule,
    g: Multiplier,
    ctx: &RingContext,
) -> Result<(CyclicModule, CyclicModule)> {
    m.validate(ctx)?;
    g.validate(ctx)?;
    let zero = CyclicModule::zero();
    if m.is_zero() || g.is_unit(ctx) {
        return Ok((zero, zero));
    }
    Ok(match g {
        Multiplier::Two => match m.kind {
            CoeffKind::Witt => (zero, CyclicModule::mod2(VarSet::EMPTY, m.surviving)),
            CoeffKind::Mod2 | CoeffKind::Z2 => (*m, *m),
            CoeffKind::WittDivided => (CyclicModule::mod2(m.divided, VarSet::EMPTY), zero),
        },
        Multiplier::U(l) => {
            if m.units.contains(l) {
                (zero, zero)
            } else if m.surviving.contains(l) {
                (zero, m.with_surviving(m.surviving.without(l)))
            } else if m.divided.contains(l) {
                (m.with_divided(m.divided.without(l)), zero)
            } else {
                (*m, *m)
            }
        }
    })
}

/// As [`mult_kernel_cokernel`], for a caller that asserts the map is an integral
/// differential: multiplication by 2 on a 2-torsion module is rejected.
pub fn integral_mult_kernel_cokernel(
    m: &CyclicModule,
    g: Multiplier,
    ctx: &RingContext,
) -> Result<(CyclicModule, CyclicModule)> {
    if g == Multiplier::Two && m.is_two_torsion() {
        return Err(SsError::IntegralOnTorsion(m.to_string()));
    }
    mult_kernel_cokernel(m, g, ctx)
}

/// Pontryagin dual on the torsion part of the catalog.
///
/// `F_q` is identified with its dual through a fixed trace form, so only the
/// shape of the module changes: divided and power-series variables trade places,
/// and the divisible module `E_0/(2^inf, u_A^inf)` dualizes to `W[[u_A]]`.
pub fn pontryagin_dual(m: &CyclicModule, cell: &str) -> Result<CyclicModule> {
    if m.is_zero() {
        return Ok(*m);
    }
    match m.kind {
        CoeffKind::Mod2 => Ok(CyclicModule::mod2_localized(m.surviving, m.divided, m.units)),
        CoeffKind::Z2 => Ok(*m),
        CoeffKind::WittDivided => Ok(CyclicModule::witt(m.divided)),
        CoeffKind::Witt => Err(SsError::DualOfIntegral {
            cell: cell.to_string(),
            module: m.to_string(),
        }),
    }
}

/// Kernel and cokernel of a differential `source -> target` whose module part is
/// "multiply by `g`", composed with the comparison between the two cells.
///
/// The two cells are subquotients of one page-2 module, so the comparison is
/// reduction mod 2 (integral source into a torsion target), a quotient map
/// (target has lost power-series variables), an inclusion (source has lost
/// divided variables), or the identity. Where the exact kernel or cokernel is not
/// cyclic (a non-principal augmentation ideal), the descriptor of the larger side
/// is kept: only isomorphism classes of nonzero cells are consumed downstream.
pub fn pair_kernel_cokernel(
    source: &CyclicModule,
    target: &CyclicModule,
    g: Multiplier,
    ctx: &RingContext,
) -> Result<(CyclicModule, CyclicModule)> {
    source.validate(ctx)?;
    target.validate(ctx)?;
    g.validate(ctx)?;
    let unsupported = || SsError::UnsupportedPairing {
        source_module: source.to_string(),
        target_module: target.to_string(),
        multiplier: g.to_string(),
    };
    if source.is_zero() || target.is_zero() {
        return Ok((*source, *target));
    }
    if g == Multiplier::Two {
        if source == target {
            return integral_mult_kernel_cokernel(source, g, ctx);
        }
        return Err(unsupported());
    }
    match (source.kind, target.kind) {
        (CoeffKind::Witt, CoeffKind::Mod2) | (CoeffKind::Witt, CoeffKind::Z2) => {
            // reduce mod 2 first; the kernel contains 2W and is again free
            let reduced = CyclicModule::mod2(VarSet::EMPTY, source.surviving);
            let (_, coker) = pair_kernel_cokernel(&reduced, target, g, ctx)?;
            Ok((*source, coker))
        }
        (CoeffKind::Mod2, CoeffKind::WittDivided) => {
            // land in the 2-torsion socle; the quotient is divisible again
            let socle = CyclicModule::mod2(target.divided, VarSet::EMPTY);
            let (ker, _) = pair_kernel_cokernel(source, &socle, g, ctx)?;
            Ok((ker, *target))
        }
        (CoeffKind::Mod2, CoeffKind::Mod2) => {
            if source == target {
                return mult_kernel_cokernel(source, g, ctx);
            }
            if source.units != target.units {
                return Err(unsupported());
            }
            let acts = |m: &CyclicModule, l: u8| {
                m.surviving.contains(l) || m.divided.contains(l) || m.units.contains(l)
            };
            if source.divided == target.divided && target.surviving.is_subset(source.surviving) {
                // quotient map S -> S/(u_j : j dropped), then multiply
                let coker = match g.variable(ctx) {
                    None => CyclicModule::zero(),
                    Some(l) if target.surviving.contains(l) => {
                        target.with_surviving(target.surviving.without(l))
                    }
                    Some(l) if target.divided.contains(l) || target.units.contains(l) => {
                        CyclicModule::zero()
                    }
                    Some(_) => return Ok((*source, *target)),
                };
                Ok((*source, coker))
            } else if source.surviving == target.surviving && source.divided.is_subset(target.divided) {
                // inclusion S -> T of a socle slice, then multiply
                let ker = match g.variable(ctx) {
                    None => CyclicModule::zero(),
                    Some(l) if source.surviving.contains(l) || source.units.contains(l) => {
                        CyclicModule::zero()
                    }
                    Some(l) if source.divided.contains(l) => {
                        source.with_divided(source.divided.without(l))
                    }
                    Some(l) if !acts(target, l) => return Ok((*source, *target)),
                    Some(_) => return Ok((*source, *target)),
                };
                Ok((ker, *target))
            } else {
                Err(unsupported())
            }
        }
        (CoeffKind::Mod2, CoeffKind::Z2) | (CoeffKind::Z2, CoeffKind::Mod2) | (CoeffKind::Z2, CoeffKind::Z2) => {
            match g.variable(ctx) {
                None => Ok((CyclicModule::zero(), CyclicModule::zero())),
                Some(_) => Err(unsupported()),
            }
        }
        _ => Err(unsupported()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> RingContext {
        RingContext::new(n).unwrap()
    }

    fn vs(v: &[u8]) -> VarSet {
        VarSet::from_vars(v)
    }

    #[test]
    fn two_is_regular_on_witt() {
        let c = ctx(2);
        let (k, q) = mult_kernel_cokernel(&CyclicModule::witt(vs(&[1])), Multiplier::Two, &c).unwrap();
        assert!(k.is_zero());
        assert_eq!(q, CyclicModule::mod2(VarSet::EMPTY, vs(&[1])));
    }

    #[test]
    fn u1_on_power_series_drops_variable() {
        let c = ctx(3);
        let (k, q) =
            mult_kernel_cokernel(&CyclicModule::mod2(VarSet::EMPTY, vs(&[1, 2])), Multiplier::U(1), &c).unwrap();
        assert!(k.is_zero());
        assert_eq!(q, CyclicModule::mod2(VarSet::EMPTY, vs(&[2])));
    }

    #[test]
    fn u1_on_divided_takes_the_bottom_slice() {
        let c = ctx(3);
        let (k, q) =
            mult_kernel_cokernel(&CyclicModule::mod2(vs(&[1]), vs(&[2])), Multiplier::U(1), &c).unwrap();
        assert_eq!(k, CyclicModule::mod2(VarSet::EMPTY, vs(&[2])));
        assert!(q.is_zero());
    }

    #[test]
    fn killed_variable_acts_by_zero_and_un_is_iso() {
        let c = ctx(3);
        let m = CyclicModule::mod2(VarSet::EMPTY, vs(&[2]));
        assert_eq!(mult_kernel_cokernel(&m, Multiplier::U(1), &c).unwrap(), (m, m));
        let (k, q) = mult_kernel_cokernel(&m, Multiplier::U(3), &c).unwrap();
        assert!(k.is_zero() && q.is_zero());
    }

    #[test]
    fn two_on_torsion_is_rejected_when_integral() {
        let c = ctx(2);
        let m = CyclicModule::mod2(VarSet::EMPTY, vs(&[1]));
        assert_eq!(mult_kernel_cokernel(&m, Multiplier::Two, &c).unwrap(), (m, m));
        assert!(matches!(
            integral_mult_kernel_cokernel(&m, Multiplier::Two, &c),
            Err(SsError::IntegralOnTorsion(_))
        ));
    }

    #[test]
    fn dual_examples() {
        let f = CyclicModule::mod2(VarSet::EMPTY, VarSet::EMPTY);
        assert_eq!(pontryagin_dual(&f, "c").unwrap(), f);
        assert_eq!(
            pontryagin_dual(&CyclicModule::mod2(VarSet::EMPTY, vs(&[1])), "c").unwrap(),
            CyclicModule::mod2(vs(&[1]), VarSet::EMPTY)
        );
        assert_eq!(
            pontryagin_dual(&CyclicModule::mod2(vs(&[1, 2]), VarSet::EMPTY), "c").unwrap(),
            CyclicModule::mod2(VarSet::EMPTY, vs(&[1, 2]))
        );
        assert!(matches!(
            pontryagin_dual(&CyclicModule::witt(vs(&[1])), "(0,0)"),
            Err(SsError::DualOfIntegral { .. })
        ));
        assert_eq!(
            pontryagin_dual(&CyclicModule::witt_divided(vs(&[1])), "c").unwrap(),
            CyclicModule::witt(vs(&[1]))
        );
    }

    #[test]
    fn validation() {
        let c = ctx(2);
        assert!(CyclicModule::mod2(vs(&[1]), vs(&[1])).validate(&c).is_err());
        assert!(CyclicModule::mod2(VarSet::EMPTY, vs(&[2])).validate(&c).is_err());
        let mut w = CyclicModule::witt(VarSet::EMPTY);
        w.divided = vs(&[1]);
        assert!(w.validate(&c).is_err());
        assert!(RingContext::new(0).is_err());
    }

    #[test]
    fn reduction_pairing_keeps_a_free_kernel() {
        let c = ctx(2);
        let src = CyclicModule::witt(vs(&[1]));
        let tgt = CyclicModule::mod2(VarSet::EMPTY, vs(&[1]));
        let (k, q) = pair_kernel_cokernel(&src, &tgt, Multiplier::U(1), &c).unwrap();
        assert_eq!(k, src);
        assert_eq!(q, CyclicModule::mod2(VarSet::EMPTY, VarSet::EMPTY));
        let (k, q) = pair_kernel_cokernel(&src, &CyclicModule::mod2(VarSet::EMPTY, VarSet::EMPTY), Multiplier::U(2), &c)
            .unwrap();
        assert_eq!(k, src);
        assert!(q.is_zero());
    }

    #[test]
    fn pairing_is_dual_symmetric() {
        let c = ctx(3);
        let cases = [
            (CyclicModule::mod2(VarSet::EMPTY, vs(&[1, 2])), CyclicModule::mod2(VarSet::EMPTY, vs(&[2])), Multiplier::U(2)),
            (CyclicModule::mod2(VarSet::EMPTY, vs(&[2])), CyclicModule::mod2(VarSet::EMPTY, vs(&[2])), Multiplier::U(2)),
            (CyclicModule::mod2(VarSet::EMPTY, vs(&[1, 2])), CyclicModule::mod2(VarSet::EMPTY, VarSet::EMPTY), Multiplier::U(3)),
        ];
        for (s, t, g) in cases {
            let (k, q) = pair_kernel_cokernel(&s, &t, g, &c).unwrap();
            let ds = pontryagin_dual(&t, "").unwrap();
            let dt = pontryagin_dual(&s, "").unwrap();
            let (dk, dq) = pair_kernel_cokernel(&ds, &dt, g, &c).unwrap();
            assert_eq!(pontryagin_dual(&q, "").unwrap(), dk, "{s} -> {t}");
            assert_eq!(pontryagin_dual(&k, "").unwrap(), dq, "{s} -> {t}");
        }
    }
}
