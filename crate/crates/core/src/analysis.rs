//! Homotopy tables read off `E_inf`, and the headline numbers derived from them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coefficients::RingContext;
use crate::error::{Result, SsError};
use crate::page::{turn_page, Alphabet, CellKey, Monomial, Page, SpectralSequence};
use crate::presets::{self, PresetId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StemEntry {
    pub stem: i64,
    /// `(filtration, module)` for each surviving summand.
    pub cells: Vec<(i64, String)>,
}

impl StemEntry {
    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }
}

/// `E_inf` of `ss` in its window, after checking that no later page changes it.
pub fn converged_einf(ss: &SpectralSequence) -> Result<Page> {
    let padded = ss.einf_padded()?;
    padded.check_untainted()?;
    let next = turn_page(&padded, &ss.rules)?;
    if next.clipped().descriptors() != padded.clipped().descriptors() {
        return Err(SsError::Unconverged(padded.r));
    }
    Ok(padded.clipped())
}

/// Associated-graded homotopy per stem. Stems outside the window are rejected.
pub fn homotopy_table(p: &Page, stems: std::ops::Range<i64>) -> Result<Vec<StemEntry>> {
    if stems.start < p.window.stems.0 || stems.end > p.window.stems.1 {
        return Err(SsError::BadWindow(format!(
            "stems {stems:?} not inside the computed window {:?}",
            p.window.stems
        )));
    }
    let mut by_stem: BTreeMap<i64, Vec<(i64, String)>> = BTreeMap::new();
    for (k, s) in p.summands() {
        if p.window.contains(k) {
            by_stem.entry(k.stem).or_default().push((k.filt, s.module.to_string()));
        }
    }
    Ok(stems
        .map(|stem| {
            let mut cells = by_stem.remove(&stem).unwrap_or_default();
            cells.sort();
            StemEntry { stem, cells }
        })
        .collect())
}

type Descriptors = BTreeMap<CellKey, Vec<crate::coefficients::CyclicModule>>;

/// Whether `b` at `(s + d, f)` agrees with `a` at `(s, f)` wherever both
/// stems lie in the windows.
fn matches_shifted(a: &Page, da: &Descriptors, b: &Page, db: &Descriptors, d: i64) -> bool {
    let in_b = |s: i64| (b.window.stems.0..b.window.stems.1).contains(&s);
    let in_a = |s: i64| (a.window.stems.0..a.window.stems.1).contains(&s);
    da.iter()
        .filter(|(k, _)| in_b(k.stem + d))
        .all(|(k, v)| db.get(&CellKey { stem: k.stem + d, ..*k }) == Some(v))
        && db
            .iter()
            .filter(|(k, _)| in_a(k.stem - d))
            .all(|(k, v)| da.get(&CellKey { stem: k.stem - d, ..*k }) == Some(v))
}

/// Smallest positive stem shift carrying the page to itself. Only shifts up
/// to half the window width are tested, so the overlap is at least one shift.
pub fn minimal_period(p: &Page) -> Result<i64> {
    let d = p.descriptors();
    let width = p.window.stems.1 - p.window.stems.0;
    (1..=width / 2)
        .find(|s| matches_shifted(p, &d, p, &d, *s))
        .ok_or_else(|| SsError::Consistency(format!("no period up to {} in the window", width / 2)))
}

fn zero_triples(table: &[StemEntry], period: i64) -> Vec<i64> {
    let zero: BTreeMap<i64, bool> = table.iter().map(|e| (e.stem, e.is_zero())).collect();
    let start = table.first().map_or(0, |e| e.stem);
    (start..start + period)
        .filter(|k| (0..3).all(|i| zero.get(&(k + i)).copied().unwrap_or(false)))
        .map(|k| k.rem_euclid(period))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFamily {
    pub j: u32,
    pub stems: Vec<i64>,
    pub survivors: usize,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub height: u32,
    pub period: i64,
    pub residues: Vec<i64>,
    pub nonzero_stems: Vec<i64>,
    pub witness_families: Vec<WitnessFamily>,
}

/// `(ubar a_sigma)^i ubar^{(2^{j-1}-1) 2^{n+2-j}} u_{2sigma}^{(2^{j-1}-1) 2^{n+1-j}}`.
pub fn witness_monomial(n: u32, j: u32, i: i64) -> Monomial {
    let c = (1i64 << (j - 1)) - 1;
    Monomial::ro(i + c * (1 << (n + 2 - j)), c * (1 << (n + 1 - j)), i)
}

pub fn hfpss_einf(ctx: &RingContext) -> Result<Page> {
    converged_einf(&presets::build(PresetId::HfpssEn, ctx, presets::default_window(PresetId::HfpssEn, ctx))?)
}

pub fn find_gap(ctx: &RingContext) -> Result<GapReport> {
    let n = ctx.height();
    let p = presets::period(ctx);
    let einf = hfpss_einf(ctx)?;
    let table = homotopy_table(&einf, einf.window.stems.0..einf.window.stems.1)?;
    let residues = zero_triples(&table, p);
    if residues.len() != 1 {
        return Err(SsError::Consistency(format!("expected one gap residue, found {residues:?}")));
    }
    let mut families = Vec::new();
    for j in 1..=n {
        let top = (1i64 << (n + 2 - j)) - 2;
        let mut stems = Vec::new();
        let mut survivors = 0;
        for i in 1..=top {
            let m = witness_monomial(n, j, i);
            let key = einf.key_of(&m);
            stems.push(key.stem);
            if einf.find(&m).is_some_and(|s| !s.module.is_zero()) {
                survivors += 1;
            }
        }
        families.push(WitnessFamily { j, stems, survivors, size: top as usize });
    }
    let nonzero_stems = table.iter().filter(|e| !e.is_zero() && e.stem < p).map(|e| e.stem).collect();
    Ok(GapReport { height: n, period: p, residues, nonzero_stems, witness_families: families })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftMethod {
    Gap,
    Pattern,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongestTrace {
    pub page: u32,
    pub source: (i64, i64),
    pub target: (i64, i64),
    /// `2^{n+1} + 2 + 4 + ... + 2^n`
    pub expected_stem: i64,
    pub fires: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftReport {
    pub height: u32,
    pub method: ShiftMethod,
    pub shift: i64,
    pub modulus: i64,
    pub gap_shift: Option<i64>,
    pub pattern_candidates: Option<Vec<i64>>,
    pub shift_mod4_is_n: bool,
    pub det_twist_mod4_is_n: bool,
    pub longest_trace: LongestTrace,
}

pub fn ien_einf(ctx: &RingContext) -> Result<Page> {
    converged_einf(&presets::build(PresetId::HfpssIen, ctx, presets::default_window(PresetId::HfpssIen, ctx))?)
}

/// `j + 3` for the unique zero triple `j` of the dual.
pub fn gap_shift(ctx: &RingContext, ien: &Page) -> Result<i64> {
    let p = presets::period(ctx);
    let table = homotopy_table(ien, ien.window.stems.0..ien.window.stems.1)?;
    match zero_triples(&table, p).as_slice() {
        [j] => Ok((j + 3).rem_euclid(p)),
        other => Err(SsError::Consistency(format!("dual has zero triples at {other:?}"))),
    }
}

/// Every `d` in one period with `IE(s + d) = E(s)` cell by cell.
pub fn pattern_shifts(ctx: &RingContext, en: &Page, ien: &Page) -> Vec<i64> {
    let da = en.descriptors();
    let db = ien.descriptors();
    (0..presets::period(ctx)).filter(|d| matches_shifted(en, &da, ien, &db, *d)).collect()
}

/// The `d_{2^{n+1}-1}` of the mod-`I_n` Tate data at filtration 0, located
/// through the computed rules.
pub fn longest_differential_trace(ctx: &RingContext) -> Result<LongestTrace> {
    let n = ctx.height();
    let rules = presets::mod_ik_rules(ctx, n);
    let page = (1u32 << (n + 1)) - 1;
    let rule = rules
        .iter()
        .find(|r| r.page == page)
        .ok_or_else(|| SsError::Consistency(format!("no d_{page} rule for k = n")))?;
    debug_assert_eq!(rule.alphabet, Alphabet::Tate);
    let e = rule.residue.rem_euclid(rule.modulus);
    let source = Monomial::tate(e, 0, n as u8);
    let target = source.times(rule.delta);
    let (sk, tk) = (source.raw_key(), target.raw_key());
    let ss = presets::build(PresetId::TateEnModIk(n), ctx, presets::default_window(PresetId::TateEnModIk(n), ctx))?;
    let before = ss.page(page)?;
    let after = ss.page(page + 1)?;
    let fires = before.find(&source).is_some() && after.find(&source).is_none() && rule.matches(&source);
    let expected_stem = (1i64 << (n + 1)) + (1..=n).map(|i| 1i64 << i).sum::<i64>();
    Ok(LongestTrace {
        page,
        source: (sk.stem, sk.filt),
        target: (tk.stem, tk.filt),
        expected_stem,
        fires,
    })
}

pub fn gh_shift(ctx: &RingContext, method: ShiftMethod) -> Result<ShiftReport> {
    let n = ctx.height() as i64;
    let p = presets::period(ctx);
    let ien = ien_einf(ctx)?;
    let gap = match method {
        ShiftMethod::Gap | ShiftMethod::Both => Some(gap_shift(ctx, &ien)?),
        ShiftMethod::Pattern => None,
    };
    let pattern = match method {
        ShiftMethod::Pattern | ShiftMethod::Both => {
            let cands = pattern_shifts(ctx, &hfpss_einf(ctx)?, &ien);
            if cands.len() != 1 {
                return Err(SsError::Consistency(format!("pattern shift not unique: {cands:?}")));
            }
            Some(cands)
        }
        ShiftMethod::Gap => None,
    };
    let shift = match (gap, pattern.as_ref().map(|c| c[0])) {
        (Some(a), Some(b)) if a != b => {
            return Err(SsError::Consistency(format!("gap method gives {a}, pattern method gives {b}")))
        }
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => unreachable!("at least one method runs"),
    };
    let det = -n + 1 - if n % 2 == 0 { 1 } else { -1 };
    Ok(ShiftReport {
        height: ctx.height(),
        method,
        shift,
        modulus: p,
        gap_shift: gap,
        pattern_candidates: pattern,
        shift_mod4_is_n: (shift - n).rem_euclid(4) == 0,
        det_twist_mod4_is_n: (det - n).rem_euclid(4) == 0,
        longest_trace: longest_differential_trace(ctx)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExoticReport {
    pub height: u32,
    pub modulus: i64,
    pub gh_shift: i64,
    /// "computed" when the shift came from the engine, else "declared".
    pub gh_source: String,
    /// Declared: dual of `E_n^{hC2}` is `Sigma^{-n^2} E_n^{hC2}`.
    pub dual_shift: i64,
    /// Declared: the determinant twist acts as `Sigma^{1-(-1)^n}`.
    pub det_shift: i64,
    pub via_duality: i64,
    pub via_determinant: i64,
    pub delta: i64,
    pub exotic_twist: i64,
}

/// Compares the two computations of the Gross-Hopkins dual on `E_n^{hC2}`.
pub fn exotic_ledger(n: u32, gh_shift: i64, gh_source: &str) -> Result<ExoticReport> {
    let n_ = n as i64;
    let modulus = 1i64 << (n + 2);
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let dual_shift = -n_ * n_;
    let det_shift = 1 - sign;
    let via_duality = gh_shift - dual_shift;
    let via_determinant = n_ * n_ - n_ + det_shift;
    let twist = via_duality - via_determinant;
    let delta = twist.rem_euclid(modulus);
    if delta == 0 {
        return Err(SsError::Consistency(format!("exotic delta vanishes mod {modulus}")));
    }
    Ok(ExoticReport {
        height: n,
        modulus,
        gh_shift,
        gh_source: gh_source.to_string(),
        dual_shift,
        det_shift,
        via_duality,
        via_determinant,
        delta,
        exotic_twist: twist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exotic_small() {
        assert_eq!(exotic_ledger(1, 5, "computed").unwrap().exotic_twist, 4);
        let r = exotic_ledger(2, 6, "computed").unwrap();
        assert_eq!((r.exotic_twist, r.delta), (8, 8));
    }

    #[test]
    fn witness_stems() {
        // stem 4b + i
        let m = witness_monomial(2, 2, 1);
        assert_eq!(m.raw_key().stem, 4 * m.exps[1] + 1);
    }
}
