//! The Picard spectral sequence at stem 0 and assembly of the Picard group.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coefficients::{CyclicModule, RingContext, VarSet};
use crate::error::{Result, SsError};
use crate::page::{CellKey, Monomial, Page, SpectralSequence, Window};
use crate::presets::{self, PresetId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fate {
    ImportedSource,
    ImportedTarget,
    Fringe,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardClass {
    pub ell: i64,
    pub filtration: i64,
    /// Additive monomial, which sits in stem -1.
    pub monomial: String,
    pub module: String,
    pub fate: Fate,
    /// Page of the differential that resolves the class.
    pub page: u32,
}

impl PicardClass {
    pub fn additive_monomial(ell: i64) -> Monomial {
        Monomial::ro(2 * ell - 1, -ell, 4 * ell - 1)
    }
}

fn v2(x: i64) -> u32 {
    x.trailing_zeros()
}

/// Predicted fate of the class with parameter `ell`.
pub fn classify(ell: i64, ctx: &RingContext) -> (Fate, u32) {
    let n = ctx.height();
    let v = v2(ell);
    if v < n {
        let page = (1u32 << (v + 2)) - 1;
        if ell == 1 << v {
            (Fate::Fringe, page)
        } else {
            (Fate::ImportedSource, page)
        }
    } else {
        (Fate::ImportedTarget, (1u32 << (n + 1)) - 1)
    }
}

/// Picard spectral sequence over its default window.
pub fn pic_ss(ctx: &RingContext) -> Result<SpectralSequence> {
    presets::build(PresetId::PicSs, ctx, presets::default_window(PresetId::PicSs, ctx))
}

fn stem0_cell<'a>(p: &'a Page, m: &Monomial) -> Option<&'a crate::page::Summand> {
    let key = p.key_of(m);
    debug_assert_eq!(key.stem, 0);
    p.find(m)
}

/// Every stem-0 class of positive filtration in the window, with its fate.
/// Each predicted fate is checked against the engine's pages.
pub fn census_and_import(ctx: &RingContext) -> Result<Vec<PicardClass>> {
    let ss = pic_ss(ctx)?;
    let pages = ss.pages()?;
    let window = ss.e2.window;
    let at = |r: u32| pages.iter().find(|p| p.r == r).unwrap_or_else(|| pages.last().unwrap());
    let mut out = Vec::new();
    let mut ell = 1i64;
    while 4 * ell - 1 < window.filts.1 {
        let m = PicardClass::additive_monomial(ell);
        let (fate, page) = classify(ell, ctx);
        let before = stem0_cell(at(page), &m).ok_or_else(|| {
            SsError::Consistency(format!("class ell={ell} missing on page {page} of the Picard SS"))
        })?;
        let after = stem0_cell(at(page + 1), &m);
        let module = before.module;
        match fate {
            Fate::Fringe => {
                // only the twisted differential may touch it
                let k = v2(ell) + 1;
                let expected = CyclicModule::mod2(VarSet::EMPTY, VarSet::range(k, ctx.height()));
                if after.map(|s| s.module) != Some(expected) || module != expected {
                    return Err(SsError::Consistency(format!("fringe class ell={ell} is not {expected}")));
                }
            }
            Fate::ImportedSource | Fate::ImportedTarget => {
                if after.is_some() {
                    return Err(SsError::Consistency(format!(
                        "class ell={ell} survives page {page} although {fate:?} was predicted"
                    )));
                }
                let source = presets::closed_form_rules(PresetId::PicSs, ctx)
                    .iter()
                    .any(|r| r.page == page && r.matches(&m));
                if source != (fate == Fate::ImportedSource) {
                    return Err(SsError::Consistency(format!("class ell={ell}: import direction mismatch")));
                }
            }
        }
        out.push(PicardClass {
            ell,
            filtration: 4 * ell - 1,
            monomial: m.to_string(),
            module: module.to_string(),
            fate,
            page,
        });
        ell += 1;
    }
    let einf = ss.einf()?;
    let surviving = einf.summands().filter(|(k, _)| k.stem == 0 && k.filt >= 2).count();
    let fringes = out.iter().filter(|c| c.fate == Fate::Fringe).count();
    if surviving != fringes {
        return Err(SsError::Consistency(format!(
            "{surviving} stem-0 survivors in filtration >= 2, expected {fringes} fringe classes"
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedKernel {
    pub k: u32,
    pub page: u32,
    pub domain: String,
    pub equation: String,
    pub solutions: Vec<String>,
    pub order: u64,
}

/// Kernel of the twisted differential `d(x) + x^2` on the fringe class at
/// filtration `2^{k+1}-1`.
///
/// For `k < n` the domain `F_q[[u_k..u_{n-1}]]` is an integral domain, so
/// `f (ubar_k + f) = 0` forces `f = 0` or `f = ubar_k`. For `k = n` the
/// domain is `F_q` and `xi + xi^2 = 0` has roots `0` and `1`.
pub fn twisted_kernel(k: u32, ctx: &RingContext) -> Result<TwistedKernel> {
    let n = ctx.height();
    if k == 0 || k > n {
        return Err(SsError::Consistency(format!("fringe index {k} outside 1..={n}")));
    }
    let module = CyclicModule::mod2(VarSet::EMPTY, VarSet::range(k, n));
    let (domain, equation, solutions) = if k < n {
        (module.to_string(), format!("f*(u{k} + f) = 0"), vec!["0".to_string(), format!("u{k}")])
    } else {
        (module.to_string(), "xi + xi^2 = 0".to_string(), vec!["0".to_string(), "1".to_string()])
    };
    Ok(TwistedKernel {
        k,
        page: (1 << (k + 1)) - 1,
        domain,
        equation,
        order: solutions.len() as u64,
        solutions,
    })
}

/// Sanity model for the domain argument behind the order of `H^1` on units:
/// the square roots of 1 among integers of absolute value at most `bound`.
pub fn integer_square_roots_of_one(bound: i64) -> Vec<i64> {
    (-bound..=bound).filter(|x| x * x == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationEntry {
    pub order: u64,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardReport {
    pub height: u32,
    pub orders: BTreeMap<i64, FiltrationEntry>,
    pub upper_bound: u64,
    pub lower_bound: u64,
    pub total_order: u64,
    pub group: String,
    pub generator: String,
    pub census: Vec<PicardClass>,
    pub twisted_kernels: Vec<TwistedKernel>,
    pub label_notes: Vec<String>,
}

impl PicardReport {
    /// Filtration table for terminal output.
    pub fn table(&self) -> String {
        let mut s = format!("Pic at height {}: {}\n", self.height, self.group);
        s.push_str("filtration  order  source\n");
        for (f, e) in &self.orders {
            s.push_str(&format!("{f:>10}  {:>5}  {}\n", e.order, e.provenance));
        }
        s.push_str(&format!(
            "bounds: {} <= |Pic| <= {}, generated by {}\n",
            self.lower_bound, self.upper_bound, self.generator
        ));
        for note in &self.label_notes {
            s.push_str(&format!("note: {note}\n"));
        }
        s
    }
}

pub fn assemble_picard(ctx: &RingContext) -> Result<PicardReport> {
    let n = ctx.height();
    let census = census_and_import(ctx)?;
    let mut orders = BTreeMap::new();
    orders.insert(
        0,
        FiltrationEntry { order: 2, provenance: "declared: H^0(C2, Pic(E_n)) = Z/2".to_string() },
    );
    let roots = integer_square_roots_of_one(1 << 10);
    if roots != [-1, 1] {
        return Err(SsError::Consistency("units of order two in Z are not {-1, 1}".to_string()));
    }
    orders.insert(
        1,
        FiltrationEntry {
            order: 2,
            provenance: "H^1(C2, E_0^x) = Z/2: x^2 = 1 in a domain gives x = 1 or x = -1".to_string(),
        },
    );
    let mut kernels = Vec::new();
    for c in census.iter().filter(|c| c.fate == Fate::Fringe) {
        let k = v2(c.ell) + 1;
        let tk = twisted_kernel(k, ctx)?;
        orders.insert(
            c.filtration,
            FiltrationEntry {
                order: tk.order,
                provenance: format!("fringe d_{} + squaring on {}: kernel {{{}}}", tk.page, tk.domain, tk.solutions.join(", ")),
            },
        );
        kernels.push(tk);
    }
    let upper: u64 = orders.values().map(|e| e.order).product();
    let hf = presets::build(PresetId::HfpssEn, ctx, presets::default_window(PresetId::HfpssEn, ctx))?.einf()?;
    let lower = crate::analysis::minimal_period(&hf)? as u64;
    if upper < lower {
        return Err(SsError::Consistency(format!("Picard upper bound {upper} below lower bound {lower}")));
    }
    let total = upper;
    let group = if upper == lower { format!("Z/{total}") } else { format!("order between {lower} and {upper}") };
    let mut label_notes: Vec<String> = Vec::new();
    let fringe_filts: Vec<String> = orders.keys().filter(|f| **f >= 2).map(i64::to_string).collect();
    let alt: Vec<String> = (1..=n).map(|k| ((1i64 << k) - 1).to_string()).collect();
    label_notes.push(format!(
        "fringe filtrations computed as 4*ell-1: {}; the alternative listing 2^k-1 would give {}",
        fringe_filts.join(", "),
        alt.join(", ")
    ));
    label_notes.push(format!(
        "the last fringe class sits at filtration {}, not {}",
        (1i64 << (n + 1)) - 1,
        1i64 << n
    ));
    Ok(PicardReport {
        height: n,
        orders,
        upper_bound: upper,
        lower_bound: lower,
        total_order: total,
        group,
        generator: "ΣE_n^{hC2}".to_string(),
        census,
        twisted_kernels: kernels,
        label_notes,
    })
}

/// Window used when checking that the stem-0 census is complete.
pub fn census_window(ctx: &RingContext) -> Window {
    presets::default_window(PresetId::PicSs, ctx)
}

/// Cell of the Picard SS that holds the fringe class for `k`.
pub fn fringe_cell(k: u32) -> CellKey {
    CellKey::new(0, (1 << (k + 1)) - 1)
}
