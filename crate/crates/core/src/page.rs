//! Sparse pages of cyclic summands and the page-turning engine.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coefficients::{pair_kernel_cokernel, pontryagin_dual, CoeffKind, CyclicModule, Multiplier, RingContext};
use crate::error::{Result, SsError};

/// Chart coordinates. `y` is the sign-representation coefficient of an
/// RO(C2)-graded cell and is zero everywhere else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellKey {
    pub stem: i64,
    pub filt: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub y: i64,
}

fn is_zero(v: &i64) -> bool {
    *v == 0
}

impl CellKey {
    pub fn new(stem: i64, filt: i64) -> Self {
        Self { stem, filt, y: 0 }
    }

    pub fn with_y(stem: i64, filt: i64, y: i64) -> Self {
        Self { stem, filt, y }
    }
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y == 0 {
            write!(f, "({},{})", self.stem, self.filt)
        } else {
            write!(f, "({},{};{}s)", self.stem, self.filt, self.y)
        }
    }
}

/// `x + y*sigma` in RO(C2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RODegree {
    pub x: i64,
    pub y: i64,
}

impl RODegree {
    pub const RHO: RODegree = RODegree { x: 1, y: 1 };

    pub fn is_integer(&self) -> bool {
        self.y == 0
    }
}

impl std::ops::Add for RODegree {
    type Output = RODegree;
    fn add(self, o: RODegree) -> RODegree {
        RODegree { x: self.x + o.x, y: self.y + o.y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alphabet {
    /// `ubar`, `u_{2sigma}`, `a_sigma`.
    RoHfpss,
    /// `u`, `alpha`.
    Tate,
    /// `u`, `a` with `a` in homological degree 1.
    Hoss,
    /// Declared cells carrying their own coordinates `[stem, filt, y]`.
    Formal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub alphabet: Alphabet,
    pub exps: [i64; 3],
    /// `k` for the formal prefix `1/(2 u_1 ... u_{k-1})`; zero when absent.
    #[serde(default)]
    pub divided: u8,
}

impl Monomial {
    pub fn ro(a: i64, b: i64, c: i64) -> Self {
        Self { alphabet: Alphabet::RoHfpss, exps: [a, b, c], divided: 0 }
    }

    pub fn tate(e: i64, i: i64, divided: u8) -> Self {
        Self { alphabet: Alphabet::Tate, exps: [e, i, 0], divided }
    }

    pub fn hoss(e: i64, s: i64, divided: u8) -> Self {
        Self { alphabet: Alphabet::Hoss, exps: [e, s, 0], divided }
    }

    pub fn formal(key: CellKey) -> Self {
        Self { alphabet: Alphabet::Formal, exps: [key.stem, key.filt, key.y], divided: 0 }
    }

    pub fn ro_degree(&self) -> RODegree {
        let [a, b, c] = self.exps;
        match self.alphabet {
            Alphabet::RoHfpss => RODegree { x: a + 2 * b, y: a - 2 * b - c },
            _ => RODegree { x: self.raw_key().stem, y: 0 },
        }
    }

    /// Position before any page shift or dualization.
    pub fn raw_key(&self) -> CellKey {
        let [a, b, c] = self.exps;
        match self.alphabet {
            Alphabet::RoHfpss => CellKey::with_y(a + 2 * b, c, a - 2 * b - c),
            Alphabet::Tate => CellKey::new(2 * a + b, b),
            Alphabet::Hoss => CellKey::new(2 * a - b, b),
            Alphabet::Formal => CellKey::with_y(a, b, c),
        }
    }

    /// Exponent of the generator that forces 2-torsion coefficients.
    pub fn torsion_exponent(&self) -> i64 {
        match self.alphabet {
            Alphabet::RoHfpss => self.exps[2],
            Alphabet::Hoss => self.exps[1],
            _ => 0,
        }
    }

    pub fn times(&self, delta: [i64; 3]) -> Self {
        let mut m = *self;
        for (e, d) in m.exps.iter_mut().zip(delta) {
            *e += d;
        }
        m
    }
}

fn power(out: &mut Vec<String>, name: &str, e: i64) {
    match e {
        0 => {}
        1 => out.push(name.to_string()),
        _ => out.push(format!("{name}^{e}")),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let names: [&str; 3] = match self.alphabet {
            Alphabet::RoHfpss => ["ub", "u2s", "as"],
            Alphabet::Tate => ["u", "al", ""],
            Alphabet::Hoss => ["u", "a", ""],
            Alphabet::Formal => {
                let [s, t, y] = self.exps;
                return write!(f, "[{s},{t},{y}]");
            }
        };
        for (n, e) in names.iter().zip(self.exps) {
            if !n.is_empty() {
                power(&mut parts, n, e);
            }
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("."))?;
        if self.divided > 0 {
            write!(f, "/(2")?;
            for i in 1..self.divided {
                write!(f, "u{i}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub generator: Monomial,
    pub module: CyclicModule,
    /// Exponents of `u_1..u_{n-1}` carried by the generator itself.
    pub base: Vec<i32>,
    pub label: String,
    /// Set when a differential partner fell outside the padded window, so the
    /// module may be wrong. Must never reach the user window.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub tainted: bool,
}

impl Summand {
    pub fn new(generator: Monomial, module: CyclicModule, base: Vec<i32>) -> Self {
        Self { label: generator.to_string(), generator, module, base, tainted: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Grading {
    Hfpss,
    Tate,
    Hoss,
    /// Pontryagin dual of `Tate`: unbounded, homological.
    TateDual,
}

impl Grading {
    /// Filtration change of a page-`r` differential.
    pub fn filt_step(&self, r: u32) -> i64 {
        match self {
            Grading::Hoss | Grading::TateDual => -(r as i64),
            _ => r as i64,
        }
    }

    pub fn min_filt(&self) -> Option<i64> {
        match self {
            Grading::Tate | Grading::TateDual => None,
            _ => Some(0),
        }
    }
}

/// Half-open ranges of stems, filtrations and sign-degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub stems: (i64, i64),
    pub filts: (i64, i64),
    #[serde(default = "default_ys")]
    pub ys: (i64, i64),
}

fn default_ys() -> (i64, i64) {
    (0, 1)
}

impl Window {
    pub fn new(stems: (i64, i64), filts: (i64, i64)) -> Result<Self> {
        let w = Self { stems, filts, ys: default_ys() };
        w.check()?;
        Ok(w)
    }

    pub fn check(&self) -> Result<()> {
        if self.stems.0 >= self.stems.1 || self.filts.0 >= self.filts.1 || self.ys.0 >= self.ys.1 {
            return Err(SsError::BadWindow(format!("{self}")));
        }
        Ok(())
    }

    /// Parses `a:b,c:d` (stems then filtrations).
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || SsError::BadWindow(s.to_string());
        let range = |p: &str| -> Result<(i64, i64)> {
            let (a, b) = p.split_once(':').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        };
        let (st, fi) = s.split_once(',').ok_or_else(bad)?;
        Window::new(range(st)?, range(fi)?)
    }

    pub fn contains(&self, k: &CellKey) -> bool {
        (self.stems.0..self.stems.1).contains(&k.stem)
            && (self.filts.0..self.filts.1).contains(&k.filt)
            && (self.ys.0..self.ys.1).contains(&k.y)
    }

    pub fn padded(&self, pad: i64) -> Self {
        Self {
            stems: (self.stems.0 - pad, self.stems.1 + pad),
            filts: (self.filts.0 - pad, self.filts.1 + pad),
            ys: self.ys,
        }
    }

    pub fn shifted(&self, d: i64) -> Self {
        Self { stems: (self.stems.0 + d, self.stems.1 + d), ..*self }
    }

    /// Stem range after `stem -> -stem`.
    pub fn negated(&self) -> Self {
        Self { stems: (1 - self.stems.1, 1 - self.stems.0), ..*self }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{}:{}", self.stems.0, self.stems.1, self.filts.0, self.filts.1)
    }
}

/// Displayed stem is `sign * raw + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transform {
    pub sign: i64,
    pub offset: i64,
}

impl Default for Transform {
    fn default() -> Self {
        Self { sign: 1, offset: 0 }
    }
}

impl Transform {
    pub fn apply(&self, raw: CellKey) -> CellKey {
        CellKey { stem: self.sign * raw.stem + self.offset, ..raw }
    }
}

/// A generator-level differential family: every monomial whose `gen`-th exponent
/// is `residue` mod `modulus` supports `d_page` to `monomial * delta`, acting on
/// coefficients by `multiplier`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DifferentialRule {
    pub page: u32,
    pub alphabet: Alphabet,
    pub gen: usize,
    pub modulus: i64,
    pub residue: i64,
    pub delta: [i64; 3],
    pub multiplier: Multiplier,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_source_filt: Option<i64>,
    pub provenance: String,
}

impl DifferentialRule {
    pub fn matches(&self, m: &Monomial) -> bool {
        m.alphabet == self.alphabet
            && m.exps[self.gen].rem_euclid(self.modulus) == self.residue.rem_euclid(self.modulus)
            && self.min_source_filt.is_none_or(|f| m.raw_key().filt >= f)
    }

    /// The shape of the rule without its provenance, for comparing rule sets.
    pub fn signature(&self) -> RuleSignature {
        (
            self.page,
            self.alphabet,
            self.gen,
            self.modulus,
            self.residue.rem_euclid(self.modulus),
            self.delta,
            self.multiplier,
        )
    }

    /// Rule for the Pontryagin-dual spectral sequence, where arrows run backwards.
    pub fn reversed(&self) -> Self {
        Self {
            residue: (self.residue + self.delta[self.gen]).rem_euclid(self.modulus),
            delta: self.delta.map(|d| -d),
            min_source_filt: None,
            provenance: format!("dual of {}", self.provenance),
            ..self.clone()
        }
    }

    /// Checks that the rule has the bidegree of a page-`r` differential.
    pub fn check_degree(&self, grading: Grading, sign: i64) -> Result<()> {
        let zero = Monomial { alphabet: self.alphabet, exps: [0; 3], divided: 0 };
        let a = zero.raw_key();
        let b = zero.times(self.delta).raw_key();
        let ds = sign * (b.stem - a.stem);
        let df = b.filt - a.filt;
        if ds != -1 || df != grading.filt_step(self.page) || a.y != b.y {
            return Err(SsError::Consistency(format!(
                "rule {} has degree ({ds},{df}) on page {}",
                self.provenance, self.page
            )));
        }
        Ok(())
    }
}

/// `(page, alphabet, gen, modulus, residue, delta, multiplier)`
pub type RuleSignature = (u32, Alphabet, usize, i64, i64, [i64; 3], Multiplier);

/// First rule on page `r` that applies to `m`.
pub fn find_rule<'a>(m: &Monomial, r: u32, rules: &'a [DifferentialRule]) -> Option<&'a DifferentialRule> {
    rules.iter().find(|rule| rule.page == r && rule.matches(m))
}

/// Target monomial and coefficient action of `d_r` on a summand.
pub fn leibniz_differential(
    s: &Summand,
    r: u32,
    rules: &[DifferentialRule],
) -> Option<(Monomial, Multiplier)> {
    find_rule(&s.generator, r, rules).map(|rule| (s.generator.times(rule.delta), rule.multiplier))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Page {
    pub preset: String,
    pub height: u32,
    pub grading: Grading,
    pub r: u32,
    pub window: Window,
    pub padded: Window,
    pub transform: Transform,
    pub cells: BTreeMap<CellKey, Vec<Summand>>,
}

impl Page {
    pub fn empty(preset: &str, height: u32, grading: Grading, window: Window, padded: Window) -> Self {
        Self {
            preset: preset.to_string(),
            height,
            grading,
            r: 2,
            window,
            padded,
            transform: Transform::default(),
            cells: BTreeMap::new(),
        }
    }

    pub fn ctx(&self) -> RingContext {
        RingContext::new(self.height).expect("page height validated at construction")
    }

    pub fn key_of(&self, m: &Monomial) -> CellKey {
        self.transform.apply(m.raw_key())
    }

    /// Inserts a summand at the cell computed from its generator. Zero modules
    /// and cells outside the padded window are dropped.
    pub fn insert(&mut self, s: Summand) {
        let key = self.key_of(&s.generator);
        if s.module.is_zero() || !self.padded.contains(&key) {
            return;
        }
        self.cells.entry(key).or_default().push(s);
    }

    pub fn summands(&self) -> impl Iterator<Item = (&CellKey, &Summand)> {
        self.cells.iter().flat_map(|(k, v)| v.iter().map(move |s| (k, s)))
    }

    pub fn get(&self, key: &CellKey) -> &[Summand] {
        self.cells.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn find(&self, m: &Monomial) -> Option<&Summand> {
        self.get(&self.key_of(m)).iter().find(|s| s.generator == *m)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.values().map(Vec::len).sum()
    }

    /// Keeps only the cells inside the user window.
    pub fn clipped(&self) -> Page {
        let mut p = self.clone();
        p.cells.retain(|k, _| self.window.contains(k));
        p.padded = p.window;
        p
    }

    /// Errors if truncation could have corrupted a cell of the user window.
    pub fn check_untainted(&self) -> Result<()> {
        match self.summands().find(|(k, s)| s.tainted && self.window.contains(k)) {
            Some((k, s)) => Err(SsError::BadWindow(format!(
                "padding too small: {} at {k} depends on cells outside the computed range",
                s.label
            ))),
            None => Ok(()),
        }
    }

    /// Cell descriptors, ignoring labels and generators.
    pub fn descriptors(&self) -> BTreeMap<CellKey, Vec<CyclicModule>> {
        self.cells
            .iter()
            .map(|(k, v)| {
                let mut ms: Vec<_> = v.iter().map(|s| s.module).collect();
                ms.sort();
                (*k, ms)
            })
            .collect()
    }

    /// Degree audit: recomputed positions, torsion constraint, label uniqueness.
    pub fn audit(&self) -> Result<()> {
        let mut labels = BTreeSet::new();
        for (key, s) in self.summands() {
            let computed = self.key_of(&s.generator);
            if computed != *key {
                return Err(SsError::DegreeMismatch { label: s.label.clone(), stored: *key, computed });
            }
            if s.generator.torsion_exponent() > 0
                && matches!(s.module.kind, CoeffKind::Witt | CoeffKind::WittDivided)
                && self.grading != Grading::Hoss
            {
                return Err(SsError::Consistency(format!("{} at {key} must be 2-torsion", s.label)));
            }
            if s.module.is_zero() {
                return Err(SsError::Consistency(format!("zero summand {} at {key}", s.label)));
            }
            if !labels.insert(s.label.as_str()) {
                return Err(SsError::Consistency(format!("duplicate label {}", s.label)));
            }
        }
        Ok(())
    }
}

/// `E_r -> E_{r+1}`.
pub fn turn_page(p: &Page, rules: &[DifferentialRule]) -> Result<Page> {
    let r = p.r;
    let mut next = p.clone();
    next.r = r + 1;
    let active: Vec<_> = rules.iter().filter(|rule| rule.page == r).cloned().collect();
    if active.is_empty() {
        return Ok(next);
    }
    let ctx = p.ctx();
    let step = p.grading.filt_step(r);
    let supported = |k: &CellKey| p.grading.min_filt().is_none_or(|m| k.filt >= m);

    // (source cell, index) -> (target cell, index, multiplier)
    let mut pairs = Vec::new();
    let mut hit: BTreeMap<(CellKey, usize), String> = BTreeMap::new();
    let mut taint = BTreeSet::new();
    for (key, v) in &p.cells {
        for (i, s) in v.iter().enumerate() {
            // partner sources outside the padded window are invisible
            for rule in &active {
                let src = s.generator.times(rule.delta.map(|d| -d));
                let sk = p.key_of(&src);
                if rule.matches(&src) && supported(&sk) && !p.padded.contains(&sk) {
                    taint.insert((*key, i));
                }
            }
            let Some((tm, g)) = leibniz_differential(s, r, &active) else { continue };
            let tkey = p.key_of(&tm);
            if tkey.stem != key.stem - 1 || tkey.filt != key.filt + step || tkey.y != key.y {
                return Err(SsError::DegreeMismatch {
                    label: format!("d{r}({})", s.label),
                    stored: CellKey { stem: key.stem - 1, filt: key.filt + step, y: key.y },
                    computed: tkey,
                });
            }
            if !p.padded.contains(&tkey) && supported(&tkey) {
                taint.insert((*key, i));
            }
            let Some(j) = p.get(&tkey).iter().position(|t| t.generator == tm) else { continue };
            if hit.insert((tkey, j), s.label.clone()).is_some() {
                return Err(SsError::NonDiagonal { page: r, cell: tkey });
            }
            pairs.push(((*key, i), (tkey, j), g));
        }
    }
    let sources: BTreeSet<_> = pairs.iter().map(|(s, _, _)| *s).collect();
    for t in hit.keys() {
        if sources.contains(t) {
            let s = &p.cells[&t.0][t.1];
            return Err(SsError::SourceAndTarget { page: r, cell: t.0, label: s.label.clone() });
        }
    }

    let mut replaced: BTreeMap<(CellKey, usize), Option<Summand>> = BTreeMap::new();
    for ((sk, si), (tk, ti), g) in pairs {
        let s = &p.cells[&sk][si];
        let t = &p.cells[&tk][ti];
        let dirty = s.tainted || t.tainted || taint.contains(&(sk, si)) || taint.contains(&(tk, ti));
        let (ker, coker) = match pair_kernel_cokernel(&s.module, &t.module, g, &ctx) {
            Ok(kc) => kc,
            // a corrupted partner: keep both, flagged
            Err(_) if dirty => (s.module, t.module),
            Err(e) => return Err(e),
        };
        let new_s = (!ker.is_zero()).then(|| {
            let mut out = s.clone();
            if s.module.kind == CoeffKind::Witt && t.module.is_two_torsion() {
                out.label = format!("2.{}", s.label);
            } else if ker != s.module {
                out.label = format!("{}|z{r}", s.label);
            }
            out.module = ker;
            out.tainted |= dirty;
            out
        });
        let new_t = (!coker.is_zero()).then(|| {
            let mut out = t.clone();
            if coker != t.module {
                out.label = format!("{}|q{r}", t.label);
            }
            out.module = coker;
            out.tainted |= dirty;
            out
        });
        replaced.insert((sk, si), new_s);
        replaced.insert((tk, ti), new_t);
    }
    for (key, v) in next.cells.iter_mut() {
        let old = std::mem::take(v);
        for (i, mut s) in old.into_iter().enumerate() {
            match replaced.remove(&(*key, i)) {
                None => {
                    s.tainted |= taint.contains(&(*key, i));
                    v.push(s)
                }
                Some(Some(s2)) => v.push(s2),
                Some(None) => {}
            }
        }
    }
    next.cells.retain(|_, v| !v.is_empty());
    Ok(next)
}

/// Keeps the cells of sign-degree zero.
pub fn restrict_to_integer_grading(p: &Page) -> Page {
    let mut out = p.clone();
    out.cells.retain(|k, _| k.y == 0);
    out.window.ys = (0, 1);
    out.padded.ys = (0, 1);
    out
}

pub fn shift_page(p: &Page, d: i64) -> Page {
    let mut out = p.clone();
    out.transform.offset += d;
    out.window = p.window.shifted(d);
    out.padded = p.padded.shifted(d);
    out.cells = p
        .cells
        .iter()
        .map(|(k, v)| (CellKey { stem: k.stem + d, ..*k }, v.clone()))
        .collect();
    out
}

/// Pontryagin dual page: `(stem, filt) -> (-stem, filt)`, modules dualized,
/// homological and cohomological gradings exchanged.
pub fn dualize(p: &Page) -> Result<Page> {
    let mut out = p.clone();
    out.grading = match p.grading {
        Grading::Hoss => Grading::Hfpss,
        Grading::Hfpss => Grading::Hoss,
        Grading::Tate => Grading::TateDual,
        Grading::TateDual => Grading::Tate,
    };
    out.transform = Transform { sign: -p.transform.sign, offset: -p.transform.offset };
    out.window = p.window.negated();
    out.padded = p.padded.negated();
    out.cells = BTreeMap::new();
    for (k, v) in &p.cells {
        let nk = CellKey { stem: -k.stem, ..*k };
        let mut dv = Vec::with_capacity(v.len());
        for s in v {
            let module = pontryagin_dual(&s.module, &k.to_string())?;
            let label = match s.label.strip_prefix("D(").and_then(|l| l.strip_suffix(')')) {
                Some(inner) => inner.to_string(),
                None => format!("D({})", s.label),
            };
            dv.push(Summand { module, label, ..s.clone() });
        }
        out.cells.insert(nk, dv);
    }
    Ok(out)
}

pub fn dualize_rules(rules: &[DifferentialRule]) -> Vec<DifferentialRule> {
    rules.iter().map(DifferentialRule::reversed).collect()
}

/// A page together with the rules that drive it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSequence {
    pub e2: Page,
    pub rules: Vec<DifferentialRule>,
}

impl SpectralSequence {
    pub fn new(e2: Page, rules: Vec<DifferentialRule>) -> Result<Self> {
        for rule in &rules {
            rule.check_degree(e2.grading, e2.transform.sign)?;
        }
        Ok(Self { e2, rules })
    }

    pub fn last_rule_page(&self) -> u32 {
        self.rules.iter().map(|r| r.page).max().unwrap_or(2)
    }

    pub fn einf_index(&self) -> u32 {
        self.last_rule_page().max(2) + 1
    }

    /// Page `r` over the padded window.
    pub fn page(&self, r: u32) -> Result<Page> {
        let mut p = self.e2.clone();
        while p.r < r {
            p = turn_page(&p, &self.rules)?;
        }
        Ok(p)
    }

    /// All pages from `E_2` to `E_inf`, padded.
    pub fn pages(&self) -> Result<Vec<Page>> {
        let mut out = vec![self.e2.clone()];
        while out.last().unwrap().r < self.einf_index() {
            let next = turn_page(out.last().unwrap(), &self.rules)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn einf_padded(&self) -> Result<Page> {
        self.page(self.einf_index())
    }

    pub fn einf(&self) -> Result<Page> {
        let p = self.einf_padded()?;
        p.check_untainted()?;
        Ok(p.clipped())
    }

    pub fn shifted(&self, d: i64) -> Self {
        Self { e2: shift_page(&self.e2, d), rules: self.rules.clone() }
    }

    pub fn dualized(&self) -> Result<Self> {
        Ok(Self { e2: dualize(&self.e2)?, rules: dualize_rules(&self.rules) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::VarSet;

    #[test]
    fn ro_degrees() {
        assert_eq!(Monomial::ro(1, 0, 0).ro_degree(), RODegree::RHO);
        assert_eq!(Monomial::ro(0, 1, 0).ro_degree(), RODegree { x: 2, y: -2 });
        assert_eq!(Monomial::ro(0, 0, 1).ro_degree(), RODegree { x: 0, y: -1 });
        assert!(Monomial::ro(3, 1, 1).ro_degree().is_integer());
        assert!(!Monomial::ro(1, 1, 0).ro_degree().is_integer());
    }

    #[test]
    fn labels() {
        assert_eq!(Monomial::ro(1, 0, 1).to_string(), "ub.as");
        assert_eq!(Monomial::tate(3, -1, 2).to_string(), "u^3.al^-1/(2u1)");
        assert_eq!(Monomial::hoss(0, 0, 1).to_string(), "1/(2)");
    }

    #[test]
    fn window_parsing() {
        let w = Window::parse("0:16,0:8").unwrap();
        assert_eq!(w.stems, (0, 16));
        assert_eq!(w.filts, (0, 8));
        assert!(Window::parse("3:1,0:2").is_err());
        assert!(Window::parse("0:4").is_err());
        assert!(Window::parse("a:4,0:1").is_err());
    }

    #[test]
    fn reversed_rule_round_trips() {
        let rule = DifferentialRule {
            page: 3,
            alphabet: Alphabet::Tate,
            gen: 0,
            modulus: 4,
            residue: 2,
            delta: [-2, 3, 0],
            multiplier: Multiplier::U(1),
            min_source_filt: None,
            provenance: "t".into(),
        };
        let back = rule.reversed().reversed();
        assert_eq!(back.signature(), rule.signature());
        assert!(rule.check_degree(Grading::Tate, 1).is_ok());
        assert!(rule.check_degree(Grading::Hoss, 1).is_err());
    }

    #[test]
    fn source_and_target_is_rejected() {
        let w = Window::new((-10, 10), (-10, 10)).unwrap();
        let mut p = Page::empty("t", 2, Grading::Tate, w, w);
        let m = CyclicModule::mod2(VarSet::EMPTY, VarSet::EMPTY);
        p.insert(Summand::new(Monomial::tate(2, 0, 0), m, vec![0]));
        p.insert(Summand::new(Monomial::tate(0, 3, 0), m, vec![0]));
        p.r = 3;
        let rule = |residue| DifferentialRule {
            page: 3,
            alphabet: Alphabet::Tate,
            gen: 0,
            modulus: 8,
            residue,
            delta: [-2, 3, 0],
            multiplier: Multiplier::U(2),
            min_source_filt: None,
            provenance: "t".into(),
        };
        let out = turn_page(&p, &[rule(2)]).unwrap();
        assert!(out.is_empty());
        // a source that is also a target
        p.insert(Summand::new(Monomial::tate(4, -3, 0), m, vec![0]));
        let err = turn_page(&p, &[rule(2), rule(4)]).unwrap_err();
        assert!(matches!(err, SsError::SourceAndTarget { .. }));
    }
}
