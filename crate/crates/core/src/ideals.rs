//! Ideals of Tambara functors.
//!
//! An ideal is a family of level ideals closed under restriction (i),
//! additive transfer (ii) and `f_!` (iii). The first two conditions are
//! decided exactly from additive generators. The third is decided
//! exhaustively on finite levels and over a coordinate box on lattice levels,
//! and every family records how each condition is known to hold.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::level_ideal::LevelIdeal;
use crate::ring::{Elem, LevelRing, DEFAULT_ELEMENT_LIMIT};
use crate::tambara::{
    elementary_maps, Functor, ImageFunctor, LevelMap, ProductFunctor, QuotientFunctor, Tambara, TambaraMorphism,
    TransMap,
};

pub const DEFAULT_BOX: i64 = 3;
pub const DEFAULT_ROUNDS: usize = 32;

/// How a closure condition is known to hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Unknown,
    Sampled,
    ProvedByTheorem,
    ProvedExhaustive,
}

impl Mode {
    pub fn is_proved(self) -> bool {
        matches!(self, Mode::ProvedByTheorem | Mode::ProvedExhaustive)
    }

    /// The weaker of two modes, with two proofs combining into a proof by theorem.
    pub fn meet(self, other: Mode) -> Mode {
        if self == other {
            self
        } else if self.is_proved() && other.is_proved() {
            Mode::ProvedByTheorem
        } else {
            self.min(other)
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Unknown => "unknown",
            Mode::Sampled => "sampled",
            Mode::ProvedByTheorem => "proved-by-theorem",
            Mode::ProvedExhaustive => "proved-exhaustive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub res: Mode,
    pub tr: Mode,
    pub shriek: Mode,
    /// Coordinate bound used for lattice levels.
    pub box_bound: i64,
    /// Saturation rounds used, when the family came from saturation.
    pub rounds: usize,
    pub converged: bool,
}

impl Certificate {
    pub fn theorem() -> Self {
        Certificate {
            res: Mode::ProvedByTheorem,
            tr: Mode::ProvedByTheorem,
            shriek: Mode::ProvedByTheorem,
            box_bound: 0,
            rounds: 0,
            converged: true,
        }
    }

    pub fn weakest(&self) -> Mode {
        self.res.min(self.tr).min(self.shriek)
    }

    pub fn meet(&self, other: &Certificate) -> Certificate {
        Certificate {
            res: self.res.meet(other.res),
            tr: self.tr.meet(other.tr),
            shriek: self.shriek.meet(other.shriek),
            box_bound: self.box_bound.max(other.box_bound),
            rounds: self.rounds.max(other.rounds),
            converged: self.converged && other.converged,
        }
    }
}

/// How an element of the trace was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// The i-th requested generator.
    Generator(usize),
    /// A stored generator of a family that was not built by saturation.
    Given,
    Res(TransMap, usize),
    Tr(TransMap, usize),
    Shriek(TransMap, usize),
    /// `Σ c·entry` with ring coefficients at the same level.
    Combination(Vec<(Elem, usize)>),
}

#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub level: usize,
    pub value: Elem,
    pub derivation: Derivation,
    /// Whether this value was added to the generators of its level ideal.
    pub adjoined: bool,
}

/// A replayable record of how an ideal was saturated.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub generators: Vec<(usize, Elem)>,
    pub entries: Vec<TraceEntry>,
}

impl Trace {
    fn push(&mut self, level: usize, value: Elem, derivation: Derivation, adjoined: bool) -> usize {
        self.entries.push(TraceEntry {
            level,
            value,
            derivation,
            adjoined,
        });
        self.entries.len() - 1
    }

    fn adjoined_at(&self, level: usize) -> Vec<usize> {
        (0..self.entries.len())
            .filter(|&i| self.entries[i].adjoined && self.entries[i].level == level)
            .collect()
    }

    /// Recompute one entry from its derivation.
    fn recompute(&self, t: &dyn Tambara, values: &[Elem], i: usize) -> Result<Elem> {
        let e = &self.entries[i];
        let at = |j: usize, level: usize| -> Result<&Elem> {
            if j >= i || self.entries[j].level != level {
                return Err(Error::Mismatch(format!("trace entry {i} refers to entry {j} out of order or level")));
            }
            Ok(&values[j])
        };
        Ok(match &e.derivation {
            Derivation::Generator(k) => {
                let (c, v) = self
                    .generators
                    .get(*k)
                    .ok_or_else(|| Error::Mismatch(format!("trace names generator {k}")))?;
                if *c != e.level {
                    return Err(Error::Mismatch(format!("generator {k} lives at another level")));
                }
                v.clone()
            }
            Derivation::Given => e.value.clone(),
            Derivation::Res(m, j) => t.res(m, at(*j, m.dst)?),
            Derivation::Tr(m, j) => t.tr(m, at(*j, m.src)?),
            Derivation::Shriek(m, j) => t.shriek(m, at(*j, m.src)?)?,
            Derivation::Combination(parts) => {
                let r = t.level(e.level);
                let mut acc = r.zero();
                for (c, j) in parts {
                    acc = r.add(&acc, &r.mul(c, at(*j, e.level)?));
                }
                acc
            }
        })
    }

    /// Recompute every entry, failing on the first mismatch.
    pub fn replay(&self, t: &dyn Tambara) -> Result<Vec<Elem>> {
        let mut values: Vec<Elem> = Vec::with_capacity(self.entries.len());
        for i in 0..self.entries.len() {
            let v = self.recompute(t, &values, i)?;
            if v != self.entries[i].value {
                return Err(Error::Mismatch(format!(
                    "trace entry {i} replays to {}, stored {}",
                    t.level(self.entries[i].level).format(&v),
                    t.level(self.entries[i].level).format(&self.entries[i].value)
                )));
            }
            values.push(v);
        }
        Ok(values)
    }

    /// Level ideals generated by the adjoined entries after a replay.
    pub fn rebuild(&self, t: &dyn Tambara) -> Result<Vec<LevelIdeal>> {
        let values = self.replay(t)?;
        Ok((0..t.num_levels())
            .map(|c| {
                let gens: Vec<Elem> = self.adjoined_at(c).into_iter().map(|i| values[i].clone()).collect();
                LevelIdeal::generate(t.level(c), &gens)
            })
            .collect())
    }

    /// The derivation of entry `i` as an expression.
    pub fn render(&self, t: &dyn Tambara, i: usize) -> String {
        let g = t.group();
        let e = &self.entries[i];
        match &e.derivation {
            Derivation::Generator(k) => format!("gen{k}"),
            Derivation::Given => t.level(e.level).format(&e.value),
            Derivation::Res(m, j) => format!("res[{}]({})", m.label(g), self.render(t, *j)),
            Derivation::Tr(m, j) => format!("tr[{}]({})", m.label(g), self.render(t, *j)),
            Derivation::Shriek(m, j) => format!("shriek[{}]({})", m.label(g), self.render(t, *j)),
            Derivation::Combination(parts) => {
                let r = t.level(e.level);
                let terms: Vec<String> = parts
                    .iter()
                    .filter(|(c, _)| !r.is_zero(c))
                    .map(|(c, j)| {
                        let inner = self.render(t, *j);
                        if *c == r.one() {
                            inner
                        } else {
                            format!("({})·{inner}", r.format(c))
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            }
        }
    }
}

/// An ideal candidate or certified ideal of a functor.
#[derive(Clone)]
pub struct IdealFamily {
    pub functor: Functor,
    pub levels: Vec<LevelIdeal>,
    pub certificate: Certificate,
    pub trace: Option<Arc<Trace>>,
}

impl fmt::Debug for IdealFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealFamily({})", self.summary())
    }
}

impl PartialEq for IdealFamily {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
    }
}

impl IdealFamily {
    pub fn new(functor: Functor, levels: Vec<LevelIdeal>, certificate: Certificate) -> Result<Self> {
        if levels.len() != functor.num_levels() {
            return Err(Error::Mismatch(format!(
                "{} level ideals given for {} levels",
                levels.len(),
                functor.num_levels()
            )));
        }
        for (c, i) in levels.iter().enumerate() {
            i.check_shape(functor.level(c))?;
        }
        Ok(IdealFamily {
            functor,
            levels,
            certificate,
            trace: None,
        })
    }

    pub fn zero(t: &Functor) -> Self {
        let levels = (0..t.num_levels()).map(|c| LevelIdeal::zero(t.level(c))).collect();
        IdealFamily::new(t.clone(), levels, Certificate::theorem()).unwrap()
    }

    pub fn unit(t: &Functor) -> Self {
        let levels = (0..t.num_levels()).map(|c| LevelIdeal::unit(t.level(c))).collect();
        IdealFamily::new(t.clone(), levels, Certificate::theorem()).unwrap()
    }

    /// Re-examine the family and adopt the resulting certificate.
    pub fn certified(functor: Functor, levels: Vec<LevelIdeal>, box_bound: i64) -> Result<(Self, IdealCheck)> {
        let check = check_ideal(&functor, &levels, box_bound)?;
        let mut fam = IdealFamily::new(functor, levels, check.certificate())?;
        fam.certificate.converged = check.is_ideal();
        Ok((fam, check))
    }

    pub fn level(&self, c: usize) -> &LevelIdeal {
        &self.levels[c]
    }

    pub fn contains(&self, c: usize, x: &Elem) -> bool {
        self.levels[c].contains(self.functor.level(c), x)
    }

    pub fn is_subset(&self, other: &IdealFamily) -> bool {
        self.levels.iter().zip(&other.levels).all(|(a, b)| a.is_subset(b))
    }

    /// Contains 1 somewhere, hence everywhere.
    pub fn is_unit(&self) -> bool {
        self.levels
            .iter()
            .enumerate()
            .any(|(c, i)| i.is_unit(self.functor.level(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.levels
            .iter()
            .enumerate()
            .all(|(c, i)| i.is_zero(self.functor.level(c)))
    }

    pub fn summary(&self) -> String {
        let g = self.functor.group();
        let parts: Vec<String> = self
            .levels
            .iter()
            .enumerate()
            .map(|(c, i)| format!("G/{}: {}", g.class_name(c), i.format(self.functor.level(c))))
            .collect();
        parts.join("; ")
    }

    pub fn render(&self) -> String {
        let g = self.functor.group();
        let mut out = String::new();
        for (c, i) in self.levels.iter().enumerate() {
            out.push_str(&format!("level {}: {}\n", g.class_name(c), i.format(self.functor.level(c))));
        }
        out.push_str(&self.render_certificate());
        out
    }

    pub fn render_certificate(&self) -> String {
        let cert = &self.certificate;
        format!(
            "certificate: res {}, tr {}, shriek {} (box {}, rounds {}, converged {})\n",
            cert.res, cert.tr, cert.shriek, cert.box_bound, cert.rounds, cert.converged
        )
    }
}

/// Verdict on one closure condition.
#[derive(Clone, Debug)]
pub struct ConditionResult {
    pub holds: bool,
    pub mode: Mode,
    pub checks: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug)]
pub struct IdealCheck {
    /// Each level is an ideal of its ring.
    pub ring_ideals: bool,
    pub ring_failure: Option<String>,
    pub res: ConditionResult,
    pub tr: ConditionResult,
    pub shriek: ConditionResult,
    /// Some level contains 1, so a genuine ideal is the whole functor.
    pub trivial: bool,
    pub box_bound: i64,
}

impl IdealCheck {
    pub fn is_ideal(&self) -> bool {
        self.ring_ideals && self.res.holds && self.tr.holds && self.shriek.holds
    }

    pub fn certificate(&self) -> Certificate {
        let m = |r: &ConditionResult| if r.holds { r.mode } else { Mode::Unknown };
        Certificate {
            res: m(&self.res),
            tr: m(&self.tr),
            shriek: m(&self.shriek),
            box_bound: self.box_bound,
            rounds: 0,
            converged: self.is_ideal(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        match &self.ring_failure {
            None => out.push_str("level ideals: ok\n"),
            Some(w) => out.push_str(&format!("level ideals: FAIL {w}\n")),
        }
        for (name, r) in [("(i)", &self.res), ("(ii)", &self.tr), ("(iii)", &self.shriek)] {
            if r.holds {
                out.push_str(&format!("condition {name} holds ({}, {} checks)\n", r.mode, r.checks));
            } else {
                out.push_str(&format!(
                    "condition {name} FAILS: {}\n",
                    r.counterexample.as_deref().unwrap_or("no witness")
                ));
            }
        }
        if self.trivial {
            out.push_str("contains 1: the ideal is the whole functor\n");
        }
        out.push_str(&format!("ideal: {}\n", self.is_ideal()));
        out
    }
}

/// Coordinates in `[-b, b]^r`, ordered by total size then `0, 1, -1, 2, -2, …`.
fn box_coordinates(r: usize, b: i64) -> Vec<Vec<i64>> {
    let order: Vec<i64> = std::iter::once(0).chain((1..=b).flat_map(|k| [k, -k])).collect();
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| {
                order.iter().map(move |&c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    let rank = |c: i64| if c > 0 { 2 * c - 1 } else { -2 * c };
    out.sort_by_key(|v| (v.iter().map(|c| c.abs()).sum::<i64>(), v.iter().map(|&c| rank(c)).collect::<Vec<_>>()));
    out
}

/// All elements of a finite level ideal, or its box elements on infinite levels.
/// The flag is true when the list is the whole ideal.
pub fn ideal_elements(ring: &LevelRing, ideal: &LevelIdeal, b: i64) -> (Vec<Elem>, bool) {
    if ring.is_finite() {
        if let Some(e) = ideal.elements(ring) {
            return (e, true);
        }
    }
    let gens = ideal.additive_generators(ring);
    if gens.is_empty() {
        return (vec![ring.zero()], true);
    }
    let els = box_coordinates(gens.len(), b)
        .into_iter()
        .map(|coef| {
            let parts: Vec<Elem> = coef.iter().zip(&gens).map(|(&k, g)| ring.scale(k, g)).collect();
            ring.sum(parts.iter())
        })
        .collect();
    (els, false)
}

fn condition(checks: usize, mode: Mode) -> ConditionResult {
    ConditionResult {
        holds: true,
        mode,
        checks,
        counterexample: None,
    }
}

/// Decide whether a family of level ideals is an ideal of `t`.
pub fn check_ideal(t: &Functor, levels: &[LevelIdeal], box_bound: i64) -> Result<IdealCheck> {
    if levels.len() != t.num_levels() {
        return Err(Error::Mismatch("one level ideal per level is required".into()));
    }
    let g = t.group().clone();
    let mut ring_failure = None;
    for (c, i) in levels.iter().enumerate() {
        i.check_shape(t.level(c))?;
        if ring_failure.is_none() && !i.is_ring_ideal(t.level(c)) {
            ring_failure = Some(format!("level {} is not an ideal of its ring", g.class_name(c)));
        }
    }
    let mut res = condition(0, Mode::ProvedExhaustive);
    let mut tr = condition(0, Mode::ProvedExhaustive);
    let mut shriek = condition(0, Mode::ProvedExhaustive);
    let gens: Vec<Vec<Elem>> = levels
        .iter()
        .enumerate()
        .map(|(c, i)| i.additive_generators(t.level(c)))
        .collect();
    for m in elementary_maps(&g) {
        let label = m.label(&g);
        let (src, dst) = (t.level(m.src), t.level(m.dst));
        for y in &gens[m.dst] {
            res.checks += 1;
            let v = t.res(&m, y);
            if res.holds && !levels[m.src].contains(src, &v) {
                res.holds = false;
                res.counterexample = Some(format!(
                    "along {label}: res({}) = {} is not in I(G/{})",
                    dst.format(y),
                    src.format(&v),
                    g.class_name(m.src)
                ));
            }
        }
        for x in &gens[m.src] {
            tr.checks += 1;
            let v = t.tr(&m, x);
            if tr.holds && !levels[m.dst].contains(dst, &v) {
                tr.holds = false;
                tr.counterexample = Some(format!(
                    "along {label}: tr({}) = {} is not in I(G/{})",
                    src.format(x),
                    dst.format(&v),
                    g.class_name(m.dst)
                ));
            }
        }
        let (xs, whole) = ideal_elements(src, &levels[m.src], box_bound);
        if !whole {
            shriek.mode = shriek.mode.min(Mode::Sampled);
        }
        for x in &xs {
            shriek.checks += 1;
            let v = t.shriek(&m, x)?;
            if !levels[m.dst].contains(dst, &v) {
                shriek.holds = false;
                shriek.counterexample = Some(format!(
                    "along {label}: f_!({}) = {} is not in I(G/{})",
                    src.format(x),
                    dst.format(&v),
                    g.class_name(m.dst)
                ));
                break;
            }
        }
    }
    let trivial = levels.iter().enumerate().any(|(c, i)| i.is_unit(t.level(c)));
    Ok(IdealCheck {
        ring_ideals: ring_failure.is_none(),
        ring_failure,
        res,
        tr,
        shriek,
        trivial,
        box_bound,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct GenerateParams {
    pub box_bound: i64,
    pub rounds: usize,
}

impl Default for GenerateParams {
    fn default() -> Self {
        GenerateParams {
            box_bound: DEFAULT_BOX,
            rounds: DEFAULT_ROUNDS,
        }
    }
}

struct Saturation<'a> {
    t: &'a dyn Tambara,
    trace: Trace,
    levels: Vec<LevelIdeal>,
}

impl Saturation<'_> {
    fn gens_at(&self, c: usize) -> (Vec<usize>, Vec<Elem>) {
        let idx = self.trace.adjoined_at(c);
        let vals = idx.iter().map(|&i| self.trace.entries[i].value.clone()).collect();
        (idx, vals)
    }

    /// A trace entry for an element already in the level ideal.
    fn derive(&mut self, c: usize, x: &Elem) -> usize {
        let (idx, vals) = self.gens_at(c);
        if let Some(pos) = idx.iter().position(|&i| self.trace.entries[i].value == *x) {
            return idx[pos];
        }
        let ring = self.t.level(c);
        let coeffs = LevelIdeal::express(ring, &vals, x).expect("element lies in the level ideal");
        let parts = coeffs.into_iter().zip(idx).collect();
        self.trace.push(c, x.clone(), Derivation::Combination(parts), false)
    }

    fn adjoin(&mut self, c: usize, value: Elem, derivation: Derivation) {
        self.trace.push(c, value, derivation, true);
        let (_, vals) = self.gens_at(c);
        self.levels[c] = LevelIdeal::generate(self.t.level(c), &vals);
    }
}

/// The smallest ideal containing `gens`, by saturation with a replayable trace.
pub fn generate(t: &Functor, gens: &[(usize, Elem)], params: GenerateParams) -> Result<IdealFamily> {
    let tt: &dyn Tambara = &**t;
    let n = tt.num_levels();
    for (c, x) in gens {
        if *c >= n {
            return Err(Error::Invalid(format!("no level {c}")));
        }
        tt.level(*c).normalize(x)?;
    }
    let mut s = Saturation {
        t: tt,
        trace: Trace {
            generators: gens.to_vec(),
            entries: Vec::new(),
        },
        levels: (0..n).map(|c| LevelIdeal::zero(tt.level(c))).collect(),
    };
    for (k, (c, x)) in gens.iter().enumerate() {
        s.adjoin(*c, x.clone(), Derivation::Generator(k));
    }
    let g = tt.group().clone();
    let maps = elementary_maps(&g);
    let all_finite = (0..n).all(|c| tt.level(c).is_finite());
    let mut converged = false;
    let mut rounds = 0;
    while rounds < params.rounds {
        rounds += 1;
        let mut added = false;
        for m in &maps {
            for y in s.levels[m.dst].additive_generators(tt.level(m.dst)) {
                let v = tt.res(m, &y);
                if !s.levels[m.src].contains(tt.level(m.src), &v) {
                    let j = s.derive(m.dst, &y);
                    s.adjoin(m.src, v, Derivation::Res(*m, j));
                    added = true;
                }
            }
            for x in s.levels[m.src].additive_generators(tt.level(m.src)) {
                let v = tt.tr(m, &x);
                if !s.levels[m.dst].contains(tt.level(m.dst), &v) {
                    let j = s.derive(m.src, &x);
                    s.adjoin(m.dst, v, Derivation::Tr(*m, j));
                    added = true;
                }
            }
            let (xs, _) = ideal_elements(tt.level(m.src), &s.levels[m.src], params.box_bound);
            for x in xs {
                let v = tt.shriek(m, &x)?;
                if !s.levels[m.dst].contains(tt.level(m.dst), &v) {
                    let j = s.derive(m.src, &x);
                    s.adjoin(m.dst, v, Derivation::Shriek(*m, j));
                    added = true;
                }
            }
        }
        if !added {
            converged = true;
            break;
        }
    }
    let exact = if converged { Mode::ProvedExhaustive } else { Mode::Unknown };
    let shriek = match (converged, all_finite) {
        (false, _) => Mode::Unknown,
        (true, true) => Mode::ProvedExhaustive,
        (true, false) => Mode::Sampled,
    };
    let certificate = Certificate {
        res: exact,
        tr: exact,
        shriek,
        box_bound: params.box_bound,
        rounds,
        converged,
    };
    Ok(IdealFamily {
        functor: t.clone(),
        levels: s.levels,
        certificate,
        trace: Some(Arc::new(s.trace)),
    })
}

/// Membership answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    In,
    NotIn,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::In => "in",
            Verdict::NotIn => "not-in",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Membership {
    pub verdict: Verdict,
    /// A derivation of the element from the generators, when it is in.
    pub witness: Option<String>,
    /// The extended trace containing the witness entry.
    pub trace: Option<Trace>,
}

pub fn membership(family: &IdealFamily, level: usize, x: &Elem) -> Result<Membership> {
    let t = &*family.functor;
    let ring = t.level(level);
    let x = ring.normalize(x)?;
    if !family.contains(level, &x) {
        let verdict = if family.certificate.converged && family.certificate.weakest() != Mode::Unknown {
            Verdict::NotIn
        } else {
            Verdict::Unknown
        };
        return Ok(Membership {
            verdict,
            witness: None,
            trace: None,
        });
    }
    let mut trace = match &family.trace {
        Some(tr) => (**tr).clone(),
        None => {
            let mut tr = Trace::default();
            for (c, i) in family.levels.iter().enumerate() {
                for gen in i.generators(t.level(c)) {
                    tr.push(c, gen, Derivation::Given, true);
                }
            }
            tr
        }
    };
    let idx = trace.adjoined_at(level);
    let vals: Vec<Elem> = idx.iter().map(|&i| trace.entries[i].value.clone()).collect();
    let coeffs = LevelIdeal::express(ring, &vals, &x).expect("element lies in the level ideal");
    let parts: Vec<(Elem, usize)> = coeffs.into_iter().zip(idx).filter(|(c, _)| !ring.is_zero(c)).collect();
    let i = trace.push(level, x, Derivation::Combination(parts), false);
    trace.replay(t)?;
    Ok(Membership {
        verdict: Verdict::In,
        witness: Some(trace.render(t, i)),
        trace: Some(trace),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Intersect,
    Sum,
    Product,
}

fn same_owner(a: &IdealFamily, b: &IdealFamily) -> Result<()> {
    if Arc::ptr_eq(&a.functor, &b.functor) {
        Ok(())
    } else {
        Err(Error::Mismatch("ideals of different functors".into()))
    }
}

pub fn combine(tag: Combine, a: &IdealFamily, b: &IdealFamily, params: GenerateParams) -> Result<IdealFamily> {
    same_owner(a, b)?;
    let t = &a.functor;
    match tag {
        Combine::Intersect => {
            let levels = a.levels.iter().zip(&b.levels).map(|(x, y)| x.intersect(y)).collect();
            let mut cert = a.certificate.meet(&b.certificate);
            cert.converged = true;
            IdealFamily::new(t.clone(), levels, cert)
        }
        Combine::Sum => {
            let mut gens = Vec::new();
            for f in [a, b] {
                for (c, i) in f.levels.iter().enumerate() {
                    gens.extend(i.generators(t.level(c)).into_iter().map(|x| (c, x)));
                }
            }
            generate(t, &gens, params)
        }
        Combine::Product => {
            let mut gens = Vec::new();
            for c in 0..t.num_levels() {
                let r = t.level(c);
                let ga = a.levels[c].generators(r);
                let gb = b.levels[c].generators(r);
                for x in &ga {
                    for y in &gb {
                        let p = r.mul(x, y);
                        if !r.is_zero(&p) {
                            gens.push((c, p));
                        }
                    }
                }
            }
            generate(t, &gens, params)
        }
    }
}

fn require_finite(t: &dyn Tambara, what: &str) -> Result<()> {
    if (0..t.num_levels()).all(|c| t.level(c).is_finite()) {
        Ok(())
    } else {
        Err(Error::Refused(format!("{what} needs finite levels")))
    }
}

/// `√I`: elements `a` with `⟨a⟩ⁿ ⊆ I` for some `n`.
pub fn radical(family: &IdealFamily, params: GenerateParams) -> Result<IdealFamily> {
    let t = &family.functor;
    require_finite(&**t, "the radical")?;
    let mut levels = Vec::new();
    for c in 0..t.num_levels() {
        let r = t.level(c);
        let elems = r
            .elements(DEFAULT_ELEMENT_LIMIT)
            .ok_or_else(|| crate::error::cap("level elements", r.size().unwrap_or(0), DEFAULT_ELEMENT_LIMIT as u128))?;
        let mut members = Vec::new();
        for a in elems {
            if family.contains(c, &a) {
                members.push(a);
                continue;
            }
            let base = generate(t, &[(c, a.clone())], params)?;
            let mut power = base.clone();
            loop {
                if power.is_subset(family) {
                    members.push(a);
                    break;
                }
                let next = combine(Combine::Product, &power, &base, params)?;
                if next == power {
                    break;
                }
                power = next;
            }
        }
        levels.push(LevelIdeal::generate(r, &members));
    }
    Ok(IdealFamily::certified(t.clone(), levels, params.box_bound)?.0)
}

/// The largest ideal whose value at `G/e` is the invariant ideal `i0`.
pub fn invariant_ideal_lift(t: &Functor, i0: &LevelIdeal) -> Result<IdealFamily> {
    let g = t.group().clone();
    let e = g.trivial_class();
    let re = t.level(e);
    i0.check_shape(re)?;
    if !i0.is_ring_ideal(re) {
        return Err(Error::Invalid("not an ideal of the bottom level".into()));
    }
    for x in 0..g.order() {
        let m = TransMap::new(&g, e, e, x)?;
        if i0.additive_generators(re).iter().any(|y| !i0.contains(re, &t.res(&m, y))) {
            return Err(Error::Invalid(format!("ideal is not invariant under element {x}")));
        }
    }
    let mut levels = Vec::new();
    for c in 0..t.num_levels() {
        let rc = t.level(c);
        let mut acc = LevelIdeal::unit(rc);
        for &cc in &g.cosets(g.rep_index(c)).reps {
            let m = TransMap::new(&g, e, c, cc)?;
            let f = |x: &Elem| t.res(&m, x);
            let pre = LevelIdeal::preimage(rc, re, &f, i0, DEFAULT_ELEMENT_LIMIT)?;
            acc = acc.intersect(&pre);
        }
        levels.push(acc);
    }
    IdealFamily::new(t.clone(), levels, Certificate::theorem())
}

/// `T/I` with its projection; refuses uncertified families unless `allow_sampled`.
pub fn quotient_functor(family: &IdealFamily, allow_sampled: bool) -> Result<(Arc<QuotientFunctor>, TambaraMorphism)> {
    let weakest = family.certificate.weakest();
    if weakest == Mode::Unknown || !family.certificate.converged {
        return Err(Error::Refused("the family is not certified as an ideal".into()));
    }
    if weakest == Mode::Sampled && !allow_sampled {
        return Err(Error::Refused(
            "condition (iii) is only sampled; pass the override to build the quotient anyway".into(),
        ));
    }
    let q = Arc::new(QuotientFunctor::new(family.functor.clone(), family.levels.clone())?);
    let p = q.projection();
    Ok((q, p))
}

/// `Ker φ`, level by level.
pub fn kernel(phi: &TambaraMorphism) -> Result<IdealFamily> {
    let zero = IdealFamily::zero(&phi.target);
    preimage(phi, &zero)
}

/// `φ⁻¹(J)`, level by level.
pub fn preimage(phi: &TambaraMorphism, j: &IdealFamily) -> Result<IdealFamily> {
    if !Arc::ptr_eq(&j.functor, &phi.target) {
        return Err(Error::Mismatch("ideal does not belong to the target".into()));
    }
    let levels = (0..phi.source.num_levels())
        .map(|c| {
            let f = |x: &Elem| phi.apply(c, x);
            LevelIdeal::preimage(phi.source.level(c), phi.target.level(c), &f, &j.levels[c], DEFAULT_ELEMENT_LIMIT)
        })
        .collect::<Result<Vec<_>>>()?;
    let cert = if j.certificate.weakest().is_proved() {
        Certificate::theorem()
    } else {
        j.certificate
    };
    IdealFamily::new(phi.source.clone(), levels, cert)
}

/// `φ(I)` for surjective `φ` and `I ⊇ Ker φ`.
pub fn pushforward(phi: &TambaraMorphism, i: &IdealFamily) -> Result<IdealFamily> {
    if !phi.is_surjective() {
        return Err(Error::Refused("pushforward needs a surjective morphism".into()));
    }
    let k = kernel(phi)?;
    if !k.is_subset(i) {
        return Err(Error::Refused("pushforward needs an ideal containing the kernel".into()));
    }
    let levels = (0..phi.source.num_levels())
        .map(|c| {
            let f = |x: &Elem| phi.apply(c, x);
            LevelIdeal::image(phi.source.level(c), phi.target.level(c), &f, &i.levels[c])
        })
        .collect();
    let cert = if i.certificate.weakest().is_proved() {
        Certificate::theorem()
    } else {
        i.certificate
    };
    IdealFamily::new(phi.target.clone(), levels, cert)
}

/// `T/Ker φ → Im φ`, checked to be an isomorphism.
pub struct FirstIsoReport {
    pub kernel: IdealFamily,
    pub quotient: Arc<QuotientFunctor>,
    pub image: Arc<ImageFunctor>,
    pub iso: TambaraMorphism,
    pub validated: bool,
    pub injective: Vec<Option<bool>>,
    pub surjective: Vec<bool>,
    pub failures: Vec<String>,
}

impl FirstIsoReport {
    pub fn is_isomorphism(&self) -> bool {
        self.validated && self.surjective.iter().all(|&s| s) && self.injective.iter().all(|&i| i == Some(true))
    }
}

pub fn first_iso_check(phi: &TambaraMorphism, seed: u64) -> Result<FirstIsoReport> {
    let k = kernel(phi)?;
    let q = Arc::new(QuotientFunctor::new(phi.source.clone(), k.levels.clone())?);
    let image = Arc::new(phi.image()?);
    let n = phi.source.num_levels();
    let maps = (0..n)
        .map(|c| {
            let (q, im, phi) = (q.clone(), image.clone(), phi.clone());
            Arc::new(move |y: &Elem| {
                let x = q.lift(c, y);
                im.subring(c).coords(&phi.apply(c, &x)).expect("value lies in the image")
            }) as LevelMap
        })
        .collect();
    let iso = TambaraMorphism::new(q.clone() as Functor, image.clone() as Functor, maps, "induced")?;
    let report = iso.validate(seed);
    let injective = (0..n).map(|c| iso.level_injective(c, DEFAULT_ELEMENT_LIMIT)).collect();
    let surjective = (0..n).map(|c| iso.level_surjective(c)).collect();
    Ok(FirstIsoReport {
        kernel: k,
        quotient: q,
        image,
        iso,
        validated: report.ok,
        injective,
        surjective,
        failures: report.failures,
    })
}

pub struct CrtReport {
    pub coprime: bool,
    /// The first non-coprime pair and why.
    pub failure: Option<String>,
    /// `(I₁⋯I_ℓ)(X) = I₁(X)⋯I_ℓ(X)` at every level.
    pub levelwise_product: bool,
    /// `I₁⋯I_ℓ = I₁ ∩ ⋯ ∩ I_ℓ`.
    pub product_is_intersection: bool,
    /// `T/(I₁⋯I_ℓ) → ∏ T/I_i` is a validated bijective morphism.
    pub isomorphism: bool,
    /// Elementwise comparisons made per level.
    pub checks: Vec<usize>,
    pub morphism: Option<TambaraMorphism>,
}

impl CrtReport {
    pub fn holds(&self) -> bool {
        self.coprime && self.levelwise_product && self.product_is_intersection && self.isomorphism
    }
}

pub fn coprime_and_crt(ideals: &[IdealFamily], params: GenerateParams, seed: u64) -> Result<CrtReport> {
    let first = ideals.first().ok_or_else(|| Error::Invalid("no ideals given".into()))?;
    for i in ideals {
        same_owner(first, i)?;
    }
    let t = first.functor.clone();
    let g = t.group().clone();
    let top = g.top_class();
    let rt = t.level(top);
    let mut report = CrtReport {
        coprime: true,
        failure: None,
        levelwise_product: false,
        product_is_intersection: false,
        isomorphism: false,
        checks: Vec::new(),
        morphism: None,
    };
    for a in 0..ideals.len() {
        for b in a + 1..ideals.len() {
            let s = ideals[a].levels[top].sum(rt, &ideals[b].levels[top]);
            if !s.is_unit(rt) {
                report.coprime = false;
                report.failure = Some(format!(
                    "ideals {a} and {b} are not coprime at level G/{}: {} + {} = {} is not the unit ideal",
                    g.class_name(top),
                    ideals[a].levels[top].format(rt),
                    ideals[b].levels[top].format(rt),
                    s.format(rt)
                ));
                return Ok(report);
            }
        }
    }
    let mut prod = first.clone();
    let mut inter = first.clone();
    let mut levelwise = first.levels.clone();
    for i in &ideals[1..] {
        prod = combine(Combine::Product, &prod, i, params)?;
        inter = combine(Combine::Intersect, &inter, i, params)?;
        levelwise = levelwise
            .iter()
            .enumerate()
            .map(|(c, l)| l.product(t.level(c), &i.levels[c]))
            .collect();
    }
    report.levelwise_product = prod.levels == levelwise;
    report.product_is_intersection = prod.levels == inter.levels;

    let quotients: Vec<Arc<QuotientFunctor>> = ideals
        .iter()
        .map(|i| QuotientFunctor::new(t.clone(), i.levels.clone()).map(Arc::new))
        .collect::<Result<_>>()?;
    let mut target: Functor = quotients.last().unwrap().clone();
    for q in quotients.iter().rev().skip(1) {
        target = Arc::new(ProductFunctor::new(q.clone(), target)?);
    }
    let source = Arc::new(QuotientFunctor::new(t.clone(), prod.levels.clone())?);
    let n = t.num_levels();
    let maps: Vec<LevelMap> = (0..n)
        .map(|c| {
            let (source, quotients) = (source.clone(), quotients.clone());
            Arc::new(move |y: &Elem| {
                let x = source.lift(c, y);
                let mut parts: Vec<Elem> = quotients.iter().map(|q| q.project(c, &x)).collect();
                let mut acc = parts.pop().unwrap();
                while let Some(p) = parts.pop() {
                    acc = LevelRing::pair(p, acc);
                }
                acc
            }) as LevelMap
        })
        .collect();
    let phi = TambaraMorphism::new(source.clone() as Functor, target, maps, "crt")?;
    let validation = phi.validate(seed);
    let mut bijective = validation.ok;
    for c in 0..n {
        let src = source.level(c);
        match (src.elements(DEFAULT_ELEMENT_LIMIT), phi.target.level(c).size()) {
            (Some(els), Some(size)) => {
                let images: std::collections::HashSet<Elem> = els.iter().map(|x| phi.apply(c, x)).collect();
                let checks = els.len() * els.len();
                report.checks.push(checks);
                bijective &= images.len() == els.len() && els.len() as u128 == size;
            }
            _ => {
                report.checks.push(0);
                bijective &= phi.level_surjective(c) && phi.level_injective(c, DEFAULT_ELEMENT_LIMIT) == Some(true);
            }
        }
    }
    report.isomorphism = bijective;
    report.morphism = Some(phi);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::OmegaFunctor;
    use crate::fixed_point::{FixedPointFunctor, GRing};
    use crate::group::builtin;

    fn omega_c2() -> Functor {
        Arc::new(OmegaFunctor::new(Arc::new(builtin("c2").unwrap())).unwrap())
    }

    fn zmod(n: usize) -> Functor {
        let g = Arc::new(builtin("c2").unwrap());
        Arc::new(FixedPointFunctor::new(Arc::new(GRing::zmod(g, n).unwrap())))
    }

    #[test]
    fn box_order_starts_small() {
        let b = box_coordinates(2, 1);
        assert_eq!(b[0], vec![0, 0]);
        assert_eq!(b[1], vec![0, 1]);
        assert_eq!(b.len(), 9);
    }

    #[test]
    fn two_omega_is_rejected() {
        let t = omega_c2();
        let levels: Vec<LevelIdeal> = (0..2)
            .map(|c| {
                let r = t.level(c);
                LevelIdeal::generate(r, &[r.from_int(2)])
            })
            .collect();
        let check = check_ideal(&t, &levels, DEFAULT_BOX).unwrap();
        assert!(check.res.holds && check.tr.holds);
        assert!(!check.shriek.holds);
        let w = check.shriek.counterexample.clone().unwrap();
        assert!(w.contains("f_!(2*[G/e]) = 2*[G/G] + 1*[G/e]"), "{w}");
    }

    #[test]
    fn generated_by_two_in_omega() {
        let t = omega_c2();
        let fam = generate(&t, &[(0, Elem(vec![2]))], GenerateParams::default()).unwrap();
        assert!(fam.certificate.converged);
        assert_eq!(fam.levels[0], LevelIdeal::Lattice(crate::lattice::Lattice::from_generators(1, &[vec![2]])));
        let expected = crate::lattice::Lattice::from_generators(2, &[vec![1, 2], vec![2, 0]]);
        assert_eq!(fam.levels[1], LevelIdeal::Lattice(expected));
        let rebuilt = fam.trace.as_ref().unwrap().rebuild(&*t).unwrap();
        assert_eq!(rebuilt, fam.levels);
        let m = membership(&fam, 1, &Elem(vec![4, 0])).unwrap();
        assert_eq!(m.verdict, Verdict::In);
        assert_eq!(membership(&fam, 1, &Elem(vec![0, 2])).unwrap().verdict, Verdict::NotIn);
    }

    #[test]
    fn zmod6_operations() {
        let t = zmod(6);
        let p = GenerateParams::default();
        let two = generate(&t, &[(1, Elem::from_index(2))], p).unwrap();
        let three = generate(&t, &[(1, Elem::from_index(3))], p).unwrap();
        assert_eq!(two.levels[0].count(t.level(0)), Some(3));
        let prod = combine(Combine::Product, &two, &three, p).unwrap();
        assert!(prod.is_zero());
        let crt = coprime_and_crt(&[two.clone(), three], p, 1).unwrap();
        assert!(crt.holds(), "{:?}", crt.failure);
        assert_eq!(crt.checks, vec![36, 36]);
        let not = coprime_and_crt(&[two.clone(), two], p, 1).unwrap();
        assert!(!not.coprime);
    }

    #[test]
    fn radical_of_zero_in_z4() {
        let t = zmod(4);
        let r = radical(&IdealFamily::zero(&t), GenerateParams::default()).unwrap();
        assert_eq!(r.levels[0].count(t.level(0)), Some(2));
        assert_eq!(r.levels[1].count(t.level(1)), Some(2));
    }

    #[test]
    fn lift_of_zero_in_omega() {
        let t = omega_c2();
        let fam = invariant_ideal_lift(&t, &LevelIdeal::zero(t.level(0))).unwrap();
        assert!(fam.levels[0].is_zero(t.level(0)));
        assert!(fam.contains(1, &Elem(vec![1, -2])));
        assert!(!fam.contains(1, &Elem(vec![1, 0])));
        assert!(check_ideal(&t, &fam.levels, DEFAULT_BOX).unwrap().is_ideal());
    }
}
