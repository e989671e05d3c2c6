//! Prime ideals, `Spec` with its closed sets, and the classification of
//! Tambara functors as reduced, connected, domain-like or field-like.
//!
//! Functors whose levels are all finite get an exhaustive ideal catalog and
//! every verdict is exact. Lattice functors are handled only through the
//! theorem-backed routes: maximality via invariant ideals of `T(G/e)`,
//! primality of `I_I` via quotients, and the `ρ` certificate for `Ω`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::burnside::OmegaFunctor;
use crate::error::{cap, Error, Result};
use crate::fixed_point::{FixedPointFunctor, GRing, IntegerFixedPoint};
use crate::group::Group;
use crate::ideals::{
    check_ideal, combine, coprime_and_crt, generate, invariant_ideal_lift, pushforward, quotient_functor, Combine,
    GenerateParams, IdealFamily, Mode, DEFAULT_BOX,
};
use crate::level_ideal::{all_ideals, LevelIdeal};
use crate::ring::{Elem, LevelRing, DEFAULT_ELEMENT_LIMIT};
use crate::tambara::{Functor, LevelMap, MorphismReport, QuotientFunctor, Tambara, TambaraMorphism, TransMap};

pub const DEFAULT_CANDIDATE_CAP: u128 = 1_000_000;

/// A yes/no/unknown answer with the way it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flag {
    pub value: Option<bool>,
    pub mode: Mode,
}

impl Flag {
    pub fn exact(value: bool) -> Self {
        Flag {
            value: Some(value),
            mode: Mode::ProvedExhaustive,
        }
    }

    pub fn theorem(value: bool) -> Self {
        Flag {
            value: Some(value),
            mode: Mode::ProvedByTheorem,
        }
    }

    pub fn unknown() -> Self {
        Flag {
            value: None,
            mode: Mode::Unknown,
        }
    }

    pub fn is_true(&self) -> bool {
        self.value == Some(true)
    }

    pub fn is_false(&self) -> bool {
        self.value == Some(false)
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.value {
            Some(true) => "true",
            Some(false) => "false",
            None => "unknown",
        };
        write!(f, "{v} ({})", self.mode)
    }
}

fn require_finite(t: &dyn Tambara) -> Result<()> {
    if (0..t.num_levels()).all(|c| t.level(c).is_finite()) {
        Ok(())
    } else {
        Err(Error::Refused(
            "ideal enumeration needs finite levels; lattice functors are handled by theorem routes".into(),
        ))
    }
}

/// Every ideal of a functor with finite levels, in a deterministic order.
pub fn enumerate_ideals(t: &Functor, candidate_cap: u128) -> Result<Vec<IdealFamily>> {
    require_finite(&**t)?;
    let per_level: Vec<Vec<LevelIdeal>> = (0..t.num_levels())
        .map(|c| all_ideals(t.level(c), DEFAULT_ELEMENT_LIMIT))
        .collect::<Result<_>>()?;
    let total = per_level
        .iter()
        .try_fold(1u128, |acc, l| acc.checked_mul(l.len() as u128))
        .unwrap_or(u128::MAX);
    if total > candidate_cap {
        return Err(cap("candidate ideal families", total, candidate_cap));
    }
    let mut out = Vec::new();
    let mut pos = vec![0usize; per_level.len()];
    loop {
        let levels: Vec<LevelIdeal> = pos.iter().enumerate().map(|(c, &i)| per_level[c][i].clone()).collect();
        let (fam, check) = IdealFamily::certified(t.clone(), levels, DEFAULT_BOX)?;
        if check.is_ideal() {
            out.push(fam);
        }
        let mut c = 0;
        loop {
            if c == pos.len() {
                return Ok(out);
            }
            pos[c] += 1;
            if pos[c] < per_level[c].len() {
                break;
            }
            pos[c] = 0;
            c += 1;
        }
    }
}

/// All ideals of a finite functor with their sums, products and radicals.
pub struct IdealCatalog {
    pub functor: Functor,
    pub ideals: Vec<IdealFamily>,
    subset: Vec<Vec<bool>>,
    products: Vec<Vec<usize>>,
    sums: Vec<Vec<usize>>,
    intersections: Vec<Vec<usize>>,
    radicals: Vec<usize>,
    zero: usize,
    unit: usize,
}

impl IdealCatalog {
    pub fn build(t: &Functor, candidate_cap: u128) -> Result<Self> {
        let ideals = enumerate_ideals(t, candidate_cap)?;
        let n = ideals.len();
        let params = GenerateParams::default();
        let find = |f: &IdealFamily| -> Result<usize> {
            ideals
                .iter()
                .position(|i| i.levels == f.levels)
                .ok_or_else(|| Error::Mismatch(format!("{} is missing from the catalog", f.summary())))
        };
        let zero = find(&IdealFamily::zero(t))?;
        let unit = find(&IdealFamily::unit(t))?;
        let subset = (0..n)
            .map(|a| (0..n).map(|b| ideals[a].is_subset(&ideals[b])).collect())
            .collect();
        let mut products = vec![vec![0; n]; n];
        let mut sums = vec![vec![0; n]; n];
        let mut intersections = vec![vec![0; n]; n];
        for a in 0..n {
            for b in a..n {
                let p = find(&combine(Combine::Product, &ideals[a], &ideals[b], params)?)?;
                let s = find(&combine(Combine::Sum, &ideals[a], &ideals[b], params)?)?;
                let i = find(&combine(Combine::Intersect, &ideals[a], &ideals[b], params)?)?;
                (products[a][b], products[b][a]) = (p, p);
                (sums[a][b], sums[b][a]) = (s, s);
                (intersections[a][b], intersections[b][a]) = (i, i);
            }
        }
        let mut cat = IdealCatalog {
            functor: t.clone(),
            ideals,
            subset,
            products,
            sums,
            intersections,
            radicals: Vec::new(),
            zero,
            unit,
        };
        cat.radicals = cat.compute_radicals()?;
        Ok(cat)
    }

    /// `√I(X) = {a | ⟨a⟩ⁿ ⊆ I}`, using the principal ideal of each element.
    fn compute_radicals(&self) -> Result<Vec<usize>> {
        let t = &self.functor;
        let params = GenerateParams::default();
        let mut principal: Vec<Vec<(Elem, usize)>> = Vec::new();
        for c in 0..t.num_levels() {
            let elems = t.level(c).elements(DEFAULT_ELEMENT_LIMIT).expect("finite level");
            let mut row = Vec::new();
            for a in elems {
                let p = generate(t, &[(c, a.clone())], params)?;
                row.push((a, self.index_of(&p).expect("principal ideal is in the catalog")));
            }
            principal.push(row);
        }
        let mut out = Vec::new();
        for i in 0..self.ideals.len() {
            let mut levels = Vec::new();
            for (c, row) in principal.iter().enumerate() {
                let members: Vec<Elem> = row
                    .iter()
                    .filter(|(_, p)| self.power_falls_into(*p, i))
                    .map(|(a, _)| a.clone())
                    .collect();
                levels.push(LevelIdeal::generate(t.level(c), &members));
            }
            let fam = IdealFamily::new(t.clone(), levels, self.ideals[i].certificate)?;
            out.push(self.index_of(&fam).ok_or_else(|| Error::Mismatch("radical is not an ideal".into()))?);
        }
        Ok(out)
    }

    fn power_falls_into(&self, p: usize, target: usize) -> bool {
        let mut cur = p;
        let mut seen = vec![false; self.ideals.len()];
        loop {
            if self.subset[cur][target] {
                return true;
            }
            if seen[cur] {
                return false;
            }
            seen[cur] = true;
            cur = self.products[cur][p];
        }
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn index_of(&self, f: &IdealFamily) -> Option<usize> {
        self.ideals.iter().position(|i| i.levels == f.levels)
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn is_subset(&self, a: usize, b: usize) -> bool {
        self.subset[a][b]
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.products[a][b]
    }

    pub fn sum(&self, a: usize, b: usize) -> usize {
        self.sums[a][b]
    }

    pub fn intersection(&self, a: usize, b: usize) -> usize {
        self.intersections[a][b]
    }

    pub fn radical(&self, a: usize) -> usize {
        self.radicals[a]
    }

    /// The ideal-pair criterion: `IJ ⊆ p` forces `I ⊆ p` or `J ⊆ p`.
    pub fn is_prime(&self, p: usize) -> bool {
        if p == self.unit {
            return false;
        }
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| !self.subset[self.products[a][b]][p] || self.subset[a][p] || self.subset[b][p]))
    }

    pub fn is_maximal(&self, p: usize) -> bool {
        p != self.unit && (0..self.len()).all(|q| q == p || q == self.unit || !self.subset[p][q])
    }
}

/// Primes and maximal ideals of a catalog, as catalog indices.
pub struct PrimeData {
    pub catalog: IdealCatalog,
    pub primes: Vec<usize>,
    pub maximals: Vec<usize>,
}

impl PrimeData {
    pub fn build(t: &Functor, candidate_cap: u128) -> Result<Self> {
        let catalog = IdealCatalog::build(t, candidate_cap)?;
        let primes: Vec<usize> = (0..catalog.len()).filter(|&p| catalog.is_prime(p)).collect();
        let maximals = (0..catalog.len()).filter(|&p| catalog.is_maximal(p)).collect();
        if primes.len() > 128 {
            return Err(cap("primes in one spectrum", primes.len() as u128, 128));
        }
        Ok(PrimeData {
            catalog,
            primes,
            maximals,
        })
    }

    /// `V(I)` for a catalog ideal, as a bit set over `primes`.
    pub fn closed(&self, i: usize) -> u128 {
        self.primes
            .iter()
            .enumerate()
            .filter(|(_, &p)| self.catalog.is_subset(i, p))
            .fold(0, |acc, (k, _)| acc | 1 << k)
    }

    /// `V(I)` for any ideal of the functor.
    pub fn closed_of(&self, fam: &IdealFamily) -> u128 {
        self.primes
            .iter()
            .enumerate()
            .filter(|(_, &p)| fam.is_subset(&self.catalog.ideals[p]))
            .fold(0, |acc, (k, _)| acc | 1 << k)
    }

    pub fn everything(&self) -> u128 {
        if self.primes.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.primes.len()) - 1
        }
    }

    pub fn prime(&self, k: usize) -> &IdealFamily {
        &self.catalog.ideals[self.primes[k]]
    }

    /// Position among the primes of a family equal to `fam`.
    pub fn prime_position(&self, fam: &IdealFamily) -> Option<usize> {
        self.primes.iter().position(|&p| self.catalog.ideals[p].levels == fam.levels)
    }
}

/// Witness that `Spec` is disconnected: `a + b = 1` with `⟨a⟩⟨b⟩ = (0)` in `T_red`.
#[derive(Clone, Debug)]
pub struct Disconnection {
    pub level: usize,
    /// Representatives in `T` of the witnesses in `T_red`.
    pub a: Elem,
    pub b: Elem,
}

/// The five equivalent descriptions of a disconnected spectrum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConnectivityConditions {
    /// `Spec(T)` splits into two disjoint non-empty closed sets.
    pub spec_disconnected: bool,
    /// Proper coprime ideals of `T_red` with zero intersection.
    pub coprime_pair: bool,
    /// At every level of `T_red`, non-unit `a + b = 1` with `⟨a⟩⟨b⟩ = (0)`.
    pub idempotents_everywhere: bool,
    /// The same at some level.
    pub idempotents_somewhere: bool,
    /// `T_red ≅ T₁ × T₂` with non-trivial factors.
    pub splits_as_product: bool,
}

impl ConnectivityConditions {
    pub fn consistent(&self) -> bool {
        let v = self.spec_disconnected;
        [self.coprime_pair, self.idempotents_everywhere, self.idempotents_somewhere, self.splits_as_product]
            .iter()
            .all(|&x| x == v)
    }
}

pub struct SpectrumReport {
    pub functor: Functor,
    pub data: PrimeData,
    /// Named ideals with `V(I)` as positions in `data.primes`.
    pub closed_sets: Vec<(String, IdealFamily, Vec<usize>)>,
    pub nilradical: IdealFamily,
    pub t_red: Arc<QuotientFunctor>,
    /// The projection onto `T_red` maps `Spec(T)` bijectively onto `Spec(T_red)`.
    pub reduction_homeomorphism: bool,
    pub reduced: Flag,
    pub connected: Flag,
    pub domain_like: Flag,
    pub field_like: Flag,
    pub mrc: Flag,
    pub connectivity: ConnectivityConditions,
    pub disconnection: Option<Disconnection>,
    /// Maximal ideals paired with the maximal invariant ideals of `T(G/e)` they lift.
    pub maximal_correspondence: Vec<(LevelIdeal, usize)>,
    pub maximal_bijection: bool,
    pub law_checks: usize,
    pub law_failures: Vec<String>,
}

impl SpectrumReport {
    pub fn primes(&self) -> Vec<&IdealFamily> {
        (0..self.data.primes.len()).map(|k| self.data.prime(k)).collect()
    }

    pub fn maximals(&self) -> Vec<&IdealFamily> {
        self.data.maximals.iter().map(|&m| &self.data.catalog.ideals[m]).collect()
    }

    pub fn laws_hold(&self) -> bool {
        self.law_failures.is_empty()
    }

    pub fn render(&self) -> String {
        let t = &*self.functor;
        let g = t.group();
        let mut out = format!("spectrum of {}: {} ideals, {} primes\n", t.name(), self.data.catalog.len(), self.data.primes.len());
        for (k, &p) in self.data.primes.iter().enumerate() {
            let maximal = self.data.maximals.contains(&p);
            out.push_str(&format!("prime p{k}{}\n", if maximal { " (maximal)" } else { "" }));
            for (c, i) in self.data.catalog.ideals[p].levels.iter().enumerate() {
                out.push_str(&format!("  level {}: {}\n", g.class_name(c), i.format(t.level(c))));
            }
        }
        for (name, _, v) in &self.closed_sets {
            let names: Vec<String> = v.iter().map(|k| format!("p{k}")).collect();
            out.push_str(&format!("V({name}) = {{{}}}\n", names.join(", ")));
        }
        for (name, flag) in [
            ("reduced", &self.reduced),
            ("connected", &self.connected),
            ("domain_like", &self.domain_like),
            ("field_like", &self.field_like),
            ("mrc", &self.mrc),
        ] {
            out.push_str(&format!("flag {name} = {flag}\n"));
        }
        if let Some(d) = &self.disconnection {
            let r = t.level(d.level);
            out.push_str(&format!(
                "disconnected at level {}: a = {}, b = {}, a + b = 1, <a><b> = (0)\n",
                g.class_name(d.level),
                r.format(&d.a),
                r.format(&d.b)
            ));
        }
        if !self.reduced.is_true() {
            out.push_str(&format!("nilradical: {}\n", self.nilradical.summary()));
        }
        out.push_str(&format!(
            "closed-set laws: {} checks, {} failures\n",
            self.law_checks,
            self.law_failures.len()
        ));
        for f in &self.law_failures {
            out.push_str(&format!("  FAIL {f}\n"));
        }
        out
    }
}

fn bits_to_list(mask: u128) -> Vec<usize> {
    (0..128).filter(|k| mask >> k & 1 == 1).collect()
}

fn check_laws(data: &PrimeData, checks: &mut usize, failures: &mut Vec<String>) {
    let cat = &data.catalog;
    let n = cat.len();
    let mut law = |ok: bool, what: String| {
        *checks += 1;
        if !ok {
            failures.push(what);
        }
    };
    law(data.closed(cat.unit_index()) == 0, "V(T) is not empty".into());
    law(data.closed(cat.zero_index()) == data.everything(), "V((0)) is not everything".into());
    for a in 0..n {
        let va = data.closed(a);
        law(data.closed(cat.radical(a)) == va, format!("V(√I{a}) ≠ V(I{a})"));
        let meet = data.primes.iter().fold(cat.ideals[cat.unit_index()].clone(), |acc, &p| {
            if cat.is_subset(a, p) {
                combine(Combine::Intersect, &acc, &cat.ideals[p], GenerateParams::default()).expect("same functor")
            } else {
                acc
            }
        });
        law(cat.ideals[cat.radical(a)].is_subset(&meet), format!("√I{a} is not inside the primes over it"));
        if cat.is_maximal(a) {
            law(cat.is_prime(a), format!("maximal ideal I{a} is not prime"));
        }
        for b in 0..n {
            let vb = data.closed(b);
            law(data.closed(cat.product(a, b)) == va | vb, format!("V(I{a}·I{b}) ≠ V(I{a}) ∪ V(I{b})"));
            law(data.closed(cat.sum(a, b)) == va & vb, format!("V(I{a} + I{b}) ≠ V(I{a}) ∩ V(I{b})"));
            law(
                data.closed(cat.intersection(a, b)) & (va | vb) == va | vb,
                format!("V(I{a} ∩ I{b}) does not contain V(I{a}) ∪ V(I{b})"),
            );
        }
    }
}

/// Elements `a, b` at `level` with `a + b = 1`, neither generating `T`, and `⟨a⟩⟨b⟩ = (0)`.
fn idempotent_witness(cat: &IdealCatalog, level: usize) -> Result<Option<(Elem, Elem)>> {
    let t = &cat.functor;
    let r = t.level(level);
    let params = GenerateParams::default();
    for a in r.elements(DEFAULT_ELEMENT_LIMIT).expect("finite level") {
        let b = r.sub(&r.one(), &a);
        let ia = generate(t, &[(level, a.clone())], params)?;
        let ib = generate(t, &[(level, b.clone())], params)?;
        if ia.is_unit() || ib.is_unit() {
            continue;
        }
        if combine(Combine::Product, &ia, &ib, params)?.is_zero() {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// Full spectrum report for a functor with finite levels.
pub fn spec(t: &Functor, named: &[(String, IdealFamily)], candidate_cap: u128) -> Result<SpectrumReport> {
    let data = PrimeData::build(t, candidate_cap)?;
    let cat = &data.catalog;
    let g = t.group().clone();
    let params = GenerateParams::default();

    let mut closed_sets = vec![
        ("(0)".to_string(), cat.ideals[cat.zero_index()].clone()),
        ("T".to_string(), cat.ideals[cat.unit_index()].clone()),
    ];
    closed_sets.extend(named.iter().cloned());
    for k in 0..data.primes.len() {
        closed_sets.push((format!("p{k}"), data.prime(k).clone()));
    }
    let closed_sets = closed_sets
        .into_iter()
        .map(|(n, f)| {
            let v = bits_to_list(data.closed_of(&f));
            (n, f, v)
        })
        .collect();

    let mut law_checks = 0;
    let mut law_failures = Vec::new();
    check_laws(&data, &mut law_checks, &mut law_failures);

    // nilradical and T_red
    let mut nil = cat.ideals[cat.unit_index()].clone();
    for &p in &data.primes {
        nil = combine(Combine::Intersect, &nil, &cat.ideals[p], params)?;
    }
    let (t_red, proj) = quotient_functor(&nil, false)?;
    let red_fn: Functor = t_red.clone();
    let red = PrimeData::build(&red_fn, candidate_cap)?;
    let mut images = Vec::new();
    for k in 0..data.primes.len() {
        let q = pushforward(&proj, data.prime(k))?;
        images.push(red.prime_position(&q));
    }
    let mut hit: Vec<usize> = images.iter().flatten().copied().collect();
    hit.sort_unstable();
    hit.dedup();
    let reduction_homeomorphism =
        images.iter().all(|i| i.is_some()) && hit.len() == images.len() && hit.len() == red.primes.len();

    // connectivity, read off from T and T_red
    let everything = data.everything();
    let mut spec_disconnected = false;
    for a in 0..cat.len() {
        for b in 0..cat.len() {
            let (va, vb) = (data.closed(a), data.closed(b));
            if va != 0 && vb != 0 && va & vb == 0 && va | vb == everything {
                spec_disconnected = true;
            }
        }
    }
    let rc = &red.catalog;
    let mut coprime_pair = None;
    for a in 0..rc.len() {
        for b in a + 1..rc.len() {
            if a != rc.unit_index()
                && b != rc.unit_index()
                && rc.sum(a, b) == rc.unit_index()
                && rc.intersection(a, b) == rc.zero_index()
            {
                coprime_pair.get_or_insert((a, b));
            }
        }
    }
    let splits_as_product = match coprime_pair {
        Some((a, b)) => {
            coprime_and_crt(&[rc.ideals[a].clone(), rc.ideals[b].clone()], params, crate::sample::DEFAULT_SEED)?.holds()
        }
        None => false,
    };
    let mut witnesses = Vec::new();
    for c in 0..t.num_levels() {
        witnesses.push(idempotent_witness(rc, c)?);
    }
    let nonzero_levels: Vec<usize> = (0..t.num_levels()).filter(|&c| !red_fn.level(c).is_zero_ring()).collect();
    let connectivity = ConnectivityConditions {
        spec_disconnected,
        coprime_pair: coprime_pair.is_some(),
        idempotents_everywhere: !nonzero_levels.is_empty() && nonzero_levels.iter().all(|&c| witnesses[c].is_some()),
        idempotents_somewhere: witnesses.iter().any(|w| w.is_some()),
        splits_as_product,
    };
    let top = g.top_class();
    let disconnection = witnesses
        .get(top)
        .cloned()
        .flatten()
        .or_else(|| witnesses.iter().flatten().next().cloned())
        .map(|(a, b)| {
            let level = witnesses.iter().position(|w| w.as_ref() == Some(&(a.clone(), b.clone()))).unwrap_or(top);
            Disconnection {
                level,
                a: t_red.lift(level, &a),
                b: t_red.lift(level, &b),
            }
        });
    if !connectivity.consistent() {
        law_failures.push(format!("connectivity conditions disagree: {connectivity:?}"));
    }

    // maximal ideals against maximal invariant ideals of the bottom level
    let invariant = maximal_invariant_ideals(&**t)?;
    let mut maximal_correspondence = Vec::new();
    let mut maximal_bijection = invariant.len() == data.maximals.len();
    for i0 in invariant {
        let lift = invariant_ideal_lift(t, &i0)?;
        match cat.index_of(&lift) {
            Some(m) if data.maximals.contains(&m) => maximal_correspondence.push((i0, m)),
            _ => maximal_bijection = false,
        }
    }
    law_checks += 1;
    if !maximal_bijection {
        law_failures.push("maximal ideals do not match maximal invariant ideals of T(G/e)".into());
    }

    let nonzero = cat.zero_index() != cat.unit_index();
    let reduced = Flag::exact(nil.is_zero());
    let domain_like = Flag::exact(nonzero && cat.is_prime(cat.zero_index()));
    let field_like = Flag::exact(nonzero && cat.is_maximal(cat.zero_index()));
    let mrc = Flag::exact(is_mrc(&**t)?);
    Ok(SpectrumReport {
        functor: t.clone(),
        closed_sets,
        nilradical: nil,
        t_red,
        reduction_homeomorphism,
        reduced,
        connected: Flag::exact(!spec_disconnected),
        domain_like,
        field_like,
        mrc,
        connectivity,
        disconnection,
        maximal_correspondence,
        maximal_bijection,
        law_checks,
        law_failures,
        data,
    })
}

/// Is the ideal `i0` of `T(G/e)` stable under the `G`-action?
pub fn is_invariant(t: &dyn Tambara, i0: &LevelIdeal) -> Result<bool> {
    let g = t.group();
    let e = g.trivial_class();
    let r = t.level(e);
    for x in 0..g.order() {
        let m = TransMap::new(g, e, e, x)?;
        if i0.additive_generators(r).iter().any(|y| !i0.contains(r, &t.res(&m, y))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Proper `G`-invariant ideals of a finite `T(G/e)`, in catalog order.
pub fn invariant_ideals(t: &dyn Tambara) -> Result<Vec<LevelIdeal>> {
    let e = t.group().trivial_class();
    let r = t.level(e);
    let mut out = Vec::new();
    for i in all_ideals(r, DEFAULT_ELEMENT_LIMIT)? {
        if !i.is_unit(r) && is_invariant(t, &i)? {
            out.push(i);
        }
    }
    Ok(out)
}

fn maximal_invariant_ideals(t: &dyn Tambara) -> Result<Vec<LevelIdeal>> {
    let all = invariant_ideals(t)?;
    Ok(all
        .iter()
        .filter(|i| all.iter().all(|j| j == *i || !i.is_subset(j)))
        .cloned()
        .collect())
}

/// The positive generator of an ideal of `ℤ`, when the bottom level is `ℤ`.
fn integer_generator(r: &LevelRing, i: &LevelIdeal) -> Option<i64> {
    match r {
        LevelRing::Lattice(l) if l.dim() == 1 && l.modulus().is_zero() => {
            Some(i.generators(r).first().map(|x| x.0[0].abs()).unwrap_or(0))
        }
        _ => None,
    }
}

fn is_prime_number(n: i64) -> bool {
    n > 1 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn require_proper(p: &IdealFamily) -> Result<()> {
    if p.is_unit() {
        Err(Error::Invalid("the unit ideal is neither prime nor maximal".into()))
    } else {
        Ok(())
    }
}

/// Primality: exact for finite functors, otherwise unknown.
pub fn is_prime(p: &IdealFamily, candidate_cap: u128) -> Result<Flag> {
    require_proper(p)?;
    let t = &p.functor;
    if require_finite(&**t).is_err() {
        return Ok(Flag::unknown());
    }
    let cat = IdealCatalog::build(t, candidate_cap)?;
    let i = cat.index_of(p).ok_or_else(|| Error::Invalid("not an ideal".into()))?;
    Ok(Flag::exact(cat.is_prime(i)))
}

/// Maximality: by enumeration for finite functors, through invariant ideals of
/// `T(G/e)` when the bottom level is `ℤ`.
pub fn is_maximal(p: &IdealFamily, candidate_cap: u128) -> Result<Flag> {
    require_proper(p)?;
    let t = &p.functor;
    if require_finite(&**t).is_ok() {
        let cat = IdealCatalog::build(t, candidate_cap)?;
        let i = cat.index_of(p).ok_or_else(|| Error::Invalid("not an ideal".into()))?;
        return Ok(Flag::exact(cat.is_maximal(i)));
    }
    let e = t.group().trivial_class();
    let r = t.level(e);
    match integer_generator(r, &p.levels[e]) {
        Some(n) if is_prime_number(n) && is_trivial_action(&**t)? => {
            let lift = invariant_ideal_lift(t, &p.levels[e])?;
            Ok(Flag::theorem(lift.levels == p.levels))
        }
        Some(_) if is_trivial_action(&**t)? => Ok(Flag::theorem(false)),
        _ => Ok(Flag::unknown()),
    }
}

fn is_trivial_action(t: &dyn Tambara) -> Result<bool> {
    let g = t.group();
    let e = g.trivial_class();
    let r = t.level(e);
    for x in 0..g.order() {
        let m = TransMap::new(g, e, e, x)?;
        if r.additive_generators().iter().any(|y| t.res(&m, y) != *y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every restriction to `G/e` is injective.
pub fn is_mrc(t: &dyn Tambara) -> Result<bool> {
    let g = t.group();
    let e = g.trivial_class();
    let re = t.level(e);
    let zero = LevelIdeal::zero(re);
    for c in 0..t.num_levels() {
        let m = TransMap::projection(g, e, c)?;
        let f = |x: &Elem| t.res(&m, x);
        let ker = LevelIdeal::preimage(t.level(c), re, &f, &zero, DEFAULT_ELEMENT_LIMIT)?;
        if !ker.is_zero(t.level(c)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T_MRC = T/I_(0)` with its projection.
pub fn mrcize(t: &Functor) -> Result<(Arc<QuotientFunctor>, TambaraMorphism)> {
    let e = t.group().trivial_class();
    let i0 = invariant_ideal_lift(t, &LevelIdeal::zero(t.level(e)))?;
    quotient_functor(&i0, false)
}

/// The embedding `T ↪ P_{T(G/e)}` of a functor satisfying MRC.
pub fn embed(t: &Functor) -> Result<TambaraMorphism> {
    if !is_mrc(&**t)? {
        return Err(Error::Refused("only functors satisfying MRC embed into a fixed point functor".into()));
    }
    let g = t.group().clone();
    let e = g.trivial_class();
    let re = t.level(e).clone();
    let n = t.num_levels();
    let to_bottom = |c: usize| -> Result<TransMap> { TransMap::projection(&g, e, c) };
    if let Some((finite, elems)) = re.to_finite(DEFAULT_ELEMENT_LIMIT) {
        let index: std::collections::HashMap<Elem, usize> =
            elems.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let action = (0..g.order())
            .map(|x| {
                let m = TransMap::new(&g, e, e, x)?;
                Ok(elems.iter().map(|y| index[&t.res(&m, y)]).collect())
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        let gring = Arc::new(GRing::new(format!("{}(G/e)", t.name()), g.clone(), finite, action)?);
        let target = Arc::new(FixedPointFunctor::new(gring));
        let maps = (0..n)
            .map(|c| {
                let (t, target, index, m) = (t.clone(), target.clone(), index.clone(), to_bottom(c)?);
                Ok(Arc::new(move |x: &Elem| {
                    let r = index[&t.res(&m, x)];
                    target.from_ring(c, r).expect("restriction lands in the fixed points")
                }) as LevelMap)
            })
            .collect::<Result<Vec<_>>>()?;
        return TambaraMorphism::new(t.clone(), target, maps, "embedding");
    }
    if integer_generator(&re, &LevelIdeal::zero(&re)).is_some() && is_trivial_action(&**t)? {
        let target: Functor = Arc::new(IntegerFixedPoint::new(g.clone()));
        let maps = (0..n)
            .map(|c| {
                let (t, m) = (t.clone(), to_bottom(c)?);
                Ok(Arc::new(move |x: &Elem| Elem(vec![t.res(&m, x).0[0]])) as LevelMap)
            })
            .collect::<Result<Vec<_>>>()?;
        return TambaraMorphism::new(t.clone(), target, maps, "embedding");
    }
    Err(Error::Unsupported(
        "embedding needs a finite bottom level or ℤ with the trivial action".into(),
    ))
}

/// Factor `φ: T → S` with `S` satisfying MRC through `T → T_MRC`.
pub fn factor_through_mrc(phi: &TambaraMorphism, seed: u64) -> Result<(TambaraMorphism, MorphismReport)> {
    if !is_mrc(&*phi.target)? {
        return Err(Error::Refused("the target must satisfy MRC".into()));
    }
    let (q, p) = mrcize(&phi.source)?;
    let n = phi.source.num_levels();
    for c in 0..n {
        for x in q.ideals[c].additive_generators(phi.source.level(c)) {
            if !phi.target.level(c).is_zero(&phi.apply(c, &x)) {
                return Err(Error::Mismatch("the morphism does not vanish on I_(0)".into()));
            }
        }
    }
    let maps = (0..n)
        .map(|c| {
            let (q, phi) = (q.clone(), phi.clone());
            Arc::new(move |y: &Elem| phi.apply(c, &q.lift(c, y))) as LevelMap
        })
        .collect();
    let bar = TambaraMorphism::new(q.clone() as Functor, phi.target.clone(), maps, "factor")?;
    let mut report = bar.validate(seed);
    // the factorization composed with the projection gives back φ
    for c in 0..n {
        let (xs, _) = crate::sample::sample_level(phi.source.level(c), seed);
        for x in xs {
            report.checks += 1;
            if bar.apply(c, &p.apply(c, &x)) != phi.apply(c, &x) {
                report.ok = false;
                report.failures.push(format!("factorization differs at level {c}"));
                break;
            }
        }
    }
    Ok((bar, report))
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub mrc: Flag,
    pub field_like: Flag,
    pub domain_like: Flag,
    pub reduced: Flag,
    /// Proper non-zero `G`-invariant ideals of `T(G/e)`, when it is finite.
    pub invariant_ideals: Option<Vec<LevelIdeal>>,
    /// `T(G/e)^G` is a field and `T(G/G)` is a field, checked for field-like functors.
    pub fixed_fields: Option<bool>,
}

impl Classification {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, f) in [
            ("mrc", &self.mrc),
            ("field_like", &self.field_like),
            ("domain_like", &self.domain_like),
            ("reduced", &self.reduced),
        ] {
            out.push_str(&format!("flag {name} = {f}\n"));
        }
        if let Some(ok) = self.fixed_fields {
            out.push_str(&format!("fixed fields: {ok}\n"));
        }
        out
    }
}

fn is_zero_functor(t: &dyn Tambara) -> bool {
    (0..t.num_levels()).all(|c| t.level(c).is_zero_ring())
}

/// `T(G/e)^G` and `T(G/G)` are fields.
fn fixed_fields(t: &dyn Tambara) -> Result<Option<bool>> {
    let g = t.group();
    let (e, top) = (g.trivial_class(), g.top_class());
    let re = t.level(e);
    let (Some(elems), Some((rt, _))) = (re.elements(DEFAULT_ELEMENT_LIMIT), t.level(top).to_finite(DEFAULT_ELEMENT_LIMIT))
    else {
        return Ok(None);
    };
    let maps: Vec<TransMap> = (0..g.order()).map(|x| TransMap::new(g, e, e, x)).collect::<Result<_>>()?;
    let fixed: Vec<&Elem> = elems.iter().filter(|y| maps.iter().all(|m| t.res(m, y) == **y)).collect();
    let invertible = fixed
        .iter()
        .filter(|y| !re.is_zero(y))
        .all(|y| fixed.iter().any(|z| re.mul(y, z) == re.one()));
    let nonzero = !re.is_zero_ring();
    Ok(Some(invertible && nonzero && rt.is_field()))
}

/// Flags decided by the criteria for field-like and domain-like functors,
/// with enumeration for finite functors.
pub fn classify(t: &Functor, candidate_cap: u128) -> Result<Classification> {
    let tt = &**t;
    if is_zero_functor(tt) {
        return Ok(Classification {
            mrc: Flag::exact(true),
            field_like: Flag::exact(false),
            domain_like: Flag::exact(false),
            reduced: Flag::exact(true),
            invariant_ideals: Some(Vec::new()),
            fixed_fields: None,
        });
    }
    let mrc = is_mrc(tt)?;
    let e = tt.group().trivial_class();
    let re = tt.level(e);
    let nontrivial_invariant = if re.is_finite() {
        let all = invariant_ideals(tt)?;
        Some(all.into_iter().filter(|i| !i.is_zero(re)).collect::<Vec<_>>())
    } else {
        None
    };
    let field_like = if !mrc {
        Flag::theorem(false)
    } else if let Some(inv) = &nontrivial_invariant {
        Flag::theorem(inv.is_empty())
    } else if integer_generator(re, &LevelIdeal::zero(re)).is_some() {
        // ℤ has the invariant ideal (2)
        Flag::theorem(false)
    } else {
        Flag::unknown()
    };
    let domain_by_theorem = mrc && re.is_domain(DEFAULT_ELEMENT_LIMIT) == Some(true);
    let (domain_like, reduced) = if require_finite(tt).is_ok() {
        let cat = IdealCatalog::build(t, candidate_cap)?;
        let z = cat.zero_index();
        let mut meet = cat.ideals[cat.unit_index()].clone();
        for p in (0..cat.len()).filter(|&p| cat.is_prime(p)) {
            meet = combine(Combine::Intersect, &meet, &cat.ideals[p], GenerateParams::default())?;
        }
        let domain = cat.is_prime(z);
        if domain_by_theorem && !domain {
            return Err(Error::Mismatch("enumeration contradicts the domain-like criterion".into()));
        }
        (Flag::exact(domain), Flag::exact(meet.is_zero()))
    } else if field_like.is_true() || domain_by_theorem {
        (Flag::theorem(true), Flag::theorem(true))
    } else {
        (Flag::unknown(), Flag::unknown())
    };
    let fixed = if field_like.is_true() { fixed_fields(tt)? } else { None };
    Ok(Classification {
        mrc: Flag::exact(mrc),
        field_like,
        domain_like,
        reduced,
        invariant_ideals: nontrivial_invariant,
        fixed_fields: fixed,
    })
}

/// Classification of `Ω`, which is domain-like by the `ρ` certificate.
pub fn classify_omega(omega: &Arc<OmegaFunctor>, samples: usize, seed: u64) -> Result<(Classification, usize)> {
    let t: Functor = omega.clone();
    let mut c = classify(&t, DEFAULT_CANDIDATE_CAP)?;
    let certified = sample_domain_witnesses(omega, samples, seed)?
        .iter()
        .filter(|w| w.certified)
        .count();
    if certified == samples {
        c.domain_like = Flag::theorem(true);
        c.reduced = Flag::theorem(true);
    }
    Ok((c, certified))
}

/// One half of a domain witness.
#[derive(Clone, Debug)]
pub struct WitnessPart {
    pub class: usize,
    pub element: Elem,
    /// Catalog index of the chosen maximal `K` in the support of the element.
    pub k: usize,
    /// `ν = p^H_K`, written as a map out of the class representative of `K`.
    pub nu: TransMap,
    pub restricted: Elem,
    pub rho: i64,
    /// `(pt)_!(ν^*(a)) ∈ Ω(G/G)`.
    pub pushed: Elem,
    pub rho_pushed: i64,
}

#[derive(Clone, Debug)]
pub struct DomainWitness {
    pub a: WitnessPart,
    pub b: WitnessPart,
    pub product: Elem,
    pub rho_product: i64,
    pub certified: bool,
}

impl DomainWitness {
    pub fn render(&self, omega: &OmegaFunctor) -> String {
        let g = omega.group();
        let top = omega.level(g.top_class());
        let mut out = String::new();
        for (name, p) in [("a", &self.a), ("b", &self.b)] {
            out.push_str(&format!(
                "{name}: K = {}, nu = {}, rho(nu*({name})) = {}, pushed = {}\n",
                g.subgroup_name(p.k),
                p.nu.label(g),
                p.rho,
                top.format(&p.pushed)
            ));
        }
        out.push_str(&format!(
            "product = {}, rho = {} ({})\n",
            top.format(&self.product),
            self.rho_product,
            if self.certified { "certified non-zero" } else { "NOT certified" }
        ));
        out
    }
}

fn witness_part(omega: &OmegaFunctor, class: usize, a: &Elem) -> Result<WitnessPart> {
    let g: &Group = omega.group();
    let r = omega.level(class);
    let a = r.normalize(a)?;
    if r.is_zero(&a) {
        return Err(Error::Invalid("the witness needs non-zero elements".into()));
    }
    let basis = omega.basis_subgroups(class);
    // a largest subgroup in the support is maximal for subconjugacy
    let i = (0..basis.len())
        .filter(|&i| a.0[i] != 0)
        .max_by_key(|&i| (g.subgroup(basis[i]).order(), std::cmp::Reverse(i)))
        .expect("non-zero element");
    let k = basis[i];
    let kclass = g.class_of(k);
    let k0 = g.rep_index(kclass);
    let c = (0..g.order())
        .find(|&x| g.conjugate(k0, x) == k)
        .expect("K is conjugate to its class representative");
    let nu = TransMap::new(g, kclass, class, c)?;
    let restricted = omega.res(&nu, &a);
    let rho = omega.rho(kclass, &restricted);
    let pt = TransMap::projection(g, kclass, g.top_class())?;
    let pushed = omega.shriek(&pt, &restricted)?;
    let rho_pushed = omega.rho(g.top_class(), &pushed);
    Ok(WitnessPart {
        class,
        element: a,
        k,
        nu,
        restricted,
        rho,
        pushed,
        rho_pushed,
    })
}

/// Certify `⟨a⟩⟨b⟩ ≠ (0)` in `Ω` for non-zero `a` and `b`.
pub fn omega_domain_witness(omega: &OmegaFunctor, a: (usize, &Elem), b: (usize, &Elem)) -> Result<DomainWitness> {
    let pa = witness_part(omega, a.0, a.1)?;
    let pb = witness_part(omega, b.0, b.1)?;
    let top = omega.group().top_class();
    let product = omega.level(top).mul(&pa.pushed, &pb.pushed);
    let rho_product = omega.rho(top, &product);
    let certified = pa.rho != 0
        && pb.rho != 0
        && pa.rho_pushed == pa.rho
        && pb.rho_pushed == pb.rho
        && rho_product == pa.rho * pb.rho;
    Ok(DomainWitness {
        a: pa,
        b: pb,
        product,
        rho_product,
        certified,
    })
}

fn random_nonzero(omega: &OmegaFunctor, rng: &mut ChaCha8Rng) -> (usize, Elem) {
    let class = rng.gen_range(0..omega.num_levels());
    let r = omega.level(class);
    loop {
        let x = crate::sample::random_elem(r, rng);
        if !r.is_zero(&x) {
            return (class, x);
        }
    }
}

/// Witnesses for seeded random pairs of non-zero elements.
pub fn sample_domain_witnesses(omega: &OmegaFunctor, count: usize, seed: u64) -> Result<Vec<DomainWitness>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (ca, a) = random_nonzero(omega, &mut rng);
            let (cb, b) = random_nonzero(omega, &mut rng);
            omega_domain_witness(omega, (ca, &a), (cb, &b))
        })
        .collect()
}

/// The map `Spec(S) → Spec(T)` induced by `φ: T → S`.
pub struct SpecMap {
    pub source: PrimeData,
    pub target: PrimeData,
    /// For each prime of the target, the position of its preimage among the source primes.
    pub map: Vec<usize>,
    /// Preimages of closed sets are closed, checked on every source ideal.
    pub continuous: bool,
    pub closed_checks: usize,
    /// For surjective `φ`: `V(Ker φ) → Spec(S)` is a bijection inverse to the map.
    pub sharp_bijective: Option<bool>,
}

impl SpecMap {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (q, p) in self.map.iter().enumerate() {
            out.push_str(&format!("q{q} -> p{p}\n"));
        }
        out.push_str(&format!("continuous: {} ({} closed sets)\n", self.continuous, self.closed_checks));
        if let Some(b) = self.sharp_bijective {
            out.push_str(&format!("bijective onto V(Ker): {b}\n"));
        }
        out
    }
}

pub fn spec_map(phi: &TambaraMorphism, candidate_cap: u128) -> Result<SpecMap> {
    let source = PrimeData::build(&phi.source, candidate_cap)?;
    let target = PrimeData::build(&phi.target, candidate_cap)?;
    let params = GenerateParams::default();
    let mut map = Vec::new();
    for k in 0..target.primes.len() {
        let pre = crate::ideals::preimage(phi, target.prime(k))?;
        let pos = source
            .prime_position(&pre)
            .ok_or_else(|| Error::Mismatch("the preimage of a prime is not prime".into()))?;
        map.push(pos);
    }
    let mut continuous = true;
    let mut closed_checks = 0;
    for i in 0..source.catalog.len() {
        let fam = &source.catalog.ideals[i];
        let mut gens = Vec::new();
        for (c, l) in fam.levels.iter().enumerate() {
            for x in l.generators(phi.source.level(c)) {
                gens.push((c, phi.apply(c, &x)));
            }
        }
        let image = generate(&phi.target, &gens, params)?;
        let v = source.closed(i);
        let pulled = map.iter().enumerate().filter(|(_, &p)| v >> p & 1 == 1).fold(0u128, |acc, (q, _)| acc | 1 << q);
        closed_checks += 1;
        continuous &= pulled == target.closed_of(&image);
    }
    let sharp_bijective = if phi.is_surjective() {
        let ker = crate::ideals::kernel(phi)?;
        let over: Vec<usize> = (0..source.primes.len()).filter(|&k| ker.is_subset(source.prime(k))).collect();
        let mut ok = over.len() == target.primes.len();
        for k in over {
            let img = pushforward(phi, source.prime(k))?;
            match target.prime_position(&img) {
                Some(q) => ok &= map[q] == k,
                None => ok = false,
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(SpecMap {
        source,
        target,
        map,
        continuous,
        closed_checks,
        sharp_bijective,
    })
}

#[derive(Clone, Debug)]
pub struct DemoPrime {
    pub name: String,
    pub ideal: IdealFamily,
    pub prime: Flag,
    pub maximal: Flag,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct Separation {
    pub first: usize,
    pub second: usize,
    pub level: usize,
    /// An element of the first ideal outside the second, or the reverse when `reversed`.
    pub element: Elem,
    pub reversed: bool,
}

pub struct InclusionDemo {
    pub group: Arc<Group>,
    pub primes: Vec<DemoPrime>,
    pub separations: Vec<Separation>,
}

impl InclusionDemo {
    pub fn all_distinct(&self) -> bool {
        let n = self.primes.len();
        self.separations.len() == n * (n - 1) / 2
    }

    pub fn all_prime(&self) -> bool {
        self.primes.iter().all(|p| p.prime.is_true())
    }

    pub fn render(&self, omega: &OmegaFunctor) -> String {
        let g = omega.group();
        let mut out = String::new();
        for p in &self.primes {
            out.push_str(&format!(
                "{}: prime {}, maximal {}; {}\n",
                p.name, p.prime, p.maximal, p.reason
            ));
        }
        for s in &self.separations {
            let holder = if s.reversed { s.second } else { s.first };
            out.push_str(&format!(
                "{} != {}: {} at G/{} lies in {} only\n",
                self.primes[s.first].name,
                self.primes[s.second].name,
                omega.level(s.level).format(&s.element),
                g.class_name(s.level),
                self.primes[holder].name,
            ));
        }
        out
    }
}

fn separate(a: &IdealFamily, b: &IdealFamily) -> Option<(usize, Elem)> {
    let t = &a.functor;
    for (c, l) in a.levels.iter().enumerate() {
        for x in l.additive_generators(t.level(c)) {
            if !b.contains(c, &x) {
                return Some((c, x));
            }
        }
    }
    None
}

/// Distinct primes of `Ω`: `(0)` and `I_(p)` for `p = 0` and the given primes.
pub fn spec_inclusion_demo(omega: &Arc<OmegaFunctor>, primes: &[i64], seed: u64) -> Result<InclusionDemo> {
    let t: Functor = omega.clone();
    let g = omega.group().clone();
    let e = g.trivial_class();
    let re = t.level(e);
    let mut out = Vec::new();

    let witnesses = sample_domain_witnesses(omega, 10, seed)?;
    let certified = witnesses.iter().filter(|w| w.certified).count();
    out.push(DemoPrime {
        name: "(0)".into(),
        ideal: IdealFamily::zero(&t),
        prime: Flag::theorem(certified == witnesses.len()),
        maximal: Flag::theorem(false),
        reason: format!(
            "Ω is domain-like ({certified}/{} sampled ρ certificates); Ω is not MRC, so (0) is not of the form I_I",
            witnesses.len()
        ),
    });
    for &p in std::iter::once(&0).chain(primes) {
        if p != 0 && !is_prime_number(p) {
            return Err(Error::Invalid(format!("{p} is not a prime number")));
        }
        let i0 = LevelIdeal::generate(re, &[re.from_int(p)]);
        let lift = invariant_ideal_lift(&t, &i0)?;
        let (q, _) = quotient_functor(&lift, false)?;
        let mrc = is_mrc(&*q)?;
        let domain = q.level(e).is_domain(DEFAULT_ELEMENT_LIMIT) == Some(true);
        let maximal = if p == 0 { Flag::theorem(false) } else { is_maximal(&lift, DEFAULT_CANDIDATE_CAP)? };
        out.push(DemoPrime {
            name: format!("I_({p})"),
            ideal: lift,
            prime: Flag::theorem(mrc && domain),
            maximal,
            reason: format!("quotient satisfies MRC: {mrc}; bottom level ℤ/{p} is a domain: {domain}"),
        });
    }
    let mut separations = Vec::new();
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let found = separate(&out[i].ideal, &out[j].ideal)
                .map(|(l, x)| (l, x, false))
                .or_else(|| separate(&out[j].ideal, &out[i].ideal).map(|(l, x)| (l, x, true)));
            if let Some((level, element, reversed)) = found {
                separations.push(Separation {
                    first: i,
                    second: j,
                    level,
                    element,
                    reversed,
                });
            }
        }
    }
    Ok(InclusionDemo {
        group: g,
        primes: out,
        separations,
    })
}

/// Check a family against the ideal conditions and report whether it is one.
pub fn is_ideal(t: &Functor, levels: &[LevelIdeal]) -> Result<bool> {
    Ok(check_ideal(t, levels, DEFAULT_BOX)?.is_ideal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_point::GRing;
    use crate::group::builtin;
    use crate::tambara::ProductFunctor;

    fn c2() -> Arc<Group> {
        Arc::new(builtin("c2").unwrap())
    }

    fn pr(g: GRing) -> Functor {
        Arc::new(FixedPointFunctor::new(Arc::new(g)))
    }

    #[test]
    fn f2_trivial_has_two_ideals() {
        let t = pr(GRing::zmod(c2(), 2).unwrap());
        let ideals = enumerate_ideals(&t, DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(ideals.len(), 2);
        let r = spec(&t, &[], DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(r.data.primes.len(), 1);
        assert!(r.field_like.is_true());
        assert!(r.laws_hold(), "{:?}", r.law_failures);
    }

    #[test]
    fn f2_squared_trivial_is_disconnected() {
        let t = pr(GRing::prodfield(c2(), 2, 2, false).unwrap());
        assert_eq!(enumerate_ideals(&t, DEFAULT_CANDIDATE_CAP).unwrap().len(), 4);
        let r = spec(&t, &[], DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(r.data.primes.len(), 2);
        assert_eq!(r.data.maximals.len(), 2);
        assert!(r.connected.is_false());
        assert!(r.reduced.is_true());
        assert!(!r.domain_like.is_true());
        assert!(r.connectivity.consistent() && r.connectivity.spec_disconnected);
        assert!(r.disconnection.is_some());
        assert!(r.laws_hold(), "{:?}", r.law_failures);
        assert!(r.maximal_bijection && r.reduction_homeomorphism);
    }

    #[test]
    fn f2_squared_swap_is_field_like() {
        let t = pr(GRing::prodfield(c2(), 2, 2, true).unwrap());
        let r = spec(&t, &[], DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(r.data.primes.len(), 1);
        assert!(r.field_like.is_true() && r.connected.is_true() && r.reduced.is_true());
        let c = classify(&t, DEFAULT_CANDIDATE_CAP).unwrap();
        assert!(c.field_like.is_true());
        assert_eq!(c.fixed_fields, Some(true));
        assert_eq!(t.level(0).is_domain(64), Some(false));
    }

    #[test]
    fn z4_is_not_reduced() {
        let t = pr(GRing::zmod(c2(), 4).unwrap());
        let r = spec(&t, &[], DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(r.data.primes.len(), 1);
        assert!(r.reduced.is_false());
        assert_eq!(r.t_red.level(0).size(), Some(2));
        assert!(r.reduction_homeomorphism);
    }

    #[test]
    fn products_split_ideals() {
        let f2 = pr(GRing::zmod(c2(), 2).unwrap());
        let t: Functor = Arc::new(ProductFunctor::new(f2.clone(), f2).unwrap());
        let ideals = enumerate_ideals(&t, DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(ideals.len(), 4);
        let r = spec(&t, &[], DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(r.data.primes.len(), 2);
        assert!(r.connected.is_false());
    }

    #[test]
    fn z6_maximals_match_invariant_ideals() {
        let t = pr(GRing::zmod(c2(), 6).unwrap());
        let r = spec(&t, &[], DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(r.data.maximals.len(), 2);
        assert!(r.maximal_bijection);
        assert_eq!(r.maximal_correspondence.len(), 2);
        let c = classify(&t, DEFAULT_CANDIDATE_CAP).unwrap();
        assert!(c.field_like.is_false() && c.domain_like.is_false());
    }

    #[test]
    fn omega_is_not_mrc_and_its_mrc_quotient_embeds() {
        let omega = Arc::new(OmegaFunctor::new(c2()).unwrap());
        let t: Functor = omega.clone();
        assert!(!is_mrc(&*t).unwrap());
        assert!(embed(&t).is_err());
        let (q, _) = mrcize(&t).unwrap();
        let qf: Functor = q;
        assert!(is_mrc(&*qf).unwrap());
        let iota = embed(&qf).unwrap();
        assert!(iota.validate(1).ok);
        let pz: Functor = Arc::new(IntegerFixedPoint::new(c2()));
        let count = crate::fixed_point::counting_morphism(omega, pz).unwrap();
        let (_, rep) = factor_through_mrc(&count, 1).unwrap();
        assert!(rep.ok, "{:?}", rep.failures);
    }

    #[test]
    fn omega_witness_for_g_mod_e() {
        let omega = OmegaFunctor::new(c2()).unwrap();
        let a = Elem(vec![1, 0]);
        let w = omega_domain_witness(&omega, (1, &a), (1, &a)).unwrap();
        assert_eq!(w.a.k, omega.group().rep_index(0));
        assert_eq!(w.a.restricted, Elem(vec![2]));
        assert_eq!(w.a.rho, 2);
        assert!(w.certified);
        assert_eq!(w.rho_product, 4);
    }

    #[test]
    fn spec_map_of_projection() {
        let t = pr(GRing::zmod(c2(), 6).unwrap());
        let two = generate(&t, &[(1, Elem::from_index(2))], GenerateParams::default()).unwrap();
        let (_, p) = quotient_functor(&two, false).unwrap();
        let m = spec_map(&p, DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(m.map.len(), 1);
        assert!(m.continuous);
        assert_eq!(m.sharp_bijective, Some(true));
    }

    #[test]
    fn inclusion_demo_over_c2() {
        let omega = Arc::new(OmegaFunctor::new(c2()).unwrap());
        let d = spec_inclusion_demo(&omega, &[2, 3], 7).unwrap();
        assert!(d.all_prime());
        assert!(d.all_distinct());
        assert!(d.primes[2].maximal.is_true());
        assert!(d.primes[1].maximal.is_false());
        let s = &d.separations[0];
        assert_eq!((s.level, s.element.clone(), s.reversed), (1, Elem(vec![1, -2]), true));
    }
}
