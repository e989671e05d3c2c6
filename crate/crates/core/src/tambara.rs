//! The Tambara functor interface and its transport along arbitrary G-maps.
//!
//! A functor stores one ring per conjugacy class of subgroups: the value on
//! `G/H` for the class representative `H`. The structure maps are given on
//! elementary maps `G/K → G/H`, `gK ↦ gcH`, which cover all maps between
//! transitive G-sets (conjugations included). Values on a general G-set are
//! tuples over its orbits, and maps between general G-sets are assembled
//! orbit by orbit.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::group::Group;
use crate::gset::{orbit_decompose, GMap, GSet, OrbitDecomposition};
use crate::level_ideal::{LevelIdeal, QuotientRing};
use crate::lattice::Lattice;
use crate::ring::{Elem, FiniteRing, LatticeRing, LevelRing};
use crate::sample::{pairs, sample_level};

/// The map `G/K → G/H`, `gK ↦ gcH`, between class representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransMap {
    /// Class position of `K`.
    pub src: usize,
    /// Class position of `H`.
    pub dst: usize,
    /// Smallest element of the coset `cH`.
    pub c: usize,
}

impl TransMap {
    /// Validates `K ≤ cHc⁻¹` and canonicalises `c`.
    pub fn new(group: &Group, src: usize, dst: usize, c: usize) -> Result<Self> {
        if src >= group.num_classes() || dst >= group.num_classes() || c >= group.order() {
            return Err(invalid("map index out of range"));
        }
        let k = group.rep_index(src);
        let h = group.rep_index(dst);
        let kc = group.table.conjugate_mask(group.subgroup(k).mask, c);
        if kc & !group.subgroup(h).mask != 0 {
            return Err(invalid(format!(
                "no map G/{} → G/{} through element {c}",
                group.class_name(src),
                group.class_name(dst)
            )));
        }
        let cos = group.cosets(h);
        Ok(TransMap {
            src,
            dst,
            c: cos.reps[cos.index[c]],
        })
    }

    pub fn identity(class: usize) -> Self {
        TransMap {
            src: class,
            dst: class,
            c: 0,
        }
    }

    /// The projection `G/K → G/H` through the identity, if `K ≤ H`.
    pub fn projection(group: &Group, src: usize, dst: usize) -> Result<Self> {
        TransMap::new(group, src, dst, 0)
    }

    /// `second ∘ first`.
    pub fn then(&self, group: &Group, second: &TransMap) -> TransMap {
        assert_eq!(self.dst, second.src, "maps are not composable");
        TransMap::new(group, self.src, second.dst, group.mul(self.c, second.c)).expect("composite of valid maps")
    }

    /// `[H : K]`, the size of each fibre.
    pub fn degree(&self, group: &Group) -> usize {
        group.subgroup(group.rep_index(self.dst)).order() / group.subgroup(group.rep_index(self.src)).order()
    }

    pub fn to_gmap(&self, group: &Arc<Group>) -> GMap {
        GMap::coset_map(group, group.rep_index(self.src), group.rep_index(self.dst), self.c)
            .expect("validated elementary map")
    }

    pub fn label(&self, group: &Group) -> String {
        let base = format!("p{}{}", group.class_name(self.dst), group.class_name(self.src));
        if self.c == 0 {
            base
        } else {
            format!("{base}@{}", self.c)
        }
    }
}

/// All elementary maps between class representatives, in lexicographic order.
pub fn elementary_maps(group: &Group) -> Vec<TransMap> {
    let mut out = Vec::new();
    for k in 0..group.num_classes() {
        for h in 0..group.num_classes() {
            for &c in &group.cosets(group.rep_index(h)).reps {
                if let Ok(m) = TransMap::new(group, k, h, c) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// A Tambara functor presented on class representatives.
pub trait Tambara: Send + Sync {
    fn name(&self) -> String;
    fn group(&self) -> &Arc<Group>;
    /// The ring `T(G/H)` for class position `class`.
    fn level(&self, class: usize) -> &LevelRing;
    /// Restriction `T(G/H) → T(G/K)`.
    fn res(&self, m: &TransMap, x: &Elem) -> Elem;
    /// Additive transfer `T(G/K) → T(G/H)`.
    fn tr(&self, m: &TransMap, x: &Elem) -> Elem;
    /// Multiplicative transfer `T(G/K) → T(G/H)`.
    fn nm(&self, m: &TransMap, x: &Elem) -> Result<Elem>;

    fn num_levels(&self) -> usize {
        self.group().num_classes()
    }

    /// `f_! = f_• − f_•(0)` on an elementary map.
    fn shriek(&self, m: &TransMap, x: &Elem) -> Result<Elem> {
        let r = self.level(m.dst);
        let a = self.nm(m, x)?;
        let z = self.nm(m, &self.level(m.src).zero())?;
        Ok(r.sub(&a, &z))
    }
}

impl fmt::Debug for dyn Tambara {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tambara({})", self.name())
    }
}

pub type Functor = Arc<dyn Tambara>;

/// Values of a functor on a G-set: one element per orbit, in orbit order.
pub type Values = Vec<Elem>;

/// The rings making up `T(X)` for a decomposed G-set.
pub fn eval(t: &dyn Tambara, x: &GSet) -> (OrbitDecomposition, Vec<LevelRing>) {
    let d = orbit_decompose(x);
    let rings = d.orbits.iter().map(|o| t.level(o.class).clone()).collect();
    (d, rings)
}

pub fn zeros(t: &dyn Tambara, d: &OrbitDecomposition) -> Values {
    d.orbits.iter().map(|o| t.level(o.class).zero()).collect()
}

pub fn ones(t: &dyn Tambara, d: &OrbitDecomposition) -> Values {
    d.orbits.iter().map(|o| t.level(o.class).one()).collect()
}

pub fn add_values(t: &dyn Tambara, d: &OrbitDecomposition, a: &[Elem], b: &[Elem]) -> Values {
    d.orbits
        .iter()
        .zip(a.iter().zip(b))
        .map(|(o, (x, y))| t.level(o.class).add(x, y))
        .collect()
}

pub fn sub_values(t: &dyn Tambara, d: &OrbitDecomposition, a: &[Elem], b: &[Elem]) -> Values {
    d.orbits
        .iter()
        .zip(a.iter().zip(b))
        .map(|(o, (x, y))| t.level(o.class).sub(x, y))
        .collect()
}

pub fn mul_values(t: &dyn Tambara, d: &OrbitDecomposition, a: &[Elem], b: &[Elem]) -> Values {
    d.orbits
        .iter()
        .zip(a.iter().zip(b))
        .map(|(o, (x, y))| t.level(o.class).mul(x, y))
        .collect()
}

/// A G-map broken into elementary pieces, one per source orbit.
#[derive(Clone, Debug)]
pub struct MapPlan {
    pub src: OrbitDecomposition,
    pub dst: OrbitDecomposition,
    /// For each source orbit: the target orbit and the elementary map between them.
    pub parts: Vec<(usize, TransMap)>,
}

impl MapPlan {
    pub fn new(f: &GMap) -> Self {
        let group = f.src.group();
        let src = orbit_decompose(&f.src);
        let dst = orbit_decompose(&f.dst);
        let parts = src
            .orbits
            .iter()
            .map(|o| {
                let y = f.images[o.base];
                let j = dst.orbit_of[y];
                let target = &dst.orbits[j];
                let c = group.cosets(target.stabilizer).reps[target.coset_of(y)];
                (j, TransMap::new(group, o.class, target.class, c).expect("orbit maps are elementary"))
            })
            .collect();
        MapPlan { src, dst, parts }
    }

    pub fn res(&self, t: &dyn Tambara, y: &[Elem]) -> Values {
        self.parts.iter().map(|(j, m)| t.res(m, &y[*j])).collect()
    }

    pub fn tr(&self, t: &dyn Tambara, x: &[Elem]) -> Values {
        let mut out = zeros(t, &self.dst);
        for ((j, m), xi) in self.parts.iter().zip(x) {
            let r = t.level(m.dst);
            out[*j] = r.add(&out[*j], &t.tr(m, xi));
        }
        out
    }

    pub fn nm(&self, t: &dyn Tambara, x: &[Elem]) -> Result<Values> {
        let mut out = ones(t, &self.dst);
        for ((j, m), xi) in self.parts.iter().zip(x) {
            let r = t.level(m.dst);
            out[*j] = r.mul(&out[*j], &t.nm(m, xi)?);
        }
        Ok(out)
    }

    pub fn shriek(&self, t: &dyn Tambara, x: &[Elem]) -> Result<Values> {
        let a = self.nm(t, x)?;
        let z = self.nm(t, &zeros(t, &self.src))?;
        Ok(sub_values(t, &self.dst, &a, &z))
    }
}

/// Which structure map to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tag {
    Res,
    Tr,
    Nm,
    Shriek,
}

/// Apply a structure map along an arbitrary G-map.
pub fn transport(t: &dyn Tambara, f: &GMap, tag: Tag, x: &[Elem]) -> Result<Values> {
    let plan = MapPlan::new(f);
    let expected = match tag {
        Tag::Res => plan.dst.orbits.len(),
        _ => plan.src.orbits.len(),
    };
    if x.len() != expected {
        return Err(Error::Mismatch(format!("value has {} components, expected {expected}", x.len())));
    }
    match tag {
        Tag::Res => Ok(plan.res(t, x)),
        Tag::Tr => Ok(plan.tr(t, x)),
        Tag::Nm => plan.nm(t, x),
        Tag::Shriek => plan.shriek(t, x),
    }
}

pub type LevelMap = Arc<dyn Fn(&Elem) -> Elem + Send + Sync>;

/// A family of level-wise maps between two functors over the same group.
#[derive(Clone)]
pub struct TambaraMorphism {
    pub source: Functor,
    pub target: Functor,
    pub maps: Vec<LevelMap>,
    pub name: String,
}

impl fmt::Debug for TambaraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TambaraMorphism({}: {} → {})", self.name, self.source.name(), self.target.name())
    }
}

/// Outcome of checking a morphism.
#[derive(Clone, Debug, Default)]
pub struct MorphismReport {
    pub ok: bool,
    pub exhaustive: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl TambaraMorphism {
    pub fn new(source: Functor, target: Functor, maps: Vec<LevelMap>, name: impl Into<String>) -> Result<Self> {
        if !crate::gset::same_group(source.group(), target.group()) {
            return Err(Error::Mismatch("morphism between functors over different groups".into()));
        }
        if maps.len() != source.num_levels() {
            return Err(Error::Mismatch("one map per level is required".into()));
        }
        Ok(TambaraMorphism {
            source,
            target,
            maps,
            name: name.into(),
        })
    }

    pub fn identity(t: Functor) -> Self {
        let maps = (0..t.num_levels())
            .map(|_| Arc::new(|x: &Elem| x.clone()) as LevelMap)
            .collect();
        TambaraMorphism {
            source: t.clone(),
            target: t,
            maps,
            name: "id".into(),
        }
    }

    pub fn apply(&self, class: usize, x: &Elem) -> Elem {
        (self.maps[class])(x)
    }

    /// Ring homomorphism on every level and naturality on every elementary map.
    pub fn validate(&self, seed: u64) -> MorphismReport {
        let s = &*self.source;
        let t = &*self.target;
        let group = s.group().clone();
        let mut report = MorphismReport {
            ok: true,
            exhaustive: true,
            ..Default::default()
        };
        let fail = |report: &mut MorphismReport, msg: String| {
            report.ok = false;
            if report.failures.len() < 16 {
                report.failures.push(msg);
            }
        };
        let samples: Vec<(Vec<Elem>, bool)> = (0..s.num_levels())
            .map(|c| sample_level(s.level(c), seed ^ c as u64))
            .collect();
        for c in 0..s.num_levels() {
            let (rs, rt) = (s.level(c), t.level(c));
            let (xs, exhaustive) = &samples[c];
            report.exhaustive &= *exhaustive;
            if self.apply(c, &rs.one()) != rt.one() {
                fail(&mut report, format!("level {}: φ(1) ≠ 1", group.class_name(c)));
            }
            for (a, b) in pairs(xs, *exhaustive) {
                report.checks += 2;
                let (fa, fb) = (self.apply(c, a), self.apply(c, b));
                if self.apply(c, &rs.add(a, b)) != rt.add(&fa, &fb) {
                    fail(&mut report, format!("level {}: φ(a+b) ≠ φ(a)+φ(b) at a={}, b={}", group.class_name(c), rs.format(a), rs.format(b)));
                }
                if self.apply(c, &rs.mul(a, b)) != rt.mul(&fa, &fb) {
                    fail(&mut report, format!("level {}: φ(ab) ≠ φ(a)φ(b) at a={}, b={}", group.class_name(c), rs.format(a), rs.format(b)));
                }
            }
        }
        for m in elementary_maps(&group) {
            let label = m.label(&group);
            for y in &samples[m.dst].0 {
                report.checks += 1;
                if self.apply(m.src, &s.res(&m, y)) != t.res(&m, &self.apply(m.dst, y)) {
                    fail(&mut report, format!("res along {label} not natural at {}", s.level(m.dst).format(y)));
                }
            }
            for x in &samples[m.src].0 {
                report.checks += 2;
                let fx = self.apply(m.src, x);
                if self.apply(m.dst, &s.tr(&m, x)) != t.tr(&m, &fx) {
                    fail(&mut report, format!("tr along {label} not natural at {}", s.level(m.src).format(x)));
                }
                match (s.nm(&m, x), t.nm(&m, &fx)) {
                    (Ok(a), Ok(b)) => {
                        if self.apply(m.dst, &a) != b {
                            fail(&mut report, format!("nm along {label} not natural at {}", s.level(m.src).format(x)));
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => fail(&mut report, format!("nm along {label}: {e}")),
                }
            }
        }
        report
    }

    /// `φ_H` onto for every level.
    pub fn is_surjective(&self) -> bool {
        (0..self.source.num_levels()).all(|c| self.level_surjective(c))
    }

    pub fn level_surjective(&self, c: usize) -> bool {
        let rs = self.source.level(c);
        let rt = self.target.level(c);
        let imgs: Vec<Elem> = rs.additive_generators().iter().map(|x| self.apply(c, x)).collect();
        additive_span_is_everything(rt, &imgs)
    }

    pub fn level_injective(&self, c: usize, limit: usize) -> Option<bool> {
        let rs = self.source.level(c);
        let rt = self.target.level(c);
        let f = |x: &Elem| self.apply(c, x);
        let ker = LevelIdeal::preimage(rs, rt, &f, &LevelIdeal::zero(rt), limit).ok()?;
        Some(ker.is_zero(rs))
    }

    /// Level-wise image as a functor.
    pub fn image(&self) -> Result<ImageFunctor> {
        ImageFunctor::new(self)
    }
}

/// Does the additive subgroup generated by `gens` fill the ring?
pub fn additive_span_is_everything(ring: &LevelRing, gens: &[Elem]) -> bool {
    match ring {
        LevelRing::Lattice(r) => {
            let mut rows: Vec<Vec<i64>> = gens.iter().map(|g| g.0.clone()).collect();
            rows.extend(r.modulus().basis().iter().cloned());
            Lattice::from_generators(r.dim(), &rows).is_full_rank()
                && Lattice::from_generators(r.dim(), &rows).index() == Some(1)
        }
        _ => match additive_closure(ring, gens, crate::ring::DEFAULT_ELEMENT_LIMIT) {
            Some(s) => Some(s.len() as u128) == ring.size(),
            None => false,
        },
    }
}

/// The additive subgroup generated by `gens` in a finite ring, in discovery order.
pub fn additive_closure(ring: &LevelRing, gens: &[Elem], limit: usize) -> Option<Vec<Elem>> {
    let mut seen = std::collections::HashSet::new();
    let z = ring.zero();
    seen.insert(z.clone());
    let mut out = vec![z];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = ring.add(&out[i], g);
            if seen.insert(y.clone()) {
                out.push(y);
                if out.len() > limit {
                    return None;
                }
            }
        }
        i += 1;
    }
    Some(out)
}

/// A subring presented in its own coordinates.
#[derive(Clone, Debug)]
pub struct Subring {
    pub ring: LevelRing,
    ambient: LevelRing,
    kind: SubringKind,
}

#[derive(Clone, Debug)]
enum SubringKind {
    Finite { elems: Vec<Elem>, index: HashMap<Elem, usize> },
    /// HNF basis of the subgroup `S + modulus` of `ℤ^n`.
    Lattice { span: Lattice },
}

impl Subring {
    /// The subring generated by `gens` (closed under `+`, `·`, containing 1).
    pub fn generated(ambient: &LevelRing, gens: &[Elem], limit: usize) -> Result<Self> {
        match ambient {
            LevelRing::Lattice(r) => {
                // the additive span of a multiplicatively closed set containing 1 is a subring
                let mut rows: Vec<Vec<i64>> = gens.iter().map(|g| g.0.clone()).collect();
                rows.push(ambient.one().0);
                rows.extend(r.modulus().basis().iter().cloned());
                let mut span = Lattice::from_generators(r.dim(), &rows);
                loop {
                    let basis: Vec<Elem> = span.basis().iter().map(|v| Elem(v.clone())).collect();
                    let mut more = span.basis().to_vec();
                    for a in &basis {
                        for b in &basis {
                            more.push(ambient.mul(a, b).0);
                        }
                    }
                    let next = Lattice::from_generators(r.dim(), &more);
                    if next == span {
                        break;
                    }
                    span = next;
                }
                let rank = span.rank();
                let coords = |v: &[i64]| span.solve(v).expect("vector lies in the span");
                let basis: Vec<Elem> = span.basis().iter().map(|v| Elem(v.clone())).collect();
                let structure = basis
                    .iter()
                    .map(|a| basis.iter().map(|b| coords(&ambient.mul(a, b).0)).collect())
                    .collect();
                let one = coords(&ambient.one().0);
                let modulus_rows: Vec<Vec<i64>> = r.modulus().basis().iter().map(|v| coords(v)).collect();
                let modulus = Lattice::from_generators(rank, &modulus_rows);
                let names = (0..rank).map(|i| format!("b{i}")).collect();
                let ring = LevelRing::lattice(LatticeRing::new(structure, one, modulus, names)?);
                Ok(Subring {
                    ring,
                    ambient: ambient.clone(),
                    kind: SubringKind::Lattice { span },
                })
            }
            _ => {
                let mut g: Vec<Elem> = gens.to_vec();
                g.push(ambient.one());
                let mut elems = additive_closure(ambient, &g, limit)
                    .ok_or_else(|| Error::Unsupported("subring too large to tabulate".into()))?;
                loop {
                    let mut set: std::collections::HashSet<Elem> = elems.iter().cloned().collect();
                    let mut grew = false;
                    let snapshot = elems.clone();
                    for a in &snapshot {
                        for b in &snapshot {
                            let p = ambient.mul(a, b);
                            if set.insert(p.clone()) {
                                g.push(p);
                                grew = true;
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                    elems = additive_closure(ambient, &g, limit)
                        .ok_or_else(|| Error::Unsupported("subring too large to tabulate".into()))?;
                    set.clear();
                }
                elems.sort();
                let index: HashMap<Elem, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
                let labels = elems.iter().map(|e| ambient.format(e)).collect();
                let fr = FiniteRing::tabulate(
                    elems.len(),
                    labels,
                    index[&ambient.zero()],
                    index[&ambient.one()],
                    |a, b| index[&ambient.add(&elems[a], &elems[b])],
                    |a, b| index[&ambient.mul(&elems[a], &elems[b])],
                );
                Ok(Subring {
                    ring: LevelRing::finite(fr),
                    ambient: ambient.clone(),
                    kind: SubringKind::Finite { elems, index },
                })
            }
        }
    }

    pub fn embed(&self, y: &Elem) -> Elem {
        match &self.kind {
            SubringKind::Finite { elems, .. } => elems[y.index()].clone(),
            SubringKind::Lattice { span } => {
                let v = crate::lattice::combine(&y.0, span.basis(), span.dim());
                self.ambient.normalize(&Elem(v)).unwrap()
            }
        }
    }

    pub fn coords(&self, x: &Elem) -> Option<Elem> {
        match &self.kind {
            SubringKind::Finite { index, .. } => index.get(x).map(|&i| Elem::from_index(i)),
            SubringKind::Lattice { span } => {
                let v = span.solve(&x.0)?;
                self.ring.normalize(&Elem(v)).ok()
            }
        }
    }
}

/// `Im φ` with structure maps inherited from the target.
pub struct ImageFunctor {
    target: Functor,
    subrings: Vec<Subring>,
    levels: Vec<LevelRing>,
}

impl ImageFunctor {
    pub fn new(phi: &TambaraMorphism) -> Result<Self> {
        let subrings = (0..phi.source.num_levels())
            .map(|c| {
                let gens: Vec<Elem> = phi
                    .source
                    .level(c)
                    .additive_generators()
                    .iter()
                    .map(|x| phi.apply(c, x))
                    .collect();
                Subring::generated(phi.target.level(c), &gens, crate::ring::DEFAULT_ELEMENT_LIMIT)
            })
            .collect::<Result<Vec<_>>>()?;
        let levels = subrings.iter().map(|s| s.ring.clone()).collect();
        Ok(ImageFunctor {
            target: phi.target.clone(),
            subrings,
            levels,
        })
    }

    pub fn subring(&self, c: usize) -> &Subring {
        &self.subrings[c]
    }

    fn back(&self, c: usize, x: &Elem) -> Elem {
        self.subrings[c].coords(x).expect("image is closed under the structure maps")
    }
}

impl Tambara for ImageFunctor {
    fn name(&self) -> String {
        format!("Im({})", self.target.name())
    }
    fn group(&self) -> &Arc<Group> {
        self.target.group()
    }
    fn level(&self, class: usize) -> &LevelRing {
        &self.levels[class]
    }
    fn res(&self, m: &TransMap, x: &Elem) -> Elem {
        self.back(m.src, &self.target.res(m, &self.subrings[m.dst].embed(x)))
    }
    fn tr(&self, m: &TransMap, x: &Elem) -> Elem {
        self.back(m.dst, &self.target.tr(m, &self.subrings[m.src].embed(x)))
    }
    fn nm(&self, m: &TransMap, x: &Elem) -> Result<Elem> {
        Ok(self.back(m.dst, &self.target.nm(m, &self.subrings[m.src].embed(x))?))
    }
}

/// The functor with the zero ring at every level.
pub struct ZeroFunctor {
    group: Arc<Group>,
    ring: LevelRing,
}

impl ZeroFunctor {
    pub fn new(group: Arc<Group>) -> Self {
        let z = FiniteRing::tabulate(1, vec!["0".into()], 0, 0, |_, _| 0, |_, _| 0);
        ZeroFunctor {
            group,
            ring: LevelRing::finite(z),
        }
    }
}

impl Tambara for ZeroFunctor {
    fn name(&self) -> String {
        "0".into()
    }
    fn group(&self) -> &Arc<Group> {
        &self.group
    }
    fn level(&self, _: usize) -> &LevelRing {
        &self.ring
    }
    fn res(&self, _: &TransMap, x: &Elem) -> Elem {
        x.clone()
    }
    fn tr(&self, _: &TransMap, x: &Elem) -> Elem {
        x.clone()
    }
    fn nm(&self, _: &TransMap, x: &Elem) -> Result<Elem> {
        Ok(x.clone())
    }
}

/// `T₁ × T₂` with componentwise structure maps.
pub struct ProductFunctor {
    pub first: Functor,
    pub second: Functor,
    levels: Vec<LevelRing>,
}

impl ProductFunctor {
    pub fn new(first: Functor, second: Functor) -> Result<Self> {
        if !crate::gset::same_group(first.group(), second.group()) {
            return Err(Error::Mismatch("product of functors over different groups".into()));
        }
        let levels = (0..first.num_levels())
            .map(|c| LevelRing::product(first.level(c).clone(), second.level(c).clone()))
            .collect();
        Ok(ProductFunctor { first, second, levels })
    }

    fn split(&self, class: usize, x: &Elem) -> (Elem, Elem) {
        self.levels[class].components(x).unwrap()
    }

    /// The two projections `T₁ × T₂ → T_i`.
    pub fn projections(self: &Arc<Self>) -> (TambaraMorphism, TambaraMorphism) {
        let n = self.first.num_levels();
        let mk = |which: usize| {
            let maps = (0..n)
                .map(|c| {
                    let me = self.clone();
                    Arc::new(move |x: &Elem| {
                        let (a, b) = me.split(c, x);
                        if which == 0 {
                            a
                        } else {
                            b
                        }
                    }) as LevelMap
                })
                .collect();
            let target = if which == 0 { self.first.clone() } else { self.second.clone() };
            TambaraMorphism {
                source: self.clone() as Functor,
                target,
                maps,
                name: format!("pr{}", which + 1),
            }
        };
        (mk(0), mk(1))
    }
}

impl Tambara for ProductFunctor {
    fn name(&self) -> String {
        format!("{} × {}", self.first.name(), self.second.name())
    }
    fn group(&self) -> &Arc<Group> {
        self.first.group()
    }
    fn level(&self, class: usize) -> &LevelRing {
        &self.levels[class]
    }
    fn res(&self, m: &TransMap, x: &Elem) -> Elem {
        let (a, b) = self.split(m.dst, x);
        LevelRing::pair(self.first.res(m, &a), self.second.res(m, &b))
    }
    fn tr(&self, m: &TransMap, x: &Elem) -> Elem {
        let (a, b) = self.split(m.src, x);
        LevelRing::pair(self.first.tr(m, &a), self.second.tr(m, &b))
    }
    fn nm(&self, m: &TransMap, x: &Elem) -> Result<Elem> {
        let (a, b) = self.split(m.src, x);
        Ok(LevelRing::pair(self.first.nm(m, &a)?, self.second.nm(m, &b)?))
    }
}

/// `T/I` for a family of level ideals; well defined when the family is an ideal.
pub struct QuotientFunctor {
    pub base: Functor,
    pub ideals: Vec<LevelIdeal>,
    quotients: Vec<QuotientRing>,
    levels: Vec<LevelRing>,
}

impl QuotientFunctor {
    pub fn new(base: Functor, ideals: Vec<LevelIdeal>) -> Result<Self> {
        if ideals.len() != base.num_levels() {
            return Err(Error::Mismatch("one ideal per level is required".into()));
        }
        let quotients = ideals
            .iter()
            .enumerate()
            .map(|(c, i)| QuotientRing::new(base.level(c), i))
            .collect::<Result<Vec<_>>>()?;
        let levels = quotients.iter().map(|q| q.ring.clone()).collect();
        Ok(QuotientFunctor {
            base,
            ideals,
            quotients,
            levels,
        })
    }

    pub fn project(&self, class: usize, x: &Elem) -> Elem {
        self.quotients[class].project(x)
    }

    pub fn lift(&self, class: usize, y: &Elem) -> Elem {
        self.quotients[class].lift(y)
    }

    /// The projection `T → T/I`.
    pub fn projection(self: &Arc<Self>) -> TambaraMorphism {
        let maps = (0..self.base.num_levels())
            .map(|c| {
                let me = self.clone();
                Arc::new(move |x: &Elem| me.project(c, x)) as LevelMap
            })
            .collect();
        TambaraMorphism {
            source: self.base.clone(),
            target: self.clone() as Functor,
            maps,
            name: "projection".into(),
        }
    }
}

impl Tambara for QuotientFunctor {
    fn name(&self) -> String {
        format!("{}/I", self.base.name())
    }
    fn group(&self) -> &Arc<Group> {
        self.base.group()
    }
    fn level(&self, class: usize) -> &LevelRing {
        &self.levels[class]
    }
    fn res(&self, m: &TransMap, x: &Elem) -> Elem {
        self.project(m.src, &self.base.res(m, &self.lift(m.dst, x)))
    }
    fn tr(&self, m: &TransMap, x: &Elem) -> Elem {
        self.project(m.dst, &self.base.tr(m, &self.lift(m.src, x)))
    }
    fn nm(&self, m: &TransMap, x: &Elem) -> Result<Elem> {
        Ok(self.project(m.dst, &self.base.nm(m, &self.lift(m.src, x))?))
    }
}

/// Parse `p<H><K>[@c]` into an elementary map `G/K → G/H`.
pub fn parse_map(group: &Group, s: &str) -> Result<TransMap> {
    let body = s
        .strip_prefix('p')
        .ok_or_else(|| invalid(format!("map `{s}` must look like p<H><K>[@c]")))?;
    let (names, c) = match body.split_once('@') {
        Some((n, c)) => (n, c.parse::<usize>().map_err(|_| invalid(format!("bad element in `{s}`")))?),
        None => (body, 0),
    };
    let classes: Vec<(usize, &str)> = (0..group.num_classes()).map(|i| (i, group.class_name(i))).collect();
    for &(h, hn) in &classes {
        if let Some(rest) = names.strip_prefix(hn) {
            if let Some(&(k, _)) = classes.iter().find(|(_, kn)| *kn == rest) {
                return TransMap::new(group, k, h, c);
            }
        }
    }
    Err(invalid(format!("cannot read subgroup names in `{s}`")))
}

/// Build a G-set from a list of orbit classes, e.g. `G/e ⊔ G/G`.
pub fn gset_of_classes(group: &Arc<Group>, classes: &[usize]) -> GSet {
    let parts: Vec<GSet> = classes
        .iter()
        .map(|&c| GSet::coset_space(group, group.rep_index(c)))
        .collect();
    crate::gset::coproduct_many(group, &parts).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    #[test]
    fn elementary_maps_of_c2_and_s3() {
        let c2 = builtin("c2").unwrap();
        // G/e → G/e twice, G/e → G/G, G/G → G/G
        assert_eq!(elementary_maps(&c2).len(), 4);
        let s3 = builtin("s3").unwrap();
        for m in elementary_maps(&s3) {
            m.to_gmap(&Arc::new(s3.clone())).check_equivariant().unwrap();
        }
        assert!(TransMap::new(&s3, 3, 1, 0).is_err());
    }

    #[test]
    fn composition_matches_gmaps() {
        let g = Arc::new(builtin("s3").unwrap());
        let maps = elementary_maps(&g);
        for a in &maps {
            for b in maps.iter().filter(|b| b.src == a.dst) {
                let comp = a.then(&g, b);
                let direct = b.to_gmap(&g).after(&a.to_gmap(&g)).unwrap();
                assert_eq!(comp.to_gmap(&g).images, direct.images);
            }
        }
    }

    #[test]
    fn parse_map_names() {
        let g = builtin("c2").unwrap();
        let m = parse_map(&g, "pGe").unwrap();
        assert_eq!((m.src, m.dst, m.c), (0, 1, 0));
        assert_eq!(parse_map(&g, "pee@1").unwrap().c, 1);
        assert!(parse_map(&g, "peG").is_err());
        assert!(parse_map(&g, "qGe").is_err());
    }

    #[test]
    fn map_plans_follow_orbits() {
        let g = Arc::new(builtin("c2").unwrap());
        let x = gset_of_classes(&g, &[0, 1]);
        let plan = MapPlan::new(&GMap::to_point(&x));
        assert_eq!(plan.parts.len(), 2);
        assert_eq!(plan.parts[0].1.degree(&g), 2);
    }
}
