//! Finite G-sets, equivariant maps, orbit decompositions and the
//! constructions built from them: coproducts, products, pullbacks, the
//! dependent product Π_f and the two exponential diagrams.

use std::sync::Arc;

use crate::error::{cap, invalid, Error, Result};
use crate::group::Group;

/// Default ceiling on the number of points a single construction may create.
pub const DEFAULT_POINT_CAP: usize = 2_000_000;

/// A finite set with a left action of the group.
#[derive(Debug, Clone)]
pub struct GSet {
    group: Arc<Group>,
    size: usize,
    /// `action[g * size + x]` is `g·x`.
    action: Arc<Vec<u32>>,
    pub label: Option<String>,
}

pub(crate) fn same_group(a: &Arc<Group>, b: &Arc<Group>) -> bool {
    Arc::ptr_eq(a, b) || a.table == b.table
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.size == other.size && self.action == other.action
    }
}

impl Eq for GSet {}

impl GSet {
    /// Build from `rows[g][x] = g·x`, validating the action axioms.
    pub fn new(group: Arc<Group>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = group.order();
        if rows.len() != n {
            return Err(invalid(format!("action needs {n} rows, got {}", rows.len())));
        }
        let size = rows.first().map_or(0, |r| r.len());
        let mut action = Vec::with_capacity(n * size);
        for (g, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(invalid(format!("action row {g} has {} entries, expected {size}", row.len())));
            }
            for &x in row {
                if x >= size {
                    return Err(invalid(format!("action row {g} maps to {x}, outside 0..{size}")));
                }
                action.push(x as u32);
            }
        }
        let set = GSet {
            group,
            size,
            action: Arc::new(action),
            label: None,
        };
        set.validate()?;
        Ok(set)
    }

    fn from_raw(group: Arc<Group>, size: usize, action: Vec<u32>) -> Self {
        debug_assert_eq!(action.len(), group.order() * size);
        GSet {
            group,
            size,
            action: Arc::new(action),
            label: None,
        }
    }

    /// Build the action table from a point map, without validation.
    fn from_fn(group: &Arc<Group>, size: usize, mut act: impl FnMut(usize, usize) -> usize) -> Self {
        let n = group.order();
        let mut action = Vec::with_capacity(n * size);
        for g in 0..n {
            for x in 0..size {
                action.push(act(g, x) as u32);
            }
        }
        Self::from_raw(group.clone(), size, action)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn empty(group: Arc<Group>) -> Self {
        Self::from_raw(group, 0, Vec::new())
    }

    /// The one-point G-set G/G.
    pub fn point(group: Arc<Group>) -> Self {
        let n = group.order();
        Self::from_raw(group, 1, vec![0; n])
    }

    /// Left cosets `G/H`, numbered by smallest element; point 0 is `eH`.
    pub fn coset_space(group: &Arc<Group>, sub: usize) -> Self {
        let cosets = group.cosets(sub);
        let size = cosets.reps.len();
        Self::from_fn(group, size, |g, x| cosets.index[group.mul(g, cosets.reps[x])])
            .with_label(format!("G/{}", group.subgroup_name(sub)))
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.group.order())
            .map(|g| (0..self.size).map(|x| self.act(g, x)).collect())
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.group.order();
        for x in 0..self.size {
            if self.act(0, x) != x {
                return Err(invalid(format!("identity moves point {x}")));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = self.group.mul(g, h);
                for x in 0..self.size {
                    if self.act(gh, x) != self.act(g, self.act(h, x)) {
                        return Err(invalid(format!("action is not compatible with multiplication at ({g},{h},{x})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Stabilizer of a point as a catalog index.
    pub fn stabilizer(&self, x: usize) -> usize {
        let mask = (0..self.group.order())
            .filter(|&g| self.act(g, x) == x)
            .fold(0u64, |m, g| m | 1u64 << g);
        self.group.index_of_mask(mask).expect("stabilizers are subgroups")
    }

    /// Points of the orbit of `x`, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        for g in 0..self.group.order() {
            seen[self.act(g, x)] = true;
        }
        (0..self.size).filter(|&y| seen[y]).collect()
    }

    pub fn decompose(&self) -> OrbitDecomposition {
        orbit_decompose(self)
    }
}

/// An equivariant map between two G-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMap {
    pub src: GSet,
    pub dst: GSet,
    pub images: Vec<usize>,
}

impl GMap {
    pub fn new(src: GSet, dst: GSet, images: Vec<usize>) -> Result<Self> {
        if !same_group(src.group(), dst.group()) {
            return Err(Error::Mismatch("source and target live over different groups".into()));
        }
        if images.len() != src.size() {
            return Err(invalid(format!("map has {} images for {} points", images.len(), src.size())));
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= dst.size()) {
            return Err(invalid(format!("image {bad} outside target of size {}", dst.size())));
        }
        let m = GMap { src, dst, images };
        m.check_equivariant()?;
        Ok(m)
    }

    fn raw(src: GSet, dst: GSet, images: Vec<usize>) -> Self {
        debug_assert!(GMap::new(src.clone(), dst.clone(), images.clone()).is_ok());
        GMap { src, dst, images }
    }

    pub fn check_equivariant(&self) -> Result<()> {
        for g in 0..self.src.group().order() {
            for x in 0..self.src.size() {
                if self.images[self.src.act(g, x)] != self.dst.act(g, self.images[x]) {
                    return Err(invalid(format!("map is not equivariant at element {g}, point {x}")));
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &GSet) -> Self {
        GMap::raw(x.clone(), x.clone(), (0..x.size()).collect())
    }

    /// The unique map to the one-point set.
    pub fn to_point(x: &GSet) -> Self {
        GMap::raw(x.clone(), GSet::point(x.group().clone()), vec![0; x.size()])
    }

    /// The projection `G/K → G/H`, `gK ↦ gcH`; requires `K ≤ cHc⁻¹`.
    pub fn coset_map(group: &Arc<Group>, k: usize, h: usize, c: usize) -> Result<Self> {
        let src = GSet::coset_space(group, k);
        let dst = GSet::coset_space(group, h);
        let ck = group.cosets(k);
        let ch = group.cosets(h);
        let images: Vec<usize> = ck.reps.iter().map(|&g| ch.index[group.mul(g, c)]).collect();
        GMap::new(src, dst, images)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GMap) -> Result<GMap> {
        if first.dst != self.src {
            return Err(Error::Mismatch("maps are not composable".into()));
        }
        Ok(GMap::raw(
            first.src.clone(),
            self.dst.clone(),
            first.images.iter().map(|&x| self.images[x]).collect(),
        ))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.dst.size()];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.dst.size()];
        self.images.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.src.size()).filter(|&x| self.images[x] == y).collect()
    }

    /// Fiber size; meaningful when both ends are transitive.
    pub fn degree(&self) -> usize {
        if self.dst.is_empty() {
            0
        } else {
            self.fiber(0).len()
        }
    }
}

/// One orbit with a base point whose stabilizer is exactly a class representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub base: usize,
    /// Class position of the stabilizer of `base`.
    pub class: usize,
    /// Catalog index of the stabilizer of `base` (the class representative).
    pub stabilizer: usize,
    /// Point of the orbit -> coset index in `G/stabilizer`.
    pub iso: Vec<(usize, usize)>,
    /// Coset index -> point.
    pub inverse: Vec<usize>,
}

impl Orbit {
    /// Coset index of a point of this orbit.
    pub fn coset_of(&self, x: usize) -> usize {
        let i = self.points.binary_search(&x).expect("point belongs to the orbit");
        self.iso[i].1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    /// Orbits ordered by their smallest point.
    pub orbits: Vec<Orbit>,
    /// Orbit number of each point.
    pub orbit_of: Vec<usize>,
    /// Number of orbits per subgroup class.
    pub signature: Vec<usize>,
}

impl OrbitDecomposition {
    /// Isomorphism from orbit `i` onto the coset space of its representative.
    pub fn orbit_iso(&self, x: &GSet, i: usize) -> (GSet, GMap) {
        let o = &self.orbits[i];
        let sub = GSet::from_fn(x.group(), o.points.len(), |g, k| {
            let p = x.act(g, o.points[k]);
            o.points.binary_search(&p).unwrap()
        });
        let cs = GSet::coset_space(x.group(), o.stabilizer);
        let images = o.iso.iter().map(|&(_, c)| c).collect();
        let m = GMap::raw(sub.clone(), cs, images);
        (sub, m)
    }
}

pub fn orbit_decompose(x: &GSet) -> OrbitDecomposition {
    let group = x.group();
    let mut orbit_of = vec![usize::MAX; x.size()];
    let mut orbits = Vec::new();
    let mut signature = vec![0; group.num_classes()];
    for start in 0..x.size() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let points = x.orbit(start);
        for &p in &points {
            orbit_of[p] = id;
        }
        let s = x.stabilizer(start);
        let class = group.class_of(s);
        let rep = group.rep_index(class);
        // Stab(g·x) = g Stab(x) g⁻¹, and the conjugator satisfies c⁻¹ R c = Stab(x)
        let c = group.catalog.conjugator[s];
        let base = x.act(c, start);
        let cosets = group.cosets(rep);
        let mut inverse = vec![usize::MAX; cosets.reps.len()];
        let mut iso = Vec::with_capacity(points.len());
        for g in 0..group.order() {
            let y = x.act(g, base);
            let ci = cosets.index[g];
            inverse[ci] = y;
        }
        for &p in &points {
            let ci = inverse.iter().position(|&q| q == p).unwrap();
            iso.push((p, ci));
        }
        signature[class] += 1;
        orbits.push(Orbit {
            points,
            base,
            class,
            stabilizer: rep,
            iso,
            inverse,
        });
    }
    OrbitDecomposition {
        orbits,
        orbit_of,
        signature,
    }
}

/// Every equivariant map `X → Y`, in lexicographic order of base-point images.
pub fn enumerate_gmaps(x: &GSet, y: &GSet, max_maps: usize) -> Result<Vec<GMap>> {
    if !same_group(x.group(), y.group()) {
        return Err(Error::Mismatch("G-sets over different groups".into()));
    }
    let dx = orbit_decompose(x);
    let group = x.group();
    // the base point of an orbit with stabilizer R may go to any y with R ≤ Stab(y)
    let candidates: Vec<Vec<usize>> = dx
        .orbits
        .iter()
        .map(|o| {
            let rmask = group.subgroup(o.stabilizer).mask;
            (0..y.size())
                .filter(|&p| {
                    let smask = group.subgroup(y.stabilizer(p)).mask;
                    rmask & !smask == 0
                })
                .collect()
        })
        .collect();
    let total = candidates
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if total > max_maps as u128 {
        return Err(cap("equivariant maps", total, max_maps as u128));
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut choice = vec![0usize; candidates.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    loop {
        let mut images = vec![0usize; x.size()];
        for (i, o) in dx.orbits.iter().enumerate() {
            let target = candidates[i][choice[i]];
            for g in 0..group.order() {
                images[x.act(g, o.base)] = y.act(g, target);
            }
        }
        out.push(GMap::raw(x.clone(), y.clone(), images));
        // odometer with the first orbit most significant
        let mut i = candidates.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// `X ⊔ Y` with its two inclusions; points of `X` come first.
pub fn coproduct(x: &GSet, y: &GSet) -> Result<(GSet, GMap, GMap)> {
    if !same_group(x.group(), y.group()) {
        return Err(Error::Mismatch("G-sets over different groups".into()));
    }
    let nx = x.size();
    let s = GSet::from_fn(x.group(), nx + y.size(), |g, p| {
        if p < nx {
            x.act(g, p)
        } else {
            nx + y.act(g, p - nx)
        }
    });
    let inl = GMap::raw(x.clone(), s.clone(), (0..nx).collect());
    let inr = GMap::raw(y.clone(), s.clone(), (nx..nx + y.size()).collect());
    Ok((s, inl, inr))
}

/// Coproduct of several G-sets with their inclusions.
pub fn coproduct_many(group: &Arc<Group>, parts: &[GSet]) -> (GSet, Vec<GMap>) {
    let mut offsets = Vec::with_capacity(parts.len());
    let mut total = 0;
    for p in parts {
        offsets.push(total);
        total += p.size();
    }
    let mut owner = Vec::with_capacity(total);
    for (i, p) in parts.iter().enumerate() {
        owner.extend(std::iter::repeat_n(i, p.size()));
    }
    let s = GSet::from_fn(group, total, |g, q| {
        let i = owner[q];
        offsets[i] + parts[i].act(g, q - offsets[i])
    });
    let incl = parts
        .iter()
        .zip(&offsets)
        .map(|(p, &o)| GMap::raw(p.clone(), s.clone(), (o..o + p.size()).collect()))
        .collect();
    (s, incl)
}

/// `X × Y` with projections; the pair `(x, y)` is point `x·|Y| + y`.
pub fn product(x: &GSet, y: &GSet) -> Result<(GSet, GMap, GMap)> {
    if !same_group(x.group(), y.group()) {
        return Err(Error::Mismatch("G-sets over different groups".into()));
    }
    let ny = y.size();
    let s = GSet::from_fn(x.group(), x.size() * ny, |g, p| x.act(g, p / ny) * ny + y.act(g, p % ny));
    let p1 = GMap::raw(s.clone(), x.clone(), (0..s.size()).map(|p| p / ny).collect());
    let p2 = GMap::raw(s.clone(), y.clone(), (0..s.size()).map(|p| p % ny).collect());
    Ok((s, p1, p2))
}

/// The fibre product of `f: X → Z` and `g: Y → Z`, pairs in lexicographic order.
pub fn pullback(f: &GMap, g: &GMap) -> Result<(GSet, GMap, GMap)> {
    if f.dst != g.dst {
        return Err(Error::Mismatch("pullback needs maps with a common codomain".into()));
    }
    let ny = g.src.size();
    let mut pairs = Vec::new();
    let mut index = vec![u32::MAX; f.src.size() * ny];
    for x in 0..f.src.size() {
        for y in 0..ny {
            if f.images[x] == g.images[y] {
                index[x * ny + y] = pairs.len() as u32;
                pairs.push((x, y));
            }
        }
    }
    let s = GSet::from_fn(f.src.group(), pairs.len(), |h, p| {
        let (x, y) = pairs[p];
        index[f.src.act(h, x) * ny + g.src.act(h, y)] as usize
    });
    let p1 = GMap::raw(s.clone(), f.src.clone(), pairs.iter().map(|&(x, _)| x).collect());
    let p2 = GMap::raw(s.clone(), g.src.clone(), pairs.iter().map(|&(_, y)| y).collect());
    Ok((s, p1, p2))
}

/// Π_f(A) for `f: X → Y`, `p: A → X`, with sections stored implicitly by index.
#[derive(Debug, Clone)]
pub struct DependentProduct {
    pub pi: GSet,
    pub proj: GMap,
    /// Sorted fibre `f⁻¹(y)` for each `y`.
    pub fibers: Vec<Vec<usize>>,
    /// Sorted fibre `p⁻¹(x)` for each `x`.
    pub a_fibers: Vec<Vec<usize>>,
    /// First section index belonging to each `y` (plus a final sentinel).
    pub offsets: Vec<usize>,
}

impl DependentProduct {
    /// `(y, σ)` for a point, where `σ[i]` is the image of the `i`-th point of `f⁻¹(y)`.
    pub fn section(&self, idx: usize) -> (usize, Vec<usize>) {
        let y = self.offsets.partition_point(|&o| o <= idx) - 1;
        let mut rest = idx - self.offsets[y];
        let fib = &self.fibers[y];
        let mut digits = vec![0; fib.len()];
        for i in (0..fib.len()).rev() {
            let r = self.a_fibers[fib[i]].len();
            digits[i] = rest % r;
            rest /= r;
        }
        let sigma = fib
            .iter()
            .zip(digits)
            .map(|(&x, d)| self.a_fibers[x][d])
            .collect();
        (y, sigma)
    }

    /// Index of the section `σ` over `y`.
    pub fn index_of(&self, y: usize, sigma: &[usize], a_pos: &[usize]) -> usize {
        let fib = &self.fibers[y];
        let mut idx = 0;
        for (i, &x) in fib.iter().enumerate() {
            idx = idx * self.a_fibers[x].len() + a_pos[sigma[i]];
        }
        self.offsets[y] + idx
    }
}

fn fibers_of(m: &GMap) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); m.dst.size()];
    for (x, &y) in m.images.iter().enumerate() {
        out[y].push(x);
    }
    out
}

pub fn dependent_product(f: &GMap, p: &GMap, point_cap: usize) -> Result<DependentProduct> {
    if p.dst != f.src {
        return Err(Error::Mismatch("Π_f(A) needs p: A → X and f: X → Y".into()));
    }
    let fibers = fibers_of(f);
    let a_fibers = fibers_of(p);
    let mut offsets = Vec::with_capacity(fibers.len() + 1);
    let mut total: u128 = 0;
    for fib in &fibers {
        offsets.push(total as usize);
        let count = fib
            .iter()
            .fold(1u128, |acc, &x| acc.saturating_mul(a_fibers[x].len() as u128));
        total = total.saturating_add(count);
        if total > point_cap as u128 {
            return Err(cap("points of Π_f(A)", total, point_cap as u128));
        }
    }
    offsets.push(total as usize);
    let mut a_pos = vec![0usize; p.src.size()];
    for fib in &a_fibers {
        for (i, &a) in fib.iter().enumerate() {
            a_pos[a] = i;
        }
    }
    let x_pos: Vec<usize> = {
        let mut v = vec![0; f.src.size()];
        for fib in &fibers {
            for (i, &x) in fib.iter().enumerate() {
                v[x] = i;
            }
        }
        v
    };
    let group = f.src.group().clone();
    let n = group.order();
    let size = total as usize;
    let mut dp = DependentProduct {
        pi: GSet::empty(group.clone()),
        proj: GMap::identity(&GSet::empty(group.clone())),
        fibers,
        a_fibers,
        offsets,
    };
    let mut action = vec![0u32; n * size];
    let mut proj = vec![0usize; size];
    let mut moved = Vec::new();
    for idx in 0..size {
        let (y, sigma) = dp.section(idx);
        proj[idx] = y;
        action[idx] = idx as u32;
        for g in 1..n {
            // (g·σ)(x') = g·σ(g⁻¹x'), written here as (g·σ)(g·x) = g·σ(x)
            let gy = f.dst.act(g, y);
            moved.clear();
            moved.resize(sigma.len(), 0);
            for (i, &x) in dp.fibers[y].iter().enumerate() {
                moved[x_pos[f.src.act(g, x)]] = p.src.act(g, sigma[i]);
            }
            action[g * size + idx] = dp.index_of(gy, &moved, &a_pos) as u32;
        }
    }
    let pi = GSet::from_raw(group, size, action).with_label("Π_f(A)");
    dp.proj = GMap::raw(pi.clone(), f.dst.clone(), proj);
    dp.pi = pi;
    Ok(dp)
}

/// The canonical exponential diagram built from Π_f(A).
#[derive(Debug, Clone)]
pub struct ExponentialDiagram {
    pub p: GMap,
    pub f: GMap,
    /// `λ: Z → A`, evaluation of the section.
    pub lambda: GMap,
    /// `ρ: Z → Π`, the second projection.
    pub rho: GMap,
    /// `π: Π → Y`.
    pub pi: GMap,
    /// `q: Z → X`, the first projection (so `p∘λ = q`).
    pub q: GMap,
}

impl ExponentialDiagram {
    pub fn z(&self) -> &GSet {
        &self.lambda.src
    }

    /// `f∘p∘λ = π∘ρ` and `p∘λ = q`, pointwise.
    pub fn commutes(&self) -> bool {
        (0..self.z().size()).all(|z| {
            let a = self.lambda.images[z];
            let x = self.p.images[a];
            x == self.q.images[z] && self.f.images[x] == self.pi.images[self.rho.images[z]]
        })
    }
}

pub fn exponential_diagram(f: &GMap, p: &GMap, point_cap: usize) -> Result<ExponentialDiagram> {
    let dp = dependent_product(f, p, point_cap)?;
    let (z, q, rho) = pullback(f, &dp.proj)?;
    if z.size() > point_cap {
        return Err(cap("points of X ×_Y Π", z.size() as u128, point_cap as u128));
    }
    let lambda_images: Vec<usize> = (0..z.size())
        .map(|k| {
            let x = q.images[k];
            let (y, sigma) = dp.section(rho.images[k]);
            let i = dp.fibers[y].binary_search(&x).unwrap();
            sigma[i]
        })
        .collect();
    let lambda = GMap::raw(z, p.src.clone(), lambda_images);
    Ok(ExponentialDiagram {
        p: p.clone(),
        f: f.clone(),
        lambda,
        rho,
        pi: dp.proj,
        q,
    })
}

/// The diagram of the folding map: `U`, `U′`, `V` with `r, r′, t, t′, s`.
#[derive(Debug, Clone)]
pub struct FoldingExponential {
    pub u: GSet,
    pub u_prime: GSet,
    pub v: GSet,
    pub r: GMap,
    pub r_prime: GMap,
    pub t: GMap,
    pub t_prime: GMap,
    pub s: GMap,
}

pub fn folding_exponential(f: &GMap, point_cap: usize) -> Result<FoldingExponential> {
    let fibers = fibers_of(f);
    let mut total: u128 = 0;
    for fib in &fibers {
        if fib.len() >= 64 {
            return Err(cap("subsets of a fibre", u128::MAX, point_cap as u128));
        }
        total = total.saturating_add(1u128 << fib.len());
        if total > point_cap as u128 {
            return Err(cap("points of V", total, point_cap as u128));
        }
    }
    let mut x_pos = vec![0usize; f.src.size()];
    for fib in &fibers {
        for (i, &x) in fib.iter().enumerate() {
            x_pos[x] = i;
        }
    }
    let mut v_offset = Vec::with_capacity(fibers.len());
    let mut acc = 0usize;
    for fib in &fibers {
        v_offset.push(acc);
        acc += 1usize << fib.len();
    }
    let v_points: Vec<(usize, u64)> = fibers
        .iter()
        .enumerate()
        .flat_map(|(y, fib)| (0..1u64 << fib.len()).map(move |c| (y, c)))
        .collect();
    let group = f.src.group().clone();
    // translate a subset of f⁻¹(y) into a subset of f⁻¹(g·y)
    let move_set = |g: usize, y: usize, c: u64| -> u64 {
        crate::group::bits(c).fold(0u64, |m, i| m | 1u64 << x_pos[f.src.act(g, fibers[y][i])])
    };
    let v = GSet::from_fn(&group, v_points.len(), |g, k| {
        let (y, c) = v_points[k];
        let gy = f.dst.act(g, y);
        v_offset[gy] + move_set(g, y, c) as usize
    })
    .with_label("V");
    let s = GMap::raw(v.clone(), f.dst.clone(), v_points.iter().map(|&(y, _)| y).collect());

    let build_u = |member: bool| -> (GSet, GMap, GMap) {
        let mut pts: Vec<(usize, u64)> = Vec::new();
        let mut index = std::collections::HashMap::new();
        for x in 0..f.src.size() {
            let fib = &fibers[f.images[x]];
            for c in 0..1u64 << fib.len() {
                if (c >> x_pos[x] & 1 == 1) == member {
                    index.insert((x, c), pts.len());
                    pts.push((x, c));
                }
            }
        }
        let u = GSet::from_fn(&group, pts.len(), |g, k| {
            let (x, c) = pts[k];
            index[&(f.src.act(g, x), move_set(g, f.images[x], c))]
        });
        let r = GMap::raw(u.clone(), f.src.clone(), pts.iter().map(|&(x, _)| x).collect());
        let t = GMap::raw(
            u.clone(),
            v.clone(),
            pts.iter().map(|&(x, c)| v_offset[f.images[x]] + c as usize).collect(),
        );
        (u, r, t)
    };
    let (u, r, t) = build_u(true);
    let (u_prime, r_prime, t_prime) = build_u(false);
    Ok(FoldingExponential {
        u: u.with_label("U"),
        u_prime: u_prime.with_label("U′"),
        v,
        r,
        r_prime,
        t,
        t_prime,
        s,
    })
}

/// An equivariant bijection `X → Y`, if the orbit signatures agree.
pub fn isomorphism(x: &GSet, y: &GSet) -> Option<GMap> {
    if !same_group(x.group(), y.group()) || x.size() != y.size() {
        return None;
    }
    let dx = orbit_decompose(x);
    let dy = orbit_decompose(y);
    if dx.signature != dy.signature {
        return None;
    }
    let mut used = vec![false; dy.orbits.len()];
    let mut images = vec![0usize; x.size()];
    for o in &dx.orbits {
        let j = (0..dy.orbits.len())
            .find(|&j| !used[j] && dy.orbits[j].class == o.class)
            .unwrap();
        used[j] = true;
        let target = &dy.orbits[j];
        for &(p, c) in &o.iso {
            images[p] = target.inverse[c];
        }
    }
    GMap::new(x.clone(), y.clone(), images).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    fn grp(name: &str) -> Arc<Group> {
        Arc::new(builtin(name).unwrap())
    }

    fn top(g: &Group) -> usize {
        g.catalog.all_subgroups.len() - 1
    }

    #[test]
    fn coset_spaces() {
        let s3 = grp("s3");
        assert_eq!(GSet::coset_space(&s3, top(&s3)).size(), 1);
        let x = GSet::coset_space(&s3, s3.rep_index(1));
        assert_eq!(x.size(), 3);
        x.validate().unwrap();
        let d = orbit_decompose(&x);
        assert_eq!(d.orbits.len(), 1);
        assert_eq!(d.orbits[0].class, 1);
        let c2 = grp("c2");
        let free = GSet::coset_space(&c2, 0);
        assert_eq!(free.rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn natural_s3_action_matches_cosets_of_c2() {
        let s3 = grp("s3");
        let perm = s3.table.perm_rep().unwrap().clone();
        let rows: Vec<Vec<usize>> = perm.images.clone();
        let natural = GSet::new(s3.clone(), &rows).unwrap();
        let cosets = GSet::coset_space(&s3, s3.rep_index(1));
        assert!(isomorphism(&natural, &cosets).is_some());
    }

    #[test]
    fn signatures() {
        let c2 = grp("c2");
        assert!(orbit_decompose(&GSet::empty(c2.clone())).orbits.is_empty());
        let x = GSet::new(c2.clone(), &[vec![0, 1, 2, 3], vec![0, 1, 3, 2]]).unwrap();
        assert_eq!(orbit_decompose(&x).signature, vec![1, 2]);
    }

    #[test]
    fn rejects_bad_actions() {
        let c2 = grp("c2");
        assert!(GSet::new(c2.clone(), &[vec![1, 0], vec![1, 0]]).is_err());
        assert!(GSet::new(c2.clone(), &[vec![0, 1], vec![0, 2]]).is_err());
        let c3 = grp("c3");
        assert!(GSet::new(c3, &[vec![0, 1], vec![1, 0], vec![1, 0]]).is_err());
    }

    #[test]
    fn gmap_counts() {
        let c2 = grp("c2");
        let free = GSet::coset_space(&c2, 0);
        let pt = GSet::point(c2.clone());
        assert_eq!(enumerate_gmaps(&free, &pt, 1000).unwrap().len(), 1);
        assert_eq!(enumerate_gmaps(&free, &free, 1000).unwrap().len(), 2);
        assert_eq!(enumerate_gmaps(&pt, &free, 1000).unwrap().len(), 0);
        assert!(enumerate_gmaps(&free, &free, 1).is_err());
    }

    #[test]
    fn limits() {
        let c2 = grp("c2");
        let free = GSet::coset_space(&c2, 0);
        let pt = GSet::point(c2.clone());
        let p = GMap::to_point(&free);
        let (pb, _, _) = pullback(&p, &p).unwrap();
        assert_eq!(pb.size(), 4);
        assert_eq!(orbit_decompose(&pb).signature, vec![2, 0]);
        let id = GMap::identity(&free);
        let (diag, a, _) = pullback(&id, &id).unwrap();
        assert!(isomorphism(&diag, &free).is_some());
        assert!(a.after(&GMap::identity(&diag)).is_ok());
        let (co, _, _) = coproduct(&free, &pt).unwrap();
        assert_eq!(co.size(), 3);
        assert_eq!(orbit_decompose(&co).signature, vec![1, 1]);
        let (pr, _, _) = product(&free, &free).unwrap();
        pr.validate().unwrap();
        assert!(pullback(&p, &id).is_err());
    }

    #[test]
    fn paper_norm_dependent_product() {
        let c2 = grp("c2");
        let free = GSet::coset_space(&c2, 0);
        let (two, inl, inr) = coproduct(&free, &free).unwrap();
        let fold = GMap::new(
            two.clone(),
            free.clone(),
            inl.images.iter().chain(&inr.images).map(|&i| i % 2).collect(),
        )
        .unwrap();
        let f = GMap::to_point(&free);
        let dp = dependent_product(&f, &fold, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(dp.pi.size(), 4);
        dp.pi.validate().unwrap();
        dp.proj.check_equivariant().unwrap();
        assert_eq!(orbit_decompose(&dp.pi).signature, vec![1, 2]);
        let ed = exponential_diagram(&f, &fold, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(ed.z().size(), 8);
        assert!(ed.commutes());
        ed.lambda.check_equivariant().unwrap();
        assert!(dependent_product(&f, &fold, 3).is_err());
    }

    #[test]
    fn degenerate_dependent_products() {
        let s3 = grp("s3");
        let x = GSet::coset_space(&s3, 0);
        let y = GSet::coset_space(&s3, s3.rep_index(1));
        let f = GMap::coset_map(&s3, 0, s3.rep_index(1), 0).unwrap();
        let id = GMap::identity(&x);
        let dp = dependent_product(&f, &id, DEFAULT_POINT_CAP).unwrap();
        assert!(isomorphism(&dp.pi, &y).is_some());
        let ed = exponential_diagram(&GMap::identity(&y), &f, 100).unwrap();
        assert!(ed.commutes());
        assert!(isomorphism(&ed.pi.src, &x).is_some());
        assert!(isomorphism(ed.z(), &x).is_some());
        // A empty over nonempty X: sections exist only over empty fibres
        let c2 = grp("c2");
        let free = GSet::coset_space(&c2, 0);
        let pt = GSet::point(c2.clone());
        let (x2, inl, _) = coproduct(&free, &pt).unwrap();
        let empty = GSet::empty(c2.clone());
        let p = GMap::new(empty.clone(), free.clone(), vec![]).unwrap();
        let dp = dependent_product(&inl, &p, 100).unwrap();
        assert_eq!(dp.pi.size(), 1);
        assert_eq!(dp.proj.images, vec![2]);
        assert_eq!(x2.size(), 3);
    }

    #[test]
    fn folding_counts() {
        let c2 = grp("c2");
        let free = GSet::coset_space(&c2, 0);
        let fe = folding_exponential(&GMap::to_point(&free), 100).unwrap();
        assert_eq!(fe.v.size(), 4);
        assert_eq!(orbit_decompose(&fe.v).signature, vec![1, 2]);
        assert_eq!(fe.u.size(), 4);
        assert_eq!(orbit_decompose(&fe.u).signature, vec![2, 0]);
        for m in [&fe.r, &fe.r_prime, &fe.t, &fe.t_prime, &fe.s] {
            m.check_equivariant().unwrap();
            m.src.validate().unwrap();
        }
        let triv = Arc::new(builtin("c1").unwrap());
        let three = GSet::new(triv.clone(), &[vec![0, 1, 2]]).unwrap();
        assert_eq!(folding_exponential(&GMap::to_point(&three), 100).unwrap().v.size(), 8);
        let inj = GMap::identity(&free);
        assert_eq!(folding_exponential(&inj, 100).unwrap().v.size(), 4);
    }
}
