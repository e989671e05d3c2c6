//! The Burnside Tambara functor Ω.
//!
//! `Ω(G/H)` is the Grothendieck ring of G-sets over `G/H`, free on the maps
//! `G/M → G/H` for `M` running over H-conjugacy representatives of subgroups of
//! `H`. Products, restrictions and transfers are computed by pullback and
//! composition of explicit G-sets. The norm of a genuine G-set is computed by
//! enumerating the dependent product; on the rest of the lattice it is the
//! unique polynomial extension, recovered by Newton interpolation from genuine
//! values and memoised per elementary map.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{Group, LocalClasses};
use crate::gset::{coproduct_many, dependent_product, pullback, GMap, GSet, DEFAULT_POINT_CAP};
use crate::lattice::{combine, Lattice};
use crate::ring::{Elem, LatticeRing, LevelRing};
use crate::sample::random_elem;
use crate::tambara::{elementary_maps, Tambara, TransMap};

/// A polynomial map `ℤ^r → ℤ^s` in the binomial basis: `Σ_k c_k ∏ C(x_i, k_i)`.
#[derive(Clone, Debug)]
pub struct NormPoly {
    pub vars: usize,
    pub terms: Vec<(Vec<u32>, Vec<i64>)>,
}

fn binom(x: i64, k: u32) -> i128 {
    let mut c: i128 = 1;
    for i in 0..k as i128 {
        c = c * (x as i128 - i) / (i + 1);
    }
    c
}

impl NormPoly {
    pub fn eval(&self, x: &[i64], width: usize) -> Result<Vec<i64>> {
        let mut out = vec![0i128; width];
        for (k, c) in &self.terms {
            let w: i128 = k.iter().zip(x).map(|(&ki, &xi)| binom(xi, ki)).product();
            for (o, ci) in out.iter_mut().zip(c) {
                *o += w * *ci as i128;
            }
        }
        out.into_iter()
            .map(|v| i64::try_from(v).map_err(|_| Error::Unsupported("norm value exceeds 64-bit range".into())))
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(k, _)| k.iter().sum()).max().unwrap_or(0)
    }
}

/// All `k ∈ ℕ^r` with `|k| ≤ d`, in lexicographic order.
fn simplex(r: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(r: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == r {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=d {
            prefix.push(v);
            go(r, d - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(r, d, &mut Vec::new(), &mut out);
    out
}

pub struct OmegaFunctor {
    group: Arc<Group>,
    local: Vec<LocalClasses>,
    spaces: Vec<GSet>,
    levels: Vec<LevelRing>,
    basis: Vec<Vec<GMap>>,
    point_cap: usize,
    res_cache: Mutex<HashMap<TransMap, Arc<Vec<Vec<i64>>>>>,
    tr_cache: Mutex<HashMap<TransMap, Arc<Vec<Vec<i64>>>>>,
    nm_cache: Mutex<HashMap<TransMap, Arc<NormPoly>>>,
}

impl OmegaFunctor {
    pub fn new(group: Arc<Group>) -> Result<Self> {
        Self::with_point_cap(group, DEFAULT_POINT_CAP)
    }

    pub fn with_point_cap(group: Arc<Group>, point_cap: usize) -> Result<Self> {
        let mut local = Vec::new();
        let mut spaces = Vec::new();
        let mut basis = Vec::new();
        for class in 0..group.num_classes() {
            let h = group.rep_index(class);
            let lc = group.local_classes(h);
            let maps: Vec<GMap> = lc
                .reps
                .iter()
                .map(|&m| GMap::coset_map(&group, m, h, 0))
                .collect::<Result<_>>()?;
            spaces.push(GSet::coset_space(&group, h));
            local.push(lc);
            basis.push(maps);
        }
        let mut me = OmegaFunctor {
            group,
            local,
            spaces,
            levels: Vec::new(),
            basis,
            point_cap,
            res_cache: Mutex::new(HashMap::new()),
            tr_cache: Mutex::new(HashMap::new()),
            nm_cache: Mutex::new(HashMap::new()),
        };
        for class in 0..me.group.num_classes() {
            let ring = me.build_level(class)?;
            me.levels.push(LevelRing::lattice(ring));
        }
        Ok(me)
    }

    fn build_level(&self, class: usize) -> Result<LatticeRing> {
        let n = self.basis[class].len();
        let mut structure = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let (_, p1, _) = pullback(&self.basis[class][i], &self.basis[class][j])?;
                let v = self.decompose_over(class, &self.basis[class][i].after(&p1)?);
                structure[i][j] = v.clone();
                structure[j][i] = v;
            }
        }
        let mut one = vec![0; n];
        one[n - 1] = 1;
        let names = self.local[class]
            .reps
            .iter()
            .map(|&m| format!("[G/{}]", self.group.subgroup_name(m)))
            .collect();
        LatticeRing::new(structure, one, Lattice::zero(n), names)
    }

    /// Subgroups `M ≤ H` indexing the basis of `Ω(G/H)`, as catalog indices.
    pub fn basis_subgroups(&self, class: usize) -> &[usize] {
        &self.local[class].reps
    }

    /// The basis element `G/M → G/H` as a G-map.
    pub fn basis_map(&self, class: usize, i: usize) -> &GMap {
        &self.basis[class][i]
    }

    pub fn space(&self, class: usize) -> &GSet {
        &self.spaces[class]
    }

    /// Coordinates of a G-set `q: A → G/H` in `Ω(G/H)`.
    pub fn decompose_over(&self, class: usize, q: &GMap) -> Vec<i64> {
        let lc = &self.local[class];
        let a = &q.src;
        let mut out = vec![0i64; lc.len()];
        let mut seen = vec![false; a.size()];
        let h = self.group.subgroup(self.group.rep_index(class));
        for x in 0..a.size() {
            if q.images[x] != 0 || seen[x] {
                continue;
            }
            // the H-orbit of x inside the fibre over eH
            for &g in &h.elements {
                seen[a.act(g, x)] = true;
            }
            out[lc.class_of[&a.stabilizer(x)]] += 1;
        }
        out
    }

    /// Realise a non-negative element as an explicit G-set over `G/H`.
    pub fn realize(&self, class: usize, x: &[i64]) -> Result<GMap> {
        let mut parts = Vec::new();
        let mut owners = Vec::new();
        for (i, &m) in x.iter().enumerate() {
            if m < 0 {
                return Err(Error::Invalid("only non-negative elements are G-sets".into()));
            }
            for _ in 0..m {
                parts.push(self.basis[class][i].src.clone());
                owners.push(i);
            }
        }
        let total: usize = parts.iter().map(|p| p.size()).sum();
        if total > self.point_cap {
            return Err(crate::error::cap("points of a realised element", total as u128, self.point_cap as u128));
        }
        let (a, incl) = coproduct_many(&self.group, &parts);
        let mut images = vec![0; a.size()];
        for (inc, &i) in incl.iter().zip(&owners) {
            for (p, &img) in inc.images.iter().enumerate() {
                images[img] = self.basis[class][i].images[p];
            }
        }
        GMap::new(a, self.spaces[class].clone(), images)
    }

    fn res_matrix(&self, m: &TransMap) -> Arc<Vec<Vec<i64>>> {
        if let Some(r) = self.res_cache.lock().unwrap().get(m) {
            return r.clone();
        }
        let f = m.to_gmap(&self.group);
        let rows: Vec<Vec<i64>> = self.basis[m.dst]
            .iter()
            .map(|q| {
                let (_, p1, _) = pullback(&f, q).expect("common codomain");
                self.decompose_over(m.src, &p1)
            })
            .collect();
        let rows = Arc::new(rows);
        self.res_cache.lock().unwrap().insert(*m, rows.clone());
        rows
    }

    fn tr_matrix(&self, m: &TransMap) -> Arc<Vec<Vec<i64>>> {
        if let Some(r) = self.tr_cache.lock().unwrap().get(m) {
            return r.clone();
        }
        let f = m.to_gmap(&self.group);
        let rows: Vec<Vec<i64>> = self.basis[m.src]
            .iter()
            .map(|q| self.decompose_over(m.dst, &f.after(q).expect("composable")))
            .collect();
        let rows = Arc::new(rows);
        self.tr_cache.lock().unwrap().insert(*m, rows.clone());
        rows
    }

    /// The norm of a genuine G-set `x ≥ 0`, by explicit enumeration of `Π_f`.
    pub fn norm_by_enumeration(&self, m: &TransMap, x: &[i64]) -> Result<Vec<i64>> {
        let f = m.to_gmap(&self.group);
        let q = self.realize(m.src, x)?;
        let dp = dependent_product(&f, &q, self.point_cap)?;
        Ok(self.decompose_over(m.dst, &dp.proj))
    }

    /// The memoised norm polynomial along `m`.
    pub fn norm_poly(&self, m: &TransMap) -> Result<Arc<NormPoly>> {
        if let Some(p) = self.nm_cache.lock().unwrap().get(m) {
            return Ok(p.clone());
        }
        let r = self.basis[m.src].len();
        let width = self.basis[m.dst].len();
        let d = m.degree(&self.group) as u32;
        let grid = simplex(r, d);
        let mut values: HashMap<Vec<u32>, Vec<i64>> = HashMap::new();
        for k in &grid {
            let x: Vec<i64> = k.iter().map(|&v| v as i64).collect();
            values.insert(k.clone(), self.norm_by_enumeration(m, &x)?);
        }
        let mut terms = Vec::new();
        for k in &grid {
            // forward difference Δ^k F(0)
            let mut c = vec![0i128; width];
            for j in grid.iter().filter(|j| j.iter().zip(k).all(|(a, b)| a <= b)) {
                let sign = if (k.iter().sum::<u32>() - j.iter().sum::<u32>()) % 2 == 0 { 1 } else { -1 };
                let w: i128 = k.iter().zip(j).map(|(&ki, &ji)| binom(ki as i64, ji)).product();
                for (ci, v) in c.iter_mut().zip(&values[j]) {
                    *ci += sign * w * *v as i128;
                }
            }
            if c.iter().any(|&v| v != 0) {
                terms.push((k.clone(), c.into_iter().map(|v| v as i64).collect()));
            }
        }
        let poly = Arc::new(NormPoly { vars: r, terms });
        self.nm_cache.lock().unwrap().insert(*m, poly.clone());
        Ok(poly)
    }

    /// Populate every cache up front.
    pub fn precompute(&self) -> Result<()> {
        for m in elementary_maps(&self.group) {
            self.res_matrix(&m);
            self.tr_matrix(&m);
            self.norm_poly(&m)?;
        }
        Ok(())
    }

    /// The coefficient of `[G/H]` itself.
    pub fn rho(&self, _class: usize, x: &Elem) -> i64 {
        *x.0.last().expect("levels are non-empty")
    }

    /// Fixed-point counts `|A^L|` for `L` in the basis order of `Ω(G/H)`.
    pub fn marks(&self, class: usize, x: &Elem) -> Vec<i64> {
        let reps = &self.local[class].reps;
        let h = self.group.subgroup(self.group.rep_index(class));
        reps.iter()
            .map(|&l| {
                let lmask = self.group.subgroup(l).mask;
                reps.iter()
                    .zip(&x.0)
                    .map(|(&msub, &coef)| {
                        let mmask = self.group.subgroup(msub).mask;
                        let mut seen = 0u64;
                        let mut count = 0i64;
                        for &hh in &h.elements {
                            let coset = left_coset(&self.group, hh, mmask);
                            if seen & coset != 0 {
                                continue;
                            }
                            seen |= coset;
                            let conj = self.group.table.conjugate_mask(mmask, self.group.inv(hh));
                            if lmask & !conj == 0 {
                                count += 1;
                            }
                        }
                        coef * count
                    })
                    .sum()
            })
            .collect()
    }

    /// `|A|/[G:H]`: the size of the fibre over `eH`, i.e. the rank after restricting to `G/e`.
    pub fn cardinality(&self, class: usize, x: &Elem) -> i64 {
        let h = self.group.subgroup(self.group.rep_index(class)).order() as i64;
        self.local[class]
            .reps
            .iter()
            .zip(&x.0)
            .map(|(&m, &c)| c * (h / self.group.subgroup(m).order() as i64))
            .sum()
    }
}

fn left_coset(group: &Group, g: usize, mask: u64) -> u64 {
    crate::group::bits(mask).fold(0u64, |acc, m| acc | 1u64 << group.mul(g, m))
}

impl Tambara for OmegaFunctor {
    fn name(&self) -> String {
        format!("Ω({})", self.group.name)
    }
    fn group(&self) -> &Arc<Group> {
        &self.group
    }
    fn level(&self, class: usize) -> &LevelRing {
        &self.levels[class]
    }
    fn res(&self, m: &TransMap, x: &Elem) -> Elem {
        let rows = self.res_matrix(m);
        Elem(combine(&x.0, &rows, self.basis[m.src].len()))
    }
    fn tr(&self, m: &TransMap, x: &Elem) -> Elem {
        let rows = self.tr_matrix(m);
        Elem(combine(&x.0, &rows, self.basis[m.dst].len()))
    }
    fn nm(&self, m: &TransMap, x: &Elem) -> Result<Elem> {
        let poly = self.norm_poly(m)?;
        Ok(Elem(poly.eval(&x.0, self.basis[m.dst].len())?))
    }
}

/// Outcome of comparing `ρ_{G/G}((pt_X)_!(a))` with `ρ_X(a)`.
#[derive(Clone, Debug, Default)]
pub struct RhoNormReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RhoNormReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the ρ–norm identity on `samples` seeded random elements per transitive `G/H`.
pub fn check_rho_norm(omega: &OmegaFunctor, samples: usize, seed: u64) -> Result<RhoNormReport> {
    let g = omega.group().clone();
    let top = g.top_class();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RhoNormReport::default();
    for class in 0..g.num_classes() {
        let pt = TransMap::projection(&g, class, top)?;
        let ring = omega.level(class);
        let mut cases = vec![ring.one(), ring.zero()];
        while cases.len() < samples {
            cases.push(random_elem(ring, &mut rng));
        }
        for a in cases.iter().take(samples) {
            let lhs = omega.rho(top, &omega.shriek(&pt, a)?);
            let rhs = omega.rho(class, a);
            report.checked += 1;
            if lhs != rhs {
                report.failures.push(format!(
                    "X = G/{}, a = {}: ρ(pt_!(a)) = {lhs}, ρ(a) = {rhs}",
                    g.class_name(class),
                    ring.format(a)
                ));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    fn omega(name: &str) -> OmegaFunctor {
        OmegaFunctor::new(Arc::new(builtin(name).unwrap())).unwrap()
    }

    #[test]
    fn c2_level_structure() {
        let o = omega("c2");
        let top = o.level(1);
        assert_eq!(top.format(&Elem(vec![1, 2])), "2*[G/G] + 1*[G/e]");
        // [G/e]·[G/e] = 2[G/e]
        assert_eq!(top.mul(&Elem(vec![1, 0]), &Elem(vec![1, 0])), Elem(vec![2, 0]));
        let p = TransMap::projection(o.group(), 0, 1).unwrap();
        assert_eq!(o.res(&p, &Elem(vec![3, 5])), Elem(vec![5 + 6]));
        assert_eq!(o.tr(&p, &Elem(vec![4])), Elem(vec![4, 0]));
    }

    #[test]
    fn c2_norm_formula() {
        let o = omega("c2");
        let p = TransMap::projection(o.group(), 0, 1).unwrap();
        for m in -6i64..=6 {
            let n = o.nm(&p, &Elem(vec![m])).unwrap();
            assert_eq!(n, Elem(vec![(m * m - m) / 2, m]), "m = {m}");
        }
        assert_eq!(o.norm_by_enumeration(&p, &[2]).unwrap(), vec![1, 2]);
    }

    #[test]
    fn interpolated_norms_match_enumeration() {
        let o = omega("s3");
        let g = o.group().clone();
        for m in elementary_maps(&g) {
            let r = o.basis[m.src].len();
            for k in simplex(r, 2) {
                let x: Vec<i64> = k.iter().map(|&v| v as i64).collect();
                let direct = o.norm_by_enumeration(&m, &x).unwrap();
                assert_eq!(o.nm(&m, &Elem(x)).unwrap().0, direct);
            }
        }
    }

    #[test]
    fn s3_marks() {
        let o = omega("s3");
        let top = o.group().top_class();
        let c2 = o.basis_subgroups(top).iter().position(|&s| o.group().subgroup(s).order() == 2).unwrap();
        let mut x = vec![0; 4];
        x[c2] = 1;
        assert_eq!(o.marks(top, &Elem(x)), vec![3, 1, 0, 0]);
        assert_eq!(o.marks(top, &o.level(top).one()), vec![1, 1, 1, 1]);
    }

    #[test]
    fn rho_identity_small() {
        let o = omega("c2");
        let r = check_rho_norm(&o, 30, 7).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }
}
