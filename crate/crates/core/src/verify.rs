//! Exhaustive or seeded checks of the Tambara functor identities.
//!
//! Every identity is tested on explicit G-maps: all elementary maps between
//! transitive sets, non-surjective maps `G/K → G/H ⊔ G/L`, all pullback
//! squares of these against elementary maps, canonical exponential diagrams
//! within a point bound, and the folding diagrams of the addition formula.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gset::{exponential_diagram, folding_exponential, pullback, GMap, GSet, OrbitDecomposition};
use crate::ring::Elem;
use crate::sample::{pairs, random_elem, sample_level, triples, DEFAULT_SEED, EXHAUSTIVE_LIMIT, SAMPLE_COUNT};
use crate::tambara::{
    add_values, elementary_maps, mul_values, ones, zeros, Functor, LevelMap, MapPlan, ProductFunctor, Tambara,
    TambaraMorphism, TransMap, Values,
};

#[derive(Clone, Debug)]
pub struct VerifyBounds {
    /// Largest exponential or folding diagram that is built.
    pub max_points: usize,
    pub seed: u64,
}

impl Default for VerifyBounds {
    fn default() -> Self {
        VerifyBounds {
            max_points: 10_000,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityResult {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub exhaustive: bool,
    /// Reported but not required of a Tambara functor.
    pub informational: bool,
    /// Diagrams not built because they exceed the point bound.
    pub skipped: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub functor: String,
    pub results: Vec<IdentityResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed || r.informational)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = format!("axioms for {}\n", self.functor);
        for r in &self.results {
            let verdict = match (r.passed, r.informational) {
                (true, false) => "PASS",
                (false, false) => "FAIL",
                (true, true) => "info: holds",
                (false, true) => "info: fails",
            };
            let mode = if r.exhaustive { "exhaustive" } else { "sampled" };
            out.push_str(&format!("{verdict} {} ({} checks, {mode}", r.name, r.checks));
            if r.skipped > 0 {
                out.push_str(&format!(", {} diagrams over the point bound", r.skipped));
            }
            out.push_str(")\n");
            if let Some(w) = &r.witness {
                out.push_str(&format!("  witness: {w}\n"));
            }
        }
        out
    }
}

const IDENTITIES: &[(&str, bool)] = &[
    ("ring axioms", false),
    ("res ring hom", false),
    ("tr additive", false),
    ("nm multiplicative", false),
    ("functoriality", false),
    ("mackey additive", false),
    ("mackey multiplicative", false),
    ("distributive law", false),
    ("norm of zero", false),
    ("projection formula", false),
    ("addition formula", false),
    ("shriek multiplicative", false),
    ("shriek surjective", false),
    ("shriek pullback", false),
    ("shriek exponential", false),
    ("shriek natural", false),
    ("additively cohomological", true),
];

struct Recorder {
    results: BTreeMap<&'static str, IdentityResult>,
}

impl Recorder {
    fn new() -> Self {
        let results = IDENTITIES
            .iter()
            .map(|&(name, info)| {
                (
                    name,
                    IdentityResult {
                        name: name.to_string(),
                        passed: true,
                        checks: 0,
                        exhaustive: true,
                        informational: info,
                        skipped: 0,
                        witness: None,
                    },
                )
            })
            .collect();
        Recorder { results }
    }

    fn check(&mut self, name: &'static str, ok: bool, witness: impl FnOnce() -> String) {
        let r = self.results.get_mut(name).expect("known identity");
        r.checks += 1;
        if !ok {
            if r.passed {
                r.witness = Some(witness());
            }
            r.passed = false;
        }
    }

    fn check_result(&mut self, name: &'static str, res: Result<bool>, witness: impl FnOnce() -> String) {
        match res {
            Ok(ok) => self.check(name, ok, witness),
            Err(e) => self.check(name, false, || format!("{}: {e}", witness())),
        }
    }

    fn sampled(&mut self, name: &'static str, exhaustive: bool) {
        self.results.get_mut(name).unwrap().exhaustive &= exhaustive;
    }

    fn skip(&mut self, name: &'static str) {
        self.results.get_mut(name).unwrap().skipped += 1;
    }
}

/// A G-map with its orbit plan.
struct TestMap {
    label: String,
    f: GMap,
    plan: MapPlan,
}

impl TestMap {
    fn new(label: String, f: GMap) -> Self {
        let plan = MapPlan::new(&f);
        TestMap { label, f, plan }
    }
}

fn fmt_values(t: &dyn Tambara, d: &OrbitDecomposition, v: &[Elem]) -> String {
    let parts: Vec<String> = d
        .orbits
        .iter()
        .zip(v)
        .map(|(o, x)| t.level(o.class).format(x))
        .collect();
    format!("({})", parts.join("; "))
}

/// Tuples of values on a decomposed G-set: all of them when small, else seeded.
fn value_samples(t: &dyn Tambara, d: &OrbitDecomposition, seed: u64) -> (Vec<Values>, bool) {
    let per: Vec<(Vec<Elem>, bool)> = d.orbits.iter().map(|o| sample_level(t.level(o.class), seed)).collect();
    let all_exhaustive = per.iter().all(|(_, e)| *e);
    let count = per.iter().fold(1u128, |a, (xs, _)| a.saturating_mul(xs.len() as u128));
    if all_exhaustive && count <= EXHAUSTIVE_LIMIT as u128 {
        let mut out: Vec<Values> = vec![Vec::new()];
        for (xs, _) in &per {
            out = out
                .into_iter()
                .flat_map(|v| {
                    xs.iter().map(move |x| {
                        let mut w = v.clone();
                        w.push(x.clone());
                        w
                    })
                })
                .collect();
        }
        return (out, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9);
    let mut out = vec![zeros(t, d), ones(t, d)];
    while out.len() < SAMPLE_COUNT {
        out.push(d.orbits.iter().map(|o| random_elem(t.level(o.class), &mut rng)).collect());
    }
    (out, false)
}

fn value_pairs(xs: &[Values], exhaustive: bool) -> Vec<(&Values, &Values)> {
    if exhaustive {
        xs.iter().flat_map(|a| xs.iter().map(move |b| (a, b))).collect()
    } else {
        let n = xs.len();
        (0..n).map(|i| (&xs[i], &xs[(i * 7 + 3) % n])).collect()
    }
}

/// `G/K → G/H ⊔ G/L`: an elementary map followed by the first inclusion.
fn into_coproduct(group: &Arc<crate::group::Group>, m: &TransMap, extra: usize) -> GMap {
    let e = m.to_gmap(group);
    let other = GSet::coset_space(group, group.rep_index(extra));
    let (y, incl) = crate::gset::coproduct_many(group, &[e.dst.clone(), other]);
    GMap::new(e.src.clone(), y, e.images.iter().map(|&i| incl[0].images[i]).collect()).expect("equivariant")
}

/// `G/M → Y` through an elementary map into the orbit `j` of `Y`.
fn into_orbit(group: &Arc<crate::group::Group>, y: &GSet, d: &OrbitDecomposition, j: usize, m: &TransMap) -> GMap {
    let e = m.to_gmap(group);
    let o = &d.orbits[j];
    GMap::new(e.src.clone(), y.clone(), e.images.iter().map(|&c| o.inverse[c]).collect()).expect("equivariant")
}

/// The complement of the image, as a sub-G-set with its inclusion.
fn complement_inclusion(f: &GMap) -> GMap {
    let y = &f.dst;
    let mut hit = vec![false; y.size()];
    for &i in &f.images {
        hit[i] = true;
    }
    let keep: Vec<usize> = (0..y.size()).filter(|&i| !hit[i]).collect();
    let pos: std::collections::HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let rows: Vec<Vec<usize>> = (0..y.group().order())
        .map(|g| keep.iter().map(|&p| pos[&y.act(g, p)]).collect())
        .collect();
    let sub = if keep.is_empty() {
        GSet::empty(y.group().clone())
    } else {
        GSet::new(y.group().clone(), &rows).expect("image complement is G-stable")
    };
    GMap::new(sub, y.clone(), keep).expect("inclusion")
}

/// Verify the identities on `t`.
pub fn verify_axioms(t: &Functor, bounds: &VerifyBounds) -> AxiomReport {
    let mut rec = Recorder::new();
    let tt: &dyn Tambara = &**t;
    let group = tt.group().clone();
    let seed = bounds.seed;
    let levels: Vec<(Vec<Elem>, bool)> = (0..tt.num_levels())
        .map(|c| sample_level(tt.level(c), seed ^ (c as u64) << 8))
        .collect();

    // ring axioms on every level
    for (c, (xs, ex)) in levels.iter().enumerate() {
        let r = tt.level(c);
        rec.sampled("ring axioms", *ex);
        for (a, b, d) in triples(xs, *ex) {
            let ok = r.add(&r.add(a, b), d) == r.add(a, &r.add(b, d))
                && r.mul(&r.mul(a, b), d) == r.mul(a, &r.mul(b, d))
                && r.mul(a, &r.add(b, d)) == r.add(&r.mul(a, b), &r.mul(a, d))
                && r.mul(a, b) == r.mul(b, a)
                && r.add(a, b) == r.add(b, a)
                && r.mul(a, &r.one()) == *a
                && r.add(a, &r.zero()) == *a
                && r.is_zero(&r.add(a, &r.neg(a)));
            rec.check("ring axioms", ok, || {
                format!("level {}: a={}, b={}, c={}", group.class_name(c), r.format(a), r.format(b), r.format(d))
            });
        }
    }

    let maps = elementary_maps(&group);

    // homomorphism properties and the informational cohomological check
    for m in &maps {
        let (src, dst) = (tt.level(m.src), tt.level(m.dst));
        let (ys, yex) = &levels[m.dst];
        let (xs, xex) = &levels[m.src];
        let label = m.label(&group);
        rec.sampled("res ring hom", *yex);
        rec.check("res ring hom", tt.res(m, &dst.one()) == src.one(), || format!("{label}: res(1) ≠ 1"));
        for (a, b) in pairs(ys, *yex) {
            let ok = tt.res(m, &dst.add(a, b)) == src.add(&tt.res(m, a), &tt.res(m, b))
                && tt.res(m, &dst.mul(a, b)) == src.mul(&tt.res(m, a), &tt.res(m, b));
            rec.check("res ring hom", ok, || format!("{label}: a={}, b={}", dst.format(a), dst.format(b)));
        }
        rec.sampled("tr additive", *xex);
        rec.sampled("nm multiplicative", *xex);
        rec.check("tr additive", dst.is_zero(&tt.tr(m, &src.zero())), || format!("{label}: tr(0) ≠ 0"));
        rec.check_result("nm multiplicative", tt.nm(m, &src.one()).map(|v| v == dst.one()), || {
            format!("{label}: nm(1) ≠ 1")
        });
        for (a, b) in pairs(xs, *xex) {
            let ok = tt.tr(m, &src.add(a, b)) == dst.add(&tt.tr(m, a), &tt.tr(m, b));
            rec.check("tr additive", ok, || format!("{label}: a={}, b={}", src.format(a), src.format(b)));
            let nm = (|| Ok(tt.nm(m, &src.mul(a, b))? == dst.mul(&tt.nm(m, a)?, &tt.nm(m, b)?)))();
            rec.check_result("nm multiplicative", nm, || {
                format!("{label}: a={}, b={}", src.format(a), src.format(b))
            });
        }
        let deg = m.degree(&group) as i64;
        rec.sampled("additively cohomological", *yex);
        for b in ys {
            rec.check("additively cohomological", tt.tr(m, &tt.res(m, b)) == dst.scale(deg, b), || {
                format!("{label}: b={}", dst.format(b))
            });
        }
    }

    // functoriality on composable pairs and identities
    for m1 in &maps {
        let id = TransMap::identity(m1.src);
        let (xs, xex) = &levels[m1.src];
        rec.sampled("functoriality", *xex);
        for x in xs {
            let ok = tt.res(&id, x) == *x && tt.tr(&id, x) == *x && tt.nm(&id, x).ok().as_ref() == Some(x);
            rec.check("functoriality", ok, || format!("identity on G/{}", group.class_name(m1.src)));
        }
        for m2 in maps.iter().filter(|m2| m2.src == m1.dst) {
            let comp = m1.then(&group, m2);
            let label = format!("{} then {}", m1.label(&group), m2.label(&group));
            let (zs, zex) = &levels[m2.dst];
            rec.sampled("functoriality", *zex);
            for z in zs {
                rec.check("functoriality", tt.res(&comp, z) == tt.res(m1, &tt.res(m2, z)), || {
                    format!("res along {label}")
                });
            }
            for x in xs {
                rec.check("functoriality", tt.tr(&comp, x) == tt.tr(m2, &tt.tr(m1, x)), || {
                    format!("tr along {label}")
                });
                let nm = (|| Ok(tt.nm(&comp, x)? == tt.nm(m2, &tt.nm(m1, x)?)?))();
                rec.check_result("functoriality", nm, || format!("nm along {label}"));
            }
        }
    }

    // the general family of test maps
    let top = group.top_class();
    let mut family: Vec<TestMap> = maps.iter().map(|m| TestMap::new(m.label(&group), m.to_gmap(&group))).collect();
    for m in &maps {
        let mut extras = vec![group.trivial_class(), top];
        extras.dedup();
        for l in extras {
            family.push(TestMap::new(
                format!("{} into G/{} ⊔ G/{}", m.label(&group), group.class_name(m.dst), group.class_name(l)),
                into_coproduct(&group, m, l),
            ));
        }
    }
    let samples: Vec<(Vec<Values>, bool)> = family.iter().map(|tm| value_samples(tt, &tm.plan.src, seed)).collect();

    for (tm, (xs, xex)) in family.iter().zip(&samples) {
        let plan = &tm.plan;
        let label = &tm.label;
        let fmt_x = |v: &Values| fmt_values(tt, &plan.src, v);

        // norm of zero
        let eta = complement_inclusion(&tm.f);
        let eta_plan = MapPlan::new(&eta);
        let expected = eta_plan.tr(tt, &ones(tt, &eta_plan.src));
        rec.check_result("norm of zero", plan.nm(tt, &zeros(tt, &plan.src)).map(|v| v == expected), || {
            format!("{label}: f_•(0) ≠ η_+(1)")
        });

        // projection formula and shriek identities
        let (ys, yex) = value_samples(tt, &plan.dst, seed ^ 0x51);
        let full = *xex && yex;
        rec.sampled("projection formula", full);
        let mixed: Vec<(&Values, &Values)> = if full {
            xs.iter().flat_map(|a| ys.iter().map(move |b| (a, b))).collect()
        } else {
            (0..xs.len().max(ys.len())).map(|i| (&xs[i % xs.len()], &ys[(i * 7 + 3) % ys.len()])).collect()
        };
        for (a, b) in mixed {
            let lhs = plan.tr(tt, &mul_values(tt, &plan.src, a, &plan.res(tt, b)));
            let rhs = mul_values(tt, &plan.dst, &plan.tr(tt, a), b);
            rec.check("projection formula", lhs == rhs, || {
                format!("{label}: a={}, b={}", fmt_x(a), fmt_values(tt, &plan.dst, b))
            });
        }
        rec.sampled("shriek multiplicative", *xex);
        for (a, b) in value_pairs(xs, *xex) {
            let ok = (|| {
                let l = mul_values(tt, &plan.dst, &plan.shriek(tt, a)?, &plan.shriek(tt, b)?);
                Ok(l == plan.shriek(tt, &mul_values(tt, &plan.src, a, b))?)
            })();
            rec.check_result("shriek multiplicative", ok, || format!("{label}: x={}, y={}", fmt_x(a), fmt_x(b)));
        }
        if tm.f.is_surjective() {
            rec.sampled("shriek surjective", *xex);
            for a in xs {
                let ok = (|| Ok(plan.shriek(tt, a)? == plan.nm(tt, a)?))();
                rec.check_result("shriek surjective", ok, || format!("{label}: x={}", fmt_x(a)));
            }
        }

        // addition formula through the folding diagram
        match folding_exponential(&tm.f, bounds.max_points) {
            Ok(fold) => {
                let (r, rp, t_, tp, s) = (
                    MapPlan::new(&fold.r),
                    MapPlan::new(&fold.r_prime),
                    MapPlan::new(&fold.t),
                    MapPlan::new(&fold.t_prime),
                    MapPlan::new(&fold.s),
                );
                rec.sampled("addition formula", *xex);
                for (a, b) in value_pairs(xs, *xex) {
                    let ok = (|| {
                        let lhs = plan.nm(tt, &add_values(tt, &plan.src, a, b))?;
                        let left = t_.nm(tt, &r.res(tt, a))?;
                        let right = tp.nm(tt, &rp.res(tt, b))?;
                        let rhs = s.tr(tt, &mul_values(tt, &s.src, &left, &right));
                        Ok(lhs == rhs)
                    })();
                    rec.check_result("addition formula", ok, || format!("{label}: a={}, b={}", fmt_x(a), fmt_x(b)));
                }
            }
            Err(_) => rec.skip("addition formula"),
        }

        // pullback squares against maps into each orbit of the target
        let ydec = &plan.dst;
        for (j, orbit) in ydec.orbits.iter().enumerate() {
            for eta in maps.iter().filter(|e| e.dst == orbit.class) {
                let eta_map = into_orbit(&group, &tm.f.dst, ydec, j, eta);
                let eta_plan = MapPlan::new(&eta_map);
                let (_, xi, fp) = pullback(&tm.f, &eta_map).expect("common codomain");
                let (xi, fp) = (MapPlan::new(&xi), MapPlan::new(&fp));
                let sq = format!("{label} against {} into orbit {j}", eta.label(&group));
                let elementary = plan.src.orbits.len() == 1 && ydec.orbits.len() == 1;
                if elementary {
                    rec.sampled("mackey additive", *xex);
                    rec.sampled("mackey multiplicative", *xex);
                }
                rec.sampled("shriek pullback", *xex);
                for x in xs {
                    if elementary {
                        let lhs = eta_plan.res(tt, &plan.tr(tt, x));
                        let rhs = fp.tr(tt, &xi.res(tt, x));
                        rec.check("mackey additive", lhs == rhs, || format!("{sq}: x={}", fmt_x(x)));
                        let ok = (|| Ok(eta_plan.res(tt, &plan.nm(tt, x)?) == fp.nm(tt, &xi.res(tt, x))?))();
                        rec.check_result("mackey multiplicative", ok, || format!("{sq}: x={}", fmt_x(x)));
                    }
                    let ok = (|| Ok(fp.shriek(tt, &xi.res(tt, x))? == eta_plan.res(tt, &plan.shriek(tt, x)?)))();
                    rec.check_result("shriek pullback", ok, || format!("{sq}: x={}", fmt_x(x)));
                }
            }
        }
    }

    // distributive law and its shriek form on canonical exponential diagrams
    for m in &maps {
        let f = m.to_gmap(&group);
        let k = group.rep_index(m.src);
        let lc = group.local_classes(k);
        let basis: Vec<GMap> = lc
            .reps
            .iter()
            .map(|&sub| GMap::coset_map(&group, sub, k, 0).expect("subgroup of K"))
            .collect();
        let mut sources: Vec<(String, GMap)> = basis
            .iter()
            .zip(&lc.reps)
            .map(|(b, &s)| (format!("G/{}", group.subgroup_name(s)), b.clone()))
            .collect();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let parts = [basis[i].src.clone(), basis[j].src.clone()];
                let (a, incl) = crate::gset::coproduct_many(&group, &parts);
                let mut images = vec![0; a.size()];
                for (inc, b) in incl.iter().zip([&basis[i], &basis[j]]) {
                    for (p, &img) in inc.images.iter().enumerate() {
                        images[img] = b.images[p];
                    }
                }
                let name = format!(
                    "G/{} ⊔ G/{}",
                    group.subgroup_name(lc.reps[i]),
                    group.subgroup_name(lc.reps[j])
                );
                sources.push((name, GMap::new(a, f.src.clone(), images).expect("equivariant")));
            }
        }
        for (name, p) in sources {
            let diagram = match exponential_diagram(&f, &p, bounds.max_points) {
                Ok(d) => d,
                Err(_) => {
                    rec.skip("distributive law");
                    rec.skip("shriek exponential");
                    continue;
                }
            };
            let pp = MapPlan::new(&diagram.p);
            let fp = MapPlan::new(&diagram.f);
            let lam = MapPlan::new(&diagram.lambda);
            let rho = MapPlan::new(&diagram.rho);
            let pi = MapPlan::new(&diagram.pi);
            let (as_, aex) = value_samples(tt, &pp.src, seed ^ 0xD1);
            rec.sampled("distributive law", aex);
            rec.sampled("shriek exponential", aex);
            let label = format!("{} with A = {name}", m.label(&group));
            for a in &as_ {
                let ok = (|| Ok(fp.nm(tt, &pp.tr(tt, a))? == pi.tr(tt, &rho.nm(tt, &lam.res(tt, a))?)))();
                rec.check_result("distributive law", ok, || {
                    format!("{label}: a={}", fmt_values(tt, &pp.src, a))
                });
                let ok = (|| Ok(fp.shriek(tt, &pp.tr(tt, a))? == pi.tr(tt, &rho.shriek(tt, &lam.res(tt, a))?)))();
                rec.check_result("shriek exponential", ok, || {
                    format!("{label}: a={}", fmt_values(tt, &pp.src, a))
                });
            }
        }
    }

    // shriek naturality along the diagonal T → T × T
    if let Ok(prod) = ProductFunctor::new(t.clone(), t.clone()) {
        let prod: Functor = Arc::new(prod);
        let diag = diagonal(t, &prod);
        for (tm, (xs, xex)) in family.iter().zip(&samples) {
            let plan = &tm.plan;
            rec.sampled("shriek natural", *xex);
            for x in xs {
                let ok = (|| {
                    let lhs: Values = plan
                        .dst
                        .orbits
                        .iter()
                        .zip(plan.shriek(tt, x)?)
                        .map(|(o, v)| diag.apply(o.class, &v))
                        .collect();
                    let px: Values = plan.src.orbits.iter().zip(x).map(|(o, v)| diag.apply(o.class, v)).collect();
                    Ok(lhs == plan.shriek(&*prod, &px)?)
                })();
                rec.check_result("shriek natural", ok, || {
                    format!("{}: x={}", tm.label, fmt_values(tt, &plan.src, x))
                });
            }
        }
    }

    AxiomReport {
        functor: tt.name(),
        results: rec.results.into_values().collect(),
    }
}

fn diagonal(t: &Functor, prod: &Functor) -> TambaraMorphism {
    let maps = (0..t.num_levels())
        .map(|_| Arc::new(|x: &Elem| crate::ring::LevelRing::pair(x.clone(), x.clone())) as LevelMap)
        .collect();
    TambaraMorphism::new(t.clone(), prod.clone(), maps, "diagonal").expect("same group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::OmegaFunctor;
    use crate::fixed_point::{FixedPointFunctor, GRing};
    use crate::group::{builtin, Group};
    use crate::ring::LevelRing;

    /// Ω with one transfer coefficient perturbed.
    struct Faulty {
        inner: Arc<OmegaFunctor>,
        target: TransMap,
    }

    impl Tambara for Faulty {
        fn name(&self) -> String {
            "faulty".into()
        }
        fn group(&self) -> &Arc<Group> {
            self.inner.group()
        }
        fn level(&self, class: usize) -> &LevelRing {
            self.inner.level(class)
        }
        fn res(&self, m: &TransMap, x: &Elem) -> Elem {
            self.inner.res(m, x)
        }
        fn tr(&self, m: &TransMap, x: &Elem) -> Elem {
            let mut y = self.inner.tr(m, x);
            if *m == self.target {
                y.0[0] += x.0[0];
            }
            y
        }
        fn nm(&self, m: &TransMap, x: &Elem) -> Result<Elem> {
            self.inner.nm(m, x)
        }
    }

    #[test]
    fn omega_c2_passes() {
        let t: Functor = Arc::new(OmegaFunctor::new(Arc::new(builtin("c2").unwrap())).unwrap());
        let r = verify_axioms(&t, &VerifyBounds::default());
        assert!(r.passed(), "{}", r.render());
        assert!(r.get("additively cohomological").unwrap().informational);
    }

    #[test]
    fn fixed_point_swap_passes_exhaustively() {
        let g = Arc::new(builtin("c2").unwrap());
        let t: Functor = Arc::new(FixedPointFunctor::new(Arc::new(GRing::prodfield(g, 2, 2, true).unwrap())));
        let r = verify_axioms(&t, &VerifyBounds::default());
        assert!(r.passed(), "{}", r.render());
        assert!(r.results.iter().all(|i| i.exhaustive));
    }

    #[test]
    fn perturbed_transfer_is_caught() {
        let o = Arc::new(OmegaFunctor::new(Arc::new(builtin("c2").unwrap())).unwrap());
        let target = TransMap::projection(o.group(), 0, 1).unwrap();
        let t: Functor = Arc::new(Faulty { inner: o, target });
        let r = verify_axioms(&t, &VerifyBounds::default());
        let mackey = r.get("mackey additive").unwrap();
        assert!(!mackey.passed);
        assert!(mackey.witness.as_ref().unwrap().contains("pGe"));
    }
}
