//! Finite G-rings and their fixed point functors `P_R`, plus `P_ℤ`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::burnside::OmegaFunctor;
use crate::error::{invalid, Error, Result};
use crate::group::Group;
use crate::ring::{Elem, FiniteRing, LevelRing, DEFAULT_ELEMENT_LIMIT};
use crate::tambara::{Functor, LevelMap, Tambara, TambaraMorphism, TransMap};

/// A finite commutative ring with a left action of the group by automorphisms.
#[derive(Clone, Debug)]
pub struct GRing {
    pub name: String,
    pub group: Arc<Group>,
    pub ring: FiniteRing,
    /// `action[g][x]` is `g·x`.
    pub action: Vec<Vec<usize>>,
}

impl GRing {
    pub fn new(name: impl Into<String>, group: Arc<Group>, ring: FiniteRing, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(invalid(format!("action needs {} rows, got {}", group.order(), action.len())));
        }
        for (g, p) in action.iter().enumerate() {
            if !ring.is_automorphism(p) {
                return Err(invalid(format!("element {g} does not act by a ring automorphism")));
            }
        }
        if action[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(invalid("the identity must act trivially"));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if (0..ring.size()).any(|x| action[gh][x] != action[g][action[h][x]]) {
                    return Err(invalid(format!("action is not a homomorphism at ({g}, {h})")));
                }
            }
        }
        Ok(GRing {
            name: name.into(),
            group,
            ring,
            action,
        })
    }

    pub fn trivial(name: impl Into<String>, group: Arc<Group>, ring: FiniteRing) -> Result<Self> {
        let action = vec![(0..ring.size()).collect(); group.order()];
        GRing::new(name, group, ring, action)
    }

    /// `ℤ/n` with the trivial action.
    pub fn zmod(group: Arc<Group>, n: usize) -> Result<Self> {
        GRing::trivial(format!("Z/{n}"), group, FiniteRing::zmod(n)?)
    }

    /// `F_q^n`, either with the trivial action or permuting coordinates through
    /// the group's permutation representation: `(σ·x)_i = x_{σ⁻¹(i)}`.
    pub fn prodfield(group: Arc<Group>, q: usize, n: usize, permute: bool) -> Result<Self> {
        if q < 2 || (2..q).any(|d| q.is_multiple_of(d)) {
            return Err(Error::Unsupported(format!("prodfield needs a prime field size, got {q}")));
        }
        if n == 0 {
            return Err(invalid("prodfield needs at least one factor"));
        }
        let f = FiniteRing::zmod(q)?;
        let factors: Vec<&FiniteRing> = vec![&f; n];
        let ring = FiniteRing::product_of(&factors, DEFAULT_ELEMENT_LIMIT)?;
        let name = format!("F{q}^{n}{}", if permute { " perm" } else { "" });
        if !permute {
            return GRing::trivial(name, group, ring);
        }
        let perm = group
            .table
            .perm_rep()
            .ok_or_else(|| Error::Unsupported("a permutation action needs a permutation group".into()))?;
        if perm.degree != n {
            return Err(invalid(format!("group permutes {} points but the ring has {n} factors", perm.degree)));
        }
        let digits = |mut x: usize| {
            let mut d = vec![0; n];
            for i in (0..n).rev() {
                d[i] = x % q;
                x /= q;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * q + x);
        let action = (0..group.order())
            .map(|g| {
                let sigma = &perm.images[g];
                (0..ring.size())
                    .map(|x| {
                        let d = digits(x);
                        let mut e = vec![0; n];
                        for i in 0..n {
                            e[sigma[i]] = d[i];
                        }
                        undigits(&e)
                    })
                    .collect()
            })
            .collect();
        GRing::new(name, group, ring, action)
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    /// Elements fixed by every element of the subgroup with catalog index `sub`.
    pub fn fixed(&self, sub: usize) -> Vec<usize> {
        let h = &self.group.subgroup(sub).elements;
        (0..self.ring.size())
            .filter(|&x| h.iter().all(|&g| self.action[g][x] == x))
            .collect()
    }

    /// Is the set of elements stable under the action?
    pub fn is_invariant(&self, set: &[bool]) -> bool {
        (0..self.ring.size())
            .filter(|&x| set[x])
            .all(|x| self.action.iter().all(|p| set[p[x]]))
    }
}

/// Which element represents each coset when summing or multiplying over cosets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetChoice {
    Smallest,
    Largest,
}

/// `P_R(G/H) = R^H`.
pub struct FixedPointFunctor {
    gring: Arc<GRing>,
    levels: Vec<LevelRing>,
    /// Per level: ring element of each level element, and the inverse lookup.
    elems: Vec<Vec<usize>>,
    index: Vec<HashMap<usize, usize>>,
    choice: CosetChoice,
}

impl FixedPointFunctor {
    pub fn new(gring: Arc<GRing>) -> Self {
        Self::with_choice(gring, CosetChoice::Smallest)
    }

    pub fn with_choice(gring: Arc<GRing>, choice: CosetChoice) -> Self {
        let group = gring.group.clone();
        let mut levels = Vec::new();
        let mut elems = Vec::new();
        let mut index = Vec::new();
        for class in 0..group.num_classes() {
            let fixed = gring.fixed(group.rep_index(class));
            let idx: HashMap<usize, usize> = fixed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let r = &gring.ring;
            let labels = fixed.iter().map(|&x| r.label(x).to_string()).collect();
            let ring = FiniteRing::tabulate(
                fixed.len(),
                labels,
                idx[&r.zero()],
                idx[&r.one()],
                |a, b| idx[&r.add(fixed[a], fixed[b])],
                |a, b| idx[&r.mul(fixed[a], fixed[b])],
            );
            levels.push(LevelRing::finite(ring));
            elems.push(fixed);
            index.push(idx);
        }
        FixedPointFunctor {
            gring,
            levels,
            elems,
            index,
            choice,
        }
    }

    pub fn gring(&self) -> &Arc<GRing> {
        &self.gring
    }

    /// The element of `R` represented by a level element.
    pub fn to_ring(&self, class: usize, x: &Elem) -> usize {
        self.elems[class][x.index()]
    }

    pub fn from_ring(&self, class: usize, r: usize) -> Option<Elem> {
        self.index[class].get(&r).map(|&i| Elem::from_index(i))
    }

    /// Representatives `g` of the cosets `gK` making up `Hc⁻¹`.
    fn fibre_reps(&self, m: &TransMap) -> Vec<usize> {
        let group = &self.gring.group;
        let k = group.rep_index(m.src);
        let h = group.subgroup(group.rep_index(m.dst));
        let cos = group.cosets(k);
        let cinv = group.inv(m.c);
        let mut best: HashMap<usize, usize> = HashMap::new();
        for &x in &h.elements {
            let g = group.mul(x, cinv);
            let e = best.entry(cos.index[g]).or_insert(g);
            *e = match self.choice {
                CosetChoice::Smallest => (*e).min(g),
                CosetChoice::Largest => (*e).max(g),
            };
        }
        let mut reps: Vec<(usize, usize)> = best.into_iter().collect();
        reps.sort();
        reps.into_iter().map(|(_, g)| g).collect()
    }
}

impl Tambara for FixedPointFunctor {
    fn name(&self) -> String {
        format!("P({})", self.gring.name)
    }
    fn group(&self) -> &Arc<Group> {
        &self.gring.group
    }
    fn level(&self, class: usize) -> &LevelRing {
        &self.levels[class]
    }
    fn res(&self, m: &TransMap, x: &Elem) -> Elem {
        let r = self.gring.act(m.c, self.to_ring(m.dst, x));
        self.from_ring(m.src, r).expect("restriction lands in the fixed subring")
    }
    fn tr(&self, m: &TransMap, x: &Elem) -> Elem {
        let s = self.to_ring(m.src, x);
        let r = &self.gring.ring;
        let total = self
            .fibre_reps(m)
            .into_iter()
            .fold(r.zero(), |acc, g| r.add(acc, self.gring.act(g, s)));
        self.from_ring(m.dst, total).expect("transfer lands in the fixed subring")
    }
    fn nm(&self, m: &TransMap, x: &Elem) -> Result<Elem> {
        let s = self.to_ring(m.src, x);
        let r = &self.gring.ring;
        let total = self
            .fibre_reps(m)
            .into_iter()
            .fold(r.one(), |acc, g| r.mul(acc, self.gring.act(g, s)));
        Ok(self.from_ring(m.dst, total).expect("norm lands in the fixed subring"))
    }
}

/// `P_ℤ` for the trivial action: every level is `ℤ`.
pub struct IntegerFixedPoint {
    group: Arc<Group>,
    ring: LevelRing,
}

impl IntegerFixedPoint {
    pub fn new(group: Arc<Group>) -> Self {
        IntegerFixedPoint {
            group,
            ring: LevelRing::integers(),
        }
    }
}

impl Tambara for IntegerFixedPoint {
    fn name(&self) -> String {
        "P(Z)".into()
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
    fn tr(&self, m: &TransMap, x: &Elem) -> Elem {
        Elem(vec![x.0[0] * m.degree(&self.group) as i64])
    }
    fn nm(&self, m: &TransMap, x: &Elem) -> Result<Elem> {
        x.0[0]
            .checked_pow(m.degree(&self.group) as u32)
            .map(|v| Elem(vec![v]))
            .ok_or_else(|| Error::Unsupported("norm value exceeds 64-bit range".into()))
    }
}

/// `Ω → P_ℤ`, sending a G-set over `G/H` to the size of its fibre over `eH`.
pub fn counting_morphism(omega: Arc<OmegaFunctor>, pz: Functor) -> Result<TambaraMorphism> {
    let n = omega.num_levels();
    let maps = (0..n)
        .map(|c| {
            let o = omega.clone();
            Arc::new(move |x: &Elem| Elem(vec![o.cardinality(c, x)])) as LevelMap
        })
        .collect();
    TambaraMorphism::new(omega as Functor, pz, maps, "count")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    fn c2() -> Arc<Group> {
        Arc::new(builtin("c2").unwrap())
    }

    #[test]
    fn swap_action_on_f2_squared() {
        let r = GRing::prodfield(c2(), 2, 2, true).unwrap();
        // (0,1) and (1,0) are exchanged
        assert_eq!(r.act(1, 1), 2);
        assert_eq!(r.fixed(1), vec![0, 3]);
        let mut bad = r.action.clone();
        bad[1] = vec![0, 3, 2, 1];
        assert!(GRing::new("bad", c2(), r.ring.clone(), bad).is_err());
        assert!(GRing::prodfield(c2(), 4, 2, false).is_err());
    }

    #[test]
    fn swap_functor_maps() {
        let p = FixedPointFunctor::new(Arc::new(GRing::prodfield(c2(), 2, 2, true).unwrap()));
        let m = TransMap::projection(p.group(), 0, 1).unwrap();
        assert_eq!(p.level(1).size(), Some(2));
        let x = Elem::from_index(1); // (0,1)
        assert_eq!(p.level(1).format(&p.tr(&m, &x)), "(1,1)");
        assert_eq!(p.level(1).format(&p.nm(&m, &x).unwrap()), "(0,0)");
    }

    #[test]
    fn trivial_action_powers() {
        let p = FixedPointFunctor::new(Arc::new(GRing::zmod(c2(), 6).unwrap()));
        let m = TransMap::projection(p.group(), 0, 1).unwrap();
        for a in 0..6 {
            let x = Elem::from_index(a);
            assert_eq!(p.tr(&m, &x).index(), (2 * a) % 6);
            assert_eq!(p.nm(&m, &x).unwrap().index(), (a * a) % 6);
        }
        let z = IntegerFixedPoint::new(c2());
        assert_eq!(z.nm(&m, &Elem(vec![-3])).unwrap(), Elem(vec![9]));
    }

    #[test]
    fn coset_choice_does_not_matter() {
        let g = Arc::new(builtin("s3").unwrap());
        let r = Arc::new(GRing::prodfield(g.clone(), 2, 3, true).unwrap());
        let a = FixedPointFunctor::new(r.clone());
        let b = FixedPointFunctor::with_choice(r, CosetChoice::Largest);
        for m in crate::tambara::elementary_maps(&g) {
            for i in 0..a.level(m.src).size().unwrap() as usize {
                let x = Elem::from_index(i);
                assert_eq!(a.tr(&m, &x), b.tr(&m, &x));
                assert_eq!(a.nm(&m, &x).unwrap(), b.nm(&m, &x).unwrap());
            }
        }
    }
}
