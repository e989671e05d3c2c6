//! Ideals of a single level ring and the quotient rings they define.
//!
//! Table rings store an ideal as a membership mask, lattice rings as a
//! lattice containing the modulus, products componentwise (every ideal of
//! a product of unital rings is a product of ideals).

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::error::{cap, invalid, Error, Result};
use crate::lattice::{self, Lattice};
use crate::ring::{matrix_of, Elem, FiniteRing, LatticeRing, LevelRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LevelIdeal {
    Finite(Vec<bool>),
    Lattice(Lattice),
    Product(Box<LevelIdeal>, Box<LevelIdeal>),
}

fn mismatch() -> Error {
    Error::Mismatch("ideal does not belong to this ring".into())
}

/// Additive closure in a table ring of `{ r·g }`, with coefficient witnesses.
fn finite_closure(r: &FiniteRing, gens: &[usize]) -> (Vec<bool>, Vec<Option<Vec<usize>>>) {
    let n = r.size();
    let mut member = vec![false; n];
    let mut coeffs: Vec<Option<Vec<usize>>> = vec![None; n];
    let z = r.zero();
    member[z] = true;
    coeffs[z] = Some(vec![z; gens.len()]);
    let mut queue = VecDeque::from([z]);
    while let Some(x) = queue.pop_front() {
        for (j, &g) in gens.iter().enumerate() {
            for s in 0..n {
                let y = r.add(x, r.mul(s, g));
                if !member[y] {
                    member[y] = true;
                    let mut c = coeffs[x].clone().unwrap();
                    c[j] = r.add(c[j], s);
                    coeffs[y] = Some(c);
                    queue.push_back(y);
                }
            }
        }
    }
    (member, coeffs)
}

fn lattice_generators(r: &LatticeRing, gens: &[Elem]) -> Vec<Vec<i64>> {
    let ring = LevelRing::Lattice(Arc::new(r.clone()));
    let basis = ring.additive_generators();
    let mut rows = Vec::new();
    for g in gens {
        for b in &basis {
            rows.push(ring.mul(b, g).0);
        }
    }
    rows.extend(r.modulus().basis().iter().cloned());
    rows
}

impl LevelIdeal {
    pub fn zero(ring: &LevelRing) -> Self {
        match ring {
            LevelRing::Finite(r) => {
                let mut m = vec![false; r.size()];
                m[r.zero()] = true;
                LevelIdeal::Finite(m)
            }
            LevelRing::Lattice(r) => LevelIdeal::Lattice(r.modulus().clone()),
            LevelRing::Product(a, b) => LevelIdeal::Product(Box::new(Self::zero(a)), Box::new(Self::zero(b))),
        }
    }

    pub fn unit(ring: &LevelRing) -> Self {
        match ring {
            LevelRing::Finite(r) => LevelIdeal::Finite(vec![true; r.size()]),
            LevelRing::Lattice(r) => LevelIdeal::Lattice(Lattice::full(r.dim())),
            LevelRing::Product(a, b) => LevelIdeal::Product(Box::new(Self::unit(a)), Box::new(Self::unit(b))),
        }
    }

    /// The ideal generated by `gens`.
    pub fn generate(ring: &LevelRing, gens: &[Elem]) -> Self {
        match ring {
            LevelRing::Finite(r) => {
                let g: Vec<usize> = gens.iter().map(|e| e.index()).collect();
                LevelIdeal::Finite(finite_closure(r, &g).0)
            }
            LevelRing::Lattice(r) => {
                LevelIdeal::Lattice(Lattice::from_generators(r.dim(), &lattice_generators(r, gens)))
            }
            LevelRing::Product(a, b) => {
                let (ga, gb): (Vec<Elem>, Vec<Elem>) = gens.iter().map(|g| ring.components(g).unwrap()).unzip();
                LevelIdeal::Product(Box::new(Self::generate(a, &ga)), Box::new(Self::generate(b, &gb)))
            }
        }
    }

    /// Ring coefficients `c` with `x = Σ c_j·gens_j`, if `x` lies in the ideal they generate.
    pub fn express(ring: &LevelRing, gens: &[Elem], x: &Elem) -> Option<Vec<Elem>> {
        match ring {
            LevelRing::Finite(r) => {
                let g: Vec<usize> = gens.iter().map(|e| e.index()).collect();
                let (_, coeffs) = finite_closure(r, &g);
                coeffs[x.index()]
                    .as_ref()
                    .map(|c| c.iter().map(|&i| Elem::from_index(i)).collect())
            }
            LevelRing::Lattice(r) => {
                let rows = lattice_generators(r, gens);
                let sol = lattice::solve_in_generators(&rows, r.dim(), &x.0)?;
                let basis = ring.additive_generators();
                let coeffs = (0..gens.len())
                    .map(|j| {
                        let part: Vec<Elem> = basis
                            .iter()
                            .enumerate()
                            .map(|(i, b)| ring.scale(sol[j * basis.len() + i], b))
                            .collect();
                        ring.sum(part.iter())
                    })
                    .collect();
                Some(coeffs)
            }
            LevelRing::Product(a, b) => {
                let (ga, gb): (Vec<Elem>, Vec<Elem>) = gens.iter().map(|g| ring.components(g).unwrap()).unzip();
                let (xa, xb) = ring.components(x).unwrap();
                let ca = Self::express(a, &ga, &xa)?;
                let cb = Self::express(b, &gb, &xb)?;
                Some(ca.into_iter().zip(cb).map(|(p, q)| LevelRing::pair(p, q)).collect())
            }
        }
    }

    pub fn contains(&self, ring: &LevelRing, x: &Elem) -> bool {
        match (self, ring) {
            (LevelIdeal::Finite(m), LevelRing::Finite(_)) => m[x.index()],
            (LevelIdeal::Lattice(l), LevelRing::Lattice(_)) => l.contains(&x.0),
            (LevelIdeal::Product(i, j), LevelRing::Product(a, b)) => {
                let (xa, xb) = ring.components(x).unwrap();
                i.contains(a, &xa) && j.contains(b, &xb)
            }
            _ => panic!("{}", mismatch()),
        }
    }

    pub fn check_shape(&self, ring: &LevelRing) -> Result<()> {
        match (self, ring) {
            (LevelIdeal::Finite(m), LevelRing::Finite(r)) if m.len() == r.size() => Ok(()),
            (LevelIdeal::Lattice(l), LevelRing::Lattice(r)) if l.dim() == r.dim() => Ok(()),
            (LevelIdeal::Product(i, j), LevelRing::Product(a, b)) => {
                i.check_shape(a)?;
                j.check_shape(b)
            }
            _ => Err(mismatch()),
        }
    }

    /// Is this an ideal of the ring (exhaustive for tables, basis-wise for lattices)?
    pub fn is_ring_ideal(&self, ring: &LevelRing) -> bool {
        if self.check_shape(ring).is_err() {
            return false;
        }
        match (self, ring) {
            (LevelIdeal::Finite(m), LevelRing::Finite(r)) => {
                let n = r.size();
                m[r.zero()]
                    && (0..n).filter(|&x| m[x]).all(|x| {
                        (0..n).filter(|&y| m[y]).all(|y| m[r.add(x, y)]) && (0..n).all(|s| m[r.mul(s, x)])
                    })
            }
            (LevelIdeal::Lattice(l), LevelRing::Lattice(r)) => {
                let basis = ring.additive_generators();
                r.modulus().is_subset(l)
                    && l.basis()
                        .iter()
                        .all(|v| basis.iter().all(|b| l.contains(&ring.mul(b, &Elem(v.clone())).0)))
            }
            (LevelIdeal::Product(i, j), LevelRing::Product(a, b)) => i.is_ring_ideal(a) && j.is_ring_ideal(b),
            _ => false,
        }
    }

    /// A generating set.
    pub fn generators(&self, ring: &LevelRing) -> Vec<Elem> {
        match (self, ring) {
            (LevelIdeal::Finite(m), LevelRing::Finite(r)) => {
                // greedy: keep an element when it is not yet generated
                let mut gens: Vec<usize> = Vec::new();
                let mut cur = finite_closure(r, &gens).0;
                for x in 0..r.size() {
                    if m[x] && !cur[x] {
                        gens.push(x);
                        cur = finite_closure(r, &gens).0;
                    }
                }
                gens.into_iter().map(Elem::from_index).collect()
            }
            (LevelIdeal::Lattice(l), LevelRing::Lattice(r)) => l
                .basis()
                .iter()
                .map(|v| Elem(r.modulus().reduce(v)))
                .filter(|e| e.0.iter().any(|&x| x != 0))
                .collect(),
            (LevelIdeal::Product(i, j), LevelRing::Product(a, b)) => {
                let za = a.zero();
                let zb = b.zero();
                i.generators(a)
                    .into_iter()
                    .map(|x| LevelRing::pair(x, zb.clone()))
                    .chain(j.generators(b).into_iter().map(|y| LevelRing::pair(za.clone(), y)))
                    .collect()
            }
            _ => panic!("{}", mismatch()),
        }
    }

    /// Additive generators of the ideal as a group; used to transport it along additive maps.
    pub fn additive_generators(&self, ring: &LevelRing) -> Vec<Elem> {
        match (self, ring) {
            (LevelIdeal::Finite(m), LevelRing::Finite(_)) => {
                (0..m.len()).filter(|&x| m[x]).map(Elem::from_index).collect()
            }
            (LevelIdeal::Lattice(_), LevelRing::Lattice(_)) => self.generators(ring),
            (LevelIdeal::Product(i, j), LevelRing::Product(a, b)) => {
                let za = a.zero();
                let zb = b.zero();
                i.additive_generators(a)
                    .into_iter()
                    .map(|x| LevelRing::pair(x, zb.clone()))
                    .chain(j.additive_generators(b).into_iter().map(|y| LevelRing::pair(za.clone(), y)))
                    .collect()
            }
            _ => panic!("{}", mismatch()),
        }
    }

    pub fn elements(&self, ring: &LevelRing) -> Option<Vec<Elem>> {
        match (self, ring) {
            (LevelIdeal::Finite(m), LevelRing::Finite(_)) => {
                Some((0..m.len()).filter(|&x| m[x]).map(Elem::from_index).collect())
            }
            (LevelIdeal::Lattice(l), LevelRing::Lattice(_)) => {
                let all = ring.elements(crate::ring::DEFAULT_ELEMENT_LIMIT)?;
                Some(all.into_iter().filter(|x| l.contains(&x.0)).collect())
            }
            (LevelIdeal::Product(i, j), LevelRing::Product(a, b)) => {
                let ea = i.elements(a)?;
                let eb = j.elements(b)?;
                Some(
                    ea.iter()
                        .flat_map(|x| eb.iter().map(move |y| LevelRing::pair(x.clone(), y.clone())))
                        .collect(),
                )
            }
            _ => None,
        }
    }

    pub fn is_subset(&self, other: &LevelIdeal) -> bool {
        match (self, other) {
            (LevelIdeal::Finite(a), LevelIdeal::Finite(b)) => a.iter().zip(b).all(|(&x, &y)| !x || y),
            (LevelIdeal::Lattice(a), LevelIdeal::Lattice(b)) => a.is_subset(b),
            (LevelIdeal::Product(a1, a2), LevelIdeal::Product(b1, b2)) => a1.is_subset(b1) && a2.is_subset(b2),
            _ => panic!("{}", mismatch()),
        }
    }

    pub fn is_unit(&self, ring: &LevelRing) -> bool {
        self.contains(ring, &ring.one())
    }

    pub fn is_zero(&self, ring: &LevelRing) -> bool {
        *self == Self::zero(ring)
    }

    pub fn sum(&self, ring: &LevelRing, other: &LevelIdeal) -> LevelIdeal {
        match (self, other, ring) {
            (LevelIdeal::Lattice(a), LevelIdeal::Lattice(b), _) => LevelIdeal::Lattice(a.sum(b)),
            (LevelIdeal::Product(a1, a2), LevelIdeal::Product(b1, b2), LevelRing::Product(ra, rb)) => {
                LevelIdeal::Product(Box::new(a1.sum(ra, b1)), Box::new(a2.sum(rb, b2)))
            }
            _ => {
                let mut gens = self.generators(ring);
                gens.extend(other.generators(ring));
                Self::generate(ring, &gens)
            }
        }
    }

    pub fn intersect(&self, other: &LevelIdeal) -> LevelIdeal {
        match (self, other) {
            (LevelIdeal::Finite(a), LevelIdeal::Finite(b)) => {
                LevelIdeal::Finite(a.iter().zip(b).map(|(&x, &y)| x && y).collect())
            }
            (LevelIdeal::Lattice(a), LevelIdeal::Lattice(b)) => LevelIdeal::Lattice(a.intersect(b)),
            (LevelIdeal::Product(a1, a2), LevelIdeal::Product(b1, b2)) => {
                LevelIdeal::Product(Box::new(a1.intersect(b1)), Box::new(a2.intersect(b2)))
            }
            _ => panic!("{}", mismatch()),
        }
    }

    /// The ring-ideal product `I·J`.
    pub fn product(&self, ring: &LevelRing, other: &LevelIdeal) -> LevelIdeal {
        let gi = self.generators(ring);
        let gj = other.generators(ring);
        let prods: Vec<Elem> = gi.iter().flat_map(|a| gj.iter().map(|b| ring.mul(a, b))).collect();
        Self::generate(ring, &prods)
    }

    /// Number of elements when finite.
    pub fn count(&self, ring: &LevelRing) -> Option<u128> {
        match (self, ring) {
            (LevelIdeal::Finite(m), _) => Some(m.iter().filter(|&&b| b).count() as u128),
            (LevelIdeal::Lattice(l), LevelRing::Lattice(r)) => Some(r.modulus().index()? / l.index()?),
            (LevelIdeal::Product(i, j), LevelRing::Product(a, b)) => Some(i.count(a)? * j.count(b)?),
            _ => None,
        }
    }

    pub fn format(&self, ring: &LevelRing) -> String {
        match (self, ring) {
            (LevelIdeal::Lattice(l), LevelRing::Lattice(_)) => format!("lattice {l}"),
            _ => match self.elements(ring) {
                Some(els) if els.len() <= 64 => {
                    let parts: Vec<String> = els.iter().map(|e| ring.format(e)).collect();
                    format!("{{{}}}", parts.join(", "))
                }
                _ => {
                    let parts: Vec<String> = self.generators(ring).iter().map(|e| ring.format(e)).collect();
                    format!("generated by {{{}}}", parts.join(", "))
                }
            },
        }
    }

    /// `{ x : f(x) ∈ J }` for a ring homomorphism `f: src → dst`.
    pub fn preimage(
        src: &LevelRing,
        dst: &LevelRing,
        f: &dyn Fn(&Elem) -> Elem,
        target: &LevelIdeal,
        limit: usize,
    ) -> Result<LevelIdeal> {
        match src {
            LevelRing::Lattice(r) if matches!(target, LevelIdeal::Lattice(_)) && matches!(dst, LevelRing::Lattice(_)) => {
                let LevelIdeal::Lattice(t) = target else { unreachable!() };
                let m = matrix_of(r, f);
                Ok(LevelIdeal::Lattice(lattice::preimage(&m, t).sum(r.modulus())))
            }
            _ => {
                let els = src
                    .elements(limit)
                    .ok_or_else(|| Error::Unsupported("preimage needs a finite source level".into()))?;
                let members: Vec<Elem> = els.into_iter().filter(|x| target.contains(dst, &f(x))).collect();
                Ok(Self::generate(src, &members))
            }
        }
    }

    /// The ideal generated by `f(I)`.
    pub fn image(src: &LevelRing, dst: &LevelRing, f: &dyn Fn(&Elem) -> Elem, ideal: &LevelIdeal) -> LevelIdeal {
        let imgs: Vec<Elem> = ideal.additive_generators(src).iter().map(f).collect();
        Self::generate(dst, &imgs)
    }
}

/// `R/I` together with projection and a section.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub ring: LevelRing,
    kind: QuotientKind,
}

#[derive(Clone, Debug)]
enum QuotientKind {
    /// Coset number of each element, and smallest element of each coset.
    Finite { class: Vec<usize>, reps: Vec<usize> },
    Lattice,
    Product(Box<QuotientRing>, Box<QuotientRing>, LevelRing),
}

impl QuotientRing {
    pub fn new(ring: &LevelRing, ideal: &LevelIdeal) -> Result<Self> {
        ideal.check_shape(ring)?;
        match (ring, ideal) {
            (LevelRing::Finite(r), LevelIdeal::Finite(m)) => {
                let n = r.size();
                let mut class = vec![usize::MAX; n];
                let mut reps = Vec::new();
                let members: Vec<usize> = (0..n).filter(|&x| m[x]).collect();
                for x in 0..n {
                    if class[x] != usize::MAX {
                        continue;
                    }
                    let c = reps.len();
                    reps.push(x);
                    for &i in &members {
                        class[r.add(x, i)] = c;
                    }
                }
                let labels = reps.iter().map(|&x| r.label(x).to_string()).collect();
                let q = FiniteRing::tabulate(
                    reps.len(),
                    labels,
                    class[r.zero()],
                    class[r.one()],
                    |a, b| class[r.add(reps[a], reps[b])],
                    |a, b| class[r.mul(reps[a], reps[b])],
                );
                Ok(QuotientRing {
                    ring: LevelRing::finite(q),
                    kind: QuotientKind::Finite { class, reps },
                })
            }
            (LevelRing::Lattice(r), LevelIdeal::Lattice(l)) => Ok(QuotientRing {
                ring: LevelRing::lattice(r.with_modulus(l.clone())),
                kind: QuotientKind::Lattice,
            }),
            (LevelRing::Product(a, b), LevelIdeal::Product(i, j)) => {
                let qa = QuotientRing::new(a, i)?;
                let qb = QuotientRing::new(b, j)?;
                Ok(QuotientRing {
                    ring: LevelRing::product(qa.ring.clone(), qb.ring.clone()),
                    kind: QuotientKind::Product(Box::new(qa), Box::new(qb), ring.clone()),
                })
            }
            _ => Err(invalid("ideal shape does not match the ring")),
        }
    }

    pub fn project(&self, x: &Elem) -> Elem {
        match &self.kind {
            QuotientKind::Finite { class, .. } => Elem::from_index(class[x.index()]),
            QuotientKind::Lattice => {
                let LevelRing::Lattice(r) = &self.ring else { unreachable!() };
                Elem(r.modulus().reduce(&x.0))
            }
            QuotientKind::Product(qa, qb, parent) => {
                let (xa, xb) = parent.components(x).unwrap();
                LevelRing::pair(qa.project(&xa), qb.project(&xb))
            }
        }
    }

    pub fn lift(&self, y: &Elem) -> Elem {
        match &self.kind {
            QuotientKind::Finite { reps, .. } => Elem::from_index(reps[y.index()]),
            QuotientKind::Lattice => y.clone(),
            QuotientKind::Product(qa, qb, _) => {
                let (ya, yb) = self.ring.components(y).unwrap();
                LevelRing::pair(qa.lift(&ya), qb.lift(&yb))
            }
        }
    }
}

/// Every ideal of a finite level, in a deterministic order.
pub fn all_ideals(ring: &LevelRing, limit: usize) -> Result<Vec<LevelIdeal>> {
    let elems = ring
        .elements(limit)
        .ok_or_else(|| cap("elements of a level ring", ring.size().unwrap_or(u128::MAX), limit as u128))?;
    // breadth-first over ideals, each step adjoining one element
    let zero = LevelIdeal::generate(ring, &[]);
    let mut found = vec![zero.clone()];
    let mut seen = std::collections::HashSet::from([zero]);
    let mut i = 0;
    while i < found.len() {
        let cur = found[i].clone();
        let gens = cur.generators(ring);
        for x in &elems {
            if cur.contains(ring, x) {
                continue;
            }
            let mut g = gens.clone();
            g.push(x.clone());
            let next = LevelIdeal::generate(ring, &g);
            if seen.insert(next.clone()) {
                found.push(next);
            }
        }
        i += 1;
    }
    Ok(found)
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quotient of size {:?}", self.ring.size())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteRing;

    fn z(n: usize) -> LevelRing {
        LevelRing::finite(FiniteRing::zmod(n).unwrap())
    }

    #[test]
    fn ideals_of_z6() {
        let r = z(6);
        let all = all_ideals(&r, 100).unwrap();
        assert_eq!(all.len(), 4);
        let two = LevelIdeal::generate(&r, &[r.from_int(2)]);
        assert_eq!(two.count(&r), Some(3));
        assert!(two.is_ring_ideal(&r));
        let three = LevelIdeal::generate(&r, &[r.from_int(3)]);
        assert!(two.product(&r, &three).is_zero(&r));
        assert!(two.sum(&r, &three).is_unit(&r));
        assert!(two.intersect(&three).is_zero(&r));
        let c = LevelIdeal::express(&r, &[r.from_int(2)], &r.from_int(4)).unwrap();
        assert_eq!(r.mul(&c[0], &r.from_int(2)), r.from_int(4));
    }

    #[test]
    fn quotients() {
        let r = z(6);
        let two = LevelIdeal::generate(&r, &[r.from_int(2)]);
        let q = QuotientRing::new(&r, &two).unwrap();
        assert_eq!(q.ring.size(), Some(2));
        assert_eq!(q.project(&r.from_int(5)), q.ring.one());
        assert_eq!(q.lift(&q.ring.one()), r.from_int(1));
        let zz = LevelRing::integers();
        let i = LevelIdeal::generate(&zz, &[Elem(vec![4])]);
        let qz = QuotientRing::new(&zz, &i).unwrap();
        assert_eq!(qz.ring.size(), Some(4));
        assert_eq!(qz.project(&Elem(vec![-1])), Elem(vec![3]));
    }

    #[test]
    fn product_ring_ideals() {
        let f2 = FiniteRing::zmod(2).unwrap();
        let r = LevelRing::product(LevelRing::finite(f2.clone()), LevelRing::finite(f2));
        assert_eq!(all_ideals(&r, 100).unwrap().len(), 4);
        let x = LevelRing::pair(Elem::from_index(1), Elem::from_index(0));
        let i = LevelIdeal::generate(&r, std::slice::from_ref(&x));
        assert_eq!(i.count(&r), Some(2));
        assert!(LevelIdeal::express(&r, std::slice::from_ref(&x), &x).is_some());
    }

    #[test]
    fn lattice_preimage_and_express() {
        let zz = LevelRing::integers();
        let i = LevelIdeal::generate(&zz, &[Elem(vec![6]), Elem(vec![4])]);
        assert_eq!(i, LevelIdeal::Lattice(Lattice::from_generators(1, &[vec![2]])));
        let c = LevelIdeal::express(&zz, &[Elem(vec![6]), Elem(vec![4])], &Elem(vec![2])).unwrap();
        let back = zz.add(&zz.mul(&c[0], &Elem(vec![6])), &zz.mul(&c[1], &Elem(vec![4])));
        assert_eq!(back, Elem(vec![2]));
        let tripled = |x: &Elem| Elem(vec![3 * x.0[0]]);
        let pre = LevelIdeal::preimage(&zz, &zz, &tripled, &LevelIdeal::generate(&zz, &[Elem(vec![6])]), 10).unwrap();
        assert_eq!(pre, LevelIdeal::generate(&zz, &[Elem(vec![2])]));
    }
}
