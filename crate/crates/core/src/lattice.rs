//! Integer lattices in Hermite normal form.
//!
//! Vectors are rows; a lattice is stored by its row-style HNF basis: the
//! pivot columns strictly increase, pivots are positive, and entries above a
//! pivot lie in `[0, pivot)`. That makes the basis canonical, so lattice
//! equality is plain equality. Arithmetic runs in `i128` and is narrowed
//! back to `i64` at the end.

use std::fmt;

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer overflow in lattice arithmetic")
}

/// Row echelon form with an optional unimodular transform `u`, `u·a = h`.
struct Echelon {
    h: Vec<Vec<i128>>,
    u: Vec<Vec<i128>>,
    rank: usize,
    pivots: Vec<usize>,
}

fn echelon(a: &[Vec<i128>], n: usize, track: bool) -> Echelon {
    let m = a.len();
    let mut h: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = if track {
        (0..m)
            .map(|i| (0..m).map(|j| i128::from(i == j)).collect())
            .collect()
    } else {
        Vec::new()
    };
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid on column c among rows r..m until one nonzero entry remains
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if h[i][c] != 0 && best.is_none_or(|b| h[i][c].abs() < h[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap(r, b);
            if track {
                u.swap(r, b);
            }
            let mut done = true;
            for i in r + 1..m {
                if h[i][c] != 0 {
                    let q = h[i][c].div_euclid(h[r][c]);
                    if q != 0 {
                        for j in c..n {
                            h[i][j] -= q * h[r][j];
                        }
                        if track {
                            for j in 0..m {
                                u[i][j] -= q * u[r][j];
                            }
                        }
                    }
                    if h[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][c] == 0 {
            continue;
        }
        if h[r][c] < 0 {
            for x in h[r].iter_mut() {
                *x = -*x;
            }
            if track {
                for x in u[r].iter_mut() {
                    *x = -*x;
                }
            }
        }
        let p = h[r][c];
        for i in 0..r {
            let q = h[i][c].div_euclid(p);
            if q != 0 {
                for j in c..n {
                    h[i][j] -= q * h[r][j];
                }
                if track {
                    for j in 0..m {
                        u[i][j] -= q * u[r][j];
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { h, u, rank: r, pivots }
}

fn widen(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

/// A subgroup of `ℤ^dim`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice{:?}", self.basis)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        Lattice {
            dim,
            basis,
            pivots: (0..dim).collect(),
        }
    }

    pub fn from_generators(dim: usize, gens: &[Vec<i64>]) -> Self {
        for g in gens {
            assert_eq!(g.len(), dim, "generator length does not match lattice dimension");
        }
        let e = echelon(&widen(gens), dim, false);
        Lattice {
            dim,
            basis: e.h[..e.rank].iter().map(|r| r.iter().map(|&x| narrow(x)).collect()).collect(),
            pivots: e.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// `[ℤ^dim : L]`, when finite.
    pub fn index(&self) -> Option<u128> {
        self.is_full_rank().then(|| {
            self.basis
                .iter()
                .zip(&self.pivots)
                .map(|(r, &c)| r[c] as u128)
                .product()
        })
    }

    /// The canonical representative of `v + L`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        self.reduce_with_coeffs(v).0
    }

    fn reduce_with_coeffs(&self, v: &[i64]) -> (Vec<i64>, Vec<i64>) {
        assert_eq!(v.len(), self.dim, "vector length does not match lattice dimension");
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let q = w[c].div_euclid(row[c] as i128);
            if q != 0 {
                for j in c..self.dim {
                    w[j] -= q * row[j] as i128;
                }
            }
            coeffs.push(narrow(q));
        }
        (w.into_iter().map(narrow).collect(), coeffs)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coefficients `q` with `v = Σ q_i basis_i`, if `v ∈ L`.
    pub fn solve(&self, v: &[i64]) -> Option<Vec<i64>> {
        let (rest, q) = self.reduce_with_coeffs(v);
        rest.iter().all(|&x| x == 0).then_some(q)
    }

    pub fn is_subset(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let gens: Vec<Vec<i64>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Lattice::from_generators(self.dim, &gens)
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        if self.is_zero() || other.is_zero() {
            return Lattice::zero(self.dim);
        }
        let stacked: Vec<Vec<i64>> = self.basis.iter().chain(&other.basis).cloned().collect();
        let k = left_kernel(&stacked, self.dim);
        let gens: Vec<Vec<i64>> = k
            .basis()
            .iter()
            .map(|x| combine(&x[..self.rank()], &self.basis, self.dim))
            .collect();
        Lattice::from_generators(self.dim, &gens)
    }

    /// `{ x·A : x ∈ L }` for the matrix `a` with one row per coordinate of `L`.
    pub fn image(&self, a: &[Vec<i64>], target_dim: usize) -> Lattice {
        let gens: Vec<Vec<i64>> = self.basis.iter().map(|x| combine(x, a, target_dim)).collect();
        Lattice::from_generators(target_dim, &gens)
    }

    /// Canonical representatives of `ℤ^dim / L` in mixed-radix order; requires full rank.
    pub fn quotient_representatives(&self, limit: usize) -> Option<Vec<Vec<i64>>> {
        let index = self.index()?;
        if index > limit as u128 {
            return None;
        }
        let radices: Vec<i64> = self.basis.iter().zip(&self.pivots).map(|(r, &c)| r[c]).collect();
        let mut out = Vec::with_capacity(index as usize);
        let mut digits = vec![0i64; self.dim];
        loop {
            out.push(digits.clone());
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return Some(out);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < radices[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}

/// `Σ x_i · rows_i`.
pub fn combine(x: &[i64], rows: &[Vec<i64>], dim: usize) -> Vec<i64> {
    let mut out = vec![0i128; dim];
    for (&c, row) in x.iter().zip(rows) {
        if c != 0 {
            for j in 0..dim {
                out[j] += c as i128 * row[j] as i128;
            }
        }
    }
    out.into_iter().map(narrow).collect()
}

/// Some `x` with `x·A = v`, where `A` is given by (not necessarily independent) rows.
pub fn solve_in_generators(a: &[Vec<i64>], n: usize, v: &[i64]) -> Option<Vec<i64>> {
    let e = echelon(&widen(a), n, true);
    let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    let mut q = vec![0i128; e.rank];
    for (i, &c) in e.pivots.iter().enumerate() {
        let p = e.h[i][c];
        if w[c].rem_euclid(p) != 0 {
            return None;
        }
        q[i] = w[c] / p;
        for j in c..n {
            w[j] -= q[i] * e.h[i][j];
        }
    }
    if w.iter().any(|&x| x != 0) {
        return None;
    }
    let mut x = vec![0i128; a.len()];
    for (i, &qi) in q.iter().enumerate() {
        for (j, xj) in x.iter_mut().enumerate() {
            *xj += qi * e.u[i][j];
        }
    }
    Some(x.into_iter().map(narrow).collect())
}

/// `{ x ∈ ℤ^m : x·A = 0 }` for an `m × n` matrix `A` given by rows.
pub fn left_kernel(a: &[Vec<i64>], n: usize) -> Lattice {
    let m = a.len();
    let e = echelon(&widen(a), n, true);
    let gens: Vec<Vec<i64>> = e.u[e.rank..]
        .iter()
        .map(|r| r.iter().map(|&x| narrow(x)).collect())
        .collect();
    Lattice::from_generators(m, &gens)
}

/// `{ x ∈ ℤ^k : x·A ∈ M }` for a `k × n` matrix `A` and a lattice `M ⊆ ℤ^n`.
pub fn preimage(a: &[Vec<i64>], target: &Lattice) -> Lattice {
    let k = a.len();
    let stacked: Vec<Vec<i64>> = a.iter().chain(target.basis()).cloned().collect();
    let ker = left_kernel(&stacked, target.dim());
    let gens: Vec<Vec<i64>> = ker.basis().iter().map(|x| x[..k].to_vec()).collect();
    Lattice::from_generators(k, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hnf_is_canonical() {
        let a = Lattice::from_generators(2, &[vec![2, 1], vec![0, 2]]);
        let b = Lattice::from_generators(2, &[vec![2, 3], vec![4, 4], vec![0, -2]]);
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[vec![2, 1], vec![0, 2]]);
        assert_eq!(a.index(), Some(4));
    }

    #[test]
    fn membership_of_the_two_ideal() {
        let l = Lattice::from_generators(2, &[vec![2, 1], vec![0, 2]]);
        assert!(!l.contains(&[2, 0]));
        assert!(l.contains(&[0, 4]));
        assert_eq!(l.solve(&[2, 5]), Some(vec![1, 2]));
    }

    #[test]
    fn kernel_and_preimage() {
        // the map (a, b) ↦ a + 2b has kernel spanned by (2, -1) up to sign
        let k = preimage(&[vec![1], vec![2]], &Lattice::zero(1));
        assert_eq!(k.basis(), &[vec![2, -1]]);
        let k2 = left_kernel(&[vec![1, 2], vec![2, 4]], 2);
        assert_eq!(k2.rank(), 1);
    }

    #[test]
    fn quotient_reps() {
        let l = Lattice::from_generators(2, &[vec![2, 1], vec![0, 3]]);
        let reps = l.quotient_representatives(100).unwrap();
        assert_eq!(reps.len(), 6);
        for r in &reps {
            assert_eq!(&l.reduce(r), r);
        }
        assert!(Lattice::zero(1).quotient_representatives(10).is_none());
    }

    #[test]
    fn solving_against_dependent_rows() {
        let a = vec![vec![2, 4], vec![3, 6], vec![0, 5]];
        let x = solve_in_generators(&a, 2, &[1, 7]).unwrap();
        assert_eq!(combine(&x, &a, 2), vec![1, 7]);
        assert!(solve_in_generators(&a, 2, &[1, 1]).is_none());
    }

    fn small_vecs(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-6i64..=6, dim), 0..4)
    }

    proptest! {
        #[test]
        fn intersection_is_largest_common_sublattice(a in small_vecs(3), b in small_vecs(3), v in prop::collection::vec(-12i64..=12, 3)) {
            let la = Lattice::from_generators(3, &a);
            let lb = Lattice::from_generators(3, &b);
            let i = la.intersect(&lb);
            prop_assert!(i.is_subset(&la));
            prop_assert!(i.is_subset(&lb));
            prop_assert_eq!(i.contains(&v), la.contains(&v) && lb.contains(&v));
            let s = la.sum(&lb);
            prop_assert!(la.is_subset(&s) && lb.is_subset(&s));
        }

        #[test]
        fn reduce_is_a_coset_invariant(a in small_vecs(3), v in prop::collection::vec(-12i64..=12, 3), x in prop::collection::vec(-3i64..=3, 4)) {
            let l = Lattice::from_generators(3, &a);
            let w = combine(&x[..l.rank()], l.basis(), 3);
            let shifted: Vec<i64> = v.iter().zip(&w).map(|(p, q)| p + q).collect();
            prop_assert_eq!(l.reduce(&v), l.reduce(&shifted));
            prop_assert!(l.contains(&w));
        }

        #[test]
        fn preimage_matches_definition(m in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 3), t in small_vecs(2), x in prop::collection::vec(-4i64..=4, 3)) {
            let target = Lattice::from_generators(2, &t);
            let pre = preimage(&m, &target);
            let img = combine(&x, &m, 2);
            prop_assert_eq!(pre.contains(&x), target.contains(&img));
        }
    }
}
