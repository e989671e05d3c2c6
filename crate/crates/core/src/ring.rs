//! Commutative rings attached to the levels of a Tambara functor.
//!
//! A level is either a finite ring given by tables, a quotient `ℤ^n / L` of a
//! free module with structure constants, or a product of two levels.
//! Elements are plain integer vectors: a single index for table rings,
//! reduced coordinates for lattice rings, concatenations for products.

use std::fmt;
use std::sync::Arc;

use crate::error::{cap, invalid, Result};
use crate::lattice::Lattice;

/// Default limit for materialising all elements of a finite level.
pub const DEFAULT_ELEMENT_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub Vec<i64>);

impl Elem {
    pub fn index(&self) -> usize {
        self.0[0] as usize
    }

    pub fn from_index(i: usize) -> Self {
        Elem(vec![i as i64])
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    n: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: usize,
    one: usize,
    labels: Vec<String>,
}

impl FiniteRing {
    /// Validated construction from addition and multiplication tables.
    pub fn from_tables(add: &[Vec<usize>], mul: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(invalid("a ring needs at least one element"));
        }
        for (name, t) in [("add", add), ("mul", mul)] {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(invalid(format!("{name} table is not {n}×{n}")));
            }
            if t.iter().flatten().any(|&x| x >= n) {
                return Err(invalid(format!("{name} table has an entry out of range")));
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(invalid("label count does not match ring size"));
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| add[z][x] == x))
            .ok_or_else(|| invalid("no additive identity"))?;
        let one = (0..n)
            .find(|&u| (0..n).all(|x| mul[u][x] == x))
            .ok_or_else(|| invalid("no multiplicative identity"))?;
        let mut neg = vec![0u32; n];
        for x in 0..n {
            neg[x] = (0..n)
                .find(|&y| add[x][y] == zero)
                .ok_or_else(|| invalid(format!("element {x} has no additive inverse")))? as u32;
        }
        for a in 0..n {
            for b in 0..n {
                if add[a][b] != add[b][a] || mul[a][b] != mul[b][a] {
                    return Err(invalid(format!("ring is not commutative at ({a},{b})")));
                }
                for c in 0..n {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return Err(invalid(format!("addition is not associative at ({a},{b},{c})")));
                    }
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(invalid(format!("multiplication is not associative at ({a},{b},{c})")));
                    }
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                        return Err(invalid(format!("distributivity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let flat = |t: &[Vec<usize>]| t.iter().flatten().map(|&x| x as u32).collect::<Vec<_>>();
        Ok(FiniteRing {
            n,
            add: flat(add),
            mul: flat(mul),
            neg,
            zero,
            one,
            labels,
        })
    }

    /// Tabulate from closures; the caller guarantees the ring axioms.
    pub(crate) fn tabulate(
        n: usize,
        labels: Vec<String>,
        zero: usize,
        one: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut at = vec![0u32; n * n];
        let mut mt = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                at[a * n + b] = add(a, b) as u32;
                mt[a * n + b] = mul(a, b) as u32;
            }
        }
        let neg = (0..n)
            .map(|x| (0..n).find(|&y| at[x * n + y] as usize == zero).unwrap() as u32)
            .collect();
        FiniteRing {
            n,
            add: at,
            mul: mt,
            neg,
            zero,
            one,
            labels,
        }
    }

    pub fn zmod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("ℤ/0 is not finite"));
        }
        Ok(Self::tabulate(
            n,
            (0..n).map(|i| i.to_string()).collect(),
            0,
            1 % n,
            |a, b| (a + b) % n,
            |a, b| (a * b) % n,
        ))
    }

    /// Product of finitely many table rings, elements in mixed-radix order.
    pub fn product_of(factors: &[&FiniteRing], limit: usize) -> Result<Self> {
        let size = factors.iter().fold(1u128, |a, f| a * f.n as u128);
        if size > limit as u128 {
            return Err(cap("elements of a product ring", size, limit as u128));
        }
        let n = size as usize;
        let digits = |mut x: usize| {
            let mut d = vec![0; factors.len()];
            for i in (0..factors.len()).rev() {
                d[i] = x % factors[i].n;
                x /= factors[i].n;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, f)| acc * f.n + x);
        let table: Vec<Vec<usize>> = (0..n).map(digits).collect();
        let labels = table
            .iter()
            .map(|d| {
                let parts: Vec<&str> = d.iter().zip(factors).map(|(&x, f)| f.labels[x].as_str()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let zero = undigits(&factors.iter().map(|f| f.zero).collect::<Vec<_>>());
        let one = undigits(&factors.iter().map(|f| f.one).collect::<Vec<_>>());
        let op = |which: bool| {
            let table = &table;
            move |a: usize, b: usize| {
                let d: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| if which { f.mul(table[a][i], table[b][i]) } else { f.add(table[a][i], table[b][i]) })
                    .collect();
                undigits(&d)
            }
        };
        Ok(Self::tabulate(n, labels, zero, one, op(false), op(true)))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.add(a, b)).collect()).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn is_domain(&self) -> bool {
        self.n > 1
            && (0..self.n).all(|a| a == self.zero || (0..self.n).all(|b| b == self.zero || self.mul(a, b) != self.zero))
    }

    pub fn is_field(&self) -> bool {
        self.n > 1 && (0..self.n).all(|a| a == self.zero || (0..self.n).any(|b| self.mul(a, b) == self.one))
    }

    /// Is the permutation an automorphism of the ring?
    pub fn is_automorphism(&self, p: &[usize]) -> bool {
        if p.len() != self.n {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &x in p {
            if x >= self.n || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        p[self.one] == self.one
            && (0..self.n).all(|a| {
                (0..self.n).all(|b| p[self.add(a, b)] == self.add(p[a], p[b]) && p[self.mul(a, b)] == self.mul(p[a], p[b]))
            })
    }
}

/// `ℤ^dim / modulus` with multiplication given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeRing {
    dim: usize,
    modulus: Lattice,
    /// `structure[i][j]` are the coordinates of `e_i · e_j`.
    structure: Vec<Vec<Vec<i64>>>,
    one: Vec<i64>,
    names: Vec<String>,
}

impl LatticeRing {
    pub fn new(structure: Vec<Vec<Vec<i64>>>, one: Vec<i64>, modulus: Lattice, names: Vec<String>) -> Result<Self> {
        let dim = one.len();
        if structure.len() != dim || structure.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(invalid("structure constants do not match the rank"));
        }
        if modulus.dim() != dim || names.len() != dim {
            return Err(invalid("modulus or basis names do not match the rank"));
        }
        let ring = LatticeRing {
            dim,
            modulus,
            structure,
            one,
            names,
        };
        ring.validate()?;
        Ok(ring)
    }

    /// Axioms on basis vectors; by bilinearity this covers all elements.
    fn validate(&self) -> Result<()> {
        let e = |i: usize| unit(self.dim, i);
        for i in 0..self.dim {
            if self.raw_mul(&self.one, &e(i)) != self.modulus.reduce(&e(i)) {
                return Err(invalid(format!("the one is not a unit on basis vector {i}")));
            }
            for j in 0..self.dim {
                if self.raw_mul(&e(i), &e(j)) != self.raw_mul(&e(j), &e(i)) {
                    return Err(invalid(format!("multiplication is not commutative on ({i},{j})")));
                }
                for k in 0..self.dim {
                    let l = self.raw_mul(&self.raw_mul(&e(i), &e(j)), &e(k));
                    let r = self.raw_mul(&e(i), &self.raw_mul(&e(j), &e(k)));
                    if l != r {
                        return Err(invalid(format!("multiplication is not associative on ({i},{j},{k})")));
                    }
                }
            }
            for m in self.modulus.basis() {
                if !self.modulus.contains(&self.product_unreduced(&e(i), m)) {
                    return Err(invalid("the modulus is not an ideal"));
                }
            }
        }
        Ok(())
    }

    fn product_unreduced(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i128; self.dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                for (k, &c) in self.structure[i][j].iter().enumerate() {
                    out[k] += x as i128 * y as i128 * c as i128;
                }
            }
        }
        out.into_iter()
            .map(|x| i64::try_from(x).expect("integer overflow in ring multiplication"))
            .collect()
    }

    fn raw_mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.modulus.reduce(&self.product_unreduced(a, b))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> &Lattice {
        &self.modulus
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn structure(&self) -> &[Vec<Vec<i64>>] {
        &self.structure
    }

    pub fn one_coords(&self) -> &[i64] {
        &self.one
    }

    /// Same structure constants with a larger modulus.
    pub fn with_modulus(&self, modulus: Lattice) -> Self {
        LatticeRing {
            modulus,
            ..self.clone()
        }
    }
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    (0..dim).map(|j| i64::from(i == j)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelRing {
    Finite(Arc<FiniteRing>),
    Lattice(Arc<LatticeRing>),
    Product(Box<LevelRing>, Box<LevelRing>),
}

impl LevelRing {
    pub fn finite(r: FiniteRing) -> Self {
        LevelRing::Finite(Arc::new(r))
    }

    pub fn lattice(r: LatticeRing) -> Self {
        LevelRing::Lattice(Arc::new(r))
    }

    /// The ring `ℤ`.
    pub fn integers() -> Self {
        LevelRing::lattice(LatticeRing {
            dim: 1,
            modulus: Lattice::zero(1),
            structure: vec![vec![vec![1]]],
            one: vec![1],
            names: vec!["1".into()],
        })
    }

    pub fn product(a: LevelRing, b: LevelRing) -> Self {
        LevelRing::Product(Box::new(a), Box::new(b))
    }

    /// Length of the element vectors.
    pub fn width(&self) -> usize {
        match self {
            LevelRing::Finite(_) => 1,
            LevelRing::Lattice(r) => r.dim,
            LevelRing::Product(a, b) => a.width() + b.width(),
        }
    }

    fn split(&self, x: &Elem) -> (Elem, Elem) {
        let LevelRing::Product(a, _) = self else { unreachable!() };
        let w = a.width();
        (Elem(x.0[..w].to_vec()), Elem(x.0[w..].to_vec()))
    }

    fn join(a: Elem, b: Elem) -> Elem {
        let mut v = a.0;
        v.extend(b.0);
        Elem(v)
    }

    pub fn zero(&self) -> Elem {
        match self {
            LevelRing::Finite(r) => Elem::from_index(r.zero),
            LevelRing::Lattice(r) => Elem(vec![0; r.dim]),
            LevelRing::Product(a, b) => Self::join(a.zero(), b.zero()),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            LevelRing::Finite(r) => Elem::from_index(r.one),
            LevelRing::Lattice(r) => Elem(r.modulus.reduce(&r.one)),
            LevelRing::Product(a, b) => Self::join(a.one(), b.one()),
        }
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match self {
            LevelRing::Finite(r) => Elem::from_index(r.add(x.index(), y.index())),
            LevelRing::Lattice(r) => {
                let s: Vec<i64> = x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect();
                Elem(r.modulus.reduce(&s))
            }
            LevelRing::Product(a, b) => {
                let (x1, x2) = self.split(x);
                let (y1, y2) = self.split(y);
                Self::join(a.add(&x1, &y1), b.add(&x2, &y2))
            }
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match self {
            LevelRing::Finite(r) => Elem::from_index(r.neg(x.index())),
            LevelRing::Lattice(r) => {
                let s: Vec<i64> = x.0.iter().map(|a| -a).collect();
                Elem(r.modulus.reduce(&s))
            }
            LevelRing::Product(a, b) => {
                let (x1, x2) = self.split(x);
                Self::join(a.neg(&x1), b.neg(&x2))
            }
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match self {
            LevelRing::Finite(r) => Elem::from_index(r.mul(x.index(), y.index())),
            LevelRing::Lattice(r) => Elem(r.raw_mul(&x.0, &y.0)),
            LevelRing::Product(a, b) => {
                let (x1, x2) = self.split(x);
                let (y1, y2) = self.split(y);
                Self::join(a.mul(&x1, &y1), b.mul(&x2, &y2))
            }
        }
    }

    pub fn pow(&self, x: &Elem, mut k: u64) -> Elem {
        let mut base = x.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// `k · x` for an integer `k`.
    pub fn scale(&self, k: i64, x: &Elem) -> Elem {
        match self {
            LevelRing::Lattice(r) => {
                let s: Vec<i64> = x.0.iter().map(|a| a * k).collect();
                Elem(r.modulus.reduce(&s))
            }
            _ => {
                let mut acc = self.zero();
                let mut base = if k < 0 { self.neg(x) } else { x.clone() };
                let mut m = k.unsigned_abs();
                while m > 0 {
                    if m & 1 == 1 {
                        acc = self.add(&acc, &base);
                    }
                    base = self.add(&base, &base);
                    m >>= 1;
                }
                acc
            }
        }
    }

    pub fn from_int(&self, k: i64) -> Elem {
        self.scale(k, &self.one())
    }

    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a Elem>) -> Elem {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        *x == self.zero()
    }

    /// Bring an arbitrary vector of the right width into canonical form.
    pub fn normalize(&self, x: &Elem) -> Result<Elem> {
        if x.0.len() != self.width() {
            return Err(invalid(format!("element has width {}, level expects {}", x.0.len(), self.width())));
        }
        match self {
            LevelRing::Finite(r) => {
                if x.0[0] < 0 || x.0[0] as usize >= r.n {
                    return Err(invalid(format!("element index {} outside ring of size {}", x.0[0], r.n)));
                }
                Ok(x.clone())
            }
            LevelRing::Lattice(r) => Ok(Elem(r.modulus.reduce(&x.0))),
            LevelRing::Product(a, b) => {
                let (x1, x2) = self.split(x);
                Ok(Self::join(a.normalize(&x1)?, b.normalize(&x2)?))
            }
        }
    }

    pub fn first(&self) -> Option<&LevelRing> {
        match self {
            LevelRing::Product(a, _) => Some(a),
            _ => None,
        }
    }

    pub fn components(&self, x: &Elem) -> Option<(Elem, Elem)> {
        matches!(self, LevelRing::Product(..)).then(|| self.split(x))
    }

    pub fn pair(a: Elem, b: Elem) -> Elem {
        Self::join(a, b)
    }

    /// Number of elements, if finite.
    pub fn size(&self) -> Option<u128> {
        match self {
            LevelRing::Finite(r) => Some(r.n as u128),
            LevelRing::Lattice(r) => r.modulus.index(),
            LevelRing::Product(a, b) => Some(a.size()?.checked_mul(b.size()?)?),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size() == Some(1)
    }

    /// All elements in canonical order, when the ring has at most `limit` of them.
    pub fn elements(&self, limit: usize) -> Option<Vec<Elem>> {
        if self.size()? > limit as u128 {
            return None;
        }
        match self {
            LevelRing::Finite(r) => Some((0..r.n).map(Elem::from_index).collect()),
            LevelRing::Lattice(r) => Some(r.modulus.quotient_representatives(limit)?.into_iter().map(Elem).collect()),
            LevelRing::Product(a, b) => {
                let ea = a.elements(limit)?;
                let eb = b.elements(limit)?;
                Some(
                    ea.iter()
                        .flat_map(|x| eb.iter().map(move |y| Self::join(x.clone(), y.clone())))
                        .collect(),
                )
            }
        }
    }

    /// Additive generators: every element is an integer combination of these.
    pub fn additive_generators(&self) -> Vec<Elem> {
        match self {
            LevelRing::Finite(r) => (0..r.n).map(Elem::from_index).collect(),
            LevelRing::Lattice(r) => (0..r.dim).map(|i| Elem(r.modulus.reduce(&unit(r.dim, i)))).collect(),
            LevelRing::Product(a, b) => {
                let za = a.zero();
                let zb = b.zero();
                a.additive_generators()
                    .into_iter()
                    .map(|x| Self::join(x, zb.clone()))
                    .chain(b.additive_generators().into_iter().map(|y| Self::join(za.clone(), y)))
                    .collect()
            }
        }
    }

    /// A table presentation of a finite ring.
    pub fn to_finite(&self, limit: usize) -> Option<(FiniteRing, Vec<Elem>)> {
        if let LevelRing::Finite(r) = self {
            return Some(((**r).clone(), (0..r.n).map(Elem::from_index).collect()));
        }
        let elems = self.elements(limit)?;
        let index: std::collections::HashMap<&Elem, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let labels = elems.iter().map(|e| self.format(e)).collect();
        let zero = index[&self.zero()];
        let one = index[&self.one()];
        let r = FiniteRing::tabulate(
            elems.len(),
            labels,
            zero,
            one,
            |a, b| index[&self.add(&elems[a], &elems[b])],
            |a, b| index[&self.mul(&elems[a], &elems[b])],
        );
        Some((r, elems))
    }

    pub fn is_domain(&self, limit: usize) -> Option<bool> {
        match self {
            LevelRing::Finite(r) => Some(r.is_domain()),
            LevelRing::Product(..) => Some(false),
            LevelRing::Lattice(r) if r.dim == 1 && r.modulus.is_zero() => Some(r.structure[0][0][0] != 0),
            _ => self.to_finite(limit).map(|(r, _)| r.is_domain()),
        }
    }

    pub fn format(&self, x: &Elem) -> String {
        match self {
            LevelRing::Finite(r) => r.label(x.index()).to_string(),
            LevelRing::Lattice(r) => {
                if r.dim == 1 && r.names[0] == "1" {
                    return x.0[0].to_string();
                }
                // largest orbit first
                let terms: Vec<String> = x
                    .0
                    .iter()
                    .zip(&r.names)
                    .rev()
                    .filter(|(c, _)| **c != 0)
                    .map(|(c, n)| format!("{c}*{n}"))
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            }
            LevelRing::Product(a, b) => {
                let (x1, x2) = self.split(x);
                format!("({}, {})", a.format(&x1), b.format(&x2))
            }
        }
    }

    /// Parse the textual forms produced by [`LevelRing::format`], plus plain integers.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        match self {
            LevelRing::Finite(r) => {
                if let Some(i) = r.labels.iter().position(|l| l == s) {
                    return Ok(Elem::from_index(i));
                }
                let k: i64 = s.parse().map_err(|_| invalid(format!("unknown ring element `{s}`")))?;
                Ok(self.from_int(k))
            }
            LevelRing::Lattice(r) => {
                let mut v = vec![0i64; r.dim];
                let mut any = false;
                for term in split_terms(s) {
                    any = true;
                    let term = term.trim();
                    if let Some((coef, name)) = term.split_once('*') {
                        let c: i64 = coef.trim().parse().map_err(|_| invalid(format!("bad coefficient in `{term}`")))?;
                        let name = name.trim();
                        let i = r
                            .names
                            .iter()
                            .position(|n| n == name)
                            .ok_or_else(|| invalid(format!("unknown basis element `{name}`")))?;
                        v[i] += c;
                    } else if let Some(i) = r.names.iter().position(|n| n == term) {
                        v[i] += 1;
                    } else {
                        let c: i64 = term.parse().map_err(|_| invalid(format!("cannot parse `{term}`")))?;
                        for (vi, oi) in v.iter_mut().zip(&r.one) {
                            *vi += c * oi;
                        }
                    }
                }
                if !any {
                    return Err(invalid("empty element literal"));
                }
                Ok(Elem(r.modulus.reduce(&v)))
            }
            LevelRing::Product(a, b) => {
                let inner = s
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| invalid(format!("expected a pair `(x, y)`, got `{s}`")))?;
                let cut = top_level_comma(inner).ok_or_else(|| invalid(format!("expected a pair, got `{s}`")))?;
                Ok(Self::join(a.parse(&inner[..cut])?, b.parse(&inner[cut + 1..])?))
            }
        }
    }
}

/// Split `3*[G/e] + -2*[G/G]` into terms at top-level `+` signs.
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().filter(|t| !t.trim().is_empty()).collect()
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Linear algebra helper: the matrix of an additive map on a lattice ring.
pub(crate) fn matrix_of(src: &LatticeRing, f: impl Fn(&Elem) -> Elem) -> Vec<Vec<i64>> {
    (0..src.dim).map(|i| f(&Elem(unit(src.dim, i))).0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_arithmetic() {
        let r = LevelRing::finite(FiniteRing::zmod(6).unwrap());
        let two = r.from_int(2);
        let three = r.from_int(3);
        assert!(r.is_zero(&r.mul(&two, &three)));
        assert_eq!(r.from_int(-1), Elem::from_index(5));
        assert_eq!(r.pow(&two, 3), two);
        assert_eq!(r.is_domain(100), Some(false));
        let f5 = FiniteRing::zmod(5).unwrap();
        assert!(f5.is_field());
    }

    #[test]
    fn table_validation() {
        let z2 = FiniteRing::zmod(2).unwrap();
        assert!(FiniteRing::from_tables(&z2.add_table(), &z2.mul_table(), None).is_ok());
        let mut bad = z2.mul_table();
        bad[1][1] = 0;
        bad[0][1] = 1;
        assert!(FiniteRing::from_tables(&z2.add_table(), &bad, None).is_err());
    }

    #[test]
    fn products_of_tables() {
        let f2 = FiniteRing::zmod(2).unwrap();
        let p = FiniteRing::product_of(&[&f2, &f2], 100).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.label(p.one()), "(1,1)");
        assert!(!p.is_domain());
        assert!(p.is_automorphism(&[0, 2, 1, 3]));
        assert!(!p.is_automorphism(&[0, 3, 2, 1]));
    }

    #[test]
    fn lattice_quotient_ring() {
        let z = LevelRing::integers();
        assert_eq!(z.mul(&Elem(vec![3]), &Elem(vec![-4])), Elem(vec![-12]));
        assert_eq!(z.size(), None);
        let LevelRing::Lattice(r) = &z else { panic!() };
        let z6 = LevelRing::lattice(r.with_modulus(Lattice::from_generators(1, &[vec![6]])));
        assert_eq!(z6.size(), Some(6));
        assert_eq!(z6.from_int(-1), Elem(vec![5]));
        let (t, elems) = z6.to_finite(100).unwrap();
        assert_eq!(t.size(), 6);
        assert_eq!(elems.len(), 6);
    }

    #[test]
    fn parse_and_format() {
        let names = vec!["[G/e]".to_string(), "[G/G]".to_string()];
        let structure = vec![vec![vec![2, 0], vec![1, 0]], vec![vec![1, 0], vec![0, 1]]];
        let r = LevelRing::lattice(LatticeRing::new(structure, vec![0, 1], Lattice::zero(2), names).unwrap());
        let x = r.parse("2*[G/G] + 1*[G/e]").unwrap();
        assert_eq!(x, Elem(vec![1, 2]));
        assert_eq!(r.format(&x), "2*[G/G] + 1*[G/e]");
        assert_eq!(r.parse("3").unwrap(), Elem(vec![0, 3]));
        assert_eq!(r.parse("-2*[G/e]").unwrap(), Elem(vec![-2, 0]));
        let p = LevelRing::product(LevelRing::finite(FiniteRing::zmod(2).unwrap()), r.clone());
        let y = p.parse("(1, 2*[G/e])").unwrap();
        assert_eq!(p.format(&y), "(1, 2*[G/e])");
    }

    #[test]
    fn rejects_non_associative_structure() {
        let structure = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]];
        let ok = LatticeRing::new(structure, vec![1, 0], Lattice::zero(2), vec!["a".into(), "b".into()]);
        assert!(ok.is_ok());
        let bad = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]];
        assert!(LatticeRing::new(bad.clone(), vec![1, 0], Lattice::zero(2), vec!["a".into(), "b".into()]).is_ok());
        let worse = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![2, 3]]];
        assert!(LatticeRing::new(worse, vec![0, 1], Lattice::zero(2), vec!["a".into(), "b".into()]).is_err());
    }
}
