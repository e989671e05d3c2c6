//! Finite groups given by Cayley tables, their subgroup lattices and
//! conjugacy classes of subgroups.
//!
//! Elements are indices `0..order` with `0` the identity. Subgroups are
//! stored as bitmasks (at most 64 elements), which keeps closure and
//! conjugation tests cheap.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{cap, invalid, Result};

/// Hard ceiling imposed by the bitmask representation of subgroups.
pub const MAX_ORDER: usize = 64;

/// Default refusal threshold for subgroup enumeration.
pub const DEFAULT_ORDER_CAP: usize = 24;

/// How a group is described before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    /// Row-major multiplication table, `table[a][b] = a*b`.
    Table(Vec<Vec<usize>>),
    /// Permutations of `0..degree` generating the group.
    Perm { degree: usize, gens: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    /// Permutation realisation, kept when the group was generated by permutations.
    perm: Option<PermRep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermRep {
    pub degree: usize,
    pub gens: Vec<Vec<usize>>,
    /// `images[g][i]` is the image of point `i` under element `g`.
    pub images: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Table(t) => Self::from_table(t),
            GroupSpec::Perm { degree, gens } => Self::from_permutations(*degree, gens),
        }
    }

    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(invalid("empty multiplication table"));
        }
        if n > MAX_ORDER {
            return Err(cap("group order", n as u128, MAX_ORDER as u128));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(invalid(format!("table row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(invalid(format!("table entry {bad} out of range in row {i}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| invalid("table has no two-sided identity"))?;
        // relabel so that the identity is element 0
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = relabel(table[relabel(a)][relabel(b)]) as u32;
            }
        }
        let g = Self::from_flat(n, mult, None)?;
        Ok(g)
    }

    fn from_flat(n: usize, mult: Vec<u32>, perm: Option<PermRep>) -> Result<Self> {
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| mult[a * n + b] == 0 && mult[b * n + a] == 0)
                .ok_or_else(|| invalid(format!("element {a} has no inverse")))?;
            inv[a] = b as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a * n + b] as usize;
                for c in 0..n {
                    let bc = mult[b * n + c] as usize;
                    if mult[ab * n + c] != mult[a * n + bc] {
                        return Err(invalid(format!("table is not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            mult,
            inv,
            perm,
        })
    }

    /// Closure of the given permutations under composition.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(invalid(format!("generator {i} has {} images, expected {degree}", g.len())));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(invalid(format!("generator {i} is not a bijection of 0..{degree}")));
                }
                seen[x] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q: Vec<usize> = (0..degree).map(|i| g[p[i]]).collect();
                if found.insert(q.clone()) {
                    if found.len() > MAX_ORDER {
                        return Err(cap("generated group order", found.len() as u128, MAX_ORDER as u128));
                    }
                    queue.push_back(q);
                }
            }
        }
        // lexicographic order puts the identity first
        let elements: Vec<Vec<usize>> = found.into_iter().collect();
        let index: HashMap<&[usize], usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let n = elements.len();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                // (a*b)(i) = a(b(i))
                let comp: Vec<usize> = (0..degree).map(|i| elements[a][elements[b][i]]).collect();
                mult[a * n + b] = index[comp.as_slice()] as u32;
            }
        }
        let perm = PermRep {
            degree,
            gens: gens.to_vec(),
            images: elements.clone(),
        };
        Self::from_flat(n, mult, Some(perm))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn perm_rep(&self) -> Option<&PermRep> {
        self.perm.as_ref()
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Smallest subgroup containing the elements of `mask`.
    pub fn closure(&self, mask: u64) -> u64 {
        let mut cur = mask | 1;
        loop {
            let mut next = cur;
            for a in bits(cur) {
                for b in bits(cur) {
                    next |= 1u64 << self.mul(a, b);
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Mask of `g⁻¹ S g`.
    pub fn conjugate_mask(&self, mask: u64, g: usize) -> u64 {
        let gi = self.inv(g);
        bits(mask).fold(0u64, |acc, s| acc | 1u64 << self.mul(self.mul(gi, s), g))
    }
}

/// Iterate the set bits of a mask in increasing order.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub mask: u64,
    pub index_in_catalog: usize,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask >> g & 1 == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.mask & !other.mask == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupCatalog {
    pub all_subgroups: Vec<Subgroup>,
    /// Catalog indices of the class representatives, in canonical order.
    pub class_reps: Vec<usize>,
    /// For each subgroup, the position of its class in `class_reps`.
    pub class_of: Vec<usize>,
    /// For each subgroup `S` with representative `R`, an element `g` with `g⁻¹ R g = S`.
    pub conjugator: Vec<usize>,
    /// `po[i][j]` holds iff `class_reps[i] ⪯ class_reps[j]`.
    pub po: Vec<Vec<bool>>,
    by_mask: HashMap<u64, usize>,
}

impl SubgroupCatalog {
    pub fn build(g: &FiniteGroup, order_cap: usize) -> Result<Self> {
        let n = g.order();
        if n > order_cap {
            return Err(cap("group order for subgroup enumeration", n as u128, order_cap as u128));
        }
        // seed with cyclic subgroups, then close under joins with single elements
        let mut masks: BTreeSet<u64> = (0..n).map(|x| g.closure(1u64 << x)).collect();
        let mut queue: VecDeque<u64> = masks.iter().copied().collect();
        while let Some(s) = queue.pop_front() {
            for x in 0..n {
                if s >> x & 1 == 0 {
                    let t = g.closure(s | 1u64 << x);
                    if masks.insert(t) {
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut subs: Vec<Vec<usize>> = masks.iter().map(|&m| bits(m).collect()).collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let all_subgroups: Vec<Subgroup> = subs
            .into_iter()
            .enumerate()
            .map(|(i, elements)| Subgroup {
                mask: elements.iter().fold(0u64, |m, &x| m | 1u64 << x),
                elements,
                index_in_catalog: i,
            })
            .collect();
        let by_mask: HashMap<u64, usize> = all_subgroups.iter().map(|s| (s.mask, s.index_in_catalog)).collect();

        let count = all_subgroups.len();
        let mut class_of = vec![usize::MAX; count];
        let mut conjugator = vec![0usize; count];
        let mut class_reps = Vec::new();
        for i in 0..count {
            if class_of[i] != usize::MAX {
                continue;
            }
            let cls = class_reps.len();
            class_reps.push(i);
            for h in 0..n {
                let j = by_mask[&g.conjugate_mask(all_subgroups[i].mask, h)];
                if class_of[j] == usize::MAX {
                    class_of[j] = cls;
                    conjugator[j] = h;
                }
            }
        }
        let k = class_reps.len();
        let mut po = vec![vec![false; k]; k];
        for a in 0..k {
            let ka = all_subgroups[class_reps[a]].mask;
            for b in 0..k {
                let lb = all_subgroups[class_reps[b]].mask;
                po[a][b] = (0..n).any(|h| ka & !g.conjugate_mask(lb, h) == 0);
            }
        }
        Ok(SubgroupCatalog {
            all_subgroups,
            class_reps,
            class_of,
            conjugator,
            po,
            by_mask,
        })
    }

    pub fn index_of_mask(&self, mask: u64) -> Option<usize> {
        self.by_mask.get(&mask).copied()
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn rep(&self, class: usize) -> &Subgroup {
        &self.all_subgroups[self.class_reps[class]]
    }

    /// `K ⪯ L` for class positions.
    pub fn preceq(&self, k: usize, l: usize) -> bool {
        self.po[k][l]
    }
}

/// Left cosets `gS` of one subgroup, numbered by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cosets {
    /// Smallest element of each coset; coset 0 is `S` itself.
    pub reps: Vec<usize>,
    /// Coset number of each group element.
    pub index: Vec<usize>,
}

/// H-conjugacy classes of subgroups of a subgroup H.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalClasses {
    /// Catalog index of H.
    pub host: usize,
    /// Catalog indices of the chosen representatives, canonical order; the last one is H.
    pub reps: Vec<usize>,
    /// Catalog index of a subgroup of H -> position in `reps`.
    pub class_of: HashMap<usize, usize>,
    /// `po[i][j]` holds iff `reps[i] ≤ reps[j]^h` for some `h ∈ H`.
    pub po: Vec<Vec<bool>>,
}

impl LocalClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn top(&self) -> usize {
        self.reps.len() - 1
    }
}

/// A validated group together with its subgroup catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub name: String,
    pub table: FiniteGroup,
    pub catalog: SubgroupCatalog,
    cosets: Vec<Cosets>,
    names: Vec<String>,
}

impl Group {
    pub fn new(name: impl Into<String>, table: FiniteGroup, order_cap: usize) -> Result<Self> {
        let catalog = SubgroupCatalog::build(&table, order_cap)?;
        let n = table.order();
        let cosets = catalog
            .all_subgroups
            .iter()
            .map(|s| {
                let mut index = vec![usize::MAX; n];
                let mut reps = Vec::new();
                for g in 0..n {
                    if index[g] != usize::MAX {
                        continue;
                    }
                    let c = reps.len();
                    reps.push(g);
                    for &h in &s.elements {
                        index[table.mul(g, h)] = c;
                    }
                }
                Cosets { reps, index }
            })
            .collect();
        let top = catalog.all_subgroups.len() - 1;
        let names = (0..catalog.all_subgroups.len())
            .map(|i| {
                if i == 0 {
                    "e".to_string()
                } else if i == top {
                    "G".to_string()
                } else if catalog.class_reps[catalog.class_of[i]] == i {
                    format!("H{}", catalog.class_of[i])
                } else {
                    format!("S{i}")
                }
            })
            .collect();
        Ok(Group {
            name: name.into(),
            table,
            catalog,
            cosets,
            names,
        })
    }

    pub fn build(name: &str, spec: &GroupSpec, order_cap: usize) -> Result<Self> {
        Group::new(name, FiniteGroup::build(spec)?, order_cap)
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.table.inv(a)
    }

    pub fn subgroup(&self, idx: usize) -> &Subgroup {
        &self.catalog.all_subgroups[idx]
    }

    pub fn num_classes(&self) -> usize {
        self.catalog.num_classes()
    }

    /// Catalog index of the representative of class `class`.
    pub fn rep_index(&self, class: usize) -> usize {
        self.catalog.class_reps[class]
    }

    pub fn class_of(&self, sub: usize) -> usize {
        self.catalog.class_of[sub]
    }

    /// Class position of the trivial subgroup (always 0).
    pub fn trivial_class(&self) -> usize {
        0
    }

    /// Class position of the whole group (always last).
    pub fn top_class(&self) -> usize {
        self.num_classes() - 1
    }

    pub fn cosets(&self, sub: usize) -> &Cosets {
        &self.cosets[sub]
    }

    pub fn index_of_mask(&self, mask: u64) -> Option<usize> {
        self.catalog.index_of_mask(mask)
    }

    /// Catalog index of `g⁻¹ S g`.
    pub fn conjugate(&self, sub: usize, g: usize) -> usize {
        self.index_of_mask(self.table.conjugate_mask(self.subgroup(sub).mask, g))
            .expect("catalog is closed under conjugation")
    }

    /// Display name of a subgroup: `e`, `G`, `H<class>` for class representatives, `S<index>` otherwise.
    pub fn subgroup_name(&self, sub: usize) -> &str {
        &self.names[sub]
    }

    pub fn class_name(&self, class: usize) -> &str {
        self.subgroup_name(self.rep_index(class))
    }

    pub fn subgroup_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn class_by_name(&self, name: &str) -> Option<usize> {
        let sub = self.subgroup_by_name(name)?;
        (self.rep_index(self.class_of(sub)) == sub).then(|| self.class_of(sub))
    }

    /// One representative (the smallest element) per double coset `H g K`.
    pub fn double_cosets(&self, h: usize, k: usize) -> Vec<usize> {
        let n = self.order();
        let hs = &self.subgroup(h).elements;
        let ks = &self.subgroup(k).elements;
        let mut seen = vec![false; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &x in hs {
                for &y in ks {
                    seen[self.mul(self.mul(x, g), y)] = true;
                }
            }
        }
        reps
    }

    /// Representatives of the H-conjugacy classes of subgroups of `host`.
    pub fn local_classes(&self, host: usize) -> LocalClasses {
        let hmask = self.subgroup(host).mask;
        let helems = &self.subgroup(host).elements;
        let mut class_of: HashMap<usize, usize> = HashMap::new();
        let mut reps = Vec::new();
        for (i, s) in self.catalog.all_subgroups.iter().enumerate() {
            if s.mask & !hmask != 0 || class_of.contains_key(&i) {
                continue;
            }
            let pos = reps.len();
            reps.push(i);
            for &h in helems {
                class_of.entry(self.conjugate(i, h)).or_insert(pos);
            }
        }
        let k = reps.len();
        let mut po = vec![vec![false; k]; k];
        for a in 0..k {
            let am = self.subgroup(reps[a]).mask;
            for b in 0..k {
                po[a][b] = helems
                    .iter()
                    .any(|&h| am & !self.subgroup(self.conjugate(reps[b], h)).mask == 0);
            }
        }
        LocalClasses {
            host,
            reps,
            class_of,
            po,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

/// Small groups available by name: `c1`, `c2`, `c3`, `c4`, `s3`, `c2xc2`.
pub fn builtin_spec(name: &str) -> Option<GroupSpec> {
    let perm = |degree: usize, gens: &[&[usize]]| GroupSpec::Perm {
        degree,
        gens: gens.iter().map(|g| g.to_vec()).collect(),
    };
    Some(match name {
        "c1" | "trivial" => GroupSpec::Table(vec![vec![0]]),
        "c2" => perm(2, &[&[1, 0]]),
        "c3" => perm(3, &[&[1, 2, 0]]),
        "c4" => perm(4, &[&[1, 2, 3, 0]]),
        "s3" => perm(3, &[&[1, 0, 2], &[1, 2, 0]]),
        "c2xc2" => perm(4, &[&[1, 0, 2, 3], &[0, 1, 3, 2]]),
        _ => return None,
    })
}

pub fn builtin(name: &str) -> Option<Group> {
    let spec = builtin_spec(name)?;
    Group::build(name, &spec, DEFAULT_ORDER_CAP).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_subgroups(g: &FiniteGroup) -> usize {
        // every subset containing the identity that is closed under multiplication
        let n = g.order();
        (0u64..1 << n)
            .filter(|m| m & 1 == 1)
            .filter(|&m| bits(m).all(|a| bits(m).all(|b| m >> g.mul(a, b) & 1 == 1)))
            .count()
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn permutation_closures() {
        let c2 = FiniteGroup::from_permutations(2, &[vec![1, 0]]).unwrap();
        assert_eq!(c2.order(), 2);
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        // C2 with the identity stored as element 1
        let g = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(&[vec![0, 1], vec![1]]).is_err());
        assert!(FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]).is_err());
        // a loop that is not associative: order-5 Latin square with identity
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(&t).is_err());
        assert!(FiniteGroup::from_permutations(3, &[vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn catalogs_of_small_groups() {
        let c2 = builtin("c2").unwrap();
        assert_eq!(c2.catalog.all_subgroups.len(), 2);
        assert_eq!(c2.num_classes(), 2);
        assert!(c2.catalog.preceq(0, 1));

        let s3 = builtin("s3").unwrap();
        assert_eq!(s3.catalog.all_subgroups.len(), 6);
        assert_eq!(s3.num_classes(), 4);
        let orders: Vec<usize> = (0..4).map(|c| s3.catalog.rep(c).order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert!(!s3.catalog.preceq(1, 2));
        assert!(!s3.catalog.preceq(2, 1));

        let c4 = builtin("c4").unwrap();
        assert_eq!(c4.catalog.all_subgroups.len(), 3);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(c4.catalog.preceq(a, b), a <= b);
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for name in ["c2", "c3", "c4", "s3", "c2xc2"] {
            let g = builtin(name).unwrap();
            assert_eq!(g.catalog.all_subgroups.len(), brute_subgroups(&g.table), "{name}");
        }
    }

    #[test]
    fn conjugators_map_reps_to_members() {
        let g = builtin("s3").unwrap();
        for (i, s) in g.catalog.all_subgroups.iter().enumerate() {
            let rep = g.catalog.rep(g.class_of(i));
            let c = g.catalog.conjugator[i];
            assert_eq!(g.table.conjugate_mask(rep.mask, c), s.mask);
        }
    }

    #[test]
    fn double_coset_counts() {
        let g = builtin("s3").unwrap();
        let top = g.catalog.all_subgroups.len() - 1;
        assert_eq!(g.double_cosets(top, top), vec![0]);
        let c2 = g.rep_index(1);
        assert_eq!(g.double_cosets(c2, c2).len(), 2);
        let h = builtin("c2").unwrap();
        assert_eq!(h.double_cosets(0, 0).len(), 2);
    }

    #[test]
    fn local_classes_of_s3() {
        let g = builtin("s3").unwrap();
        let top = g.catalog.all_subgroups.len() - 1;
        let lc = g.local_classes(top);
        assert_eq!(lc.len(), 4);
        assert_eq!(*lc.reps.last().unwrap(), top);
        let c2 = g.rep_index(1);
        assert_eq!(g.local_classes(c2).len(), 2);
    }

    #[test]
    fn names() {
        let g = builtin("s3").unwrap();
        assert_eq!(g.class_name(0), "e");
        assert_eq!(g.class_name(3), "G");
        assert_eq!(g.class_by_name("H1"), Some(1));
        assert_eq!(g.class_by_name("G"), Some(3));
    }
}
