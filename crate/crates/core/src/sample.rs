//! Element sampling for identity checks.
//!
//! Levels with at most [`EXHAUSTIVE_LIMIT`] elements are enumerated in full;
//! larger levels get a seeded sample whose lattice coordinates lie in
//! `[-COORD_BOUND, COORD_BOUND]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ring::{Elem, LevelRing};

pub const EXHAUSTIVE_LIMIT: usize = 64;
pub const SAMPLE_COUNT: usize = 200;
pub const COORD_BOUND: i64 = 3;
pub const DEFAULT_SEED: u64 = 0x5EED_0001;

/// A random element of `ring`.
pub fn random_elem(ring: &LevelRing, rng: &mut impl Rng) -> Elem {
    match ring {
        LevelRing::Finite(r) => Elem::from_index(rng.gen_range(0..r.size())),
        LevelRing::Lattice(r) => {
            let v = (0..r.dim()).map(|_| rng.gen_range(-COORD_BOUND..=COORD_BOUND)).collect();
            ring.normalize(&Elem(v)).expect("width matches")
        }
        LevelRing::Product(a, b) => LevelRing::pair(random_elem(a, rng), random_elem(b, rng)),
    }
}

/// Elements to test on, and whether they are all of the ring.
pub fn sample_level(ring: &LevelRing, seed: u64) -> (Vec<Elem>, bool) {
    if let Some(all) = ring.elements(EXHAUSTIVE_LIMIT) {
        return (all, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![ring.zero(), ring.one(), ring.neg(&ring.one())];
    while out.len() < SAMPLE_COUNT {
        out.push(random_elem(ring, &mut rng));
    }
    (out, false)
}

/// All ordered pairs when exhaustive, otherwise each sample against a shifted partner.
pub fn pairs(xs: &[Elem], exhaustive: bool) -> Vec<(&Elem, &Elem)> {
    if exhaustive {
        xs.iter().flat_map(|a| xs.iter().map(move |b| (a, b))).collect()
    } else {
        let n = xs.len();
        (0..n).map(|i| (&xs[i], &xs[(i * 7 + 3) % n])).collect()
    }
}

/// Triples for three-variable identities.
pub fn triples(xs: &[Elem], exhaustive: bool) -> Vec<(&Elem, &Elem, &Elem)> {
    let n = xs.len();
    if exhaustive && n * n * n <= 1 << 15 {
        let mut out = Vec::with_capacity(n * n * n);
        for a in xs {
            for b in xs {
                for c in xs {
                    out.push((a, b, c));
                }
            }
        }
        out
    } else {
        (0..n.max(SAMPLE_COUNT).min(n * n * n))
            .map(|i| (&xs[i % n], &xs[(i * 7 + 3) % n], &xs[(i * 13 + 5) % n]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteRing;

    #[test]
    fn small_rings_are_exhaustive() {
        let (xs, ex) = sample_level(&LevelRing::finite(FiniteRing::zmod(6).unwrap()), 1);
        assert!(ex);
        assert_eq!(xs.len(), 6);
        assert_eq!(pairs(&xs, ex).len(), 36);
    }

    #[test]
    fn integers_are_sampled_deterministically() {
        let z = LevelRing::integers();
        let (a, ex) = sample_level(&z, DEFAULT_SEED);
        let (b, _) = sample_level(&z, DEFAULT_SEED);
        assert!(!ex);
        assert_eq!(a, b);
        assert!(a.iter().all(|x| x.0[0].abs() <= COORD_BOUND));
    }
}
