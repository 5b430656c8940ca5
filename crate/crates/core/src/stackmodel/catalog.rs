//! Named quotient stacks and a seeded generator of random ones.

use num_bigint::BigInt;
use rand::Rng;

use super::{Caps, QuotientStackSpec};
use crate::qlinalg::{ivec, IntMatrix, IntVector};

/// Adjacent transpositions of the first `k` coordinates of `Q^n`.
pub fn permutation_generators(n: usize, k: usize) -> Vec<IntMatrix> {
    (0..k.saturating_sub(1))
        .map(|i| {
            let mut rows: Vec<IntVector> = IntMatrix::identity(n).rows().to_vec();
            rows.swap(i, i + 1);
            IntMatrix::new(rows)
        })
        .collect()
}

/// Roots `e_i - e_j` (`i != j`) of `GL(k)` on the coordinates `offset..offset+k`.
pub fn type_a_roots(n: usize, offset: usize, k: usize) -> Vec<IntVector> {
    let mut out = Vec::new();
    for i in offset..offset + k {
        for j in offset..offset + k {
            if i != j {
                let mut r = vec![BigInt::from(0); n];
                r[i] = BigInt::from(1);
                r[j] = BigInt::from(-1);
                out.push(r);
            }
        }
    }
    out
}

fn build(rank: usize, weights: Vec<IntVector>, roots: Vec<IntVector>, gens: Vec<IntMatrix>) -> QuotientStackSpec {
    QuotientStackSpec::new(rank, weights, roots, gens, Caps::default()).expect("catalog specs are valid")
}

/// `A² / GL(2)` with the standard representation.
pub fn a2_gl2() -> QuotientStackSpec {
    build(
        2,
        vec![ivec(&[1, 0]), ivec(&[0, 1])],
        type_a_roots(2, 0, 2),
        permutation_generators(2, 2),
    )
}

/// `A¹ / G_m` with weight one.
pub fn a1_gm() -> QuotientStackSpec {
    build(1, vec![ivec(&[1])], vec![], vec![])
}

/// `B G_m^n`.
pub fn bgm(n: usize) -> QuotientStackSpec {
    build(n, vec![], vec![], vec![])
}

/// `B GL(n)`.
pub fn bgl(n: usize) -> QuotientStackSpec {
    build(n, vec![], type_a_roots(n, 0, n), permutation_generators(n, n))
}

/// A random spec of rank at most `max_rank` with a type-A root system
/// `A_1`..`A_3` on the leading coordinates and a W-stable weight multiset of
/// at most `max_weights` entries in `[-2, 2]^n`.
pub fn random_spec<R: Rng>(rng: &mut R, max_rank: usize, max_weights: usize) -> QuotientStackSpec {
    let rank = rng.gen_range(2..=max_rank.max(2));
    let k = rng.gen_range(2..=rank.min(4));
    let gens = permutation_generators(rank, k);
    let group = super::weyl::enumerate_group(rank, &gens, 100).expect("small symmetric group");
    let mut weights: Vec<IntVector> = Vec::new();
    for _ in 0..20 {
        let w: IntVector = (0..rank).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect();
        let mut orbit: Vec<IntVector> = group.iter().map(|g| g.pull_back(&w)).collect();
        orbit.sort();
        orbit.dedup();
        if weights.len() + orbit.len() <= max_weights {
            weights.extend(orbit);
        }
        if weights.len() == max_weights {
            break;
        }
    }
    build(rank, weights, type_a_roots(rank, 0, k), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_specs_load() {
        assert_eq!(a2_gl2().group().len(), 2);
        assert_eq!(bgl(3).group().len(), 6);
        assert_eq!(bgl(3).roots().len(), 6);
        assert_eq!(a1_gm().roots().len(), 0);
    }

    #[test]
    fn random_specs_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let s = random_spec(&mut rng, 4, 8);
            assert!(s.rank() <= 4 && s.weights().len() <= 8);
            assert!(!s.roots().is_empty());
        }
    }
}
