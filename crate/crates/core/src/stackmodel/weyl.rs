use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::qlinalg::{IntMatrix, IntVector, Subspace};

use super::{Result, StackError};

/// Closes the generators under multiplication; identity first, then in
/// breadth-first order.
pub(crate) fn enumerate_group(n: usize, generators: &[IntMatrix], cap: usize) -> Result<Vec<IntMatrix>> {
    let id = IntMatrix::identity(n);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = s.mul(&g);
            if seen.insert(h.clone()) {
                if out.len() >= cap {
                    return Err(StackError::CapExceeded {
                        what: "Weyl group order",
                        cap,
                    });
                }
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(out)
}

pub(crate) fn inverse(g: &IntMatrix) -> IntMatrix {
    let id = IntMatrix::identity(g.dim());
    let mut prev = id.clone();
    let mut power = g.clone();
    while power != id {
        prev = power.clone();
        power = power.mul(g);
    }
    prev
}

/// `w ↦ w g⁻¹`, so that pairings are preserved when cocharacters move by `g`.
pub(crate) fn act_on_weight(g: &IntMatrix, w: &IntVector) -> IntVector {
    inverse(g).pull_back(w)
}

pub(crate) fn orbit(group: &[IntMatrix], s: &Subspace) -> BTreeSet<Subspace> {
    group.iter().map(|g| g.image(s)).collect()
}

pub(crate) fn canonical(group: &[IntMatrix], s: &Subspace) -> Subspace {
    group
        .iter()
        .map(|g| g.image(s))
        .min_by(|a, b| a.flattened().cmp(&b.flattened()))
        .expect("group contains the identity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{dot_int, ivec, qvec, span};
    use crate::stackmodel::catalog::permutation_generators;

    #[test]
    fn symmetric_group_orders() {
        for (n, order) in [(1, 1), (2, 2), (3, 6), (4, 24)] {
            let g = enumerate_group(n, &permutation_generators(n, n), 1000).unwrap();
            assert_eq!(g.len(), order);
        }
    }

    #[test]
    fn cap_applies() {
        assert!(enumerate_group(4, &permutation_generators(4, 4), 10).is_err());
    }

    #[test]
    fn weight_action_preserves_pairing() {
        let group = enumerate_group(3, &permutation_generators(3, 3), 100).unwrap();
        let w = ivec(&[1, 2, -4]);
        let v = ivec(&[3, -1, 5]);
        for g in &group {
            assert_eq!(dot_int(&act_on_weight(g, &w), &g.apply_int(&v)), dot_int(&w, &v));
            assert_eq!(g.mul(&inverse(g)), IntMatrix::identity(3));
        }
    }

    #[test]
    fn canonical_is_orbit_invariant() {
        let group = enumerate_group(3, &permutation_generators(3, 3), 100).unwrap();
        let s = span(&[qvec(&[1, 0, 2]), qvec(&[0, 1, 1])], 3).unwrap();
        let c = canonical(&group, &s);
        for t in orbit(&group, &s) {
            assert_eq!(canonical(&group, &t), c);
        }
    }
}
