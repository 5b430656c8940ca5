use num_bigint::BigInt;

use super::dd::double_description;
use super::{ArrangementError, HyperplaneArrangement, Result, Sign, SignVector};
use crate::qlinalg::{dot_int, Covector, IntVector};

pub const DEFAULT_CELL_CAP: usize = 20;

/// Relative-interior witness of the cell with sign vector `signs` over the
/// first `signs.len()` covectors, or `None` if that cell is empty.
fn witness(n: usize, covectors: &[Covector], signs: &[Sign]) -> Option<IntVector> {
    let mut eqs: Vec<IntVector> = Vec::new();
    let mut ineqs: Vec<IntVector> = Vec::new();
    for (c, s) in covectors.iter().zip(signs) {
        match s {
            Sign::Zero => eqs.push(c.entries().to_vec()),
            Sign::Pos => ineqs.push(c.entries().to_vec()),
            Sign::Neg => ineqs.push(c.entries().iter().map(|x| -x).collect()),
        }
    }
    let er: Vec<&[BigInt]> = eqs.iter().map(|v| v.as_slice()).collect();
    let ir: Vec<&[BigInt]> = ineqs.iter().map(|v| v.as_slice()).collect();
    let p = double_description(n, &er, &ir).interior_point(n);
    covectors
        .iter()
        .zip(signs)
        .all(|(c, &s)| Sign::of_int(&dot_int(c.entries(), &p)) == s)
        .then_some(p)
}

/// Whether some point has exactly the sign vector `s`.
///
/// The closure of the cell is computed by double description; the cell is
/// nonempty iff a relative-interior point of that closure is strict on every
/// nonzero entry of `s`.
pub fn realizable(arr: &HyperplaneArrangement, s: &SignVector) -> Result<bool> {
    if s.len() != arr.len() {
        return Err(ArrangementError::LengthMismatch {
            expected: arr.len(),
            found: s.len(),
        });
    }
    Ok(witness(arr.ambient_dim(), arr.covectors(), s.signs()).is_some())
}

pub fn cells(arr: &HyperplaneArrangement) -> Result<Vec<SignVector>> {
    cells_with_cap(arr, DEFAULT_CELL_CAP)
}

/// All nonempty cells (of every dimension), sorted.
///
/// Hyperplanes are inserted one at a time. A relatively open cell that meets
/// the new hyperplane without lying in it is split into three pieces; the
/// witness point decides which case applies with at most one extra
/// feasibility check.
pub fn cells_with_cap(arr: &HyperplaneArrangement, cap: usize) -> Result<Vec<SignVector>> {
    if arr.len() > cap {
        return Err(ArrangementError::CapExceeded {
            what: "cell enumeration covector count",
            cap,
            found: arr.len(),
        });
    }
    let n = arr.ambient_dim();
    let cs = arr.covectors();
    let mut current: Vec<(Vec<Sign>, IntVector)> = vec![(Vec::new(), vec![BigInt::from(0); n])];
    for k in 0..cs.len() {
        let prefix = &cs[..=k];
        let mut next = Vec::with_capacity(current.len() * 2);
        for (signs, p) in current {
            let s0 = Sign::of_int(&dot_int(cs[k].entries(), &p));
            let probe = if s0 == Sign::Zero { Sign::Pos } else { Sign::Zero };
            let mut probe_signs = signs.clone();
            probe_signs.push(probe);
            let split = witness(n, prefix, &probe_signs);
            let mut keep = signs.clone();
            keep.push(s0);
            next.push((keep, p));
            if let Some(q) = split {
                next.push((probe_signs, q));
                let other = if s0 == Sign::Zero { Sign::Neg } else { s0.negate() };
                let mut other_signs = signs;
                other_signs.push(other);
                let w = witness(n, prefix, &other_signs).expect("a cell crossing a hyperplane meets both sides");
                next.push((other_signs, w));
            }
        }
        current = next;
    }
    let mut out: Vec<SignVector> = current.into_iter().map(|(s, _)| SignVector(s)).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::tests::three_lines;
    use crate::arrangement::tits_compose;
    use std::collections::BTreeSet;

    fn sv(s: &str) -> SignVector {
        SignVector::parse(s).unwrap()
    }

    /// Brute-force oracle: sign vectors of all integer points in a box. Exact
    /// for arrangements whose cells all contain small lattice points.
    fn lattice_cells(arr: &HyperplaneArrangement, radius: i64) -> BTreeSet<SignVector> {
        let n = arr.ambient_dim();
        let mut out = BTreeSet::new();
        let mut idx = vec![-radius; n];
        loop {
            let v = crate::qlinalg::qvec(&idx);
            out.insert(crate::arrangement::sign_vector_of(arr, &v).unwrap());
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                idx[k] += 1;
                if idx[k] <= radius {
                    break;
                }
                idx[k] = -radius;
                k += 1;
            }
        }
    }

    #[test]
    fn realizability_examples() {
        let arr = three_lines();
        assert!(realizable(&arr, &sv("+++")).unwrap());
        assert!(!realizable(&arr, &sv("00+")).unwrap());
        assert!(realizable(&HyperplaneArrangement::empty(2), &sv("")).unwrap());
        assert!(realizable(&arr, &sv("++")).is_err());
    }

    #[test]
    fn three_lines_have_thirteen_cells() {
        let cs = cells(&three_lines()).unwrap();
        assert_eq!(cs.len(), 13);
        assert_eq!(cs.iter().filter(|c| c.is_chamber()).count(), 6);
        let oracle = lattice_cells(&three_lines(), 2);
        assert_eq!(cs.into_iter().collect::<BTreeSet<_>>(), oracle);
    }

    #[test]
    fn small_cell_counts() {
        let line = HyperplaneArrangement::from_i64(1, &[&[1]]).unwrap();
        assert_eq!(cells(&line).unwrap(), vec![sv("-"), sv("0"), sv("+")]);
        assert_eq!(cells(&HyperplaneArrangement::empty(2)).unwrap(), vec![sv("")]);
    }

    #[test]
    fn cells_match_lattice_oracle_in_three_dimensions() {
        let arr = HyperplaneArrangement::from_i64(3, &[&[1, -1, 0], &[0, 1, -1], &[1, 0, -1], &[1, 0, 0], &[0, 0, 1]])
            .unwrap();
        let cs: BTreeSet<_> = cells(&arr).unwrap().into_iter().collect();
        assert_eq!(cs, lattice_cells(&arr, 3));
        for c in &cs {
            assert!(realizable(&arr, c).unwrap());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let rows: Vec<Vec<i64>> = (1..=5).map(|k| vec![1, k]).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let arr = HyperplaneArrangement::from_i64(2, &refs).unwrap();
        assert!(matches!(
            cells_with_cap(&arr, 4),
            Err(ArrangementError::CapExceeded { .. })
        ));
        // Five distinct lines through the origin: 10 rays, 10 sectors, origin.
        assert_eq!(cells(&arr).unwrap().len(), 21);
    }

    #[test]
    fn tits_monoid_exhaustive_small() {
        let arrs = [
            three_lines(),
            HyperplaneArrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap(),
        ];
        for arr in &arrs {
            let cs = cells(arr).unwrap();
            let set: BTreeSet<_> = cs.iter().cloned().collect();
            for x in &cs {
                assert_eq!(&tits_compose(x, x).unwrap(), x);
                for y in &cs {
                    let xy = tits_compose(x, y).unwrap();
                    assert!(set.contains(&xy), "{x} o {y} = {xy} not a cell");
                    for z in &cs {
                        let l = tits_compose(&xy, z).unwrap();
                        let r = tits_compose(x, &tits_compose(y, z).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }
}
