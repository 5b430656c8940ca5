//! Hyperplane arrangements in `Q^n`, their flats and cells, cones cut out by
//! sign constraints, and the Tits product of sign vectors.

mod cells;
mod cone;
pub(crate) mod dd;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::qlinalg::{self, Covector, LinalgError, QVector, Rational, Subspace};

pub use cells::{cells, cells_with_cap, realizable, DEFAULT_CELL_CAP};
pub use cone::{
    cone_from_bounds, cone_from_constraints, minimal_cone_containing, ArrCone, Bound, ConeArrangement, Orientation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("sign vector length {found} does not match {expected} covectors")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{what} exceeds cap {cap} (got {found})")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        found: usize,
    },
    #[error("covector index {0} out of range")]
    BadIndex(usize),
}

pub type Result<T> = std::result::Result<T, ArrangementError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn of_int(x: &num_bigint::BigInt) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    /// True when no entry is zero, i.e. the cell is a chamber.
    pub fn is_chamber(&self) -> bool {
        self.0.iter().all(|&s| s != Sign::Zero)
    }

    pub fn zeros(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == Sign::Zero).collect()
    }

    pub fn parse(s: &str) -> Option<SignVector> {
        s.chars()
            .map(|c| match c {
                '+' => Some(Sign::Pos),
                '-' => Some(Sign::Neg),
                '0' => Some(Sign::Zero),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(SignVector)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A finite set of hyperplanes, each given by its canonical covector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HyperplaneArrangement {
    ambient_dim: usize,
    covectors: Vec<Covector>,
}

impl HyperplaneArrangement {
    /// Builds an arrangement, dropping repeated hyperplanes (first occurrence
    /// wins, so the given order is otherwise kept).
    pub fn new(ambient_dim: usize, covectors: Vec<Covector>) -> Result<Self> {
        let mut out: Vec<Covector> = Vec::with_capacity(covectors.len());
        for c in covectors {
            qlinalg::check_len(ambient_dim, c.dim())?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        Ok(HyperplaneArrangement {
            ambient_dim,
            covectors: out,
        })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        HyperplaneArrangement {
            ambient_dim,
            covectors: Vec::new(),
        }
    }

    pub fn from_i64(ambient_dim: usize, rows: &[&[i64]]) -> Result<Self> {
        let cs = rows.iter().filter_map(|r| Covector::from_i64(r)).collect();
        Self::new(ambient_dim, cs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn covectors(&self) -> &[Covector] {
        &self.covectors
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn index_of(&self, c: &Covector) -> Option<usize> {
        self.covectors.iter().position(|x| x == c)
    }

    /// Sub-arrangement on the given indices, in that order.
    pub fn select(&self, indices: &[usize]) -> HyperplaneArrangement {
        HyperplaneArrangement {
            ambient_dim: self.ambient_dim,
            covectors: indices.iter().map(|&i| self.covectors[i].clone()).collect(),
        }
    }

    /// Indices of the hyperplanes containing `s`.
    pub fn containing(&self, s: &Subspace) -> Vec<usize> {
        (0..self.covectors.len())
            .filter(|&i| s.basis().iter().all(|b| self.covectors[i].pair(b).is_zero()))
            .collect()
    }
}

/// An intersection of hyperplanes, with every hyperplane that contains it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    pub subspace: Subspace,
    pub containing_hyperplanes: Vec<usize>,
}

impl Flat {
    pub fn of(arr: &HyperplaneArrangement, s: &Subspace) -> Result<Flat> {
        let containing = arr.containing(s);
        let sel: Vec<Covector> = containing.iter().map(|&i| arr.covectors[i].clone()).collect();
        Ok(Flat {
            subspace: qlinalg::kernel(&sel, arr.ambient_dim)?,
            containing_hyperplanes: containing,
        })
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// Every flat of the arrangement, largest first. The ambient space is the
/// empty intersection and always comes first.
pub fn flats(arr: &HyperplaneArrangement) -> Vec<Flat> {
    let top = Flat {
        subspace: Subspace::full(arr.ambient_dim),
        containing_hyperplanes: Vec::new(),
    };
    let mut seen: BTreeMap<Subspace, Flat> = BTreeMap::new();
    let mut queue = VecDeque::from([top.clone()]);
    seen.insert(top.subspace.clone(), top);
    while let Some(f) = queue.pop_front() {
        for i in 0..arr.len() {
            if f.containing_hyperplanes.contains(&i) {
                continue;
            }
            let h = qlinalg::kernel(&[arr.covectors[i].clone()], arr.ambient_dim).expect("covector lengths validated");
            let s = qlinalg::intersect(&f.subspace, &h).expect("same ambient");
            if seen.contains_key(&s) {
                continue;
            }
            let g = Flat {
                containing_hyperplanes: arr.containing(&s),
                subspace: s.clone(),
            };
            seen.insert(s, g.clone());
            queue.push_back(g);
        }
    }
    let mut out: Vec<Flat> = seen.into_values().collect();
    out.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.subspace.cmp(&b.subspace)));
    out
}

pub fn sign_vector_of(arr: &HyperplaneArrangement, v: &[Rational]) -> Result<SignVector> {
    qlinalg::check_len(arr.ambient_dim, v.len())?;
    Ok(SignVector(arr.covectors.iter().map(|c| Sign::of(&c.pair(v))).collect()))
}

/// First-nonzero composition: take `x` where it is nonzero, else `y`.
pub fn tits_compose(x: &SignVector, y: &SignVector) -> Result<SignVector> {
    if x.len() != y.len() {
        return Err(ArrangementError::LengthMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(SignVector(
        x.0.iter()
            .zip(&y.0)
            .map(|(&a, &b)| if a == Sign::Zero { b } else { a })
            .collect(),
    ))
}

/// The arrangement induced on `f`, written in `f`'s basis coordinates.
pub fn restrict(arr: &HyperplaneArrangement, f: &Subspace) -> Result<HyperplaneArrangement> {
    qlinalg::check_len(arr.ambient_dim, f.ambient_dim())?;
    let mut cs = Vec::new();
    for c in &arr.covectors {
        if let Some(r) = qlinalg::restrict_covector(c, f)? {
            cs.push(r);
        }
    }
    HyperplaneArrangement::new(f.dim(), cs)
}

/// Convenience for callers holding ambient points.
pub fn to_coordinates(f: &Subspace, v: &[Rational]) -> Option<QVector> {
    f.coordinates(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{qvec, span};
    use proptest::prelude::*;

    pub(crate) fn three_lines() -> HyperplaneArrangement {
        HyperplaneArrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, -1]]).unwrap()
    }

    fn sv(s: &str) -> SignVector {
        SignVector::parse(s).unwrap()
    }

    #[test]
    fn duplicate_hyperplanes_are_merged() {
        let arr = HyperplaneArrangement::from_i64(2, &[&[1, 0], &[-2, 0], &[0, 3]]).unwrap();
        assert_eq!(arr.len(), 2);
    }

    #[test]
    fn flats_of_three_concurrent_lines() {
        let fs = flats(&three_lines());
        assert_eq!(fs.len(), 5);
        assert!(fs[0].subspace.is_full());
        assert_eq!(fs.iter().filter(|f| f.dim() == 1).count(), 3);
        assert_eq!(fs[4].dim(), 0);
        assert_eq!(fs[4].containing_hyperplanes, vec![0, 1, 2]);
    }

    #[test]
    fn flats_of_small_arrangements() {
        assert_eq!(flats(&HyperplaneArrangement::empty(2)).len(), 1);
        let boolean = HyperplaneArrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(flats(&boolean).len(), 8);
    }

    #[test]
    fn flats_are_closed_under_intersection() {
        let arr = HyperplaneArrangement::from_i64(3, &[&[1, -1, 0], &[0, 1, -1], &[1, 0, -1], &[1, 0, 0], &[1, 1, 1]])
            .unwrap();
        let fs = flats(&arr);
        let set: std::collections::BTreeSet<_> = fs.iter().map(|f| f.subspace.clone()).collect();
        for a in &fs {
            for b in &fs {
                let i = qlinalg::intersect(&a.subspace, &b.subspace).unwrap();
                assert!(set.contains(&i));
            }
            assert_eq!(Flat::of(&arr, &a.subspace).unwrap(), *a);
        }
    }

    #[test]
    fn sign_vectors() {
        let arr = three_lines();
        assert_eq!(sign_vector_of(&arr, &qvec(&[1, 2])).unwrap(), sv("++-"));
        assert_eq!(sign_vector_of(&arr, &qvec(&[0, 0])).unwrap(), sv("000"));
        assert_eq!(sign_vector_of(&arr, &qvec(&[1, 1])).unwrap(), sv("++0"));
        assert!(sign_vector_of(&arr, &qvec(&[1])).is_err());
    }

    #[test]
    fn tits_examples() {
        assert_eq!(tits_compose(&sv("+0"), &sv("-+")).unwrap(), sv("++"));
        let x = sv("+0-");
        assert_eq!(tits_compose(&x, &x).unwrap(), x);
        let chamber = sv("+-+");
        assert_eq!(tits_compose(&chamber, &sv("000")).unwrap(), chamber);
        assert_eq!(tits_compose(&chamber, &sv("-+-")).unwrap(), chamber);
        assert!(tits_compose(&sv("+"), &sv("+-")).is_err());
    }

    #[test]
    fn restriction_examples() {
        let arr = three_lines();
        let diag = span(&[qvec(&[1, 1])], 2).unwrap();
        let r = restrict(&arr, &diag).unwrap();
        assert_eq!(r.ambient_dim(), 1);
        assert_eq!(r.len(), 1);
        let zero = restrict(&arr, &Subspace::zero(2)).unwrap();
        assert_eq!((zero.ambient_dim(), zero.len()), (0, 0));
        assert_eq!(restrict(&arr, &Subspace::full(2)).unwrap(), arr);
    }

    fn sign_strategy(n: usize) -> impl Strategy<Value = SignVector> {
        prop::collection::vec(prop_oneof![Just(Sign::Neg), Just(Sign::Zero), Just(Sign::Pos)], n).prop_map(SignVector)
    }

    proptest! {
        #[test]
        fn tits_zero_sets_intersect(x in sign_strategy(7), y in sign_strategy(7)) {
            let z = tits_compose(&x, &y).unwrap();
            let expect: Vec<usize> = x.zeros().into_iter().filter(|i| y.zeros().contains(i)).collect();
            prop_assert_eq!(z.zeros(), expect);
        }

        #[test]
        fn tits_is_associative_on_sign_vectors(
            x in sign_strategy(6), y in sign_strategy(6), z in sign_strategy(6)
        ) {
            let l = tits_compose(&tits_compose(&x, &y).unwrap(), &z).unwrap();
            let r = tits_compose(&x, &tits_compose(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
