use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::dd::{double_description, Generators};
use super::{ArrangementError, HyperplaneArrangement, Result, Sign};
use crate::qlinalg::{IntVector, Rational};

/// Constraint imposed by one covector on a cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Bound {
    Free,
    Zero,
    NonNeg,
    NonPos,
}

impl Bound {
    fn from_values<'a>(values: impl Iterator<Item = &'a BigInt>) -> Bound {
        let (mut pos, mut neg) = (false, false);
        for v in values {
            pos |= v.is_positive();
            neg |= v.is_negative();
        }
        match (pos, neg) {
            (false, false) => Bound::Zero,
            (true, false) => Bound::NonNeg,
            (false, true) => Bound::NonPos,
            (true, true) => Bound::Free,
        }
    }
}

/// Which half-spaces of a hyperplane a cone arrangement may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Orientation {
    pub pos: bool,
    pub neg: bool,
}

impl Orientation {
    pub const BOTH: Orientation = Orientation { pos: true, neg: true };
}

/// A polyhedral cone `C_I` of an arrangement, in saturated form.
///
/// `bounds[i]` records the strongest sign condition covector `i` satisfies on
/// the whole cone, so implied equalities and inequalities are always explicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrCone {
    ambient_dim: usize,
    bounds: Vec<Bound>,
    extreme_rays: Vec<IntVector>,
    lineality: Vec<IntVector>,
    dim: usize,
}

impl ArrCone {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn bounds(&self) -> &[Bound] {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme rays of the pointed part.
    pub fn extreme_rays(&self) -> &[IntVector] {
        &self.extreme_rays
    }

    /// Canonical basis of the lineality space.
    pub fn lineality(&self) -> &[IntVector] {
        &self.lineality
    }

    /// Extreme rays plus both signs of each lineality direction; the cone is
    /// the nonnegative span of this list.
    pub fn generators(&self) -> Vec<IntVector> {
        Generators {
            lineality: self.lineality.clone(),
            rays: self.extreme_rays.clone(),
        }
        .all()
    }

    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.bounds.len())
            .filter(|&i| self.bounds[i] == Bound::Zero)
            .collect()
    }

    /// Covectors (with orientation) that are nonnegative but not identically
    /// zero on the cone.
    pub fn nonneg_set(&self) -> Vec<(usize, Sign)> {
        self.bounds
            .iter()
            .enumerate()
            .filter_map(|(i, b)| match b {
                Bound::NonNeg => Some((i, Sign::Pos)),
                Bound::NonPos => Some((i, Sign::Neg)),
                _ => None,
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim == self.ambient_dim
    }

    /// A point of the relative interior; nonzero unless the cone is.
    pub fn interior_point(&self) -> IntVector {
        let mut p = vec![BigInt::zero(); self.ambient_dim];
        for r in self.extreme_rays.iter().chain(&self.lineality) {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    pub fn contains(&self, arr: &HyperplaneArrangement, v: &[Rational]) -> bool {
        arr.covectors().iter().zip(&self.bounds).all(|(c, b)| {
            let s = Sign::of(&c.pair(v));
            match b {
                Bound::Free => true,
                Bound::Zero => s == Sign::Zero,
                Bound::NonNeg => s != Sign::Neg,
                Bound::NonPos => s != Sign::Pos,
            }
        })
    }
}

fn saturate(arr: &HyperplaneArrangement, gens: &[IntVector]) -> Vec<Bound> {
    arr.covectors()
        .iter()
        .map(|c| {
            let values: Vec<BigInt> = gens.iter().map(|g| c.pair_int(g)).collect();
            Bound::from_values(values.iter())
        })
        .collect()
}

/// The cone cut out by the given bounds, saturated.
pub fn cone_from_bounds(arr: &HyperplaneArrangement, bounds: &[Bound]) -> Result<ArrCone> {
    if bounds.len() != arr.len() {
        return Err(ArrangementError::LengthMismatch {
            expected: arr.len(),
            found: bounds.len(),
        });
    }
    let n = arr.ambient_dim();
    let mut eqs: Vec<IntVector> = Vec::new();
    let mut ineqs: Vec<IntVector> = Vec::new();
    for (c, b) in arr.covectors().iter().zip(bounds) {
        match b {
            Bound::Free => {}
            Bound::Zero => eqs.push(c.entries().to_vec()),
            Bound::NonNeg => ineqs.push(c.entries().to_vec()),
            Bound::NonPos => ineqs.push(c.entries().iter().map(|x| -x).collect()),
        }
    }
    let er: Vec<&[BigInt]> = eqs.iter().map(|v| v.as_slice()).collect();
    let ir: Vec<&[BigInt]> = ineqs.iter().map(|v| v.as_slice()).collect();
    let gens = double_description(n, &er, &ir);
    Ok(ArrCone {
        ambient_dim: n,
        bounds: saturate(arr, &gens.all()),
        dim: gens.dim(n),
        extreme_rays: gens.rays,
        lineality: gens.lineality,
    })
}

/// `C_I` with `I` given as a set of forced zeros and oriented nonnegativity
/// constraints.
pub fn cone_from_constraints(
    arr: &HyperplaneArrangement,
    zero_set: &[usize],
    nonneg_set: &[(usize, Sign)],
) -> Result<ArrCone> {
    let mut bounds = vec![Bound::Free; arr.len()];
    let mut tighten = |i: usize, b: Bound| -> Result<()> {
        let slot = bounds.get_mut(i).ok_or(ArrangementError::BadIndex(i))?;
        *slot = match (*slot, b) {
            (Bound::Free, b) => b,
            (a, b) if a == b => a,
            _ => Bound::Zero,
        };
        Ok(())
    };
    for &i in zero_set {
        tighten(i, Bound::Zero)?;
    }
    for &(i, s) in nonneg_set {
        match s {
            Sign::Pos => tighten(i, Bound::NonNeg)?,
            Sign::Neg => tighten(i, Bound::NonPos)?,
            Sign::Zero => tighten(i, Bound::Zero)?,
        }
    }
    cone_from_bounds(arr, &bounds)
}

/// An arrangement together with the half-spaces each hyperplane contributes
/// to its cone arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConeArrangement {
    pub arrangement: HyperplaneArrangement,
    pub orientations: Vec<Orientation>,
}

impl ConeArrangement {
    pub fn symmetric(arr: HyperplaneArrangement) -> Self {
        let orientations = vec![Orientation::BOTH; arr.len()];
        ConeArrangement {
            arrangement: arr,
            orientations,
        }
    }

    /// The smallest cone of the arrangement containing every given vector:
    /// the intersection of all admissible half-spaces that contain them.
    pub fn minimal_cone_containing(&self, rays: &[Vec<Rational>]) -> Result<ArrCone> {
        let arr = &self.arrangement;
        for r in rays {
            crate::qlinalg::check_len(arr.ambient_dim(), r.len())?;
        }
        let bounds: Vec<Bound> = arr
            .covectors()
            .iter()
            .zip(&self.orientations)
            .map(|(c, o)| {
                let (mut pos, mut neg) = (false, false);
                for r in rays {
                    match Sign::of(&c.pair(r)) {
                        Sign::Pos => pos = true,
                        Sign::Neg => neg = true,
                        Sign::Zero => {}
                    }
                }
                match (pos || !o.neg, neg || !o.pos) {
                    (false, false) => Bound::Zero,
                    (false, true) => Bound::NonPos,
                    (true, false) => Bound::NonNeg,
                    (true, true) => Bound::Free,
                }
            })
            .collect();
        cone_from_bounds(arr, &bounds)
    }
}

pub fn minimal_cone_containing(arr: &HyperplaneArrangement, rays: &[Vec<Rational>]) -> Result<ArrCone> {
    ConeArrangement::symmetric(arr.clone()).minimal_cone_containing(rays)
}
