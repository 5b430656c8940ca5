//! Double description for cones `{ x : E x = 0, A x >= 0 }` in exact integer
//! arithmetic.
//!
//! The cone is kept as `lineality + cone(rays)`. An inequality that does not
//! vanish on the lineality space trades one lineality direction for a ray;
//! otherwise the rays are split by sign and every adjacent (+, -) pair
//! contributes its crossing with the hyperplane.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::qlinalg::{dot_int, int_to_rat, make_primitive, nullspace, span, IntVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Generators {
    /// Canonical basis of the lineality space (primitive, echelon-derived).
    pub lineality: Vec<IntVector>,
    /// Extreme rays of the pointed part, reduced modulo the lineality space,
    /// primitive, sorted and duplicate-free.
    pub rays: Vec<IntVector>,
}

impl Generators {
    /// Rays plus both signs of each lineality direction.
    pub fn all(&self) -> Vec<IntVector> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }

    /// A point in the relative interior: the sum of all generators.
    pub fn interior_point(&self, n: usize) -> IntVector {
        let mut p = vec![BigInt::zero(); n];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    pub fn dim(&self, n: usize) -> usize {
        let rows: Vec<Vec<Rational>> = self.rays.iter().chain(&self.lineality).map(|r| int_to_rat(r)).collect();
        crate::qlinalg::rank(rows, n)
    }
}

fn combine(a: &BigInt, u: &[BigInt], b: &BigInt, v: &[BigInt]) -> IntVector {
    make_primitive(u.iter().zip(v).map(|(x, y)| a * x - b * y).collect())
}

pub(crate) fn double_description(n: usize, equalities: &[&[BigInt]], inequalities: &[&[BigInt]]) -> Generators {
    let eq_rows = equalities.iter().map(|e| int_to_rat(e)).collect();
    let mut lineality: Vec<IntVector> = nullspace(eq_rows, n)
        .iter()
        .filter_map(|v| crate::qlinalg::primitive_direction(v))
        .collect();
    let mut rays: Vec<IntVector> = Vec::new();
    let mut processed: Vec<&[BigInt]> = Vec::new();

    for &a in inequalities {
        let cut = lineality.iter().position(|l| !dot_int(a, l).is_zero());
        if let Some(k) = cut {
            let mut l0 = lineality.swap_remove(k);
            let mut al0 = dot_int(a, &l0);
            if al0.is_negative() {
                l0.iter_mut().for_each(|x| *x = -&*x);
                al0 = -al0;
            }
            lineality = lineality
                .iter()
                .map(|l| combine(&al0, l, &dot_int(a, l), &l0))
                .collect();
            rays = rays.iter().map(|r| combine(&al0, r, &dot_int(a, r), &l0)).collect();
            rays.push(l0);
        } else {
            let values: Vec<BigInt> = rays.iter().map(|r| dot_int(a, r)).collect();
            let tight: Vec<Vec<bool>> = rays
                .iter()
                .map(|r| processed.iter().map(|c| dot_int(c, r).is_zero()).collect())
                .collect();
            let mut next: Vec<IntVector> = rays
                .iter()
                .zip(&values)
                .filter(|(_, v)| !v.is_negative())
                .map(|(r, _)| r.clone())
                .collect();
            for (i, vi) in values.iter().enumerate().filter(|(_, v)| v.is_positive()) {
                for (j, vj) in values.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                    if !adjacent(i, j, &tight) {
                        continue;
                    }
                    next.push(combine(vi, &rays[j], vj, &rays[i]));
                }
            }
            rays = next;
        }
        processed.push(a);
    }
    canonicalize(n, lineality, rays)
}

fn adjacent(i: usize, j: usize, tight: &[Vec<bool>]) -> bool {
    let common: Vec<usize> = (0..tight[i].len()).filter(|&k| tight[i][k] && tight[j][k]).collect();
    !tight
        .iter()
        .enumerate()
        .any(|(r, t)| r != i && r != j && common.iter().all(|&k| t[k]))
}

fn canonicalize(n: usize, lineality: Vec<IntVector>, rays: Vec<IntVector>) -> Generators {
    let lin_rows: Vec<Vec<Rational>> = lineality.iter().map(|l| int_to_rat(l)).collect();
    let lin = span(&lin_rows, n).expect("lineality vectors have ambient length");
    let mut out: Vec<IntVector> = rays
        .into_iter()
        .filter_map(|r| {
            let r = int_to_rat(&r);
            let coords: Vec<Rational> = lin
                .basis()
                .iter()
                .map(|b| {
                    let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
                    r[p].clone()
                })
                .collect();
            let shift = lin.from_coordinates(&coords);
            let reduced: Vec<Rational> = r.iter().zip(&shift).map(|(x, y)| x - y).collect();
            crate::qlinalg::primitive_direction(&reduced)
        })
        .collect();
    out.sort();
    out.dedup();
    Generators {
        lineality: lin.integer_basis(),
        rays: out,
    }
}
