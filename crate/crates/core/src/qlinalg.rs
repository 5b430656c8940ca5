//! Exact rational linear algebra.
//!
//! Subspaces of `Q^n` are always stored in reduced row-echelon form, so two
//! subspaces are equal exactly when their stored bases are equal. Covectors
//! are primitive integer vectors with a positive leading entry, so two
//! hyperplanes coincide exactly when their covectors do.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;
pub type QVector = Vec<Rational>;
pub type IntVector = Vec<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, LinalgError>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { expected, found })
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn int_to_rat(v: &[BigInt]) -> QVector {
    v.iter().cloned().map(Rational::from_integer).collect()
}

pub fn qvec(entries: &[i64]) -> QVector {
    entries.iter().map(|&e| rat(e)).collect()
}

pub fn ivec(entries: &[i64]) -> IntVector {
    entries.iter().map(|&e| BigInt::from(e)).collect()
}

/// Renders a rational as `num/den` (denominator always present).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `n`, `n/d` or a decimal-free signed integer pair.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn dot_int_rat(w: &[BigInt], v: &[Rational]) -> Rational {
    w.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + b * a)
}

pub fn dot_int(w: &[BigInt], v: &[BigInt]) -> BigInt {
    w.iter().zip(v).fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
}

/// Scales a rational vector to a primitive integer vector pointing the same
/// way. Returns `None` for the zero vector.
pub fn primitive_direction(v: &[Rational]) -> Option<IntVector> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: IntVector = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    Some(make_primitive(ints))
}

/// Divides an integer vector by the gcd of its entries (sign preserved).
pub fn make_primitive(mut v: IntVector) -> IntVector {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// A nonzero primitive integer linear functional on `Q^n` with positive
/// leading entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Covector(IntVector);

impl Covector {
    /// Canonicalizes an integer vector; `None` if it is zero.
    pub fn new(entries: IntVector) -> Option<Self> {
        let mut v = make_primitive(entries);
        let lead = v.iter().find(|x| !x.is_zero())?;
        if lead.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
        Some(Covector(v))
    }

    pub fn from_i64(entries: &[i64]) -> Option<Self> {
        Self::new(ivec(entries))
    }

    pub fn from_rationals(entries: &[Rational]) -> Option<Self> {
        primitive_direction(entries).and_then(Self::new)
    }

    /// Canonical covector together with the sign relating it to the input:
    /// `input = factor * canonical` with `factor` of sign `+1` or `-1`.
    pub fn with_orientation(entries: IntVector) -> Option<(Self, bool)> {
        let positive = entries.iter().find(|x| !x.is_zero())?.is_positive();
        Self::new(entries).map(|c| (c, positive))
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn pair(&self, v: &[Rational]) -> Rational {
        dot_int_rat(&self.0, v)
    }

    pub fn pair_int(&self, v: &[BigInt]) -> BigInt {
        dot_int(&self.0, v)
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Covector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        v.serialize(s)
    }
}

/// Reduced row-echelon form of the given rows; returns the nonzero rows and
/// their pivot columns.
pub fn rref(mut rows: Vec<QVector>, ncols: usize) -> (Vec<QVector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &factor * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{ x : row . x = 0 for every row }`, one vector per free column.
pub fn nullspace(rows: Vec<QVector>, ncols: usize) -> Vec<QVector> {
    let (reduced, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn rank(rows: Vec<QVector>, ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// A linear subspace of `Q^n` in canonical (reduced row-echelon) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<QVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in
    /// the subspace. In echelon form the coordinates are the pivot entries.
    pub fn coordinates(&self, v: &[Rational]) -> Option<QVector> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: QVector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.from_coordinates(&coords);
        (back.as_slice() == v).then_some(coords)
    }

    /// The ambient vector with the given coordinates.
    pub fn from_coordinates(&self, coords: &[Rational]) -> QVector {
        let mut v = vec![Rational::zero(); self.ambient_dim];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x = &*x + c * y;
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient_dim == self.ambient_dim && other.basis.iter().all(|b| self.contains(b))
    }

    /// Primitive integer covectors spanning the annihilator of the subspace.
    pub fn annihilator(&self) -> Vec<Covector> {
        nullspace(self.basis.clone(), self.ambient_dim)
            .iter()
            .filter_map(|v| Covector::from_rationals(v))
            .collect()
    }

    /// Entries of the basis in row-major order; used for lexicographic
    /// comparisons between subspaces of equal dimension.
    pub fn flattened(&self) -> Vec<Rational> {
        self.basis.iter().flatten().cloned().collect()
    }

    /// Primitive integer multiples of the basis vectors.
    pub fn integer_basis(&self) -> Vec<IntVector> {
        self.basis.iter().filter_map(|b| primitive_direction(b)).collect()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span[")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "] in Q^{}", self.ambient_dim)
    }
}

pub fn span(vectors: &[QVector], ambient_dim: usize) -> Result<Subspace> {
    for v in vectors {
        check_len(ambient_dim, v.len())?;
    }
    let (basis, pivots) = rref(vectors.to_vec(), ambient_dim);
    Ok(Subspace {
        ambient_dim,
        basis,
        pivots,
    })
}

pub fn kernel(covectors: &[Covector], ambient_dim: usize) -> Result<Subspace> {
    for c in covectors {
        check_len(ambient_dim, c.dim())?;
    }
    let rows = covectors.iter().map(|c| int_to_rat(c.entries())).collect();
    span(&nullspace(rows, ambient_dim), ambient_dim)
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_len(a.ambient_dim, b.ambient_dim)?;
    let mut ann = a.annihilator();
    ann.extend(b.annihilator());
    kernel(&ann, a.ambient_dim)
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_len(a.ambient_dim, b.ambient_dim)?;
    let mut vs = a.basis.clone();
    vs.extend(b.basis.iter().cloned());
    span(&vs, a.ambient_dim)
}

/// Restriction of `w` to `f`, written in the coordinates of `f`'s basis and
/// normalized to a primitive covector. `None` when `w` vanishes on `f`.
pub fn restrict_covector(w: &Covector, f: &Subspace) -> Result<Option<Covector>> {
    check_len(f.ambient_dim, w.dim())?;
    let values: QVector = f.basis.iter().map(|b| w.pair(b)).collect();
    Ok(Covector::from_rationals(&values))
}

/// Integer weights restricted to a subspace, in its coordinates (not
/// normalized; may be zero).
pub fn restrict_weight(w: &[BigInt], f: &Subspace) -> QVector {
    f.basis.iter().map(|b| dot_int_rat(w, b)).collect()
}

/// Square integer matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: Vec<IntVector>,
}

impl IntMatrix {
    pub fn new(rows: Vec<IntVector>) -> Self {
        IntMatrix { rows }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        IntMatrix { rows }
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows.iter().all(|r| r.len() == self.rows.len())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.dim();
        let m = other.rows.first().map_or(0, Vec::len);
        let rows = (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| (0..other.dim()).fold(BigInt::zero(), |acc, k| acc + &self.rows[i][k] * &other.rows[k][j]))
                    .collect()
            })
            .collect();
        IntMatrix { rows }
    }

    /// `M v` for a rational column vector.
    pub fn apply(&self, v: &[Rational]) -> QVector {
        self.rows.iter().map(|r| dot_int_rat(r, v)).collect()
    }

    pub fn apply_int(&self, v: &[BigInt]) -> IntVector {
        self.rows.iter().map(|r| dot_int(r, v)).collect()
    }

    /// Row vector `w M` (how the matrix pulls back a weight).
    pub fn pull_back(&self, w: &[BigInt]) -> IntVector {
        let m = self.rows.first().map_or(0, Vec::len);
        (0..m)
            .map(|j| {
                w.iter()
                    .zip(&self.rows)
                    .fold(BigInt::zero(), |acc, (a, r)| acc + a * &r[j])
            })
            .collect()
    }

    pub fn image(&self, s: &Subspace) -> Subspace {
        let imgs: Vec<QVector> = s.basis().iter().map(|b| self.apply(b)).collect();
        span(&imgs, self.dim()).expect("square matrix preserves dimension")
    }

    pub fn determinant(&self) -> Rational {
        let n = self.dim();
        let mut a: Vec<QVector> = self.rows.iter().map(|r| int_to_rat(r)).collect();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = &det * &a[c][c];
            let pivot = a[c].clone();
            for row in a.iter_mut().skip(c + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sub(vs: &[&[i64]], n: usize) -> Subspace {
        let v: Vec<QVector> = vs.iter().map(|x| qvec(x)).collect();
        span(&v, n).unwrap()
    }

    #[test]
    fn span_examples() {
        let s = sub(&[&[1, 2], &[2, 4]], 2);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[qvec(&[1, 2])]);
        assert_eq!(sub(&[], 2), Subspace::zero(2));
        assert_eq!(sub(&[&[1, 0], &[1, 1]], 2), Subspace::full(2));
        assert!(span(&[qvec(&[1, 2, 3])], 2).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&[], 2).unwrap(), Subspace::full(2));
        let coords = [
            Covector::from_i64(&[1, 0]).unwrap(),
            Covector::from_i64(&[0, 1]).unwrap(),
        ];
        assert_eq!(kernel(&coords, 2).unwrap(), Subspace::zero(2));
        let diag = kernel(&[Covector::from_i64(&[1, -1]).unwrap()], 2).unwrap();
        assert_eq!(diag, sub(&[&[1, 1]], 2));
        assert!(kernel(&coords, 3).is_err());
    }

    #[test]
    fn intersect_examples() {
        let diag = sub(&[&[1, 1]], 2);
        assert_eq!(intersect(&Subspace::full(2), &diag).unwrap(), diag);
        let x = sub(&[&[1, 0]], 2);
        let y = sub(&[&[0, 1]], 2);
        assert_eq!(intersect(&x, &y).unwrap(), Subspace::zero(2));
        let a = sub(&[&[1, 0, 0], &[0, 1, 0]], 3);
        let b = sub(&[&[0, 1, 0], &[0, 0, 1]], 3);
        assert_eq!(intersect(&a, &b).unwrap(), sub(&[&[0, 1, 0]], 3));
        assert_eq!(intersect(&a, &a).unwrap(), a);
    }

    #[test]
    fn restrict_examples() {
        let diag = sub(&[&[1, 1]], 2);
        let w = Covector::from_i64(&[1, -1]).unwrap();
        assert_eq!(restrict_covector(&w, &diag).unwrap(), None);
        let e1 = Covector::from_i64(&[1, 0]).unwrap();
        assert_eq!(restrict_covector(&e1, &Subspace::full(2)).unwrap(), Some(e1.clone()));
        // (2,4) is normalized to (1,2) on construction; restriction gives (3) -> (1).
        let w = Covector::new(ivec(&[2, 4])).unwrap();
        assert_eq!(w.entries(), ivec(&[1, 2]).as_slice());
        let r = restrict_covector(&w, &diag).unwrap().unwrap();
        assert_eq!(r.entries(), ivec(&[1]).as_slice());
    }

    #[test]
    fn covector_canonical_sign() {
        let c = Covector::from_i64(&[0, -2, 4]).unwrap();
        assert_eq!(c.entries(), ivec(&[0, 1, -2]).as_slice());
        assert!(Covector::from_i64(&[0, 0]).is_none());
        let half = Covector::from_rationals(&[Rational::new(1.into(), 2.into()), rat(-3)]).unwrap();
        assert_eq!(half.entries(), ivec(&[1, -6]).as_slice());
    }

    #[test]
    fn determinant_of_swap() {
        let m = IntMatrix::new(vec![ivec(&[0, 1]), ivec(&[1, 0])]);
        assert_eq!(m.determinant(), rat(-1));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6"), Some(Rational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("-4"), Some(rat(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&rat(2)), "2/1");
    }

    fn small_vectors(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=n + 1)
    }

    proptest! {
        #[test]
        fn span_is_order_independent(vs in small_vectors(4), seed in any::<u64>()) {
            let q: Vec<QVector> = vs.iter().map(|v| qvec(v)).collect();
            let mut shuffled = q.clone();
            let len = shuffled.len();
            if len > 1 {
                let k = (seed as usize) % len;
                shuffled.rotate_left(k);
                shuffled.swap(0, len - 1);
            }
            prop_assert_eq!(span(&q, 4).unwrap(), span(&shuffled, 4).unwrap());
        }

        #[test]
        fn kernel_of_annihilator_is_identity(vs in small_vectors(5)) {
            let q: Vec<QVector> = vs.iter().map(|v| qvec(v)).collect();
            let s = span(&q, 5).unwrap();
            prop_assert_eq!(kernel(&s.annihilator(), 5).unwrap(), s);
        }

        #[test]
        fn grassmann_dimension_formula(a in small_vectors(4), b in small_vectors(4)) {
            let sa = span(&a.iter().map(|v| qvec(v)).collect::<Vec<_>>(), 4).unwrap();
            let sb = span(&b.iter().map(|v| qvec(v)).collect::<Vec<_>>(), 4).unwrap();
            let i = intersect(&sa, &sb).unwrap();
            let s = sum(&sa, &sb).unwrap();
            prop_assert_eq!(i.dim() + s.dim(), sa.dim() + sb.dim());
            prop_assert!(sa.contains_subspace(&i) && sb.contains_subspace(&i));
        }
    }
}
