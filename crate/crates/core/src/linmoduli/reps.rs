use num_bigint::BigInt;
use num_traits::One;

use super::field::Field;
use super::{LinModError, QuiverSpec, Result};
use crate::qlinalg::Rational;

pub const ORBIT_SEARCH_CAP: u64 = 10_000_000;
pub const MAX_STACKY_ENTRY: usize = 3;

/// A dense matrix over a small field, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &Field, v: &[u8]) -> Vec<u8> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j]))))
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Inverse by Gauss-Jordan elimination, or `None` if singular.
    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| a.get(r, c) != 0)?;
            for j in 0..n {
                let (x, y) = (a.get(c, j), a.get(p, j));
                a.set(c, j, y);
                a.set(p, j, x);
                let (x, y) = (inv.get(c, j), inv.get(p, j));
                inv.set(c, j, y);
                inv.set(p, j, x);
            }
            let s = f.inv(a.get(c, c));
            for j in 0..n {
                a.set(c, j, f.mul(s, a.get(c, j)));
                inv.set(c, j, f.mul(s, inv.get(c, j)));
            }
            for r in 0..n {
                let m = a.get(r, c);
                if r == c || m == 0 {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(m, a.get(c, j))));
                    inv.set(r, j, f.sub(inv.get(r, j), f.mul(m, inv.get(c, j))));
                }
            }
        }
        Some(inv)
    }
}

/// A representation: one `dims[t] x dims[s]` matrix per arrow `s -> t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl Representation {
    pub fn zero(quiver: &QuiverSpec, dims: &[usize]) -> Representation {
        Representation {
            dims: dims.to_vec(),
            maps: quiver
                .arrows()
                .iter()
                .map(|&(s, t)| Matrix::zero(dims[t], dims[s]))
                .collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// `|GL_n(F_q)|`, saturating at `u64::MAX`.
pub fn gl_order(n: usize, q: u64) -> u64 {
    let qn = q.saturating_pow(n as u32);
    (0..n).fold(1u64, |acc, i| {
        acc.saturating_mul(qn.saturating_sub(q.saturating_pow(i as u32)))
    })
}

fn check_q(q: u8) -> Result<Field> {
    Field::new(q).ok_or(LinModError::UnsupportedField(q))
}

fn arrow_entries(quiver: &QuiverSpec, dims: &[usize]) -> usize {
    quiver.arrows().iter().map(|&(s, t)| dims[s] * dims[t]).sum()
}

/// `q^(Σ_{s→t} γ_s γ_t) / Π_v |GL_{γ_v}(F_q)|`.
pub fn stacky_count(quiver: &QuiverSpec, dims: &[usize], q: u8) -> Result<Rational> {
    check_q(q)?;
    quiver.check_dims(dims)?;
    if let Some(&d) = dims.iter().find(|&&d| d > MAX_STACKY_ENTRY) {
        return Err(LinModError::Bounds(format!(
            "dimension entry {d} exceeds {MAX_STACKY_ENTRY}"
        )));
    }
    let num = BigInt::from(q).pow(arrow_entries(quiver, dims) as u32);
    let den = dims
        .iter()
        .fold(BigInt::one(), |acc, &d| acc * BigInt::from(gl_order(d, q as u64)));
    Ok(Rational::new(num, den))
}

/// Every invertible `n x n` matrix with its inverse.
pub fn general_linear_group(f: &Field, n: usize) -> Vec<(Matrix, Matrix)> {
    let q = f.q() as usize;
    let total = q.pow((n * n) as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut m = Matrix::zero(n, n);
        let mut c = code;
        for k in 0..n * n {
            m.data[k] = (c % q) as u8;
            c /= q;
        }
        if let Some(inv) = m.inverse(f) {
            out.push((m, inv));
        }
    }
    out
}

fn encode(rep: &Representation, q: u64) -> u64 {
    let mut code = 0u64;
    let mut place = 1u64;
    for m in &rep.maps {
        for &x in &m.data {
            code += x as u64 * place;
            place *= q;
        }
    }
    code
}

fn decode(quiver: &QuiverSpec, dims: &[usize], mut code: u64, q: u64) -> Representation {
    let mut rep = Representation::zero(quiver, dims);
    for m in &mut rep.maps {
        for x in &mut m.data {
            *x = (code % q) as u8;
            code /= q;
        }
    }
    rep
}

/// The isomorphism classes of representations of one dimension vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepClass {
    pub dims: Vec<usize>,
    pub q: u8,
    pub representatives: Vec<Representation>,
    pub automorphism_orders: Vec<u64>,
    class_of: Vec<u32>,
}

impl RepClass {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Index of the class containing `rep`.
    pub fn class_index(&self, rep: &Representation) -> usize {
        self.class_of[encode(rep, self.q as u64) as usize] as usize
    }

    /// `Σ 1/|Aut|` over the classes.
    pub fn groupoid_cardinality(&self) -> Rational {
        self.automorphism_orders
            .iter()
            .map(|&a| Rational::new(BigInt::one(), BigInt::from(a)))
            .sum()
    }
}

/// Orbit decomposition of `Rep_γ(F_q)` under `Π_v GL_{γ_v}(F_q)` by sweeping:
/// every unmarked point spawns a class whose orbit is marked in full.
pub fn enumerate_iso_classes(quiver: &QuiverSpec, dims: &[usize], q: u8) -> Result<RepClass> {
    let f = check_q(q)?;
    quiver.check_dims(dims)?;
    let qq = q as u64;
    let entries = arrow_entries(quiver, dims) as u32;
    let space = qq.checked_pow(entries).unwrap_or(u64::MAX);
    let group_order = dims.iter().fold(1u64, |acc, &d| acc.saturating_mul(gl_order(d, qq)));
    if space.saturating_mul(group_order) > ORBIT_SEARCH_CAP {
        return Err(LinModError::CapExceeded {
            what: "orbit search space",
            cap: ORBIT_SEARCH_CAP,
        });
    }
    let groups: Vec<Vec<(Matrix, Matrix)>> = dims.iter().map(|&d| general_linear_group(&f, d)).collect();
    let mut class_of = vec![u32::MAX; space as usize];
    let mut representatives = Vec::new();
    let mut automorphism_orders = Vec::new();
    for code in 0..space {
        if class_of[code as usize] != u32::MAX {
            continue;
        }
        let id = representatives.len() as u32;
        let rep = decode(quiver, dims, code, qq);
        let mut orbit = 0u64;
        let mut choice = vec![0usize; dims.len()];
        loop {
            let moved = Representation {
                dims: dims.to_vec(),
                maps: quiver
                    .arrows()
                    .iter()
                    .zip(&rep.maps)
                    .map(|(&(s, t), m)| groups[t][choice[t]].0.mul(&f, m).mul(&f, &groups[s][choice[s]].1))
                    .collect(),
            };
            let c = encode(&moved, qq) as usize;
            if class_of[c] == u32::MAX {
                class_of[c] = id;
                orbit += 1;
            }
            let mut v = 0;
            while v < dims.len() {
                choice[v] += 1;
                if choice[v] < groups[v].len() {
                    break;
                }
                choice[v] = 0;
                v += 1;
            }
            if v == dims.len() {
                break;
            }
        }
        representatives.push(rep);
        automorphism_orders.push(group_order / orbit);
    }
    Ok(RepClass {
        dims: dims.to_vec(),
        q,
        representatives,
        automorphism_orders,
        class_of,
    })
}

/// A subspace of `F_q^n` in reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EchelonSpace {
    pub n: usize,
    pub rows: Vec<Vec<u8>>,
    pub pivots: Vec<usize>,
}

impl EchelonSpace {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its projection along the pivots; zero iff `v` lies in the space.
    pub fn reduce(&self, f: &Field, v: &[u8]) -> Vec<u8> {
        let mut y = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = y[p];
            if c != 0 {
                for (x, r) in y.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, *r));
                }
            }
        }
        y
    }

    pub fn contains(&self, f: &Field, v: &[u8]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.n).filter(|j| !self.pivots.contains(j)).collect()
    }

    pub fn contains_space(&self, f: &Field, other: &EchelonSpace) -> bool {
        other.rows.iter().all(|r| self.contains(f, r))
    }
}

/// Echelon form of the span of `vectors` in `F_q^n`.
pub fn echelon(f: &Field, n: usize, vectors: &[Vec<u8>]) -> EchelonSpace {
    let mut rows: Vec<Vec<u8>> = vectors.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let s = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(s, *x);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let m = row[c];
            if i == r || m == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = f.sub(*x, f.mul(m, *y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    EchelonSpace { n, rows, pivots }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > n {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// All `k`-dimensional subspaces of `F_q^n`.
pub fn subspaces(f: &Field, n: usize, k: usize) -> Vec<EchelonSpace> {
    let q = f.q() as usize;
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let p = &pivots;
                (p[i] + 1..n).filter(move |j| !p.contains(j)).map(move |j| (i, j))
            })
            .collect();
        for code in 0..q.pow(free.len() as u32) {
            let mut rows = vec![vec![0u8; n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            let mut c = code;
            for &(i, j) in &free {
                rows[i][j] = (c % q) as u8;
                c /= q;
            }
            out.push(EchelonSpace {
                n,
                rows,
                pivots: pivots.clone(),
            });
        }
    }
    out
}

/// Arrow-stable subspace tuples of `rep` with the given dimension vector.
pub fn subreps(quiver: &QuiverSpec, f: &Field, rep: &Representation, sub: &[usize]) -> Result<Vec<Vec<EchelonSpace>>> {
    quiver.check_dims(sub)?;
    if sub.iter().zip(&rep.dims).any(|(a, b)| a > b) {
        return Err(LinModError::Bounds(format!(
            "sub dimension {sub:?} exceeds {:?}",
            rep.dims
        )));
    }
    let choices: Vec<Vec<EchelonSpace>> = rep.dims.iter().zip(sub).map(|(&n, &k)| subspaces(f, n, k)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    if choices.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let tuple: Vec<&EchelonSpace> = idx.iter().zip(&choices).map(|(&i, c)| &c[i]).collect();
        let stable = quiver
            .arrows()
            .iter()
            .zip(&rep.maps)
            .all(|(&(s, t), m)| tuple[s].rows.iter().all(|u| tuple[t].contains(f, &m.apply(f, u))));
        if stable {
            out.push(tuple.into_iter().cloned().collect());
        }
        let mut v = 0;
        while v < idx.len() {
            idx[v] += 1;
            if idx[v] < choices[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
        if v == idx.len() {
            return Ok(out);
        }
    }
}

pub fn count_subreps(quiver: &QuiverSpec, rep: &Representation, sub: &[usize], q: u8) -> Result<usize> {
    let f = check_q(q)?;
    Ok(subreps(quiver, &f, rep, sub)?.len())
}

/// The subrepresentation on `spaces`, in the echelon bases.
pub fn restrict(quiver: &QuiverSpec, f: &Field, rep: &Representation, spaces: &[EchelonSpace]) -> Representation {
    let dims: Vec<usize> = spaces.iter().map(EchelonSpace::dim).collect();
    let maps = quiver
        .arrows()
        .iter()
        .zip(&rep.maps)
        .map(|(&(s, t), m)| {
            let mut out = Matrix::zero(dims[t], dims[s]);
            for (j, u) in spaces[s].rows.iter().enumerate() {
                let y = m.apply(f, u);
                for (i, &p) in spaces[t].pivots.iter().enumerate() {
                    out.set(i, j, y[p]);
                }
            }
            out
        })
        .collect();
    Representation { dims, maps }
}

/// The quotient representation, using the non-pivot standard vectors as a
/// basis of each quotient space.
pub fn quotient(quiver: &QuiverSpec, f: &Field, rep: &Representation, spaces: &[EchelonSpace]) -> Representation {
    let complements: Vec<Vec<usize>> = spaces.iter().map(EchelonSpace::non_pivots).collect();
    let dims: Vec<usize> = complements.iter().map(Vec::len).collect();
    let maps = quiver
        .arrows()
        .iter()
        .zip(&rep.maps)
        .map(|(&(s, t), m)| {
            let mut out = Matrix::zero(dims[t], dims[s]);
            for (j, &col) in complements[s].iter().enumerate() {
                let y = spaces[t].reduce(f, &m.column(col));
                for (i, &row) in complements[t].iter().enumerate() {
                    out.set(i, j, y[row]);
                }
            }
            out
        })
        .collect();
    Representation { dims, maps }
}
