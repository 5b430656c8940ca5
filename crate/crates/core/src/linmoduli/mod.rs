//! Linear moduli stacks of quiver representations.
//!
//! The component lattice is modelled over the class monoid `N^k` of
//! dimension vectors: special faces are tuples of classes, morphisms of the
//! Hall category are ordered block partitions, and the counting Hall algebra
//! over `F_2`, `F_3` or `F_4` is computed exactly by orbit enumeration.

mod field;
mod hall;
mod reps;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use thiserror::Error;

use crate::document::QuiverDoc;
use crate::qlinalg::{IntMatrix, IntVector};
use crate::stackmodel::{self, catalog, Caps, QuotientStackSpec, StackError};

pub use field::Field;
pub use hall::{hall_product, verify_hall_associativity, ClassId, HallAlgebra, HallAssociativityReport, HallElement};
pub use reps::{
    count_subreps, enumerate_iso_classes, gl_order, quotient, restrict, stacky_count, subreps, subspaces, EchelonSpace,
    Matrix, RepClass, Representation, ORBIT_SEARCH_CAP,
};

pub const MAX_FACE_ENTRY: usize = 4;
pub const MAX_HALL_OBJECTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinModError {
    #[error("invalid quiver: {0}")]
    Invalid(String),
    #[error("only q in {{2, 3, 4}} is supported (got {0})")]
    UnsupportedField(u8),
    #[error("out of bounds: {0}")]
    Bounds(String),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("class {0} was not enumerated")]
    ClassNotEnumerated(String),
    #[error(transparent)]
    Stack(#[from] StackError),
}

impl LinModError {
    pub fn is_cap(&self) -> bool {
        match self {
            LinModError::CapExceeded { .. } => true,
            LinModError::Stack(e) => e.is_cap(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, LinModError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuiverSpec {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

impl QuiverSpec {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<QuiverSpec> {
        if let Some((i, _)) = arrows
            .iter()
            .enumerate()
            .find(|(_, &(s, t))| s >= vertex_count || t >= vertex_count)
        {
            return Err(LinModError::Invalid(format!("arrows[{i}] has a vertex out of range")));
        }
        Ok(QuiverSpec { vertex_count, arrows })
    }

    pub fn from_doc(doc: &QuiverDoc) -> Result<QuiverSpec> {
        QuiverSpec::new(doc.vertices, doc.arrows.iter().map(|a| (a[0], a[1])).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub(crate) fn check_dims(&self, dims: &[usize]) -> Result<()> {
        if dims.len() != self.vertex_count {
            return Err(LinModError::Bounds(format!(
                "dimension vector has length {} for {} vertices",
                dims.len(),
                self.vertex_count
            )));
        }
        Ok(())
    }

    /// `χ(a, b) = Σ_v a_v b_v - Σ_{s→t} a_s b_t`.
    pub fn euler_form(&self, a: &[usize], b: &[usize]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(x, y)| (x * y) as i64).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| (a[s] * b[t]) as i64).sum();
        diag - off
    }

    /// Whether the vertices where `dims` is nonzero form a connected
    /// subgraph of the underlying undirected graph.
    pub fn support_is_connected(&self, dims: &[usize]) -> bool {
        let support: Vec<usize> = (0..self.vertex_count).filter(|&v| dims[v] > 0).collect();
        let Some(&start) = support.first() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(s, t) in &self.arrows {
                for (a, b) in [(s, t), (t, s)] {
                    if a == v && dims[b] > 0 && seen.insert(b) {
                        stack.push(b);
                    }
                }
            }
        }
        seen.len() == support.len()
    }
}

/// Dimension vectors of the given total.
pub fn dimension_vectors(k: usize, total: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in dimension_vectors(k - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A tuple of nonzero classes, kept sorted so that it names a special face
/// up to the Weyl group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassTuple {
    pub classes: Vec<Vec<usize>>,
}

impl ClassTuple {
    pub fn new(mut classes: Vec<Vec<usize>>) -> Result<ClassTuple> {
        if classes.iter().any(|c| c.iter().all(|&x| x == 0)) {
            return Err(LinModError::Invalid("class tuples contain only nonzero classes".into()));
        }
        classes.sort();
        Ok(ClassTuple { classes })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn total(&self, k: usize) -> Vec<usize> {
        let mut t = vec![0; k];
        for c in &self.classes {
            for (x, y) in t.iter_mut().zip(c) {
                *x += y;
            }
        }
        t
    }
}

/// Classes with a partial order on their positions; `i ⪯ j` reads as the
/// cone inequality `x_i >= x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationIndex {
    pub classes: Vec<Vec<usize>>,
    pub partial_order: BTreeSet<(usize, usize)>,
}

impl FiltrationIndex {
    /// Closes `relations` reflexively and transitively and checks
    /// antisymmetry.
    pub fn new(classes: Vec<Vec<usize>>, relations: &[(usize, usize)]) -> Result<FiltrationIndex> {
        let n = classes.len();
        let mut order: BTreeSet<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        for &(i, j) in relations {
            if i >= n || j >= n {
                return Err(LinModError::Invalid(format!("relation ({i}, {j}) out of range")));
            }
            order.insert((i, j));
        }
        loop {
            let extra: Vec<(usize, usize)> = order
                .iter()
                .flat_map(|&(a, b)| order.range((b, 0)..(b + 1, 0)).map(move |&(_, c)| (a, c)))
                .filter(|p| !order.contains(p))
                .collect();
            if extra.is_empty() {
                break;
            }
            order.extend(extra);
        }
        if order.iter().any(|&(a, b)| a != b && order.contains(&(b, a))) {
            return Err(LinModError::Invalid("relation is not antisymmetric".into()));
        }
        Ok(FiltrationIndex {
            classes,
            partial_order: order,
        })
    }

    /// The total order `1 ⪯ 2 ⪯ ... ⪯ n`: filtrations with stepwise
    /// quotients in the given order.
    pub fn total(classes: Vec<Vec<usize>>) -> FiltrationIndex {
        let n = classes.len();
        let order = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        FiltrationIndex {
            classes,
            partial_order: order,
        }
    }

    pub fn is_total(&self) -> bool {
        let n = self.classes.len();
        (0..n).all(|i| (0..n).all(|j| self.partial_order.contains(&(i, j)) || self.partial_order.contains(&(j, i))))
    }
}

/// Decides which classes are non-splittable (`M`).
pub type ClassPredicate<'a> = &'a dyn Fn(&QuiverSpec, &[usize]) -> bool;

/// The default `M`: a class splits off as a product exactly when its
/// support falls apart into pieces with no arrows between them.
pub fn connected_support(quiver: &QuiverSpec, dims: &[usize]) -> bool {
    quiver.support_is_connected(dims)
}

pub fn all_nonzero(_: &QuiverSpec, dims: &[usize]) -> bool {
    dims.iter().any(|&x| x > 0)
}

pub fn special_faces_lms(quiver: &QuiverSpec, dims: &[usize]) -> Result<Vec<ClassTuple>> {
    special_faces_lms_with(quiver, dims, &connected_support)
}

/// Unordered decompositions of `dims` into classes in `M`, shortest first.
pub fn special_faces_lms_with(quiver: &QuiverSpec, dims: &[usize], m: ClassPredicate) -> Result<Vec<ClassTuple>> {
    quiver.check_dims(dims)?;
    if let Some(&d) = dims.iter().find(|&&d| d > MAX_FACE_ENTRY) {
        return Err(LinModError::Bounds(format!(
            "dimension entry {d} exceeds {MAX_FACE_ENTRY}"
        )));
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let total: usize = dims.iter().sum();
    for t in 1..=total {
        for d in dimension_vectors(dims.len(), t) {
            if d.iter().zip(dims).all(|(a, b)| a <= b) && m(quiver, &d) {
                parts.push(d);
            }
        }
    }
    parts.sort();
    let mut out = Vec::new();
    let mut current = Vec::new();
    decompose(dims, &parts, parts.len(), &mut current, &mut out);
    let mut tuples: Vec<ClassTuple> = out
        .into_iter()
        .map(|c| ClassTuple::new(c).expect("parts are nonzero"))
        .collect();
    tuples.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(tuples)
}

/// Multisets of `parts[..limit]` summing to `rest`, choosing parts in
/// non-increasing index order.
fn decompose(
    rest: &[usize],
    parts: &[Vec<usize>],
    limit: usize,
    current: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if rest.iter().all(|&x| x == 0) {
        out.push(current.clone());
        return;
    }
    for i in (0..limit).rev() {
        let p = &parts[i];
        if p.iter().zip(rest).all(|(a, b)| a <= b) {
            let next: Vec<usize> = rest.iter().zip(p).map(|(a, b)| a - b).collect();
            current.push(p.clone());
            decompose(&next, parts, i + 1, current, out);
            current.pop();
        }
    }
}

/// `Rep_γ / GL_γ` as a linear quotient stack: one torus coordinate per basis
/// vector, arrow weights `e_l - e_k`, roots of each `GL_{γ_v}`, and the
/// symmetric groups on each vertex's coordinates as Weyl group.
pub fn quotient_stack_spec(quiver: &QuiverSpec, dims: &[usize]) -> Result<QuotientStackSpec> {
    quiver.check_dims(dims)?;
    let n: usize = dims.iter().sum();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let unit = |i: usize, j: usize| -> IntVector {
        let mut w = vec![BigInt::from(0); n];
        w[i] += 1;
        w[j] -= 1;
        w
    };
    let mut weights = Vec::new();
    for &(s, t) in quiver.arrows() {
        for k in offsets[s]..offsets[s] + dims[s] {
            for l in offsets[t]..offsets[t] + dims[t] {
                weights.push(unit(l, k));
            }
        }
    }
    let mut roots = Vec::new();
    let mut gens: Vec<IntMatrix> = Vec::new();
    for (v, &d) in dims.iter().enumerate() {
        roots.extend(catalog::type_a_roots(n, offsets[v], d));
        for i in offsets[v]..(offsets[v] + d).saturating_sub(1) {
            let mut rows = IntMatrix::identity(n).rows().to_vec();
            rows.swap(i, i + 1);
            gens.push(IntMatrix::new(rows));
        }
    }
    Ok(QuotientStackSpec::new(n, weights, roots, gens, Caps::default())?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    /// Special-face W-orbits of `Rep_γ / GL_γ`, counted by dimension.
    pub stack_orbits: BTreeMap<usize, usize>,
    /// Class tuples, counted by length.
    pub tuples: BTreeMap<usize, usize>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.stack_orbits == self.tuples
    }
}

pub fn cross_check_special_faces(quiver: &QuiverSpec, dims: &[usize]) -> Result<CrossCheck> {
    let spec = quotient_stack_spec(quiver, dims)?;
    let mut stack_orbits = BTreeMap::new();
    for o in stackmodel::enumerate_special_faces(&spec)? {
        *stack_orbits.entry(o.dim()).or_insert(0) += 1;
    }
    let mut tuples = BTreeMap::new();
    for t in special_faces_lms(quiver, dims)? {
        *tuples.entry(t.len()).or_insert(0) += 1;
    }
    Ok(CrossCheck { stack_orbits, tuples })
}

/// Decides whether the relative order of two classes in a block may be
/// forgotten (the direct sum map between them is étale).
pub type IdentificationPredicate<'a> = &'a dyn Fn(&QuiverSpec, &[usize], &[usize]) -> bool;

pub fn never_identify(_: &QuiverSpec, _: &[usize], _: &[usize]) -> bool {
    false
}

/// Vanishing symmetrized Euler form: the necessary condition for the direct
/// sum map to be étale.
pub fn euler_symmetric_zero(quiver: &QuiverSpec, a: &[usize], b: &[usize]) -> bool {
    quiver.euler_form(a, b) + quiver.euler_form(b, a) == 0
}

/// A morphism between class tuples: `blocks[i]` lists, in order, the
/// positions of the target refining position `i` of the source.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LmsMorphism {
    pub source: usize,
    pub target: usize,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct LmsHallCategory {
    pub objects: Vec<ClassTuple>,
    pub morphisms: Vec<LmsMorphism>,
    pub identities: Vec<usize>,
    pub composition: BTreeMap<(usize, usize), usize>,
    /// Whether identifying orders under the vanishing-Euler-form test would
    /// merge any morphisms.
    pub identification_sensitive: bool,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Per block: its members and the order relations that survive
/// identification.
type OrderKey = Vec<(Vec<usize>, Vec<(usize, usize)>)>;

type MorphismIndex = BTreeMap<(usize, usize, OrderKey), usize>;

fn order_key(
    quiver: &QuiverSpec,
    target: &ClassTuple,
    blocks: &[Vec<usize>],
    identify: IdentificationPredicate,
) -> OrderKey {
    blocks
        .iter()
        .map(|b| {
            let mut pairs = Vec::new();
            for (x, &j) in b.iter().enumerate() {
                for &k in &b[x + 1..] {
                    if !identify(quiver, &target.classes[j], &target.classes[k]) {
                        pairs.push((j, k));
                    }
                }
            }
            pairs.sort();
            let mut members = b.clone();
            members.sort();
            (members, pairs)
        })
        .collect()
}

pub fn hall_category_lms(quiver: &QuiverSpec, bound: &[usize]) -> Result<LmsHallCategory> {
    hall_category_lms_with(quiver, bound, &never_identify)
}

/// Objects are the class tuples of total class at most `bound`; a morphism
/// `(γ_i) -> (γ'_j)` assigns each `j` to a block `i` with
/// `γ_i = Σ_{j in block i} γ'_j` and orders every block. Composition
/// concatenates orders.
pub fn hall_category_lms_with(
    quiver: &QuiverSpec,
    bound: &[usize],
    identify: IdentificationPredicate,
) -> Result<LmsHallCategory> {
    quiver.check_dims(bound)?;
    let k = quiver.vertex_count();
    let mut objects = Vec::new();
    let total: usize = bound.iter().sum();
    for t in 0..=total {
        for d in dimension_vectors(k, t) {
            if d.iter().zip(bound).all(|(a, b)| a <= b) {
                objects.extend(special_faces_lms(quiver, &d)?);
            }
        }
    }
    if objects.len() > MAX_HALL_OBJECTS {
        return Err(LinModError::CapExceeded {
            what: "Hall category objects",
            cap: MAX_HALL_OBJECTS as u64,
        });
    }
    let build = |identify: IdentificationPredicate| -> (Vec<LmsMorphism>, MorphismIndex) {
        let mut morphisms = Vec::new();
        let mut index = BTreeMap::new();
        for (a, src) in objects.iter().enumerate() {
            for (b, dst) in objects.iter().enumerate() {
                if src.total(k) != dst.total(k) || src.len() > dst.len() {
                    continue;
                }
                let (n, m) = (src.len(), dst.len());
                let mut assign = vec![0usize; m];
                loop {
                    let mut blocks = vec![Vec::new(); n];
                    for (j, &i) in assign.iter().enumerate() {
                        blocks[i].push(j);
                    }
                    let sums_match = blocks.iter().zip(&src.classes).all(|(blk, c)| {
                        let mut s = vec![0; k];
                        for &j in blk {
                            for (x, y) in s.iter_mut().zip(&dst.classes[j]) {
                                *x += y;
                            }
                        }
                        &s == c
                    });
                    if sums_match {
                        let orders: Vec<Vec<Vec<usize>>> = blocks.iter().map(|b| permutations(b)).collect();
                        let mut pick = vec![0usize; n];
                        loop {
                            let chosen: Vec<Vec<usize>> =
                                pick.iter().zip(&orders).map(|(&p, o)| o[p].clone()).collect();
                            let key = (a, b, order_key(quiver, dst, &chosen, identify));
                            if let std::collections::btree_map::Entry::Vacant(e) = index.entry(key) {
                                e.insert(morphisms.len());
                                morphisms.push(LmsMorphism {
                                    source: a,
                                    target: b,
                                    blocks: chosen,
                                });
                            }
                            if !advance(&mut pick, |i| orders[i].len()) {
                                break;
                            }
                        }
                    }
                    if n == 0 || !advance(&mut assign, |_| n) {
                        break;
                    }
                }
            }
        }
        (morphisms, index)
    };
    let (morphisms, index) = build(identify);
    let (euler_merged, _) = build(&euler_symmetric_zero);
    let identification_sensitive = euler_merged.len() != morphisms.len();
    let identities = (0..objects.len())
        .map(|a| {
            let blocks: Vec<Vec<usize>> = (0..objects[a].len()).map(|j| vec![j]).collect();
            index[&(a, a, order_key(quiver, &objects[a], &blocks, identify))]
        })
        .collect();
    let mut composition = BTreeMap::new();
    for (i, f) in morphisms.iter().enumerate() {
        for (j, g) in morphisms.iter().enumerate() {
            if f.target != g.source {
                continue;
            }
            let blocks: Vec<Vec<usize>> = f
                .blocks
                .iter()
                .map(|b| b.iter().flat_map(|&x| g.blocks[x].iter().copied()).collect())
                .collect();
            let key = (
                f.source,
                g.target,
                order_key(quiver, &objects[g.target], &blocks, identify),
            );
            let k = *index
                .get(&key)
                .ok_or_else(|| LinModError::Invalid(format!("composite of {i} and {j} is not a morphism")))?;
            composition.insert((i, j), k);
        }
    }
    Ok(LmsHallCategory {
        objects,
        morphisms,
        identities,
        composition,
        identification_sensitive,
    })
}

/// Odometer step over `digits[i] < radix(i)`; false once it wraps.
fn advance(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for (i, d) in digits.iter_mut().enumerate() {
        *d += 1;
        if *d < radix(i) {
            return true;
        }
        *d = 0;
    }
    false
}

impl LmsHallCategory {
    pub fn compose(&self, first: usize, second: usize) -> Option<usize> {
        self.composition.get(&(first, second)).copied()
    }

    /// Number of composable triples checked and the failing ones, including
    /// unit-law failures as `(i, i, i)`.
    pub fn check_associativity(&self) -> (usize, Vec<(usize, usize, usize)>) {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            out.entry(m.source).or_default().push(i);
        }
        let none = Vec::new();
        let mut triples = 0;
        let mut failures = Vec::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            if self.compose(self.identities[m.source], i) != Some(i)
                || self.compose(i, self.identities[m.target]) != Some(i)
            {
                failures.push((i, i, i));
            }
            for &j in out.get(&m.target).unwrap_or(&none) {
                for &k in out.get(&self.morphisms[j].target).unwrap_or(&none) {
                    triples += 1;
                    let l = self.compose(i, j).and_then(|x| self.compose(x, k));
                    let r = self.compose(j, k).and_then(|x| self.compose(i, x));
                    if l.is_none() || l != r {
                        failures.push((i, j, k));
                    }
                }
            }
        }
        (triples, failures)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn point() -> QuiverSpec {
        QuiverSpec::new(1, vec![]).unwrap()
    }

    fn a2() -> QuiverSpec {
        QuiverSpec::new(2, vec![(0, 1)]).unwrap()
    }

    fn tuple(cs: &[&[usize]]) -> ClassTuple {
        ClassTuple::new(cs.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn quiver_validation() {
        assert!(QuiverSpec::new(2, vec![(0, 2)]).is_err());
        assert!(QuiverSpec::new(1, vec![(0, 0)]).is_ok());
    }

    #[test]
    fn special_face_examples() {
        assert_eq!(
            special_faces_lms(&a2(), &[1, 1]).unwrap(),
            vec![tuple(&[&[1, 1]]), tuple(&[&[1, 0], &[0, 1]])]
        );
        assert_eq!(special_faces_lms(&a2(), &[0, 0]).unwrap(), vec![tuple(&[])]);
        assert_eq!(
            special_faces_lms(&point(), &[2]).unwrap(),
            vec![tuple(&[&[2]]), tuple(&[&[1], &[1]])]
        );
        assert!(special_faces_lms(&point(), &[5]).is_err());
    }

    #[test]
    fn partitions_of_n() {
        let counts: Vec<usize> = (1..=4)
            .map(|n| special_faces_lms(&point(), &[n]).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 3, 5]);
    }

    #[test]
    fn disconnected_supports_split() {
        let two = QuiverSpec::new(2, vec![]).unwrap();
        assert_eq!(special_faces_lms(&two, &[1, 1]).unwrap().len(), 1);
        assert_eq!(special_faces_lms_with(&two, &[1, 1], &all_nonzero).unwrap().len(), 2);
        assert!(cross_check_special_faces(&two, &[1, 1]).unwrap().agrees());
    }

    #[test]
    fn cross_check_examples() {
        for (quiver, dims) in [(a2(), vec![1, 1]), (point(), vec![1]), (point(), vec![2])] {
            let c = cross_check_special_faces(&quiver, &dims).unwrap();
            assert!(c.agrees(), "{c:?}");
        }
        let c = cross_check_special_faces(&a2(), &[1, 1]).unwrap();
        assert_eq!(c.tuples.values().sum::<usize>(), 2);
    }

    #[test]
    fn cross_check_wider() {
        let quivers = [
            point(),
            a2(),
            QuiverSpec::new(1, vec![(0, 0)]).unwrap(),
            QuiverSpec::new(3, vec![(0, 1), (1, 2)]).unwrap(),
            QuiverSpec::new(3, vec![(0, 1)]).unwrap(),
        ];
        for quiver in &quivers {
            for t in 0..=3 {
                for dims in dimension_vectors(quiver.vertex_count(), t) {
                    assert!(
                        cross_check_special_faces(quiver, &dims).unwrap().agrees(),
                        "{quiver:?} {dims:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn filtration_index_validation() {
        let f = FiltrationIndex::new(vec![vec![1], vec![1], vec![1]], &[(0, 1), (1, 2)]).unwrap();
        assert!(f.partial_order.contains(&(0, 2)));
        assert!(f.is_total());
        assert_eq!(f, FiltrationIndex::total(vec![vec![1], vec![1], vec![1]]));
        assert!(FiltrationIndex::new(vec![vec![1], vec![1]], &[(0, 1), (1, 0)]).is_err());
        let trivial = FiltrationIndex::new(vec![vec![1], vec![1]], &[]).unwrap();
        assert!(!trivial.is_total());
    }

    #[test]
    fn lms_hall_category_example() {
        let h = hall_category_lms(&point(), &[2]).unwrap();
        let two = h.objects.iter().position(|o| *o == tuple(&[&[2]])).unwrap();
        let ones = h.objects.iter().position(|o| *o == tuple(&[&[1], &[1]])).unwrap();
        let n = h
            .morphisms
            .iter()
            .filter(|m| m.source == two && m.target == ones)
            .count();
        assert_eq!(n, 2);
        let (triples, failures) = h.check_associativity();
        assert!(
            failures.is_empty(),
            "{failures:?} {:?} {:?}",
            h.morphisms,
            h.composition
        );
        assert!(triples > 0);
        assert_eq!(h.identities.len(), h.objects.len());
    }

    #[test]
    fn identification_can_merge_orders() {
        // The Jordan quiver has identically vanishing Euler form.
        let jordan = QuiverSpec::new(1, vec![(0, 0)]).unwrap();
        let merged = hall_category_lms_with(&jordan, &[2], &all_pairs).unwrap();
        let default = hall_category_lms(&jordan, &[2]).unwrap();
        assert!(default.identification_sensitive);
        assert_eq!(merged.morphisms.len() + 1, default.morphisms.len());
        assert!(merged.check_associativity().1.is_empty());
        assert!(!hall_category_lms(&a2(), &[1, 1]).unwrap().identification_sensitive);
    }

    fn all_pairs(_: &QuiverSpec, _: &[usize], _: &[usize]) -> bool {
        true
    }

    proptest! {
        #[test]
        fn class_tuples_sum_to_gamma(a in 0usize..=3, b in 0usize..=3, c in 0usize..=2) {
            let quiver = QuiverSpec::new(3, vec![(0, 1), (1, 2)]).unwrap();
            let dims = [a, b, c];
            let tuples = special_faces_lms(&quiver, &dims).unwrap();
            let distinct: BTreeSet<&ClassTuple> = tuples.iter().collect();
            prop_assert_eq!(distinct.len(), tuples.len());
            for t in &tuples {
                prop_assert_eq!(t.total(3), dims.to_vec());
                prop_assert!(t.classes.iter().all(|x| quiver.support_is_connected(x)));
            }
        }

        #[test]
        fn symmetrized_euler_form_is_symmetric(a in proptest::collection::vec(0usize..4, 2), b in proptest::collection::vec(0usize..4, 2)) {
            let q = a2();
            prop_assert_eq!(euler_symmetric_zero(&q, &a, &b), euler_symmetric_zero(&q, &b, &a));
        }
    }

    #[test]
    fn euler_form_of_a2() {
        assert_eq!(a2().euler_form(&[1, 0], &[0, 1]), -1);
        assert_eq!(a2().euler_form(&[0, 1], &[1, 0]), 0);
        assert!(!euler_symmetric_zero(&a2(), &[1, 0], &[0, 1]));
    }
}
