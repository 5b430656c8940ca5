//! The component lattice `(Λ_T ⊗ Q) / W` of a linear quotient stack `V / G`.
//!
//! A spec records the torus rank, the torus weights of `V` (as a multiset),
//! the roots of `G` and generators of the Weyl group acting on cocharacters
//! by `v ↦ M v`. Faces are subspaces of `Q^n` (or linear maps into it), the
//! graded component of a face is recorded by its [`ComponentSignature`] and
//! the filtered component of a cone by its [`AttractorSignature`].

pub mod catalog;
mod constancy;
mod faces;
mod hall;
mod weyl;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arrangement::{self, ArrCone, ArrangementError, ConeArrangement, Flat, HyperplaneArrangement, Orientation};
use crate::document::LinearQuotientDoc;
use crate::qlinalg::{
    self, dot_int_rat, int_to_rat, primitive_direction, Covector, IntMatrix, IntVector, LinalgError, QVector, Subspace,
};

pub use constancy::{constancy_check, ChamberReport, ConstancyReport};
pub use faces::{cell_orbits, enumerate_special_faces, orbit_size, CellOrbit, FaceOrbit};
pub use hall::{hall_category, AssociativityReport, HallCategory, HallMorphism};

/// Parabolic subgroups keep the roots that are nonnegative on the cone,
/// matching `P_λ = { g : lim λ(t) g λ(t)^-1 exists }`. Flip to use the
/// opposite convention throughout.
pub const PARABOLIC_NONNEGATIVE: bool = true;

pub const DEFAULT_GROUP_CAP: usize = 100_000;
pub const DEFAULT_FLAT_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StackError {
    #[error("invalid spec: {0}")]
    Invalid(String),
    #[error("root set is not closed under negation: missing {0:?}")]
    NotNegationClosed(Vec<String>),
    #[error("Weyl generator {index} does not preserve the {what}")]
    NotPreserved { index: usize, what: &'static str },
    #[error("Weyl generator {0} is not unimodular")]
    NotUnimodular(usize),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("face is degenerate (map has nontrivial kernel); reduce it first")]
    Degenerate,
    #[error("projection is not surjective onto the face's source")]
    NotSurjective,
    #[error("{0}")]
    Property(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl StackError {
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            StackError::CapExceeded { .. } | StackError::Arrangement(ArrangementError::CapExceeded { .. })
        )
    }
}

pub type Result<T> = std::result::Result<T, StackError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub group: usize,
    pub flats: usize,
    pub cells: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group: DEFAULT_GROUP_CAP,
            flats: DEFAULT_FLAT_CAP,
            cells: arrangement::DEFAULT_CELL_CAP,
        }
    }
}

/// A validated linear quotient stack with its Weyl group enumerated.
#[derive(Debug, Clone)]
pub struct QuotientStackSpec {
    rank: usize,
    weights: Vec<IntVector>,
    roots: Vec<IntVector>,
    weyl_generators: Vec<IntMatrix>,
    group: Vec<IntMatrix>,
    caps: Caps,
    global: ConeArrangement,
}

fn to_int(rows: &[Vec<i64>]) -> Vec<IntVector> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn sorted(mut v: Vec<IntVector>) -> Vec<IntVector> {
    v.sort();
    v
}

pub fn load_spec(doc: &LinearQuotientDoc) -> Result<QuotientStackSpec> {
    QuotientStackSpec::new(
        doc.rank,
        to_int(&doc.weights),
        to_int(&doc.roots),
        doc.weyl_generators.iter().map(|m| IntMatrix::new(to_int(m))).collect(),
        Caps::default(),
    )
}

impl QuotientStackSpec {
    pub fn new(
        rank: usize,
        weights: Vec<IntVector>,
        roots: Vec<IntVector>,
        weyl_generators: Vec<IntMatrix>,
        caps: Caps,
    ) -> Result<Self> {
        for (i, w) in weights.iter().enumerate() {
            if w.len() != rank {
                return Err(StackError::Invalid(format!(
                    "weights[{i}] has length {} (rank {rank})",
                    w.len()
                )));
            }
        }
        let mut root_set: Vec<IntVector> = Vec::new();
        for (i, r) in roots.iter().enumerate() {
            if r.len() != rank {
                return Err(StackError::Invalid(format!(
                    "roots[{i}] has length {} (rank {rank})",
                    r.len()
                )));
            }
            if r.iter().all(Zero::is_zero) {
                return Err(StackError::Invalid(format!("roots[{i}] is zero")));
            }
            if !root_set.contains(r) {
                root_set.push(r.clone());
            }
        }
        root_set.sort();
        let missing: Vec<String> = root_set
            .iter()
            .map(|r| r.iter().map(|x| -x).collect::<IntVector>())
            .filter(|neg| !root_set.contains(neg))
            .map(|neg| format!("{neg:?}"))
            .collect();
        if !missing.is_empty() {
            return Err(StackError::NotNegationClosed(missing));
        }
        for (i, m) in weyl_generators.iter().enumerate() {
            if m.dim() != rank || !m.is_square() {
                return Err(StackError::Invalid(format!(
                    "weyl_generators[{i}] is not {rank}x{rank}"
                )));
            }
            let det = m.determinant();
            if !(det == qlinalg::rat(1) || det == qlinalg::rat(-1)) {
                return Err(StackError::NotUnimodular(i));
            }
            let moved: Vec<IntVector> = weights.iter().map(|w| m.pull_back(w)).collect();
            if sorted(moved) != sorted(weights.clone()) {
                return Err(StackError::NotPreserved {
                    index: i,
                    what: "weight multiset",
                });
            }
            let moved: Vec<IntVector> = root_set.iter().map(|r| m.pull_back(r)).collect();
            if sorted(moved) != root_set {
                return Err(StackError::NotPreserved {
                    index: i,
                    what: "root set",
                });
            }
        }
        let group = weyl::enumerate_group(rank, &weyl_generators, caps.group)?;
        let global = tangent_cone_arrangement(&weights, &root_set, &Subspace::full(rank));
        Ok(QuotientStackSpec {
            rank,
            weights,
            roots: root_set,
            weyl_generators,
            group,
            caps,
            global,
        })
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &[IntVector] {
        &self.weights
    }

    pub fn roots(&self) -> &[IntVector] {
        &self.roots
    }

    pub fn weyl_generators(&self) -> &[IntMatrix] {
        &self.weyl_generators
    }

    /// Every element of the Weyl group, identity first.
    pub fn group(&self) -> &[IntMatrix] {
        &self.group
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// All weight and root hyperplanes in `Q^n`.
    pub fn global_arrangement(&self) -> &HyperplaneArrangement {
        &self.global.arrangement
    }

    pub fn global_cone_arrangement(&self) -> &ConeArrangement {
        &self.global
    }

    /// Canonical representative of the W-orbit of a subspace: the image
    /// with lexicographically least echelon basis.
    pub fn canonical_subspace(&self, s: &Subspace) -> Subspace {
        weyl::canonical(&self.group, s)
    }

    /// The signature up to the Weyl group (least image under every element).
    pub fn canonical_signature(&self, sig: &ComponentSignature) -> ComponentSignature {
        self.group
            .iter()
            .map(|g| ComponentSignature {
                face_dim: sig.face_dim,
                fixed_weights: sorted(sig.fixed_weights.iter().map(|w| weyl::act_on_weight(g, w)).collect()),
                levi_roots: sorted(sig.levi_roots.iter().map(|w| weyl::act_on_weight(g, w)).collect()),
            })
            .min()
            .expect("group contains the identity")
    }
}

/// Restrictions of the tangent weights (weights of `V` and roots of `G`) to
/// `f`, merged up to positive scaling into a cone arrangement on `f`.
fn tangent_cone_arrangement(weights: &[IntVector], roots: &[IntVector], f: &Subspace) -> ConeArrangement {
    let mut order: Vec<Covector> = Vec::new();
    let mut sides: BTreeMap<Covector, Orientation> = BTreeMap::new();
    for w in weights.iter().chain(roots) {
        let restricted = qlinalg::restrict_weight(w, f);
        let Some(ints) = primitive_direction(&restricted) else {
            continue;
        };
        let (c, positive) = Covector::with_orientation(ints).expect("nonzero");
        let o = sides.entry(c.clone()).or_insert_with(|| {
            order.push(c.clone());
            Orientation { pos: false, neg: false }
        });
        if positive {
            o.pos = true;
        } else {
            o.neg = true;
        }
    }
    let orientations = order.iter().map(|c| sides[c]).collect();
    ConeArrangement {
        arrangement: HyperplaneArrangement::new(f.dim(), order).expect("restricted covectors have face dimension"),
        orientations,
    }
}

/// A face of the component lattice: a subspace of `Q^n`, or a linear map
/// `Q^k -> Q^n` given by the images of the standard basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Face {
    Subspace(Subspace),
    Map { images: Vec<QVector>, ambient_dim: usize },
}

impl Face {
    pub fn ray(v: QVector) -> Face {
        let n = v.len();
        Face::Subspace(qlinalg::span(&[v], n).expect("single vector"))
    }

    pub fn spanned_by(vectors: &[QVector], ambient_dim: usize) -> Result<Face> {
        Ok(Face::Subspace(qlinalg::span(vectors, ambient_dim)?))
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Face::Subspace(s) => s.ambient_dim(),
            Face::Map { ambient_dim, .. } => *ambient_dim,
        }
    }

    pub fn source_dim(&self) -> usize {
        match self {
            Face::Subspace(s) => s.dim(),
            Face::Map { images, .. } => images.len(),
        }
    }

    /// Images of the source basis vectors.
    pub fn images(&self) -> Vec<QVector> {
        match self {
            Face::Subspace(s) => s.basis().to_vec(),
            Face::Map { images, .. } => images.clone(),
        }
    }

    pub fn image(&self) -> Subspace {
        match self {
            Face::Subspace(s) => s.clone(),
            Face::Map { images, ambient_dim } => qlinalg::span(images, *ambient_dim).expect("validated image lengths"),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.image().dim() < self.source_dim()
    }
}

/// The face induced on the quotient of the source by the kernel, in image
/// form.
pub fn nondegenerate_quotient(face: &Face) -> Face {
    Face::Subspace(face.image())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentSignature {
    pub face_dim: usize,
    pub fixed_weights: Vec<IntVector>,
    pub levi_roots: Vec<IntVector>,
}

impl ComponentSignature {
    /// Same weight and root data, ignoring the face dimension.
    pub fn same_component(&self, other: &ComponentSignature) -> bool {
        self.fixed_weights == other.fixed_weights && self.levi_roots == other.levi_roots
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AttractorSignature {
    /// Span of the cone: the special face it lives on.
    pub face: Subspace,
    /// The cone in the face's coordinates, over the cotangent arrangement.
    pub cone: ArrCone,
    /// Extreme rays of the cone in ambient coordinates.
    pub rays: Vec<IntVector>,
    /// Lineality basis in ambient coordinates.
    pub lineality: Vec<IntVector>,
    pub attractor_weights: Vec<IntVector>,
    pub parabolic_roots: Vec<IntVector>,
    pub levi_part: ComponentSignature,
}

impl AttractorSignature {
    pub fn ambient_generators(&self) -> Vec<IntVector> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }
}

fn vanishing_on(vectors: &[IntVector], s: &Subspace) -> Vec<IntVector> {
    sorted(
        vectors
            .iter()
            .filter(|w| s.basis().iter().all(|b| dot_int_rat(w, b).is_zero()))
            .cloned()
            .collect(),
    )
}

fn nonnegative_on(vectors: &[IntVector], gens: &[IntVector]) -> Vec<IntVector> {
    sorted(
        vectors
            .iter()
            .filter(|w| gens.iter().all(|g| !qlinalg::dot_int(w, g).is_negative()))
            .cloned()
            .collect(),
    )
}

pub fn cotangent_cone_arrangement(spec: &QuotientStackSpec, face: &Face) -> Result<ConeArrangement> {
    if face.is_degenerate() {
        return Err(StackError::Degenerate);
    }
    qlinalg::check_len(spec.rank, face.ambient_dim())?;
    Ok(tangent_cone_arrangement(&spec.weights, &spec.roots, &face.image()))
}

/// Hyperplanes on the face (in its basis coordinates) dual to the nonzero
/// restrictions of weights and roots.
pub fn cotangent_arrangement(spec: &QuotientStackSpec, face: &Face) -> Result<HyperplaneArrangement> {
    Ok(cotangent_cone_arrangement(spec, face)?.arrangement)
}

/// Smallest flat of the global arrangement containing the face's image.
pub fn special_face_closure(spec: &QuotientStackSpec, face: &Face) -> Result<Flat> {
    qlinalg::check_len(spec.rank, face.ambient_dim())?;
    Ok(Flat::of(spec.global_arrangement(), &face.image())?)
}

pub fn component_signature(spec: &QuotientStackSpec, face: &Face) -> Result<ComponentSignature> {
    qlinalg::check_len(spec.rank, face.ambient_dim())?;
    let s = face.image();
    Ok(ComponentSignature {
        face_dim: s.dim(),
        fixed_weights: vanishing_on(&spec.weights, &s),
        levi_roots: vanishing_on(&spec.roots, &s),
    })
}

/// Dimension of the common kernel of the fixed weights and Levi roots.
pub fn central_rank(spec: &QuotientStackSpec, face: &Face) -> Result<usize> {
    let sig = component_signature(spec, face)?;
    let cs: Vec<Covector> = sig
        .fixed_weights
        .iter()
        .chain(&sig.levi_roots)
        .filter_map(|w| Covector::new(w.clone()))
        .collect();
    Ok(qlinalg::kernel(&cs, spec.rank)?.dim())
}

/// Minimal special cone containing the given vectors, with its attractor
/// data.
///
/// The span is first closed up to a flat `F`; the cone is then the smallest
/// member of the cotangent cone arrangement on `F` containing the vectors.
pub fn special_cone_closure(spec: &QuotientStackSpec, rays: &[QVector]) -> Result<AttractorSignature> {
    for r in rays {
        qlinalg::check_len(spec.rank, r.len())?;
    }
    let span = qlinalg::span(rays, spec.rank)?;
    let flat = Flat::of(spec.global_arrangement(), &span)?.subspace;
    let ca = tangent_cone_arrangement(&spec.weights, &spec.roots, &flat);
    let coords: Vec<QVector> = rays
        .iter()
        .map(|r| flat.coordinates(r).expect("vectors lie in their closure"))
        .collect();
    let cone = ca.minimal_cone_containing(&coords)?;
    let to_ambient =
        |g: &IntVector| primitive_direction(&flat.from_coordinates(&int_to_rat(g))).expect("nonzero generator");
    let ambient_rays: Vec<IntVector> = sorted(cone.extreme_rays().iter().map(to_ambient).collect());
    let lineality: Vec<IntVector> = cone.lineality().iter().map(to_ambient).collect();
    let mut gens = ambient_rays.clone();
    for l in &lineality {
        gens.push(l.clone());
        gens.push(l.iter().map(|x| -x).collect());
    }
    let parabolic = if PARABOLIC_NONNEGATIVE {
        nonnegative_on(&spec.roots, &gens)
    } else {
        let flipped: Vec<IntVector> = gens.iter().map(|g| g.iter().map(|x| -x).collect()).collect();
        nonnegative_on(&spec.roots, &flipped)
    };
    Ok(AttractorSignature {
        levi_part: component_signature(spec, &Face::Subspace(flat.clone()))?,
        attractor_weights: nonnegative_on(&spec.weights, &gens),
        parabolic_roots: parabolic,
        rays: ambient_rays,
        lineality,
        cone,
        face: flat,
    })
}

/// Precomposes the face with a surjection `Q^m -> Q^k` (rows are the images
/// of the basis of `Q^m`), reduces, and compares the component data.
pub fn surjection_invariance_check(spec: &QuotientStackSpec, face: &Face, projection: &[QVector]) -> Result<bool> {
    let k = face.source_dim();
    for row in projection {
        qlinalg::check_len(k, row.len())?;
    }
    if qlinalg::rank(projection.to_vec(), k) < k {
        return Err(StackError::NotSurjective);
    }
    let images = face.images();
    let composed: Vec<QVector> = projection
        .iter()
        .map(|row| {
            let mut v = vec![qlinalg::Rational::zero(); spec.rank];
            for (c, img) in row.iter().zip(&images) {
                for (x, y) in v.iter_mut().zip(img) {
                    *x = &*x + c * y;
                }
            }
            v
        })
        .collect();
    let degenerate = Face::Map {
        images: composed,
        ambient_dim: spec.rank,
    };
    let reduced = nondegenerate_quotient(&degenerate);
    let original = nondegenerate_quotient(face);
    Ok(
        component_signature(spec, &reduced)? == component_signature(spec, &original)?
            && special_face_closure(spec, &reduced)? == special_face_closure(spec, &original)?,
    )
}
