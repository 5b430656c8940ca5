use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{enumerate_special_faces, tangent_cone_arrangement, FaceOrbit, QuotientStackSpec, Result, StackError};
use crate::arrangement::{
    cells_with_cap, cone_from_bounds, sign_vector_of, tits_compose, Bound, HyperplaneArrangement, Sign, SignVector,
};
use crate::qlinalg::{int_to_rat, QVector, Rational, Subspace};

/// A morphism `α → α'`: an embedding of the source face into the target
/// (induced by some Weyl group element) and a chamber of the target's
/// cotangent hyperplanes that contain the embedded source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallMorphism {
    pub source: usize,
    pub target: usize,
    /// Ambient images of the source representative's basis.
    pub embedding: Vec<QVector>,
    /// Indices into the target's cotangent arrangement.
    pub hyperplanes: Vec<usize>,
    pub chamber: SignVector,
    /// Interior point of the chamber, in the target's coordinates.
    pub interior: QVector,
}

#[derive(Debug, Clone)]
pub struct HallCategory {
    pub objects: Vec<FaceOrbit>,
    pub arrangements: Vec<HyperplaneArrangement>,
    pub morphisms: Vec<HallMorphism>,
    pub identities: Vec<usize>,
    /// `(first, second) ↦ second ∘ first`.
    pub composition: BTreeMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AssociativityReport {
    pub triples: usize,
    pub failures: Vec<(usize, usize, usize)>,
    pub unit_failures: Vec<usize>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.unit_failures.is_empty()
    }
}

type Key = (usize, usize, Vec<QVector>, SignVector);

fn rep(o: &FaceOrbit) -> &Subspace {
    &o.representative.subspace
}

fn push_forward(coords: &[Rational], images: &[QVector], n: usize) -> QVector {
    let mut v = vec![Rational::zero(); n];
    for (c, img) in coords.iter().zip(images) {
        for (x, y) in v.iter_mut().zip(img) {
            *x = &*x + c * y;
        }
    }
    v
}

fn hyperplanes_containing(arr: &HyperplaneArrangement, target: &Subspace, embedding: &[QVector]) -> Vec<usize> {
    let coords: Vec<QVector> = embedding
        .iter()
        .map(|v| target.coordinates(v).expect("embedding lands in the target"))
        .collect();
    (0..arr.len())
        .filter(|&i| coords.iter().all(|c| arr.covectors()[i].pair(c).is_zero()))
        .collect()
}

pub fn hall_category(spec: &QuotientStackSpec) -> Result<HallCategory> {
    let objects = enumerate_special_faces(spec)?;
    let n = spec.rank();
    let arrangements: Vec<HyperplaneArrangement> = objects
        .iter()
        .map(|o| tangent_cone_arrangement(spec.weights(), spec.roots(), rep(o)).arrangement)
        .collect();
    let mut morphisms = Vec::new();
    for (a, oa) in objects.iter().enumerate() {
        for (b, ob) in objects.iter().enumerate() {
            let embeddings: BTreeSet<Vec<QVector>> = spec
                .group()
                .iter()
                .map(|g| rep(oa).basis().iter().map(|v| g.apply(v)).collect::<Vec<_>>())
                .filter(|imgs: &Vec<QVector>| imgs.iter().all(|v| rep(ob).contains(v)))
                .collect();
            for embedding in embeddings {
                let hyperplanes = hyperplanes_containing(&arrangements[b], rep(ob), &embedding);
                let sub = arrangements[b].select(&hyperplanes);
                for chamber in cells_with_cap(&sub, spec.caps().cells)? {
                    if !chamber.is_chamber() {
                        continue;
                    }
                    let bounds: Vec<Bound> = chamber
                        .signs()
                        .iter()
                        .map(|s| if *s == Sign::Pos { Bound::NonNeg } else { Bound::NonPos })
                        .collect();
                    let interior = int_to_rat(&cone_from_bounds(&sub, &bounds)?.interior_point());
                    morphisms.push(HallMorphism {
                        source: a,
                        target: b,
                        embedding: embedding.clone(),
                        hyperplanes: hyperplanes.clone(),
                        chamber,
                        interior,
                    });
                }
            }
        }
    }
    let index: BTreeMap<Key, usize> = morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| ((m.source, m.target, m.embedding.clone(), m.chamber.clone()), i))
        .collect();
    let identities = objects
        .iter()
        .enumerate()
        .map(|(a, o)| {
            let key = (a, a, rep(o).basis().to_vec(), SignVector(Vec::new()));
            index
                .get(&key)
                .copied()
                .ok_or_else(|| StackError::Property(format!("object {a} has no identity morphism")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut composition = BTreeMap::new();
    for (i, m1) in morphisms.iter().enumerate() {
        for (j, m2) in morphisms.iter().enumerate() {
            if m1.target != m2.source {
                continue;
            }
            let mid = rep(&objects[m1.target]);
            let last = rep(&objects[m2.target]);
            let embedding: Vec<QVector> = m1
                .embedding
                .iter()
                .map(|v| push_forward(&mid.coordinates(v).expect("in target"), &m2.embedding, n))
                .collect();
            let hyperplanes = hyperplanes_containing(&arrangements[m2.target], last, &embedding);
            let sub = arrangements[m2.target].select(&hyperplanes);
            let first_point = last
                .coordinates(&push_forward(&m1.interior, &m2.embedding, n))
                .expect("in target");
            let x = sign_vector_of(&sub, &first_point)?;
            let y = sign_vector_of(&sub, &m2.interior)?;
            let chamber = tits_compose(&x, &y)?;
            if !chamber.is_chamber() {
                return Err(StackError::Property(format!(
                    "composite of morphisms {i} and {j} is not a chamber ({chamber})"
                )));
            }
            let key = (m1.source, m2.target, embedding, chamber);
            let k = *index
                .get(&key)
                .ok_or_else(|| StackError::Property(format!("composite of morphisms {i} and {j} is not a morphism")))?;
            composition.insert((i, j), k);
        }
    }
    Ok(HallCategory {
        objects,
        arrangements,
        morphisms,
        identities,
        composition,
    })
}

impl HallCategory {
    pub fn compose(&self, first: usize, second: usize) -> Option<usize> {
        self.composition.get(&(first, second)).copied()
    }

    /// Exhaustive check over all composable triples, plus the unit laws.
    pub fn check_associativity(&self) -> AssociativityReport {
        let mut report = AssociativityReport::default();
        let mut outgoing: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            outgoing.entry(m.source).or_default().push(i);
        }
        let none = Vec::new();
        for (i, m1) in self.morphisms.iter().enumerate() {
            if self.compose(self.identities[m1.source], i) != Some(i)
                || self.compose(i, self.identities[m1.target]) != Some(i)
            {
                report.unit_failures.push(i);
            }
            for &j in outgoing.get(&m1.target).unwrap_or(&none) {
                let m2 = &self.morphisms[j];
                for &k in outgoing.get(&m2.target).unwrap_or(&none) {
                    report.triples += 1;
                    let left = self.compose(i, j).and_then(|ij| self.compose(ij, k));
                    let right = self.compose(j, k).and_then(|jk| self.compose(i, jk));
                    if left.is_none() || left != right {
                        report.failures.push((i, j, k));
                    }
                }
            }
        }
        report
    }
}
