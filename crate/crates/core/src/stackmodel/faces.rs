use std::collections::BTreeMap;

use super::{component_signature, weyl, ComponentSignature, Face, QuotientStackSpec, Result, StackError};
use crate::arrangement::{self, cells_with_cap, cone_from_bounds, flats, Bound, Flat, Sign, SignVector};
use crate::qlinalg::{int_to_rat, Subspace};

/// A W-orbit of flats of the global arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceOrbit {
    pub representative: Flat,
    pub members: Vec<Subspace>,
    pub signature: ComponentSignature,
}

impl FaceOrbit {
    pub fn dim(&self) -> usize {
        self.representative.dim()
    }

    pub fn orbit_size(&self) -> usize {
        self.members.len()
    }
}

/// Special faces up to the Weyl group, largest first.
pub fn enumerate_special_faces(spec: &QuotientStackSpec) -> Result<Vec<FaceOrbit>> {
    let arr = spec.global_arrangement();
    let all = flats(arr);
    if all.len() > spec.caps().flats {
        return Err(StackError::CapExceeded {
            what: "flat count",
            cap: spec.caps().flats,
        });
    }
    let mut orbits: BTreeMap<(std::cmp::Reverse<usize>, Vec<_>), Vec<Subspace>> = BTreeMap::new();
    for f in all {
        let rep = spec.canonical_subspace(&f.subspace);
        orbits
            .entry((std::cmp::Reverse(rep.dim()), rep.flattened()))
            .or_default()
            .push(f.subspace);
    }
    orbits
        .into_values()
        .map(|mut members| {
            members.sort();
            let rep = spec.canonical_subspace(&members[0]);
            Ok(FaceOrbit {
                signature: component_signature(spec, &Face::Subspace(rep.clone()))?,
                representative: Flat::of(arr, &rep)?,
                members,
            })
        })
        .collect()
}

/// A W-orbit of cells of the global arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellOrbit {
    pub representative: SignVector,
    pub members: Vec<SignVector>,
    pub dim: usize,
}

/// All cells of the global arrangement with their W-orbits. W permutes the
/// cells: the image of a relative-interior point of one cell lies in the
/// relative interior of another.
pub fn cell_orbits(spec: &QuotientStackSpec) -> Result<(Vec<SignVector>, Vec<CellOrbit>)> {
    let arr = spec.global_arrangement();
    let cells = cells_with_cap(arr, spec.caps().cells)?;
    let mut orbits: BTreeMap<SignVector, CellOrbit> = BTreeMap::new();
    for c in &cells {
        let bounds: Vec<Bound> = c
            .signs()
            .iter()
            .map(|s| match s {
                Sign::Pos => Bound::NonNeg,
                Sign::Neg => Bound::NonPos,
                Sign::Zero => Bound::Zero,
            })
            .collect();
        let cone = cone_from_bounds(arr, &bounds)?;
        let p = int_to_rat(&cone.interior_point());
        let mut members: Vec<SignVector> = spec
            .group()
            .iter()
            .map(|g| arrangement::sign_vector_of(arr, &g.apply(&p)))
            .collect::<std::result::Result<_, _>>()?;
        members.sort();
        members.dedup();
        let rep = members[0].clone();
        orbits.entry(rep.clone()).or_insert(CellOrbit {
            representative: rep,
            members,
            dim: cone.dim(),
        });
    }
    let mut out: Vec<CellOrbit> = orbits.into_values().collect();
    out.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.representative.cmp(&b.representative)));
    Ok((cells, out))
}

/// Number of distinct W-images of a subspace.
pub fn orbit_size(spec: &QuotientStackSpec, s: &Subspace) -> usize {
    weyl::orbit(spec.group(), s).len()
}
