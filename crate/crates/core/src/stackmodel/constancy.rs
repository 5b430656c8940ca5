use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    component_signature, special_cone_closure, tangent_cone_arrangement, AttractorSignature, ComponentSignature, Face,
    QuotientStackSpec, Result,
};
use crate::arrangement::{cells_with_cap, cone_from_bounds, sign_vector_of, Bound, Sign, SignVector};
use crate::qlinalg::{int_to_rat, QVector, Rational, Subspace};

pub const MAX_DENOMINATOR: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberReport {
    pub chamber: SignVector,
    /// The chamber's interior point in ambient coordinates.
    pub witness: QVector,
    pub samples: usize,
    pub rejected: usize,
    pub discrepancies: usize,
    pub component: ComponentSignature,
    pub attractor: AttractorSignature,
    /// A sample whose signatures differ from the witness's, if any.
    pub counterexample: Option<QVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstancyReport {
    pub face: Subspace,
    pub seed: u64,
    pub chambers: Vec<ChamberReport>,
}

impl ConstancyReport {
    pub fn passed(&self) -> bool {
        self.chambers.iter().all(|c| c.discrepancies == 0)
    }

    pub fn discrepancies(&self) -> usize {
        self.chambers.iter().map(|c| c.discrepancies).sum()
    }
}

fn random_positive<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(1..=MAX_DENOMINATOR)),
        BigInt::from(rng.gen_range(1..=MAX_DENOMINATOR)),
    )
}

/// Samples points inside every chamber of the cotangent arrangement on
/// `face` and checks that both signatures are constant on each chamber.
///
/// Points are strictly positive combinations of the chamber's generators
/// with coefficients `a/b`, `1 <= a, b <= 64`; any point not in the open
/// chamber is rejected.
pub fn constancy_check(
    spec: &QuotientStackSpec,
    face: &Subspace,
    samples: usize,
    seed: u64,
) -> Result<ConstancyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arr = tangent_cone_arrangement(spec.weights(), spec.roots(), face).arrangement;
    let signature = |p: &QVector| -> Result<(ComponentSignature, AttractorSignature)> {
        let ray = Face::ray(p.clone());
        Ok((
            component_signature(spec, &ray)?,
            special_cone_closure(spec, std::slice::from_ref(p))?,
        ))
    };
    let mut chambers = Vec::new();
    for chamber in cells_with_cap(&arr, spec.caps().cells)? {
        if !chamber.is_chamber() {
            continue;
        }
        let bounds: Vec<Bound> = chamber
            .signs()
            .iter()
            .map(|s| if *s == Sign::Pos { Bound::NonNeg } else { Bound::NonPos })
            .collect();
        let cone = cone_from_bounds(&arr, &bounds)?;
        let gens: Vec<QVector> = cone.generators().iter().map(|g| int_to_rat(g)).collect();
        let witness = face.from_coordinates(&int_to_rat(&cone.interior_point()));
        let (component, attractor) = signature(&witness)?;
        let mut report = ChamberReport {
            chamber: chamber.clone(),
            witness,
            samples: 0,
            rejected: 0,
            discrepancies: 0,
            component,
            attractor,
            counterexample: None,
        };
        for _ in 0..samples {
            let mut coords = vec![Rational::from_integer(0.into()); face.dim()];
            for g in &gens {
                let c = random_positive(&mut rng);
                for (x, y) in coords.iter_mut().zip(g) {
                    *x = &*x + &c * y;
                }
            }
            if sign_vector_of(&arr, &coords)? != chamber {
                report.rejected += 1;
                continue;
            }
            report.samples += 1;
            let p = face.from_coordinates(&coords);
            let (c, a) = signature(&p)?;
            if c != report.component || a != report.attractor {
                report.discrepancies += 1;
                report.counterexample.get_or_insert(p);
            }
        }
        chambers.push(report);
    }
    Ok(ConstancyReport {
        face: face.clone(),
        seed,
        chambers,
    })
}
