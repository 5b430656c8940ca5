use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::field::Field;
use super::reps::{
    echelon, enumerate_iso_classes, quotient, restrict, subreps, EchelonSpace, RepClass, Representation,
};
use super::{dimension_vectors, LinModError, QuiverSpec, Result};
use crate::qlinalg::{format_rational, Rational};

/// An isomorphism class: its dimension vector and index within the
/// enumeration for that dimension vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId {
    pub dims: Vec<usize>,
    pub index: usize,
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        write!(f, "{}#{}", dims.join(","), self.index)
    }
}

/// A finitely supported function on isomorphism classes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HallElement {
    pub coefficients: BTreeMap<ClassId, Rational>,
}

impl HallElement {
    pub fn delta(c: ClassId) -> HallElement {
        HallElement {
            coefficients: BTreeMap::from([(c, Rational::one())]),
        }
    }

    pub fn get(&self, c: &ClassId) -> Rational {
        self.coefficients.get(c).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_to(&mut self, c: ClassId, v: Rational) {
        let e = self.coefficients.entry(c.clone()).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.coefficients.remove(&c);
        }
    }

    /// `(class, "num/den")` pairs in class order.
    pub fn to_strings(&self) -> Vec<(String, String)> {
        self.coefficients
            .iter()
            .map(|(c, v)| (c.to_string(), format_rational(v)))
            .collect()
    }
}

/// Counts of subrepresentations `S ⊆ R`, keyed by `(class of R/S, class of S)`.
type FlagTable = BTreeMap<(ClassId, ClassId), u64>;

/// Counts of flags `S₁ ⊆ S₂ ⊆ R`, keyed by the classes of
/// `(R/S₂, S₂/S₁, S₁)`.
type TripleFlagTable = BTreeMap<(ClassId, ClassId, ClassId), u64>;

/// The counting Hall algebra of a quiver over `F_q`, truncated to total
/// dimension `max_total_dim`.
///
/// `(f · g)(R) = Σ_{S ⊆ R} f(R/S) g(S)`: the right factor counts the
/// subobject and the left factor the quotient.
#[derive(Debug, Clone)]
pub struct HallAlgebra {
    quiver: QuiverSpec,
    field: Field,
    max_total_dim: usize,
    classes: BTreeMap<Vec<usize>, RepClass>,
    tables: BTreeMap<ClassId, FlagTable>,
}

impl HallAlgebra {
    pub fn new(quiver: &QuiverSpec, q: u8, max_total_dim: usize) -> Result<HallAlgebra> {
        let field = Field::new(q).ok_or(LinModError::UnsupportedField(q))?;
        let mut classes = BTreeMap::new();
        for total in 0..=max_total_dim {
            for dims in dimension_vectors(quiver.vertex_count(), total) {
                let c = enumerate_iso_classes(quiver, &dims, q)?;
                classes.insert(dims, c);
            }
        }
        let mut alg = HallAlgebra {
            quiver: quiver.clone(),
            field,
            max_total_dim,
            classes,
            tables: BTreeMap::new(),
        };
        let mut tables = BTreeMap::new();
        for id in alg.all_classes() {
            let r = alg.representative(&id).clone();
            let mut table = FlagTable::new();
            for (sub, quot) in alg.subrep_classes(&r)? {
                *table.entry((quot, sub)).or_insert(0) += 1;
            }
            tables.insert(id, table);
        }
        alg.tables = tables;
        Ok(alg)
    }

    pub fn q(&self) -> u8 {
        self.field.q()
    }

    pub fn max_total_dim(&self) -> usize {
        self.max_total_dim
    }

    pub fn classes(&self, dims: &[usize]) -> Option<&RepClass> {
        self.classes.get(dims)
    }

    pub fn all_classes(&self) -> Vec<ClassId> {
        self.classes
            .iter()
            .flat_map(|(d, c)| (0..c.len()).map(|index| ClassId { dims: d.clone(), index }))
            .collect()
    }

    pub fn representative(&self, id: &ClassId) -> &Representation {
        &self.classes[&id.dims].representatives[id.index]
    }

    pub fn class_of(&self, rep: &Representation) -> Result<ClassId> {
        let c = self
            .classes
            .get(&rep.dims)
            .ok_or_else(|| LinModError::ClassNotEnumerated(format!("{:?}", rep.dims)))?;
        Ok(ClassId {
            dims: rep.dims.clone(),
            index: c.class_index(rep),
        })
    }

    fn check(&self, id: &ClassId) -> Result<()> {
        match self.classes.get(&id.dims) {
            Some(c) if id.index < c.len() => Ok(()),
            _ => Err(LinModError::ClassNotEnumerated(id.to_string())),
        }
    }

    pub fn unit(&self) -> HallElement {
        HallElement::delta(ClassId {
            dims: vec![0; self.quiver.vertex_count()],
            index: 0,
        })
    }

    /// `(class of S, class of R/S)` for every subrepresentation `S ⊆ R`.
    fn subrep_classes(&self, r: &Representation) -> Result<Vec<(ClassId, ClassId)>> {
        let mut out = Vec::new();
        for sub in sub_dimension_vectors(&r.dims) {
            for spaces in subreps(&self.quiver, &self.field, r, &sub)? {
                let s = restrict(&self.quiver, &self.field, r, &spaces);
                let qt = quotient(&self.quiver, &self.field, r, &spaces);
                out.push((self.class_of(&s)?, self.class_of(&qt)?));
            }
        }
        Ok(out)
    }

    pub fn product(&self, f: &HallElement, g: &HallElement) -> Result<HallElement> {
        for id in f.coefficients.keys().chain(g.coefficients.keys()) {
            self.check(id)?;
        }
        let mut out = HallElement::default();
        for (r, table) in &self.tables {
            for ((quot, sub), &count) in table {
                let (Some(a), Some(b)) = (f.coefficients.get(quot), g.coefficients.get(sub)) else {
                    continue;
                };
                out.add_to(r.clone(), a * b * Rational::from_integer(count.into()));
            }
        }
        let reach: Option<usize> = f
            .coefficients
            .keys()
            .flat_map(|a| g.coefficients.keys().map(move |b| total(&a.dims) + total(&b.dims)))
            .max();
        if reach.is_some_and(|d| d > self.max_total_dim) {
            return Err(LinModError::Bounds(format!(
                "product reaches total dimension {} beyond {}",
                reach.unwrap_or(0),
                self.max_total_dim
            )));
        }
        Ok(out)
    }

    /// Flags `S₁ ⊆ S₂ ⊆ R` counted directly: pairs of nested subspace
    /// tuples of `R`, with `S₂/S₁` formed inside `S₂`.
    pub fn triple_flags(&self, r: &ClassId) -> Result<TripleFlagTable> {
        self.check(r)?;
        let rep = self.representative(r);
        let f = &self.field;
        let mut all: Vec<Vec<EchelonSpace>> = Vec::new();
        for sub in sub_dimension_vectors(&rep.dims) {
            all.extend(subreps(&self.quiver, f, rep, &sub)?);
        }
        let mut out = TripleFlagTable::new();
        for u2 in &all {
            let s2 = restrict(&self.quiver, f, rep, u2);
            let top = self.class_of(&quotient(&self.quiver, f, rep, u2))?;
            for u1 in &all {
                if !u1.iter().zip(u2).all(|(a, b)| b.contains_space(f, a)) {
                    continue;
                }
                let bottom = self.class_of(&restrict(&self.quiver, f, rep, u1))?;
                let inside: Vec<EchelonSpace> = u1
                    .iter()
                    .zip(u2)
                    .map(|(a, b)| {
                        let coords: Vec<Vec<u8>> = a
                            .rows
                            .iter()
                            .map(|row| b.pivots.iter().map(|&p| row[p]).collect())
                            .collect();
                        echelon(f, b.dim(), &coords)
                    })
                    .collect();
                let middle = self.class_of(&quotient(&self.quiver, f, &s2, &inside))?;
                *out.entry((top.clone(), middle, bottom)).or_insert(0) += 1;
            }
        }
        Ok(out)
    }
}

fn total(d: &[usize]) -> usize {
    d.iter().sum()
}

fn sub_dimension_vectors(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..=d).map(move |k| {
                    let mut p = prefix.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
    }
    out
}

pub fn hall_product(alg: &HallAlgebra, f: &HallElement, g: &HallElement) -> Result<HallElement> {
    alg.product(f, g)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HallAssociativityReport {
    pub classes: usize,
    pub triples: usize,
    pub flag_checks: usize,
    pub unit_checks: usize,
    pub failures: Vec<String>,
}

impl HallAssociativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustive check over class-delta triples of total dimension at most
/// `max_total_dim`: both bracketings agree, and both equal the direct count
/// of two-step flags in every class.
pub fn verify_hall_associativity(quiver: &QuiverSpec, q: u8, max_total_dim: usize) -> Result<HallAssociativityReport> {
    let alg = HallAlgebra::new(quiver, q, max_total_dim)?;
    let classes = alg.all_classes();
    let mut report = HallAssociativityReport {
        classes: classes.len(),
        ..Default::default()
    };
    let unit = alg.unit();
    for c in &classes {
        let d = HallElement::delta(c.clone());
        report.unit_checks += 1;
        if alg.product(&unit, &d)? != d || alg.product(&d, &unit)? != d {
            report.failures.push(format!("unit law fails at {c}"));
        }
    }
    let flags: BTreeMap<ClassId, TripleFlagTable> = classes
        .iter()
        .map(|c| Ok((c.clone(), alg.triple_flags(c)?)))
        .collect::<Result<_>>()?;
    for a in &classes {
        for b in &classes {
            if total(&a.dims) + total(&b.dims) > max_total_dim {
                continue;
            }
            let (da, db) = (HallElement::delta(a.clone()), HallElement::delta(b.clone()));
            let ab = alg.product(&da, &db)?;
            for c in &classes {
                let sum: Vec<usize> = (0..a.dims.len()).map(|v| a.dims[v] + b.dims[v] + c.dims[v]).collect();
                if total(&sum) > max_total_dim {
                    continue;
                }
                report.triples += 1;
                let dc = HallElement::delta(c.clone());
                let left = alg.product(&ab, &dc)?;
                let right = alg.product(&da, &alg.product(&db, &dc)?)?;
                if left != right {
                    report.failures.push(format!("({a} * {b}) * {c} != {a} * ({b} * {c})"));
                }
                let n = alg.classes(&sum).map_or(0, RepClass::len);
                for index in 0..n {
                    let r = ClassId {
                        dims: sum.clone(),
                        index,
                    };
                    report.flag_checks += 1;
                    let key = (a.clone(), b.clone(), c.clone());
                    let direct = flags[&r].get(&key).copied().unwrap_or(0);
                    let direct = Rational::from_integer(direct.into());
                    if left.get(&r) != direct || right.get(&r) != direct {
                        report.failures.push(format!("flag count at {r} for ({a}, {b}, {c})"));
                    }
                }
            }
        }
    }
    Ok(report)
}
