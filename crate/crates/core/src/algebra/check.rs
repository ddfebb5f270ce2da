use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::relation::{Gen, Relation};
use super::{AlgebraError, GenMatrix, LabeledMatrices};
use crate::exact::rational::{ratq_to_f64, ratq_to_string};
use crate::exact::{eval_numeric, QPoint, Scalar};
use crate::{NumMatrix, RatQ};

/// Default numeric sample points: rational, away from 0 and ±1.
pub fn default_q_samples() -> Vec<RatQ> {
    [(2, 3), (3, 2), (5, 2), (7, 3)]
        .iter()
        .map(|&(n, d)| RatQ::new(n.into(), d.into()))
        .collect()
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct RelationResidual {
    pub name: String,
    pub symbolic_zero: bool,
    /// Largest entry modulus over the checked columns and usable samples.
    pub max_numeric_residual: f64,
    pub q_samples: Vec<String>,
    /// `[row, col]` of every nonzero exact residual entry in the checked columns.
    pub offending_entries: Vec<[usize; 2]>,
    pub margin_used: usize,
    /// Samples dropped because a generator or coefficient has a pole there.
    pub skipped_samples: Vec<String>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub relations: Vec<RelationResidual>,
    /// Explicit margin override, or `None` when every relation used its own
    /// word length.
    pub margin: Option<usize>,
}

impl ResidualReport {
    pub fn all_zero(&self) -> bool {
        self.relations.iter().all(|r| r.symbolic_zero)
    }

    pub fn passed(&self) -> usize {
        self.relations.iter().filter(|r| r.symbolic_zero).count()
    }

    pub fn get(&self, name: &str) -> Option<&RelationResidual> {
        self.relations.iter().find(|r| r.name == name)
    }

    /// Concatenate reports from several suites.
    pub fn merge(mut self, other: ResidualReport) -> Self {
        self.relations.extend(other.relations);
        if self.margin != other.margin {
            self.margin = None;
        }
        self
    }
}

fn common_dim(mats: &LabeledMatrices) -> Result<usize, AlgebraError> {
    let mut dims = mats.values().map(|m| m.dim());
    let first = dims.next().unwrap_or(0);
    for d in dims {
        if d != first {
            return Err(AlgebraError::DimensionMismatch { left: first, right: d });
        }
    }
    Ok(first)
}

fn check_labels(mats: &LabeledMatrices, rel: &Relation) -> Result<(), AlgebraError> {
    for side in [&rel.lhs, &rel.rhs] {
        if let Some(g) = side.generators().find(|g| !mats.contains_key(g)) {
            return Err(AlgebraError::MissingLabel(g));
        }
    }
    Ok(())
}

/// Exact `lhs - rhs` of a relation on the given matrices.
pub fn relation_residual(mats: &LabeledMatrices, rel: &Relation) -> Result<GenMatrix, AlgebraError> {
    check_labels(mats, rel)?;
    let dim = common_dim(mats)?;
    rel.difference()
        .evaluate(mats, dim, |c| Ok::<_, AlgebraError>(Scalar::from(c.clone())))
}

fn numeric_generators(
    mats: &LabeledMatrices,
    at: &QPoint,
) -> Result<BTreeMap<Gen, NumMatrix>, AlgebraError> {
    mats.iter()
        .map(|(g, m)| Ok((*g, m.try_map(|s| eval_numeric(s, at))?)))
        .collect()
}

/// Check every relation on `mats`.
///
/// A relation is symbolically zero when its exact residual vanishes in all
/// columns `0 .. dim - margin`; the margin is `margin` if given, otherwise
/// the relation's word length. Independently, the generators are evaluated
/// at each sample `q0` and the relation is recomputed in floating point over
/// the same columns.
pub fn check_relations(
    mats: &LabeledMatrices,
    relations: &[Relation],
    margin: Option<usize>,
    q_samples: &[RatQ],
) -> Result<ResidualReport, AlgebraError> {
    let dim = common_dim(mats)?;
    for rel in relations {
        check_labels(mats, rel)?;
    }
    let numeric: Vec<(String, Option<BTreeMap<Gen, NumMatrix>>)> = q_samples
        .iter()
        .map(|x| {
            let at = QPoint::Rational(x.clone());
            (ratq_to_string(x), numeric_generators(mats, &at).ok())
        })
        .collect();

    let rows = relations
        .par_iter()
        .map(|rel| {
            let m = margin.unwrap_or(rel.word_length);
            let cols = dim.saturating_sub(m);
            let residual = relation_residual(mats, rel)?;
            let mut offending = Vec::new();
            for i in 0..dim {
                for j in 0..cols {
                    if !residual.get(i, j).is_zero() {
                        offending.push([i, j]);
                    }
                }
            }

            let mut max_res = 0.0f64;
            let mut used = Vec::new();
            let mut skipped = Vec::new();
            for ((label, gens), x) in numeric.iter().zip(q_samples) {
                let value = gens.as_ref().and_then(|gens| {
                    rel.difference()
                        .evaluate(gens, dim, |c| {
                            Ok::<_, AlgebraError>(Complex64::new(ratq_to_f64(&c.eval_ratq(x)?), 0.0))
                        })
                        .ok()
                });
                match value {
                    Some(res) => {
                        for i in 0..dim {
                            for j in 0..cols {
                                max_res = max_res.max(res.get(i, j).norm());
                            }
                        }
                        used.push(label.clone());
                    }
                    None => skipped.push(label.clone()),
                }
            }

            Ok(RelationResidual {
                name: rel.name.clone(),
                symbolic_zero: offending.is_empty(),
                max_numeric_residual: max_res,
                q_samples: used,
                offending_entries: offending,
                margin_used: m,
                skipped_samples: skipped,
            })
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;

    Ok(ResidualReport {
        relations: rows,
        margin,
    })
}
