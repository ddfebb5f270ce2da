//! JSON encoding of exact values.
//!
//! Rationals are `"num/den"` strings, polynomials ascending coefficient
//! arrays, rational functions `{"num": [...], "den": [...]}`, and scalars
//! `{"terms": [{"coeff": ..., "radicals": [ids]}]}` where the ids index a
//! [`RadicandTable`] serialized alongside.

use serde::{Deserialize, Serialize};

use super::rational::{parse_ratq, ratq_to_string};
use super::{ExactError, RadicalMonomial, RadicandTable, Scalar};
use crate::{PolyQ, RatFuncQ};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RatFuncJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TermJson {
    pub coeff: RatFuncJson,
    pub radicals: Vec<usize>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ScalarJson {
    pub terms: Vec<TermJson>,
}

fn poly_to_json(p: &PolyQ) -> Vec<String> {
    p.coeffs().iter().map(ratq_to_string).collect()
}

fn poly_from_json(v: &[String]) -> Result<PolyQ, ExactError> {
    Ok(PolyQ::new(
        v.iter().map(|s| parse_ratq(s)).collect::<Result<_, _>>()?,
    ))
}

pub fn ratfunc_to_json(r: &RatFuncQ) -> RatFuncJson {
    RatFuncJson {
        num: poly_to_json(r.num()),
        den: poly_to_json(r.den()),
    }
}

/// Parses and re-canonicalizes.
pub fn ratfunc_from_json(j: &RatFuncJson) -> Result<RatFuncQ, ExactError> {
    RatFuncQ::new(poly_from_json(&j.num)?, poly_from_json(&j.den)?)
}

pub fn table_to_json(t: &RadicandTable) -> Vec<RatFuncJson> {
    t.entries().iter().map(ratfunc_to_json).collect()
}

pub fn table_from_json(v: &[RatFuncJson]) -> Result<RadicandTable, ExactError> {
    RadicandTable::from_entries(v.iter().map(ratfunc_from_json).collect::<Result<_, _>>()?)
}

/// Encode a scalar, registering its radicands in `table`.
pub fn scalar_to_json(s: &Scalar, table: &mut RadicandTable) -> ScalarJson {
    ScalarJson {
        terms: s
            .terms()
            .map(|(mono, coeff)| TermJson {
                coeff: ratfunc_to_json(coeff),
                radicals: mono
                    .radicals()
                    .iter()
                    .map(|r| table.intern(r.radicand()))
                    .collect(),
            })
            .collect(),
    }
}

pub fn scalar_from_json(j: &ScalarJson, table: &RadicandTable) -> Result<Scalar, ExactError> {
    let mut out = Scalar::default();
    for term in &j.terms {
        let rads = term
            .radicals
            .iter()
            .map(|&id| {
                table
                    .radical(id)
                    .ok_or_else(|| ExactError::Parse(format!("unknown radicand id {id}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (mono, factor) = RadicalMonomial::from_radicals(rads);
        let coeff = &ratfunc_from_json(&term.coeff)? * &factor;
        out = &out + &Scalar::from_term(mono, coeff);
    }
    Ok(out)
}
