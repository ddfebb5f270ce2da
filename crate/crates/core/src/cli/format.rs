//! Text renderers shared by the commands.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exact::json::{scalar_from_json, scalar_to_json, table_from_json, table_to_json, RatFuncJson, ScalarJson};
use crate::exact::{ExactError, RadicandTable};
use crate::{GenMatrix, Matrix, NumMatrix};

/// `%.15g`: 15 significant digits, trailing zeros dropped, exponent form
/// outside `1e-5 .. 1e15`.
pub fn format_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.14e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..15).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (14 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `1`, `0.5i`, `-0.25+2i`.
pub fn format_complex(z: Complex64) -> String {
    // fold -0.0
    let (re, im) = (z.re + 0.0, z.im + 0.0);
    match (re == 0.0, im == 0.0) {
        (_, true) => format_g(re),
        (true, false) => format!("{}i", format_g(im)),
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("{}{sign}{}i", format_g(re), format_g(im.abs()))
        }
    }
}

fn pmatrix(name: &str, rows: Vec<Vec<String>>) -> String {
    let mut out = format!("{name} = \\begin{{pmatrix}}\n");
    let n = rows.len();
    for (i, row) in rows.into_iter().enumerate() {
        out.push_str(&row.join(" & "));
        if i + 1 < n {
            out.push_str(" \\\\");
        }
        out.push('\n');
    }
    out.push_str("\\end{pmatrix}\n");
    out
}

pub fn latex_exact(name: &str, m: &GenMatrix) -> String {
    pmatrix(name, m.rows().map(|r| r.iter().map(|s| s.to_latex()).collect()).collect())
}

pub fn latex_numeric(name: &str, m: &NumMatrix) -> String {
    pmatrix(name, numeric_rows(m))
}

pub fn numeric_rows(m: &NumMatrix) -> Vec<Vec<String>> {
    m.rows().map(|r| r.iter().map(|z| format_complex(*z)).collect()).collect()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `# name` followed by one line per row.
pub fn csv_block(name: &str, rows: Vec<Vec<String>>) -> String {
    let mut out = format!("# {name}\n");
    for row in rows {
        let fields: Vec<String> = row.iter().map(|s| csv_field(s)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn exact_rows(m: &GenMatrix) -> Vec<Vec<String>> {
    m.rows().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct NamedMatrixJson {
    pub name: String,
    pub entries: Vec<Vec<ScalarJson>>,
}

/// Exact emission: radicand table plus matrices whose radical ids index it.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ExactEmission {
    pub target: String,
    pub size: usize,
    pub radicands: Vec<RatFuncJson>,
    pub matrices: Vec<NamedMatrixJson>,
}

impl ExactEmission {
    pub fn new(target: &str, size: usize, mats: &[(String, GenMatrix)]) -> Self {
        let mut table = RadicandTable::new();
        let matrices = mats
            .iter()
            .map(|(name, m)| NamedMatrixJson {
                name: name.clone(),
                entries: m
                    .rows()
                    .map(|r| r.iter().map(|s| scalar_to_json(s, &mut table)).collect())
                    .collect(),
            })
            .collect();
        ExactEmission {
            target: target.to_string(),
            size,
            radicands: table_to_json(&table),
            matrices,
        }
    }

    /// Rebuild the exact matrices.
    pub fn decode(&self) -> Result<Vec<(String, GenMatrix)>, ExactError> {
        let table = table_from_json(&self.radicands)?;
        self.matrices
            .iter()
            .map(|nm| {
                let rows = nm
                    .entries
                    .iter()
                    .map(|r| r.iter().map(|s| scalar_from_json(s, &table)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let m = Matrix::from_rows(rows).map_err(|e| ExactError::Parse(e.to_string()))?;
                Ok((nm.name.clone(), m))
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct NumericMatrixJson {
    pub name: String,
    pub entries: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct NumericEmission {
    pub target: String,
    pub size: usize,
    pub q: String,
    pub matrices: Vec<NumericMatrixJson>,
}
