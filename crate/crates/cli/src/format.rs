//! File formats: structure tensors (`leibniz-tensor/1`), extension data
//! (`leibniz-extension/1`) and square matrices (`leibniz-matrix/1`).
//!
//! Rationals are strings `"p"` or `"p/q"` with `q > 1` and `gcd(p, q) = 1`.
//! Indices are 0-based. Zero brackets are omitted on output.

use std::collections::BTreeMap;
use std::str::FromStr;

use leibniz_core::extensions::ExtensionData;
use leibniz_core::{LeibnizAlgebra, Matrix, Rational, StructureTensor};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const TENSOR_FORMAT: &str = "leibniz-tensor/1";
pub const EXTENSION_FORMAT: &str = "leibniz-extension/1";
pub const MATRIX_FORMAT: &str = "leibniz-matrix/1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format tag {found:?}, expected {expected:?}")]
    Tag { expected: &'static str, found: String },
    #[error("not a canonical rational: {0:?}")]
    Rational(String),
    #[error("{0}")]
    Invalid(String),
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses a rational, accepting only the canonical spelling.
pub fn parse_rational(s: &str) -> Result<Rational, FormatError> {
    let r = Rational::from_str(s).map_err(|_| FormatError::Rational(s.to_string()))?;
    if format_rational(&r) != s {
        return Err(FormatError::Rational(s.to_string()));
    }
    Ok(r)
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub left: usize,
    pub right: usize,
    pub result: BTreeMap<usize, String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub format: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketRecord>,
}

impl TensorFile {
    pub fn from_algebra(l: &LeibnizAlgebra) -> Self {
        let brackets = l
            .tensor()
            .nonzero_pairs()
            .map(|(i, j)| BracketRecord {
                left: i,
                right: j,
                result: l
                    .basis_bracket(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, format_rational(c)))
                    .collect(),
            })
            .collect();
        Self {
            format: TENSOR_FORMAT.to_string(),
            dim: l.dim(),
            basis: l.labels().to_vec(),
            brackets,
        }
    }

    pub fn to_algebra(&self) -> Result<LeibnizAlgebra, FormatError> {
        if self.format != TENSOR_FORMAT {
            return Err(FormatError::Tag {
                expected: TENSOR_FORMAT,
                found: self.format.clone(),
            });
        }
        let n = self.dim;
        if self.basis.len() != n {
            return Err(FormatError::Invalid(format!(
                "basis has {} labels, dim is {n}",
                self.basis.len()
            )));
        }
        let mut tensor = StructureTensor::zero(n);
        let mut seen = std::collections::BTreeSet::new();
        for rec in &self.brackets {
            if rec.left >= n || rec.right >= n {
                return Err(FormatError::Invalid(format!(
                    "bracket ({}, {}) out of range for dim {n}",
                    rec.left, rec.right
                )));
            }
            if !seen.insert((rec.left, rec.right)) {
                return Err(FormatError::Invalid(format!(
                    "bracket ({}, {}) listed twice",
                    rec.left, rec.right
                )));
            }
            for (&k, c) in &rec.result {
                if k >= n {
                    return Err(FormatError::Invalid(format!(
                        "result index {k} out of range for dim {n}"
                    )));
                }
                tensor.set(rec.left, rec.right, k, parse_rational(c)?);
            }
        }
        LeibnizAlgebra::new(tensor, self.basis.clone())
            .map_err(|e| FormatError::Invalid(e.to_string()))
    }
}

/// Pretty JSON with a trailing newline.
fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn serialize_tensor(l: &LeibnizAlgebra) -> String {
    to_pretty(&TensorFile::from_algebra(l))
}

pub fn parse_tensor(text: &str) -> Result<LeibnizAlgebra, FormatError> {
    serde_json::from_str::<TensorFile>(text)?.to_algebra()
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.row_vectors()
        .map(|row| row.iter().map(format_rational).collect())
        .collect()
}

fn matrix_from_rows(rows: &[Vec<String>], n: usize, what: &str) -> Result<Matrix, FormatError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(FormatError::Invalid(format!("{what} must be {n}x{n}")));
    }
    let entries = rows
        .iter()
        .flatten()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::new(n, n, entries).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn vector_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_vector(v: &[String]) -> Result<Vec<Rational>, FormatError> {
    v.iter().map(|s| parse_rational(s)).collect()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub format: String,
    pub size: usize,
    pub rows: Vec<Vec<String>>,
}

pub fn serialize_matrix(m: &Matrix) -> String {
    to_pretty(&MatrixFile {
        format: MATRIX_FORMAT.to_string(),
        size: m.rows(),
        rows: matrix_rows(m),
    })
}

pub fn parse_matrix(text: &str) -> Result<Matrix, FormatError> {
    let file: MatrixFile = serde_json::from_str(text)?;
    if file.format != MATRIX_FORMAT {
        return Err(FormatError::Tag {
            expected: MATRIX_FORMAT,
            found: file.format,
        });
    }
    matrix_from_rows(&file.rows, file.size, "matrix")
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub format: String,
    pub base_dim: usize,
    pub fiber: TensorFile,
    /// `l[x]` as a list of rows.
    pub l: Vec<Vec<Vec<String>>>,
    pub r: Vec<Vec<Vec<String>>>,
    /// `omega[x][y]` as a fiber vector.
    pub omega: Vec<Vec<Vec<String>>>,
}

pub fn serialize_extension(e: &ExtensionData) -> String {
    let m = e.base_dim();
    to_pretty(&ExtensionFile {
        format: EXTENSION_FORMAT.to_string(),
        base_dim: m,
        fiber: TensorFile::from_algebra(e.fiber()),
        l: e.l().iter().map(matrix_rows).collect(),
        r: e.r().iter().map(matrix_rows).collect(),
        omega: (0..m)
            .map(|x| (0..m).map(|y| vector_strings(e.omega(x, y))).collect())
            .collect(),
    })
}

pub fn parse_extension(text: &str) -> Result<ExtensionData, FormatError> {
    let file: ExtensionFile = serde_json::from_str(text)?;
    if file.format != EXTENSION_FORMAT {
        return Err(FormatError::Tag {
            expected: EXTENSION_FORMAT,
            found: file.format,
        });
    }
    let fiber = file.fiber.to_algebra()?;
    let s = fiber.dim();
    let m = file.base_dim;
    if file.l.len() != m || file.r.len() != m || file.omega.len() != m {
        return Err(FormatError::Invalid(format!(
            "l, r and omega must each have {m} entries"
        )));
    }
    let l = file
        .l
        .iter()
        .map(|rows| matrix_from_rows(rows, s, "l"))
        .collect::<Result<Vec<_>, _>>()?;
    let r = file
        .r
        .iter()
        .map(|rows| matrix_from_rows(rows, s, "r"))
        .collect::<Result<Vec<_>, _>>()?;
    let omega = file
        .omega
        .iter()
        .map(|row| row.iter().map(|v| parse_vector(v)).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    ExtensionData::new(fiber, l, r, omega).map_err(|e| FormatError::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use leibniz_core::exactlin::{rat, ratio};
    use leibniz_core::extensions::paper_family_extension;
    use leibniz_core::families::{l_n, paper_presentation};

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(5)), "5");
        assert_eq!(parse_rational("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("0").unwrap(), rat(0));
        for bad in ["2/4", "+1", "1/1", "01", "-0", "1/0", "3/-2", "x", "", "1.5", " 1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ln_file_has_one_record() {
        let text = serialize_tensor(&l_n(4).unwrap());
        let file: TensorFile = serde_json::from_str(&text).unwrap();
        assert_eq!(file.brackets.len(), 1);
        assert_eq!(file.brackets[0].left, 1);
        assert_eq!(file.brackets[0].right, 0);
        assert_eq!(file.brackets[0].result, BTreeMap::from([(0, "1".to_string())]));
        assert!(text.starts_with("{\n  \"format\": \"leibniz-tensor/1\",\n  \"dim\": 4,"));
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn tensor_round_trip() {
        let l = paper_presentation(4, &[ratio(1, 2), rat(0)], &[rat(-3), rat(2)]).unwrap();
        let text = serialize_tensor(&l);
        let back = parse_tensor(&text).unwrap();
        assert_eq!(back, l);
        assert_eq!(serialize_tensor(&back), text);
    }

    #[test]
    fn malformed_tensors_are_rejected() {
        let good = serialize_tensor(&l_n(2).unwrap());
        let cases = [
            good.replace("leibniz-tensor/1", "leibniz-tensor/2"),
            good.replace("\"dim\": 2", "\"dim\": 3"),
            good.replace("\"left\": 1", "\"left\": 5"),
            good.replace("\"0\": \"1\"", "\"0\": \"2/2\""),
            good.replace("\"0\": \"1\"", "\"7\": \"1\""),
            good.replace("\"dim\"", "\"extra\": 1,\n  \"dim\""),
            good[..good.len() / 2].to_string(),
        ];
        for case in cases {
            assert!(parse_tensor(&case).is_err(), "{case}");
        }
    }

    #[test]
    fn extension_and_matrix_round_trip() {
        let e = paper_family_extension(4, &[rat(1), ratio(-1, 2)], &[rat(3), rat(0)]).unwrap();
        let text = serialize_extension(&e);
        assert_eq!(parse_extension(&text).unwrap(), e);

        let m = Matrix::from_i64(&[&[1, -2], &[0, 3]]);
        assert_eq!(parse_matrix(&serialize_matrix(&m)).unwrap(), m);
        assert!(parse_matrix("{\"format\": \"leibniz-matrix/1\", \"size\": 2, \"rows\": [[\"1\"]]}").is_err());
    }
}
