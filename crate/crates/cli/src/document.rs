//! JSON file formats: factorizations, Betti tables and cohomology tables.

use std::path::Path;

use mfkit_core::algebra::{parse_poly, Degree, Field};
use mfkit_core::mf::{BettiTable, MatrixFactorization, MfCandidate};
use mfkit_core::orlov::CohomologyTable;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl FieldSpec {
    pub fn of(field: Field) -> Self {
        match field {
            Field::Rational => FieldSpec { kind: "Q".into(), p: None },
            Field::GaussianRational => FieldSpec { kind: "Qi".into(), p: None },
            Field::Prime(p) => FieldSpec { kind: "Fp".into(), p: Some(p) },
        }
    }

    pub fn to_field(&self) -> Result<Field, CliError> {
        match (self.kind.as_str(), self.p) {
            ("Q", None) => Ok(Field::Rational),
            ("Qi", None) => Ok(Field::GaussianRational),
            ("Fp", Some(p)) => Ok(Field::prime(p)?),
            ("Fp", None) => Err(CliError::invalid("cli", "field Fp needs a prime \"p\"")),
            ("Q" | "Qi", Some(_)) => Err(CliError::invalid("cli", format!("field {} takes no \"p\"", self.kind))),
            (other, _) => Err(CliError::invalid("cli", format!("unknown field type {other:?}; use Q, Qi or Fp"))),
        }
    }
}

/// A graded matrix factorization as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfDocument {
    pub schema_version: u32,
    pub field: FieldSpec,
    pub nvars: usize,
    pub f: String,
    pub d: u64,
    #[serde(rename = "F0_degrees")]
    pub f0_degrees: Vec<i64>,
    #[serde(rename = "F1_degrees")]
    pub f1_degrees: Vec<i64>,
    pub s0: Vec<Vec<String>>,
    pub s1: Vec<Vec<String>>,
}

fn strings(rows: Vec<Vec<mfkit_core::Polynomial>>) -> Vec<Vec<String>> {
    rows.into_iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

impl MfDocument {
    pub fn from_mf(mf: &MatrixFactorization) -> Self {
        MfDocument {
            schema_version: SCHEMA_VERSION,
            field: FieldSpec::of(mf.field()),
            nvars: mf.nvars(),
            f: mf.f().to_string(),
            d: mf.degree(),
            f0_degrees: mf.f0_degrees().as_slice().to_vec(),
            f1_degrees: mf.f1_degrees().as_slice().to_vec(),
            s0: strings(mf.s0().row_vecs()),
            s1: strings(mf.s1().row_vecs()),
        }
    }

    /// Parses every polynomial; the result still has to pass validation.
    pub fn to_candidate(&self) -> Result<MfCandidate, CliError> {
        check_version(self.schema_version)?;
        let field = self.field.to_field()?;
        let parse = |what: String, text: &str| {
            parse_poly(text, field, self.nvars).map_err(|e| CliError::invalid("algebra", format!("{what}: {e}")))
        };
        let f = parse("f".into(), &self.f)?;
        if f.degree() != Degree::Finite(self.d) {
            return Err(CliError::invalid("cli", format!("\"d\" is {} but f has degree {}", self.d, f.degree())));
        }
        let matrix = |name: &str, rows: &[Vec<String>]| -> Result<Vec<Vec<_>>, CliError> {
            rows.iter()
                .enumerate()
                .map(|(r, row)| row.iter().enumerate().map(|(c, t)| parse(format!("{name}[{r}][{c}]"), t)).collect())
                .collect()
        };
        Ok(MfCandidate {
            f,
            f0_degrees: self.f0_degrees.clone(),
            f1_degrees: self.f1_degrees.clone(),
            s0: matrix("s0", &self.s0)?,
            s1: matrix("s1", &self.s1)?,
        })
    }

    pub fn to_mf(&self) -> Result<MatrixFactorization, CliError> {
        Ok(MatrixFactorization::validate(&self.to_candidate()?)?)
    }
}

fn check_version(v: u32) -> Result<(), CliError> {
    if v != SCHEMA_VERSION {
        return Err(CliError::invalid("cli", format!("unsupported schema_version {v}, expected {SCHEMA_VERSION}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiEntry {
    pub i: u8,
    pub j: i64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyEntry {
    pub p: i64,
    pub h: i64,
    pub count: u64,
}

/// Betti or cohomology table on disk, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TableDocument {
    Betti { schema_version: u32, entries: Vec<BettiEntry> },
    Cohomology { schema_version: u32, n: i64, entries: Vec<CohomologyEntry> },
}

impl TableDocument {
    pub fn from_betti(b: &BettiTable) -> Self {
        TableDocument::Betti {
            schema_version: SCHEMA_VERSION,
            entries: b.iter().map(|((i, j), count)| BettiEntry { i, j, count }).collect(),
        }
    }

    pub fn from_cohomology(t: &CohomologyTable) -> Self {
        TableDocument::Cohomology {
            schema_version: SCHEMA_VERSION,
            n: t.n(),
            entries: t.iter().map(|((p, h), count)| CohomologyEntry { p, h, count }).collect(),
        }
    }

    pub fn to_betti(&self) -> Result<BettiTable, CliError> {
        match self {
            TableDocument::Betti { schema_version, entries } => {
                check_version(*schema_version)?;
                let mut b = BettiTable::new();
                for e in entries {
                    if e.i > 1 {
                        return Err(CliError::invalid("cli", format!("Betti index i = {} must be 0 or 1", e.i)));
                    }
                    b.add(e.i, e.j, e.count);
                }
                Ok(b)
            }
            TableDocument::Cohomology { .. } => {
                Err(CliError::invalid("cli", "expected a Betti table, found a cohomology table"))
            }
        }
    }

    pub fn to_cohomology(&self) -> Result<CohomologyTable, CliError> {
        match self {
            TableDocument::Cohomology { schema_version, n, entries } => {
                check_version(*schema_version)?;
                let mut t = CohomologyTable::new(*n);
                for e in entries {
                    t.add(e.p, e.h, e.count);
                }
                Ok(t)
            }
            TableDocument::Betti { .. } => {
                Err(CliError::invalid("cli", "expected a cohomology table, found a Betti table"))
            }
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::invalid("cli", format!("{}: schema violation: {e}", path.display())))
}

pub fn read_mf(path: &Path) -> Result<(MatrixFactorization, String), CliError> {
    let text = read_text(path)?;
    let doc: MfDocument = parse_json(path, &text)?;
    Ok((doc.to_mf()?, text))
}

pub fn read_table(path: &Path) -> Result<(TableDocument, String), CliError> {
    let text = read_text(path)?;
    Ok((parse_json(path, &text)?, text))
}

/// Betti table of a factorization document (detected by its `s0` key), or
/// a Betti table document as is.
pub fn read_betti(path: &Path) -> Result<(BettiTable, String), CliError> {
    let text = read_text(path)?;
    let value: Value = parse_json(path, &text)?;
    let betti = if value.get("s0").is_some() {
        let doc: MfDocument = parse_json(path, &text)?;
        doc.to_mf()?.betti()?
    } else {
        let doc: TableDocument = parse_json(path, &text)?;
        doc.to_betti()?
    };
    Ok((betti, text))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use mfkit_core::mf::{fermat, presentation_equivalent};

    #[test]
    fn factorization_round_trip() {
        for field in [Field::GaussianRational, Field::Prime(13)] {
            let g = fermat(field, 2, 2, true).unwrap();
            let doc = MfDocument::from_mf(&g);
            let text = serde_json::to_string(&doc).unwrap();
            let back: MfDocument = serde_json::from_str(&text).unwrap();
            assert!(presentation_equivalent(&back.to_mf().unwrap(), &g));
        }
    }

    #[test]
    fn field_specs() {
        assert_eq!(FieldSpec::of(Field::Prime(5)).to_field().unwrap(), Field::Prime(5));
        assert!(FieldSpec { kind: "Fp".into(), p: Some(9) }.to_field().is_err());
        assert!(FieldSpec { kind: "R".into(), p: None }.to_field().is_err());
    }

    #[test]
    fn tables_round_trip() {
        let mut b = BettiTable::new();
        b.add(0, 2, 2);
        b.add(1, 0, 2);
        let doc = TableDocument::from_betti(&b);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("\"kind\":\"betti\""));
        let back: TableDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_betti().unwrap(), b);
        assert!(back.to_cohomology().is_err());
    }
}
