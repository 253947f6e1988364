//! The JSON algebra document: a field, a matrix size and generator matrices
//! whose entries are scalars in their text form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{FieldKind, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDescriptor {
    Rational,
    Prime {
        p: u64,
    },
    Extension {
        p: u64,
        degree: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u64>>,
    },
}

impl FieldDescriptor {
    pub fn to_field(&self) -> Result<FieldSpec> {
        match self {
            FieldDescriptor::Rational => Ok(FieldSpec::rational()),
            FieldDescriptor::Prime { p } => FieldSpec::prime(*p),
            FieldDescriptor::Extension { p, degree, modulus } => {
                let field = match modulus {
                    Some(m) => FieldSpec::extension(*p, m.clone())?,
                    None => FieldSpec::extension_default(*p, *degree)?,
                };
                if field.degree() != *degree {
                    return Err(Error::InvalidModulus(format!(
                        "modulus has degree {}, but degree {degree} was declared",
                        field.degree()
                    )));
                }
                Ok(field)
            }
        }
    }

    pub fn from_field(field: &FieldSpec) -> Self {
        match field.kind() {
            FieldKind::Rational => FieldDescriptor::Rational,
            FieldKind::Prime => FieldDescriptor::Prime {
                p: field.characteristic(),
            },
            FieldKind::Extension => FieldDescriptor::Extension {
                p: field.characteristic(),
                degree: field.degree(),
                modulus: field.modulus().map(<[u64]>::to_vec),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub field: FieldDescriptor,
    pub n: usize,
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A validated document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedDocument {
    pub field: FieldSpec,
    pub n: usize,
    pub generators: Vec<Matrix>,
    pub label: Option<String>,
}

fn at(path: impl Into<String>, message: impl std::fmt::Display) -> Error {
    Error::Document {
        path: path.into(),
        message: message.to_string(),
    }
}

impl AlgebraDocument {
    /// Parses JSON text; syntax and type errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let message = e.to_string();
            // serde_json appends " at line L column C"; the path carries it instead.
            let message = message
                .rsplit_once(" at line ")
                .map_or(message.as_str(), |(head, _)| head)
                .to_string();
            at(format!("line {} column {}", e.line(), e.column()), message)
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_matrices(field: &FieldSpec, n: usize, generators: &[Matrix], label: Option<String>) -> Self {
        AlgebraDocument {
            field: FieldDescriptor::from_field(field),
            n,
            generators: generators.iter().map(Matrix::to_strings).collect(),
            label,
        }
    }

    /// Checks the field, the size and every entry, reporting the first problem
    /// with its JSON path (for example `generators[2][1][0]`).
    pub fn validate(&self) -> Result<ParsedDocument> {
        let field = self.field.to_field().map_err(|e| at("field", e))?;
        if self.n == 0 {
            return Err(at("n", "matrix size must be at least 1"));
        }
        let n = self.n;
        let mut generators = Vec::with_capacity(self.generators.len());
        for (g, rows) in self.generators.iter().enumerate() {
            if rows.len() != n {
                return Err(at(
                    format!("generators[{g}]"),
                    format!("expected {n} rows, found {}", rows.len()),
                ));
            }
            let mut parsed = Vec::with_capacity(n);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != n {
                    return Err(at(
                        format!("generators[{g}][{i}]"),
                        format!("expected {n} entries, found {}", row.len()),
                    ));
                }
                let entries = row
                    .iter()
                    .enumerate()
                    .map(|(j, s)| {
                        field
                            .parse_elem(s)
                            .map_err(|e| at(format!("generators[{g}][{i}][{j}]"), e))
                    })
                    .collect::<Result<Vec<_>>>()?;
                parsed.push(entries);
            }
            generators.push(Matrix::from_rows(&field, parsed).map_err(|e| at(format!("generators[{g}]"), e))?);
        }
        Ok(ParsedDocument {
            field,
            n,
            generators,
            label: self.label.clone(),
        })
    }
}

/// Reads and validates a document in one step.
pub fn parse_document(text: &str) -> Result<ParsedDocument> {
    AlgebraDocument::from_json(text)?.validate()
}
