//! The analysis pipeline behind `lienil analyze`: close the generators, move
//! the algebra into `U_n^*(F)` when possible, optionally split it along
//! central idempotents, and check every bound.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{module_product, MatrixAlgebra};
use crate::bound::m_closed_form;
use crate::chain::{
    bound_check, complement_sensitivity_experiment, compute_chain, verify_chain, BoundReport, ChainReport, ChainTrace,
    ComplementStrategy, SensitivityReport, Verdict,
};
use crate::document::ParsedDocument;
use crate::error::{Error, Result};
use crate::lie::{lie_nilpotence_index, lie_solvability_index};
use crate::linalg::{Matrix, Subspace};
use crate::peirce::peirce_decompose;
use crate::scalar::FieldSpec;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub peirce: bool,
    /// Include the conjugating matrix in the report.
    pub triangularize: bool,
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Violation,
    NotLieNilpotent,
}

/// How the bounds were checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum BoundOutcome {
    /// Full chain analysis inside `U_n^*(F)`.
    Chain {
        report: BoundReport,
    },
    /// `dim R <= M(m + 1, n)` only; no chain is available.
    Direct {
        verdict: Verdict,
    },
    Skipped {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub rank: usize,
    pub corner_dimension: usize,
    pub ambient_corner_dimension: usize,
    pub analysis: AlgebraAnalysis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraAnalysis {
    pub n: usize,
    pub dimension: usize,
    pub lie_index: Option<usize>,
    pub solvability_index: Option<usize>,
    pub in_triangular_cone: bool,
    pub triangularized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugator: Option<Vec<Vec<String>>>,
    pub bounds: BoundOutcome,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub label: Option<String>,
    pub field: String,
    pub status: Status,
    pub analysis: AlgebraAnalysis,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peirce: Option<Vec<FactorReport>>,
    /// Wall-clock milliseconds, present only when timing was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl AlgebraAnalysis {
    fn violated(&self) -> bool {
        match &self.bounds {
            BoundOutcome::Chain { report } => !report.all_passed(),
            BoundOutcome::Direct { verdict } => !verdict.passed,
            BoundOutcome::Skipped { .. } => false,
        }
    }
}

/// Analyses one algebra without Peirce splitting.
pub fn analyze_algebra(r: &MatrixAlgebra, include_conjugator: bool) -> Result<AlgebraAnalysis> {
    let n = r.n();
    let lie = lie_nilpotence_index(r);
    let mut out = AlgebraAnalysis {
        n,
        dimension: r.dim(),
        lie_index: lie,
        solvability_index: lie_solvability_index(r),
        in_triangular_cone: r.is_unital() && r.is_upper_constant_diagonal(),
        triangularized: false,
        conjugator: None,
        bounds: BoundOutcome::Skipped { reason: String::new() },
        notes: Vec::new(),
    };
    let Some(m) = lie else {
        out.bounds = BoundOutcome::Skipped {
            reason: "algebra is not Lie nilpotent".into(),
        };
        return Ok(out);
    };

    let in_cone = if out.in_triangular_cone {
        Some(r.clone())
    } else {
        match r.triangularize_local() {
            Ok(u) => {
                out.triangularized = true;
                if include_conjugator {
                    out.conjugator = Some(u.to_strings());
                }
                Some(r.conjugate(&u)?)
            }
            Err(Error::NotSplitLocal(why)) => {
                out.notes.push(format!("no triangularization: {why}"));
                None
            }
            Err(e) => return Err(e),
        }
    };
    out.bounds = match in_cone {
        Some(t) => BoundOutcome::Chain {
            report: bound_check(&t)?,
        },
        None => {
            let rhs = m_closed_form(m as u64 + 1, n as u64)?;
            let lhs = r.dim() as u128;
            BoundOutcome::Direct {
                verdict: Verdict {
                    name: "dim_le_m_lie_index_plus_one".into(),
                    lhs,
                    rhs,
                    passed: lhs <= rhs,
                },
            }
        }
    };
    Ok(out)
}

/// Expresses a corner `eRe` as an algebra of `r x r` matrices acting on the
/// row space of `e`.
pub fn restrict_to_image(corner: &MatrixAlgebra, e: &Matrix) -> Result<MatrixAlgebra> {
    let f = corner.field();
    let image = Subspace::span(f, e.rows(), e.row_vecs())?;
    let r = image.dim();
    let pivots = image.pivots().to_vec();
    // The coordinates of a vector of the image in its RREF basis are its
    // entries at the pivot columns.
    let mats = corner
        .basis()
        .iter()
        .map(|a| {
            let rows = image
                .basis()
                .iter()
                .map(|b| {
                    let w = a.left_apply(b);
                    pivots.iter().map(|&p| w[p].clone()).collect()
                })
                .collect();
            Matrix::from_rows(f, rows)
        })
        .collect::<Result<Vec<_>>>()?;
    MatrixAlgebra::from_carrier(r, Subspace::from_matrices(f, r, &mats)?)
}

pub fn analyze(doc: &ParsedDocument, opts: AnalyzeOptions) -> Result<AnalysisReport> {
    let start = Instant::now();
    let r = MatrixAlgebra::close_generators(&doc.field, doc.n, &doc.generators, true)?;
    let analysis = analyze_algebra(&r, opts.triangularize)?;
    let mut notes = Vec::new();
    let peirce = if opts.peirce {
        match peirce_decompose(&r) {
            Ok(factors) => Some(
                factors
                    .iter()
                    .map(|p| {
                        let local = restrict_to_image(&p.corner, &p.idempotent)?;
                        Ok(FactorReport {
                            rank: p.rank,
                            corner_dimension: p.corner.dim(),
                            ambient_corner_dimension: p.ambient_corner_dim,
                            analysis: analyze_algebra(&local, opts.triangularize)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            Err(e @ (Error::TooLarge { .. } | Error::IdempotentNotCentral | Error::OutOfRange(_))) => {
                notes.push(format!("peirce decomposition skipped: {e}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let violated = analysis.violated() || peirce.iter().flatten().any(|p| p.analysis.violated());
    let status = if violated {
        Status::Violation
    } else if analysis.lie_index.is_none() {
        Status::NotLieNilpotent
    } else {
        Status::Pass
    };
    let mut analysis = analysis;
    analysis.notes.extend(notes);
    Ok(AnalysisReport {
        label: doc.label.clone(),
        field: doc.field.to_string(),
        status,
        analysis,
        peirce,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis()),
    })
}

/// One level of a chain trace in report form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub k: usize,
    pub algebra_dim: usize,
    pub algebra_is_scalar: bool,
    pub radical_dim: usize,
    /// RREF basis of `P_k = V J_1 ... J_k`.
    pub product: Vec<Vec<String>>,
    /// RREF basis of `U_k`.
    pub complement: Vec<Vec<String>>,
    pub d: usize,
    /// `dim U_k J_k`.
    pub radical_image_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSummary {
    pub field: String,
    pub n: usize,
    pub strategy: ComplementStrategy,
    pub triangularized: bool,
    pub length: usize,
    pub d: Vec<usize>,
    pub levels: Vec<LevelSummary>,
    pub checks: ChainReport,
}

fn rows_text(field: &FieldSpec, s: &Subspace) -> Vec<Vec<String>> {
    s.basis()
        .iter()
        .map(|v| v.iter().map(|e| field.format_elem(e)).collect())
        .collect()
}

pub fn summarize_chain(t: &ChainTrace, triangularized: bool) -> Result<ChainSummary> {
    let f = &t.field;
    let scalars = MatrixAlgebra::scalars(f, t.n);
    let levels = t
        .levels
        .iter()
        .enumerate()
        .map(|(i, lv)| {
            Ok(LevelSummary {
                k: i + 1,
                algebra_dim: lv.algebra.dim(),
                algebra_is_scalar: lv.algebra == scalars,
                radical_dim: lv.radical.dim(),
                product: rows_text(f, &lv.product),
                complement: rows_text(f, &lv.complement),
                d: lv.d(),
                radical_image_dim: module_product(&lv.complement, &lv.radical)?.dim(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainSummary {
        field: f.to_string(),
        n: t.n,
        strategy: t.strategy,
        triangularized,
        length: t.length(),
        d: t.d(),
        levels,
        checks: verify_chain(t),
    })
}

/// Closes the generators and moves the algebra into `U_n^*(F)`, conjugating
/// if necessary. Returns the algebra and whether a conjugation was applied.
pub fn triangular_algebra(doc: &ParsedDocument) -> Result<(MatrixAlgebra, bool)> {
    let r = MatrixAlgebra::close_generators(&doc.field, doc.n, &doc.generators, true)?;
    if r.is_upper_constant_diagonal() {
        return Ok((r, false));
    }
    let u = r.triangularize_local()?;
    Ok((r.conjugate(&u)?, true))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRun {
    pub trace: ChainSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sensitivity: Option<SensitivityReport>,
}

/// The chain of a document under `strategy`; with a seeded strategy and more
/// than one trial, also the complement sensitivity experiment.
pub fn chain_for_document(doc: &ParsedDocument, strategy: ComplementStrategy, trials: usize) -> Result<ChainRun> {
    let (r, triangularized) = triangular_algebra(doc)?;
    let trace = summarize_chain(&compute_chain(&r, strategy)?, triangularized)?;
    let sensitivity = match strategy {
        ComplementStrategy::Seeded { seed } if trials > 1 => Some(complement_sensitivity_experiment(&r, trials, seed)?),
        _ => None,
    };
    Ok(ChainRun { trace, sensitivity })
}
