//! Randomized search for counterexamples to `dim R <= M(m + 1, n)` and the
//! chain bounds, over random unital subalgebras of `U_n^*(GF(p))`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::MatrixAlgebra;
use crate::chain::{bound_check, BoundReport};
use crate::document::AlgebraDocument;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{FieldKind, FieldSpec};

pub const FUZZ_PRIMES: [u64; 4] = [2, 3, 5, 7];
pub const FUZZ_MAX_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub n: usize,
    pub field: FieldSpec,
    pub trials: usize,
    pub seed: u64,
    /// Number of random strictly upper triangular generators per trial.
    pub density: usize,
}

impl FuzzConfig {
    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > FUZZ_MAX_N {
            return Err(Error::OutOfRange(format!(
                "fuzz needs 1 <= n <= {FUZZ_MAX_N}, got {}",
                self.n
            )));
        }
        if self.field.kind() != FieldKind::Prime || !FUZZ_PRIMES.contains(&self.field.characteristic()) {
            return Err(Error::OutOfRange(format!(
                "fuzz needs GF(p) with p in {FUZZ_PRIMES:?}, got {}",
                self.field
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    pub failed: Vec<String>,
    pub document: AlgebraDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub n: usize,
    pub field: String,
    pub trials: usize,
    pub seed: u64,
    pub density: usize,
    pub lie_index_histogram: BTreeMap<usize, usize>,
    pub chain_length_histogram: BTreeMap<usize, usize>,
    pub dimension_histogram: BTreeMap<usize, usize>,
    pub attained_bound: usize,
    pub violations: Vec<Violation>,
}

/// The random algebra of trial `trial`: `density` strictly upper triangular
/// matrices drawn from a ChaCha8 stream seeded with `seed + trial`, closed with
/// the identity.
pub fn sample_algebra(cfg: &FuzzConfig, trial: usize) -> (Vec<Matrix>, MatrixAlgebra) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(trial as u64));
    let gens: Vec<Matrix> = (0..cfg.density)
        .map(|_| Matrix::random_strictly_upper(&cfg.field, cfg.n, &mut rng))
        .collect();
    let r = MatrixAlgebra::close_generators(&cfg.field, cfg.n, &gens, true).expect("generators have the right shape");
    (gens, r)
}

fn failures(report: &BoundReport, n: usize) -> Vec<String> {
    let mut out: Vec<String> = report
        .verdicts
        .iter()
        .filter(|v| !v.passed)
        .map(|v| format!("{}: {} > {}", v.name, v.lhs, v.rhs))
        .collect();
    out.extend(
        report
            .chain_checks
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail)),
    );
    if report.d.iter().sum::<usize>() != n {
        out.push(format!("d = {:?} does not sum to n = {n}", report.d));
    }
    out
}

pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzSummary> {
    cfg.validate()?;
    let outcomes = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let (gens, r) = sample_algebra(cfg, trial);
            let report = bound_check(&r);
            (trial, gens, report)
        })
        .collect::<Vec<_>>();

    let mut summary = FuzzSummary {
        n: cfg.n,
        field: cfg.field.short_name(),
        trials: cfg.trials,
        seed: cfg.seed,
        density: cfg.density,
        lie_index_histogram: BTreeMap::new(),
        chain_length_histogram: BTreeMap::new(),
        dimension_histogram: BTreeMap::new(),
        attained_bound: 0,
        violations: Vec::new(),
    };
    for (trial, gens, report) in outcomes {
        let label = Some(format!(
            "fuzz n={} {} seed={} trial={trial}",
            cfg.n,
            cfg.field.short_name(),
            cfg.seed
        ));
        let document = AlgebraDocument::from_matrices(&cfg.field, cfg.n, &gens, label);
        let report = match report {
            Ok(r) => r,
            Err(e) => {
                summary.violations.push(Violation {
                    trial,
                    failed: vec![e.to_string()],
                    document,
                });
                continue;
            }
        };
        *summary
            .lie_index_histogram
            .entry(report.lie_index.unwrap_or(0))
            .or_default() += 1;
        *summary.chain_length_histogram.entry(report.chain_length).or_default() += 1;
        *summary.dimension_histogram.entry(report.dimension).or_default() += 1;
        if report.m_lie_index == Some(report.dimension as u128) {
            summary.attained_bound += 1;
        }
        let failed = failures(&report, cfg.n);
        if !failed.is_empty() {
            summary.violations.push(Violation {
                trial,
                failed,
                document,
            });
        }
    }
    Ok(summary)
}
