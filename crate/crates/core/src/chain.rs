//! The descending chain `R = R_1 > R_2 > ... > R_l = F I_n` of a subalgebra of
//! `U_n^*(F)`, its verification, and the bound checks built on it.
//!
//! With `V = F^n` and `P_0 = V`, level `k` records
//!
//! * `J_k = J(R_k)`,
//! * `P_k = P_{k-1} J_k = V J_1 ... J_k`,
//! * `U_k`, a complement of `P_k` in `P_{k-1}`, and `d_k = dim U_k`,
//!
//! and `R_{k+1} = F I_n + (0 :^{R_k} U_k)`. The chain stops at the first `k`
//! with `J_k = 0`, which is `l`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{annihilator, module_product, nilpotency_degree, product_space, strictly_upper, MatrixAlgebra};
use crate::bound::m_closed_form;
use crate::error::{Error, Result};
use crate::lie::{lie_nilpotence_index, lie_solvability_index};
use crate::linalg::{complement_within, random_complement_within, Matrix, Subspace};
use crate::scalar::FieldSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ComplementStrategy {
    /// Greedy scan of the outer RREF basis.
    Deterministic,
    /// Random complements from a ChaCha8 stream seeded with `seed`.
    Seeded { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLevel {
    pub algebra: MatrixAlgebra,
    pub radical: Subspace,
    pub product: Subspace,
    pub complement: Subspace,
}

impl ChainLevel {
    pub fn d(&self) -> usize {
        self.complement.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainTrace {
    pub field: FieldSpec,
    pub n: usize,
    /// `V = F^n`, also `P_0`.
    pub v: Subspace,
    /// `levels[k - 1]` is level `k`.
    pub levels: Vec<ChainLevel>,
    pub strategy: ComplementStrategy,
}

impl ChainTrace {
    /// `l`.
    pub fn length(&self) -> usize {
        self.levels.len()
    }

    pub fn d(&self) -> Vec<usize> {
        self.levels.iter().map(ChainLevel::d).collect()
    }

    pub fn algebra_dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.algebra.dim()).collect()
    }

    /// `P_{k-1}` for `k` in `1..=l`.
    pub fn previous_product(&self, k: usize) -> &Subspace {
        if k == 1 {
            &self.v
        } else {
            &self.levels[k - 2].product
        }
    }
}

/// `F I_n + (0 :^{R} U)`, with the annihilator checked to be strictly upper.
fn next_algebra(r: &MatrixAlgebra, u: &Subspace) -> Result<(MatrixAlgebra, Subspace)> {
    let f = r.field();
    let n = r.n();
    let ann = annihilator(r.carrier(), u)?;
    if !strictly_upper(f, n).contains(&ann)? {
        return Err(Error::Invariant(
            "annihilator of a nonzero complement contains a unit".into(),
        ));
    }
    let id = Subspace::from_matrices(f, n, [&Matrix::identity(f, n)])?;
    let next = MatrixAlgebra::from_carrier(n, id.sum(&ann)?)?;
    Ok((next, ann))
}

/// Runs the chain construction on a unital subalgebra of `U_n^*(F)`.
pub fn compute_chain(r: &MatrixAlgebra, strategy: ComplementStrategy) -> Result<ChainTrace> {
    if !r.is_unital() || !r.is_upper_constant_diagonal() {
        return Err(Error::NotConstantDiagonal);
    }
    let f = r.field().clone();
    let n = r.n();
    let v = Subspace::full(&f, n);
    let mut rng = match strategy {
        ComplementStrategy::Deterministic => None,
        ComplementStrategy::Seeded { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };

    let mut levels: Vec<ChainLevel> = Vec::new();
    let mut algebra = r.clone();
    let mut previous = v.clone();
    // J_0 J_1 ... J_k as a matrix space, for the product form of the stopping rule.
    let mut matrix_product = r.carrier().clone();
    let mut expected_radical: Option<Subspace> = None;
    loop {
        if levels.len() > n + 1 {
            return Err(Error::Invariant("chain failed to terminate".into()));
        }
        let radical = algebra.radical_triangular()?;
        if let Some(ann) = &expected_radical {
            if ann != &radical {
                return Err(Error::Invariant(
                    "radical differs from the annihilator it came from".into(),
                ));
            }
        }
        matrix_product = product_space(&matrix_product, &radical, n);
        let product = module_product(&previous, &radical)?;
        let complement = match rng.as_mut() {
            None => complement_within(&product, &previous)?,
            Some(rng) => random_complement_within(&product, &previous, rng)?,
        };
        let done = radical.is_zero();
        if done != matrix_product.is_zero() {
            return Err(Error::Invariant("the two stopping rules disagree".into()));
        }
        let level = ChainLevel {
            algebra: algebra.clone(),
            radical,
            product: product.clone(),
            complement,
        };
        if done {
            levels.push(level);
            break;
        }
        let (next, ann) = next_algebra(&algebra, &level.complement)?;
        levels.push(level);
        expected_radical = Some(ann);
        algebra = next;
        previous = product;
    }
    let trace = ChainTrace {
        field: f,
        n,
        v,
        levels,
        strategy,
    };
    let report = verify_chain(&trace);
    if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::Invariant(format!(
            "chain check `{}` failed: {}",
            bad.name, bad.detail
        )));
    }
    Ok(trace)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub checks: Vec<Check>,
}

impl ChainReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Collects failures for one named check.
struct Item {
    name: &'static str,
    failures: Vec<String>,
}

impl Item {
    fn new(name: &'static str) -> Self {
        Item {
            name,
            failures: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self) -> Check {
        Check {
            name: self.name.to_string(),
            passed: self.failures.is_empty(),
            detail: if self.failures.is_empty() {
                "ok".to_string()
            } else {
                self.failures.join("; ")
            },
        }
    }
}

fn sum_all<'a>(field: &FieldSpec, n: usize, spaces: impl IntoIterator<Item = &'a Subspace>) -> Subspace {
    spaces.into_iter().fold(Subspace::zero(field, n), |acc, s| {
        acc.sum(s).expect("same ambient space")
    })
}

/// Re-derives every structural property of a trace from subspace arithmetic
/// alone. Failures are report entries, never errors.
pub fn verify_chain(t: &ChainTrace) -> ChainReport {
    let f = &t.field;
    let n = t.n;
    let l = t.length();
    let us: Vec<&Subspace> = t.levels.iter().map(|lv| &lv.complement).collect();

    let mut direct = Item::new("complement_direct_sum");
    let mut generation = Item::new("generation");
    let mut decomposition = Item::new("module_decomposition");
    let mut faithful = Item::new("faithful");
    let mut image_dim = Item::new("radical_image_dimension");
    let mut descent = Item::new("strict_descent");

    let mut running = 0usize;
    for (idx, lv) in t.levels.iter().enumerate() {
        let k = idx + 1;
        let prev = t.previous_product(k);
        let u = &lv.complement;

        let meet = u.intersect(&lv.product).map(|s| s.is_zero()).unwrap_or(false);
        let spans = u.sum(&lv.product).map(|s| &s == prev).unwrap_or(false);
        direct.require(meet && spans, || {
            format!("level {k}: U_k is not a complement of P_k in P_(k-1)")
        });

        let generated = module_product(u, lv.algebra.carrier())
            .map(|s| &s == prev)
            .unwrap_or(false);
        generation.require(generated, || format!("level {k}: U_k R_k != P_(k-1)"));
        let tail = sum_all(f, n, us[idx..].iter().copied());
        let tail_dims: usize = us[idx..].iter().map(|s| s.dim()).sum();
        generation.require(&tail == prev && tail.dim() == tail_dims, || {
            format!("level {k}: P_(k-1) is not the direct sum of U_k..U_l")
        });
        decomposition.require(u.dim() >= 1, || format!("level {k}: d_k = 0"));

        let kills = annihilator(lv.algebra.carrier(), prev)
            .map(|s| s.is_zero())
            .unwrap_or(false);
        faithful.require(kills, || format!("level {k}: P_(k-1) is not faithful over R_k"));

        running += u.dim();
        let image = module_product(u, &lv.radical).map(|s| s.dim()).unwrap_or(usize::MAX);
        image_dim.require(image == n.saturating_sub(running), || {
            format!(
                "level {k}: dim U_k J_k = {image}, expected {}",
                n.saturating_sub(running)
            )
        });

        if k < l {
            descent.require(!lv.radical.is_zero(), || {
                format!("level {k}: J_k = 0 before the last level")
            });
            let next = &t.levels[idx + 1].algebra;
            let strict =
                lv.algebra.carrier().contains(next.carrier()).unwrap_or(false) && next.dim() < lv.algebra.dim();
            descent.require(strict, || {
                format!("level {k}: R_(k+1) is not a proper subalgebra of R_k")
            });
            let rebuilt = next_algebra(&lv.algebra, u).map(|(r, _)| &r == next).unwrap_or(false);
            descent.require(rebuilt, || format!("level {k}: R_(k+1) != F I + (0 : U_k)"));
        }
    }
    let whole = sum_all(f, n, us.iter().copied());
    let total: usize = us.iter().map(|s| s.dim()).sum();
    decomposition.require(whole == t.v && total == n, || {
        format!("V is not the direct sum of the U_k (sum of d_k = {total}, n = {n})")
    });
    match t.levels.last() {
        Some(last) => {
            descent.require(last.radical.is_zero(), || "J_l != 0".into());
            descent.require(last.algebra == MatrixAlgebra::scalars(f, n), || "R_l != F I_n".into());
        }
        None => descent.require(false, || "empty chain".into()),
    }

    ChainReport {
        checks: vec![
            direct.finish(),
            generation.finish(),
            decomposition.finish(),
            faithful.finish(),
            image_dim.finish(),
            descent.finish(),
        ],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub lhs: u128,
    pub rhs: u128,
    pub passed: bool,
}

impl Verdict {
    fn le(name: &str, lhs: u128, rhs: u128) -> Self {
        Verdict {
            name: name.to_string(),
            lhs,
            rhs,
            passed: lhs <= rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub dimension: usize,
    pub lie_index: Option<usize>,
    pub solvability_index: Option<usize>,
    pub chain_length: usize,
    pub d: Vec<usize>,
    pub nilpotency_degree: usize,
    pub m_chain_length: u128,
    pub m_lie_index: Option<u128>,
    pub floor_bound: Option<u128>,
    pub chain_checks: ChainReport,
    pub verdicts: Vec<Verdict>,
}

impl BoundReport {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed) && self.chain_checks.all_passed()
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

/// All bound verdicts for a unital subalgebra of `U_n^*(F)`.
pub fn bound_check(r: &MatrixAlgebra) -> Result<BoundReport> {
    let trace = compute_chain(r, ComplementStrategy::Deterministic)?;
    let n = r.n();
    let nn = n as u64;
    let dim = r.dim() as u128;
    let radical = r.radical_triangular()?;
    let nu = nilpotency_degree(&radical, n)
        .ok_or_else(|| Error::Invariant("radical of a triangular algebra is not nilpotent".into()))?;
    let lie = lie_nilpotence_index(r);
    let l = trace.length();
    let m_chain = m_closed_form(l as u64, nn)?;

    let mut verdicts = vec![Verdict::le("chain_length_le_nilpotency_degree", l as u128, nu as u128)];
    let (m_lie, floor) = match lie {
        Some(m) => {
            let ml = m_closed_form(m as u64 + 1, nn)?;
            verdicts.push(Verdict::le(
                "chain_length_le_lie_index_plus_one",
                l as u128,
                m as u128 + 1,
            ));
            (Some(ml), Some(crate::bound::floor_bound(m as u64 + 1, nn)?))
        }
        None => (None, None),
    };
    verdicts.push(Verdict::le("dim_le_m_chain_length", dim, m_chain));
    if let Some(ml) = m_lie {
        verdicts.push(Verdict::le("dim_le_m_lie_index_plus_one", dim, ml));
    }
    verdicts.push(Verdict::le("dim_le_triangular_ceiling", dim, m_closed_form(nn, nn)?));
    verdicts.push(Verdict::le(
        "dim_le_m_nilpotency_degree",
        dim,
        m_closed_form(nu as u64, nn)?,
    ));

    Ok(BoundReport {
        n,
        dimension: r.dim(),
        lie_index: lie,
        solvability_index: lie_solvability_index(r),
        chain_length: l,
        d: trace.d(),
        nilpotency_degree: nu,
        m_chain_length: m_chain,
        m_lie_index: m_lie,
        floor_bound: floor,
        chain_checks: verify_chain(&trace),
        verdicts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub trials: usize,
    pub seed: u64,
    /// `(dim R_1, ..., dim R_l)` and how often it was observed.
    pub algebra_dims: BTreeMap<String, usize>,
    pub d_sequences: BTreeMap<String, usize>,
    pub lengths: BTreeMap<usize, usize>,
    pub length_varied: bool,
    pub d_varied: bool,
}

fn seq_key(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

/// Re-runs the chain with random complements (trial `i` seeded `seed + i`)
/// and tallies what changed. Records observations only.
pub fn complement_sensitivity_experiment(r: &MatrixAlgebra, trials: usize, seed: u64) -> Result<SensitivityReport> {
    if trials == 0 {
        return Err(Error::OutOfRange("at least one trial is required".into()));
    }
    let traces = (0..trials)
        .into_par_iter()
        .map(|i| {
            compute_chain(
                r,
                ComplementStrategy::Seeded {
                    seed: seed.wrapping_add(i as u64),
                },
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = SensitivityReport {
        trials,
        seed,
        algebra_dims: BTreeMap::new(),
        d_sequences: BTreeMap::new(),
        lengths: BTreeMap::new(),
        length_varied: false,
        d_varied: false,
    };
    for t in &traces {
        *report.algebra_dims.entry(seq_key(&t.algebra_dims())).or_default() += 1;
        *report.d_sequences.entry(seq_key(&t.d())).or_default() += 1;
        *report.lengths.entry(t.length()).or_default() += 1;
    }
    report.length_varied = report.lengths.len() > 1;
    report.d_varied = report.d_sequences.len() > 1;
    Ok(report)
}
