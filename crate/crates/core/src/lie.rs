//! Commutators, lower central and derived series, Engel checks and the
//! symbolic expansion of left-normed brackets.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// Largest algebra (in elements) the brute-force routines will enumerate.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// `[a, b] = ab - ba`.
pub fn bracket(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)
}

/// `[[...[x1, x2], ...], xm]`.
pub fn left_normed(xs: &[Matrix]) -> Result<Matrix> {
    let (first, rest) = xs
        .split_first()
        .ok_or_else(|| Error::OutOfRange("left-normed bracket of an empty list".into()))?;
    rest.iter().try_fold(first.clone(), |acc, x| bracket(&acc, x))
}

fn bracket_span(a: &Subspace, b: &Subspace, n: usize) -> Subspace {
    let am = a.to_matrices(n);
    let bm = b.to_matrices(n);
    let brackets = am
        .iter()
        .flat_map(|x| bm.iter().map(move |y| (&(x * y) - &(y * x)).to_flat()));
    Subspace::span(a.field(), n * n, brackets).expect("brackets of n x n matrices")
}

/// `S_1 = R`, `S_{k+1} = [S_k, R]`, until a term is zero or repeats.
pub fn lower_central_series(r: &MatrixAlgebra) -> Vec<Subspace> {
    let mut series = vec![r.carrier().clone()];
    loop {
        let last = series.last().expect("nonempty");
        if last.is_zero() {
            break;
        }
        let next = bracket_span(last, r.carrier(), r.n());
        if &next == last {
            break;
        }
        series.push(next);
    }
    series
}

/// `g^1 = R`, `g^{k} = [g^{k-1}, g^{k-1}]`, until a term is zero or repeats.
pub fn derived_series(r: &MatrixAlgebra) -> Vec<Subspace> {
    let mut series = vec![r.carrier().clone()];
    loop {
        let last = series.last().expect("nonempty");
        if last.is_zero() {
            break;
        }
        let next = bracket_span(last, last, r.n());
        if &next == last {
            break;
        }
        series.push(next);
    }
    series
}

/// Least `m >= 1` with `series[m] = 0` (0-based, i.e. the (m+1)-st term).
fn index_of(series: &[Subspace]) -> Option<usize> {
    let last = series.last().expect("nonempty");
    if !last.is_zero() {
        return None;
    }
    Some((series.len() - 1).max(1))
}

/// Lie nilpotence index: least `m` with `S_{m+1} = 0`; `None` when not Lie
/// nilpotent. The zero algebra gets index 1.
pub fn lie_nilpotence_index(r: &MatrixAlgebra) -> Option<usize> {
    index_of(&lower_central_series(r))
}

/// Lie solvability index: least `m` with `g^{m+1} = 0`; `None` when not solvable.
pub fn lie_solvability_index(r: &MatrixAlgebra) -> Option<usize> {
    index_of(&derived_series(r))
}

/// Whether `[x, y, ..., y] = 0` (y repeated `m` times) for all `x, y` in `R`.
///
/// The expression is linear in `x`, so `x` runs over a basis while `y` runs
/// over every element of the (finite) algebra.
pub fn engel_check_bruteforce(r: &MatrixAlgebra, m: usize) -> Result<bool> {
    let count = r
        .element_count()
        .ok_or_else(|| Error::OutOfRange("Engel enumeration needs a finite field".into()))?;
    if count > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            size: count,
            limit: ENUMERATION_LIMIT,
        });
    }
    let ok = (0..count).into_par_iter().all(|idx| {
        let y = r.element(idx);
        r.basis().iter().all(|x| {
            let mut acc = x.clone();
            for _ in 0..m {
                acc = &(&acc * &y) - &(&y * &acc);
                if acc.is_zero() {
                    return true;
                }
            }
            acc.is_zero()
        })
    });
    Ok(ok)
}

/// `[x_1, ..., x_m]` expanded in the free algebra: words (as 1-based index
/// sequences) with their coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketExpansion {
    pub m: usize,
    pub terms: BTreeMap<Vec<usize>, i8>,
}

impl BracketExpansion {
    /// Terms whose word starts with `x_1`.
    pub fn leading_one_terms(&self) -> Vec<(&Vec<usize>, i8)> {
        self.terms
            .iter()
            .filter(|(w, _)| w.first() == Some(&1))
            .map(|(w, &c)| (w, c))
            .collect()
    }

    /// Evaluate the expansion at concrete matrices `xs[0..m]`.
    pub fn evaluate(&self, xs: &[Matrix]) -> Result<Matrix> {
        if xs.len() != self.m {
            return Err(Error::ShapeMismatch(format!(
                "expansion of length {} evaluated at {} matrices",
                self.m,
                xs.len()
            )));
        }
        let f = xs[0].field();
        let n = xs[0].rows();
        let mut acc = Matrix::zeros(f, n, n);
        for (word, &c) in &self.terms {
            let prod = word[1..]
                .iter()
                .try_fold(xs[word[0] - 1].clone(), |p, &i| p.checked_mul(&xs[i - 1]))?;
            acc = if c > 0 {
                acc.checked_add(&prod)?
            } else {
                acc.checked_sub(&prod)?
            };
        }
        Ok(acc)
    }
}

/// Symbolic expansion of the left-normed bracket of length `m`, `2 <= m <= 8`.
pub fn expand_left_normed(m: usize) -> Result<BracketExpansion> {
    if !(2..=8).contains(&m) {
        return Err(Error::OutOfRange(format!("bracket length {m} outside 2..=8")));
    }
    let mut terms: BTreeMap<Vec<usize>, i8> = BTreeMap::new();
    terms.insert(vec![1], 1);
    for k in 2..=m {
        let mut next: BTreeMap<Vec<usize>, i8> = BTreeMap::new();
        for (w, &c) in &terms {
            let mut right = w.clone();
            right.push(k);
            *next.entry(right).or_insert(0) += c;
            let mut left = vec![k];
            left.extend_from_slice(w);
            *next.entry(left).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        terms = next;
    }
    Ok(BracketExpansion { m, terms })
}
