//! Block-staircase algebras of type `(k_1, ..., k_l)`, the algebras attaining
//! the bound `M(l, n)`.

use std::collections::BTreeSet;

use crate::algebra::{power_space, MatrixAlgebra};
use crate::bound::{balanced_composition, m_closed_form, Composition};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::FieldSpec;

/// Positions `(i, j)` (1-based, `i < j`) of the matrix units spanning the
/// radical of a type algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockArray {
    pub n: usize,
    pub positions: BTreeSet<(usize, usize)>,
}

fn check_type(k: &Composition) -> Result<()> {
    if k.len() < 2 {
        return Err(Error::InvalidComposition(format!("{k} has fewer than two parts")));
    }
    if !k.all_positive() {
        return Err(Error::InvalidComposition(format!("{k} has a zero part")));
    }
    Ok(())
}

/// `B = B_1 u ... u B_{l-1}` with
/// `B_p = {(i, j) : k_1 + ... + k_{p-1} < i <= k_1 + ... + k_p < j <= n}`.
pub fn block_array(k: &Composition) -> Result<BlockArray> {
    check_type(k)?;
    let n = k.n() as usize;
    let mut positions = BTreeSet::new();
    let mut before = 0usize;
    for &kp in &k.parts()[..k.len() - 1] {
        let through = before + kp as usize;
        for i in before + 1..=through {
            for j in through + 1..=n {
                positions.insert((i, j));
            }
        }
        before = through;
    }
    Ok(BlockArray { n, positions })
}

/// `I` followed by the matrix units `E_(i,j)` for `(i, j)` in the block array.
pub fn type_generators(field: &FieldSpec, k: &Composition) -> Result<Vec<Matrix>> {
    let b = block_array(k)?;
    let mut gens = vec![Matrix::identity(field, b.n)];
    // The only index shift between the 1-based block array and 0-based matrices.
    gens.extend(b.positions.iter().map(|&(i, j)| Matrix::unit(field, b.n, i - 1, j - 1)));
    Ok(gens)
}

/// `F I_n + J` with `J` spanned by the block-array matrix units.
pub fn type_algebra(field: &FieldSpec, k: &Composition) -> Result<MatrixAlgebra> {
    let gens = type_generators(field, k)?;
    let n = gens[0].rows();
    let carrier = Subspace::from_matrices(field, n, &gens)?;
    let r = MatrixAlgebra::from_carrier(n, carrier)?;
    let j = r.radical_triangular()?;
    if j != Subspace::from_matrices(field, n, &gens[1..])? {
        return Err(Error::Invariant(
            "radical of a type algebra is not its block array".into(),
        ));
    }
    if !power_space(&j, k.len(), n).is_zero() {
        return Err(Error::Invariant(
            "radical of a type algebra is not nilpotent of degree l".into(),
        ));
    }
    Ok(r)
}

/// `dim R` for a type algebra, evaluated three ways that must agree:
/// `(n^2 - sum k_i^2)/2 + 1`, `sum_{i<j} k_i k_j + 1` and
/// `sum_j k_j (n - k_1 - ... - k_j) + 1`.
pub fn type_algebra_dimension(k: &Composition) -> Result<u128> {
    check_type(k)?;
    let parts: Vec<u128> = k.parts().iter().map(|&x| x as u128).collect();
    let n: u128 = parts.iter().sum();
    let by_squares = k.objective();
    let mut by_pairs = 1;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            by_pairs += parts[i] * parts[j];
        }
    }
    let mut telescoping = 1;
    let mut through = 0;
    for &kj in &parts {
        through += kj;
        telescoping += kj * (n - through);
    }
    if by_squares != by_pairs || by_pairs != telescoping {
        return Err(Error::Invariant(format!(
            "dimension formulas disagree for {k}: {by_squares}, {by_pairs}, {telescoping}"
        )));
    }
    Ok(by_squares)
}

/// The type algebra of the balanced composition of `n` into `l` parts; its
/// dimension is checked against `M(l, n)`.
pub fn balanced_extremal(field: &FieldSpec, l: u64, n: u64) -> Result<MatrixAlgebra> {
    if l < 2 || l > n {
        return Err(Error::OutOfRange(format!(
            "balanced extremal algebra needs 2 <= l <= n, got l = {l}, n = {n}"
        )));
    }
    let r = type_algebra(field, &balanced_composition(l, n)?)?;
    if r.dim() as u128 != m_closed_form(l, n)? {
        return Err(Error::Invariant("balanced extremal algebra misses M(l, n)".into()));
    }
    Ok(r)
}
