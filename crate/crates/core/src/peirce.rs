//! Brute-force idempotents and the Peirce decomposition along primitive central
//! idempotents, for algebras over small finite fields.

use rayon::prelude::*;

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::lie::ENUMERATION_LIMIT;
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeirceFactor {
    pub idempotent: Matrix,
    /// `eRe`, whose identity element is `e`.
    pub corner: MatrixAlgebra,
    pub rank: usize,
    /// `dim e M_n(F) e`, always `rank^2`.
    pub ambient_corner_dim: usize,
}

fn enumerable(r: &MatrixAlgebra) -> Result<u128> {
    let count = r
        .element_count()
        .ok_or_else(|| Error::OutOfRange("idempotent enumeration needs a finite field".into()))?;
    if count > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            size: count,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(count)
}

/// Every `e` in `R` with `e^2 = e`, in enumeration order.
pub fn idempotents(r: &MatrixAlgebra) -> Result<Vec<Matrix>> {
    let count = enumerable(r)?;
    let found = (0..count)
        .into_par_iter()
        .filter_map(|idx| {
            let e = r.element(idx);
            (&e * &e == e).then_some(e)
        })
        .collect();
    Ok(found)
}

/// `eRe` as a matrix algebra with identity `e`.
pub fn corner(r: &MatrixAlgebra, e: &Matrix) -> Result<MatrixAlgebra> {
    let mats: Vec<Matrix> = r.basis().iter().map(|b| &(e * b) * e).collect();
    MatrixAlgebra::from_carrier(r.n(), Subspace::from_matrices(r.field(), r.n(), &mats)?)
}

/// Splits a unital algebra over a small finite field into the corners of its
/// primitive central idempotents. Refuses algebras with a non-central
/// idempotent.
pub fn peirce_decompose(r: &MatrixAlgebra) -> Result<Vec<PeirceFactor>> {
    enumerable(r)?;
    if !r.is_unital() {
        return Err(Error::NotUnital);
    }
    let all = idempotents(r)?;
    let center = r.center();
    if all.iter().any(|e| !center.contains_matrix(e)) {
        return Err(Error::IdempotentNotCentral);
    }
    let nonzero: Vec<&Matrix> = all.iter().filter(|e| !e.is_zero()).collect();
    // Central idempotents form a Boolean algebra; the primitive ones are its
    // atoms, the nonzero e with no nonzero f < e.
    let primitive: Vec<&Matrix> = nonzero
        .iter()
        .copied()
        .filter(|&e| !nonzero.iter().any(|&f| f != e && &(e * f) == f))
        .collect();

    let f = r.field();
    let n = r.n();
    let mut total = Matrix::zeros(f, n, n);
    let mut factors = Vec::with_capacity(primitive.len());
    for e in primitive {
        total = &total + e;
        let rank = e.rank();
        let full = MatrixAlgebra::full(f, n);
        let ambient_corner_dim = corner(&full, e)?.dim();
        factors.push(PeirceFactor {
            idempotent: e.clone(),
            corner: corner(r, e)?,
            rank,
            ambient_corner_dim,
        });
    }
    if total != Matrix::identity(f, n) {
        return Err(Error::Invariant("primitive central idempotents do not sum to I".into()));
    }
    if factors.iter().map(|p| p.rank).sum::<usize>() != n {
        return Err(Error::Invariant("idempotent ranks do not sum to n".into()));
    }
    Ok(factors)
}
