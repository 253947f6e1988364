//! Dense exact matrices and RREF-canonical subspaces.

mod matrix;
mod subspace;

pub use matrix::Matrix;
pub use subspace::{complement_within, kernel_of_action, random_complement_within, Subspace};

use crate::scalar::{Elem, FieldSpec};

/// In-place reduced row echelon form over the first `ncols` columns. Zero rows
/// are dropped; returns the pivot columns.
pub(crate) fn rref_rows(field: &FieldSpec, rows: &mut Vec<Vec<Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = field.inv(&rows[rank][col]).expect("pivot is nonzero");
        if !field.is_one(&inv) {
            for e in rows[rank][col..].iter_mut() {
                *e = field.mul(&inv, e);
            }
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || field.is_zero(&row[col]) {
                continue;
            }
            let neg = field.neg(&row[col]);
            for j in col..row.len() {
                row[j] = field.mul_add(&neg, &pivot_row[j], &row[j]);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

/// Basis of `{c : sum_i c_i * vectors[i] = 0}`, each `vectors[i]` of length `width`.
pub(crate) fn left_kernel(field: &FieldSpec, vectors: &[Vec<Elem>], width: usize) -> Vec<Vec<Elem>> {
    let s = vectors.len();
    let mut rows: Vec<Vec<Elem>> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            debug_assert_eq!(v.len(), width);
            let mut r = v.clone();
            r.extend((0..s).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = rref_rows(field, &mut rows, width + s);
    rows.into_iter()
        .zip(pivots)
        .filter(|&(_, p)| p >= width)
        .map(|(r, _)| r[width..].to_vec())
        .collect()
}

/// `sum_i coeffs[i] * vectors[i]`.
pub(crate) fn combine(field: &FieldSpec, coeffs: &[Elem], vectors: &[Vec<Elem>], width: usize) -> Vec<Elem> {
    let mut out = vec![field.zero(); width];
    for (c, v) in coeffs.iter().zip(vectors) {
        if field.is_zero(c) {
            continue;
        }
        for (slot, x) in out.iter_mut().zip(v) {
            *slot = field.mul_add(c, x, slot);
        }
    }
    out
}

/// Incrementally maintained RREF basis.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(field: &FieldSpec, ambient: usize) -> Self {
        Echelon {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn from_subspace(s: &Subspace) -> Self {
        Echelon {
            field: s.field().clone(),
            ambient: s.ambient_dim(),
            rows: s.basis().to_vec(),
            pivots: s.pivots().to_vec(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` modulo the current span.
    pub(crate) fn reduce(&self, v: &mut [Elem]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let neg = f.neg(&v[p]);
            for j in p..self.ambient {
                v[j] = f.mul_add(&neg, &row[j], &v[j]);
            }
        }
    }

    pub(crate) fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|e| self.field.is_zero(e))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut v: Vec<Elem>) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        self.reduce(&mut v);
        let f = &self.field;
        let Some(col) = v.iter().position(|e| !f.is_zero(e)) else {
            return false;
        };
        let inv = f.inv(&v[col]).expect("nonzero");
        for e in v[col..].iter_mut() {
            *e = f.mul(&inv, e);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[col]) {
                continue;
            }
            let neg = f.neg(&row[col]);
            for j in col..self.ambient {
                row[j] = f.mul_add(&neg, &v[j], &row[j]);
            }
        }
        let at = self.pivots.partition_point(|&p| p < col);
        self.pivots.insert(at, col);
        self.rows.insert(at, v);
        true
    }

    pub(crate) fn into_subspace(self) -> Subspace {
        Subspace::from_parts(self.field, self.ambient, self.rows, self.pivots)
    }
}
