use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{Elem, FieldSpec};

use super::{combine, left_kernel, Echelon, Matrix};

/// A linear subspace of `F^N` held as its reduced row echelon basis.
///
/// RREF is canonical, so two subspaces are equal exactly when their bases are
/// identical and the derived `PartialEq` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub(crate) fn from_parts(field: FieldSpec, ambient: usize, basis: Vec<Vec<Elem>>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.len(), pivots.len());
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(field: &FieldSpec, ambient: usize) -> Self {
        Subspace::from_parts(field.clone(), ambient, Vec::new(), Vec::new())
    }

    pub fn full(field: &FieldSpec, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(field, ambient, i)).collect();
        Subspace::from_parts(field.clone(), ambient, basis, (0..ambient).collect())
    }

    pub fn span<I>(field: &FieldSpec, ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Elem>>,
    {
        let mut ech = Echelon::new(field, ambient);
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::ShapeMismatch(format!(
                    "vector of length {} in F^{ambient}",
                    v.len()
                )));
            }
            if let Some(bad) = v.iter().find(|e| !field.contains(e)) {
                return Err(Error::Parse(format!("{bad:?} is not an element of {field}")));
            }
            ech.insert(v);
        }
        Ok(ech.into_subspace())
    }

    /// Span of `n x n` matrices in the `n^2`-coordinate space (row-major).
    pub fn from_matrices<'a, I>(field: &FieldSpec, n: usize, mats: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Matrix>,
    {
        let mut vectors = Vec::new();
        for m in mats {
            if m.rows() != n || m.cols() != n {
                return Err(Error::ShapeMismatch(format!(
                    "expected {n}x{n}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: m.field().to_string(),
                });
            }
            vectors.push(m.to_flat());
        }
        Subspace::span(field, n * n, vectors)
    }

    /// Basis as `n x n` matrices. Panics unless the ambient dimension is `n^2`.
    pub fn to_matrices(&self, n: usize) -> Vec<Matrix> {
        assert_eq!(
            self.ambient,
            n * n,
            "subspace does not live in the n^2-coordinate space"
        );
        self.basis
            .iter()
            .map(|v| Matrix::from_flat(&self.field, n, v).expect("length n^2"))
            .collect()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::ShapeMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Residue of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let mut w = v.to_vec();
        Echelon::from_subspace(self).reduce(&mut w);
        w
    }

    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|e| self.field.is_zero(e))
    }

    pub fn contains_matrix(&self, m: &Matrix) -> bool {
        self.contains_vector(m.as_flat())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        let ech = Echelon::from_subspace(self);
        Ok(other.basis.iter().all(|v| ech.contains(v)))
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        Ok(self == other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let mut ech = Echelon::from_subspace(self);
        for v in &other.basis {
            ech.insert(v.clone());
        }
        Ok(ech.into_subspace())
    }

    /// Intersection by one joint kernel solve: find all `(x, y)` with
    /// `x A + y B = 0`; the intersection is spanned by the `x A`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(&self.field, self.ambient));
        }
        let stacked: Vec<Vec<Elem>> = self.basis.iter().chain(&other.basis).cloned().collect();
        let kernel = left_kernel(&self.field, &stacked, self.ambient);
        let a = self.dim();
        Subspace::span(
            &self.field,
            self.ambient,
            kernel
                .iter()
                .map(|c| combine(&self.field, &c[..a], &self.basis, self.ambient)),
        )
    }

    pub fn is_direct_sum_with(&self, other: &Subspace) -> Result<bool> {
        Ok(self.intersect(other)?.is_zero())
    }
}

pub(crate) fn unit_vector(field: &FieldSpec, len: usize, i: usize) -> Vec<Elem> {
    (0..len)
        .map(|j| if i == j { field.one() } else { field.zero() })
        .collect()
}

/// A complement `C` of `inner` inside `outer`: `C ∩ inner = 0`, `C + inner = outer`.
///
/// Deterministic: scans the RREF basis rows of `outer` in order and keeps each
/// row that enlarges the span of `inner` plus the rows kept so far.
pub fn complement_within(inner: &Subspace, outer: &Subspace) -> Result<Subspace> {
    if !outer.contains(inner)? {
        return Err(Error::NotContained);
    }
    let mut ech = Echelon::from_subspace(inner);
    let mut kept = Vec::new();
    for row in outer.basis() {
        if ech.insert(row.clone()) {
            kept.push(row.clone());
        }
        if ech.rank() == outer.dim() {
            break;
        }
    }
    Subspace::span(outer.field(), outer.ambient_dim(), kept)
}

/// Like [`complement_within`], but draws candidate vectors as random
/// combinations of `outer`'s basis.
pub fn random_complement_within<R: Rng + ?Sized>(inner: &Subspace, outer: &Subspace, rng: &mut R) -> Result<Subspace> {
    if !outer.contains(inner)? {
        return Err(Error::NotContained);
    }
    let f = outer.field();
    let target = outer.dim();
    let mut ech = Echelon::from_subspace(inner);
    let mut kept = Vec::new();
    let mut attempts = 0;
    while ech.rank() < target {
        attempts += 1;
        if attempts > 64 * (target + 1) {
            // Tiny fields can keep hitting the span; finish greedily.
            for row in outer.basis() {
                if ech.insert(row.clone()) {
                    kept.push(row.clone());
                }
            }
            break;
        }
        let coeffs: Vec<Elem> = (0..outer.dim()).map(|_| f.random_elem(rng)).collect();
        let v = combine(f, &coeffs, outer.basis(), outer.ambient_dim());
        if ech.insert(v.clone()) {
            kept.push(v);
        }
    }
    Subspace::span(f, outer.ambient_dim(), kept)
}

/// Largest `S ⊆ candidates` (a subspace of the `n^2`-coordinate matrix space)
/// with `w * s = 0` for every `w` in `rows` (a subspace of `F^n`).
pub fn kernel_of_action(rows: &Subspace, candidates: &Subspace) -> Result<Subspace> {
    let n = rows.ambient_dim();
    if candidates.ambient_dim() != n * n {
        return Err(Error::ShapeMismatch(format!(
            "candidates live in F^{}, expected F^{}",
            candidates.ambient_dim(),
            n * n
        )));
    }
    if rows.field() != candidates.field() {
        return Err(Error::FieldMismatch {
            left: rows.field().to_string(),
            right: candidates.field().to_string(),
        });
    }
    if rows.is_zero() || candidates.is_zero() {
        return Ok(candidates.clone());
    }
    let f = rows.field();
    let mats = candidates.to_matrices(n);
    let images: Vec<Vec<Elem>> = mats
        .iter()
        .map(|m| rows.basis().iter().flat_map(|w| m.left_apply(w)).collect())
        .collect();
    let kernel = left_kernel(f, &images, rows.dim() * n);
    Subspace::span(
        f,
        n * n,
        kernel.iter().map(|c| combine(f, c, candidates.basis(), n * n)),
    )
}
