//! Matrix subalgebras of `M_n(F)`: closure, radicals, annihilators, centers,
//! conjugation, scalar extension and local triangularization.

use crate::error::{Error, Result};
use crate::linalg::{complement_within, kernel_of_action, Matrix, Subspace};
use crate::scalar::{Elem, FieldKind, FieldSpec};

/// A multiplicatively closed subspace of `n x n` matrices.
///
/// `unital` records whether `I_n` lies in the carrier; it is derived from the
/// carrier, never asserted by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAlgebra {
    field: FieldSpec,
    n: usize,
    carrier: Subspace,
    unital: bool,
    basis: Vec<Matrix>,
}

impl MatrixAlgebra {
    /// Smallest algebra containing `generators` (and `I_n` when `unital`).
    pub fn close_generators(field: &FieldSpec, n: usize, generators: &[Matrix], unital: bool) -> Result<Self> {
        let mut seeds: Vec<Matrix> = Vec::with_capacity(generators.len() + 1);
        if unital {
            seeds.push(Matrix::identity(field, n));
        }
        for g in generators {
            check_shape(field, n, g)?;
            seeds.push(g.clone());
        }
        let mut span = crate::linalg::Echelon::new(field, n * n);
        let mut elems: Vec<Matrix> = Vec::new();
        for s in seeds {
            if span.insert(s.to_flat()) {
                elems.push(s);
            }
        }
        // Worklist over ordered pairs: element k is multiplied against every
        // i <= k on both sides once, when k is first reached.
        let mut k = 0;
        while k < elems.len() {
            for i in 0..=k {
                let products = if i == k {
                    vec![&elems[k] * &elems[k]]
                } else {
                    vec![&elems[i] * &elems[k], &elems[k] * &elems[i]]
                };
                for prod in products {
                    if span.insert(prod.to_flat()) {
                        elems.push(prod);
                    }
                }
            }
            k += 1;
        }
        MatrixAlgebra::from_carrier(n, span.into_subspace())
    }

    /// Wraps a carrier that is already closed; closure is verified.
    pub fn from_carrier(n: usize, carrier: Subspace) -> Result<Self> {
        if carrier.ambient_dim() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "carrier lives in F^{}, expected F^{}",
                carrier.ambient_dim(),
                n * n
            )));
        }
        let field = carrier.field().clone();
        let basis = carrier.to_matrices(n);
        for a in &basis {
            for b in &basis {
                if !carrier.contains_matrix(&(a * b)) {
                    return Err(Error::NotClosed);
                }
            }
        }
        let unital = carrier.contains_matrix(&Matrix::identity(&field, n));
        Ok(MatrixAlgebra {
            field,
            n,
            carrier,
            unital,
            basis,
        })
    }

    /// `F I_n`.
    pub fn scalars(field: &FieldSpec, n: usize) -> Self {
        MatrixAlgebra::close_generators(field, n, &[], true).expect("F I_n is closed")
    }

    /// The full matrix algebra `M_n(F)`.
    pub fn full(field: &FieldSpec, n: usize) -> Self {
        MatrixAlgebra::from_carrier(n, Subspace::full(field, n * n)).expect("M_n is closed")
    }

    /// Upper triangular matrices with constant diagonal, `U_n^*(F)`.
    pub fn upper_constant_diagonal(field: &FieldSpec, n: usize) -> Self {
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                gens.push(Matrix::unit(field, n, i, j));
            }
        }
        MatrixAlgebra::close_generators(field, n, &gens, true).expect("U_n^* is closed")
    }

    /// Block-diagonal sum of algebras over one field.
    pub fn block_diagonal(parts: &[&MatrixAlgebra]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::OutOfRange("block_diagonal needs at least one part".into()));
        };
        let field = first.field.clone();
        let n: usize = parts.iter().map(|a| a.n).sum();
        let mut vectors = Vec::new();
        let mut offset = 0;
        for a in parts {
            if a.field != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: a.field.to_string(),
                });
            }
            for b in &a.basis {
                let mut m = Matrix::zeros(&field, n, n);
                for i in 0..a.n {
                    for j in 0..a.n {
                        m.set(offset + i, offset + j, b.get(i, j).clone());
                    }
                }
                vectors.push(m.to_flat());
            }
            offset += a.n;
        }
        MatrixAlgebra::from_carrier(n, Subspace::span(&field, n * n, vectors)?)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn carrier(&self) -> &Subspace {
        &self.carrier
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// Carrier basis (RREF order) as matrices.
    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.rows() == self.n && m.cols() == self.n && self.carrier.contains_matrix(m)
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.basis.iter().all(Matrix::is_upper_triangular)
    }

    /// Whether the carrier lies in `U_n^*(F)`.
    pub fn is_upper_constant_diagonal(&self) -> bool {
        self.basis.iter().all(Matrix::is_upper_constant_diagonal)
    }

    /// Number of elements of the algebra over a finite field.
    pub fn element_count(&self) -> Option<u128> {
        let q = self.field.order()?;
        q.checked_pow(self.dim() as u32)
    }

    /// Element number `index`: the combination of carrier basis elements whose
    /// coefficients are the base-q digits of `index`.
    pub fn element(&self, index: u128) -> Matrix {
        let q = self.field.order().expect("element enumeration needs a finite field");
        let mut t = index;
        let mut acc = Matrix::zeros(&self.field, self.n, self.n);
        for b in &self.basis {
            let c = self.field.element(t % q);
            t /= q;
            if !self.field.is_zero(&c) {
                acc = &acc + &b.scale(&c);
            }
        }
        acc
    }

    /// Jacobson radical of an upper triangular algebra: the carrier meets the
    /// strictly upper triangular matrices. The result is checked to be a
    /// nilpotent two-sided ideal.
    pub fn radical_triangular(&self) -> Result<Subspace> {
        if !self.is_upper_triangular() {
            return Err(Error::NotTriangular);
        }
        let j = self.carrier.intersect(&strictly_upper(&self.field, self.n))?;
        self.check_nilpotent_ideal(&j)?;
        Ok(j)
    }

    /// Radical over the rationals as the kernel of the trace form
    /// `(a, b) -> tr(ab)` (Dickson's criterion in characteristic 0).
    pub fn radical_trace_form(&self) -> Result<Subspace> {
        if self.field.kind() != FieldKind::Rational {
            return Err(Error::RequiresRational);
        }
        let gram: Vec<Vec<Elem>> = self
            .basis
            .iter()
            .map(|a| self.basis.iter().map(|b| (a * b).trace()).collect())
            .collect();
        let kernel = crate::linalg::left_kernel(&self.field, &gram, self.dim());
        let flat: Vec<Vec<Elem>> = self.basis.iter().map(Matrix::to_flat).collect();
        let j = Subspace::span(
            &self.field,
            self.n * self.n,
            kernel
                .iter()
                .map(|c| crate::linalg::combine(&self.field, c, &flat, self.n * self.n)),
        )?;
        self.check_nilpotent_ideal(&j)?;
        Ok(j)
    }

    fn check_nilpotent_ideal(&self, j: &Subspace) -> Result<()> {
        let n = self.n;
        if !power_space(j, n, n).is_zero() {
            return Err(Error::Invariant("radical is not nilpotent".into()));
        }
        let left = product_space(&self.carrier, j, n);
        let right = product_space(j, &self.carrier, n);
        if !j.contains(&left)? || !j.contains(&right)? {
            return Err(Error::Invariant("radical is not a two-sided ideal".into()));
        }
        Ok(())
    }

    /// `{a in R : [a, b] = 0 for all b in R}`.
    pub fn center(&self) -> Subspace {
        let nn = self.n * self.n;
        let rows: Vec<Vec<Elem>> = self
            .basis
            .iter()
            .map(|a| {
                self.basis
                    .iter()
                    .flat_map(|b| (&(a * b) - &(b * a)).to_flat())
                    .collect()
            })
            .collect();
        let kernel = crate::linalg::left_kernel(&self.field, &rows, self.dim() * nn);
        let flat: Vec<Vec<Elem>> = self.basis.iter().map(Matrix::to_flat).collect();
        Subspace::span(
            &self.field,
            nn,
            kernel.iter().map(|c| crate::linalg::combine(&self.field, c, &flat, nn)),
        )
        .expect("combinations of carrier vectors")
    }

    /// `U^{-1} R U`.
    pub fn conjugate(&self, u: &Matrix) -> Result<MatrixAlgebra> {
        check_shape(&self.field, self.n, u)?;
        let inv = u.inverse()?;
        let mats: Vec<Matrix> = self.basis.iter().map(|a| &(&inv * a) * u).collect();
        MatrixAlgebra::from_carrier(self.n, Subspace::from_matrices(&self.field, self.n, &mats)?)
    }

    /// `R (x)_F K` for `F = GF(p)` inside `K = GF(p^k)`; closure is re-verified.
    pub fn extend_scalars(&self, target: &FieldSpec) -> Result<MatrixAlgebra> {
        let mats = self.basis.iter().map(|b| b.embed(target)).collect::<Result<Vec<_>>>()?;
        let ext = MatrixAlgebra::from_carrier(self.n, Subspace::from_matrices(target, self.n, &mats)?)?;
        if ext.dim() != self.dim() {
            return Err(Error::Invariant("scalar extension changed the dimension".into()));
        }
        Ok(ext)
    }

    /// An invertible `U` with `U^{-1} R U` inside `U_n^*(F)`, for a unital
    /// algebra of the form `F I + Nil` with `Nil` nilpotent.
    ///
    /// The rows of `U^{-1}` are a basis adapted to the flag
    /// `V > V Nil > V Nil^2 > ... > 0`.
    pub fn triangularize_local(&self) -> Result<Matrix> {
        let f = &self.field;
        let n = self.n;
        if !self.unital {
            return Err(Error::NotSplitLocal("identity is not in the algebra".into()));
        }
        let id = Matrix::identity(f, n);
        let mut nil = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let lambda = self.split_eigenvalue(b)?;
            let m = &b.clone() - &id.scale(&lambda);
            if !m.pow(n as u64).is_zero() {
                return Err(Error::NotSplitLocal(
                    "a basis element has more than one eigenvalue".into(),
                ));
            }
            nil.push(m);
        }
        let nil = Subspace::from_matrices(f, n, &nil)?;
        if !power_space(&nil, n, n).is_zero() {
            return Err(Error::NotSplitLocal(
                "the nilpotent elements do not form an ideal".into(),
            ));
        }
        if nil.dim() + 1 != self.dim() {
            return Err(Error::NotSplitLocal(
                "algebra is not F I plus its nilpotent part".into(),
            ));
        }

        let mut rows = Vec::with_capacity(n);
        let mut current = Subspace::full(f, n);
        while !current.is_zero() {
            let next = module_product(&current, &nil)?;
            if next == current {
                return Err(Error::Invariant("flag failed to descend".into()));
            }
            rows.extend(complement_within(&next, &current)?.basis().iter().cloned());
            current = next;
        }
        let p = Matrix::from_rows(f, rows)?;
        let u = p.inverse()?;
        if !self.conjugate(&u)?.is_upper_constant_diagonal() {
            return Err(Error::Invariant("triangularization post-check failed".into()));
        }
        Ok(u)
    }

    /// The only possible eigenvalue of `b` if `b` is scalar plus nilpotent.
    fn split_eigenvalue(&self, b: &Matrix) -> Result<Elem> {
        let f = &self.field;
        let n = self.n;
        match f.kind() {
            FieldKind::Rational => {
                let n_elem = f.from_i64(n as i64);
                Ok(f.div(&b.trace(), &n_elem).expect("n is nonzero over Q"))
            }
            _ => {
                // (lambda I + N)^(p^w) = lambda^(p^w) I once p^w >= n.
                let p = f.characteristic();
                let (mut w, mut pw) = (0u32, 1u64);
                while pw < n as u64 {
                    pw *= p;
                    w += 1;
                }
                let mu = b
                    .pow(pw)
                    .scalar_value()
                    .ok_or_else(|| Error::NotSplitLocal("a basis element has more than one eigenvalue".into()))?;
                Ok(f.frobenius_root(&mu, w))
            }
        }
    }
}

fn check_shape(field: &FieldSpec, n: usize, m: &Matrix) -> Result<()> {
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
    Ok(())
}

/// Strictly upper triangular `n x n` matrices as a subspace of `F^(n^2)`.
pub fn strictly_upper(field: &FieldSpec, n: usize) -> Subspace {
    let units: Vec<Vec<Elem>> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| Matrix::unit(field, n, i, j).to_flat())
        .collect();
    Subspace::span(field, n * n, units).expect("unit vectors")
}

/// `(0 :^I X) = {a in I : X a = 0}`.
pub fn annihilator(ideal: &Subspace, x: &Subspace) -> Result<Subspace> {
    kernel_of_action(x, ideal)
}

/// `W S = span{w s}` for `W` in `F^n` and `S` a space of `n x n` matrices.
pub fn module_product(w: &Subspace, s: &Subspace) -> Result<Subspace> {
    let n = w.ambient_dim();
    if s.ambient_dim() != n * n {
        return Err(Error::ShapeMismatch(format!(
            "matrices in F^{} cannot act on F^{n}",
            s.ambient_dim()
        )));
    }
    if w.field() != s.field() {
        return Err(Error::FieldMismatch {
            left: w.field().to_string(),
            right: s.field().to_string(),
        });
    }
    let mats = s.to_matrices(n);
    let images = w.basis().iter().flat_map(|v| mats.iter().map(move |m| m.left_apply(v)));
    Subspace::span(w.field(), n, images)
}

/// `A B = span{a b}` for spaces of `n x n` matrices.
pub fn product_space(a: &Subspace, b: &Subspace, n: usize) -> Subspace {
    let am = a.to_matrices(n);
    let bm = b.to_matrices(n);
    let products = am.iter().flat_map(|x| bm.iter().map(move |y| (x * y).to_flat()));
    Subspace::span(a.field(), n * n, products).expect("products of n x n matrices")
}

/// `S^k` for `k >= 1`.
pub fn power_space(s: &Subspace, k: usize, n: usize) -> Subspace {
    assert!(k >= 1, "power_space exponent must be positive");
    let mut acc = s.clone();
    for _ in 1..k {
        if acc.is_zero() {
            break;
        }
        acc = product_space(&acc, s, n);
    }
    acc
}

/// Least `nu >= 1` with `S^nu = 0`, or `None` if the powers stabilise at a
/// nonzero space.
pub fn nilpotency_degree(s: &Subspace, n: usize) -> Option<usize> {
    let mut acc = s.clone();
    let mut nu = 1;
    loop {
        if acc.is_zero() {
            return Some(nu);
        }
        let next = product_space(&acc, s, n);
        if next == acc {
            return None;
        }
        acc = next;
        nu += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn e(f: &FieldSpec, n: usize, i: usize, j: usize) -> Matrix {
        Matrix::unit(f, n, i - 1, j - 1)
    }

    fn mats(f: &FieldSpec, n: usize, ms: &[Matrix]) -> Subspace {
        Subspace::from_matrices(f, n, ms).unwrap()
    }

    #[test]
    fn closure_examples() {
        let q = FieldSpec::rational();
        let r = MatrixAlgebra::close_generators(&q, 2, &[e(&q, 2, 1, 2)], true).unwrap();
        assert_eq!(r.dim(), 2);
        assert!(r.is_unital());
        assert_eq!(MatrixAlgebra::close_generators(&q, 3, &[], true).unwrap().dim(), 1);
        let r = MatrixAlgebra::close_generators(&q, 3, &[e(&q, 3, 1, 2), e(&q, 3, 2, 3)], true).unwrap();
        assert_eq!(r.dim(), 4);
        assert!(r.contains(&e(&q, 3, 1, 3)));
        let again = MatrixAlgebra::close_generators(&q, 3, r.basis(), false).unwrap();
        assert_eq!(again.carrier(), r.carrier());
    }

    #[test]
    fn closure_rejects_bad_shapes() {
        let q = FieldSpec::rational();
        let g = Matrix::identity(&q, 3);
        assert!(matches!(
            MatrixAlgebra::close_generators(&q, 2, &[g], true),
            Err(Error::ShapeMismatch(_))
        ));
        let g2 = Matrix::identity(&gf(2), 2);
        assert!(matches!(
            MatrixAlgebra::close_generators(&q, 2, &[g2], true),
            Err(Error::FieldMismatch { .. })
        ));
        let open = mats(&q, 2, &[e(&q, 2, 1, 2), e(&q, 2, 2, 1)]);
        assert_eq!(MatrixAlgebra::from_carrier(2, open), Err(Error::NotClosed));
    }

    #[test]
    fn radical_examples() {
        let f = gf(3);
        let u2 = MatrixAlgebra::upper_constant_diagonal(&f, 2);
        assert_eq!(u2.radical_triangular().unwrap(), mats(&f, 2, &[e(&f, 2, 1, 2)]));
        let u3 = MatrixAlgebra::upper_constant_diagonal(&f, 3);
        assert_eq!(u3.dim(), 4);
        assert_eq!(u3.radical_triangular().unwrap().dim(), 3);
        assert!(MatrixAlgebra::scalars(&f, 4).radical_triangular().unwrap().is_zero());
        let full = MatrixAlgebra::full(&f, 2);
        assert_eq!(full.radical_triangular(), Err(Error::NotTriangular));
    }

    #[test]
    fn trace_form_radical_matches_triangular_radical() {
        let q = FieldSpec::rational();
        let u3 = MatrixAlgebra::upper_constant_diagonal(&q, 3);
        assert_eq!(u3.radical_trace_form().unwrap(), u3.radical_triangular().unwrap());
        let d = MatrixAlgebra::close_generators(&q, 2, &[e(&q, 2, 1, 1)], true).unwrap();
        assert!(d.radical_trace_form().unwrap().is_zero());
        assert_eq!(
            u3.conjugate(&Matrix::from_i64(&q, &[&[1, 0, 0], &[1, 1, 0], &[0, 2, 1]]))
                .unwrap()
                .radical_trace_form()
                .unwrap()
                .dim(),
            3
        );
        assert_eq!(
            MatrixAlgebra::scalars(&gf(2), 2).radical_trace_form(),
            Err(Error::RequiresRational)
        );
    }

    #[test]
    fn annihilator_examples() {
        let q = FieldSpec::rational();
        let e1 = Subspace::span(&q, 2, vec![vec![q.one(), q.zero()]]).unwrap();
        assert!(annihilator(&mats(&q, 2, &[e(&q, 2, 1, 2)]), &e1).unwrap().is_zero());
        let ideal = mats(&q, 3, &[e(&q, 3, 1, 2), e(&q, 3, 1, 3), e(&q, 3, 2, 3)]);
        assert_eq!(annihilator(&ideal, &Subspace::zero(&q, 3)).unwrap(), ideal);
        let e1 = Subspace::span(&q, 3, vec![vec![q.one(), q.zero(), q.zero()]]).unwrap();
        assert_eq!(annihilator(&ideal, &e1).unwrap(), mats(&q, 3, &[e(&q, 3, 2, 3)]));
    }

    #[test]
    fn module_product_examples() {
        let q = FieldSpec::rational();
        let v2 = Subspace::full(&q, 2);
        let e2 = Subspace::span(&q, 2, vec![vec![q.zero(), q.one()]]).unwrap();
        assert_eq!(module_product(&v2, &mats(&q, 2, &[e(&q, 2, 1, 2)])).unwrap(), e2);
        let j = mats(&q, 3, &[e(&q, 3, 1, 2), e(&q, 3, 1, 3), e(&q, 3, 2, 3)]);
        let e23 = Subspace::span(
            &q,
            3,
            vec![vec![q.zero(), q.one(), q.zero()], vec![q.zero(), q.zero(), q.one()]],
        )
        .unwrap();
        assert_eq!(module_product(&Subspace::full(&q, 3), &j).unwrap(), e23);
        assert!(module_product(&v2, &Subspace::zero(&q, 4)).unwrap().is_zero());
        assert!(module_product(&v2, &Subspace::zero(&q, 9)).is_err());
    }

    #[test]
    fn scalar_extension_examples() {
        let f2 = gf(2);
        let f4 = FieldSpec::extension_default(2, 2).unwrap();
        let u2 = MatrixAlgebra::upper_constant_diagonal(&f2, 2);
        assert_eq!(u2.extend_scalars(&f4).unwrap().dim(), 2);
        let f3 = gf(3);
        let f9 = FieldSpec::extension_default(3, 2).unwrap();
        assert_eq!(MatrixAlgebra::scalars(&f3, 3).extend_scalars(&f9).unwrap().dim(), 1);
        let t12 = MatrixAlgebra::close_generators(&f2, 3, &[e(&f2, 3, 1, 2), e(&f2, 3, 1, 3)], true).unwrap();
        assert_eq!(t12.dim(), 3);
        assert_eq!(t12.extend_scalars(&f4).unwrap().dim(), 3);
        assert!(matches!(
            u2.extend_scalars(&f9),
            Err(Error::CharacteristicMismatch { .. })
        ));
    }

    #[test]
    fn center_examples() {
        let f = gf(2);
        assert_eq!(
            MatrixAlgebra::full(&f, 2).center(),
            mats(&f, 2, &[Matrix::identity(&f, 2)])
        );
        let comm = MatrixAlgebra::upper_constant_diagonal(&f, 2);
        assert_eq!(comm.center(), *comm.carrier());
        let u3 = MatrixAlgebra::upper_constant_diagonal(&f, 3);
        assert_eq!(u3.center(), mats(&f, 3, &[Matrix::identity(&f, 3), e(&f, 3, 1, 3)]));
    }

    #[test]
    fn triangularize_transposed_unit() {
        let q = FieldSpec::rational();
        let r = MatrixAlgebra::close_generators(&q, 2, &[e(&q, 2, 2, 1)], true).unwrap();
        let u = r.triangularize_local().unwrap();
        assert_eq!(u, Matrix::from_i64(&q, &[&[0, 1], &[1, 0]]));
        assert_eq!(
            r.conjugate(&u).unwrap().carrier(),
            MatrixAlgebra::upper_constant_diagonal(&q, 2).carrier()
        );
    }

    #[test]
    fn triangularize_already_triangular_is_identity() {
        let f = gf(5);
        let u3 = MatrixAlgebra::upper_constant_diagonal(&f, 3);
        assert_eq!(u3.triangularize_local().unwrap(), Matrix::identity(&f, 3));
    }

    #[test]
    fn triangularize_random_conjugate() {
        let f = gf(5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u3 = MatrixAlgebra::upper_constant_diagonal(&f, 3);
        for _ in 0..10 {
            let p = Matrix::random_invertible(&f, 3, &mut rng);
            let r = u3.conjugate(&p).unwrap();
            let u = r.triangularize_local().unwrap();
            assert!(r.conjugate(&u).unwrap().is_upper_constant_diagonal());
        }
    }

    #[test]
    fn triangularize_rejects_non_local() {
        let f = gf(3);
        let diag = MatrixAlgebra::close_generators(&f, 2, &[e(&f, 2, 1, 1)], true).unwrap();
        assert!(matches!(diag.triangularize_local(), Err(Error::NotSplitLocal(_))));
        let q = FieldSpec::rational();
        let rot = Matrix::from_i64(&q, &[&[0, 1], &[-1, 0]]);
        let c = MatrixAlgebra::close_generators(&q, 2, &[rot], true).unwrap();
        assert!(matches!(c.triangularize_local(), Err(Error::NotSplitLocal(_))));
    }

    #[test]
    fn conjugation_round_trip() {
        let f = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u3 = MatrixAlgebra::upper_constant_diagonal(&f, 3);
        assert_eq!(u3.conjugate(&Matrix::identity(&f, 3)).unwrap(), u3);
        let p = Matrix::random_invertible(&f, 3, &mut rng);
        let there = u3.conjugate(&p).unwrap();
        assert_eq!(there.conjugate(&p.inverse().unwrap()).unwrap(), u3);
        let singular = Matrix::zeros(&f, 3, 3);
        assert_eq!(u3.conjugate(&singular), Err(Error::Singular));
    }

    #[test]
    fn nilpotency_degree_examples() {
        let f = gf(2);
        let j = MatrixAlgebra::upper_constant_diagonal(&f, 4)
            .radical_triangular()
            .unwrap();
        assert_eq!(nilpotency_degree(&j, 4), Some(4));
        assert_eq!(nilpotency_degree(&Subspace::zero(&f, 16), 4), Some(1));
        assert_eq!(nilpotency_degree(MatrixAlgebra::scalars(&f, 2).carrier(), 2), None);
    }

    #[test]
    fn element_enumeration_covers_the_algebra() {
        let f = gf(2);
        let u3 = MatrixAlgebra::upper_constant_diagonal(&f, 3);
        assert_eq!(u3.element_count(), Some(16));
        let all: std::collections::HashSet<Matrix> = (0..16).map(|i| u3.element(i)).collect();
        assert_eq!(all.len(), 16);
        assert!(all.iter().all(|m| u3.contains(m)));
    }

    #[test]
    fn block_diagonal_dimension() {
        let f = gf(2);
        let a = MatrixAlgebra::upper_constant_diagonal(&f, 2);
        let s = MatrixAlgebra::block_diagonal(&[&a, &a]).unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(s.dim(), 4);
        assert!(s.is_unital());
    }
}
