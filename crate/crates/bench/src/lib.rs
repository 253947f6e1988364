//! Fixed inputs shared by the benchmarks.

use lienil_core::extremal::type_generators;
use lienil_core::{Composition, FieldSpec, Matrix};

/// Generators of the type algebra for `parts` over GF(`p`).
pub fn type_inputs(p: u64, parts: &[u64]) -> (FieldSpec, usize, Vec<Matrix>) {
    let field = FieldSpec::prime(p).expect("benchmark primes are prime");
    let k = Composition::new(parts.to_vec());
    let gens = type_generators(&field, &k).expect("benchmark compositions are positive");
    (field, k.n() as usize, gens)
}

/// The superdiagonal units which, with the identity, generate `U_n^*(GF(p))` with the identity.
pub fn triangular_inputs(p: u64, n: usize) -> (FieldSpec, Vec<Matrix>) {
    let field = FieldSpec::prime(p).expect("benchmark primes are prime");
    let gens = (0..n - 1).map(|i| Matrix::unit(&field, n, i, i + 1)).collect();
    (field, gens)
}
