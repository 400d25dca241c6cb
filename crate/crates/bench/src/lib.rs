//! Deterministic fixture builders shared by the benchmarks.

use brauer_workbench_core::{FiniteField, Poly};

/// `X^(q^k) - X` over `GF(q)`: the product of all monic irreducibles of
/// degree dividing `k`, a dense factoring workload.
pub fn frobenius_vanishing_poly(field: &FiniteField, k: u32) -> Poly {
    let deg = field.order().pow(k) as usize;
    let mut coeffs = vec![0u64; deg + 1];
    coeffs[1] = field.characteristic() - 1;
    coeffs[deg] = 1;
    Poly::from_residues(field, &coeffs)
}

/// A reproducible dense polynomial from a linear-congruential stream.
pub fn dense_poly(field: &FiniteField, degree: usize, seed: u64) -> Poly {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut coeffs = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        coeffs.push((state >> 33) % field.characteristic());
    }
    coeffs.push(1);
    Poly::from_residues(field, &coeffs)
}
