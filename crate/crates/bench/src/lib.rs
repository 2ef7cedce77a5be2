//! Inputs shared by the benchmarks.

use pca_core::algebra::{group_algebra, matrix_algebra, truncated_polynomial, upper_triangular, FinAlg};
use pca_core::exactmath::Field;
use pca_core::generators::random_algebra;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn prime(p: u64) -> Field {
    Field::prime(p).expect("prime")
}

/// Named algebras of a few different shapes.
pub fn corpus() -> Vec<(String, FinAlg)> {
    let q = Field::rationals();
    let mut out = vec![
        ("Q[C12]".to_string(), group_algebra(12, &q).unwrap()),
        ("F2[C8]".to_string(), group_algebra(8, &prime(2)).unwrap()),
        ("F3[C9]".to_string(), group_algebra(9, &prime(3)).unwrap()),
        ("M3(F5)".to_string(), matrix_algebra(3, &prime(5)).unwrap()),
        ("T4(Q)".to_string(), upper_triangular(4, &q).unwrap()),
        ("Q[x]/(x^8)".to_string(), truncated_polynomial(8, &q).unwrap()),
    ];
    let a = random_algebra(&q, 6, &mut ChaCha8Rng::seed_from_u64(11));
    out.push((format!("random Q dim {}", a.dim()), a));
    out
}
