//! Seeded random algebras for property tests and benchmarks.
//!
//! Each algebra is the unital subalgebra of `M_m(k)` generated by a few random matrices
//! with a prescribed block upper-triangular shape. Block sizes control the semisimple
//! part (one matrix block per diagonal block at most) and the off-diagonal blocks feed
//! the radical.

use rand::Rng;

use crate::algebra::{matrix_algebra, FinAlg, Vector};
use crate::exactmath::{Field, FieldKind, Scalar, Subspace};

/// Zero about half the time so generators stay sparse. Otherwise uniform over `F_p`
/// and a small integer over `Q`.
fn random_entry<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Scalar {
    if rng.gen_bool(0.5) {
        return field.zero();
    }
    match field.kind() {
        FieldKind::Rationals => field.from_i64(rng.gen_range(-2..=2)),
        _ => field.random(rng),
    }
}

/// The subalgebra of `M_m(k)`, `m = Σ blocks`, generated by `gens` random matrices that
/// vanish below the block diagonal. Returns `None` when it exceeds `max_dim`.
pub fn random_block_subalgebra<R: Rng + ?Sized>(
    field: &Field,
    blocks: &[usize],
    gens: usize,
    max_dim: usize,
    rng: &mut R,
) -> Option<FinAlg> {
    let m: usize = blocks.iter().sum();
    let owner: Vec<usize> = blocks.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect();
    let full = matrix_algebra(m, field).ok()?;
    let mut vs: Vec<Vector> = vec![full.unit().clone()];
    for _ in 0..gens {
        let g: Vector = (0..m * m)
            .map(|k| if owner[k / m] <= owner[k % m] { random_entry(field, rng) } else { field.zero() })
            .collect();
        vs.push(g);
    }
    let mut space = Subspace::span(field, m * m, &vs);
    loop {
        if space.dim() > max_dim {
            return None;
        }
        let basis = space.vectors();
        let mut next = basis.clone();
        for a in &basis {
            for b in &basis {
                next.push(full.mul(a, b));
            }
        }
        let grown = Subspace::span(field, m * m, &next);
        if grown.dim() == space.dim() {
            break;
        }
        space = grown;
    }
    let (alg, _) = full.on_subspace(&space, full.unit()).ok()?;
    let labels = (0..alg.dim()).map(|i| format!("b{i}")).collect();
    Some(alg.with_labels(labels))
}

/// Keeps drawing block shapes and generators until an algebra of dimension at most
/// `max_dim` appears.
pub fn random_algebra<R: Rng + ?Sized>(field: &Field, max_dim: usize, rng: &mut R) -> FinAlg {
    const SHAPES: &[&[usize]] = &[&[2], &[1, 1], &[1, 2], &[2, 1], &[1, 1, 1], &[3], &[1, 1, 1, 1], &[2, 2]];
    loop {
        let shape = SHAPES[rng.gen_range(0..SHAPES.len())];
        let gens = rng.gen_range(1..=2);
        if let Some(a) = random_block_subalgebra(field, shape, gens, max_dim, rng) {
            return a;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_algebras_respect_the_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f2 = Field::prime(2).unwrap();
        for _ in 0..20 {
            let a = random_algebra(&f2, 4, &mut rng);
            assert!(a.dim() <= 4);
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let q = Field::rationals();
        let a = random_algebra(&q, 6, &mut ChaCha8Rng::seed_from_u64(9));
        let b = random_algebra(&q, 6, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }

    #[test]
    fn triangular_shape_gives_triangular_algebras() {
        let q = Field::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_block_subalgebra(&q, &[1, 1], 3, 3, &mut rng).unwrap();
        assert!(a.dim() <= 3);
    }
}
