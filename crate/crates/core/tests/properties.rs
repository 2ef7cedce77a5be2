use pca_core::algebra::{ideal_closure, quotient, Side};
use pca_core::exactmath::{factor, Field, Matrix, Polynomial, Scalar};
use pca_core::format::{algebra_from_json, algebra_to_json};
use pca_core::generators::random_algebra;
use pca_core::radical::{radical, radical_oracle};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::rationals()),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(3).unwrap()),
        Just(Field::prime(7).unwrap()),
    ]
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, cols), rows)
}

fn to_matrix(f: &Field, cols: usize, m: &[Vec<i64>]) -> Matrix {
    Matrix::from_rows(f, cols, m.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(f in small_field(), m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| int_matrix(r, c))) {
        let cols = m[0].len();
        let a = to_matrix(&f, cols, &m);
        let n = a.nullspace();
        prop_assert_eq!(a.rank() + n.rows(), cols);
        for v in n.row_vectors() {
            prop_assert!(a.mul_vec(&v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn solve_returns_a_solution(f in small_field(), m in int_matrix(3, 4), x in prop::collection::vec(-3i64..=3, 4)) {
        let a = to_matrix(&f, 4, &m);
        let x: Vec<Scalar> = x.iter().map(|&v| f.from_i64(v)).collect();
        let b = a.mul_vec(&x);
        let y = a.solve_vec(&b).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn factorization_expands_back(f in small_field(), c in prop::collection::vec(-5i64..=5, 2..7)) {
        let p = Polynomial::from_ints(&f, &c);
        prop_assume!(p.degree().is_some_and(|d| d > 0));
        let fac = factor(&p).unwrap();
        prop_assert_eq!(fac.expand(&f), p);
    }

    #[test]
    fn radical_matches_oracle(p in prop_oneof![Just(2u64), Just(3)], seed in any::<u64>()) {
        let f = Field::prime(p).unwrap();
        let a = random_algebra(&f, 4, &mut ChaCha8Rng::seed_from_u64(seed));
        let j = radical(&a).unwrap().radical;
        let oracle = radical_oracle(&a).unwrap();
        prop_assert_eq!(j.space(), oracle.space());
    }

    #[test]
    fn quotient_by_radical_is_semisimple(f in small_field(), seed in any::<u64>()) {
        let a = random_algebra(&f, 5, &mut ChaCha8Rng::seed_from_u64(seed));
        let j = radical(&a).unwrap().radical;
        prop_assume!(j.dim() < a.dim());
        let q = quotient(&a, &j).unwrap();
        prop_assert!(radical(&q.algebra).unwrap().radical.is_zero());
    }

    #[test]
    fn algebra_json_round_trip(f in small_field(), seed in any::<u64>()) {
        let a = random_algebra(&f, 5, &mut ChaCha8Rng::seed_from_u64(seed));
        let text = algebra_to_json(&a);
        let back = algebra_from_json(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(algebra_to_json(&back), text);
    }

    #[test]
    fn closure_is_an_ideal(f in small_field(), seed in any::<u64>(), k in 0usize..6) {
        let a = random_algebra(&f, 5, &mut ChaCha8Rng::seed_from_u64(seed));
        let g = a.basis_vector(k % a.dim());
        let i = ideal_closure(&a, std::slice::from_ref(&g), Side::TwoSided).unwrap();
        prop_assert!(i.contains(&g));
        for x in i.vectors() {
            for b in 0..a.dim() {
                let e = a.basis_vector(b);
                prop_assert!(i.contains(&a.mul(&e, &x)));
                prop_assert!(i.contains(&a.mul(&x, &e)));
            }
        }
    }
}
