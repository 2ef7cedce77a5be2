//! Worked examples checked end to end through the public API.

use pca_core::algebra::{
    base_change, group_algebra, ideal_closure, product_space, quotient, tensor, truncated_polynomial, FinAlg, Side,
};
use pca_core::exactmath::{Field, Scalar};
use pca_core::radical::is_semisimple;
use pca_core::separability::{is_separable, nilpotent_witness, sep_idempotent};
use pca_core::tower::{
    cyclic_group_tower, level_dims, power_series_tower, product_tower, tower_radical_check, tower_semisimple_check,
};

/// `F_2(t)[x]/(x^2 - t)` with basis `1, x`.
fn inseparable() -> FinAlg {
    let ft = Field::rational_functions(2).unwrap();
    let t = ft.parse("t").unwrap();
    let entries = vec![(0, 0, 0, ft.one()), (0, 1, 1, ft.one()), (1, 0, 1, ft.one()), (1, 1, 0, t)];
    FinAlg::new(&ft, vec!["1".into(), "x".into()], entries, None).unwrap()
}

#[test]
fn inseparable_tensor_square_has_square_zero_element() {
    let e = inseparable();
    let ee = tensor(&e, &e).unwrap();
    let one = e.field().one();
    let mut x = ee.zero();
    x[1] = one.clone();
    x[2] = one;
    assert!(ee.is_zero(&ee.mul(&x, &x)));
    assert!(!ee.is_zero(&x));
    assert_eq!(nilpotent_witness(&ee, &x), Some(2));
    // E ⊗ E is commutative, so (x) is a nonzero square-zero ideal and J(E ⊗ E) ≠ 0.
    let ideal = ideal_closure(&ee, &[x], Side::TwoSided).unwrap();
    assert_eq!(ideal.dim(), 2);
    assert!(product_space(&ee, ideal.space(), ideal.space()).is_zero());
}

#[test]
fn inseparable_extension_is_not_separable() {
    let e = inseparable();
    assert!(!is_separable(&e).unwrap());
    assert!(sep_idempotent(&e).unwrap().is_none());
}

#[test]
fn base_change_to_itself_has_nilpotents() {
    let e = inseparable();
    let ft = e.field().clone();
    let t = ft.parse("t").unwrap();
    // E as a field: F_2(t)[y]/(y^2 + t).
    let big = Field::extension(&ft, &[t, ft.zero(), ft.one()]).unwrap();
    let eb = base_change(&e, &big).unwrap();
    // x - y squares to t - y^2 = 0.
    let y = big.generator().unwrap();
    let x_minus_y: Vec<Scalar> = vec![big.neg(&y), big.one()];
    assert!(!eb.is_zero(&x_minus_y));
    assert!(eb.is_zero(&eb.mul(&x_minus_y, &x_minus_y)));
}

#[test]
fn truncation_sends_x_to_x() {
    let q = Field::rationals();
    let a = truncated_polynomial(4, &q).unwrap();
    let x2 = ideal_closure(&a, &[a.basis_vector(2)], Side::TwoSided).unwrap();
    let quo = quotient(&a, &x2).unwrap();
    assert_eq!(quo.algebra.dim(), 2);
    let x = quo.projection.apply(&a.basis_vector(1));
    assert!(!quo.algebra.is_zero(&x));
    assert!(quo.algebra.is_zero(&quo.algebra.mul(&x, &x)));
    assert_eq!(quo.algebra, truncated_polynomial(2, &q).unwrap().with_labels(quo.algebra.labels().to_vec()));
}

#[test]
fn group_algebra_in_dividing_characteristic_is_not_semisimple() {
    let f3 = Field::prime(3).unwrap();
    assert!(!is_semisimple(&group_algebra(3, &f3).unwrap()).unwrap());
}

#[test]
fn power_series_levels() {
    let t = power_series_tower(&Field::rationals(), 3).unwrap();
    assert_eq!(level_dims(&t), vec![1, 2, 3]);
    assert!(t.maps().iter().all(|m| m.is_surjective()));
    assert_eq!(tower_radical_check(&t).unwrap().radical_dims, vec![0, 1, 2]);
}

#[test]
fn countable_product_prefix_is_semisimple() {
    let f5 = Field::prime(5).unwrap();
    let k = group_algebra(1, &f5).unwrap();
    let t = product_tower(&[k.clone(), k.clone(), k], 3).unwrap();
    assert_eq!(level_dims(&t), vec![1, 2, 3]);
    assert_eq!(tower_radical_check(&t).unwrap().radical_dims, vec![0, 0, 0]);
    assert!(tower_semisimple_check(&t).unwrap());
}

#[test]
fn maschke_for_three_adic_tower() {
    let t = cyclic_group_tower(3, &Field::rationals(), 3).unwrap();
    assert!(tower_semisimple_check(&t).unwrap());
    assert_eq!(level_dims(&t), vec![3, 9, 27]);
}
