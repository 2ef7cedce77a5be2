//! Standard algebras and the ways of combining them.

use super::{Entry, FinAlg, Vector};
use crate::error::{Error, Result};
use crate::exactmath::{Field, FieldKind, Scalar};

/// The group algebra `k[C_n]` with basis `g^0, ..., g^(n-1)`.
pub fn group_algebra(n: usize, field: &Field) -> Result<FinAlg> {
    if n == 0 {
        return Err(Error::BadSpec("cyclic group order must be at least 1".into()));
    }
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    FinAlg::from_fn(field, labels, Some(unit_at(field, n, 0)), |i, j| vec![((i + j) % n, field.one())])
}

/// `k[x]/(x^n)` with basis `1, x, ..., x^(n-1)`.
pub fn truncated_polynomial(n: usize, field: &Field) -> Result<FinAlg> {
    if n == 0 {
        return Err(Error::BadSpec("truncation degree must be at least 1".into()));
    }
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    FinAlg::from_fn(field, labels, Some(unit_at(field, n, 0)), |i, j| {
        if i + j < n {
            vec![(i + j, field.one())]
        } else {
            Vec::new()
        }
    })
}

fn matrix_unit_label(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{},{}", i + 1, j + 1)
    }
}

/// `M_n(k)` with basis `E_ij` in row-major order.
pub fn matrix_algebra(n: usize, field: &Field) -> Result<FinAlg> {
    if n == 0 {
        return Err(Error::BadSpec("matrix size must be at least 1".into()));
    }
    let labels = (0..n * n).map(|a| matrix_unit_label(n, a / n, a % n)).collect();
    let mut unit = vec![field.zero(); n * n];
    for i in 0..n {
        unit[i * n + i] = field.one();
    }
    FinAlg::from_fn(field, labels, Some(unit), |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        if j == k {
            vec![(i * n + l, field.one())]
        } else {
            Vec::new()
        }
    })
}

/// Upper-triangular `n x n` matrices with basis `E_ij`, `i <= j`, in row-major order.
pub fn upper_triangular(n: usize, field: &Field) -> Result<FinAlg> {
    if n == 0 {
        return Err(Error::BadSpec("matrix size must be at least 1".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    let labels = pairs.iter().map(|&(i, j)| matrix_unit_label(n, i, j)).collect();
    let mut unit = vec![field.zero(); pairs.len()];
    for i in 0..n {
        unit[index(i, i)] = field.one();
    }
    FinAlg::from_fn(field, labels, Some(unit), |a, b| {
        let (i, j) = pairs[a];
        let (k, l) = pairs[b];
        if j == k {
            vec![(index(i, l), field.one())]
        } else {
            Vec::new()
        }
    })
}

fn unit_at(field: &Field, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// Componentwise product of algebras over one field.
pub fn direct_product(factors: &[FinAlg]) -> Result<FinAlg> {
    let first = factors.first().ok_or_else(|| Error::BadSpec("direct product of no factors".into()))?;
    let field = first.field().clone();
    let mut labels = Vec::new();
    let mut entries: Vec<Entry> = Vec::new();
    let mut unit = Vec::new();
    let mut offset = 0;
    for (idx, a) in factors.iter().enumerate() {
        if a.field() != &field {
            return Err(Error::FieldMismatch(format!("{} vs {}", a.field(), field)));
        }
        if factors.len() == 1 {
            labels.extend(a.labels().iter().cloned());
        } else {
            labels.extend(a.labels().iter().map(|l| format!("{l}@{idx}")));
        }
        for (i, j, k, c) in a.entries() {
            entries.push((i + offset, j + offset, k + offset, c));
        }
        unit.extend(a.unit().iter().cloned());
        offset += a.dim();
    }
    FinAlg::new(&field, labels, entries, Some(unit))
}

/// `A^op`, with `c^op[i][j][k] = c[j][i][k]`.
pub fn opposite(a: &FinAlg) -> Result<FinAlg> {
    let entries = a.entries().into_iter().map(|(i, j, k, c)| (j, i, k, c)).collect();
    FinAlg::new(a.field(), a.labels().to_vec(), entries, Some(a.unit().clone()))
}

/// `A ⊗ B` with basis `e_i ⊗ f_j` at index `i * dim(B) + j`.
pub fn tensor(a: &FinAlg, b: &FinAlg) -> Result<FinAlg> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field(), b.field())));
    }
    let f = a.field();
    let nb = b.dim();
    let mut labels = Vec::with_capacity(a.dim() * nb);
    for la in a.labels() {
        for lb in b.labels() {
            labels.push(format!("{la}⊗{lb}"));
        }
    }
    let mut entries = Vec::new();
    for (i, k, m, c) in a.entries() {
        for (j, l, n, d) in b.entries() {
            entries.push((i * nb + j, k * nb + l, m * nb + n, f.mul(&c, &d)));
        }
    }
    let mut unit = Vec::with_capacity(a.dim() * nb);
    for x in a.unit() {
        for y in b.unit() {
            unit.push(f.mul(x, y));
        }
    }
    FinAlg::new(f, labels, entries, Some(unit))
}

/// `A ⊗_k E` for a simple extension `E` of `k` (or `E = k`).
pub fn base_change(a: &FinAlg, ext: &Field) -> Result<FinAlg> {
    if ext == a.field() {
        return Ok(a.clone());
    }
    if ext.base() != Some(a.field()) {
        return Err(Error::NotAnExtension);
    }
    let entries = a.entries().into_iter().map(|(i, j, k, c)| (i, j, k, ext.embed(&c))).collect();
    let unit = a.unit().iter().map(|c| ext.embed(c)).collect();
    FinAlg::new(ext, a.labels().to_vec(), entries, Some(unit))
}

/// Views an algebra over a simple extension `E/F` as an algebra over `F`, with basis
/// `e_i x^s` at index `i * [E:F] + s`.
pub fn restrict_scalars(a: &FinAlg) -> Result<FinAlg> {
    let ext = a.field();
    let (base, d) = match ext.kind() {
        FieldKind::Extension { base, minpoly, .. } => (base.clone(), minpoly.len() - 1),
        _ => return Err(Error::NotAnExtension),
    };
    let gen = ext.generator().unwrap();
    let gen_powers: Vec<Scalar> = (0..2 * d).map(|s| ext.pow(&gen, s as u64)).collect();
    let coords = |s: &Scalar| -> Vec<Scalar> {
        match s {
            Scalar::Ext(v) => v.clone(),
            _ => unreachable!(),
        }
    };
    let mut labels = Vec::with_capacity(a.dim() * d);
    for l in a.labels() {
        for s in 0..d {
            labels.push(match s {
                0 => l.clone(),
                1 => format!("{l}*x"),
                _ => format!("{l}*x^{s}"),
            });
        }
    }
    let mut entries = Vec::new();
    for (i, k, m, c) in a.entries() {
        for s in 0..d {
            for t in 0..d {
                let scaled = coords(&ext.mul(&c, &gen_powers[s + t]));
                for (r, coef) in scaled.into_iter().enumerate() {
                    if !base.is_zero(&coef) {
                        entries.push((i * d + s, k * d + t, m * d + r, coef));
                    }
                }
            }
        }
    }
    let mut unit = vec![base.zero(); a.dim() * d];
    for (i, u) in a.unit().iter().enumerate() {
        for (r, coef) in coords(u).into_iter().enumerate() {
            unit[i * d + r] = coef;
        }
    }
    FinAlg::new(&base, labels, entries, Some(unit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group_is_the_field() {
        let f2 = Field::prime(2).unwrap();
        let a = group_algebra(1, &f2).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.unit(), &vec![f2.one()]);
    }

    #[test]
    fn one_plus_g_squares_to_zero_in_char_two() {
        let f2 = Field::prime(2).unwrap();
        let a = group_algebra(2, &f2).unwrap();
        let x = a.add(a.unit(), &a.basis_vector(1));
        assert!(a.is_zero(&a.mul(&x, &x)));
    }

    #[test]
    fn matrix_algebra_unit() {
        let f3 = Field::prime(3).unwrap();
        let m = matrix_algebra(2, &f3).unwrap();
        assert_eq!(m.dim(), 4);
        let e11_plus_e22 = m.add(&m.basis_vector(0), &m.basis_vector(3));
        assert_eq!(&e11_plus_e22, m.unit());
    }

    #[test]
    fn product_of_two_copies_of_q() {
        let q = Field::rationals();
        let p = direct_product(&[group_algebra(1, &q).unwrap(), group_algebra(1, &q).unwrap()]).unwrap();
        assert_eq!(p.dim(), 2);
        assert!(p.is_commutative());
    }

    #[test]
    fn opposite_of_upper_triangular_is_lower() {
        let q = Field::rationals();
        let t = upper_triangular(2, &q).unwrap();
        let op = opposite(&t).unwrap();
        // In T2: E11 E12 = E12, E12 E11 = 0. Opposite swaps these.
        assert!(op.is_zero(&op.mul(&op.basis_vector(0), &op.basis_vector(1))));
        assert_eq!(op.mul(&op.basis_vector(1), &op.basis_vector(0)), op.basis_vector(1));
        assert_eq!(opposite(&op).unwrap(), t);
    }

    #[test]
    fn tensor_dimensions_and_identity_factor() {
        let q = Field::rationals();
        let t = upper_triangular(2, &q).unwrap();
        let c2 = group_algebra(2, &q).unwrap();
        assert_eq!(tensor(&t, &c2).unwrap().dim(), 6);
        let k = group_algebra(1, &q).unwrap();
        assert_eq!(tensor(&k, &t).unwrap().entries(), t.entries());
    }

    #[test]
    fn mismatched_fields() {
        let a = group_algebra(2, &Field::rationals()).unwrap();
        let b = group_algebra(2, &Field::prime(2).unwrap()).unwrap();
        assert!(matches!(direct_product(&[a.clone(), b.clone()]), Err(Error::FieldMismatch(_))));
        assert!(matches!(tensor(&a, &b), Err(Error::FieldMismatch(_))));
        assert_eq!(base_change(&a, &Field::prime(2).unwrap()), Err(Error::NotAnExtension));
    }

    #[test]
    fn restriction_of_scalars_doubles_dimension() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::extension(&f3, &[f3.one(), f3.zero(), f3.one()]).unwrap();
        let m = base_change(&matrix_algebra(2, &f3).unwrap(), &f9).unwrap();
        let r = restrict_scalars(&m).unwrap();
        assert_eq!(r.dim(), 8);
        assert_eq!(r.field(), &f3);
    }
}
