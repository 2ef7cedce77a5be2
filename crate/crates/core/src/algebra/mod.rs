//! Finite-dimensional associative unital algebras given by structure constants.
//!
//! A [`FinAlg`] is validated when it is built: associativity is checked on every
//! basis triple and the unit on every basis element, so any value of the type is a
//! genuine unital associative algebra.

mod constructions;
mod hom;
mod ideal;

pub use constructions::{
    base_change, direct_product, group_algebra, matrix_algebra, opposite, restrict_scalars, tensor,
    truncated_polynomial, upper_triangular,
};
pub use hom::{quotient, AlgHom, Quotient};
pub use ideal::{ideal_closure, product_space, Ideal, Side};

use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix, Polynomial, Scalar, Subspace};

/// Coordinate vector of an algebra element.
pub type Vector = Vec<Scalar>;

/// One structure constant: `e_i e_j` has coefficient `c` on `e_k`.
pub type Entry = (usize, usize, usize, Scalar);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlg {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    /// `products[i * dim + j]` is the sparse expansion of `e_i e_j`, sorted by `k`.
    products: Vec<Vec<(usize, Scalar)>>,
    unit: Vector,
}

impl FinAlg {
    /// Builds and validates an algebra from sparse structure constants.
    ///
    /// Repeated `(i, j, k)` entries are summed. When `unit` is `None` the unit is
    /// solved for; a supplied unit is checked.
    pub fn new(field: &Field, labels: Vec<String>, entries: Vec<Entry>, unit: Option<Vector>) -> Result<FinAlg> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::BadSpec("dimension must be at least 1".into()));
        }
        let mut dense: Vec<Vec<Scalar>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::BadSpec(format!("index ({i}, {j}, {k}) out of range for dim {dim}")));
            }
            field.check(&c).map_err(|e| Error::BadSpec(e.to_string()))?;
            let slot = &mut dense[i * dim + j];
            if slot.is_empty() {
                *slot = vec![field.zero(); dim];
            }
            slot[k] = field.add(&slot[k], &c);
        }
        let products =
            dense.into_iter().map(|v| v.into_iter().enumerate().filter(|(_, c)| !field.is_zero(c)).collect()).collect();
        let mut alg = FinAlg { field: field.clone(), dim, labels, products, unit: vec![field.zero(); dim] };
        alg.check_associative()?;
        alg.unit = match unit {
            Some(u) => {
                if u.len() != dim {
                    return Err(Error::BadSpec(format!("unit has {} entries, expected {dim}", u.len())));
                }
                for c in &u {
                    field.check(c).map_err(|e| Error::BadSpec(e.to_string()))?;
                }
                if !alg.is_unit(&u) {
                    return Err(Error::NoUnit);
                }
                u
            }
            None => alg.solve_unit()?,
        };
        Ok(alg)
    }

    /// Builds from a dense multiplication rule on basis indices.
    pub fn from_fn(
        field: &Field,
        labels: Vec<String>,
        unit: Option<Vector>,
        rule: impl Fn(usize, usize) -> Vec<(usize, Scalar)>,
    ) -> Result<FinAlg> {
        let n = labels.len();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in rule(i, j) {
                    entries.push((i, j, k, c));
                }
            }
        }
        FinAlg::new(field, labels, entries, unit)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let eij = self.basis_product(i, j);
                for k in 0..n {
                    let left = self.mul_sparse_right(eij, k);
                    let ejk = self.basis_product(j, k);
                    let right = self.mul_sparse_left(i, ejk);
                    if left != right {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn mul_sparse_right(&self, a: &[(usize, Scalar)], k: usize) -> Vector {
        let f = &self.field;
        let mut out = self.zero();
        for (m, c) in a {
            for (t, d) in self.basis_product(*m, k) {
                out[*t] = f.add(&out[*t], &f.mul(c, d));
            }
        }
        out
    }

    fn mul_sparse_left(&self, i: usize, a: &[(usize, Scalar)]) -> Vector {
        let f = &self.field;
        let mut out = self.zero();
        for (m, c) in a {
            for (t, d) in self.basis_product(i, *m) {
                out[*t] = f.add(&out[*t], &f.mul(c, d));
            }
        }
        out
    }

    fn is_unit(&self, u: &[Scalar]) -> bool {
        (0..self.dim).all(|i| {
            let e = self.basis_vector(i);
            self.mul(u, &e) == e && self.mul(&e, u) == e
        })
    }

    fn solve_unit(&self) -> Result<Vector> {
        // u e_i = e_i and e_i u = e_i as a linear system in u.
        let f = &self.field;
        let n = self.dim;
        let mut sys = Matrix::zeros(f, 2 * n * n, n);
        let mut rhs = Matrix::zeros(f, 2 * n * n, 1);
        for i in 0..n {
            for m in 0..n {
                for (k, c) in self.basis_product(m, i) {
                    let r = i * n + k;
                    sys.set(r, m, f.add(sys.get(r, m), c));
                }
                for (k, c) in self.basis_product(i, m) {
                    let r = n * n + i * n + k;
                    sys.set(r, m, f.add(sys.get(r, m), c));
                }
            }
            rhs.set(i * n + i, 0, f.one());
            rhs.set(n * n + i * n + i, 0, f.one());
        }
        match sys.solve(&rhs)? {
            Some(u) => Ok(u.column(0)),
            None => Err(Error::NoUnit),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> FinAlg {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    /// Sparse expansion of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim + j]
    }

    /// All nonzero structure constants in `(i, j, k)` order.
    pub fn entries(&self) -> Vec<Entry> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.basis_product(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn zero(&self) -> Vector {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn is_zero(&self, a: &[Scalar]) -> bool {
        a.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &[Scalar]) -> Vector {
        a.iter().map(|x| self.field.neg(x)).collect()
    }

    pub fn scale(&self, c: &Scalar, a: &[Scalar]) -> Vector {
        a.iter().map(|x| self.field.mul(c, x)).collect()
    }

    /// `c * 1`.
    pub fn scalar(&self, c: &Scalar) -> Vector {
        self.scale(c, &self.unit)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let f = &self.field;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (k, c) in self.basis_product(i, j) {
                    out[*k] = f.add(&out[*k], &f.mul(&xy, c));
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Scalar], e: usize) -> Vector {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Evaluates a polynomial at an element.
    pub fn eval_poly(&self, p: &Polynomial, a: &[Scalar]) -> Vector {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, a), &self.scalar(c));
        }
        acc
    }

    /// Matrix of `x ↦ a x`; column `j` is `a e_j`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    /// Matrix of `x ↦ x a`; column `j` is `e_j a`.
    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    /// Trace of left multiplication by `a`.
    pub fn trace(&self, a: &[Scalar]) -> Scalar {
        let f = &self.field;
        let mut acc = f.zero();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.basis_product(i, j) {
                    if *k == j {
                        acc = f.add(&acc, &f.mul(x, c));
                    }
                }
            }
        }
        acc
    }

    /// Two-sided inverse, when it exists.
    pub fn inverse(&self, a: &[Scalar]) -> Option<Vector> {
        let l = self.left_mult_matrix(a);
        if l.rank() != self.dim {
            return None;
        }
        // a b = 1 determines b; in a finite-dimensional algebra it is also a left inverse.
        l.solve_vec(&self.unit).ok().flatten()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// The algebra structure on a subspace closed under multiplication, with the given unit
    /// (which may differ from `1`, as for a block `Ae`). Returns the algebra and the matrix
    /// whose columns are the new basis vectors in old coordinates.
    pub fn on_subspace(&self, space: &Subspace, unit: &[Scalar]) -> Result<(FinAlg, Matrix)> {
        let basis = space.vectors();
        let mut entries = Vec::new();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let prod = self.mul(a, b);
                let coords = space
                    .coordinates(&prod)
                    .ok_or_else(|| Error::BadSpec("subspace is not closed under multiplication".into()))?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !self.field.is_zero(&c) {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        let unit_coords =
            space.coordinates(unit).ok_or_else(|| Error::BadSpec("unit does not lie in the subspace".into()))?;
        let labels = basis.iter().map(|v| self.format_element(v)).collect();
        let alg = FinAlg::new(&self.field, labels, entries, Some(unit_coords))?;
        let inclusion = Matrix::from_columns(&self.field, self.dim, &basis);
        Ok((alg, inclusion))
    }

    /// Human-readable element such as `E11 + 2*E12`.
    pub fn format_element(&self, v: &[Scalar]) -> String {
        let f = &self.field;
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(
                |(i, c)| {
                    if f.is_one(c) {
                        self.labels[i].clone()
                    } else {
                        format!("{}*{}", f.format(c), self.labels[i])
                    }
                },
            )
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Least `m` with `a^m = 0`, if `a` is nilpotent (checked up to `dim + 1`).
    pub fn nilpotency_index(&self, a: &[Scalar]) -> Option<usize> {
        let mut power = self.unit.clone();
        for m in 1..=self.dim + 1 {
            power = self.mul(&power, a);
            if self.is_zero(&power) {
                return Some(m);
            }
        }
        None
    }

    /// Minimal polynomial of `a` over the base field (monic).
    pub fn minimal_polynomial(&self, a: &[Scalar]) -> Polynomial {
        self.minimal_polynomial_with_unit(a, &self.unit)
    }

    /// Minimal polynomial of `a` inside a corner `eAe` whose unit is `e`.
    pub fn minimal_polynomial_with_unit(&self, a: &[Scalar], unit: &[Scalar]) -> Polynomial {
        let f = &self.field;
        let mut powers: Vec<Vector> = vec![unit.to_vec()];
        loop {
            let next = self.mul(powers.last().unwrap(), a);
            let m = Matrix::from_columns(f, self.dim, &powers);
            if let Some(sol) = m.solve_vec(&next).unwrap() {
                let mut coeffs: Vec<Scalar> = sol.iter().map(|c| f.neg(c)).collect();
                coeffs.push(f.one());
                return Polynomial::new(f.clone(), coeffs);
            }
            powers.push(next);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn upper_triangular_is_valid() {
        let t2 = upper_triangular(2, &q()).unwrap();
        assert_eq!(t2.dim(), 3);
        assert_eq!(t2.labels(), &["E11", "E12", "E22"]);
        assert_eq!(t2.unit(), &vec![q().one(), q().zero(), q().one()]);
    }

    #[test]
    fn missing_unit_is_rejected() {
        // e1 e1 = e2, everything else zero: nilpotent, no unit.
        let f = q();
        let err = FinAlg::new(&f, vec!["e1".into(), "e2".into()], vec![(0, 0, 1, f.one())], None);
        assert_eq!(err, Err(Error::NoUnit));
    }

    #[test]
    fn octonion_style_table_is_not_associative() {
        // e0 = 1, and i, j, k with i j = k, j k = i, k i = j but anticommuting and squaring to
        // -1 gives quaternions (associative). Flipping one sign breaks associativity.
        let f = q();
        let m1 = f.from_i64(-1);
        let one = f.one();
        let entries = vec![
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (0, 2, 2, one.clone()),
            (0, 3, 3, one.clone()),
            (1, 0, 1, one.clone()),
            (2, 0, 2, one.clone()),
            (3, 0, 3, one.clone()),
            (1, 1, 0, m1.clone()),
            (2, 2, 0, m1.clone()),
            (3, 3, 0, m1.clone()),
            (1, 2, 3, one.clone()),
            (2, 1, 3, m1.clone()),
            (2, 3, 1, one.clone()),
            (3, 2, 1, m1.clone()),
            (3, 1, 2, one.clone()),
            (1, 3, 2, one.clone()), // quaternions would have -1 here
        ];
        let labels = vec!["1".into(), "i".into(), "j".into(), "k".into()];
        let res = FinAlg::new(&f, labels, entries, None);
        assert!(matches!(res, Err(Error::NotAssociative(..))), "{res:?}");
    }

    #[test]
    fn supplied_unit_is_checked() {
        let f = q();
        let labels = vec!["1".into()];
        let res = FinAlg::new(&f, labels, vec![(0, 0, 0, f.one())], Some(vec![f.from_i64(2)]));
        assert_eq!(res, Err(Error::NoUnit));
    }

    #[test]
    fn minimal_polynomial_of_nilpotent() {
        let a = truncated_polynomial(4, &q()).unwrap();
        let x = a.basis_vector(1);
        assert_eq!(a.minimal_polynomial(&x), Polynomial::from_ints(&q(), &[0, 0, 0, 0, 1]));
        assert_eq!(a.nilpotency_index(&x), Some(4));
        assert_eq!(a.nilpotency_index(a.unit()), None);
    }

    #[test]
    fn inverse_of_unit_plus_nilpotent() {
        let a = truncated_polynomial(3, &q()).unwrap();
        let one_plus_x = a.add(a.unit(), &a.basis_vector(1));
        let inv = a.inverse(&one_plus_x).unwrap();
        assert_eq!(a.mul(&one_plus_x, &inv), *a.unit());
        assert_eq!(a.mul(&inv, &one_plus_x), *a.unit());
        assert!(a.inverse(&a.basis_vector(1)).is_none());
    }
}
