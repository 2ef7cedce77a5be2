//! Separability idempotents, bimodules and inner derivations.
//!
//! Elements of `A ⊗ A` are coordinate vectors of length `dim²`, with `e_i ⊗ e_j` at
//! index `i * dim + j`. The bimodule structure on `A ⊗ A` is
//! `a (x ⊗ y) b = ax ⊗ yb`, and the multiplication map is `m(x ⊗ y) = xy`.

use crate::algebra::{base_change, FinAlg, Vector};
use crate::error::{Error, Result};
use crate::exactmath::{Field, FieldKind, Matrix, Scalar, Subspace};
use crate::radical;

/// `p ∈ A ⊗ A` with `m(p) = 1` and `a p = p a` for all `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SepIdempotent {
    pub algebra: FinAlg,
    pub tensor_coeffs: Vector,
    /// `p = Σ left ⊗ right`, one summand per nonzero row of the coefficient matrix.
    pub as_pairs: Vec<(Vector, Vector)>,
}

impl SepIdempotent {
    /// Validates both defining equations.
    pub fn new(alg: &FinAlg, tensor_coeffs: Vector) -> Result<SepIdempotent> {
        let n = alg.dim();
        if tensor_coeffs.len() != n * n {
            return Err(Error::AmbientMismatch(format!(
                "tensor of length {}, expected {}",
                tensor_coeffs.len(),
                n * n
            )));
        }
        let f = alg.field();
        if &multiplication(alg, &tensor_coeffs) != alg.unit() {
            return Err(Error::InternalVerificationFailed("m(p) != 1".into()));
        }
        for l in 0..n {
            let e = alg.basis_vector(l);
            if tensor_left(alg, &e, &tensor_coeffs) != tensor_right(alg, &tensor_coeffs, &e) {
                return Err(Error::InternalVerificationFailed(format!("a p != p a for basis element {l}")));
            }
        }
        let as_pairs = (0..n)
            .filter_map(|i| {
                let row = tensor_coeffs[i * n..(i + 1) * n].to_vec();
                (!row.iter().all(|c| f.is_zero(c))).then(|| (alg.basis_vector(i), row))
            })
            .collect();
        Ok(SepIdempotent { algebra: alg.clone(), tensor_coeffs, as_pairs })
    }

    /// Sparse `(i, j, coefficient)` triples of the nonzero tensor coordinates.
    pub fn sparse(&self) -> Vec<(usize, usize, Scalar)> {
        let n = self.algebra.dim();
        let f = self.algebra.field();
        self.tensor_coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(k, c)| (k / n, k % n, c.clone()))
            .collect()
    }
}

/// `m(Σ p_ij e_i ⊗ e_j) = Σ p_ij e_i e_j`.
pub fn multiplication(alg: &FinAlg, t: &[Scalar]) -> Vector {
    let n = alg.dim();
    let f = alg.field();
    let mut out = alg.zero();
    for (k, c) in t.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        for (r, d) in alg.basis_product(k / n, k % n) {
            out[*r] = f.add(&out[*r], &f.mul(c, d));
        }
    }
    out
}

/// `a · t` in `A ⊗ A`.
pub fn tensor_left(alg: &FinAlg, a: &[Scalar], t: &[Scalar]) -> Vector {
    let n = alg.dim();
    let f = alg.field();
    let mut out = vec![f.zero(); n * n];
    for i in 0..n {
        let row = &t[i * n..(i + 1) * n];
        if row.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        let ai = alg.mul(a, &alg.basis_vector(i));
        for (r, x) in ai.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, c) in row.iter().enumerate() {
                out[r * n + j] = f.add(&out[r * n + j], &f.mul(x, c));
            }
        }
    }
    out
}

/// `t · a` in `A ⊗ A`.
pub fn tensor_right(alg: &FinAlg, t: &[Scalar], a: &[Scalar]) -> Vector {
    let n = alg.dim();
    let f = alg.field();
    let mut out = vec![f.zero(); n * n];
    for j in 0..n {
        let ja = alg.mul(&alg.basis_vector(j), a);
        for (s, x) in ja.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for i in 0..n {
                let c = &t[i * n + j];
                if !f.is_zero(c) {
                    out[i * n + s] = f.add(&out[i * n + s], &f.mul(c, x));
                }
            }
        }
    }
    out
}

/// Solves `m(p) = 1`, `e_l p = p e_l` in `dim²` unknowns; `None` means `A` is not separable.
pub fn sep_idempotent(alg: &FinAlg) -> Result<Option<SepIdempotent>> {
    let n = alg.dim();
    let f = alg.field();
    let nn = n * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    // m(p) = 1
    for k in 0..n {
        let mut row = vec![f.zero(); nn];
        for i in 0..n {
            for j in 0..n {
                for (r, c) in alg.basis_product(i, j) {
                    if *r == k {
                        row[i * n + j] = c.clone();
                    }
                }
            }
        }
        rows.push(row);
        rhs.push(alg.unit()[k].clone());
    }
    // Coefficient of e_r ⊗ e_s in e_l p − p e_l.
    for l in 0..n {
        let mut block = vec![vec![f.zero(); nn]; nn];
        for i in 0..n {
            for (r, c) in alg.basis_product(l, i) {
                for j in 0..n {
                    let cell = &mut block[r * n + j][i * n + j];
                    *cell = f.add(cell, c);
                }
            }
        }
        for j in 0..n {
            for (s, c) in alg.basis_product(j, l) {
                for i in 0..n {
                    let cell = &mut block[i * n + s][i * n + j];
                    *cell = f.sub(cell, c);
                }
            }
        }
        for row in block {
            if !row.iter().all(|c| f.is_zero(c)) {
                rows.push(row);
                rhs.push(f.zero());
            }
        }
    }
    let system = Matrix::from_rows(f, nn, rows);
    match system.solve_vec(&rhs)? {
        Some(p) => SepIdempotent::new(alg, p).map(Some),
        None => Ok(None),
    }
}

/// Whether a separability idempotent exists. Over `Q` and `F_p` the answer is checked
/// against semisimplicity, which is equivalent there.
pub fn is_separable(alg: &FinAlg) -> Result<bool> {
    let sep = sep_idempotent(alg)?.is_some();
    if matches!(alg.field().kind(), FieldKind::Rationals | FieldKind::Prime(_)) {
        let ss = radical::is_semisimple(alg)?;
        if ss != sep {
            return Err(Error::InternalVerificationFailed(format!(
                "separable = {sep} but semisimple = {ss} over a perfect field"
            )));
        }
    }
    Ok(sep)
}

/// Whether `A ⊗_k E` is semisimple.
pub fn base_change_semisimple_check(alg: &FinAlg, ext: &Field) -> Result<bool> {
    radical::is_semisimple(&base_change(alg, ext)?)
}

/// Least `m <= dim A` with `x^m = 0`; `None` if `x` is not nilpotent.
pub fn nilpotent_witness(alg: &FinAlg, x: &[Scalar]) -> Option<usize> {
    alg.nilpotency_index(x).filter(|&m| m <= alg.dim())
}

/// A finite-dimensional bimodule `T` over `B`, given by `b · t = λ(b) t` and
/// `t · b = ρ(b) t` on the basis of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    algebra: FinAlg,
    space_dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(alg: &FinAlg, space_dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        let bad = |m: String| Err(Error::BadBimodule(m));
        let n = alg.dim();
        if left.len() != n || right.len() != n {
            return bad("one action matrix per basis element".into());
        }
        for m in left.iter().chain(&right) {
            if m.rows() != space_dim || m.cols() != space_dim || m.field() != alg.field() {
                return bad(format!("action matrices must be {space_dim}x{space_dim} over {}", alg.field()));
            }
        }
        let t = Bimodule { algebra: alg.clone(), space_dim, left, right };
        let id = Matrix::identity(alg.field(), space_dim);
        if t.lambda(alg.unit()) != id || t.rho(alg.unit()) != id {
            return bad("the unit does not act as the identity".into());
        }
        for i in 0..n {
            for j in 0..n {
                let prod = alg.mul(&alg.basis_vector(i), &alg.basis_vector(j));
                if t.lambda(&prod) != t.left[i].mul(&t.left[j])? {
                    return bad(format!("left action is not multiplicative at ({i}, {j})"));
                }
                if t.rho(&prod) != t.right[j].mul(&t.right[i])? {
                    return bad(format!("right action is not multiplicative at ({i}, {j})"));
                }
                if t.left[i].mul(&t.right[j])? != t.right[j].mul(&t.left[i])? {
                    return bad(format!("actions do not commute at ({i}, {j})"));
                }
            }
        }
        Ok(t)
    }

    /// `B` acting on itself by multiplication.
    pub fn regular(alg: &FinAlg) -> Bimodule {
        let n = alg.dim();
        Bimodule {
            algebra: alg.clone(),
            space_dim: n,
            left: (0..n).map(|i| alg.left_mult_matrix(&alg.basis_vector(i))).collect(),
            right: (0..n).map(|i| alg.right_mult_matrix(&alg.basis_vector(i))).collect(),
        }
    }

    /// The kernel of `m: A ⊗ A → A` in coordinates of its echelon basis, returned with
    /// that basis.
    pub fn kernel_of_multiplication(alg: &FinAlg) -> Result<(Bimodule, Subspace)> {
        let n = alg.dim();
        let f = alg.field();
        let cols: Vec<Vector> = (0..n * n)
            .map(|k| {
                let mut e = vec![f.zero(); n * n];
                e[k] = f.one();
                multiplication(alg, &e)
            })
            .collect();
        let m = Matrix::from_columns(f, n, &cols);
        let kernel = Subspace::span(f, n * n, &m.nullspace().row_vectors());
        let basis = kernel.vectors();
        let restrict = |act: &dyn Fn(&Vector) -> Vector| -> Result<Matrix> {
            let images = basis
                .iter()
                .map(|v| {
                    kernel.coordinates(&act(v)).ok_or_else(|| Error::BadBimodule("Ker(m) is not a sub-bimodule".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(f, basis.len(), &images))
        };
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for l in 0..n {
            let e = alg.basis_vector(l);
            left.push(restrict(&|v| tensor_left(alg, &e, v))?);
            right.push(restrict(&|v| tensor_right(alg, v, &e))?);
        }
        Ok((Bimodule::new(alg, basis.len(), left, right)?, kernel))
    }

    pub fn algebra(&self) -> &FinAlg {
        &self.algebra
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    /// `λ(b)` for an arbitrary element `b`.
    pub fn lambda(&self, b: &[Scalar]) -> Matrix {
        self.combine(&self.left, b)
    }

    /// `ρ(b)` for an arbitrary element `b`.
    pub fn rho(&self, b: &[Scalar]) -> Matrix {
        self.combine(&self.right, b)
    }

    fn combine(&self, mats: &[Matrix], b: &[Scalar]) -> Matrix {
        let f = self.algebra.field();
        let mut acc = Matrix::zeros(f, self.space_dim, self.space_dim);
        for (m, c) in mats.iter().zip(b) {
            if !f.is_zero(c) {
                acc = acc.add(&m.scale(c)).unwrap();
            }
        }
        acc
    }

    pub fn act_left(&self, b: &[Scalar], t: &[Scalar]) -> Vector {
        self.lambda(b).mul_vec(t)
    }

    pub fn act_right(&self, t: &[Scalar], b: &[Scalar]) -> Vector {
        self.rho(b).mul_vec(t)
    }
}

/// Checks `d(e_i e_j) = e_i · d(e_j) + d(e_i) · e_j`; column `i` of `d` is `d(e_i)`.
pub fn check_derivation(t: &Bimodule, d: &Matrix) -> Result<()> {
    let alg = t.algebra();
    let n = alg.dim();
    if d.rows() != t.space_dim() || d.cols() != n {
        return Err(Error::AmbientMismatch(format!("derivation must be {}x{n}", t.space_dim())));
    }
    let f = alg.field();
    let cols = d.columns();
    for i in 0..n {
        for j in 0..n {
            let prod = alg.mul(&alg.basis_vector(i), &alg.basis_vector(j));
            let lhs = d.mul_vec(&prod);
            let a = t.left[i].mul_vec(&cols[j]);
            let b = t.right[j].mul_vec(&cols[i]);
            let rhs: Vector = a.iter().zip(&b).map(|(x, y)| f.add(x, y)).collect();
            if lhs != rhs {
                return Err(Error::NotADerivation(i, j));
            }
        }
    }
    Ok(())
}

/// Whether `d(b) = b · u − u · b` for every basis element `b`.
pub fn is_inner_by(t: &Bimodule, d: &Matrix, u: &[Scalar]) -> bool {
    let f = t.algebra().field();
    let cols = d.columns();
    (0..t.algebra().dim()).all(|i| {
        let a = t.left[i].mul_vec(u);
        let b = t.right[i].mul_vec(u);
        let diff: Vector = a.iter().zip(&b).map(|(x, y)| f.sub(x, y)).collect();
        diff == cols[i]
    })
}

/// Finds `u ∈ T` with `d(b) = b · u − u · b`, trying the closed form built from a
/// separability idempotent first.
pub fn inner_derivation(t: &Bimodule, d: &Matrix) -> Result<Vector> {
    let p = sep_idempotent(t.algebra())?;
    inner_derivation_with(t, d, p.as_ref())
}

/// As [`inner_derivation`], with an optional precomputed separability idempotent; with
/// `None` only the linear system is used.
pub fn inner_derivation_with(t: &Bimodule, d: &Matrix, p: Option<&SepIdempotent>) -> Result<Vector> {
    check_derivation(t, d)?;
    let alg = t.algebra();
    let f = alg.field();
    let n = alg.dim();
    let dim_t = t.space_dim();
    if let Some(p) = p {
        // Σ p_ij d(e_i) · e_j, up to sign.
        let cols = d.columns();
        let mut u = vec![f.zero(); dim_t];
        for (i, j, c) in p.sparse() {
            let term = t.right[j].mul_vec(&cols[i]);
            for (x, y) in u.iter_mut().zip(&term) {
                *x = f.add(x, &f.mul(&c, y));
            }
        }
        let neg: Vector = u.iter().map(|x| f.neg(x)).collect();
        for cand in [neg, u] {
            if is_inner_by(t, d, &cand) {
                return Ok(cand);
            }
        }
    }
    let mut rows = Vec::with_capacity(n * dim_t);
    let mut rhs = Vec::with_capacity(n * dim_t);
    let cols = d.columns();
    for i in 0..n {
        let m = t.left[i].sub(&t.right[i])?;
        rows.extend(m.row_vectors());
        rhs.extend(cols[i].iter().cloned());
    }
    let system = Matrix::from_rows(f, dim_t, rows);
    let u = system.solve_vec(&rhs)?.ok_or(Error::NotInner)?;
    if !is_inner_by(t, d, &u) {
        return Err(Error::InternalVerificationFailed("inner derivation solution".into()));
    }
    Ok(u)
}

/// Rebuilds a separability idempotent from the universal derivation
/// `f(a) = 1 ⊗ a − a ⊗ 1` into `Ker(m)`: if `f(a) = a u − u a` then `1 ⊗ 1 + u` works.
pub fn universal_derivation_idempotent(alg: &FinAlg) -> Result<SepIdempotent> {
    let n = alg.dim();
    let f = alg.field();
    let (bimod, kernel) = Bimodule::kernel_of_multiplication(alg)?;
    let one = alg.unit();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let e = alg.basis_vector(i);
        let mut v = vec![f.zero(); n * n];
        for r in 0..n {
            for s in 0..n {
                let a = f.mul(&one[r], &e[s]);
                let b = f.mul(&e[r], &one[s]);
                v[r * n + s] = f.sub(&a, &b);
            }
        }
        cols.push(kernel.coordinates(&v).expect("1⊗a − a⊗1 lies in Ker(m)"));
    }
    let d = Matrix::from_columns(f, kernel.dim(), &cols);
    let u = kernel.combine(&inner_derivation_with(&bimod, &d, None)?);
    let mut p = vec![f.zero(); n * n];
    for r in 0..n {
        for s in 0..n {
            p[r * n + s] = f.add(&f.mul(&one[r], &one[s]), &u[r * n + s]);
        }
    }
    SepIdempotent::new(alg, p)
}

/// True when the universal derivation is inner and yields a valid separability idempotent.
pub fn universal_derivation_check(alg: &FinAlg) -> Result<bool> {
    match universal_derivation_idempotent(alg) {
        Ok(_) => Ok(true),
        Err(Error::NotInner) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_product, group_algebra, matrix_algebra, tensor, upper_triangular};

    fn inseparable_extension() -> FinAlg {
        // F_2(t)[a]/(a^2 - t), basis 1, a.
        let ft = Field::rational_functions(2).unwrap();
        let t = ft.parse("t").unwrap();
        let entries = vec![(0, 0, 0, ft.one()), (0, 1, 1, ft.one()), (1, 0, 1, ft.one()), (1, 1, 0, t)];
        FinAlg::new(&ft, vec!["1".into(), "a".into()], entries, None).unwrap()
    }

    #[test]
    fn matrix_algebra_representative() {
        let q = Field::rationals();
        let m = matrix_algebra(2, &q).unwrap();
        // E11⊗E11 + E21⊗E12, with E11=0, E12=1, E21=2.
        let mut p = vec![q.zero(); 16];
        p[0] = q.one();
        p[2 * 4 + 1] = q.one();
        assert!(SepIdempotent::new(&m, p).is_ok());
        assert!(sep_idempotent(&m).unwrap().is_some());
    }

    #[test]
    fn base_field_has_trivial_idempotent() {
        let f3 = Field::prime(3).unwrap();
        let k = group_algebra(1, &f3).unwrap();
        let p = sep_idempotent(&k).unwrap().unwrap();
        assert_eq!(p.tensor_coeffs, vec![f3.one()]);
    }

    #[test]
    fn separability_examples() {
        let q = Field::rationals();
        let f2 = Field::prime(2).unwrap();
        assert!(is_separable(&group_algebra(3, &q).unwrap()).unwrap());
        assert!(!is_separable(&group_algebra(2, &f2).unwrap()).unwrap());
        assert!(!is_separable(&upper_triangular(2, &q).unwrap()).unwrap());
        assert!(!is_separable(&inseparable_extension()).unwrap());
    }

    #[test]
    fn inseparable_extension_has_nilpotent_tensor() {
        let e = inseparable_extension();
        let ee = tensor(&e, &e).unwrap();
        // a⊗1 + 1⊗a at indices 2 and 1.
        let ft = e.field();
        let mut x = ee.zero();
        x[1] = ft.one();
        x[2] = ft.one();
        assert_eq!(nilpotent_witness(&ee, &x), Some(2));
        assert_eq!(nilpotent_witness(&ee, &ee.zero()), Some(1));
        assert_eq!(nilpotent_witness(&ee, ee.unit()), None);
    }

    #[test]
    fn base_change_checks() {
        let q = Field::rationals();
        let a = group_algebra(3, &q).unwrap();
        let zeta = Field::extension(&q, &[q.one(), q.one(), q.one()]).unwrap();
        assert!(base_change_semisimple_check(&a, &zeta).unwrap());
        assert!(base_change_semisimple_check(&a, &q).unwrap());
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::extension(&f3, &[f3.one(), f3.zero(), f3.one()]).unwrap();
        assert!(base_change_semisimple_check(&matrix_algebra(2, &f3).unwrap(), &f9).unwrap());
    }

    #[test]
    fn projection_difference_is_inner() {
        let q = Field::rationals();
        let k = group_algebra(1, &q).unwrap();
        let b = direct_product(&[k.clone(), k]).unwrap();
        // T = Q with (x,y)·t = x t and t·(x,y) = y t.
        let one = |c: i64| Matrix::from_ints(&q, &[&[c]]);
        let t = Bimodule::new(&b, 1, vec![one(1), one(0)], vec![one(0), one(1)]).unwrap();
        let d = Matrix::from_ints(&q, &[&[1, -1]]);
        let u = inner_derivation(&t, &d).unwrap();
        assert_eq!(u, vec![q.one()]);
        let u = inner_derivation_with(&t, &d, None).unwrap();
        assert_eq!(u, vec![q.one()]);
        let zero = Matrix::zeros(&q, 1, 2);
        assert!(is_inner_by(&t, &zero, &inner_derivation(&t, &zero).unwrap()));
    }

    #[test]
    fn derivation_of_inseparable_extension_is_outer() {
        let e = inseparable_extension();
        let ft = e.field();
        let t = Bimodule::regular(&e);
        let d = Matrix::from_columns(ft, 2, &[e.zero(), e.unit().clone()]);
        assert_eq!(inner_derivation(&t, &d), Err(Error::NotInner));
    }

    #[test]
    fn non_derivation_is_rejected() {
        let q = Field::rationals();
        let a = group_algebra(2, &q).unwrap();
        let t = Bimodule::regular(&a);
        // d(1) = 1 violates d(1) = 2 d(1).
        let d = Matrix::from_columns(&q, 2, &[a.unit().clone(), a.zero()]);
        assert_eq!(inner_derivation(&t, &d), Err(Error::NotADerivation(0, 0)));
    }

    #[test]
    fn bad_bimodule_is_rejected() {
        let q = Field::rationals();
        let a = group_algebra(2, &q).unwrap();
        let id = Matrix::identity(&q, 1);
        let neg = Matrix::from_ints(&q, &[&[-1]]);
        assert!(Bimodule::new(&a, 1, vec![id.clone(), neg.clone()], vec![id.clone(), neg]).is_ok());
        let two = Matrix::from_ints(&q, &[&[2]]);
        assert!(matches!(
            Bimodule::new(&a, 1, vec![id.clone(), two], vec![id.clone(), id]),
            Err(Error::BadBimodule(_))
        ));
    }

    #[test]
    fn universal_derivation_round_trip() {
        let q = Field::rationals();
        let f3 = Field::prime(3).unwrap();
        assert!(universal_derivation_check(&group_algebra(1, &q).unwrap()).unwrap());
        let p = universal_derivation_idempotent(&group_algebra(1, &q).unwrap()).unwrap();
        assert_eq!(p.tensor_coeffs, vec![q.one()]);
        assert!(universal_derivation_check(&matrix_algebra(2, &f3).unwrap()).unwrap());
        let k = group_algebra(1, &q).unwrap();
        assert!(universal_derivation_check(&direct_product(&[k.clone(), k]).unwrap()).unwrap());
        assert!(!universal_derivation_check(&upper_triangular(2, &q).unwrap()).unwrap());
    }
}
