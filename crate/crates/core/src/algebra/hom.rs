use super::{FinAlg, Ideal, Side, Vector};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar, Subspace};

/// A validated unital algebra homomorphism. Column `j` of the matrix is the image of
/// the `j`-th source basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgHom {
    source: FinAlg,
    target: FinAlg,
    matrix: Matrix,
}

impl AlgHom {
    pub fn new(source: &FinAlg, target: &FinAlg, matrix: Matrix) -> Result<AlgHom> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", source.field(), target.field())));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::AmbientMismatch(format!(
                "map is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if matrix.mul_vec(source.unit()) != *target.unit() {
            return Err(Error::NotUnital);
        }
        let images = matrix.columns();
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = matrix.mul_vec(&source.mul(&source.basis_vector(i), &source.basis_vector(j)));
                let rhs = target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(Error::NotAHom(i, j));
                }
            }
        }
        Ok(AlgHom { source: source.clone(), target: target.clone(), matrix })
    }

    /// Builds from the images of the source basis.
    pub fn from_images(source: &FinAlg, target: &FinAlg, images: &[Vector]) -> Result<AlgHom> {
        if images.len() != source.dim() {
            return Err(Error::AmbientMismatch("one image per source basis element".into()));
        }
        if images.iter().any(|v| v.len() != target.dim()) {
            return Err(Error::AmbientMismatch("image vectors have the wrong length".into()));
        }
        AlgHom::new(source, target, Matrix::from_columns(target.field(), target.dim(), images))
    }

    pub fn identity(alg: &FinAlg) -> AlgHom {
        AlgHom { source: alg.clone(), target: alg.clone(), matrix: Matrix::identity(alg.field(), alg.dim()) }
    }

    pub fn source(&self) -> &FinAlg {
        &self.source
    }

    pub fn target(&self) -> &FinAlg {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v)
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn kernel(&self) -> Ideal {
        let null = self.matrix.nullspace();
        let space = Subspace::span(self.source.field(), self.source.dim(), &null.row_vectors());
        Ideal::new(&self.source, space, Side::TwoSided).expect("kernel of a homomorphism is an ideal")
    }

    pub fn image_of(&self, space: &Subspace) -> Subspace {
        space.image(&self.matrix).expect("subspace of the source")
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgHom) -> Result<AlgHom> {
        if other.source != self.target {
            return Err(Error::AmbientMismatch("maps do not compose".into()));
        }
        AlgHom::new(&self.source, &other.target, other.matrix.mul(&self.matrix)?)
    }
}

/// A quotient algebra with its canonical projection.
///
/// The quotient basis is the set of non-pivot coordinates of the ideal's echelon basis,
/// so basis element `t` of `A/I` is the class of `e_{complement[t]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: FinAlg,
    pub projection: AlgHom,
    pub complement: Vec<usize>,
}

impl Quotient {
    /// The distinguished preimage `e_{complement[t]}` of quotient basis element `t`, extended
    /// linearly.
    pub fn lift(&self, v: &[Scalar]) -> Vector {
        let source = self.projection.source();
        let mut out = source.zero();
        for (t, &c) in self.complement.iter().enumerate() {
            out[c] = v[t].clone();
        }
        out
    }
}

pub fn quotient(alg: &FinAlg, ideal: &Ideal) -> Result<Quotient> {
    if ideal.side() != Side::TwoSided {
        return Err(Error::NotAnIdeal("two-sided".into()));
    }
    if ideal.space().is_full() {
        return Err(Error::ImproperIdeal);
    }
    let space = ideal.space();
    let complement = space.non_pivots();
    let n = alg.dim();
    let project = |v: &[Scalar]| -> Vector {
        let r = space.reduce(v);
        complement.iter().map(|&c| r[c].clone()).collect()
    };
    let mut entries = Vec::new();
    for (a, &ca) in complement.iter().enumerate() {
        for (b, &cb) in complement.iter().enumerate() {
            let prod = project(alg.basis_product_vector(ca, cb).as_slice());
            for (k, c) in prod.into_iter().enumerate() {
                if !alg.field().is_zero(&c) {
                    entries.push((a, b, k, c));
                }
            }
        }
    }
    let labels = complement.iter().map(|&c| alg.labels()[c].clone()).collect();
    let unit = project(alg.unit());
    let q = FinAlg::new(alg.field(), labels, entries, Some(unit))?;
    let cols: Vec<Vector> = (0..n).map(|j| project(&alg.basis_vector(j))).collect();
    let matrix = Matrix::from_columns(alg.field(), q.dim(), &cols);
    let projection = AlgHom::new(alg, &q, matrix)?;
    Ok(Quotient { algebra: q, projection, complement })
}

impl FinAlg {
    pub(crate) fn basis_product_vector(&self, i: usize, j: usize) -> Vector {
        let mut v = self.zero();
        for (k, c) in self.basis_product(i, j) {
            v[*k] = c.clone();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, ideal_closure, truncated_polynomial, upper_triangular};
    use crate::exactmath::Field;

    #[test]
    fn identity_is_an_automorphism() {
        let t = upper_triangular(2, &Field::rationals()).unwrap();
        let id = AlgHom::new(&t, &t, Matrix::identity(t.field(), 3)).unwrap();
        assert!(id.is_surjective());
        assert!(id.kernel().is_zero());
    }

    #[test]
    fn augmentation_of_q_c2() {
        let q = Field::rationals();
        let a = group_algebra(2, &q).unwrap();
        let k = group_algebra(1, &q).unwrap();
        let aug = AlgHom::from_images(&a, &k, &[vec![q.one()], vec![q.one()]]).unwrap();
        assert!(aug.is_surjective());
        let expected = Subspace::span(&q, 2, &[vec![q.one(), q.from_i64(-1)]]);
        assert_eq!(aug.kernel().space(), &expected);
    }

    #[test]
    fn sign_map_in_char_two_is_augmentation() {
        let f2 = Field::prime(2).unwrap();
        let a = group_algebra(2, &f2).unwrap();
        let k = group_algebra(1, &f2).unwrap();
        let sign = AlgHom::from_images(&a, &k, &[vec![f2.one()], vec![f2.from_i64(-1)]]).unwrap();
        let aug = AlgHom::from_images(&a, &k, &[vec![f2.one()], vec![f2.one()]]).unwrap();
        assert_eq!(sign, aug);
        assert_eq!(sign.kernel().vectors(), vec![vec![f2.one(), f2.one()]]);
    }

    #[test]
    fn non_multiplicative_map_is_rejected() {
        let q = Field::rationals();
        let a = group_algebra(2, &q).unwrap();
        // g -> 2g is unital but not multiplicative.
        let m = AlgHom::from_images(&a, &a, &[a.basis_vector(0), a.scale(&q.from_i64(2), &a.basis_vector(1))]);
        assert_eq!(m, Err(Error::NotAHom(1, 1)));
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let t = upper_triangular(2, &Field::rationals()).unwrap();
        let qt = quotient(&t, &Ideal::zero(&t)).unwrap();
        assert_eq!(qt.algebra, t);
        assert_eq!(qt.projection, AlgHom::identity(&t));
    }

    #[test]
    fn truncating_power_series() {
        let q = Field::rationals();
        let a = truncated_polynomial(4, &q).unwrap();
        let x2 = ideal_closure(&a, &[a.basis_vector(2)], Side::TwoSided).unwrap();
        let qt = quotient(&a, &x2).unwrap();
        assert_eq!(qt.algebra, truncated_polynomial(2, &q).unwrap());
        assert_eq!(qt.projection.apply(&a.basis_vector(1)), qt.algebra.basis_vector(1));
        assert_eq!(qt.projection.kernel(), x2);
    }

    #[test]
    fn t2_modulo_radical_is_split() {
        let q = Field::rationals();
        let t = upper_triangular(2, &q).unwrap();
        let j = ideal_closure(&t, &[t.basis_vector(1)], Side::TwoSided).unwrap();
        let qt = quotient(&t, &j).unwrap();
        assert_eq!(qt.algebra.dim(), 2);
        assert!(qt.algebra.is_commutative());
        assert_eq!(qt.complement, vec![0, 2]);
        assert!(matches!(quotient(&t, &Ideal::whole(&t)), Err(Error::ImproperIdeal)));
    }
}
