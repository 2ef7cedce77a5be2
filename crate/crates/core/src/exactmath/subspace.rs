//! Linear subspaces of `k^n` kept in canonical reduced echelon form, so equality of
//! subspaces is equality of values.

use super::field::{Field, Scalar};
use super::matrix::Matrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        let m = Matrix::from_rows(field, ambient, vectors.to_vec());
        let (basis, pivots) = m.rref();
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Reduced echelon basis as rows.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; the matching unit vectors span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.field() != other.field() {
            return Err(Error::AmbientMismatch(format!(
                "subspaces of {}^{} and {}^{}",
                self.field(),
                self.ambient,
                other.field(),
                other.ambient
            )));
        }
        Ok(())
    }

    /// Canonical representative of `v` modulo this subspace (zero at every pivot).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, b) in out.iter_mut().zip(self.basis.row(r)) {
                if !f.is_zero(b) {
                    *x = f.sub(x, &f.mul(&c, b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Vector with the given coordinates in the echelon basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![f.zero(); self.ambient];
        for (r, c) in coords.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (x, b) in out.iter_mut().zip(self.basis.row(r)) {
                *x = f.add(x, &f.mul(c, b));
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Ok(Subspace::span(self.field(), self.ambient, &vs))
    }

    /// Intersection via the nullspace of `[U^T | -V^T]`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(f, self.ambient));
        }
        let (a, b) = (self.dim(), other.dim());
        let mut sys = Matrix::zeros(f, self.ambient, a + b);
        for i in 0..a {
            for (j, x) in self.basis.row(i).iter().enumerate() {
                sys.set(j, i, x.clone());
            }
        }
        for i in 0..b {
            for (j, x) in other.basis.row(i).iter().enumerate() {
                sys.set(j, a + i, f.neg(x));
            }
        }
        let null = sys.nullspace();
        let vs: Vec<Vec<Scalar>> = null.row_vectors().iter().map(|coeffs| self.combine(&coeffs[..a])).collect();
        Ok(Subspace::span(f, self.ambient, &vs))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.vectors().iter().all(|v| other.contains(v)))
    }

    /// Image under a linear map given by a matrix whose columns are images of unit vectors.
    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        if map.cols() != self.ambient {
            return Err(Error::AmbientMismatch("map does not act on this space".into()));
        }
        let vs: Vec<Vec<Scalar>> = self.vectors().iter().map(|v| map.mul_vec(v)).collect();
        Ok(Subspace::span(self.field(), map.rows(), &vs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(f: &Field, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![f.zero(); n];
        v[i] = f.one();
        v
    }

    #[test]
    fn sum_is_idempotent() {
        let q = Field::rationals();
        let u = Subspace::span(&q, 3, &[vec![q.one(), q.from_i64(2), q.zero()]]);
        assert_eq!(u.sum(&u).unwrap(), u);
    }

    #[test]
    fn coordinate_axes_meet_in_zero() {
        let f = Field::prime(3).unwrap();
        let a = Subspace::span(&f, 2, &[e(&f, 2, 0)]);
        let b = Subspace::span(&f, 2, &[e(&f, 2, 1)]);
        assert!(a.intersection(&b).unwrap().is_zero());
    }

    #[test]
    fn plane_meets_axis() {
        let q = Field::rationals();
        let e1 = e(&q, 3, 0);
        let e2 = e(&q, 3, 1);
        let e12: Vec<Scalar> = e1.iter().zip(&e2).map(|(a, b)| q.add(a, b)).collect();
        let u = Subspace::span(&q, 3, &[e12, e2]);
        let v = Subspace::span(&q, 3, std::slice::from_ref(&e1));
        assert_eq!(u.intersection(&v).unwrap(), Subspace::span(&q, 3, &[e1]));
    }

    #[test]
    fn ambient_mismatch() {
        let q = Field::rationals();
        let a = Subspace::zero(&q, 2);
        let b = Subspace::zero(&q, 3);
        assert!(matches!(a.sum(&b), Err(Error::AmbientMismatch(_))));
    }
}
