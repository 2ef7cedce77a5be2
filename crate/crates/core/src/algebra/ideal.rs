use std::fmt;

use super::{FinAlg, Vector};
use crate::error::{Error, Result};
use crate::exactmath::{Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        })
    }
}

/// A subspace closed under the declared multiplications by the ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    space: Subspace,
    side: Side,
}

impl Ideal {
    /// Checks closure under multiplication by every basis element on the declared side(s).
    pub fn new(alg: &FinAlg, space: Subspace, side: Side) -> Result<Ideal> {
        if space.ambient() != alg.dim() || space.field() != alg.field() {
            return Err(Error::AmbientMismatch("ideal does not live in this algebra".into()));
        }
        for v in space.vectors() {
            for i in 0..alg.dim() {
                let e = alg.basis_vector(i);
                let left_ok = side == Side::Right || space.contains(&alg.mul(&e, &v));
                let right_ok = side == Side::Left || space.contains(&alg.mul(&v, &e));
                if !(left_ok && right_ok) {
                    return Err(Error::NotAnIdeal(side.to_string()));
                }
            }
        }
        Ok(Ideal { space, side })
    }

    pub fn zero(alg: &FinAlg) -> Ideal {
        Ideal { space: Subspace::zero(alg.field(), alg.dim()), side: Side::TwoSided }
    }

    pub fn whole(alg: &FinAlg) -> Ideal {
        Ideal { space: Subspace::full(alg.field(), alg.dim()), side: Side::TwoSided }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.space.contains(v)
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.space.vectors()
    }
}

/// Smallest ideal containing the generators, by multiplying with basis elements until the
/// dimension stabilizes.
pub fn ideal_closure(alg: &FinAlg, generators: &[Vector], side: Side) -> Result<Ideal> {
    let f = alg.field();
    let n = alg.dim();
    for g in generators {
        if g.len() != n {
            return Err(Error::AmbientMismatch(format!("generator has length {}, expected {n}", g.len())));
        }
    }
    let mut space = Subspace::span(f, n, generators);
    loop {
        let mut vs = space.vectors();
        for v in space.vectors() {
            for i in 0..n {
                let e = alg.basis_vector(i);
                if side != Side::Right {
                    vs.push(alg.mul(&e, &v));
                }
                if side != Side::Left {
                    vs.push(alg.mul(&v, &e));
                }
            }
        }
        let next = Subspace::span(f, n, &vs);
        if next.dim() == space.dim() {
            return Ok(Ideal { space, side });
        }
        space = next;
    }
}

/// `span{ u v : u ∈ U, v ∈ V }`.
pub fn product_space(alg: &FinAlg, u: &Subspace, v: &Subspace) -> Subspace {
    let mut vs = Vec::new();
    for a in u.vectors() {
        for b in v.vectors() {
            vs.push(alg.mul(&a, &b));
        }
    }
    Subspace::span(alg.field(), alg.dim(), &vs)
}
