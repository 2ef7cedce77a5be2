//! Subalgebra splittings of `A → A/J` and the conjugators between them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{quotient, AlgHom, FinAlg, Ideal, Quotient, Vector};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar, Subspace};
use crate::radical::radical;
use crate::separability::{inner_derivation, sep_idempotent, Bimodule};

/// An algebra section of `π: A → A/J(A)` and its image `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub algebra: FinAlg,
    pub radical: Ideal,
    pub quotient: Quotient,
    pub section: AlgHom,
    pub image_basis: Subspace,
}

impl Splitting {
    /// Validates a section given by the images of the quotient basis.
    pub fn new(alg: &FinAlg, images: &[Vector]) -> Result<Splitting> {
        let (rad, q) = radical_quotient(alg)?;
        Splitting::from_parts(alg, rad, q, images)
    }

    fn from_parts(alg: &FinAlg, rad: Ideal, q: Quotient, images: &[Vector]) -> Result<Splitting> {
        let section = AlgHom::from_images(&q.algebra, alg, images)
            .map_err(|e| Error::BadSplitting(format!("section is not a homomorphism: {e}")))?;
        let back = section.then(&q.projection)?;
        if back != AlgHom::identity(&q.algebra) {
            return Err(Error::BadSplitting("π ∘ s is not the identity".into()));
        }
        let image_basis = Subspace::span(alg.field(), alg.dim(), images);
        let total = image_basis.sum(rad.space())?;
        if image_basis.dim() + rad.dim() != alg.dim() || !total.is_full() {
            return Err(Error::BadSplitting("S ⊕ J is not all of A".into()));
        }
        Ok(Splitting { algebra: alg.clone(), radical: rad, quotient: q, section, image_basis })
    }

    /// `s(q_t)` for each quotient basis element.
    pub fn images(&self) -> Vec<Vector> {
        self.section.matrix().columns()
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        self.section.apply(x)
    }
}

/// `J(A)` and the canonical quotient `A/J(A)`.
fn radical_quotient(alg: &FinAlg) -> Result<(Ideal, Quotient)> {
    let rad = radical(alg)?.radical;
    let q = quotient(alg, &rad)?;
    Ok((rad, q))
}

/// Lifts an idempotent of `A/J` to an idempotent of `A` by `e ← 3e² − 2e³`.
pub fn lift_idempotent(alg: &FinAlg, f: &[Scalar]) -> Result<Vector> {
    let rad = radical(alg)?;
    let j = rad.radical;
    if !j.contains(&alg.sub(&alg.mul(f, f), f)) {
        return Err(Error::NotIdempotentModJ);
    }
    let field = alg.field();
    let (three, two) = (field.from_i64(3), field.from_i64(2));
    let mut e = f.to_vec();
    // Each step squares the defect e² − e, so this many steps always suffice.
    let steps = usize::BITS - rad.nilpotency_index.leading_zeros() + 1;
    for _ in 0..steps {
        let e2 = alg.mul(&e, &e);
        if e2 == e {
            break;
        }
        let e3 = alg.mul(&e2, &e);
        e = alg.sub(&alg.scale(&three, &e2), &alg.scale(&two, &e3));
    }
    if alg.mul(&e, &e) != e || !j.contains(&alg.sub(&e, f)) {
        return Err(Error::InternalVerificationFailed("idempotent lifting did not converge".into()));
    }
    Ok(e)
}

pub fn wedderburn_splitting(alg: &FinAlg) -> Result<Splitting> {
    wedderburn_splitting_seeded(alg, 0)
}

/// As [`wedderburn_splitting`]; a nonzero seed perturbs the initial linear lift by random
/// radical elements, which generally produces a different (conjugate) splitting.
pub fn wedderburn_splitting_seeded(alg: &FinAlg, seed: u64) -> Result<Splitting> {
    let rad = radical(alg)?;
    let q = quotient(alg, &rad.radical)?;
    let qa = q.algebra.clone();
    let f = alg.field();
    if !rad.radical.is_zero() && sep_idempotent(&qa)?.is_none() {
        return Err(Error::NotSeparableQuotient);
    }
    let r = qa.dim();
    let mut sigma: Vec<Vector> = (0..r).map(|t| q.lift(&qa.basis_vector(t))).collect();
    if seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let jv = rad.radical.vectors();
        for s in sigma.iter_mut() {
            for v in &jv {
                let c = f.from_i64(rng.gen_range(-2..=2));
                *s = alg.add(s, &alg.scale(&c, v));
            }
        }
    }
    // sigma is multiplicative modulo J^k; push it to J^(k+1).
    for k in 1..rad.filtration.len() {
        let jk = rad.filtration[k - 1].space();
        let next = rad.filtration[k].space();
        let comp_vs: Vec<Vector> = jk.vectors().iter().map(|v| next.reduce(v)).collect();
        let comp = Subspace::span(f, alg.dim(), &comp_vs).vectors();
        if comp.is_empty() {
            continue;
        }
        let eval = |s: &[Vector], x: &[Scalar]| -> Vector {
            s.iter().zip(x).fold(alg.zero(), |acc, (v, c)| alg.add(&acc, &alg.scale(c, v)))
        };
        let w = comp.len();
        let n = alg.dim();
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(r * r * n);
        let mut rhs: Vec<Scalar> = Vec::with_capacity(r * r * n);
        for a in 0..r {
            for b in 0..r {
                let ab = qa.mul(&qa.basis_vector(a), &qa.basis_vector(b));
                let defect = alg.sub(&eval(&sigma, &ab), &alg.mul(&sigma[a], &sigma[b]));
                let mut cols: Vec<Vector> = vec![alg.zero(); r * w];
                for (s, v) in comp.iter().enumerate() {
                    for t in 0..r {
                        let mut col = alg.scale(&f.neg(&ab[t]), v);
                        if t == b {
                            col = alg.add(&col, &alg.mul(&sigma[a], v));
                        }
                        if t == a {
                            col = alg.add(&col, &alg.mul(v, &sigma[b]));
                        }
                        cols[t * w + s] = next.reduce(&col);
                    }
                }
                let block = Matrix::from_columns(f, n, &cols);
                rows.extend(block.row_vectors());
                rhs.extend(next.reduce(&defect));
            }
        }
        let system = Matrix::from_rows(f, r * w, rows);
        let x = system.solve_vec(&rhs)?.ok_or(Error::CoboundaryUnsolvable(k))?;
        let h: Vec<Vector> = (0..r)
            .map(|t| {
                comp.iter().enumerate().fold(alg.zero(), |acc, (s, v)| alg.add(&acc, &alg.scale(&x[t * w + s], v)))
            })
            .collect();
        let plus: Vec<Vector> = sigma.iter().zip(&h).map(|(s, d)| alg.add(s, d)).collect();
        let minus: Vec<Vector> = sigma.iter().zip(&h).map(|(s, d)| alg.sub(s, d)).collect();
        sigma = if multiplicative_mod(alg, &qa, &plus, next) {
            plus
        } else if multiplicative_mod(alg, &qa, &minus, next) {
            minus
        } else {
            return Err(Error::CoboundaryUnsolvable(k));
        };
    }
    Splitting::from_parts(alg, rad.radical, q, &sigma)
}

fn multiplicative_mod(alg: &FinAlg, qa: &FinAlg, sigma: &[Vector], modulus: &Subspace) -> bool {
    let r = qa.dim();
    let eval = |x: &[Scalar]| -> Vector {
        sigma.iter().zip(x).fold(alg.zero(), |acc, (v, c)| alg.add(&acc, &alg.scale(c, v)))
    };
    (0..r).all(|a| {
        (0..r).all(|b| {
            let ab = qa.mul(&qa.basis_vector(a), &qa.basis_vector(b));
            modulus.contains(&alg.sub(&eval(&ab), &alg.mul(&sigma[a], &sigma[b])))
        })
    })
}

/// Whether `s((I + J)/J) ⊆ I`.
pub fn check_ideal_lemma(s: &Splitting, ideal: &Ideal) -> Result<bool> {
    let sum = ideal.space().sum(s.radical.space())?;
    let proj = &s.quotient.projection;
    Ok(sum.vectors().iter().all(|v| ideal.contains(&s.apply(&proj.apply(v)))))
}

/// Finds `ω ∈ J` with `s1(x)(1 − ω) = (1 − ω) s2(x)` for all `x`, so that
/// `S1 = (1 − ω) S2 (1 − ω)^{-1}`.
pub fn malcev_conjugator(s1: &Splitting, s2: &Splitting) -> Result<Vector> {
    if s1.algebra != s2.algebra || s1.quotient != s2.quotient {
        return Err(Error::BadSplitting("splittings of different algebras".into()));
    }
    let alg = &s1.algebra;
    let qa = &s1.quotient.algebra;
    let f = alg.field();
    let j = s1.radical.space();
    let jv = j.vectors();
    let dim_j = jv.len();
    if dim_j == 0 {
        return Ok(alg.zero());
    }
    let restrict = |act: &dyn Fn(&Vector) -> Vector| -> Matrix {
        let cols: Vec<Vector> = jv.iter().map(|v| j.coordinates(&act(v)).expect("J is an ideal")).collect();
        Matrix::from_columns(f, dim_j, &cols)
    };
    let im1 = s1.images();
    let im2 = s2.images();
    let left = im1.iter().map(|a| restrict(&|v| alg.mul(a, v))).collect();
    let right = im2.iter().map(|a| restrict(&|v| alg.mul(v, a))).collect();
    let bimod = Bimodule::new(qa, dim_j, left, right)?;
    let d_cols: Vec<Vector> =
        im1.iter().zip(&im2).map(|(a, b)| j.coordinates(&alg.sub(a, b)).expect("sections agree modulo J")).collect();
    let d = Matrix::from_columns(f, dim_j, &d_cols);
    let omega = j.combine(&inner_derivation(&bimod, &d)?);
    let conj = alg.sub(alg.unit(), &omega);
    let inv = alg.inverse(&conj).ok_or_else(|| Error::InternalVerificationFailed("1 − ω is not invertible".into()))?;
    for (a, b) in im1.iter().zip(&im2) {
        if *a != alg.mul(&alg.mul(&conj, b), &inv) {
            return Err(Error::InternalVerificationFailed("conjugation does not carry S2 to S1".into()));
        }
    }
    Ok(omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, ideal_closure, matrix_algebra, truncated_polynomial, upper_triangular, Side};
    use crate::exactmath::Field;

    #[test]
    fn lifting_examples() {
        let q = Field::rationals();
        let a = truncated_polynomial(2, &q).unwrap();
        let f = a.add(a.unit(), &a.basis_vector(1));
        assert_eq!(lift_idempotent(&a, &f).unwrap(), a.unit().clone());
        let t = upper_triangular(2, &q).unwrap();
        let f = t.add(&t.basis_vector(0), &t.basis_vector(1));
        assert_eq!(lift_idempotent(&t, &f).unwrap(), f);
        assert_eq!(lift_idempotent(&t, &t.basis_vector(1)).unwrap(), t.zero());
        let two_x = a.scale(&q.from_i64(2), a.unit());
        assert_eq!(lift_idempotent(&a, &two_x), Err(Error::NotIdempotentModJ));
    }

    #[test]
    fn semisimple_section_is_bijective() {
        let f3 = Field::prime(3).unwrap();
        let s = wedderburn_splitting(&matrix_algebra(2, &f3).unwrap()).unwrap();
        assert!(s.section.is_isomorphism());
        assert!(s.image_basis.is_full());
    }

    #[test]
    fn t2_splits_along_the_diagonal() {
        let q = Field::rationals();
        let t = upper_triangular(2, &q).unwrap();
        let s = wedderburn_splitting(&t).unwrap();
        assert_eq!(s.image_basis.vectors(), vec![t.basis_vector(0), t.basis_vector(2)]);
        let i = ideal_closure(&t, &[t.basis_vector(0)], Side::TwoSided).unwrap();
        assert_eq!(i.dim(), 2);
        assert!(check_ideal_lemma(&s, &i).unwrap());
        assert!(check_ideal_lemma(&s, &s.radical).unwrap());
        assert!(check_ideal_lemma(&s, &Ideal::whole(&t)).unwrap());
    }

    #[test]
    fn dual_numbers_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let a = group_algebra(2, &f2).unwrap();
        let s = wedderburn_splitting(&a).unwrap();
        assert_eq!(s.image_basis.vectors(), vec![a.unit().clone()]);
    }

    #[test]
    fn deep_filtrations() {
        let q = Field::rationals();
        let f2 = Field::prime(2).unwrap();
        for a in [truncated_polynomial(5, &q).unwrap(), group_algebra(4, &f2).unwrap()] {
            let s0 = wedderburn_splitting(&a).unwrap();
            let s1 = wedderburn_splitting_seeded(&a, 3).unwrap();
            let w = malcev_conjugator(&s0, &s1).unwrap();
            assert!(s0.radical.contains(&w));
        }
    }

    #[test]
    fn conjugating_t2_sections() {
        let q = Field::rationals();
        let t = upper_triangular(2, &q).unwrap();
        let diag = Splitting::new(&t, &[t.basis_vector(0), t.basis_vector(2)]).unwrap();
        let e11_e12 = t.add(&t.basis_vector(0), &t.basis_vector(1));
        let e22_e12 = t.sub(&t.basis_vector(2), &t.basis_vector(1));
        let other = Splitting::new(&t, &[e11_e12, e22_e12]).unwrap();
        let w = malcev_conjugator(&other, &diag).unwrap();
        assert!(other.radical.contains(&w));
        assert!(!t.is_zero(&w));
        assert_eq!(malcev_conjugator(&diag, &diag).unwrap(), t.zero());
        // A non-multiplicative section is rejected.
        let bad = Splitting::new(&t, &[t.add(&t.basis_vector(0), &t.basis_vector(1)), t.basis_vector(2)]);
        assert!(matches!(bad, Err(Error::BadSplitting(_))));
    }

    #[test]
    fn seeded_splittings_differ_but_conjugate() {
        let q = Field::rationals();
        let t = upper_triangular(3, &q).unwrap();
        let s0 = wedderburn_splitting(&t).unwrap();
        let s1 = wedderburn_splitting_seeded(&t, 11).unwrap();
        assert_ne!(s0.image_basis, s1.image_basis);
        let w = malcev_conjugator(&s1, &s0).unwrap();
        assert!(s0.radical.contains(&w));
    }
}
