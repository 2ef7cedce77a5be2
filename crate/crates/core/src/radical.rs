//! The Jacobson radical of a finite-dimensional algebra.
//!
//! In characteristic 0, and in characteristic `p > dim A`, the radical is the kernel of
//! the trace form `(x, y) ↦ tr(L_{xy})`. Over a prime field with `p <= dim A` it is cut
//! out by a descending chain `A = I_{-1} ⊇ I_0 ⊇ ... ⊇ I_l`, `l = ⌊log_p dim A⌋`, where
//! `I_i` is the common kernel on `I_{i-1}` of `x ↦ g_i(x y)` for all `y` and
//! `g_i(M) = (tr(M̃^{p^i}) mod p^{i+1}) / p^i` for an integer lift `M̃` of `M`. Finite
//! extension fields are handled by restricting scalars to the prime field.
//!
//! Every result is checked before it is returned: the radical must be a two-sided
//! ideal, nilpotent, with a quotient whose radical is zero.

use std::collections::HashSet;

use crate::algebra::{product_space, quotient, restrict_scalars, FinAlg, Ideal, Side, Vector};
use crate::error::{Error, Result};
use crate::exactmath::{Field, FieldKind, Matrix, Scalar, Subspace};
use crate::wedderburn;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RadicalMethod {
    TraceForm,
    CharPChain,
    BruteForce,
}

impl RadicalMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            RadicalMethod::TraceForm => "trace_form",
            RadicalMethod::CharPChain => "char_p_chain",
            RadicalMethod::BruteForce => "brute_force",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalResult {
    pub radical: Ideal,
    /// `J, J^2, ..., J^m = 0`; just `[0]` when `J = 0`.
    pub filtration: Vec<Ideal>,
    /// Least `m` with `J^m = 0`, or 0 when `J = 0`.
    pub nilpotency_index: usize,
    pub method: RadicalMethod,
}

/// Computes and verifies the Jacobson radical.
pub fn radical(alg: &FinAlg) -> Result<RadicalResult> {
    let (space, method) = radical_space(alg)?;
    let fail = |msg: &str| Error::InternalVerificationFailed(format!("radical: {msg}"));
    let radical = Ideal::new(alg, space, Side::TwoSided).map_err(|_| fail("not a two-sided ideal"))?;
    let filtration = power_filtration(alg, &radical);
    let nilpotency_index = match filtration.last() {
        Some(last) if last.is_zero() => {
            if radical.is_zero() {
                0
            } else {
                filtration.len()
            }
        }
        _ => return Err(fail("not nilpotent")),
    };
    if !radical.is_zero() {
        let q = quotient(alg, &radical).map_err(|_| fail("radical is the whole algebra"))?;
        let (qrad, _) = radical_space(&q.algebra)?;
        if !qrad.is_zero() {
            return Err(fail("quotient by the radical is not semisimple"));
        }
    }
    Ok(RadicalResult { radical, filtration, nilpotency_index, method })
}

/// `J, J^2, ...` up to and including the first zero power (at most `dim + 1` terms).
pub fn power_filtration(alg: &FinAlg, ideal: &Ideal) -> Vec<Ideal> {
    let mut out = vec![ideal.clone()];
    let mut current = ideal.space().clone();
    while !current.is_zero() && out.len() <= alg.dim() {
        current = product_space(alg, &current, ideal.space());
        out.push(Ideal::new(alg, current.clone(), Side::TwoSided).expect("power of an ideal"));
    }
    out
}

/// The unverified radical as a subspace, with the method used.
fn radical_space(alg: &FinAlg) -> Result<(Subspace, RadicalMethod)> {
    let f = alg.field();
    let n = alg.dim();
    if n == 1 {
        return Ok((Subspace::zero(f, n), RadicalMethod::TraceForm));
    }
    let p = f.characteristic();
    match f.kind() {
        FieldKind::RationalFunctions(_) => Err(unsupported(f)),
        FieldKind::Extension { base, .. } if matches!(base.kind(), FieldKind::RationalFunctions(_)) => {
            Err(unsupported(f))
        }
        _ if p == 0 || p as usize > n => Ok((trace_form_kernel(alg), RadicalMethod::TraceForm)),
        FieldKind::Prime(p) => Ok((char_p_chain(alg, *p), RadicalMethod::CharPChain)),
        FieldKind::Extension { .. } => {
            // The radical is stable under scalars, so the prime-field radical of the
            // restricted algebra, read back in extension coordinates, spans it.
            let restricted = restrict_scalars(alg)?;
            let (j, method) = radical_space(&restricted)?;
            let d = f.ext_degree();
            let vs: Vec<Vector> = j
                .vectors()
                .iter()
                .map(|v| (0..n).map(|i| Scalar::Ext(v[i * d..(i + 1) * d].to_vec())).collect())
                .collect();
            Ok((Subspace::span(f, n, &vs), method))
        }
        _ => Err(unsupported(f)),
    }
}

fn unsupported(f: &Field) -> Error {
    Error::UnsupportedField(format!("radical over {f} (imperfect base field)"))
}

/// `{x : tr(L_{x e_j}) = 0 for all j}`.
fn trace_form_kernel(alg: &FinAlg) -> Subspace {
    let f = alg.field();
    let n = alg.dim();
    let mut gram = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            let prod = alg.mul(&alg.basis_vector(i), &alg.basis_vector(j));
            gram.set(j, i, alg.trace(&prod));
        }
    }
    Subspace::span(f, n, &gram.nullspace().row_vectors())
}

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Mod(v) => *v,
        _ => unreachable!("prime field element expected"),
    }
}

/// `(tr(M̃^{p^i}) mod p^{i+1}) / p^i` for the lift of `m` with entries in `[0, p)`.
fn lifted_trace_functional(m: &Matrix, p: u64, i: u32) -> u64 {
    let modulus = (p as u128).pow(i + 1);
    let n = m.rows();
    let lift: Vec<u128> = (0..n * n).map(|k| residue(m.get(k / n, k % n)) as u128).collect();
    let mat_mul = |a: &[u128], b: &[u128]| -> Vec<u128> {
        let mut out = vec![0u128; n * n];
        for r in 0..n {
            for k in 0..n {
                let x = a[r * n + k];
                if x == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] = (out[r * n + c] + x * b[k * n + c]) % modulus;
                }
            }
        }
        out
    };
    let mut power = lift;
    for _ in 0..i {
        // M^{p^(k+1)} = (M^{p^k})^p
        let base = power.clone();
        let mut acc = base.clone();
        for _ in 1..p {
            acc = mat_mul(&acc, &base);
        }
        power = acc;
    }
    let trace = (0..n).fold(0u128, |t, k| (t + power[k * n + k]) % modulus);
    let scale = (p as u128).pow(i);
    debug_assert_eq!(trace % scale, 0, "trace not divisible on the previous chain term");
    ((trace / scale) % p as u128) as u64
}

fn char_p_chain(alg: &FinAlg, p: u64) -> Subspace {
    let f = alg.field();
    let n = alg.dim();
    let mut levels = 0u32;
    while (p as u128).pow(levels + 1) <= n as u128 {
        levels += 1;
    }
    let mut current = Subspace::full(f, n);
    for i in 0..=levels {
        if current.is_zero() {
            break;
        }
        let basis = current.vectors();
        let mut sys = Matrix::zeros(f, n, basis.len());
        for j in 0..n {
            let y = alg.basis_vector(j);
            for (s, b) in basis.iter().enumerate() {
                let l = alg.left_mult_matrix(&alg.mul(b, &y));
                sys.set(j, s, Scalar::Mod(lifted_trace_functional(&l, p, i)));
            }
        }
        let null = sys.nullspace();
        let vs: Vec<Vector> = null.row_vectors().iter().map(|c| current.combine(c)).collect();
        current = Subspace::span(f, n, &vs);
    }
    current
}

/// Maximum number of algebra elements the brute-force oracle will enumerate.
pub const ORACLE_LIMIT: u128 = 1 << 16;

/// `{x : 1 - yx is invertible for every y ∈ A}` by exhaustive enumeration, using
/// word-size arithmetic independent of the elimination routines.
pub fn radical_oracle(alg: &FinAlg) -> Result<Ideal> {
    let f = alg.field();
    let p = match f.kind() {
        FieldKind::Prime(p) => *p,
        _ => return Err(Error::UnsupportedField(format!("enumeration over {f}"))),
    };
    let n = alg.dim();
    let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > ORACLE_LIMIT {
        return Err(Error::TooLarge(format!("{p}^{n} elements exceeds {ORACLE_LIMIT}")));
    }
    let size = size as usize;
    let table = SmallTable::new(alg, p);
    let singular: Vec<bool> = (0..size).map(|z| !table.is_invertible(&table.decode(z))).collect();
    let one = table.unit.clone();
    let mut members = Vec::new();
    for code in 0..size {
        let x = table.decode(code);
        let ok = (0..size).all(|yc| {
            let yx = table.mul(&table.decode(yc), &x);
            let w: Vec<u64> = one.iter().zip(&yx).map(|(a, b)| (a + p - b) % p).collect();
            !singular[table.encode(&w)]
        });
        if ok {
            members.push(code);
        }
    }
    let member_set: HashSet<usize> = members.iter().copied().collect();
    // The set must be closed under addition (scalar multiples are repeated sums over F_p).
    for &a in &members {
        for &b in &members {
            let va = table.decode(a);
            let vb = table.decode(b);
            let s: Vec<u64> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
            if !member_set.contains(&table.encode(&s)) {
                return Err(Error::InternalVerificationFailed("oracle set is not a subspace".into()));
            }
        }
    }
    let vectors: Vec<Vector> =
        members.iter().map(|&c| table.decode(c).into_iter().map(Scalar::Mod).collect()).collect();
    let space = Subspace::span(f, n, &vectors);
    if (p as u128).pow(space.dim() as u32) != members.len() as u128 {
        return Err(Error::InternalVerificationFailed("oracle set has the wrong size".into()));
    }
    Ideal::new(alg, space, Side::TwoSided)
        .map_err(|_| Error::InternalVerificationFailed("oracle set is not an ideal".into()))
}

/// Structure constants as residues, for fast enumeration.
struct SmallTable {
    p: u64,
    n: usize,
    consts: Vec<Vec<(usize, u64)>>,
    unit: Vec<u64>,
}

impl SmallTable {
    fn new(alg: &FinAlg, p: u64) -> SmallTable {
        let n = alg.dim();
        let consts = (0..n * n)
            .map(|ij| alg.basis_product(ij / n, ij % n).iter().map(|(k, c)| (*k, residue(c))).collect())
            .collect();
        SmallTable { p, n, consts, unit: alg.unit().iter().map(residue).collect() }
    }

    fn decode(&self, mut code: usize) -> Vec<u64> {
        let mut v = vec![0; self.n];
        for x in v.iter_mut() {
            *x = (code as u64) % self.p;
            code /= self.p as usize;
        }
        v
    }

    fn encode(&self, v: &[u64]) -> usize {
        v.iter().rev().fold(0usize, |acc, &x| acc * self.p as usize + x as usize)
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = x * y % p;
                for &(k, c) in &self.consts[i * self.n + j] {
                    out[k] = (out[k] + xy * c) % p;
                }
            }
        }
        out
    }

    /// Whether left multiplication by `a` is bijective, by elimination mod p.
    fn is_invertible(&self, a: &[u64]) -> bool {
        let n = self.n;
        let p = self.p;
        let mut m: Vec<Vec<u64>> = (0..n)
            .map(|j| {
                let mut e = vec![0u64; n];
                e[j] = 1;
                self.mul(a, &e)
            })
            .collect();
        // Rows of m are the images a*e_j; full rank iff invertible.
        let mut rank = 0;
        for c in 0..n {
            let Some(r) = (rank..n).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, r);
            let inv = crate::exactmath::fp_poly::inv_mod(m[rank][c], p);
            for r2 in 0..n {
                if r2 != rank && m[r2][c] != 0 {
                    let factor = m[r2][c] * inv % p;
                    for k in 0..n {
                        m[r2][k] = (m[r2][k] + p * p - factor * m[rank][k] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank == n
    }
}

pub fn is_semisimple(alg: &FinAlg) -> Result<bool> {
    Ok(radical(alg)?.radical.is_zero())
}

/// Intersection of the maximal two-sided ideals, computed as the intersection of the
/// preimages of the block complements of `A/J`; checked to coincide with `J`.
pub fn maximal_twosided_intersection(alg: &FinAlg) -> Result<Ideal> {
    let rad = radical(alg)?;
    let j = rad.radical.space().clone();
    let q = quotient(alg, &rad.radical)?;
    let blocks = wedderburn::central_idempotents(&q.algebra)?;
    let qa = &q.algebra;
    let mut acc = Subspace::full(alg.field(), alg.dim());
    for e in &blocks.idempotents {
        // Q(1 - e) is the maximal ideal killing the block Qe.
        let comp = qa.sub(qa.unit(), e);
        let m: Vec<Vector> = (0..qa.dim()).map(|i| qa.mul(&qa.basis_vector(i), &comp)).collect();
        let lifted: Vec<Vector> = m.iter().map(|v| q.lift(v)).collect();
        let preimage = Subspace::span(alg.field(), alg.dim(), &lifted).sum(&j)?;
        acc = acc.intersection(&preimage)?;
    }
    if acc != j {
        return Err(Error::InternalVerificationFailed(
            "intersection of maximal ideals differs from the radical".into(),
        ));
    }
    Ideal::new(alg, acc, Side::TwoSided)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_product, group_algebra, matrix_algebra, truncated_polynomial, upper_triangular};

    #[test]
    fn radical_of_f2_c2() {
        let f2 = Field::prime(2).unwrap();
        let a = group_algebra(2, &f2).unwrap();
        let r = radical(&a).unwrap();
        assert_eq!(r.radical.vectors(), vec![vec![f2.one(), f2.one()]]);
        assert_eq!(r.nilpotency_index, 2);
        assert_eq!(r.method, RadicalMethod::CharPChain);
        assert_eq!(radical_oracle(&a).unwrap(), r.radical);
    }

    #[test]
    fn matrix_algebra_is_semisimple() {
        let f3 = Field::prime(3).unwrap();
        let r = radical(&matrix_algebra(2, &f3).unwrap()).unwrap();
        assert!(r.radical.is_zero());
        assert_eq!(r.nilpotency_index, 0);
        assert_eq!(r.filtration.len(), 1);
    }

    #[test]
    fn radical_of_t2() {
        let q = Field::rationals();
        let t = upper_triangular(2, &q).unwrap();
        let r = radical(&t).unwrap();
        assert_eq!(r.radical.vectors(), vec![t.basis_vector(1)]);
        assert_eq!(r.nilpotency_index, 2);
        assert_eq!(r.method, RadicalMethod::TraceForm);
    }

    #[test]
    fn oracle_on_small_examples() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let k = group_algebra(1, &f2).unwrap();
        assert!(radical_oracle(&direct_product(&[k.clone(), k]).unwrap()).unwrap().is_zero());
        let a = truncated_polynomial(2, &f3).unwrap();
        assert_eq!(radical_oracle(&a).unwrap().vectors(), vec![a.basis_vector(1)]);
    }

    #[test]
    fn oracle_refuses_large_enumerations() {
        let f5 = Field::prime(5).unwrap();
        let a = matrix_algebra(3, &f5).unwrap();
        assert!(matches!(radical_oracle(&a), Err(Error::TooLarge(_))));
    }

    #[test]
    fn maschke_examples() {
        let q = Field::rationals();
        let f3 = Field::prime(3).unwrap();
        assert!(is_semisimple(&group_algebra(3, &q).unwrap()).unwrap());
        assert!(!is_semisimple(&group_algebra(3, &f3).unwrap()).unwrap());
    }

    #[test]
    fn chain_needs_higher_functionals() {
        // F_2[C_4] = F_2[x]/(x^4): radical codim 1, index 4.
        let f2 = Field::prime(2).unwrap();
        let r = radical(&group_algebra(4, &f2).unwrap()).unwrap();
        assert_eq!(r.radical.dim(), 3);
        assert_eq!(r.nilpotency_index, 4);
        // F_2 x F_2 x F_2 x F_2 has zero radical even though p <= dim.
        let k = group_algebra(1, &f2).unwrap();
        let p = direct_product(&[k.clone(), k.clone(), k.clone(), k]).unwrap();
        assert!(radical(&p).unwrap().radical.is_zero());
    }

    #[test]
    fn function_field_is_unsupported() {
        let ft = Field::rational_functions(2).unwrap();
        let a = group_algebra(2, &ft).unwrap();
        assert!(matches!(radical(&a), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn extension_of_finite_field() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::extension(&f3, &[f3.one(), f3.zero(), f3.one()]).unwrap();
        let a = crate::algebra::base_change(&group_algebra(3, &f3).unwrap(), &f9).unwrap();
        let r = radical(&a).unwrap();
        assert_eq!(r.radical.dim(), 2);
        assert_eq!(r.nilpotency_index, 3);
    }

    #[test]
    fn maximal_ideals_of_t2() {
        let q = Field::rationals();
        let t = upper_triangular(2, &q).unwrap();
        assert_eq!(maximal_twosided_intersection(&t).unwrap().vectors(), vec![t.basis_vector(1)]);
        let f2 = Field::prime(2).unwrap();
        let a = group_algebra(2, &f2).unwrap();
        assert_eq!(maximal_twosided_intersection(&a).unwrap().dim(), 1);
        let m = matrix_algebra(2, &q).unwrap();
        assert!(maximal_twosided_intersection(&m).unwrap().is_zero());
    }
}
