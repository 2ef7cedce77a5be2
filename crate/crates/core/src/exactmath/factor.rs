//! Factorization of univariate polynomials over `Q` and `F_p`.
//!
//! Over `F_p`: square-free decomposition, distinct-degree splitting and
//! Cantor–Zassenhaus equal-degree splitting. Over `Q`: square-free
//! decomposition, then for each square-free part a factorization modulo a good
//! prime, multifactor Hensel lifting and recombination of lifted factors by
//! subset search.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, FieldKind, Scalar};
use super::poly::{self, Polynomial};
use crate::error::{Error, Result};

/// `unit * prod(f_i^m_i)` with monic irreducible `f_i` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Scalar,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self, field: &Field) -> Polynomial {
        let mut acc = Polynomial::new(field.clone(), vec![self.unit.clone()]);
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m)).unwrap();
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factors with the default seed 0.
pub fn factor(f: &Polynomial) -> Result<Factorization> {
    factor_seeded(f, 0)
}

pub fn factor_seeded(f: &Polynomial, seed: u64) -> Result<Factorization> {
    let field = f.field().clone();
    let unit = match f.leading() {
        Some(lc) => lc.clone(),
        None => return Err(Error::BadSpec("cannot factor the zero polynomial".into())),
    };
    let monic = f.monic();
    let mut factors = match field.kind() {
        FieldKind::Prime(p) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            factor_monic_fp(&monic, *p, &mut rng)
        }
        FieldKind::Rationals => factor_monic_q(&monic, seed)?,
        _ => return Err(Error::UnsupportedField(format!("factorization over {field} is not supported"))),
    };
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { unit, factors })
}

fn factor_monic_fp<R: Rng>(f: &Polynomial, p: u64, rng: &mut R) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    for (g, m) in square_free_fp(f, p) {
        for (h, d) in distinct_degree(&g, p) {
            for irr in equal_degree(&h, d, p, rng) {
                out.push((irr, m));
            }
        }
    }
    out
}

fn is_one(f: &Polynomial) -> bool {
    f.degree() == Some(0)
}

/// Square-free decomposition in characteristic p; returns coprime square-free parts.
fn square_free_fp(f: &Polynomial, p: u64) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative()).unwrap();
    let mut w = f.divrem(&c).unwrap().0;
    let mut i = 1;
    while !is_one(&w) {
        let y = w.gcd(&c).unwrap();
        let z = w.divrem(&y).unwrap().0;
        if !is_one(&z) {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).unwrap().0;
    }
    if !is_one(&c) {
        // c is a polynomial in x^p; a^(1/p) = a in F_p.
        let field = f.field();
        let root: Vec<Scalar> = c.coeffs().iter().step_by(p as usize).cloned().collect();
        let root = Polynomial::new(field.clone(), root);
        for (g, m) in square_free_fp(&root, p) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &Polynomial, p: u64) -> Vec<(Polynomial, usize)> {
    let field = f.field().clone();
    let x = Polynomial::new(field.clone(), vec![field.zero(), field.one()]);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            if deg > 0 {
                out.push((rest.monic(), deg));
            }
            break;
        }
        d += 1;
        h = Polynomial::new(field.clone(), poly::pow_mod(&field, h.coeffs(), p as u128, rest.coeffs()));
        let g = h.sub(&x).unwrap().gcd(&rest).unwrap();
        if !is_one(&g) {
            out.push((g.clone(), d));
            rest = rest.divrem(&g).unwrap().0;
            h = h.divrem(&rest).unwrap().1;
        }
    }
    out
}

fn pow_mod_big(field: &Field, a: &[Scalar], e: &BigUint, m: &[Scalar]) -> Vec<Scalar> {
    let mut acc = poly::divrem(field, &[field.one()], m).1;
    for bit in (0..e.bits()).rev() {
        acc = poly::divrem(field, &poly::mul(field, &acc, &acc), m).1;
        if e.bit(bit) {
            acc = poly::divrem(field, &poly::mul(field, &acc, a), m).1;
        }
    }
    acc
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
fn equal_degree<R: Rng>(f: &Polynomial, d: usize, p: u64, rng: &mut R) -> Vec<Polynomial> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field().clone();
    let q = BigUint::from(p).pow(d as u32);
    let exp = (&q - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: Vec<Scalar> = (0..n).map(|_| field.random(rng)).collect();
        let a = poly::trim(&field, a);
        if a.len() < 2 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)) lands in F_2.
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..d {
                t = poly::divrem(&field, &poly::mul(&field, &t, &t), f.coeffs()).1;
                acc = poly::add(&field, &acc, &t);
            }
            acc
        } else {
            let r = pow_mod_big(&field, &a, &exp, f.coeffs());
            poly::sub(&field, &r, &[field.one()])
        };
        let g = Polynomial::new(field.clone(), b).gcd(f).unwrap();
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.divrem(&g).unwrap().0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

fn square_free_q(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let fp = f.derivative();
    let b = f.gcd(&fp).unwrap();
    let mut c = f.divrem(&b).unwrap().0;
    let mut d = fp.divrem(&b).unwrap().0.sub(&c.derivative()).unwrap();
    let mut i = 1;
    while !is_one(&c) {
        let a = c.gcd(&d).unwrap();
        c = c.divrem(&a).unwrap().0;
        d = d.divrem(&a).unwrap().0.sub(&c.derivative()).unwrap();
        if !is_one(&a) {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

fn factor_monic_q(f: &Polynomial, seed: u64) -> Result<Vec<(Polynomial, usize)>> {
    let q = f.field().clone();
    let mut out = Vec::new();
    for (g, m) in square_free_q(f) {
        let ints = primitive_integer(&g);
        for h in zassenhaus(&ints, seed)? {
            let as_q = Polynomial::new(
                q.clone(),
                h.iter().map(|c| Scalar::Rational(BigRational::from_integer(c.clone()))).collect(),
            );
            out.push((as_q.monic(), m));
        }
    }
    Ok(out)
}

/// Clears denominators and content, normalizing to a positive leading coefficient.
fn primitive_integer(f: &Polynomial) -> Vec<BigInt> {
    let rats: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Rational(r) => r.clone(),
            _ => unreachable!("rational polynomial expected"),
        })
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &lcm).to_integer()).collect();
    primitive_part(&ints)
}

fn primitive_part(a: &[BigInt]) -> Vec<BigInt> {
    let content = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return a.to_vec();
    }
    let sign = if a.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    let content = content * sign;
    a.iter().map(|c| c / &content).collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| super::field::is_prime(n))
}

fn reduce_mod_p(field: &Field, a: &[BigInt]) -> Polynomial {
    Polynomial::new(field.clone(), a.iter().map(|c| field.from_bigint(c)).collect())
}

/// Irreducible factors over `Z` of a primitive square-free polynomial.
fn zassenhaus(g: &[BigInt], seed: u64) -> Result<Vec<Vec<BigInt>>> {
    let n = g.len() - 1;
    if n <= 1 {
        return Ok(vec![g.to_vec()]);
    }
    let lc = g[n].clone();

    // Pick the good prime with the fewest modular factors among the first few candidates.
    let mut best: Option<(u64, Vec<Polynomial>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if tried >= 5 {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Field::prime(p)?;
        let gbar = reduce_mod_p(&fp, g);
        if gbar.gcd(&gbar.derivative())?.degree() != Some(0) {
            continue;
        }
        tried += 1;
        let fac = factor_seeded(&gbar, seed)?;
        let parts: Vec<Polynomial> = fac.factors.into_iter().map(|(h, _)| h).collect();
        if best.as_ref().is_none_or(|(_, b)| parts.len() < b.len()) {
            best = Some((p, parts));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime is always good for a square-free polynomial");
    if modular.len() == 1 {
        return Ok(vec![g.to_vec()]);
    }

    // Coefficient bound for any factor, times the leading coefficient.
    let max_coeff = g.iter().map(|c| c.abs()).max().unwrap();
    let bound = (BigInt::one() << n) * BigInt::from(n + 1) * max_coeff * lc.abs();
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1;
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }

    let lc_inv = mod_inverse(&lc, &modulus);
    let target: Vec<BigInt> = g.iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();
    let lifted = hensel_lift_all(&target, &modular, p, k);

    let mut remaining = lifted;
    let mut current = g.to_vec();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut hit = None;
        for subset in combinations(remaining.len(), s) {
            let clc = current.last().unwrap().clone();
            let mut cand = vec![clc];
            for &i in &subset {
                cand = mul_mod_int(&cand, &remaining[i], &modulus);
            }
            let cand = primitive_part(&symmetric(&cand, &modulus));
            if let Some(quot) = exact_div_int(&current, &cand) {
                hit = Some((subset, cand, quot));
                break;
            }
        }
        match hit {
            Some((subset, cand, quot)) => {
                found.push(cand);
                current = quot;
                remaining =
                    remaining.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, h)| h).collect();
            }
            None => s += 1,
        }
    }
    if current.len() > 1 {
        found.push(primitive_part(&current));
    }
    Ok(found)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn mul_mod_int(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

/// Exact quotient over `Z`, if `b` divides `a`.
fn exact_div_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for i in (0..quot.len()).rev() {
        let (q, r) = rem[i + db].div_rem(&b[db]);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &q * bj;
        }
        quot[i] = q;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}

fn to_ints(f: &Polynomial) -> Vec<BigInt> {
    f.coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Mod(v) => BigInt::from(*v),
            _ => unreachable!(),
        })
        .collect()
}

/// Lifts `target ≡ prod(factors) (mod p)` to a factorization modulo `p^k`; all monic.
fn hensel_lift_all(target: &[BigInt], factors: &[Polynomial], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![target.to_vec()];
    }
    let field = factors[0].field().clone();
    let g = factors[0].clone();
    let h = factors[1..].iter().fold(Polynomial::one(&field), |acc, f| acc.mul(f).unwrap());
    let (lg, lh) = hensel_lift_pair(target, &g, &h, p, k);
    let mut out = vec![lg];
    out.extend(hensel_lift_all(&lh, &factors[1..], p, k));
    out
}

fn hensel_lift_pair(target: &[BigInt], g: &Polynomial, h: &Polynomial, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let field = g.field().clone();
    let (one, _, t) = poly::xgcd(&field, g.coeffs(), h.coeffs());
    debug_assert_eq!(one.len(), 1);
    let inv = field.inv(&one[0]).unwrap();
    let t = Polynomial::new(field.clone(), poly::scale(&field, &t, &inv));

    let pb = BigInt::from(p);
    let full = pb.pow(k);
    let mut big_g = to_ints(g);
    let mut big_h = to_ints(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let prod = mul_mod_int(&big_g, &big_h, &full);
        let n = target.len().max(prod.len());
        let e: Vec<BigInt> = (0..n)
            .map(|i| {
                let a = target.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&next) / &pj
            })
            .collect();
        let e = reduce_mod_p(&field, &e);

        // With s*g + t*h = 1: e*t = q*g + dg and dh = (e - dg*h)/g.
        let dg = e.mul(&t).unwrap().divrem(g).unwrap().1;
        let dh = e.sub(&dg.mul(h).unwrap()).unwrap().divrem(g).unwrap().0;
        big_g = add_scaled(&big_g, &to_ints(&dg), &pj, &full);
        big_h = add_scaled(&big_h, &to_ints(&dh), &pj, &full);
        pj = next;
    }
    (big_g, big_h)
}

fn add_scaled(a: &[BigInt], d: &[BigInt], scale: &BigInt, m: &BigInt) -> Vec<BigInt> {
    let mut out = a.to_vec();
    for (i, c) in d.iter().enumerate() {
        out[i] = (&out[i] + c * scale).mod_floor(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(f: &Factorization) -> Vec<(usize, usize)> {
        f.factors.iter().map(|(g, m)| (g.degree().unwrap(), *m)).collect()
    }

    #[test]
    fn cube_minus_one_over_q() {
        let q = Field::rationals();
        let f = Polynomial::x_pow_minus_one(&q, 3);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors[0].0, Polynomial::from_ints(&q, &[-1, 1]));
        assert_eq!(fac.factors[1].0, Polynomial::from_ints(&q, &[1, 1, 1]));
        assert_eq!(fac.expand(&q), f);
    }

    #[test]
    fn cube_minus_one_over_f3_is_a_cube() {
        let f3 = Field::prime(3).unwrap();
        let fac = factor(&Polynomial::x_pow_minus_one(&f3, 3)).unwrap();
        assert_eq!(fac.factors, vec![(Polynomial::from_ints(&f3, &[-1, 1]), 3)]);
    }

    #[test]
    fn irreducible_quadratic_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let f = Polynomial::from_ints(&f2, &[1, 1, 1]);
        assert!(factor(&f).unwrap().is_irreducible());
    }

    #[test]
    fn cyclotomic_splitting_over_q() {
        let q = Field::rationals();
        // x^12 - 1 = product of Phi_d for d | 12: degrees 1,1,2,2,2,4.
        let fac = factor(&Polynomial::x_pow_minus_one(&q, 12)).unwrap();
        let mut degs: Vec<usize> = fac.factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
        assert_eq!(fac.expand(&q), Polynomial::x_pow_minus_one(&q, 12));
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime.
        let q = Field::rationals();
        let f = Polynomial::from_ints(&q, &[1, 0, -10, 0, 1]);
        assert!(factor(&f).unwrap().is_irreducible());
    }

    #[test]
    fn repeated_and_non_monic_over_q() {
        let q = Field::rationals();
        // 6 (x - 1/2)^2 (x^2 + 2)
        let a = Polynomial::new(q.clone(), vec![q.parse("-1/2").unwrap(), q.one()]);
        let b = Polynomial::from_ints(&q, &[2, 0, 1]);
        let f = a.pow(2).mul(&b).unwrap().scale(&q.from_i64(6));
        let fac = factor(&f).unwrap();
        assert_eq!(fac.unit, q.from_i64(6));
        assert_eq!(degrees(&fac), vec![(1, 2), (2, 1)]);
        assert_eq!(fac.expand(&q), f);
    }

    #[test]
    fn inseparable_power_over_f5() {
        let f5 = Field::prime(5).unwrap();
        // (x^5 - x)^... : x^10 + 1 = (x^2+1)^5 over F_5
        let f = Polynomial::from_ints(&f5, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.expand(&f5), f);
        assert!(fac.factors.iter().all(|(_, m)| *m == 5));
    }

    #[test]
    fn unsupported_fields() {
        let ft = Field::rational_functions(2).unwrap();
        let f = Polynomial::from_ints(&ft, &[1, 1]);
        assert!(matches!(factor(&f), Err(Error::UnsupportedField(_))));
    }
}
