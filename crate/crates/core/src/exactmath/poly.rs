//! Univariate polynomials over any supported [`Field`].
//!
//! The free functions operate on raw coefficient slices (low-to-high) and are
//! shared with the extension-field arithmetic; [`Polynomial`] wraps them with
//! its field for everything else.

use std::fmt;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

pub fn trim(f: &Field, mut a: Vec<Scalar>) -> Vec<Scalar> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn add(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n).map(|i| f.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero))).collect();
    trim(f, out)
}

pub fn sub(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n).map(|i| f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero))).collect();
    trim(f, out)
}

pub fn mul(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn scale(f: &Field, a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

/// Quotient and remainder by a nonzero divisor.
pub fn divrem(f: &Field, a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let b = trim(f, b.to_vec());
    let db = b.len().checked_sub(1).expect("division by zero polynomial");
    let lead_inv = f.inv(&b[db]).unwrap();
    let mut rem = trim(f, a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![f.zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = f.mul(&rem[i + db], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] = f.sub(&rem[i + j], &f.mul(&c, bj));
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (trim(f, quot), trim(f, rem))
}

pub fn monic(f: &Field, a: &[Scalar]) -> Vec<Scalar> {
    let a = trim(f, a.to_vec());
    match a.last() {
        None => a,
        Some(lc) => {
            let inv = f.inv(lc).unwrap();
            scale(f, &a, &inv)
        }
    }
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`; `g` is not normalized.
pub fn xgcd(f: &Field, a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
    let (mut r0, mut r1) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

pub fn gcd(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let (g, _, _) = xgcd(f, a, b);
    monic(f, &g)
}

pub fn derivative(f: &Field, a: &[Scalar]) -> Vec<Scalar> {
    let out = a.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_i64(i as i64))).collect();
    trim(f, out)
}

/// `a^e mod m`.
pub fn pow_mod(f: &Field, a: &[Scalar], mut e: u128, m: &[Scalar]) -> Vec<Scalar> {
    let mut base = divrem(f, a, m).1;
    let mut acc = divrem(f, &[f.one()], m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem(f, &mul(f, &acc, &base), m).1;
        }
        e >>= 1;
        if e > 0 {
            base = divrem(f, &mul(f, &base, &base), m).1;
        }
    }
    acc
}

/// A univariate polynomial with dense low-to-high coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Polynomial {
        let coeffs = trim(&field, coeffs);
        Polynomial { field, coeffs }
    }

    /// Builds from integer coefficients, low-to-high.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Polynomial {
        let c = coeffs.iter().map(|&n| field.from_i64(n)).collect();
        Polynomial::new(field.clone(), c)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(field: &Field, n: usize) -> Polynomial {
        let mut c = vec![field.zero(); n + 1];
        c[0] = field.from_i64(-1);
        c[n] = field.add(&c[n], &field.one());
        Polynomial::new(field.clone(), c)
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial::new(field.clone(), Vec::new())
    }

    pub fn one(field: &Field) -> Polynomial {
        Polynomial::new(field.clone(), vec![field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    fn same_field(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        Ok(self.wrap(add(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        Ok(self.wrap(sub(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        Ok(self.wrap(mul(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn divrem(&self, other: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same_field(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = divrem(&self.field, &self.coeffs, &other.coeffs);
        Ok((self.wrap(q), self.wrap(r)))
    }

    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        Ok(self.wrap(gcd(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn monic(&self) -> Polynomial {
        self.wrap(monic(&self.field, &self.coeffs))
    }

    pub fn derivative(&self) -> Polynomial {
        self.wrap(derivative(&self.field, &self.coeffs))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        self.wrap(scale(&self.field, &self.coeffs, c))
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    fn wrap(&self, coeffs: Vec<Scalar>) -> Polynomial {
        Polynomial { field: self.field.clone(), coeffs }
    }

    /// Ordering used for deterministic factor lists: degree, then coefficients low-to-high.
    pub fn canonical_cmp(&self, other: &Polynomial) -> std::cmp::Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                let o = self.field.cmp(a, b);
                if o.is_ne() {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mono = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            let coef = f.format(c);
            parts.push(if e == 0 {
                coef
            } else if f.is_one(c) {
                mono
            } else if coef.contains(['+', '/', '-', '[']) {
                format!("({coef})*{mono}")
            } else {
                format!("{coef}*{mono}")
            });
        }
        write!(out, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_bezout_identity() {
        let q = Field::rationals();
        let a = Polynomial::from_ints(&q, &[-1, 0, 0, 1]);
        let b = Polynomial::from_ints(&q, &[-1, 0, 1]);
        let (g, s, t) = xgcd(&q, a.coeffs(), b.coeffs());
        let lhs = add(&q, &mul(&q, &s, a.coeffs()), &mul(&q, &t, b.coeffs()));
        assert_eq!(lhs, g);
        assert_eq!(monic(&q, &g), vec![q.from_i64(-1), q.one()]);
    }

    #[test]
    fn x_pow_minus_one_char_two() {
        let f2 = Field::prime(2).unwrap();
        let p = Polynomial::x_pow_minus_one(&f2, 2);
        assert_eq!(p, Polynomial::from_ints(&f2, &[1, 0, 1]));
        assert_eq!(p.to_string(), "x^2 + 1");
    }

    #[test]
    fn pow_mod_matches_repeated_multiplication() {
        let f5 = Field::prime(5).unwrap();
        let m = Polynomial::from_ints(&f5, &[2, 0, 1, 1]);
        let a = Polynomial::from_ints(&f5, &[1, 1]);
        let direct = a.pow(13).divrem(&m).unwrap().1;
        assert_eq!(pow_mod(&f5, a.coeffs(), 13, m.coeffs()), direct.coeffs());
    }
}
