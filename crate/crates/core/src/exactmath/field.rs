//! Exact base fields and their elements.
//!
//! A [`Field`] is a cheap-to-clone descriptor; a [`Scalar`] is a bare value in
//! canonical form whose meaning is given by the field it is used with. All
//! arithmetic goes through the field so canonicalization happens in one place.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::fp_poly::{self, FpPoly};
use super::poly;
use crate::error::{Error, Result};

/// Reduced fraction `num/den` of polynomials over `F_p` with monic `den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    pub num: FpPoly,
    pub den: FpPoly,
}

/// A field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Mod(u64),
    RatFunc(RatFunc),
    /// Coefficients over the base field, always exactly `deg(minpoly)` long.
    Ext(Vec<Scalar>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    RationalFunctions(u64),
    Extension {
        base: Field,
        /// Monic, low-to-high.
        minpoly: Vec<Scalar>,
        /// Whether irreducibility of `minpoly` was checked by factorization.
        verified: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldKind>);

/// Deterministic primality test by trial division; intended for word-size moduli.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    pub fn rational_functions(p: u64) -> Result<Field> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field(Arc::new(FieldKind::RationalFunctions(p))))
    }

    /// `base[x]/(minpoly)`. The polynomial is made monic; irreducibility is checked by
    /// factorization over `Q` and `F_p`, and recorded as unverified over `F_p(t)`.
    pub fn extension(base: &Field, minpoly: &[Scalar]) -> Result<Field> {
        let coeffs = poly::trim(base, minpoly.to_vec());
        if coeffs.len() < 3 {
            return Err(Error::InvalidField("minimal polynomial must have degree >= 2".into()));
        }
        let lead = coeffs.last().unwrap().clone();
        let lead_inv = base.inv(&lead)?;
        let monic: Vec<Scalar> = coeffs.iter().map(|c| base.mul(c, &lead_inv)).collect();
        let verified = match base.kind() {
            FieldKind::Rationals | FieldKind::Prime(_) => {
                let f = super::poly::Polynomial::new(base.clone(), monic.clone());
                let fac = super::factor::factor(&f)?;
                if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
                    return Err(Error::InvalidField(format!("minimal polynomial {} is reducible", f)));
                }
                true
            }
            FieldKind::RationalFunctions(_) => false,
            FieldKind::Extension { base: inner, .. } => {
                if matches!(inner.kind(), FieldKind::RationalFunctions(_)) {
                    return Err(Error::InvalidField("at most one extension level over F_p(t)".into()));
                }
                // Factorization over extension fields is out of reach; trust the caller.
                false
            }
        };
        Ok(Field(Arc::new(FieldKind::Extension { base: base.clone(), minpoly: monic, verified })))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    /// 0 for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) | FieldKind::RationalFunctions(p) => *p,
            FieldKind::Extension { base, .. } => base.characteristic(),
        }
    }

    /// The prime field or `Q` underneath any extension tower.
    pub fn prime_subfield(&self) -> Field {
        match self.kind() {
            FieldKind::Extension { base, .. } => base.prime_subfield(),
            FieldKind::RationalFunctions(p) => Field::prime(*p).unwrap(),
            _ => self.clone(),
        }
    }

    /// Number of elements, when finite and representable.
    pub fn order(&self) -> Option<u128> {
        match self.kind() {
            FieldKind::Prime(p) => Some(*p as u128),
            FieldKind::Extension { base, minpoly, .. } => {
                let q = base.order()?;
                q.checked_pow((minpoly.len() - 1) as u32)
            }
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self.kind() {
            FieldKind::Prime(_) => true,
            FieldKind::Extension { base, .. } => base.is_finite(),
            _ => false,
        }
    }

    /// Degree over the immediate base (1 for non-extensions).
    pub fn ext_degree(&self) -> usize {
        match self.kind() {
            FieldKind::Extension { minpoly, .. } => minpoly.len() - 1,
            _ => 1,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match self.kind() {
            FieldKind::Extension { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn minpoly(&self) -> Option<&[Scalar]> {
        match self.kind() {
            FieldKind::Extension { minpoly, .. } => Some(minpoly),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.kind() {
            FieldKind::Rationals => Scalar::Rational(BigRational::zero()),
            FieldKind::Prime(_) => Scalar::Mod(0),
            FieldKind::RationalFunctions(_) => Scalar::RatFunc(RatFunc { num: Vec::new(), den: vec![1] }),
            FieldKind::Extension { base, minpoly, .. } => Scalar::Ext(vec![base.zero(); minpoly.len() - 1]),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.kind() {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => Scalar::Mod(reduce_bigint(n, *p)),
            FieldKind::RationalFunctions(p) => {
                Scalar::RatFunc(RatFunc { num: fp_poly::trim(vec![reduce_bigint(n, *p)]), den: vec![1] })
            }
            FieldKind::Extension { base, .. } => self.embed(&base.from_bigint(n)),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        self.div(&n, &d)
    }

    /// Embeds an element of the immediate base field.
    pub fn embed(&self, b: &Scalar) -> Scalar {
        match self.kind() {
            FieldKind::Extension { base, minpoly, .. } => {
                let mut v = vec![base.zero(); minpoly.len() - 1];
                v[0] = b.clone();
                Scalar::Ext(v)
            }
            _ => b.clone(),
        }
    }

    /// The adjoined root `x` of an extension field.
    pub fn generator(&self) -> Option<Scalar> {
        match self.kind() {
            FieldKind::Extension { base, minpoly, .. } => {
                let mut v = vec![base.zero(); minpoly.len() - 1];
                v[1] = base.one();
                Some(Scalar::Ext(v))
            }
            _ => None,
        }
    }

    /// Whether `s` has the representation this field expects.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self.kind(), s) {
            (FieldKind::Rationals, Scalar::Rational(_)) => true,
            (FieldKind::Prime(p), Scalar::Mod(v)) => v < p,
            (FieldKind::RationalFunctions(p), Scalar::RatFunc(r)) => {
                r.num.iter().chain(r.den.iter()).all(|c| c < p) && r.den.last() == Some(&1)
            }
            (FieldKind::Extension { base, minpoly, .. }, Scalar::Ext(v)) => {
                v.len() == minpoly.len() - 1 && v.iter().all(|c| base.contains(c))
            }
            _ => false,
        }
    }

    pub fn check(&self, s: &Scalar) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{s:?} is not an element of {self}")))
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod(v) => *v == 0,
            Scalar::RatFunc(r) => r.num.is_empty(),
            Scalar::Ext(v) => {
                let base = self.base().expect("extension element in non-extension field");
                v.iter().all(|c| base.is_zero(c))
            }
        }
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        *s == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.kind(), a, b) {
            (FieldKind::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (FieldKind::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            (FieldKind::RationalFunctions(p), Scalar::RatFunc(x), Scalar::RatFunc(y)) => {
                let p = *p;
                if x.den == y.den {
                    return canonical_ratfunc(fp_poly::add(&x.num, &y.num, p), x.den.clone(), p);
                }
                let num = fp_poly::add(&fp_poly::mul(&x.num, &y.den, p), &fp_poly::mul(&y.num, &x.den, p), p);
                canonical_ratfunc(num, fp_poly::mul(&x.den, &y.den, p), p)
            }
            (FieldKind::Extension { base, .. }, Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => panic!("field mismatch in add: {a:?} + {b:?} over {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self.kind(), a) {
            (FieldKind::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldKind::Prime(p), Scalar::Mod(x)) => Scalar::Mod((p - x) % p),
            (FieldKind::RationalFunctions(p), Scalar::RatFunc(x)) => {
                Scalar::RatFunc(RatFunc { num: fp_poly::neg(&x.num, *p), den: x.den.clone() })
            }
            (FieldKind::Extension { base, .. }, Scalar::Ext(x)) => Scalar::Ext(x.iter().map(|u| base.neg(u)).collect()),
            _ => panic!("field mismatch in neg: {a:?} over {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.kind(), a, b) {
            (FieldKind::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (FieldKind::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(fp_poly::mul_mod(*x, *y, *p)),
            (FieldKind::RationalFunctions(p), Scalar::RatFunc(x), Scalar::RatFunc(y)) => {
                let p = *p;
                if x.num.is_empty() || y.num.is_empty() {
                    return self.zero();
                }
                canonical_ratfunc(fp_poly::mul(&x.num, &y.num, p), fp_poly::mul(&x.den, &y.den, p), p)
            }
            (FieldKind::Extension { base, minpoly, .. }, Scalar::Ext(x), Scalar::Ext(y)) => {
                let prod = poly::mul(base, x, y);
                Scalar::Ext(reduce_mod_monic(base, prod, minpoly))
            }
            _ => panic!("field mismatch in mul: {a:?} * {b:?} over {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self.kind(), a) {
            (FieldKind::Rationals, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (FieldKind::Prime(p), Scalar::Mod(x)) => Scalar::Mod(fp_poly::inv_mod(*x, *p)),
            (FieldKind::RationalFunctions(p), Scalar::RatFunc(x)) => {
                canonical_ratfunc(x.den.clone(), x.num.clone(), *p)
            }
            (FieldKind::Extension { base, minpoly, .. }, Scalar::Ext(x)) => {
                // s*x + t*m = g with g a nonzero constant because m is irreducible.
                let (g, s, _) = poly::xgcd(base, &poly::trim(base, x.clone()), minpoly);
                if g.len() != 1 {
                    return Err(Error::InvalidField("minimal polynomial is reducible: element has no inverse".into()));
                }
                let g_inv = base.inv(&g[0])?;
                let s: Vec<Scalar> = s.iter().map(|c| base.mul(c, &g_inv)).collect();
                Scalar::Ext(reduce_mod_monic(base, s, minpoly))
            }
            _ => return Err(Error::FieldMismatch(format!("{a:?} is not an element of {self}"))),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Total order on canonical forms; used only for deterministic sorting.
    pub fn cmp(&self, a: &Scalar, b: &Scalar) -> Ordering {
        match (a, b) {
            (Scalar::RatFunc(x), Scalar::RatFunc(y)) => {
                fp_poly::cmp(&x.num, &y.num).then_with(|| fp_poly::cmp(&x.den, &y.den))
            }
            (Scalar::Ext(x), Scalar::Ext(y)) => {
                let base = self.base().unwrap();
                for (u, v) in x.iter().zip(y) {
                    let o = base.cmp(u, v);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
            _ => a.cmp(b),
        }
    }

    /// Canonical text form of an element (the scalar syntax of every file format).
    pub fn format(&self, s: &Scalar) -> String {
        match s {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod(v) => v.to_string(),
            Scalar::RatFunc(r) => {
                let num = fp_poly::format(&r.num);
                if r.den == [1] {
                    num
                } else {
                    format!("{}/{}", paren(&num), paren(&fp_poly::format(&r.den)))
                }
            }
            Scalar::Ext(v) => {
                let base = self.base().expect("extension element in non-extension field");
                let parts: Vec<String> = v.iter().map(|c| base.format(c)).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }

    /// Parses the canonical text form; also accepts non-reduced input such as `2/4` or `-1`.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let err = |msg: String| Error::Parse(format!("{text:?} over {self}: {msg}"));
        match self.kind() {
            FieldKind::Rationals => {
                let (n, d) = split_fraction(text);
                let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator".into()))?;
                let d: BigInt = match d {
                    Some(d) => d.trim().parse().map_err(|_| err("bad denominator".into()))?,
                    None => BigInt::one(),
                };
                if d.is_zero() {
                    return Err(err("zero denominator".into()));
                }
                Ok(Scalar::Rational(BigRational::new(n, d)))
            }
            FieldKind::Prime(_) => {
                let (n, d) = split_fraction(text);
                let n: BigInt = n.trim().parse().map_err(|_| err("bad residue".into()))?;
                let n = self.from_bigint(&n);
                match d {
                    None => Ok(n),
                    Some(d) => {
                        let d: BigInt = d.trim().parse().map_err(|_| err("bad residue".into()))?;
                        self.div(&n, &self.from_bigint(&d)).map_err(|e| err(e.to_string()))
                    }
                }
            }
            FieldKind::RationalFunctions(p) => {
                let (n, d) = split_fraction(text);
                let num = fp_poly::parse(n, *p).map_err(err)?;
                let den = match d {
                    Some(d) => fp_poly::parse(d, *p).map_err(err)?,
                    None => vec![1],
                };
                if den.is_empty() {
                    return Err(err("zero denominator".into()));
                }
                Ok(canonical_ratfunc(num, den, *p))
            }
            FieldKind::Extension { base, minpoly, .. } => {
                let deg = minpoly.len() - 1;
                match text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                    Some(inner) => {
                        let parts = split_top_level(inner, ',');
                        if parts.len() > deg {
                            return Err(err(format!("more than {deg} coefficients")));
                        }
                        let mut v = vec![base.zero(); deg];
                        for (i, part) in parts.iter().enumerate() {
                            if !part.trim().is_empty() {
                                v[i] = base.parse(part)?;
                            }
                        }
                        Ok(Scalar::Ext(v))
                    }
                    None => Ok(self.embed(&base.parse(text)?)),
                }
            }
        }
    }

    /// Random element for tests and randomized algorithms; rationals and function-field
    /// elements are drawn with small heights.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.kind() {
            FieldKind::Rationals => {
                let n: i64 = rng.gen_range(-9..=9);
                let d: i64 = rng.gen_range(1..=4);
                Scalar::Rational(BigRational::new(n.into(), d.into()))
            }
            FieldKind::Prime(p) => Scalar::Mod(rng.gen_range(0..*p)),
            FieldKind::RationalFunctions(p) => {
                let dn = rng.gen_range(0..3usize);
                let num: Vec<u64> = (0..=dn).map(|_| rng.gen_range(0..*p)).collect();
                let dd = rng.gen_range(0..2usize);
                let mut den: Vec<u64> = (0..=dd).map(|_| rng.gen_range(0..*p)).collect();
                den[dd] = 1;
                canonical_ratfunc(fp_poly::trim(num), den, *p)
            }
            FieldKind::Extension { base, minpoly, .. } => {
                Scalar::Ext((0..minpoly.len() - 1).map(|_| base.random(rng)).collect())
            }
        }
    }

    /// Interprets a small integer-valued element as `i64`, for reporting.
    pub fn to_i64(&self, s: &Scalar) -> Option<i64> {
        match s {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Mod(v) => Some(*v as i64),
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F_{p}"),
            FieldKind::RationalFunctions(p) => write!(f, "F_{p}(t)"),
            FieldKind::Extension { base, minpoly, .. } => {
                let m = poly::Polynomial::new(base.clone(), minpoly.clone());
                write!(f, "{base}[x]/({m})")
            }
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((n % &m) + &m) % &m;
    r.to_u64().unwrap()
}

fn canonical_ratfunc(num: FpPoly, den: FpPoly, p: u64) -> Scalar {
    let num = fp_poly::trim(num);
    let den = fp_poly::trim(den);
    assert!(!den.is_empty(), "zero denominator in rational function");
    if num.is_empty() {
        return Scalar::RatFunc(RatFunc { num, den: vec![1] });
    }
    let g = fp_poly::gcd(&num, &den, p);
    let (mut num, _) = fp_poly::divrem(&num, &g, p);
    let (mut den, _) = fp_poly::divrem(&den, &g, p);
    let lc = *den.last().unwrap();
    if lc != 1 {
        let inv = fp_poly::inv_mod(lc, p);
        num = fp_poly::scale(&num, inv, p);
        den = fp_poly::scale(&den, inv, p);
    }
    Scalar::RatFunc(RatFunc { num, den })
}

/// Remainder modulo a monic polynomial, padded to `deg(m)` coefficients.
fn reduce_mod_monic(base: &Field, mut a: Vec<Scalar>, m: &[Scalar]) -> Vec<Scalar> {
    let d = m.len() - 1;
    while a.len() > d {
        let top = a.pop().unwrap();
        if base.is_zero(&top) {
            continue;
        }
        let shift = a.len() - d;
        for (i, mi) in m[..d].iter().enumerate() {
            a[shift + i] = base.sub(&a[shift + i], &base.mul(&top, mi));
        }
    }
    a.resize(d, base.zero());
    a
}

fn paren(s: &str) -> String {
    if s.contains('+') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

/// Splits `a/b` at the single top-level slash, if any.
fn split_fraction(s: &str) -> (&str, Option<&str>) {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '/' if depth == 0 => return (&s[..i], Some(&s[i + 1..])),
            _ => {}
        }
    }
    (s, None)
}

pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> Scalar {
        Field::rationals().parse(s).unwrap()
    }

    #[test]
    fn rational_sum() {
        let f = Field::rationals();
        assert_eq!(f.add(&q("1/3"), &q("1/6")), q("1/2"));
        assert_eq!(f.format(&q("4/-8")), "-1/2");
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.inv(&Scalar::Mod(2)).unwrap(), Scalar::Mod(3));
        assert_eq!(f.inv(&Scalar::Mod(0)), Err(Error::DivisionByZero));
        assert_eq!(f.parse("-1").unwrap(), Scalar::Mod(4));
    }

    #[test]
    fn function_field_common_denominator() {
        let f = Field::rational_functions(2).unwrap();
        let a = f.parse("1/t").unwrap();
        let b = f.parse("1/(t+1)").unwrap();
        let sum = f.add(&a, &b);
        assert_eq!(sum, f.parse("1/(t^2+t)").unwrap());
        assert_eq!(f.format(&sum), "1/(t^2+t)");
        assert_eq!(f.parse(&f.format(&sum)).unwrap(), sum);
    }

    #[test]
    fn rejects_composite_and_reducible() {
        assert!(Field::prime(6).is_err());
        let q = Field::rationals();
        let reducible = [q.from_i64(-1), q.zero(), q.one()];
        assert!(Field::extension(&q, &reducible).is_err());
    }

    #[test]
    fn extension_arithmetic() {
        let f3 = Field::prime(3).unwrap();
        // F_9 = F_3[x]/(x^2+1)
        let f9 = Field::extension(&f3, &[f3.one(), f3.zero(), f3.one()]).unwrap();
        let x = f9.generator().unwrap();
        assert_eq!(f9.mul(&x, &x), f9.from_i64(-1));
        let y = f9.parse("[1,2]").unwrap();
        let yi = f9.inv(&y).unwrap();
        assert_eq!(f9.mul(&y, &yi), f9.one());
        assert_eq!(f9.format(&y), "[1,2]");
        assert_eq!(f9.order(), Some(9));
    }

    #[test]
    fn extension_over_function_field() {
        let ft = Field::rational_functions(2).unwrap();
        let t = ft.parse("t").unwrap();
        let e = Field::extension(&ft, &[ft.neg(&t), ft.zero(), ft.one()]).unwrap();
        let a = e.generator().unwrap();
        assert_eq!(e.mul(&a, &a), e.embed(&t));
        assert!(matches!(e.kind(), FieldKind::Extension { verified: false, .. }));
        assert!(Field::extension(&e, &[e.neg(&a), e.zero(), e.one()]).is_err());
    }

    #[test]
    fn canonicalization_on_random_elements() {
        let f3 = Field::prime(3).unwrap();
        let fields = vec![
            Field::rationals(),
            Field::prime(7).unwrap(),
            Field::rational_functions(3).unwrap(),
            Field::extension(&f3, &[f3.one(), f3.zero(), f3.one()]).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for f in &fields {
            let mut tested = 0;
            while tested < 1000 {
                let a = f.random(&mut rng);
                assert!(f.contains(&a));
                assert!(f.is_zero(&f.sub(&a, &a)));
                if f.is_zero(&a) {
                    continue;
                }
                let inv = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &inv), f.one(), "over {f}");
                assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
                tested += 1;
            }
        }
    }
}
