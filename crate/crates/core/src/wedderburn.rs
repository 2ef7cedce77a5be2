//! Block decomposition of semisimple algebras and the Chinese remainder construction.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{direct_product, AlgHom, FinAlg, Ideal, Vector};
use crate::error::{Error, Result};
use crate::exactmath::{factor, poly, Field, FieldKind, Matrix, Scalar, Subspace};
use crate::radical;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockData {
    pub total_dim: usize,
    pub center_dim: usize,
    /// `n` with `total_dim = n^2 * center_dim`; only known over finite fields.
    pub matrix_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub idempotents: Vec<Vector>,
    pub blocks: Vec<FinAlg>,
    pub block_data: Vec<BlockData>,
    /// Columns are the block basis vectors in the coordinates of the original algebra.
    pub inclusions: Vec<Matrix>,
}

impl BlockDecomposition {
    /// The isomorphism `A → ∏ Ae_i`, `a ↦ (a e_i)`.
    pub fn reassembly(&self, alg: &FinAlg) -> Result<AlgHom> {
        let product = direct_product(&self.blocks)?;
        let f = alg.field();
        let mut images = Vec::with_capacity(alg.dim());
        for j in 0..alg.dim() {
            let mut img = Vec::with_capacity(product.dim());
            for (e, inc) in self.idempotents.iter().zip(&self.inclusions) {
                let piece = alg.mul(&alg.basis_vector(j), e);
                let coords = inc
                    .solve_vec(&piece)?
                    .ok_or_else(|| Error::InternalVerificationFailed("a e_i outside its block".into()))?;
                img.extend(coords);
            }
            images.push(img);
        }
        let hom = AlgHom::from_images(alg, &product, &images)?;
        if !hom.is_isomorphism() {
            return Err(Error::InternalVerificationFailed(format!("reassembly over {f} is not bijective")));
        }
        Ok(hom)
    }
}

/// `{z : z e_i = e_i z for all i}`.
pub fn center(alg: &FinAlg) -> Subspace {
    let f = alg.field();
    let n = alg.dim();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        let e = alg.basis_vector(i);
        let m = alg.right_mult_matrix(&e).sub(&alg.left_mult_matrix(&e)).unwrap();
        rows.extend(m.row_vectors());
    }
    let system = Matrix::from_rows(f, n, rows);
    Subspace::span(f, n, &system.nullspace().row_vectors())
}

pub fn central_idempotents(alg: &FinAlg) -> Result<BlockDecomposition> {
    central_idempotents_seeded(alg, 0)
}

pub fn central_idempotents_seeded(alg: &FinAlg, seed: u64) -> Result<BlockDecomposition> {
    let f = alg.field();
    if !matches!(f.kind(), FieldKind::Rationals | FieldKind::Prime(_)) {
        return Err(Error::UnsupportedField(format!("block decomposition over {f}")));
    }
    if !radical::is_semisimple(alg)? {
        return Err(Error::NotSemisimple);
    }
    let z = center(alg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut primitive = Vec::new();
    let mut pending = vec![alg.unit().clone()];
    while let Some(e) = pending.pop() {
        let ze = corner_center(alg, &z, &e);
        match split_idempotent(alg, &ze, &e, &mut rng)? {
            Some(parts) => pending.extend(parts),
            None => primitive.push((e, ze.dim())),
        }
    }

    let mut entries = Vec::with_capacity(primitive.len());
    for (e, center_dim) in primitive {
        let space = Subspace::span(
            f,
            alg.dim(),
            &(0..alg.dim()).map(|i| alg.mul(&alg.basis_vector(i), &e)).collect::<Vec<_>>(),
        );
        let (block, inclusion) = alg.on_subspace(&space, &e)?;
        let total_dim = block.dim();
        let matrix_degree = match f.kind() {
            FieldKind::Prime(_) => Some(exact_sqrt(total_dim / center_dim).ok_or_else(|| {
                Error::InternalVerificationFailed(format!("block of dim {total_dim} over center of dim {center_dim}"))
            })?),
            _ => None,
        };
        entries.push((e, block, BlockData { total_dim, center_dim, matrix_degree }, inclusion));
    }
    entries.sort_by(|a, b| a.2.total_dim.cmp(&b.2.total_dim).then_with(|| cmp_vectors(f, &a.0, &b.0)));

    let mut dec = BlockDecomposition {
        idempotents: Vec::new(),
        blocks: Vec::new(),
        block_data: Vec::new(),
        inclusions: Vec::new(),
    };
    for (e, b, d, inc) in entries {
        dec.idempotents.push(e);
        dec.blocks.push(b);
        dec.block_data.push(d);
        dec.inclusions.push(inc);
    }
    verify_idempotents(alg, &dec.idempotents)?;
    dec.reassembly(alg)?;
    Ok(dec)
}

fn cmp_vectors(f: &Field, a: &[Scalar], b: &[Scalar]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| f.cmp(x, y)).find(|o| *o != Ordering::Equal).unwrap_or(Ordering::Equal)
}

fn exact_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

fn verify_idempotents(alg: &FinAlg, es: &[Vector]) -> Result<()> {
    let fail = |m: &str| Err(Error::InternalVerificationFailed(format!("central idempotents: {m}")));
    let mut sum = alg.zero();
    for (i, e) in es.iter().enumerate() {
        sum = alg.add(&sum, e);
        for (j, d) in es.iter().enumerate() {
            let prod = alg.mul(e, d);
            let expected = if i == j { e.clone() } else { alg.zero() };
            if prod != expected {
                return fail("not orthogonal idempotents");
            }
        }
        for k in 0..alg.dim() {
            let b = alg.basis_vector(k);
            if alg.mul(e, &b) != alg.mul(&b, e) {
                return fail("not central");
            }
        }
    }
    if &sum != alg.unit() {
        return fail("do not sum to 1");
    }
    Ok(())
}

/// `eZ`, the center of the block `Ae`.
fn corner_center(alg: &FinAlg, z: &Subspace, e: &[Scalar]) -> Subspace {
    let vs: Vec<Vector> = z.vectors().iter().map(|v| alg.mul(v, e)).collect();
    Subspace::span(alg.field(), alg.dim(), &vs)
}

/// Evaluates a polynomial at `z` inside the corner with unit `e`.
fn eval_in_corner(alg: &FinAlg, p: &[Scalar], z: &[Scalar], e: &[Scalar]) -> Vector {
    let mut acc = alg.zero();
    for c in p.iter().rev() {
        acc = alg.add(&alg.mul(&acc, z), &alg.scale(c, e));
    }
    acc
}

enum Verdict {
    Split(Vec<Vector>),
    Field,
    Inconclusive,
}

/// Looks at the minimal polynomial of one central element.
fn examine(alg: &FinAlg, ze: &Subspace, e: &[Scalar], z: &[Scalar]) -> Result<Verdict> {
    let f = alg.field();
    let mu = alg.minimal_polynomial_with_unit(z, e);
    let deg = mu.degree().unwrap_or(0);
    if deg <= 1 {
        return Ok(Verdict::Inconclusive);
    }
    let fac = factor(&mu)?;
    if fac.factors.iter().any(|(_, m)| *m > 1) {
        // The center of a semisimple algebra is reduced.
        return Err(Error::NotSemisimple);
    }
    if fac.factors.len() == 1 {
        return Ok(if deg == ze.dim() { Verdict::Field } else { Verdict::Inconclusive });
    }
    let m = mu.coeffs();
    let mut parts = Vec::with_capacity(fac.factors.len());
    for (g, _) in &fac.factors {
        let cofactor = poly::divrem(f, m, g.coeffs()).0;
        let (d, s, _) = poly::xgcd(f, &cofactor, g.coeffs());
        // d is a nonzero constant since the factors are coprime.
        let dinv = f.inv(&d[0])?;
        let idem = poly::divrem(f, &poly::scale(f, &poly::mul(f, &s, &cofactor), &dinv), m).1;
        parts.push(eval_in_corner(alg, &idem, z, e));
    }
    Ok(Verdict::Split(parts))
}

/// Splits `e` into smaller orthogonal central idempotents, or certifies that its
/// center is a field (returns `None`).
fn split_idempotent(alg: &FinAlg, ze: &Subspace, e: &[Scalar], rng: &mut ChaCha8Rng) -> Result<Option<Vec<Vector>>> {
    if ze.dim() == 1 {
        return Ok(None);
    }
    let f = alg.field();
    let basis = ze.vectors();
    let combine = |coeffs: &[i64]| -> Vector {
        basis.iter().zip(coeffs).fold(alg.zero(), |acc, (b, &c)| alg.add(&acc, &alg.scale(&f.from_i64(c), b)))
    };
    let mut candidates: Vec<Vector> = basis.clone();
    for _ in 0..16 {
        let coeffs: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(-3..=3)).collect();
        candidates.push(combine(&coeffs));
    }
    for z in &candidates {
        match examine(alg, ze, e, z)? {
            Verdict::Split(parts) => return Ok(Some(parts)),
            Verdict::Field => return Ok(None),
            Verdict::Inconclusive => {}
        }
    }
    if let FieldKind::Prime(p) = f.kind() {
        return berlekamp_split(alg, ze, e, *p);
    }
    // Exhaustive search over small coefficient vectors; a primitive element of a
    // product of number fields is found among them.
    let m = basis.len();
    let bound = m as i64 + 1;
    let mut coeffs = vec![0i64; m];
    loop {
        let mut k = 0;
        while k < m && coeffs[k] == bound {
            coeffs[k] = 0;
            k += 1;
        }
        if k == m {
            break;
        }
        coeffs[k] += 1;
        match examine(alg, ze, e, &combine(&coeffs))? {
            Verdict::Split(parts) => return Ok(Some(parts)),
            Verdict::Field => return Ok(None),
            Verdict::Inconclusive => {}
        }
    }
    Err(Error::InternalVerificationFailed("no splitting element found in the center".into()))
}

/// Over `F_p` the fixed points of `z ↦ z^p` in a reduced commutative algebra count its
/// field factors; a non-scalar fixed point has a split minimal polynomial.
fn berlekamp_split(alg: &FinAlg, ze: &Subspace, e: &[Scalar], p: u64) -> Result<Option<Vec<Vector>>> {
    let f = alg.field();
    let basis = ze.vectors();
    let m = basis.len();
    let mut cols = Vec::with_capacity(m);
    for b in &basis {
        let mut power = e.to_vec();
        for _ in 0..p {
            power = alg.mul(&power, b);
        }
        let image = alg.sub(&power, b);
        cols.push(ze.coordinates(&image).expect("corner center is closed under powers"));
    }
    let frob = Matrix::from_columns(f, m, &cols);
    let kernel = frob.nullspace().row_vectors();
    if kernel.len() == 1 {
        return Ok(None);
    }
    for k in kernel {
        let z = ze.combine(&k);
        if let Verdict::Split(parts) = examine(alg, ze, e, &z)? {
            return Ok(Some(parts));
        }
    }
    Err(Error::InternalVerificationFailed("Frobenius fixed points did not split".into()))
}

/// Finds `a` with `a ≡ targets[i] (mod ideals[i])` for every `i`.
pub fn crt_lift(alg: &FinAlg, ideals: &[Ideal], targets: &[Vector]) -> Result<Vector> {
    if ideals.is_empty() || ideals.len() != targets.len() {
        return Err(Error::BadSpec("one target per ideal, at least one ideal".into()));
    }
    let f = alg.field();
    let n = alg.dim();
    for t in targets {
        if t.len() != n {
            return Err(Error::AmbientMismatch(format!("target of length {}, expected {n}", t.len())));
        }
    }
    for (i, ideal) in ideals.iter().enumerate() {
        if ideal.space().is_full() {
            return Err(Error::ImproperIdeal);
        }
        for (j, other) in ideals.iter().enumerate().skip(i + 1) {
            if !ideal.space().sum(other.space())?.is_full() {
                return Err(Error::NotCoprime(i, j));
            }
        }
    }
    let mut a = targets[0].clone();
    let mut meet = ideals[0].space().clone();
    for (ideal, c) in ideals.iter().zip(targets).skip(1) {
        // 1 = x + y with x in the intersection so far and y in the new ideal.
        let mut gens = meet.vectors();
        let split = gens.len();
        gens.extend(ideal.vectors());
        let system = Matrix::from_columns(f, n, &gens);
        let coeffs = system
            .solve_vec(alg.unit())?
            .ok_or_else(|| Error::NoSolution("1 is not in the sum of the ideals".into()))?;
        let x =
            gens[..split].iter().zip(&coeffs[..split]).fold(alg.zero(), |acc, (g, c)| alg.add(&acc, &alg.scale(c, g)));
        let y = alg.sub(alg.unit(), &x);
        a = alg.add(&alg.mul(&a, &y), &alg.mul(c, &x));
        meet = meet.intersection(ideal.space())?;
    }
    for (ideal, t) in ideals.iter().zip(targets) {
        if !ideal.contains(&alg.sub(&a, t)) {
            return Err(Error::NoSolution("lift does not reduce to the target".into()));
        }
    }
    Ok(a)
}
