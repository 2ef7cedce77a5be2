//! Finite prefixes of inverse systems `A_1 ← A_2 ← ... ← A_N` of finite-dimensional
//! algebras with surjective connecting maps. Besides the standard examples this holds
//! the levelwise checks on radicals and splittings.
//!
//! Levels are numbered from 1 in reports and errors; `maps[i]` goes from `levels[i + 1]`
//! to `levels[i]`.

use std::collections::HashMap;

use crate::algebra::{
    direct_product, group_algebra, ideal_closure, quotient, truncated_polynomial, AlgHom, FinAlg, Side, Vector,
};
use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix, Scalar};
use crate::malcev::Splitting;
use crate::radical::{is_semisimple, radical};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// A linear combination of paths; coefficients are scalar text in the tower's field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(String, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

impl QuiverSpec {
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> QuiverSpec {
        QuiverSpec {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(n, s, t)| Arrow { name: n.to_string(), source: s.to_string(), target: t.to_string() })
                .collect(),
            relations: Vec::new(),
        }
    }

    pub fn one_loop() -> QuiverSpec {
        QuiverSpec::new(&["v"], &[("x", "v", "v")])
    }

    pub fn kronecker() -> QuiverSpec {
        QuiverSpec::new(&["v1", "v2"], &[("a", "v1", "v2"), ("b", "v1", "v2")])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerKind {
    PowerSeries,
    CyclicGroup { p: u64 },
    Path { quiver: QuiverSpec },
    Product,
    Custom,
}

impl TowerKind {
    pub fn tag(&self) -> &'static str {
        match self {
            TowerKind::PowerSeries => "powerseries",
            TowerKind::CyclicGroup { .. } => "cyclicgroup",
            TowerKind::Path { .. } => "path",
            TowerKind::Product => "product",
            TowerKind::Custom => "custom",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    levels: Vec<FinAlg>,
    maps: Vec<AlgHom>,
    kind: TowerKind,
}

impl Tower {
    /// Validates that `maps[i]: levels[i + 1] → levels[i]` are surjective homomorphisms.
    pub fn new(levels: Vec<FinAlg>, maps: Vec<AlgHom>, kind: TowerKind) -> Result<Tower> {
        if levels.is_empty() {
            return Err(Error::BadSpec("a tower needs at least one level".into()));
        }
        if maps.len() + 1 != levels.len() {
            return Err(Error::BadSpec(format!("{} levels need {} maps", levels.len(), levels.len() - 1)));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.source() != &levels[i + 1] || m.target() != &levels[i] {
                return Err(Error::AmbientMismatch(format!(
                    "map {} does not join levels {} and {}",
                    i + 1,
                    i + 2,
                    i + 1
                )));
            }
            if !m.is_surjective() {
                return Err(Error::NotSurjective(i + 1));
            }
        }
        Ok(Tower { levels, maps, kind })
    }

    /// Builds from levels and map matrices, validating each map.
    pub fn from_matrices(levels: Vec<FinAlg>, matrices: Vec<Matrix>, kind: TowerKind) -> Result<Tower> {
        if matrices.len() + 1 != levels.len() {
            return Err(Error::BadSpec(format!(
                "{} levels need {} maps",
                levels.len(),
                levels.len().saturating_sub(1)
            )));
        }
        let maps = matrices
            .into_iter()
            .enumerate()
            .map(|(i, m)| AlgHom::new(&levels[i + 1], &levels[i], m))
            .collect::<Result<Vec<_>>>()?;
        Tower::new(levels, maps, kind)
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[FinAlg] {
        &self.levels
    }

    pub fn maps(&self) -> &[AlgHom] {
        &self.maps
    }

    pub fn kind(&self) -> &TowerKind {
        &self.kind
    }

    pub fn field(&self) -> &Field {
        self.levels[0].field()
    }

    /// A compatible sequence, checked.
    pub fn element(&self, coords: Vec<Vector>) -> Result<TowerElement<'_>> {
        if coords.len() != self.depth() {
            return Err(Error::BadSpec(format!("{} coordinate vectors for {} levels", coords.len(), self.depth())));
        }
        for (i, (c, l)) in coords.iter().zip(&self.levels).enumerate() {
            if c.len() != l.dim() {
                return Err(Error::AmbientMismatch(format!("level {} has dimension {}", i + 1, l.dim())));
            }
        }
        for (i, m) in self.maps.iter().enumerate() {
            if m.apply(&coords[i + 1]) != coords[i] {
                return Err(Error::IncompatibleCoordinates(i + 1));
            }
        }
        Ok(TowerElement { tower: self, coords })
    }

    /// The compatible sequence determined by its top coordinate.
    pub fn element_from_top(&self, top: &[Scalar]) -> Result<TowerElement<'_>> {
        let n = self.depth();
        if top.len() != self.levels[n - 1].dim() {
            return Err(Error::AmbientMismatch(format!("level {n} has dimension {}", self.levels[n - 1].dim())));
        }
        let mut coords = vec![top.to_vec()];
        for m in self.maps.iter().rev() {
            let below = m.apply(coords.last().unwrap());
            coords.push(below);
        }
        coords.reverse();
        Ok(TowerElement { tower: self, coords })
    }

    pub fn one(&self) -> TowerElement<'_> {
        TowerElement { tower: self, coords: self.levels.iter().map(|l| l.unit().clone()).collect() }
    }
}

/// A compatible family `(x_n)` with `φ_n(x_{n+1}) = x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerElement<'a> {
    tower: &'a Tower,
    coords: Vec<Vector>,
}

impl<'a> TowerElement<'a> {
    pub fn coords(&self) -> &[Vector] {
        &self.coords
    }

    /// Coordinates at a 1-based level.
    pub fn level(&self, n: usize) -> &Vector {
        &self.coords[n - 1]
    }

    fn zip(&self, other: &TowerElement<'a>, op: impl Fn(&FinAlg, &Vector, &Vector) -> Vector) -> TowerElement<'a> {
        let coords = self
            .tower
            .levels
            .iter()
            .zip(self.coords.iter().zip(&other.coords))
            .map(|(l, (a, b))| op(l, a, b))
            .collect();
        TowerElement { tower: self.tower, coords }
    }

    pub fn add(&self, other: &TowerElement<'a>) -> TowerElement<'a> {
        self.zip(other, |l, a, b| l.add(a, b))
    }

    pub fn mul(&self, other: &TowerElement<'a>) -> TowerElement<'a> {
        self.zip(other, |l, a, b| l.mul(a, b))
    }

    pub fn is_compatible(&self) -> bool {
        self.tower.maps.iter().enumerate().all(|(i, m)| m.apply(&self.coords[i + 1]) == self.coords[i])
    }
}

/// `k[x]/(x^n)` for `n = 1..depth`, with `x ↦ x`.
pub fn power_series_tower(field: &Field, depth: usize) -> Result<Tower> {
    check_depth(depth)?;
    let levels = (1..=depth).map(|n| truncated_polynomial(n, field)).collect::<Result<Vec<_>>>()?;
    let matrices = (1..depth)
        .map(|n| {
            let cols: Vec<Vector> = (0..=n).map(|i| coordinate_or_zero(field, n, i)).collect();
            Matrix::from_columns(field, n, &cols)
        })
        .collect();
    Tower::from_matrices(levels, matrices, TowerKind::PowerSeries)
}

/// `k[C_{p^n}]` for `n = 1..depth`, with generator ↦ generator.
pub fn cyclic_group_tower(p: u64, field: &Field, depth: usize) -> Result<Tower> {
    check_depth(depth)?;
    if !crate::exactmath::is_prime(p) {
        return Err(Error::BadSpec(format!("{p} is not prime")));
    }
    let orders: Vec<usize> = (1..=depth as u32)
        .map(|n| {
            (p as usize)
                .checked_pow(n)
                .filter(|&o| o <= 4096)
                .ok_or_else(|| Error::TooLarge(format!("group of order {p}^{n}")))
        })
        .collect::<Result<_>>()?;
    let levels = orders.iter().map(|&o| group_algebra(o, field)).collect::<Result<Vec<_>>>()?;
    let matrices = orders
        .windows(2)
        .map(|w| {
            let cols: Vec<Vector> = (0..w[1]).map(|i| coordinate_or_zero(field, w[0], i % w[0])).collect();
            Matrix::from_columns(field, w[0], &cols)
        })
        .collect();
    Tower::from_matrices(levels, matrices, TowerKind::CyclicGroup { p })
}

/// Levels `direct_product(factors[..n])`, with coordinate projections.
pub fn product_tower(factors: &[FinAlg], depth: usize) -> Result<Tower> {
    check_depth(depth)?;
    if depth > factors.len() {
        return Err(Error::BadSpec(format!("depth {depth} exceeds the {} factors", factors.len())));
    }
    let levels = (1..=depth).map(|n| direct_product(&factors[..n])).collect::<Result<Vec<_>>>()?;
    let field = factors[0].field();
    let matrices = (1..depth)
        .map(|n| {
            let lower = levels[n - 1].dim();
            let cols: Vec<Vector> = (0..levels[n].dim()).map(|i| coordinate_or_zero(field, lower, i)).collect();
            Matrix::from_columns(field, lower, &cols)
        })
        .collect();
    Tower::from_matrices(levels, matrices, TowerKind::Product)
}

fn check_depth(depth: usize) -> Result<()> {
    if depth == 0 {
        return Err(Error::BadSpec("depth must be at least 1".into()));
    }
    Ok(())
}

/// `e_i` in dimension `dim`, or zero when `i` is out of range.
fn coordinate_or_zero(field: &Field, dim: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); dim];
    if i < dim {
        v[i] = field.one();
    }
    v
}

/// A path: a vertex (no arrows) or a nonempty composable arrow sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Path {
    vertex: Option<usize>,
    arrows: Vec<usize>,
}

struct PathBasis {
    paths: Vec<Path>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

fn path_label(q: &QuiverSpec, p: &Path) -> String {
    match p.vertex {
        Some(v) => q.vertices[v].clone(),
        None => p.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("."),
    }
}

/// Paths of length `< n`, ordered by length and then by arrow names.
fn paths_below(q: &QuiverSpec, n: usize, src: &[usize], tgt: &[usize]) -> PathBasis {
    let mut order: Vec<usize> = (0..q.arrows.len()).collect();
    order.sort_by(|&a, &b| q.arrows[a].name.cmp(&q.arrows[b].name));
    let mut paths: Vec<Path> = (0..q.vertices.len()).map(|v| Path { vertex: Some(v), arrows: vec![] }).collect();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 1..n {
        let mut next = Vec::new();
        for p in &frontier {
            for &a in &order {
                if p.last().is_none_or(|&l| tgt[l] == src[a]) {
                    let mut e = p.clone();
                    e.push(a);
                    next.push(e);
                }
            }
        }
        paths.extend(next.iter().map(|a| Path { vertex: None, arrows: a.clone() }));
        frontier = next;
    }
    let labels: Vec<String> = paths.iter().map(|p| path_label(q, p)).collect();
    let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
    PathBasis { paths, labels, index }
}

struct ResolvedQuiver {
    src: Vec<usize>,
    tgt: Vec<usize>,
    /// Relations as (coefficient, arrow indices); each relation homogeneous of length >= 2.
    relations: Vec<Vec<(Scalar, Vec<usize>)>>,
}

fn resolve(q: &QuiverSpec, field: &Field) -> Result<ResolvedQuiver> {
    if q.vertices.is_empty() {
        return Err(Error::EmptyQuiver);
    }
    let vidx: HashMap<&str, usize> = q.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    if vidx.len() != q.vertices.len() {
        return Err(Error::BadSpec("duplicate vertex names".into()));
    }
    let mut aidx: HashMap<&str, usize> = HashMap::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for (i, a) in q.arrows.iter().enumerate() {
        if a.name.is_empty() || a.name.contains('.') || vidx.contains_key(a.name.as_str()) {
            return Err(Error::BadSpec(format!("bad arrow name '{}'", a.name)));
        }
        if aidx.insert(a.name.as_str(), i).is_some() {
            return Err(Error::BadSpec(format!("duplicate arrow '{}'", a.name)));
        }
        let lookup = |v: &str| vidx.get(v).copied().ok_or_else(|| Error::BadSpec(format!("unknown vertex '{v}'")));
        src.push(lookup(&a.source)?);
        tgt.push(lookup(&a.target)?);
    }
    let mut relations = Vec::new();
    for rel in &q.relations {
        let mut terms = Vec::new();
        let mut len = None;
        for (coeff, path) in &rel.terms {
            let arrows = path
                .iter()
                .map(|n| aidx.get(n.as_str()).copied().ok_or_else(|| Error::BadSpec(format!("unknown arrow '{n}'"))))
                .collect::<Result<Vec<_>>>()?;
            let text = path.join(".");
            if arrows.len() < 2 || arrows.windows(2).any(|w| tgt[w[0]] != src[w[1]]) {
                return Err(Error::NonComposableRelation(text));
            }
            if *len.get_or_insert(arrows.len()) != arrows.len() {
                return Err(Error::BadSpec(format!("relation is not homogeneous at '{text}'")));
            }
            terms.push((field.parse(coeff)?, arrows));
        }
        if !terms.is_empty() {
            relations.push(terms);
        }
    }
    Ok(ResolvedQuiver { src, tgt, relations })
}

/// The truncated path algebra `kQ / (arrows)^n` on paths of length `< n`.
fn truncated_path_algebra(q: &QuiverSpec, r: &ResolvedQuiver, field: &Field, n: usize) -> Result<(FinAlg, PathBasis)> {
    let basis = paths_below(q, n, &r.src, &r.tgt);
    let ends = |p: &Path| -> (usize, usize) {
        match p.vertex {
            Some(v) => (v, v),
            None => (r.src[p.arrows[0]], r.tgt[*p.arrows.last().unwrap()]),
        }
    };
    let dim = basis.paths.len();
    let mut unit = vec![field.zero(); dim];
    for v in 0..q.vertices.len() {
        unit[v] = field.one();
    }
    let alg = FinAlg::from_fn(field, basis.labels.clone(), Some(unit), |i, j| {
        let (p, s) = (&basis.paths[i], &basis.paths[j]);
        if ends(p).1 != ends(s).0 {
            return Vec::new();
        }
        let prod = match (p.vertex, s.vertex) {
            (Some(_), _) => j,
            (_, Some(_)) => i,
            _ => {
                let mut arrows = p.arrows.clone();
                arrows.extend(&s.arrows);
                match basis.index.get(&path_label(q, &Path { vertex: None, arrows })) {
                    Some(&k) => k,
                    None => return Vec::new(),
                }
            }
        };
        vec![(prod, field.one())]
    })?;
    Ok((alg, basis))
}

/// Level `n` is `kQ / (I + (arrows)^n)` on paths of length `< n` modulo the relations;
/// maps are induced by truncation.
pub fn path_algebra_tower(q: &QuiverSpec, field: &Field, depth: usize) -> Result<Tower> {
    check_depth(depth)?;
    let resolved = resolve(q, field)?;
    let mut levels = Vec::with_capacity(depth);
    // Per level we keep the truncated algebra with its path basis and projection.
    let mut stages = Vec::with_capacity(depth);
    for n in 1..=depth {
        let (t, basis) = truncated_path_algebra(q, &resolved, field, n)?;
        let gens: Vec<Vector> = resolved
            .relations
            .iter()
            .map(|rel| {
                let mut v = t.zero();
                for (c, arrows) in rel {
                    let label = path_label(q, &Path { vertex: None, arrows: arrows.clone() });
                    if let Some(&k) = basis.index.get(&label) {
                        v[k] = field.add(&v[k], c);
                    }
                }
                v
            })
            .collect();
        let ideal = ideal_closure(&t, &gens, Side::TwoSided)?;
        let quo = quotient(&t, &ideal)?;
        levels.push(quo.algebra.clone());
        stages.push((t, basis, quo));
    }
    let mut matrices = Vec::with_capacity(depth - 1);
    for n in 1..depth {
        let (_, lower_basis, lower_q) = &stages[n - 1];
        let (_, upper_basis, upper_q) = &stages[n];
        let cols: Vec<Vector> = upper_q
            .complement
            .iter()
            .map(|&c| {
                let label = &upper_basis.labels[c];
                let mut v = lower_q.projection.source().zero();
                if let Some(&k) = lower_basis.index.get(label) {
                    v[k] = field.one();
                }
                lower_q.projection.apply(&v)
            })
            .collect();
        matrices.push(Matrix::from_columns(field, levels[n - 1].dim(), &cols));
    }
    Tower::from_matrices(levels, matrices, TowerKind::Path { quiver: q.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerRadicalReport {
    pub radical_dims: Vec<usize>,
    pub nilpotency_indices: Vec<usize>,
}

/// Computes `J(A_n)` at every level and checks `φ_n(J(A_{n+1})) = J(A_n)`.
pub fn tower_radical_check(t: &Tower) -> Result<TowerRadicalReport> {
    let rads = t.levels.iter().map(radical).collect::<Result<Vec<_>>>()?;
    for (i, m) in t.maps.iter().enumerate() {
        let image = m.image_of(rads[i + 1].radical.space());
        if &image != rads[i].radical.space() {
            return Err(Error::TheoremViolation {
                level: i + 1,
                detail: format!(
                    "image of the radical has dim {}, radical has dim {}",
                    image.dim(),
                    rads[i].radical.dim()
                ),
            });
        }
    }
    Ok(TowerRadicalReport {
        radical_dims: rads.iter().map(|r| r.radical.dim()).collect(),
        nilpotency_indices: rads.iter().map(|r| r.nilpotency_index).collect(),
    })
}

/// Whether every level is semisimple.
pub fn tower_semisimple_check(t: &Tower) -> Result<bool> {
    for l in &t.levels {
        if !is_semisimple(l)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a path tower, checks that each level's radical is the ideal generated by the
/// arrows.
pub fn quiver_radical_check(t: &Tower) -> Result<bool> {
    let quiver = match &t.kind {
        TowerKind::Path { quiver } => quiver,
        _ => return Err(Error::BadSpec("not a path-algebra tower".into())),
    };
    for (i, level) in t.levels.iter().enumerate() {
        let gens: Vec<Vector> = quiver
            .arrows
            .iter()
            .filter_map(|a| level.labels().iter().position(|l| *l == a.name))
            .map(|k| level.basis_vector(k))
            .collect();
        let arrow_ideal = ideal_closure(level, &gens, Side::TwoSided)?;
        let rad = radical(level)?.radical;
        if arrow_ideal != rad {
            return Err(Error::TheoremViolation {
                level: i + 1,
                detail: format!("arrow ideal has dim {}, radical has dim {}", arrow_ideal.dim(), rad.dim()),
            });
        }
    }
    Ok(true)
}

/// Checks that `isos[n]: a.levels[n] → b.levels[n]` are isomorphisms commuting with the
/// connecting maps.
pub fn check_tower_isomorphism(a: &Tower, b: &Tower, isos: &[AlgHom]) -> Result<()> {
    if isos.len() != a.depth() || a.depth() != b.depth() {
        return Err(Error::BadSpec("one isomorphism per level".into()));
    }
    for (i, iso) in isos.iter().enumerate() {
        if iso.source() != &a.levels[i] || iso.target() != &b.levels[i] || !iso.is_isomorphism() {
            return Err(Error::TheoremViolation { level: i + 1, detail: "not an isomorphism of levels".into() });
        }
    }
    for i in 0..a.maps.len() {
        let down_then_across = a.maps[i].then(&isos[i])?;
        let across_then_down = isos[i + 1].then(&b.maps[i])?;
        if down_then_across != across_then_down {
            return Err(Error::TheoremViolation { level: i + 1, detail: "square does not commute".into() });
        }
    }
    Ok(())
}

/// The splitting of level `n` (1-based, `n < depth`) induced by a splitting of level
/// `n + 1`: `s_n(q) = φ_n(s_{n+1}(q'))` for any preimage `q'` of `q` in `A_{n+1}/J`.
pub fn induced_splitting(t: &Tower, n: usize, upper: &Splitting) -> Result<Splitting> {
    if n == 0 || n >= t.depth() {
        return Err(Error::BadSpec(format!("level {n} has no level above it")));
    }
    let lower = &t.levels[n - 1];
    let phi = &t.maps[n - 1];
    if &upper.algebra != phi.source() {
        return Err(Error::BadSplitting("splitting is not of the level above".into()));
    }
    let f = lower.field();
    let rad = radical(lower)?.radical;
    let lower_q = quotient(lower, &rad)?;
    // ψ: A_{n+1}/J → A_n/J, surjective.
    let uq = &upper.quotient;
    let psi_cols: Vec<Vector> = (0..uq.algebra.dim())
        .map(|t| lower_q.projection.apply(&phi.apply(&uq.lift(&uq.algebra.basis_vector(t)))))
        .collect();
    let psi = Matrix::from_columns(f, lower_q.algebra.dim(), &psi_cols);
    let mut images = Vec::with_capacity(lower_q.algebra.dim());
    for t in 0..lower_q.algebra.dim() {
        let pre = psi
            .solve_vec(&lower_q.algebra.basis_vector(t))?
            .ok_or_else(|| Error::TheoremViolation { level: n, detail: "quotient map is not surjective".into() })?;
        images.push(phi.apply(&upper.apply(&pre)));
    }
    Splitting::new(lower, &images)
}

/// Dimensions of all levels.
pub fn level_dims(t: &Tower) -> Vec<usize> {
    t.levels.iter().map(FinAlg::dim).collect()
}
