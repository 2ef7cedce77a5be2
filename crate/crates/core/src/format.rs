//! JSON documents for algebras, splittings, quivers and towers.
//!
//! Scalars are written in the canonical text syntax of [`Field::format`], so a document
//! survives parse → serialize → parse unchanged.

use serde::{Deserialize, Serialize};

use crate::algebra::{FinAlg, Vector};
use crate::error::{Error, Result};
use crate::exactmath::{Field, FieldKind, Matrix, Scalar};
use crate::malcev::Splitting;
use crate::tower::{Arrow, QuiverSpec, Relation, Tower, TowerKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDoc {
    Rationals,
    Prime { p: u64 },
    Ratfunc { p: u64 },
    Extension { base: Box<FieldDoc>, minpoly: Vec<String> },
}

impl FieldDoc {
    pub fn from_field(f: &Field) -> FieldDoc {
        match f.kind() {
            FieldKind::Rationals => FieldDoc::Rationals,
            FieldKind::Prime(p) => FieldDoc::Prime { p: *p },
            FieldKind::RationalFunctions(p) => FieldDoc::Ratfunc { p: *p },
            FieldKind::Extension { base, minpoly, .. } => FieldDoc::Extension {
                base: Box::new(FieldDoc::from_field(base)),
                minpoly: minpoly.iter().map(|c| base.format(c)).collect(),
            },
        }
    }

    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldDoc::Rationals => Ok(Field::rationals()),
            FieldDoc::Prime { p } => Field::prime(*p),
            FieldDoc::Ratfunc { p } => Field::rational_functions(*p),
            FieldDoc::Extension { base, minpoly } => {
                let base = base.to_field()?;
                let coeffs = minpoly.iter().map(|c| base.parse(c)).collect::<Result<Vec<_>>>()?;
                Field::extension(&base, &coeffs)
            }
        }
    }
}

/// Parses a field descriptor given as JSON (`{"kind":"prime","p":3}`) or in the short
/// forms `Q`, `F_p`/`Fp`, `F_p(t)`.
pub fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    if t.starts_with('{') {
        let doc: FieldDoc = serde_json::from_str(t).map_err(|e| Error::Parse(format!("field: {e}")))?;
        return doc.to_field();
    }
    if t == "Q" || t == "QQ" {
        return Ok(Field::rationals());
    }
    let rest = t.strip_prefix("F_").or_else(|| t.strip_prefix('F'));
    if let Some(rest) = rest {
        if let Some(p) = rest.strip_suffix("(t)") {
            let p = p.parse().map_err(|_| Error::Parse(format!("field {t:?}")))?;
            return Field::rational_functions(p);
        }
        let p = rest.parse().map_err(|_| Error::Parse(format!("field {t:?}")))?;
        return Field::prime(p);
    }
    Err(Error::Parse(format!("unrecognized field {t:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub field: FieldDoc,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    pub mult: Vec<(usize, usize, usize, String)>,
}

impl AlgebraDoc {
    pub fn from_algebra(a: &FinAlg) -> AlgebraDoc {
        let f = a.field();
        AlgebraDoc {
            field: FieldDoc::from_field(f),
            dim: a.dim(),
            basis: a.labels().to_vec(),
            unit: a.unit().iter().map(|c| f.format(c)).collect(),
            mult: a.entries().into_iter().map(|(i, j, k, c)| (i, j, k, f.format(&c))).collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<FinAlg> {
        let f = self.field.to_field()?;
        if self.basis.len() != self.dim || self.unit.len() != self.dim {
            return Err(Error::Parse(format!(
                "dim {} but {} labels and {} unit coordinates",
                self.dim,
                self.basis.len(),
                self.unit.len()
            )));
        }
        let unit = parse_scalars(&f, &self.unit)?;
        let entries = self.mult.iter().map(|(i, j, k, c)| Ok((*i, *j, *k, f.parse(c)?))).collect::<Result<Vec<_>>>()?;
        FinAlg::new(&f, self.basis.clone(), entries, Some(unit))
    }
}

fn parse_scalars(f: &Field, items: &[String]) -> Result<Vector> {
    items.iter().map(|c| f.parse(c)).collect()
}

fn format_scalars(f: &Field, v: &[Scalar]) -> Vec<String> {
    v.iter().map(|c| f.format(c)).collect()
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

fn from_json<'a, T: Deserialize<'a>>(what: &str, text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn algebra_to_json(a: &FinAlg) -> String {
    to_json(&AlgebraDoc::from_algebra(a))
}

pub fn algebra_from_json(text: &str) -> Result<FinAlg> {
    from_json::<AlgebraDoc>("algebra", text)?.to_algebra()
}

/// A coordinate vector written as comma-separated scalars, optionally in brackets
/// (brackets are required over extension fields).
pub fn parse_vector(f: &Field, dim: usize, text: &str) -> Result<Vector> {
    let t = text.trim();
    let inner = match (t.strip_prefix('[').and_then(|s| s.strip_suffix(']')), f.kind()) {
        (Some(inner), _) => inner,
        (None, FieldKind::Extension { .. }) => {
            return Err(Error::Parse("vectors over extension fields need outer brackets".into()))
        }
        (None, _) => t,
    };
    let parts: Vec<&str> =
        crate::exactmath::field::split_top_level(inner, ',').into_iter().map(|p| p.trim().trim_matches('"')).collect();
    if parts.len() != dim {
        return Err(Error::Parse(format!("vector has {} entries, expected {dim}", parts.len())));
    }
    parts.iter().map(|p| f.parse(p)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplittingDoc {
    /// Image of each basis element of `A/J(A)` (canonical quotient basis).
    pub images: Vec<Vec<String>>,
}

pub fn splitting_to_json(s: &Splitting) -> String {
    let f = s.algebra.field();
    to_json(&SplittingDoc { images: s.images().iter().map(|v| format_scalars(f, v)).collect() })
}

pub fn splitting_from_json(alg: &FinAlg, text: &str) -> Result<Splitting> {
    let doc: SplittingDoc = from_json("splitting", text)?;
    let images = doc.images.iter().map(|v| parse_scalars(alg.field(), v)).collect::<Result<Vec<_>>>()?;
    if images.iter().any(|v| v.len() != alg.dim()) {
        return Err(Error::Parse(format!("splitting images must have length {}", alg.dim())));
    }
    Splitting::new(alg, &images)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub relations: Vec<RelationDoc>,
}

impl QuiverDoc {
    pub fn from_quiver(q: &QuiverSpec) -> QuiverDoc {
        QuiverDoc {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowDoc { name: a.name.clone(), src: a.source.clone(), tgt: a.target.clone() })
                .collect(),
            relations: q
                .relations
                .iter()
                .map(|r| RelationDoc {
                    terms: r.terms.iter().map(|(c, p)| TermDoc { coeff: c.clone(), path: p.clone() }).collect(),
                })
                .collect(),
        }
    }

    pub fn to_quiver(&self) -> QuiverSpec {
        QuiverSpec {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.src.clone(), target: a.tgt.clone() })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation { terms: r.terms.iter().map(|t| (t.coeff.clone(), t.path.clone())).collect() })
                .collect(),
        }
    }
}

pub fn quiver_to_json(q: &QuiverSpec) -> String {
    to_json(&QuiverDoc::from_quiver(q))
}

pub fn quiver_from_json(text: &str) -> Result<QuiverSpec> {
    Ok(from_json::<QuiverDoc>("quiver", text)?.to_quiver())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverDoc>,
    pub levels: Vec<AlgebraDoc>,
    /// `maps[i]` is the matrix (rows) of the map from level `i + 2` onto level `i + 1`.
    pub maps: Vec<Vec<Vec<String>>>,
}

pub fn tower_to_json(t: &Tower) -> String {
    let f = t.field();
    let (p, quiver) = match t.kind() {
        TowerKind::CyclicGroup { p } => (Some(*p), None),
        TowerKind::Path { quiver } => (None, Some(QuiverDoc::from_quiver(quiver))),
        _ => (None, None),
    };
    to_json(&TowerDoc {
        kind: t.kind().tag().to_string(),
        p,
        quiver,
        levels: t.levels().iter().map(AlgebraDoc::from_algebra).collect(),
        maps: t
            .maps()
            .iter()
            .map(|m| m.matrix().row_vectors().iter().map(|r| format_scalars(f, r)).collect())
            .collect(),
    })
}

pub fn tower_from_json(text: &str) -> Result<Tower> {
    let doc: TowerDoc = from_json("tower", text)?;
    let kind = match (doc.kind.as_str(), doc.p, &doc.quiver) {
        ("powerseries", None, None) => TowerKind::PowerSeries,
        ("cyclicgroup", Some(p), None) => TowerKind::CyclicGroup { p },
        ("path", None, Some(q)) => TowerKind::Path { quiver: q.to_quiver() },
        ("product", None, None) => TowerKind::Product,
        ("custom", None, None) => TowerKind::Custom,
        (k, _, _) => return Err(Error::Parse(format!("tower kind {k:?} with mismatched metadata"))),
    };
    let levels = doc.levels.iter().map(AlgebraDoc::to_algebra).collect::<Result<Vec<_>>>()?;
    let Some(first) = levels.first() else {
        return Err(Error::Parse("tower without levels".into()));
    };
    let f = first.field().clone();
    let mut matrices = Vec::with_capacity(doc.maps.len());
    for (i, rows) in doc.maps.iter().enumerate() {
        let cols = levels.get(i + 1).map_or(0, FinAlg::dim);
        let rows = rows
            .iter()
            .map(|r| {
                if r.len() != cols {
                    return Err(Error::Parse(format!("map {} rows must have {cols} entries", i + 1)));
                }
                parse_scalars(&f, r)
            })
            .collect::<Result<Vec<_>>>()?;
        matrices.push(Matrix::from_rows(&f, cols, rows));
    }
    Tower::from_matrices(levels, matrices, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, matrix_algebra, upper_triangular};
    use crate::malcev::wedderburn_splitting;
    use crate::tower::{cyclic_group_tower, path_algebra_tower};

    #[test]
    fn algebra_round_trip() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::extension(&f3, &[f3.one(), f3.zero(), f3.one()]).unwrap();
        let ft = Field::rational_functions(2).unwrap();
        let algs = vec![
            upper_triangular(2, &Field::rationals()).unwrap(),
            matrix_algebra(2, &f3).unwrap(),
            group_algebra(3, &f9).unwrap(),
            group_algebra(2, &ft).unwrap(),
        ];
        for a in algs {
            let text = algebra_to_json(&a);
            let back = algebra_from_json(&text).unwrap();
            assert_eq!(back, a);
            assert_eq!(algebra_to_json(&back), text);
        }
    }

    #[test]
    fn algebra_document_shape() {
        let a = group_algebra(2, &Field::prime(2).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&algebra_to_json(&a)).unwrap();
        assert_eq!(v["field"], serde_json::json!({"kind": "prime", "p": 2}));
        assert_eq!(v["mult"][3], serde_json::json!([1, 1, 0, "1"]));
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(algebra_from_json("{"), Err(Error::Parse(_))));
        let bad = r#"{"field":{"kind":"rationals"},"dim":2,"basis":["a"],"unit":["1","0"],"mult":[]}"#;
        assert!(matches!(algebra_from_json(bad), Err(Error::Parse(_))));
        // (aa)a = ba = a but a(aa) = ab = 0.
        let nonassoc = r#"{"field":{"kind":"rationals"},"dim":3,"basis":["1","a","b"],"unit":["1","0","0"],
            "mult":[[0,0,0,"1"],[0,1,1,"1"],[0,2,2,"1"],[1,0,1,"1"],[2,0,2,"1"],[1,1,2,"1"],[2,1,1,"1"]]}"#;
        assert!(matches!(algebra_from_json(nonassoc), Err(Error::NotAssociative(..))));
        let nounit = r#"{"field":{"kind":"rationals"},"dim":1,"basis":["x"],"unit":["1"],"mult":[]}"#;
        assert!(algebra_from_json(nounit).is_err());
    }

    #[test]
    fn field_short_forms() {
        assert_eq!(parse_field("Q").unwrap(), Field::rationals());
        assert_eq!(parse_field("F_5").unwrap(), Field::prime(5).unwrap());
        assert_eq!(parse_field("F2(t)").unwrap(), Field::rational_functions(2).unwrap());
        assert_eq!(parse_field(r#"{"kind":"prime","p":7}"#).unwrap(), Field::prime(7).unwrap());
        assert!(parse_field("F_4").is_err());
    }

    #[test]
    fn vectors() {
        let q = Field::rationals();
        assert_eq!(parse_vector(&q, 2, "[1, -1/2]").unwrap(), vec![q.one(), q.parse("-1/2").unwrap()]);
        assert_eq!(parse_vector(&q, 2, "1,0").unwrap(), vec![q.one(), q.zero()]);
        assert!(parse_vector(&q, 3, "1,0").is_err());
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::extension(&f3, &[f3.one(), f3.zero(), f3.one()]).unwrap();
        let v = parse_vector(&f9, 2, "[[0,1],1]").unwrap();
        assert_eq!(v, vec![f9.generator().unwrap(), f9.one()]);
    }

    #[test]
    fn splitting_round_trip() {
        let t = upper_triangular(2, &Field::rationals()).unwrap();
        let s = wedderburn_splitting(&t).unwrap();
        let text = splitting_to_json(&s);
        assert_eq!(splitting_from_json(&t, &text).unwrap(), s);
    }

    #[test]
    fn tower_round_trip() {
        let q = Field::rationals();
        let f2 = Field::prime(2).unwrap();
        let mut quiver = QuiverSpec::kronecker();
        quiver.relations.clear();
        for t in [cyclic_group_tower(2, &f2, 3).unwrap(), path_algebra_tower(&quiver, &q, 3).unwrap()] {
            let text = tower_to_json(&t);
            let back = tower_from_json(&text).unwrap();
            assert_eq!(back, t);
            assert_eq!(tower_to_json(&back), text);
        }
        let qtext = quiver_to_json(&quiver);
        assert_eq!(quiver_from_json(&qtext).unwrap(), quiver);
    }
}
