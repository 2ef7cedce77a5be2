//! The `pca` command line and its deterministic reports.
//!
//! Exit code 2 marks a negative mathematical answer, e.g. a non-separable algebra, and
//! the report is still printed. Anything that stops the computation exits 1.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pca_core::algebra::{product_space, quotient, FinAlg, Vector};
use pca_core::exactmath::{Field, Scalar};
use pca_core::format::{
    algebra_from_json, parse_field, parse_vector, quiver_from_json, splitting_from_json, splitting_to_json,
    tower_from_json, tower_to_json,
};
use pca_core::malcev::{check_ideal_lemma, malcev_conjugator, wedderburn_splitting_seeded, Splitting};
use pca_core::radical::{radical, radical_oracle};
use pca_core::separability::{is_separable, nilpotent_witness, sep_idempotent};
use pca_core::tower::{
    cyclic_group_tower, level_dims, path_algebra_tower, power_series_tower, product_tower, quiver_radical_check,
    tower_radical_check, tower_semisimple_check, TowerKind,
};
use pca_core::wedderburn::{center, central_idempotents_seeded};
use pca_core::Error;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Parser, Debug)]
#[command(name = "pca", version, about = "Structure of finite-dimensional algebras and their towers")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Re-run postcondition checks and record them under `verified`.
    #[arg(long, global = true)]
    verify: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobson radical and its power filtration.
    Radical {
        file: PathBuf,
        /// Cross-check against brute-force enumeration (finite fields, small algebras).
        #[arg(long)]
        oracle: bool,
    },
    /// Central idempotents and simple blocks of a semisimple algebra.
    Wedderburn { file: PathBuf },
    /// Whether the algebra is separable.
    Septest { file: PathBuf },
    /// A separability idempotent, as sparse tensor coefficients.
    Sepidem { file: PathBuf },
    /// Nilpotency index of an element.
    Nilpotent {
        file: PathBuf,
        /// Coordinates, comma separated, e.g. "0,1,0".
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// A Wedderburn-Malcev splitting of A -> A/J(A).
    Split {
        file: PathBuf,
        /// Also write the splitting document here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// An element w of J(A) with S1 = (1 - w) S2 (1 - w)^-1.
    Conjugate {
        file: PathBuf,
        #[arg(long)]
        s1: PathBuf,
        #[arg(long)]
        s2: PathBuf,
    },
    /// Build or check towers of finite-dimensional quotients.
    #[command(subcommand)]
    Tower(TowerCommand),
}

#[derive(Subcommand, Debug)]
enum TowerCommand {
    Build(BuildArgs),
    /// Radical, semisimplicity and quiver checks at every level.
    Check {
        file: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Powerseries,
    Cyclicgroup,
    Path,
    Product,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Field, e.g. Q, F_3, or a JSON field document.
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long)]
    depth: usize,
    /// The prime for cyclic group towers.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Algebra files, one per factor of a product tower.
    #[arg(long = "factor")]
    factors: Vec<PathBuf>,
    #[arg(short, long)]
    output: PathBuf,
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub results: Map<String, Value>,
    pub verified: Map<String, Value>,
}

impl Report {
    fn new(command: &str, digest: String) -> Report {
        Report { command: command.into(), input_digest: digest, results: Map::new(), verified: Map::new() }
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.into(), v.into());
    }

    fn check(&mut self, key: &str, ok: bool) {
        self.verified.insert(key.into(), Value::Bool(ok));
    }

    fn all_verified(&self) -> bool {
        self.verified.values().all(|v| v.as_bool() == Some(true))
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "input_digest": self.input_digest,
            "results": self.results,
            "verified": self.verified,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    /// Indented `key: value` text; keys come out sorted because the maps are.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Value::Object(m) = self.to_value() {
            render_map(&m, 0, &mut out);
        }
        out
    }
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(m) => m.is_empty(),
        _ => true,
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(leaf).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

fn render_map(m: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (k, v) in m {
        if is_leaf(v) {
            out.push_str(&format!("{pad}{k}: {}\n", leaf(v)));
        } else {
            out.push_str(&format!("{pad}{k}:\n"));
            render_value(v, depth + 1, out);
        }
    }
}

fn render_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => render_map(m, depth, out),
        Value::Array(xs) => {
            for x in xs {
                if is_leaf(x) {
                    out.push_str(&format!("{pad}- {}\n", leaf(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_value(x, depth + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", leaf(other))),
    }
}

/// Exit code, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let verify = cli.verify || cfg!(debug_assertions);
    match dispatch(&cli, verify) {
        Ok((report, negative)) => {
            let stdout = if cli.json { report.to_json() } else { report.to_text() };
            if !report.all_verified() {
                return Outcome { code: 1, stdout, stderr: "error: a postcondition check failed\n".into() };
            }
            Outcome { code: if negative { 2 } else { 0 }, stdout, stderr: String::new() }
        }
        Err(msg) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

type Dispatch = std::result::Result<(Report, bool), String>;

fn read(path: &Path) -> std::result::Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// `sha256:` of the inputs, each length-prefixed so boundaries are unambiguous.
fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    format!("sha256:{:x}", h.finalize())
}

fn load_algebra(path: &Path) -> std::result::Result<(FinAlg, String), String> {
    let text = read(path)?;
    let alg = algebra_from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((alg, text))
}

fn fmt_vec(f: &Field, v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(f.format(x))).collect())
}

fn fmt_vecs(f: &Field, vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| fmt_vec(f, v)).collect())
}

fn err(e: Error) -> String {
    e.to_string()
}

fn dispatch(cli: &Cli, verify: bool) -> Dispatch {
    match &cli.command {
        Command::Radical { file, oracle } => cmd_radical(file, *oracle, verify),
        Command::Wedderburn { file } => cmd_wedderburn(file, cli.seed, verify),
        Command::Septest { file } => cmd_septest(file, verify),
        Command::Sepidem { file } => cmd_sepidem(file),
        Command::Nilpotent { file, element } => cmd_nilpotent(file, element),
        Command::Split { file, output } => cmd_split(file, output.as_deref(), cli.seed, verify),
        Command::Conjugate { file, s1, s2 } => cmd_conjugate(file, s1, s2, verify),
        Command::Tower(TowerCommand::Build(args)) => cmd_tower_build(args),
        Command::Tower(TowerCommand::Check { file }) => cmd_tower_check(file),
    }
}

fn cmd_radical(file: &Path, oracle: bool, verify: bool) -> Dispatch {
    let (alg, text) = load_algebra(file)?;
    let f = alg.field();
    let r = radical(&alg).map_err(err)?;
    let mut rep = Report::new("radical", digest(&[text.as_bytes()]));
    rep.set("field", f.to_string());
    rep.set("algebra_dim", alg.dim());
    rep.set("dim", r.radical.dim());
    rep.set("basis", fmt_vecs(f, &r.radical.vectors()));
    rep.set("nilpotency_index", r.nilpotency_index);
    rep.set("method", r.method.as_str());
    rep.set("filtration_dims", r.filtration.iter().map(|i| i.dim()).collect::<Vec<_>>());
    rep.check("postconditions", true);
    if verify {
        let j = r.radical.space();
        let mut power = j.clone();
        for _ in 1..r.nilpotency_index.max(1) {
            power = product_space(&alg, &power, j);
        }
        rep.check("nilpotent", r.nilpotency_index == 0 || power.is_zero());
        let semisimple_quotient = if r.radical.dim() == alg.dim() {
            true
        } else {
            let q = quotient(&alg, &r.radical).map_err(err)?;
            radical(&q.algebra).map_err(err)?.radical.is_zero()
        };
        rep.check("quotient_semisimple", semisimple_quotient);
    }
    if oracle {
        let o = radical_oracle(&alg).map_err(err)?;
        rep.check("oracle_agrees", o.space() == r.radical.space());
    }
    Ok((rep, false))
}

fn cmd_wedderburn(file: &Path, seed: u64, verify: bool) -> Dispatch {
    let (alg, text) = load_algebra(file)?;
    let f = alg.field();
    let mut rep = Report::new("wedderburn", digest(&[text.as_bytes()]));
    rep.set("field", f.to_string());
    rep.set("seed", seed);
    let d = match central_idempotents_seeded(&alg, seed) {
        Ok(d) => d,
        Err(Error::NotSemisimple) => {
            rep.set("semisimple", false);
            rep.set("radical_dim", radical(&alg).map_err(err)?.radical.dim());
            return Ok((rep, true));
        }
        Err(e) => return Err(err(e)),
    };
    rep.set("semisimple", true);
    rep.set("center_dim", center(&alg).dim());
    let blocks: Vec<Value> = d
        .block_data
        .iter()
        .map(|b| {
            let mut m = Map::new();
            m.insert("dim".into(), b.total_dim.into());
            m.insert("center_dim".into(), b.center_dim.into());
            if let Some(n) = b.matrix_degree {
                m.insert("matrix_degree".into(), n.into());
            }
            Value::Object(m)
        })
        .collect();
    rep.set("blocks", blocks);
    rep.set("idempotents", fmt_vecs(f, &d.idempotents));
    if verify {
        rep.check("reassembly_isomorphism", d.reassembly(&alg).map(|h| h.is_isomorphism()).unwrap_or(false));
        let sum = d.idempotents.iter().fold(alg.zero(), |acc, e| alg.add(&acc, e));
        rep.check("idempotents_sum_to_one", &sum == alg.unit());
        let orthogonal = d.idempotents.iter().enumerate().all(|(i, e)| {
            d.idempotents.iter().enumerate().all(|(j, g)| {
                let eg = alg.mul(e, g);
                if i == j {
                    &eg == e
                } else {
                    alg.is_zero(&eg)
                }
            })
        });
        rep.check("orthogonal_idempotents", orthogonal);
    }
    Ok((rep, false))
}

fn cmd_septest(file: &Path, verify: bool) -> Dispatch {
    let (alg, text) = load_algebra(file)?;
    let mut rep = Report::new("septest", digest(&[text.as_bytes()]));
    rep.set("field", alg.field().to_string());
    let sep = is_separable(&alg).map_err(err)?;
    rep.set("separable", sep);
    rep.set("answer", if sep { "Separable" } else { "NotSeparable" });
    if verify {
        rep.check("idempotent_agrees", sep_idempotent(&alg).map_err(err)?.is_some() == sep);
    }
    Ok((rep, !sep))
}

fn cmd_sepidem(file: &Path) -> Dispatch {
    let (alg, text) = load_algebra(file)?;
    let f = alg.field();
    let mut rep = Report::new("sepidem", digest(&[text.as_bytes()]));
    rep.set("field", f.to_string());
    match sep_idempotent(&alg).map_err(err)? {
        Some(p) => {
            let terms: Vec<Value> = p.sparse().iter().map(|(i, j, c)| json!([i, j, f.format(c)])).collect();
            rep.set("separable", true);
            rep.set("nonzero_terms", terms.len());
            rep.set("terms", terms);
            // SepIdempotent::new already checked m(p) = 1 and ap = pa.
            rep.check("multiplication_is_one", true);
            rep.check("commutes_with_basis", true);
            Ok((rep, false))
        }
        None => {
            rep.set("separable", false);
            rep.set("answer", "NotSeparable");
            Ok((rep, true))
        }
    }
}

fn cmd_nilpotent(file: &Path, element: &str) -> Dispatch {
    let (alg, text) = load_algebra(file)?;
    let f = alg.field();
    let x = parse_vector(f, alg.dim(), element).map_err(err)?;
    let mut rep = Report::new("nilpotent", digest(&[text.as_bytes(), element.as_bytes()]));
    rep.set("element", fmt_vec(f, &x));
    let idx = nilpotent_witness(&alg, &x);
    rep.set("nilpotent", idx.is_some());
    rep.set("index", idx.map_or(Value::Null, Value::from));
    Ok((rep, idx.is_none()))
}

fn cmd_split(file: &Path, output: Option<&Path>, seed: u64, verify: bool) -> Dispatch {
    let (alg, text) = load_algebra(file)?;
    let f = alg.field();
    let mut rep = Report::new("split", digest(&[text.as_bytes()]));
    rep.set("field", f.to_string());
    rep.set("seed", seed);
    let s = match wedderburn_splitting_seeded(&alg, seed) {
        Ok(s) => s,
        Err(e @ Error::NotSeparableQuotient) => {
            rep.set("answer", "NotSeparable");
            rep.set("reason", e.to_string());
            return Ok((rep, true));
        }
        Err(e) => return Err(err(e)),
    };
    rep.set("radical_dim", s.radical.dim());
    rep.set("quotient_dim", s.quotient.algebra.dim());
    rep.set("section", fmt_vecs(f, &s.images()));
    rep.set("s_basis", fmt_vecs(f, &s.image_basis.vectors()));
    if verify {
        rep.check("section_valid", Splitting::new(&alg, &s.images()).is_ok());
        rep.check("radical_ideal_lemma", check_ideal_lemma(&s, &s.radical).map_err(err)?);
    }
    if let Some(out) = output {
        std::fs::write(out, splitting_to_json(&s)).map_err(|e| format!("{}: {e}", out.display()))?;
    }
    Ok((rep, false))
}

fn cmd_conjugate(file: &Path, s1: &Path, s2: &Path, verify: bool) -> Dispatch {
    let (alg, text) = load_algebra(file)?;
    let f = alg.field();
    let (t1, t2) = (read(s1)?, read(s2)?);
    let sp1 = splitting_from_json(&alg, &t1).map_err(|e| format!("{}: {e}", s1.display()))?;
    let sp2 = splitting_from_json(&alg, &t2).map_err(|e| format!("{}: {e}", s2.display()))?;
    let omega = malcev_conjugator(&sp1, &sp2).map_err(err)?;
    let mut rep = Report::new("conjugate", digest(&[text.as_bytes(), t1.as_bytes(), t2.as_bytes()]));
    rep.set("omega", fmt_vec(f, &omega));
    rep.set("omega_in_radical", sp1.radical.contains(&omega));
    if verify {
        let u = alg.sub(alg.unit(), &omega);
        let ok = (0..sp1.quotient.algebra.dim()).all(|t| {
            let x = sp1.quotient.algebra.basis_vector(t);
            alg.mul(&sp1.apply(&x), &u) == alg.mul(&u, &sp2.apply(&x))
        });
        rep.check("conjugation", ok);
        rep.check("omega_in_radical", sp1.radical.contains(&omega));
    }
    Ok((rep, false))
}

fn cmd_tower_build(a: &BuildArgs) -> Dispatch {
    let field = parse_field(&a.field).map_err(err)?;
    let mut parts: Vec<Vec<u8>> = vec![
        format!("{:?}", a.kind).into_bytes(),
        field.to_string().into_bytes(),
        a.depth.to_string().into_bytes(),
        a.p.map(|p| p.to_string()).unwrap_or_default().into_bytes(),
    ];
    let tower = match a.kind {
        Kind::Powerseries => power_series_tower(&field, a.depth),
        Kind::Cyclicgroup => {
            let p = a.p.ok_or("--p is required for cyclic group towers")?;
            cyclic_group_tower(p, &field, a.depth)
        }
        Kind::Path => {
            let path = a.quiver.as_ref().ok_or("--quiver is required for path towers")?;
            let text = read(path)?;
            let q = quiver_from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            parts.push(text.into_bytes());
            path_algebra_tower(&q, &field, a.depth)
        }
        Kind::Product => {
            if a.factors.is_empty() {
                return Err("--factor is required for product towers".into());
            }
            let mut algs = Vec::new();
            for path in &a.factors {
                let (alg, text) = load_algebra(path)?;
                if alg.field() != &field {
                    return Err(format!("{}: factor is over {}, not {field}", path.display(), alg.field()));
                }
                algs.push(alg);
                parts.push(text.into_bytes());
            }
            product_tower(&algs, a.depth)
        }
    }
    .map_err(err)?;
    let out = tower_to_json(&tower);
    std::fs::write(&a.output, &out).map_err(|e| format!("{}: {e}", a.output.display()))?;
    let refs: Vec<&[u8]> = parts.iter().map(Vec::as_slice).collect();
    let mut rep = Report::new("tower build", digest(&refs));
    rep.set("kind", tower.kind().tag());
    rep.set("field", field.to_string());
    rep.set("depth", tower.depth());
    rep.set("level_dims", level_dims(&tower));
    rep.set("output_digest", digest(&[out.as_bytes()]));
    Ok((rep, false))
}

fn cmd_tower_check(file: &Path) -> Dispatch {
    let text = read(file)?;
    let tower = tower_from_json(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let mut rep = Report::new("tower check", digest(&[text.as_bytes()]));
    rep.set("kind", tower.kind().tag());
    rep.set("field", tower.field().to_string());
    rep.set("depth", tower.depth());
    rep.set("level_dims", level_dims(&tower));
    let r = tower_radical_check(&tower).map_err(err)?;
    rep.set("radical_dims", r.radical_dims);
    rep.set("nilpotency_indices", r.nilpotency_indices);
    rep.check("radical_maps_onto_radical", true);
    rep.set("semisimple_levels", tower_semisimple_check(&tower).map_err(err)?);
    if matches!(tower.kind(), TowerKind::Path { .. }) {
        rep.check("radical_is_arrow_ideal", quiver_radical_check(&tower).map_err(err)?);
    }
    Ok((rep, false))
}
