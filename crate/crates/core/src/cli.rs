//! Command-line front end: JSON documents, subcommands and reports.
//!
//! Documents carry `"schema": 1`. Graphs:
//! `{"schema":1,"mode":"vertex","vertices":["0","1"],"edges":[["0","1"],["1","0"]]}`,
//! with a third label entry per edge in edge mode. Substitutions:
//! `{"schema":1,"alphabet":["a","b"],"images":{"a":["ab","ba"],"b":["a"]}}`,
//! where `alphabet` is optional (defaults to the sorted keys) and image
//! words over multi-character symbols are comma separated. Matrices:
//! `{"schema":1,"matrix":[[1,1],[1,0]]}`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cyclesub;
use crate::digraph::Digraph;
use crate::entropy::{self, EntropyEstimate};
use crate::error::{invalid, Error, Result};
use crate::fixtures;
use crate::matrix::{matrix_classify, perron_eigenvalue, ZeroOneMatrix};
use crate::randsub::{Limits, RandomSubstitution};
use crate::sft::{ComplexityProfile, Sft};
use crate::words::{Alphabet, WordSet};

pub const SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub schema: u32,
    pub mode: String,
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionDoc {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    pub images: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub schema: u32,
    pub matrix: Vec<Vec<u8>>,
}

fn json_error(what: &str, e: serde_json::Error) -> Error {
    Error::Invalid(format!("{what} document, line {} column {}: {e}", e.line(), e.column()))
}

fn check_schema(schema: u32, what: &str) -> Result<()> {
    if schema != SCHEMA {
        return invalid(format!("{what} document has schema {schema}, expected {SCHEMA}"));
    }
    Ok(())
}

pub fn parse_graph(doc: &str) -> Result<Digraph> {
    let d: GraphDoc = serde_json::from_str(doc).map_err(|e| json_error("graph", e))?;
    check_schema(d.schema, "graph")?;
    let vertices = Alphabet::new(d.vertices.clone())?;
    let vertex = |i: usize, name: &str| {
        vertices
            .letter(name)
            .map(|l| l.index())
            .ok_or_else(|| Error::Invalid(format!("edges[{i}]: unknown vertex {name:?}")))
    };
    match d.mode.as_str() {
        "vertex" => {
            let mut edges = Vec::new();
            for (i, e) in d.edges.iter().enumerate() {
                if e.len() != 2 {
                    return invalid(format!("edges[{i}]: vertex mode edges are [source, target]"));
                }
                edges.push((vertex(i, &e[0])?, vertex(i, &e[1])?));
            }
            Digraph::vertex_shift(vertices, &edges)
        }
        "edge" => {
            let mut edges = Vec::new();
            for (i, e) in d.edges.iter().enumerate() {
                if e.len() != 3 {
                    return invalid(format!("edges[{i}]: edge mode edges are [source, target, label]"));
                }
                edges.push((vertex(i, &e[0])?, vertex(i, &e[1])?, e[2].clone()));
            }
            Digraph::edge_shift(vertices, &edges)
        }
        other => invalid(format!("mode: expected \"vertex\" or \"edge\", got {other:?}")),
    }
}

pub fn graph_doc(g: &Digraph) -> GraphDoc {
    let v = g.vertices();
    GraphDoc {
        schema: SCHEMA,
        mode: g.mode().as_str().to_string(),
        vertices: v.symbols().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|e| {
                let mut row = vec![
                    v.symbols()[e.source].clone(),
                    v.symbols()[e.target].clone(),
                ];
                row.extend(e.label.clone());
                row
            })
            .collect(),
    }
}

pub fn emit_graph(g: &Digraph) -> String {
    serde_json::to_string_pretty(&graph_doc(g)).expect("serializable")
}

pub fn parse_substitution(doc: &str) -> Result<RandomSubstitution> {
    let d: SubstitutionDoc = serde_json::from_str(doc).map_err(|e| json_error("substitution", e))?;
    check_schema(d.schema, "substitution")?;
    let names = d.alphabet.clone().unwrap_or_else(|| d.images.keys().cloned().collect());
    let alphabet = Alphabet::new(names)?;
    if d.images.len() != alphabet.size() || d.images.keys().any(|k| alphabet.letter(k).is_none()) {
        return invalid("images: keys must be exactly the alphabet");
    }
    let mut sets = Vec::with_capacity(alphabet.size());
    for name in alphabet.symbols() {
        let list = &d.images[name];
        if list.is_empty() {
            return invalid(format!("images.{name}: empty image list"));
        }
        let mut set = WordSet::new();
        for w in list {
            if w.is_empty() {
                return invalid(format!("images.{name}: empty image word"));
            }
            let word = alphabet
                .parse_word(w)
                .map_err(|e| Error::Invalid(format!("images.{name}: {e}")))?;
            set.insert(word);
        }
        sets.push(set);
    }
    RandomSubstitution::new(alphabet, sets)
}

pub fn substitution_doc(s: &RandomSubstitution) -> SubstitutionDoc {
    let a = s.alphabet();
    let sorted: Vec<String> = {
        let mut v = a.symbols().to_vec();
        v.sort();
        v
    };
    SubstitutionDoc {
        schema: SCHEMA,
        alphabet: (sorted != a.symbols()).then(|| a.symbols().to_vec()),
        images: a
            .letters()
            .map(|l| (a.symbol(l).to_string(), s.images(l).render(a)))
            .collect(),
    }
}

pub fn emit_substitution(s: &RandomSubstitution) -> String {
    serde_json::to_string_pretty(&substitution_doc(s)).expect("serializable")
}

pub fn parse_matrix(doc: &str) -> Result<ZeroOneMatrix> {
    let d: MatrixDoc = serde_json::from_str(doc).map_err(|e| json_error("matrix", e))?;
    check_schema(d.schema, "matrix")?;
    ZeroOneMatrix::from_rows(&d.matrix)
}

#[derive(Debug, Parser)]
#[command(name = "subshift", version, about = "Shifts of finite type as random substitution subshifts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Largest word set any computation may build.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    pub max_set_size: usize,
    /// Include wall-clock timing in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph document path, `-` for stdin, or builtin: mickey, mickey-edge, golden.
    #[arg(long)]
    pub graph: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Vertex,
    Edge,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExtendMode {
    Product,
    Epsilon,
    Fractional,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cycle-substitution of a strongly connected graph.
    Cyclesub {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Compare the graph's SFT with its cycle-substitution.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Derivation witness for a cycle word read.
    Witness {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        word: String,
    },
    /// Exact legal words of a substitution.
    Language {
        /// Substitution document path, `-`, or builtin: random-fibonacci, full-shift, naive-sofic.
        #[arg(long)]
        sub: String,
        #[arg(long)]
        len: usize,
    },
    /// Finite-horizon entropy estimate.
    Entropy {
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        sub: Option<String>,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        max_len: usize,
    },
    /// Perron eigenvalue of an irreducible 0-1 matrix.
    Perron {
        /// Matrix document path, `-`, or builtin: golden.
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Gap shift complexity and entropy bound.
    Gapshift {
        #[arg(long)]
        min: usize,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        len: usize,
    },
    /// Entropy-changing extensions.
    Extend {
        #[arg(long, value_enum)]
        mode: ExtendMode,
        /// Base substitution (product and epsilon modes).
        #[arg(long)]
        sub: Option<String>,
        /// Copies per letter (product and fractional modes).
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Power of the base substitution (epsilon mode); smallest accepted power when omitted.
        #[arg(long)]
        n: Option<usize>,
        /// Fractional numerator.
        #[arg(long)]
        l: Option<usize>,
        /// Fractional denominator (image length).
        #[arg(long)]
        k: Option<usize>,
    },
}

/// Deterministic result document.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub args: Value,
    pub inputs_digest: String,
    pub result: Value,
    pub resource_cap: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invalid(_) => EXIT_USAGE,
        Error::ResourceCap { .. } => EXIT_CAP,
        Error::Precondition(_) | Error::NoConvergence { .. } | Error::WitnessStep { .. } => {
            EXIT_PRECONDITION
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Invalid(_) => "invalid",
        Error::ResourceCap { .. } => "resource_cap",
        Error::Precondition(_) => "precondition",
        Error::NoConvergence { .. } => "no_convergence",
        Error::WitnessStep { .. } => "witness_step",
    }
}

fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Error::Invalid(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("reading {path}: {e}")))
    }
}

fn load_graph(src: &str) -> Result<Digraph> {
    match src {
        "mickey" => Ok(fixtures::mickey()),
        "mickey-edge" => Ok(fixtures::mickey_edge()),
        "golden" => Ok(fixtures::golden()),
        path => parse_graph(&read_source(path)?),
    }
}

fn load_substitution(src: &str) -> Result<RandomSubstitution> {
    match src {
        "random-fibonacci" => Ok(fixtures::random_fibonacci()),
        "full-shift" => Ok(fixtures::full_shift_substitution()),
        "naive-sofic" => Ok(fixtures::naive_sofic_substitution()),
        path => parse_substitution(&read_source(path)?),
    }
}

fn load_matrix(src: &str) -> Result<ZeroOneMatrix> {
    match src {
        "golden" => Ok(fixtures::golden_matrix()),
        path => parse_matrix(&read_source(path)?),
    }
}

fn counts_json(p: &ComplexityProfile) -> Value {
    Value::Array(p.counts().iter().map(|c| json!(c.to_string())).collect())
}

fn estimate_json(e: &EntropyEstimate) -> Value {
    json!({"horizon": e.horizon, "sequence": e.sequence, "upper": e.upper})
}

/// Canonical input documents, hashed into the report.
struct Inputs(Vec<String>);

impl Inputs {
    fn digest(&self) -> String {
        let mut h = Sha256::new();
        for doc in &self.0 {
            h.update(doc.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())
    }
}

fn sub_json(s: &RandomSubstitution) -> Value {
    serde_json::to_value(substitution_doc(s)).expect("serializable")
}

/// Executes one parsed command.
pub fn run_command(cli: &Cli) -> Result<Report> {
    let start = Instant::now();
    let limits = Limits::new(cli.max_set_size);
    let mut inputs = Inputs(Vec::new());
    let (name, args, result) = match &cli.command {
        Command::Cyclesub { graph, mode } => {
            let g = load_graph(&graph.graph)?;
            inputs.0.push(emit_graph(&g));
            let s = match mode {
                Some(ModeArg::Vertex) => cyclesub::vertex_cycle_substitution(&g)?,
                Some(ModeArg::Edge) => cyclesub::edge_cycle_substitution(&g)?,
                None => cyclesub::cycle_substitution(&g)?,
            };
            let p = s.is_primitive();
            (
                "cyclesub",
                json!({"graph": graph.graph, "mode": g.mode().as_str()}),
                json!({"substitution": sub_json(&s), "primitive": p.primitive, "primitivity_exponent": p.witness_k}),
            )
        }
        Command::Verify { graph, max_len } => {
            let g = load_graph(&graph.graph)?;
            inputs.0.push(emit_graph(&g));
            let cmp = cyclesub::verify_language_equality(&g, *max_len, &limits)?;
            let first = cmp.first_divergence.as_ref().map(|d| {
                json!({"length": d.length, "word": g.alphabet().render(&d.word), "side": d.side.as_str()})
            });
            (
                "verify",
                json!({"graph": graph.graph, "max_len": max_len}),
                json!({"equal": cmp.equal, "max_length": cmp.max_length, "first_divergence": first, "divergence_count": cmp.divergences.len()}),
            )
        }
        Command::Witness { graph, word } => {
            let g = load_graph(&graph.graph)?;
            inputs.0.push(emit_graph(&g));
            let a = g.alphabet();
            let u = a.parse_word(word)?;
            let s = cyclesub::cycle_substitution(&g)?;
            let w = cyclesub::derivation_witness(&g, &u)?;
            let chain = cyclesub::replay_chain(&s, &w)?;
            let replayed = cyclesub::replay_witness(&s, &w)?;
            (
                "witness",
                json!({"graph": graph.graph, "word": word}),
                json!({
                    "root": a.symbol(w.root),
                    "depth": w.depth,
                    "steps": w.steps.iter().map(|st| json!({"position": st.position, "inserted": a.render(&st.inserted)})).collect::<Vec<_>>(),
                    "chain": chain.iter().map(|x| a.render(x)).collect::<Vec<_>>(),
                    "target": a.render(&w.target),
                    "replay_ok": replayed == u,
                }),
            )
        }
        Command::Language { sub, len } => {
            let s = load_substitution(sub)?;
            inputs.0.push(emit_substitution(&s));
            let t = s.language_upto(*len, &limits)?;
            let words: BTreeMap<String, Vec<String>> = (1..=*len)
                .map(|n| (n.to_string(), t.level(n).render(s.alphabet())))
                .collect();
            let c = t.certificate();
            (
                "language",
                json!({"sub": sub, "len": len}),
                json!({
                    "max_length": len,
                    "counts": counts_json(&t.complexity()),
                    "words": words,
                    "certificate": {"preperiod": c.preperiod, "period": c.period},
                }),
            )
        }
        Command::Entropy { sub, graph, max_len } => {
            let (profile, source) = match (sub, graph) {
                (Some(sub), _) => {
                    let s = load_substitution(sub)?;
                    inputs.0.push(emit_substitution(&s));
                    (s.complexity(*max_len, &limits)?, json!({"sub": sub}))
                }
                (None, Some(graph)) => {
                    let g = load_graph(graph)?;
                    inputs.0.push(emit_graph(&g));
                    let x = Sft::from_matrix(g.transition_matrix(), g.alphabet().clone())?;
                    (x.complexity(*max_len), json!({"graph": graph}))
                }
                (None, None) => return invalid("entropy needs --sub or --graph"),
            };
            let e = entropy::entropy_estimate(&profile)?;
            let mut args = source;
            args["max_len"] = json!(max_len);
            ("entropy", args, json!({"counts": counts_json(&profile), "estimate": estimate_json(&e)}))
        }
        Command::Perron { matrix, tol } => {
            let m = load_matrix(matrix)?;
            inputs.0.push(serde_json::to_string(&MatrixDoc { schema: SCHEMA, matrix: m.rows() }).expect("serializable"));
            let c = matrix_classify(&m);
            let rho = perron_eigenvalue(&m, *tol)?;
            (
                "perron",
                json!({"matrix": matrix, "tol": tol}),
                json!({"eigenvalue": rho, "log": rho.ln(), "irreducible": c.irreducible, "primitive": c.primitive, "primitivity_exponent": c.witness_power}),
            )
        }
        Command::Gapshift { min, max, len } => {
            let x = Sft::gap_shift(*min, *max)?;
            let p = x.original_complexity(*len);
            let e = entropy::entropy_estimate(&p)?;
            let bound = entropy::gap_shift_entropy_bound(*min, *max)?;
            (
                "gapshift",
                json!({"min": min, "max": max, "len": len}),
                json!({"counts": counts_json(&p), "estimate": estimate_json(&e), "bound": bound, "within_bound": e.upper <= bound}),
            )
        }
        Command::Extend { mode, sub, m, n, l, k } => {
            let need_sub = || -> Result<RandomSubstitution> {
                let src = sub.as_deref().ok_or_else(|| Error::Invalid("this mode needs --sub".into()))?;
                load_substitution(src)
            };
            let code_json = |c: &entropy::OneBlockCode| -> Value {
                let map: BTreeMap<&str, &str> = c
                    .domain()
                    .letters()
                    .map(|x| (c.domain().symbol(x), c.codomain().symbol(c.map_letter(x))))
                    .collect();
                json!(map)
            };
            match mode {
                ExtendMode::Product => {
                    let s = need_sub()?;
                    inputs.0.push(emit_substitution(&s));
                    let (ext, code) = entropy::product_extension(&s, *m)?;
                    (
                        "extend",
                        json!({"mode": "product", "sub": sub, "m": m}),
                        json!({"substitution": sub_json(&ext), "code": code_json(&code)}),
                    )
                }
                ExtendMode::Epsilon => {
                    let s = need_sub()?;
                    inputs.0.push(emit_substitution(&s));
                    let e = match n {
                        Some(n) => entropy::epsilon_extension(&s, *n, &limits)?,
                        None => entropy::smallest_epsilon_extension(&s, 8, &limits)?,
                    };
                    let marked: Vec<Value> = e
                        .marked
                        .iter()
                        .map(|(w, q)| json!({"word": s.alphabet().render(w), "position": q}))
                        .collect();
                    (
                        "extend",
                        json!({"mode": "epsilon", "sub": sub, "n": n}),
                        json!({
                            "power": e.power,
                            "substitution": sub_json(&e.substitution),
                            "code": code_json(&e.code),
                            "marked": marked,
                            "min_len": e.min_len,
                            "max_len": e.max_len,
                        }),
                    )
                }
                ExtendMode::Fractional => {
                    let (l, k) = match (l, k) {
                        (Some(l), Some(k)) => (*l, *k),
                        _ => return invalid("fractional mode needs --l and --k"),
                    };
                    let (theta, psi) = entropy::fractional_entropy_substitution(l, k, *m)?;
                    let psi_images: BTreeMap<&str, String> = psi
                        .alphabet()
                        .letters()
                        .map(|x| (psi.alphabet().symbol(x), psi.alphabet().render(psi.image(x))))
                        .collect();
                    (
                        "extend",
                        json!({"mode": "fractional", "l": l, "k": k, "m": m}),
                        json!({
                            "substitution": sub_json(&theta),
                            "psi": psi_images,
                            "entropy": (l as f64 / k as f64) * (*m as f64).ln(),
                        }),
                    )
                }
            }
        }
    };
    Ok(Report {
        schema: SCHEMA,
        command: name.to_string(),
        args,
        inputs_digest: inputs.digest(),
        result,
        resource_cap: json!({"max_set_size": cli.max_set_size, "exceeded": false}),
        timing_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0),
    })
}

/// Parses arguments, runs, and returns the exit code and standard output.
/// Usage errors from argument parsing come back as clap's rendered message.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match run_command(&cli) {
        Ok(report) => (EXIT_OK, report.to_json()),
        Err(e) => {
            let doc = json!({
                "schema": SCHEMA,
                "error": {"kind": error_kind(&e), "message": e.to_string()},
                "resource_cap": {"max_set_size": cli.max_set_size, "exceeded": matches!(e, Error::ResourceCap { .. })},
            });
            (exit_code(&e), serde_json::to_string_pretty(&doc).expect("serializable"))
        }
    }
}
