//! Command-line front end for `ftpaths`.
//!
//! Every command returns its structured output as a string so tests can
//! drive it without spawning a process. Records are one JSON object per
//! line with a fixed field order.

pub mod args;

use std::fs;
use std::path::{Path as FsPath, PathBuf};

use ftpaths::dso::{build_dso_with, load_dso, save_dso, DsoError, DsoHeader, DsoOptions, PersistError};
use ftpaths::format::{parse_graph, write_graph, FormatError, WeightKind};
use ftpaths::gen::{farthest_from, gnp, path_plus, planted, rng};
use ftpaths::hitting::verify_hitting;
use ftpaths::oracle::{naive_dso_distance, naive_replacement_paths, OracleError};
use ftpaths::rp::{replacement_paths_with, DetourAlgo, Provenance, RpError, RpOptions};
use ftpaths::{Element, FaultSet, Graph, GraphError, Vertex, Weight};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

pub use args::{Cli, Command};
use args::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rp(#[from] RpError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Dso(#[from] DsoError),
    #[error(transparent)]
    Persist(#[from] PersistError),
    #[error("{0}")]
    Usage(String),
    #[error("graph has {n} vertices, over the verify budget of {budget}")]
    Budget { n: usize, budget: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget { .. } | CliError::Dso(DsoError::CapacityExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

/// Structured output and exit status of a successful run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Rp(a) => cmd_rp(&a),
        Command::Dso(DsoCommand::Build(a)) => cmd_dso_build(&a),
        Command::Dso(DsoCommand::Query(a)) => cmd_dso_query(&a),
        Command::Verify(a) => cmd_verify(&a),
    }
}

fn read(path: &FsPath) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &FsPath, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn line(out: &mut String, record: &impl Serialize) {
    out.push_str(&serde_json::to_string(record).expect("records serialize"));
    out.push('\n');
}

fn algo(a: DnAlgo) -> (DetourAlgo, &'static str) {
    match a {
        DnAlgo::Trees => (DetourAlgo::Trees, "trees"),
        DnAlgo::Decremental => (DetourAlgo::Decremental, "decremental"),
    }
}

fn check_vertex(v: Vertex, n: usize) -> Result<(), CliError> {
    if v >= n {
        return Err(CliError::Usage(format!("vertex {v} out of range for a graph on {n} vertices")));
    }
    Ok(())
}

#[derive(Serialize)]
struct GenRecord<'a> {
    record: &'static str,
    model: &'static str,
    n: usize,
    m: usize,
    s: Vertex,
    t: Vertex,
    seed: u64,
    out: &'a str,
}

fn cmd_gen(a: &GenArgs) -> Result<Outcome, CliError> {
    if a.n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let (g, s, t, kind, model) = match a.model {
        Model::Gnp => {
            let p = a.p.ok_or_else(|| CliError::Usage("gnp needs --p".into()))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Usage(format!("--p {p} is not a probability")));
            }
            let g = gnp(a.n, p, a.weights, a.seed);
            let kind = if a.weights.is_some() { WeightKind::Weighted } else { WeightKind::Unit };
            let t = farthest_from(&g, 0);
            (g, 0, t, kind, "gnp")
        }
        Model::PathPlus => {
            let inst = path_plus(a.n, a.q.unwrap_or(2 * a.n), a.seed);
            (inst.graph, inst.s, inst.t, WeightKind::Unit, "path-plus")
        }
        Model::Planted => {
            let inst = planted(a.n, a.seed);
            (inst.graph, inst.s, inst.t, WeightKind::Unit, "planted")
        }
    };
    let text = write_graph(&g, kind);
    let Some(path) = &a.out else {
        return Ok(Outcome::ok(text));
    };
    write(path, &text)?;
    let mut out = String::new();
    line(
        &mut out,
        &GenRecord {
            record: "gen",
            model,
            n: g.n(),
            m: g.m(),
            s,
            t,
            seed: a.seed,
            out: &path.display().to_string(),
        },
    );
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct RpHeader {
    record: &'static str,
    n: usize,
    m: usize,
    s: Vertex,
    t: Vertex,
    k: usize,
    c: usize,
    dn_algo: &'static str,
}

#[derive(Serialize)]
struct RpEdge {
    record: &'static str,
    i: usize,
    u: Vertex,
    v: Vertex,
    length: Option<usize>,
    via: Option<Provenance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Vertex>>,
}

#[derive(Serialize)]
struct RpSummary {
    record: &'static str,
    detours: usize,
    pivots: usize,
    second_shortest: Option<usize>,
    pq_ops: u64,
    relaxations: u64,
    ops: u64,
}

fn load_graph<W: Weight>(path: &FsPath) -> Result<Graph<W>, CliError> {
    Ok(parse_graph::<W>(&read(path)?)?.0)
}

fn cmd_rp(a: &RpArgs) -> Result<Outcome, CliError> {
    let g: Graph<i64> = load_graph(&a.graph)?;
    let (dn, name) = algo(a.dn_algo);
    let r = replacement_paths_with(&g, a.s, a.t, &RpOptions { algo: dn, ..Default::default() })?;
    let ops = r.counters.total();
    let second = r.lengths.iter().flatten().min().copied();
    let p = r.base.vertices();
    let mut out = String::new();
    if a.json {
        line(
            &mut out,
            &RpHeader {
                record: "rp",
                n: g.n(),
                m: g.m(),
                s: a.s,
                t: a.t,
                k: r.base.k(),
                c: r.detours.c,
                dn_algo: name,
            },
        );
        for i in 0..r.base.k() {
            line(
                &mut out,
                &RpEdge {
                    record: "edge",
                    i,
                    u: p[i],
                    v: p[i + 1],
                    length: r.lengths[i],
                    via: r.provenance[i],
                    witness: a.witness.then(|| r.witness(i).map(|w| w.into_vertices())).flatten(),
                },
            );
        }
        line(
            &mut out,
            &RpSummary {
                record: "summary",
                detours: r.detours.len(),
                pivots: r.pivots.len(),
                second_shortest: second,
                pq_ops: ops.pq_ops,
                relaxations: ops.relaxations,
                ops: ops.total(),
            },
        );
        return Ok(Outcome::ok(out));
    }
    out.push_str(&format!(
        "s={} t={} k={} c={} dn_algo={name}\n",
        a.s,
        a.t,
        r.base.k(),
        r.detours.c
    ));
    out.push_str("edge\tu\tv\tlength\tvia\n");
    for i in 0..r.base.k() {
        let length = r.lengths[i].map_or("inf".to_string(), |l| l.to_string());
        let via = match r.provenance[i] {
            Some(Provenance::Short { a, b }) => format!("short {a}..{b}"),
            Some(Provenance::Long { pivot, enter, exit }) => format!("long {enter}..{exit} via {pivot}"),
            None => "-".to_string(),
        };
        out.push_str(&format!("{i}\t{}\t{}\t{length}\t{via}\n", p[i], p[i + 1]));
        if a.witness {
            if let Some(w) = r.witness(i) {
                let w: Vec<String> = w.vertices().iter().map(|v| v.to_string()).collect();
                out.push_str(&format!("\t{}\n", w.join(" ")));
            }
        }
    }
    out.push_str(&format!(
        "detours={} pivots={} second_shortest={} pq_ops={} relaxations={}\n",
        r.detours.len(),
        r.pivots.len(),
        second.map_or("inf".to_string(), |l| l.to_string()),
        ops.pq_ops,
        ops.relaxations
    ));
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct BuildRecord<'a> {
    record: &'static str,
    n: usize,
    l: usize,
    f: usize,
    weight_type: &'a str,
    nodes: usize,
    pivots: usize,
    reweighted: bool,
    graph_sha256: &'a str,
}

fn build_and_save<W: Weight + Serialize>(g: &Graph<W>, a: &DsoBuildArgs) -> Result<Outcome, CliError> {
    let dso = build_dso_with(g, a.l, a.f, &DsoOptions { budget: a.budget })?;
    let text = save_dso(&dso)?;
    write(&a.out, &text)?;
    let mut out = String::new();
    line(
        &mut out,
        &BuildRecord {
            record: "dso-build",
            n: dso.n,
            l: dso.l,
            f: dso.f,
            weight_type: std::any::type_name::<W>(),
            nodes: dso.trees.node_count(),
            pivots: dso.pivots.len(),
            reweighted: dso.price.is_some(),
            graph_sha256: &dso.graph_sha256,
        },
    );
    Ok(Outcome::ok(out))
}

fn cmd_dso_build(a: &DsoBuildArgs) -> Result<Outcome, CliError> {
    let text = read(&a.graph)?;
    match parse_graph::<i64>(&text) {
        Ok((g, _)) => build_and_save(&g, a),
        Err(FormatError::Syntax { .. }) => build_and_save(&parse_graph::<f64>(&text)?.0, a),
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct QueryRecord<W> {
    record: &'static str,
    s: Vertex,
    t: Vertex,
    faults: Vec<String>,
    distance: Option<W>,
}

fn faults_of(elements: &[Element]) -> FaultSet {
    elements.iter().copied().collect()
}

fn labels(f: &FaultSet) -> Vec<String> {
    f.iter().map(|e| e.to_string()).collect()
}

fn query_stored<W: Weight + Serialize + DeserializeOwned>(
    text: &str,
    a: &DsoQueryArgs,
) -> Result<Outcome, CliError> {
    let faults = faults_of(&a.fail);
    let checksum = match &a.graph {
        Some(path) => {
            let g: Graph<W> = load_graph(path)?;
            faults.validate(&g)?;
            Some(ftpaths::dso::graph_checksum(&g))
        }
        None => None,
    };
    let (_, dso) = load_dso::<W>(text, checksum.as_deref())?;
    let distance = dso.query(a.s, a.t, &faults)?;
    let mut out = String::new();
    line(
        &mut out,
        &QueryRecord {
            record: "dso-query",
            s: a.s,
            t: a.t,
            faults: labels(&faults),
            distance,
        },
    );
    Ok(Outcome::ok(out))
}

fn cmd_dso_query(a: &DsoQueryArgs) -> Result<Outcome, CliError> {
    let text = read(&a.dso)?;
    let head = text.lines().next().unwrap_or_default();
    let header: DsoHeader =
        serde_json::from_str(head).map_err(|e| PersistError::BadHeader(e.to_string()))?;
    if header.weight_type == std::any::type_name::<i64>() {
        query_stored::<i64>(&text, a)
    } else if header.weight_type == std::any::type_name::<f64>() {
        query_stored::<f64>(&text, a)
    } else {
        Err(PersistError::BadHeader(format!("unknown weight type {}", header.weight_type)).into())
    }
}

#[derive(Serialize)]
struct VerifySummary {
    record: &'static str,
    mode: &'static str,
    n: usize,
    m: usize,
    checked: usize,
    mismatches: usize,
    pass: bool,
}

#[derive(Serialize)]
struct RpCounterexample {
    record: &'static str,
    i: usize,
    u: Vertex,
    v: Vertex,
    expected: Option<usize>,
    got: Option<usize>,
}

#[derive(Serialize)]
struct DsoCounterexample<W> {
    record: &'static str,
    s: Vertex,
    t: Vertex,
    faults: Vec<String>,
    expected: Option<W>,
    got: Option<W>,
}

fn finish(mut out: String, summary: VerifySummary) -> Outcome {
    let code = if summary.pass { 0 } else { 1 };
    line(&mut out, &summary);
    Outcome { stdout: out, code }
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let text = read(&a.graph)?;
    match a.mode {
        VerifyMode::Rp => verify_rp(&parse_graph::<i64>(&text)?.0, a),
        VerifyMode::Dso => match parse_graph::<i64>(&text) {
            Ok((g, _)) => verify_dso(&g, a),
            Err(FormatError::Syntax { .. }) => verify_dso(&parse_graph::<f64>(&text)?.0, a),
            Err(e) => Err(e.into()),
        },
    }
}

fn verify_rp(g: &Graph<i64>, a: &VerifyArgs) -> Result<Outcome, CliError> {
    if g.n() > a.budget {
        return Err(CliError::Budget { n: g.n(), budget: a.budget });
    }
    let s = a.s.unwrap_or(0);
    check_vertex(s, g.n())?;
    let t = match a.t {
        Some(t) => t,
        None => farthest_from(g, s),
    };
    check_vertex(t, g.n())?;
    let opts = RpOptions {
        algo: algo(a.dn_algo).0,
        corrupt_rd: a.corrupt_rd,
    };
    let r = replacement_paths_with(g, s, t, &opts)?;
    let naive = naive_replacement_paths(g, s, t)?;
    let mut out = String::new();
    let mut mismatches = 0;
    for (i, truth) in naive.lengths.iter().enumerate() {
        let expected = truth.map(|d| d as usize);
        let witness_ok = match (r.lengths[i], r.witness(i)) {
            (Some(len), Some(w)) => {
                w.hops() == len && w.avoids(&FaultSet::from_iter([Element::Edge(naive.path[i], naive.path[i + 1])]))
            }
            (None, _) => true,
            (Some(_), None) => false,
        };
        if r.lengths[i] != expected || !witness_ok {
            if mismatches == 0 {
                line(
                    &mut out,
                    &RpCounterexample {
                        record: "counterexample",
                        i,
                        u: naive.path[i],
                        v: naive.path[i + 1],
                        expected,
                        got: r.lengths[i],
                    },
                );
            }
            mismatches += 1;
        }
    }
    let summary = VerifySummary {
        record: "verify",
        mode: "rp",
        n: g.n(),
        m: g.m(),
        checked: naive.lengths.len(),
        mismatches,
        pass: mismatches == 0,
    };
    Ok(finish(out, summary))
}

fn verify_dso<W: Weight + Serialize + Close>(g: &Graph<W>, a: &VerifyArgs) -> Result<Outcome, CliError> {
    if g.n() > a.budget {
        return Err(CliError::Budget { n: g.n(), budget: a.budget });
    }
    let dso = build_dso_with(g, a.l, a.f, &DsoOptions::default())?;
    let mut out = String::new();
    let mut mismatches = 0;
    if !verify_hitting(&dso.long_paths(), &dso.pivots) {
        mismatches += 1;
    }
    let elements: Vec<Element> = (0..g.n())
        .map(Element::Vertex)
        .chain(g.edges().map(|(u, v, _)| Element::Edge(u, v)))
        .collect();
    let mut r = rng(a.seed);
    for _ in 0..a.queries {
        let (s, t) = (r.gen_range(0..g.n()), r.gen_range(0..g.n()));
        let k = r.gen_range(0..=a.f.min(elements.len()));
        let faults: FaultSet = elements.choose_multiple(&mut r, k).copied().collect();
        let expected = naive_dso_distance(g, s, t, &faults);
        let got = dso.query(s, t, &faults)?;
        if !same(expected, got) {
            if mismatches == 0 {
                line(
                    &mut out,
                    &DsoCounterexample {
                        record: "counterexample",
                        s,
                        t,
                        faults: labels(&faults),
                        expected,
                        got,
                    },
                );
            }
            mismatches += 1;
        }
    }
    let summary = VerifySummary {
        record: "verify",
        mode: "dso",
        n: g.n(),
        m: g.m(),
        checked: a.queries,
        mismatches,
        pass: mismatches == 0,
    };
    Ok(finish(out, summary))
}

/// Equality for verifier comparisons. Real weights may differ in the last
/// bits because the two sides sum in different orders.
pub trait Close: Copy {
    fn close(self, other: Self) -> bool;
}

impl Close for i64 {
    fn close(self, other: Self) -> bool {
        self == other
    }
}

impl Close for f64 {
    fn close(self, other: Self) -> bool {
        self == other || (self - other).abs() <= 1e-9 * self.abs().max(other.abs()).max(1.0)
    }
}

fn same<W: Close>(a: Option<W>, b: Option<W>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x.close(y),
        (None, None) => true,
        _ => false,
    }
}
