//! `orbifold` — command-line front end.
//!
//! Every verb reads JSON inputs (exchange matrices, triangulations, modules)
//! and prints JSON on stdout, or writes it to `--json-out` and prints a one-line
//! summary instead.  Vertex numbers given on the command line (`--at`,
//! `--ell`, `--address`) are 1-based.
//!
//! Exit codes: 0 success, 1 I/O error, 2 invalid input, 3 a checked property
//! failed.

mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbifold_core::invariants::{
    cc_function, cluster_module, f_polynomial_by_recurrence, flip_along, g_vector, g_vector_from_copresentation,
    h_vector, lf_f_polynomial, OracleConfig,
};
use orbifold_core::io::{module_to_json, read_module, MatrixJson};
use orbifold_core::laurent::IntPoly;
use orbifold_core::mutation::mutate_decorated;
use orbifold_core::orbifold::Triangulation;
use orbifold_core::rep::DecoratedRep;
use orbifold_core::seed::{exchange_graph_bfs, CoefficientMode, ExchangeMatrix, Seed};
use orbifold_core::strings::{case, lambdas_for, replay_spec, CASES};
use orbifold_core::{fixtures, io::parse_rational, Q};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Property(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Property(_) => 3,
        }
    }
}

impl From<orbifold_core::error::Error> for CliError {
    fn from(e: orbifold_core::error::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "orbifold", version, about = "Cluster patterns of orbifold triangulations and their representations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Seed for every randomized search (isomorphism witnesses, sampling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mutate an exchange matrix (or a principal-coefficient seed with --full).
    SeedMutate {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        steps: Steps,
        /// Print the whole seed with principal coefficients.
        #[arg(long)]
        full: bool,
    },
    /// Flip a triangulation.
    Flip {
        #[command(flatten)]
        tri: TriArgs,
        #[command(flatten)]
        steps: Steps,
    },
    /// Mutate a decorated representation together with its triangulation.
    #[command(alias = "mutate-rep")]
    RepMutate {
        #[command(flatten)]
        tri: TriArgs,
        /// Module JSON over the quiver of the triangulation.
        #[arg(long)]
        module: PathBuf,
        #[command(flatten)]
        steps: Steps,
    },
    /// g-vector, computed from a minimal injective copresentation and from the projective side.
    GVector {
        #[command(flatten)]
        tri: TriArgs,
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// h-vector; entries where ker β is not free are null.
    HVector {
        #[command(flatten)]
        tri: TriArgs,
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// F-polynomial by point counting or by the mutation recurrence.
    FPoly {
        #[command(flatten)]
        tri: TriArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
    },
    /// Caldero–Chapoton function x^g F(ŷ).
    Cc {
        #[command(flatten)]
        tri: TriArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
    },
    /// Run the reproduction and property suites on a bundled fixture.
    Verify {
        /// c2tilde, hexagon, disk-m3, disk-m4, disk-m5 or all.
        #[arg(long, default_value = "c2tilde")]
        fixture: String,
        /// Override the mutation depth of the corpus.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Breadth-first exploration of the exchange graph.
    Bfs {
        #[arg(long, conflicts_with_all = ["triangulation", "fixture"])]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        tri: TriArgs,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        /// Write a Graphviz rendering (nodes labeled by g-vector matrices).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Replay the tables of string and band mutations.
    ReplayTables {
        /// A single case, e.g. `4.a`.
        #[arg(long = "case")]
        case_id: Option<String>,
        /// The band parameter, default: every value the case uses.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
}

#[derive(Args, Clone)]
struct TriArgs {
    /// Triangulation JSON file.
    #[arg(long)]
    triangulation: Option<PathBuf>,
    /// A bundled triangulation instead (see `verify --help` for fixture names;
    /// also c2tilde-t0 … c2tilde-t4).
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args, Clone)]
struct ModuleArgs {
    /// Module JSON over the quiver of the triangulation.
    #[arg(long, conflicts_with = "ell")]
    module: Option<PathBuf>,
    /// Use the module of the cluster variable x_{ell; t}, t reached by --address.
    #[arg(long)]
    ell: Option<usize>,
    /// Flip sequence from the given triangulation to t, comma-separated.
    #[arg(long, value_delimiter = ',', requires = "ell")]
    address: Vec<usize>,
}

#[derive(Args, Clone)]
struct Steps {
    /// A single mutation direction.
    #[arg(long, conflicts_with = "address")]
    at: Option<usize>,
    /// A comma-separated sequence of directions, applied left to right.
    #[arg(long, value_delimiter = ',')]
    address: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Oracle,
    Recurrence,
}

// ---------------------------------------------------------------------------
// Input helpers.

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("{what}: {e}")))
}

fn zero_based(v: usize, n: usize) -> CliResult<usize> {
    if v == 0 || v > n {
        return Err(CliError::Invalid(format!("direction {v} is out of range 1..={n}")));
    }
    Ok(v - 1)
}

impl Steps {
    fn resolve(&self, n: usize) -> CliResult<Vec<usize>> {
        let raw: Vec<usize> = match self.at {
            Some(k) => vec![k],
            None => self.address.clone(),
        };
        raw.into_iter().map(|k| zero_based(k, n)).collect()
    }
}

fn fixture(name: &str) -> CliResult<Triangulation> {
    let all = fixtures::all();
    let alias = if name == "c2tilde" { "c2tilde-t0" } else { name };
    all.into_iter().find(|(n, _)| n == alias).map(|(_, t)| t).ok_or_else(|| {
        let names: Vec<String> = fixtures::all().into_iter().map(|(n, _)| n).collect();
        CliError::Invalid(format!("unknown fixture `{name}` (known: c2tilde, {})", names.join(", ")))
    })
}

impl TriArgs {
    fn load(&self) -> CliResult<Triangulation> {
        let t = match (&self.triangulation, &self.fixture) {
            (Some(p), None) => parse_json::<Triangulation>(&read_text(p)?, "triangulation")?,
            (None, Some(name)) => fixture(name)?,
            (Some(_), Some(_)) => return Err(CliError::Invalid("give --triangulation or --fixture, not both".into())),
            (None, None) => return Err(CliError::Invalid("a triangulation is required (--triangulation or --fixture)".into())),
        };
        t.check()?;
        Ok(t)
    }
}

/// Where a module comes from: a file, or a cluster variable.
enum Source {
    File(DecoratedRep<Q>),
    Cluster { l: usize, address: Vec<usize>, module: DecoratedRep<Q> },
}

impl Source {
    fn module(&self) -> &DecoratedRep<Q> {
        match self {
            Source::File(m) => m,
            Source::Cluster { module, .. } => module,
        }
    }
}

fn load_module(t: &Triangulation, args: &ModuleArgs) -> CliResult<Source> {
    let q = std::sync::Arc::new(t.quiver()?);
    match (&args.module, args.ell) {
        (Some(p), _) => Ok(Source::File(read_module(&read_text(p)?, q)?)),
        (None, Some(ell)) => {
            let l = zero_based(ell, t.n())?;
            let address = args.address.iter().map(|&k| zero_based(k, t.n())).collect::<CliResult<Vec<_>>>()?;
            let module = cluster_module(t, l, &address)?;
            Ok(Source::Cluster { l, address, module })
        }
        (None, None) => Err(CliError::Invalid("a module is required (--module, or --ell with --address)".into())),
    }
}

fn f_polynomial(t: &Triangulation, src: &Source, method: Method) -> CliResult<IntPoly> {
    match (method, src) {
        (Method::Oracle, _) => Ok(lf_f_polynomial(&src.module().module, &OracleConfig::default())?),
        (Method::Recurrence, Source::Cluster { l, address, .. }) => {
            let tt = flip_along(t, address)?;
            let rev: Vec<usize> = address.iter().rev().copied().collect();
            Ok(f_polynomial_by_recurrence(&tt, *l, &rev)?)
        }
        (Method::Recurrence, Source::File(_)) => {
            Err(CliError::Invalid("the recurrence needs a cluster variable: use --ell and --address".into()))
        }
    }
}

fn matrix_json(m: &ExchangeMatrix) -> MatrixJson {
    MatrixJson { b: m.b.clone(), d: Some(m.d.clone()) }
}

fn load_matrix(path: &Path) -> CliResult<ExchangeMatrix> {
    let text = read_text(path)?;
    let j: MatrixJson = match serde_json::from_str(&text) {
        Ok(j) => j,
        // a bare nested array is accepted as well
        Err(_) => MatrixJson { b: parse_json(&text, "exchange matrix")?, d: None },
    };
    Ok(match j.d {
        Some(d) => ExchangeMatrix::new(j.b, d)?,
        None => ExchangeMatrix::from_b(j.b)?,
    })
}

// ---------------------------------------------------------------------------
// Verbs.

/// What a verb produced: JSON plus a one-line summary.
struct Output {
    json: Value,
    summary: String,
    /// Lines always printed (reports of suites).
    lines: Vec<String>,
    failure: Option<String>,
}

impl Output {
    fn json(json: Value, summary: impl Into<String>) -> Self {
        Output { json, summary: summary.into(), lines: vec![], failure: None }
    }
}

fn run(cmd: &Cmd, seed: u64) -> CliResult<Output> {
    match cmd {
        Cmd::SeedMutate { matrix, steps, full } => {
            let m = load_matrix(matrix)?;
            let seq = steps.resolve(m.n())?;
            if seq.is_empty() {
                return Err(CliError::Invalid("nothing to do: give --at or --address".into()));
            }
            if *full {
                let mut s = Seed::initial(m, CoefficientMode::Principal);
                for &k in &seq {
                    s = s.mutate(k)?;
                }
                let j = serde_json::to_value(s.to_json()).expect("seed serializes");
                Ok(Output::json(j, format!("mutated along {} directions", seq.len())))
            } else {
                let mut b = m;
                for &k in &seq {
                    b = b.mutate(k)?;
                }
                let j = serde_json::to_value(matrix_json(&b)).expect("matrix serializes");
                Ok(Output::json(j, format!("B = {:?}", b.b)))
            }
        }
        Cmd::Flip { tri, steps } => {
            let t = tri.load()?;
            let seq = steps.resolve(t.n())?;
            let t2 = flip_along(&t, &seq)?;
            let b = t2.b_matrix()?;
            let j = serde_json::to_value(&t2).expect("triangulation serializes");
            Ok(Output::json(j, format!("B = {:?}", b.b)))
        }
        Cmd::RepMutate { tri, module, steps } => {
            let t = tri.load()?;
            let m = read_module(&read_text(module)?, std::sync::Arc::new(t.quiver()?))?;
            let seq = steps.resolve(t.n())?;
            let (mut tt, mut mm) = (t, m);
            for &k in &seq {
                let (t2, m2) = mutate_decorated(&tt, &mm, k)?;
                tt = t2;
                mm = m2;
            }
            let j = json!({ "triangulation": tt, "module": module_to_json(&mm) });
            Ok(Output::json(j, format!("dims {:?}, decoration {:?}", mm.module.dims, mm.decoration)))
        }
        Cmd::GVector { tri, module } => {
            let t = tri.load()?;
            let src = load_module(&t, module)?;
            let g = g_vector(src.module())?;
            let g2 = g_vector_from_copresentation(src.module())?;
            let mut out = Output::json(json!({ "g": g }), format!("g = {g:?}"));
            if g != g2 {
                out.failure = Some(format!("projective side gives {g:?}, injective side {g2:?}"));
            }
            Ok(out)
        }
        Cmd::HVector { tri, module } => {
            let t = tri.load()?;
            let src = load_module(&t, module)?;
            let h = h_vector(&src.module().module)?;
            let vals: Vec<Value> =
                h.values.iter().zip(&h.defined).map(|(v, &d)| if d { json!(v) } else { Value::Null }).collect();
            Ok(Output::json(json!({ "h": vals }), format!("h = {vals:?}")))
        }
        Cmd::FPoly { tri, module, method } => {
            let t = tri.load()?;
            let src = load_module(&t, module)?;
            let f = f_polynomial(&t, &src, *method)?;
            Ok(Output::json(json!({ "F": f.to_string() }), format!("F = {f}")))
        }
        Cmd::Cc { tri, module, method } => {
            let t = tri.load()?;
            let src = load_module(&t, module)?;
            let f = f_polynomial(&t, &src, *method)?;
            let cc = cc_function(&t, src.module(), &f)?;
            let g = g_vector(src.module())?;
            Ok(Output::json(json!({ "g": g, "F": f.to_string(), "CC": cc.to_string() }), format!("CC = {cc}")))
        }
        Cmd::Verify { fixture, depth } => verify::run(fixture, *depth, seed),
        Cmd::Bfs { matrix, tri, depth, dot } => {
            let b = match matrix {
                Some(p) => load_matrix(p)?,
                None => tri.load()?.b_matrix()?,
            };
            let g = exchange_graph_bfs(&Seed::initial(b, CoefficientMode::Principal), *depth)?;
            if let Some(p) = dot {
                write_text(p, &g.to_dot())?;
            }
            let j = json!({
                "seeds": g.nodes.len(),
                "edges": g.edges.len(),
                "closed": g.closed,
                "collisions": g.collisions,
            });
            let summary = if g.closed {
                format!("closed at {} unlabeled seeds, {} edges", g.nodes.len(), g.edges.len())
            } else {
                format!("not closed within depth {depth}: {} seeds so far", g.nodes.len())
            };
            let mut out = Output::json(j, summary);
            if !g.collisions.is_empty() {
                out.failure = Some(format!("{} seeds share a cluster but not a matrix", g.collisions.len()));
            }
            Ok(out)
        }
        Cmd::ReplayTables { case_id, lambda } => {
            let specs: Vec<_> = match case_id {
                Some(id) => vec![case(id)?],
                None => CASES.iter().collect(),
            };
            let fixed = lambda.as_deref().map(parse_rational).transpose()?;
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            let mut failed = 0;
            for spec in specs {
                let lambdas = match &fixed {
                    Some(l) => vec![l.clone()],
                    None => lambdas_for(spec),
                };
                for l in lambdas {
                    let r = replay_spec(spec, &l);
                    let (ok, detail) = match &r {
                        Ok(rep) => (true, format!("diagram {:?}", rep.diagram)),
                        Err(e) => (false, e.to_string()),
                    };
                    failed += usize::from(!ok);
                    lines.push(format!("{} {} λ={l}: {detail}", if ok { "PASS" } else { "FAIL" }, spec.id));
                    rows.push(json!({ "case": spec.id, "lambda": l.to_string(), "ok": ok, "detail": detail }));
                }
            }
            let n = rows.len();
            let mut out = Output::json(Value::Array(rows), format!("{} of {n} replays pass", n - failed));
            out.lines = lines;
            if failed > 0 {
                out.failure = Some(format!("{failed} replays failed"));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.cmd, cli.seed).and_then(|out| {
        for l in &out.lines {
            println!("{l}");
        }
        let text = serde_json::to_string_pretty(&out.json).expect("output serializes");
        match &cli.json_out {
            Some(p) => {
                write_text(p, &text)?;
                println!("{}", out.summary);
            }
            None if out.lines.is_empty() => println!("{text}"),
            None => println!("{}", out.summary),
        }
        match out.failure {
            Some(f) => Err(CliError::Property(f)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbifold_core::io::module_from_json;

    #[test]
    fn directions_are_one_based() {
        let s = Steps { at: None, address: vec![1, 3, 2, 3] };
        assert_eq!(s.resolve(3).unwrap(), vec![0, 2, 1, 2]);
        assert!(Steps { at: Some(0), address: vec![] }.resolve(3).is_err());
        assert!(Steps { at: Some(4), address: vec![] }.resolve(3).is_err());
    }

    #[test]
    fn fixture_names_resolve() {
        assert!(fixture("c2tilde").is_ok());
        assert!(fixture("hexagon").is_ok());
        assert!(matches!(fixture("nope"), Err(CliError::Invalid(_))));
    }

    #[test]
    fn module_json_from_cluster_variable_reparses() {
        let t = fixture("c2tilde").unwrap();
        let src = load_module(&t, &ModuleArgs { module: None, ell: Some(3), address: vec![1, 3, 2, 3] }).unwrap();
        let j = module_to_json(src.module());
        let back = module_from_json(&j, std::sync::Arc::new(t.quiver().unwrap())).unwrap();
        assert_eq!(&back, src.module());
    }
}
