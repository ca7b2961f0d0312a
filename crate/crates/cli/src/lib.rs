//! The `kmm` command line. Every command writes one JSON document tagged
//! with `"format": 1` to stdout.
//!
//! Exit codes: 0 success, 1 other failure, 2 malformed input or arguments,
//! 3 budget exceeded, 4 solver and oracle disagree.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kmm_core::gen::{random_bipartite_instance, random_matrix, random_poset, random_set_system, random_terminal_graph};
use kmm_core::la::{self, Environment, EvalConfig, Evaluator, LaError};
use kmm_core::menger::paths_cut_incidence;
use kmm_core::order::{antichain_transversal, split_blocks};
use kmm_core::{
    build_a_double_prime, chains_element_incidence, cover_to_cut, diagonalize, has_diagonal_property, is_cover,
    is_restricted_pair, is_selection, oracle_dilworth, oracle_hall, oracle_max_selection, oracle_menger,
    oracle_min_cover, repair_beta_gamma, sdr_from_selection, selection_to_paths, union_property, BoolMatrix, Error,
    OracleBudget, Poset, SetSystem, Solver, SolverConfig, TerminalGraph,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

pub const FORMAT: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "kmm", version, about = "Covers, selections and their equivalent min-max theorems")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest matrix side, and largest poset or set system, the exhaustive
    /// oracles accept.
    #[arg(long, global = true)]
    pub budget_n: Option<usize>,

    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub json_pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a random instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Minimum cover and maximum selection by the recursive solver.
    Solve(Input),
    /// Exhaustive ground truth for one quantity.
    Oracle {
        #[arg(value_enum)]
        what: OracleKind,
        #[command(flatten)]
        input: Input,
    },
    /// Compare the solver with the oracles on one matrix or on a sweep.
    Verify {
        /// Check every n x n 0-1 matrix.
        #[arg(long, value_name = "N", conflicts_with_all = ["random", "path"])]
        exhaustive: Option<usize>,
        /// Check this many random matrices of side `--n`.
        #[arg(long, value_name = "COUNT", conflicts_with = "path", requires = "n")]
        random: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Input file; stdin when absent.
        path: Option<PathBuf>,
    },
    /// Permute a matrix into diagonal form.
    Diagonalize(Input),
    /// Build the equivalent instance of another theorem.
    Reduce {
        #[arg(value_enum)]
        target: ReduceKind,
        #[command(flatten)]
        input: Input,
    },
    /// Evaluate an L_LA term or formula.
    Eval {
        /// Term or formula text.
        expr: String,
        /// Environment JSON file.
        #[arg(long)]
        env: Option<PathBuf>,
        /// Largest side for quantified matrices.
        #[arg(long, default_value_t = 3)]
        max_matrix_dim: u64,
    },
    /// Check random instances of the L_LA axioms.
    Axioms {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Args, Debug)]
pub struct Input {
    /// Input file; stdin when absent.
    pub path: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    Matrix(GenParams),
    Graph {
        #[command(flatten)]
        params: GenParams,
        /// Emit the bipartite graph with terminals of a random n x n matrix.
        #[arg(long)]
        bipartite: bool,
    },
    SetSystem(GenParams),
    Poset(GenParams),
}

#[derive(Args, Debug)]
pub struct GenParams {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum OracleKind {
    Cover,
    Selection,
    Menger,
    Hall,
    Dilworth,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ReduceKind {
    Menger,
    Hall,
    Dilworth,
}

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Budget(String),
    /// Carries the report with both certificates.
    #[error("solver and oracle disagree")]
    Disagreement(Value),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Schema(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Disagreement(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Failed(_) => "failed",
            CliError::Schema(_) => "schema",
            CliError::Budget(_) => "budget",
            CliError::Disagreement(_) => "disagreement",
        }
    }

    /// The JSON document describing the error.
    pub fn to_json(&self) -> Value {
        match self {
            CliError::Disagreement(report) => report.clone(),
            e => json!({"format": FORMAT, "error": {"kind": e.kind(), "message": e.to_string()}}),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            e if e.is_resource() => CliError::Budget(e.to_string()),
            Error::Internal(_) | Error::RepairFailed(_) => CliError::Failed(e.to_string()),
            e => CliError::Schema(e.to_string()),
        }
    }
}

impl From<LaError> for CliError {
    fn from(e: LaError) -> Self {
        if e.is_resource() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Schema(e.to_string())
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Reads the whole input from `path`, or from `stdin` when absent.
fn read_input(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Schema(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| CliError::Schema(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

/// Parses a document, accepting and checking an optional `format` tag.
fn parse_doc<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut v: Value = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
    if let Some(obj) = v.as_object_mut() {
        if let Some(f) = obj.remove("format") {
            if f.as_u64() != Some(FORMAT) {
                return Err(CliError::Schema(format!("unsupported format {f}, expected {FORMAT}")));
            }
        }
    }
    serde_json::from_value(v).map_err(|e| CliError::Schema(e.to_string()))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable types")
}

/// `x` as an object tagged with the format version.
fn tagged<T: Serialize>(x: &T) -> Value {
    let mut map = Map::new();
    map.insert("format".into(), json!(FORMAT));
    match to_value(x) {
        Value::Object(obj) => map.extend(obj),
        other => {
            map.insert("value".into(), other);
        }
    }
    Value::Object(map)
}

fn budget(cli: &Cli) -> Result<OracleBudget> {
    let mut b = OracleBudget::default();
    if let Some(n) = cli.budget_n {
        b.max_dimension = n;
        b.max_elements = n.min(20);
    }
    b.validate()?;
    Ok(b)
}

fn solver(cli: &Cli) -> Result<Solver> {
    Ok(Solver::new(SolverConfig { fallback_budget: budget(cli)?, ..SolverConfig::default() }))
}

fn square(a: &BoolMatrix) -> Result<usize> {
    Ok(a.square_dim()?)
}

/// Runs one command. `stdin` is read when a command takes input and no
/// path is given.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Value> {
    match &cli.command {
        Command::Gen { kind } => generate(cli, kind),
        Command::Solve(input) => {
            let a: BoolMatrix = parse_doc(&read_input(input.path.as_ref(), stdin)?)?;
            square(&a)?;
            Ok(tagged(&solver(cli)?.kmm_check(&a)?))
        }
        Command::Oracle { what, input } => oracle(cli, *what, &read_input(input.path.as_ref(), stdin)?),
        Command::Verify { exhaustive, random, n, path } => match (exhaustive, random) {
            (Some(n), _) => verify_exhaustive(cli, *n),
            (None, Some(count)) => verify_random(cli, *count, n.expect("clap requires --n")),
            (None, None) => {
                let a: BoolMatrix = parse_doc(&read_input(path.as_ref(), stdin)?)?;
                verify_one(cli, &a)?.map_or_else(
                    |report| Err(CliError::Disagreement(report)),
                    |report| Ok(report),
                )
            }
        },
        Command::Diagonalize(input) => {
            let a: BoolMatrix = parse_doc(&read_input(input.path.as_ref(), stdin)?)?;
            let d = diagonalize(&a)?;
            let mut out = tagged(&d);
            out["diagonal"] = json!(has_diagonal_property(&d.transformed)?);
            Ok(out)
        }
        Command::Reduce { target, input } => reduce(cli, *target, &read_input(input.path.as_ref(), stdin)?),
        Command::Eval { expr, env, max_matrix_dim } => {
            let env: Environment = match env {
                Some(p) => parse_doc(&read_input(Some(p), stdin)?)?,
                None => Environment::new(),
            };
            let e = la::parse(expr)?;
            let config = EvalConfig { max_matrix_dim: *max_matrix_dim, ..EvalConfig::default() };
            let v = Evaluator::new(config).eval(&e, &env)?;
            Ok(tagged(&v))
        }
        Command::Axioms { trials } => {
            let report = la::check_axioms(*trials, cli.seed);
            let sigma = la::check_sigma_decomposition(*trials, cli.seed, 6);
            let mut out = tagged(&report);
            out["sigma_decomposition"] = to_value(&sigma);
            out["all_valid"] = json!(report.all_valid() && sigma.passed());
            if report.all_valid() && sigma.passed() {
                Ok(out)
            } else {
                Err(CliError::Disagreement(out))
            }
        }
    }
}

fn check_density(d: f64) -> Result<()> {
    if (0.0..=1.0).contains(&d) {
        Ok(())
    } else {
        Err(CliError::Schema(format!("density must lie in [0, 1], got {d}")))
    }
}

fn generate(cli: &Cli, kind: &GenKind) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    Ok(match kind {
        GenKind::Matrix(p) => {
            check_density(p.density)?;
            tagged(&random_matrix(&mut rng, p.n, p.density)?)
        }
        GenKind::Graph { params: p, bipartite } => {
            check_density(p.density)?;
            if *bipartite {
                let (a, g) = random_bipartite_instance(&mut rng, p.n, p.density)?;
                let mut out = tagged(&g);
                out["matrix"] = to_value(&a);
                out
            } else {
                tagged(&random_terminal_graph(&mut rng, p.n, p.density)?)
            }
        }
        GenKind::SetSystem(p) => {
            check_density(p.density)?;
            tagged(&random_set_system(&mut rng, p.n, p.density)?)
        }
        GenKind::Poset(p) => {
            check_density(p.density)?;
            tagged(&random_poset(&mut rng, p.n, p.density)?)
        }
    })
}

fn oracle(cli: &Cli, what: OracleKind, text: &str) -> Result<Value> {
    let b = budget(cli)?;
    Ok(match what {
        OracleKind::Cover => {
            let a: BoolMatrix = parse_doc(text)?;
            let c = oracle_min_cover(&a, &b)?;
            json!({"format": FORMAT, "l": c.size(), "cover": c})
        }
        OracleKind::Selection => {
            let a: BoolMatrix = parse_doc(text)?;
            let s = oracle_max_selection(&a, &b)?;
            json!({"format": FORMAT, "o": s.size(), "selection": s})
        }
        OracleKind::Menger => tagged(&oracle_menger(&parse_doc::<TerminalGraph>(text)?, &b)?),
        OracleKind::Hall => tagged(&oracle_hall(&parse_doc::<SetSystem>(text)?, &b)?),
        OracleKind::Dilworth => tagged(&oracle_dilworth(&parse_doc::<Poset>(text)?, &b)?),
    })
}

/// Solver against oracle. `Err` holds the report of a disagreement.
fn verify_one(cli: &Cli, a: &BoolMatrix) -> Result<std::result::Result<Value, Value>> {
    square(a)?;
    let b = budget(cli)?;
    let report = solver(cli)?.kmm_check(a)?;
    let (oc, os) = (oracle_min_cover(a, &b)?, oracle_max_selection(a, &b)?);
    let agree = report.equal
        && is_cover(a, &report.cover)?
        && is_selection(a, &report.selection)?
        && report.l == oc.size()
        && report.o == os.size();
    let out = json!({
        "format": FORMAT,
        "agree": agree,
        "matrix": a,
        "solver": report,
        "oracle": {"l": oc.size(), "o": os.size(), "cover": oc, "selection": os},
    });
    Ok(if agree { Ok(out) } else { Err(out) })
}

/// Largest side for `verify --exhaustive`; 5 would mean 2^25 matrices.
pub const MAX_EXHAUSTIVE_N: usize = 4;

fn verify_sweep(cli: &Cli, n: usize, matrices: impl Iterator<Item = BoolMatrix>) -> Result<Value> {
    let mut checked = 0u64;
    for a in matrices {
        if let Err(report) = verify_one(cli, &a)? {
            return Err(CliError::Disagreement(report));
        }
        checked += 1;
    }
    Ok(json!({"format": FORMAT, "agree": true, "n": n, "checked": checked}))
}

fn verify_exhaustive(cli: &Cli, n: usize) -> Result<Value> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(CliError::Budget(format!(
            "exhaustive sweep over {n}x{n} matrices exceeds the limit n <= {MAX_EXHAUSTIVE_N}"
        )));
    }
    verify_sweep(cli, n, (0u64..1 << (n * n)).map(|bits| BoolMatrix::from_bits(n, n, bits)))
}

fn verify_random(cli: &Cli, count: usize, n: usize) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut matrices = Vec::with_capacity(count);
    for k in 0..count {
        let density = [0.2, 0.5, 0.8][k % 3];
        matrices.push(random_matrix(&mut rng, n, density)?);
    }
    verify_sweep(cli, n, matrices.into_iter())
}

fn reduce(cli: &Cli, target: ReduceKind, text: &str) -> Result<Value> {
    let b = budget(cli)?;
    match target {
        ReduceKind::Menger => {
            let a: BoolMatrix = parse_doc(text)?;
            square(&a)?;
            let g = build_a_double_prime(&a)?;
            let m = oracle_menger(&g, &b)?;
            let (oc, os) = (oracle_min_cover(&a, &b)?, oracle_max_selection(&a, &b)?);
            let restricted = is_restricted_pair(&g, &b)?;
            let cut = cover_to_cut(&a, &oc).map_err(|e| e.to_string());
            let incidence = repair_beta_gamma(&g, &m.paths, &m.cut, &b)
                .and_then(|(p, c)| paths_cut_incidence(&g, &p, &c))
                .map_err(|e| e.to_string());
            Ok(json!({
                "format": FORMAT,
                "graph": g,
                "lambda": m.lambda,
                "kappa": m.kappa,
                "l": oc.size(),
                "o": os.size(),
                "restricted_pair": restricted,
                "paths": m.paths,
                "cut": m.cut,
                "selection_paths": selection_to_paths(&a, &os)?,
                "cover_cut": result_json(cut),
                "repaired_incidence": result_json(incidence),
            }))
        }
        ReduceKind::Hall => {
            let s: SetSystem = parse_doc(text)?;
            let up = union_property(&s, &b)?;
            let sdr = if up { Some(sdr_from_selection(&s)?) } else { None };
            let blocks = split_blocks(s.incidence(), &oracle_min_cover(s.incidence(), &b)?)?;
            Ok(json!({
                "format": FORMAT,
                "incidence": s.incidence(),
                "union_property": up,
                "sdr": sdr,
                "blocks": blocks,
            }))
        }
        ReduceKind::Dilworth => {
            let p: Poset = parse_doc(text)?;
            let d = oracle_dilworth(&p, &b)?;
            let inc = chains_element_incidence(&p, &d.chains)?;
            let padded = inc.pad_to_square();
            let report = solver(cli)?.kmm_check(&padded)?;
            Ok(json!({
                "format": FORMAT,
                "lambda": d.lambda,
                "kappa": d.kappa,
                "chains": d.chains,
                "antichain": d.antichain,
                "incidence": inc,
                "incidence_l": report.l,
                "incidence_o": report.o,
                "transversal_antichain": antichain_transversal(&p, &d.chains, &b)?,
            }))
        }
    }
}

fn result_json<T: Serialize>(r: std::result::Result<T, String>) -> Value {
    match r {
        Ok(v) => json!({"ok": v}),
        Err(e) => json!({"error": e}),
    }
}

/// Serialises `v` per the `--json-pretty` flag.
pub fn render(cli: &Cli, v: &Value) -> String {
    if cli.json_pretty {
        serde_json::to_string_pretty(v).expect("JSON values serialise")
    } else {
        serde_json::to_string(v).expect("JSON values serialise")
    }
}
