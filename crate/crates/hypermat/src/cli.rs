//! The `hypermat` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 infeasible
//! reinforcement, 3 disagreement with the brute-force oracle.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hypermat_core::brute::{self, BruteReinforcement, BruteSeparation};
use hypermat_core::reinforcement::{reinforce_with, ReinforceOptions};
use hypermat_core::*;
use num_bigint::BigInt;
use serde_json::{json, Value as Json};

use crate::format::{self, HypergraphFile, Mode, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "hypermat", version, about = "Hypergraphic matroid computations via minimum cuts")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cross-check the answer against exhaustive enumeration (small inputs only).
    #[arg(long, global = true)]
    oracle: bool,
    /// Drop repeated vertices inside an edge instead of rejecting the file.
    #[arg(long, global = true)]
    lenient: bool,
}

#[derive(Debug, Args)]
struct Input {
    /// Hypergraph file.
    file: PathBuf,
}

#[derive(Debug, Args)]
struct SetInput {
    file: PathBuf,
    /// Edge ids to use (default: all edges).
    #[arg(long, value_delimiter = ',')]
    set: Option<Vec<usize>>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank of an edge set.
    Rank(SetInput),
    /// Whether an edge set is a hyperforest.
    Independent(SetInput),
    /// Maximum-weight hyperforest; column 1 holds the weights.
    Maxforest(Input),
    /// Separate a point (column 1) from the hypergraphic matroid polytope.
    Separate(Input),
    /// Strength; column 1 holds capacities (default 1).
    Strength(Input),
    /// Arboricity: fewest hyperforests covering all edges.
    Arboricity(Input),
    /// Cheapest reinforcement to k disjoint hypertrees; columns 1 and 2 hold cost and bound.
    Reinforce {
        file: PathBuf,
        #[arg(short = 'k')]
        k: u64,
    },
    /// Run every applicable operation against the exhaustive oracles.
    OracleCheck {
        file: PathBuf,
        #[arg(short = 'k', default_value_t = 1)]
        k: u64,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Result of one oracle comparison.
enum Check {
    Agrees,
    Skipped(String),
    Differs(String),
}

impl Check {
    fn json(&self) -> Json {
        match self {
            Check::Agrees => json!("agrees"),
            Check::Skipped(why) => json!({ "skipped": why }),
            Check::Differs(why) => json!({ "differs": why }),
        }
    }
}

fn compare<T: PartialEq + std::fmt::Display>(oracle: Result<T>, ours: &T) -> Check {
    match oracle {
        Err(Error::GuardExceeded(why)) => Check::Skipped(why),
        Err(e) => Check::Skipped(e.to_string()),
        Ok(want) if want == *ours => Check::Agrees,
        Ok(want) => Check::Differs(format!("oracle {want}, algorithm {ours}")),
    }
}

struct Report {
    json: Json,
    text: String,
    check: Option<Check>,
    code: u8,
}

fn q(r: &Rational) -> Json {
    json!(r.to_string())
}

fn int(b: &BigInt) -> Json {
    i64::try_from(b).map(Json::from).unwrap_or_else(|_| json!(b.to_string()))
}

fn blocks(p: &Partition) -> Json {
    json!(p.blocks().iter().map(|b| b.iter().map(|v| v.index()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn block_text(p: &Partition) -> String {
    p.to_string()
}

fn vertex_list(vs: &[VertexId]) -> Json {
    json!(vs.iter().map(|v| v.index()).collect::<Vec<_>>())
}

fn edge_list(es: &[EdgeId]) -> Json {
    json!(es.iter().map(|e| e.index()).collect::<Vec<_>>())
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

fn load(path: &PathBuf, mode: Mode) -> std::result::Result<HypergraphFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    format::parse(&text, mode).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn edge_set(h: &Hypergraph, set: &Option<Vec<usize>>) -> std::result::Result<Vec<EdgeId>, Failure> {
    let ids: Vec<EdgeId> = match set {
        None => h.all_edges(),
        Some(s) => s.iter().copied().map(EdgeId).collect(),
    };
    Ok(h.check_edge_set(&ids)?)
}

fn run_rank(file: &HypergraphFile, set: &Option<Vec<usize>>, oracle: bool) -> std::result::Result<Report, Failure> {
    let h = &file.hypergraph;
    let f = edge_set(h, set)?;
    let r = rank(h, &f)?;
    Ok(Report {
        json: json!({ "rank": r.rank, "edges": edge_list(&f), "partition": blocks(&r.witness) }),
        text: format!("{}\nwitness partition: {}\n", r.rank, block_text(&r.witness)),
        check: oracle.then(|| compare(brute::brute_rank(h, &f), &r.rank)),
        code: EXIT_OK,
    })
}

fn run_independent(
    file: &HypergraphFile,
    set: &Option<Vec<usize>>,
    oracle: bool,
) -> std::result::Result<Report, Failure> {
    let h = &file.hypergraph;
    let f = edge_set(h, set)?;
    let r = rank(h, &f)?;
    let independent = r.rank == f.len();
    Ok(Report {
        json: json!({ "independent": independent, "edges": edge_list(&f), "rank": r.rank }),
        text: format!("{independent}\nrank {} of {} edges\n", r.rank, f.len()),
        check: oracle.then(|| compare(brute::brute_hyperforest(h, &f), &independent)),
        code: EXIT_OK,
    })
}

fn run_maxforest(file: &HypergraphFile, oracle: bool) -> std::result::Result<Report, Failure> {
    let h = &file.hypergraph;
    let w = file.finite_column(0, Role::Weight).map_err(Failure::usage)?;
    let (forest, weight) = max_weight_hyperforest(h, &w)?;
    Ok(Report {
        json: json!({ "weight": q(&weight), "edges": edge_list(&forest) }),
        text: format!("{weight}\nedges: {}\n", join(&forest)),
        check: oracle.then(|| compare(brute::brute_max_weight_forest(h, &w), &weight)),
        code: EXIT_OK,
    })
}

fn run_separate(file: &HypergraphFile, oracle: bool) -> std::result::Result<Report, Failure> {
    let h = &file.hypergraph;
    let x = match file.finite_column(0, Role::Point) {
        Ok(x) => x,
        // negative entries are a legitimate answer here, not an input error
        Err(_) => {
            let col = file.columns.first().ok_or_else(|| Failure::usage("column 1 is missing"))?;
            let values = col
                .iter()
                .map(|v| match v {
                    Value::Finite(r) => Ok(r.clone()),
                    Value::Infinite => Err(Failure::usage("column 1: `inf` not allowed")),
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            EdgeVector::new_signed(Role::Point, values, h.m())?
        }
    };
    let out = separate_polytope(h, &x)?;
    let (violation, text) = match &out {
        SeparationOutcome::InPolytope => (Json::Null, "in polytope\n".to_string()),
        SeparationOutcome::Negative(e) => (
            json!({ "kind": "negative", "edge": e.index() }),
            format!("violated: x({e}) < 0\n"),
        ),
        SeparationOutcome::AboveOne(e) => (
            json!({ "kind": "above_one", "edge": e.index() }),
            format!("violated: x({e}) > 1\n"),
        ),
        SeparationOutcome::Violated(v) => (
            json!({
                "kind": "rank",
                "set": vertex_list(&v.set),
                "edges": edge_list(&v.edges),
                "lhs": q(&v.lhs),
                "rhs": v.rhs,
                "partition": blocks(&v.partition),
            }),
            format!(
                "violated: x(E[W]) = {} > {} for W = {{{}}}\n",
                v.lhs,
                v.rhs,
                join(&v.set)
            ),
        ),
    };
    let check = oracle.then(|| match brute::brute_separate(h, &x) {
        Err(e) => Check::Skipped(e.to_string()),
        Ok(b) if (b == BruteSeparation::InPolytope) == out.is_in_polytope() => Check::Agrees,
        Ok(b) => Check::Differs(format!("oracle {b:?}, algorithm {out:?}")),
    });
    Ok(Report {
        json: json!({ "in_polytope": out.is_in_polytope(), "violation": violation }),
        text,
        check,
        code: EXIT_OK,
    })
}

fn run_strength(file: &HypergraphFile, oracle: bool) -> std::result::Result<Report, Failure> {
    let h = &file.hypergraph;
    let c = if file.column_count() == 0 {
        EdgeVector::ones(Role::Capacity, h.m())
    } else {
        file.finite_column(0, Role::Capacity).map_err(Failure::usage)?
    };
    let s = strength(h, &c)?;
    Ok(Report {
        json: json!({
            "strength": q(&s.sigma),
            "floor": int(&s.integer_packing),
            "partition": blocks(&s.critical_partition),
            "iterations": s.iterations,
        }),
        text: format!(
            "{}\nfloor {}, critical partition {}, {} iterations\n",
            s.sigma,
            s.integer_packing,
            block_text(&s.critical_partition),
            s.iterations
        ),
        check: oracle.then(|| compare(brute::brute_strength(h, &c), &s.sigma)),
        code: EXIT_OK,
    })
}

fn run_arboricity(file: &HypergraphFile, oracle: bool) -> std::result::Result<Report, Failure> {
    let h = &file.hypergraph;
    let a = arboricity(h)?;
    Ok(Report {
        json: json!({
            "arboricity": int(&a.k),
            "density": q(&a.rho),
            "witness": vertex_list(&a.witness),
            "iterations": a.iterations,
        }),
        text: format!("{}\ndensity {} on {{{}}}, {} iterations\n", a.k, a.rho, join(&a.witness), a.iterations),
        check: oracle.then(|| compare(brute::brute_arboricity(h), &a.rho)),
        code: EXIT_OK,
    })
}

fn bounds_of(file: &HypergraphFile) -> std::result::Result<Vec<UpperBound>, Failure> {
    let col = file.columns.get(1).ok_or_else(|| Failure::usage("reinforce needs columns: cost | bound"))?;
    Ok(col
        .iter()
        .map(|v| match v {
            Value::Finite(r) => UpperBound::Finite(r.clone()),
            Value::Infinite => UpperBound::Unbounded,
        })
        .collect())
}

fn reinforce_oracle(h: &Hypergraph, k: u64, d: &EdgeVector, result: &ReinforcementResult) -> Check {
    let mut u = Vec::with_capacity(h.m());
    for b in &result.bounds {
        match b.to_i64().and_then(|v| u64::try_from(v).ok()) {
            Some(v) if b.is_integer() => u.push(v),
            _ => return Check::Skipped("bounds are not integers".into()),
        }
    }
    match brute::brute_reinforce(h, k, d, &u) {
        Err(e) => Check::Skipped(e.to_string()),
        Ok(BruteReinforcement::Infeasible) if result.status == Status::Infeasible => Check::Agrees,
        Ok(BruteReinforcement::Optimal { cost, .. }) if result.status == Status::Optimal && cost == result.cost => {
            Check::Agrees
        }
        Ok(other) => Check::Differs(format!("oracle {other:?}, algorithm {:?} cost {}", result.status, result.cost)),
    }
}

fn run_reinforce(file: &HypergraphFile, k: u64, oracle: bool) -> std::result::Result<Report, Failure> {
    let h = &file.hypergraph;
    let d = file.finite_column(0, Role::Cost).map_err(Failure::usage)?;
    let u = bounds_of(file)?;
    let r = reinforce_with(h, k, &d, &u, &ReinforceOptions::default())?;
    let dual = &r.dual;
    let dual_json = json!({
        "objective": q(&dual.objective(k, &r.bounds)),
        "gamma": dual.gamma.iter().map(|(p, g)| json!({ "partition": blocks(p), "value": q(g) })).collect::<Vec<_>>(),
        "beta": dual.beta.iter().map(q).collect::<Vec<_>>(),
        "reduced_costs": dual.d_reduced.iter().map(q).collect::<Vec<_>>(),
        "tight": edge_list(&dual.tight),
    });
    let (status, code) = match r.status {
        Status::Optimal => ("optimal", EXIT_OK),
        Status::Infeasible => ("infeasible", EXIT_INFEASIBLE),
    };
    let (json, text) = match r.status {
        Status::Optimal => (
            json!({
                "status": status,
                "cost": q(&r.cost),
                "x": r.x.values().iter().map(q).collect::<Vec<_>>(),
                "dual": dual_json,
                "iterations": r.iterations,
            }),
            format!("optimal\ncost {}\nx: {}\n", r.cost, join(r.x.values())),
        ),
        Status::Infeasible => (
            json!({
                "status": status,
                "cost": Json::Null,
                "x": Json::Null,
                "witness": blocks(&dual.partition),
                "dual": dual_json,
                "iterations": r.iterations,
            }),
            format!(
                "infeasible\nbound across {} is {}, below {}\n",
                block_text(&dual.partition),
                dual.partition.crossing(h, &h.all_edges()).iter().map(|e| &r.bounds[e.index()]).sum::<Rational>(),
                k * (dual.partition.len() as u64 - 1)
            ),
        ),
    };
    Ok(Report { json, text, check: oracle.then(|| reinforce_oracle(h, k, &d, &r)), code })
}

fn run_oracle_check(file: &HypergraphFile, k: u64) -> std::result::Result<Report, Failure> {
    let h = &file.hypergraph;
    let mut checks: Vec<(&str, Check)> = Vec::new();
    let all = h.all_edges();
    let r = rank(h, &all)?;
    checks.push(("rank", compare(brute::brute_rank(h, &all), &r.rank)));
    let indep = r.rank == all.len();
    checks.push(("independent", compare(brute::brute_hyperforest(h, &all), &indep)));
    let ones = EdgeVector::ones(Role::Point, h.m());
    if h.n() > 0 {
        let p = min_partition(h, &all, &ones, &Rational::one())?;
        checks.push((
            "min_partition",
            compare(brute::brute_min_partition(h, &all, &ones, &Rational::one()).map(|(v, _)| v), &p.value),
        ));
    }
    let first = file.finite_column(0, Role::Weight).ok();
    let w = first.clone().unwrap_or_else(|| EdgeVector::ones(Role::Weight, h.m()));
    let (_, weight) = max_weight_hyperforest(h, &w)?;
    checks.push(("maxforest", compare(brute::brute_max_weight_forest(h, &w), &weight)));
    if let Some(x) = first.clone().filter(|x| x.values().iter().all(|v| *v <= Rational::one())) {
        let out = separate_polytope(h, &x)?;
        let check = match brute::brute_separate(h, &x) {
            Err(e) => Check::Skipped(e.to_string()),
            Ok(b) if (b == BruteSeparation::InPolytope) == out.is_in_polytope() => Check::Agrees,
            Ok(b) => Check::Differs(format!("oracle {b:?}, algorithm {out:?}")),
        };
        checks.push(("separate", check));
    }
    if h.n() >= 2 {
        let c = first.unwrap_or_else(|| EdgeVector::ones(Role::Capacity, h.m()));
        let s = strength(h, &c)?;
        checks.push(("strength", compare(brute::brute_strength(h, &c), &s.sigma)));
    }
    match arboricity(h) {
        Ok(a) => checks.push(("arboricity", compare(brute::brute_arboricity(h), &a.rho))),
        Err(e) => checks.push(("arboricity", Check::Skipped(e.to_string()))),
    }
    if file.column_count() >= 2 {
        let d = file.finite_column(0, Role::Cost).map_err(Failure::usage)?;
        let r = reinforce_with(h, k, &d, &bounds_of(file)?, &ReinforceOptions::default())?;
        checks.push(("reinforce", reinforce_oracle(h, k, &d, &r)));
    }
    let agree = checks.iter().all(|(_, c)| !matches!(c, Check::Differs(_)));
    let mut text = String::new();
    for (name, c) in &checks {
        let line = match c {
            Check::Agrees => "agrees".to_string(),
            Check::Skipped(why) => format!("skipped ({why})"),
            Check::Differs(why) => format!("DIFFERS: {why}"),
        };
        text.push_str(&format!("{name}: {line}\n"));
    }
    let json = json!({
        "checks": checks.iter().map(|(name, c)| json!({ "operation": name, "result": c.json() })).collect::<Vec<_>>(),
        "all_agree": agree,
    });
    Ok(Report { json, text, check: None, code: if agree { EXIT_OK } else { EXIT_MISMATCH } })
}

fn execute(cli: &Cli) -> std::result::Result<Report, Failure> {
    let mode = if cli.lenient { Mode::Lenient } else { Mode::Strict };
    let oracle = cli.oracle;
    match &cli.command {
        Command::Rank(a) => run_rank(&load(&a.file, mode)?, &a.set, oracle),
        Command::Independent(a) => run_independent(&load(&a.file, mode)?, &a.set, oracle),
        Command::Maxforest(a) => run_maxforest(&load(&a.file, mode)?, oracle),
        Command::Separate(a) => run_separate(&load(&a.file, mode)?, oracle),
        Command::Strength(a) => run_strength(&load(&a.file, mode)?, oracle),
        Command::Arboricity(a) => run_arboricity(&load(&a.file, mode)?, oracle),
        Command::Reinforce { file, k } => run_reinforce(&load(file, mode)?, *k, oracle),
        Command::OracleCheck { file, k } => run_oracle_check(&load(file, mode)?, *k),
    }
}

fn warnings(cli: &Cli) -> Vec<String> {
    if !cli.lenient {
        return Vec::new();
    }
    let path = match &cli.command {
        Command::Rank(a) | Command::Independent(a) => &a.file,
        Command::Maxforest(a) | Command::Separate(a) | Command::Strength(a) | Command::Arboricity(a) => &a.file,
        Command::Reinforce { file, .. } | Command::OracleCheck { file, .. } => file,
    };
    std::fs::read_to_string(path)
        .ok()
        .and_then(|t| format::parse(&t, Mode::Lenient).ok())
        .map(|f| f.warnings)
        .unwrap_or_default()
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Output { code, stdout: rendered, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let mut out = Output::default();
    for w in warnings(&cli) {
        out.stderr.push_str(&format!("warning: {w}\n"));
    }
    match execute(&cli) {
        Err(f) => {
            out.code = f.code;
            out.stderr.push_str(&format!("error: {}\n", f.message));
        }
        Ok(mut report) => {
            out.code = report.code;
            if let Some(check) = &report.check {
                if let Json::Object(map) = &mut report.json {
                    map.insert("oracle".into(), check.json());
                }
                match check {
                    Check::Agrees => report.text.push_str("oracle: agrees\n"),
                    Check::Skipped(why) => out.stderr.push_str(&format!("warning: oracle skipped: {why}\n")),
                    Check::Differs(why) => {
                        out.stderr.push_str(&format!("error: oracle mismatch: {why}\n"));
                        out.code = EXIT_MISMATCH;
                    }
                }
            }
            out.stdout = if cli.json {
                let mut s = serde_json::to_string(&report.json).expect("JSON values serialize");
                s.push('\n');
                s
            } else {
                report.text
            };
        }
    }
    out
}
