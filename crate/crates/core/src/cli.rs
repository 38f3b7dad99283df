//! Command-line front end.
//!
//! Every subcommand renders a single artifact (text, CSV or JSON) and a
//! pass/fail verdict. [`run`] never prints; the binary decides where the
//! artifact goes and maps the verdict to an exit status.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grid::build_grid_code;
use crate::hcodes::{
    build_hcode, code_distance_exhaustive, verify_transversal_hadamard, DEFAULT_DISTANCE_SCAN_MAX_N,
};
use crate::models::{e1_poly, e2_poly};
use crate::oracle::{
    conditional_error, enumerate_exact, enumerate_truncated, OracleResult, MAX_EXACT_BITS,
};
use crate::poly::ErrorPoly2;
use crate::search::{
    asymptotic_ratio_check, cost_curve, fit_points, pareto_search, query, total_input_count,
    CurvePoint, Families, FitResult, ParetoSet, SearchConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "mldistill",
    version,
    about = "H-code magic-state distillation: code checks, oracle, protocol search"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for parallel stages (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[arg(long, global = true, value_enum, default_value_t = Emit::Text)]
    pub emit: Emit,

    /// Write the artifact here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Structural checks on H_n codes.
    VerifyCodes {
        /// Block lengths: a single even n or an inclusive range `a..b`.
        #[arg(long, default_value = "6..24")]
        n: String,
    },
    /// Enumerate error configurations of an H-code or grid code.
    Oracle(OracleArgs),
    /// Pareto search; with --target answers one query, otherwise emits the cost curve.
    Search(SearchArgs),
    /// Raw input count of an r-round concatenated schedule.
    Size(SizeArgs),
    /// Linear fit of the cost curve, plus plot data.
    Fit(FitArgs),
}

#[derive(Clone, Debug, Args)]
pub struct OracleArgs {
    /// Grid dimensions, e.g. `6` or `6x6`.
    #[arg(long, default_value = "6")]
    pub dims: String,
    /// Truncate to configurations of at most this total weight.
    #[arg(long)]
    pub max_weight: Option<u32>,
    #[arg(long)]
    pub eps_l: Option<f64>,
    #[arg(long)]
    pub eps_p: Option<f64>,
    /// Largest allowed |oracle count - model coefficient|.
    #[arg(long, default_value_t = 0.0)]
    pub coeff_tolerance: f64,
}

#[derive(Clone, Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 0.01)]
    pub eps0: f64,
    /// Target output error; omit to emit the whole cost curve.
    #[arg(long)]
    pub target: Option<f64>,
    #[arg(long, default_value_t = 5)]
    pub max_rounds: usize,
    #[arg(long, default_value_t = 20)]
    pub max_k: u64,
    #[arg(long, default_value_t = crate::search::pareto::DEFAULT_MAX_BH_K)]
    pub max_bh_k: u64,
    /// Comma-separated subset of bk,mek,bh,h1,ml, or `all`.
    #[arg(long, default_value = "all")]
    pub families: String,
    #[arg(long, default_value_t = crate::search::pareto::DEFAULT_CAP)]
    pub cap: usize,
    /// First integer exponent of the cost curve.
    #[arg(long, default_value_t = 5)]
    pub lo: u32,
    /// Last integer exponent of the cost curve.
    #[arg(long, default_value_t = 40)]
    pub hi: u32,
}

#[derive(Clone, Debug, Args)]
pub struct SizeArgs {
    #[arg(long, default_value_t = 2)]
    pub rounds: u32,
    #[arg(long, default_value_t = 10)]
    pub k: u64,
    /// Also report inputs per output per round at this input error.
    #[arg(long)]
    pub ratios_eps: Option<f64>,
}

#[derive(Clone, Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    /// Write the two-column plot series here.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

/// A rendered artifact and whether every check it reports passed.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub body: String,
    pub passed: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Parse { .. } => EXIT_USAGE,
        _ => EXIT_CHECK_FAILED,
    }
}

/// Machine-readable error body for JSON mode.
pub fn error_json(err: &Error) -> String {
    let v = json!({ "error": { "kind": err.kind(), "message": err.to_string() } });
    format!(
        "{}\n",
        serde_json::to_string_pretty(&v).expect("static shape")
    )
}

/// Runs the configured command on a dedicated thread pool.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::usage(format!("cannot start thread pool: {e}")))?;
    pool.install(|| dispatch(cfg))
}

fn dispatch(cfg: &RunConfig) -> Result<Report> {
    match &cfg.command {
        Command::VerifyCodes { n } => verify_codes(n, cfg.emit),
        Command::Oracle(a) => oracle(a, cfg.emit),
        Command::Search(a) => search(a, cfg.emit),
        Command::Size(a) => size(a, cfg.emit),
        Command::Fit(a) => fit(a, cfg.emit),
    }
}

/// Writes `contents` to `path` via a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

fn to_json(v: &impl Serialize) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("serializable report")
    )
}

fn parse_range(s: &str) -> Result<Vec<usize>> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Error::usage(format!("bad block length {t:?}")))
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if a > b {
        return Err(Error::usage(format!("empty range {s:?}")));
    }
    Ok((a..=b).filter(|n| n % 2 == 0).collect())
}

pub fn parse_dims(s: &str) -> Result<Vec<usize>> {
    s.split(['x', 'X', ','])
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::usage(format!("bad dimension {t:?} in {s:?}")))
        })
        .collect()
}

#[derive(Serialize)]
struct CodeRow {
    n: usize,
    k: usize,
    stabilizers_commute: bool,
    logicals_commute_with_stabilizers: bool,
    logical_pairing: bool,
    no_weight_one_logicals: bool,
    transversal_hadamard: bool,
    distance: Option<usize>,
    passed: bool,
}

fn verify_codes(range: &str, emit: Emit) -> Result<Report> {
    let ns = parse_range(range)?;
    if ns.is_empty() {
        return Err(Error::usage(format!("no even block lengths in {range:?}")));
    }
    let rows: Vec<CodeRow> = ns
        .iter()
        .map(|&n| {
            let code = build_hcode(n)?;
            let r = code.validate();
            let had = verify_transversal_hadamard(&code);
            let distance = if n <= DEFAULT_DISTANCE_SCAN_MAX_N {
                Some(code_distance_exhaustive(
                    &code,
                    DEFAULT_DISTANCE_SCAN_MAX_N,
                )?)
            } else {
                None
            };
            Ok(CodeRow {
                n,
                k: code.k(),
                passed: r.ok() && had && distance.is_none_or(|d| d == 2),
                stabilizers_commute: r.stabilizers_commute,
                logicals_commute_with_stabilizers: r.logicals_commute_with_stabilizers,
                logical_pairing: r.logical_pairing,
                no_weight_one_logicals: r.no_weight_one_logicals,
                transversal_hadamard: had,
                distance,
            })
        })
        .collect::<Result<_>>()?;
    let passed = rows.iter().all(|r| r.passed);
    let body = match emit {
        Emit::Json => to_json(&json!({ "codes": rows, "passed": passed })),
        Emit::Csv => {
            let mut s = String::from(
                "n,k,stabilizers_commute,logicals_commute_with_stabilizers,logical_pairing,no_weight_one_logicals,transversal_hadamard,distance,passed\n",
            );
            for r in &rows {
                let d = r.distance.map_or(String::new(), |d| d.to_string());
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{}",
                    r.n,
                    r.k,
                    r.stabilizers_commute,
                    r.logicals_commute_with_stabilizers,
                    r.logical_pairing,
                    r.no_weight_one_logicals,
                    r.transversal_hadamard,
                    d,
                    r.passed
                );
            }
            s
        }
        Emit::Text => {
            let mut s = format!(
                "{:>4} {:>4} {:>9} {:>9} {:>8} {:>8}\n",
                "n", "k", "structure", "hadamard", "distance", "result"
            );
            for r in &rows {
                let structure = r.stabilizers_commute
                    && r.logicals_commute_with_stabilizers
                    && r.logical_pairing
                    && r.no_weight_one_logicals;
                let d = r.distance.map_or("-".to_string(), |d| d.to_string());
                let _ = writeln!(
                    s,
                    "{:>4} {:>4} {:>9} {:>9} {:>8} {:>8}",
                    r.n,
                    r.k,
                    ok(structure),
                    ok(r.transversal_hadamard),
                    d,
                    if r.passed { "PASS" } else { "FAIL" }
                );
            }
            s
        }
    };
    Ok(Report { body, passed })
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "broken"
    }
}

/// One closed-form coefficient compared against the oracle's count of
/// accepted configurations with output 0 wrong.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoeffCheck {
    pub i: u32,
    pub j: u32,
    pub oracle: u64,
    pub model: f64,
    pub passed: bool,
}

type ModelChecks = (ErrorPoly2, Vec<(u32, u32)>);

/// Closed-form model for a grid, and the weight classes it is expected to
/// reproduce exactly.
fn model_for(dims: &[usize]) -> Result<Option<ModelChecks>> {
    match dims {
        [n] => Ok(Some((
            e1_poly(*n as u64 - 4)?,
            vec![(2, 0), (0, 2), (1, 2)],
        ))),
        [a, b] if a == b => Ok(Some((
            e2_poly(*a as u64 - 4)?,
            vec![(2, 0), (1, 2), (0, 4)],
        ))),
        _ => Ok(None),
    }
}

pub fn oracle_checks(
    result: &OracleResult,
    model: &ErrorPoly2,
    classes: &[(u32, u32)],
    tol: f64,
) -> Vec<CoeffCheck> {
    let m = &result.marginal[0];
    classes
        .iter()
        .map(|&(i, j)| {
            let oracle = m.count(i, j);
            let model = model.coeff(i, j);
            CoeffCheck {
                i,
                j,
                oracle,
                model,
                passed: (oracle as f64 - model).abs() <= tol,
            }
        })
        .collect()
}

fn oracle(a: &OracleArgs, emit: Emit) -> Result<Report> {
    let dims = parse_dims(&a.dims)?;
    let grid = build_grid_code(&dims)?;
    let bits = grid.n_encoded() + 2 * grid.n_sites();
    let result = match a.max_weight {
        Some(w) => enumerate_truncated(&grid, w)?,
        None if bits <= MAX_EXACT_BITS => enumerate_exact(&grid)?,
        None => {
            return Err(Error::usage(format!(
                "{bits} error bits is too many for exact enumeration; pass --max-weight"
            )))
        }
    };
    let model = model_for(&dims)?;
    let checks = model
        .as_ref()
        .map(|(p, classes)| {
            let in_range: Vec<(u32, u32)> = classes
                .iter()
                .copied()
                .filter(|&(i, j)| a.max_weight.is_none_or(|w| i + j <= w))
                .collect();
            oracle_checks(&result, p, &in_range, a.coeff_tolerance)
        })
        .unwrap_or_default();
    let conditional = match (a.eps_l, a.eps_p) {
        (Some(l), Some(p)) => Some(json!({
            "eps_l": l,
            "eps_p": p,
            "oracle": conditional_error(&result, l, p)?,
            "model": model.as_ref().map(|(m, _)| m.eval(l, p)),
        })),
        (None, None) => None,
        _ => return Err(Error::usage("--eps-l and --eps-p go together")),
    };
    let passed = checks.iter().all(|c| c.passed);
    let marginal: Vec<(u32, u32, u64)> = result.marginal[0]
        .classes()
        .map(|((i, j), c)| (i, j, c))
        .collect();

    let body = match emit {
        Emit::Json => to_json(&json!({
            "dims": dims,
            "n_logical": result.n_logical,
            "n_physical": result.n_physical,
            "configs_visited": result.configs_visited,
            "truncation": result.truncation,
            "marginals_symmetric": result.marginals_symmetric(),
            "marginal_counts": marginal,
            "marginal_poly": result.marginal_poly(0),
            "checks": checks,
            "conditional": conditional,
            "passed": passed,
        })),
        Emit::Csv => {
            let mut s = String::from("i,j,oracle_count,model_coeff,checked,passed\n");
            for &(i, j, c) in &marginal {
                let check = checks.iter().find(|x| (x.i, x.j) == (i, j));
                let m = model
                    .as_ref()
                    .map_or(String::new(), |(p, _)| p.coeff(i, j).to_string());
                let _ = writeln!(
                    s,
                    "{i},{j},{c},{m},{},{}",
                    check.is_some(),
                    check.map_or(String::new(), |x| x.passed.to_string())
                );
            }
            s
        }
        Emit::Text => {
            let mut s = format!(
                "grid {}: {} logical + {} physical error bits, {} configurations ({:?})\n",
                a.dims,
                result.n_logical,
                result.n_physical,
                result.configs_visited,
                result.truncation
            );
            s.push_str("accepted with output 0 wrong, by (logical, physical) weight:\n");
            for &(i, j, c) in &marginal {
                let _ = writeln!(s, "  ({i},{j}) {c}");
            }
            for c in &checks {
                let _ = writeln!(
                    s,
                    "check ({},{}): oracle {} model {} {}",
                    c.i,
                    c.j,
                    c.oracle,
                    c.model,
                    if c.passed { "PASS" } else { "FAIL" }
                );
            }
            if let Some(c) = &conditional {
                let _ = writeln!(s, "conditional error: {c}");
            }
            s
        }
    };
    Ok(Report { body, passed })
}

pub fn search_config(a: &SearchArgs) -> Result<SearchConfig> {
    Ok(SearchConfig {
        eps0: a.eps0,
        max_rounds: a.max_rounds,
        max_k: a.max_k,
        max_bh_k: a.max_bh_k,
        families: Families::parse(&a.families)?,
        cap: a.cap,
        ..SearchConfig::default()
    })
}

/// Cost curve over `lo..=hi`, dropping exponents no entry reaches.
fn reachable_curve(set: &ParetoSet, lo: u32, hi: u32) -> Result<Vec<CurvePoint>> {
    if lo > hi {
        return Err(Error::usage(format!("empty exponent range {lo}..={hi}")));
    }
    let pts: Vec<CurvePoint> = (lo..=hi)
        .filter_map(|x| cost_curve(set, x, x).ok())
        .flatten()
        .collect();
    if pts.is_empty() {
        return Err(Error::Unreachable(format!(
            "no exponent in {lo}..={hi} is reachable within the search bounds"
        )));
    }
    Ok(pts)
}

pub fn curve_csv(points: &[CurvePoint]) -> String {
    let mut s = String::from("target_exponent,achieved_neg_log10_eps,cost,protocol\n");
    for p in points {
        let _ = writeln!(
            s,
            "{},{:.6},{:.6},{}",
            p.target_exponent, p.achieved_neg_log10_eps, p.cost, p.protocol
        );
    }
    s
}

fn search(a: &SearchArgs, emit: Emit) -> Result<Report> {
    let cfg = search_config(a)?;
    let set = pareto_search(&cfg)?;
    let body = if let Some(target) = a.target {
        if target.is_nan() || target <= 0.0 {
            return Err(Error::usage(format!(
                "target must be positive, got {target}"
            )));
        }
        let e = query(&set, target)?;
        let protocol = e.expr.to_string();
        match emit {
            Emit::Json => to_json(&json!({
                "eps0": cfg.eps0,
                "target": target,
                "protocol": protocol,
                "rounds": e.expr.depth(),
                "eps_out": e.eval.eps_out,
                "neg_log10_eps": e.eval.neg_log10_eps(),
                "cost": e.eval.cost,
                "accept": e.eval.accept,
                "pareto_size": set.len(),
            })),
            Emit::Csv => format!(
                "target,achieved_neg_log10_eps,cost,protocol\n{target:e},{:.6},{:.6},{protocol}\n",
                e.eval.neg_log10_eps(),
                e.eval.cost
            ),
            Emit::Text => format!(
                "{protocol}\n  eps_out {:.4e} (-log10 {:.3})\n  cost    {:.3}\n  accept  {:.6}\n",
                e.eval.eps_out,
                e.eval.neg_log10_eps(),
                e.eval.cost,
                e.eval.accept
            ),
        }
    } else {
        let points = reachable_curve(&set, a.lo, a.hi)?;
        match emit {
            Emit::Json => to_json(&json!({
                "eps0": cfg.eps0,
                "pareto_size": set.len(),
                "points": points,
            })),
            Emit::Csv => curve_csv(&points),
            Emit::Text => {
                let mut s = String::new();
                for p in &points {
                    let _ = writeln!(
                        s,
                        "1e-{:<3} {:>7.3} {:>10.3}  {}",
                        p.target_exponent, p.achieved_neg_log10_eps, p.cost, p.protocol
                    );
                }
                s
            }
        }
    };
    Ok(Report { body, passed: true })
}

fn size(a: &SizeArgs, emit: Emit) -> Result<Report> {
    let total = total_input_count(a.rounds, a.k)?;
    let ratios = a
        .ratios_eps
        .map(|eps| asymptotic_ratio_check(a.k, eps, a.rounds))
        .transpose()?;
    let body = match emit {
        Emit::Json => to_json(&json!({
            "rounds": a.rounds,
            "k": a.k,
            "total_inputs": u64::try_from(total).map_or_else(|_| json!(total.to_string()), |t| json!(t)),
            "ratios": ratios,
        })),
        Emit::Csv => {
            let mut s = format!("rounds,k,total_inputs\n{},{},{}\n", a.rounds, a.k, total);
            if let Some(r) = &ratios {
                s.push_str("round,eps_out,inputs_per_output,inputs_per_output_with_rejection\n");
                for x in r {
                    let _ = writeln!(
                        s,
                        "{},{:e},{},{}",
                        x.round, x.eps_out, x.inputs_per_output, x.inputs_per_output_with_rejection
                    );
                }
            }
            s
        }
        Emit::Text => {
            let mut s = format!("{total}\n");
            if let Some(r) = &ratios {
                for x in r {
                    let _ = writeln!(
                        s,
                        "round {}: eps_out {:.3e}, inputs/output {:.4} ({:.4} with rejection)",
                        x.round, x.eps_out, x.inputs_per_output, x.inputs_per_output_with_rejection
                    );
                }
            }
            s
        }
    };
    Ok(Report { body, passed: true })
}

/// Comment header plus `neg_log10_eps,cost` rows.
pub fn plot_data(fit: &FitResult) -> String {
    let mut s = format!(
        "# fit: cost = {:.6} * log10(1/eps) + {:.6}; gamma = {:.6}\nneg_log10_eps,cost\n",
        fit.slope, fit.intercept, fit.gamma
    );
    for p in &fit.points {
        let _ = writeln!(s, "{:.6},{:.6}", p.achieved_neg_log10_eps, p.cost);
    }
    s
}

/// Queries every integer exponent in `lo..=hi`, fits, and writes the
/// plot series to `path`.
pub fn emit_plot_data(set: &ParetoSet, lo: u32, hi: u32, path: &Path) -> Result<FitResult> {
    let fit = fit_points(set.eps0, reachable_curve(set, lo, hi)?)?;
    write_atomic(path, plot_data(&fit).as_bytes())?;
    Ok(fit)
}

fn fit(a: &FitArgs, emit: Emit) -> Result<Report> {
    let cfg = search_config(&a.search)?;
    let set = pareto_search(&cfg)?;
    let fit = match &a.plot_data {
        Some(p) => emit_plot_data(&set, a.search.lo, a.search.hi, p)?,
        None => fit_points(set.eps0, reachable_curve(&set, a.search.lo, a.search.hi)?)?,
    };
    let body = match emit {
        Emit::Json => to_json(&fit),
        Emit::Csv => plot_data(&fit),
        Emit::Text => format!(
            "cost = {:.3} * log10(1/eps) + {:.3}\ngamma = {:.3} ({} points)\n",
            fit.slope,
            fit.intercept,
            fit.gamma,
            fit.points.len()
        ),
    };
    Ok(Report { body, passed: true })
}

/// JSON body for a value, used by tests and the schema checks.
pub fn parse_json(body: &str) -> Result<Value> {
    serde_json::from_str(body).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })
}
