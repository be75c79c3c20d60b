mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use hbac_core::algorithms::{build_schedule, AlgorithmSpec, Family, Scope};
use hbac_core::bench::{
    check_row, compute_row, emit_curve, figure_curves, published, search_resources, CurveKind, CurveSpec,
    SearchRequest, Subject, TableId, Target,
};
use hbac_core::engine::{run_schedule, HotSpins, SpinSystem};
use hbac_core::oracle::{run_schedule_oracle, DiagonalState};
use hbac_core::ppa::{run_ppa_traced, PpaConfig, PpaStop};
use hbac_core::relaxation::{run_relaxed, RelaxConfig};
use hbac_core::Regime;

use config::FileConfig;
use output::{emit, sig, sig_opt, Format};

#[derive(Parser)]
#[command(name = "hbac", version, about = "Heat-bath algorithmic cooling simulator")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Equilibrium bias of the reset spin.
    #[arg(long, global = true)]
    eps0: Option<f64>,
    /// `linear` (biases in units of eps0) or `exact` (absolute biases).
    #[arg(long, global = true)]
    regime: Option<Regime>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML file with defaults for the flags above (and `threads`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for table commands.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one algorithm on one register.
    Run(RunArgs),
    /// Reproduce a published table (t1..t10) or figure dataset (f1..f5).
    Table(TableArgs),
    /// Reproduce tables t1..t10 and fail if any row disagrees.
    Check,
    /// Smallest register reaching a target bias, with its run-time.
    Search(SearchArgs),
    /// Level-by-level mPAC (or infPAC) biases.
    Curve(CurveArgs),
    /// Partner pairing algorithm on the exact diagonal state.
    Ppa(PpaArgs),
    /// Run an algorithm with finite-duration resets and leaky computation spins.
    Relaxed(RelaxedArgs),
}

#[derive(Args)]
struct RunArgs {
    /// e.g. pac2, pac3, 4pac, vmpac:3,5, 3fib, dfib, fernandez:6
    algorithm: Family,
    #[arg(short, long)]
    n: usize,
    #[arg(long, default_value = "full")]
    scope: Scope,
    #[arg(long, value_enum, default_value_t = Engine::Bias)]
    engine: Engine,
    /// Override the family's hot-spin policy (strict, heated, tracked).
    #[arg(long)]
    hot_spins: Option<HotSpins>,
    /// Report every spin, not only the MSB.
    #[arg(long)]
    all_spins: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// Marginal biases, one per spin.
    Bias,
    /// Exact 2^n diagonal state (n <= 24).
    Oracle,
}

#[derive(Args)]
struct TableArgs {
    id: TableId,
    /// Exit with status 2 if any row disagrees with the published one.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// An algorithm name or `ppa`.
    subject: Subject,
    /// Absolute target bias.
    #[arg(long, conflicts_with = "factor", required_unless_present = "factor")]
    target: Option<f64>,
    /// Target as a multiple of eps0.
    #[arg(long)]
    factor: Option<f64>,
    #[arg(long, default_value_t = 31)]
    max_spins: usize,
    /// Shortfall that still counts as reaching the target.
    #[arg(long, default_value_t = 0.0)]
    tolerance: f64,
}

#[derive(Args)]
struct CurveArgs {
    /// `mpac` with `--m`, or `infpac`.
    #[arg(default_value = "mpac")]
    kind: String,
    #[arg(short, long, default_value_t = 4)]
    m: u32,
    #[arg(long, default_value_t = 10)]
    j_max: u32,
}

#[derive(Args)]
struct PpaArgs {
    #[arg(short, long)]
    n: usize,
    /// Stop after this many steps.
    #[arg(long, conflicts_with_all = ["target", "converged"])]
    steps: Option<u64>,
    /// Stop once the MSB reaches this multiple of eps0.
    #[arg(long)]
    target: Option<f64>,
    /// Stop once the MSB changes by less than this (relative) over 2^n steps.
    #[arg(long, conflicts_with = "target")]
    converged: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    tolerance: f64,
    #[arg(long, default_value_t = 50_000_000)]
    max_steps: u64,
    /// Emit the MSB every this many steps instead of only at the end.
    #[arg(long)]
    every: Option<u64>,
}

#[derive(Args)]
struct RelaxedArgs {
    algorithm: Family,
    #[arg(short, long)]
    n: usize,
    #[arg(long, default_value = "full")]
    scope: Scope,
    /// T1(computation) / T1(reset); `inf` for none.
    #[arg(long)]
    ratio: f64,
    /// Reset durations in units of T1(reset), comma separated.
    #[arg(long, value_delimiter = ',', default_value = "5")]
    tau: Vec<f64>,
}

/// Flags merged with the config file.
struct Settings {
    eps0: Option<f64>,
    regime: Option<Regime>,
    format: Format,
    out: Option<PathBuf>,
}

impl Settings {
    fn resolve(g: Global) -> Result<Self> {
        let file = match &g.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let regime = match file.regime {
            Some(r) => Some(r.parse::<Regime>()?),
            None => None,
        };
        let threads = g.threads.or(file.threads).unwrap_or(0);
        if threads > 0 {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().context("starting worker threads")?;
        }
        Ok(Settings {
            eps0: g.eps0.or(file.eps0),
            regime: g.regime.or(regime),
            format: g.format.or(file.format).unwrap_or_default(),
            out: g.out.or(file.out),
        })
    }

    fn eps0_or(&self, default: f64) -> f64 {
        self.eps0.unwrap_or(default)
    }

    fn emit<T: Serialize>(&self, rows: &[T]) -> Result<()> {
        emit(rows, self.format, self.out.as_deref())
    }
}

/// Outcome of a command that did not fail outright.
enum Status {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    let s = Settings::resolve(cli.global)?;
    match cli.cmd {
        Cmd::Run(a) => cmd_run(&s, a),
        Cmd::Table(a) => cmd_table(&s, a),
        Cmd::Check => cmd_check(&s),
        Cmd::Search(a) => cmd_search(&s, a),
        Cmd::Curve(a) => cmd_curve(&s, a),
        Cmd::Ppa(a) => cmd_ppa(&s, a),
        Cmd::Relaxed(a) => cmd_relaxed(&s, a),
    }
}

#[derive(Serialize)]
struct RunRecord {
    algorithm: String,
    scope: &'static str,
    regime: String,
    eps0: f64,
    n: usize,
    spin: usize,
    resets: u64,
    bias: f64,
}

fn scope_name(s: Scope) -> &'static str {
    match s {
        Scope::MsbOnly => "msb",
        Scope::FullString => "full",
    }
}

fn cmd_run(s: &Settings, a: RunArgs) -> Result<Status> {
    let spec = AlgorithmSpec::new(a.algorithm, a.n, a.scope)?;
    let regime = s.regime.unwrap_or_default();
    let eps0 = s.eps0_or(1e-5);
    let sched = build_schedule(&spec)?;
    // linear-regime biases are reported in units of eps0
    let (rep, scale) = match a.engine {
        Engine::Bias => {
            let run_eps0 = if regime == Regime::Linear { 1.0 } else { eps0 };
            let hot = a.hot_spins.unwrap_or_else(|| spec.family.hot_spins());
            let state = SpinSystem::new(spec.n, run_eps0, regime)?.with_hot_spins(hot);
            (run_schedule(&state, &sched)?, 1.0)
        }
        Engine::Oracle => {
            let rep = run_schedule_oracle(&DiagonalState::uniform(spec.n)?, &sched, eps0)?;
            (rep, if regime == Regime::Linear { eps0 } else { 1.0 })
        }
    };
    let spins: Vec<usize> = if a.all_spins { (1..=spec.n).collect() } else { vec![spec.n] };
    let rows: Vec<RunRecord> = spins
        .into_iter()
        .map(|k| RunRecord {
            algorithm: spec.family.to_string(),
            scope: scope_name(spec.scope),
            regime: regime.to_string(),
            eps0,
            n: spec.n,
            spin: k,
            resets: rep.reset_count,
            bias: sig(rep.final_biases[k - 1] / scale),
        })
        .collect();
    s.emit(&rows)?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct TableRecord {
    table: String,
    algorithm: String,
    eps0: f64,
    n: usize,
    resets: Option<u64>,
    bias: f64,
    paper_n: usize,
    paper_resets: u64,
    paper_value: Option<f64>,
    rel_dev: Option<f64>,
    status: &'static str,
    note: String,
}

#[derive(Serialize)]
struct CurveRecord {
    figure: String,
    algorithm: String,
    regime: String,
    eps0: f64,
    j: u32,
    n: usize,
    bias: f64,
}

fn table_rows(id: TableId) -> Result<Vec<TableRecord>> {
    published(id)
        .par_iter()
        .map(|p| {
            let row = compute_row(p).with_context(|| format!("{id} {} (eps0 {})", p.label, p.eps0))?;
            let failures = check_row(p, &row);
            Ok(TableRecord {
                table: id.to_string(),
                algorithm: row.algorithm,
                eps0: row.eps0,
                n: row.n,
                resets: row.resets,
                bias: sig(row.bias),
                paper_n: row.paper_n,
                paper_resets: row.paper_resets,
                paper_value: row.paper_value,
                rel_dev: sig_opt(row.rel_dev),
                status: if failures.is_empty() { "ok" } else { "mismatch" },
                note: failures.join("; "),
            })
        })
        .collect()
}

fn report_mismatches(rows: &[TableRecord]) -> usize {
    let bad: Vec<&TableRecord> = rows.iter().filter(|r| !r.note.is_empty()).collect();
    for r in &bad {
        eprintln!("{} {} (eps0 {}): {}", r.table, r.algorithm, r.eps0, r.note);
    }
    bad.len()
}

fn cmd_table(s: &Settings, a: TableArgs) -> Result<Status> {
    if a.id.is_figure() {
        let rows: Vec<CurveRecord> = figure_curves(a.id)
            .iter()
            .flat_map(|spec| curve_records(&a.id.to_string(), spec))
            .collect();
        s.emit(&rows)?;
        return Ok(Status::Ok);
    }
    let rows = table_rows(a.id)?;
    s.emit(&rows)?;
    if a.check && report_mismatches(&rows) > 0 {
        return Ok(Status::CheckFailed);
    }
    Ok(Status::Ok)
}

fn cmd_check(s: &Settings) -> Result<Status> {
    let tables: Vec<TableId> = TableId::ALL.into_iter().filter(|id| !id.is_figure()).collect();
    let per_table = tables.par_iter().map(|&id| table_rows(id)).collect::<Result<Vec<_>>>()?;
    let rows: Vec<TableRecord> = per_table.into_iter().flatten().collect();
    s.emit(&rows)?;
    let bad = report_mismatches(&rows);
    eprintln!("{} of {} rows reproduce", rows.len() - bad, rows.len());
    Ok(if bad > 0 { Status::CheckFailed } else { Status::Ok })
}

#[derive(Serialize)]
struct SearchRecord {
    algorithm: String,
    eps0: f64,
    target: f64,
    units: &'static str,
    n: usize,
    resets: Option<u64>,
    bias: f64,
}

fn cmd_search(s: &Settings, a: SearchArgs) -> Result<Status> {
    let eps0 = s.eps0_or(1e-5);
    let (target, units) = match (a.target, a.factor) {
        (Some(t), None) => (Target::Absolute(t), "absolute"),
        (None, Some(f)) => (Target::Factor(f), "eps0"),
        _ => bail!("give exactly one of --target and --factor"),
    };
    let mut req = SearchRequest::new(a.subject.clone(), eps0, target);
    req.max_spins = a.max_spins;
    req.tolerance = a.tolerance;
    let res = search_resources(&req)?;
    let goal = match target {
        Target::Absolute(t) | Target::Factor(t) => t,
    };
    s.emit(&[SearchRecord {
        algorithm: a.subject.to_string(),
        eps0,
        target: goal,
        units,
        n: res.n,
        resets: res.resets,
        bias: sig(res.bias),
    }])?;
    Ok(Status::Ok)
}

fn curve_records(figure: &str, spec: &CurveSpec) -> Vec<CurveRecord> {
    emit_curve(spec)
        .into_iter()
        .map(|p| CurveRecord {
            figure: figure.to_string(),
            algorithm: p.algorithm,
            regime: spec.regime.to_string(),
            eps0: p.eps0,
            j: p.j,
            n: p.n,
            bias: sig(p.bias),
        })
        .collect()
}

fn cmd_curve(s: &Settings, a: CurveArgs) -> Result<Status> {
    let kind = match a.kind.to_ascii_lowercase().as_str() {
        "mpac" => CurveKind::MPac(a.m),
        "infpac" | "inf" => CurveKind::InfinityPac,
        other => bail!("unknown curve kind `{other}` (expected mpac or infpac)"),
    };
    if a.m == 0 {
        bail!("m must be at least 1");
    }
    let spec = CurveSpec { kind, eps0: s.eps0_or(1e-5), regime: s.regime.unwrap_or_default(), j_max: a.j_max };
    s.emit(&curve_records("", &spec))?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct PpaRecord {
    n: usize,
    eps0: f64,
    step: u64,
    /// Units of eps0.
    msb: f64,
}

fn cmd_ppa(s: &Settings, a: PpaArgs) -> Result<Status> {
    let eps0 = s.eps0_or(1e-5);
    let stop = match (a.steps, a.target, a.converged) {
        (Some(count), None, None) => PpaStop::AfterResets { count },
        (None, Some(value), None) => PpaStop::Target { value, tolerance: a.tolerance, max_resets: a.max_steps },
        (None, None, Some(rel_tol)) => PpaStop::Converged { rel_tol, window: 1 << a.n.min(24), max_resets: a.max_steps },
        _ => bail!("give exactly one of --steps, --target and --converged"),
    };
    let every = a.every.unwrap_or(u64::MAX);
    let rep = run_ppa_traced(&PpaConfig { n: a.n, eps0, stop }, every)?;
    let mut rows: Vec<PpaRecord> = rep
        .trace
        .as_deref()
        .unwrap_or_default()
        .iter()
        .enumerate()
        .map(|(i, t)| PpaRecord { n: a.n, eps0, step: (i as u64 + 1) * every, msb: sig(t.biases[a.n - 1] / eps0) })
        .collect();
    if rows.last().is_none_or(|r| r.step != rep.reset_count) {
        rows.push(PpaRecord { n: a.n, eps0, step: rep.reset_count, msb: sig(rep.msb() / eps0) });
    }
    s.emit(&rows)?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct RelaxedRecord {
    algorithm: String,
    scope: &'static str,
    n: usize,
    ratio: f64,
    tau: f64,
    resets: u64,
    /// Units of eps0.
    bias: f64,
}

fn cmd_relaxed(s: &Settings, a: RelaxedArgs) -> Result<Status> {
    let spec = AlgorithmSpec::new(a.algorithm, a.n, a.scope)?;
    let sched = build_schedule(&spec)?;
    let rows = a
        .tau
        .par_iter()
        .map(|&tau| {
            let rep = run_relaxed(&sched, spec.n, &RelaxConfig::new(a.ratio, tau, 1.0)?)?;
            Ok(RelaxedRecord {
                algorithm: spec.family.to_string(),
                scope: scope_name(spec.scope),
                n: spec.n,
                ratio: a.ratio,
                tau,
                resets: rep.reset_count,
                bias: sig(rep.msb()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    s.emit(&rows)?;
    Ok(Status::Ok)
}
