//! `egb` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input file (or an output
//! that cannot be written), 3 internal invariant failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use thiserror::Error;

use egb_core::evaluation::EvalParams;
use egb_core::grouping::{max_groups, Criterion};
use egb_core::harness::{
    best_by_criterion, criterion_share, emit_plot_series, emit_report_csv, full_m_range, generate_instance,
    parse_report_csv, prune_range, range_analysis, sweep, top_k, GenShape, HarnessError, SweepOptions,
    DEFAULT_PRUNE_HIGH_DIVISOR, DEFAULT_PRUNE_LOW_DIVISOR,
};
use egb_core::model::{parse_instance, serialize_instance, serialize_timetable, Instance};
use egb_core::search::{egb_run_with, emit_trace_csv, LocalSearch, Registry, DEFAULT_STRATEGY};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "egb", version, about = "Event-grouping course timetabling solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded random instance.
    Generate(GenerateArgs),
    /// Run the grouping algorithm once and write the best timetable.
    Solve(SolveArgs),
    /// Run every (m, criterion) cell and write a results table.
    Sweep(SweepArgs),
    /// Summarize a results table.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub events: usize,
    #[arg(long)]
    pub students: usize,
    #[arg(long)]
    pub lecturers: usize,
    #[arg(long)]
    pub rooms: usize,
    #[arg(long, default_value_t = egb_core::model::DEFAULT_DAYS)]
    pub days: u32,
    #[arg(long, default_value_t = egb_core::model::DEFAULT_SLOTS_PER_DAY)]
    pub slots_per_day: u32,
    #[arg(long)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// JSON config with an optional "eval" object and "local_search" name.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Local search strategy (greedy, greedy-improve).
    #[arg(long)]
    pub local_search: Option<String>,
    #[arg(long)]
    pub w_gap: Option<f64>,
    #[arg(long)]
    pub w_single: Option<f64>,
    #[arg(long)]
    pub w_last: Option<f64>,
    #[arg(long)]
    pub unplaced_penalty: Option<f64>,
    #[arg(long)]
    pub hard_penalty: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Number of groups m.
    #[arg(long)]
    pub groups: usize,
    /// Sort criterion: index, weight, number or duration.
    #[arg(long)]
    pub sort: String,
    /// Timetable JSON output.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Trace CSV output; defaults to `<output stem>.trace.csv`.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, conflicts_with = "prune")]
    pub m_min: Option<usize>,
    /// Upper group count, or `auto` for floor(n/2).
    #[arg(long, conflicts_with = "prune")]
    pub m_max: Option<String>,
    /// `all`, one criterion, or a comma-separated list.
    #[arg(long, default_value = "all")]
    pub sort: String,
    /// Report CSV output.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Directory for per-criterion `m,value` series.
    #[arg(long)]
    pub plots: Option<PathBuf>,
    /// Restrict m to [ceil(n/low), floor(n/high)].
    #[arg(long)]
    pub prune: bool,
    #[arg(long, default_value_t = DEFAULT_PRUNE_LOW_DIVISOR)]
    pub prune_low: f64,
    #[arg(long, default_value_t = DEFAULT_PRUNE_HIGH_DIVISOR)]
    pub prune_high: f64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub report: PathBuf,
    #[arg(long, default_value_t = 5)]
    pub top: usize,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    eval: Option<EvalParams>,
    #[serde(default)]
    local_search: Option<String>,
}

/// Parses `args` (program name first) and runs the command, writing normal
/// output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Generate(a) => generate(a, out, err),
        Command::Solve(a) => solve(a, out, err),
        Command::Sweep(a) => run_sweep(a, out, err),
        Command::Report(a) => report(a, out),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn say(out: &mut dyn Write, line: std::fmt::Arguments<'_>) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::Input(format!("cannot write output: {e}")))
}

fn load_instance(path: &Path, err: &mut dyn Write) -> Result<Instance, CliError> {
    let inst = parse_instance(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    for w in inst.warnings() {
        let _ = writeln!(err, "{}: {w}", path.display());
    }
    Ok(inst)
}

fn search_setup(args: &SearchArgs) -> Result<(EvalParams, Arc<dyn LocalSearch>), CliError> {
    let config = match &args.config {
        Some(path) => serde_json::from_str::<ConfigFile>(&read(path)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => ConfigFile::default(),
    };
    let mut params = config.eval.unwrap_or_default();
    let overrides = [
        (&mut params.w_gap, args.w_gap),
        (&mut params.w_single, args.w_single),
        (&mut params.w_last, args.w_last),
        (&mut params.unplaced_penalty, args.unplaced_penalty),
        (&mut params.hard_penalty, args.hard_penalty),
    ];
    for (slot, value) in overrides {
        if let Some(v) = value {
            *slot = v;
        }
    }
    params.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let name = args.local_search.clone().or(config.local_search).unwrap_or_else(|| DEFAULT_STRATEGY.to_string());
    let search = Registry::default().create(&name).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok((params, search))
}

fn parse_criteria(arg: &str) -> Result<Vec<Criterion>, CliError> {
    if arg == "all" {
        return Ok(Criterion::ALL.to_vec());
    }
    arg.split(',')
        .map(|s| s.trim().parse::<Criterion>().map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

fn generate(a: GenerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let shape = GenShape {
        events: a.events,
        students: a.students,
        lecturers: a.lecturers,
        rooms: a.rooms,
        days: a.days,
        slots_per_day: a.slots_per_day,
        seed: a.seed,
    };
    let inst = generate_instance(&shape).map_err(|e| match e {
        HarnessError::InvalidShape(msg) => CliError::Usage(msg),
        other => CliError::Invariant(other.to_string()),
    })?;
    for w in inst.warnings() {
        let _ = writeln!(err, "{w}");
    }
    write_file(&a.output, &serialize_instance(&inst))?;
    say(out, format_args!("wrote {} ({} events) to {}", inst.name(), inst.n(), a.output.display()))
}

fn solve(a: SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let criterion: Criterion = a.sort.parse().map_err(|e: egb_core::GroupingError| CliError::Usage(e.to_string()))?;
    let (params, search) = search_setup(&a.search)?;
    let inst = load_instance(&a.instance, err)?;
    let n = inst.n();
    if a.groups < 2 || a.groups > max_groups(n) {
        return Err(CliError::Usage(format!(
            "--groups {} out of range: must be in [2, {}] for {n} events",
            a.groups,
            max_groups(n)
        )));
    }

    let run = egb_run_with(&inst, a.groups, criterion, &params, search.as_ref())
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    if run.local_search_calls != n {
        return Err(CliError::Invariant(format!("{} local searches for {n} events", run.local_search_calls)));
    }
    if run.traces.windows(2).any(|w| w[1].best_eval > w[0].best_eval) {
        return Err(CliError::Invariant("group evaluations are not monotone".into()));
    }
    if !run.evaluation.is_feasible() {
        return Err(CliError::Invariant("best timetable violates hard constraints".into()));
    }

    let json = serialize_timetable(&inst, &run.best_timetable, &run.evaluation)
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    write_file(&a.output, &json)?;
    let trace_path = a.trace.unwrap_or_else(|| a.output.with_extension("trace.csv"));
    write_file(&trace_path, &emit_trace_csv(&run))?;
    say(
        out,
        format_args!(
            "m={} sort={} groups={} best_eval={:.3} unplaced={}",
            run.m,
            run.criterion,
            run.grouping.signature(),
            run.best_eval,
            run.evaluation.unplaced
        ),
    )
}

fn run_sweep(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let m_max_arg = match a.m_max.as_deref() {
        None | Some("auto") => None,
        Some(v) => Some(v.parse::<usize>().map_err(|_| CliError::Usage(format!("invalid --m-max {v:?}")))?),
    };
    let m_min = a.m_min.unwrap_or(2);
    if let Some(m_max) = m_max_arg {
        if m_min > m_max {
            return Err(CliError::Usage(format!("--m-min {m_min} exceeds --m-max {m_max}")));
        }
    }
    let criteria = parse_criteria(&a.sort)?;
    let (params, search) = search_setup(&a.search)?;
    let inst = load_instance(&a.instance, err)?;
    let n = inst.n();

    let m_set: Vec<usize> = if a.prune {
        match prune_range(n, a.prune_low, a.prune_high) {
            Ok((lo, hi)) => (lo..=hi).collect(),
            Err(HarnessError::EmptyRange { m_lo, m_hi, .. }) => {
                let _ = writeln!(err, "warning: pruned range [{m_lo}, {m_hi}] is empty; sweeping all group counts");
                full_m_range(n)
            }
            Err(e) => return Err(CliError::Usage(e.to_string())),
        }
    } else {
        let m_max = m_max_arg.unwrap_or(max_groups(n));
        if m_min < 2 || m_max > max_groups(n) || m_min > m_max {
            return Err(CliError::Usage(format!(
                "group range [{m_min}, {m_max}] must lie within [2, {}] for {n} events",
                max_groups(n)
            )));
        }
        (m_min..=m_max).collect()
    };

    let opts = SweepOptions { workers: a.workers, search };
    let report = sweep(&inst, &m_set, &criteria, &params, &opts).map_err(|e| CliError::Invariant(e.to_string()))?;
    report.check_signatures().map_err(|e| CliError::Invariant(e.to_string()))?;
    write_file(&a.output, &emit_report_csv(&report))?;

    if let Some(dir) = &a.plots {
        fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
        for &c in &criteria {
            let series = emit_plot_series(&report, c).map_err(|e| CliError::Invariant(e.to_string()))?;
            write_file(&dir.join(format!("plot_{c}.csv")), &series)?;
        }
    }
    say(
        out,
        format_args!(
            "swept m={}..={} over {} criteria ({} cells) for {}",
            m_set[0],
            m_set[m_set.len() - 1],
            criteria.len(),
            m_set.len() * criteria.len(),
            inst.name()
        ),
    )
}

fn report(a: ReportArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let name = a.report.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let r = parse_report_csv(&read(&a.report)?, &name)
        .map_err(|e| CliError::Input(format!("{}: {e}", a.report.display())))?;
    let tops = top_k(&r, a.top).map_err(|e| CliError::Usage(e.to_string()))?;

    say(out, format_args!("report {name}: n={} rows={}", r.n, r.rows.len()))?;
    say(out, format_args!("best by criterion:"))?;
    for (c, t) in best_by_criterion(&r) {
        say(out, format_args!("  {:<8} m={:<3} {:.3}", c.as_str(), t.m, t.value))?;
    }
    say(out, format_args!("top {}:", a.top))?;
    for (i, t) in tops.iter().enumerate() {
        say(out, format_args!("  {:>2}. {:<8} m={:<3} {:.3}", i + 1, t.criterion.as_str(), t.m, t.value))?;
    }
    let range = range_analysis(&tops, r.n).map_err(|e| CliError::Invariant(e.to_string()))?;
    say(
        out,
        format_args!(
            "range: [{}, ..., {}] m_max={} [m / {:.1}, ..., m / {:.1}]",
            range.m_low, range.m_high, range.m_max, range.low_divisor, range.high_divisor
        ),
    )?;
    say(out, format_args!("criterion share:"))?;
    for (c, (count, percent)) in criterion_share(&tops) {
        say(out, format_args!("  {:<8} {count:>3} {percent:>5.1}%", c.as_str()))?;
    }
    Ok(())
}
