//! Command-line surface over the walkspectra library: closed-form spectra,
//! total-variation distances and bounds, window profiles, cross-walk
//! comparison sums, exact verification checks, and simulations, emitted as
//! plot-ready CSV or JSON.
//!
//! Exit codes: 0 on success, 1 when a requested verification check fails,
//! 2 on usage errors (bad flags, malformed values, out-of-domain sizes).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use walkspectra::analysis::{
    comparison_sum, limit_profile_f, spectral_bound_table, ComparisonPair, TimeForm, TimeSchedule,
};
use walkspectra::group_oracle::{exact_tv_series, run_checks, CheckSelection, CheckStatus};
use walkspectra::simulator::{
    empirical_distribution, empirical_ranks, fixed_point_counts, marking_experiment,
    summarize_sample, Summary,
};
use walkspectra::spectra::{
    ag_spectrum, canonical_labels, three_cycle_spectrum, tprime_blocks, tt2r_spectrum, IrrepLabel,
    SpectrumEntry,
};
use walkspectra::Walk;

#[derive(Parser)]
#[command(name = "walkspectra", version, about = "Spectra, mixing bounds, and simulations for three random walks on the alternating group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output path; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Cap on worker threads for the parallel sections.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form eigenvalue tables, per module label or aggregated.
    Spectrum(SpectrumArgs),
    /// Exact total-variation distance to uniform and/or its spectral bound.
    Tv(TvArgs),
    /// Distance bounds across a window of scheduled step counts.
    Profile(ProfileArgs),
    /// Cross-walk comparison sums at scheduled step counts.
    Compare(CompareArgs),
    /// Exact verification checks against the dense small-group oracle.
    Oracle(OracleArgs),
    /// Monte Carlo experiments with reproducible seeding.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

impl Format {
    fn token(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WalkArg {
    Tt2r,
    Cycles3,
    Tprime,
}

impl WalkArg {
    fn to_walk(self) -> Walk {
        match self {
            WalkArg::Tt2r => Walk::TransposeTop2,
            WalkArg::Cycles3 => Walk::ThreeCycle,
            WalkArg::Tprime => Walk::StarThreeCycle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumWalkArg {
    Tt2r,
    Cycles3,
    Tprime,
    Ag,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Walk transition spectrum, or `ag` for the Cayley graph adjacency.
    #[arg(long, value_enum)]
    walk: SpectrumWalkArg,
    #[arg(long)]
    n: usize,
    /// Restrict to one module label, e.g. `3.1` or `2.2+`.
    #[arg(long)]
    irrep: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TvMode {
    Exact,
    Bound,
    Both,
}

#[derive(Args)]
struct TvArgs {
    #[arg(long, value_enum)]
    walk: WalkArg,
    #[arg(long)]
    n: usize,
    /// Largest step count; rows cover k = 0..=kmax.
    #[arg(long)]
    kmax: u64,
    /// Exact distance needs n <= 9; the bound is closed-form at any n.
    #[arg(long, value_enum)]
    mode: TvMode,
}

#[derive(Clone, Copy, ValueEnum)]
enum TimeFormArg {
    /// Steps = ceil(coefficient * (ln n + c)).
    Scaled,
    /// Steps = ceil(coefficient * ln n + c * n).
    Plain,
}

impl TimeFormArg {
    fn to_form(self) -> TimeForm {
        match self {
            TimeFormArg::Scaled => TimeForm::Scaled,
            TimeFormArg::Plain => TimeForm::Plain,
        }
    }
    fn token(self) -> &'static str {
        match self {
            TimeFormArg::Scaled => "scaled",
            TimeFormArg::Plain => "plain",
        }
    }
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long, value_enum)]
    walk: WalkArg,
    /// Comma-separated group sizes, e.g. `10,20,40`.
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    #[arg(long, allow_negative_numbers = true)]
    c_from: f64,
    #[arg(long, allow_negative_numbers = true)]
    c_to: f64,
    #[arg(long, allow_negative_numbers = true)]
    c_step: f64,
    /// How the window parameter c enters the step schedule.
    #[arg(long, value_enum, default_value_t = TimeFormArg::Scaled)]
    time_form: TimeFormArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairArg {
    #[value(name = "PQ")]
    PQ,
    #[value(name = "PPprime")]
    PPprime,
}

impl PairArg {
    fn to_pair(self) -> ComparisonPair {
        match self {
            PairArg::PQ => ComparisonPair::PQ,
            PairArg::PPprime => ComparisonPair::PPprime,
        }
    }
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, value_enum)]
    pair: PairArg,
    /// Comma-separated group sizes, e.g. `10,20,40`.
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    /// Window position, in [-5, 5].
    #[arg(long, allow_negative_numbers = true)]
    c: f64,
    /// Also split the sum at first part n - M.
    #[arg(long = "split-M")]
    split_m: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Spectra,
    Plancherel,
    Algebra,
    Tv,
    All,
}

impl CheckArg {
    fn to_selection(self) -> CheckSelection {
        match self {
            CheckArg::Spectra => CheckSelection::Spectra,
            CheckArg::Plancherel => CheckSelection::Plancherel,
            CheckArg::Algebra => CheckSelection::Algebra,
            CheckArg::Tv => CheckSelection::Tv,
            CheckArg::All => CheckSelection::All,
        }
    }
    fn token(self) -> &'static str {
        match self {
            CheckArg::Spectra => "spectra",
            CheckArg::Plancherel => "plancherel",
            CheckArg::Algebra => "algebra",
            CheckArg::Tv => "tv",
            CheckArg::All => "all",
        }
    }
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    check: CheckArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentArg {
    Marking,
    Fixedpoints,
    Empirical,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    experiment: ExperimentArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    /// Step count per trial; required for fixedpoints and empirical.
    #[arg(long)]
    steps: Option<u64>,
    /// Walk to simulate (ignored by marking, which is tied to tt2r).
    #[arg(long, value_enum, default_value_t = WalkArg::Tt2r)]
    walk: WalkArg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 0 for --help/--version and 2 for usage errors.
        Err(e) => e.exit(),
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        // Ignore the error from configuring twice; first call wins.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let run = match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(args, &cli),
        Command::Tv(args) => cmd_tv(args, &cli),
        Command::Profile(args) => cmd_profile(args, &cli),
        Command::Compare(args) => cmd_compare(args, &cli),
        Command::Oracle(args) => cmd_oracle(args, &cli),
        Command::Simulate(args) => cmd_simulate(args, &cli),
    };
    let (output, code) = match run {
        Ok(pair) => pair,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, output) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{output}");
    }
    ExitCode::from(code)
}

/// Resolved run configuration echoed into every output.
struct Meta {
    command: &'static str,
    options: String,
    seed: Option<u64>,
}

impl Meta {
    fn csv_header(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# command: {}", self.command);
        let _ = writeln!(s, "# version: {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(s, "# options: {}", self.options);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "# seed: {seed}");
        }
        s
    }

    fn json_value(&self) -> serde_json::Value {
        let mut meta = serde_json::json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "options": self.options,
        });
        if let Some(seed) = self.seed {
            meta["seed"] = serde_json::json!(seed);
        }
        meta
    }
}

fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn json_output(meta: &Meta, mut body: serde_json::Value) -> String {
    body["meta"] = meta.json_value();
    let mut s = serde_json::to_string_pretty(&body).expect("plain data serializes");
    s.push('\n');
    s
}

/// A CSV table of string rows plus the same rows as JSON objects.
struct Rows {
    header: &'static [&'static str],
    rows: Vec<Vec<String>>,
}

impl Rows {
    fn render(&self, meta: &Meta, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = meta.csv_header();
                let _ = writeln!(s, "{}", self.header.join(","));
                for row in &self.rows {
                    let _ = writeln!(s, "{}", row.join(","));
                }
                s
            }
            Format::Json => {
                let rows: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = serde_json::Map::new();
                        for (name, value) in self.header.iter().zip(row) {
                            obj.insert(name.to_string(), serde_json::json!(value));
                        }
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                json_output(meta, serde_json::json!({ "rows": rows }))
            }
        }
    }
}

const SPECTRUM_HEADER: &[&str] = &[
    "shape",
    "variant",
    "eigenvalue_num",
    "eigenvalue_den",
    "multiplicity_or_log",
];

fn multiplicity_field(count: &walkspectra::spectra::Count) -> String {
    count.to_string()
}

fn entry_rows(label: &IrrepLabel, entries: &[SpectrumEntry], rows: &mut Vec<Vec<String>>) {
    for e in entries {
        rows.push(vec![
            label.shape().to_string(),
            label.variant().token().to_string(),
            e.value.numer().to_string(),
            e.value.denom().to_string(),
            multiplicity_field(&e.count),
        ]);
    }
}

fn cmd_spectrum(args: &SpectrumArgs, cli: &Cli) -> Result<(String, u8), String> {
    let walk_token = match args.walk {
        SpectrumWalkArg::Tt2r => "tt2r",
        SpectrumWalkArg::Cycles3 => "cycles3",
        SpectrumWalkArg::Tprime => "tprime",
        SpectrumWalkArg::Ag => "ag",
    };
    let meta = Meta {
        command: "spectrum",
        options: format!(
            "walk={walk_token} n={} irrep={} format={}",
            args.n,
            args.irrep.as_deref().unwrap_or("all"),
            cli.format.token()
        ),
        seed: None,
    };
    let mut rows = Vec::new();
    match args.walk {
        SpectrumWalkArg::Ag => {
            if args.irrep.is_some() {
                return Err("--irrep applies to walk spectra, not to the adjacency graph".into());
            }
            for (value, count) in ag_spectrum(args.n).map_err(|e| e.to_string())? {
                rows.push(vec![
                    "all".to_string(),
                    "all".to_string(),
                    value.to_string(),
                    "1".to_string(),
                    multiplicity_field(&count),
                ]);
            }
        }
        _ => {
            let labels = match &args.irrep {
                Some(text) => vec![IrrepLabel::from_str(text).map_err(|e| e.to_string())?],
                None => canonical_labels(args.n).map_err(|e| e.to_string())?,
            };
            for label in &labels {
                if label.n() != args.n {
                    return Err(format!(
                        "--irrep {} labels a module of A_{}, but --n is {}",
                        label,
                        label.n(),
                        args.n
                    ));
                }
                let entries = match args.walk {
                    SpectrumWalkArg::Tt2r => {
                        tt2r_spectrum(label).map_err(|e| e.to_string())?.entries
                    }
                    SpectrumWalkArg::Cycles3 => {
                        three_cycle_spectrum(label).map_err(|e| e.to_string())?.entries
                    }
                    SpectrumWalkArg::Tprime => tprime_blocks(label)
                        .map_err(|e| e.to_string())?
                        .eigenvalue_entries(),
                    SpectrumWalkArg::Ag => unreachable!(),
                };
                entry_rows(label, &entries, &mut rows);
            }
        }
    }
    let table = Rows { header: SPECTRUM_HEADER, rows };
    Ok((table.render(&meta, cli.format), 0))
}

fn cmd_tv(args: &TvArgs, cli: &Cli) -> Result<(String, u8), String> {
    let walk = args.walk.to_walk();
    let mode_token = match args.mode {
        TvMode::Exact => "exact",
        TvMode::Bound => "bound",
        TvMode::Both => "both",
    };
    let meta = Meta {
        command: "tv",
        options: format!(
            "walk={} n={} kmax={} mode={mode_token} format={}",
            walk.token(),
            args.n,
            args.kmax,
            cli.format.token()
        ),
        seed: None,
    };
    let exact = match args.mode {
        TvMode::Exact | TvMode::Both => {
            Some(exact_tv_series(walk, args.n, args.kmax).map_err(|e| e.to_string())?)
        }
        TvMode::Bound => None,
    };
    let bound = match args.mode {
        TvMode::Bound | TvMode::Both => {
            Some(spectral_bound_table(walk, args.n).map_err(|e| e.to_string())?)
        }
        TvMode::Exact => None,
    };
    let mut rows = Vec::new();
    for k in 0..=args.kmax {
        if let Some(series) = &exact {
            rows.push(vec![k.to_string(), "exact_tv".to_string(), float(series[k as usize])]);
        }
        if let Some(table) = &bound {
            rows.push(vec![k.to_string(), "bound".to_string(), float(table.bound(k))]);
        }
    }
    let table = Rows { header: &["k", "quantity", "value"], rows };
    Ok((table.render(&meta, cli.format), 0))
}

const PROFILE_HEADER: &[&str] = &["n", "c", "walk_or_pair", "quantity", "value"];

/// The inclusive c-grid from `from` to `to` in steps of `step`.
fn c_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, String> {
    if !from.is_finite() || !to.is_finite() || !step.is_finite() {
        return Err("c-grid endpoints and step must be finite".into());
    }
    if step <= 0.0 {
        return Err("--c-step must be positive".into());
    }
    if to < from {
        return Err("--c-to must not be below --c-from".into());
    }
    let mut grid = Vec::new();
    let mut i = 0u64;
    loop {
        let c = from + i as f64 * step;
        if c > to + 1e-12 {
            break;
        }
        grid.push(c);
        i += 1;
    }
    Ok(grid)
}

fn cmd_profile(args: &ProfileArgs, cli: &Cli) -> Result<(String, u8), String> {
    let walk = args.walk.to_walk();
    let grid = c_grid(args.c_from, args.c_to, args.c_step)?;
    let schedule = TimeSchedule::with_form(walk, args.time_form.to_form());
    let n_list_token: Vec<String> = args.n_list.iter().map(|n| n.to_string()).collect();
    let meta = Meta {
        command: "profile",
        options: format!(
            "walk={} n-list={} c-from={} c-to={} c-step={} time-form={} format={}",
            walk.token(),
            n_list_token.join(","),
            args.c_from,
            args.c_to,
            args.c_step,
            args.time_form.token(),
            cli.format.token()
        ),
        seed: None,
    };
    let mut rows = Vec::new();
    for &n in &args.n_list {
        let table = spectral_bound_table(walk, n).map_err(|e| e.to_string())?;
        // One exact series per n covers the whole grid when feasible.
        let exact = if n <= 9 {
            let kmax = grid.iter().map(|&c| schedule.steps(n, c)).max().unwrap_or(0);
            Some(exact_tv_series(walk, n, kmax).map_err(|e| e.to_string())?)
        } else {
            None
        };
        for &c in &grid {
            let k = schedule.steps(n, c);
            rows.push(vec![
                n.to_string(),
                c.to_string(),
                walk.token().to_string(),
                "bound".to_string(),
                float(table.bound(k)),
            ]);
            if let Some(series) = &exact {
                rows.push(vec![
                    n.to_string(),
                    c.to_string(),
                    walk.token().to_string(),
                    "exact_tv".to_string(),
                    float(series[k as usize]),
                ]);
            }
            rows.push(vec![
                n.to_string(),
                c.to_string(),
                walk.token().to_string(),
                "profile_f".to_string(),
                float(limit_profile_f(c)),
            ]);
        }
    }
    let table = Rows { header: PROFILE_HEADER, rows };
    Ok((table.render(&meta, cli.format), 0))
}

fn cmd_compare(args: &CompareArgs, cli: &Cli) -> Result<(String, u8), String> {
    let pair = args.pair.to_pair();
    let n_list_token: Vec<String> = args.n_list.iter().map(|n| n.to_string()).collect();
    let meta = Meta {
        command: "compare",
        options: format!(
            "pair={} n-list={} c={} split-M={} format={}",
            pair.token(),
            n_list_token.join(","),
            args.c,
            args.split_m.map_or("none".to_string(), |m| m.to_string()),
            cli.format.token()
        ),
        seed: None,
    };
    let mut rows = Vec::new();
    for &n in &args.n_list {
        let sums = comparison_sum(pair, n, args.c, args.split_m).map_err(|e| e.to_string())?;
        rows.push(vec![
            n.to_string(),
            args.c.to_string(),
            pair.token().to_string(),
            "sum".to_string(),
            float(sums.sum),
        ]);
        if let Some(split) = sums.split {
            rows.push(vec![
                n.to_string(),
                args.c.to_string(),
                pair.token().to_string(),
                "sum1".to_string(),
                float(split.sum1),
            ]);
            rows.push(vec![
                n.to_string(),
                args.c.to_string(),
                pair.token().to_string(),
                "sum2".to_string(),
                float(split.sum2),
            ]);
        }
    }
    let table = Rows { header: PROFILE_HEADER, rows };
    Ok((table.render(&meta, cli.format), 0))
}

fn cmd_oracle(args: &OracleArgs, cli: &Cli) -> Result<(String, u8), String> {
    let meta = Meta {
        command: "oracle",
        options: format!(
            "n={} check={} format={}",
            args.n,
            args.check.token(),
            cli.format.token()
        ),
        seed: None,
    };
    let reports = run_checks(args.n, args.check.to_selection()).map_err(|e| e.to_string())?;
    let all_pass = reports.iter().all(|r| r.status == CheckStatus::Pass);
    let output = match cli.format {
        Format::Csv => {
            let rows = reports
                .iter()
                .map(|r| {
                    vec![
                        r.check_name.clone(),
                        r.n.to_string(),
                        match r.status {
                            CheckStatus::Pass => "pass".to_string(),
                            CheckStatus::Fail => "fail".to_string(),
                        },
                        float(r.max_residual),
                    ]
                })
                .collect();
            let table = Rows {
                header: &["check_name", "n", "status", "max_residual"],
                rows,
            };
            table.render(&meta, Format::Csv)
        }
        Format::Json => json_output(
            &meta,
            serde_json::json!({
                "checks": serde_json::to_value(&reports).expect("reports serialize"),
            }),
        ),
    };
    Ok((output, if all_pass { 0 } else { 1 }))
}

const SIMULATE_HEADER: &[&str] = &["trial", "n", "steps_or_completion", "statistic"];

fn summary_json(summary: &Summary) -> serde_json::Value {
    let quantiles: Vec<serde_json::Value> = summary
        .quantiles
        .iter()
        .map(|(level, value)| serde_json::json!({ "level": level, "value": value }))
        .collect();
    serde_json::json!({
        "mean": summary.mean,
        "variance": summary.variance,
        "quantiles": quantiles,
    })
}

fn cmd_simulate(args: &SimulateArgs, cli: &Cli) -> Result<(String, u8), String> {
    if args.trials == 0 {
        return Err("--trials must be at least 1".into());
    }
    let walk = args.walk.to_walk();
    let experiment_token = match args.experiment {
        ExperimentArg::Marking => "marking",
        ExperimentArg::Fixedpoints => "fixedpoints",
        ExperimentArg::Empirical => "empirical",
    };
    let meta = Meta {
        command: "simulate",
        options: format!(
            "experiment={experiment_token} walk={} n={} trials={} steps={} format={}",
            walk.token(),
            args.n,
            args.trials,
            args.steps.map_or("none".to_string(), |s| s.to_string()),
            cli.format.token()
        ),
        seed: Some(args.seed),
    };
    let require_steps = || {
        args.steps
            .ok_or_else(|| format!("--steps is required for the {experiment_token} experiment"))
    };
    match args.experiment {
        ExperimentArg::Marking => {
            let result =
                marking_experiment(args.n, args.trials, args.seed).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Csv => {
                    // statistic = completion over the (n - 3/2) ln n reference.
                    let reference = (args.n as f64 - 1.5) * (args.n as f64).ln();
                    let rows = result
                        .completion_steps
                        .iter()
                        .enumerate()
                        .map(|(trial, &steps)| {
                            vec![
                                trial.to_string(),
                                args.n.to_string(),
                                steps.to_string(),
                                float(steps as f64 / reference),
                            ]
                        })
                        .collect();
                    let table = Rows { header: SIMULATE_HEADER, rows };
                    Ok((table.render(&meta, Format::Csv), 0))
                }
                Format::Json => {
                    let body = serde_json::json!({
                        "summary": summary_json(&result.summary()),
                        "pooled_target_rate": result.pooled_target_rate(),
                        "expected_target_rate": result.expected_target_rate(),
                    });
                    Ok((json_output(&meta, body), 0))
                }
            }
        }
        ExperimentArg::Fixedpoints => {
            let steps = require_steps()?;
            let counts = fixed_point_counts(walk, args.n, steps, args.trials, args.seed)
                .map_err(|e| e.to_string())?;
            match cli.format {
                Format::Csv => {
                    let rows = counts
                        .iter()
                        .enumerate()
                        .map(|(trial, &c)| {
                            vec![
                                trial.to_string(),
                                args.n.to_string(),
                                steps.to_string(),
                                c.to_string(),
                            ]
                        })
                        .collect();
                    let table = Rows { header: SIMULATE_HEADER, rows };
                    Ok((table.render(&meta, Format::Csv), 0))
                }
                Format::Json => {
                    if counts.is_empty() {
                        return Err("summary requires at least one trial".into());
                    }
                    let body = serde_json::json!({
                        "summary": summary_json(&summarize_sample(&counts)),
                    });
                    Ok((json_output(&meta, body), 0))
                }
            }
        }
        ExperimentArg::Empirical => {
            let steps = require_steps()?;
            match cli.format {
                Format::Csv => {
                    // statistic = rank of the end state in enumeration order;
                    // its histogram is the empirical distribution.
                    let ranks = empirical_ranks(walk, args.n, steps, args.trials, args.seed)
                        .map_err(|e| e.to_string())?;
                    let rows = ranks
                        .iter()
                        .enumerate()
                        .map(|(trial, &rank)| {
                            vec![
                                trial.to_string(),
                                args.n.to_string(),
                                steps.to_string(),
                                rank.to_string(),
                            ]
                        })
                        .collect();
                    let table = Rows { header: SIMULATE_HEADER, rows };
                    Ok((table.render(&meta, Format::Csv), 0))
                }
                Format::Json => {
                    let result =
                        empirical_distribution(walk, args.n, steps, args.trials, args.seed)
                            .map_err(|e| e.to_string())?;
                    let body = serde_json::json!({
                        "tv_to_exact": result.tv_to_exact,
                        "tv_to_uniform": result.tv_to_uniform,
                    });
                    Ok((json_output(&meta, body), 0))
                }
            }
        }
    }
}
