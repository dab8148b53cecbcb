use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use threatdyn::analysis::{self, Analysis, OUTCOME_COLUMNS};
use threatdyn::harness::{run_design, SweepResult};
use threatdyn::params::admissible_range;
use threatdyn::records::{columns, write_records};
use threatdyn::stats::{regression_csv, subset_indices};
use threatdyn::{
    load_config, read_records_csv, run_simulation, write_records_csv, Couplings, Error,
    ParameterSet, SimConfig, PARAM_NAMES,
};

const EXIT_VALIDATION: u8 = 1;
const EXIT_IO: u8 = 2;

#[derive(Parser)]
#[command(
    name = "threatdyn",
    version,
    about = "Threat-perception system dynamics: single runs, parameter sweeps and analyses",
    after_help = defaults_help()
)]
struct Cli {
    /// Config file with [sim], [design], [couplings] and [ranges.<param>] sections.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one parameter set (mid-range defaults) and print its record as CSV.
    Run {
        /// Override a parameter, e.g. `--set Rel_frequency=0.9`. Repeatable.
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
    },
    /// Sample the design and simulate every run.
    Sweep {
        #[command(flatten)]
        design: DesignArgs,
        /// Output CSV; standard output when omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Print one analysis of a sweep CSV.
    Analyze {
        csv: PathBuf,
        /// full-regression, full-model, low-nationalism, high-nationalism, low-prudery,
        /// high-prudery, low-ap, high-ap, nationalism, correlations or histograms.
        analysis: String,
    },
    /// Write every analysis plus figure-input CSVs to a directory.
    Report {
        csv: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct DesignArgs {
    /// PRNG seed [default: 42, or the config value].
    #[arg(long)]
    seed: Option<u64>,
    /// Number of runs [default: 20000, or the config value].
    #[arg(long)]
    n: Option<usize>,
    /// Worker threads [default: available CPUs]. Output does not depend on it.
    #[arg(long, env = "THREATDYN_WORKERS")]
    workers: Option<usize>,
}

fn defaults_help() -> String {
    let c = SimConfig::default();
    let mut s = String::from("Defaults:\n");
    let _ = writeln!(
        s,
        "  [sim] dt = {}, horizon = {}, tau = {}, rho = {}",
        c.dt, c.horizon, c.tau, c.rho
    );
    let _ = writeln!(
        s,
        "  [design] n_runs = {}, seed = {}",
        c.design.n_runs, c.design.seed
    );
    let _ = write!(s, "  [ranges] every parameter [0, 1] except");
    let special: Vec<String> = (0..PARAM_NAMES.len())
        .filter(|&i| admissible_range(i) != (0.0, 1.0))
        .map(|i| {
            let (lo, hi) = admissible_range(i);
            format!(" {} [{lo}, {hi}]", PARAM_NAMES[i])
        })
        .collect();
    let _ = writeln!(s, "{}", special.join(","));
    let _ = writeln!(s, "  [couplings]");
    let cp = Couplings::default();
    for name in Couplings::NAMES {
        let _ = writeln!(s, "    {name} = {}", cp.get(name).unwrap_or(f64::NAN));
    }
    s.push_str("Exit codes: 0 success, 1 invalid input or configuration, 2 I/O failure.");
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_VALIDATION)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(if e.is_io() { EXIT_IO } else { EXIT_VALIDATION })
        }
    }
}

fn execute(cli: Cli) -> threatdyn::Result<()> {
    let mut config = match &cli.config {
        Some(path) => load_config(path)?,
        None => SimConfig::default(),
    };
    match cli.command {
        Command::Run { set } => cmd_run(&config, &set),
        Command::Sweep { design, out } => {
            if let Some(seed) = design.seed {
                config.design.seed = seed;
            }
            if let Some(n) = design.n {
                config.design.n_runs = n;
            }
            let workers = design
                .workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            cmd_sweep(&config, out.as_deref(), workers)
        }
        Command::Analyze { csv, analysis } => cmd_analyze(&csv, &analysis),
        Command::Report { csv, out } => cmd_report(&csv, &out),
    }
}

fn stdout_error(e: io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn cmd_run(config: &SimConfig, overrides: &[String]) -> threatdyn::Result<()> {
    let mut params = ParameterSet::default();
    for o in overrides {
        let (name, value) = o
            .split_once('=')
            .ok_or_else(|| Error::Schema(format!("--set expects NAME=VALUE, got `{o}`")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Schema(format!("--set {name}: `{value}` is not a number")))?;
        params.set(name.trim(), value)?;
    }
    let record = run_simulation(&params, config)?;
    let result = SweepResult {
        seed: config.design.seed,
        dt: config.dt,
        horizon: config.horizon,
        records: vec![record],
    };
    let mut buf = Vec::new();
    write_records(&result, &mut buf)?;
    // Drop the metadata line: a single run is not a sampled design.
    let text = String::from_utf8_lossy(&buf);
    let body = text.split_once('\n').map_or("", |(_, rest)| rest);
    io::stdout()
        .write_all(body.as_bytes())
        .map_err(stdout_error)
}

fn cmd_sweep(config: &SimConfig, out: Option<&Path>, workers: usize) -> threatdyn::Result<()> {
    config.validate()?;
    let start = Instant::now();
    let result = run_design(config, workers)?;
    eprintln!(
        "{} runs with {workers} worker(s) in {:.1} s",
        result.len(),
        start.elapsed().as_secs_f64()
    );
    match out {
        Some(path) => write_records_csv(&result, path),
        None => {
            let stdout = io::stdout();
            let mut lock = io::BufWriter::new(stdout.lock());
            write_records(&result, &mut lock)?;
            lock.flush().map_err(stdout_error)
        }
    }
}

fn cmd_analyze(csv: &Path, name: &str) -> threatdyn::Result<()> {
    let analysis: Analysis = name.parse()?;
    let table = read_records_csv(csv)?.to_table();
    let text = analysis::render(analysis, &table)?;
    io::stdout()
        .write_all(text.as_bytes())
        .map_err(stdout_error)
}

fn write_file(path: &Path, contents: &str) -> threatdyn::Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn cmd_report(csv: &Path, out: &Path) -> threatdyn::Result<()> {
    let sweep = read_records_csv(csv)?;
    let table = sweep.to_table();
    fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    for a in Analysis::ALL {
        write_file(&out.join(format!("{a}.txt")), &analysis::render(a, &table)?)?;
        let reg = match a {
            Analysis::FullRegression => Some(analysis::engagement_regression(&table)?),
            Analysis::Nationalism => Some(analysis::nationalism_regression(&table)?),
            Analysis::Correlations | Analysis::Histograms => None,
            other => Some(analysis::model(&table, other.subset().as_ref())?),
        };
        if let Some(reg) = reg {
            write_file(&out.join(format!("{a}.csv")), &regression_csv(&reg))?;
        }
        if let Some(filter) = a.subset() {
            let keep = subset_indices(&table, &filter)?;
            let subset = SweepResult {
                records: keep.iter().map(|&i| sweep.records[i].clone()).collect(),
                ..sweep.clone()
            };
            write_records_csv(&subset, &out.join(format!("subset_{a}.csv")))?;
        }
    }
    write_file(
        &out.join("correlations.csv"),
        &analysis::correlations(&table)?.to_csv(),
    )?;
    let mut summary = String::from("column,median,skewness\n");
    for s in analysis::shapes(&table, &OUTCOME_COLUMNS, analysis::HISTOGRAM_BINS)? {
        let _ = writeln!(summary, "{},{},{}", s.column, s.median, s.skewness);
        write_file(
            &out.join(format!("histogram_{}.csv", s.column)),
            &s.histogram.to_csv(),
        )?;
    }
    write_file(&out.join("shapes.csv"), &summary)?;
    eprintln!(
        "report for {} runs ({} columns) written to {}",
        sweep.len(),
        columns().len(),
        out.display()
    );
    Ok(())
}
