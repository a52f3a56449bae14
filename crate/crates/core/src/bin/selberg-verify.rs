use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use elliptic_selberg::verify::{render_report, run_suites, summary_line, tally, Suite, SuiteConfig};
use elliptic_selberg::{Error, Result};

/// Run the elliptic Selberg identity suites and report residuals.
///
/// Flags override values from `--config`. Exit status: 0 when every check
/// passes, 1 when any fails, 2 on configuration or I/O errors.
#[derive(Parser, Debug)]
#[command(version)]
struct Cli {
    /// JSON config file with the fields of SuiteConfig.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite to run: core, det, discrete, continuous, proof-replay or all (repeatable).
    #[arg(long = "suite")]
    suites: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Instances per check for every selected suite.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    p_mod: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    p_arg: Option<f64>,
    #[arg(long)]
    q_mod: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    q_arg: Option<f64>,
    /// Tolerance override, `<check_id>=<value>` (repeatable).
    #[arg(long = "tol")]
    tols: Vec<String>,
    /// Quadrature node cap per dimension, for all dimensions.
    #[arg(long)]
    quad_cap: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// text or json.
    #[arg(long)]
    format: Option<String>,
    /// Record wall-clock time per check.
    #[arg(long)]
    timing: bool,
}

fn build_config(cli: &Cli) -> Result<SuiteConfig> {
    let mut c = match &cli.config {
        Some(path) => SuiteConfig::from_file(path)?,
        None => SuiteConfig::default(),
    };
    if !cli.suites.is_empty() {
        let mut suites = Vec::new();
        for s in &cli.suites {
            if s == "all" {
                suites.extend(Suite::ALL);
            } else {
                suites.push(s.parse()?);
            }
        }
        c.suites = suites;
    }
    if let Some(seed) = cli.seed {
        c.seed = seed;
    }
    if let Some(count) = cli.count {
        c.counts = Suite::ALL.iter().map(|&s| (s, count)).collect();
    }
    let [pm, pa] = &mut c.p;
    let [qm, qa] = &mut c.q;
    for (slot, value) in [(pm, cli.p_mod), (pa, cli.p_arg), (qm, cli.q_mod), (qa, cli.q_arg)] {
        if let Some(v) = value {
            *slot = v;
        }
    }
    for t in &cli.tols {
        let (id, value) = t.split_once('=').ok_or_else(|| Error::Config(format!("--tol expects <check_id>=<value>, got '{t}'")))?;
        let value: f64 = value.trim().parse().map_err(|_| Error::Config(format!("bad tolerance '{value}' for {id}")))?;
        c.tol.insert(id.trim().to_string(), value);
    }
    if let Some(cap) = cli.quad_cap {
        c.quad_caps = vec![cap];
    }
    if let Some(out) = &cli.out {
        c.out = Some(out.clone());
    }
    if let Some(f) = &cli.format {
        c.format = f.parse()?;
    }
    c.timing |= cli.timing;
    c.validate()?;
    Ok(c)
}

fn run(cli: &Cli) -> Result<bool> {
    let config = build_config(cli)?;
    let reports = run_suites(&config)?;
    if config.out.is_some() {
        eprintln!("{}", summary_line(&reports));
    } else {
        std::io::stdout().write_all(&render_report(&reports, config.format)?)?;
    }
    let (passed, total) = tally(&reports);
    Ok(passed == total)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("selberg-verify: {e}");
            ExitCode::from(2)
        }
    }
}
