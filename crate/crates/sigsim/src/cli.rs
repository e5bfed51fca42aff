//! Command-line front end: `run`, `ttest` and `critical`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sigsim_core::simlab::{DEFAULT_ALPHA, DEFAULT_SEED, DEFAULT_SIZES, DEFAULT_TRIALS};
use sigsim_core::ttest::t_test;
use sigsim_core::{critical_separation, Probability, SampleGroup, Seed, SimulationConfig, TestKind};

use crate::error::CliError;
use crate::figures::render_selected;
use crate::parallel::run_study_parallel;
use crate::{pgm, report};

#[derive(Debug, Parser)]
#[command(name = "sigsim", version, about = "How little separation does p < 0.05 need?")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the Monte Carlo study and write reports and images.
    Run(RunArgs),
    /// Two-sample t-test on two files of newline-separated numbers.
    Ttest(TtestArgs),
    /// Tabulate the critical mean separation for significance.
    Critical(CriticalArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TestArg {
    Pooled,
    Welch,
}

impl From<TestArg> for TestKind {
    fn from(t: TestArg) -> Self {
        match t {
            TestArg::Pooled => TestKind::Pooled,
            TestArg::Welch => TestKind::Welch,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Group sizes, each a perfect square.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SIZES)]
    pub sizes: Vec<usize>,
    /// Random pairs per size.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: u32,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    /// Master seed for all random streams.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, default_value = "sigsim-out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = TestArg::Pooled)]
    pub test: TestArg,
    /// Skip regenerating and writing the PGM images.
    #[arg(long)]
    pub no_images: bool,
    /// Mean of the generating normal distribution.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mean: f64,
    /// Standard deviation of the generating normal distribution.
    #[arg(long, default_value_t = 1.0)]
    pub sd: f64,
    /// Worker threads; output does not depend on this.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TtestArgs {
    pub file_a: PathBuf,
    pub file_b: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = TestArg::Pooled)]
    pub test: TestArg,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    /// Per-group sample sizes.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SIZES)]
    pub sizes: Vec<usize>,
    /// Common standard deviation of both groups.
    #[arg(long, default_value_t = 1.0)]
    pub sd: f64,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
}

/// Parses `args` (including the program name), runs the command, and
/// returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Run(args) => cmd_run(&args, out),
        Command::Ttest(args) => cmd_ttest(&args, out),
        Command::Critical(args) => cmd_critical(&args, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "sigsim: {e}");
            e.exit_code()
        }
    }
}

fn probability(name: &str, v: f64) -> Result<Probability, CliError> {
    match Probability::new(v) {
        Ok(p) if v > 0.0 && v < 1.0 => Ok(p),
        _ => Err(CliError::Usage(format!("--{name} must lie strictly between 0 and 1, got {v}"))),
    }
}

fn stdout_io(e: std::io::Error) -> CliError {
    CliError::io("<stdout>", e)
}

pub fn config_from(args: &RunArgs) -> Result<SimulationConfig, CliError> {
    let config = SimulationConfig {
        sizes: args.sizes.clone(),
        trials_per_size: args.trials,
        alpha: probability("alpha", args.alpha)?,
        master_seed: Seed(args.seed),
        gen_mean: args.mean,
        gen_sd: args.sd,
        test_kind: args.test.into(),
    };
    config.validate()?;
    Ok(config)
}

/// Writes `bytes` to `dir/name` through a temporary file and a rename, so a
/// failed run never leaves a half-written file behind.
fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<(), CliError> {
    let path = dir.join(name);
    let mut builder = tempfile::Builder::new();
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        builder.permissions(fs::Permissions::from_mode(0o644));
    }
    let mut tmp = builder.tempfile_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(&path, e))?;
    tmp.persist(&path).map_err(|e| CliError::io(&path, e.error))?;
    Ok(())
}

pub fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = config_from(args)?;
    let run = run_study_parallel(&config, args.threads)?;
    let figures = if args.no_images {
        Vec::new()
    } else {
        render_selected(&run).map_err(|e| CliError::Numeric(e.to_string()))?
    };
    let csv = report::to_csv(&run);
    let markdown = report::to_markdown(&run);

    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    write_atomic(&args.out, "report.csv", csv.as_bytes())?;
    write_atomic(&args.out, "report.md", markdown.as_bytes())?;
    for figure in &figures {
        for (name, image) in figure.file_names() {
            write_atomic(&args.out, &name, &pgm::encode(image))?;
        }
    }
    out.write_all(markdown.as_bytes()).map_err(stdout_io)
}

/// Newline-separated decimals; blank lines are skipped.
pub fn parse_values(text: &str, source: &Path) -> Result<SampleGroup, CliError> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| {
            CliError::Usage(format!("{}:{}: not a number: {line:?}", source.display(), lineno + 1))
        })?;
        values.push(v);
    }
    SampleGroup::new(values).map_err(|e| CliError::Usage(format!("{}: {e}", source.display())))
}

fn read_group(path: &Path) -> Result<SampleGroup, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_values(&text, path)
}

pub fn cmd_ttest(args: &TtestArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let alpha = probability("alpha", args.alpha)?;
    let a = read_group(&args.file_a)?;
    let b = read_group(&args.file_b)?;
    let r = t_test(args.test.into(), &a, &b, alpha).map_err(|e| CliError::Numeric(e.to_string()))?;
    writeln!(
        out,
        "{},{},{},{},{},{},{}",
        r.t,
        r.df.value(),
        r.p.value(),
        r.mean_diff,
        r.cohen_d,
        r.ci_low,
        r.ci_high
    )
    .map_err(stdout_io)
}

pub fn cmd_critical(args: &CriticalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let alpha = probability("alpha", args.alpha)?.value();
    if !(args.sd > 0.0 && args.sd.is_finite()) {
        return Err(CliError::Usage(format!("--sd must be positive, got {}", args.sd)));
    }
    if args.sizes.is_empty() {
        return Err(CliError::Usage("--sizes needs at least one value".into()));
    }
    let mut text = String::from("n,delta\n");
    for &n in &args.sizes {
        let delta = critical_separation(n, args.sd, alpha).map_err(|e| CliError::Usage(format!("n = {n}: {e}")))?;
        text.push_str(&format!("{n},{delta}\n"));
    }
    out.write_all(text.as_bytes()).map_err(stdout_io)
}
