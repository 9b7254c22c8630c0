use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use ncho_cli::config::{parse_point, DEFAULT_WIDTH_GOAL};
use ncho_cli::output::plot_points;
use ncho_cli::{
    emit_plot_data, render_repro, run, write_csv, write_json, write_plot_data, CliError, Command,
    GridSpec, OutputFormat, Payload, Range, RunConfig, OUTPUT_DIR_ENV,
};
use ncho_core::enclosure::DEFAULT_N_MAX;
use ncho_core::gap::DEFAULT_N0;
use ncho_core::{Branch, SectorId};

/// Certified spectra of the non-commutative harmonic oscillator Q(alpha, beta).
#[derive(Parser)]
#[command(name = "ncho", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certified enclosure of the n-th eigenvalue of one sector.
    Enclose {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        sector: SectorArg,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Fixed truncation size; adaptive doubling when absent.
        #[arg(long = "N")]
        truncation: Option<usize>,
        #[arg(long = "N-max", default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Lowest eigenvalues of the full operator, merged over the four sectors.
    Spectrum {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The n-th sector eigenvalue over a parameter grid.
    Curve {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        sector: SectorArg,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Parity gap bound, or with --crossing the certified gap per grid point.
    Gap {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        crossing: bool,
        /// Branch (1 or 2) for --crossing.
        #[arg(long, default_value = "1", value_parser = parse_branch)]
        branch: Branch,
        /// Eigenvalue index for --crossing.
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long = "N0", default_value_t = DEFAULT_N0)]
        n0: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Structural checks at one parameter pair.
    Verify {
        #[command(flatten)]
        point: PointArgs,
        /// Highest band pair checked.
        #[arg(long, default_value_t = 5)]
        pairs: usize,
        /// Truncation used for the ground-vector sign check.
        #[arg(long = "N", default_value_t = 200)]
        truncation: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Ground-state parity and simplicity over a grid.
    Groundstate {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Reproduce a worked example as a fixed-layout table.
    Repro {
        #[arg(long)]
        example: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
}

#[derive(Args)]
struct SectorArg {
    /// One of +1, +2, -1, -2 (p1, m2, ... also accepted).
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    sector: SectorId,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, allow_negative_numbers = true, requires = "beta")]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "alpha")]
    beta: Option<f64>,
    /// Explicit point alpha,beta; repeatable.
    #[arg(long = "point", value_parser = parse_point, allow_hyphen_values = true)]
    points: Vec<(f64, f64)>,
    /// lo:hi:steps
    #[arg(long, requires = "beta_range", conflicts_with_all = ["alpha", "points"])]
    alpha_range: Option<Range>,
    /// lo:hi:steps
    #[arg(long, requires = "alpha_range")]
    beta_range: Option<Range>,
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, default_value_t = DEFAULT_WIDTH_GOAL)]
    width_goal: f64,
    /// json, csv, tsv-plot or text
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Output file; relative paths are resolved against $NCHO_OUTPUT_DIR.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_branch(s: &str) -> Result<Branch, String> {
    match s {
        "1" => Ok(Branch::One),
        "2" => Ok(Branch::Two),
        _ => Err(format!("branch must be 1 or 2, got {s:?}")),
    }
}

impl GridArgs {
    fn spec(self) -> Result<GridSpec, CliError> {
        if let (Some(alpha), Some(beta)) = (self.alpha_range, self.beta_range) {
            return Ok(GridSpec::Ranges { alpha, beta });
        }
        let mut points = self.points;
        if let (Some(a), Some(b)) = (self.alpha, self.beta) {
            points.insert(0, (a, b));
        }
        if points.is_empty() {
            return Err(CliError::Config(
                "give --alpha/--beta, --point, or --alpha-range with --beta-range".into(),
            ));
        }
        Ok(GridSpec::Points(points))
    }
}

fn single(p: PointArgs) -> GridSpec {
    GridSpec::Points(vec![(p.alpha, p.beta)])
}

fn apply_common(c: &mut RunConfig, common: CommonArgs) {
    c.width_goal = common.width_goal;
    c.output = common.output;
    if let Some(f) = common.format {
        c.format = f;
    }
}

fn into_config(cmd: Cmd) -> Result<RunConfig, CliError> {
    let config = match cmd {
        Cmd::Enclose {
            point,
            sector,
            n,
            truncation,
            n_max,
            common,
        } => {
            let mut c = RunConfig::new(Command::Enclose, single(point));
            c.sector = sector.sector;
            c.index = n;
            c.truncation = truncation;
            c.n_max = n_max;
            apply_common(&mut c, common);
            c
        }
        Cmd::Spectrum {
            point,
            count,
            common,
        } => {
            let mut c = RunConfig::new(Command::Spectrum, single(point));
            c.count = count;
            apply_common(&mut c, common);
            c
        }
        Cmd::Curve {
            grid,
            sector,
            n,
            common,
        } => {
            let mut c = RunConfig::new(Command::Curve, grid.spec()?);
            c.sector = sector.sector;
            c.index = n;
            apply_common(&mut c, common);
            c
        }
        Cmd::Gap {
            grid,
            crossing,
            branch,
            n,
            n0,
            common,
        } => {
            let mut c = RunConfig::new(Command::Gap, grid.spec()?);
            c.crossing = crossing;
            c.branch = branch;
            c.index = n;
            c.n0 = n0;
            apply_common(&mut c, common);
            c
        }
        Cmd::Verify {
            point,
            pairs,
            truncation,
            common,
        } => {
            let mut c = RunConfig::new(Command::Verify, single(point));
            c.pairs = pairs;
            c.truncation = Some(truncation);
            apply_common(&mut c, common);
            c
        }
        Cmd::Groundstate { grid, common } => {
            let mut c = RunConfig::new(Command::Groundstate, grid.spec()?);
            apply_common(&mut c, common);
            c
        }
        Cmd::Repro { example, common } => {
            let mut c = RunConfig::new(Command::Repro, GridSpec::Points(Vec::new()));
            c.example = Some(example);
            c.format = OutputFormat::Text;
            apply_common(&mut c, common);
            c
        }
    };
    Ok(config)
}

fn sink(path: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            let file = File::create(p).map_err(|source| CliError::Io {
                path: p.clone(),
                source,
            })?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(io::stdout().lock()),
    })
}

fn execute(config: &RunConfig) -> Result<(), CliError> {
    let envelope = run(config)?;
    for w in &envelope.warnings {
        eprintln!("warning: {w}");
    }
    let out_dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
    let path = config.output_path(out_dir.as_deref());

    match config.format {
        OutputFormat::Json => write_json(&envelope, sink(path.as_ref())?),
        OutputFormat::Csv => write_csv(&envelope.payload, sink(path.as_ref())?),
        OutputFormat::TsvPlot => {
            let points = plot_points(&envelope.payload).unwrap_or_default();
            match &path {
                Some(p) => emit_plot_data(&points, p),
                None => write_plot_data(&points, sink(None)?),
            }
        }
        OutputFormat::Text => match &envelope.payload {
            Payload::Repro(t) => {
                let mut w = sink(path.as_ref())?;
                w.write_all(render_repro(t).as_bytes())?;
                w.flush()?;
                Ok(())
            }
            _ => Err(CliError::Config(
                "text output is only available for repro".into(),
            )),
        },
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("off")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Config(e.render().to_string().trim().to_string())),
    };
    match into_config(cli.command).and_then(|c| execute(&c)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
