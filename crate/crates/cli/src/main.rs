//! `logspiral`: geodesic curvature of logarithmic spirals and loxodromes.
//!
//! Exit codes: 0 success, 1 inadmissible input, 2 a verification check
//! failed, 3 malformed command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod figures;
mod format;
mod svg;
mod trace;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logspiral_core::analysis::{run_battery, BatteryConfig, Suite};
use logspiral_core::closed_form::{curvature_profile, k_theta_at, ProfileAxis};
use logspiral_core::surface::JetMode;
use logspiral_core::GeomError;

use crate::figures::FigureName;
use crate::format::sig17;
use crate::trace::{trace_rows, TraceRequest, TraceSurface};

#[derive(Debug, Parser)]
#[command(
    name = "logspiral",
    version,
    about = "Geodesic curvature of logarithmic spirals on constant-curvature surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print k_θ(K, r).
    Curvature(CurvatureArgs),
    /// Tabulate k_θ along r or K as CSV.
    Profile(ProfileArgs),
    /// Sample a spiral or loxodrome as CSV or SVG.
    Trace(TraceArgs),
    /// Run the verification battery.
    Verify(VerifyArgs),
    /// Draw one of the figures as SVG.
    Figure(FigureArgs),
}

#[derive(Debug, Args)]
struct AngleArgs {
    /// Characteristic angle in radians.
    #[arg(long, allow_negative_numbers = true, required_unless_present = "theta_deg", conflicts_with = "theta_deg")]
    theta: Option<f64>,
    /// Characteristic angle in degrees.
    #[arg(long = "theta-deg", allow_negative_numbers = true)]
    theta_deg: Option<f64>,
}

impl AngleArgs {
    fn radians(&self) -> f64 {
        match (self.theta, self.theta_deg) {
            (Some(t), _) => t,
            (None, Some(d)) => d.to_radians(),
            (None, None) => unreachable!("clap requires one angle flag"),
        }
    }
}

#[derive(Debug, Args)]
struct CurvatureArgs {
    /// Gaussian curvature K.
    #[arg(long = "K", allow_negative_numbers = true)]
    gaussian_curvature: f64,
    /// Distance r from the spiral's center.
    #[arg(long, allow_negative_numbers = true)]
    r: f64,
    #[command(flatten)]
    angle: AngleArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    #[value(name = "r")]
    R,
    #[value(name = "K")]
    K,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Svg,
    ReportText,
    ReportJson,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    #[arg(long, value_enum)]
    axis: AxisArg,
    /// Value of the other variable (K when sweeping r, r when sweeping K).
    #[arg(long, allow_negative_numbers = true)]
    fixed: f64,
    #[arg(long, allow_negative_numbers = true)]
    min: f64,
    #[arg(long, allow_negative_numbers = true)]
    max: f64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    steps: u64,
    #[command(flatten)]
    angle: AngleArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TraceArgs {
    #[arg(long, value_enum)]
    surface: TraceSurface,
    /// Gaussian curvature for `--surface polar`.
    #[arg(long = "K", allow_negative_numbers = true, default_value_t = 0.0)]
    gaussian_curvature: f64,
    /// Radius of the sphere or pseudosphere.
    #[arg(long = "R", default_value_t = 1.0)]
    radius: f64,
    #[command(flatten)]
    angle: AngleArgs,
    /// Start of the sampled range: distance to the center, or the profile
    /// parameter v on the pseudosphere.
    #[arg(long, allow_negative_numbers = true)]
    r0: Option<f64>,
    /// End of the sampled range.
    #[arg(long, allow_negative_numbers = true)]
    r1: Option<f64>,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(2..))]
    samples: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Forms,
    Curves,
    Liouville,
    Analysis,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum JetsArg {
    Analytic,
    Fd,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, value_enum, default_value = "analytic")]
    jets: JetsArg,
    /// Multiplies every tolerance.
    #[arg(long = "tol-scale", default_value_t = 1.0)]
    tol_scale: f64,
    #[arg(long, value_enum, default_value = "report-text")]
    format: OutputFormat,
    /// Include every observation in text reports.
    #[arg(long)]
    verbose: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FigureArgs {
    #[arg(long, value_enum)]
    name: FigureName,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug)]
enum Failure {
    Domain(String),
    Usage(String),
    Io(String),
    ChecksFailed,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) | Failure::Io(_) => 1,
            Failure::ChecksFailed => 2,
            Failure::Usage(_) => 3,
        }
    }
}

impl From<GeomError> for Failure {
    fn from(err: GeomError) -> Self {
        match err {
            GeomError::Domain(_) => Failure::Domain(err.to_string()),
            other => Failure::Domain(format!("domain error: {other}")),
        }
    }
}

/// Writes the whole document at once so a failed command leaves no file.
fn emit(out: Option<&PathBuf>, body: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
        }
        None => std::io::stdout()
            .lock()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write to standard output: {e}"))),
    }
}

fn cmd_curvature(args: &CurvatureArgs) -> Result<(), Failure> {
    let k = k_theta_at(args.gaussian_curvature, args.r, args.angle.radians())?;
    emit(None, &format!("{}\n", sig17(k)))
}

fn cmd_profile(args: &ProfileArgs) -> Result<(), Failure> {
    if args.format != OutputFormat::Csv {
        return Err(Failure::Usage("profile output must be csv".into()));
    }
    let axis = match args.axis {
        AxisArg::R => ProfileAxis::Distance,
        AxisArg::K => ProfileAxis::Curvature,
    };
    let profile = curvature_profile(axis, args.fixed, args.min, args.max, args.steps as usize, args.angle.radians())?;
    let mut body = String::from("x,k,method\n");
    for s in &profile.samples {
        body.push_str(&format!("{},{},{}\n", sig17(s.x), sig17(s.k), s.method.as_str()));
    }
    emit(args.out.as_ref(), &body)
}

fn cmd_trace(args: &TraceArgs) -> Result<(), Failure> {
    if !matches!(args.format, OutputFormat::Csv | OutputFormat::Svg) {
        return Err(Failure::Usage("trace output must be csv or svg".into()));
    }
    let request = TraceRequest {
        surface: args.surface,
        gaussian_curvature: args.gaussian_curvature,
        radius: args.radius,
        theta: args.angle.radians(),
        r0: args.r0,
        r1: args.r1,
        samples: args.samples as usize,
    };
    let rows = trace_rows(&request)?;
    let body = if args.format == OutputFormat::Csv {
        let mut body = String::from("t,x,y,z,u,v,k,theta_meas\n");
        for row in &rows {
            let fields = [row.t, row.position.x, row.position.y, row.position.z, row.u, row.v, row.k, row.theta_meas];
            let line: Vec<String> = fields.iter().map(|&x| sig17(x)).collect();
            body.push_str(&line.join(","));
            body.push('\n');
        }
        body
    } else {
        // Orthographic view along +z.
        let mut drawing = svg::Drawing::new("trace");
        drawing.polyline(rows.iter().map(|r| (r.position.x, r.position.y)).collect(), "#1f4e9c", 1.4);
        drawing.render()
    };
    emit(args.out.as_ref(), &body)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    if !matches!(args.format, OutputFormat::ReportText | OutputFormat::ReportJson) {
        return Err(Failure::Usage("verify output must be report-text or report-json".into()));
    }
    if !(args.tol_scale > 0.0 && args.tol_scale.is_finite()) {
        return Err(Failure::Usage(format!("--tol-scale must be positive, got {}", args.tol_scale)));
    }
    let suite = match args.suite {
        SuiteArg::Forms => Suite::Forms,
        SuiteArg::Curves => Suite::Curves,
        SuiteArg::Liouville => Suite::Liouville,
        SuiteArg::Analysis => Suite::Analysis,
        SuiteArg::All => Suite::All,
    };
    let jets = match args.jets {
        JetsArg::Analytic => JetMode::Analytic,
        JetsArg::Fd => JetMode::FiniteDifference,
    };
    let reports = run_battery(suite, &BatteryConfig { jets, tol_scale: args.tol_scale });
    let failed = reports.iter().filter(|r| !r.passed).count();
    let body = match args.format {
        OutputFormat::ReportJson => {
            let json: Vec<String> = reports.iter().map(|r| r.to_json()).collect();
            format!("[\n{}\n]\n", json.join(",\n"))
        }
        _ => {
            let mut body = String::new();
            for r in &reports {
                let text = r.to_text();
                if args.verbose || !r.passed {
                    body.push_str(&text);
                } else {
                    body.push_str(text.lines().next().unwrap_or_default());
                    body.push('\n');
                }
            }
            body.push_str(&format!("summary: {} passed, {} failed\n", reports.len() - failed, failed));
            body
        }
    };
    emit(args.out.as_ref(), &body)?;
    if failed > 0 {
        Err(Failure::ChecksFailed)
    } else {
        Ok(())
    }
}

fn cmd_figure(args: &FigureArgs) -> Result<(), Failure> {
    let body = figures::render(args.name)?;
    emit(Some(&args.out), &body)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Curvature(a) => cmd_curvature(a),
        Command::Profile(a) => cmd_profile(a),
        Command::Trace(a) => cmd_trace(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Figure(a) => cmd_figure(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Domain(msg) | Failure::Usage(msg) | Failure::Io(msg) => eprintln!("{msg}"),
                Failure::ChecksFailed => eprintln!("verification failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}
