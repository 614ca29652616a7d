#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod figures;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use strictstable::fracstable::{frac_pdf_grid, FracParams};
use strictstable::series::{threshold_x_cdf, threshold_x_pdf};
use strictstable::{cdf_grid, pdf_grid, EvalOptions, EvalResult, MethodChoice, StableError, StableParams};

use output::{Format, Record, Sink, ThresholdRow};

#[derive(Parser, Debug)]
#[command(
    name = "strictstable",
    version,
    about = "Densities and distribution functions of strictly stable laws"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Probability density
    Pdf(EvalArgs),
    /// Distribution function
    Cdf(EvalArgs),
    /// Fractionally stable density
    Fracpdf(FracArgs),
    /// Threshold coordinates of the series for a list of term counts
    Threshold(ThresholdArgs),
    /// Write the data behind the reference plots as CSV files
    Figures(FiguresArgs),
}

#[derive(Args, Debug)]
struct Points {
    /// Evaluation points, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Vec<f64>,
    /// Grid `lin:a:b:n` or `log:a:b:n`
    #[arg(long)]
    grid: Option<String>,
}

impl Points {
    fn collect(&self) -> Result<Vec<f64>, CliError> {
        let mut xs = self.x.clone();
        if let Some(g) = &self.grid {
            xs.extend(parse_grid(g)?);
        }
        if xs.is_empty() {
            return Err(CliError::Usage("no evaluation points: give --x or --grid".into()));
        }
        Ok(xs)
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Series,
    Integral,
    ClosedForm,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Series => MethodChoice::Series,
            MethodArg::Integral => MethodChoice::Integral,
            MethodArg::ClosedForm => MethodChoice::ClosedForm,
        }
    }
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[command(flatten)]
    points: Points,
    /// Target absolute accuracy
    #[arg(long)]
    eps: Option<f64>,
    /// Maximum number of series terms
    #[arg(long = "N")]
    n_max: Option<usize>,
    #[arg(long)]
    quad_tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct FracArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[command(flatten)]
    points: Points,
    /// Absolute tolerance of the outer quadrature
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 1e-5)]
    eps: f64,
    /// Term counts, comma separated
    #[arg(long = "N", value_delimiter = ',', default_value = "3,10,30,100,300")]
    n: Vec<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct FiguresArgs {
    /// Output directory
    #[arg(long, default_value = "figures")]
    out: PathBuf,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Eval(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Eval(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Eval(m) => f.write_str(m),
        }
    }
}

impl From<StableError> for CliError {
    fn from(e: StableError) -> Self {
        match e {
            StableError::DivergentAtZero | StableError::EmptyData => CliError::Eval(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Eval(e.to_string())
    }
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("invalid grid '{spec}': expected lin:a:b:n or log:a:b:n"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 {
        return Err(bad());
    }
    let a: f64 = parts[1].parse().map_err(|_| bad())?;
    let b: f64 = parts[2].parse().map_err(|_| bad())?;
    let n: usize = parts[3].parse().map_err(|_| bad())?;
    if n == 0 || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    let step = |i: usize| if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
    match parts[0] {
        "lin" => Ok((0..n).map(|i| a + (b - a) * step(i)).collect()),
        "log" => {
            if !(a > 0.0 && b > 0.0) {
                return Err(CliError::Usage(format!(
                    "log grid '{spec}' requires a > 0 and b > 0"
                )));
            }
            let (la, lb) = (a.ln(), b.ln());
            Ok((0..n)
                .map(|i| match i {
                    0 => a,
                    i if i == n - 1 => b,
                    i => (la + (lb - la) * step(i)).exp(),
                })
                .collect())
        }
        _ => Err(bad()),
    }
}

fn records(xs: &[f64], results: Vec<strictstable::Result<EvalResult>>) -> Result<Vec<Record>, CliError> {
    xs.iter()
        .zip(results)
        .map(|(&x, r)| Ok(Record::new(x, &r?)))
        .collect()
}

fn run_eval(args: &EvalArgs, cdf: bool) -> Result<(), CliError> {
    let params = StableParams::new(args.alpha, args.theta, args.lambda)?;
    let mut opts = EvalOptions::default().with_method(args.method.into());
    if let Some(eps) = args.eps {
        opts = opts.with_epsilon(eps);
    }
    if let Some(n) = args.n_max {
        opts.n_max = n;
    }
    if let Some(q) = args.quad_tol {
        opts = opts.with_quad_tol(q);
    }
    opts.validate()?;
    let xs = args.points.collect()?;
    let results = if cdf {
        cdf_grid(&xs, &params, &opts)
    } else {
        pdf_grid(&xs, &params, &opts)
    };
    let recs = records(&xs, results)?;
    Sink::open(args.output.out.as_deref())?.write_records(&recs, args.output.format)
}

fn run_frac(args: &FracArgs) -> Result<(), CliError> {
    let fp = FracParams::new(args.alpha, args.beta, args.theta, args.lambda)?;
    if fp.beta == 1.0 {
        return Err(StableError::DegenerateInner.into());
    }
    let xs = args.points.collect()?;
    let recs = records(&xs, frac_pdf_grid(&xs, &fp, args.eps))?;
    Sink::open(args.output.out.as_deref())?.write_records(&recs, args.output.format)
}

fn run_threshold(args: &ThresholdArgs) -> Result<(), CliError> {
    StableParams::standard(args.alpha, 0.0)?;
    if !(args.eps > 0.0) {
        return Err(CliError::Usage(format!("eps = {} must be > 0", args.eps)));
    }
    if args.n.contains(&0) {
        return Err(CliError::Usage("N must be >= 1".into()));
    }
    let rows: Vec<ThresholdRow> = args
        .n
        .iter()
        .map(|&n| ThresholdRow {
            n,
            x_eps_pdf: threshold_x_pdf(args.alpha, args.eps, n),
            x_eps_cdf: threshold_x_cdf(args.alpha, args.eps, n),
        })
        .collect();
    Sink::open(args.output.out.as_deref())?.write_thresholds(&rows, args.output.format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Pdf(a) => run_eval(a, false),
        Command::Cdf(a) => run_eval(a, true),
        Command::Fracpdf(a) => run_frac(a),
        Command::Threshold(a) => run_threshold(a),
        Command::Figures(a) => figures::write_all(&a.out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
