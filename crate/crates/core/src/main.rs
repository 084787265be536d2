use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use ibessel::accuracy::{self, Summary};
use ibessel::bench::{self, DEFAULT_INNER_SWEEPS, DEFAULT_REPETITIONS};
use ibessel::grid::{self, GridError, GridSpec, TestPoint};
use ibessel::{generate_uk, profile_double, Error, Evaluator, Status};

const EXIT_USAGE: u8 = 1;
const EXIT_EVAL: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "ibessel", version, about = "Modified Bessel function I_nu(z) for real nu >= 0 and complex z")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate I_nu(z) at one point; prints `re im status region`.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
        /// Argument as `re,im`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long, default_value = "double")]
        profile: String,
    },
    /// Write a test-point grid as CSV (`nu,z_re,z_im,boundary`).
    Grid {
        #[command(flatten)]
        grid: GridArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score the library against a reference CSV.
    ///
    /// The error of each component is |computed - reference| / |reference|,
    /// normalized by the complex magnitude. Points with a reference magnitude
    /// outside the representable range are excluded.
    Accuracy {
        /// Grid CSV the reference was generated from; every reference row
        /// must appear in it, in the same order.
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        reference: PathBuf,
        /// Per-point rows `nu,abs_z,arg_z,relerr_re,relerr_im,region`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Evaluate on one thread.
        #[arg(long)]
        serial: bool,
    },
    /// Time evaluation over a grid: min over repetitions of full sweeps.
    Bench {
        /// Points CSV; a grid is generated from the grid flags when omitted.
        #[arg(long)]
        points: Option<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = DEFAULT_INNER_SWEEPS)]
        inner_sweeps: usize,
        #[arg(long, default_value_t = DEFAULT_REPETITIONS)]
        repetitions: usize,
        /// Also report multi-threaded throughput.
        #[arg(long)]
        parallel: bool,
        /// Machine-readable report (`region,points,ns_per_eval_min`).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print the U_k polynomials of the uniform expansion.
    Uk {
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 1e-2)]
    nu_min: f64,
    #[arg(long, default_value_t = 700.0)]
    nu_max: f64,
    #[arg(long, default_value_t = 1e-2)]
    z_min: f64,
    #[arg(long, default_value_t = 700.0)]
    z_max: f64,
    #[arg(long, default_value_t = 100)]
    nu_count: usize,
    #[arg(long, default_value_t = 100)]
    z_count: usize,
    /// Comma-separated phases in radians; the default eight when omitted.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    phases: Option<Vec<f64>>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 400)]
    boundary_per_curve: usize,
}

impl GridArgs {
    fn spec(&self) -> GridSpec {
        GridSpec {
            nu_range: (self.nu_min, self.nu_max),
            zmag_range: (self.z_min, self.z_max),
            nu_count: self.nu_count,
            z_count: self.z_count,
            phases: self.phases.clone().unwrap_or_else(grid::default_phases),
            seed: self.seed,
            boundary_per_curve: self.boundary_per_curve,
        }
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or("expected re,im")?;
    let f = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok(Complex64::new(f(re)?, f(im)?))
}

fn fmt_component(x: f64) -> String {
    if x == 0.0 {
        format!("{x:?}")
    } else {
        format!("{x:e}")
    }
}

enum Failure {
    Usage(String),
    Eval(String),
    Io(String),
}

impl From<GridError> for Failure {
    fn from(e: GridError) -> Self {
        match e {
            GridError::Invalid(m) => Failure::Usage(m),
            e => Failure::Io(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn print_summary(label: &str, s: &Summary) {
    println!(
        "{label:<18} {:>8} {:>11.3e} {:>11.3e} {:>11.3e} {:>11.3e}",
        s.scored, s.p50, s.p99, s.p999, s.max
    );
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Eval { nu, z, profile } => {
            if profile != "double" {
                return Err(Failure::Usage(format!("unsupported profile {profile:?}; only \"double\" evaluates")));
            }
            match Evaluator::double().eval(nu, z) {
                Ok(r) if r.status == Status::OverflowError => {
                    println!("{}", Status::OverflowError);
                    Err(Failure::Eval(format!("I_{nu}({z}) exceeds the largest double")))
                }
                Ok(r) => {
                    println!("{} {} {} {}", fmt_component(r.value.re), fmt_component(r.value.im), r.status, r.region);
                    Ok(())
                }
                Err(Error::Overflow) => {
                    println!("{}", Status::OverflowError);
                    Err(Failure::Eval("overflow".into()))
                }
                Err(e) => Err(Failure::Eval(e.to_string())),
            }
        }
        Cmd::Grid { grid, out } => {
            let pts = grid::make_grid(&grid.spec(), &profile_double())?;
            grid::write_points(output(&out)?, &pts)?;
            Ok(())
        }
        Cmd::Accuracy { points, reference, out, serial } => {
            let pts = grid::load_points(&points)?;
            let refs = grid::load_reference(&reference)?;
            // the oracle may drop points, so the reference must be an in-order subset
            let mut it = pts.iter();
            for (i, r) in refs.iter().enumerate() {
                if !it.any(|p| p.nu == r.nu && p.z == r.z) {
                    return Err(Failure::Usage(format!(
                        "reference row {} (nu={:?}, z={:?},{:?}) is not in {} or is out of order",
                        i + 2,
                        r.nu,
                        r.z.re,
                        r.z.im,
                        points.display()
                    )));
                }
            }
            let report = accuracy::score(Evaluator::double(), &refs, !serial);
            println!("{:<18} {:>8} {:>11} {:>11} {:>11} {:>11}", "region", "points", "p50", "p99", "p99.9", "max");
            for (tag, s) in &report.per_region {
                print_summary(tag.name(), s);
            }
            print_summary("all", &report.summary);
            println!("excluded (unrepresentable reference): {}", report.summary.excluded);
            if let Some(w) = report.summary.worst {
                println!("worst: nu={:?} z={:?}{:+?}i region={} err={:.3e}", w.nu, w.z.re, w.z.im, w.region, w.max());
            }
            if let Some(path) = out {
                accuracy::write_rows(BufWriter::new(File::create(path)?), &report.rows)?;
            }
            Ok(())
        }
        Cmd::Bench { points, grid, inner_sweeps, repetitions, parallel, csv } => {
            let pts: Vec<TestPoint> = match points {
                Some(p) => grid::load_points(p)?,
                None => grid::make_grid(&grid.spec(), &profile_double())?,
            };
            let report = bench::run_bench(Evaluator::double(), &pts, inner_sweeps, repetitions, parallel)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{report}");
            if let Some(path) = csv {
                report.write_csv(BufWriter::new(File::create(path)?))?;
            }
            Ok(())
        }
        Cmd::Uk { count } => {
            if count == 0 {
                return Err(Failure::Usage("count must be at least 1".into()));
            }
            print!("{}", generate_uk(count).dump());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Eval(m) => (EXIT_EVAL, m),
                Failure::Io(m) => (EXIT_IO, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
