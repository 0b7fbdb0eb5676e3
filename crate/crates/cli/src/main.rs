use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use critgb_cli::commands::{self, CliError, CliResult, Kind, Shape};
use critgb_core::hilbert::{EstimatorParams, Mode};
use critgb_core::instance::{format_instance, Instance};
use critgb_core::{InstanceSpec, DEFAULT_PRIME};
use log::info;

#[derive(Parser)]
#[command(name = "critgb", version, about = "Signature Groebner bases for maximal minors and critical points")]
struct Cli {
    /// More logging (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Matrix,
    System,
}

#[derive(Args, Clone)]
struct ShapeArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    /// Columns (matrices only; defaults to n+p-1).
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    d0: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ShapeArgs {
    fn spec(&self) -> CliResult<InstanceSpec> {
        let need = |name: &str| CliError::Usage(format!("--{name} is required without an instance file"));
        let n = self.n.ok_or_else(|| need("n"))?;
        let p = self.p.ok_or_else(|| need("p"))?;
        let d0 = self.d0.ok_or_else(|| need("d0"))?;
        let mut spec = InstanceSpec::new(n, p, self.q.unwrap_or(n + p - 1), d0, self.seed);
        spec.prime = self.prime;
        Ok(spec)
    }
}

#[derive(Args)]
struct GbArgs {
    /// Instance file; if absent one is generated from the shape flags.
    instance: Option<PathBuf>,
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Also run the Lazard oracle and diff the leading monomials.
    #[arg(long)]
    oracle: bool,
    /// Disable the syzygy criterion.
    #[arg(long)]
    no_criterion: bool,
    /// Write the basis here, plus `.stats.jsonl` and `.stats.csv` next to it.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a random instance file.
    Gen {
        #[arg(long, value_enum, default_value = "matrix")]
        kind: GenKind,
        #[command(flatten)]
        shape: ShapeArgs,
        /// SRC:DST, overwrite column DST with column SRC (1-based) to make a
        /// degenerate matrix.
        #[arg(long)]
        copy_column: Option<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Groebner basis of the maximal minors of a matrix.
    Minors(GbArgs),
    /// Groebner basis of a critical-point system.
    Crit(GbArgs),
    /// Predicted row counts against the Lazard bound.
    Compare {
        /// p,q,n,d0 (repeatable).
        #[arg(long)]
        shape: Vec<String>,
        /// Sweep over p (with q = n+p-1); N or A:B.
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        d0: Option<String>,
        #[arg(long)]
        with_speedup: bool,
    },
    /// Compare measured ranks and criterion sizes with the Hilbert predictions.
    Verify {
        instance: Option<PathBuf>,
        #[command(flatten)]
        shape: ShapeArgs,
        /// Generate a system rather than a matrix when no file is given.
        #[arg(long)]
        system: bool,
        #[arg(long)]
        degree_bound: Option<u32>,
        /// Fail unless exactly this mode is consistent.
        #[arg(long)]
        mode: Option<Mode>,
        /// Also check the syzygy direct-sum decomposition (systems only).
        #[arg(long)]
        direct_sum: bool,
    },
    /// Operation-count estimate for a critical-point system.
    Estimate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        d0: u32,
        #[arg(long, default_value_t = 2.81)]
        omega: f64,
        #[arg(long, default_value = "derived")]
        mode: Mode,
    },
}

fn load(path: Option<&Path>, shape: &ShapeArgs, kind: Kind) -> CliResult<Instance> {
    match path {
        Some(p) => commands::read_instance(p),
        None => commands::generate(&shape.spec()?, kind),
    }
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(p) => commands::write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gb(args: GbArgs, kind: Kind) -> CliResult<()> {
    let inst = load(args.instance.as_deref(), &args.shape, kind)?;
    let out = commands::cmd_gb(&inst, kind, args.degree_bound, args.oracle, !args.no_criterion)?;
    info!(
        "degree bound {}, {} basis elements, |H| = {}",
        out.degree_bound,
        out.basis.len(),
        out.criterion_size
    );
    match &args.output {
        Some(path) => {
            commands::write_file(path, &out.basis_text())?;
            let mut jsonl = path.clone().into_os_string();
            jsonl.push(".stats.jsonl");
            commands::write_file(Path::new(&jsonl), &out.stats_jsonl())?;
            let mut csv = path.clone().into_os_string();
            csv.push(".stats.csv");
            commands::write_file(Path::new(&csv), &out.stats_csv())?;
        }
        None => {
            print!("{}", out.basis_text());
            eprint!("{}", out.stats_csv());
        }
    }
    if let Some(diff) = out.oracle_diff {
        if !diff.is_empty() {
            for line in &diff {
                eprintln!("{line}");
            }
            return Err(CliError::Oracle(format!("{} leading monomials differ", diff.len())));
        }
        eprintln!("oracle: leading monomials agree");
    }
    Ok(())
}

fn compare(
    shape: Vec<String>,
    p: Option<String>,
    n: Option<String>,
    d0: Option<String>,
    with_speedup: bool,
) -> CliResult<()> {
    let mut shapes: Vec<Shape> = shape.iter().map(|s| commands::parse_shape(s)).collect::<CliResult<_>>()?;
    if p.is_some() || n.is_some() || d0.is_some() {
        let (Some(p), Some(n), Some(d0)) = (p, n, d0) else {
            return Err(CliError::Usage("a sweep needs --p, --n and --d0".into()));
        };
        shapes.extend(commands::sweep_shapes(
            commands::parse_range(&p)?,
            commands::parse_range(&n)?,
            commands::parse_range(&d0)?,
        ));
    }
    if shapes.is_empty() {
        shapes.extend(commands::DEFAULT_SHAPES);
    }
    print!("{}", commands::cmd_compare(&shapes, with_speedup)?);
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.cmd {
        Cmd::Gen {
            kind,
            shape,
            copy_column,
            output,
        } => {
            let kind = match kind {
                GenKind::Matrix => Kind::Minors,
                GenKind::System => Kind::Crit,
            };
            let mut inst = commands::generate(&shape.spec()?, kind)?;
            if let Some(cc) = copy_column {
                let Instance::Matrix(a) = &inst else {
                    return Err(CliError::Usage("--copy-column needs --kind matrix".into()));
                };
                let (src, dst) = cc
                    .split_once(':')
                    .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                    .ok_or_else(|| CliError::Usage(format!("'{cc}' is not SRC:DST")))?;
                inst = Instance::Matrix(commands::duplicate_column(a, src, dst)?);
            }
            emit(output.as_deref(), &format_instance(&inst))
        }
        Cmd::Minors(args) => gb(args, Kind::Minors),
        Cmd::Crit(args) => gb(args, Kind::Crit),
        Cmd::Compare {
            shape,
            p,
            n,
            d0,
            with_speedup,
        } => compare(shape, p, n, d0, with_speedup),
        Cmd::Verify {
            instance,
            shape,
            system,
            degree_bound,
            mode,
            direct_sum,
        } => {
            let kind = if system { Kind::Crit } else { Kind::Minors };
            let inst = load(instance.as_deref(), &shape, kind)?;
            let report = commands::cmd_verify(&inst, degree_bound, direct_sum)?;
            print!("{}", report.text);
            if !report.all_match() {
                return Err(CliError::Mismatch("measured values disagree with every prediction".into()));
            }
            if let Some(m) = mode {
                if report.verdict() != Some(m) {
                    return Err(CliError::Mismatch(format!("expected mode '{}' alone to be consistent", m.name())));
                }
            }
            Ok(())
        }
        Cmd::Estimate {
            n,
            p,
            d0,
            omega,
            mode,
        } => {
            let params = EstimatorParams {
                n,
                p,
                q: n,
                d0,
                omega,
                mode,
            };
            print!("{}", commands::cmd_estimate(&params)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
