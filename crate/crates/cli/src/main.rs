use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ordcurves::carrier::Carrier;
use ordcurves::constructions::{
    construct_carrier_general, construct_line_heavy, sample_configuration, Genericity, SampleKind,
};
use ordcurves::determined::{
    enumerate_determined, max_curve_richness, ordinary_curves, ConfigurationFile, PointConfiguration,
};
use ordcurves::nd::{grow_nd_chain, nd_verify, CandidateOrder};
use ordcurves::oracle::{oracle_determined, oracle_nd, OracleReport};
use ordcurves::point::PlanePoint;
use ordcurves::projection::curves_from_basis;
use ordcurves::veronese::lift_all;
use ordcurves::Error;

#[derive(Parser)]
#[command(name = "ordcurves", version, about = "Determined and ordinary plane curves of rational point sets")]
struct Cli {
    /// Size of the worker pool.
    #[arg(long, global = true, env = "ORDCURVES_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Point-set JSON file.
    #[arg(long, short)]
    input: PathBuf,
    /// Degree; defaults to the `d` stored in the file.
    #[arg(long)]
    d: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    LineHeavy,
    CarrierGeneral,
    Grid,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenericityArg {
    Unrestricted,
    NotOnCurve,
    General,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Veronese lifts of the points.
    Lift(Input),
    /// List every determined curve.
    Determined(Input),
    /// List determined curves meeting the set in at most `n` points.
    Ordinary {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
    },
    /// Largest number of points on one curve of degree at most `e`.
    Richness {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        e: u32,
    },
    /// Check the basis conditions for the points at the given indices.
    NdVerify {
        #[command(flatten)]
        input: Input,
        /// Comma-separated point indices.
        #[arg(long, value_delimiter = ',')]
        basis: Vec<usize>,
    },
    /// Grow a basis greedily.
    NdGrow {
        #[command(flatten)]
        input: Input,
        /// Shuffle candidates with this seed instead of using file order.
        #[arg(long)]
        seed: Option<u64>,
        /// Restrict candidates to the curve y = x^k.
        #[arg(long)]
        carrier_power: Option<u32>,
        /// Comma-separated indices of the starting points.
        #[arg(long, value_delimiter = ',')]
        start: Vec<usize>,
    },
    /// Produce ordinary curves through a basis by projection.
    Project {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        basis: Vec<usize>,
    },
    /// Generate a configuration.
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long, default_value_t = 3)]
        height: usize,
        #[arg(long, default_value_t = 20)]
        range: i64,
        #[arg(long, value_enum, default_value = "unrestricted")]
        genericity: GenericityArg,
        /// Degree used by the genericity check; defaults to `d`.
        #[arg(long)]
        e: Option<u32>,
    },
    /// One CSV row per seeded random configuration of each size.
    Sweep {
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        range: i64,
        /// Write 0 in the runtime column so output is byte-stable.
        #[arg(long)]
        no_timing: bool,
    },
    /// Compare the main algorithms with the brute-force oracles.
    OracleCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        basis: Vec<usize>,
    },
}

enum Failure {
    Input(String),
    Library(Error),
    Discrepancy(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

type Outcome = Result<String, Failure>;

fn load(input: &Input) -> Result<PointConfiguration, Failure> {
    load_path(&input.input, input.d)
}

fn load_path(path: &Path, d: Option<u32>) -> Result<PointConfiguration, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let file: ConfigurationFile = serde_json::from_str(&text).map_err(|e| {
        Failure::Input(format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column()))
    })?;
    PointConfiguration::new(file.points, d.unwrap_or(file.d)).map_err(|e| Failure::Input(e.to_string()))
}

fn render<T: serde::Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable output");
    serde_json::to_string_pretty(&v).expect("json output")
}

fn pick(a: &PointConfiguration, indices: &[usize]) -> Result<Vec<PlanePoint>, Failure> {
    if let Some(i) = indices.iter().find(|&&i| i >= a.len()) {
        return Err(Failure::Library(Error::InvalidArgument(format!("index {i} out of range"))));
    }
    Ok(a.subset(indices))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Lift(input) => {
            let a = load(&input)?;
            let lifted: Vec<Vec<String>> = lift_all(a.points(), a.d())
                .iter()
                .map(|z| z.iter().map(|q| q.to_string()).collect())
                .collect();
            Ok(render(&json!({ "d": a.d(), "points": a.points(), "lifted": lifted })))
        }
        Command::Determined(input) => {
            let set = enumerate_determined(&load(&input)?)?;
            Ok(render(&json!({ "count": set.len(), "d": set.d, "curves": set.curves })))
        }
        Command::Ordinary { input, n } => {
            let set = ordinary_curves(&load(&input)?, n)?;
            Ok(render(&json!({ "count": set.len(), "d": set.d, "n": n, "curves": set.curves })))
        }
        Command::Richness { input, e } => Ok(render(&max_curve_richness(&load(&input)?, e)?)),
        Command::NdVerify { input, basis } => {
            let a = load(&input)?;
            let b = pick(&a, &basis)?;
            let verdict = nd_verify(a.points(), &b, a.d())?;
            let oracle = oracle_nd(a.points(), &b, a.d())?;
            if oracle != verdict.holds {
                return Err(Failure::Discrepancy(format!(
                    "basis check {} but oracle {} for basis {basis:?}",
                    verdict.holds, oracle
                )));
            }
            Ok(render(&verdict))
        }
        Command::NdGrow { input, seed, carrier_power, start } => {
            let a = load(&input)?;
            let order = seed.map_or(CandidateOrder::Natural, CandidateOrder::Seeded);
            let carrier = carrier_power.map(Carrier::power_graph).transpose()?;
            let report = grow_nd_chain(a.points(), &start, carrier.as_ref(), a.d(), &order)?;
            Ok(render(&report))
        }
        Command::Project { input, basis } => {
            let a = load(&input)?;
            let b = pick(&a, &basis)?;
            Ok(render(&curves_from_basis(a.points(), &b, a.d())?))
        }
        Command::Construct { kind, d, n, m, seed, width, height, range, genericity, e } => {
            let need = |v: Option<usize>, name: &str| {
                v.ok_or_else(|| Failure::Library(Error::InvalidArgument(format!("--{name} is required for this kind"))))
            };
            let out = match kind {
                Kind::LineHeavy => construct_line_heavy(d, need(m, "m")?, seed)?,
                Kind::CarrierGeneral => {
                    construct_carrier_general(d, need(n, "n")?, need(m, "m")?, &Carrier::power_graph(d)?, seed)?
                }
                Kind::Grid => sample_configuration(SampleKind::Grid { width, height }, d, seed)?,
                Kind::Random => {
                    let e = e.unwrap_or(d);
                    let genericity = match genericity {
                        GenericityArg::Unrestricted => Genericity::Unrestricted,
                        GenericityArg::NotOnCurve => Genericity::NotOnCurve(e),
                        GenericityArg::General => Genericity::General(e),
                    };
                    sample_configuration(SampleKind::Random { count: need(m, "m")?, range, genericity }, d, seed)?
                }
            };
            Ok(render(&out))
        }
        Command::Sweep { d, n, from, to, seed, range, no_timing } => {
            if from > to {
                return Err(Failure::Library(Error::InvalidArgument("--from exceeds --to".into())));
            }
            let mut out = String::from("size,d,n,determined,ordinary,max_richness,runtime_ms\n");
            for size in from..=to {
                let kind = SampleKind::Random { count: size, range, genericity: Genericity::NotOnCurve(d) };
                let sample = sample_configuration(kind, d, seed.wrapping_add(size as u64))?;
                let start = Instant::now();
                let all = enumerate_determined(&sample.configuration)?;
                let ordinary = ordinary_curves(&sample.configuration, n)?.len();
                let richness = max_curve_richness(&sample.configuration, d)?;
                let ms = if no_timing { 0 } else { start.elapsed().as_millis() };
                out.push_str(&format!("{size},{d},{n},{},{ordinary},{},{ms}\n", all.len(), richness.size));
            }
            Ok(out)
        }
        Command::OracleCheck { input, basis } => {
            let a = load(&input)?;
            let instance = input.input.display().to_string();
            let main = enumerate_determined(&a)?.radicals();
            let oracle = oracle_determined(a.points(), a.d())?;
            let fmt = |s: &std::collections::BTreeSet<_>| {
                s.iter().map(|p: &ordcurves::bipoly::BivariatePolynomial| p.to_string()).collect::<Vec<_>>().join("; ")
            };
            let mut reports = vec![OracleReport::new(&instance, "determined curves", fmt(&oracle), fmt(&main))];
            if !basis.is_empty() {
                let b = pick(&a, &basis)?;
                let verdict = nd_verify(a.points(), &b, a.d())?;
                let o = oracle_nd(a.points(), &b, a.d())?;
                reports.push(OracleReport::new(&instance, "basis conditions", o.to_string(), verdict.holds.to_string()));
            }
            let text: Vec<String> =
                reports.iter().map(|r| serde_json::to_string(&serde_json::to_value(r).expect("report")).expect("json")).collect();
            if let Some(bad) = reports.iter().find(|r| !r.agree) {
                return Err(Failure::Discrepancy(format!("{}\n{}", text.join("\n"), bad.quantity)));
            }
            Ok(text.join("\n"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(3);
        }
        builder = builder.num_threads(w);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let repro = reproduction(&cli.command);
    match pool.install(|| run(cli.command)) {
        Ok(text) => {
            println!("{}", text.trim_end());
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) | Err(Failure::Library(Error::Parse(msg))) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Library(e @ Error::PropertyViolation { .. })) => {
            eprintln!("{e}");
            eprintln!("{}", render(&json!({ "error": e.to_string(), "reproduction": repro })));
            ExitCode::from(4)
        }
        Err(Failure::Discrepancy(msg)) => {
            eprintln!("oracle disagreement: {msg}");
            eprintln!("{}", render(&json!({ "error": msg, "reproduction": repro })));
            ExitCode::from(4)
        }
        Err(Failure::Library(e)) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
    }
}

fn reproduction(command: &Command) -> Value {
    let input = match command {
        Command::Lift(i) | Command::Determined(i) => Some(i),
        Command::Ordinary { input, .. }
        | Command::Richness { input, .. }
        | Command::NdVerify { input, .. }
        | Command::NdGrow { input, .. }
        | Command::Project { input, .. }
        | Command::OracleCheck { input, .. } => Some(input),
        _ => None,
    };
    let args: Vec<String> = std::env::args().skip(1).collect();
    match input.and_then(|i| load_path(&i.input, i.d).ok()) {
        Some(a) => json!({ "args": args, "configuration": a.to_file() }),
        None => json!({ "args": args }),
    }
}
