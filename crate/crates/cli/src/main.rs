use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use brake_index::ech::{negative_partition, partitions, positive_partition, rech_left, rech_right};
use brake_index::exact::parse_rational;
use brake_index::fredholm::{ind_nonsymmetric, ind_real, trivial_cover_index, CurveConfig, TrivialCylinderCover};
use brake_index::orbits::{canonical_form, classify_half_period, monodromy_from_half_period, Sp2Matrix};
use brake_index::replay::{self, Suite, SuiteBounds};
use brake_index::{Error, HalfInt, OrbitClass, OrbitSpec, Seed};

mod table;

#[derive(Parser)]
#[command(name = "brake-index", version, about = "Exact index calculus for brake orbits")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a monodromy, or a half-period matrix with --half.
    Classify {
        /// Row-major entries a,b,c,d.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Treat the matrix as a half-period matrix.
        #[arg(long)]
        half: bool,
    },
    /// Tabulate mu1, mu2 and mu_CZ over a range of iterates.
    Iterate {
        #[command(flatten)]
        orbit: OrbitArgs,
        /// A single iterate `k` or an inclusive range `a..b`.
        #[arg(long, default_value = "1")]
        k: String,
    },
    /// Real Fredholm index of a curve or trivial-cylinder cover read from JSON.
    Index {
        #[arg(long)]
        config: PathBuf,
    },
    /// The partition at which the Real ECH inequality is sharp.
    Partition {
        #[command(flatten)]
        orbit: OrbitArgs,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = EndSign::Neg)]
        end: EndSign,
        /// Also list rech_left over every partition of n.
        #[arg(long)]
        audit: bool,
    },
    /// Replay a theorem exhaustively within bounds.
    Verify {
        suite: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long)]
    class: String,
    /// Rotation number in full turns (elliptic).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// mu1 of the simple orbit (hyperbolic).
    #[arg(long, allow_hyphen_values = true)]
    mu1: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EndSign {
    Neg,
    Pos,
}

#[derive(Args, Serialize)]
struct BoundArgs {
    #[arg(long)]
    max_mult: Option<u32>,
    #[arg(long)]
    max_genus: Option<u32>,
    #[arg(long)]
    theta_den: Option<u32>,
    #[arg(long)]
    max_n: Option<u32>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    max_base_ends: Option<usize>,
    #[arg(long)]
    max_k: Option<u32>,
    #[arg(long)]
    max_d: Option<u32>,
    #[arg(long)]
    max_levels: Option<usize>,
    #[arg(long)]
    max_punctures: Option<usize>,
}

impl BoundArgs {
    fn apply(&self, mut b: SuiteBounds) -> SuiteBounds {
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { b.$f = v; })* };
        }
        set!(max_mult, max_genus, theta_den, max_n, max_degree, max_base_ends, max_k, max_d, max_levels, max_punctures);
        b
    }
}

/// The machine-readable outcome of one invocation.
#[derive(Serialize)]
struct RunReport {
    command: Vec<String>,
    inputs: Value,
    results: Value,
    counterexamples: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorReport>,
    timing: Timing,
}

#[derive(Serialize)]
struct ErrorReport {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: u128,
}

/// What a command produced before timing and echo are attached.
struct Outcome {
    inputs: Value,
    results: Value,
    counterexamples: Vec<Value>,
}

fn orbit_from(args: &OrbitArgs) -> Result<OrbitSpec, Error> {
    let class: OrbitClass = args.class.parse()?;
    let seed = match (&args.theta, &args.mu1) {
        (Some(t), None) => Seed::Theta(parse_rational(t)?),
        (None, Some(m)) => Seed::Mu1(m.parse::<HalfInt>()?),
        _ => return Err(Error::Parse("give exactly one of --theta and --mu1".into())),
    };
    OrbitSpec::new(class, seed)
}

fn parse_k_range(s: &str) -> Result<(u32, u32), Error> {
    let bad = || Error::Parse(format!("bad iterate range {s:?}"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let k = num(s)?;
            (k, k)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn classify(matrix: &str, half: bool) -> Result<Outcome, Error> {
    let input = Sp2Matrix::parse(matrix)?;
    let inputs = json!({ "matrix": input, "half": half });
    let (monodromy, half_class) = if half {
        (monodromy_from_half_period(&input), Some(classify_half_period(&input)?))
    } else {
        (input, None)
    };
    let (class, _) = brake_index::orbits::classify_monodromy(&monodromy)?;
    let (form, point) = canonical_form(&monodromy)?;
    let mut results = json!({
        "class": class,
        "monodromy": monodromy,
        "canonical_form": form,
        "quotient_point": point,
    });
    let mut counterexamples = Vec::new();
    if let Some(hc) = half_class {
        results["half_period_class"] = json!(hc);
        if hc != class {
            counterexamples.push(json!({ "case": matrix, "detail": format!("half-period {hc} vs monodromy {class}") }));
        }
    }
    Ok(Outcome { inputs, results, counterexamples })
}

fn iterate(orbit: &OrbitArgs, k: &str) -> Result<Outcome, Error> {
    let spec = orbit_from(orbit)?;
    let (lo, hi) = parse_k_range(k)?;
    let rows: Vec<Value> = (lo..=hi)
        .map(|k| match (spec.mu1(k), spec.mu2(k), spec.mu_cz(k)) {
            (Ok(m1), Ok(m2), Ok(cz)) => json!({ "k": k, "mu1": m1, "mu2": m2, "mu_cz": cz, "degenerate": false }),
            _ => json!({ "k": k, "degenerate": true }),
        })
        .collect();
    Ok(Outcome {
        inputs: json!({ "orbit": spec, "k": [lo, hi] }),
        results: json!({ "rows": rows }),
        counterexamples: Vec::new(),
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IndexInput {
    Cover(TrivialCylinderCover),
    Curve(CurveConfig),
}

fn index(path: &PathBuf) -> Result<Outcome, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let input: IndexInput = serde_json::from_str(&text)
        .map_err(|_| Error::Parse(format!("{}: neither a curve nor a trivial-cylinder cover", path.display())))?;
    match input {
        IndexInput::Cover(cover) => {
            let closed = trivial_cover_index(&cover)?;
            let summed = ind_real(&cover.to_config())?;
            let mut counterexamples = Vec::new();
            if closed != summed {
                counterexamples.push(json!({ "case": "closed form", "detail": format!("{closed} vs {summed}") }));
            }
            Ok(Outcome {
                inputs: json!({ "cover": cover }),
                results: json!({ "ind_real": summed, "closed_form": closed }),
                counterexamples,
            })
        }
        IndexInput::Curve(cfg) => {
            let value = ind_real(&cfg)?;
            let mut results = json!({ "ind_real": value });
            if !cfg.has_symmetric_ends() {
                let d = cfg.doubled()?;
                results["doubled_index"] = json!(ind_nonsymmetric(d.genus, d.c1, &d.pos, &d.neg)?);
            }
            Ok(Outcome {
                inputs: json!({ "curve": cfg }),
                results,
                counterexamples: Vec::new(),
            })
        }
    }
}

fn partition(orbit: &OrbitArgs, n: u32, end: EndSign, audit: bool) -> Result<Outcome, Error> {
    let spec = orbit_from(orbit)?;
    if n == 0 {
        return Err(Error::InvalidMultiplicity);
    }
    let (p, table_spec) = match end {
        EndSign::Neg => (negative_partition(&spec, n)?, spec),
        EndSign::Pos => (positive_partition(&spec, n)?, spec.reverse()),
    };
    let mut results = json!({ "partition": p });
    if audit {
        let right = rech_right(&table_spec, n)?;
        let rows = partitions(n)
            .into_iter()
            .map(|q| {
                let left = rech_left(&table_spec, &q)?;
                Ok(json!({ "partition": q, "rech_left": left, "equality": left == right }))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        results["rech_right"] = json!(right);
        results["audit"] = json!(rows);
    }
    let end_name = if end == EndSign::Neg { "neg" } else { "pos" };
    Ok(Outcome {
        inputs: json!({ "orbit": spec, "n": n, "end": end_name }),
        results,
        counterexamples: Vec::new(),
    })
}

fn verify(suite: &str, args: &BoundArgs) -> Result<Outcome, Error> {
    let suite: Suite = suite.parse()?;
    let bounds = args.apply(SuiteBounds::defaults(suite));
    let report = replay::run(suite, bounds);
    let counterexamples = report
        .counterexamples
        .iter()
        .map(|c| json!(c))
        .collect();
    Ok(Outcome {
        inputs: json!({ "suite": suite, "bounds": bounds }),
        results: json!({
            "checked": report.checked,
            "skipped": report.skipped,
            "violations": report.counterexamples.len(),
            "witnesses": report.witnesses,
        }),
        counterexamples,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args()
        .skip(1)
        .scan(false, |skip_next, a| {
            let skip = *skip_next || a == "--output" || a.starts_with("--output=");
            *skip_next = a == "--output";
            Some((!skip).then_some(a))
        })
        .flatten()
        .collect();
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Classify { matrix, half } => classify(matrix, *half),
        Command::Iterate { orbit, k } => iterate(orbit, k),
        Command::Index { config } => index(config),
        Command::Partition { orbit, n, end, audit } => partition(orbit, *n, *end, *audit),
        Command::Verify { suite, bounds } => verify(suite, bounds),
    };
    let elapsed_ms = start.elapsed().as_millis();
    let (report, code) = match outcome {
        Ok(o) => {
            let code = if o.counterexamples.is_empty() { 0 } else { 1 };
            let report = RunReport {
                command: echo,
                inputs: o.inputs,
                results: o.results,
                counterexamples: o.counterexamples,
                error: None,
                timing: Timing { elapsed_ms },
            };
            (report, code)
        }
        Err(e) => {
            let report = RunReport {
                command: echo,
                inputs: Value::Null,
                results: Value::Null,
                counterexamples: Vec::new(),
                error: Some(ErrorReport {
                    kind: e.kind(),
                    message: e.to_string(),
                }),
                timing: Timing { elapsed_ms },
            };
            (report, 2)
        }
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Table => table::render(&serde_json::to_value(&report).expect("report serializes")),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
