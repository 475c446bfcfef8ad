//! Command-line front end: weight systems, saturation checks on vector
//! files, classification, certificate forging and verification, and the
//! full main-theorem audit.
//!
//! Exit codes: 0 = success (and, where applicable, "saturated"/"all
//! normal"/"certificate verifies"); 1 = definite negative finding
//! (non-saturated, not all normal, or a certificate that fails
//! verification); 2 = input error; 3 = resource limit.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use norbit_core::classify::{
    check_all_subsets_with_progress, classify, render_structured, render_text,
    verify_main_theorem, ScanOptions, ScanOutcome,
};
use norbit_core::enss::{format_certificate, parse_certificate};
use norbit_core::lattice::{is_saturated, SaturationLimits, SemigroupLimits};
use norbit_core::qvec::{GeneratorSet, QVector};
use norbit_core::weights::{fundamental_weight, weight_system, QuasiWeight};

const SUBSET_CAP_ENV: &str = "NORBIT_SUBSET_CAP";

#[derive(Parser)]
#[command(
    name = "norbit",
    version,
    about = "Saturation of weight subsets and normality of torus-orbit closures in SL(n)-modules"
)]
struct Cli {
    /// Worker threads (0 = automatic)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for randomized property suites (reserved; deterministic
    /// commands ignore it)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap on subset scans; overrides the NORBIT_SUBSET_CAP environment
    /// variable and the built-in default of 10000000
    #[arg(long, global = true)]
    subset_cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct WeightSpec {
    /// Rank parameter: the group is SL(n)
    #[arg(short, long)]
    n: Option<usize>,
    /// Highest weight: `piK` or quoted quasi-coordinates like "2 0 0"
    #[arg(long)]
    highest: String,
}

impl WeightSpec {
    fn resolve(&self) -> Result<QuasiWeight, String> {
        if let Some(k) = self.highest.strip_prefix("pi") {
            let k: usize = k
                .parse()
                .map_err(|_| format!("bad fundamental index in `{}`", self.highest))?;
            let n = self
                .n
                .ok_or_else(|| "fundamental weights need -n".to_string())?;
            return fundamental_weight(k, n).map_err(|e| e.to_string());
        }
        let w = QuasiWeight::parse(&self.highest)?;
        if let Some(n) = self.n {
            if n != w.n() {
                return Err(format!(
                    "-n {} contradicts the {}-coordinate weight",
                    n,
                    w.n()
                ));
            }
        }
        Ok(w)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the weight system M(lambda)
    Weights {
        #[command(flatten)]
        weight: WeightSpec,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide saturation of the vector set in a file (one vector per line,
    /// integers or p/q rationals, # comments)
    Saturated {
        #[arg(long)]
        file: PathBuf,
    },
    /// Decide whether all torus-orbit closures in V(lambda) are normal
    Classify {
        #[command(flatten)]
        weight: WeightSpec,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the certificate here on a negative verdict
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustively scan every subset of M(lambda) for saturation
    Scan {
        #[command(flatten)]
        weight: WeightSpec,
        /// Test subsets containing opposite pairs too
        #[arg(long)]
        no_pair_pruning: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Construct a non-saturation certificate for lambda
    Forge {
        #[command(flatten)]
        weight: WeightSpec,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-verify a certificate file
    Verify {
        #[arg(long)]
        file: PathBuf,
        /// Optional context: check the generators against M(lambda)
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(long)]
        highest: Option<String>,
    },
    /// Audit the main-theorem classification up to a rank bound
    MainTheorem {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

fn scan_options(cap: Option<u64>, prune_pairs: bool) -> ScanOptions {
    let env_cap = std::env::var(SUBSET_CAP_ENV)
        .ok()
        .and_then(|v| v.parse::<u64>().ok());
    let mut opts = ScanOptions {
        prune_pairs,
        ..Default::default()
    };
    if let Some(c) = cap.or(env_cap) {
        opts.subset_cap = c;
    }
    opts
}

fn run() -> Result<u8, (u8, String)> {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| (EXIT_INPUT, format!("thread pool: {e}")))?;
    }
    let input_err = |msg: String| (EXIT_INPUT, msg);

    match cli.command {
        Command::Weights {
            weight,
            format,
            output,
        } => {
            let lambda = weight.resolve().map_err(input_err)?;
            let ws = weight_system(&lambda).map_err(|e| input_err(e.to_string()))?;
            let mut out = String::new();
            if format == Format::Structured {
                out.push_str(&format!(
                    "weights n={} highest={} count={}\n",
                    ws.n(),
                    lambda.to_string().replace(' ', ","),
                    ws.len()
                ));
            } else {
                out.push_str(&format!(
                    "# M({}) for SL({}): {} weights\n",
                    lambda,
                    ws.n(),
                    ws.len()
                ));
            }
            for w in ws.weights() {
                out.push_str(&format!("{w}\n"));
            }
            emit(&output, &out).map_err(input_err)?;
            Ok(0)
        }

        Command::Saturated { file } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| input_err(format!("cannot read {}: {e}", file.display())))?;
            let mut vectors = Vec::new();
            for (i, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let v = QVector::parse(line)
                    .map_err(|e| input_err(format!("{}:{}: {e}", file.display(), i + 1)))?;
                vectors.push(v);
            }
            if vectors.is_empty() {
                println!("saturated (empty set)");
                return Ok(0);
            }
            let dim = vectors[0].dim();
            let (set, _) = GeneratorSet::new(dim, vectors)
                .map_err(|e| input_err(e.to_string()))?;
            match is_saturated(&set, &SaturationLimits::default()) {
                Ok(v) if v.saturated => {
                    println!("saturated");
                    Ok(0)
                }
                Ok(v) => {
                    let w = v.witness.expect("failing verdict carries a witness");
                    println!("not saturated");
                    println!("witness: {}", w.vector);
                    println!("cone_combination: {}", w.cone);
                    println!("lattice_combination: {}", w.lattice);
                    Ok(EXIT_NEGATIVE)
                }
                Err(e) => Err((EXIT_RESOURCE, e.to_string())),
            }
        }

        Command::Classify {
            weight,
            format,
            output,
        } => {
            let lambda = weight.resolve().map_err(input_err)?;
            let verdict = classify(&lambda).map_err(|e| input_err(e.to_string()))?;
            if verdict.all_normal {
                let reason = verdict
                    .positive_reason
                    .expect("positive verdicts carry a reason");
                match format {
                    Format::Text => println!(
                        "all torus-orbit closures in V({lambda}) are normal (reason: {reason})"
                    ),
                    Format::Structured => println!(
                        "classify n={} highest={} verdict=all-normal reason={reason}",
                        lambda.n(),
                        lambda.to_string().replace(' ', ",")
                    ),
                }
                Ok(0)
            } else {
                let cert = verdict
                    .certificate
                    .expect("negative verdicts carry a certificate");
                match format {
                    Format::Text => {
                        println!(
                            "NOT all torus-orbit closures in V({lambda}) are normal; certificate:"
                        );
                        print!("{}", format_certificate(&cert));
                    }
                    Format::Structured => {
                        println!(
                            "classify n={} highest={} verdict=not-all-normal",
                            lambda.n(),
                            lambda.to_string().replace(' ', ",")
                        );
                        print!("{}", format_certificate(&cert));
                    }
                }
                if output.is_some() {
                    emit(&output, &format_certificate(&cert)).map_err(input_err)?;
                }
                Ok(EXIT_NEGATIVE)
            }
        }

        Command::Scan {
            weight,
            no_pair_pruning,
            format,
            output,
        } => {
            let lambda = weight.resolve().map_err(input_err)?;
            let ws = weight_system(&lambda).map_err(|e| input_err(e.to_string()))?;
            let opts = scan_options(cli.subset_cap, !no_pair_pruning);
            let progress = |done: u64| eprintln!("scan: {done} subsets tested");
            let summary = check_all_subsets_with_progress(&ws, &opts, Some(&progress));
            let mut out = String::new();
            if format == Format::Structured {
                out.push_str(&format!(
                    "scan n={} highest={} universe={} subsets_tested={} pruned={} verdict={}\n",
                    ws.n(),
                    lambda.to_string().replace(' ', ","),
                    summary.universe,
                    summary.subsets_tested,
                    summary.pruned,
                    match &summary.outcome {
                        ScanOutcome::Saturated => "saturated",
                        ScanOutcome::NotSaturated(_) => "not-saturated",
                        ScanOutcome::ResourceLimit(_) => "resource-limit",
                    }
                ));
            } else {
                out.push_str(&format!(
                    "M({}) has {} weights; tested {} subsets ({} pruned)\n",
                    lambda, summary.universe, summary.subsets_tested, summary.pruned
                ));
            }
            let code = match summary.outcome {
                ScanOutcome::Saturated => {
                    out.push_str("every subset is saturated\n");
                    0
                }
                ScanOutcome::NotSaturated(cert) => {
                    out.push_str("found a non-saturated subset:\n");
                    out.push_str(&format_certificate(&cert));
                    EXIT_NEGATIVE
                }
                ScanOutcome::ResourceLimit(msg) => {
                    out.push_str(&format!("resource limit: {msg}\n"));
                    EXIT_RESOURCE
                }
            };
            emit(&output, &out).map_err(input_err)?;
            Ok(code)
        }

        Command::Forge { weight, output } => {
            let lambda = weight.resolve().map_err(input_err)?;
            match classify(&lambda).map_err(|e| input_err(e.to_string()))? {
                v if v.all_normal => {
                    println!(
                        "saturated case: every subset of M({lambda}) is saturated ({}); nothing to forge",
                        v.positive_reason.expect("reason present")
                    );
                    Ok(0)
                }
                v => {
                    let cert = v.certificate.expect("certificate present");
                    emit(&output, &format_certificate(&cert)).map_err(input_err)?;
                    if output.is_some() {
                        eprintln!("certificate written");
                    }
                    Ok(EXIT_NEGATIVE)
                }
            }
        }

        Command::Verify { file, n, highest } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| input_err(format!("cannot read {}: {e}", file.display())))?;
            let cert = parse_certificate(&text)
                .map_err(|e| input_err(format!("{}: {e}", file.display())))?;
            let context = match highest {
                Some(h) => Some(
                    WeightSpec { n, highest: h }
                        .resolve()
                        .map_err(input_err)?,
                ),
                None => None,
            };
            let report = cert
                .verify(context.as_ref(), &SemigroupLimits::default())
                .map_err(|e| input_err(e.to_string()))?;
            if report.ok() {
                println!("certificate verifies");
                for note in &report.notes {
                    println!("note: {note}");
                }
                Ok(0)
            } else {
                println!("certificate INVALID:");
                for f in &report.failures {
                    println!("  {f}");
                }
                Ok(EXIT_NEGATIVE)
            }
        }

        Command::MainTheorem {
            max_n,
            format,
            output,
        } => {
            if max_n < 2 {
                return Err(input_err("--max-n must be at least 2".into()));
            }
            let opts = scan_options(cli.subset_cap, true);
            let report = verify_main_theorem(max_n, &opts);
            let rendered = match format {
                Format::Text => render_text(&report),
                Format::Structured => render_structured(&report),
            };
            emit(&output, &rendered).map_err(input_err)?;
            Ok(if report.disagreements == 0 {
                0
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
