use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tournament_core::constructions::{
    circular, example_8, example_9, paley, paley_conference, random_tournament, sample_h,
    transitive,
};
use tournament_core::decomp::{is_in_h, switching_decomposable, switching_witness};
use tournament_core::search::{
    census, embed_via_double, u_minus, u_plus, verify_suite, with_workers, write_census,
    CensusOptions, UPlusOptions,
};
use tournament_core::spectra::{analyze, char_poly, determinant, inverse_tournament, sigma_vector};
use tournament_core::tournament::{parse_ttf, write_ttf};
use tournament_core::{Error, Tournament};

/// Exact analysis of tournaments stored as TTF files. `-` stands for
/// standard input or output.
#[derive(Parser)]
#[command(name = "unitour", version)]
struct Cli {
    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Transitive,
    Circular,
    Paley,
    PaleyConference,
    Random,
    SampleH,
    Example8,
    Example9,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a tournament.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Full spectral report.
    Analyze { file: String },
    /// Determinant of the skew-adjacency matrix.
    Det { file: String },
    /// Characteristic polynomial of the skew-adjacency matrix.
    Charpoly { file: String },
    /// Inverse tournament of an invertible tournament.
    Invert {
        file: String,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// The doubling [[S, S+I], [S-I, S]].
    Hat {
        file: String,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Switching decomposition certificate.
    Decompose { file: String },
    /// Derivation from 2-tournaments by joins and switches.
    InH { file: String },
    /// Signs D with S2 = D S1 D.
    SwitchWitness { first: String, second: String },
    /// Fewest vertices to remove to reach a unimodular tournament.
    Uminus { file: String },
    /// Fewest vertices to add to reach a unimodular tournament.
    Uplus {
        file: String,
        #[arg(long, default_value_t = 34)]
        budget_bits: u32,
        /// Start the sweep at the parity minimum instead of the spectral bound.
        #[arg(long)]
        no_nu_seed: bool,
    },
    /// Unimodular tournament containing the input, via the doubling.
    Embed {
        file: String,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Counts over all (or sampled) tournaments of one order.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        exhaustive: bool,
        /// Permit exhaustive enumeration above order 6.
        #[arg(long)]
        allow_large: bool,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Roll counts up by isomorphism class.
        #[arg(long)]
        classes: bool,
        /// Skip the class-H membership test.
        #[arg(long)]
        no_h: bool,
        /// Directory for the JSON-lines file; prints to stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized verification of the identities and bounds.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

enum Failure {
    /// Negative answer: `"absent"` on stdout, reason on stderr, exit 1.
    Absent(String),
    /// Negative outcome already reported on stdout, exit 1.
    Failed(String),
    /// Bad input or usage, exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn load(path: &str) -> Result<Tournament, Failure> {
    let text = read_source(path)?;
    parse_ttf(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn write_sink(path: &str, text: &str) -> Outcome {
    if path == "-" {
        io::stdout().write_all(text.as_bytes())?;
    } else {
        fs::write(path, text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    }
    Ok(())
}

fn emit(v: &Value) -> Outcome {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value");
    s.push('\n');
    write_sink("-", &s)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn require(opt: Option<usize>, flag: &str, kind: &str) -> Result<usize, Failure> {
    opt.ok_or_else(|| Failure::Usage(format!("--kind {kind} needs --{flag}")))
}

fn generate(kind: Kind, n: Option<usize>, q: Option<usize>, seed: u64) -> Result<Tournament, Failure> {
    Ok(match kind {
        Kind::Transitive => transitive(require(n, "n", "transitive")?)?,
        Kind::Circular => circular(require(n, "n", "circular")?)?,
        Kind::Paley => paley(require(q, "q", "paley")?)?,
        Kind::PaleyConference => paley_conference(require(q, "q", "paley-conference")?)?,
        Kind::Random => random_tournament(require(n, "n", "random")?, seed)?,
        Kind::SampleH => sample_h(require(n, "n", "sample-h")?, seed)?,
        Kind::Example8 => example_8(),
        Kind::Example9 => example_9(),
    })
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Gen { kind, n, q, seed, output } => {
            write_sink(&output, &write_ttf(&generate(kind, n, q, seed)?))
        }
        Command::Analyze { file } => emit(&to_json(&analyze(&load(&file)?)?)),
        Command::Det { file } => emit(&json!(determinant(&load(&file)?).to_string())),
        Command::Charpoly { file } => {
            let t = load(&file)?;
            let sigma = sigma_vector(&t);
            let sigma: Vec<String> = (1..=t.order()).map(|k| sigma.get(k).to_string()).collect();
            emit(&json!({
                "n": t.order(),
                "polynomial": char_poly(&t).to_string(),
                "sigma": sigma,
            }))
        }
        Command::Invert { file, output } => {
            let t = load(&file)?;
            match inverse_tournament(&t) {
                Ok(inv) => write_sink(&output, &write_ttf(&inv)),
                Err(e @ (Error::NotUnimodular(_) | Error::InvalidParameter(_))) => {
                    Err(Failure::Absent(e.to_string()))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Hat { file, output } => write_sink(&output, &write_ttf(&load(&file)?.hat())),
        Command::Decompose { file } => match switching_decomposable(&load(&file)?)? {
            Some(c) => emit(&to_json(&c)),
            None => Err(Failure::Absent("no switching decomposition".into())),
        },
        Command::InH { file } => match is_in_h(&load(&file)?)? {
            Some(d) => emit(&to_json(&d)),
            None => Err(Failure::Absent("no derivation".into())),
        },
        Command::SwitchWitness { first, second } => {
            match switching_witness(&load(&first)?, &load(&second)?)? {
                Some(w) => emit(&json!({
                    "signs": w.signs,
                    "switch_set": to_json(&w.switch_set()),
                })),
                None => Err(Failure::Absent("not switching equivalent".into())),
            }
        }
        Command::Uminus { file } => {
            let (value, cert) = u_minus(&load(&file)?);
            emit(&json!({ "value": value, "certificate": to_json(&cert) }))
        }
        Command::Uplus { file, budget_bits, no_nu_seed } => {
            let opts = UPlusOptions {
                budget_bits,
                seed_with_nu: !no_nu_seed,
            };
            let r = u_plus(&load(&file)?, opts)?;
            let mut v = to_json(&r);
            v["value"] = json!(r.value());
            emit(&v)
        }
        Command::Embed { file, output } => {
            let t = load(&file)?;
            let e = embed_via_double(&t)?;
            write_sink(&output, &write_ttf(&e.tournament))?;
            if output != "-" {
                emit(&json!({
                    "n": t.order(),
                    "added": e.tournament.order() - t.order(),
                    "copies_kept": to_json(&e.copies_kept),
                    "output": output,
                }))?;
            }
            Ok(())
        }
        Command::Census { n, exhaustive, allow_large, samples, seed, classes, no_h, out } => {
            let opts = CensusOptions {
                exhaustive,
                samples,
                seed,
                allow_large,
                check_h: !no_h,
                classes,
            };
            let row = census(n, opts)?;
            match out {
                Some(dir) => {
                    let path = write_census(&dir, &row, &opts)?;
                    emit(&json!({ "path": path.display().to_string() }))
                }
                None => {
                    let mut summary = row.clone();
                    let classes = summary.classes.take();
                    let mut text = serde_json::to_string(&summary).expect("serializable");
                    text.push('\n');
                    for c in classes.iter().flatten() {
                        text.push_str(&serde_json::to_string(c).expect("serializable"));
                        text.push('\n');
                    }
                    write_sink("-", &text)
                }
            }
        }
        Command::Verify { seed, trials } => {
            let report = verify_suite(seed, trials)?;
            emit(&to_json(&report))?;
            if report.passed {
                Ok(())
            } else {
                let failed: Vec<&str> =
                    report.claims.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
                Err(Failure::Failed(format!("failed claims: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = with_workers(cli.workers, || run(cli.command)).unwrap_or_else(|e| Err(e.into()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Absent(reason)) => {
            println!("\"absent\"");
            eprintln!("{reason}");
            ExitCode::from(1)
        }
        Err(Failure::Failed(reason)) => {
            eprintln!("{reason}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
