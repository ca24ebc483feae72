//! Command-line front end: relation verification, orbit inspection,
//! E-polynomial computation, and Koornwinder tabulation, all in exact
//! rational arithmetic.

use clap::{Parser, Subcommand, ValueEnum};
use koornwinder::config::Config;
use koornwinder::epoly::{compute_e, koornwinder_oracle, EpolyError};
use koornwinder::operators::{torus_constraints, RepContext};
use koornwinder::scalars::{fmt_rat, rational_floor, Rat, TorusPoint};
use koornwinder::verify::run_all;
use koornwinder::weyl::{length, lower_set, min_alcove_rep, orbit_of, reduced_word};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_MATH: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "koorn",
    version,
    about = "Exact-arithmetic toolkit for the quasi-polynomial representation \
             of the type-C double affine Hecke algebra",
    after_help = "Exit codes: 0 success, 1 mathematical failure (relation, \
                  genericity, or oracle mismatch), 2 usage or config error."
)]
struct Cli {
    /// Path to the JSON parameter file
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Output format; defaults to text for verify/orbit and json for
    /// epoly/koornwinder
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded randomized relation suite
    Verify {
        /// Random quasi-monomials per relation
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Seed for the random streams (overrides the config seed)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Inspect the W-orbit of a point
    Orbit {
        /// Comma-separated rational coordinates, e.g. "3/4,0"
        #[arg(long, value_name = "COORDS", allow_hyphen_values = true)]
        point: String,
    },
    /// Compute the monic joint eigenfunction of a degree
    Epoly {
        /// Comma-separated rational coordinates of the degree
        #[arg(long, value_name = "COORDS", allow_hyphen_values = true)]
        point: String,
        /// Write the JSON to a file instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Tabulate a nonsymmetric Koornwinder polynomial (integer orbit, t = 1)
    Koornwinder {
        /// Comma-separated integer degree vector, e.g. "-2" or "1,0"
        #[arg(long, value_name = "INTS", allow_hyphen_values = true)]
        degree: String,
        /// Cross-check against the independent rank-1 reference computation
        #[arg(long)]
        oracle: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli))
}

fn run(cli: Cli) -> u8 {
    let config_path = match &cli.config {
        Some(p) => p.clone(),
        None => {
            eprintln!("error: --config FILE is required");
            return EXIT_USAGE;
        }
    };
    let config = match Config::from_path(&config_path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    match &cli.command {
        Command::Verify { trials, seed } => cmd_verify(&cli, &config, *trials, *seed),
        Command::Orbit { point } => cmd_orbit(&cli, &config, point),
        Command::Epoly { point, out } => cmd_epoly(&cli, &config, point, out.as_deref()),
        Command::Koornwinder { degree, oracle } => cmd_koornwinder(&cli, &config, degree, *oracle),
    }
}

fn format_or(cli: &Cli, default: Format) -> Format {
    cli.format.unwrap_or(default)
}

fn parse_vector(text: &str, rank: usize) -> Result<Vec<Rat>, String> {
    koornwinder::scalars::parse_vector(text, rank).map_err(|e| e.to_string())
}

fn cmd_verify(cli: &Cli, config: &Config, trials: usize, seed: Option<u64>) -> u8 {
    let params = match config.params() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    let seed = seed.or(config.seed).unwrap_or(0);
    let reports = run_all(&params, seed, trials);
    let all_passed = reports.iter().all(|r| r.passed());
    match format_or(cli, Format::Text) {
        Format::Text => {
            for report in &reports {
                println!("{}", report.line());
            }
            println!(
                "overall: {} (rank {}, seed {}, {} trials)",
                if all_passed { "PASS" } else { "FAIL" },
                params.rank,
                seed,
                trials
            );
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "name": r.name,
                        "trials": r.trials,
                        "passed": r.passed(),
                        "failures": r.failures,
                        "note": r.note,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "rank": params.rank,
                "seed": seed,
                "passed": all_passed,
                "checks": items,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("valid json")
            );
        }
    }
    if all_passed {
        EXIT_OK
    } else {
        EXIT_MATH
    }
}

fn cmd_orbit(cli: &Cli, config: &Config, point: &str) -> u8 {
    let y = match parse_vector(point, config.rank) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    let orbit = orbit_of(&y);
    let (gy, _) = min_alcove_rep(&y);
    let word = reduced_word(&gy);
    let len = length(&gy);
    let lower = lower_set(&y);
    let constraints = torus_constraints(&orbit);
    match format_or(cli, Format::Text) {
        Format::Text => {
            println!(
                "basepoint: ({})",
                orbit
                    .basepoint
                    .iter()
                    .map(fmt_rat)
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            println!("facet: {:?}", orbit.facet);
            println!("interior facet: {:?}", orbit.interior_facet());
            println!("minimal representative word: {:?}", word);
            println!("length: {}", len);
            println!("lower set size: {}", lower.len());
            if constraints.is_empty() {
                println!("torus constraints: none (t unconstrained)");
            } else {
                println!("torus constraints: {}", constraints.join("; "));
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "basepoint": orbit.basepoint.iter().map(fmt_rat).collect::<Vec<_>>(),
                "facet": orbit.facet,
                "interior_facet": orbit.interior_facet(),
                "word": word,
                "length": len,
                "lower_set_size": lower.len(),
                "torus_constraints": constraints,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("valid json")
            );
        }
    }
    EXIT_OK
}

fn cmd_epoly(cli: &Cli, config: &Config, point: &str, out: Option<&std::path::Path>) -> u8 {
    let y = match parse_vector(point, config.rank) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    let ctx = match config.context_for(&y) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    let e = match compute_e(&ctx, &y) {
        Ok(e) => e,
        Err(err) => {
            eprintln!("error: {}", err);
            return EXIT_MATH;
        }
    };
    let rendered = match format_or(cli, Format::Json) {
        Format::Json => e.to_json(),
        Format::Text => {
            let mut lines = vec![
                format!(
                    "degree: ({})",
                    e.degree.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
                ),
                format!(
                    "eigenvalues: {}",
                    e.eigenvalues
                        .iter()
                        .map(fmt_rat)
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                format!("polynomial: {}", e.poly),
            ];
            lines.push(String::new());
            lines.join("\n")
        }
    };
    match out {
        Some(path) => {
            if let Err(err) = std::fs::write(path, rendered + "\n") {
                eprintln!("error: cannot write {}: {}", path.display(), err);
                return EXIT_USAGE;
            }
        }
        None => println!("{}", rendered),
    }
    EXIT_OK
}

fn cmd_koornwinder(cli: &Cli, config: &Config, degree: &str, oracle: bool) -> u8 {
    let parsed = match parse_vector(degree, config.rank) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    if !parsed.iter().all(koornwinder::scalars::is_integer) {
        eprintln!("error: the degree must be an integer vector");
        return EXIT_USAGE;
    }
    let params = match config.params() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    if oracle && params.rank != 1 {
        eprintln!("error: --oracle is a rank-1 cross-check");
        return EXIT_USAGE;
    }
    let zero = vec![Rat::from_integer(num::BigInt::from(0)); params.rank];
    let ctx = RepContext::new(
        params.clone(),
        orbit_of(&zero),
        TorusPoint::one(params.rank),
    )
    .expect("t = 1 satisfies the integer-orbit constraints");
    let e = match compute_e(&ctx, &parsed) {
        Ok(e) => e,
        Err(err) => {
            eprintln!("error: {}", err);
            return EXIT_MATH;
        }
    };
    let oracle_match = if oracle {
        let mu =
            i64::try_from(rational_floor(&parsed[0])).expect("degree fits in machine integers");
        match koornwinder_oracle(&params, mu, mu.abs()) {
            Ok(reference) => Some(reference == e.poly),
            Err(EpolyError::NonGenericParameters(msg)) => {
                eprintln!("error: oracle genericity failure: {}", msg);
                return EXIT_MATH;
            }
            Err(err) => {
                eprintln!("error: {}", err);
                return EXIT_MATH;
            }
        }
    } else {
        None
    };
    match format_or(cli, Format::Json) {
        Format::Json => {
            let mut doc = serde_json::to_value(e.to_dto()).expect("valid json");
            if let Some(m) = oracle_match {
                doc.as_object_mut()
                    .expect("dto serializes to an object")
                    .insert("oracle_match".to_string(), serde_json::Value::Bool(m));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("valid json")
            );
        }
        Format::Text => {
            println!("polynomial: {}", e.poly);
            println!(
                "eigenvalues: {}",
                e.eigenvalues
                    .iter()
                    .map(fmt_rat)
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            if let Some(m) = oracle_match {
                println!("match: {}", m);
            }
        }
    }
    match oracle_match {
        Some(false) => EXIT_MATH,
        _ => EXIT_OK,
    }
}
