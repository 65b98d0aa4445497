//! The `fock` binary: exact correlators and verification suites with
//! deterministic output.
//!
//! Two subcommands:
//! - `correlator` prints one correlation function in canonical form, or
//!   compares every applicable route under `--cross-check`;
//! - `verify` runs one named suite from the registry and prints its JSON
//!   report.
//!
//! Exit codes: 0 when everything asked for holds, 1 when a mathematical
//! comparison fails, 2 when the request itself is invalid. Identical
//! invocations produce byte-identical output; randomized suites draw from
//! the fixed `--seed`. FOCK_THREADS caps the worker pool.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use fock_core::correlators::{
    evaluate, route_agreement_report, CorrelatorError, CorrelatorRequest, MSpec, Route, Space,
};
use fock_core::verify::{find_suite, suite_names, with_thread_cap};

#[derive(Parser)]
#[command(
    name = "fock",
    version,
    about = "Correlation functions of charged free boson and fermion systems, in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one correlation function in canonical form.
    Correlator(CorrelatorArgs),
    /// Run one named verification suite and report the outcome.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CorrelatorArgs {
    /// Fock space: bc | boson | neutral.
    #[arg(long)]
    space: String,
    /// Number of row-operator pairs.
    #[arg(long = "N")]
    n: u32,
    /// Mode cutoff; defaults to N.
    #[arg(long = "M")]
    m: Option<u32>,
    /// Degree cap per variable family; required by the boson space and the
    /// product-formula route.
    #[arg(long = "D")]
    d: Option<u32>,
    /// Route: direct | rectangle-sum | determinant | series-inverse |
    /// product-formula. The product formula computes the stabilized limit.
    #[arg(long)]
    route: Option<String>,
    /// Evaluate every applicable route and compare the results.
    #[arg(long)]
    cross_check: bool,
    /// Output form: text | json.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: routes | bch | macmahon | diagram | rll | inverse |
    /// tau | planepartition | stabilization.
    suite: String,
    /// Row-operator pairs, particles, or identity index, per suite.
    #[arg(long = "N")]
    n: Option<u32>,
    /// Mode cutoff bound.
    #[arg(long = "M")]
    m: Option<u32>,
    /// Degree cap per variable family.
    #[arg(long = "D")]
    d: Option<u32>,
    /// Series depth for the plane-partition suite.
    #[arg(long)]
    depth: Option<u32>,
    /// Identity order bound (bch) or t-order (macmahon).
    #[arg(long)]
    nmax: Option<u32>,
    /// Seed for the randomized instances.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output form: json | text.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_format(s: &str) -> Option<Format> {
    match s {
        "text" => Some(Format::Text),
        "json" => Some(Format::Json),
        _ => None,
    }
}

fn cmd_correlator(args: &CorrelatorArgs) -> ExitCode {
    let space = match args.space.as_str() {
        "bc" => Space::Bc,
        "boson" => Space::Boson,
        "neutral" => Space::Neutral,
        other => return usage(&format!("unknown space '{other}' (expected bc | boson | neutral)")),
    };
    let Some(format) = parse_format(&args.format) else {
        return usage(&format!("unknown format '{}' (expected text | json)", args.format));
    };
    let route = match args.route.as_deref() {
        None | Some("direct") => Route::Direct,
        Some("rectangle-sum") => Route::RectangleSum,
        Some("determinant") => Route::Determinant,
        Some("series-inverse") => Route::SeriesInverse,
        Some("product-formula") => Route::ProductFormula,
        Some(other) => {
            return usage(&format!(
                "unknown route '{other}' (expected direct | rectangle-sum | determinant | \
                 series-inverse | product-formula)"
            ))
        }
    };
    if space == Space::Boson && args.d.is_none() {
        return usage("the boson correlator needs a degree cap --D");
    }
    if route == Route::ProductFormula && args.d.is_none() {
        return usage("the product-formula route needs a degree cap --D");
    }
    let m = if route == Route::ProductFormula {
        MSpec::Limit
    } else {
        MSpec::Finite(args.m.unwrap_or(args.n))
    };

    if args.cross_check {
        let report = route_agreement_report(space, args.n, m, args.d);
        match format {
            Format::Json => {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            }
            Format::Text => {
                if let Some(first) = report.routes.first() {
                    println!("{}", first.value);
                }
                if !report.agreement {
                    eprintln!(
                        "routes disagree at {}",
                        report.first_mismatch.as_deref().unwrap_or("(route error)")
                    );
                }
            }
        }
        return if report.agreement { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }

    let req = CorrelatorRequest { space, n: args.n, m, d: args.d, route };
    match evaluate(&req) {
        Ok(value) => {
            match format {
                Format::Text => println!("{}", value.canonical_text()),
                Format::Json => {
                    let body = json!({
                        "space": space.to_string(),
                        "n": args.n,
                        "m": m.to_string(),
                        "d": args.d,
                        "route": route.to_string(),
                        "value": value.canonical_text(),
                    });
                    println!("{}", serde_json::to_string_pretty(&body).expect("body serializes"));
                }
            }
            ExitCode::SUCCESS
        }
        Err(CorrelatorError::StabilityFailure(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => usage(&e.to_string()),
    }
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let Some(format) = parse_format(&args.format) else {
        return usage(&format!("unknown format '{}' (expected json | text)", args.format));
    };
    let Some(suite) = find_suite(&args.suite) else {
        return usage(&format!(
            "unknown suite '{}' (expected one of: {})",
            args.suite,
            suite_names().join(" | ")
        ));
    };
    let mut params = suite.defaults();
    if let Some(n) = args.n {
        params.n = n;
    }
    if let Some(m) = args.m {
        params.m = m;
    }
    if let Some(d) = args.d {
        params.d = d;
    }
    if let Some(depth) = args.depth {
        params.depth = depth;
    }
    if let Some(nmax) = args.nmax {
        params.nmax = nmax;
    }
    params.seed = args.seed;

    let report = with_thread_cap(|| suite.run(&params));
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        Format::Text => {
            println!("suite {}: {}", report.suite, if report.pass { "pass" } else { "FAIL" });
            if !report.pass {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.details).expect("details serialize")
                );
            }
        }
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Correlator(args) => cmd_correlator(args),
        Command::Verify(args) => cmd_verify(args),
    }
}
