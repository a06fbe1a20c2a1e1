//! CLI over the loopcrystal library.
//!
//! Exit codes: 0 on success, 1 on identity or pole failures, 2 on usage
//! errors. All rationals in JSON are exact strings; floating values print
//! with 17 significant digits.

use clap::{Parser, Subcommand};
use loopcrystal::asymptotic::{curl_whirl_window, limit_ratios, truncated_product, WhirlStream};
use loopcrystal::crystal::{product_e, ProductPoint};
use loopcrystal::loopsym::{energy, tableaux_schur, SkewShape};
use loopcrystal::rational::Rat;
use loopcrystal::rmatrix::apply_word;
use loopcrystal::suites::{run_suite, SuiteConfig, SuiteName, SuiteReport};
use loopcrystal::ucrystal::{u_e, UCrystalContext};
use loopcrystal::whirl::{from_factors, PeriodicBandedMatrix};
use serde::Deserialize;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "loopcrystal", version, about = "Affine geometric crystals, whirl matrices, and loop symmetric functions")]
struct Cli {
    /// Seed for randomized verification
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Emit machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    /// Suppress per-case output; print only failures and summaries
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report pass/fail per case
    Verify {
        /// One of: axioms, rmatrix, whirl-entry, quotient, thm-e,
        /// jacobi-trudi, schur-action, energy, asymptotic, all
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        m_min: usize,
        #[arg(long, default_value_t = 5)]
        m_max: usize,
        /// Convergence tolerance (asymptotic suite only)
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Evaluate a loop Schur function or the energy at a point
    ///
    /// Request: {"kind":"schur","shape":{"lambda":[...],"mu":[...]},"r":0,
    /// "point":{...}} or {"kind":"energy","point":{...}}
    Eval {
        /// JSON request (reads stdin when omitted)
        request: Option<String>,
    },
    /// Apply a crystal operator e_k^c or an R-matrix word to a point
    ///
    /// Request: {"target":"point"|"matrix","k":1,"c":"2","point":{...}} or
    /// {"target":"word","word":[1,2,1],"point":{...}}
    Apply {
        /// JSON request (reads stdin when omitted)
        request: Option<String>,
    },
    /// Render the whirl-product matrix of a point
    Matrix {
        /// ProductPoint JSON (reads stdin when omitted)
        request: Option<String>,
    },
    /// Estimate limit ratios on a window truncation of an infinite product
    Limits {
        /// Amplitudes a^(1),...,a^(n) of the whirl stream
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<f64>,
        /// Geometric decay rate of the stream
        #[arg(long, default_value_t = 0.5)]
        q: f64,
        /// Optional geometric tail z^(1),...,z^(n) multiplied in front;
        /// without it the ratio sequences of a pure whirl product decay to 0
        #[arg(long, value_delimiter = ',')]
        tail: Option<Vec<f64>>,
        #[arg(long, default_value_t = 40)]
        width: usize,
        #[arg(long, default_value_t = 80)]
        factors: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum EvalRequest {
    Schur {
        shape: SkewShape,
        r: i64,
        point: ProductPoint,
    },
    Energy {
        point: ProductPoint,
    },
}

#[derive(Deserialize)]
#[serde(tag = "target", rename_all = "lowercase", deny_unknown_fields)]
enum ApplyRequest {
    Point {
        k: i64,
        c: Rat,
        point: ProductPoint,
    },
    Matrix {
        k: i64,
        c: Rat,
        #[serde(default)]
        point: Option<ProductPoint>,
        #[serde(default)]
        matrix: Option<PeriodicBandedMatrix>,
        #[serde(default)]
        m: Option<usize>,
    },
    Word {
        word: Vec<usize>,
        point: ProductPoint,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            let (label, code) = classify(&err);
            eprintln!("{}", error_json(label, &err));
            code
        }
    }
}

/// Exit 1 for identity/pole failures at valid inputs, 2 for bad requests.
fn classify(err: &loopcrystal::Error) -> (&'static str, ExitCode) {
    use loopcrystal::Error::*;
    match err {
        Pole(_) | DivisionByZero(_) | WordPole { .. } | NotConverged(_) | Overflow(_) => {
            ("pole", ExitCode::from(1))
        }
        MissingVariable(_) | DimensionMismatch(_) | InvalidInput(_) => {
            ("invalid", ExitCode::from(2))
        }
    }
}

fn error_json(label: &str, err: &loopcrystal::Error) -> String {
    format!(
        "{{\"error\":{},\"message\":{}}}",
        serde_json::to_string(label).unwrap(),
        serde_json::to_string(&err.to_string()).unwrap()
    )
}

fn dispatch(cli: &Cli) -> loopcrystal::Result<ExitCode> {
    match &cli.command {
        Command::Verify {
            suite,
            trials,
            n_min,
            n_max,
            m_min,
            m_max,
            tol,
        } => {
            let name: SuiteName = suite.parse()?;
            let mut cfg = SuiteConfig::new(name);
            cfg.seed = cli.seed;
            cfg.trials = *trials;
            cfg.n_range = (*n_min, *n_max);
            cfg.m_range = (*m_min, *m_max);
            cfg.tol = *tol;
            let report = run_suite(&cfg)?;
            print_report(&report, cli);
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Eval { request } => {
            let req: EvalRequest = parse_request(request)?;
            let value = match req {
                EvalRequest::Schur { shape, r, point } => {
                    // revalidate: derived deserialization bypasses the
                    // partition-shape invariants
                    let shape = SkewShape::new(shape.lambda().to_vec(), shape.mu().to_vec())?;
                    tableaux_schur(&shape, r, point.n(), point.m()).eval(&point.assignment())?
                }
                EvalRequest::Energy { point } => {
                    energy(point.n(), point.m()).eval(&point.assignment())?
                }
            };
            println!("{{\"value\":{}}}", serde_json::to_string(&value.to_string()).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Apply { request } => {
            let req: ApplyRequest = parse_request(request)?;
            let out = match req {
                ApplyRequest::Point { k, c, point } => {
                    serde_json::to_string(&product_e(&point, k, &c)?).unwrap()
                }
                ApplyRequest::Matrix {
                    k,
                    c,
                    point,
                    matrix,
                    m,
                } => {
                    let (y, m) = match (point, matrix) {
                        (Some(p), None) => (from_factors(&p), p.m()),
                        (None, Some(y)) => {
                            let m = m.unwrap_or_else(|| y.band());
                            (y, m)
                        }
                        _ => {
                            return Err(loopcrystal::Error::InvalidInput(
                                "provide exactly one of \"point\" or \"matrix\"".into(),
                            ))
                        }
                    };
                    let ctx = UCrystalContext { n: y.n(), m };
                    serde_json::to_string(&u_e(&y, k, &c, ctx)?).unwrap()
                }
                ApplyRequest::Word { word, point } => {
                    serde_json::to_string(&apply_word(&word, &point)?).unwrap()
                }
            };
            println!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Matrix { request } => {
            let point: ProductPoint = parse_request(request)?;
            let y = from_factors(&point);
            if cli.json {
                println!("{}", serde_json::to_string(&y).unwrap());
            } else {
                print_window(&y);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Limits {
            a,
            q,
            tail,
            width,
            factors,
            tol,
        } => {
            let stream = WhirlStream::new(a.clone(), *q)?;
            let y = match tail {
                Some(z) => curl_whirl_window(z, &stream, *factors, *width)?,
                None => truncated_product(&stream, *factors, *width)?,
            };
            let mut lines = Vec::new();
            for k in 1..=stream.n as i64 {
                let r = limit_ratios(&y, k, *tol)?;
                lines.push(format!(
                    "{{\"k\":{k},\"eps\":{:.16e},\"phi\":{:.16e},\"converged\":{}}}",
                    r.eps, r.phi, r.converged
                ));
            }
            println!("[{}]", lines.join(","));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_request<T: for<'de> Deserialize<'de>>(arg: &Option<String>) -> loopcrystal::Result<T> {
    let text = match arg {
        Some(s) => s.clone(),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| loopcrystal::Error::InvalidInput(format!("stdin: {e}")))?;
            buf
        }
    };
    serde_json::from_str(&text)
        .map_err(|e| loopcrystal::Error::InvalidInput(format!("bad request: {e}")))
}

fn print_report(report: &SuiteReport, cli: &Cli) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(report).unwrap());
        return;
    }
    for case in &report.cases {
        if case.passed && cli.quiet {
            continue;
        }
        let status = if case.passed { "pass" } else { "FAIL" };
        println!("{status} {} ({})", case.key, case.detail);
    }
    println!(
        "{}: {} passed, {} failed (seed {})",
        report.suite, report.passed, report.failed, report.seed
    );
}

fn print_window(y: &PeriodicBandedMatrix) {
    let n = y.n() as i64;
    let cols: Vec<i64> = (1..=n + y.band() as i64).collect();
    let header: Vec<String> = cols.iter().map(|j| format!("c{j}")).collect();
    println!("n = {}, band = {}\t{}", y.n(), y.band(), header.join("\t"));
    for i in 1..=n {
        let row: Vec<String> = cols.iter().map(|&j| y.entry(i, j).to_string()).collect();
        println!("r{i}\t{}", row.join("\t"));
    }
}
