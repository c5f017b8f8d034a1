//! The `sbundle` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input data,
//! 3 failed verification.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::bounds::{bfm_upper, bounds_table, ekkos_upper, gf_upper, kotschick_lower, BoundReport};
use crate::construction::{
    build_simple_genus2, build_xgn, closed_form, cross_validate, pullback, BundleRecord,
    ConstructionKind, ConstructionParams, ConstructionReport,
};
use crate::monodromy::{cyclic_cover_spec, CoverFile, CoverSummary};
use crate::signature::signature_quantum;
use crate::topology::Genus;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "sbundle",
    version,
    about = "Exact invariants of surface bundles built from cyclic branched covers",
    after_help = "Exit codes: 0 success, 1 usage error, 2 invalid input data, 3 verification failure."
)]
pub struct Cli {
    /// Output format; csv is available for `table` only.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build X_{g,n} and report both fibrations.
    Construct {
        /// Genus of the base curve C (>= 2)
        g: u32,
        /// Cover degree (>= 2)
        n: u32,
    },
    /// Build the genus-2 double-cover construction.
    Simple,
    /// Pull both fibrations of X_{g,n} back along degree-m covers of their bases.
    Pullback {
        g: u32,
        n: u32,
        /// Degree of the base cover (>= 1)
        m: BigInt,
    },
    /// Bounds on G_f, and on b_f(m) when m is given.
    Bounds {
        /// Fiber genus
        f: u64,
        /// Signature quantum, sigma = 4m
        m: Option<BigInt>,
    },
    /// Table of G_f bounds for f = 4..=f_max.
    Table { f_max: u64 },
    /// Cross-validate every X_{g,n} with 2 <= g <= g_max, 2 <= n <= n_max.
    Verify {
        #[arg(default_value_t = 5)]
        g_max: u32,
        #[arg(default_value_t = 5)]
        n_max: u32,
    },
    /// Validate a cover-spec file and report components and genus.
    Monodromy {
        /// JSON cover file
        path: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Usage = 1,
    InvalidInput = 2,
    VerificationFailed = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Result of one invocation: the document for standard output (or
/// `--out`) and a message for standard error.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub document: Option<String>,
    pub message: Option<String>,
}

impl Outcome {
    fn ok(document: String) -> Self {
        Outcome {
            status: Status::Success,
            document: Some(document),
            message: None,
        }
    }

    fn fail(err: &Error) -> Self {
        let status = match err {
            Error::OutOfRange(_) => Status::Usage,
            _ => Status::InvalidInput,
        };
        Outcome {
            status,
            document: None,
            message: Some(format!("error: {err}")),
        }
    }

    fn usage(message: String) -> Self {
        Outcome {
            status: Status::Usage,
            document: None,
            message: Some(message),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Outcome {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Table { .. }) {
        return Outcome::usage("error: --format csv is only available for `table`".into());
    }
    match dispatch(cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::fail(&e),
    }
}

fn dispatch(cli: &Cli) -> crate::Result<Outcome> {
    Ok(match &cli.command {
        Command::Construct { g, n } => {
            let rep = build_xgn(ConstructionParams::new(*g, *n)?)?;
            Outcome::ok(to_json(&rep.to_document()))
        }
        Command::Simple => Outcome::ok(to_json(&build_simple_genus2()?.to_document())),
        Command::Pullback { g, n, m } => {
            let rep = build_xgn(ConstructionParams::new(*g, *n)?)?;
            #[derive(Serialize)]
            struct Doc {
                construction: ConstructionKind,
                #[serde(serialize_with = "crate::serial::bigint")]
                m: BigInt,
                fibration1: BundleRecord,
                fibration2: BundleRecord,
            }
            Outcome::ok(to_json(&Doc {
                construction: rep.params,
                m: m.clone(),
                fibration1: pullback(&rep.fibration1, m.clone())?,
                fibration2: pullback(&rep.fibration2, m.clone())?,
            }))
        }
        Command::Bounds { f, m } => {
            #[derive(Serialize)]
            struct Doc {
                f: u64,
                gf_upper: Option<BoundReport>,
                ekkos_upper: Option<BoundReport>,
                kotschick_lower: BoundReport,
                #[serde(skip_serializing_if = "Option::is_none")]
                bfm_upper: Option<Option<BoundReport>>,
            }
            let bfm = m.as_ref().map(|m| bfm_upper(*f, m)).transpose()?;
            Outcome::ok(to_json(&Doc {
                f: *f,
                gf_upper: gf_upper(*f),
                ekkos_upper: ekkos_upper(*f).ok(),
                kotschick_lower: kotschick_lower(*f)?,
                bfm_upper: bfm,
            }))
        }
        Command::Table { f_max } => {
            let table = bounds_table(*f_max)?;
            Outcome::ok(match cli.format {
                Format::Json => to_json(&table),
                Format::Csv => table.to_csv(),
            })
        }
        Command::Verify { g_max, n_max } => {
            if *g_max < 2 || *n_max < 2 {
                return Err(Error::OutOfRange(format!(
                    "verify needs g_max, n_max >= 2, got {g_max} {n_max}"
                )));
            }
            let summary = verify_sweep(*g_max, *n_max);
            let status = if summary.failed == 0 {
                Status::Success
            } else {
                Status::VerificationFailed
            };
            Outcome {
                status,
                document: Some(to_json(&summary)),
                message: None,
            }
        }
        Command::Monodromy { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidCover(format!("cannot read {}: {e}", path.display())))?;
            let cover = CoverFile::from_json(&text)?.to_cover()?;
            let summary = CoverSummary::of(&cover);
            Outcome {
                status: if summary.valid {
                    Status::Success
                } else {
                    Status::InvalidInput
                },
                message: summary.problem.as_ref().map(|p| format!("error: {p}")),
                document: Some(to_json(&summary)),
            }
        }
    })
}

#[derive(Debug, Serialize)]
pub struct Failure {
    pub case: String,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifySummary {
    pub g_max: u32,
    pub n_max: u32,
    pub cases: usize,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
    pub summary: String,
}

/// Every construction check, plus the invariants linking constructions to
/// pullbacks and to permutation monodromy, over the whole range.
pub fn verify_sweep(g_max: u32, n_max: u32) -> VerifySummary {
    let cases: Vec<(u32, u32)> = (2..=g_max)
        .flat_map(|g| (2..=n_max).map(move |n| (g, n)))
        .collect();
    let per_case: Vec<Vec<CheckRow>> = std::thread::scope(|scope| {
        let handles: Vec<_> = cases
            .iter()
            .map(|&(g, n)| scope.spawn(move || case_checks(g, n)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification worker"))
            .collect()
    });

    let mut labeled: Vec<(String, Vec<CheckRow>)> = cases
        .iter()
        .map(|(g, n)| ConstructionKind::Xgn { g: *g, n: *n }.to_string())
        .zip(per_case)
        .collect();
    labeled.push((
        ConstructionKind::SimpleGenus2.to_string(),
        match build_simple_genus2() {
            Ok(rep) => report_checks(&rep),
            Err(e) => vec![("build".into(), false, e.to_string())],
        },
    ));

    let mut summary = VerifySummary {
        g_max,
        n_max,
        cases: labeled.len(),
        checks: 0,
        passed: 0,
        failed: 0,
        failures: Vec::new(),
        summary: String::new(),
    };
    for (case, checks) in labeled {
        for (check, passed, detail) in checks {
            summary.checks += 1;
            if passed {
                summary.passed += 1;
            } else {
                summary.failed += 1;
                summary.failures.push(Failure {
                    case: case.clone(),
                    check,
                    detail,
                });
            }
        }
    }
    summary.summary = if summary.failed == 0 {
        "all checks passed".into()
    } else {
        format!("{} of {} checks failed", summary.failed, summary.checks)
    };
    summary
}

/// `(check name, passed, detail)`.
type CheckRow = (String, bool, String);

fn report_checks(rep: &ConstructionReport) -> Vec<CheckRow> {
    cross_validate(rep)
        .into_iter()
        .map(|c| (c.name, c.passed, c.detail))
        .collect()
}

fn case_checks(g: u32, n: u32) -> Vec<CheckRow> {
    let rep = match ConstructionParams::new(g, n).and_then(build_xgn) {
        Ok(rep) => rep,
        Err(e) => return vec![("build".into(), false, e.to_string())],
    };
    let mut out = report_checks(&rep);

    let genus_ok = rep.fibration1.fiber_genus.value() == &closed_form::first_fiber_genus(g, n)
        && rep.fibration2.base_genus.value() == &closed_form::second_base_genus(g, n)
        && rep.fibration2.fiber_genus.value() == &closed_form::second_fiber_genus(g, n)
        && rep
            .graphs
            .components
            .iter()
            .all(|c| c.degree() == &closed_form::graph_degree(g, n));
    out.push(("closed_form_genera".into(), genus_ok, String::new()));

    let quantum = signature_quantum(&rep.signature);
    out.push((
        "signature_quantum".into(),
        quantum.is_ok(),
        quantum
            .map(|m| format!("m = {m}"))
            .unwrap_or_else(|e| e.to_string()),
    ));

    let (a, b) = (BigInt::from(2), BigInt::from(3));
    let twice = pullback(&rep.fibration2, a.clone()).and_then(|r| pullback(&r, b.clone()));
    let once = pullback(&rep.fibration2, a * b);
    let pull_ok = matches!((&twice, &once), (Ok(x), Ok(y))
        if x.base_genus == y.base_genus && x.signature == y.signature && x.fiber_genus == y.fiber_genus);
    out.push(("pullback_multiplicative".into(), pull_ok, String::new()));

    let monodromy = cyclic_cover_spec(g as usize, n as usize, &vec![0; 2 * g as usize])
        .and_then(|pc| pc.component_genera());
    let mono_ok = matches!(&monodromy, Ok(genera)
        if genera.len() == 1 && genera[0] == rep.fibration2.fiber_genus
            && genera[0] == Genus::from(u64::from(g) * u64::from(n)));
    out.push((
        "monodromy_fiber_genus".into(),
        mono_ok,
        format!("{monodromy:?}"),
    ));
    out
}

/// Parses `args`, runs, writes the document, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                Status::Usage.code()
            } else {
                0
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = run(&cli);
    if let Some(doc) = &outcome.document {
        let written = match &cli.out {
            Some(path) => std::fs::write(path, doc),
            None => {
                use std::io::Write;
                std::io::stdout().write_all(doc.as_bytes())
            }
        };
        if let Err(e) = written {
            eprintln!("error: cannot write output: {e}");
            return Status::InvalidInput.code();
        }
    }
    if let Some(msg) = &outcome.message {
        eprintln!("{msg}");
    }
    outcome.status.code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let cli =
            Cli::try_parse_from(std::iter::once("sbundle").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn construct_document() {
        let out = run_args(&["construct", "2", "2"]);
        assert_eq!(out.status, Status::Success);
        let json: serde_json::Value =
            serde_json::from_str(out.document.as_deref().unwrap()).unwrap();
        assert_eq!(json["signature"], serde_json::json!(16));
        assert_eq!(json["fibration1"]["base_genus"], serde_json::json!(2));
        assert_eq!(json["fibration1"]["fiber_genus"], serde_json::json!(25));
        assert_eq!(json["fibration2"]["base_genus"], serde_json::json!(9));
        assert_eq!(json["fibration2"]["fiber_genus"], serde_json::json!(4));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["construct", "1", "2"]).status, Status::Usage);
        assert_eq!(
            run_args(&["--format", "csv", "construct", "2", "2"]).status,
            Status::Usage
        );
        assert_eq!(run_args(&["table", "3"]).status, Status::Usage);
        assert_eq!(run_args(&["verify", "1", "3"]).status, Status::Usage);
        assert_eq!(run_args(&["bounds", "1"]).status, Status::Usage);
        assert_eq!(run_args(&["pullback", "2", "2", "0"]).status, Status::Usage);
        assert_eq!(main_with_args(["sbundle", "construct", "x"]), 1);
        assert_eq!(main_with_args(["sbundle", "frobnicate"]), 1);
    }

    #[test]
    fn verify_small_sweep() {
        let s = verify_sweep(3, 3);
        assert_eq!(s.cases, 5);
        assert_eq!(s.failed, 0, "{:?}", s.failures);
        assert_eq!(s.summary, "all checks passed");
    }

    #[test]
    fn table_csv() {
        let out = run_args(&["--format", "csv", "table", "10"]);
        let doc = out.document.unwrap();
        assert_eq!(doc.lines().nth(1), Some("4,2,\"(2,2)\",8,2/3"));
        assert_eq!(doc.lines().count(), 8);
    }

    #[test]
    fn bounds_document() {
        let out = run_args(&["bounds", "6", "48"]);
        let json: serde_json::Value = serde_json::from_str(&out.document.unwrap()).unwrap();
        assert_eq!(json["gf_upper"]["value"], "9/8");
        assert_eq!(json["bfm_upper"]["value"], "55");
        assert_eq!(
            json["bfm_upper"]["witness"]["pullback_degree"],
            serde_json::json!(3)
        );
        let out = run_args(&["bounds", "7"]);
        let json: serde_json::Value = serde_json::from_str(&out.document.unwrap()).unwrap();
        assert!(json["gf_upper"].is_null());
        assert!(json["ekkos_upper"].is_null());
        assert!(json.get("bfm_upper").is_none());
    }
}
