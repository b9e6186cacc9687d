mod args;

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

use genfermat::classify::ClassificationRecord;
use genfermat::json::{parse_curve, CurveJson};
use genfermat::scan::{run_scan, ScanRow, CSV_HEADER};
use genfermat::verify::Verifier;
use genfermat::{
    classify, count_affine, count_formula_with, count_smooth_model, sv_bound, wronskian,
    CountMethod, CountReport, Curve, Error, Method, Verdict,
};

use args::{Cli, Command, CountArg, MethodArg};

/// Exit codes. Diagnostics go to stderr, results to stdout.
mod exit {
    pub const VERIFY_FAILED: u8 = 1;
    pub const INVALID_INPUT: u8 = 2;
    pub const DISAGREEMENT: u8 = 3;
    pub const BUDGET: u8 = 4;
    pub const IO: u8 = 5;
}

struct Failure {
    code: u8,
    message: Value,
}

impl Failure {
    fn new(code: u8, message: Value) -> Self {
        Failure { code, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => exit::BUDGET,
            _ => exit::INVALID_INPUT,
        };
        Failure::new(
            code,
            json!({ "error": error_kind(&e), "message": e.to_string() }),
        )
    }
}

/// Variant name of an error, e.g. `InvalidElement`.
fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(['(', ' ', '{'])
        .next()
        .unwrap_or_default()
        .to_string()
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(exit::IO, json!({ "error": "Io", "message": e.to_string() }))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::new(
            exit::IO,
            json!({ "error": "Csv", "message": e.to_string() }),
        )
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Classify {
            curve,
            system,
            method,
        } => cmd_classify(curve.as_deref(), system.into(), method),
        Command::Count { curve, method } => cmd_count(curve.as_deref(), method),
        Command::Bound { curve } => cmd_bound(curve.as_deref()),
        Command::Scan(a) => cmd_scan(a),
        Command::Verify {
            suite,
            inject_fault,
        } => cmd_verify(suite.into(), inject_fault.map(Into::into)),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Curve JSON given inline, as a file path, or on stdin when absent or `-`.
fn read_curve(arg: Option<&str>) -> Result<Curve, Failure> {
    let text = match arg {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
        Some(s) if s.trim_start().starts_with('{') => s.to_string(),
        Some(path) => fs::read_to_string(path)?,
    };
    Ok(parse_curve(&text)?.validate()?)
}

fn emit(value: &impl Serialize) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct WithCurve<'a, T: Serialize> {
    curve: CurveJson,
    #[serde(flatten)]
    body: &'a T,
}

fn with_curve<'a, T: Serialize>(c: &Curve, body: &'a T) -> WithCurve<'a, T> {
    WithCurve {
        curve: CurveJson::from_spec(c.spec()),
        body,
    }
}

fn cmd_classify(arg: Option<&str>, system: wronskian::LinearSystem, method: MethodArg) -> Outcome {
    let c = read_curve(arg)?;
    let det_record = || -> Result<ClassificationRecord, Failure> {
        let d = wronskian::determinants(&c, system)?;
        Ok(ClassificationRecord {
            system,
            geometric: Verdict::from_nonclassical(!d.det_classical),
            frobenius: Verdict::from_nonclassical(!d.det_frobenius),
            case_label: None,
            r: None,
            method: Method::Determinant,
        })
    };
    let rec = match method {
        MethodArg::Theorem => classify(&c, system)?,
        MethodArg::Determinant => det_record()?,
        MethodArg::Both => {
            let theorem = classify(&c, system)?;
            let det = det_record()?;
            if (theorem.geometric, theorem.frobenius) != (det.geometric, det.frobenius) {
                return Err(Failure::new(
                    exit::DISAGREEMENT,
                    json!({
                        "error": "MethodDisagreement",
                        "curve": CurveJson::from_spec(c.spec()),
                        "theorem": theorem,
                        "determinant": det,
                    }),
                ));
            }
            ClassificationRecord {
                method: Method::Both,
                ..theorem
            }
        }
    };
    emit(&with_curve(&c, &rec))
}

#[derive(Serialize)]
struct CountOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    total: Option<u64>,
    agree: bool,
    reports: Vec<CountReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
}

fn affine_report(c: &Curve, method: CountMethod) -> CountReport {
    let affine = count_affine(c, method);
    CountReport {
        affine,
        infinity_branches: 0,
        total: affine,
        method,
        formula_case: None,
        reading: None,
    }
}

fn cmd_count(arg: Option<&str>, method: CountArg) -> Outcome {
    let c = read_curve(arg)?;
    let mut warnings = Vec::new();
    let smooth = match count_smooth_model(&c) {
        Ok(r) => Some(r),
        Err(Error::UnsupportedInfinity) => {
            warnings.push(Error::UnsupportedInfinity.to_string());
            eprintln!(
                "{}",
                json!({ "warning": "UnsupportedInfinity", "message": Error::UnsupportedInfinity.to_string() })
            );
            None
        }
        Err(e) => return Err(e.into()),
    };
    let oracle = smooth.as_ref().map(|r| r.total);
    let formula = || match count_formula_with(&c, oracle) {
        Ok(r) => Ok(Some(r)),
        Err(Error::NoFormula) => Ok(None),
        Err(e) => Err(Failure::from(e)),
    };
    let mut reports = Vec::new();
    match method {
        CountArg::Naive => reports.push(affine_report(&c, CountMethod::Naive)),
        CountArg::Fast => reports.push(affine_report(&c, CountMethod::Fast)),
        CountArg::Smooth => reports.push(
            smooth
                .clone()
                .unwrap_or_else(|| affine_report(&c, CountMethod::Fast)),
        ),
        CountArg::Formula => match formula()? {
            Some(r) => reports.push(r),
            None => return Err(Error::NoFormula.into()),
        },
        CountArg::All => {
            reports.push(affine_report(&c, CountMethod::Naive));
            reports.push(affine_report(&c, CountMethod::Fast));
            reports.extend(smooth.clone());
            reports.extend(formula()?);
        }
    }
    let affine_agree = reports
        .iter()
        .filter(|r| r.method != CountMethod::Formula)
        .map(|r| r.affine)
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[0] == w[1]);
    let total_agree = match (
        &smooth,
        reports.iter().find(|r| r.method == CountMethod::Formula),
    ) {
        (Some(s), Some(f)) => s.total == f.total,
        _ => true,
    };
    let agree = affine_agree && total_agree;
    let total = match method {
        CountArg::Naive | CountArg::Fast => None,
        _ => smooth.as_ref().map(|r| r.total).or_else(|| {
            reports
                .iter()
                .find(|r| r.method == CountMethod::Formula)
                .map(|r| r.total)
        }),
    };
    let out = CountOutput {
        total,
        agree,
        reports,
        warnings,
    };
    emit(&with_curve(&c, &out))?;
    if !agree {
        return Err(Failure::new(
            exit::DISAGREEMENT,
            json!({ "error": "CountDisagreement" }),
        ));
    }
    Ok(())
}

fn cmd_bound(arg: Option<&str>) -> Outcome {
    let c = read_curve(arg)?;
    emit(&with_curve(&c, &sv_bound(&c)))
}

fn cmd_scan(a: args::ScanArgs) -> Outcome {
    let out_path = a.out.clone();
    let grid = a.into_grid().map_err(|m| {
        Failure::new(
            exit::INVALID_INPUT,
            json!({ "error": "InvalidGrid", "message": m }),
        )
    })?;
    let (rows, summary) = run_scan(&grid)?;
    let sink: Box<dyn Write> = match &out_path {
        Some(p) => Box::new(fs::File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    write_csv(sink, &rows)?;
    let summary = json!({ "summary": summary, "budget": grid.budget, "out": out_path });
    if out_path.is_some() {
        emit(&summary)
    } else {
        eprintln!("{summary}");
        Ok(())
    }
}

fn write_csv(sink: impl Write, rows: &[ScanRow]) -> Outcome {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_verify(suite: genfermat::verify::Suite, fault: Option<genfermat::verify::Fault>) -> Outcome {
    let v = Verifier::default().with_fault(fault);
    let report = v.run_suite_with(suite, |c| eprintln!("{c}"));
    emit(&report)?;
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        Err(Failure::new(
            exit::VERIFY_FAILED,
            json!({ "error": "VerifyFailed", "failed": failed }),
        ))
    }
}
