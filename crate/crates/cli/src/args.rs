use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use genfermat::scan::{budget_from_env, Coefficients, ScanGrid};
use genfermat::verify::{Fault, Suite};
use genfermat::{Family, LinearSystem};

/// Classify generalized Fermat curves over finite fields, count their
/// rational points and bound them.
///
/// Exit codes: 0 success, 1 verification failure, 2 invalid input,
/// 3 disagreement between methods, 4 scan budget exceeded, 5 I/O error.
#[derive(Parser, Debug)]
#[command(name = "genfermat", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classicality with respect to lines or conics.
    Classify {
        /// curve JSON, a path to it, or `-` for stdin (the default)
        curve: Option<String>,
        #[arg(long, value_enum, default_value = "conics")]
        system: SystemArg,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
    /// Rational point counts.
    Count {
        curve: Option<String>,
        #[arg(long, value_enum, default_value = "all")]
        method: CountArg,
    },
    /// Stöhr-Voloch and Hasse-Weil upper bounds.
    Bound { curve: Option<String> },
    /// One CSV row per curve and system over a parameter grid.
    Scan(ScanArgs),
    /// Run the cross-check suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// corrupt a component on purpose to see the harness fail
        #[arg(long, value_enum)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SystemArg {
    Lines,
    Conics,
}

impl From<SystemArg> for LinearSystem {
    fn from(s: SystemArg) -> Self {
        match s {
            SystemArg::Lines => LinearSystem::Lines,
            SystemArg::Conics => LinearSystem::Conics,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Theorem,
    Determinant,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CountArg {
    Naive,
    Fast,
    Smooth,
    Formula,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SuiteArg {
    Formulas,
    Classification,
    Bounds,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Formulas => Suite::Formulas,
            SuiteArg::Classification => Suite::Classification,
            SuiteArg::Bounds => Suite::Bounds,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FaultArg {
    Formula,
}

impl From<FaultArg> for Fault {
    fn from(_: FaultArg) -> Self {
        Fault::Formula
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    TwoTerm,
    ThreeTerm,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SystemsArg {
    Lines,
    Conics,
    Both,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// primes, comma separated
    #[arg(long, value_delimiter = ',', default_value = "7")]
    pub p: Vec<u32>,
    /// extension degrees, comma separated
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub h: Vec<u32>,
    /// exponent range `lo..hi` (inclusive) or a single value
    #[arg(long, default_value = "3..12")]
    pub n: String,
    #[arg(long, default_value = "3..12")]
    pub m: String,
    #[arg(long, value_enum, default_value = "both")]
    pub family: FamilyArg,
    /// `all`, `subfield:R` or `sample:K:SEED`; repeat to take the union
    #[arg(long = "coefficients", default_value = "subfield:1")]
    pub coefficients: Vec<String>,
    #[arg(long, value_enum, default_value = "both")]
    pub system: SystemsArg,
    /// maximum number of curves; defaults to GENFERMAT_BUDGET or 10^6
    #[arg(long)]
    pub budget: Option<u64>,
    /// CSV destination; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn range(s: &str) -> Result<std::ops::RangeInclusive<u32>, String> {
    let bad = || format!("bad range {s:?}");
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok(lo.trim().parse().map_err(|_| bad())?..=hi.trim().parse().map_err(|_| bad())?)
        }
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            Ok(v..=v)
        }
    }
}

fn coefficients(s: &str) -> Result<Coefficients, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| {
        t.parse::<u64>()
            .map_err(|_| format!("bad coefficient strategy {s:?}"))
    };
    match parts.as_slice() {
        ["all"] => Ok(Coefficients::All),
        ["subfield", r] => Ok(Coefficients::Subfield(num(r)? as u32)),
        ["sample", k, seed] => Ok(Coefficients::Sample {
            k: num(k)? as usize,
            seed: num(seed)?,
        }),
        _ => Err(format!("bad coefficient strategy {s:?}")),
    }
}

impl ScanArgs {
    pub fn into_grid(self) -> Result<ScanGrid, String> {
        Ok(ScanGrid {
            primes: self.p,
            degrees: self.h,
            n: range(&self.n)?,
            m: range(&self.m)?,
            families: match self.family {
                FamilyArg::TwoTerm => vec![Family::TwoTerm],
                FamilyArg::ThreeTerm => vec![Family::ThreeTerm],
                FamilyArg::Both => vec![Family::TwoTerm, Family::ThreeTerm],
            },
            coefficients: self
                .coefficients
                .iter()
                .map(|s| coefficients(s))
                .collect::<Result<_, _>>()?,
            systems: match self.system {
                SystemsArg::Lines => vec![LinearSystem::Lines],
                SystemsArg::Conics => vec![LinearSystem::Conics],
                SystemsArg::Both => vec![LinearSystem::Lines, LinearSystem::Conics],
            },
            budget: self.budget.unwrap_or_else(budget_from_env),
        })
    }
}
