//! Parameter grids over (p, h, n, m, coefficients) and one row per curve and system.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, CaseLabel};
use crate::counting::{count_formula_with, count_smooth_model, hasse_weil_upper, sv_bound};
use crate::curve::{Curve, CurveSpec, Family};
use crate::error::{Error, Result};
use crate::field::{Fe, GaloisField};
use crate::wronskian::LinearSystem;

pub const DEFAULT_BUDGET: u64 = 1_000_000;
pub const BUDGET_ENV: &str = "GENFERMAT_BUDGET";
pub const ACCEPTANCE_SEED: u64 = 0x5eed_2024;

/// `GENFERMAT_BUDGET` if set and parseable, else [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficients {
    /// every nonzero tuple over F_q
    All,
    /// every nonzero tuple over F_{p^r}
    Subfield(u32),
    /// `k` random nonzero tuples over F_q per curve shape
    Sample { k: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct ScanGrid {
    pub primes: Vec<u32>,
    pub degrees: Vec<u32>,
    pub n: RangeInclusive<u32>,
    pub m: RangeInclusive<u32>,
    pub families: Vec<Family>,
    /// Union of strategies; duplicates are removed.
    pub coefficients: Vec<Coefficients>,
    pub systems: Vec<LinearSystem>,
    pub budget: u64,
}

impl ScanGrid {
    /// p in {7, 11, 13}, h in {1, 2}, 3 <= m <= n <= 12, coefficients over F_p
    /// plus 20 seeded samples over F_q per shape, both families and systems.
    pub fn acceptance() -> Self {
        ScanGrid {
            primes: vec![7, 11, 13],
            degrees: vec![1, 2],
            n: 3..=12,
            m: 3..=12,
            families: vec![Family::TwoTerm, Family::ThreeTerm],
            coefficients: vec![
                Coefficients::Subfield(1),
                Coefficients::Sample {
                    k: 20,
                    seed: ACCEPTANCE_SEED,
                },
            ],
            systems: vec![LinearSystem::Lines, LinearSystem::Conics],
            budget: u64::MAX,
        }
    }

    /// Shapes `(n, m)` with `m <= n` and `p` dividing neither.
    pub fn shapes(&self, p: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for n in self.n.clone() {
            for m in self.m.clone() {
                if m <= n && n % p != 0 && m % p != 0 {
                    out.push((n, m));
                }
            }
        }
        out
    }

    /// Validated curves in lexicographic order of `(p, h, n, m, family, a, b, c)`.
    /// Degenerate coefficient tuples are dropped.
    pub fn curves(&self) -> Result<Vec<Curve>> {
        let mut out = Vec::new();
        let mut fields: Vec<(u32, u32)> = self
            .primes
            .iter()
            .flat_map(|&p| self.degrees.iter().map(move |&h| (p, h)))
            .collect();
        fields.sort_unstable();
        fields.dedup();
        for (p, h) in fields {
            let f = GaloisField::new(p as u64, h, None)?;
            for (n, m) in self.shapes(p) {
                let mut families = self.families.clone();
                families.sort_unstable();
                families.dedup();
                for family in families {
                    for t in self.tuples(&f, family, n, m)? {
                        let spec = match family {
                            Family::TwoTerm => CurveSpec::two_term(&f, n, m, Fe(t[0]), Fe(t[1])),
                            Family::ThreeTerm => {
                                CurveSpec::three_term(&f, n, m, Fe(t[0]), Fe(t[1]), Fe(t[2]))
                            }
                        };
                        if let Ok(c) = spec.validate() {
                            out.push(c);
                            if out.len() as u64 > self.budget {
                                return Err(Error::BudgetExceeded {
                                    requested: out.len() as u64,
                                    budget: self.budget,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn tuples(
        &self,
        f: &GaloisField,
        family: Family,
        n: u32,
        m: u32,
    ) -> Result<BTreeSet<Vec<u32>>> {
        let arity = match family {
            Family::TwoTerm => 2,
            Family::ThreeTerm => 3,
        };
        let mut set = BTreeSet::new();
        for strategy in &self.coefficients {
            match *strategy {
                Coefficients::All => product(
                    &f.nonzero().map(|e| e.0).collect::<Vec<_>>(),
                    arity,
                    &mut set,
                ),
                Coefficients::Subfield(r) => {
                    if r == 0 || f.h() % r != 0 {
                        continue;
                    }
                    let mut pool = Vec::new();
                    for e in f.nonzero() {
                        if f.in_subfield(e, r)? {
                            pool.push(e.0);
                        }
                    }
                    product(&pool, arity, &mut set);
                }
                Coefficients::Sample { k, seed } => {
                    let key = [f.p() as u64, f.h() as u64, arity as u64, n as u64, m as u64];
                    let mixed = key.iter().fold(seed, |acc, &v| {
                        acc.rotate_left(13) ^ v.wrapping_mul(0x9e37_79b9_7f4a_7c15)
                    });
                    let mut rng = ChaCha8Rng::seed_from_u64(mixed);
                    for _ in 0..k {
                        set.insert((0..arity).map(|_| rng.gen_range(1..f.q())).collect());
                    }
                }
            }
        }
        Ok(set)
    }
}

fn product(pool: &[u32], arity: usize, out: &mut BTreeSet<Vec<u32>>) {
    let mut idx = vec![0usize; arity];
    if pool.is_empty() {
        return;
    }
    loop {
        out.insert(idx.iter().map(|&i| pool[i]).collect());
        let mut k = arity;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < pool.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub p: u32,
    pub h: u32,
    /// modulus coefficients, low degree first, space separated
    pub modulus: String,
    pub n: u32,
    pub m: u32,
    pub a: u32,
    pub b: u32,
    pub c: Option<u32>,
    pub system: String,
    pub case_label: Option<CaseLabel>,
    pub geometric: String,
    pub frobenius: String,
    #[serde(rename = "N_exact")]
    pub n_exact: Option<u64>,
    #[serde(rename = "N_formula")]
    pub n_formula: Option<u64>,
    pub sv_bound: i64,
    pub hw_bound: u64,
}

pub const CSV_HEADER: [&str; 16] = [
    "p",
    "h",
    "modulus",
    "n",
    "m",
    "a",
    "b",
    "c",
    "system",
    "case_label",
    "geometric",
    "frobenius",
    "N_exact",
    "N_formula",
    "sv_bound",
    "hw_bound",
];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub curves: u64,
    pub rows: u64,
    pub geometric_nonclassical: u64,
    pub frobenius_nonclassical: u64,
    pub undetermined: u64,
    pub unsupported_infinity: u64,
    pub formula_rows: u64,
    pub formula_mismatches: u64,
}

/// Rows for one curve, one per system.
pub fn scan_curve(curve: &Curve, systems: &[LinearSystem]) -> Vec<ScanRow> {
    let f = curve.field();
    let exact = count_smooth_model(curve).ok().map(|r| r.total);
    let formula = count_formula_with(curve, exact).ok().map(|r| r.total);
    let bound = sv_bound(curve);
    let modulus = f
        .modulus()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    systems
        .iter()
        .map(|&sys| {
            let rec = classify(curve, sys).ok();
            let verdict = |g: bool| {
                rec.as_ref()
                    .map(|r| if g { r.geometric } else { r.frobenius }.as_str())
                    .unwrap_or("undetermined")
                    .to_string()
            };
            ScanRow {
                p: f.p(),
                h: f.h(),
                modulus: modulus.clone(),
                n: curve.n(),
                m: curve.m(),
                a: curve.a().0,
                b: curve.b().0,
                c: (curve.family() == Family::ThreeTerm).then(|| curve.c().0),
                system: sys.as_str().to_string(),
                case_label: rec.as_ref().and_then(|r| r.case_label),
                geometric: verdict(true),
                frobenius: verdict(false),
                n_exact: exact,
                n_formula: formula,
                sv_bound: bound.sv_bound,
                hw_bound: hasse_weil_upper(f.q() as u64, curve.genus()),
            }
        })
        .collect()
}

/// Runs the grid. Rows come back sorted by `(p, h, n, m, a, b, c, system)`.
pub fn run_scan(grid: &ScanGrid) -> Result<(Vec<ScanRow>, ScanSummary)> {
    let curves = grid.curves()?;
    let mut rows: Vec<ScanRow> = curves
        .par_iter()
        .flat_map_iter(|c| scan_curve(c, &grid.systems))
        .collect();
    rows.sort_by(|x, y| {
        (x.p, x.h, x.n, x.m, x.a, x.b, x.c, &x.system)
            .cmp(&(y.p, y.h, y.n, y.m, y.a, y.b, y.c, &y.system))
    });
    let mut s = ScanSummary {
        curves: curves.len() as u64,
        rows: rows.len() as u64,
        ..Default::default()
    };
    for r in &rows {
        s.geometric_nonclassical += (r.geometric == "nonclassical") as u64;
        s.frobenius_nonclassical += (r.frobenius == "nonclassical") as u64;
        s.undetermined += (r.geometric == "undetermined" || r.frobenius == "undetermined") as u64;
        s.unsupported_infinity += r.n_exact.is_none() as u64;
        if let Some(v) = r.n_formula {
            s.formula_rows += 1;
            s.formula_mismatches += (r.n_exact.is_some_and(|e| e != v)) as u64;
        }
    }
    Ok((rows, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(coefficients: Vec<Coefficients>) -> ScanGrid {
        ScanGrid {
            primes: vec![7],
            degrees: vec![1],
            n: 3..=4,
            m: 3..=4,
            families: vec![Family::TwoTerm],
            coefficients,
            systems: vec![LinearSystem::Lines],
            budget: DEFAULT_BUDGET,
        }
    }

    #[test]
    fn enumeration_counts() {
        let g = small(vec![Coefficients::All]);
        assert_eq!(g.shapes(7), vec![(3, 3), (4, 3), (4, 4)]);
        assert_eq!(g.curves().unwrap().len(), 3 * 36);
        let mut g3 = small(vec![Coefficients::Subfield(1)]);
        g3.families = vec![Family::ThreeTerm];
        g3.n = 3..=3;
        let n = g3.curves().unwrap().len();
        // a + b c = 0 removes 36 of the 216 triples
        assert_eq!(n, 216 - 36);
    }

    #[test]
    fn sampling_is_seeded() {
        let mut g = small(vec![Coefficients::Sample { k: 5, seed: 1 }]);
        g.degrees = vec![2];
        let a = g.curves().unwrap();
        let b = g.curves().unwrap();
        assert_eq!(
            a.iter().map(|c| c.spec().clone()).collect::<Vec<_>>(),
            b.iter().map(|c| c.spec().clone()).collect::<Vec<_>>()
        );
        assert!(a.len() <= 15);
        g.coefficients = vec![Coefficients::Sample { k: 5, seed: 2 }];
        let c = g.curves().unwrap();
        assert_ne!(
            a.iter().map(|c| c.a()).collect::<Vec<_>>(),
            c.iter().map(|c| c.a()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn budget_is_enforced() {
        let mut g = small(vec![Coefficients::All]);
        g.budget = 10;
        assert!(matches!(
            g.curves(),
            Err(Error::BudgetExceeded { budget: 10, .. })
        ));
    }

    #[test]
    fn empty_grid() {
        let mut g = small(vec![Coefficients::All]);
        g.n = RangeInclusive::new(5, 4);
        let (rows, s) = run_scan(&g).unwrap();
        assert!(rows.is_empty());
        assert_eq!(s.curves, 0);
    }

    #[test]
    fn rows_are_sorted_and_flag_lines() {
        let g = ScanGrid {
            primes: vec![7],
            degrees: vec![2],
            n: 3..=9,
            m: 3..=9,
            families: vec![Family::TwoTerm],
            coefficients: vec![Coefficients::Subfield(1)],
            systems: vec![LinearSystem::Lines, LinearSystem::Conics],
            budget: DEFAULT_BUDGET,
        };
        let (rows, s) = run_scan(&g).unwrap();
        assert_eq!(s.rows, 2 * s.curves);
        assert!(rows
            .windows(2)
            .all(|w| (w[0].n, w[0].m, w[0].a, w[0].b) <= (w[1].n, w[1].m, w[1].a, w[1].b)));
        let lines_nc: Vec<_> = rows
            .iter()
            .filter(|r| r.system == "lines" && r.frobenius == "nonclassical")
            .collect();
        assert!(!lines_nc.is_empty());
        assert!(lines_nc
            .iter()
            .all(|r| r.n == 8 && r.m == 8 && r.case_label == Some(CaseLabel::FermatLines)));
        assert_eq!(s.formula_mismatches, 0);
    }
}
