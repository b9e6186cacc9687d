//! Named cross-checks: closed forms against the counting oracles, the
//! classifier against the Wronskian oracle, identities, incidence and bounds.

use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{
    classify, classify_conics, conic_row, identity_check, CaseLabel, Pattern, Verdict,
};
use crate::counting::{
    count_affine_fast, count_affine_naive, count_formula_with, count_smooth_model, formula_values,
    hasse_weil_upper, sv_bound, SquareReading,
};
use crate::curve::{Curve, CurveSpec};
use crate::error::{Error, Result};
use crate::field::{Fe, GaloisField};
use crate::json::curve_to_json;
use crate::scan::ScanGrid;
use crate::wronskian::{frobenius_incidence_scan_ext, LinearSystem, WronskianOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Formulas,
    Classification,
    Bounds,
    All,
}

impl Suite {
    pub fn checks(self) -> Vec<u32> {
        match self {
            Suite::Formulas => vec![1, 2, 3, 4, 5, 6, 7, 12],
            Suite::Classification => vec![8, 9, 11],
            Suite::Bounds => vec![10],
            Suite::All => (1..=12).collect(),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formulas" => Ok(Suite::Formulas),
            "classification" => Ok(Suite::Classification),
            "bounds" => Ok(Suite::Bounds),
            "all" => Ok(Suite::All),
            _ => Err(Error::Malformed(format!("unknown suite {s}"))),
        }
    }
}

/// Deliberate corruption used to check that the harness can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// adds one to every closed-form count
    Formula,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub id: u32,
    pub name: String,
    /// the result or case the check exercises
    pub anchor: String,
    pub passed: bool,
    pub instances: u64,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{:>2}] {} ({}): {} instances, {:.2}s; {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.anchor,
            self.instances,
            self.seconds,
            self.detail
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// square-field reading that matched the smooth-model count, per case
    pub pinned_readings: BTreeMap<String, String>,
    pub max_bound_ratio: Option<f64>,
}

struct Outcome {
    passed: bool,
    instances: u64,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, instances: u64, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            instances,
            detail: detail.into(),
        }
    }
}

pub struct Verifier {
    grid: ScanGrid,
    fault: Option<Fault>,
    curves: OnceCell<Result<Vec<Curve>>>,
    pinned: std::cell::RefCell<BTreeMap<String, String>>,
    ratio: std::cell::Cell<Option<f64>>,
}

impl Default for Verifier {
    fn default() -> Self {
        Self::new(ScanGrid::acceptance())
    }
}

const NAMES: [(&str, &str); 12] = [
    ("Hermitian-type count", "fermat_conics_c"),
    ("n = m = 4 over F_49", "fermat_conics_b"),
    (
        "n = 8, m = 4 over F_49, both regimes",
        "fermat_conics_d, fermat_conics_d_twisted",
    ),
    ("square-field reading", "fermat_conics_a, fermat_conics_e"),
    ("three-term n = m = 8 over F_49", "threeterm_conics_i"),
    (
        "three-term n = m = 6 over F_49 (e = 1)",
        "threeterm_conics_iii",
    ),
    ("three-term n = 8, m = 6 over F_49", "threeterm_conics_ii"),
    (
        "classifier vs Wronskian oracle",
        "lines and conics, geometric and Frobenius",
    ),
    (
        "identity vs Frobenius verdict",
        "geometric nonclassical conics",
    ),
    (
        "Frobenius classical counts vs bounds",
        "sv_bound, hasse_weil_upper",
    ),
    ("Frobenius incidence", "osculating conic table"),
    ("naive vs fast affine counts", "q <= 121"),
];

impl Verifier {
    pub fn new(grid: ScanGrid) -> Self {
        Verifier {
            grid,
            fault: None,
            curves: OnceCell::new(),
            pinned: Default::default(),
            ratio: Default::default(),
        }
    }

    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }

    fn curves(&self) -> Result<&[Curve]> {
        self.curves
            .get_or_init(|| self.grid.curves())
            .as_deref()
            .map_err(Clone::clone)
    }

    fn offset(&self) -> u64 {
        (self.fault == Some(Fault::Formula)) as u64
    }

    fn formula(&self, c: &Curve, oracle: Option<u64>) -> Result<u64> {
        Ok(count_formula_with(c, oracle)?.total + self.offset())
    }

    pub fn run(&self, id: u32) -> Check {
        let t = Instant::now();
        let res = match id {
            1 => self.hermitian(),
            2 => self.fixed_count(4, 4, 92, |f, a, b| sq_in_prime(f, a) && sq_in_prime(f, b)),
            3 => self.c3(),
            4 => self.readings(),
            5 => self.c5(),
            6 => self.c6(),
            7 => self.c7(),
            8 => self.oracle_agreement(),
            9 => self.identities(),
            10 => self.bounds(),
            11 => self.incidence(),
            12 => self.naive_fast(),
            _ => Err(Error::Malformed(format!("no check {id}"))),
        };
        let seconds = t.elapsed().as_secs_f64();
        let mut out = res.unwrap_or_else(|e| Outcome::new(false, 0, format!("error: {e}")));
        let limit = match id {
            1 => Some(1.0),
            2 => Some(5.0),
            8 => Some(600.0),
            _ => None,
        };
        if let Some(l) = limit.filter(|&l| seconds > l) {
            out.passed = false;
            out.detail = format!("{}; runtime {seconds:.2}s exceeds {l}s", out.detail);
        }
        let (name, anchor) = NAMES
            .get(id.wrapping_sub(1) as usize)
            .copied()
            .unwrap_or(("unknown", "-"));
        Check {
            id,
            name: name.to_string(),
            anchor: anchor.to_string(),
            passed: out.passed,
            instances: out.instances,
            detail: out.detail,
            seconds,
        }
    }

    pub fn run_suite(&self, suite: Suite) -> VerifyReport {
        self.run_suite_with(suite, |_| {})
    }

    /// As [`Self::run_suite`], calling `each` as every check finishes.
    pub fn run_suite_with(&self, suite: Suite, mut each: impl FnMut(&Check)) -> VerifyReport {
        let checks: Vec<Check> = suite
            .checks()
            .into_iter()
            .map(|id| {
                let c = self.run(id);
                each(&c);
                c
            })
            .collect();
        VerifyReport {
            suite,
            passed: checks.iter().all(|c| c.passed),
            checks,
            pinned_readings: self.pinned.borrow().clone(),
            max_bound_ratio: self.ratio.get(),
        }
    }

    fn hermitian(&self) -> Result<Outcome> {
        let mut n_inst = 0;
        let mut bad = Vec::new();
        for q in [7u64, 13] {
            let f = GaloisField::prime(q)?;
            let n = (q - 1) as u32;
            let want = (q - 1) * (q - 1);
            for a in f.nonzero() {
                let b = f.sub(Fe::ONE, a);
                if b.is_zero() {
                    continue;
                }
                let c = CurveSpec::two_term(&f, n, n, a, b).validate()?;
                let exact = count_smooth_model(&c)?.total;
                let formula = self.formula(&c, Some(exact))?;
                n_inst += 1;
                if exact != want || formula != want {
                    bad.push(format!(
                        "q={q} a={a}: exact {exact}, formula {formula}, want {want}"
                    ));
                }
            }
        }
        Ok(report(n_inst, bad, "every count equals (q-1)^2"))
    }

    /// Curves over F_49 with `a, b` ranging over pairs accepted by `keep`.
    fn fixed_count(
        &self,
        n: u32,
        m: u32,
        want: u64,
        keep: impl Fn(&GaloisField, Fe, Fe) -> bool,
    ) -> Result<Outcome> {
        let f = GaloisField::new(7, 2, None)?;
        let mut n_inst = 0;
        let mut bad = Vec::new();
        for a in f.nonzero() {
            for b in f.nonzero().filter(|&b| keep(&f, a, b)) {
                let c = CurveSpec::two_term(&f, n, m, a, b).validate()?;
                let exact = count_smooth_model(&c)?.total;
                let formula = self.formula(&c, Some(exact))?;
                n_inst += 1;
                if exact != want || formula != want {
                    bad.push(format!(
                        "a={a} b={b}: exact {exact}, formula {formula}, want {want}"
                    ));
                }
            }
        }
        Ok(report(n_inst, bad, &format!("every count equals {want}")))
    }

    fn c3(&self) -> Result<Outcome> {
        let plain = self.fixed_count(8, 4, 176, |f, a, b| prime(f, a) && prime(f, b))?;
        let twisted = self.fixed_count(8, 4, 176, |f, a, b| {
            prime(f, a) && f.frobenius(b, 1) == f.neg(b)
        })?;
        Ok(Outcome::new(
            plain.passed && twisted.passed && plain.instances > 0 && twisted.instances > 0,
            plain.instances + twisted.instances,
            format!(
                "a, b in F_7: {}; b^7 = -b: {}",
                plain.detail, twisted.detail
            ),
        ))
    }

    fn readings(&self) -> Result<Outcome> {
        let f = GaloisField::new(7, 2, None)?;
        let mut n_inst = 0;
        let mut bad = Vec::new();
        let mut notes = Vec::new();
        for (n, m) in [(16u32, 16u32), (16, 8)] {
            let mut common: Option<BTreeSet<SquareReading>> = None;
            let mut label = None;
            for a in f.nonzero().filter(|&a| prime(&f, a)) {
                for b in f.nonzero().filter(|&b| prime(&f, b)) {
                    let c = CurveSpec::two_term(&f, n, m, a, b).validate()?;
                    let exact = count_smooth_model(&c)?.total;
                    let fv = formula_values(&c)?;
                    label = Some(fv.case);
                    n_inst += 1;
                    let hits: BTreeSet<SquareReading> = fv
                        .values
                        .iter()
                        .filter(|(_, v)| v + self.offset() == exact)
                        .filter_map(|(r, _)| *r)
                        .collect();
                    if hits.is_empty() {
                        bad.push(format!(
                            "n={n} m={m} a={a} b={b}: exact {exact}, readings {:?}",
                            fv.values
                        ));
                    }
                    common = Some(match common {
                        None => hits,
                        Some(c) => c.intersection(&hits).copied().collect(),
                    });
                }
            }
            let label = label.map(|l| l.as_str().to_string()).unwrap_or_default();
            match common
                .as_ref()
                .map(|c| c.iter().copied().collect::<Vec<_>>())
            {
                Some(v) if v.len() == 1 => {
                    let name = reading_name(v[0]);
                    notes.push(format!("{label}: {name}"));
                    self.pinned.borrow_mut().insert(label, name.to_string());
                }
                Some(v) if v.len() == 2 => {
                    notes.push(format!("{label}: readings coincide"));
                    self.pinned.borrow_mut().insert(label, "either".to_string());
                }
                _ => bad.push(format!("{label}: no single reading matches every instance")),
            }
        }
        let mut out = report(n_inst, bad, "");
        out.detail = format!("{}; {}", notes.join(", "), out.detail)
            .trim_end_matches("; ")
            .to_string();
        Ok(out)
    }

    fn c5(&self) -> Result<Outcome> {
        let f = GaloisField::new(7, 2, None)?;
        let pool: Vec<Fe> = f.nonzero().filter(|&d| prime(&f, d)).collect();
        let mut n_inst = 0;
        let mut bad = Vec::new();
        for &a in &pool {
            for &b in &pool {
                for &c in &pool {
                    if f.add(a, f.mul(b, c)).is_zero() {
                        continue;
                    }
                    let curve = CurveSpec::three_term(&f, 8, 8, a, b, c).validate()?;
                    let exact = count_smooth_model(&curve)?.total;
                    let formula = self.formula(&curve, Some(exact))?;
                    n_inst += 1;
                    if exact != 288 || formula != 288 {
                        bad.push(format!(
                            "a={a} b={b} c={c}: exact {exact}, formula {formula}"
                        ));
                    }
                }
            }
        }
        Ok(report(n_inst, bad, "every count equals 288"))
    }

    fn c6(&self) -> Result<Outcome> {
        let f = GaloisField::new(7, 2, None)?;
        let mut n_inst = 0;
        let mut bad = Vec::new();
        for a in f.nonzero().filter(|&a| f.pow(a, 8) == Fe::ONE) {
            for b in f.nonzero().filter(|&b| f.pow(b, 8) != Fe::ONE) {
                let c = f.neg(f.mul(a, f.frobenius(b, 1)));
                let curve = CurveSpec::three_term(&f, 6, 6, a, b, c).validate()?;
                let rec = classify_conics(&curve)?;
                if rec.case_label != Some(CaseLabel::ThreetermConicsIII) {
                    continue;
                }
                let exact = count_smooth_model(&curve)?.total;
                let formula = self.formula(&curve, Some(exact))?;
                n_inst += 1;
                if exact != formula {
                    bad.push(format!(
                        "a={a} b={b} c={c}: exact {exact}, formula {formula}"
                    ));
                }
            }
        }
        if n_inst == 0 {
            bad.push("no coefficient triple satisfies the conditions".into());
        }
        Ok(report(n_inst, bad, "formula equals the smooth-model count"))
    }

    fn c7(&self) -> Result<Outcome> {
        let f = GaloisField::new(7, 2, None)?;
        let (n, m) = (8i64, 6i64);
        let mut n_inst = 0;
        let mut swapped_ok = 0;
        let mut bad = Vec::new();
        let delta = |d: Fe| f.is_power_in_subfield(d, 6, 2).map(|x| x as i64);
        let gamma = |d: Fe| f.in_subfield(d, 1).map(|x| x as i64);
        for c in f.nonzero().filter(|&c| f.pow(c, 8) == Fe::ONE) {
            for a in f.nonzero() {
                if f.mul(f.mul(c, c), f.pow(a, 6)) == Fe::ONE {
                    continue;
                }
                let b = f.neg(f.mul(c, f.frobenius(a, 1)));
                let curve = CurveSpec::three_term(&f, n as u32, m as u32, a, b, c).validate()?;
                let rec = classify_conics(&curve)?;
                if rec.case_label != Some(CaseLabel::ThreetermConicsII) {
                    bad.push(format!(
                        "a={a} b={b} c={c}: classified as {:?}",
                        rec.case_label
                    ));
                    continue;
                }
                let exact = count_smooth_model(&curve)?.total;
                let formula = self.formula(&curve, Some(exact))?;
                n_inst += 1;
                if exact != formula {
                    bad.push(format!(
                        "a={a} b={b} c={c}: exact {exact}, formula {formula}"
                    ));
                }
                let neg_ratio = |x: Fe, y: Fe| f.div(x, y).map(|v| f.neg(v));
                let d = delta(c)? + delta(neg_ratio(b, a)?)?;
                let g = gamma(neg_ratio(c, a)?)? + gamma(b)?;
                let swapped = formula as i64 + (d - g) * (n - m);
                swapped_ok += (swapped == exact as i64) as u64;
            }
        }
        if n_inst == 0 {
            bad.push("no coefficient triple satisfies the conditions".into());
        }
        let mut out = report(n_inst, bad, "formula equals the smooth-model count");
        out.detail = format!(
            "{}; swapped axis attribution matches {swapped_ok}/{n_inst}",
            out.detail
        );
        Ok(out)
    }

    fn oracle_agreement(&self) -> Result<Outcome> {
        let curves = self.curves()?;
        let mut oracles: BTreeMap<(u32, u32), WronskianOracle> = BTreeMap::new();
        for c in curves {
            let f = c.field();
            if let std::collections::btree_map::Entry::Vacant(e) = oracles.entry((f.p(), f.h())) {
                e.insert(WronskianOracle::new(f)?);
            }
        }
        let results: Vec<Result<Vec<String>>> = curves
            .par_iter()
            .map(|c| {
                let oracle = &oracles[&(c.field().p(), c.field().h())];
                let mut bad = Vec::new();
                for sys in [LinearSystem::Lines, LinearSystem::Conics] {
                    let rec = classify(c, sys)?;
                    let det = oracle.determinants(c, sys)?;
                    let geo = Verdict::from_nonclassical(!det.det_classical);
                    let frob = Verdict::from_nonclassical(!det.det_frobenius);
                    if rec.geometric != geo || rec.frobenius != frob {
                        bad.push(format!(
                            "{} {}: classifier ({}, {}) case {:?}, determinants ({}, {})",
                            curve_to_json(c.spec()),
                            sys.as_str(),
                            rec.geometric.as_str(),
                            rec.frobenius.as_str(),
                            rec.case_label.map(|l| l.as_str()),
                            geo.as_str(),
                            frob.as_str()
                        ));
                    }
                }
                Ok(bad)
            })
            .collect();
        let mut bad = Vec::new();
        for r in results {
            bad.extend(r?);
        }
        Ok(report(2 * curves.len() as u64, bad, "all verdicts agree"))
    }

    fn identities(&self) -> Result<Outcome> {
        let curves = self.curves()?;
        let results: Vec<Result<(u64, u64, Option<String>)>> = curves
            .par_iter()
            .map(|c| {
                let lines = classify(c, LinearSystem::Lines)?;
                let skipped = (lines.geometric == Verdict::Nonclassical) as u64;
                let rec = classify_conics(c)?;
                if rec.geometric != Verdict::Nonclassical {
                    return Ok((0, skipped, None));
                }
                let label = rec.case_label.ok_or(Error::NoFormula)?;
                if label == CaseLabel::FermatLines {
                    return Ok((0, skipped + 1, None));
                }
                let holds = identity_check(c, label)?;
                let nc = rec.frobenius == Verdict::Nonclassical;
                let bad = (holds != nc).then(|| {
                    format!(
                        "{} {}: identity {holds}, Frobenius {}",
                        curve_to_json(c.spec()),
                        label,
                        rec.frobenius.as_str()
                    )
                });
                Ok((1, skipped, bad))
            })
            .collect();
        let (mut n_inst, mut skipped, mut bad) = (0, 0, Vec::new());
        for r in results {
            let (k, s, b) = r?;
            n_inst += k;
            skipped += s;
            bad.extend(b);
        }
        let mut out = report(
            n_inst,
            bad,
            "identity holds exactly when Frobenius nonclassical",
        );
        out.detail = format!(
            "{}; {skipped} line-system cases have no identity",
            out.detail
        );
        Ok(out)
    }

    fn bounds(&self) -> Result<Outcome> {
        let mut bad = Vec::new();
        let f7 = GaloisField::prime(7)?;
        let worked = CurveSpec::two_term(&f7, 3, 3, Fe::ONE, Fe::ONE).validate()?;
        let (wn, wsv) = (
            count_smooth_model(&worked)?.total,
            sv_bound(&worked).sv_bound,
        );
        if (wn, wsv) != (9, 13) {
            bad.push(format!("q=7 n=m=3: N={wn} sv_bound={wsv}, want 9 and 13"));
        }
        let curves = self.curves()?;
        let results: Vec<Result<Option<RatioAndFailure>>> = curves
            .par_iter()
            .map(|c| {
                if classify_conics(c)?.frobenius != Verdict::Classical
                    || !c.infinity_profile().supported
                {
                    return Ok(None);
                }
                let n = count_smooth_model(c)?.total;
                let sv = sv_bound(c).sv_bound;
                let hw = hasse_weil_upper(c.field().q() as u64, c.genus());
                let bad = (n as i64 > sv || n > hw)
                    .then(|| format!("{}: N={n} sv_bound={sv} hw={hw}", curve_to_json(c.spec())));
                Ok(Some((n as f64 / sv as f64, bad)))
            })
            .collect();
        let mut n_inst = 1;
        let mut max_ratio = 0f64;
        for r in results {
            if let Some((ratio, b)) = r? {
                n_inst += 1;
                max_ratio = max_ratio.max(ratio);
                bad.extend(b);
            }
        }
        self.ratio.set(Some(max_ratio));
        let mut out = report(n_inst, bad, "no count exceeds either bound");
        out.detail = format!("{}; max N/sv_bound = {max_ratio:.4}", out.detail);
        Ok(out)
    }

    fn incidence(&self) -> Result<Outcome> {
        let curves = self.curves()?;
        let results: Vec<Result<Option<Option<String>>>> = curves
            .par_iter()
            .map(|c| {
                let rec = classify_conics(c)?;
                let Some(label) = rec
                    .case_label
                    .filter(|_| rec.frobenius == Verdict::Nonclassical)
                else {
                    return Ok(None);
                };
                let pat = Pattern::of(c).ok_or(Error::NoFormula)?;
                if conic_row(pat, c.n(), c.m(), [c.a(), c.b(), c.c()], c.field()).is_err() {
                    return Ok(None);
                }
                let inc = frobenius_incidence_scan_ext(c, label, 2)?;
                Ok(Some((!inc.is_complete() || inc.total == 0).then(|| {
                    format!(
                        "{} {label}: {}/{} points",
                        curve_to_json(c.spec()),
                        inc.hits,
                        inc.total
                    )
                })))
            })
            .collect();
        let (mut n_inst, mut bad) = (0, Vec::new());
        for r in results {
            if let Some(b) = r? {
                n_inst += 1;
                bad.extend(b);
            }
        }
        Ok(report(
            n_inst,
            bad,
            "incidence fraction 1.0 for every case over F_(q^2)",
        ))
    }

    fn naive_fast(&self) -> Result<Outcome> {
        let curves = self.curves()?;
        let bad: Vec<String> = curves
            .par_iter()
            .filter(|c| c.field().q() <= 121)
            .filter_map(|c| {
                let (a, b) = (count_affine_naive(c), count_affine_fast(c));
                (a != b).then(|| format!("{}: naive {a}, fast {b}", curve_to_json(c.spec())))
            })
            .collect();
        let n_inst = curves.iter().filter(|c| c.field().q() <= 121).count() as u64;
        Ok(report(n_inst, bad, "counts agree"))
    }
}

/// `N / sv_bound` and a failure message if a bound is violated.
type RatioAndFailure = (f64, Option<String>);

fn prime(f: &GaloisField, d: Fe) -> bool {
    f.frobenius(d, 1) == d
}

fn sq_in_prime(f: &GaloisField, d: Fe) -> bool {
    prime(f, f.mul(d, d))
}

fn reading_name(r: SquareReading) -> &'static str {
    match r {
        SquareReading::FullField => "full_field",
        SquareReading::Subfield => "subfield",
    }
}

fn report(instances: u64, bad: Vec<String>, ok: &str) -> Outcome {
    if bad.is_empty() {
        return Outcome::new(
            instances > 0,
            instances,
            if instances > 0 { ok } else { "no instances" },
        );
    }
    let shown: Vec<&str> = bad.iter().take(5).map(String::as_str).collect();
    Outcome::new(
        false,
        instances,
        format!("{} failures, e.g. {}", bad.len(), shown.join(" | ")),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Family;
    use crate::scan::{Coefficients, DEFAULT_BUDGET};

    fn tiny() -> Verifier {
        Verifier::new(ScanGrid {
            primes: vec![7],
            degrees: vec![1, 2],
            n: 3..=8,
            m: 3..=8,
            families: vec![Family::TwoTerm, Family::ThreeTerm],
            coefficients: vec![Coefficients::Subfield(1)],
            systems: vec![LinearSystem::Lines, LinearSystem::Conics],
            budget: DEFAULT_BUDGET,
        })
    }

    #[test]
    fn formula_checks_pass() {
        let v = tiny();
        for id in [1, 2, 3, 5] {
            let c = v.run(id);
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn injected_fault_is_caught() {
        let v = tiny().with_fault(Some(Fault::Formula));
        let c = v.run(1);
        assert!(!c.passed);
        assert!(c.detail.contains("formula"), "{c}");
    }

    #[test]
    fn grid_checks_on_small_grid() {
        let v = tiny();
        for id in [8, 9, 10, 11, 12] {
            let c = v.run(id);
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn suite_membership() {
        let mut all: Vec<u32> = [Suite::Formulas, Suite::Classification, Suite::Bounds]
            .iter()
            .flat_map(|s| s.checks())
            .collect();
        all.sort_unstable();
        assert_eq!(all, Suite::All.checks());
        assert_eq!("bounds".parse::<Suite>().unwrap(), Suite::Bounds);
        assert!("nope".parse::<Suite>().is_err());
    }
}
