//! Theorem-based classification with respect to lines and conics, the
//! osculating-conic tables and the Frobenius identity polynomials.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bipoly::BiPoly;
use crate::curve::{Curve, Family};
use crate::error::{Error, Result};
use crate::field::{Fe, GaloisField};
use crate::funcfield::FunctionField;
use crate::wronskian::LinearSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Classical,
    Nonclassical,
    Undetermined,
}

impl Verdict {
    pub fn from_nonclassical(nc: bool) -> Self {
        if nc {
            Verdict::Nonclassical
        } else {
            Verdict::Classical
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Classical => "classical",
            Verdict::Nonclassical => "nonclassical",
            Verdict::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Theorem,
    Determinant,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    FermatLines,
    FermatConicsA,
    FermatConicsB,
    FermatConicsC,
    FermatConicsD,
    FermatConicsDTwisted,
    FermatConicsE,
    FermatConicsNhM1,
    FermatConicsN1M2,
    FermatConicsN1Mm1,
    FermatConicsNm1M1,
    ThreetermConicsI,
    ThreetermConicsII,
    ThreetermConicsIII,
    ThreetermConicsNm1M1,
    HermitianQEqNPlus1,
    /// three-term curve with `q = n + 1 = m + 1` and `a + b + c = 1`
    ThreetermQEqNPlus1,
}

const LABELS: [(CaseLabel, &str); 17] = [
    (CaseLabel::FermatLines, "fermat_lines"),
    (CaseLabel::FermatConicsA, "fermat_conics_a"),
    (CaseLabel::FermatConicsB, "fermat_conics_b"),
    (CaseLabel::FermatConicsC, "fermat_conics_c"),
    (CaseLabel::FermatConicsD, "fermat_conics_d"),
    (CaseLabel::FermatConicsDTwisted, "fermat_conics_d_twisted"),
    (CaseLabel::FermatConicsE, "fermat_conics_e"),
    (CaseLabel::FermatConicsNhM1, "fermat_conics_nh_m1"),
    (CaseLabel::FermatConicsN1M2, "fermat_conics_n1_m2"),
    (CaseLabel::FermatConicsN1Mm1, "fermat_conics_n1_mm1"),
    (CaseLabel::FermatConicsNm1M1, "fermat_conics_nm1_m1"),
    (CaseLabel::ThreetermConicsI, "threeterm_conics_i"),
    (CaseLabel::ThreetermConicsII, "threeterm_conics_ii"),
    (CaseLabel::ThreetermConicsIII, "threeterm_conics_iii"),
    (CaseLabel::ThreetermConicsNm1M1, "threeterm_conics_nm1_m1"),
    (CaseLabel::HermitianQEqNPlus1, "hermitian_q_eq_n_plus_1"),
    (CaseLabel::ThreetermQEqNPlus1, "threeterm_q_eq_n_plus_1"),
];

impl CaseLabel {
    pub fn all() -> impl Iterator<Item = CaseLabel> {
        LABELS.iter().map(|t| t.0)
    }

    pub fn as_str(self) -> &'static str {
        LABELS
            .iter()
            .find(|t| t.0 == self)
            .map(|t| t.1)
            .unwrap_or("")
    }

    /// The residue pattern a curve must have for this label to apply.
    pub fn pattern(self) -> Option<Pattern> {
        use Res::*;
        let p = match self {
            CaseLabel::FermatLines => Pattern::two(One, One),
            CaseLabel::FermatConicsA => Pattern::two(Two, Two),
            CaseLabel::FermatConicsB => Pattern::two(Half, Half),
            CaseLabel::FermatConicsC | CaseLabel::HermitianQEqNPlus1 => {
                Pattern::two(MinusOne, MinusOne)
            }
            CaseLabel::FermatConicsD | CaseLabel::FermatConicsDTwisted => Pattern::two(One, Half),
            CaseLabel::FermatConicsE => Pattern::two(Two, One),
            CaseLabel::FermatConicsNhM1 => Pattern::two(Half, One),
            CaseLabel::FermatConicsN1M2 => Pattern::two(One, Two),
            CaseLabel::FermatConicsN1Mm1 => Pattern::two(One, MinusOne),
            CaseLabel::FermatConicsNm1M1 => Pattern::two(MinusOne, One),
            CaseLabel::ThreetermConicsI => Pattern::three(One, One),
            CaseLabel::ThreetermConicsII => Pattern::three(One, MinusOne),
            CaseLabel::ThreetermConicsIII | CaseLabel::ThreetermQEqNPlus1 => {
                Pattern::three(MinusOne, MinusOne)
            }
            CaseLabel::ThreetermConicsNm1M1 => Pattern::three(MinusOne, One),
        };
        Some(p)
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LABELS
            .iter()
            .find(|t| t.1 == s)
            .map(|t| t.0)
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CaseLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Residue of an exponent modulo p among the values the theorems single out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Res {
    One,
    Two,
    MinusOne,
    Half,
}

impl Res {
    /// For p > 3 at most one residue applies.
    pub fn of(e: u32, p: u32) -> Option<Res> {
        let r = e % p;
        if r == 1 {
            Some(Res::One)
        } else if r == 2 {
            Some(Res::Two)
        } else if r == p - 1 {
            Some(Res::MinusOne)
        } else if (2 * r) % p == 1 {
            Some(Res::Half)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub family: Family,
    pub n: Res,
    pub m: Res,
}

impl Pattern {
    fn two(n: Res, m: Res) -> Self {
        Pattern {
            family: Family::TwoTerm,
            n,
            m,
        }
    }
    fn three(n: Res, m: Res) -> Self {
        Pattern {
            family: Family::ThreeTerm,
            n,
            m,
        }
    }

    /// Geometric nonclassicality pattern of the curve w.r.t. conics, if any.
    pub fn of(curve: &Curve) -> Option<Pattern> {
        use Res::*;
        let p = curve.field().p();
        let n = Res::of(curve.n(), p)?;
        let m = Res::of(curve.m(), p)?;
        let ok = match curve.family() {
            Family::TwoTerm => matches!(
                (n, m),
                (Two, Two)
                    | (MinusOne, MinusOne)
                    | (Half, Half)
                    | (One, One)
                    | (Two, One)
                    | (Half, One)
                    | (MinusOne, One)
                    | (One, MinusOne)
                    | (One, Two)
                    | (One, Half)
            ),
            Family::ThreeTerm => matches!(n, One | MinusOne) && matches!(m, One | MinusOne),
        };
        ok.then_some(Pattern {
            family: curve.family(),
            n,
            m,
        })
    }

    /// Label of the geometric case before any Frobenius refinement.
    pub fn label(self) -> CaseLabel {
        use Res::*;
        match (self.family, self.n, self.m) {
            (Family::TwoTerm, Two, Two) => CaseLabel::FermatConicsA,
            (Family::TwoTerm, Half, Half) => CaseLabel::FermatConicsB,
            (Family::TwoTerm, MinusOne, MinusOne) => CaseLabel::FermatConicsC,
            (Family::TwoTerm, One, Half) => CaseLabel::FermatConicsD,
            (Family::TwoTerm, Two, One) => CaseLabel::FermatConicsE,
            (Family::TwoTerm, Half, One) => CaseLabel::FermatConicsNhM1,
            (Family::TwoTerm, One, Two) => CaseLabel::FermatConicsN1M2,
            (Family::TwoTerm, One, MinusOne) => CaseLabel::FermatConicsN1Mm1,
            (Family::TwoTerm, MinusOne, One) => CaseLabel::FermatConicsNm1M1,
            (Family::TwoTerm, _, _) => CaseLabel::FermatLines,
            (Family::ThreeTerm, One, One) => CaseLabel::ThreetermConicsI,
            (Family::ThreeTerm, One, MinusOne) => CaseLabel::ThreetermConicsII,
            (Family::ThreeTerm, MinusOne, MinusOne) => CaseLabel::ThreetermConicsIII,
            (Family::ThreeTerm, _, _) => CaseLabel::ThreetermConicsNm1M1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub system: LinearSystem,
    pub geometric: Verdict,
    pub frobenius: Verdict,
    pub case_label: Option<CaseLabel>,
    pub r: Option<u32>,
    pub method: Method,
}

/// Proper divisors `r` of `h` (so `r < h`).
fn proper_divisors(h: u32) -> impl Iterator<Item = u32> {
    (1..h).filter(move |r| h % r == 0)
}

fn in_sub(f: &GaloisField, d: Fe, r: u32) -> bool {
    f.frobenius(d, r) == d
}

pub fn classify(curve: &Curve, system: LinearSystem) -> Result<ClassificationRecord> {
    match system {
        LinearSystem::Lines => classify_lines(curve),
        LinearSystem::Conics => classify_conics(curve),
    }
}

pub fn classify_lines(curve: &Curve) -> Result<ClassificationRecord> {
    let f = curve.field();
    let p = f.p();
    if p == 2 {
        return Err(Error::UnsupportedCharacteristic {
            p,
            system: LinearSystem::Lines,
        });
    }
    let mut rec = ClassificationRecord {
        system: LinearSystem::Lines,
        geometric: Verdict::Classical,
        frobenius: Verdict::Classical,
        case_label: None,
        r: None,
        method: Method::Theorem,
    };
    if curve.family() == Family::ThreeTerm {
        return Ok(rec);
    }
    let (n, m) = (curve.n(), curve.m());
    if n % p == 1 && m % p == 1 {
        rec.geometric = Verdict::Nonclassical;
        rec.case_label = Some(CaseLabel::FermatLines);
        rec.r = lines_frobenius_r(curve);
        if rec.r.is_some() {
            rec.frobenius = Verdict::Nonclassical;
        }
    }
    Ok(rec)
}

/// `n = m = (q-1)/(p^r-1)` with `a, b` in F_{p^r}.
fn lines_frobenius_r(curve: &Curve) -> Option<u32> {
    let f = curve.field();
    let q = f.q() as u64;
    let (n, m) = (curve.n() as u64, curve.m() as u64);
    if n != m {
        return None;
    }
    proper_divisors(f.h()).find(|&r| {
        let pr = (f.p() as u64).pow(r);
        (q - 1) % (pr - 1) == 0
            && n == (q - 1) / (pr - 1)
            && in_sub(f, curve.a(), r)
            && in_sub(f, curve.b(), r)
    })
}

pub fn classify_conics(curve: &Curve) -> Result<ClassificationRecord> {
    let f = curve.field();
    let p = f.p();
    if p == 2 {
        return Err(Error::UnsupportedCharacteristic {
            p,
            system: LinearSystem::Conics,
        });
    }
    let mut rec = ClassificationRecord {
        system: LinearSystem::Conics,
        geometric: Verdict::Classical,
        frobenius: Verdict::Classical,
        case_label: None,
        r: None,
        method: Method::Theorem,
    };
    if p <= 5 {
        rec.geometric = Verdict::Undetermined;
        rec.frobenius = Verdict::Undetermined;
        return Ok(rec);
    }
    let Some(pat) = Pattern::of(curve) else {
        return Ok(rec);
    };
    rec.geometric = Verdict::Nonclassical;
    rec.case_label = Some(pat.label());
    if let Some((label, r)) = conics_frobenius_case(curve, pat) {
        rec.frobenius = Verdict::Nonclassical;
        rec.case_label = Some(label);
        rec.r = r;
    }
    Ok(rec)
}

/// Matches the Frobenius conditions for the given geometric pattern.
fn conics_frobenius_case(curve: &Curve, pat: Pattern) -> Option<(CaseLabel, Option<u32>)> {
    use Res::*;
    let f = curve.field();
    let (p, h, q) = (f.p() as u64, f.h(), f.q() as u64);
    let (n, m) = (curve.n() as u64, curve.m() as u64);
    let (a, b, c) = (curve.a(), curve.b(), curve.c());
    let pw = |r: u32| p.pow(r);
    // `q - 1 = k · d` exactly with the quotient returned
    let quo = |num: u64, den: u64| (num % den == 0).then(|| num / den);
    let with_r = |cond: &dyn Fn(u32) -> bool| proper_divisors(h).find(|&r| cond(r));
    match (pat.family, pat.n, pat.m) {
        (Family::TwoTerm, One, One) => Some((CaseLabel::FermatLines, None)),
        (Family::TwoTerm, Two, Two) => with_r(&|r| {
            n == m && quo(2 * (q - 1), pw(r) - 1) == Some(n) && in_sub(f, a, r) && in_sub(f, b, r)
        })
        .map(|r| (CaseLabel::FermatConicsA, Some(r))),
        (Family::TwoTerm, MinusOne, MinusOne) => (n == m && q == n + 1 && f.add(a, b) == Fe::ONE)
            .then_some((CaseLabel::FermatConicsC, None)),
        (Family::TwoTerm, Half, Half) => with_r(&|r| {
            n == m
                && quo(q - 1, 2 * (pw(r) - 1)) == Some(n)
                && in_sub(f, f.mul(a, a), r)
                && in_sub(f, f.mul(b, b), r)
        })
        .map(|r| (CaseLabel::FermatConicsB, Some(r))),
        (Family::TwoTerm, One, Half) => {
            let shape = |r: u32| n == 2 * m && quo(q - 1, pw(r) - 1) == Some(n);
            if let Some(r) = with_r(&|r| shape(r) && in_sub(f, a, r) && in_sub(f, b, r)) {
                return Some((CaseLabel::FermatConicsD, Some(r)));
            }
            with_r(&|r| {
                shape(r) && h % (2 * r) == 0 && in_sub(f, a, r) && f.frobenius(b, r) == f.neg(b)
            })
            .map(|r| (CaseLabel::FermatConicsDTwisted, Some(r)))
        }
        (Family::TwoTerm, Two, One) => with_r(&|r| {
            n == 2 * m
                && quo(2 * (q - 1), pw(r) - 1) == Some(n)
                && in_sub(f, a, r)
                && in_sub(f, b, r)
        })
        .map(|r| (CaseLabel::FermatConicsE, Some(r))),
        (Family::TwoTerm, _, _) => None,
        (Family::ThreeTerm, One, One) => with_r(&|r| {
            n == m && quo(q - 1, pw(r) - 1) == Some(n) && [a, b, c].iter().all(|&d| in_sub(f, d, r))
        })
        .map(|r| (CaseLabel::ThreetermConicsI, Some(r))),
        (Family::ThreeTerm, One, MinusOne) => with_r(&|r| {
            let fr = |d| f.frobenius(d, r);
            h % (2 * r) == 0
                && quo(q - 1, pw(r) - 1) == Some(n)
                && quo(q - 1, pw(r) + 1) == Some(m)
                && f.neg(b) == f.mul(c, fr(a))
                && f.neg(a) == f.mul(c, fr(b))
                && f.mul(c, fr(c)) == Fe::ONE
        })
        .map(|r| (CaseLabel::ThreetermConicsII, Some(r))),
        (Family::ThreeTerm, MinusOne, MinusOne) if n == m && q == n + 1 => {
            (f.add(f.add(a, b), c) == Fe::ONE).then_some((CaseLabel::ThreetermQEqNPlus1, None))
        }
        (Family::ThreeTerm, MinusOne, MinusOne) => with_r(&|r| {
            let fr = |d| f.frobenius(d, r);
            h % (2 * r) == 0
                && n == m
                && quo(q - 1, pw(r) + 1) == Some(n)
                && f.mul(a, fr(c)) == f.neg(b)
                && f.mul(a, fr(a)) == Fe::ONE
                && f.mul(a, fr(b)) == f.neg(c)
        })
        .map(|r| (CaseLabel::ThreetermConicsIII, Some(r))),
        (Family::ThreeTerm, _, _) => None,
    }
}

/// Checks that `label` names the geometric case the curve is in.
pub fn check_label(curve: &Curve, label: CaseLabel) -> Result<Pattern> {
    let mismatch = || Error::CaseMismatch(label.as_str().to_string());
    let pat = Pattern::of(curve).ok_or_else(mismatch)?;
    if label.pattern() != Some(pat) {
        return Err(mismatch());
    }
    Ok(pat)
}

/// Monomials of a plane conic, in coefficient order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicMonomial {
    X2,
    Y2,
    Z2,
    XY,
    XZ,
    YZ,
}

impl ConicMonomial {
    pub fn index(self) -> usize {
        self as usize
    }

    /// Degrees in X and Y.
    pub fn xy_degrees(self) -> (u32, u32) {
        match self {
            ConicMonomial::X2 => (2, 0),
            ConicMonomial::Y2 => (0, 2),
            ConicMonomial::Z2 => (0, 0),
            ConicMonomial::XY => (1, 1),
            ConicMonomial::XZ => (1, 0),
            ConicMonomial::YZ => (0, 1),
        }
    }
}

/// One term `coef · u^i v^j · monomial` of an osculating-conic row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConicTerm {
    pub coef: Fe,
    pub u_exp: u32,
    pub v_exp: u32,
    pub monomial: ConicMonomial,
}

/// The osculating conic at a general point `(u, v)`, as a table row.
///
/// `a`, `b`, `c` live in `f`, which may be an extension of the curve's field.
pub fn conic_row(
    pat: Pattern,
    n: u32,
    m: u32,
    abc: [Fe; 3],
    f: &GaloisField,
) -> Result<Vec<ConicTerm>> {
    use ConicMonomial::*;
    use Res::*;
    let [a, b, c] = abc;
    let t = |coef, u_exp, v_exp, monomial| ConicTerm {
        coef,
        u_exp,
        v_exp,
        monomial,
    };
    let one = Fe::ONE;
    let m1 = f.neg(one);
    let two = f.from_int(2);
    let sq = |d| f.mul(d, d);
    let row = match (pat.family, pat.n, pat.m) {
        (Family::TwoTerm, Two, Two) => {
            vec![t(a, n - 2, 0, X2), t(b, 0, m - 2, Y2), t(m1, 0, 0, Z2)]
        }
        (Family::TwoTerm, MinusOne, MinusOne) => {
            vec![t(a, n + 1, 0, YZ), t(b, 0, m + 1, XZ), t(m1, 0, 0, XY)]
        }
        (Family::TwoTerm, Half, Half) => {
            let (a2, b2) = (sq(a), sq(b));
            vec![
                t(sq(a2), 4 * n - 2, 0, X2),
                t(sq(b2), 0, 4 * m - 2, Y2),
                t(one, 0, 0, Z2),
                t(f.neg(f.mul(two, f.mul(a2, b2))), 2 * n - 1, 2 * m - 1, XY),
                t(f.neg(f.mul(two, a2)), 2 * n - 1, 0, XZ),
                t(f.neg(f.mul(two, b2)), 0, 2 * m - 1, YZ),
            ]
        }
        (Family::TwoTerm, One, Half) => vec![
            t(sq(b), 0, 2 * m - 1, YZ),
            t(f.neg(sq(a)), 2 * n - 2, 0, X2),
            t(f.mul(two, a), n - 1, 0, XZ),
            t(m1, 0, 0, Z2),
        ],
        (Family::TwoTerm, One, MinusOne) => {
            vec![t(a, n - 1, 0, XY), t(b, 0, m + 1, Z2), t(m1, 0, 0, YZ)]
        }
        (Family::TwoTerm, One, Two) => {
            vec![t(a, n - 1, 0, XZ), t(b, 0, m - 2, Y2), t(m1, 0, 0, Z2)]
        }
        (Family::TwoTerm, Two, One) => {
            vec![t(a, n - 2, 0, X2), t(b, 0, m - 1, YZ), t(m1, 0, 0, Z2)]
        }
        (Family::TwoTerm, Half, One) => vec![
            t(sq(a), 2 * n - 1, 0, XZ),
            t(f.neg(sq(b)), 0, 2 * m - 2, Y2),
            t(f.mul(two, b), 0, m - 1, YZ),
            t(m1, 0, 0, Z2),
        ],
        (Family::TwoTerm, MinusOne, One) => {
            vec![t(b, 0, m - 1, XY), t(a, n + 1, 0, Z2), t(m1, 0, 0, XZ)]
        }
        (Family::ThreeTerm, One, One) => vec![
            t(a, n - 1, m - 1, XY),
            t(b, n - 1, 0, XZ),
            t(c, 0, m - 1, YZ),
            t(m1, 0, 0, Z2),
        ],
        (Family::ThreeTerm, One, MinusOne) => vec![
            t(a, n - 1, m + 1, XZ),
            t(b, n - 1, 0, XY),
            t(c, 0, m + 1, Z2),
            t(m1, 0, 0, YZ),
        ],
        (Family::ThreeTerm, MinusOne, One) => vec![
            t(a, n + 1, m - 1, YZ),
            t(b, n + 1, 0, Z2),
            t(c, 0, m - 1, XY),
            t(m1, 0, 0, XZ),
        ],
        (Family::ThreeTerm, MinusOne, MinusOne) => vec![
            t(a, n + 1, m + 1, Z2),
            t(b, n + 1, 0, YZ),
            t(c, 0, m + 1, XZ),
            t(m1, 0, 0, XY),
        ],
        _ => return Err(Error::CaseMismatch(pat.label().as_str().to_string())),
    };
    Ok(row)
}

/// `H_P(x^q, y^q, 1)` with `P = (x, y)`, built from the conic table.
pub fn identity_from_table(curve: &Curve, label: CaseLabel) -> Result<BiPoly> {
    let pat = check_label(curve, label)?;
    let f = curve.field();
    let q = f.q();
    let row = conic_row(
        pat,
        curve.n(),
        curve.m(),
        [curve.a(), curve.b(), curve.c()],
        f,
    )?;
    Ok(BiPoly::from_terms(
        row.iter().map(|t| {
            let (dx, dy) = t.monomial.xy_degrees();
            (t.coef, t.u_exp + q * dx, t.v_exp + q * dy)
        }),
        f,
    ))
}

/// The Frobenius identity polynomial of the named case, written out term by term.
pub fn identity_polynomial(curve: &Curve, label: CaseLabel) -> Result<BiPoly> {
    use CaseLabel::*;
    let pat = check_label(curve, label)?;
    let f = curve.field();
    let (n, m, q) = (curve.n(), curve.m(), f.q());
    let (a, b, c) = (curve.a(), curve.b(), curve.c());
    let one = Fe::ONE;
    let m1 = f.neg(one);
    let two = f.from_int(2);
    let sq = |d| f.mul(d, d);
    let terms: Vec<(Fe, u32, u32)> = match pat.label() {
        FermatConicsA => vec![(a, n - 2 + 2 * q, 0), (b, 0, m - 2 + 2 * q), (m1, 0, 0)],
        FermatConicsC => vec![(a, n + 1, q), (b, q, m + 1), (m1, q, q)],
        FermatConicsB => {
            let (a2, b2) = (sq(a), sq(b));
            vec![
                (sq(a2), 4 * n - 2 + 2 * q, 0),
                (sq(b2), 0, 4 * m - 2 + 2 * q),
                (one, 0, 0),
                (
                    f.neg(f.mul(two, f.mul(a2, b2))),
                    2 * n - 1 + q,
                    2 * m - 1 + q,
                ),
                (f.neg(f.mul(two, a2)), 2 * n - 1 + q, 0),
                (f.neg(f.mul(two, b2)), 0, 2 * m - 1 + q),
            ]
        }
        FermatConicsD => vec![
            (sq(b), 0, 2 * m - 1 + q),
            (f.neg(sq(a)), 2 * n - 2 + 2 * q, 0),
            (f.mul(two, a), n - 1 + q, 0),
            (m1, 0, 0),
        ],
        FermatConicsN1M2 => vec![(a, n - 1 + q, 0), (b, 0, m - 2 + 2 * q), (m1, 0, 0)],
        FermatConicsN1Mm1 => vec![(a, n - 1 + q, q), (b, 0, m + 1), (m1, 0, q)],
        FermatConicsE => vec![(a, n - 2 + 2 * q, 0), (b, 0, m - 1 + q), (m1, 0, 0)],
        FermatConicsNhM1 => vec![
            (sq(a), 2 * n - 1 + q, 0),
            (f.neg(sq(b)), 0, 2 * m - 2 + 2 * q),
            (f.mul(two, b), 0, m - 1 + q),
            (m1, 0, 0),
        ],
        FermatConicsNm1M1 => vec![(b, q, m - 1 + q), (a, n + 1, 0), (m1, q, 0)],
        ThreetermConicsI => vec![
            (a, n - 1 + q, m - 1 + q),
            (b, n - 1 + q, 0),
            (c, 0, m - 1 + q),
            (m1, 0, 0),
        ],
        ThreetermConicsII => vec![
            (a, n - 1 + q, m + 1),
            (b, n - 1 + q, q),
            (c, 0, m + 1),
            (m1, 0, q),
        ],
        ThreetermConicsIII => vec![(a, n + 1, m + 1), (b, n + 1, q), (c, q, m + 1), (m1, q, q)],
        ThreetermConicsNm1M1 => vec![
            (a, n + 1, m - 1 + q),
            (b, n + 1, 0),
            (c, q, m - 1 + q),
            (m1, q, 0),
        ],
        _ => return Err(Error::CaseMismatch(label.as_str().to_string())),
    };
    Ok(BiPoly::from_terms(terms, f))
}

/// Whether the identity polynomial of `label` vanishes on the curve.
pub fn identity_check(curve: &Curve, label: CaseLabel) -> Result<bool> {
    let g = identity_polynomial(curve, label)?;
    FunctionField::new(curve).is_zero(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;

    fn f49() -> GaloisField {
        GaloisField::new(7, 2, None).unwrap()
    }

    fn two(f: &GaloisField, n: u32, m: u32, a: Fe, b: Fe) -> Curve {
        CurveSpec::two_term(f, n, m, a, b).validate().unwrap()
    }

    fn three(f: &GaloisField, n: u32, m: u32, a: Fe, b: Fe, c: Fe) -> Curve {
        CurveSpec::three_term(f, n, m, a, b, c).validate().unwrap()
    }

    #[test]
    fn label_strings_round_trip() {
        for l in CaseLabel::all() {
            assert_eq!(l.as_str().parse::<CaseLabel>().unwrap(), l);
        }
        assert!(matches!(
            "nope".parse::<CaseLabel>(),
            Err(Error::UnknownCase(_))
        ));
    }

    #[test]
    fn residues_are_disjoint_above_three() {
        for p in [5u32, 7, 11, 13, 17] {
            for e in 0..p {
                let hits = [e == 1, e == 2, e == p - 1, (2 * e) % p == 1];
                assert!(hits.iter().filter(|&&x| x).count() <= 1);
            }
        }
    }

    #[test]
    fn lines_examples() {
        let f9 = GaloisField::new(3, 2, None).unwrap();
        let r = classify_lines(&two(&f9, 4, 4, Fe(1), Fe(1))).unwrap();
        assert_eq!((r.frobenius, r.r), (Verdict::Nonclassical, Some(1)));
        let f7 = GaloisField::prime(7).unwrap();
        let r = classify_lines(&two(&f7, 3, 3, Fe(1), Fe(1))).unwrap();
        assert_eq!(
            (r.geometric, r.frobenius),
            (Verdict::Classical, Verdict::Classical)
        );
        let r = classify_lines(&three(&f49(), 8, 8, Fe(1), Fe(1), Fe(1))).unwrap();
        assert_eq!(
            (r.geometric, r.frobenius),
            (Verdict::Classical, Verdict::Classical)
        );
        let f2 = GaloisField::new(2, 3, None).unwrap();
        assert!(matches!(
            classify_lines(&two(&f2, 3, 3, Fe(1), Fe(1))),
            Err(Error::UnsupportedCharacteristic { .. })
        ));
    }

    #[test]
    fn conics_examples() {
        let f = f49();
        let r = classify_conics(&two(&f, 4, 4, Fe(1), Fe(1))).unwrap();
        assert_eq!(r.frobenius, Verdict::Nonclassical);
        assert_eq!(
            (r.case_label, r.r),
            (Some(CaseLabel::FermatConicsB), Some(1))
        );
        let r = classify_conics(&three(&f, 8, 8, Fe(1), Fe(1), Fe(1))).unwrap();
        assert_eq!(
            (r.case_label, r.r),
            (Some(CaseLabel::ThreetermConicsI), Some(1))
        );
        assert_eq!(r.frobenius, Verdict::Nonclassical);
        let r = classify_conics(&two(&f, 5, 5, Fe(1), Fe(1))).unwrap();
        assert_eq!(
            (r.geometric, r.frobenius),
            (Verdict::Classical, Verdict::Classical)
        );
        let f5 = GaloisField::new(5, 2, None).unwrap();
        let r = classify_conics(&two(&f5, 3, 3, Fe(1), Fe(1))).unwrap();
        assert_eq!(r.geometric, Verdict::Undetermined);
    }

    #[test]
    fn hermitian_case() {
        let f7 = GaloisField::prime(7).unwrap();
        let c = two(&f7, 6, 6, Fe(3), Fe(5));
        let r = classify_conics(&c).unwrap();
        assert_eq!(
            (r.frobenius, r.case_label),
            (Verdict::Nonclassical, Some(CaseLabel::FermatConicsC))
        );
        assert!(identity_check(&c, CaseLabel::HermitianQEqNPlus1).unwrap());
        let bad = two(&f7, 6, 6, Fe(3), Fe(3));
        assert!(!identity_check(&bad, CaseLabel::FermatConicsC).unwrap());
    }

    #[test]
    fn threeterm_q_eq_n_plus_1() {
        let f7 = GaloisField::prime(7).unwrap();
        for (a, b, c) in [(6, 6, 3), (1, 2, 5), (2, 2, 4)] {
            let t = three(&f7, 6, 6, Fe(a), Fe(b), Fe(c));
            let r = classify_conics(&t).unwrap();
            assert_eq!(
                (r.frobenius, r.case_label),
                (Verdict::Nonclassical, Some(CaseLabel::ThreetermQEqNPlus1))
            );
            assert!(identity_check(&t, CaseLabel::ThreetermQEqNPlus1).unwrap());
            assert!(
                !crate::wronskian::is_frobenius_classical_det(&t, LinearSystem::Conics).unwrap()
            );
        }
        let t = three(&f7, 6, 6, Fe(1), Fe(2), Fe(4));
        assert_eq!(classify_conics(&t).unwrap().frobenius, Verdict::Classical);
        assert!(!identity_check(&t, CaseLabel::ThreetermConicsIII).unwrap());
    }

    #[test]
    fn identity_examples() {
        let f = f49();
        let c16 = two(&f, 16, 16, Fe(1), Fe(1));
        let g = identity_polynomial(&c16, CaseLabel::FermatConicsA).unwrap();
        let expect = BiPoly::from_terms(
            [(Fe(1), 112, 0), (Fe(1), 0, 112), (f.neg(Fe::ONE), 0, 0)],
            &f,
        );
        assert_eq!(g, expect);
        assert!(identity_check(&c16, CaseLabel::FermatConicsA).unwrap());
        let c9 = two(&f, 9, 9, Fe(1), Fe(1));
        assert!(!identity_check(&c9, CaseLabel::FermatConicsA).unwrap());
        let t = three(&f, 8, 8, Fe(1), Fe(1), Fe(1));
        let g = identity_polynomial(&t, CaseLabel::ThreetermConicsI).unwrap();
        assert_eq!(g.coeff(56, 56), Fe(1));
        assert!(identity_check(&t, CaseLabel::ThreetermConicsI).unwrap());
        assert!(matches!(
            identity_polynomial(&t, CaseLabel::ThreetermConicsIII),
            Err(Error::CaseMismatch(_))
        ));
    }

    #[test]
    fn threeterm_iii_identity() {
        let f = f49();
        let fr = |d| f.frobenius(d, 1);
        let mut found = 0;
        for a in f.nonzero().filter(|&a| f.mul(a, fr(a)) == Fe::ONE) {
            for b in f.nonzero() {
                let c = f.neg(f.mul(a, fr(b)));
                if f.mul(a, fr(c)) != f.neg(b) || f.add(a, f.mul(b, c)).is_zero() {
                    continue;
                }
                let curve = three(&f, 6, 6, a, b, c);
                assert!(identity_check(&curve, CaseLabel::ThreetermConicsIII).unwrap());
                let r = classify_conics(&curve).unwrap();
                assert_eq!(r.case_label, Some(CaseLabel::ThreetermConicsIII));
                found += 1;
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn literal_identities_match_table() {
        let f = f49();
        let shapes: Vec<Curve> = vec![
            two(&f, 16, 16, Fe(3), Fe(5)),
            two(&f, 6, 6, Fe(3), Fe(5)),
            two(&f, 4, 4, Fe(3), Fe(5)),
            two(&f, 8, 4, Fe(3), Fe(5)),
            two(&f, 15, 9, Fe(3), Fe(10)),
            two(&f, 8, 6, Fe(3), Fe(5)),
            two(&f, 16, 8, Fe(3), Fe(5)),
            two(&f, 11, 8, Fe(2), Fe(5)),
            two(&f, 13, 8, Fe(3), Fe(9)),
            three(&f, 8, 8, Fe(3), Fe(5), Fe(2)),
            three(&f, 8, 6, Fe(3), Fe(5), Fe(2)),
            three(&f, 6, 6, Fe(3), Fe(5), Fe(2)),
            three(&f, 13, 8, Fe(3), Fe(5), Fe(2)),
        ];
        for c in shapes {
            let pat = Pattern::of(&c).expect("nonclassical shape");
            let label = pat.label();
            let table = identity_from_table(&c, label).unwrap();
            assert_eq!(identity_polynomial(&c, label).unwrap(), table, "{label}");
        }
    }

    #[test]
    fn lines_case_has_no_identity() {
        let f = f49();
        let c = two(&f, 8, 8, Fe(1), Fe(1));
        assert_eq!(
            classify_conics(&c).unwrap().case_label,
            Some(CaseLabel::FermatLines)
        );
        assert!(matches!(
            identity_polynomial(&c, CaseLabel::FermatLines),
            Err(Error::CaseMismatch(_))
        ));
    }

    #[test]
    fn axis_swap_invariance() {
        let f = f49();
        for (n, m) in [(4u32, 8u32), (6, 8), (5, 13)] {
            for (a, b) in [(Fe(1), Fe(1)), (Fe(3), Fe(12))] {
                let s1 = two(&f, n, m, a, b);
                let s2 = two(&f, m, n, b, a);
                for sys in [LinearSystem::Lines, LinearSystem::Conics] {
                    assert_eq!(classify(&s1, sys).unwrap(), classify(&s2, sys).unwrap());
                }
            }
        }
    }
}
