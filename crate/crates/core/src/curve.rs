//! Curve specifications, validation, genus and the geometry at infinity.

use serde::{Deserialize, Serialize};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::field::{gcd, Fe, GaloisField};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `a x^n + b y^m = 1`
    TwoTerm,
    /// `a x^n y^m + b x^n + c y^m = 1`
    ThreeTerm,
}

/// An unvalidated curve description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub family: Family,
    pub field: GaloisField,
    pub n: u32,
    pub m: u32,
    pub a: Fe,
    pub b: Fe,
    pub c: Option<Fe>,
}

impl CurveSpec {
    pub fn two_term(field: &GaloisField, n: u32, m: u32, a: Fe, b: Fe) -> Self {
        CurveSpec {
            family: Family::TwoTerm,
            field: field.clone(),
            n,
            m,
            a,
            b,
            c: None,
        }
    }

    pub fn three_term(field: &GaloisField, n: u32, m: u32, a: Fe, b: Fe, c: Fe) -> Self {
        CurveSpec {
            family: Family::ThreeTerm,
            field: field.clone(),
            n,
            m,
            a,
            b,
            c: Some(c),
        }
    }

    /// Checks the curve invariants and swaps axes so that `n >= m`.
    pub fn validate(&self) -> Result<Curve> {
        let f = &self.field;
        let mut s = self.clone();
        if s.n.min(s.m) <= 2 {
            return Err(Error::ExponentTooSmall);
        }
        for e in [s.n, s.m] {
            if e % f.p() == 0 {
                return Err(Error::CharacteristicDividesExponent {
                    p: f.p(),
                    exponent: e,
                });
            }
        }
        for e in [s.a, s.b].into_iter().chain(s.c) {
            f.elem(e.0 as u64)?;
        }
        match s.family {
            Family::TwoTerm => {
                if s.c.is_some_and(|c| !c.is_zero()) {
                    return Err(Error::DegenerateCoefficient(
                        "c is not used by the two-term family",
                    ));
                }
                s.c = None;
                if s.a.is_zero() || s.b.is_zero() {
                    return Err(Error::DegenerateCoefficient("a and b must be nonzero"));
                }
                if s.m > s.n {
                    std::mem::swap(&mut s.n, &mut s.m);
                    std::mem::swap(&mut s.a, &mut s.b);
                }
            }
            Family::ThreeTerm => {
                let c = s.c.ok_or(Error::DegenerateCoefficient("c is required"))?;
                if s.a.is_zero() || s.b.is_zero() || c.is_zero() {
                    return Err(Error::DegenerateCoefficient("a, b and c must be nonzero"));
                }
                if f.add(s.a, f.mul(s.b, c)).is_zero() {
                    return Err(Error::DegenerateCoefficient("c = -a/b"));
                }
                if s.m > s.n {
                    std::mem::swap(&mut s.n, &mut s.m);
                    s.c = Some(s.b);
                    s.b = c;
                }
            }
        }
        Ok(Curve { spec: s })
    }
}

/// A validated curve with `n >= m > 2` and `p ∤ nm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    spec: CurveSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfinityLocation {
    /// (1:0:0)
    #[serde(rename = "P_inf_x")]
    PInfX,
    /// (0:1:0)
    #[serde(rename = "P_inf_y")]
    PInfY,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub location: InfinityLocation,
    pub multiplicity: u32,
    pub rational_branches: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityProfile {
    pub singular_points: Vec<SingularPoint>,
    pub smooth_infinity_points: u64,
    pub supported: bool,
}

impl InfinityProfile {
    /// Rational places of the smooth model lying over the line at infinity.
    pub fn rational_places(&self) -> u64 {
        self.smooth_infinity_points
            + self
                .singular_points
                .iter()
                .map(|s| s.rational_branches)
                .sum::<u64>()
    }
}

impl Curve {
    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }
    pub fn family(&self) -> Family {
        self.spec.family
    }
    pub fn field(&self) -> &GaloisField {
        &self.spec.field
    }
    pub fn n(&self) -> u32 {
        self.spec.n
    }
    pub fn m(&self) -> u32 {
        self.spec.m
    }
    pub fn a(&self) -> Fe {
        self.spec.a
    }
    pub fn b(&self) -> Fe {
        self.spec.b
    }
    /// Zero for the two-term family.
    pub fn c(&self) -> Fe {
        self.spec.c.unwrap_or(Fe::ZERO)
    }

    /// The defining polynomial `f(x, y)` with `f = 0` the affine curve.
    pub fn polynomial(&self) -> BiPoly {
        let f = self.field();
        let (n, m) = (self.n(), self.m());
        let minus_one = f.neg(Fe::ONE);
        match self.family() {
            Family::TwoTerm => {
                BiPoly::from_terms([(self.a(), n, 0), (self.b(), 0, m), (minus_one, 0, 0)], f)
            }
            Family::ThreeTerm => BiPoly::from_terms(
                [
                    (self.a(), n, m),
                    (self.b(), n, 0),
                    (self.c(), 0, m),
                    (minus_one, 0, 0),
                ],
                f,
            ),
        }
    }

    /// `(N, L)` with `y^m = N(x) / L(x)` in the function field.
    pub fn y_relation(&self) -> (Poly, Poly) {
        let f = self.field();
        let n = self.n() as usize;
        match self.family() {
            Family::TwoTerm => (
                Poly::one().sub(&Poly::monomial(self.a(), n), f),
                Poly::constant(self.b()),
            ),
            Family::ThreeTerm => (
                Poly::one().sub(&Poly::monomial(self.b(), n), f),
                Poly::monomial(self.a(), n).add(&Poly::constant(self.c()), f),
            ),
        }
    }

    pub fn contains(&self, u: Fe, v: Fe) -> bool {
        let f = self.field();
        let un = f.pow(u, self.n() as u64);
        let vm = f.pow(v, self.m() as u64);
        let lhs = match self.family() {
            Family::TwoTerm => f.add(f.mul(self.a(), un), f.mul(self.b(), vm)),
            Family::ThreeTerm => f.add(
                f.mul(f.add(f.mul(self.a(), vm), self.b()), un),
                f.mul(self.c(), vm),
            ),
        };
        lhs == Fe::ONE
    }

    pub fn genus(&self) -> u64 {
        let (n, m) = (self.n() as u64, self.m() as u64);
        match self.family() {
            Family::TwoTerm => (m * n + 2 - m - n - gcd(m, n)) / 2,
            Family::ThreeTerm => (n - 1) * (m - 1),
        }
    }

    pub fn infinity_profile(&self) -> InfinityProfile {
        let f = self.field();
        let (n, m) = (self.n(), self.m());
        let ratio = |num: Fe, den: Fe| f.neg(f.div(num, den).expect("nonzero coefficient"));
        match self.family() {
            Family::TwoTerm if n == m => InfinityProfile {
                singular_points: Vec::new(),
                smooth_infinity_points: f.root_count(n as u64, ratio(self.b(), self.a())),
                supported: true,
            },
            Family::TwoTerm if n % m == 0 => InfinityProfile {
                // chart u = 1/x, w = y/x^(n/m): a + b w^m = u^n, branches at u = 0
                singular_points: vec![SingularPoint {
                    location: InfinityLocation::PInfY,
                    multiplicity: n - m,
                    rational_branches: f.root_count(m as u64, ratio(self.a(), self.b())),
                }],
                smooth_infinity_points: 0,
                supported: true,
            },
            Family::TwoTerm => InfinityProfile {
                singular_points: Vec::new(),
                smooth_infinity_points: 0,
                supported: false,
            },
            Family::ThreeTerm => InfinityProfile {
                singular_points: vec![
                    SingularPoint {
                        location: InfinityLocation::PInfX,
                        multiplicity: m,
                        rational_branches: f.root_count(m as u64, ratio(self.b(), self.a())),
                    },
                    SingularPoint {
                        location: InfinityLocation::PInfY,
                        multiplicity: n,
                        rational_branches: f.root_count(n as u64, ratio(self.c(), self.a())),
                    },
                ],
                smooth_infinity_points: 0,
                supported: true,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f49() -> GaloisField {
        GaloisField::new(7, 2, None).unwrap()
    }

    #[test]
    fn validation_examples() {
        let f = f49();
        assert!(CurveSpec::two_term(&f, 8, 4, Fe::ONE, Fe::ONE)
            .validate()
            .is_ok());
        let f7 = GaloisField::prime(7).unwrap();
        assert!(matches!(
            CurveSpec::three_term(&f7, 3, 3, Fe(1), Fe(1), Fe(6)).validate(),
            Err(Error::DegenerateCoefficient(_))
        ));
        assert!(matches!(
            CurveSpec::two_term(&f7, 7, 3, Fe(1), Fe(1)).validate(),
            Err(Error::CharacteristicDividesExponent { .. })
        ));
        assert_eq!(
            CurveSpec::two_term(&f7, 2, 3, Fe(1), Fe(1)).validate(),
            Err(Error::ExponentTooSmall)
        );
    }

    #[test]
    fn axis_swap_is_idempotent() {
        let f = f49();
        let s = CurveSpec::three_term(&f, 4, 9, Fe(2), Fe(3), Fe(5));
        let v = s.validate().unwrap();
        assert_eq!((v.n(), v.m(), v.b(), v.c()), (9, 4, Fe(5), Fe(3)));
        assert_eq!(v.spec().validate().unwrap(), v);
        let t = CurveSpec::two_term(&f, 4, 9, Fe(2), Fe(3))
            .validate()
            .unwrap();
        assert_eq!((t.n(), t.m(), t.a(), t.b()), (9, 4, Fe(3), Fe(2)));
        assert_eq!(t.spec().validate().unwrap(), t);
    }

    #[test]
    fn genus_examples() {
        let f = GaloisField::prime(11).unwrap();
        let g = |n, m| {
            CurveSpec::two_term(&f, n, m, Fe(1), Fe(1))
                .validate()
                .unwrap()
                .genus()
        };
        assert_eq!(g(3, 3), 1);
        assert_eq!(g(6, 6), 10);
        for n in 3..=20u32 {
            if n % 11 != 0 {
                assert_eq!(g(n, n) as u32, (n - 1) * (n - 2) / 2);
            }
        }
        let t = CurveSpec::three_term(&f49(), 8, 8, Fe(1), Fe(1), Fe(1))
            .validate()
            .unwrap();
        assert_eq!(t.genus(), 49);
    }

    #[test]
    fn infinity_examples() {
        let f = f49();
        let c = CurveSpec::two_term(&f, 8, 4, Fe(1), Fe(1))
            .validate()
            .unwrap();
        let prof = c.infinity_profile();
        assert_eq!(prof.singular_points[0].rational_branches, 4);
        let t = CurveSpec::three_term(&f, 8, 8, Fe(1), Fe(1), Fe(1))
            .validate()
            .unwrap();
        let prof = t.infinity_profile();
        assert_eq!(prof.singular_points.len(), 2);
        assert!(prof
            .singular_points
            .iter()
            .all(|s| s.rational_branches == 8));
        let u = CurveSpec::two_term(&f, 9, 6, Fe(1), Fe(1))
            .validate()
            .unwrap();
        assert!(!u.infinity_profile().supported);
        for s in prof.singular_points {
            assert!(s.rational_branches <= s.multiplicity as u64);
        }
    }

    #[test]
    fn relation_matches_curve() {
        let f = f49();
        let t = CurveSpec::three_term(&f, 5, 4, Fe(3), Fe(8), Fe(11))
            .validate()
            .unwrap();
        let (num, den) = t.y_relation();
        for u in f.elements() {
            for v in f.elements() {
                if t.contains(u, v) {
                    let lhs = f.mul(f.pow(v, 4), den.eval(u, &f));
                    assert_eq!(lhs, num.eval(u, &f));
                }
            }
        }
    }
}
