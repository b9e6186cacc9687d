//! Arithmetic in the function field F_q(x)[y]/(curve).
//!
//! Elements are stored as `Σ_{j<m} y^j P_j(x) / D(x)` using the relation
//! `y^m = N(x) / L(x)` of the attached curve.

use std::collections::BTreeMap;

use crate::bipoly::BiPoly;
use crate::curve::{Curve, Family};
use crate::error::{Error, Result};
use crate::field::{Fe, GaloisField};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FfElem {
    pub numer: Vec<Poly>,
    pub denom: Poly,
}

impl FfElem {
    pub fn is_zero(&self) -> bool {
        self.numer.iter().all(Poly::is_zero)
    }

    /// Numerator as a bivariate polynomial of y-degree < m.
    pub fn numer_bipoly(&self) -> BiPoly {
        BiPoly::from_y_coefficients(&self.numer)
    }
}

#[derive(Clone, Debug)]
pub struct FunctionField {
    curve: Curve,
    rel_num: Poly,
    rel_den: Poly,
    /// `y'/y = r_num / r_den`
    r_num: Poly,
    r_den: Poly,
    cap: usize,
}

impl FunctionField {
    pub fn new(curve: &Curve) -> Self {
        let f = curve.field();
        let (n, m) = (curve.n(), curve.m());
        let (rel_num, rel_den) = curve.y_relation();
        let q = f.q() as usize;
        let cap = 10 * q * (n as usize).div_ceil(m as usize) + 10 * n as usize;
        let ratio = f
            .div(f.from_int(n as i64), f.from_int(m as i64))
            .unwrap_or(Fe::ZERO);
        let (lead, r_den) = match curve.family() {
            Family::TwoTerm => (curve.a(), rel_num.clone()),
            Family::ThreeTerm => (
                f.add(curve.a(), f.mul(curve.b(), curve.c())),
                rel_num.mul(&rel_den, f),
            ),
        };
        let r_num = Poly::monomial(f.neg(f.mul(ratio, lead)), n as usize - 1);
        FunctionField {
            curve: curve.clone(),
            rel_num,
            rel_den,
            r_num,
            r_den,
            cap,
        }
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn degree_cap(&self) -> usize {
        self.cap
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn field(&self) -> &GaloisField {
        self.curve.field()
    }

    fn m(&self) -> usize {
        self.curve.m() as usize
    }

    /// `(N, L)` with `y^m = N/L`.
    pub fn relation(&self) -> (&Poly, &Poly) {
        (&self.rel_num, &self.rel_den)
    }

    /// `(R_num, R_den)` with `dy/dx = y · R_num / R_den`.
    pub fn log_derivative(&self) -> (&Poly, &Poly) {
        (&self.r_num, &self.r_den)
    }

    pub fn zero(&self) -> FfElem {
        FfElem {
            numer: vec![Poly::zero(); self.m()],
            denom: Poly::one(),
        }
    }

    pub fn constant(&self, c: Fe) -> FfElem {
        self.from_x_poly(Poly::constant(c))
    }

    pub fn from_x_poly(&self, p: Poly) -> FfElem {
        let mut e = self.zero();
        e.numer[0] = p;
        e
    }

    pub fn x(&self) -> FfElem {
        self.from_x_poly(Poly::x())
    }

    pub fn y(&self) -> FfElem {
        self.reduce_y_terms(&[(1, Poly::one())])
            .expect("degree 1 fits any cap")
    }

    /// `x^i y^j`
    pub fn monomial(&self, i: u32, j: u32) -> Result<FfElem> {
        self.reduce_y_terms(&[(j as u64, Poly::monomial(Fe::ONE, i as usize))])
    }

    fn check_cap(&self, degree: usize) -> Result<()> {
        if degree > self.cap {
            return Err(Error::DegreeCapExceeded {
                degree,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Reduces `Σ y^j P_j(x)` to canonical form.
    pub fn reduce_y_terms(&self, terms: &[(u64, Poly)]) -> Result<FfElem> {
        let f = self.field();
        let m = self.m() as u64;
        let kmax = terms
            .iter()
            .filter(|t| !t.1.is_zero())
            .map(|t| t.0 / m)
            .max()
            .unwrap_or(0);
        let n = self.curve.n() as usize;
        for (j, p) in terms {
            self.check_cap(p.degree() + n * (j / m) as usize)?;
        }
        let mut numer = vec![Poly::zero(); m as usize];
        for (j, p) in terms {
            if p.is_zero() {
                continue;
            }
            let k = j / m;
            let t = p
                .mul(&self.rel_num.pow(k, f), f)
                .mul(&self.rel_den.pow(kmax - k, f), f);
            numer[(j % m) as usize].add_assign(&t, f);
        }
        let denom = self.rel_den.pow(kmax, f);
        Ok(self.normalize(FfElem { numer, denom }))
    }

    pub fn reduce(&self, g: &BiPoly) -> Result<FfElem> {
        let terms: Vec<(u64, Poly)> = g
            .y_coefficients()
            .into_iter()
            .map(|(j, p)| (j as u64, p))
            .collect();
        self.reduce_y_terms(&terms)
    }

    /// Decides `Σ y^j P_j(x) = 0` without building a common denominator.
    pub fn y_terms_vanish(&self, terms: &[(u64, Poly)]) -> Result<bool> {
        let f = self.field();
        let m = self.m() as u64;
        let n = self.curve.n() as usize;
        let mut classes: BTreeMap<u64, Vec<(u64, &Poly)>> = BTreeMap::new();
        for (j, p) in terms {
            if !p.is_zero() {
                classes.entry(j % m).or_default().push((j / m, p));
            }
        }
        for group in classes.values() {
            let kmin = group.iter().map(|t| t.0).min().unwrap_or(0);
            let kmax = group.iter().map(|t| t.0).max().unwrap_or(0);
            let mut acc = Poly::zero();
            for &(k, p) in group {
                self.check_cap(p.degree() + n * (k - kmin) as usize)?;
                let t = p
                    .mul(&self.rel_num.pow(k - kmin, f), f)
                    .mul(&self.rel_den.pow(kmax - k, f), f);
                acc.add_assign(&t, f);
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero(&self, g: &BiPoly) -> Result<bool> {
        let terms: Vec<(u64, Poly)> = g
            .y_coefficients()
            .into_iter()
            .map(|(j, p)| (j as u64, p))
            .collect();
        self.y_terms_vanish(&terms)
    }

    /// Divides out the common content and makes the denominator monic.
    pub fn normalize(&self, mut e: FfElem) -> FfElem {
        let f = self.field();
        if e.is_zero() {
            return self.zero();
        }
        if e.denom.degree() > 0 {
            let mut g = e.denom.clone();
            for p in e.numer.iter().filter(|p| !p.is_zero()) {
                if g.degree() == 0 {
                    break;
                }
                g = g.gcd(p, f);
            }
            if g.degree() > 0 {
                e.denom = e.denom.exact_div(&g, f).expect("gcd divides");
                for p in e.numer.iter_mut() {
                    *p = p.exact_div(&g, f).expect("gcd divides");
                }
            }
        }
        let inv = f.inv(e.denom.lc()).expect("nonzero denominator");
        if inv != Fe::ONE {
            e.denom = e.denom.scale(inv, f);
            for p in e.numer.iter_mut() {
                *p = p.scale(inv, f);
            }
        }
        e
    }

    pub fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let f = self.field();
        if a.denom == b.denom {
            let numer = a
                .numer
                .iter()
                .zip(&b.numer)
                .map(|(x, y)| x.add(y, f))
                .collect();
            return self.normalize(FfElem {
                numer,
                denom: a.denom.clone(),
            });
        }
        let numer = a
            .numer
            .iter()
            .zip(&b.numer)
            .map(|(x, y)| x.mul(&b.denom, f).add(&y.mul(&a.denom, f), f))
            .collect();
        self.normalize(FfElem {
            numer,
            denom: a.denom.mul(&b.denom, f),
        })
    }

    pub fn neg(&self, a: &FfElem) -> FfElem {
        let f = self.field();
        FfElem {
            numer: a.numer.iter().map(|p| p.neg(f)).collect(),
            denom: a.denom.clone(),
        }
    }

    pub fn sub(&self, a: &FfElem, b: &FfElem) -> FfElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &FfElem, s: Fe) -> FfElem {
        let f = self.field();
        let numer = a.numer.iter().map(|p| p.scale(s, f)).collect();
        self.normalize(FfElem {
            numer,
            denom: a.denom.clone(),
        })
    }

    pub fn mul(&self, a: &FfElem, b: &FfElem) -> Result<FfElem> {
        let f = self.field();
        let mut prod: Vec<(u64, Poly)> = Vec::new();
        for (i, p) in a.numer.iter().enumerate().filter(|t| !t.1.is_zero()) {
            for (j, r) in b.numer.iter().enumerate().filter(|t| !t.1.is_zero()) {
                prod.push(((i + j) as u64, p.mul(r, f)));
            }
        }
        let red = self.reduce_y_terms(&prod)?;
        let denom = red.denom.mul(&a.denom, f).mul(&b.denom, f);
        Ok(self.normalize(FfElem {
            numer: red.numer,
            denom,
        }))
    }

    /// Square-and-multiply power.
    pub fn pow(&self, a: &FfElem, mut e: u64) -> Result<FfElem> {
        let mut result = self.constant(Fe::ONE);
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(result)
    }

    /// `a^q` via `P(x)^q = P(x^q)` on F_q-coefficients.
    pub fn q_power(&self, a: &FfElem) -> Result<FfElem> {
        let f = self.field();
        let q = f.q() as usize;
        let terms: Vec<(u64, Poly)> = a
            .numer
            .iter()
            .enumerate()
            .map(|(j, p)| ((j * q) as u64, p.inflate(q)))
            .collect();
        let red = self.reduce_y_terms(&terms)?;
        let denom = red.denom.mul(&a.denom.inflate(q), f);
        Ok(self.normalize(FfElem {
            numer: red.numer,
            denom,
        }))
    }

    /// `dy/dx`
    pub fn dydx(&self) -> Result<FfElem> {
        let p = self.field().p();
        for e in [self.curve.n(), self.curve.m()] {
            if e % p == 0 {
                return Err(Error::InseparableVariable(e));
            }
        }
        let mut numer = vec![Poly::zero(); self.m()];
        numer[1] = self.r_num.clone();
        Ok(self.normalize(FfElem {
            numer,
            denom: self.r_den.clone(),
        }))
    }

    /// Ordinary derivative with respect to x.
    pub fn derivative(&self, a: &FfElem) -> FfElem {
        let f = self.field();
        let d = &a.denom;
        let dd = d.derivative(f);
        let numer = a
            .numer
            .iter()
            .enumerate()
            .map(|(j, p)| {
                let quot = p.derivative(f).mul(d, f).sub(&p.mul(&dd, f), f);
                let lhs = quot.mul(&self.r_den, f);
                let rhs = self
                    .r_num
                    .mul(p, f)
                    .mul(d, f)
                    .scale(f.from_int(j as i64), f);
                lhs.add(&rhs, f)
            })
            .collect();
        let denom = d.mul(d, f).mul(&self.r_den, f);
        self.normalize(FfElem { numer, denom })
    }

    /// Hasse derivative of order `k`, as the k-th derivative over `k!`.
    pub fn hasse(&self, a: &FfElem, k: u32) -> Result<FfElem> {
        let f = self.field();
        if k >= f.p() || k > 5 {
            return Err(Error::OrderTooHigh(k));
        }
        let mut e = a.clone();
        let mut fact = Fe::ONE;
        for i in 1..=k {
            e = self.derivative(&e);
            fact = f.mul(fact, f.from_int(i as i64));
        }
        Ok(self.scale(&e, f.inv(fact)?))
    }

    pub fn eq(&self, a: &FfElem, b: &FfElem) -> bool {
        self.sub(a, b).is_zero()
    }

    /// Value at an affine point of the curve, `None` at a pole.
    pub fn eval(&self, a: &FfElem, u: Fe, v: Fe) -> Option<Fe> {
        let f = self.field();
        let d = a.denom.eval(u, f);
        if d.is_zero() {
            return None;
        }
        let mut acc = Fe::ZERO;
        for p in a.numer.iter().rev() {
            acc = f.add(f.mul(acc, v), p.eval(u, f));
        }
        f.div(acc, d).ok()
    }
}
