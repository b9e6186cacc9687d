//! Wronskian and Frobenius-Wronskian determinants for lines and conics,
//! osculating conics and the Frobenius incidence scan.

use serde::{Deserialize, Serialize};

use crate::classify::{check_label, conic_row, CaseLabel, ConicTerm};
use crate::curve::{Curve, Family};
use crate::error::{Error, Result};
use crate::field::{gcd, Fe, FieldEmbedding, GaloisField};
use crate::funcfield::{FfElem, FunctionField};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearSystem {
    Lines,
    Conics,
}

const LINE_BASIS: [(u32, u32); 3] = [(0, 0), (1, 0), (0, 1)];
const CONIC_BASIS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];

impl LinearSystem {
    /// Projective dimension `M` of the system.
    pub fn dimension(self) -> usize {
        match self {
            LinearSystem::Lines => 2,
            LinearSystem::Conics => 5,
        }
    }

    /// Monomials `x^i y^j` spanning the system.
    pub fn basis(self) -> &'static [(u32, u32)] {
        match self {
            LinearSystem::Lines => &LINE_BASIS,
            LinearSystem::Conics => &CONIC_BASIS,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LinearSystem::Lines => "lines",
            LinearSystem::Conics => "conics",
        }
    }
}

impl std::str::FromStr for LinearSystem {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lines" => Ok(LinearSystem::Lines),
            "conics" => Ok(LinearSystem::Conics),
            _ => Err(format!("unknown linear system {s}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSystem {
    pub system: LinearSystem,
    pub functions: Vec<(u32, u32)>,
    pub dimension: usize,
}

impl BasisSystem {
    pub fn new(system: LinearSystem) -> Self {
        BasisSystem {
            system,
            functions: system.basis().to_vec(),
            dimension: system.dimension(),
        }
    }
}

/// `det_classical` / `det_frobenius` are true when the corresponding determinant is nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetReport {
    pub det_classical: bool,
    pub det_frobenius: bool,
}

fn check_characteristic(curve: &Curve, system: LinearSystem) -> Result<()> {
    let p = curve.field().p();
    if p as usize <= system.dimension() {
        return Err(Error::UnsupportedCharacteristic { p, system });
    }
    Ok(())
}

/// `P_k[j]` with `D^(k)(x^i y^e) = y^e P_k / Q^k`, for `k = 0..count`.
pub fn derivative_rows(ff: &FunctionField, basis: &[(u32, u32)], count: usize) -> Vec<Vec<Poly>> {
    let f = ff.field();
    let (r_num, q) = ff.log_derivative();
    let dq = q.derivative(f);
    let mut rows = vec![basis
        .iter()
        .map(|&(i, _)| Poly::monomial(Fe::ONE, i as usize))
        .collect::<Vec<_>>()];
    for k in 1..count {
        let prev = &rows[k - 1];
        let scale = f.inv(f.from_int(k as i64)).expect("k < p");
        let kk = f.from_int(k as i64 - 1);
        let next = prev
            .iter()
            .zip(basis)
            .map(|(pk, &(_, e))| {
                if pk.is_zero() {
                    return Poly::zero();
                }
                let mut t = pk.derivative(f).mul(q, f);
                if e > 0 {
                    t.add_assign(&r_num.mul(pk, f).scale(f.from_int(e as i64), f), f);
                }
                if k > 1 {
                    t = t.sub(&pk.mul(&dq, f).scale(kk, f), f);
                }
                t.scale(scale, f)
            })
            .collect();
        rows.push(next);
    }
    rows
}

trait DetRing {
    type E: Clone;
    fn one(&self) -> Self::E;
    fn is_zero(&self, e: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Result<Self::E>;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
}

struct PolyRing<'a>(&'a GaloisField);

impl DetRing for PolyRing<'_> {
    type E = Poly;
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn is_zero(&self, e: &Poly) -> bool {
        e.is_zero()
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(a.mul(b, self.0))
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b, self.0)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg(self.0)
    }
}

struct FfRing<'a>(&'a FunctionField);

impl DetRing for FfRing<'_> {
    type E = FfElem;
    fn one(&self) -> FfElem {
        self.0.constant(Fe::ONE)
    }
    fn is_zero(&self, e: &FfElem) -> bool {
        e.is_zero()
    }
    fn mul(&self, a: &FfElem, b: &FfElem) -> Result<FfElem> {
        self.0.mul(a, b)
    }
    fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        self.0.add(a, b)
    }
    fn neg(&self, a: &FfElem) -> FfElem {
        self.0.neg(a)
    }
}

/// `minors[S]` is the determinant of rows `0..|S|` restricted to the columns in `S`.
fn subset_minors<R: DetRing>(ring: &R, rows: &[Vec<R::E>]) -> Result<Vec<Option<R::E>>> {
    let cols = rows[0].len();
    let mut minors: Vec<Option<R::E>> = vec![None; 1 << cols];
    minors[0] = Some(ring.one());
    for mask in 1usize..(1 << cols) {
        let t = mask.count_ones() as usize;
        if t > rows.len() {
            continue;
        }
        let row = &rows[t - 1];
        let mut acc: Option<R::E> = None;
        for c in (0..cols).filter(|c| mask >> c & 1 == 1) {
            let Some(sub) = &minors[mask ^ (1 << c)] else {
                continue;
            };
            if ring.is_zero(&row[c]) {
                continue;
            }
            let mut term = ring.mul(&row[c], sub)?;
            if (mask >> (c + 1)).count_ones() % 2 == 1 {
                term = ring.neg(&term);
            }
            acc = Some(match acc {
                None => term,
                Some(a) => ring.add(&a, &term),
            });
        }
        minors[mask] = acc.filter(|a| !ring.is_zero(a));
    }
    Ok(minors)
}

/// Exact determinants from the polynomial rows.
pub fn determinants_exact(curve: &Curve, system: LinearSystem) -> Result<DetReport> {
    check_characteristic(curve, system)?;
    let ff = FunctionField::new(curve);
    let basis = system.basis();
    let rows = derivative_rows(&ff, basis, system.dimension() + 1);
    let minors = subset_minors(&PolyRing(ff.field()), &rows)?;
    let full = (1usize << basis.len()) - 1;
    Ok(DetReport {
        det_classical: minors[full].is_some(),
        det_frobenius: !frobenius_vanishes(&ff, basis, &minors)?,
    })
}

/// Expands the Frobenius determinant along its `q`-power row.
fn frobenius_vanishes(
    ff: &FunctionField,
    basis: &[(u32, u32)],
    minors: &[Option<Poly>],
) -> Result<bool> {
    let f = ff.field();
    let q = f.q() as u64;
    let full = (1usize << basis.len()) - 1;
    let total_e: u64 = basis.iter().map(|b| b.1 as u64).sum();
    let mut terms = Vec::new();
    for (j, &(i, e)) in basis.iter().enumerate() {
        let Some(minor) = &minors[full ^ (1 << j)] else {
            continue;
        };
        let mut t = minor.shift((i as u64 * q) as usize);
        if j % 2 == 1 {
            t = t.neg(f);
        }
        terms.push((e as u64 * (q - 1) + total_e, t));
    }
    // the expansion has bounded size, so the guard only needs to admit it
    let m = ff.curve().m() as u64;
    let spread = terms.iter().map(|t| t.0 / m).max().unwrap_or(0)
        - terms.iter().map(|t| t.0 / m).min().unwrap_or(0);
    let need = terms.iter().map(|t| t.1.degree()).max().unwrap_or(0)
        + ff.curve().n() as usize * spread as usize;
    if need > ff.degree_cap() {
        return ff.clone().with_degree_cap(need).y_terms_vanish(&terms);
    }
    ff.y_terms_vanish(&terms)
}

/// Determinants computed directly in the function field with generic Hasse derivatives.
pub fn determinants_generic(curve: &Curve, system: LinearSystem) -> Result<DetReport> {
    check_characteristic(curve, system)?;
    let ff = FunctionField::new(curve);
    let m = system.dimension();
    let phis: Vec<FfElem> = system
        .basis()
        .iter()
        .map(|&(i, j)| ff.monomial(i, j))
        .collect::<Result<_>>()?;
    let mut rows: Vec<Vec<FfElem>> = Vec::new();
    for k in 0..=m {
        rows.push(
            phis.iter()
                .map(|p| ff.hasse(p, k as u32))
                .collect::<Result<_>>()?,
        );
    }
    let ring = FfRing(&ff);
    let full = (1usize << phis.len()) - 1;
    let geo = subset_minors(&ring, &rows)?;
    let mut frows = vec![phis
        .iter()
        .map(|p| ff.q_power(p))
        .collect::<Result<Vec<_>>>()?];
    frows.extend(rows[..m].iter().cloned());
    let frob = subset_minors(&ring, &frows)?;
    Ok(DetReport {
        det_classical: geo[full].is_some(),
        det_frobenius: frob[full].is_some(),
    })
}

fn numeric_det(f: &GaloisField, mut a: Vec<Vec<Fe>>) -> Fe {
    let n = a.len();
    let mut det = Fe::ONE;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Fe::ZERO;
        };
        if piv != col {
            a.swap(piv, col);
            det = f.neg(det);
        }
        let inv = f.inv(a[col][col]).expect("nonzero pivot");
        det = f.mul(det, a[col][col]);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            let factor = f.mul(row[col], inv);
            if factor.is_zero() {
                continue;
            }
            for (x, &pv) in row.iter_mut().zip(pivot_row).skip(col) {
                *x = f.sub(*x, f.mul(factor, pv));
            }
        }
    }
    det
}

/// All `v` with `v^m = w` in `f`.
pub fn mth_roots(f: &GaloisField, m: u64, w: Fe) -> Vec<Fe> {
    let Some(l) = f.log(w) else {
        return vec![Fe::ZERO];
    };
    let ord = f.q() as u64 - 1;
    let g = gcd(m, ord);
    if l as u64 % g != 0 {
        return Vec::new();
    }
    let sub = ord / g;
    let inv = mod_inverse((m / g) % sub.max(1), sub.max(1));
    let t0 = (l as u64 / g) % sub.max(1) * inv % sub.max(1);
    (0..g).map(|i| f.exp(t0 + i * sub)).collect()
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    t0.rem_euclid(m as i128) as u64
}

/// Coefficients of the curve embedded in a larger field.
struct Embedded {
    f: GaloisField,
    n: u64,
    m: u64,
    family: Family,
    a: Fe,
    b: Fe,
    c: Fe,
}

impl Embedded {
    fn new(curve: &Curve, emb: &FieldEmbedding) -> Self {
        Embedded {
            f: emb.big().clone(),
            n: curve.n() as u64,
            m: curve.m() as u64,
            family: curve.family(),
            a: emb.embed(curve.a()),
            b: emb.embed(curve.b()),
            c: emb.embed(curve.c()),
        }
    }

    /// `y^m` at abscissa `u`, `None` where the curve has no finite point.
    fn y_power(&self, u: Fe) -> Option<Fe> {
        let f = &self.f;
        let un = f.pow(u, self.n);
        match self.family {
            Family::TwoTerm => f.div(f.sub(Fe::ONE, f.mul(self.a, un)), self.b).ok(),
            Family::ThreeTerm => f
                .div(
                    f.sub(Fe::ONE, f.mul(self.b, un)),
                    f.add(f.mul(self.a, un), self.c),
                )
                .ok(),
        }
    }

    /// Affine points with `uv != 0` whose abscissa is in the sequence `us`.
    fn points<'a>(
        &'a self,
        us: impl Iterator<Item = Fe> + 'a,
    ) -> impl Iterator<Item = (Fe, Fe)> + 'a {
        us.filter(|u| !u.is_zero()).flat_map(move |u| {
            let vs = self
                .y_power(u)
                .map(|w| mth_roots(&self.f, self.m, w))
                .unwrap_or_default();
            vs.into_iter().filter(|v| !v.is_zero()).map(move |v| (u, v))
        })
    }
}

/// Determinant oracle that first looks for a nonvanishing certificate at
/// points over F_{q^2} and falls back to the exact symbolic test.
#[derive(Clone, Debug)]
pub struct WronskianOracle {
    emb: FieldEmbedding,
    probes: usize,
}

impl WronskianOracle {
    pub fn new(base: &GaloisField) -> Result<Self> {
        let big = GaloisField::new(base.p() as u64, 2 * base.h(), None)?;
        Ok(WronskianOracle {
            emb: FieldEmbedding::new(base, &big)?,
            probes: 4,
        })
    }

    pub fn with_probes(mut self, probes: usize) -> Self {
        self.probes = probes;
        self
    }

    pub fn base(&self) -> &GaloisField {
        self.emb.small()
    }

    pub fn determinants(&self, curve: &Curve, system: LinearSystem) -> Result<DetReport> {
        check_characteristic(curve, system)?;
        if curve.field() != self.emb.small() {
            return Err(Error::FieldMismatch);
        }
        let ff = FunctionField::new(curve);
        let basis = system.basis();
        let mdim = system.dimension();
        let rows = derivative_rows(&ff, basis, mdim + 1);
        let big = self.emb.big();
        let q = curve.field().q() as u64;
        let emb = Embedded::new(curve, &self.emb);
        let eval = |p: &Poly, u: Fe| {
            p.coeffs().iter().rev().fold(Fe::ZERO, |acc, &c| {
                big.add(big.mul(acc, u), self.emb.embed(c))
            })
        };
        let (_, qpoly) = ff.log_derivative();
        let us = (0..)
            .map(|i: u64| big.exp(11 * i + 5))
            .take(4 * self.probes + 8);
        let pts: Vec<(Fe, Fe)> = emb
            .points(us.filter(|&u| big.pow(u, q) != u && !eval(qpoly, u).is_zero()))
            .take(self.probes)
            .collect();
        let mut geo_nonzero = false;
        let mut frob_nonzero = false;
        for &(u, v) in &pts {
            let vals: Vec<Vec<Fe>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(basis)
                        .map(|(p, &(_, e))| big.mul(eval(p, u), big.pow(v, e as u64)))
                        .collect()
                })
                .collect();
            if !geo_nonzero && !numeric_det(big, vals.clone()).is_zero() {
                geo_nonzero = true;
            }
            if !frob_nonzero {
                let first: Vec<Fe> = basis
                    .iter()
                    .map(|&(i, e)| big.pow(big.mul(big.pow(u, i as u64), big.pow(v, e as u64)), q))
                    .collect();
                let mut mat = vec![first];
                mat.extend(vals[..mdim].iter().cloned());
                frob_nonzero = !numeric_det(big, mat).is_zero();
            }
            if geo_nonzero && frob_nonzero {
                return Ok(DetReport {
                    det_classical: true,
                    det_frobenius: true,
                });
            }
        }
        let minors = subset_minors(&PolyRing(ff.field()), &rows)?;
        let full = (1usize << basis.len()) - 1;
        let det_classical = geo_nonzero || minors[full].is_some();
        let det_frobenius = frob_nonzero || !frobenius_vanishes(&ff, basis, &minors)?;
        Ok(DetReport {
            det_classical,
            det_frobenius,
        })
    }
}

pub fn determinants(curve: &Curve, system: LinearSystem) -> Result<DetReport> {
    WronskianOracle::new(curve.field())?.determinants(curve, system)
}

pub fn is_classical_det(curve: &Curve, system: LinearSystem) -> Result<bool> {
    Ok(determinants(curve, system)?.det_classical)
}

pub fn is_frobenius_classical_det(curve: &Curve, system: LinearSystem) -> Result<bool> {
    Ok(determinants(curve, system)?.det_frobenius)
}

/// Coefficients of `X², Y², Z², XY, XZ, YZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conic {
    pub coeffs: [Fe; 6],
}

impl Conic {
    pub fn eval(&self, x: Fe, y: Fe, z: Fe, f: &GaloisField) -> Fe {
        let mons = [
            f.mul(x, x),
            f.mul(y, y),
            f.mul(z, z),
            f.mul(x, y),
            f.mul(x, z),
            f.mul(y, z),
        ];
        mons.iter()
            .zip(&self.coeffs)
            .fold(Fe::ZERO, |acc, (&mo, &c)| f.add(acc, f.mul(mo, c)))
    }
}

fn conic_terms(curve: &Curve, label: CaseLabel, emb: &Embedded) -> Result<Vec<ConicTerm>> {
    let pat = check_label(curve, label)?;
    conic_row(pat, curve.n(), curve.m(), [emb.a, emb.b, emb.c], &emb.f)
}

fn conic_at(row: &[ConicTerm], f: &GaloisField, u: Fe, v: Fe) -> Conic {
    let mut coeffs = [Fe::ZERO; 6];
    for t in row {
        let val = f.mul(
            t.coef,
            f.mul(f.pow(u, t.u_exp as u64), f.pow(v, t.v_exp as u64)),
        );
        let k = t.monomial.index();
        coeffs[k] = f.add(coeffs[k], val);
    }
    Conic { coeffs }
}

/// The osculating conic of the named case at the affine point `(u, v)`.
pub fn osculating_conic(curve: &Curve, label: CaseLabel, u: Fe, v: Fe) -> Result<Conic> {
    check_label(curve, label)?;
    if u.is_zero() || v.is_zero() {
        return Err(Error::AxisPoint);
    }
    if !curve.contains(u, v) {
        return Err(Error::PointNotOnCurve);
    }
    let f = curve.field();
    let emb = Embedded::new(curve, &FieldEmbedding::new(f, f)?);
    Ok(conic_at(&conic_terms(curve, label, &emb)?, f, u, v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub hits: u64,
    pub total: u64,
}

impl Incidence {
    pub fn fraction(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.hits as f64 / self.total as f64
        }
    }

    pub fn is_complete(&self) -> bool {
        self.hits == self.total
    }
}

/// Fraction of affine F_q-points with `uv != 0` whose Frobenius image lies on
/// the osculating conic.
pub fn frobenius_incidence_scan(curve: &Curve, label: CaseLabel) -> Result<Incidence> {
    frobenius_incidence_scan_ext(curve, label, 1)
}

/// As [`frobenius_incidence_scan`] over the points defined over F_{q^k}.
/// For `k = 1` the q-Frobenius fixes every point, so `k >= 2` is the
/// informative setting.
pub fn frobenius_incidence_scan_ext(curve: &Curve, label: CaseLabel, k: u32) -> Result<Incidence> {
    check_label(curve, label)?;
    let f = curve.field();
    let big = GaloisField::new(f.p() as u64, f.h() * k, None)?;
    let emb = FieldEmbedding::new(f, &big)?;
    let e = Embedded::new(curve, &emb);
    let q = f.q() as u64;
    let row = conic_terms(curve, label, &e)?;
    let mut inc = Incidence { hits: 0, total: 0 };
    for (u, v) in e.points(big.nonzero()) {
        let conic = conic_at(&row, &big, u, v);
        inc.total += 1;
        if conic
            .eval(big.pow(u, q), big.pow(v, q), Fe::ONE, &big)
            .is_zero()
        {
            inc.hits += 1;
        }
    }
    Ok(inc)
}
