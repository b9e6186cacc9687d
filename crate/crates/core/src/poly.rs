//! Dense univariate polynomials over F_q.

use crate::error::{Error, Result};
use crate::field::{Fe, GaloisField};

/// Dense polynomial, lowest degree first, never with a trailing zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Fe>,
}

const SCHOOLBOOK_LIMIT: usize = 400;

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![Fe::ONE] }
    }

    pub fn constant(c: Fe) -> Self {
        Self::monomial(c, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Fe::ONE, 1)
    }

    pub fn monomial(c: Fe, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Fe::ZERO; deg + 1];
        v[deg] = c;
        Poly { c: v }
    }

    pub fn from_coeffs(mut c: Vec<Fe>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == Fe::ONE
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn lc(&self) -> Fe {
        self.c.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn nnz(&self) -> usize {
        self.c.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn add(&self, o: &Poly, f: &GaloisField) -> Poly {
        let (long, short) = if self.c.len() >= o.c.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut v = long.c.clone();
        for (x, &y) in v.iter_mut().zip(&short.c) {
            *x = f.add(*x, y);
        }
        Poly::from_coeffs(v)
    }

    pub fn add_assign(&mut self, o: &Poly, f: &GaloisField) {
        if self.c.len() < o.c.len() {
            self.c.resize(o.c.len(), Fe::ZERO);
        }
        for (x, &y) in self.c.iter_mut().zip(&o.c) {
            *x = f.add(*x, y);
        }
        self.trim();
    }

    pub fn sub(&self, o: &Poly, f: &GaloisField) -> Poly {
        let n = self.c.len().max(o.c.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect();
        Poly::from_coeffs(v)
    }

    pub fn neg(&self, f: &GaloisField) -> Poly {
        Poly {
            c: self.c.iter().map(|&x| f.neg(x)).collect(),
        }
    }

    pub fn scale(&self, s: Fe, f: &GaloisField) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|&x| f.mul(x, s)).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Fe::ZERO; k];
        v.extend_from_slice(&self.c);
        Poly { c: v }
    }

    /// Substitution `x -> x^k`.
    pub fn inflate(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Fe::ZERO; (self.c.len() - 1) * k + 1];
        for (i, &c) in self.c.iter().enumerate() {
            v[i * k] = c;
        }
        Poly { c: v }
    }

    pub fn derivative(&self, f: &GaloisField) -> Poly {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int((i % f.p() as usize) as i64)))
            .collect();
        Poly::from_coeffs(v)
    }

    pub fn eval(&self, x: Fe, f: &GaloisField) -> Fe {
        self.c
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn monic(&self, f: &GaloisField) -> Poly {
        match self.c.last() {
            None => Poly::zero(),
            Some(&lc) if lc == Fe::ONE => self.clone(),
            Some(&lc) => self.scale(f.inv(lc).expect("nonzero leading coefficient"), f),
        }
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn mul(&self, o: &Poly, f: &GaloisField) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let (na, nb) = (self.nnz(), o.nnz());
        if na.min(nb) <= 4 || self.c.len() * o.c.len() <= SCHOOLBOOK_LIMIT {
            let (sparse, dense) = if na <= nb { (self, o) } else { (o, self) };
            return sparse_mul(sparse, dense, f);
        }
        if f.h() == 1 {
            prime_conv(&self.c, &o.c, f)
        } else {
            digit_conv(&self.c, &o.c, f)
        }
    }

    pub fn square(&self, f: &GaloisField) -> Poly {
        self.mul(self, f)
    }

    pub fn pow(&self, e: u64, f: &GaloisField) -> Poly {
        if e == 0 {
            return Poly::one();
        }
        if self.is_zero() {
            return Poly::zero();
        }
        let terms: Vec<(usize, Fe)> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
            .collect();
        if terms.len() <= 2 {
            return binomial_pow(&terms, e, f);
        }
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.square(f);
            }
        }
        result
    }

    pub fn divrem(&self, d: &Poly, f: &GaloisField) -> Result<(Poly, Poly)> {
        let dd = d.deg().ok_or(Error::DivisionByZero)?;
        if self.c.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = f.inv(d.lc())?;
        let mut r = self.c.clone();
        let mut qv = vec![Fe::ZERO; r.len() - dd];
        let dterms: Vec<(usize, Fe)> = d.c[..dd]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
            .collect();
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], inv);
            if c.is_zero() {
                continue;
            }
            qv[k - dd] = c;
            r[k] = Fe::ZERO;
            let shift = k - dd;
            for &(i, di) in &dterms {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, di));
            }
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(qv), Poly::from_coeffs(r)))
    }

    pub fn rem(&self, d: &Poly, f: &GaloisField) -> Result<Poly> {
        Ok(self.divrem(d, f)?.1)
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, d: &Poly, f: &GaloisField) -> Result<Poly> {
        let (q, r) = self.divrem(d, f)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Poly, f: &GaloisField) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            if b.deg() == Some(0) {
                return Poly::one();
            }
            let r = a.rem(&b, f).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }
}

fn sparse_mul(sparse: &Poly, dense: &Poly, f: &GaloisField) -> Poly {
    let mut out = vec![Fe::ZERO; sparse.c.len() + dense.c.len() - 1];
    for (i, &s) in sparse.c.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        for (o, &d) in out[i..].iter_mut().zip(&dense.c) {
            *o = f.add(*o, f.mul(s, d));
        }
    }
    Poly::from_coeffs(out)
}

fn accumulate(out: &mut [u64], a: &[u32], b: &[u32], p: u64) {
    // each product is < p^2; reduce before the accumulators could overflow
    let budget = (u64::MAX / ((p - 1) * (p - 1)).max(1)).saturating_sub(1) as usize;
    if a.len().min(b.len()) <= budget {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for (o, &y) in out[i..].iter_mut().zip(b) {
                *o += x * y as u64;
            }
        }
    } else {
        for (i, &x) in a.iter().enumerate() {
            let x = x as u64;
            for (o, &y) in out[i..].iter_mut().zip(b) {
                *o = (*o + x * y as u64) % p;
            }
        }
    }
}

fn prime_conv(a: &[Fe], b: &[Fe], f: &GaloisField) -> Poly {
    let p = f.p() as u64;
    let av: Vec<u32> = a.iter().map(|x| x.0).collect();
    let bv: Vec<u32> = b.iter().map(|x| x.0).collect();
    let mut out = vec![0u64; a.len() + b.len() - 1];
    accumulate(&mut out, &av, &bv, p);
    Poly::from_coeffs(out.into_iter().map(|x| Fe((x % p) as u32)).collect())
}

fn digit_planes(a: &[Fe], p: u32, h: usize) -> Vec<Vec<u32>> {
    let mut planes = vec![vec![0u32; a.len()]; h];
    for (i, x) in a.iter().enumerate() {
        let mut v = x.0;
        for plane in planes.iter_mut() {
            plane[i] = v % p;
            v /= p;
        }
    }
    planes
}

fn digit_conv(a: &[Fe], b: &[Fe], f: &GaloisField) -> Poly {
    let p = f.p();
    let pp = p as u64;
    let h = f.h() as usize;
    let pa = digit_planes(a, p, h);
    let pb = digit_planes(b, p, h);
    let len = a.len() + b.len() - 1;
    let mut acc = vec![vec![0u64; len]; 2 * h - 1];
    for (i, x) in pa.iter().enumerate() {
        for (j, y) in pb.iter().enumerate() {
            accumulate(&mut acc[i + j], x, y, pp);
        }
    }
    for plane in acc.iter_mut() {
        for v in plane.iter_mut() {
            *v %= pp;
        }
    }
    // t^h = -(m_0 + m_1 t + ... + m_{h-1} t^{h-1})
    let m = f.modulus();
    for s in (h..2 * h - 1).rev() {
        let top = std::mem::take(&mut acc[s]);
        for (i, &mi) in m[..h].iter().enumerate() {
            if mi == 0 {
                continue;
            }
            let w = (pp - mi as u64) % pp;
            let row = &mut acc[s - h + i];
            for (r, &t) in row.iter_mut().zip(&top) {
                *r = (*r + w * t) % pp;
            }
        }
    }
    let out = (0..len)
        .map(|j| {
            let mut code = 0u64;
            for k in (0..h).rev() {
                code = code * pp + acc[k][j];
            }
            Fe(code as u32)
        })
        .collect();
    Poly::from_coeffs(out)
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binom_mod(mut n: u64, mut k: u64, f: &GaloisField) -> Fe {
    let p = f.p() as u64;
    let mut r = Fe::ONE;
    while k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return Fe::ZERO;
        }
        let mut num = Fe::ONE;
        let mut den = Fe::ONE;
        for j in 0..ki {
            num = f.mul(num, f.from_int((ni - j) as i64));
            den = f.mul(den, f.from_int((j + 1) as i64));
        }
        r = f.mul(r, f.div(num, den).expect("j + 1 < p"));
        n /= p;
        k /= p;
    }
    r
}

fn binomial_pow(terms: &[(usize, Fe)], e: u64, f: &GaloisField) -> Poly {
    if terms.len() == 1 {
        let (i, c) = terms[0];
        return Poly::monomial(f.pow(c, e), i * e as usize);
    }
    let (i0, c0) = terms[0];
    let (i1, c1) = terms[1];
    let mut out = vec![Fe::ZERO; i1 * e as usize + 1];
    for k in 0..=e {
        let b = binom_mod(e, k, f);
        if b.is_zero() {
            continue;
        }
        let c = f.mul(b, f.mul(f.pow(c0, e - k), f.pow(c1, k)));
        let d = i0 * (e - k) as usize + i1 * k as usize;
        out[d] = f.add(out[d], c);
    }
    Poly::from_coeffs(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_mul(a: &Poly, b: &Poly, f: &GaloisField) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; a.c.len() + b.c.len() - 1];
        for (i, &x) in a.c.iter().enumerate() {
            for (j, &y) in b.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    fn pseudo_random(len: usize, seed: u64, f: &GaloisField) -> Poly {
        let mut s = seed;
        let v = (0..len)
            .map(|_| {
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                Fe(((s >> 33) % f.q() as u64) as u32)
            })
            .collect();
        Poly::from_coeffs(v)
    }

    #[test]
    fn fast_products_match_schoolbook() {
        for (p, h) in [(7, 1), (13, 1), (7, 2), (13, 2), (3, 3), (2, 5)] {
            let f = GaloisField::new(p, h, None).unwrap();
            for (la, lb) in [(30, 40), (60, 5), (100, 90)] {
                let a = pseudo_random(la, la as u64 * 7 + p, &f);
                let b = pseudo_random(lb, lb as u64 * 3 + h as u64, &f);
                assert_eq!(a.mul(&b, &f), naive_mul(&a, &b, &f), "p={p} h={h}");
            }
        }
    }

    #[test]
    fn binomial_powers() {
        let f = GaloisField::new(7, 2, None).unwrap();
        let n = Poly::from_coeffs(vec![Fe::ONE, Fe::ZERO, Fe::ZERO, f.neg(Fe(3))]);
        let mut acc = Poly::one();
        for e in 0..30 {
            assert_eq!(n.pow(e, &f), acc);
            acc = naive_mul(&acc, &n, &f);
        }
        let t = pseudo_random(5, 11, &f);
        assert_eq!(
            t.pow(5, &f),
            (0..5).fold(Poly::one(), |a, _| naive_mul(&a, &t, &f))
        );
    }

    #[test]
    fn division_and_gcd() {
        let f = GaloisField::new(11, 1, None).unwrap();
        let a = pseudo_random(20, 1, &f);
        let b = pseudo_random(7, 2, &f);
        let c = pseudo_random(9, 3, &f);
        let (q, r) = a.divrem(&b, &f).unwrap();
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert!(r.deg() < b.deg());
        let g = a.mul(&c, &f).gcd(&b.mul(&c, &f), &f);
        assert_eq!(g.rem(&c.monic(&f), &f).unwrap(), Poly::zero());
        assert_eq!(a.divrem(&Poly::zero(), &f), Err(Error::DivisionByZero));
    }

    #[test]
    fn derivative_and_eval() {
        let f = GaloisField::prime(7).unwrap();
        let x2 = Poly::monomial(Fe::ONE, 2);
        assert_eq!(x2.derivative(&f), Poly::monomial(Fe(2), 1));
        assert!(Poly::monomial(Fe::ONE, 7).derivative(&f).is_zero());
        assert_eq!(x2.eval(Fe(3), &f), Fe(2));
        assert_eq!(x2.inflate(3), Poly::monomial(Fe::ONE, 6));
    }

    #[test]
    fn lucas() {
        let f = GaloisField::prime(7).unwrap();
        for n in 0..60u64 {
            let mut row = vec![1u64];
            for _ in 0..n {
                let mut next = vec![1u64; row.len() + 1];
                for i in 1..row.len() {
                    next[i] = (row[i - 1] + row[i]) % 7;
                }
                row = next;
            }
            for k in 0..=n {
                assert_eq!(binom_mod(n, k, &f), Fe(row[k as usize] as u32));
            }
        }
    }
}
