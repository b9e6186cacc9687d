//! Finite fields F_{p^h} with an explicit monic irreducible modulus.
//!
//! Elements are stored by their integer code `Σ c_i p^i`, where `c_i` are the
//! coefficients of the residue polynomial in `t`, lowest degree first.
//! Multiplication goes through discrete log tables; addition is digit-wise
//! (or a lookup table for small non-prime fields).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 1024;
const NO_LOG: u32 = u32::MAX;

/// A field element, identified by its integer code in `[0, q)`.
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Wire description of a field. `modulus` is low-degree-first and monic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub h: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow,
    Neg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Indicators {
    /// `d` is a square in F_q.
    pub psi: u8,
    /// `d` lies in F_{p^r} and is a square there.
    pub psi_subfield: u8,
    /// `d` is a (p^r - 1)-th power in F_q.
    pub delta_r: u8,
    /// `d^(p^r) = d`.
    pub gamma_r: u8,
}

struct Inner {
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

/// Runtime field with arithmetic tables. Cloning is cheap.
#[derive(Clone)]
pub struct GaloisField(Arc<Inner>);

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.h == other.0.h && self.0.modulus == other.0.modulus)
    }
}
impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.h, self.0.modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Arithmetic in F_p[t] on plain coefficient vectors, used only while
/// building a field.
mod fp {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lc_inv = inv(m[dm], p);
        while r.len() > dm {
            let k = r.len() - 1;
            let c = r[k] * lc_inv % p;
            let shift = k - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn powmod(b: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut r = rem(&[1], m, p);
        let mut base = rem(b, m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(&r, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or irreducibility test for a monic polynomial of degree >= 1.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let h = f.len() - 1;
        let t = vec![0, 1];
        let mut tp = t.clone();
        for _ in 0..h / 2 {
            tp = powmod(&tp, p, f, p);
            let mut diff = tp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &diff, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl GaloisField {
    /// Builds F_{p^h}. Without a modulus the canonical one is used: the first
    /// monic irreducible of degree `h`, ordered by the integer encoding of its
    /// non-leading coefficients.
    pub fn new(p: u64, h: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if h == 0 {
            return Err(Error::WrongDegree {
                expected: 1,
                got: 0,
            });
        }
        let q = (p as u128).checked_pow(h).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge(q.min(u64::MAX as u128) as u64));
        }
        let q = q as u64;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != h as usize + 1 || m[h as usize] % p != 1 {
                    return Err(Error::WrongDegree {
                        expected: h,
                        got: m.len().saturating_sub(1),
                    });
                }
                let m: Vec<u64> = m.iter().map(|c| c % p).collect();
                if !fp::is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => canonical_modulus(p, h),
        };
        Ok(Self::build(p as u32, h, q as u32, modulus))
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Self::new(spec.p, spec.h, spec.modulus.as_deref())
    }

    fn build(p: u32, h: u32, q: u32, modulus: Vec<u64>) -> Self {
        let pp = p as u64;
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let encode =
            |c: &[u64]| -> u32 { c.iter().rev().fold(0u64, |acc, &d| acc * pp + d) as u32 };
        let decode = |mut x: u64| -> Vec<u64> {
            let mut v = Vec::with_capacity(h as usize);
            for _ in 0..h {
                v.push(x % pp);
                x /= pp;
            }
            fp::trim(&mut v);
            v
        };
        let generator = (1..q as u64)
            .find(|&cand| {
                let g = decode(cand);
                factors
                    .iter()
                    .all(|&l| fp::powmod(&g, order / l, &modulus, pp) != vec![1])
            })
            .map(decode)
            .unwrap_or_else(|| vec![1]);

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = vec![1u64];
        for (i, slot) in exp.iter_mut().take(n).enumerate() {
            let code = encode(&cur);
            *slot = code;
            log[code as usize] = i as u32;
            cur = fp::mulmod(&cur, &generator, &modulus, pp);
        }
        for i in n..exp.len() {
            exp[i] = exp[i - n];
        }

        let mut pw = vec![1u32; h as usize];
        for i in 1..h as usize {
            pw[i] = pw[i - 1] * p;
        }
        let neg = (0..q)
            .map(|x| {
                let mut r = 0;
                let mut x = x;
                for &w in &pw {
                    let d = x % p;
                    x /= p;
                    r += ((p - d) % p) * w;
                }
                r
            })
            .collect();

        let mut inner = Inner {
            p,
            h,
            q,
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            exp,
            log,
            neg,
            add: None,
        };
        if h > 1 && q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = add_digits(p, h, a, b) as u16;
                }
            }
            inner.add = Some(table);
        }
        GaloisField(Arc::new(inner))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn h(&self) -> u32 {
        self.0.h
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.0.p as u64,
            h: self.0.h,
            modulus: Some(self.0.modulus.iter().map(|&c| c as u64).collect()),
        }
    }

    pub fn elem(&self, code: u64) -> Result<Fe> {
        if code >= self.0.q as u64 {
            return Err(Error::InvalidElement {
                code,
                q: self.0.q as u64,
            });
        }
        Ok(Fe(code as u32))
    }

    /// Element from residue-polynomial coefficients (low degree first).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Fe {
        let p = self.0.p as u64;
        let mut code = 0u64;
        for i in (0..self.0.h as usize).rev() {
            code = code * p + coeffs.get(i).copied().unwrap_or(0) % p;
        }
        Fe(code as u32)
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let p = self.0.p;
        let mut x = a.0;
        (0..self.0.h)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> {
        (1..self.0.q).map(Fe)
    }

    /// The primitive element behind the log tables.
    pub fn generator(&self) -> Fe {
        Fe(self.0.exp[if self.0.q > 2 { 1 } else { 0 }])
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let s = &self.0;
        if s.h == 1 {
            let r = a.0 + b.0;
            return Fe(if r >= s.p { r - s.p } else { r });
        }
        if let Some(t) = &s.add {
            return Fe(t[(a.0 * s.q + b.0) as usize] as u32);
        }
        Fe(add_digits(s.p, s.h, a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let s = &self.0;
        Fe(s.exp[(s.log[a.0 as usize] + s.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let s = &self.0;
        let n = s.q - 1;
        let l = s.log[a.0 as usize];
        Ok(Fe(s.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let s = &self.0;
        let n = (s.q - 1) as u64;
        let l = s.log[a.0 as usize] as u64;
        Fe(s.exp[((l * (e % n)) % n) as usize])
    }

    pub fn pow_big(&self, a: Fe, e: &BigUint) -> Fe {
        if e.bits() == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let n = BigUint::from(self.0.q - 1);
        let r: u64 = (e % n).try_into().unwrap_or(0);
        self.pow(a, r)
    }

    pub fn log(&self, a: Fe) -> Option<u32> {
        if a.0 == 0 {
            None
        } else {
            Some(self.0.log[a.0 as usize])
        }
    }

    pub fn exp(&self, i: u64) -> Fe {
        let n = (self.0.q - 1) as u64;
        Fe(self.0.exp[(i % n) as usize])
    }

    /// `a^(p^s)`.
    pub fn frobenius(&self, a: Fe, s: u32) -> Fe {
        self.pow(a, (self.0.p as u64).pow(s))
    }

    /// Wire-level dispatcher over the basic operations.
    pub fn arith(&self, op: FieldOp, operands: &[u64]) -> Result<Fe> {
        let arity = match op {
            FieldOp::Inv | FieldOp::Neg => 1,
            _ => 2,
        };
        if operands.len() != arity {
            return Err(Error::Arity {
                op: op_name(op),
                got: operands.len(),
            });
        }
        let a = self.elem(operands[0])?;
        match op {
            FieldOp::Inv => self.inv(a),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Pow => Ok(self.pow(a, operands[1])),
            FieldOp::Add => Ok(self.add(a, self.elem(operands[1])?)),
            FieldOp::Sub => Ok(self.sub(a, self.elem(operands[1])?)),
            FieldOp::Mul => Ok(self.mul(a, self.elem(operands[1])?)),
        }
    }

    /// Number of `t` in F_q with `t^k = c`.
    pub fn root_count(&self, k: u64, c: Fe) -> u64 {
        if c.is_zero() {
            return 1;
        }
        let n = (self.0.q - 1) as u64;
        let g = gcd(k, n);
        if self.pow(c, n / g) == Fe::ONE {
            g
        } else {
            0
        }
    }

    fn check_subfield(&self, r: u32) -> Result<()> {
        if r == 0 || r > self.0.h || self.0.h % r != 0 {
            return Err(Error::InvalidSubfield { r, h: self.0.h });
        }
        Ok(())
    }

    pub fn is_square(&self, d: Fe) -> bool {
        self.root_count(2, d) > 0
    }

    /// `d^(p^r) = d`.
    pub fn in_subfield(&self, d: Fe, r: u32) -> Result<bool> {
        self.check_subfield(r)?;
        Ok(self.frobenius(d, r) == d)
    }

    /// `d` is a k-th power in F_q.
    pub fn is_power(&self, d: Fe, k: u64) -> bool {
        self.root_count(k, d) > 0
    }

    /// `d` lies in F_{p^s} and is a k-th power of an element of F_{p^s}.
    pub fn is_power_in_subfield(&self, d: Fe, k: u64, s: u32) -> Result<bool> {
        self.check_subfield(s)?;
        if d.is_zero() {
            return Ok(true);
        }
        if self.frobenius(d, s) != d {
            return Ok(false);
        }
        let ps = (self.0.p as u64).pow(s) - 1;
        let g = gcd(k, ps);
        Ok(self.pow(d, ps / g) == Fe::ONE)
    }

    pub fn indicators(&self, d: Fe, r: u32) -> Result<Indicators> {
        self.check_subfield(r)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let pr = (self.0.p as u64).pow(r);
        Ok(Indicators {
            psi: self.is_square(d) as u8,
            psi_subfield: self.is_power_in_subfield(d, 2, r)? as u8,
            delta_r: self.is_power(d, pr - 1) as u8,
            gamma_r: self.in_subfield(d, r)? as u8,
        })
    }
}

fn op_name(op: FieldOp) -> &'static str {
    match op {
        FieldOp::Add => "add",
        FieldOp::Sub => "sub",
        FieldOp::Mul => "mul",
        FieldOp::Inv => "inv",
        FieldOp::Pow => "pow",
        FieldOp::Neg => "neg",
    }
}

fn add_digits(p: u32, h: u32, mut a: u32, mut b: u32) -> u32 {
    let mut r = 0;
    let mut w = 1;
    for _ in 0..h {
        let s = a % p + b % p;
        r += if s >= p { s - p } else { s } * w;
        a /= p;
        b /= p;
        w *= p;
    }
    r
}

fn canonical_modulus(p: u64, h: u32) -> Vec<u64> {
    if h == 1 {
        return vec![0, 1];
    }
    let count = p.pow(h);
    for code in 0..count {
        let mut m = Vec::with_capacity(h as usize + 1);
        let mut x = code;
        for _ in 0..h {
            m.push(x % p);
            x /= p;
        }
        m.push(1);
        if m[0] != 0 && fp::is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

/// An embedding of a subfield `small` into `big` (same characteristic,
/// `small.h` dividing `big.h`), fixed by a root of `small`'s modulus.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    small: GaloisField,
    big: GaloisField,
    image: Vec<Fe>,
}

impl FieldEmbedding {
    pub fn new(small: &GaloisField, big: &GaloisField) -> Result<Self> {
        if small.p() != big.p() || big.h() % small.h() != 0 {
            return Err(Error::InvalidSubfield {
                r: small.h(),
                h: big.h(),
            });
        }
        let modulus: Vec<Fe> = small
            .modulus()
            .iter()
            .map(|&c| big.from_int(c as i64))
            .collect();
        let root = big
            .elements()
            .find(|&z| {
                modulus
                    .iter()
                    .rev()
                    .fold(Fe::ZERO, |acc, &c| big.add(big.mul(acc, z), c))
                    .is_zero()
            })
            .ok_or(Error::ReducibleModulus)?;
        let image = small
            .elements()
            .map(|a| {
                small.coeffs(a).iter().rev().fold(Fe::ZERO, |acc, &c| {
                    big.add(big.mul(acc, root), big.from_int(c as i64))
                })
            })
            .collect();
        Ok(Self {
            small: small.clone(),
            big: big.clone(),
            image,
        })
    }

    pub fn small(&self) -> &GaloisField {
        &self.small
    }

    pub fn big(&self) -> &GaloisField {
        &self.big
    }

    #[inline]
    pub fn embed(&self, a: Fe) -> Fe {
        self.image[a.0 as usize]
    }

    /// Inverse image of an element of the subfield, if it lies there.
    pub fn preimage(&self, b: Fe) -> Option<Fe> {
        self.image
            .iter()
            .position(|&x| x == b)
            .map(|i| Fe(i as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_root_count(f: &GaloisField, k: u64, c: Fe) -> u64 {
        f.elements().filter(|&t| f.pow(t, k) == c).count() as u64
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(GaloisField::new(7, 1, None).unwrap().modulus(), &[0, 1]);
        assert_eq!(GaloisField::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(GaloisField::new(7, 2, None).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(
            GaloisField::new(4, 1, None).unwrap_err(),
            Error::NotPrime(4)
        );
    }

    #[test]
    fn canonical_quadratic_matches_root_search() {
        for p in [3u64, 5, 7, 11, 13] {
            let expected = (0..p * p)
                .map(|code| (code % p, code / p))
                .find(|&(c0, c1)| (0..p).all(|t| (t * t + c1 * t + c0) % p != 0))
                .unwrap();
            let f = GaloisField::new(p, 2, None).unwrap();
            assert_eq!(f.modulus(), &[expected.0 as u32, expected.1 as u32, 1]);
        }
    }

    #[test]
    fn explicit_modulus_validation() {
        assert_eq!(
            GaloisField::new(3, 2, Some(&[2, 0, 1])).unwrap_err(),
            Error::ReducibleModulus
        );
        assert!(matches!(
            GaloisField::new(3, 2, Some(&[1, 1])).unwrap_err(),
            Error::WrongDegree { .. }
        ));
        let f = GaloisField::new(3, 2, Some(&[2, 1, 1])).unwrap();
        assert_eq!(f.q(), 9);
        assert!(matches!(
            GaloisField::new(2, 21, None),
            Err(Error::FieldTooLarge(_))
        ));
    }

    #[test]
    fn worked_arithmetic() {
        let f7 = GaloisField::prime(7).unwrap();
        assert_eq!(f7.inv(Fe(3)).unwrap(), Fe(5));
        assert_eq!(f7.inv(Fe(0)), Err(Error::DivisionByZero));
        let f9 = GaloisField::new(3, 2, None).unwrap();
        let t = f9.from_coeffs(&[0, 1]);
        assert_eq!(f9.mul(t, t), Fe(2));
        let f49 = GaloisField::new(7, 2, None).unwrap();
        for g in f49.nonzero() {
            assert_eq!(f49.pow(g, 48), Fe::ONE);
        }
        assert_eq!(f49.pow_big(Fe(5), &BigUint::from(48u32 * 1000)), Fe::ONE);
        assert_eq!(
            f49.pow_big(Fe(5), &BigUint::from(49u32 * 49)),
            f49.pow(Fe(5), 49 * 49)
        );
        assert_eq!(f49.pow_big(Fe(0), &BigUint::from(0u32)), Fe::ONE);
        assert_eq!(
            f49.arith(FieldOp::Mul, &[3, 4]).unwrap(),
            f49.mul(Fe(3), Fe(4))
        );
        assert!(f49.arith(FieldOp::Inv, &[1, 2]).is_err());
    }

    #[test]
    fn generator_is_primitive() {
        for (p, h) in [(2, 4), (3, 3), (7, 2), (13, 2), (5, 1)] {
            let f = GaloisField::new(p, h, None).unwrap();
            let g = f.generator();
            let mut seen = std::collections::HashSet::new();
            let mut x = Fe::ONE;
            for _ in 0..f.q() - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u32, f.q() - 1);
        }
    }

    #[test]
    fn root_count_examples_and_oracle() {
        let f9 = GaloisField::new(3, 2, None).unwrap();
        assert_eq!(f9.root_count(4, Fe::ONE), 4);
        let f7 = GaloisField::prime(7).unwrap();
        assert_eq!(f7.root_count(3, Fe(2)), 0);
        assert_eq!(f7.root_count(3, Fe(0)), 1);
        for (p, h) in [(7, 1), (3, 2), (7, 2), (2, 3)] {
            let f = GaloisField::new(p, h, None).unwrap();
            for k in 1..12 {
                let mut total = 0;
                for c in f.elements() {
                    let rc = f.root_count(k, c);
                    assert_eq!(rc, brute_root_count(&f, k, c), "q={} k={k} c={c}", f.q());
                    total += rc;
                }
                assert_eq!(total, f.q() as u64);
            }
        }
    }

    #[test]
    fn indicator_examples() {
        let f7 = GaloisField::prime(7).unwrap();
        assert_eq!(f7.indicators(Fe(2), 1).unwrap().psi, 1);
        let f49 = GaloisField::new(7, 2, None).unwrap();
        for d in 1..7 {
            assert_eq!(f49.indicators(Fe(d), 1).unwrap().gamma_r, 1);
        }
        assert_eq!(f49.indicators(Fe(6), 1).unwrap().psi, 1);
        // 3 is a non-square in F_7 but every element of F_7 is a square in F_49
        let ind = f49.indicators(Fe(3), 1).unwrap();
        assert_eq!((ind.psi, ind.psi_subfield), (1, 0));
        assert!(matches!(
            f49.indicators(Fe(3), 3),
            Err(Error::InvalidSubfield { .. })
        ));
    }

    #[test]
    fn gamma_counts_subfield() {
        for (p, h) in [(2u64, 4u32), (7, 2), (3, 2), (5, 2)] {
            let f = GaloisField::new(p, h, None).unwrap();
            for r in (1..=h).filter(|r| h % r == 0) {
                let fixed = f
                    .elements()
                    .filter(|&d| f.in_subfield(d, r).unwrap())
                    .count();
                assert_eq!(fixed as u64, p.pow(r));
            }
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let small = GaloisField::new(7, 2, None).unwrap();
        let big = GaloisField::new(7, 4, None).unwrap();
        let e = FieldEmbedding::new(&small, &big).unwrap();
        for a in small.elements().step_by(5) {
            for b in small.elements().step_by(3) {
                assert_eq!(e.embed(small.add(a, b)), big.add(e.embed(a), e.embed(b)));
                assert_eq!(e.embed(small.mul(a, b)), big.mul(e.embed(a), e.embed(b)));
            }
            assert_eq!(e.preimage(e.embed(a)), Some(a));
        }
        let f7 = GaloisField::prime(7).unwrap();
        let e = FieldEmbedding::new(&f7, &small).unwrap();
        assert!((0..7).all(|c| e.embed(Fe(c)) == Fe(c)));
    }

    #[test]
    fn large_field_without_add_table() {
        let f = GaloisField::new(3, 7, None).unwrap();
        let a = Fe(1234);
        let b = Fe(999);
        assert_eq!(f.sub(f.add(a, b), b), a);
        assert_eq!(f.mul(f.inv(a).unwrap(), a), Fe::ONE);
    }
}
