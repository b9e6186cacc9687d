//! Sparse bivariate polynomials over F_q.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::field::{Fe, GaloisField};
use crate::poly::Poly;

/// Map from `(deg_x, deg_y)` to a nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Fe>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Fe) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: Fe, i: u32, j: u32) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((i, j), c);
        }
        BiPoly { terms: t }
    }

    /// Builds from a list of terms, summing repeated exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (Fe, u32, u32)>, f: &GaloisField) -> Self {
        let mut out = BiPoly::zero();
        for (c, i, j) in terms {
            out.add_term(c, i, j, f);
        }
        out
    }

    pub fn add_term(&mut self, c: Fe, i: u32, j: u32, f: &GaloisField) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert(Fe::ZERO);
        *e = f.add(*e, c);
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Fe {
        self.terms.get(&(i, j)).copied().unwrap_or(Fe::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Fe)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn add(&self, o: &BiPoly, f: &GaloisField) -> BiPoly {
        let mut out = self.clone();
        for (i, j, c) in o.terms() {
            out.add_term(c, i, j, f);
        }
        out
    }

    pub fn sub(&self, o: &BiPoly, f: &GaloisField) -> BiPoly {
        self.add(&o.neg(f), f)
    }

    pub fn neg(&self, f: &GaloisField) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, &c)| (k, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, s: Fe, f: &GaloisField) -> BiPoly {
        if s.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, &c)| (k, f.mul(c, s))).collect(),
        }
    }

    pub fn mul(&self, o: &BiPoly, f: &GaloisField) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in o.terms() {
                out.add_term(f.mul(c1, c2), i1 + i2, j1 + j2, f);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64, f: &GaloisField) -> BiPoly {
        let mut result = BiPoly::constant(Fe::ONE);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        result
    }

    pub fn eval(&self, u: Fe, v: Fe, f: &GaloisField) -> Fe {
        self.terms().fold(Fe::ZERO, |acc, (i, j, c)| {
            f.add(acc, f.mul(c, f.mul(f.pow(u, i as u64), f.pow(v, j as u64))))
        })
    }

    /// Coefficients as a polynomial in `y` over F_q[x], indexed by y-degree.
    pub fn y_coefficients(&self) -> BTreeMap<u32, Poly> {
        let mut rows: BTreeMap<u32, Vec<Fe>> = BTreeMap::new();
        for (i, j, c) in self.terms() {
            let row = rows.entry(j).or_default();
            if row.len() <= i as usize {
                row.resize(i as usize + 1, Fe::ZERO);
            }
            row[i as usize] = c;
        }
        rows.into_iter()
            .map(|(j, v)| (j, Poly::from_coeffs(v)))
            .collect()
    }

    pub fn from_y_coefficients(rows: &[Poly]) -> BiPoly {
        let mut terms = BTreeMap::new();
        for (j, row) in rows.iter().enumerate() {
            for (i, &c) in row.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((i as u32, j as u32), c);
                }
            }
        }
        BiPoly { terms }
    }

    /// Pseudo-remainder of `self` by `divisor` as polynomials in `y`:
    /// `lc^k · self = Q · divisor + R` with `deg_y R < deg_y divisor`.
    pub fn pseudo_rem_y(&self, divisor: &BiPoly, f: &GaloisField) -> BiPoly {
        let dy = divisor.y_coefficients();
        let dm = *dy.keys().last().expect("nonzero divisor") as usize;
        let d: Vec<Poly> = (0..=dm)
            .map(|j| dy.get(&(j as u32)).cloned().unwrap_or_default())
            .collect();
        let lc = d[dm].clone();
        let gy = self.y_coefficients();
        let top = gy.keys().last().copied().unwrap_or(0) as usize;
        let mut r: Vec<Poly> = (0..=top)
            .map(|j| gy.get(&(j as u32)).cloned().unwrap_or_default())
            .collect();
        while r.len() > dm {
            let k = r.len() - 1;
            let c = r.pop().unwrap_or_default();
            if c.is_zero() {
                continue;
            }
            for row in r.iter_mut() {
                *row = row.mul(&lc, f);
            }
            let shift = k - dm;
            for (j, dj) in d[..dm].iter().enumerate() {
                let t = dj.mul(&c, f);
                r[shift + j] = r[shift + j].sub(&t, f);
            }
            while r.last().is_some_and(|p| p.is_zero()) {
                r.pop();
            }
        }
        BiPoly::from_y_coefficients(&r)
    }

    /// Sorted `(i,j):coeff` listing.
    pub fn to_debug_string(&self) -> String {
        let mut s = String::new();
        for (n, (i, j, c)) in self.terms().enumerate() {
            if n > 0 {
                s.push(' ');
            }
            let _ = write!(s, "({i},{j}):{c}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_basics() {
        let f = GaloisField::prime(7).unwrap();
        let x = BiPoly::term(Fe::ONE, 1, 0);
        let y = BiPoly::term(Fe::ONE, 0, 1);
        let s = x.add(&y, &f);
        let sq = s.mul(&s, &f);
        assert_eq!(sq.coeff(1, 1), Fe(2));
        assert_eq!(
            s.pow(7, &f),
            BiPoly::from_terms([(Fe::ONE, 7, 0), (Fe::ONE, 0, 7)], &f)
        );
        assert!(s.sub(&s, &f).is_zero());
        assert_eq!(sq.to_debug_string(), "(0,2):1 (1,1):2 (2,0):1");
    }

    #[test]
    fn pseudo_remainder_of_multiples_is_zero() {
        let f = GaloisField::prime(7).unwrap();
        // x^3 y^3 + 2x^3 + 3y^3 - 1, a non-constant leading y-coefficient
        let curve = BiPoly::from_terms(
            [(Fe::ONE, 3, 3), (Fe(2), 3, 0), (Fe(3), 0, 3), (Fe(6), 0, 0)],
            &f,
        );
        let g = BiPoly::from_terms([(Fe(4), 2, 5), (Fe(1), 0, 1), (Fe(5), 7, 0)], &f);
        assert!(g.mul(&curve, &f).pseudo_rem_y(&curve, &f).is_zero());
        assert!(!g.pseudo_rem_y(&curve, &f).is_zero());
    }
}
