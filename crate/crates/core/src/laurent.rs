//! Integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

/// A finite map exponent -> nonzero integer coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coefficient: i64, exponent: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coefficient);
        p
    }

    /// `t^exponent`.
    pub fn t_pow(exponent: i32) -> Self {
        Self::monomial(1, exponent)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `c_0 + c_1 t + c_2 t^2 + ...`
    pub fn from_coefficients(coefficients: &[i64]) -> Self {
        Self::from_terms(coefficients.iter().enumerate().map(|(i, &c)| (i as i32, c)))
    }

    pub fn add_term(&mut self, exponent: i32, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert(0);
        *slot += coefficient;
        if *slot == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i32) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Exact division in `Z[t, t^-1]`: returns `q` with `self = q * divisor`,
    /// or `None` when no such `q` exists.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // work with ordinary polynomials by shifting both to start at t^0
        let ds = divisor.min_exponent().unwrap();
        let ns = self.min_exponent().unwrap();
        let d: Vec<i64> = dense(&divisor.shift(-ds));
        let mut n: Vec<i64> = dense(&self.shift(-ns));
        if n.len() < d.len() {
            return None;
        }
        let lead = *d.last().unwrap();
        let mut q = vec![0i64; n.len() - d.len() + 1];
        for i in (0..q.len()).rev() {
            let top = n[i + d.len() - 1];
            if top % lead != 0 {
                return None;
            }
            let c = top / lead;
            q[i] = c;
            for (j, &dj) in d.iter().enumerate() {
                n[i + j] -= c * dj;
            }
        }
        if n.iter().any(|&x| x != 0) {
            return None;
        }
        Some(Self::from_coefficients(&q).shift(ns - ds))
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        other.exact_div(self).is_some()
    }
}

fn dense(p: &LaurentPoly) -> Vec<i64> {
    let top = p.max_exponent().unwrap_or(0).max(0) as usize;
    let mut v = vec![0; top + 1];
    for (e, c) in p.terms() {
        v[e as usize] = c;
    }
    v
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest exponent first, e.g. `t^2 - 1`, `-2t + 1`, `t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.terms.iter().rev().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(LaurentPoly::from_terms([(2, 1), (0, -1)]).to_string(), "t^2 - 1");
        assert_eq!(LaurentPoly::from_terms([(0, 1), (1, -2)]).to_string(), "-2t + 1");
        assert_eq!(LaurentPoly::t_pow(-1).to_string(), "t^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = LaurentPoly::from_terms([(1, 3), (0, 1)]);
        let b = LaurentPoly::from_terms([(1, 3)]);
        assert_eq!(&a - &b, LaurentPoly::one());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division() {
        let t2m1 = LaurentPoly::from_terms([(2, 1), (0, -1)]);
        let tm1 = LaurentPoly::from_terms([(1, 1), (0, -1)]);
        let tp1 = LaurentPoly::from_terms([(1, 1), (0, 1)]);
        assert_eq!(t2m1.exact_div(&tm1), Some(tp1.clone()));
        assert!(tm1.divides(&t2m1));
        assert!(t2m1.divides(&t2m1));
        assert!(!LaurentPoly::from_terms([(1, 1), (0, -2)]).divides(&t2m1));
        // units t^k divide everything
        assert!(LaurentPoly::t_pow(-3).divides(&t2m1));
        let q = LaurentPoly::from_terms([(-1, 1), (1, 2)]);
        assert_eq!((&q * &tp1).exact_div(&tp1), Some(q));
    }
}
