//! Laurent polynomials over a fixed number of anonymous variables.
//!
//! Exponents are signed; this is the bookkeeping type for constant-term
//! extraction in `z_1..z_n` and for half-integer spectral powers (`u = x^{1/2}`),
//! where negative powers legitimately appear in intermediates. The named-variable
//! `MultiPoly` type deliberately excludes them.

use crate::rational::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent polynomial in `nvars` variables, keyed by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut out = Laurent::zero(nvars);
        out.add_term(vec![0; nvars], c);
        out
    }

    pub fn one(nvars: usize) -> Self {
        Laurent::constant(nvars, Rational::from_integer(1.into()))
    }

    /// Single term `c * prod v_i^{exps[i]}`.
    pub fn monomial(exps: Vec<i64>, c: Rational) -> Self {
        let nvars = exps.len();
        let mut out = Laurent::zero(nvars);
        out.add_term(exps, c);
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient at an exponent vector (zero when absent).
    pub fn coeff(&self, exps: &[i64]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the all-zero exponent vector.
    pub fn constant_coeff(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Laurent {
        if c.is_zero() {
            return Laurent::zero(self.nvars);
        }
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, q)| (e.clone(), q * c)).collect(),
        }
    }

    /// Substitutes `v_k -> v_k^{-1}` by negating that exponent coordinate.
    pub fn invert_var(&self, k: usize) -> Laurent {
        let mut out = Laurent::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[k] = -e2[k];
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Minimum exponent of variable `k` over all terms (0 for zero).
    pub fn min_exp(&self, k: usize) -> i64 {
        self.terms.keys().map(|e| e[k]).min().unwrap_or(0)
    }

    /// Maximum exponent of variable `k` over all terms (0 for zero).
    pub fn max_exp(&self, k: usize) -> i64 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Laurent::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn negative_exponents_multiply() {
        // (z1/z2) * (z2/z1) = 1
        let a = Laurent::monomial(vec![1, -1], rat(1));
        let b = Laurent::monomial(vec![-1, 1], rat(1));
        assert_eq!(&a * &b, Laurent::one(2));
    }

    #[test]
    fn constant_coeff_extraction() {
        let mut p = Laurent::zero(2);
        p.add_term(vec![0, 0], rat(5));
        p.add_term(vec![2, -2], rat(7));
        assert_eq!(p.constant_coeff(), rat(5));
    }

    #[test]
    fn invert_var_negates() {
        let p = Laurent::monomial(vec![3], rat(2));
        assert_eq!(p.invert_var(0), Laurent::monomial(vec![-3], rat(2)));
    }

    #[test]
    fn cancellation_removes_entries() {
        let a = Laurent::monomial(vec![1], rat(1));
        let sum = &a - &a;
        assert!(sum.is_zero());
    }
}
