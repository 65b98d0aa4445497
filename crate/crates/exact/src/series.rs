//! Formal power series truncated by total degree.
//!
//! A `TruncatedSeries` is a `MultiPoly` paired with a degree cap; every
//! operation discards terms of total degree above the cap. Inversion and the
//! exponential are exact on the retained range.

use crate::poly::MultiPoly;
use crate::rational::factorial;
use crate::ExactError;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// A polynomial truncated at a total-degree cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: MultiPoly,
    cap: u32,
}

impl TruncatedSeries {
    /// Wraps a polynomial, truncating it to the cap.
    pub fn new(poly: MultiPoly, cap: u32) -> Self {
        TruncatedSeries { poly: poly.truncate_total_degree(cap), cap }
    }

    pub fn one(cap: u32) -> Self {
        TruncatedSeries { poly: MultiPoly::one(), cap }
    }

    pub fn zero(cap: u32) -> Self {
        TruncatedSeries { poly: MultiPoly::zero(), cap }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }

    /// Re-truncates to a smaller cap.
    pub fn truncate(&self, cap: u32) -> TruncatedSeries {
        TruncatedSeries::new(self.poly.clone(), cap.min(self.cap))
    }

    /// Multiplicative inverse modulo degrees above the cap.
    ///
    /// Writes `self = c (1 - q)` with `q` of positive valuation and sums the
    /// geometric series; `q^k` vanishes past `k = cap`, so the loop is finite.
    pub fn inverse(&self) -> Result<TruncatedSeries, ExactError> {
        let c = self.poly.constant_term();
        if c.is_zero() {
            return Err(ExactError::ZeroConstantTerm);
        }
        let c_inv = c.recip();
        // q = 1 - self/c has no constant term
        let q = &MultiPoly::one() - &self.poly.scale(&c_inv);
        let mut acc = MultiPoly::one();
        let mut pw = MultiPoly::one();
        for _ in 1..=self.cap {
            pw = (&pw * &q).truncate_total_degree(self.cap);
            if pw.is_zero() {
                break;
            }
            acc = &acc + &pw;
        }
        Ok(TruncatedSeries::new(acc.scale(&c_inv), self.cap))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let cap = self.cap.min(rhs.cap);
        TruncatedSeries::new(&self.poly + &rhs.poly, cap)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let cap = self.cap.min(rhs.cap);
        TruncatedSeries::new(&self.poly - &rhs.poly, cap)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let cap = self.cap.min(rhs.cap);
        TruncatedSeries::new(&self.poly * &rhs.poly, cap)
    }
}

/// `exp(p)` truncated at the cap; `p` must have zero constant term so that
/// the sum `sum p^k / k!` terminates at `k = cap`.
pub fn exp_truncated(p: &MultiPoly, cap: u32) -> Result<TruncatedSeries, ExactError> {
    if !p.constant_term().is_zero() {
        return Err(ExactError::NonNilpotentConstant);
    }
    let mut acc = MultiPoly::one();
    let mut pw = MultiPoly::one();
    for k in 1..=cap {
        pw = (&pw * p).truncate_total_degree(cap);
        if pw.is_zero() {
            break;
        }
        acc = &acc + &pw.scale(&factorial(k as u64).recip());
    }
    Ok(TruncatedSeries::new(acc, cap))
}

/// Convenience free function mirroring `TruncatedSeries::inverse`.
pub fn series_inverse(s: &TruncatedSeries) -> Result<TruncatedSeries, ExactError> {
    s.inverse()
}
