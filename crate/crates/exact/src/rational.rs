//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator; zero is canonically 0/1. `num_rational::BigRational`
//! already maintains exactly those invariants on every operation, so it is
//! used directly rather than reimplemented.

use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;
use num_traits::{One, Signed};

/// Integer as an exact rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fraction `n/d` as an exact rational (`d` must be nonzero).
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as an exact rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// `2^e` for a possibly negative exponent, as an exact rational.
pub fn pow2(e: i64) -> Rational {
    let two = rat(2);
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &two;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Renders `num/den`, omitting the denominator when it is 1.
pub fn display(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Numerator and denominator of `|q|` as decimal strings.
pub fn abs_parts(q: &Rational) -> (String, String) {
    let a = q.abs();
    (a.numer().to_string(), a.denom().to_string())
}
