//! Coefficient rings for path-algebra elements.
//!
//! Three rings implement [`Scalar`]: exact rationals, truncated q-series with
//! rational exponents ([`crate::qseries::QSeries`]) and double-precision complex
//! numbers. Exact rings ignore tolerances; the complex ring treats anything
//! smaller than the caller's tolerance as zero.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse, `None` when the value is not a unit.
    fn recip(&self) -> Option<Self>;
    /// Structural zero (no tolerance).
    fn is_zero(&self) -> bool;
    /// Zero up to `tol`; exact rings ignore `tol`.
    fn is_negligible(&self, tol: f64) -> bool;
    /// Size used when reporting residuals.
    fn magnitude(&self) -> f64;
    fn is_exact() -> bool;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(<BigRational as One>::one() / self)
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        if self.norm() == 0.0 {
            None
        } else {
            Some(self.inv())
        }
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() < tol
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_exact() -> bool {
        false
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-3/2"` or a decimal literal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{}{}", if ip_digits.is_empty() { "0" } else { ip_digits }, fp);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = BigRational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("3"), Some(rat(3)));
        assert_eq!(parse_rational("-3/2"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn complex_tolerance() {
        let z = Complex64::new(1e-12, 0.0);
        assert!(z.is_negligible(1e-9));
        assert!(!Scalar::is_zero(&z));
        assert_eq!(Complex64::from_i64(2).times(&Complex64::new(0.0, 1.0)), Complex64::new(0.0, 2.0));
    }

    #[test]
    fn rational_ring() {
        let a = ratio(1, 3);
        assert_eq!(a.plus(&a).plus(&a), rat(1));
        assert_eq!(Scalar::recip(&a), Some(rat(3)));
        assert_eq!(Scalar::recip(&rat(0)), None);
    }
}
