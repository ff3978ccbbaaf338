//! `j(σ) = (σ⁴ − 16σ² + 256)³ / (σ⁴ (σ² − 16)²)` over any coefficient ring.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Evaluates `j(σ)`; works for complex numbers, exact rationals and Laurent
/// q-series. Poles (`σ ∈ {0, ±4}`, or a non-invertible series) are domain errors.
pub fn j_of_sigma<S: Scalar>(sigma: &S) -> Result<S> {
    let s2 = sigma.times(sigma);
    let s4 = s2.times(&s2);
    let sixteen = S::from_i64(16);
    let inner = s4.minus(&sixteen.times(&s2)).plus(&S::from_i64(256));
    let num = inner.times(&inner).times(&inner);
    let d = s2.minus(&sixteen);
    let den = s4.times(&d).times(&d);
    if den.is_negligible(1e-13) {
        return Err(Error::Domain(format!("j(σ) has a pole at σ = {sigma}")));
    }
    let inv = den.recip().ok_or_else(|| Error::Domain(format!("j(σ): denominator not invertible at σ = {sigma}")))?;
    Ok(num.times(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_complex::Complex64;
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn poles_are_rejected() {
        for s in [0.0, 4.0, -4.0] {
            assert!(matches!(j_of_sigma(&Complex64::new(s, 0.0)), Err(Error::Domain(_))));
        }
        assert!(matches!(j_of_sigma(&rat(4)), Err(Error::Domain(_))));
    }

    #[test]
    fn numerator_roots_give_zero() {
        // σ² = 16 e^{±iπ/3} solves σ⁴ − 16σ² + 256 = 0.
        for sign in [1.0, -1.0] {
            let s = (Complex64::from_polar(16.0, sign * std::f64::consts::PI / 3.0)).sqrt();
            assert!(j_of_sigma(&s).unwrap().norm() < 1e-9);
        }
    }

    proptest! {
        #[test]
        fn inversion_symmetry_exact(n in -50i64..50, d in 1i64..30) {
            let s = BigRational::new(n.into(), d.into());
            prop_assume!(s != rat(0) && s != rat(4) && s != rat(-4));
            let flipped = rat(16) / &s;
            prop_assert_eq!(j_of_sigma(&s).unwrap(), j_of_sigma(&flipped).unwrap());
        }

        #[test]
        fn inversion_symmetry_complex(re in -6.0f64..6.0, im in 0.2f64..6.0) {
            let s = Complex64::new(re, im);
            let a = j_of_sigma(&s).unwrap();
            let b = j_of_sigma(&(16.0 / s)).unwrap();
            prop_assert!((a - b).norm() < 1e-9 * (1.0 + a.norm()));
        }
    }
}
