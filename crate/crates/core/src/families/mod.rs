//! Explicit mirror families: Sklyanin algebras over the elliptic curve with
//! three orbifold points and the noncommutative conifold over the pillowcase.

pub mod commutative;
pub mod dq;
pub mod pillowcase;
pub mod sklyanin;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 20_140_917;

/// Parameters `(s, t, τ)`: holonomy `λ = e^{2πis}`, translation `t`, modulus `τ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyPoint {
    pub s: f64,
    pub t: f64,
    pub tau: Complex64,
}

impl FamilyPoint {
    pub fn new(s: f64, t: f64, tau: Complex64) -> Result<Self> {
        check_tau(tau)?;
        if !s.is_finite() || !t.is_finite() {
            return Err(Error::Domain(format!("s and t must be finite, got s={s}, t={t}")));
        }
        Ok(FamilyPoint { s, t, tau })
    }
}

pub fn check_tau(tau: Complex64) -> Result<()> {
    if tau.im > 0.0 && tau.re.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("tau must have positive imaginary part, got Im tau = {}", tau.im)))
    }
}

/// Seeded sample points with `s ∈ [0, 1)` and `t ∈ (−1/3, 1/3)`.
pub fn sample_points(seed: u64, n: usize, tau: Complex64) -> Vec<FamilyPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| FamilyPoint { s: rng.gen_range(0.0..1.0), t: rng.gen_range(-0.3..0.3), tau })
        .collect()
}

/// `e^{2πi x}` for complex `x`.
pub(crate) fn e2pi(x: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * x).exp()
}
