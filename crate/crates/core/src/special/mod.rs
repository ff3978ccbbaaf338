//! Jacobi theta functions with characteristics, Dedekind eta and the
//! j-invariant in the Hesse-type parameter `σ`.

mod eta;
mod jinv;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eta::{
    dedekind_eta, euler_product, eta_series, eta_tau, sigma_eta_series, sigma_orb_from_tau, sigma_orb_series,
};
pub use jinv::j_of_sigma;

type C = Complex64;

const I: C = C::new(0.0, 1.0);

/// Relative size of the first dropped term when `M` is chosen automatically.
pub const AUTO_EPS: f64 = 1e-17;

/// Safety factor applied to the first omitted term.
pub const ERROR_FACTOR: f64 = 3.0;

/// `θ[a, b](w, τ) = Σ_m exp(πiτ(m+a)² + 2πi(m+a)(w+b))` truncated to `|m+a| ≤ M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaSpec {
    pub a: f64,
    pub b: f64,
    pub w: C,
    pub tau: C,
    /// Half-width; `None` picks one from [`auto_half_width`].
    pub m: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaValue {
    pub value: C,
    /// `ERROR_FACTOR` times the largest first omitted term.
    pub error_bound: f64,
    pub half_width: usize,
    pub terms: usize,
}

impl ThetaSpec {
    pub fn new(a: f64, b: f64, w: C, tau: C) -> Self {
        ThetaSpec { a, b, w, tau, m: None }
    }

    pub fn with_half_width(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }
}

fn check_tau(tau: C) -> Result<()> {
    if tau.im > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("theta needs Im τ > 0, got τ = {tau}")))
    }
}

/// Smallest `M` for which every term with `|n| > M` is below `AUTO_EPS` times the
/// largest term. The log-modulus of a term is `−π Im τ n² − 2π n Im w`, peaked at
/// `n* = −Im w / Im τ`.
pub fn auto_half_width(w: C, tau: C) -> usize {
    let peak = -w.im / tau.im;
    let spread = ((1.0 / AUTO_EPS).ln() / (PI * tau.im)).sqrt();
    (peak.abs() + spread).ceil() as usize + 1
}

fn term(n: f64, wb: C, tau: C) -> C {
    (I * PI * tau * n * n + 2.0 * PI * I * n * wb).exp()
}

fn range(a: f64, m: usize) -> (i64, i64) {
    let m = m as f64;
    ((-m - a).ceil() as i64, (m - a).floor() as i64)
}

fn sum_with<F: Fn(f64) -> C>(spec: &ThetaSpec, weight: F) -> Result<ThetaValue> {
    check_tau(spec.tau)?;
    let half_width = spec.m.unwrap_or_else(|| auto_half_width(spec.w, spec.tau));
    let wb = spec.w + spec.b;
    let (lo, hi) = range(spec.a, half_width);
    let mut value = C::new(0.0, 0.0);
    for m in lo..=hi {
        let n = m as f64 + spec.a;
        value += weight(n) * term(n, wb, spec.tau);
    }
    let omitted = [lo - 1, hi + 1]
        .iter()
        .map(|&m| {
            let n = m as f64 + spec.a;
            (weight(n) * term(n, wb, spec.tau)).norm()
        })
        .fold(0.0, f64::max);
    Ok(ThetaValue {
        value,
        error_bound: ERROR_FACTOR * omitted,
        half_width,
        terms: (hi - lo + 1).max(0) as usize,
    })
}

pub fn theta(spec: &ThetaSpec) -> Result<ThetaValue> {
    sum_with(spec, |_| C::new(1.0, 0.0))
}

/// `∂θ/∂w`, differentiated term by term.
pub fn theta_dw(spec: &ThetaSpec) -> Result<ThetaValue> {
    // The weight grows linearly, so widen the automatic window a little.
    let spec = ThetaSpec { m: Some(spec.m.unwrap_or_else(|| auto_half_width(spec.w, spec.tau) + 2)), ..*spec };
    sum_with(&spec, |n| 2.0 * PI * I * n)
}

/// Value of `θ[a, b](w, τ)` with automatic truncation.
pub fn theta_value(a: f64, b: f64, w: C, tau: C) -> Result<C> {
    theta(&ThetaSpec::new(a, b, w, tau)).map(|t| t.value)
}

/// `Θ_j(u, τ)_s = θ[j/s, 0](s·u, s·τ)`.
pub fn theta_big(j: i64, s: i64, u: C, tau: C, m: Option<usize>) -> Result<ThetaValue> {
    if s <= 0 {
        return Err(Error::Domain(format!("Θ_j(u,τ)_s needs s > 0, got {s}")));
    }
    let sf = s as f64;
    theta(&ThetaSpec { a: j as f64 / sf, b: 0.0, w: u * sf, tau: tau * sf, m })
}

/// `dΘ_j(u, τ)_s / du`.
pub fn theta_big_du(j: i64, s: i64, u: C, tau: C, m: Option<usize>) -> Result<ThetaValue> {
    if s <= 0 {
        return Err(Error::Domain(format!("Θ_j(u,τ)_s needs s > 0, got {s}")));
    }
    let sf = s as f64;
    let mut v = theta_dw(&ThetaSpec { a: j as f64 / sf, b: 0.0, w: u * sf, tau: tau * sf, m })?;
    v.value *= sf;
    v.error_bound *= sf;
    Ok(v)
}
