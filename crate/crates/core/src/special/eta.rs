//! Dedekind eta, numerically and as exact q-series, and the two mirror maps
//! built from it.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qseries::{int_coeff, Exp, QSeries};

type C = Complex64;

/// `∏_{n ≥ 1} (1 − q^{step·n})` modulo `q^order`.
pub fn euler_product(step: i64, order: i64) -> QSeries {
    assert!(step > 0, "euler_product needs a positive step");
    let o = Exp::from_integer(order);
    let mut acc = QSeries::from_terms([(Exp::from_integer(0), int_coeff(1))], Some(o));
    let mut n = 1;
    while step * n < order {
        let factor = QSeries::from_terms(
            [(Exp::from_integer(0), int_coeff(1)), (Exp::from_integer(step * n), int_coeff(-1))],
            None,
        );
        acc = acc.mul(&factor);
        n += 1;
    }
    acc
}

/// `η(q) = q^{1/24} ∏ (1 − q^n)`, exact to `O(q^{order + 1/24})`.
pub fn eta_series(order: i64) -> QSeries {
    euler_product(1, order).shift(Exp::new(1, 24))
}

/// `q^{1/24} ∏_{n ≤ n_max} (1 − q^n)` with the principal branch of `q^{1/24}`.
/// `q = 0` gives the limit `0` of the full function.
pub fn dedekind_eta(q: C, n_max: usize) -> Result<C> {
    if q.norm() >= 1.0 {
        return Err(Error::Domain(format!("η(q) needs |q| < 1, got |q| = {}", q.norm())));
    }
    if q.norm() == 0.0 {
        return Ok(C::new(0.0, 0.0));
    }
    Ok(q.powf(1.0 / 24.0) * product(q, n_max))
}

fn product(q: C, n_max: usize) -> C {
    let mut p = C::new(1.0, 0.0);
    let mut qn = q;
    for _ in 0..n_max {
        p *= 1.0 - qn;
        qn *= q;
        if qn.norm() < 1e-18 {
            break;
        }
    }
    p
}

/// `η(e^{2πiτ})` with the branch `q^{1/24} = e^{2πiτ/24}`.
pub fn eta_tau(tau: C, n_max: usize) -> Result<C> {
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!("η(τ) needs Im τ > 0, got τ = {tau}")));
    }
    let q = (2.0 * PI * C::i() * tau).exp();
    Ok((2.0 * PI * C::i() * tau / 24.0).exp() * product(q, n_max))
}

/// `σ(q_orb) = −3 − (η(q_orb)/η(q_orb⁹))³` as a Laurent series in `q_orb`
/// modulo `q_orb^order`.
pub fn sigma_orb_series(order: i64) -> QSeries {
    // The eta prefactors give q^{(1 − 9)/24 · 3} = q^{-1}; one extra order
    // covers the shift.
    let n = order + 1;
    let num = euler_product(1, n).pow(3);
    let den = euler_product(9, n).pow(3).inv().expect("unit constant term");
    let ratio = num.mul(&den).shift(Exp::from_integer(-1));
    QSeries::constant(int_coeff(-3)).sub(&ratio).truncate(Exp::from_integer(order))
}

/// Numeric `σ` at `q_orb = e^{2πiτ/3}`, that is with `e^{2πiτ} = q_orb³`.
pub fn sigma_orb_from_tau(tau: C) -> Result<C> {
    let r = eta_tau(tau / 3.0, 400)? / eta_tau(tau * 3.0, 400)?;
    Ok(-3.0 - r * r * r)
}

/// `σ_η(q) = η¹²(q) / (η⁸(q²) η⁴(q^{1/2}))` with `q = q_d⁸`, as a Laurent
/// series in `q_d` modulo `q_d^order`.
pub fn sigma_eta_series(order: i64) -> QSeries {
    // Prefactor exponents: 8·12/24 − 16·8/24 − 4·4/24 = −2.
    let n = order + 2;
    let num = euler_product(8, n).pow(12);
    let den = euler_product(16, n).pow(8).mul(&euler_product(4, n).pow(4));
    let s = num.mul(&den.inv().expect("unit constant term")).shift(Exp::from_integer(-2));
    s.truncate(Exp::from_integer(order))
}
