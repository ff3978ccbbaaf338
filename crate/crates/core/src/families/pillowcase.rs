//! The noncommutative conifold over the pillowcase orbifold: exact potential
//! series `φ, ψ`, the open mirror map, and the deformed relations with their
//! theta-function coefficients.

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use num_rational::BigRational;

use super::{check_tau, FamilyPoint};
use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::potential::CyclicPotential;
use crate::qseries::{Exp, QSeries};
use crate::quiver::{ArrowId, Quiver};
use crate::reduction::{is_central, Centrality, CompletionOptions, ReductionSystem};
use crate::scalar::{rat, ratio, Scalar};
use crate::special::{j_of_sigma, sigma_eta_series, theta, theta_dw, ThetaSpec};

const X: ArrowId = 0;
const Y: ArrowId = 1;
const Z: ArrowId = 2;
const W: ArrowId = 3;

/// Two vertices, `x, z: v2 → v1` and `y, w: v1 → v2`.
pub fn conifold_quiver() -> Quiver {
    Quiver::from_spec(&["v1", "v2"], &[("x", "v2", "v1"), ("y", "v1", "v2"), ("z", "v2", "v1"), ("w", "v1", "v2")])
        .expect("static quiver")
}

fn word_elem<S: Scalar>(q: &Quiver, word: &[ArrowId], c: S, bound: usize) -> Element<S> {
    Element::from_path(q.path_from_word(word, None).expect("composable word"), c, bound)
}

/// `x → y → z → w → x`, applied `k` times.
fn shift(word: &[ArrowId], k: u32) -> Vec<ArrowId> {
    word.iter().map(|a| (a + k) % 4).collect()
}

/// `h_X = A yzw + B wzy + C wxw + D yxy` and its shifts; `C` and `D` trade
/// places at every step.
pub fn pillowcase_relations<S: Scalar>(q: &Quiver, coeffs: &[S; 4], bound: usize) -> Vec<Element<S>> {
    let template: [(usize, [ArrowId; 3]); 4] = [(0, [Y, Z, W]), (1, [W, Z, Y]), (2, [W, X, W]), (3, [Y, X, Y])];
    (0..4)
        .map(|k| {
            let mut e = Element::zero(bound);
            for (slot, w) in &template {
                let slot = if k % 2 == 1 && *slot >= 2 { 5 - slot } else { *slot };
                e = e.add(&word_elem(q, &shift(w, k), coeffs[slot].clone(), bound));
            }
            e
        })
        .collect()
}

/// `Φ = A xyzw + B wzyx + ½C((wx)² + (yz)²) + ½D((xy)² + (zw)²)`.
pub fn pillowcase_phi<S: Scalar>(q: &Quiver, coeffs: &[S; 4]) -> Result<CyclicPotential<S>> {
    let half = S::from_rational(&ratio(1, 2));
    let mut phi = CyclicPotential::new();
    phi.add_word(q, &[X, Y, Z, W], coeffs[0].clone())?;
    phi.add_word(q, &[W, Z, Y, X], coeffs[1].clone())?;
    for w in [[W, X, W, X], [Y, Z, Y, Z]] {
        phi.add_word(q, &w, coeffs[2].times(&half))?;
    }
    for w in [[X, Y, X, Y], [Z, W, Z, W]] {
        phi.add_word(q, &w, coeffs[3].times(&half))?;
    }
    Ok(phi)
}

/// Exact `φ(q_d)` and `ψ(q_d)` modulo `q_d^order`.
pub fn pillowcase_series(order: i64) -> (QSeries, QSeries) {
    let mut phi = Vec::new();
    let mut psi = Vec::new();
    for k in 0..order {
        for l in 0..order {
            let (k4, l4) = (4 * k, 4 * l);
            if (k4 + 1) * (l4 + 1) < order {
                phi.push((Exp::from_integer((k4 + 1) * (l4 + 1)), rat(k4 + 1)));
            }
            if (k4 + 3) * (l4 + 3) < order {
                phi.push((Exp::from_integer((k4 + 3) * (l4 + 3)), rat(k4 + 3)));
            }
            if (k4 + 1) * (l4 + 3) < order {
                psi.push((Exp::from_integer((k4 + 1) * (l4 + 3)), rat(k + l + 1)));
            }
        }
    }
    let o = Some(Exp::from_integer(order));
    (QSeries::from_terms(phi, o), QSeries::from_terms(psi, o))
}

/// `φ (Σ of the eight squares) + ψ (xyzw + wzyx)`.
pub fn w0<S: Scalar>(q: &Quiver, phi: &S, psi: &S, bound: usize) -> Element<S> {
    let squares = [[X, Y, X, Y], [X, W, X, W], [Z, Y, Z, Y], [Z, W, Z, W], [Y, X, Y, X], [W, X, W, X], [Y, Z, Y, Z], [W, Z, W, Z]];
    let mut e = Element::zero(bound);
    for s in squares {
        e = e.add(&word_elem(q, &s, phi.clone(), bound));
    }
    e.add(&word_elem(q, &[X, Y, Z, W], psi.clone(), bound)).add(&word_elem(q, &[W, Z, Y, X], psi.clone(), bound))
}

/// Relations of the commutative member, from `Φ₀ = xyzw − wzyx`.
pub fn central_fiber_system<S: Scalar>(bound: usize) -> Result<(Quiver, ReductionSystem<S>)> {
    let q = conifold_quiver();
    let rels = pillowcase_relations(&q, &[S::one(), S::one().negate(), S::zero(), S::zero()], bound);
    let sys = ReductionSystem::build(&q, &rels, CompletionOptions::new(bound))?;
    Ok((q, sys))
}

/// Centrality of `W₀` with exact series coefficients truncated at `q_d^qorder`.
pub fn w0_centrality(bound: usize, qorder: i64) -> Result<Centrality<QSeries>> {
    let (q, sys) = central_fiber_system::<QSeries>(bound)?;
    let (phi, psi) = pillowcase_series(qorder);
    is_central(&q, &w0(&q, &phi, &psi, bound), &sys, bound)
}

/// Normal forms of `αβ − βα` and `αγ − βδ` for the loops
/// `α = yz, β = wz, γ = wx, δ = yx` at `v2`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexSubalgebra {
    pub commutator: Element<BigRational>,
    pub conifold: Element<BigRational>,
    /// Every pair of loops commutes.
    pub all_commute: bool,
}

impl VertexSubalgebra {
    pub fn holds(&self) -> bool {
        self.commutator.is_zero() && self.conifold.is_zero() && self.all_commute
    }
}

pub fn vertex_subalgebra_check(bound: usize) -> Result<VertexSubalgebra> {
    let (q, sys) = central_fiber_system::<BigRational>(bound)?;
    let loops: Vec<Element<BigRational>> =
        [[Y, Z], [W, Z], [W, X], [Y, X]].iter().map(|w| word_elem(&q, w, rat(1), bound)).collect();
    let [al, be, ga, de] = [&loops[0], &loops[1], &loops[2], &loops[3]];
    let commutator = sys.normal_form(&al.mul(be).sub(&be.mul(al)));
    let conifold = sys.normal_form(&al.mul(ga).sub(&be.mul(de)));
    let all_commute = loops
        .iter()
        .enumerate()
        .all(|(i, a)| loops[i + 1..].iter().all(|b| sys.normal_form(&a.mul(b).sub(&b.mul(a))).is_zero()));
    Ok(VertexSubalgebra { commutator, conifold, all_commute })
}

/// `j` of the two series ratios and of the eta quotient, in `q_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpenMirror {
    /// Number of orders beyond `1/q` compared.
    pub orders: usize,
    pub j_psi_over_phi: QSeries,
    pub j_phi_over_psi: QSeries,
    pub j_eta: QSeries,
    /// `(ψ/φ)·σ_η`.
    pub product: QSeries,
    /// `j(ψ/φ)` equals `j(16φ/ψ)` term by term.
    pub symmetric: bool,
}

/// Coefficients of `q^{-1}, q^0, …, q^{n-2}` with `q = q_d⁸`.
pub fn q_coefficients(s: &QSeries, n: usize) -> Vec<BigRational> {
    (0..n as i64).map(|k| s.coeff_int(8 * (k - 1))).collect()
}

/// True when every exponent present is a multiple of 8.
pub fn is_series_in_q(s: &QSeries) -> bool {
    s.terms().all(|(e, _)| e.is_integer() && e.to_integer() % 8 == 0)
}

/// The `j`-expansion constants after `1/q`.
pub const J_CONSTANTS: [i64; 4] = [744, 196_884, 21_493_760, 864_299_970];

impl OpenMirror {
    fn compare(&self, s: &QSeries) -> bool {
        let cut = Exp::from_integer(8 * self.orders as i64);
        s.truncate(cut) == self.j_eta.truncate(cut)
    }

    pub fn literal_matches_eta(&self) -> bool {
        self.compare(&self.j_psi_over_phi)
    }

    pub fn inverse_matches_eta(&self) -> bool {
        self.compare(&self.j_phi_over_psi)
    }

    /// `1/q + 744 + 196884 q + …` up to the compared orders.
    pub fn matches_constants(s: &QSeries, orders: usize) -> bool {
        let got = q_coefficients(s, orders + 1);
        let mut want = vec![rat(1)];
        want.extend(J_CONSTANTS.iter().take(orders).map(|&c| rat(c)));
        got == want
    }
}

pub fn open_mirror_check(orders: usize) -> Result<OpenMirror> {
    if orders == 0 || orders > 6 {
        return Err(Error::Resource(format!("open mirror check supports 1..=6 orders, got {orders}")));
    }
    let cut = 8 * orders as i64;
    let work = cut + 24;
    let (phi, psi) = pillowcase_series(work);
    let rho = psi.mul(&phi.inv().expect("φ is nonzero"));
    let rho_inv = phi.mul(&psi.inv().expect("ψ is nonzero"));
    let sigma = sigma_eta_series(work);
    let j_lit = j_of_sigma(&rho)?;
    let j_inv = j_of_sigma(&rho_inv)?;
    let j_eta = j_of_sigma(&sigma)?;
    for s in [&j_lit, &j_inv, &j_eta] {
        if s.order().is_none_or(|o| o < Exp::from_integer(cut)) {
            return Err(Error::Resource("series budget too small for the requested orders".into()));
        }
    }
    let sixteen_over = QSeries::constant(rat(16)).mul(&rho.inv().expect("ρ is nonzero"));
    let symmetric = j_of_sigma(&sixteen_over)?.truncate(Exp::from_integer(cut)) == j_lit.truncate(Exp::from_integer(cut));
    let c = Exp::from_integer(cut);
    Ok(OpenMirror {
        orders,
        j_psi_over_phi: j_lit.truncate(c),
        j_phi_over_psi: j_inv.truncate(c),
        j_eta: j_eta.truncate(c),
        product: rho.mul(&sigma).truncate(Exp::from_integer(cut.min(rho.order().map_or(cut, |o| o.to_integer())))),
        symmetric,
    })
}

/// Which `(A, B, C, D)` double sum, as `(λ offset, k offset, l offset)` for
/// the positive and negative parts.
const RAW_TABLE: [((f64, f64, f64), (f64, f64, f64)); 4] = [
    ((0.5, 1.0, 1.0), (1.5, 3.0, 3.0)),
    ((1.5, 3.0, 3.0), (0.5, 1.0, 1.0)),
    ((0.5, 3.0, 1.0), (1.5, 1.0, 3.0)),
    ((1.5, 1.0, 3.0), (0.5, 3.0, 1.0)),
];

/// `A, B, C, D` and their `s`-derivatives by direct summation.
///
/// `A = Σ λ^{−2l−1/2} q_d^{(4k+1−2t)(4l+1)} − Σ λ^{2l+3/2} q_d^{(4k+3+2t)(4l+3)}`
/// over `k, l ≥ 0`, and likewise for the others.
pub fn raw_sums(s: f64, t: f64, tau: C) -> Result<([C; 4], [C; 4])> {
    check_tau(tau)?;
    if t.abs() >= 0.5 {
        return Err(Error::Domain(format!("the double sums converge for |t| < 1/2, got t = {t}")));
    }
    // |q_d^e| = e^{−π Im τ e/4}; stop below 1e-20.
    let emax = 46.0 * 4.0 / (PI * tau.im);
    let two_pi_i = C::new(0.0, 2.0 * PI);
    let lam = |p: f64| (two_pi_i * s * p).exp();
    let qd = |e: f64| (C::new(0.0, PI) * tau * (e / 4.0)).exp();
    let mut vals = [C::new(0.0, 0.0); 4];
    let mut ders = vals;
    for (i, (pos, neg)) in RAW_TABLE.iter().enumerate() {
        for (sign, (p, ka, la), ts) in [(1.0, pos, -1.0), (-1.0, neg, 1.0)] {
            let mut l = 0.0;
            loop {
                let lfac = 4.0 * l + la;
                if (ka + 2.0 * ts * t) * lfac > emax {
                    break;
                }
                let lp = if sign > 0.0 { -2.0 * l - p } else { 2.0 * l + p };
                let mut k = 0.0;
                loop {
                    let e = (4.0 * k + ka + 2.0 * ts * t) * lfac;
                    if e > emax {
                        break;
                    }
                    let term = lam(lp) * qd(e) * sign;
                    vals[i] += term;
                    ders[i] += term * two_pi_i * lp;
                    k += 1.0;
                }
                l += 1.0;
            }
        }
    }
    Ok((vals, ders))
}

/// `K = θ₀/K′` with `θ₀ = θ[3/4,0](−1/2, 2τ)` and
/// `K′ = e^{πiτ/2} θ′((2τ+1)/2, 2τ)/(2π)`.
pub fn normalizing_constant(tau: C) -> Result<C> {
    let tt = tau * 2.0;
    let th0 = theta(&ThetaSpec::new(0.75, 0.0, C::new(-0.5, 0.0), tt))?.value;
    let dth = theta_dw(&ThetaSpec::new(0.0, 0.0, (tt + 1.0) / 2.0, tt))?.value;
    let kp = (C::new(0.0, PI) * tau / 2.0).exp() * dth / (2.0 * PI);
    Ok(th0 / kp)
}

/// The theta-ratio closed forms at `ũ = 2u`, `τ̃ = 2τ`:
/// `θ/θ[3/4], −iθ/θ[1/4], iθ[1/2]/θ[1/4], θ[1/2]/θ[3/4]`.
pub fn theta_forms(u: C, tau: C) -> Result<[C; 4]> {
    check_tau(tau)?;
    let (uu, tt) = (u * 2.0, tau * 2.0);
    let th = |a: f64| theta(&ThetaSpec::new(a, 0.0, uu, tt)).map(|v| v.value);
    let (t0, t14, t12, t34) = (th(0.0)?, th(0.25)?, th(0.5)?, th(0.75)?);
    let i = C::i();
    Ok([t0 / t34, -i * t0 / t14, i * t12 / t14, t12 / t34])
}

/// A member at `(s, t, τ)` with `u = −s − τt/2 − 1/4`.
#[derive(Clone, Debug)]
pub struct PillowcaseFamily {
    pub point: FamilyPoint,
    pub u: C,
    pub k: C,
    /// `K·(A, B, C, D)`.
    pub abcd: [C; 4],
    /// `d/du` of the same, `d/du = −d/ds`.
    pub dabcd: [C; 4],
    pub theta_forms: [C; 4],
    /// `φ, ψ` evaluated at `q_d = e^{πiτ/4}`.
    pub phi: C,
    pub psi: C,
}

impl PillowcaseFamily {
    pub fn new(point: FamilyPoint) -> Result<Self> {
        let FamilyPoint { s, t, tau } = point;
        let u = -s - tau * (t / 2.0) - 0.25;
        let (raw, draw) = raw_sums(s, t, tau)?;
        let k = normalizing_constant(tau)?;
        let (phi, psi) = phi_psi_numeric(tau)?;
        Ok(PillowcaseFamily {
            point,
            u,
            k,
            abcd: raw.map(|v| v * k),
            dabcd: draw.map(|v| -v * k),
            theta_forms: theta_forms(u, tau)?,
            phi,
            psi,
        })
    }

    /// `u₀ = −1/4`, that is `s = t = 0`.
    pub fn commutative_point(tau: C) -> Result<Self> {
        Self::new(FamilyPoint::new(0.0, 0.0, tau)?)
    }

    pub fn relations(&self, bound: usize) -> Vec<Element<C>> {
        pillowcase_relations(&conifold_quiver(), &self.abcd, bound)
    }

    pub fn phi_potential(&self) -> Result<CyclicPotential<C>> {
        pillowcase_phi(&conifold_quiver(), &self.abcd)
    }

    /// First component of `W`, the loops at `v1`, without `K/(4πi)`:
    /// `a′(xyzw + zwxy) + b′(xwzy + zyxw) + c′((xw)² + (zy)²) + d′((xy)² + (zw)²)`.
    pub fn potential_first_component(&self, bound: usize) -> Element<C> {
        let q = conifold_quiver();
        let d = &self.dabcd;
        let groups: [(usize, [[ArrowId; 4]; 2]); 4] = [
            (0, [[X, Y, Z, W], [Z, W, X, Y]]),
            (1, [[X, W, Z, Y], [Z, Y, X, W]]),
            (2, [[X, W, X, W], [Z, Y, Z, Y]]),
            (3, [[X, Y, X, Y], [Z, W, Z, W]]),
        ];
        let mut e = Element::zero(bound);
        for (i, words) in groups {
            for w in words {
                e = e.add(&word_elem(&q, &w, d[i], bound));
            }
        }
        e
    }

    /// `|ac + bd|` for the summed and the closed-form coefficients.
    pub fn ac_plus_bd(&self) -> (f64, f64) {
        let f = |v: &[C; 4]| (v[0] * v[2] + v[1] * v[3]).norm();
        (f(&self.abcd), f(&self.theta_forms))
    }

    /// `|a² + c² − b² − d² − r·ac|` for the summed coefficients.
    pub fn quadric(&self, r: C) -> f64 {
        let [a, b, c, d] = self.abcd;
        (a * a + c * c - b * b - d * d - r * a * c).norm()
    }

    /// `max |K·X − x|` between summed and closed-form coefficients.
    pub fn theta_discrepancy(&self) -> f64 {
        self.abcd.iter().zip(&self.theta_forms).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `K·X / x` per coefficient.
    pub fn theta_phases(&self) -> [C; 4] {
        let mut r = [C::new(0.0, 0.0); 4];
        for i in 0..4 {
            r[i] = self.abcd[i] / self.theta_forms[i];
        }
        r
    }
}

/// `φ` and `ψ` summed at `q_d = e^{πiτ/4}`.
pub fn phi_psi_numeric(tau: C) -> Result<(C, C)> {
    check_tau(tau)?;
    let emax = (46.0 * 4.0 / (PI * tau.im)) as i64 + 1;
    let (phi, psi) = pillowcase_series(emax + 1);
    let log_q = C::new(0.0, PI) * tau / 4.0;
    Ok((phi.eval_log(log_q), psi.eval_log(log_q)))
}
