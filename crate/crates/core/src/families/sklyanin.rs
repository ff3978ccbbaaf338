//! Sklyanin algebras `Sky₃(a, b, c)` with theta-function coefficients and
//! their central potentials.

use std::f64::consts::PI;

use num_complex::Complex64 as C;

use super::commutative::CommPoly;
use super::{check_tau, e2pi, FamilyPoint};
use crate::algebra::Element;
use crate::error::Result;
use crate::potential::CyclicPotential;
use crate::quiver::{ArrowId, Quiver};
use crate::reduction::{is_central, Centrality, CompletionOptions, ReductionSystem};
use crate::scalar::{ratio, Scalar};
use crate::special::{sigma_orb_from_tau, theta_big, theta_big_du};

/// One vertex with loops `x, y, z`.
pub fn sklyanin_quiver() -> Quiver {
    Quiver::from_spec(&["v"], &[("x", "v", "v"), ("y", "v", "v"), ("z", "v", "v")]).expect("static quiver")
}

/// `x → y → z → x`, applied `k` times.
fn shift(word: &[ArrowId], k: u32) -> Vec<ArrowId> {
    word.iter().map(|a| (a + k) % 3).collect()
}

fn word_elem<S: Scalar>(q: &Quiver, word: &[ArrowId], c: S, bound: usize) -> Element<S> {
    Element::from_path(q.path_from_word(word, None).expect("loops compose"), c, bound)
}

/// `h_X = A yz + B zy + C x²` and its images under the cyclic shift.
pub fn sklyanin_relations<S: Scalar>(q: &Quiver, coeffs: &[S; 3], bound: usize) -> Vec<Element<S>> {
    let template: [(usize, [ArrowId; 2]); 3] = [(0, [1, 2]), (1, [2, 1]), (2, [0, 0])];
    (0..3)
        .map(|k| {
            let mut e = Element::zero(bound);
            for (slot, w) in &template {
                e = e.add(&word_elem(q, &shift(w, k), coeffs[*slot].clone(), bound));
            }
            e
        })
        .collect()
}

/// `Φ = A xyz + B zyx + (C/3)(x³ + y³ + z³)`, whose cyclic derivatives are
/// the relations.
pub fn sklyanin_phi<S: Scalar>(q: &Quiver, coeffs: &[S; 3]) -> Result<CyclicPotential<S>> {
    let mut phi = CyclicPotential::new();
    phi.add_word(q, &[0, 1, 2], coeffs[0].clone())?;
    phi.add_word(q, &[2, 1, 0], coeffs[1].clone())?;
    let third = coeffs[2].times(&S::from_rational(&ratio(1, 3)));
    for a in 0..3 {
        phi.add_word(q, &[a, a, a], third.clone())?;
    }
    Ok(phi)
}

/// `a(xyz + zxy + yzx) + b(zyx + xzy + yxz) + c(x³ + y³ + z³)`.
pub fn sklyanin_cubic<S: Scalar>(q: &Quiver, coeffs: &[S; 3], bound: usize) -> Element<S> {
    let mut e = Element::zero(bound);
    for k in 0..3 {
        e = e.add(&word_elem(q, &shift(&[0, 1, 2], k), coeffs[0].clone(), bound));
        e = e.add(&word_elem(q, &shift(&[2, 1, 0], k), coeffs[1].clone(), bound));
        e = e.add(&word_elem(q, &[k, k, k], coeffs[2].clone(), bound));
    }
    e
}

/// Abelianization of a one-vertex element in `x, y, z`.
pub fn commutative_image<S: Scalar>(e: &Element<S>) -> CommPoly<S> {
    let mut p = CommPoly::zero(&["x", "y", "z"]);
    for (path, c) in e.terms() {
        let mut exp = vec![0u32; 3];
        for &a in &path.word {
            exp[a as usize] += 1;
        }
        p.add_term(exp, c.clone());
    }
    p
}

/// A member of the family at `(s, t, τ)`, with `u = s + τt/2 + τ/6`.
#[derive(Clone, Debug)]
pub struct SklyaninFamily {
    pub point: FamilyPoint,
    pub u: C,
    /// `(a, b, c) = (Θ₀, Θ₂, Θ₁)(u, τ)₃`.
    pub abc: [C; 3],
    /// `d/du` of the same.
    pub dabc: [C; 3],
    /// Sum of the truncation bounds of all six theta evaluations.
    pub error_bound: f64,
    pub half_width: Option<usize>,
}

impl SklyaninFamily {
    pub fn new(point: FamilyPoint, half_width: Option<usize>) -> Result<Self> {
        check_tau(point.tau)?;
        let u = point.s + point.tau * (point.t / 2.0 + 1.0 / 6.0);
        Self::at_u(u, point, half_width)
    }

    fn at_u(u: C, point: FamilyPoint, m: Option<usize>) -> Result<Self> {
        let mut abc = [C::new(0.0, 0.0); 3];
        let mut dabc = abc;
        let mut err = 0.0;
        for (i, j) in [0, 2, 1].into_iter().enumerate() {
            let v = theta_big(j, 3, u, point.tau, m)?;
            let dv = theta_big_du(j, 3, u, point.tau, m)?;
            abc[i] = v.value;
            dabc[i] = dv.value;
            err += v.error_bound + dv.error_bound;
        }
        Ok(SklyaninFamily { point, u, abc, dabc, error_bound: err, half_width: m })
    }

    /// The commutative member, `u₀ = 1/2 + τ/6` (`s = 1/2`, `t = 0`).
    pub fn commutative_point(tau: C, half_width: Option<usize>) -> Result<Self> {
        Self::new(FamilyPoint::new(0.5, 0.0, tau)?, half_width)
    }

    pub fn u0(tau: C) -> C {
        0.5 + tau / 6.0
    }

    fn lambda_pow(&self, p: f64) -> C {
        e2pi(C::new(self.point.s * p, 0.0))
    }

    fn q0_pow(&self, e: f64) -> C {
        e2pi(self.point.tau * (e / 24.0))
    }

    /// `q₀^{(3t+1)²} λ^{(1+3t)/2}`, the factor divided out of the raw sums.
    pub fn normalization(&self) -> C {
        let t = self.point.t;
        self.q0_pow((3.0 * t + 1.0).powi(2)) * self.lambda_pow((1.0 + 3.0 * t) / 2.0)
    }

    /// The area/holonomy sums `A, B, C` before rescaling, summed over `|k| ≤ kmax`.
    pub fn raw_coefficients(&self, kmax: Option<i64>) -> [C; 3] {
        let t = self.point.t;
        let kmax = kmax.unwrap_or_else(|| {
            // |q₀^{n²}| = e^{−π Im τ n²/12}; stop once that is below 1e-20.
            let n = (46.0 * 12.0 / (PI * self.point.tau.im)).sqrt();
            ((n + 5.0 + 3.0 * t.abs()) / 6.0).ceil() as i64 + 1
        });
        let pre = self.lambda_pow((1.0 + 3.0 * t) / 2.0);
        let series = |lam_off: f64, q_off: f64| -> C {
            (-kmax..=kmax)
                .map(|k| {
                    let k = k as f64;
                    self.lambda_pow(3.0 * k + lam_off) * self.q0_pow((6.0 * k + q_off + 3.0 * t).powi(2))
                })
                .sum::<C>()
                * pre
        };
        [series(0.0, 1.0), series(2.0, 5.0), series(1.0, 3.0)]
    }

    /// Raw sums divided by [`SklyaninFamily::normalization`]; equal to `abc`.
    pub fn raw_normalized(&self, kmax: Option<i64>) -> [C; 3] {
        let n = self.normalization();
        self.raw_coefficients(kmax).map(|v| v / n)
    }

    /// `−πi q₀^{(3t+1)²} λ^{(1+3t)/2} / 6`.
    pub fn prefactor(&self) -> C {
        C::new(0.0, -PI) * self.normalization() / 6.0
    }

    pub fn relations(&self, bound: usize) -> Vec<Element<C>> {
        sklyanin_relations(&sklyanin_quiver(), &self.abc, bound)
    }

    pub fn phi(&self) -> Result<CyclicPotential<C>> {
        sklyanin_phi(&sklyanin_quiver(), &self.abc)
    }

    /// `W` without the prefactor.
    pub fn potential_normalized(&self, bound: usize) -> Element<C> {
        sklyanin_cubic(&sklyanin_quiver(), &self.dabc, bound)
    }

    pub fn potential(&self, bound: usize) -> Element<C> {
        self.potential_normalized(bound).scale(&self.prefactor())
    }

    /// `σ(q_orb)` with `q_orb = e^{2πiτ/3}`.
    pub fn sigma(&self) -> Result<C> {
        sigma_orb_from_tau(self.point.tau)
    }

    pub fn hesse(&self) -> Result<HesseResidual> {
        let sigma = self.sigma()?;
        let [a, b, c] = self.abc;
        let cubes = a * a * a + b * b * b + c * c * c;
        let abc = a * b * c;
        Ok(HesseResidual {
            sigma,
            minus_sigma: (cubes - sigma * abc).norm(),
            plus_sigma: (cubes + sigma * abc).norm(),
            ratio: cubes / abc,
        })
    }

    /// Completes the relations to `bound` and tests the normalized `W`.
    pub fn centrality(&self, bound: usize, tol: f64) -> Result<Centrality<C>> {
        let q = sklyanin_quiver();
        // Rescale so the largest coefficient is 1; the verdict is scale free.
        let rels: Vec<Element<C>> = self
            .relations(bound)
            .into_iter()
            .map(|r| {
                let m = r.magnitude();
                r.scale(&C::new(1.0 / m, 0.0))
            })
            .collect();
        let sys = ReductionSystem::build(&q, &rels, CompletionOptions::new(bound).tol(tol))?;
        let w = self.potential_normalized(bound);
        let w = w.scale(&C::new(1.0 / w.magnitude(), 0.0));
        is_central(&q, &w, &sys, bound)
    }
}

/// Residuals of the cubic relation `a³ + b³ + c³ ∓ σ abc`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HesseResidual {
    pub sigma: C,
    pub minus_sigma: f64,
    pub plus_sigma: f64,
    /// `(a³ + b³ + c³)/(abc)`.
    pub ratio: C,
}

/// Commutative image of `W` at `u₀` compared with `x³ + y³ + z³ ∓ σ xyz`.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutativeLimit {
    pub image: CommPoly<C>,
    pub sigma: C,
    /// Coefficient of `xyz` over that of `x³`.
    pub xyz_ratio: C,
    pub residual_minus_sigma: f64,
    pub residual_plus_sigma: f64,
    /// Largest coefficient outside `x³, y³, z³, xyz`, relative.
    pub stray: f64,
}

pub fn commutative_limit(tau: C, half_width: Option<usize>) -> Result<CommutativeLimit> {
    let f = SklyaninFamily::commutative_point(tau, half_width)?;
    let sigma = f.sigma()?;
    let image = commutative_image(&f.potential_normalized(3));
    let c3 = image.coeff(&[3, 0, 0]);
    let xyz_ratio = image.coeff(&[1, 1, 1]) / c3;
    let mut stray: f64 = 0.0;
    for (e, c) in image.terms() {
        let allowed = [[3, 0, 0], [0, 3, 0], [0, 0, 3], [1, 1, 1]].iter().any(|m| e[..] == m[..]);
        if !allowed {
            stray = stray.max(c.norm() / c3.norm());
        }
        if e.iter().filter(|&&k| k == 3).count() == 1 {
            stray = stray.max((c / c3 - 1.0).norm());
        }
    }
    Ok(CommutativeLimit {
        image,
        sigma,
        xyz_ratio,
        residual_minus_sigma: (xyz_ratio + sigma).norm(),
        residual_plus_sigma: (xyz_ratio - sigma).norm(),
        stray,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::sample_points;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn tau() -> C {
        C::new(0.13, 1.0)
    }

    #[test]
    fn relations_are_cyclic_derivatives() {
        let q = sklyanin_quiver();
        let coeffs = [rat(2), rat(-5), rat(7)];
        let rels = sklyanin_relations(&q, &coeffs, 4);
        let phi = sklyanin_phi(&q, &coeffs).unwrap();
        let derivs = phi.jacobian_relations(&q, 4).unwrap();
        assert_eq!(rels, derivs);
        assert_eq!(rels[0], Element::parse(&q, "2*yz - 5*zy + 7*xx", 4).unwrap());
        assert_eq!(rels[2], Element::parse(&q, "2*xy - 5*yx + 7*zz", 4).unwrap());
    }

    #[test]
    fn commutative_point_degenerates() {
        let f = SklyaninFamily::commutative_point(tau(), None).unwrap();
        let [a, b, c] = f.abc;
        assert!((a + b).norm() < 1e-12, "{a} {b}");
        assert!(c.norm() < 1e-12);
    }

    #[test]
    fn raw_sums_match_theta_values() {
        for p in sample_points(7, 5, tau()) {
            let f = SklyaninFamily::new(p, None).unwrap();
            let raw = f.raw_normalized(None);
            for i in 0..3 {
                assert!((raw[i] - f.abc[i]).norm() < 1e-10, "{p:?} {i}");
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = FamilyPoint::new(0.31, 0.12, tau()).unwrap();
        let f = SklyaninFamily::new(p, None).unwrap();
        let h = 1e-5;
        for (i, j) in [0, 2, 1].into_iter().enumerate() {
            let up = theta_big(j, 3, f.u + h, p.tau, None).unwrap().value;
            let dn = theta_big(j, 3, f.u - h, p.tau, None).unwrap().value;
            let fd = (up - dn) / (2.0 * h);
            assert!((fd - f.dabc[i]).norm() < 1e-6);
        }
    }

    #[test]
    fn hesse_relation_holds_with_plus_sigma() {
        for p in sample_points(11, 5, tau()) {
            let h = SklyaninFamily::new(p, None).unwrap().hesse().unwrap();
            assert!(h.plus_sigma < 1e-9, "{h:?}");
            assert!(h.minus_sigma > 1e-3);
        }
    }

    #[test]
    fn commutative_limit_is_a_hesse_cubic() {
        let lim = commutative_limit(C::new(0.0, 1.2), None).unwrap();
        assert!(lim.stray < 1e-10);
        assert!(lim.residual_plus_sigma < 1e-8, "{lim:?}");
    }

    #[test]
    fn potential_is_central() {
        let p = FamilyPoint::new(0.21, 0.07, tau()).unwrap();
        let f = SklyaninFamily::new(p, None).unwrap();
        let c = f.centrality(7, 1e-8).unwrap();
        assert!(c.is_central(), "{}", c.label());
    }

    #[test]
    fn generic_cubic_is_not_central() {
        let p = FamilyPoint::new(0.21, 0.07, tau()).unwrap();
        let mut f = SklyaninFamily::new(p, None).unwrap();
        f.dabc[2] *= 1.5;
        let c = f.centrality(6, 1e-8).unwrap();
        assert!(matches!(c, Centrality::NotCentral { .. }), "{}", c.label());
    }

    #[test]
    fn negative_imaginary_tau_is_a_domain_error() {
        let err = FamilyPoint::new(0.1, 0.0, C::new(0.0, -1.0)).unwrap_err();
        assert!(matches!(err, crate::Error::Domain(_)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn relations_are_homogeneous_quadrics(s in 0.0f64..1.0, t in -0.3f64..0.3) {
            let f = SklyaninFamily::new(FamilyPoint::new(s, t, tau()).unwrap(), None).unwrap();
            for r in f.relations(4) {
                prop_assert!(r.terms().all(|(p, _)| p.len() == 2));
            }
            prop_assert!(f.potential(4).terms().all(|(p, _)| p.len() == 3));
        }

        #[test]
        fn doubling_truncation_is_stable(s in 0.0f64..1.0, t in -0.3f64..0.3) {
            let p = FamilyPoint::new(s, t, tau()).unwrap();
            let auto = SklyaninFamily::new(p, None).unwrap();
            let m = crate::special::auto_half_width(auto.u * 3.0, p.tau * 3.0);
            let wide = SklyaninFamily::new(p, Some(2 * m)).unwrap();
            let a = auto.hesse().unwrap().plus_sigma;
            let b = wide.hesse().unwrap().plus_sigma;
            prop_assert!((a - b).abs() < 1e-8);
        }
    }
}
