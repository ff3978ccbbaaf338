//! First-order checks at the commutative point: the `u`-derivatives of the
//! coefficient functions, estimated by central differences with Richardson
//! extrapolation and compared against term-by-term derivatives.

use num_complex::Complex64 as C;

use super::pillowcase::PillowcaseFamily;
use super::sklyanin::SklyaninFamily;
use super::FamilyPoint;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Sklyanin,
    Pillowcase,
}

impl Family {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "333" => Ok(Family::Sklyanin),
            "2222" => Ok(Family::Pillowcase),
            _ => Err(Error::Usage(format!("unknown family '{s}', expected 333 or 2222"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Family::Sklyanin => "333",
            Family::Pillowcase => "2222",
        }
    }
}

/// Derivative estimates for every coefficient function.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivatives {
    pub h: f64,
    pub step_h: Vec<C>,
    pub step_half: Vec<C>,
    pub richardson: Vec<C>,
    pub exact: Vec<C>,
}

impl Derivatives {
    fn worst(a: &[C], b: &[C]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    pub fn residual_h(&self) -> f64 {
        Self::worst(&self.step_h, &self.exact)
    }

    pub fn residual_half(&self) -> f64 {
        Self::worst(&self.step_half, &self.exact)
    }

    pub fn residual_richardson(&self) -> f64 {
        Self::worst(&self.richardson, &self.exact)
    }

    /// How much extrapolation improved on the plain step-`h` stencil.
    pub fn gain(&self) -> f64 {
        let r = self.residual_richardson();
        if r == 0.0 {
            f64::INFINITY
        } else {
            self.residual_h() / r
        }
    }
}

fn central_differences(f: impl Fn(f64) -> Result<Vec<C>>, h: f64, exact: Vec<C>) -> Result<Derivatives> {
    let diff = |step: f64| -> Result<Vec<C>> {
        let (p, m) = (f(step)?, f(-step)?);
        Ok(p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * step)).collect())
    };
    let d1 = diff(h)?;
    let d2 = diff(h / 2.0)?;
    let rich = d1.iter().zip(&d2).map(|(a, b)| (4.0 * b - a) / 3.0).collect();
    Ok(Derivatives { h, step_h: d1, step_half: d2, richardson: rich, exact })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DqCheck {
    pub family: Family,
    pub tau: C,
    pub derivatives: Derivatives,
    /// `(a′ + b′)/c′` from the extrapolated derivatives.
    pub ratio: C,
    /// The stated target and the target under the alternative reading.
    pub expected: C,
    pub alternative: C,
    /// `c′/d′`, pillowcase only.
    pub cd_ratio: Option<C>,
}

impl DqCheck {
    pub fn residual(&self) -> f64 {
        (self.ratio - self.expected).norm()
    }

    pub fn alternative_residual(&self) -> f64 {
        (self.ratio - self.alternative).norm()
    }

    pub fn cd_residual(&self) -> Option<f64> {
        self.cd_ratio.map(|r| (r - 1.0).norm())
    }
}

/// Runs the check for `family` at step `h`. Targets: `−σ/3` (alternative
/// `+σ/3`) for 333; `ψ/(2φ)` (alternative `φ/(2ψ)`) and `c′ = d′` for 2222.
pub fn dq_first_order_check(family: Family, tau: C, h: f64) -> Result<DqCheck> {
    if !(h > 0.0 && h < 0.1) {
        return Err(Error::Domain(format!("step h must lie in (0, 0.1), got {h}")));
    }
    match family {
        Family::Sklyanin => {
            let base = SklyaninFamily::commutative_point(tau, None)?;
            let p0 = base.point;
            // Moving s moves u along the real axis.
            let at = |dv: f64| -> Result<Vec<C>> {
                Ok(SklyaninFamily::new(FamilyPoint { s: p0.s + dv, ..p0 }, None)?.abc.to_vec())
            };
            let d = central_differences(at, h, base.dabc.to_vec())?;
            let r = &d.richardson;
            let sigma = base.sigma()?;
            Ok(DqCheck {
                family,
                tau,
                ratio: (r[0] + r[1]) / r[2],
                expected: -sigma / 3.0,
                alternative: sigma / 3.0,
                cd_ratio: None,
                derivatives: d,
            })
        }
        Family::Pillowcase => {
            let base = PillowcaseFamily::commutative_point(tau)?;
            let p0 = base.point;
            // u = −s − τt/2 − 1/4, so dv in u is −dv in s.
            let at = |dv: f64| -> Result<Vec<C>> {
                Ok(PillowcaseFamily::new(FamilyPoint { s: p0.s - dv, ..p0 })?.abcd.to_vec())
            };
            let d = central_differences(at, h, base.dabcd.to_vec())?;
            let r = &d.richardson;
            Ok(DqCheck {
                family,
                tau,
                ratio: (r[0] + r[1]) / r[2],
                expected: base.psi / (2.0 * base.phi),
                alternative: base.phi / (2.0 * base.psi),
                cd_ratio: Some(r[2] / r[3]),
                derivatives: d,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sklyanin_ratio() {
        let c = dq_first_order_check(Family::Sklyanin, C::new(0.0, 1.2), 1e-4).unwrap();
        assert!(c.derivatives.gain() >= 4.0, "{:?}", c.derivatives);
        assert!(c.derivatives.residual_richardson() < 1e-8);
        assert!(c.alternative_residual() < 1e-4, "{c:?}");
        assert!(c.residual() > 1.0);
    }

    #[test]
    fn pillowcase_ratio() {
        let c = dq_first_order_check(Family::Pillowcase, C::new(0.1, 1.0), 1e-4).unwrap();
        assert!(c.derivatives.gain() >= 4.0);
        assert!(c.cd_residual().unwrap() < 1e-4);
        assert!(c.alternative_residual() < 1e-4, "{c:?}");
        assert!(c.residual() > 1e-2);
    }

    #[test]
    fn step_is_validated() {
        assert!(matches!(dq_first_order_check(Family::Sklyanin, C::new(0.0, 1.0), 0.0), Err(Error::Domain(_))));
        assert!(Family::parse("444").is_err());
    }
}
