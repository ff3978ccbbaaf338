//! Truncated Laurent series in a formal parameter `q` with rational exponents.
//!
//! A series carries an optional absolute order `N`: every stored exponent is
//! strictly below `N`, and the true value is only known modulo `O(q^N)`.
//! `order == None` marks an exact (finite) expression.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};



pub type Exp = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    terms: BTreeMap<Exp, BigRational>,
    order: Option<Exp>,
}

fn add_opt(a: Option<Exp>, b: Option<Exp>) -> Option<Exp> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    }
}

fn min_opt(a: Option<Exp>, b: Option<Exp>) -> Option<Exp> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl QSeries {
    pub fn exact_zero() -> Self {
        QSeries { terms: BTreeMap::new(), order: None }
    }

    /// `O(q^order)` with no known terms.
    pub fn big_o(order: Exp) -> Self {
        QSeries { terms: BTreeMap::new(), order: Some(order) }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, Exp::zero())
    }

    pub fn monomial(c: BigRational, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        QSeries { terms, order: None }
    }

    /// Builds a series from `(exponent, coefficient)` pairs, summing repeats and
    /// dropping anything at or beyond `order`.
    pub fn from_terms<I>(pairs: I, order: Option<Exp>) -> Self
    where
        I: IntoIterator<Item = (Exp, BigRational)>,
    {
        let mut terms: BTreeMap<Exp, BigRational> = BTreeMap::new();
        for (e, c) in pairs {
            if order.is_some_and(|o| e >= o) {
                continue;
            }
            *terms.entry(e).or_insert_with(BigRational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        QSeries { terms, order }
    }

    pub fn order(&self) -> Option<Exp> {
        self.order
    }

    pub fn valuation(&self) -> Option<Exp> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, e: Exp) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff_int(&self, e: i64) -> BigRational {
        self.coeff(Exp::from_integer(e))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowers the order to `min(order, n)`.
    pub fn truncate(&self, n: Exp) -> Self {
        let order = min_opt(self.order, Some(n));
        QSeries::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone())), order)
    }

    /// Substitutes `q -> q^k` for a positive rational `k`.
    pub fn compose_power(&self, k: Exp) -> Self {
        assert!(k > Exp::zero(), "compose_power needs a positive exponent");
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (*e * k, c.clone())).collect(),
            order: self.order.map(|o| o * k),
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: Exp) -> Self {
        QSeries {
            terms: self.terms.iter().map(|(x, c)| (*x + e, c.clone())).collect(),
            order: self.order.map(|o| o + e),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QSeries { terms: BTreeMap::new(), order: self.order };
        }
        QSeries {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
            order: self.order,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = min_opt(self.order, other.order);
        QSeries::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (*e, c.clone())),
            order,
        )
    }

    pub fn neg(&self) -> Self {
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = min_opt(
            add_opt(self.order, other.valuation()),
            add_opt(other.order, self.valuation()),
        );
        // Both zero-with-precision: the product is O(q^(o_a + o_b)) at best.
        let order = match (order, self.terms.is_empty() && other.terms.is_empty()) {
            (None, true) => add_opt(self.order, other.order),
            (o, _) => o,
        };
        let mut terms: BTreeMap<Exp, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = *ea + *eb;
                if order.is_some_and(|o| e >= o) {
                    // Exponents of `other` are increasing, nothing further survives.
                    break;
                }
                *terms.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        QSeries { terms, order }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QSeries::constant(BigRational::one());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Laurent inverse. The relative precision is preserved: if `self` has
    /// valuation `v` and order `N`, the inverse has order `N - 2v`.
    pub fn inv(&self) -> Option<Self> {
        let (v, c) = {
            let (v, c) = self.terms.iter().next()?;
            (*v, c.clone())
        };
        let cinv = BigRational::one() / &c;
        let Some(order) = self.order else {
            if self.terms.len() == 1 {
                return Some(QSeries::monomial(cinv, -v));
            }
            return None;
        };
        let rel = order - v;
        // self = c q^v (1 + t) with t having positive exponents below `rel`.
        let t = QSeries::from_terms(
            self.terms.iter().skip(1).map(|(e, x)| (*e - v, x * &cinv)),
            Some(rel),
        );
        let mut result = QSeries::from_terms([(Exp::zero(), BigRational::one())], Some(rel));
        if let Some(tmin) = t.valuation() {
            let mut power = result.clone();
            let neg_t = t.neg();
            let mut k = 1i64;
            while tmin * k < rel {
                power = power.mul(&neg_t);
                result = result.add(&power);
                k += 1;
            }
        }
        Some(result.scale(&cinv).shift(-v))
    }

    /// Evaluates at `q = exp(log_q)`; the exponent branch is fixed by `log_q`.
    pub fn eval_log(&self, log_q: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let ef = *e.numer() as f64 / *e.denom() as f64;
                (log_q * ef).exp() * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// True when the two series agree on every exponent below the smaller order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let cut = min_opt(self.order, other.order);
        let a = match cut {
            Some(o) => self.truncate(o),
            None => self.clone(),
        };
        let b = match cut {
            Some(o) => other.truncate(o),
            None => other.clone(),
        };
        a.terms == b.terms
    }
}

fn fmt_exp(e: &Exp) -> String {
    if e.is_integer() {
        format!("{}", e.numer())
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff = if a.is_one() && !e.is_zero() { String::new() } else { a.to_string() };
            if e.is_zero() {
                write!(f, "{}", coeff)?;
            } else if e.is_one() {
                write!(f, "{}q", coeff)?;
            } else {
                write!(f, "{}q^{}", coeff, fmt_exp(e))?;
            }
        }
        if let Some(o) = self.order {
            if first {
                write!(f, "O(q^{})", fmt_exp(&o))?;
            } else {
                write!(f, " + O(q^{})", fmt_exp(&o))?;
            }
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl crate::scalar::Scalar for QSeries {
    fn zero() -> Self {
        QSeries::exact_zero()
    }
    fn one() -> Self {
        QSeries::constant(<BigRational as One>::one())
    }
    fn from_rational(r: &BigRational) -> Self {
        QSeries::constant(r.clone())
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn recip(&self) -> Option<Self> {
        self.inv()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        self.terms.is_empty()
    }
    fn magnitude(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
    fn is_exact() -> bool {
        true
    }
}

/// `q^(e)` as an exact monomial with rational exponent `n/d`.
pub fn q_pow(n: i64, d: i64) -> QSeries {
    QSeries::monomial(BigRational::one(), Exp::new(n, d))
}

/// Integer coefficient shorthand used by tests and family builders.
pub fn int_coeff(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(cs: &[(i64, i64)], order: i64) -> QSeries {
        QSeries::from_terms(
            cs.iter().map(|&(e, c)| (Exp::from_integer(e), int_coeff(c))),
            Some(Exp::from_integer(order)),
        )
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_q = series(&[(0, 1), (1, -1)], 10);
        let inv = one_minus_q.inv().unwrap();
        for k in 0..10 {
            assert_eq!(inv.coeff_int(k), int_coeff(1));
        }
        assert_eq!(inv.order(), Some(Exp::from_integer(10)));
    }

    #[test]
    fn laurent_inverse_keeps_relative_precision() {
        let s = series(&[(2, 3), (3, 1)], 8);
        let inv = s.inv().unwrap();
        assert_eq!(inv.valuation(), Some(Exp::from_integer(-2)));
        assert_eq!(inv.order(), Some(Exp::from_integer(4)));
        let prod = s.mul(&inv);
        assert!(prod.agrees_with(&QSeries::constant(int_coeff(1))));
    }

    #[test]
    fn product_order_tracks_valuations() {
        let a = series(&[(1, 1)], 5);
        let b = series(&[(0, 1), (2, 1)], 7);
        let p = a.mul(&b);
        assert_eq!(p.order(), Some(Exp::from_integer(5)));
        assert_eq!(p.coeff_int(3), int_coeff(1));
    }

    #[test]
    fn exact_constants_do_not_truncate() {
        let c = QSeries::constant(int_coeff(5));
        let s = series(&[(0, 1), (4, 2)], 6);
        let p = c.mul(&s);
        assert_eq!(p.order(), Some(Exp::from_integer(6)));
        assert_eq!(p.coeff_int(4), int_coeff(10));
    }

    #[test]
    fn fractional_exponents_compose() {
        let s = q_pow(1, 3).add(&q_pow(2, 3));
        let cube = s.pow(3);
        assert_eq!(cube.coeff(Exp::from_integer(1)), int_coeff(1));
        assert_eq!(cube.coeff(Exp::new(4, 3)), int_coeff(3));
    }

    #[test]
    fn display_is_readable() {
        let s = series(&[(1, 1), (5, 6), (9, -13)], 13);
        assert_eq!(s.to_string(), "q + 6q^5 - 13q^9 + O(q^13)");
    }
}
