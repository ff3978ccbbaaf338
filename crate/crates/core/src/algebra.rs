//! Degree-truncated elements of a path algebra.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quiver::{Path, Quiver, VertexId};
use crate::scalar::{parse_rational, Scalar};

pub const DEFAULT_DEGREE: usize = 12;

/// Finite linear combination of paths with all words of length at most `bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<S: Scalar> {
    terms: BTreeMap<Path, S>,
    bound: usize,
}

impl<S: Scalar> Element<S> {
    pub fn zero(bound: usize) -> Self {
        Element { terms: BTreeMap::new(), bound }
    }

    pub fn from_path(p: Path, c: S, bound: usize) -> Self {
        let mut e = Element::zero(bound);
        e.add_term(p, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Path, S)>>(terms: I, bound: usize) -> Self {
        let mut e = Element::zero(bound);
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    /// Sum of all trivial paths, the unit of the path algebra.
    pub fn unit(q: &Quiver, bound: usize) -> Self {
        Element::from_terms((0..q.vertex_count()).map(|v| (Path::trivial(v), S::one())), bound)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self.terms.retain(|p, _| p.len() <= bound);
        self
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Path, &S)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Path, S> {
        self.terms
    }

    pub fn coeff(&self, p: &Path) -> Option<&S> {
        self.terms.get(p)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest stored path in the (length, word) order.
    pub fn leading(&self) -> Option<(&Path, &S)> {
        self.terms.iter().next_back()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|p| p.len()).max().unwrap_or(0)
    }

    /// Adds `c·p`, dropping words beyond the bound and structural zeros.
    pub fn add_term(&mut self, p: Path, c: S) {
        if p.len() > self.bound || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&p);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.bound = self.bound.min(other.bound);
        out.terms.retain(|p, _| p.len() <= out.bound);
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Element {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c.negate())).collect(),
            bound: self.bound,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Element::zero(self.bound);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c.times(s));
        }
        out
    }

    /// Bilinear extension of path concatenation, truncated at the smaller bound.
    pub fn mul(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        let mut out = Element::zero(bound);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if p.len() + q.len() > bound {
                    continue;
                }
                if let Some(pq) = p.compose(q) {
                    out.add_term(pq, a.times(b));
                }
            }
        }
        out
    }

    pub fn truncate(&self, d: usize) -> Self {
        self.clone().with_bound(self.bound.min(d))
    }

    /// Drops coefficients below `tol` (no-op for exact rings).
    pub fn chop(&self, tol: f64) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.is_negligible(tol))
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
            bound: self.bound,
        }
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.is_negligible(tol))
    }

    /// Largest coefficient magnitude.
    pub fn magnitude(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    /// `π_u · self · π_v`: the part running from `v` to `u`.
    pub fn restrict(&self, from: VertexId, to: VertexId) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.src == from && p.tgt == to)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
            bound: self.bound,
        }
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Element<T> {
        let mut out = Element::zero(self.bound);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), f(c));
        }
        out
    }

    pub fn map_paths(&self, f: impl Fn(&Path) -> Path) -> Self {
        let mut out = Element::zero(self.bound);
        for (p, c) in &self.terms {
            out.add_term(f(p), c.clone());
        }
        out
    }

    /// Human-readable form using arrow names, e.g. `xyzw - wzyx`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let one = S::one();
        let minus_one = one.negate();
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let word = q.path_string(p);
            let piece = if *c == one {
                (false, word)
            } else if *c == minus_one {
                (true, word)
            } else {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) if !rest.contains(['+', '-', ' ']) => (true, format!("{rest}*{word}")),
                    _ if s.contains(['+', ' ']) || s[1..].contains('-') => {
                        (false, format!("({s})*{word}"))
                    }
                    _ => (false, format!("{s}*{word}")),
                }
            };
            match (i, piece.0) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&piece.1);
        }
        out
    }

    /// Parses `"xyz - zyx"`, `"2*x.y + 3/2*z.w"` or `"e_v1"` with rational coefficients.
    pub fn parse(q: &Quiver, s: &str, bound: usize) -> Result<Self> {
        let mut out = Element::zero(bound);
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.trim().is_empty() && !cur.trim_end().ends_with('*') {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && cur.trim().is_empty() {
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                cur.push(ch);
            }
        }
        if !cur.trim().is_empty() {
            chunks.push((neg, cur));
        }
        for (neg, chunk) in chunks {
            let chunk = chunk.trim();
            let (coeff, word) = match chunk.rsplit_once('*') {
                Some((c, w)) => (
                    parse_rational(c).ok_or_else(|| Error::Usage(format!("bad coefficient '{c}'")))?,
                    w.trim(),
                ),
                None => (crate::scalar::rat(1), chunk),
            };
            let coeff = if neg { -coeff } else { coeff };
            let path = q.parse_path(word)?;
            out.add_term(path, S::from_rational(&coeff));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type E = Element<BigRational>;

    fn conifold() -> Quiver {
        Quiver::from_spec(
            &["v1", "v2"],
            &[("x", "v2", "v1"), ("y", "v1", "v2"), ("z", "v2", "v1"), ("w", "v1", "v2")],
        )
        .unwrap()
    }

    #[test]
    fn product_expands_all_loops() {
        let q = conifold();
        let a = E::parse(&q, "x + z", 12).unwrap();
        let b = E::parse(&q, "y + w", 12).unwrap();
        let p = a.mul(&b);
        assert_eq!(p, E::parse(&q, "xy + xw + zy + zw", 12).unwrap());
    }

    #[test]
    fn truncation_drops_long_words() {
        let q = conifold();
        let a = E::parse(&q, "x + xyzw", 12).unwrap();
        assert_eq!(a.truncate(3), E::parse(&q, "x", 12).unwrap().with_bound(3));
        assert_eq!(a.truncate(4).len(), 2);
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let q = conifold();
        let a = E::parse(&q, "xyzw - wzyx + 3/2*xy - 2*e_v1", 12).unwrap();
        let shown = a.display(&q);
        assert_eq!(E::parse(&q, &shown, 12).unwrap(), a);
    }

    #[test]
    fn unit_acts_trivially() {
        let q = conifold();
        let a = E::parse(&q, "xyz + w - 2*yx", 12).unwrap();
        assert_eq!(E::unit(&q, 12).mul(&a), a);
        assert_eq!(a.mul(&E::unit(&q, 12)), a);
    }
}
