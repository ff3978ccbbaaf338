//! Cyclic potentials and cyclic derivatives.

use std::collections::BTreeMap;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Parity, Path, Quiver};
use crate::scalar::Scalar;

fn odd_count(q: &Quiver, word: &[ArrowId]) -> usize {
    word.iter().filter(|&&a| q.arrow(a).parity == Parity::Odd).count()
}

/// Koszul sign of moving the prefix `word[..k]` past the rest.
fn rotation_sign(q: &Quiver, word: &[ArrowId], k: usize) -> bool {
    odd_count(q, &word[..k]) % 2 == 1 && odd_count(q, &word[k..]) % 2 == 1
}

/// Lexicographically minimal rotation of a word.
pub fn min_rotation(word: &[ArrowId]) -> Vec<ArrowId> {
    let n = word.len();
    (0..n.max(1))
        .map(|k| {
            let mut r = word[k.min(n)..].to_vec();
            r.extend_from_slice(&word[..k.min(n)]);
            r
        })
        .min()
        .unwrap_or_default()
}

/// Rotation of `word` that starts at position `k`.
pub fn rotate(word: &[ArrowId], k: usize) -> Vec<ArrowId> {
    let mut r = word[k..].to_vec();
    r.extend_from_slice(&word[..k]);
    r
}

/// Formal sum of cyclic words, keyed by minimal rotation.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicPotential<S: Scalar> {
    words: BTreeMap<Vec<ArrowId>, S>,
}

impl<S: Scalar> Default for CyclicPotential<S> {
    fn default() -> Self {
        CyclicPotential { words: BTreeMap::new() }
    }
}

impl<S: Scalar> CyclicPotential<S> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c·[word]`; the word must close up into a cycle of `q`. Rotating
    /// odd arrows past each other costs the Koszul sign.
    pub fn add_word(&mut self, q: &Quiver, word: &[ArrowId], c: S) -> Result<()> {
        if word.is_empty() {
            return Err(Error::Usage("a potential cannot contain trivial paths".into()));
        }
        let p = q.path_from_word(word, None)?;
        if !p.is_cycle() {
            return Err(Error::Usage(format!("'{}' is not a cycle", q.word_string(word))));
        }
        let key = min_rotation(word);
        let k = (0..word.len()).find(|&k| rotate(word, k) == key).unwrap_or(0);
        let c = if rotation_sign(q, word, k) { c.negate() } else { c };
        self.add_class(key, c);
        Ok(())
    }

    fn add_class(&mut self, key: Vec<ArrowId>, c: S) {
        if c.is_zero() {
            return;
        }
        match self.words.get_mut(&key) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero() {
                    self.words.remove(&key);
                } else {
                    *old = s;
                }
            }
            None => {
                self.words.insert(key, c);
            }
        }
    }

    /// Projects a sum of cycles onto cyclic classes.
    pub fn from_element(q: &Quiver, e: &Element<S>) -> Result<Self> {
        let mut out = CyclicPotential::new();
        for (p, c) in e.terms() {
            out.add_word(q, &p.word, c.clone())?;
        }
        Ok(out)
    }

    /// Parses e.g. `"xyzw - wzyx"` with rational coefficients.
    pub fn parse(q: &Quiver, s: &str) -> Result<Self> {
        let e = Element::<S>::parse(q, s, usize::MAX)?;
        Self::from_element(q, &e)
    }

    pub fn words(&self) -> impl Iterator<Item = (&Vec<ArrowId>, &S)> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn coeff(&self, word: &[ArrowId]) -> Option<&S> {
        self.words.get(&min_rotation(word))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.words {
            out.add_class(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = CyclicPotential::new();
        for (w, c) in &self.words {
            out.add_class(w.clone(), c.times(s));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::one().negate())
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CyclicPotential<T> {
        let mut out = CyclicPotential::new();
        for (w, c) in &self.words {
            out.add_class(w.clone(), f(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Degrees (word lengths) present.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.words.keys().map(|w| w.len()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn homogeneous_part(&self, k: usize) -> Self {
        CyclicPotential {
            words: self
                .words
                .iter()
                .filter(|(w, _)| w.len() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Representative-word element (one rotation per class).
    pub fn to_element(&self, q: &Quiver, bound: usize) -> Element<S> {
        let mut e = Element::zero(bound);
        for (w, c) in &self.words {
            let p = q.path_from_word(w, None).expect("stored words are cycles");
            e.add_term(p, c.clone());
        }
        e
    }

    /// `∂_e Φ`: for each occurrence of `e` at position `j` of a word `w`, the
    /// path `w[j+1..] w[..j]`, signed when `w[..j]` and `w[j..]` are both odd.
    pub fn cyclic_derivative(&self, q: &Quiver, e: ArrowId, bound: usize) -> Result<Element<S>> {
        if e as usize >= q.arrow_count() {
            return Err(Error::Usage(format!("arrow {e} is not in the quiver")));
        }
        let mut out = Element::zero(bound);
        for (w, c) in &self.words {
            for (j, &a) in w.iter().enumerate() {
                if a != e {
                    continue;
                }
                let mut rest = w[j + 1..].to_vec();
                rest.extend_from_slice(&w[..j]);
                let p = if rest.is_empty() {
                    Path::trivial(q.tail(e))
                } else {
                    q.path_from_word(&rest, None)?
                };
                let c = if rotation_sign(q, w, j) { c.negate() } else { c.clone() };
                out.add_term(p, c);
            }
        }
        Ok(out)
    }

    /// All nonzero cyclic derivatives, in arrow order.
    pub fn jacobian_relations(&self, q: &Quiver, bound: usize) -> Result<Vec<Element<S>>> {
        let mut rels = Vec::new();
        for e in q.arrow_ids() {
            let r = self.cyclic_derivative(q, e, bound)?;
            if !r.is_zero() {
                rels.push(r);
            }
        }
        Ok(rels)
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.to_element(q, usize::MAX).display(q)
    }
}

/// Outcome of the Euler identity check, per homogeneous degree.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerCheck {
    pub degrees: Vec<usize>,
    pub holds: bool,
}

/// Checks `Σ_e [x_e·∂_e Φ] = k·Φ` for every homogeneous part of degree `k`.
pub fn euler_identity_check<S: Scalar>(q: &Quiver, phi: &CyclicPotential<S>) -> Result<EulerCheck> {
    let degrees = phi.degrees();
    let mut holds = true;
    for &k in &degrees {
        let part = phi.homogeneous_part(k);
        let mut lhs = CyclicPotential::new();
        for e in q.arrow_ids() {
            let d = part.cyclic_derivative(q, e, usize::MAX)?;
            let x = Element::from_path(q.arrow_path(e), S::one(), usize::MAX);
            let prod = x.mul(&d);
            lhs = lhs.add(&CyclicPotential::from_element(q, &prod)?);
        }
        if lhs != part.scale(&S::from_i64(k as i64)) {
            holds = false;
        }
    }
    Ok(EulerCheck { degrees, holds })
}
