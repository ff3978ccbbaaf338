//! Zigzag consistency by unwinding zig and zag rays in a covering surface.
//!
//! Lifts are tracked through closed cochains: every rational 1-cochain on the
//! arrows that sums to zero around each face integrates along a path, and the
//! vector of integrals over a basis of such cochains, together with the
//! current vertex, labels a point of the maximal abelian cover. On the sphere
//! and the torus that cover is the universal cover, so a meeting there is a
//! genuine inconsistency; in higher genus it is only evidence.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::{Dimer, State};
use crate::error::Result;
use crate::linalg::{nullspace, Matrix};
use crate::quiver::ArrowId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Consistency {
    ConsistentUpTo(usize),
    /// The zig ray of `arrow` (after `zig_steps`) and its zag ray (after
    /// `zag_steps`) pass through the same lift of `meet`.
    Inconsistent { arrow: ArrowId, meet: ArrowId, zig_steps: usize, zag_steps: usize },
    Inconclusive { arrow: ArrowId, meet: ArrowId, reason: String },
}

impl Consistency {
    pub fn label(&self) -> String {
        match self {
            Consistency::ConsistentUpTo(d) => format!("CONSISTENT-UP-TO-{d}"),
            Consistency::Inconsistent { .. } => "INCONSISTENT".into(),
            Consistency::Inconclusive { .. } => "INCONCLUSIVE".into(),
        }
    }
}

/// Basis of rational cochains on arrows vanishing on every face boundary.
pub fn closed_cochains(d: &Dimer) -> Vec<Vec<BigRational>> {
    let n = d.quiver().arrow_count();
    let m: Matrix = d
        .faces()
        .iter()
        .map(|f| {
            let mut row = vec![BigRational::zero(); n];
            for &a in &f.word {
                row[a as usize] += BigRational::from_integer(1.into());
            }
            row
        })
        .collect();
    nullspace(&m, n)
}

type Lift = (ArrowId, Vec<BigRational>);

fn ray(d: &Dimer, start: State, depth: usize, basis: &[Vec<BigRational>]) -> Vec<Lift> {
    let mut pos = vec![BigRational::zero(); basis.len()];
    let mut s = start;
    let mut out = Vec::with_capacity(depth + 1);
    for _ in 0..=depth {
        out.push((s.arrow, pos.clone()));
        for (p, w) in pos.iter_mut().zip(basis) {
            *p += &w[s.arrow as usize];
        }
        s = d.zig_step(s);
    }
    out
}

pub fn zigzag_consistent(d: &Dimer, depth: usize) -> Result<Consistency> {
    d.require_valid()?;
    if depth == 0 {
        return Ok(Consistency::ConsistentUpTo(0));
    }
    let basis = closed_cochains(d);
    let exact_cover = d.genus().is_some_and(|g| g <= 1);
    for e in d.quiver().arrow_ids() {
        let zig = ray(d, State { arrow: e, parity: 0 }, depth, &basis);
        let zag = ray(d, State { arrow: e, parity: 1 }, depth, &basis);
        let origin = &zig[0];
        let mut seen: HashMap<&Lift, usize> = HashMap::new();
        for (i, l) in zig.iter().enumerate().skip(1) {
            if l != origin {
                seen.entry(l).or_insert(i);
            }
        }
        for (j, l) in zag.iter().enumerate().skip(1) {
            if let Some(&i) = seen.get(l) {
                let meet = l.0;
                return Ok(if exact_cover {
                    Consistency::Inconsistent { arrow: e, meet, zig_steps: i, zag_steps: j }
                } else {
                    Consistency::Inconclusive {
                        arrow: e,
                        meet,
                        reason: "rays meet in the abelian cover; higher genus needs the universal cover".into(),
                    }
                });
            }
        }
    }
    Ok(Consistency::ConsistentUpTo(depth))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn torus_examples_are_consistent() {
        assert_eq!(zigzag_consistent(&conifold_torus(), 20).unwrap(), Consistency::ConsistentUpTo(20));
        assert_eq!(zigzag_consistent(&c3_torus(), 20).unwrap(), Consistency::ConsistentUpTo(20));
    }

    #[test]
    fn depth_zero_is_vacuous() {
        for d in [pentagon(), conifold_sphere(), conifold_torus()] {
            assert_eq!(zigzag_consistent(&d, 0).unwrap(), Consistency::ConsistentUpTo(0));
        }
    }

    #[test]
    fn cochains_close_on_faces() {
        let d = conifold_torus();
        let basis = closed_cochains(&d);
        // Two independent classes on the torus plus one exact direction from the two vertices.
        assert_eq!(basis.len(), 3);
        for w in &basis {
            for f in d.faces() {
                let s: BigRational = f.word.iter().map(|&a| w[a as usize].clone()).sum();
                assert!(s.is_zero());
            }
        }
    }
}
