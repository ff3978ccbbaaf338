use std::collections::BTreeMap;

use super::{Dimer, MinimumChoice, Sign, ZigzagCycle};
use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::potential::{rotate, CyclicPotential};
use crate::quiver::{ArrowId, Path};
use crate::reduction::{CompletionOptions, ReductionSystem};
use crate::scalar::Scalar;

/// One summand of the worldsheet potential: a face loop at a dual vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WTerm {
    pub cycle: usize,
    pub segment: usize,
    pub face: usize,
    pub word: Vec<ArrowId>,
}

/// Everything derived from a dimer's faces: the dual dimer, the potential on
/// the dual quiver and the worldsheet potential with its minima.
#[derive(Clone, Debug)]
pub struct PotentialData<S: Scalar> {
    pub dual: Dimer,
    pub cycles: Vec<ZigzagCycle>,
    pub phi: CyclicPotential<S>,
    pub w_terms: Vec<WTerm>,
    pub w: Element<S>,
}

impl<S: Scalar> PotentialData<S> {
    /// Jacobian relations of `phi` completed up to `bound`.
    pub fn reduction_system(&self, opts: CompletionOptions) -> Result<ReductionSystem<S>> {
        let rels = self.phi.jacobian_relations(self.dual.quiver(), opts.bound)?;
        ReductionSystem::build(self.dual.quiver(), &rels, opts)
    }

    /// `W` restricted to the loops at one dual vertex.
    pub fn w_at(&self, v: usize) -> Element<S> {
        self.w.restrict(v, v)
    }

    pub fn w_display(&self) -> String {
        let q = self.dual.quiver();
        let parts: Vec<String> = self.w_terms.iter().map(|t| q.word_string(&t.word)).collect();
        parts.join(" + ")
    }
}

impl Dimer {
    /// Signed face words of this dimer, `Σ₊ − Σ₋`, as a potential on its own quiver.
    pub fn face_word_potential<S: Scalar>(&self) -> Result<CyclicPotential<S>> {
        self.require_valid()?;
        let mut phi = CyclicPotential::new();
        for f in self.faces() {
            let c = match f.sign {
                Sign::Plus => S::one(),
                Sign::Minus => S::one().negate(),
            };
            phi.add_word(self.quiver(), &f.word, c)?;
        }
        Ok(phi)
    }

    /// The face words exactly as stored, e.g. `abecd - aedcb`.
    pub fn face_word_display(&self) -> String {
        let q = self.quiver();
        let mut out = String::new();
        for (i, f) in self.faces().iter().enumerate() {
            match (i, f.sign) {
                (0, Sign::Plus) => {}
                (0, Sign::Minus) => out.push('-'),
                (_, s) => out.push_str(&format!(" {} ", s.symbol())),
            }
            out.push_str(&q.word_string(&f.word));
        }
        out
    }

    /// Potential on the dual quiver: positive faces minus reversed negative faces.
    pub fn spacetime_potential<S: Scalar>(&self) -> Result<(Dimer, CyclicPotential<S>)> {
        let dual = self.dual()?;
        let phi = dual.face_word_potential()?;
        Ok((dual, phi))
    }

    /// Word contributed by segment `j` of a zigzag cycle, read from the minimum.
    fn segment_term(&self, c: &ZigzagCycle, j: usize) -> WTerm {
        let n = c.len();
        let a_j = c.states[j % n].arrow;
        let a_next = c.states[(j + 1) % n].arrow;
        if j % 2 == 0 {
            let face = self.face_index(a_j, Sign::Plus);
            WTerm { cycle: c.id, segment: j, face, word: self.face_from(a_j, Sign::Plus) }
        } else {
            let face = self.face_index(a_j, Sign::Minus);
            let rev: Vec<ArrowId> = self.faces()[face].word.iter().rev().copied().collect();
            let pos = rev.iter().position(|&x| x == a_next).expect("zig step stays in its face");
            WTerm { cycle: c.id, segment: j, face, word: rotate(&rev, pos) }
        }
    }

    /// Worldsheet potential terms; cycles without an explicit choice use segment 0.
    pub fn worldsheet_terms(&self, choices: &BTreeMap<String, MinimumChoice>) -> Result<Vec<WTerm>> {
        let cycles = self.zigzag_cycles()?;
        for name in choices.keys() {
            if !cycles.iter().any(|c| &c.name() == name) {
                return Err(Error::Usage(format!("minimum given for unknown zigzag cycle '{name}'")));
            }
        }
        let mut out = Vec::new();
        for c in &cycles {
            let term = match choices.get(&c.name()) {
                None => self.segment_term(c, 0),
                Some(MinimumChoice::Segment(j)) => {
                    if *j >= c.len() {
                        return Err(Error::Usage(format!("{} has only {} segments", c.name(), c.len())));
                    }
                    self.segment_term(c, *j)
                }
                Some(MinimumChoice::Face(f)) => (0..c.len())
                    .map(|j| self.segment_term(c, j))
                    .find(|t| t.face == *f)
                    .ok_or_else(|| Error::Usage(format!("face {f} is not adjacent to {}", c.name())))?,
            };
            out.push(term);
        }
        Ok(out)
    }

    /// Φ on the dual quiver and `W = Σ W_i` for the given (or stored) minima.
    pub fn potentials<S: Scalar>(
        &self,
        choices: Option<&BTreeMap<String, MinimumChoice>>,
        bound: usize,
    ) -> Result<PotentialData<S>> {
        let (dual, phi) = self.spacetime_potential::<S>()?;
        let cycles = self.zigzag_cycles()?;
        let w_terms = self.worldsheet_terms(choices.unwrap_or(&self.minima))?;
        let mut w = Element::zero(bound);
        for t in &w_terms {
            let p: Path = dual.quiver().path_from_word(&t.word, None)?;
            w.add_term(p, S::one());
        }
        Ok(PotentialData { dual, cycles, phi, w_terms, w })
    }
}
