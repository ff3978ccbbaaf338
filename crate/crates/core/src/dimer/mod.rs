//! Dimer models: quivers whose arrows bound signed polygonal faces of a surface.
//!
//! A face is stored as its boundary word in path order, so the letter written
//! to the left of `e` is the arrow traversed right after `e`.

mod consistency;
mod io;
mod matching;
mod potentials;
mod triangulation;
mod zigzag;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Quiver};

pub use consistency::{zigzag_consistent, Consistency};
pub use io::{Document, MinimumChoice};
pub use matching::{brute_force_matchings, grade_by_matching, perfect_matchings, word_degree, Matchings};
pub use potentials::{PotentialData, WTerm};
pub use triangulation::{Triangulation, TriangulationQuiver};
pub use zigzag::{isomorphic, State, ZigzagCycle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "positive",
            Sign::Minus => "negative",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub sign: Sign,
    pub word: Vec<ArrowId>,
}

/// Problems found by [`Dimer::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyFace { face: usize },
    FaceNotCycle { face: usize },
    MissingFace { arrow: String, sign: Sign },
    RepeatedFace { arrow: String, sign: Sign },
    EulerMismatch { declared_genus: u32, euler: i64 },
    NonOrientableEuler { euler: i64 },
    VertexNotDisc { vertex: String, orbits: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyFace { face } => write!(f, "face {face} is empty"),
            Violation::FaceNotCycle { face } => write!(f, "face {face} is not a cycle"),
            Violation::MissingFace { arrow, sign } => {
                write!(f, "arrow {arrow} lacks {} face", sign.name())
            }
            Violation::RepeatedFace { arrow, sign } => {
                write!(f, "arrow {arrow} lies on more than one {} face", sign.name())
            }
            Violation::EulerMismatch { declared_genus, euler } => {
                write!(f, "Euler characteristic {euler} does not match genus {declared_genus}")
            }
            Violation::NonOrientableEuler { euler } => {
                write!(f, "Euler characteristic {euler} is odd or exceeds 2")
            }
            Violation::VertexNotDisc { vertex, orbits } => {
                write!(f, "vertex {vertex} has {orbits} corner cycles instead of one")
            }
        }
    }
}

/// A quiver with signed faces; `genus` is the declared genus, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct Dimer {
    quiver: Quiver,
    faces: Vec<Face>,
    genus: Option<u32>,
    pub minima: BTreeMap<String, MinimumChoice>,
    pub fmap: BTreeMap<String, String>,
    /// Face index and position of every arrow in its positive and negative face.
    plus_pos: Vec<Option<(usize, usize)>>,
    minus_pos: Vec<Option<(usize, usize)>>,
}

impl Dimer {
    pub fn new(quiver: Quiver, faces: Vec<Face>, genus: Option<u32>) -> Self {
        let n = quiver.arrow_count();
        let mut plus_pos = vec![None; n];
        let mut minus_pos = vec![None; n];
        for (fi, face) in faces.iter().enumerate() {
            for (pos, &a) in face.word.iter().enumerate() {
                let slot = match face.sign {
                    Sign::Plus => &mut plus_pos[a as usize],
                    Sign::Minus => &mut minus_pos[a as usize],
                };
                if slot.is_none() {
                    *slot = Some((fi, pos));
                }
            }
        }
        Dimer { quiver, faces, genus, minima: BTreeMap::new(), fmap: BTreeMap::new(), plus_pos, minus_pos }
    }

    /// Builds a dimer from face strings such as `("+", "abecd")`.
    pub fn from_words(quiver: Quiver, faces: &[(&str, &str)], genus: Option<u32>) -> Result<Self> {
        let mut fs = Vec::new();
        for (s, w) in faces {
            let sign = match *s {
                "+" => Sign::Plus,
                "-" => Sign::Minus,
                other => return Err(Error::Usage(format!("bad face sign '{other}'"))),
            };
            fs.push(Face { sign, word: quiver.parse_word(w)? });
        }
        Ok(Dimer::new(quiver, fs, genus))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn declared_genus(&self) -> Option<u32> {
        self.genus
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.quiver.vertex_count() as i64 - self.quiver.arrow_count() as i64 + self.faces.len() as i64
    }

    /// Genus from the Euler characteristic, when that is a valid closed orientable count.
    pub fn genus(&self) -> Option<u32> {
        let chi = self.euler_characteristic();
        (chi <= 2 && chi % 2 == 0).then(|| ((2 - chi) / 2) as u32)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let q = &self.quiver;
        let mut out = Vec::new();
        let mut counts = vec![[0usize; 2]; q.arrow_count()];
        for (fi, face) in self.faces.iter().enumerate() {
            if face.word.is_empty() {
                out.push(Violation::EmptyFace { face: fi });
                continue;
            }
            match q.path_from_word(&face.word, None) {
                Ok(p) if p.is_cycle() => {}
                _ => out.push(Violation::FaceNotCycle { face: fi }),
            }
            for &a in &face.word {
                counts[a as usize][(face.sign == Sign::Minus) as usize] += 1;
            }
        }
        for a in q.arrow_ids() {
            for (k, sign) in [(0, Sign::Plus), (1, Sign::Minus)] {
                let arrow = q.arrow_name(a).to_string();
                match counts[a as usize][k] {
                    0 => out.push(Violation::MissingFace { arrow, sign }),
                    1 => {}
                    _ => out.push(Violation::RepeatedFace { arrow, sign }),
                }
            }
        }
        let incidence_ok = out.is_empty();
        let chi = self.euler_characteristic();
        match (self.genus, self.genus()) {
            (Some(g), _) if 2 - 2 * g as i64 != chi => {
                out.push(Violation::EulerMismatch { declared_genus: g, euler: chi })
            }
            (None, None) => out.push(Violation::NonOrientableEuler { euler: chi }),
            _ => {}
        }
        if incidence_ok {
            out.extend(self.vertex_violations());
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Errors with the first violation when the dimer is not valid.
    pub fn require_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::Usage(format!("invalid dimer: {v}"))),
        }
    }

    /// Around each vertex the corners must form a single cycle.
    fn vertex_violations(&self) -> Vec<Violation> {
        let q = &self.quiver;
        let n = q.arrow_count();
        let mut orbits = vec![0usize; q.vertex_count()];
        let mut seen = vec![false; n];
        for start in 0..n as ArrowId {
            if seen[start as usize] {
                continue;
            }
            orbits[q.head(start)] += 1;
            let mut e = start;
            while !seen[e as usize] {
                seen[e as usize] = true;
                e = self.prev_minus(self.next_plus(e));
            }
        }
        orbits
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 1)
            .map(|(v, &k)| Violation::VertexNotDisc { vertex: q.vertex_name(v).to_string(), orbits: k })
            .collect()
    }

    fn face_of(&self, e: ArrowId, sign: Sign) -> (usize, usize) {
        let slot = match sign {
            Sign::Plus => self.plus_pos[e as usize],
            Sign::Minus => self.minus_pos[e as usize],
        };
        slot.unwrap_or_else(|| panic!("arrow {} has no {} face", self.quiver.arrow_name(e), sign.name()))
    }

    /// Index of the face of the given sign containing `e`.
    pub fn face_index(&self, e: ArrowId, sign: Sign) -> usize {
        self.face_of(e, sign).0
    }

    /// Arrow traversed right after `e` along its face of the given sign.
    pub fn next_in(&self, e: ArrowId, sign: Sign) -> ArrowId {
        let (fi, pos) = self.face_of(e, sign);
        let w = &self.faces[fi].word;
        w[(pos + w.len() - 1) % w.len()]
    }

    /// Arrow traversed right before `e` along its face of the given sign.
    pub fn prev_in(&self, e: ArrowId, sign: Sign) -> ArrowId {
        let (fi, pos) = self.face_of(e, sign);
        let w = &self.faces[fi].word;
        w[(pos + 1) % w.len()]
    }

    pub fn next_plus(&self, e: ArrowId) -> ArrowId {
        self.next_in(e, Sign::Plus)
    }

    pub fn next_minus(&self, e: ArrowId) -> ArrowId {
        self.next_in(e, Sign::Minus)
    }

    pub fn prev_minus(&self, e: ArrowId) -> ArrowId {
        self.prev_in(e, Sign::Minus)
    }

    /// Face word rotated so that `e` comes first: `e·r`.
    pub fn face_from(&self, e: ArrowId, sign: Sign) -> Vec<ArrowId> {
        let (fi, pos) = self.face_of(e, sign);
        crate::potential::rotate(&self.faces[fi].word, pos)
    }

    /// The path `r_{e,±}` completing `e` to its face loop.
    pub fn complement(&self, e: ArrowId, sign: Sign) -> Vec<ArrowId> {
        self.face_from(e, sign)[1..].to_vec()
    }

    pub(crate) fn with_extras(mut self, minima: BTreeMap<String, MinimumChoice>, fmap: BTreeMap<String, String>) -> Self {
        self.minima = minima;
        self.fmap = fmap;
        self
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn shipped_shapes_are_valid() {
        for d in [pentagon(), conifold_sphere(), conifold_torus(), c3_torus()] {
            assert_eq!(d.validate(), vec![]);
        }
        assert_eq!(conifold_torus().genus(), Some(1));
        assert_eq!(conifold_sphere().genus(), Some(0));
        assert_eq!(pentagon().genus(), Some(2));
    }

    #[test]
    fn missing_negative_face_is_reported() {
        let d = conifold_torus();
        let q = d.quiver().clone();
        let broken = Dimer::from_words(q, &[("+", "xyzw")], Some(1)).unwrap();
        let v = broken.validate();
        assert!(v.iter().any(|x| x.to_string() == "arrow x lacks negative face"), "{v:?}");
    }

    #[test]
    fn euler_mismatch_is_reported() {
        let d = conifold_torus();
        let broken = Dimer::from_words(d.quiver().clone(), &[("+", "xyzw"), ("-", "wzyx")], Some(2)).unwrap();
        assert!(matches!(broken.validate()[0], Violation::EulerMismatch { .. }));
    }

    #[test]
    fn pinched_vertex_is_reported() {
        // Two spheres sharing their only vertex.
        let q = Quiver::from_spec(
            &["v"],
            &[("a", "v", "v"), ("b", "v", "v"), ("c", "v", "v"), ("d", "v", "v")],
        )
        .unwrap();
        let d = Dimer::from_words(q, &[("+", "ab"), ("-", "ab"), ("+", "cd"), ("-", "cd")], None).unwrap();
        assert!(d.validate().iter().any(|v| matches!(v, Violation::VertexNotDisc { .. })));
    }

    #[test]
    fn face_navigation() {
        let d = pentagon();
        let q = d.quiver();
        let id = |s: &str| q.arrow_id(s).unwrap();
        assert_eq!(d.next_plus(id("a")), id("d"));
        assert_eq!(d.next_minus(id("d")), id("e"));
        assert_eq!(q.word_string(&d.complement(id("a"), Sign::Plus)), "becd");
    }
}
