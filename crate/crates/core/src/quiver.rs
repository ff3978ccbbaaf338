//! Quivers and paths.
//!
//! A path is written as a word `c_1 c_2 … c_k` in which `c_k` is applied first,
//! so consecutive letters satisfy `t(c_i) = h(c_{i+1})`. The source of the path
//! is `t(c_k)` and its target is `h(c_1)`. The product `p·q` is the
//! concatenated word and is nonzero iff `t(p) = h(q)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArrowId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Self {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        Parity::from_bit(self.bit() + 1)
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub tail: VertexId,
    pub head: VertexId,
    pub parity: Parity,
    pub degree: Option<BigRational>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::Usage(format!("duplicate vertex '{name}'")));
        }
        let id = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: &str, tail: VertexId, head: VertexId) -> Result<ArrowId> {
        self.add_arrow_full(name, tail, head, Parity::Even, None)
    }

    pub fn add_arrow_full(
        &mut self,
        name: &str,
        tail: VertexId,
        head: VertexId,
        parity: Parity,
        degree: Option<BigRational>,
    ) -> Result<ArrowId> {
        if self.arrow_index.contains_key(name) {
            return Err(Error::Usage(format!("duplicate arrow '{name}'")));
        }
        if tail >= self.vertices.len() || head >= self.vertices.len() {
            return Err(Error::Usage(format!("arrow '{name}' refers to a missing vertex")));
        }
        let id = self.arrows.len() as ArrowId;
        self.arrows.push(Arrow { name: name.to_string(), tail, head, parity, degree });
        self.arrow_index.insert(name.to_string(), id);
        Ok(id)
    }

    /// Convenience builder: vertex names, then `(name, tail, head)` triples.
    pub fn from_spec(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let mut q = Quiver::new();
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (name, t, h) in arrows {
            let t = q.vertex(t)?;
            let h = q.vertex(h)?;
            q.add_arrow(name, t, h)?;
        }
        Ok(q)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Usage(format!("unknown vertex '{name}'")))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Usage(format!("unknown arrow '{name}'")))
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id as usize]
    }

    pub fn arrow_mut(&mut self, id: ArrowId) -> &mut Arrow {
        &mut self.arrows[id as usize]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        0..self.arrows.len() as ArrowId
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow_name(&self, id: ArrowId) -> &str {
        &self.arrows[id as usize].name
    }

    pub fn tail(&self, id: ArrowId) -> VertexId {
        self.arrows[id as usize].tail
    }

    pub fn head(&self, id: ArrowId) -> VertexId {
        self.arrows[id as usize].head
    }

    /// Single-arrow path.
    pub fn arrow_path(&self, id: ArrowId) -> Path {
        Path { src: self.tail(id), tgt: self.head(id), word: vec![id] }
    }

    /// Checks a word and returns it as a path; the empty word needs `trivial_at`.
    pub fn path_from_word(&self, word: &[ArrowId], trivial_at: Option<VertexId>) -> Result<Path> {
        if word.is_empty() {
            let v = trivial_at.ok_or_else(|| Error::Usage("empty word without a vertex".into()))?;
            return Ok(Path::trivial(v));
        }
        for pair in word.windows(2) {
            if self.tail(pair[0]) != self.head(pair[1]) {
                return Err(Error::Usage(format!(
                    "'{}' cannot follow '{}' in a path",
                    self.arrow_name(pair[0]),
                    self.arrow_name(pair[1])
                )));
            }
        }
        Ok(Path {
            src: self.tail(*word.last().unwrap()),
            tgt: self.head(word[0]),
            word: word.to_vec(),
        })
    }

    /// Parses `"x.y.z"` (or `"xyz"` when every arrow name is one character) into a path.
    pub fn parse_path(&self, s: &str) -> Result<Path> {
        let s = s.trim();
        if let Some(v) = s.strip_prefix("e_").or_else(|| s.strip_prefix("pi_")) {
            if let Ok(v) = self.vertex(v) {
                return Ok(Path::trivial(v));
            }
        }
        let word = self.parse_word(s)?;
        self.path_from_word(&word, None)
    }

    pub fn parse_word(&self, s: &str) -> Result<Vec<ArrowId>> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        if s.contains('.') || s.contains(' ') {
            return s
                .split(['.', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| self.arrow_id(t))
                .collect();
        }
        if let Ok(id) = self.arrow_id(s) {
            return Ok(vec![id]);
        }
        if self.arrows.iter().all(|a| a.name.chars().count() == 1) {
            return s.chars().map(|c| self.arrow_id(&c.to_string())).collect();
        }
        Err(Error::Usage(format!("cannot split '{s}' into arrows; separate names with '.'")))
    }

    pub fn word_string(&self, word: &[ArrowId]) -> String {
        let short = self.arrows.iter().all(|a| a.name.chars().count() == 1);
        let names: Vec<&str> = word.iter().map(|&a| self.arrow_name(a)).collect();
        if short {
            names.concat()
        } else {
            names.join(".")
        }
    }

    pub fn path_string(&self, p: &Path) -> String {
        if p.word.is_empty() {
            format!("e_{}", self.vertex_name(p.src))
        } else {
            self.word_string(&p.word)
        }
    }
}

/// A path anchored at its endpoints; `word` is empty exactly for trivial paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub src: VertexId,
    pub tgt: VertexId,
    pub word: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path { src: v, tgt: v, word: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.src == self.tgt
    }

    /// `self · other` (other applied first), `None` when not composable.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.src != other.tgt {
            return None;
        }
        let mut word = Vec::with_capacity(self.word.len() + other.word.len());
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&other.word);
        Some(Path { src: other.src, tgt: self.tgt, word })
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.src.cmp(&other.src))
            .then_with(|| self.tgt.cmp(&other.tgt))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "e_{}", self.src)
        } else {
            let parts: Vec<String> = self.word.iter().map(|a| a.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}
