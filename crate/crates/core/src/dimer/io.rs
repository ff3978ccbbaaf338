//! Plain-text format shared by dimers, decorated quivers and quivers with potential.
//!
//! ```text
//! # comment
//! genus 1
//! vertices
//! v1
//! v2
//! arrows
//! x v2 v1
//! y v1 v2 odd
//! z v2 v1 even 1/2
//! faces
//! + x y z w
//! - w z y x
//! minima
//! Z2 segment 1
//! fmap
//! x 1
//! potential
//! xyzw - wzyx
//! ```
//!
//! Every section is optional except `vertices` and `arrows`. `save` writes the
//! canonical form, which parses back to an identical value.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{Dimer, Face, Sign};
use crate::error::{Error, Result};
use crate::quiver::{Parity, Quiver};
use crate::scalar::parse_rational;

/// Where the worldsheet term of a zigzag cycle starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimumChoice {
    Segment(usize),
    Face(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub quiver: Quiver,
    pub faces: Vec<Face>,
    pub genus: Option<u32>,
    pub minima: BTreeMap<String, MinimumChoice>,
    pub fmap: BTreeMap<String, String>,
    /// Raw potential terms, one sum per line.
    pub potential: Vec<String>,
    pub worldsheet: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    None,
    Vertices,
    Arrows,
    Faces,
    Minima,
    Fmap,
    Potential,
    Worldsheet,
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let mut quiver = Quiver::new();
        let mut face_lines: Vec<(usize, usize, Sign, Vec<(usize, String)>)> = Vec::new();
        let mut genus = None;
        let mut minima = BTreeMap::new();
        let mut fmap = BTreeMap::new();
        let mut potential = Vec::new();
        let mut worldsheet = Vec::new();
        let mut section = Section::None;
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.split('#').next().unwrap_or("");
            let toks = tokens(line);
            if toks.is_empty() {
                continue;
            }
            let head = toks[0].1;
            let next = match head {
                "vertices" => Some(Section::Vertices),
                "arrows" => Some(Section::Arrows),
                "faces" => Some(Section::Faces),
                "minima" => Some(Section::Minima),
                "fmap" => Some(Section::Fmap),
                "potential" => Some(Section::Potential),
                "worldsheet" => Some(Section::Worldsheet),
                _ => None,
            };
            if let (Some(s), 1) = (next, toks.len()) {
                section = s;
                continue;
            }
            if head == "genus" && section != Section::Potential && section != Section::Worldsheet {
                let (col, val) = *toks.get(1).ok_or_else(|| Error::parse(ln, toks[0].0, "genus needs a value"))?;
                genus = Some(val.parse().map_err(|_| Error::parse(ln, col, format!("bad genus '{val}'")))?);
                if toks.len() > 2 {
                    return Err(Error::parse(ln, toks[2].0, "unexpected token"));
                }
                continue;
            }
            match section {
                Section::None => return Err(Error::parse(ln, toks[0].0, format!("unknown section '{head}'"))),
                Section::Vertices => {
                    for (col, name) in toks {
                        quiver.add_vertex(name).map_err(|e| Error::parse(ln, col, e.to_string()))?;
                    }
                }
                Section::Arrows => {
                    if toks.len() < 3 || toks.len() > 5 {
                        return Err(Error::parse(ln, toks[0].0, "expected: name tail head [even|odd] [degree]"));
                    }
                    let vert = |(col, name): (usize, &str)| {
                        quiver.vertex(name).map_err(|e| Error::parse(ln, col, e.to_string()))
                    };
                    let tail = vert(toks[1])?;
                    let head_v = vert(toks[2])?;
                    let parity = match toks.get(3) {
                        None | Some((_, "even")) => Parity::Even,
                        Some((_, "odd")) => Parity::Odd,
                        Some((col, other)) => {
                            return Err(Error::parse(ln, *col, format!("parity must be even or odd, got '{other}'")))
                        }
                    };
                    let degree = match toks.get(4) {
                        None => None,
                        Some((col, d)) => Some(
                            parse_rational(d).ok_or_else(|| Error::parse(ln, *col, format!("bad degree '{d}'")))?,
                        ),
                    };
                    quiver
                        .add_arrow_full(toks[0].1, tail, head_v, parity, degree)
                        .map_err(|e| Error::parse(ln, toks[0].0, e.to_string()))?;
                }
                Section::Faces => {
                    let sign = match head {
                        "+" => Sign::Plus,
                        "-" => Sign::Minus,
                        _ => return Err(Error::parse(ln, toks[0].0, "face lines start with + or -")),
                    };
                    if toks.len() < 2 {
                        return Err(Error::parse(ln, toks[0].0, "face has no arrows"));
                    }
                    let letters = toks[1..].iter().map(|(c, s)| (*c, s.to_string())).collect();
                    face_lines.push((ln, toks[0].0, sign, letters));
                }
                Section::Minima => {
                    if toks.len() != 3 {
                        return Err(Error::parse(ln, toks[0].0, "expected: cycle segment|face index"));
                    }
                    let idx: usize = toks[2]
                        .1
                        .parse()
                        .map_err(|_| Error::parse(ln, toks[2].0, format!("bad index '{}'", toks[2].1)))?;
                    let choice = match toks[1].1 {
                        "segment" => MinimumChoice::Segment(idx),
                        "face" => MinimumChoice::Face(idx),
                        other => return Err(Error::parse(ln, toks[1].0, format!("expected segment or face, got '{other}'"))),
                    };
                    minima.insert(head.to_string(), choice);
                }
                Section::Fmap => {
                    if toks.len() != 2 {
                        return Err(Error::parse(ln, toks[0].0, "expected: arrow element"));
                    }
                    quiver.arrow_id(head).map_err(|e| Error::parse(ln, toks[0].0, e.to_string()))?;
                    fmap.insert(head.to_string(), toks[1].1.to_string());
                }
                Section::Potential => potential.push(line.trim().to_string()),
                Section::Worldsheet => worldsheet.push(line.trim().to_string()),
            }
        }
        let mut faces = Vec::new();
        for (ln, col, sign, letters) in face_lines {
            let mut word = Vec::new();
            for (c, s) in letters {
                let parsed = quiver.parse_word(&s).map_err(|e| Error::parse(ln, c, e.to_string()))?;
                word.extend(parsed);
            }
            if word.is_empty() {
                return Err(Error::parse(ln, col, "face has no arrows"));
            }
            faces.push(Face { sign, word });
        }
        Ok(Document { quiver, faces, genus, minima, fmap, potential, worldsheet })
    }

    pub fn into_dimer(self) -> Dimer {
        Dimer::new(self.quiver, self.faces, self.genus).with_extras(self.minima, self.fmap)
    }

    pub fn save(&self) -> String {
        let q = &self.quiver;
        let mut out = String::new();
        if let Some(g) = self.genus {
            writeln!(out, "genus {g}").unwrap();
        }
        out.push_str("vertices\n");
        for v in q.vertex_names() {
            writeln!(out, "{v}").unwrap();
        }
        out.push_str("arrows\n");
        for a in q.arrows() {
            write!(out, "{} {} {}", a.name, q.vertex_name(a.tail), q.vertex_name(a.head)).unwrap();
            match (&a.parity, &a.degree) {
                (Parity::Even, None) => {}
                (Parity::Odd, None) => out.push_str(" odd"),
                (p, Some(d)) => {
                    write!(out, " {} {}", if *p == Parity::Odd { "odd" } else { "even" }, d).unwrap()
                }
            }
            out.push('\n');
        }
        if !self.faces.is_empty() {
            out.push_str("faces\n");
            for f in &self.faces {
                out.push(f.sign.symbol());
                for &a in &f.word {
                    write!(out, " {}", q.arrow_name(a)).unwrap();
                }
                out.push('\n');
            }
        }
        if !self.minima.is_empty() {
            out.push_str("minima\n");
            for (c, m) in &self.minima {
                match m {
                    MinimumChoice::Segment(j) => writeln!(out, "{c} segment {j}").unwrap(),
                    MinimumChoice::Face(f) => writeln!(out, "{c} face {f}").unwrap(),
                }
            }
        }
        if !self.fmap.is_empty() {
            out.push_str("fmap\n");
            for (a, g) in &self.fmap {
                writeln!(out, "{a} {g}").unwrap();
            }
        }
        for (name, lines) in [("potential", &self.potential), ("worldsheet", &self.worldsheet)] {
            if !lines.is_empty() {
                writeln!(out, "{name}").unwrap();
                for l in lines {
                    writeln!(out, "{l}").unwrap();
                }
            }
        }
        out
    }
}

impl Dimer {
    pub fn load(text: &str) -> Result<Dimer> {
        Ok(Document::parse(text)?.into_dimer())
    }

    pub fn load_file(path: &std::path::Path) -> Result<Dimer> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        Dimer::load(&text)
    }

    pub fn to_document(&self) -> Document {
        Document {
            quiver: self.quiver().clone(),
            faces: self.faces().to_vec(),
            genus: self.declared_genus(),
            minima: self.minima.clone(),
            fmap: self.fmap.clone(),
            potential: Vec::new(),
            worldsheet: Vec::new(),
        }
    }

    pub fn save(&self) -> String {
        self.to_document().save()
    }
}
