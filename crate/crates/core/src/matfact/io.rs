//! Text format for matrix factorizations over a known quiver.
//!
//! ```text
//! summands
//! v1 even
//! v2 odd
//! delta
//! 1 0 x
//! 0 1 y.z.w
//! potential
//! x.y.z.w + w.z.y.x
//! ```
//!
//! Entries are `row column element`; omitted entries are zero. Without a
//! `potential` section the caller supplies `W`.

use std::sync::Arc;

use num_rational::BigRational;

use super::{make_mf, MatrixFactorization, Summand};
use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::quiver::{Parity, Quiver};
use crate::reduction::ReductionSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfDocument {
    pub summands: Vec<(String, Parity)>,
    pub entries: Vec<(usize, usize, String)>,
    pub potential: Option<String>,
}

impl MfDocument {
    pub fn parse(text: &str) -> Result<MfDocument> {
        let mut doc = MfDocument { summands: Vec::new(), entries: Vec::new(), potential: None };
        let mut section = String::new();
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.split('#').next().unwrap_or("").trim_end();
            let body = line.trim_start();
            if body.is_empty() {
                continue;
            }
            let col = line.len() - body.len() + 1;
            if matches!(body, "summands" | "delta" | "potential") {
                section = body.to_string();
                continue;
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            match section.as_str() {
                "summands" => {
                    let parity = match toks.get(1).copied() {
                        Some("even") => Parity::Even,
                        Some("odd") => Parity::Odd,
                        _ => return Err(Error::parse(ln, col, "expected: vertex even|odd")),
                    };
                    doc.summands.push((toks[0].to_string(), parity));
                }
                "delta" => {
                    if toks.len() < 3 {
                        return Err(Error::parse(ln, col, "expected: row column element"));
                    }
                    let idx = |t: &str| t.parse::<usize>().map_err(|_| Error::parse(ln, col, format!("bad index '{t}'")));
                    let (i, j) = (idx(toks[0])?, idx(toks[1])?);
                    let n = doc.summands.len();
                    if i >= n || j >= n {
                        return Err(Error::parse(ln, col, format!("index out of range for {n} summands")));
                    }
                    let rest = body.splitn(3, char::is_whitespace).nth(2).unwrap_or("").trim();
                    doc.entries.push((i, j, rest.to_string()));
                }
                "potential" => {
                    let p = doc.potential.get_or_insert_with(String::new);
                    if !p.is_empty() {
                        p.push(' ');
                    }
                    p.push_str(body);
                }
                _ => return Err(Error::parse(ln, col, format!("unexpected line outside a section: '{body}'"))),
            }
        }
        Ok(doc)
    }

    pub fn save(&self) -> String {
        let mut out = String::from("summands\n");
        for (v, p) in &self.summands {
            out.push_str(&format!("{v} {}\n", if *p == Parity::Even { "even" } else { "odd" }));
        }
        out.push_str("delta\n");
        for (i, j, e) in &self.entries {
            out.push_str(&format!("{i} {j} {e}\n"));
        }
        if let Some(w) = &self.potential {
            out.push_str(&format!("potential\n{w}\n"));
        }
        out
    }

    /// Builds and verifies the factorization; `w` overrides the stored potential.
    pub fn build(
        &self,
        q: &Quiver,
        sys: Arc<ReductionSystem<BigRational>>,
        w: Option<Element<BigRational>>,
    ) -> Result<MatrixFactorization<BigRational>> {
        let b = sys.bound();
        let summands = self
            .summands
            .iter()
            .map(|(v, p)| Ok(Summand { vertex: q.vertex(v)?, parity: *p }))
            .collect::<Result<Vec<_>>>()?;
        let n = summands.len();
        let mut delta = vec![vec![Element::zero(b); n]; n];
        for (i, j, e) in &self.entries {
            delta[*i][*j] = delta[*i][*j].add(&Element::parse(q, e, b)?);
        }
        let w = match (w, &self.potential) {
            (Some(w), _) => w,
            (None, Some(s)) => Element::parse(q, s, b)?,
            (None, None) => return Err(Error::Usage("no potential given for the factorization".into())),
        };
        make_mf(q, summands, delta, sys, w).map_err(Error::from)
    }

    pub fn from_mf(q: &Quiver, mf: &MatrixFactorization<BigRational>) -> MfDocument {
        let summands = mf.summands.iter().map(|s| (q.vertex_name(s.vertex).to_string(), s.parity)).collect();
        let mut entries = Vec::new();
        for (i, row) in mf.delta.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    entries.push((i, j, e.display(q)));
                }
            }
        }
        MfDocument { summands, entries, potential: Some(mf.w.display(q)) }
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::super::arc_mf;
    use super::*;
    use crate::dimer::fixtures::conifold_sphere;

    #[test]
    fn round_trip_of_an_arc_factorization() {
        let (data, sys) = setup(&conifold_sphere(), 8);
        let q = data.dual.quiver();
        let mf = arc_mf(&data, sys.clone(), q.arrow_id("x").unwrap()).unwrap();
        let doc = MfDocument::from_mf(q, &mf);
        let text = doc.save();
        let back = MfDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        let rebuilt = back.build(q, sys, None).unwrap();
        assert_eq!(rebuilt.delta, mf.delta);
        assert_eq!(MfDocument::from_mf(q, &rebuilt).save(), text);
    }

    #[test]
    fn bad_index_reports_position() {
        let err = MfDocument::parse("summands\nv1 even\ndelta\n  3 0 x\n").unwrap_err();
        assert_eq!(err, Error::parse(4, 3, "index out of range for 1 summands"));
    }
}
