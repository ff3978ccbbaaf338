//! Quivers read off ideal triangulations: one vertex per edge, one arrow per
//! triangle corner, and the potential `Σ T(f) − Σ n_p q^{A_p} C(p)`.
//!
//! ```text
//! triangles
//! f1 a b c p1 p2 p3    # edges clockwise, then the pole at each corner
//! poles
//! p1 0 1/2             # disc count n_p and area A_p
//! ```
//!
//! Corner `k` of a triangle sits between its edges `k` and `k+1` and becomes an
//! arrow from edge `k` to edge `k+1`.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::potential::CyclicPotential;
use crate::qseries::QSeries;
use crate::quiver::{ArrowId, Quiver};
use crate::scalar::{parse_rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Triangle {
    pub name: String,
    pub edges: [String; 3],
    pub poles: [String; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoleData {
    pub count: i64,
    pub area: Ratio<i64>,
    /// Corner arrows in cycle order, when given explicitly.
    pub corners: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Triangulation {
    pub triangles: Vec<Triangle>,
    pub poles: BTreeMap<String, PoleData>,
}

#[derive(Clone, Debug)]
pub struct TriangulationQuiver {
    pub quiver: Quiver,
    /// `T(f)` for every triangle, as words in path order.
    pub triangle_cycles: Vec<Vec<ArrowId>>,
    /// `C(p)` for every pole with a nonzero count.
    pub pole_cycles: BTreeMap<String, Vec<ArrowId>>,
    pub phi: CyclicPotential<QSeries>,
}

impl Triangulation {
    pub fn parse(text: &str) -> Result<Triangulation> {
        let mut triangles = Vec::new();
        let mut poles = BTreeMap::new();
        let mut section = "";
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let col = line.find(toks[0]).unwrap_or(0) + 1;
            if toks.len() == 1 && (toks[0] == "triangles" || toks[0] == "poles") {
                section = toks[0];
                continue;
            }
            match section {
                "triangles" => {
                    if toks.len() != 7 {
                        return Err(Error::parse(ln, col, "expected: name e1 e2 e3 p1 p2 p3"));
                    }
                    let s = |i: usize| toks[i].to_string();
                    triangles.push(Triangle { name: s(0), edges: [s(1), s(2), s(3)], poles: [s(4), s(5), s(6)] });
                }
                "poles" => {
                    if toks.len() < 3 {
                        return Err(Error::parse(ln, col, "expected: pole count area [corners…]"));
                    }
                    let count: i64 =
                        toks[1].parse().map_err(|_| Error::parse(ln, col, format!("bad count '{}'", toks[1])))?;
                    let area = parse_rational(toks[2])
                        .and_then(|r| {
                            use num_traits::ToPrimitive;
                            Some(Ratio::new(r.numer().to_i64()?, r.denom().to_i64()?))
                        })
                        .ok_or_else(|| Error::parse(ln, col, format!("bad area '{}'", toks[2])))?;
                    let corners = toks[3..].iter().map(|s| s.to_string()).collect();
                    poles.insert(toks[0].to_string(), PoleData { count, area, corners });
                }
                _ => return Err(Error::parse(ln, col, format!("unknown section '{}'", toks[0]))),
            }
        }
        Ok(Triangulation { triangles, poles })
    }

    pub fn build(&self) -> Result<TriangulationQuiver> {
        let mut q = Quiver::new();
        for t in &self.triangles {
            let [a, b, c] = &t.edges;
            if a == b || b == c || a == c {
                return Err(Error::Unsupported(format!("triangle {} is self-folded", t.name)));
            }
            for e in &t.edges {
                if q.vertex(e).is_err() {
                    q.add_vertex(e)?;
                }
            }
        }
        let mut triangle_cycles = Vec::new();
        let mut corners_at: BTreeMap<String, Vec<ArrowId>> = BTreeMap::new();
        for t in &self.triangles {
            let mut ids = Vec::new();
            for k in 0..3 {
                let from = q.vertex(&t.edges[k])?;
                let to = q.vertex(&t.edges[(k + 1) % 3])?;
                let id = q.add_arrow(&format!("{}_{}", t.name, k + 1), from, to)?;
                corners_at.entry(t.poles[k].clone()).or_default().push(id);
                ids.push(id);
            }
            triangle_cycles.push(vec![ids[2], ids[1], ids[0]]);
        }
        let mut phi = CyclicPotential::new();
        for w in &triangle_cycles {
            phi.add_word(&q, w, <QSeries as Scalar>::one())?;
        }
        let mut pole_cycles = BTreeMap::new();
        for (p, data) in &self.poles {
            if data.count == 0 {
                continue;
            }
            let cycle = if data.corners.is_empty() {
                let arrows = corners_at
                    .get(p)
                    .ok_or_else(|| Error::Usage(format!("pole {p} has no corners")))?;
                chain_corners(&q, p, arrows)?
            } else {
                let mut w = Vec::new();
                for c in &data.corners {
                    w.push(q.arrow_id(c)?);
                }
                w
            };
            let coeff = QSeries::monomial(crate::scalar::rat(-data.count), data.area);
            if data.area < <Ratio<i64> as Zero>::zero() {
                return Err(Error::Domain(format!("pole {p} has negative area")));
            }
            phi.add_word(&q, &cycle, coeff)?;
            pole_cycles.insert(p.clone(), cycle);
        }
        Ok(TriangulationQuiver { quiver: q, triangle_cycles, pole_cycles, phi })
    }
}

/// Orders the corner arrows at a pole into a single cycle (path order).
fn chain_corners(q: &Quiver, pole: &str, arrows: &[ArrowId]) -> Result<Vec<ArrowId>> {
    let mut left: Vec<ArrowId> = arrows[1..].to_vec();
    let mut applied = vec![arrows[0]];
    while !left.is_empty() {
        let last = *applied.last().unwrap();
        let cands: Vec<usize> = (0..left.len()).filter(|&i| q.tail(left[i]) == q.head(last)).collect();
        if cands.len() != 1 {
            return Err(Error::Unsupported(format!(
                "corners at pole {pole} do not chain uniquely; list them explicitly"
            )));
        }
        applied.push(left.remove(cands[0]));
    }
    if q.tail(applied[0]) != q.head(*applied.last().unwrap()) {
        return Err(Error::Unsupported(format!("corners at pole {pole} do not close up")));
    }
    applied.reverse();
    Ok(applied)
}
