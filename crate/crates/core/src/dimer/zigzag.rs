use std::collections::BTreeMap;

use super::{Dimer, Face, Sign};
use crate::error::Result;
use crate::potential::min_rotation;
use crate::quiver::{ArrowId, Quiver, VertexId};

/// An arrow visited by a zigzag path; parity 0 means the next turn is along the
/// positive face, parity 1 along the negative face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub arrow: ArrowId,
    pub parity: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagCycle {
    pub id: usize,
    pub states: Vec<State>,
}

impl ZigzagCycle {
    pub fn arrows(&self) -> Vec<ArrowId> {
        self.states.iter().map(|s| s.arrow).collect()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn name(&self) -> String {
        format!("Z{}", self.id + 1)
    }

    /// `a0 d1 e0 …` with arrow names and parities.
    pub fn describe(&self, q: &Quiver) -> String {
        self.states
            .iter()
            .map(|s| format!("{}{}", q.arrow_name(s.arrow), s.parity))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Dimer {
    pub fn zig_step(&self, s: State) -> State {
        match s.parity {
            0 => State { arrow: self.next_plus(s.arrow), parity: 1 },
            _ => State { arrow: self.next_minus(s.arrow), parity: 0 },
        }
    }

    /// Zag paths alternate starting along the negative face.
    pub fn zag_step(&self, s: State) -> State {
        match s.parity {
            0 => State { arrow: self.next_minus(s.arrow), parity: 1 },
            _ => State { arrow: self.next_plus(s.arrow), parity: 0 },
        }
    }

    /// All zigzag cycles, each starting at its parity-0 state of smallest arrow
    /// id, ordered by that id.
    pub fn zigzag_cycles(&self) -> Result<Vec<ZigzagCycle>> {
        self.require_valid()?;
        let n = self.quiver().arrow_count();
        let mut seen = vec![[false; 2]; n];
        let mut cycles = Vec::new();
        for a in 0..n as ArrowId {
            if seen[a as usize][0] {
                continue;
            }
            let start = State { arrow: a, parity: 0 };
            let mut states = Vec::new();
            let mut s = start;
            loop {
                seen[s.arrow as usize][s.parity as usize] = true;
                states.push(s);
                s = self.zig_step(s);
                if s == start {
                    break;
                }
            }
            cycles.push(ZigzagCycle { id: cycles.len(), states });
        }
        Ok(cycles)
    }

    /// Index of the zigzag cycle through each state, `[arrow][parity]`.
    pub fn cycle_index(&self, cycles: &[ZigzagCycle]) -> Vec<[usize; 2]> {
        let mut idx = vec![[usize::MAX; 2]; self.quiver().arrow_count()];
        for c in cycles {
            for s in &c.states {
                idx[s.arrow as usize][s.parity as usize] = c.id;
            }
        }
        idx
    }

    /// The dual dimer: vertices are zigzag cycles `Z1, Z2, …`; each arrow runs
    /// from the cycle through its parity-1 state to the one through its parity-0
    /// state; positive faces are kept and negative faces reversed.
    pub fn dual(&self) -> Result<Dimer> {
        let cycles = self.zigzag_cycles()?;
        let idx = self.cycle_index(&cycles);
        let q = self.quiver();
        let mut dq = Quiver::new();
        for c in &cycles {
            dq.add_vertex(&c.name())?;
        }
        for a in q.arrow_ids() {
            let arr = q.arrow(a);
            dq.add_arrow_full(&arr.name, idx[a as usize][1], idx[a as usize][0], arr.parity, arr.degree.clone())?;
        }
        let faces = self
            .faces()
            .iter()
            .map(|f| match f.sign {
                Sign::Plus => f.clone(),
                Sign::Minus => Face { sign: Sign::Minus, word: f.word.iter().rev().copied().collect() },
            })
            .collect();
        let mut out = Dimer::new(dq, faces, None);
        out.genus = out.genus();
        out.fmap = self.fmap.clone();
        Ok(out)
    }
}

/// Vertex bijection `a → b` under which arrows (matched by name) and signed
/// faces (up to rotation) agree; `None` when the dimers are not isomorphic.
pub fn isomorphic(a: &Dimer, b: &Dimer) -> Option<BTreeMap<String, String>> {
    let (qa, qb) = (a.quiver(), b.quiver());
    if qa.vertex_count() != qb.vertex_count() || qa.arrow_count() != qb.arrow_count() {
        return None;
    }
    let mut map: Vec<Option<VertexId>> = vec![None; qa.vertex_count()];
    let mut used = vec![false; qb.vertex_count()];
    let mut bind = |u: VertexId, v: VertexId, map: &mut Vec<Option<VertexId>>| match map[u] {
        Some(w) => w == v,
        None if used[v] => false,
        None => {
            map[u] = Some(v);
            used[v] = true;
            true
        }
    };
    let mut arrow_map = Vec::new();
    for e in qa.arrow_ids() {
        let arr = qa.arrow(e);
        let f = qb.arrow_id(&arr.name).ok()?;
        let brr = qb.arrow(f);
        if arr.parity != brr.parity || !bind(arr.tail, brr.tail, &mut map) || !bind(arr.head, brr.head, &mut map) {
            return None;
        }
        arrow_map.push(f);
    }
    // Isolated vertices are matched in order.
    let mut free_b = (0..qb.vertex_count()).filter(|&v| !used[v]);
    for slot in map.iter_mut().filter(|m| m.is_none()) {
        *slot = Some(free_b.next()?);
    }
    let canon = |d: &Dimer, rename: &dyn Fn(ArrowId) -> ArrowId| {
        let mut fs: Vec<(Sign, Vec<ArrowId>)> = d
            .faces()
            .iter()
            .map(|f| (f.sign, min_rotation(&f.word.iter().map(|&x| rename(x)).collect::<Vec<_>>())))
            .collect();
        fs.sort();
        fs
    };
    if canon(a, &|x| arrow_map[x as usize]) != canon(b, &|x| x) {
        return None;
    }
    Some(
        map.iter()
            .enumerate()
            .map(|(u, v)| (qa.vertex_name(u).to_string(), qb.vertex_name(v.unwrap()).to_string()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn pentagon_has_three_zigzags() {
        let d = pentagon();
        let cs = d.zigzag_cycles().unwrap();
        let q = d.quiver();
        let shown: Vec<String> = cs.iter().map(|c| c.describe(q)).collect();
        assert_eq!(shown, vec!["a0 d1 e0 b1 c0 e1", "b0 a1", "d0 c1"]);
    }

    #[test]
    fn every_state_once() {
        for d in [pentagon(), conifold_sphere(), conifold_torus(), c3_torus()] {
            let cs = d.zigzag_cycles().unwrap();
            let total: usize = cs.iter().map(|c| c.len()).sum();
            assert_eq!(total, 2 * d.quiver().arrow_count());
            let idx = d.cycle_index(&cs);
            assert!(idx.iter().all(|p| p[0] != usize::MAX && p[1] != usize::MAX));
        }
    }

    #[test]
    fn conifold_sphere_dualizes_to_the_torus_quiver() {
        let d = conifold_sphere();
        assert_eq!(d.zigzag_cycles().unwrap().len(), 2);
        let dual = d.dual().unwrap();
        assert!(dual.is_valid());
        assert_eq!(dual.genus(), Some(1));
        let iso = isomorphic(&dual, &conifold_torus()).expect("dual is the conifold torus");
        assert_eq!(iso.len(), 2);
    }

    #[test]
    fn pentagon_dual_counts() {
        let dual = pentagon().dual().unwrap();
        assert_eq!(dual.quiver().vertex_count(), 3);
        assert_eq!(dual.quiver().arrow_count(), 5);
        assert!(dual.is_valid());
        assert_eq!(dual.genus(), Some(1));
    }

    #[test]
    fn double_dual_is_identity() {
        for d in [pentagon(), conifold_sphere(), conifold_torus(), c3_torus()] {
            let dd = d.dual().unwrap().dual().unwrap();
            assert!(isomorphic(&d, &dd).is_some());
        }
    }

    #[test]
    fn isomorphism_rejects_changed_faces() {
        let a = conifold_torus();
        let b = Dimer::from_words(a.quiver().clone(), &[("+", "xwzy"), ("-", "wzyx")], Some(1)).unwrap();
        assert!(isomorphic(&a, &b).is_none());
    }
}
