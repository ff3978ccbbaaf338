use std::collections::BTreeSet;

use num_rational::BigRational;

use super::Dimer;
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Quiver};
use crate::scalar::rat;

/// Perfect matchings found by backtracking; `complete` is false when the cap cut
/// the enumeration short.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matchings {
    pub matchings: Vec<BTreeSet<ArrowId>>,
    pub complete: bool,
}

/// Arrow sets meeting every face in exactly one arrow, in lexicographic order.
pub fn perfect_matchings(d: &Dimer, cap: usize) -> Result<Matchings> {
    d.require_valid()?;
    let n = d.quiver().arrow_count();
    let faces: Vec<Vec<ArrowId>> = d.faces().iter().map(|f| f.word.clone()).collect();
    let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (fi, f) in faces.iter().enumerate() {
        for &a in f {
            faces_of[a as usize].push(fi);
        }
    }
    let mut out = Matchings { matchings: Vec::new(), complete: true };
    let mut covered = vec![0usize; faces.len()];
    let mut chosen = Vec::new();
    search(0, n, &faces_of, &faces, &mut covered, &mut chosen, cap, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    next: usize,
    n: usize,
    faces_of: &[Vec<usize>],
    faces: &[Vec<ArrowId>],
    covered: &mut [usize],
    chosen: &mut Vec<ArrowId>,
    cap: usize,
    out: &mut Matchings,
) {
    if !out.complete {
        return;
    }
    // A face whose arrows are all decided without being covered is a dead end.
    for (fi, f) in faces.iter().enumerate() {
        if covered[fi] == 0 && f.iter().all(|&a| (a as usize) < next) {
            return;
        }
    }
    if next == n {
        if out.matchings.len() == cap {
            out.complete = false;
            return;
        }
        out.matchings.push(chosen.iter().copied().collect());
        return;
    }
    let a = next as ArrowId;
    if faces_of[next].iter().all(|&fi| covered[fi] == 0) {
        for &fi in &faces_of[next] {
            covered[fi] += 1;
        }
        chosen.push(a);
        search(next + 1, n, faces_of, faces, covered, chosen, cap, out);
        chosen.pop();
        for &fi in &faces_of[next] {
            covered[fi] -= 1;
        }
    }
    search(next + 1, n, faces_of, faces, covered, chosen, cap, out);
}

/// Exhaustive check over all arrow subsets; feasible up to about 20 arrows.
pub fn brute_force_matchings(d: &Dimer) -> Result<Vec<BTreeSet<ArrowId>>> {
    let n = d.quiver().arrow_count();
    if n > 24 {
        return Err(Error::Usage("brute force enumeration is limited to 24 arrows".into()));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let ok = d
            .faces()
            .iter()
            .all(|f| f.word.iter().filter(|&&a| mask >> a & 1 == 1).count() == 1);
        if ok {
            out.push((0..n as ArrowId).filter(|&a| mask >> a & 1 == 1).collect());
        }
    }
    out.sort();
    Ok(out)
}

/// Quiver with degree 2 on matched arrows and 0 elsewhere.
pub fn grade_by_matching(d: &Dimer, matching: &BTreeSet<ArrowId>) -> Result<Quiver> {
    for f in d.faces() {
        if f.word.iter().filter(|a| matching.contains(a)).count() != 1 {
            return Err(Error::Usage("arrow set is not a perfect matching".into()));
        }
    }
    let mut q = d.quiver().clone();
    for a in q.arrow_ids().collect::<Vec<_>>() {
        let deg: BigRational = if matching.contains(&a) { rat(2) } else { rat(0) };
        q.arrow_mut(a).degree = Some(deg);
    }
    Ok(q)
}

/// Sum of arrow degrees along a word.
pub fn word_degree(q: &Quiver, word: &[ArrowId]) -> BigRational {
    word.iter().map(|&a| q.arrow(a).degree.clone().unwrap_or_else(|| rat(0))).sum()
}
