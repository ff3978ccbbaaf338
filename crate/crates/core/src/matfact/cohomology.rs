//! Degree-truncated linear algebra on Hom complexes between factorizations.

use num_rational::BigRational;
use num_traits::Zero;

use super::{hom_differential, zero_matrix, HomElement, MatrixFactorization};
use crate::algebra::Element;
use crate::dimer::Dimer;
use crate::error::Result;
use crate::linalg::{rank, Matrix};
use crate::quiver::{Parity, Path, Quiver, VertexId};
use crate::reduction::ReductionSystem;

/// Irreducible paths with the given source and target and length at most `max_len`.
pub fn irreducible_paths(
    q: &Quiver,
    sys: &ReductionSystem<BigRational>,
    src: VertexId,
    tgt: VertexId,
    max_len: usize,
) -> Vec<Path> {
    let mut out = Vec::new();
    let mut frontier = vec![Path::trivial(src)];
    for len in 0..=max_len {
        let mut next = Vec::new();
        for p in frontier {
            if !sys.is_irreducible(&p) {
                continue;
            }
            if p.tgt == tgt {
                out.push(p.clone());
            }
            if len == max_len {
                continue;
            }
            for a in q.arrow_ids() {
                if q.tail(a) == p.tgt {
                    let mut word = vec![a];
                    word.extend_from_slice(&p.word);
                    next.push(Path { src: p.src, tgt: q.head(a), word });
                }
            }
        }
        frontier = next;
    }
    out
}

/// Basis of `Hom(M, N)` of the given parity with entries single irreducible
/// paths of length at most `max_len`.
pub fn hom_basis(
    q: &Quiver,
    m: &MatrixFactorization<BigRational>,
    n: &MatrixFactorization<BigRational>,
    parity: Parity,
    max_len: usize,
) -> Vec<HomElement<BigRational>> {
    let b = m.bound().min(n.bound());
    let mut out = Vec::new();
    for (i, r) in n.summands.iter().enumerate() {
        for (j, c) in m.summands.iter().enumerate() {
            if r.parity.add(c.parity) != parity {
                continue;
            }
            for p in irreducible_paths(q, &n.system, r.vertex, c.vertex, max_len) {
                let mut entries = zero_matrix(n.size(), m.size(), b);
                entries[i][j] = Element::from_path(p, BigRational::from_integer(1.into()), b);
                out.push(HomElement { entries, parity });
            }
        }
    }
    out
}

/// Coordinates of a normal-formed morphism on the irreducible paths of `coords`.
fn vectorize(f: &HomElement<BigRational>, coords: &[(usize, usize, Path)]) -> Option<Vec<BigRational>> {
    let mut v = vec![BigRational::zero(); coords.len()];
    let mut hit = 0;
    for (k, (i, j, p)) in coords.iter().enumerate() {
        if let Some(c) = f.entries[*i][*j].coeff(p) {
            v[k] = c.clone();
            hit += 1;
        }
    }
    let total: usize = f.entries.iter().flatten().map(|e| e.len()).sum();
    (hit == total).then_some(v)
}

/// Outcome of the independence test for `ζ^{(0..)}` modulo coboundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Independence {
    /// Number of `ζ^{(i)}` considered (those whose entries fit the window).
    pub considered: usize,
    /// How many of them are cocycles.
    pub cocycles: usize,
    /// Rank of the `ζ`s modulo the coboundary span, a lower bound for the
    /// cohomology dimension in the window.
    pub independent: usize,
    pub coboundary_rank: usize,
    pub window: usize,
}

/// Checks which of `ζ^{(0)}, …, ζ^{(max_lift)}` from `a` to `b` are cocycles
/// and how many are independent modulo coboundaries of morphisms with entries
/// of length at most `window − (longest δ entry)`. Exact rationals only.
pub fn zeta_independence(
    d: &Dimer,
    pa: &MatrixFactorization<BigRational>,
    pb: &MatrixFactorization<BigRational>,
    a: crate::quiver::ArrowId,
    b: crate::quiver::ArrowId,
    max_lift: usize,
    window: usize,
) -> Result<Independence> {
    let q = d.quiver();
    let mut zetas = Vec::new();
    for i in 0..=max_lift {
        let (z, info) = super::zeta_morphism(d, pa, pb, a, b, i)?;
        if info.opp1.len().max(info.opp2.len()) > window {
            break;
        }
        zetas.push(z);
    }
    let cocycles = zetas.iter().filter(|z| hom_differential(z, pa, pb).is_zero()).count();
    let longest = pa.delta.iter().chain(&pb.delta).flatten().map(|e| e.max_len()).max().unwrap_or(0);
    let mut coords = Vec::new();
    for (i, r) in pb.summands.iter().enumerate() {
        for (j, c) in pa.summands.iter().enumerate() {
            for p in irreducible_paths(q, &pb.system, r.vertex, c.vertex, window) {
                coords.push((i, j, p));
            }
        }
    }
    let mut rows: Matrix = Vec::new();
    let mut parities = vec![];
    for z in &zetas {
        if !parities.contains(&z.parity) {
            parities.push(z.parity);
        }
    }
    for par in parities {
        let src_len = window.saturating_sub(longest);
        for g in hom_basis(q, pa, pb, par.flip(), src_len) {
            let dg = hom_differential(&g, pa, pb);
            if let Some(v) = vectorize(&dg, &coords) {
                rows.push(v);
            }
        }
    }
    let coboundary_rank = rank(&rows);
    for z in &zetas {
        let nf = z.normal_form(&pb.system);
        if let Some(v) = vectorize(&nf, &coords) {
            rows.push(v);
        }
    }
    let independent = rank(&rows) - coboundary_rank;
    Ok(Independence { considered: zetas.len(), cocycles, independent, coboundary_rank, window })
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::super::zeta::arc_family;
    use super::*;
    use crate::dimer::fixtures::*;

    #[test]
    fn conifold_paths_grow() {
        let (data, sys) = setup(&conifold_sphere(), 8);
        let q = data.dual.quiver();
        let loops: Vec<usize> = (0..=4).map(|l| irreducible_paths(q, &sys, 0, 0, l).len()).collect();
        assert_eq!(loops[0], 1);
        assert!(loops.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn conifold_zetas_are_independent() {
        let (data, sys) = setup(&conifold_sphere(), 10);
        let mfs = arc_family(&data, sys).unwrap();
        let q = data.dual.quiver();
        let x = q.arrow_id("x").unwrap();
        let res = zeta_independence(&data.dual, &mfs[x as usize], &mfs[x as usize], x, x, 3, 10).unwrap();
        assert_eq!(res.cocycles, res.considered);
        assert!(res.considered >= 2);
        assert_eq!(res.independent, res.considered);
    }
}
