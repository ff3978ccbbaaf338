//! Matrix factorizations over path algebras with relations.
//!
//! A factorization is a list of summands `𝒜·v` (paths whose source is `v`),
//! each with a parity, and an odd matrix `δ`. Maps act by right
//! multiplication: entry `(i, j)` sends `p` in summand `j` to `p·δ_ij` in
//! summand `i`, so its target is the vertex of summand `j` and its source the
//! vertex of summand `i`. Composition therefore reads `(f∘g)_ik = Σ_j g_jk·f_ij`.

mod cohomology;
mod ginzburg;
mod io;
mod zeta;

use std::fmt;
use std::sync::Arc;

use crate::algebra::Element;
use crate::dimer::{PotentialData, Sign};
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Parity, Path, Quiver, VertexId};
use crate::reduction::ReductionSystem;
use crate::scalar::Scalar;

pub use cohomology::{hom_basis, irreducible_paths, zeta_independence, Independence};
pub use ginzburg::{DSquareCheck, GinzburgAlgebra, RationalGinzburg};
pub use io::MfDocument;
pub use zeta::{arc_family, zeta_data, zeta_morphism, ZetaData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Summand {
    pub vertex: VertexId,
    pub parity: Parity,
}

/// Square matrix of path-algebra elements between summands.
pub type Entries<S> = Vec<Vec<Element<S>>>;

#[derive(Clone, Debug)]
pub struct MatrixFactorization<S: Scalar> {
    pub summands: Vec<Summand>,
    pub delta: Entries<S>,
    pub w: Element<S>,
    pub system: Arc<ReductionSystem<S>>,
}

/// A morphism `M → N`; rows follow the summands of `N`, columns those of `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomElement<S: Scalar> {
    pub entries: Entries<S>,
    pub parity: Parity,
}

/// First entry of `δ² − W·Id` that does not reduce to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareWitness<S: Scalar> {
    pub row: usize,
    pub col: usize,
    pub residue: Element<S>,
}

impl<S: Scalar> fmt::Display for SquareWitness<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry ({}, {}) of δ² − W·Id leaves {} terms", self.row, self.col, self.residue.len())
    }
}

fn zero_matrix<S: Scalar>(rows: usize, cols: usize, bound: usize) -> Entries<S> {
    vec![vec![Element::zero(bound); cols]; rows]
}

/// `(f∘g)_ik = Σ_j g_jk·f_ij` for right-multiplication matrices.
pub fn compose_entries<S: Scalar>(f: &Entries<S>, g: &Entries<S>, bound: usize) -> Entries<S> {
    let rows = f.len();
    let cols = g.first().map_or(0, |r| r.len());
    let mut out = zero_matrix(rows, cols, bound);
    for (i, row) in out.iter_mut().enumerate() {
        for (k, slot) in row.iter_mut().enumerate() {
            for (j, g_row) in g.iter().enumerate() {
                if g_row[k].is_zero() || f[i][j].is_zero() {
                    continue;
                }
                *slot = slot.add(&g_row[k].mul(&f[i][j]));
            }
        }
    }
    out
}

fn check_endpoints<S: Scalar>(
    q: &Quiver,
    rows: &[Summand],
    cols: &[Summand],
    m: &Entries<S>,
    parity: Parity,
) -> Result<()> {
    if m.len() != rows.len() || m.iter().any(|r| r.len() != cols.len()) {
        return Err(Error::Usage(format!("expected a {}×{} matrix", rows.len(), cols.len())));
    }
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            let e = &m[i][j];
            if e.is_zero() {
                continue;
            }
            if r.parity.add(c.parity) != parity {
                return Err(Error::Usage(format!("entry ({i}, {j}) breaks the parity of the map")));
            }
            for (p, _) in e.terms() {
                if p.tgt != c.vertex || p.src != r.vertex {
                    return Err(Error::Usage(format!(
                        "entry ({i}, {j}) contains {} which does not run from {} to {}",
                        q.path_string(p),
                        q.vertex_name(r.vertex),
                        q.vertex_name(c.vertex)
                    )));
                }
            }
        }
    }
    Ok(())
}

impl<S: Scalar> MatrixFactorization<S> {
    pub fn size(&self) -> usize {
        self.summands.len()
    }

    pub fn bound(&self) -> usize {
        self.system.bound()
    }

    /// Entries of `δ²` minus `W` on the diagonal, all in normal form.
    pub fn square_residues(&self) -> Entries<S> {
        square_residues(&self.summands, &self.delta, &self.w, &self.system)
    }

    pub fn delta_hom(&self) -> HomElement<S> {
        HomElement { entries: self.delta.clone(), parity: Parity::Odd }
    }

    pub fn identity(&self) -> HomElement<S> {
        let b = self.bound();
        let mut entries = zero_matrix(self.size(), self.size(), b);
        for (i, s) in self.summands.iter().enumerate() {
            entries[i][i] = Element::from_path(Path::trivial(s.vertex), S::one(), b);
        }
        HomElement { entries, parity: Parity::Even }
    }
}

fn square_residues<S: Scalar>(
    summands: &[Summand],
    delta: &Entries<S>,
    w: &Element<S>,
    sys: &ReductionSystem<S>,
) -> Entries<S> {
    let b = sys.bound();
    let mut sq = compose_entries(delta, delta, b);
    for (i, s) in summands.iter().enumerate() {
        sq[i][i] = sq[i][i].sub(&w.restrict(s.vertex, s.vertex).truncate(b));
    }
    sq.iter().map(|r| r.iter().map(|e| sys.normal_form(e).chop(sys.tol())).collect()).collect()
}

/// Builds a factorization after checking parities, endpoints and `δ² = W·Id`
/// modulo the relations of `sys`.
pub fn make_mf<S: Scalar>(
    q: &Quiver,
    summands: Vec<Summand>,
    delta: Entries<S>,
    sys: Arc<ReductionSystem<S>>,
    w: Element<S>,
) -> std::result::Result<MatrixFactorization<S>, MfError<S>> {
    check_endpoints(q, &summands, &summands, &delta, Parity::Odd).map_err(MfError::Input)?;
    let res = square_residues(&summands, &delta, &w, &sys);
    for (i, row) in res.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if !e.is_zero() {
                return Err(MfError::NotSquareZero(SquareWitness { row: i, col: j, residue: e.clone() }));
            }
        }
    }
    Ok(MatrixFactorization { summands, delta, w, system: sys })
}

#[derive(Clone, Debug)]
pub enum MfError<S: Scalar> {
    Input(Error),
    NotSquareZero(SquareWitness<S>),
}

impl<S: Scalar> fmt::Display for MfError<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MfError::Input(e) => write!(f, "{e}"),
            MfError::NotSquareZero(w) => write!(f, "{w}"),
        }
    }
}

impl<S: Scalar> From<MfError<S>> for Error {
    fn from(e: MfError<S>) -> Error {
        match e {
            MfError::Input(e) => e,
            MfError::NotSquareZero(w) => Error::Construction(w.to_string()),
        }
    }
}

impl<S: Scalar> HomElement<S> {
    pub fn zero(rows: usize, cols: usize, parity: Parity, bound: usize) -> Self {
        HomElement { entries: zero_matrix(rows, cols, bound), parity }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            .collect();
        HomElement { entries, parity: self.parity }
    }

    pub fn scale(&self, s: &S) -> Self {
        let entries = self.entries.iter().map(|r| r.iter().map(|e| e.scale(s)).collect()).collect();
        HomElement { entries, parity: self.parity }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self, bound: usize) -> Self {
        HomElement {
            entries: compose_entries(&self.entries, &other.entries, bound),
            parity: self.parity.add(other.parity),
        }
    }

    pub fn normal_form(&self, sys: &ReductionSystem<S>) -> Self {
        let entries =
            self.entries.iter().map(|r| r.iter().map(|e| sys.normal_form(e).chop(sys.tol())).collect()).collect();
        HomElement { entries, parity: self.parity }
    }

    /// Checks shape, parity and endpoints against `M → N`.
    pub fn check(&self, q: &Quiver, m: &MatrixFactorization<S>, n: &MatrixFactorization<S>) -> Result<()> {
        check_endpoints(q, &n.summands, &m.summands, &self.entries, self.parity)
    }

    pub fn display(&self, q: &Quiver) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|e| e.display(q)).collect::<Vec<_>>().join(", ")))
            .collect();
        rows.join("\n")
    }
}

/// `m₁(f) = δ_N∘f − (−1)^{|f|} f∘δ_M`, normal-formed.
pub fn hom_differential<S: Scalar>(
    f: &HomElement<S>,
    m: &MatrixFactorization<S>,
    n: &MatrixFactorization<S>,
) -> HomElement<S> {
    let b = n.bound().min(m.bound());
    let left = compose_entries(&n.delta, &f.entries, b);
    let right = compose_entries(&f.entries, &m.delta, b);
    let sign_odd = f.parity == Parity::Odd;
    let entries = left
        .iter()
        .zip(&right)
        .map(|(l, r)| l.iter().zip(r).map(|(x, y)| if sign_odd { x.add(y) } else { x.sub(y) }).collect())
        .collect();
    HomElement { entries, parity: f.parity.flip() }.normal_form(&n.system)
}

/// The factorization `P_e: 𝒜·h(e) →(·e) 𝒜·t(e) →(·r_{e,+}) 𝒜·h(e)` on the
/// dual quiver of the dimer that produced `data`.
pub fn arc_mf<S: Scalar>(
    data: &PotentialData<S>,
    sys: Arc<ReductionSystem<S>>,
    e: ArrowId,
) -> std::result::Result<MatrixFactorization<S>, MfError<S>> {
    let d = &data.dual;
    let q = d.quiver();
    let b = sys.bound();
    let (h, t) = (q.head(e), q.tail(e));
    let summands = vec![Summand { vertex: h, parity: Parity::Even }, Summand { vertex: t, parity: Parity::Odd }];
    let r = q.path_from_word(&d.complement(e, Sign::Plus), Some(h)).map_err(MfError::Input)?;
    let mut delta = zero_matrix(2, 2, b);
    delta[1][0] = Element::from_path(q.arrow_path(e), S::one(), b);
    delta[0][1] = Element::from_path(r, S::one(), b);
    make_mf(q, summands, delta, sys, data.w.clone())
}


#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;
    use crate::dimer::Dimer;

    fn all_dimers() -> Vec<Dimer> {
        use crate::dimer::fixtures::*;
        vec![pentagon(), conifold_sphere(), conifold_torus(), c3_torus()]
    }

    #[test]
    fn arc_factorizations_square_to_w() {
        for d in all_dimers() {
            let (data, sys) = setup(&d, 10);
            for e in data.dual.quiver().arrow_ids() {
                let mf = arc_mf(&data, sys.clone(), e).unwrap_or_else(|err| panic!("{err}"));
                assert_eq!(mf.size(), 2);
            }
        }
    }

    #[test]
    fn conifold_arc_entries() {
        let (data, sys) = setup(&crate::dimer::fixtures::conifold_sphere(), 8);
        let q = data.dual.quiver();
        let x = q.arrow_id("x").unwrap();
        let mf = arc_mf(&data, sys, x).unwrap();
        assert_eq!(mf.delta[1][0].display(q), "x");
        assert_eq!(mf.delta[0][1].display(q), "yzw");
    }

    #[test]
    fn pentagon_arc_entries() {
        let (data, sys) = setup(&crate::dimer::fixtures::pentagon(), 10);
        let q = data.dual.quiver();
        let a = q.arrow_id("a").unwrap();
        let mf = arc_mf(&data, sys, a).unwrap();
        assert_eq!(mf.delta[0][1].display(q), "becd");
    }

    #[test]
    fn wrong_delta_is_rejected_with_witness() {
        let (data, sys) = setup(&crate::dimer::fixtures::conifold_sphere(), 8);
        let q = data.dual.quiver();
        let x = q.arrow_id("x").unwrap();
        let mf = arc_mf(&data, sys.clone(), x).unwrap();
        let mut delta = mf.delta.clone();
        delta[0][1] = delta[0][1].scale(&crate::scalar::rat(2));
        match make_mf(q, mf.summands.clone(), delta, sys, data.w.clone()) {
            Err(MfError::NotSquareZero(w)) => assert!(!w.residue.is_zero()),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn trivial_factorization_of_zero() {
        let (data, sys) = setup(&crate::dimer::fixtures::conifold_sphere(), 8);
        let q = data.dual.quiver();
        let s = vec![Summand { vertex: 0, parity: Parity::Even }];
        let mf = make_mf(q, s, vec![vec![Element::zero(8)]], sys, Element::zero(8));
        assert!(mf.is_ok());
    }

    #[test]
    fn identity_and_delta_are_closed() {
        let (data, sys) = setup(&crate::dimer::fixtures::conifold_sphere(), 8);
        for e in data.dual.quiver().arrow_ids() {
            let m = arc_mf(&data, sys.clone(), e).unwrap();
            assert!(hom_differential(&m.identity(), &m, &m).is_zero());
            // d(δ) = δ² + δ² = 2W·Id, which is not zero; check that value.
            let dd = hom_differential(&m.delta_hom(), &m, &m);
            for (i, s) in m.summands.iter().enumerate() {
                let w2 = m.w.restrict(s.vertex, s.vertex).scale(&crate::scalar::rat(2));
                assert_eq!(dd.entries[i][i], sys.normal_form(&w2));
            }
        }
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn differential_squares_to_zero(picks in proptest::collection::vec((0usize..1000, -3i64..4), 1..6), odd: bool, a in 0u32..4, b in 0u32..4) {
            let (data, sys) = setup(&crate::dimer::fixtures::conifold_sphere(), 8);
            let q = data.dual.quiver();
            let m = arc_mf(&data, sys.clone(), a).unwrap();
            let n = arc_mf(&data, sys, b).unwrap();
            let parity = if odd { Parity::Odd } else { Parity::Even };
            let basis = hom_basis(q, &m, &n, parity, 3);
            prop_assume!(!basis.is_empty());
            let mut f = HomElement::zero(2, 2, parity, 8);
            for (k, c) in picks {
                f = f.add(&basis[k % basis.len()].scale(&crate::scalar::rat(c)));
            }
            let ddf = hom_differential(&hom_differential(&f, &m, &n), &m, &n);
            prop_assert!(ddf.is_zero());
        }
    }
}
