//! Decorations `𝔣: arrows → G`, the smash product `Q#G` and lifting.
//!
//! An arrow `x: u → v` lifts to `x^g: u^g → v^{g·𝔣(x)}`. A path is lifted
//! starting from its first arrow, so a word `c₁⋯c_k` (with `c_k` applied first)
//! maps to the group element `𝔣(c_k)⋯𝔣(c₁)`.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::{GroupElement, GroupTable};
use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};
use crate::reduction::{is_central, Centrality, CompletionOptions, ReductionSystem};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedQuiver {
    pub quiver: Quiver,
    pub f: Vec<GroupElement>,
}

impl DecoratedQuiver {
    pub fn new(quiver: Quiver, f: Vec<GroupElement>, g: &GroupTable) -> Result<Self> {
        if f.len() != quiver.arrow_count() {
            return Err(Error::Usage(format!("decoration has {} values for {} arrows", f.len(), quiver.arrow_count())));
        }
        if f.iter().any(|&x| x >= g.order()) {
            return Err(Error::Usage("decoration refers to an element outside the group".into()));
        }
        Ok(DecoratedQuiver { quiver, f })
    }

    /// Every arrow maps to the same element.
    pub fn constant(quiver: Quiver, g: GroupElement) -> Self {
        let f = vec![g; quiver.arrow_count()];
        DecoratedQuiver { quiver, f }
    }

    /// Reads an `fmap` table of arrow and element names; every arrow must appear.
    pub fn from_fmap(quiver: Quiver, fmap: &BTreeMap<String, String>, g: &GroupTable) -> Result<Self> {
        let mut f = Vec::with_capacity(quiver.arrow_count());
        for a in quiver.arrows() {
            let name = fmap.get(&a.name).ok_or_else(|| Error::Usage(format!("fmap has no entry for arrow '{}'", a.name)))?;
            f.push(g.element(name)?);
        }
        Ok(DecoratedQuiver { quiver, f })
    }

    /// Image of a word in traversal order.
    pub fn word_image(&self, g: &GroupTable, word: &[ArrowId]) -> GroupElement {
        word.iter().rev().fold(g.identity(), |acc, &a| g.op(acc, self.f[a as usize]))
    }
}

/// `Q#G` with the bookkeeping to go back to `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashProduct {
    pub quiver: Quiver,
    group_order: usize,
}

impl SmashProduct {
    pub fn vertex(&self, v: VertexId, g: GroupElement) -> VertexId {
        v * self.group_order + g
    }

    pub fn arrow(&self, x: ArrowId, g: GroupElement) -> ArrowId {
        (x as usize * self.group_order + g) as ArrowId
    }

    pub fn base_vertex(&self, v: VertexId) -> (VertexId, GroupElement) {
        (v / self.group_order, v % self.group_order)
    }

    pub fn base_arrow(&self, a: ArrowId) -> (ArrowId, GroupElement) {
        ((a as usize / self.group_order) as ArrowId, a as usize % self.group_order)
    }

    /// Drops the group labels.
    pub fn forget(&self, p: &Path) -> Path {
        Path {
            src: self.base_vertex(p.src).0,
            tgt: self.base_vertex(p.tgt).0,
            word: p.word.iter().map(|&a| self.base_arrow(a).0).collect(),
        }
    }

    pub fn forget_element<S: Scalar>(&self, a: &Element<S>) -> Element<S> {
        let mut out = Element::zero(a.bound());
        for (p, c) in a.terms() {
            out.add_term(self.forget(p), c.clone());
        }
        out
    }
}

fn lifted_name(base: &str, g: &GroupTable, h: GroupElement) -> String {
    if g.order() == 1 {
        base.to_string()
    } else {
        format!("{base}[{}]", g.name(h))
    }
}

/// Vertices `v^g`, arrows `x^g: u^g → v^{g·𝔣(x)}`, named `v[g]` and `x[g]`
/// (plain names when `G` is trivial).
pub fn smash_product(dq: &DecoratedQuiver, g: &GroupTable) -> SmashProduct {
    let q = &dq.quiver;
    let mut out = Quiver::new();
    for v in q.vertex_names() {
        for h in g.elements() {
            out.add_vertex(&lifted_name(v, g, h)).expect("distinct lifted vertex names");
        }
    }
    let n = g.order();
    for (i, a) in q.arrows().iter().enumerate() {
        for h in g.elements() {
            let tail = a.tail * n + h;
            let head = a.head * n + g.op(h, dq.f[i]);
            out.add_arrow_full(&lifted_name(&a.name, g, h), tail, head, a.parity, a.degree.clone())
                .expect("distinct lifted arrow names");
        }
    }
    SmashProduct { quiver: out, group_order: n }
}

/// The unique lift of `p` whose first arrow starts on sheet `h`.
pub fn lift_path(sp: &SmashProduct, dq: &DecoratedQuiver, g: &GroupTable, p: &Path, h: GroupElement) -> Path {
    let mut cur = h;
    let mut word = vec![0; p.word.len()];
    for (i, &a) in p.word.iter().enumerate().rev() {
        word[i] = sp.arrow(a, cur);
        cur = g.op(cur, dq.f[a as usize]);
    }
    Path { src: sp.vertex(p.src, h), tgt: sp.vertex(p.tgt, cur), word }
}

/// Lifts every term at the same starting sheet `h`.
pub fn lift_element<S: Scalar>(
    sp: &SmashProduct,
    dq: &DecoratedQuiver,
    g: &GroupTable,
    a: &Element<S>,
    h: GroupElement,
) -> Element<S> {
    Element::from_terms(a.terms().map(|(p, c)| (lift_path(sp, dq, g, p, h), c.clone())), a.bound())
}

/// The common image `g_l` of the terms of each relation; a relation whose
/// terms disagree is not a dual action and is reported with the two terms.
pub fn relation_images<S: Scalar>(
    dq: &DecoratedQuiver,
    g: &GroupTable,
    relations: &[Element<S>],
) -> Result<Vec<GroupElement>> {
    let q = &dq.quiver;
    let mut out = Vec::with_capacity(relations.len());
    for (l, r) in relations.iter().enumerate() {
        let mut first: Option<(&Path, GroupElement)> = None;
        for (p, _) in r.terms() {
            let img = dq.word_image(g, &p.word);
            match first {
                None => first = Some((p, img)),
                Some((p0, g0)) if g0 != img => {
                    return Err(Error::NotDualAction(format!(
                        "relation {l} ({}): term {} maps to {} but {} maps to {}",
                        r.display(q),
                        q.path_string(p0),
                        g.name(g0),
                        q.path_string(p),
                        g.name(img)
                    )))
                }
                _ => {}
            }
        }
        out.push(first.map_or(g.identity(), |(_, h)| h));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct FormalQuotient<S: Scalar> {
    pub smash: SmashProduct,
    /// Relation `l` lifted at sheet `h` sits at index `l·|G| + h`.
    pub relations: Vec<Element<S>>,
    pub images: Vec<GroupElement>,
    /// `Ŵ = Σ_g W^g`.
    pub w_hat: Element<S>,
}

impl<S: Scalar> FormalQuotient<S> {
    pub fn reduction_system(&self, opts: CompletionOptions) -> Result<ReductionSystem<S>> {
        ReductionSystem::build(&self.smash.quiver, &self.relations, opts)
    }

    /// Completes the lifted relations up to `d` and tests `Ŵ` for centrality.
    pub fn centrality(&self, d: usize, tol: f64) -> Result<Centrality<S>> {
        let sys = self.reduction_system(CompletionOptions::new(d).tol(tol))?;
        is_central(&self.smash.quiver, &self.w_hat, &sys, d)
    }
}

/// Lifts the relations at every sheet and sums the lifts of an invariant `W`.
pub fn formal_quotient<S: Scalar>(
    dq: &DecoratedQuiver,
    g: &GroupTable,
    relations: &[Element<S>],
    w: &Element<S>,
) -> Result<FormalQuotient<S>> {
    let images = relation_images(dq, g, relations)?;
    for (p, _) in w.terms() {
        let img = dq.word_image(g, &p.word);
        if img != g.identity() {
            return Err(Error::Usage(format!(
                "W is not invariant: {} maps to {}",
                dq.quiver.path_string(p),
                g.name(img)
            )));
        }
    }
    let smash = smash_product(dq, g);
    let mut lifted = Vec::with_capacity(relations.len() * g.order());
    for r in relations {
        for h in g.elements() {
            lifted.push(lift_element(&smash, dq, g, r, h));
        }
    }
    let mut w_hat = Element::zero(w.bound());
    for h in g.elements() {
        w_hat = w_hat.add(&lift_element(&smash, dq, g, w, h));
    }
    Ok(FormalQuotient { smash, relations: lifted, images, w_hat })
}

/// The character `k ↦ exp(2πi·j·k/n)` of `Z_n`, listed by element.
pub fn cyclic_character(n: usize, j: usize) -> Vec<Complex64> {
    (0..n).map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64)).collect()
}

/// Scales each word by `∏ χ(𝔣(x_i))`; `chi` lists the character by element.
pub fn character_action(
    chi: &[Complex64],
    a: &Element<Complex64>,
    dq: &DecoratedQuiver,
    g: &GroupTable,
) -> Result<Element<Complex64>> {
    if chi.len() != g.order() {
        return Err(Error::Usage(format!("character has {} values for a group of order {}", chi.len(), g.order())));
    }
    for x in g.elements() {
        for y in g.elements() {
            if (chi[g.op(x, y)] - chi[x] * chi[y]).norm() > 1e-12 {
                return Err(Error::Usage(format!(
                    "χ is not a homomorphism: χ({}·{}) ≠ χ({})χ({})",
                    g.name(x),
                    g.name(y),
                    g.name(x),
                    g.name(y)
                )));
            }
        }
    }
    Ok(Element::from_terms(
        a.terms().map(|(p, c)| {
            let s: Complex64 = p.word.iter().map(|&x| chi[dq.f[x as usize]]).product();
            (p.clone(), c * s)
        }),
        a.bound(),
    ))
}

/// Arrows whose degree is not congruent to `α_{𝔣(x)}` modulo 2. Arrows without
/// a degree are skipped; the group must carry `alpha` data.
pub fn grading_congruence(dq: &DecoratedQuiver, g: &GroupTable) -> Result<Vec<String>> {
    let alpha = g.alpha.as_ref().ok_or_else(|| Error::Usage("the group file has no alpha data".into()))?;
    let two = BigRational::from_integer(2.into());
    let mut bad = Vec::new();
    for (i, a) in dq.quiver.arrows().iter().enumerate() {
        if let Some(d) = &a.degree {
            let r = (d - &alpha[dq.f[i]]) / &two;
            if !r.is_integer() {
                bad.push(a.name.clone());
            }
        }
    }
    Ok(bad)
}

/// Distinct total degrees of the terms, when every arrow carries a degree.
pub fn term_degrees<S: Scalar>(q: &Quiver, a: &Element<S>) -> Option<BTreeSet<BigRational>> {
    let mut out = BTreeSet::new();
    for (p, _) in a.terms() {
        let mut d = <BigRational as Zero>::zero();
        for &x in &p.word {
            d += q.arrow(x).degree.clone()?;
        }
        out.insert(d);
    }
    Some(out)
}
