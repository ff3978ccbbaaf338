//! Degree-bounded rewriting systems for two-sided ideals of a path algebra.
//!
//! Words are compared by length, then lexicographically by arrow rank. The
//! completion adds reduced overlap compositions of leading words until no new
//! rule with a word of length at most `bound` appears, inter-reducing as it goes.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Path, Quiver};
use crate::scalar::Scalar;

pub const DEFAULT_RULE_CAP: usize = 20_000;
pub const DEFAULT_TOL: f64 = 1e-9;

/// Arrow ranks defining the lexicographic tie-break of the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    rank: Vec<ArrowId>,
    unrank: Vec<ArrowId>,
}

impl MonomialOrder {
    pub fn identity(n_arrows: usize) -> Self {
        let rank: Vec<ArrowId> = (0..n_arrows as ArrowId).collect();
        MonomialOrder { unrank: rank.clone(), rank }
    }

    /// `ranking[i]` is the arrow placed at rank `i` (smallest first).
    pub fn from_ranking(ranking: &[ArrowId]) -> Result<Self> {
        let n = ranking.len();
        let mut rank = vec![ArrowId::MAX; n];
        for (i, &a) in ranking.iter().enumerate() {
            if a as usize >= n || rank[a as usize] != ArrowId::MAX {
                return Err(Error::Usage("ranking must be a permutation of the arrows".into()));
            }
            rank[a as usize] = i as ArrowId;
        }
        Ok(MonomialOrder { rank, unrank: ranking.to_vec() })
    }

    fn to_rank(&self, p: &Path) -> Path {
        Path { src: p.src, tgt: p.tgt, word: p.word.iter().map(|&a| self.rank[a as usize]).collect() }
    }

    fn from_rank(&self, p: &Path) -> Path {
        Path { src: p.src, tgt: p.tgt, word: p.word.iter().map(|&a| self.unrank[a as usize]).collect() }
    }
}

#[derive(Clone, Debug)]
struct Rule<S: Scalar> {
    lead: Path,
    rhs: Element<S>,
}

/// Options controlling completion.
#[derive(Clone, Debug)]
pub struct CompletionOptions {
    pub bound: usize,
    pub rule_cap: usize,
    pub tol: f64,
    pub order: Option<MonomialOrder>,
}

impl CompletionOptions {
    pub fn new(bound: usize) -> Self {
        CompletionOptions { bound, rule_cap: DEFAULT_RULE_CAP, tol: DEFAULT_TOL, order: None }
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn rule_cap(mut self, cap: usize) -> Self {
        self.rule_cap = cap;
        self
    }

    pub fn order(mut self, order: MonomialOrder) -> Self {
        self.order = Some(order);
        self
    }
}

/// A bounded completion of a relation list; internally stored in rank space.
#[derive(Clone, Debug)]
pub struct ReductionSystem<S: Scalar> {
    order: MonomialOrder,
    bound: usize,
    tol: f64,
    rules: Vec<Rule<S>>,
    index: HashMap<Vec<ArrowId>, usize>,
    lead_lens: BTreeSet<usize>,
    dead_vertices: BTreeSet<usize>,
    complete: bool,
    relations: Vec<Element<S>>,
}

impl<S: Scalar> ReductionSystem<S> {
    /// Completes `relations` up to word length `opts.bound`.
    ///
    /// Hitting the rule cap is not an error here: the returned system is
    /// flagged incomplete, see [`ReductionSystem::is_complete`].
    pub fn build(q: &Quiver, relations: &[Element<S>], opts: CompletionOptions) -> Result<Self> {
        let order = opts.order.clone().unwrap_or_else(|| MonomialOrder::identity(q.arrow_count()));
        if order.rank.len() != q.arrow_count() {
            return Err(Error::Usage("monomial order does not match the quiver".into()));
        }
        for r in relations {
            if r.is_zero() {
                return Err(Error::Usage("relations must be nonzero".into()));
            }
            if r.max_len() > opts.bound {
                return Err(Error::Usage(format!(
                    "relation of degree {} exceeds the completion bound {}",
                    r.max_len(),
                    opts.bound
                )));
            }
        }
        let mut sys = ReductionSystem {
            order,
            bound: opts.bound,
            tol: opts.tol,
            rules: Vec::new(),
            index: HashMap::new(),
            lead_lens: BTreeSet::new(),
            dead_vertices: BTreeSet::new(),
            complete: true,
            relations: relations.iter().map(|r| r.clone().with_bound(opts.bound)).collect(),
        };
        sys.complete(opts.rule_cap);
        Ok(sys)
    }

    /// Like [`ReductionSystem::build`] but a hit rule cap is a resource error.
    pub fn build_strict(q: &Quiver, relations: &[Element<S>], opts: CompletionOptions) -> Result<Self> {
        let cap = opts.rule_cap;
        let sys = Self::build(q, relations, opts)?;
        if !sys.is_complete() {
            return Err(Error::Resource(format!("completion exceeded {cap} rules")));
        }
        Ok(sys)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn relations(&self) -> &[Element<S>] {
        &self.relations
    }

    /// Leading words of all rules, in the caller's arrow labels.
    pub fn leading_words(&self) -> Vec<Path> {
        self.rules.iter().map(|r| self.order.from_rank(&r.lead)).collect()
    }

    /// Rules as `(leading word, replacement)` pairs in the caller's labels.
    pub fn rules(&self) -> Vec<(Path, Element<S>)> {
        self.rules
            .iter()
            .map(|r| (self.order.from_rank(&r.lead), r.rhs.map_paths(|p| self.order.from_rank(p))))
            .collect()
    }

    fn to_rank_elem(&self, a: &Element<S>) -> Element<S> {
        a.clone().with_bound(self.bound).map_paths(|p| self.order.to_rank(p))
    }

    fn from_rank_elem(&self, a: &Element<S>) -> Element<S> {
        a.map_paths(|p| self.order.from_rank(p))
    }

    /// Normal form; words beyond the bound are dropped first.
    pub fn normal_form(&self, a: &Element<S>) -> Element<S> {
        let r = self.reduce_ranked(self.to_rank_elem(a));
        self.from_rank_elem(&r).with_bound(a.bound().min(self.bound))
    }

    /// True when the word contains no leading word.
    pub fn is_irreducible(&self, p: &Path) -> bool {
        self.find_rule(&self.order.to_rank(p)).is_none()
    }

    fn passes_dead_vertex(&self, p: &Path, q_tails: Option<&[usize]>) -> bool {
        if self.dead_vertices.is_empty() {
            return false;
        }
        if self.dead_vertices.contains(&p.src) || self.dead_vertices.contains(&p.tgt) {
            return true;
        }
        q_tails.is_some_and(|ts| ts.iter().any(|v| self.dead_vertices.contains(v)))
    }

    fn find_rule(&self, p: &Path) -> Option<(usize, usize)> {
        if self.passes_dead_vertex(p, None) {
            return Some((usize::MAX, 0));
        }
        let w = &p.word;
        for &l in &self.lead_lens {
            if l > w.len() {
                break;
            }
            for pos in 0..=(w.len() - l) {
                if let Some(&k) = self.index.get(&w[pos..pos + l]) {
                    return Some((k, pos));
                }
            }
        }
        None
    }

    fn reduce_ranked(&self, a: Element<S>) -> Element<S> {
        let bound = a.bound();
        let mut work: BTreeMap<Path, S> = a.into_terms();
        let mut done: Vec<(Path, S)> = Vec::new();
        while let Some((p, c)) = work.pop_last() {
            if c.is_negligible(self.tol) {
                continue;
            }
            let Some((k, pos)) = self.find_rule(&p) else {
                done.push((p, c));
                continue;
            };
            if k == usize::MAX {
                continue;
            }
            let rule = &self.rules[k];
            let l = rule.lead.len();
            for (q, d) in rule.rhs.terms() {
                let mut word = Vec::with_capacity(p.len() - l + q.len());
                word.extend_from_slice(&p.word[..pos]);
                word.extend_from_slice(&q.word);
                word.extend_from_slice(&p.word[pos + l..]);
                if word.len() > bound {
                    continue;
                }
                let src = if pos + l < p.len() { p.src } else { q.src };
                let tgt = if pos > 0 { p.tgt } else { q.tgt };
                let np = Path { src, tgt, word };
                let coeff = c.times(d);
                match work.get_mut(&np) {
                    Some(old) => {
                        let s = old.plus(&coeff);
                        if s.is_zero() {
                            work.remove(&np);
                        } else {
                            *old = s;
                        }
                    }
                    None => {
                        if !coeff.is_zero() {
                            work.insert(np, coeff);
                        }
                    }
                }
            }
        }
        Element::from_terms(done, bound)
    }

    fn insert_rule(&mut self, rule: Rule<S>) -> usize {
        let k = self.rules.len();
        self.index.insert(rule.lead.word.clone(), k);
        self.lead_lens.insert(rule.lead.len());
        self.rules.push(rule);
        k
    }

    fn rebuild_index(&mut self) {
        self.index.clear();
        self.lead_lens.clear();
        for (k, r) in self.rules.iter().enumerate() {
            self.index.insert(r.lead.word.clone(), k);
            self.lead_lens.insert(r.lead.len());
        }
    }

    /// Turns a reduced nonzero element into a rule; returns displaced relations.
    fn add_reduced(&mut self, r: Element<S>) -> (Option<usize>, Vec<Element<S>>) {
        let (lead, lc) = {
            let (p, c) = r.leading().expect("nonzero");
            (p.clone(), c.clone())
        };
        let inv = match lc.recip() {
            Some(i) => i,
            None => {
                // Non-invertible leading coefficient: keep the relation unprocessed.
                self.complete = false;
                return (None, Vec::new());
            }
        };
        if lead.is_trivial() {
            self.dead_vertices.insert(lead.src);
            return (None, Vec::new());
        }
        let mut rhs = r.scale(&inv.negate());
        rhs.add_term(lead.clone(), S::one());
        let rhs = rhs.chop(self.tol);
        let mut displaced = Vec::new();
        let mut keep = Vec::new();
        for old in std::mem::take(&mut self.rules) {
            if contains_subword(&old.lead.word, &lead.word) {
                let mut rel = old.rhs.neg();
                rel.add_term(old.lead.clone(), S::one());
                displaced.push(rel);
            } else {
                keep.push(old);
            }
        }
        self.rules = keep;
        self.rebuild_index();
        let k = self.insert_rule(Rule { lead, rhs });
        (Some(k), displaced)
    }

    fn complete(&mut self, cap: usize) {
        let mut pending: VecDeque<Element<S>> =
            self.relations.iter().map(|r| self.to_rank_elem(r)).collect();
        // Pairs are tracked by leading words so that rule removal is harmless.
        let mut pairs: VecDeque<(Vec<ArrowId>, Vec<ArrowId>)> = VecDeque::new();
        loop {
            while let Some(r) = pending.pop_front() {
                let r = self.reduce_ranked(r).chop(self.tol);
                if r.is_zero() {
                    continue;
                }
                let (k, displaced) = self.add_reduced(r);
                pending.extend(displaced);
                if let Some(k) = k {
                    let new_lead = self.rules[k].lead.word.clone();
                    for other in &self.rules {
                        pairs.push_back((new_lead.clone(), other.lead.word.clone()));
                        if other.lead.word != new_lead {
                            pairs.push_back((other.lead.word.clone(), new_lead.clone()));
                        }
                    }
                }
                if self.rules.len() > cap {
                    self.complete = false;
                    self.finish();
                    return;
                }
            }
            let Some((li, lj)) = pairs.pop_front() else { break };
            let (Some(&i), Some(&j)) = (self.index.get(&li), self.index.get(&lj)) else {
                continue;
            };
            for s in self.compositions(i, j) {
                pending.push_back(s);
            }
        }
        self.finish();
    }

    /// Overlap compositions: suffix of lead_i equal to a prefix of lead_j.
    fn compositions(&self, i: usize, j: usize) -> Vec<Element<S>> {
        let a = &self.rules[i];
        let b = &self.rules[j];
        let (la, lb) = (a.lead.len(), b.lead.len());
        let mut out = Vec::new();
        for o in 1..la.min(lb) {
            if la + lb - o > self.bound {
                continue;
            }
            if a.lead.word[la - o..] != b.lead.word[..o] {
                continue;
            }
            // w = u·o·v with lead_i = u·o and lead_j = o·v.
            let u = Path {
                src: b.lead.tgt,
                tgt: a.lead.tgt,
                word: a.lead.word[..la - o].to_vec(),
            };
            let v = Path {
                src: b.lead.src,
                tgt: a.lead.src,
                word: b.lead.word[o..].to_vec(),
            };
            let uo = Element::from_path(u, S::one(), self.bound);
            let ov = Element::from_path(v, S::one(), self.bound);
            let left = a.rhs.mul(&ov);
            let right = uo.mul(&b.rhs);
            out.push(left.sub(&right));
        }
        out
    }

    fn finish(&mut self) {
        let snapshot = self.clone();
        for r in &mut self.rules {
            r.rhs = snapshot.reduce_ranked(r.rhs.clone()).chop(self.tol);
        }
    }
}

fn contains_subword(hay: &[ArrowId], needle: &[ArrowId]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Verdict of a centrality test.
#[derive(Clone, Debug, PartialEq)]
pub enum Centrality<S: Scalar> {
    CentralUpTo(usize),
    NotCentral { arrow: ArrowId, residue: Element<S> },
    Inconclusive(String),
}

impl<S: Scalar> Centrality<S> {
    pub fn is_central(&self) -> bool {
        matches!(self, Centrality::CentralUpTo(_))
    }

    pub fn label(&self) -> String {
        match self {
            Centrality::CentralUpTo(d) => format!("CENTRAL-UP-TO-{d}"),
            Centrality::NotCentral { .. } => "NOT-CENTRAL".into(),
            Centrality::Inconclusive(_) => "INCONCLUSIVE".into(),
        }
    }
}

/// Checks `NF(w·x_e − x_e·w) = 0` for every arrow.
pub fn is_central<S: Scalar>(
    q: &Quiver,
    w: &Element<S>,
    sys: &ReductionSystem<S>,
    d: usize,
) -> Result<Centrality<S>> {
    let d = d.min(sys.bound());
    if w.max_len() + 1 > d {
        return Err(Error::Usage(format!(
            "degree {} element needs a bound of at least {}",
            w.max_len(),
            w.max_len() + 1
        )));
    }
    let w = w.truncate(d);
    let mut witness = None;
    for e in q.arrow_ids() {
        let x = Element::from_path(q.arrow_path(e), S::one(), d);
        let comm = w.mul(&x).sub(&x.mul(&w));
        let nf = sys.normal_form(&comm).chop(sys.tol());
        if !nf.is_zero() {
            witness = Some((e, nf));
            break;
        }
    }
    Ok(match (witness, sys.is_complete()) {
        (None, true) => Centrality::CentralUpTo(d),
        (Some((arrow, residue)), true) => Centrality::NotCentral { arrow, residue },
        (_, false) => Centrality::Inconclusive("reduction system is incomplete".into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::CyclicPotential;
    use num_rational::BigRational;

    type E = Element<BigRational>;

    fn conifold() -> Quiver {
        Quiver::from_spec(
            &["v1", "v2"],
            &[("x", "v2", "v1"), ("y", "v1", "v2"), ("z", "v2", "v1"), ("w", "v1", "v2")],
        )
        .unwrap()
    }

    fn conifold_system(d: usize, order: Option<MonomialOrder>) -> (Quiver, ReductionSystem<BigRational>) {
        let q = conifold();
        let rels: Vec<E> = ["xyz - zyx", "yzw - wzy", "zwx - xwz", "wxy - yxw"]
            .iter()
            .map(|s| E::parse(&q, s, d).unwrap())
            .collect();
        let mut opts = CompletionOptions::new(d);
        if let Some(o) = order {
            opts = opts.order(o);
        }
        let sys = ReductionSystem::build(&q, &rels, opts).unwrap();
        (q, sys)
    }

    #[test]
    fn relations_reduce_to_zero() {
        let (q, sys) = conifold_system(8, None);
        assert!(sys.is_complete());
        for r in sys.relations() {
            assert!(sys.normal_form(r).is_zero(), "{}", r.display(&q));
        }
    }

    #[test]
    fn single_rule_picks_the_larger_word() {
        let (q, sys) = conifold_system(8, None);
        let a = E::parse(&q, "zyx", 8).unwrap();
        let b = E::parse(&q, "xyz", 8).unwrap();
        // With x < y < z the larger word zyx rewrites to xyz.
        assert_eq!(sys.normal_form(&a), b);
    }

    #[test]
    fn killing_a_generator() {
        let q = Quiver::from_spec(&["v"], &[("x", "v", "v"), ("y", "v", "v")]).unwrap();
        let sys = ReductionSystem::build(&q, &[E::parse(&q, "x", 6).unwrap()], CompletionOptions::new(6)).unwrap();
        assert!(sys.normal_form(&E::parse(&q, "yxy + yy", 6).unwrap()) == E::parse(&q, "yy", 6).unwrap());
    }

    #[test]
    fn commutator_sorts_letters() {
        let q = Quiver::from_spec(&["v"], &[("x", "v", "v"), ("y", "v", "v")]).unwrap();
        let sys =
            ReductionSystem::build(&q, &[E::parse(&q, "xy - yx", 8).unwrap()], CompletionOptions::new(8)).unwrap();
        assert_eq!(sys.rule_count(), 1);
        let nf = sys.normal_form(&E::parse(&q, "yxyx", 8).unwrap());
        assert_eq!(nf, E::parse(&q, "xxyy", 8).unwrap());
    }

    #[test]
    fn conifold_potential_is_central() {
        let (q, sys) = conifold_system(8, None);
        let w = E::parse(&q, "xyzw + wzyx", 8).unwrap();
        assert_eq!(is_central(&q, &w, &sys, 8).unwrap(), Centrality::CentralUpTo(8));
        let lhs = E::parse(&q, "xyzwx", 8).unwrap();
        let rhs = E::parse(&q, "xwzyx", 8).unwrap();
        assert_eq!(sys.normal_form(&lhs), sys.normal_form(&rhs));
    }

    #[test]
    fn centrality_independent_of_order() {
        let q = conifold();
        let ranking = [q.arrow_id("w").unwrap(), q.arrow_id("y").unwrap(), q.arrow_id("x").unwrap(), q.arrow_id("z").unwrap()];
        let (q, sys) = conifold_system(8, Some(MonomialOrder::from_ranking(&ranking).unwrap()));
        let w = E::parse(&q, "xyzw + wzyx", 8).unwrap();
        assert!(is_central(&q, &w, &sys, 8).unwrap().is_central());
    }

    #[test]
    fn free_generator_is_not_central() {
        let q = Quiver::from_spec(&["v"], &[("x", "v", "v"), ("y", "v", "v")]).unwrap();
        let sys = ReductionSystem::<BigRational>::build(&q, &[], CompletionOptions::new(6)).unwrap();
        let w = E::parse(&q, "x", 6).unwrap();
        match is_central(&q, &w, &sys, 6).unwrap() {
            Centrality::NotCentral { arrow, .. } => assert_eq!(arrow, q.arrow_id("y").unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jacobian_of_conifold_matches_relations() {
        let q = conifold();
        let phi = CyclicPotential::<BigRational>::parse(&q, "xyzw - wzyx").unwrap();
        let rels = phi.jacobian_relations(&q, 8).unwrap();
        assert_eq!(rels.len(), 4);
        let sys = ReductionSystem::build(&q, &rels, CompletionOptions::new(8)).unwrap();
        let w = E::parse(&q, "xyzw + wzyx", 8).unwrap();
        assert!(is_central(&q, &w, &sys, 8).unwrap().is_central());
    }

    #[test]
    fn rule_cap_marks_incomplete() {
        let (q, _) = conifold_system(8, None);
        let rels: Vec<E> = ["xyz - zyx", "yzw - wzy", "zwx - xwz", "wxy - yxw"]
            .iter()
            .map(|s| E::parse(&q, s, 8).unwrap())
            .collect();
        let sys = ReductionSystem::build(&q, &rels, CompletionOptions::new(8).rule_cap(2)).unwrap();
        assert!(!sys.is_complete());
        let w = E::parse(&q, "xyzw + wzyx", 8).unwrap();
        assert!(matches!(is_central(&q, &w, &sys, 8).unwrap(), Centrality::Inconclusive(_)));
    }
}
