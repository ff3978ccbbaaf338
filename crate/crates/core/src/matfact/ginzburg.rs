//! Ginzburg dg algebras of quivers with potential.
//!
//! The doubled quiver keeps the arrows `x_e` (degree 0), adds `x_ē: h(e) → t(e)`
//! named `e_bar` (degree −1) and a loop `t_v` (degree −2) at every vertex. The
//! differential is extended from generators by
//! `d(g₁⋯gₙ) = Σᵢ (−1)^{deg(gᵢ₊₁⋯gₙ)} g₁⋯(dgᵢ)⋯gₙ`, so that
//! `d(ab) = a·db + (−1)^{deg b} da·b`.

use num_rational::BigRational;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::potential::CyclicPotential;
use crate::quiver::{ArrowId, Parity, Path, Quiver};
use crate::scalar::{rat, Scalar};

#[derive(Clone, Debug)]
pub struct GinzburgAlgebra<S: Scalar> {
    pub quiver: Quiver,
    base_arrows: usize,
    degrees: Vec<i64>,
    /// `d` of every generator, indexed by arrow id of the doubled quiver.
    d_table: Vec<Element<S>>,
    bound: usize,
}

/// Verdict of `d²g − [W, g] = 0` over all generators.
#[derive(Clone, Debug, PartialEq)]
pub struct DSquareCheck<S: Scalar> {
    pub bound: usize,
    pub generators: usize,
    /// Generators whose residue is nonzero, with the residue.
    pub failures: Vec<(String, Element<S>)>,
}

impl<S: Scalar> DSquareCheck<S> {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<S: Scalar> GinzburgAlgebra<S> {
    pub fn new(q: &Quiver, phi: &CyclicPotential<S>, bound: usize) -> Result<Self> {
        let n = q.arrow_count();
        let mut g = Quiver::new();
        for v in q.vertex_names() {
            g.add_vertex(v)?;
        }
        let mut degrees = Vec::new();
        for a in q.arrows() {
            g.add_arrow_full(&a.name, a.tail, a.head, Parity::Even, Some(rat(0)))?;
            degrees.push(0);
        }
        for a in q.arrows() {
            g.add_arrow_full(&format!("{}_bar", a.name), a.head, a.tail, Parity::Odd, Some(rat(-1)))?;
            degrees.push(-1);
        }
        for (v, name) in q.vertex_names().iter().enumerate() {
            g.add_arrow_full(&format!("t_{name}"), v, v, Parity::Even, Some(rat(-2)))?;
            degrees.push(-2);
        }
        let mut d_table = vec![Element::zero(bound); 2 * n + q.vertex_count()];
        for e in q.arrow_ids() {
            // Arrow ids of the base quiver are kept, so derivatives transfer verbatim.
            d_table[n + e as usize] = phi.cyclic_derivative(q, e, bound)?;
        }
        for v in 0..q.vertex_count() {
            let mut dt = Element::zero(bound);
            for e in q.arrow_ids() {
                let x = Element::from_path(g.arrow_path(e), S::one(), bound);
                let xb = Element::from_path(g.arrow_path(n as ArrowId + e), S::one(), bound);
                dt = dt.add(&x.mul(&xb).sub(&xb.mul(&x)).restrict(v, v));
            }
            d_table[2 * n + v] = dt;
        }
        Ok(GinzburgAlgebra { quiver: g, base_arrows: n, degrees, d_table, bound })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn bar(&self, e: ArrowId) -> ArrowId {
        self.base_arrows as ArrowId + e
    }

    pub fn loop_at(&self, v: usize) -> ArrowId {
        (2 * self.base_arrows + v) as ArrowId
    }

    pub fn generator_degree(&self, a: ArrowId) -> i64 {
        self.degrees[a as usize]
    }

    pub fn word_degree(&self, word: &[ArrowId]) -> i64 {
        word.iter().map(|&a| self.degrees[a as usize]).sum()
    }

    pub fn d_generator(&self, a: ArrowId) -> &Element<S> {
        &self.d_table[a as usize]
    }

    /// Replaces `d x_ē`, e.g. to break the cyclic structure on purpose.
    pub fn with_d_bar(mut self, e: ArrowId, value: Element<S>) -> Result<Self> {
        let b = self.bar(e);
        let (h, t) = (self.quiver.tail(b), self.quiver.head(b));
        if value.terms().any(|(p, _)| p.src != h || p.tgt != t) {
            return Err(Error::Usage("replacement must run parallel to the barred arrow".into()));
        }
        self.d_table[b as usize] = value;
        Ok(self)
    }

    fn d_path(&self, p: &Path, c: &S, out: &mut Element<S>) {
        let w = &p.word;
        let mut later = 0i64;
        for i in (0..w.len()).rev() {
            let dg = &self.d_table[w[i] as usize];
            if !dg.is_zero() {
                let sign = if later.rem_euclid(2) == 1 { c.negate() } else { c.clone() };
                let left = &w[..i];
                let right = &w[i + 1..];
                for (q, s) in dg.terms() {
                    if left.len() + q.len() + right.len() > self.bound {
                        continue;
                    }
                    let mut word = left.to_vec();
                    word.extend_from_slice(&q.word);
                    word.extend_from_slice(right);
                    let path = if word.is_empty() { Path::trivial(p.src) } else { Path { src: p.src, tgt: p.tgt, word } };
                    out.add_term(path, s.times(&sign));
                }
            }
            later += self.degrees[w[i] as usize];
        }
    }

    /// The differential on an element of the doubled path algebra.
    pub fn d(&self, a: &Element<S>) -> Element<S> {
        let mut out = Element::zero(self.bound.min(a.bound()));
        for (p, c) in a.terms() {
            self.d_path(p, c, &mut out);
        }
        out
    }

    /// Checks `d²g − [W, g] = 0` for every generator; `None` means `W = 0`.
    pub fn d_square_check(&self, w: Option<&Element<S>>, tol: f64) -> DSquareCheck<S> {
        let mut failures = Vec::new();
        for a in self.quiver.arrow_ids() {
            let g = Element::from_path(self.quiver.arrow_path(a), S::one(), self.bound);
            let mut r = self.d(&self.d(&g));
            if let Some(w) = w {
                r = r.sub(&w.mul(&g).sub(&g.mul(w)));
            }
            let r = r.chop(tol);
            if !r.is_zero() {
                failures.push((self.quiver.arrow_name(a).to_string(), r));
            }
        }
        DSquareCheck { bound: self.bound, generators: self.quiver.arrow_count(), failures }
    }
}

/// Ginzburg algebra with exact coefficients, the common case.
pub type RationalGinzburg = GinzburgAlgebra<BigRational>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimer::Triangulation;
    use proptest::prelude::*;

    type Q = BigRational;

    fn conifold() -> (Quiver, CyclicPotential<Q>) {
        let q = Quiver::from_spec(
            &["v1", "v2"],
            &[("x", "v2", "v1"), ("y", "v1", "v2"), ("z", "v2", "v1"), ("w", "v1", "v2")],
        )
        .unwrap();
        let phi = CyclicPotential::parse(&q, "xyzw - wzyx").unwrap();
        (q, phi)
    }

    #[test]
    fn conifold_table() {
        let (q, phi) = conifold();
        let g = GinzburgAlgebra::new(&q, &phi, 10).unwrap();
        let gq = &g.quiver;
        let x = q.arrow_id("x").unwrap();
        assert_eq!(g.d_generator(g.bar(x)), &Element::parse(gq, "y.z.w - w.z.y", 10).unwrap());
        let t1 = g.d_generator(g.loop_at(0));
        assert_eq!(
            t1,
            &Element::parse(gq, "x.x_bar + z.z_bar - y_bar.y - w_bar.w", 10).unwrap()
        );
        assert!(g.d_generator(x).is_zero());
    }

    #[test]
    fn conifold_d_squares_to_zero() {
        let (q, phi) = conifold();
        let g = GinzburgAlgebra::new(&q, &phi, 10).unwrap();
        assert!(g.d_square_check(None, 0.0).holds());
    }

    #[test]
    fn broken_derivative_is_caught() {
        let (q, phi) = conifold();
        let g = GinzburgAlgebra::new(&q, &phi, 10).unwrap();
        let x = q.arrow_id("x").unwrap();
        let bad = g.d_generator(g.bar(x)).add(&Element::parse(&g.quiver, "y.x.y", 10).unwrap());
        let g = g.with_d_bar(x, bad).unwrap();
        let check = g.d_square_check(None, 0.0);
        assert!(!check.holds());
        assert!(check.failures.iter().all(|(name, r)| name.starts_with("t_") && !r.is_zero()));
    }

    #[test]
    fn triangle_potential_gives_quadratic_derivatives() {
        let t = Triangulation::parse("triangles\nf1 a b c p q r\nf2 c b a r q p\n").unwrap();
        let tq = t.build().unwrap();
        let phi = tq.phi.map_coeffs(|s| s.coeff_int(0));
        let g = GinzburgAlgebra::new(&tq.quiver, &phi, 10).unwrap();
        for e in tq.quiver.arrow_ids() {
            let de = g.d_generator(g.bar(e));
            assert!(de.terms().all(|(p, _)| p.len() == 2));
        }
        assert!(g.d_square_check(None, 0.0).holds());
    }

    fn word_strategy(g: &GinzburgAlgebra<Q>, len: usize) -> Vec<(Path, i64)> {
        // All paths of the given length, with their degrees.
        let q = &g.quiver;
        let mut paths: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &paths {
                for a in q.arrow_ids() {
                    if q.tail(a) == p.tgt {
                        let mut word = vec![a];
                        word.extend_from_slice(&p.word);
                        next.push(Path { src: p.src, tgt: q.head(a), word });
                    }
                }
            }
            paths = next;
        }
        paths.into_iter().map(|p| { let d = g.word_degree(&p.word); (p, d) }).collect()
    }

    proptest! {
        #[test]
        fn leibniz_rule(i in 0usize..500, j in 0usize..500, la in 1usize..4, lb in 1usize..4) {
            let (q, phi) = conifold();
            let g = GinzburgAlgebra::new(&q, &phi, 12).unwrap();
            let pa = word_strategy(&g, la);
            let pb = word_strategy(&g, lb);
            let (a, _) = &pa[i % pa.len()];
            let (b, deg_b) = &pb[j % pb.len()];
            let ea = Element::from_path(a.clone(), rat(1), 12);
            let eb = Element::from_path(b.clone(), rat(1), 12);
            let ab = ea.mul(&eb);
            prop_assume!(!ab.is_zero());
            let lhs = g.d(&ab);
            let sign = if deg_b.rem_euclid(2) == 1 { rat(-1) } else { rat(1) };
            let rhs = ea.mul(&g.d(&eb)).add(&g.d(&ea).mul(&eb).scale(&sign));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
