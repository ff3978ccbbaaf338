//! Commutative polynomials and the determinant identities behind the mirror
//! curves.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::scalar::{rat, Scalar};

/// Polynomial in `names.len()` commuting variables.
#[derive(Clone, Debug, PartialEq)]
pub struct CommPoly<S: Scalar> {
    names: Vec<String>,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> CommPoly<S> {
    pub fn zero(names: &[&str]) -> Self {
        CommPoly { names: names.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(names: &[&str], c: S) -> Self {
        let mut p = Self::zero(names);
        p.add_term(vec![0; names.len()], c);
        p
    }

    pub fn var(names: &[&str], i: usize) -> Self {
        let mut e = vec![0; names.len()];
        e[i] = 1;
        let mut p = Self::zero(names);
        p.add_term(e, S::one());
        p
    }

    /// All variables in order.
    pub fn vars(names: &[&str]) -> Vec<Self> {
        (0..names.len()).map(|i| Self::var(names, i)).collect()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn empty_like(&self) -> Self {
        CommPoly { names: self.names.clone(), terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: S) {
        assert_eq!(e.len(), self.names.len(), "exponent length mismatch");
        let slot = self.terms.entry(e).or_insert_with(S::zero);
        *slot = slot.plus(&c);
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> S {
        self.terms.get(e).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient magnitude.
    pub fn magnitude(&self) -> f64 {
        self.terms.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::one().negate())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut r = self.empty_like();
        for (e, c) in &self.terms {
            r.add_term(e.clone(), c.times(s));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = self.empty_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.times(c2));
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::constant(&self.name_refs(), S::one());
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    fn name_refs(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }

    /// Rewrites `lhs → rhs` (monomials as exponent vectors) until no term is
    /// divisible by `lhs`; reduces modulo the binomial `lhs − rhs`.
    pub fn reduce_binomial(&self, lhs: &[u32], rhs: &[u32]) -> Self {
        let mut r = self.empty_like();
        for (e, c) in &self.terms {
            let mut e = e.clone();
            while e.iter().zip(lhs).all(|(a, b)| a >= b) && lhs.iter().any(|&b| b > 0) {
                for i in 0..e.len() {
                    e[i] = e[i] - lhs[i] + rhs[i];
                }
            }
            r.add_term(e, c.clone());
        }
        r
    }

    /// Drops coefficients below `tol`.
    pub fn chop(&self, tol: f64) -> Self {
        let mut r = self.clone();
        r.terms.retain(|_, c| !c.is_negligible(tol));
        r
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.names[i].clone() } else { format!("{}^{k}", self.names[i]) })
                .collect();
            let cs = c.to_string();
            let term = match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs.clone(),
                (false, "1") => mono.join("*"),
                (false, "-1") => format!("-{}", mono.join("*")),
                _ => format!("{cs}*{}", mono.join("*")),
            };
            if !out.is_empty() {
                if let Some(rest) = term.strip_prefix('-') {
                    out.push_str(" - ");
                    out.push_str(rest);
                    continue;
                }
                out.push_str(" + ");
            }
            out.push_str(&term);
        }
        out
    }
}

pub fn det2<S: Scalar>(m: &[[CommPoly<S>; 2]; 2]) -> CommPoly<S> {
    m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]))
}

pub fn det3<S: Scalar>(m: &[[CommPoly<S>; 3]; 3]) -> CommPoly<S> {
    let minor = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        det2(&[
            [m[rows[0]][cols[0]].clone(), m[rows[0]][cols[1]].clone()],
            [m[rows[1]][cols[0]].clone(), m[rows[1]][cols[1]].clone()],
        ])
    };
    m[0][0].mul(&minor(0, 0)).sub(&m[0][1].mul(&minor(0, 1))).add(&m[0][2].mul(&minor(0, 2)))
}

/// The linear matrix `((Ax, Bz, Cy), (Cz, Ay, Bx), (By, Cx, Az))` over any
/// polynomial ring whose variables include `x, y, z` at the given indices.
pub fn m0_matrix<S: Scalar>(abc: [&CommPoly<S>; 3], xyz: [&CommPoly<S>; 3]) -> [[CommPoly<S>; 3]; 3] {
    let [a, b, c] = abc;
    let [x, y, z] = xyz;
    [
        [a.mul(x), b.mul(z), c.mul(y)],
        [c.mul(z), a.mul(y), b.mul(x)],
        [b.mul(y), c.mul(x), a.mul(z)],
    ]
}

pub type QPoly = CommPoly<BigRational>;

#[derive(Clone, Debug, PartialEq)]
pub struct DetM0Identity {
    pub determinant: QPoly,
    pub expected: QPoly,
    /// `det / (x³ + y³ + z³ − σ xyz)` read off the `x³` coefficient.
    pub k: QPoly,
}

impl DetM0Identity {
    pub fn holds(&self) -> bool {
        self.determinant == self.expected
    }
}

/// Symbolic determinant of the linear matrix with generic `A, B, C`.
pub fn det_m0_identity() -> DetM0Identity {
    let names = ["A", "B", "C", "x", "y", "z"];
    let v = QPoly::vars(&names);
    let m = m0_matrix([&v[0], &v[1], &v[2]], [&v[3], &v[4], &v[5]]);
    let det = det3(&m);
    let abc = v[0].mul(&v[1]).mul(&v[2]);
    let cubes = v[3].pow(3).add(&v[4].pow(3)).add(&v[5].pow(3));
    let sum3 = v[0].pow(3).add(&v[1].pow(3)).add(&v[2].pow(3));
    let xyz = v[3].mul(&v[4]).mul(&v[5]);
    let expected = abc.neg().mul(&cubes).add(&sum3.mul(&xyz));
    // Coefficient of x³ as a polynomial in A, B, C.
    let mut k = QPoly::zero(&names);
    for (e, c) in det.terms() {
        if e[3..] == [3, 0, 0] {
            let mut e = e.clone();
            e[3] = 0;
            k.add_term(e, c.clone());
        }
    }
    DetM0Identity { determinant: det, expected, k }
}

/// Determinant at fixed rational `A, B, C`, in `x, y, z`.
pub fn det_m0_at(a: &BigRational, b: &BigRational, c: &BigRational) -> QPoly {
    let names = ["x", "y", "z"];
    let v = QPoly::vars(&names);
    let k = |r: &BigRational| QPoly::constant(&names, r.clone());
    let (ka, kb, kc) = (k(a), k(b), k(c));
    det3(&m0_matrix([&ka, &kb, &kc], [&v[0], &v[1], &v[2]]))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetPCheck {
    pub determinant: QPoly,
    pub stated: QPoly,
    /// `det − stated` as polynomials.
    pub literal_difference: QPoly,
    /// The same difference modulo `αγ − βδ`.
    pub reduced_difference: QPoly,
}

/// The 2×2 matrix `[[aγ + cα, bδ + dβ], [bβ + dδ, aα + cγ]]` over the loop
/// algebra `C[α, β, γ, δ]/(αγ − βδ)`.
pub fn det_p_check() -> DetPCheck {
    let names = ["a", "b", "c", "d", "α", "β", "γ", "δ"];
    let v = QPoly::vars(&names);
    let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
    let (al, be, ga, de) = (&v[4], &v[5], &v[6], &v[7]);
    let p = [
        [a.mul(ga).add(&c.mul(al)), b.mul(de).add(&d.mul(be))],
        [b.mul(be).add(&d.mul(de)), a.mul(al).add(&c.mul(ga))],
    ];
    let det = det2(&p);
    let stated = a
        .mul(c)
        .mul(&al.pow(2).add(&ga.pow(2)))
        .sub(&b.mul(d).mul(&be.pow(2).add(&de.pow(2))))
        .add(&a.pow(2).add(&c.pow(2)).sub(&b.pow(2)).sub(&d.pow(2)).mul(&al.mul(ga)));
    let diff = det.sub(&stated);
    // βδ → αγ
    let lhs = [0, 0, 0, 0, 0, 1, 0, 1];
    let rhs = [0, 0, 0, 0, 1, 0, 1, 0];
    let reduced = diff.reduce_binomial(&lhs, &rhs);
    DetPCheck { determinant: det, stated, literal_difference: diff, reduced_difference: reduced }
}

/// Shorthand used in tests and examples.
pub fn qpoly_int(names: &[&str], terms: &[(&[u32], i64)]) -> QPoly {
    let mut p = QPoly::zero(names);
    for (e, c) in terms {
        p.add_term(e.to_vec(), rat(*c));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn generic_determinant() {
        let r = det_m0_identity();
        assert!(r.holds(), "{}", r.determinant.display());
        assert_eq!(r.k, qpoly_int(&["A", "B", "C", "x", "y", "z"], &[(&[1, 1, 1, 0, 0, 0], -1)]));
    }

    #[test]
    fn determinant_at_ones() {
        let xyz = ["x", "y", "z"];
        let d = det_m0_at(&rat(1), &rat(1), &rat(1));
        let want = qpoly_int(&xyz, &[(&[3, 0, 0], -1), (&[0, 3, 0], -1), (&[0, 0, 3], -1), (&[1, 1, 1], 3)]);
        assert_eq!(d, want);
        let d = det_m0_at(&rat(1), &rat(0), &rat(0));
        assert_eq!(d, qpoly_int(&xyz, &[(&[1, 1, 1], 1)]));
    }

    #[test]
    fn two_by_two_needs_the_conifold_relation() {
        let r = det_p_check();
        assert!(!r.literal_difference.is_zero());
        assert!(r.reduced_difference.is_zero());
        // The literal gap is exactly (b² + d²)(αγ − βδ).
        let names = ["a", "b", "c", "d", "α", "β", "γ", "δ"];
        let gap = qpoly_int(
            &names,
            &[
                (&[0, 2, 0, 0, 1, 0, 1, 0], 1),
                (&[0, 0, 0, 2, 1, 0, 1, 0], 1),
                (&[0, 2, 0, 0, 0, 1, 0, 1], -1),
                (&[0, 0, 0, 2, 0, 1, 0, 1], -1),
            ],
        );
        assert_eq!(r.literal_difference, gap);
    }

    #[test]
    fn display_is_readable() {
        let p = qpoly_int(&["x", "y"], &[(&[2, 0], 1), (&[1, 1], -3), (&[0, 0], 2)]);
        assert_eq!(p.display(), "x^2 - 3*x*y + 2");
    }

    proptest! {
        #[test]
        fn determinant_specializes(a in -5i64..5, b in -5i64..5, c in -5i64..5) {
            // Direct evaluation of the generic identity at integer A, B, C.
            let d = det_m0_at(&rat(a), &rat(b), &rat(c));
            let xyz = ["x", "y", "z"];
            let want = qpoly_int(&xyz, &[
                (&[3, 0, 0], -a * b * c), (&[0, 3, 0], -a * b * c), (&[0, 0, 3], -a * b * c),
                (&[1, 1, 1], a * a * a + b * b * b + c * c * c),
            ]);
            prop_assert_eq!(d, want);
        }

        #[test]
        fn det_is_multiplicative(e in proptest::collection::vec(-3i64..4, 8)) {
            let names = ["x"];
            let k = |n: i64| QPoly::constant(&names, rat(n));
            let m1 = [[k(e[0]), k(e[1])], [k(e[2]), k(e[3])]];
            let m2 = [[k(e[4]), k(e[5])], [k(e[6]), k(e[7])]];
            let prod = [
                [m1[0][0].mul(&m2[0][0]).add(&m1[0][1].mul(&m2[1][0])), m1[0][0].mul(&m2[0][1]).add(&m1[0][1].mul(&m2[1][1]))],
                [m1[1][0].mul(&m2[0][0]).add(&m1[1][1].mul(&m2[1][0])), m1[1][0].mul(&m2[0][1]).add(&m1[1][1].mul(&m2[1][1]))],
            ];
            prop_assert_eq!(det2(&prod), det2(&m1).mul(&det2(&m2)));
        }
    }
}
