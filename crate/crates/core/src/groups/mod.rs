//! Finite groups given by multiplication tables, decorated quivers and the
//! formal dual group quotient built on the smash-product quiver `Q#G`.

mod quotient;

use std::collections::HashMap;
use std::fmt::Write;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::parse_rational;

pub use quotient::{
    character_action, cyclic_character, formal_quotient, grading_congruence, lift_element, lift_path,
    relation_images, smash_product, term_degrees, DecoratedQuiver, FormalQuotient, SmashProduct,
};

pub type GroupElement = usize;

/// A finite group as an explicit multiplication table, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    table: Vec<Vec<GroupElement>>,
    identity: GroupElement,
    inverse: Vec<GroupElement>,
    index: HashMap<String, GroupElement>,
    /// Optional twisted-degree data `α_g`, one per element.
    pub alpha: Option<Vec<BigRational>>,
}

impl GroupTable {
    /// Checks closure, associativity on all triples, a two-sided identity and inverses.
    pub fn new(names: Vec<String>, table: Vec<Vec<GroupElement>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Usage("a group needs at least one element".into()));
        }
        let mut index = HashMap::new();
        for (i, s) in names.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::Usage(format!("duplicate group element '{s}'")));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Usage(format!("the product table must be {n}×{n} with entries among the elements")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::Usage("the table has no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let h = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::Usage(format!("'{}' has no inverse", names[g])))?;
            inverse.push(h);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Usage(format!(
                            "associativity fails on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(GroupTable { names, table, identity, inverse, index, alpha: None })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z_n` with elements named `0 … n−1`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names, table).expect("cyclic group table")
    }

    /// `S_3` as permutations of `{0, 1, 2}`, composed right to left.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let names = ["e", "s01", "s12", "s02", "r", "r2"].iter().map(|s| s.to_string()).collect();
        let pos = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| pos([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self::new(names, table).expect("S3 table")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> GroupElement {
        self.identity
    }

    pub fn op(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.table[a][b]
    }

    pub fn inv(&self, a: GroupElement) -> GroupElement {
        self.inverse[a]
    }

    pub fn name(&self, g: GroupElement) -> &str {
        &self.names[g]
    }

    pub fn element(&self, name: &str) -> Result<GroupElement> {
        self.index.get(name).copied().ok_or_else(|| Error::Usage(format!("unknown group element '{name}'")))
    }

    pub fn elements(&self) -> std::ops::Range<GroupElement> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Parses
    ///
    /// ```text
    /// elements e g
    /// table
    /// e g
    /// g e
    /// alpha 0 1
    /// ```
    ///
    /// Row `a`, column `b` of `table` holds `a·b`. `alpha` is optional.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut rows: Vec<Vec<GroupElement>> = Vec::new();
        let mut alpha = None;
        let mut in_table = false;
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.split('#').next().unwrap_or("");
            let toks: Vec<(usize, &str)> = line
                .split_whitespace()
                .map(|t| (t.as_ptr() as usize - line.as_ptr() as usize + 1, t))
                .collect();
            let Some(&(col, head)) = toks.first() else { continue };
            match head {
                "elements" => {
                    names = Some(toks[1..].iter().map(|(_, s)| s.to_string()).collect());
                    in_table = false;
                }
                "table" if toks.len() == 1 => in_table = true,
                "alpha" => {
                    let vals = toks[1..]
                        .iter()
                        .map(|(c, s)| parse_rational(s).ok_or_else(|| Error::parse(ln, *c, format!("bad rational '{s}'"))))
                        .collect::<Result<Vec<_>>>()?;
                    alpha = Some(vals);
                    in_table = false;
                }
                _ if in_table => {
                    let ns = names.as_ref().ok_or_else(|| Error::parse(ln, col, "table before elements"))?;
                    let row = toks
                        .iter()
                        .map(|(c, s)| {
                            ns.iter().position(|n| n == s).ok_or_else(|| Error::parse(ln, *c, format!("unknown element '{s}'")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if row.len() != ns.len() {
                        return Err(Error::parse(ln, col, format!("row has {} entries, expected {}", row.len(), ns.len())));
                    }
                    rows.push(row);
                }
                other => return Err(Error::parse(ln, col, format!("unexpected '{other}'"))),
            }
        }
        let names = names.ok_or_else(|| Error::parse(1, 1, "missing 'elements' line"))?;
        let mut g = GroupTable::new(names, rows)?;
        if let Some(a) = &alpha {
            if a.len() != g.order() {
                return Err(Error::Usage(format!("alpha needs {} values, got {}", g.order(), a.len())));
            }
        }
        g.alpha = alpha;
        Ok(g)
    }

    pub fn load_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn save(&self) -> String {
        let mut out = format!("elements {}\ntable\n", self.names.join(" "));
        for row in &self.table {
            let names: Vec<&str> = row.iter().map(|&g| self.names[g].as_str()).collect();
            writeln!(out, "{}", names.join(" ")).unwrap();
        }
        if let Some(a) = &self.alpha {
            let vals: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            writeln!(out, "alpha {}", vals.join(" ")).unwrap();
        }
        out
    }
}
