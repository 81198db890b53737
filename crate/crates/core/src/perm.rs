//! Permutations on a few letters and brute-force subgroup enumeration in `S_5`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Permutation of `0..n`; `p.0[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self * other`, applying `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = alloc::vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u8 == j)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Parses cycle notation with 1-based single-digit letters, e.g. `(12)(345)`.
    /// Cycles are composed right to left.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Perm> {
        let mut out = Perm::identity(n);
        let mut rest = s.trim();
        if rest == "()" || rest.is_empty() {
            return Ok(out);
        }
        let mut cycles = Vec::new();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s}")))?;
            let end = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s}")))?;
            let mut letters = Vec::new();
            for c in body[..end].chars() {
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad letter {c:?} in {s}")))?
                    as usize;
                if d == 0 || d > n || letters.contains(&(d - 1)) {
                    return Err(Error::Parse(format!("bad letter {d} in {s}")));
                }
                letters.push(d - 1);
            }
            cycles.push(letters);
            rest = &body[end + 1..];
        }
        for cyc in cycles.iter().rev() {
            let mut p = Perm::identity(n);
            for k in 0..cyc.len() {
                p.0[cyc[k]] = cyc[(k + 1) % cyc.len()] as u8;
            }
            out = p.compose(&out);
        }
        Ok(out)
    }

    /// Cycle notation with 1-based letters; `()` for the identity.
    pub fn cycles(&self) -> String {
        let mut seen = alloc::vec![false; self.len()];
        let mut s = String::new();
        for i in 0..self.len() {
            if seen[i] || self.apply(i) == i {
                continue;
            }
            s.push('(');
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                s.push_str(&format!("{}", j + 1));
                j = self.apply(j);
            }
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }
}

/// The symmetric group `S_5` with its multiplication table.
pub struct S5 {
    pub elements: Vec<Perm>,
    index: BTreeMap<Perm, u8>,
    table: Vec<u8>,
    inv: Vec<u8>,
}

/// A subgroup of `S_5` as a bitmask over element indices.
pub type Subgroup = u128;

impl Default for S5 {
    fn default() -> Self {
        Self::new()
    }
}

impl S5 {
    pub fn new() -> Self {
        let mut elements = Vec::with_capacity(120);
        let mut cur: Vec<u8> = (0..5).collect();
        loop {
            elements.push(Perm(cur.clone()));
            if !next_permutation(&mut cur) {
                break;
            }
        }
        let index: BTreeMap<Perm, u8> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u8))
            .collect();
        let mut table = Vec::with_capacity(120 * 120);
        for a in &elements {
            for b in &elements {
                table.push(index[&a.compose(b)]);
            }
        }
        let inv = elements.iter().map(|p| index[&p.inverse()]).collect();
        S5 {
            elements,
            index,
            table,
            inv,
        }
    }

    pub fn index_of(&self, p: &Perm) -> usize {
        self.index[p] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * 120 + b] as usize
    }

    pub fn members(h: Subgroup) -> impl Iterator<Item = usize> {
        (0..120).filter(move |&i| h >> i & 1 == 1)
    }

    pub fn order(h: Subgroup) -> u32 {
        h.count_ones()
    }

    /// Subgroup generated by a set of element indices.
    pub fn closure(&self, gens: Subgroup) -> Subgroup {
        let mut h: Subgroup = 1; // index 0 is the identity
        let mut frontier: Vec<usize> = Vec::from([0]);
        let gl: Vec<usize> = Self::members(gens).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gl {
                let y = self.mul(g, x);
                if h >> y & 1 == 0 {
                    h |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        h
    }

    pub fn generated(&self, perms: &[Perm]) -> Subgroup {
        let gens = perms
            .iter()
            .fold(0u128, |acc, p| acc | 1 << self.index_of(p));
        self.closure(gens)
    }

    pub fn conjugate(&self, h: Subgroup, x: usize) -> Subgroup {
        let xi = self.inv[x] as usize;
        Self::members(h).fold(0, |acc, a| acc | 1 << self.mul(self.mul(x, a), xi))
    }

    /// Canonical representative of the conjugacy class of `h`.
    pub fn class_rep(&self, h: Subgroup) -> Subgroup {
        (0..120).map(|x| self.conjugate(h, x)).min().unwrap()
    }

    pub fn is_normal_in(&self, n: Subgroup, g: Subgroup) -> bool {
        n & !g == 0 && Self::members(g).all(|x| self.conjugate(n, x) == n)
    }

    /// All subgroups, found by repeatedly adjoining single elements.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut seen: BTreeSet<Subgroup> = BTreeSet::new();
        let mut stack = Vec::from([1u128]);
        seen.insert(1);
        while let Some(h) = stack.pop() {
            for g in 0..120 {
                if h >> g & 1 == 1 {
                    continue;
                }
                let k = self.closure(h | 1 << g);
                if seen.insert(k) {
                    stack.push(k);
                }
            }
        }
        seen.into_iter().collect()
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// One row of the normal-subgroup witness table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRow {
    pub group: Vec<String>,
    pub order: u32,
    pub witness_class: &'static str,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S5LemmaReport {
    pub subgroup_count: usize,
    pub class_count: usize,
    pub rows: Vec<WitnessRow>,
    pub counterexamples: Vec<Vec<String>>,
}

/// The six normal-subgroup classes, in the order they are tried.
pub const WITNESS_CLASSES: [(&str, &[&str]); 6] = [
    ("C2=<(12)>", &["(12)"]),
    ("C2=<(12)(34)>", &["(12)(34)"]),
    ("C3=<(123)>", &["(123)"]),
    ("V4=<(12)(34),(13)(24)>", &["(12)(34)", "(13)(24)"]),
    ("C5=<(12345)>", &["(12345)"]),
    ("A5", &["(123)", "(12345)"]),
];

impl S5 {
    fn names(&self, h: Subgroup) -> Vec<String> {
        Self::members(h)
            .map(|i| self.elements[i].cycles())
            .collect()
    }

    /// The first listed class having a member normal in `g`, with that member.
    pub fn normal_witness(
        &self,
        g: Subgroup,
        subgroups: &[Subgroup],
    ) -> Option<(&'static str, Subgroup)> {
        for (name, gens) in WITNESS_CLASSES {
            let perms: Vec<Perm> = gens
                .iter()
                .map(|c| Perm::parse_cycles(c, 5).unwrap())
                .collect();
            let rep = self.class_rep(self.generated(&perms));
            for &n in subgroups {
                if n & !g == 0 && self.class_rep(n) == rep && self.is_normal_in(n, g) {
                    return Some((name, n));
                }
            }
        }
        None
    }

    /// Checks that every nontrivial subgroup has a normal subgroup from the six classes.
    pub fn verify_normal_subgroup_lemma(&self) -> S5LemmaReport {
        let subs = self.all_subgroups();
        let classes: BTreeSet<Subgroup> = subs.iter().map(|&h| self.class_rep(h)).collect();
        let mut rows = Vec::new();
        let mut counterexamples = Vec::new();
        for &rep in &classes {
            if rep == 1 {
                continue;
            }
            match self.normal_witness(rep, &subs) {
                Some((name, n)) => rows.push(WitnessRow {
                    group: self.names(rep),
                    order: Self::order(rep),
                    witness_class: name,
                    witness: self.names(n),
                }),
                None => counterexamples.push(self.names(rep)),
            }
        }
        for &h in &subs {
            if h != 1 && self.normal_witness(h, &subs).is_none() {
                counterexamples.push(self.names(h));
            }
        }
        counterexamples.sort();
        counterexamples.dedup();
        S5LemmaReport {
            subgroup_count: subs.len(),
            class_count: classes.len(),
            rows,
            counterexamples,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        Perm::parse_cycles(s, 5).unwrap()
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(p("(12)(34)").order(), 2);
        assert_eq!(p("(12345)").order(), 5);
        assert_eq!(p("(12)(23)").cycles(), "(123)");
        assert_eq!(p("(2354)").cycles(), "(2354)");
        assert!(Perm::parse_cycles("(16)", 5).is_err());
    }

    #[test]
    fn subgroup_counts() {
        let s5 = S5::new();
        let subs = s5.all_subgroups();
        assert_eq!(subs.len(), 156);
        let classes: BTreeSet<_> = subs.iter().map(|&h| s5.class_rep(h)).collect();
        assert_eq!(classes.len(), 19);
    }

    #[test]
    fn lemma_witnesses() {
        let s5 = S5::new();
        let subs = s5.all_subgroups();
        let full = s5.generated(&[p("(12)"), p("(12345)")]);
        assert_eq!(s5.normal_witness(full, &subs).unwrap().0, "A5");
        let f20 = s5.generated(&[p("(12345)"), p("(2354)")]);
        assert_eq!(S5::order(f20), 20);
        assert_eq!(s5.normal_witness(f20, &subs).unwrap().0, "C5=<(12345)>");
        let c3 = s5.generated(&[p("(123)")]);
        assert_eq!(s5.normal_witness(c3, &subs).unwrap(), ("C3=<(123)>", c3));
        let report = s5.verify_normal_subgroup_lemma();
        assert!(report.counterexamples.is_empty());
        assert_eq!(report.rows.len(), 18);
    }
}
