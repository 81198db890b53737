//! Weyl groups of Picard lattices, named elements, orbits and the `S_5` quotient of `W(D_5)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{Descriptor, DivisorClass, PicardLattice};
use crate::linalg::{self, IntMatrix};
use crate::perm::Perm;

/// Closure guard for breadth-first generation.
pub const CLOSURE_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeAutomorphism {
    pub matrix: IntMatrix,
}

impl LatticeAutomorphism {
    pub fn identity(rank: usize) -> Self {
        LatticeAutomorphism {
            matrix: IntMatrix::identity(rank),
        }
    }

    pub fn compose(&self, other: &LatticeAutomorphism) -> LatticeAutomorphism {
        LatticeAutomorphism {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn apply(&self, c: &DivisorClass) -> DivisorClass {
        DivisorClass(self.matrix.mul_vec(&c.0))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
            if k > 1000 {
                break;
            }
        }
        k
    }

    pub fn inverse(&self) -> LatticeAutomorphism {
        let ord = self.order();
        let mut p = LatticeAutomorphism::identity(self.matrix.rows);
        for _ in 1..ord {
            p = p.compose(self);
        }
        p
    }

    /// Checks `M^T G M = G` and `M K = K`.
    pub fn is_isometry_of(&self, lattice: &PicardLattice) -> bool {
        let m = &self.matrix;
        m.rows == lattice.rank
            && m.transpose().mul(&lattice.gram).mul(m) == lattice.gram
            && self.apply(&lattice.canonical) == lattice.canonical
    }
}

/// Reflection `x -> x + (x.R) R` in a root `R`.
pub fn reflection(lattice: &PicardLattice, root: &DivisorClass) -> LatticeAutomorphism {
    let gr = lattice.gram.mul_vec(&root.0);
    let n = lattice.rank;
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, m.get(i, j) + root.0[i] * gr[j]);
        }
    }
    LatticeAutomorphism { matrix: m }
}

/// A finite group of lattice automorphisms with its elements listed in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionGroup {
    pub lattice: PicardLattice,
    pub elements: Vec<LatticeAutomorphism>,
    pub generator_words: Vec<String>,
}

impl ActionGroup {
    /// Closure of a generating set.
    pub fn generate(
        lattice: &PicardLattice,
        gens: &[LatticeAutomorphism],
        words: Vec<String>,
    ) -> Result<Self> {
        let id = LatticeAutomorphism::identity(lattice.rank);
        let mut seen: BTreeSet<LatticeAutomorphism> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for g in gens {
                let y = g.compose(&x);
                if !seen.contains(&y) {
                    if seen.len() >= CLOSURE_CAP {
                        return Err(Error::ClosureTooLarge(CLOSURE_CAP));
                    }
                    seen.insert(y.clone());
                    queue.push(y);
                }
            }
        }
        Ok(ActionGroup {
            lattice: lattice.clone(),
            elements: seen.into_iter().collect(),
            generator_words: words,
        })
    }

    pub fn trivial(lattice: &PicardLattice) -> Self {
        ActionGroup {
            lattice: lattice.clone(),
            elements: vec![LatticeAutomorphism::identity(lattice.rank)],
            generator_words: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &LatticeAutomorphism) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &ActionGroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    /// Subgroup generated by this group and extra elements.
    pub fn join(&self, extra: &[LatticeAutomorphism]) -> Result<ActionGroup> {
        let mut gens = self.elements.clone();
        gens.extend_from_slice(extra);
        ActionGroup::generate(&self.lattice, &gens, self.generator_words.clone())
    }

    /// Checks closure under products.
    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| self.contains(&a.compose(b))))
    }
}

/// The full Weyl group generated by reflections in all roots.
pub fn generate_weyl(lattice: &PicardLattice) -> Result<ActionGroup> {
    let mut gens: Vec<LatticeAutomorphism> = lattice
        .enumerate_roots()
        .iter()
        .map(|r| reflection(lattice, r))
        .collect();
    gens.sort();
    gens.dedup();
    ActionGroup::generate(lattice, &gens, Vec::new())
}

/// `F_i = L - E_i` and its partner `-K - F_i`, for `i = 1..=5` on the degree-4 lattice.
pub fn conic_pairs(lattice: &PicardLattice) -> Result<Vec<(DivisorClass, DivisorClass)>> {
    if lattice.descriptor != Descriptor::BlowupOfPlane(5) {
        return Err(Error::NotDegreeFour);
    }
    Ok((1..=5)
        .map(|i| {
            let f = lattice.l().sub(&lattice.e(i));
            let g = lattice.canonical.neg().sub(&f);
            (f, g)
        })
        .collect())
}

/// The five conic classes of the degree-5 lattice: `L - E_i` for `i <= 4` and `2L - sum E_i`.
fn degree5_conics(lattice: &PicardLattice) -> Vec<DivisorClass> {
    let mut out: Vec<DivisorClass> = (1..=4).map(|i| lattice.l().sub(&lattice.e(i))).collect();
    let mut q = lattice.l().scale(2);
    for i in 1..=4 {
        q = q.sub(&lattice.e(i));
    }
    out.push(q);
    out
}

/// The permutation of the conic pairs induced by `g` (degree 4), or `None` if `g` does not permute them.
pub fn pair_permutation(
    lattice: &PicardLattice,
    g: &LatticeAutomorphism,
) -> Result<Option<(Perm, Vec<bool>)>> {
    let pairs = conic_pairs(lattice)?;
    let mut img = vec![0u8; 5];
    let mut swapped = vec![false; 5];
    for (i, (f, _)) in pairs.iter().enumerate() {
        let gf = g.apply(f);
        let Some(j) = pairs.iter().position(|(a, b)| *a == gf || *b == gf) else {
            return Ok(None);
        };
        img[i] = j as u8;
        swapped[i] = pairs[j].1 == gf;
    }
    let p = Perm(img);
    let mut check = p.0.clone();
    check.sort();
    if check != [0, 1, 2, 3, 4] {
        return Ok(None);
    }
    Ok(Some((p, swapped)))
}

/// `E_i -> E_{sigma(i)}` with `L` fixed.
pub fn permutation_element(lattice: &PicardLattice, sigma: &Perm) -> Result<LatticeAutomorphism> {
    let n = lattice
        .n_points()
        .ok_or_else(|| Error::UnknownName(sigma.cycles()))?;
    if sigma.len() != n {
        return Err(Error::UnknownName(sigma.cycles()));
    }
    let mut m = IntMatrix::zeros(n + 1, n + 1);
    m.set(0, 0, 1);
    for i in 0..n {
        m.set(sigma.apply(i) + 1, i + 1, 1);
    }
    Ok(LatticeAutomorphism { matrix: m })
}

fn iota_pair(lattice: &PicardLattice, a: usize, b: usize) -> LatticeAutomorphism {
    let rest: Vec<usize> = (1..=5).filter(|&c| c != a && c != b).collect();
    let mut cols: Vec<DivisorClass> = vec![lattice.zero(); 6];
    let mut l = lattice.l().scale(2);
    for &c in &rest {
        l = l.sub(&lattice.e(c));
    }
    cols[0] = l;
    cols[a] = lattice.e(b);
    cols[b] = lattice.e(a);
    for &c in &rest {
        let o: Vec<usize> = rest.iter().copied().filter(|&d| d != c).collect();
        cols[c] = lattice.lij(o[0], o[1]);
    }
    let cols: Vec<Vec<i64>> = cols.into_iter().map(|c| c.0).collect();
    LatticeAutomorphism {
        matrix: IntMatrix::from_columns(&cols),
    }
}

/// The element of the normal subgroup `C_2^4` swapping exactly the conic pairs indexed by `s` (1-based).
pub fn iota(lattice: &PicardLattice, s: &[usize]) -> Result<LatticeAutomorphism> {
    if lattice.descriptor != Descriptor::BlowupOfPlane(5) {
        return Err(Error::NotDegreeFour);
    }
    let mut set: Vec<usize> = s.to_vec();
    set.sort();
    set.dedup();
    if set.len() != s.len() || set.len() % 2 == 1 || set.iter().any(|&i| !(1..=5).contains(&i)) {
        return Err(Error::UnknownName(format!(
            "i{}",
            s.iter().map(|d| d.to_string()).collect::<String>()
        )));
    }
    let mut out = LatticeAutomorphism::identity(6);
    for pair in set.chunks(2) {
        out = out.compose(&iota_pair(lattice, pair[0], pair[1]));
    }
    Ok(out)
}

fn degree5_named(lattice: &PicardLattice, sigma: &Perm) -> Result<LatticeAutomorphism> {
    let conics = degree5_conics(lattice);
    let w = generate_weyl(lattice)?;
    w.elements
        .into_iter()
        .find(|g| (0..5).all(|i| g.apply(&conics[i]) == conics[sigma.apply(i)]))
        .ok_or_else(|| Error::NotInGroup(sigma.cycles()))
}

/// Resolves one token: cycle notation, `iS` for the involution swapping pairs `S`, or `id`.
fn named_token(lattice: &PicardLattice, tok: &str) -> Result<LatticeAutomorphism> {
    if tok == "id" || tok == "()" {
        return Ok(LatticeAutomorphism::identity(lattice.rank));
    }
    if let Some(digits) = tok.strip_prefix('i') {
        let s: Option<Vec<usize>> = digits
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect();
        let s = s
            .filter(|v| !v.is_empty())
            .ok_or_else(|| Error::UnknownName(tok.into()))?;
        return iota(lattice, &s);
    }
    match lattice.descriptor {
        Descriptor::BlowupOfPlane(4) => {
            let sigma = Perm::parse_cycles(tok, 5).map_err(|_| Error::UnknownName(tok.into()))?;
            degree5_named(lattice, &sigma)
        }
        Descriptor::BlowupOfPlane(n) if n > 0 => {
            let sigma = Perm::parse_cycles(tok, n).map_err(|_| Error::UnknownName(tok.into()))?;
            permutation_element(lattice, &sigma)
        }
        Descriptor::Quadric if tok == "s" => Ok(LatticeAutomorphism {
            matrix: IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
        }),
        _ => Err(Error::UnknownName(tok.into())),
    }
}

fn tokenize(word: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            '(' => {
                let mut j = i;
                let mut tok = String::new();
                while j < chars.len() && chars[j] == '(' {
                    let end = chars[j..]
                        .iter()
                        .position(|&c| c == ')')
                        .ok_or_else(|| Error::UnknownName(word.into()))?;
                    tok.extend(&chars[j..=j + end]);
                    j += end + 1;
                }
                out.push(tok);
                i = j;
            }
            'i' if chars.get(i + 1) == Some(&'d') => {
                out.push("id".into());
                i += 2;
            }
            'i' | 's' => {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                out.push(chars[i..j].iter().collect());
                i = j;
            }
            '*' | '.' => i += 1,
            _ => return Err(Error::UnknownName(word.into())),
        }
    }
    Ok(out)
}

/// Resolves a word such as `(12)(34)i15`; factors are multiplied left to right, so the
/// rightmost factor acts first.
pub fn named_element(lattice: &PicardLattice, word: &str) -> Result<LatticeAutomorphism> {
    let mut out = LatticeAutomorphism::identity(lattice.rank);
    for tok in tokenize(word)? {
        out = out.compose(&named_token(lattice, &tok)?);
    }
    Ok(out)
}

/// Subgroup of `group` generated by named words.
pub fn subgroup_from_words(group: &ActionGroup, words: &[&str]) -> Result<ActionGroup> {
    let mut gens = Vec::new();
    for w in words {
        if w.trim().is_empty() {
            continue;
        }
        let g = named_element(&group.lattice, w)?;
        if !group.contains(&g) {
            return Err(Error::NotInGroup((*w).into()));
        }
        gens.push(g);
    }
    ActionGroup::generate(
        &group.lattice,
        &gens,
        words.iter().map(|w| (*w).to_string()).collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub curves: Vec<DivisorClass>,
    /// Pairwise intersection numbers between distinct members are all zero.
    pub disjoint: bool,
}

/// Orbits of `group` on a set of curves, ordered by their least member.
pub fn orbits_on_curves(group: &ActionGroup, curves: &[DivisorClass]) -> Vec<Orbit> {
    let mut sorted: Vec<DivisorClass> = curves.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut done: BTreeSet<DivisorClass> = BTreeSet::new();
    let mut out = Vec::new();
    for c in &sorted {
        if done.contains(c) {
            continue;
        }
        let orbit: BTreeSet<DivisorClass> = group.elements.iter().map(|g| g.apply(c)).collect();
        let lat = &group.lattice;
        let v: Vec<DivisorClass> = orbit.into_iter().collect();
        let disjoint = v
            .iter()
            .enumerate()
            .all(|(i, a)| v[i + 1..].iter().all(|b| lat.dot(a, b) == 0));
        done.extend(v.iter().cloned());
        out.push(Orbit {
            curves: v,
            disjoint,
        });
    }
    out
}

/// Rank of the invariant sublattice.
pub fn invariant_rank(group: &ActionGroup) -> usize {
    let n = group.lattice.rank;
    let id = IntMatrix::identity(n);
    let mut rows = Vec::new();
    for g in &group.elements {
        rows.extend(g.matrix.sub(&id).to_rows());
    }
    n - linalg::rank(&rows)
}

/// Rank of the image of `g - id`.
pub fn moved_rank(g: &LatticeAutomorphism) -> usize {
    let id = IntMatrix::identity(g.matrix.rows);
    linalg::rank(&g.matrix.sub(&id).to_rows())
}

/// Image of a degree-4 action group in `S_5`, as sorted permutations.
pub fn s5_image(group: &ActionGroup) -> Result<Vec<Perm>> {
    let mut out = BTreeSet::new();
    for g in &group.elements {
        let (p, _) = pair_permutation(&group.lattice, g)?.ok_or(Error::NotDegreeFour)?;
        out.insert(p);
    }
    Ok(out.into_iter().collect())
}

/// Whether the elements of `group` lying in `C_2^4` form the normal subgroup of order 16 of `ambient`.
pub fn kernel_of_pair_action(group: &ActionGroup) -> Result<Vec<LatticeAutomorphism>> {
    let mut out = Vec::new();
    for g in &group.elements {
        let (p, _) = pair_permutation(&group.lattice, g)?.ok_or(Error::NotDegreeFour)?;
        if p.is_identity() {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// The set of conic pairs swapped by an element of `C_2^4` (1-based), if it lies there.
pub fn iota_support(
    lattice: &PicardLattice,
    g: &LatticeAutomorphism,
) -> Result<Option<Vec<usize>>> {
    match pair_permutation(lattice, g)? {
        Some((p, sw)) if p.is_identity() => {
            Ok(Some((0..5).filter(|&i| sw[i]).map(|i| i + 1).collect()))
        }
        _ => Ok(None),
    }
}

/// Realizability filter: the `S_5` image contains no transposition and no `V_4` acting on four letters.
pub fn passes_nonact_filter(group: &ActionGroup) -> Result<bool> {
    let img = s5_image(group)?;
    let moved = |p: &Perm| (0..5).filter(|&i| p.apply(i) != i).collect::<Vec<_>>();
    let transposition = img.iter().any(|p| p.order() == 2 && moved(p).len() == 2);
    let doubles: Vec<&Perm> = img
        .iter()
        .filter(|p| p.order() == 2 && moved(p).len() == 4)
        .collect();
    let v4 = doubles
        .iter()
        .enumerate()
        .any(|(i, a)| doubles[i + 1..].iter().any(|b| moved(a) == moved(b)));
    Ok(!transposition && !v4)
}

/// Permutation representation of an ambient group on its `(-1)`-curves, for fast conjugacy tests.
pub struct CurveRepresentation {
    pub ambient: ActionGroup,
    pub curves: Vec<DivisorClass>,
    perms: Vec<Perm>,
    by_matrix: BTreeMap<LatticeAutomorphism, usize>,
    by_perm: BTreeMap<Perm, usize>,
}

impl CurveRepresentation {
    pub fn new(ambient: ActionGroup) -> Result<Self> {
        let curves = ambient.lattice.enumerate_minus_one_curves();
        let pos: BTreeMap<DivisorClass, u8> = curves
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i as u8))
            .collect();
        let mut perms = Vec::with_capacity(ambient.order());
        for g in &ambient.elements {
            let p: Option<Vec<u8>> = curves
                .iter()
                .map(|c| pos.get(&g.apply(c)).copied())
                .collect();
            perms.push(Perm(p.ok_or_else(|| {
                Error::Unsupported("element does not permute the curves".into())
            })?));
        }
        let by_perm: BTreeMap<Perm, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        if by_perm.len() != perms.len() {
            return Err(Error::Unsupported(
                "action on curves is not faithful".into(),
            ));
        }
        let by_matrix = ambient
            .elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        Ok(CurveRepresentation {
            ambient,
            curves,
            perms,
            by_matrix,
            by_perm,
        })
    }

    pub fn perm_of(&self, g: &LatticeAutomorphism) -> Option<&Perm> {
        self.by_matrix.get(g).map(|&i| &self.perms[i])
    }

    pub fn element_of(&self, p: &Perm) -> Option<&LatticeAutomorphism> {
        self.by_perm.get(p).map(|&i| &self.ambient.elements[i])
    }

    fn key(&self, group: &ActionGroup) -> Result<Vec<Perm>> {
        let mut v: Vec<Perm> = group
            .elements
            .iter()
            .map(|g| {
                self.perm_of(g)
                    .cloned()
                    .ok_or_else(|| Error::NotInGroup(format!("{:?}", g.matrix.data)))
            })
            .collect::<Result<_>>()?;
        v.sort();
        Ok(v)
    }

    fn conjugate_key(&self, key: &[Perm], x: usize) -> Vec<Perm> {
        let xp = &self.perms[x];
        let xi = xp.inverse();
        let mut v: Vec<Perm> = key.iter().map(|p| xp.compose(p).compose(&xi)).collect();
        v.sort();
        v
    }

    /// Canonical representative of the conjugacy class of a subgroup: the least sorted conjugate.
    pub fn class_key(&self, group: &ActionGroup) -> Result<Vec<Perm>> {
        let key = self.key(group)?;
        Ok((0..self.perms.len())
            .map(|x| self.conjugate_key(&key, x))
            .min()
            .unwrap_or(key))
    }

    pub fn are_conjugate(&self, a: &ActionGroup, b: &ActionGroup) -> Result<bool> {
        if a.order() != b.order() {
            return Ok(false);
        }
        let ka = self.key(a)?;
        let kb = self.key(b)?;
        Ok((0..self.perms.len()).any(|x| self.conjugate_key(&ka, x) == kb))
    }

    /// Conjugacy of single elements.
    pub fn elements_conjugate(
        &self,
        a: &LatticeAutomorphism,
        b: &LatticeAutomorphism,
    ) -> Result<bool> {
        let pa = self
            .perm_of(a)
            .ok_or_else(|| Error::NotInGroup("element".into()))?;
        let pb = self
            .perm_of(b)
            .ok_or_else(|| Error::NotInGroup("element".into()))?;
        Ok(self
            .perms
            .iter()
            .any(|x| &x.compose(pa).compose(&x.inverse()) == pb))
    }

    /// Group generated by ambient elements given as permutations.
    pub fn group_of_perms(&self, gens: &[Perm]) -> Result<ActionGroup> {
        let mats: Vec<LatticeAutomorphism> = gens
            .iter()
            .map(|p| {
                self.element_of(p)
                    .cloned()
                    .ok_or_else(|| Error::NotInGroup(p.cycles()))
            })
            .collect::<Result<_>>()?;
        ActionGroup::generate(&self.ambient.lattice, &mats, Vec::new())
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(d: i64) -> PicardLattice {
        PicardLattice::del_pezzo(d).unwrap()
    }

    #[test]
    fn reflections_are_involutive_isometries() {
        for lat in [dp(4), dp(5), dp(6), PicardLattice::quadric()] {
            for r in lat.enumerate_roots() {
                let s = reflection(&lat, &r);
                assert!(s.compose(&s).is_identity());
                assert!(s.is_isometry_of(&lat));
            }
        }
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(generate_weyl(&dp(4)).unwrap().order(), 1920);
        assert_eq!(generate_weyl(&dp(5)).unwrap().order(), 120);
        assert_eq!(generate_weyl(&dp(6)).unwrap().order(), 12);
        assert_eq!(generate_weyl(&PicardLattice::quadric()).unwrap().order(), 2);
    }

    #[test]
    fn derived_iota12_images() {
        let x = dp(4);
        let i12 = iota(&x, &[1, 2]).unwrap();
        let q = x.conic_q();
        let mut l = x.l().scale(2);
        for c in 3..=5 {
            l = l.sub(&x.e(c));
        }
        assert_eq!(i12.apply(&x.l()), l);
        assert_eq!(i12.apply(&x.e(1)), x.e(2));
        assert_eq!(i12.apply(&x.e(3)), x.lij(4, 5));
        assert_eq!(i12.apply(&x.lij(1, 2)), q);
        assert_eq!(i12.apply(&x.lij(1, 3)), x.lij(2, 3));
        assert_eq!(i12.apply(&x.lij(1, 4)), x.lij(2, 4));
    }

    #[test]
    fn iota_elements_form_the_kernel() {
        let x = dp(4);
        let w = generate_weyl(&x).unwrap();
        let kernel = kernel_of_pair_action(&w).unwrap();
        assert_eq!(kernel.len(), 16);
        for s in [&[][..], &[1, 2], &[3, 4], &[1, 3, 4, 5], &[1, 2, 3, 4]] {
            let g = iota(&x, s).unwrap();
            assert!(w.contains(&g));
            assert_eq!(iota_support(&x, &g).unwrap().unwrap(), s.to_vec());
        }
        let a = iota(&x, &[1, 2])
            .unwrap()
            .compose(&iota(&x, &[2, 3]).unwrap());
        assert_eq!(a, iota(&x, &[1, 3]).unwrap());
        assert!(iota(&x, &[1, 2, 3]).is_err());
    }

    #[test]
    fn named_subgroups() {
        let x = dp(4);
        let w = generate_weyl(&x).unwrap();
        assert_eq!(subgroup_from_words(&w, &["(12345)"]).unwrap().order(), 5);
        assert_eq!(subgroup_from_words(&w, &["i12", "i13"]).unwrap().order(), 4);
        let c4 = subgroup_from_words(&w, &["(12)(34)i15"]).unwrap();
        assert_eq!(c4.order(), 4);
        let img = s5_image(&c4).unwrap();
        assert_eq!(img.len(), 2);
        assert!(img.contains(&Perm::parse_cycles("(12)(34)", 5).unwrap()));
        assert!(subgroup_from_words(&w, &["x1"]).is_err());
    }

    #[test]
    fn s5_images() {
        let x = dp(4);
        let w = generate_weyl(&x).unwrap();
        let i12 = subgroup_from_words(&w, &["i12"]).unwrap();
        assert_eq!(s5_image(&i12).unwrap().len(), 1);
        assert_eq!(s5_image(&w).unwrap().len(), 120);
        assert!(s5_image(&generate_weyl(&dp(5)).unwrap()).is_err());
    }

    #[test]
    fn s5_image_is_a_homomorphism() {
        let x = dp(4);
        let gens: Vec<_> = ["(12)", "(12345)", "i12", "i1345", "(12)(34)i15"]
            .iter()
            .map(|w| named_element(&x, w).unwrap())
            .collect();
        for a in &gens {
            for b in &gens {
                let (pa, _) = pair_permutation(&x, a).unwrap().unwrap();
                let (pb, _) = pair_permutation(&x, b).unwrap().unwrap();
                let (pab, _) = pair_permutation(&x, &a.compose(b)).unwrap().unwrap();
                assert_eq!(pab, pa.compose(&pb));
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let x5 = dp(5);
        let w5 = generate_weyl(&x5).unwrap();
        let g = subgroup_from_words(&w5, &["(12)"]).unwrap();
        let fixed: Vec<String> = orbits_on_curves(&g, &x5.enumerate_minus_one_curves())
            .into_iter()
            .filter(|o| o.curves.len() == 1)
            .map(|o| x5.name(&o.curves[0]))
            .collect();
        let mut fixed = fixed;
        fixed.sort();
        assert_eq!(fixed, vec!["E3", "E4", "L12", "L34"]);

        let x = dp(4);
        let w = generate_weyl(&x).unwrap();
        let c5 = subgroup_from_words(&w, &["(12345)"]).unwrap();
        let single: Vec<_> = orbits_on_curves(&c5, &x.enumerate_minus_one_curves())
            .into_iter()
            .filter(|o| o.curves.len() == 1)
            .collect();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].curves[0], x.conic_q());
        assert_eq!(
            orbits_on_curves(&ActionGroup::trivial(&x), &x.enumerate_minus_one_curves()).len(),
            16
        );
    }

    #[test]
    fn invariant_ranks() {
        let x = dp(4);
        let w = generate_weyl(&x).unwrap();
        assert_eq!(invariant_rank(&generate_weyl(&dp(5)).unwrap()), 1);
        assert_eq!(invariant_rank(&ActionGroup::trivial(&x)), 6);
        let gal = subgroup_from_words(&w, &["i1345", "i15", "i45"]).unwrap();
        assert_eq!(invariant_rank(&gal), 2);
        for g in w.elements.iter().step_by(37) {
            let h = ActionGroup::generate(&x, core::slice::from_ref(g), Vec::new()).unwrap();
            assert_eq!(invariant_rank(&h) + moved_rank(g), 6);
        }
    }

    #[test]
    fn degree5_five_cycle() {
        let x = dp(5);
        let g = named_element(&x, "(12345)").unwrap();
        assert_eq!(g.order(), 5);
        assert!(g.is_isometry_of(&x));
    }

    #[test]
    fn conjugacy_in_d5() {
        let x = dp(4);
        let rep = CurveRepresentation::new(generate_weyl(&x).unwrap()).unwrap();
        let a = subgroup_from_words(&rep.ambient, &["i12"]).unwrap();
        let b = subgroup_from_words(&rep.ambient, &["i35"]).unwrap();
        let c = subgroup_from_words(&rep.ambient, &["i1234"]).unwrap();
        assert!(rep.are_conjugate(&a, &b).unwrap());
        assert!(!rep.are_conjugate(&a, &c).unwrap());
        assert!(passes_nonact_filter(&a).unwrap());
        let t = subgroup_from_words(&rep.ambient, &["(12)"]).unwrap();
        assert!(!passes_nonact_filter(&t).unwrap());
    }
}
