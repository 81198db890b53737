//! Picard lattices of del Pezzo surfaces and of the quadric.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

const BOUND: i64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Descriptor {
    /// The plane blown up in `n` points; basis `L, E_1, ..., E_n`.
    BlowupOfPlane(usize),
    /// `P^1 x P^1`; basis `a, b` of the two rulings.
    Quadric,
}

/// A divisor class given by its coordinates in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> DivisorClass {
        self.scale(-1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PicardLattice {
    pub rank: usize,
    pub gram: IntMatrix,
    pub canonical: DivisorClass,
    pub descriptor: Descriptor,
}

impl PicardLattice {
    /// The plane blown up in `n <= 5` points in general position.
    pub fn blowup(n: usize) -> Result<Self> {
        if n > 5 {
            return Err(Error::UnsupportedLattice(format!(
                "degree {} < 4",
                9 - n as i64
            )));
        }
        let rank = n + 1;
        let mut gram = IntMatrix::identity(rank);
        for i in 1..rank {
            gram.set(i, i, -1);
        }
        let mut k = vec![1; rank];
        k[0] = -3;
        Ok(PicardLattice {
            rank,
            gram,
            canonical: DivisorClass(k),
            descriptor: Descriptor::BlowupOfPlane(n),
        })
    }

    /// Del Pezzo lattice of the given degree realized as a blowup of the plane.
    pub fn del_pezzo(degree: i64) -> Result<Self> {
        if !(4..=9).contains(&degree) {
            return Err(Error::DegreeOutOfRange(degree));
        }
        Self::blowup((9 - degree) as usize)
    }

    pub fn quadric() -> Self {
        PicardLattice {
            rank: 2,
            gram: IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
            canonical: DivisorClass(vec![-2, -2]),
            descriptor: Descriptor::Quadric,
        }
    }

    pub fn degree(&self) -> i64 {
        self.dot(&self.canonical, &self.canonical)
    }

    pub fn n_points(&self) -> Option<usize> {
        match self.descriptor {
            Descriptor::BlowupOfPlane(n) => Some(n),
            Descriptor::Quadric => None,
        }
    }

    /// Intersection pairing, panicking on dimension mismatch.
    pub fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> i64 {
        let gb = self.gram.mul_vec(&b.0);
        a.0.iter().zip(&gb).map(|(x, y)| x * y).sum()
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        for c in [a, b] {
            if c.0.len() != self.rank {
                return Err(Error::DimensionMismatch {
                    expected: self.rank,
                    found: c.0.len(),
                });
            }
        }
        Ok(self.dot(a, b))
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass(vec![0; self.rank])
    }

    fn basis_vector(&self, i: usize) -> DivisorClass {
        let mut v = self.zero();
        v.0[i] = 1;
        v
    }

    /// The class `L` of a line; blowup lattices only.
    pub fn l(&self) -> DivisorClass {
        self.basis_vector(0)
    }

    /// Exceptional class `E_i`, 1-based.
    pub fn e(&self, i: usize) -> DivisorClass {
        self.basis_vector(i)
    }

    /// `L - E_i - E_j`.
    pub fn lij(&self, i: usize, j: usize) -> DivisorClass {
        self.l().sub(&self.e(i)).sub(&self.e(j))
    }

    /// `2L - sum E_i`.
    pub fn conic_q(&self) -> DivisorClass {
        let mut v = self.l().scale(2);
        for i in 1..self.rank {
            v.0[i] = -1;
        }
        v
    }

    /// All classes `x` with `x^2 = square` and `x.K = kdot` and coordinates bounded by 5.
    pub fn enumerate_classes(&self, square: i64, kdot: i64) -> Vec<DivisorClass> {
        let w = self.gram.mul_vec(&self.canonical.0);
        let pivot = w.iter().position(|&x| x.abs() == 1);
        let free: Vec<usize> = (0..self.rank).filter(|&i| Some(i) != pivot).collect();
        let mut out = BTreeSet::new();
        let mut x = vec![0i64; self.rank];
        let total = (2 * BOUND + 1).pow(free.len() as u32);
        for mut code in 0..total {
            for &i in &free {
                x[i] = code % (2 * BOUND + 1) - BOUND;
                code /= 2 * BOUND + 1;
            }
            if let Some(p) = pivot {
                let rest: i64 = free.iter().map(|&i| w[i] * x[i]).sum();
                let v = (kdot - rest) * w[p];
                if v.abs() > BOUND {
                    continue;
                }
                x[p] = v;
            } else {
                let kx: i64 = x.iter().zip(&w).map(|(a, b)| a * b).sum();
                if kx != kdot {
                    continue;
                }
            }
            let c = DivisorClass(x.clone());
            if self.dot(&c, &c) == square {
                out.insert(c);
            }
        }
        out.into_iter().collect()
    }

    /// All `(-1)`-classes, sorted.
    pub fn enumerate_minus_one_curves(&self) -> Vec<DivisorClass> {
        self.enumerate_classes(-1, -1)
    }

    /// All roots `R^2 = -2, R.K = 0`, sorted.
    pub fn enumerate_roots(&self) -> Vec<DivisorClass> {
        self.enumerate_classes(-2, 0)
    }

    /// Conic classes `C^2 = 0, C.K = -2`, sorted.
    pub fn enumerate_conics(&self) -> Vec<DivisorClass> {
        self.enumerate_classes(0, -2)
    }

    /// Human-readable name of a class in a blowup lattice, e.g. `E1`, `L23`, `Q`, `2L-E1-E2`.
    pub fn name(&self, c: &DivisorClass) -> String {
        if let Descriptor::BlowupOfPlane(n) = self.descriptor {
            let v = &c.0;
            if v[0] == 0
                && v[1..].iter().filter(|&&x| x == 1).count() == 1
                && v[1..].iter().all(|&x| x == 0 || x == 1)
            {
                let i = v[1..].iter().position(|&x| x == 1).unwrap() + 1;
                return format!("E{i}");
            }
            if v[0] == 1
                && v[1..].iter().filter(|&&x| x == -1).count() == 2
                && v[1..].iter().all(|&x| x == 0 || x == -1)
            {
                let idx: Vec<usize> = (1..=n).filter(|&i| v[i] == -1).collect();
                return format!("L{}{}", idx[0], idx[1]);
            }
            if n == 5 && *c == self.conic_q() {
                return String::from("Q");
            }
            let mut s = String::new();
            match v[0] {
                0 => {}
                1 => s.push('L'),
                -1 => s.push_str("-L"),
                a => s.push_str(&format!("{a}L")),
            }
            for i in 1..=n {
                let a = v[i];
                if a == 0 {
                    continue;
                }
                let sign = if a < 0 {
                    "-"
                } else if s.is_empty() {
                    ""
                } else {
                    "+"
                };
                let mag = a.abs();
                if mag == 1 {
                    s.push_str(&format!("{sign}E{i}"));
                } else {
                    s.push_str(&format!("{sign}{mag}E{i}"));
                }
            }
            if s.is_empty() {
                s.push('0');
            }
            s
        } else {
            format!("{}a+{}b", c.0[0], c.0[1])
        }
    }

    /// The sixteen lines of a degree-4 lattice in the fixed order
    /// `E1..E5, L12, L13, L14, L15, L23, L24, L25, L34, L35, L45, Q`.
    pub fn standard_lines(&self) -> Result<Vec<DivisorClass>> {
        if self.descriptor != Descriptor::BlowupOfPlane(5) {
            return Err(Error::NotDegreeFour);
        }
        let mut out: Vec<DivisorClass> = (1..=5).map(|i| self.e(i)).collect();
        for i in 1..=5 {
            for j in i + 1..=5 {
                out.push(self.lij(i, j));
            }
        }
        out.push(self.conic_q());
        Ok(out)
    }

    /// Parses a name produced by [`PicardLattice::name`] for lines (`E3`, `L12`, `Q`).
    pub fn parse_line(&self, s: &str) -> Result<DivisorClass> {
        let n = self
            .n_points()
            .ok_or_else(|| Error::UnknownName(s.into()))?;
        let digits: Vec<usize> = s
            .chars()
            .skip(1)
            .filter_map(|c| c.to_digit(10))
            .map(|d| d as usize)
            .collect();
        let ok = digits.iter().all(|&d| (1..=n).contains(&d));
        match (s.chars().next(), digits.len()) {
            (Some('E'), 1) if ok && s.len() == 2 => Ok(self.e(digits[0])),
            (Some('L'), 2) if ok && s.len() == 3 && digits[0] != digits[1] => {
                Ok(self.lij(digits[0], digits[1]))
            }
            (Some('Q'), 0) if n == 5 && s.len() == 1 => Ok(self.conic_q()),
            _ => Err(Error::UnknownName(s.into())),
        }
    }
}

/// Records how classes move under a contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushforward {
    /// Contracted curves in the old basis.
    pub contracted: Vec<DivisorClass>,
    /// New basis vectors expressed in the old basis.
    pub basis: Vec<DivisorClass>,
    old: PicardLattice,
    new_gram_inv: IntMatrix,
}

impl Pushforward {
    /// Projects `x` to the orthogonal complement: `x + sum (x.C) C`.
    pub fn project(&self, x: &DivisorClass) -> DivisorClass {
        let mut y = x.clone();
        for c in &self.contracted {
            y = y.add(&c.scale(self.old.dot(x, c)));
        }
        y
    }

    /// Coordinates of the pushforward of `x` in the new basis.
    pub fn apply(&self, x: &DivisorClass) -> DivisorClass {
        let y = self.project(x);
        let pairings: Vec<i64> = self.basis.iter().map(|b| self.old.dot(&y, b)).collect();
        DivisorClass(self.new_gram_inv.mul_vec(&pairings))
    }

    /// Expresses a new-lattice class back in old coordinates.
    pub fn lift(&self, y: &DivisorClass) -> DivisorClass {
        let mut out = self.old.zero();
        for (b, &a) in self.basis.iter().zip(&y.0) {
            out = out.add(&b.scale(a));
        }
        out
    }

    /// Transports an automorphism preserving the contracted set.
    pub fn transport(&self, m: &IntMatrix) -> IntMatrix {
        let cols: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|b| self.apply(&DivisorClass(m.mul_vec(&b.0))).0)
            .collect();
        IntMatrix::from_columns(&cols)
    }
}

fn first_disjoint_set(
    lat: &PicardLattice,
    cands: &[DivisorClass],
    size: usize,
) -> Option<Vec<DivisorClass>> {
    fn go(
        lat: &PicardLattice,
        c: &[DivisorClass],
        start: usize,
        size: usize,
        acc: &mut Vec<DivisorClass>,
    ) -> bool {
        if acc.len() == size {
            return true;
        }
        for i in start..c.len() {
            if acc.iter().all(|a| lat.dot(a, &c[i]) == 0) {
                acc.push(c[i].clone());
                if go(lat, c, i + 1, size, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    if go(lat, cands, 0, size, &mut acc) {
        Some(acc)
    } else {
        None
    }
}

/// Contracts a set of pairwise disjoint `(-1)`-classes.
///
/// The orthogonal complement is rebased to a standard form: a blowup basis built
/// from the lexicographically least maximal disjoint set of `(-1)`-classes, the
/// quadric basis when the complement is even of rank 2, or `-K/3` in rank 1.
pub fn blowdown(
    lattice: &PicardLattice,
    curves: &[DivisorClass],
) -> Result<(PicardLattice, Pushforward)> {
    for c in curves {
        if c.0.len() != lattice.rank {
            return Err(Error::DimensionMismatch {
                expected: lattice.rank,
                found: c.0.len(),
            });
        }
        if lattice.dot(c, c) != -1 || lattice.dot(c, &lattice.canonical) != -1 {
            return Err(Error::NotMinusOneCurve(lattice.name(c)));
        }
    }
    let mut set: Vec<DivisorClass> = curves.to_vec();
    set.sort();
    set.dedup();
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            let p = lattice.dot(&set[i], &set[j]);
            if p != 0 {
                return Err(Error::IntersectingCurves {
                    a: lattice.name(&set[i]),
                    b: lattice.name(&set[j]),
                    product: p,
                });
            }
        }
    }
    let rank = lattice.rank - set.len();
    if rank == 0 {
        return Err(Error::UnsupportedLattice("contraction to a point".into()));
    }
    let mut knew = lattice.canonical.clone();
    for c in &set {
        knew = knew.sub(c);
    }
    let orth = |x: &DivisorClass| set.iter().all(|c| lattice.dot(x, c) == 0);
    let (basis, new) = if rank == 1 {
        let l = DivisorClass(knew.0.iter().map(|a| -a / 3).collect());
        if l.scale(-3) != knew {
            return Err(Error::UnsupportedLattice(
                "rank-1 complement is not the plane".into(),
            ));
        }
        (vec![l], PicardLattice::blowup(0)?)
    } else {
        let lines: Vec<DivisorClass> = lattice
            .enumerate_minus_one_curves()
            .into_iter()
            .filter(|x| orth(x))
            .collect();
        if let Some(es) = first_disjoint_set(lattice, &lines, rank - 1) {
            let mut three_l = knew.neg();
            for e in &es {
                three_l = three_l.add(e);
            }
            let l = DivisorClass(three_l.0.iter().map(|a| a / 3).collect());
            if l.scale(3) != three_l {
                return Err(Error::UnsupportedLattice(
                    "complement has no blowup basis".into(),
                ));
            }
            let mut b = vec![l];
            b.extend(es);
            (b, PicardLattice::blowup(rank - 1)?)
        } else if rank == 2 {
            let conics: Vec<DivisorClass> = lattice
                .enumerate_conics()
                .into_iter()
                .filter(|x| orth(x))
                .collect();
            let a = conics
                .first()
                .cloned()
                .ok_or_else(|| Error::UnsupportedLattice("no ruling classes".into()))?;
            let mut two_b = knew.neg().sub(&a.scale(2));
            two_b = DivisorClass(two_b.0.iter().map(|x| x / 2).collect());
            (vec![a, two_b], PicardLattice::quadric())
        } else {
            return Err(Error::UnsupportedLattice(
                "complement is not a del Pezzo lattice".into(),
            ));
        }
    };
    for i in 0..rank {
        for j in 0..rank {
            if lattice.dot(&basis[i], &basis[j]) != new.gram.get(i, j) {
                return Err(Error::UnsupportedLattice(
                    "rebased Gram matrix mismatch".into(),
                ));
            }
        }
    }
    let new_gram_inv = new.gram.clone();
    let pf = Pushforward {
        contracted: set,
        basis,
        old: lattice.clone(),
        new_gram_inv,
    };
    if pf.apply(&lattice.canonical) != new.canonical {
        return Err(Error::UnsupportedLattice(
            "canonical class not preserved".into(),
        ));
    }
    Ok((new, pf))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp4() -> PicardLattice {
        PicardLattice::del_pezzo(4).unwrap()
    }

    #[test]
    fn pairing_table() {
        let x = dp4();
        assert_eq!(x.intersect(&x.e(1), &x.lij(1, 2)).unwrap(), 1);
        assert_eq!(x.intersect(&x.e(1), &x.e(1)).unwrap(), -1);
        assert_eq!(x.intersect(&x.lij(1, 2), &x.conic_q()).unwrap(), 0);
        assert_eq!(x.intersect(&x.e(3), &x.conic_q()).unwrap(), 1);
        assert!(matches!(
            x.intersect(&x.e(1), &DivisorClass(vec![1, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonical_degrees() {
        for d in 4..=9 {
            assert_eq!(PicardLattice::del_pezzo(d).unwrap().degree(), d);
        }
        assert_eq!(PicardLattice::quadric().degree(), 8);
    }

    #[test]
    fn curve_counts() {
        let counts: Vec<usize> = (4..=7)
            .map(|d| {
                PicardLattice::del_pezzo(d)
                    .unwrap()
                    .enumerate_minus_one_curves()
                    .len()
            })
            .collect();
        assert_eq!(counts, vec![16, 10, 6, 3]);
        assert!(PicardLattice::quadric()
            .enumerate_minus_one_curves()
            .is_empty());
    }

    #[test]
    fn degree_four_lines_are_the_named_families() {
        let x = dp4();
        let mut named = x.standard_lines().unwrap();
        named.sort();
        assert_eq!(named, x.enumerate_minus_one_curves());
    }

    #[test]
    fn incidence_is_five_regular() {
        let x = dp4();
        let lines = x.enumerate_minus_one_curves();
        for a in &lines {
            let deg = lines.iter().filter(|b| x.dot(a, b) == 1).count();
            assert_eq!(deg, 5);
            assert!(lines
                .iter()
                .all(|b| a == b || x.dot(a, b) == 0 || x.dot(a, b) == 1));
        }
    }

    #[test]
    fn root_counts() {
        assert_eq!(dp4().enumerate_roots().len(), 40);
        assert_eq!(
            PicardLattice::del_pezzo(5).unwrap().enumerate_roots().len(),
            20
        );
        assert_eq!(
            PicardLattice::quadric().enumerate_roots(),
            vec![DivisorClass(vec![-1, 1]), DivisorClass(vec![1, -1])]
        );
    }

    #[test]
    fn blowdown_examples() {
        let x = dp4();
        let (y, _) = blowdown(&x, &[x.e(5)]).unwrap();
        assert_eq!(y.degree(), 5);
        let all: Vec<_> = (1..=5).map(|i| x.e(i)).collect();
        let (p, pf) = blowdown(&x, &all).unwrap();
        assert_eq!((p.degree(), p.rank), (9, 1));
        assert_eq!(pf.apply(&x.l()), DivisorClass(vec![1]));
        assert!(matches!(
            blowdown(&x, &[x.e(1), x.lij(1, 2)]),
            Err(Error::IntersectingCurves { .. })
        ));
    }

    #[test]
    fn blowdown_to_quadric() {
        let x = dp4();
        let set = [x.e(1), x.lij(2, 3), x.lij(2, 4), x.lij(2, 5)];
        let (y, _) = blowdown(&x, &set).unwrap();
        assert_eq!(y.descriptor, Descriptor::Quadric);
        let (z, _) = blowdown(&x, &[x.e(1), x.e(2), x.e(3), x.e(4)]).unwrap();
        assert_eq!(z.descriptor, Descriptor::BlowupOfPlane(1));
    }

    #[test]
    fn names_round_trip() {
        let x = dp4();
        for c in x.standard_lines().unwrap() {
            assert_eq!(x.parse_line(&x.name(&c)).unwrap(), c);
        }
        assert_eq!(x.name(&x.l().sub(&x.e(1))), "L-E1");
    }
}
