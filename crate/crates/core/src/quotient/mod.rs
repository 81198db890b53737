//! Cyclic quotient singularities, the Hurwitz formula and curve bookkeeping
//! on resolved quotient surfaces.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, PicardLattice};
use crate::linalg;
use crate::Q;

mod config;
mod polyhedral;
mod replay;

pub use config::{
    resolved_configuration, Branch, CurveConfiguration, QuotientCurve, QuotientPoint, Side,
};
pub use polyhedral::{p1xp1_quotient_singularities, Pairing, Polyhedral, ProductQuotient};
pub use replay::{dp1_2a4_configuration, replay, LemmaReport, ReplayStep, CATALOGUE};

/// The singularity `1/m(1,q)`, quotient of the plane by `diag(z, z^q)` with `z` a primitive `m`-th root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularityType {
    pub m: i64,
    pub q: i64,
}

impl SingularityType {
    /// Builds `1/m(1,q)`, dividing out pseudo-reflections when `gcd(m, q) > 1`.
    /// Returns `None` when the quotient is smooth.
    pub fn normalized(m: i64, q: i64) -> Option<SingularityType> {
        let (mut m, mut q) = (m, q.rem_euclid(m.max(1)));
        loop {
            if m < 2 || q == 0 {
                return None;
            }
            let d = m.gcd(&q);
            if d == 1 {
                return Some(SingularityType { m, q });
            }
            m /= d;
            q = (q / d).rem_euclid(m.max(1));
        }
    }

    /// Strict constructor; rejects data that needs normalization.
    pub fn new(m: i64, q: i64) -> Result<SingularityType> {
        if m < 2 || q < 1 || q >= m || m.gcd(&q) != 1 {
            return Err(Error::Unsupported(format!(
                "1/{m}(1,{q}) is not normalized"
            )));
        }
        Ok(SingularityType { m, q })
    }

    /// `A_n = 1/(n+1)(1,n)`.
    pub fn a(n: i64) -> SingularityType {
        SingularityType { m: n + 1, q: n }
    }

    pub fn is_du_val(&self) -> bool {
        self.q == self.m - 1
    }

    /// The same point seen with the two coordinates swapped: `1/m(1,q')` with `q q' = 1 mod m`.
    pub fn dual(&self) -> SingularityType {
        let q = (1..self.m)
            .find(|&x| (x * self.q) % self.m == 1)
            .unwrap_or(1);
        SingularityType { m: self.m, q }
    }

    /// Representative of the isomorphism class.
    pub fn canonical(&self) -> SingularityType {
        let d = self.dual();
        if d.q < self.q {
            d
        } else {
            *self
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_du_val() {
            write!(f, "A{}", self.m - 1)
        } else {
            write!(f, "1/{}(1,{})", self.m, self.q)
        }
    }
}

/// The nine singularities with `m <= 5`, in table order.
pub const TABLE1: [(i64, i64); 9] = [
    (2, 1),
    (3, 1),
    (3, 2),
    (4, 1),
    (4, 3),
    (5, 1),
    (5, 2),
    (5, 3),
    (5, 4),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionData {
    pub sing: SingularityType,
    /// Negated self-intersections of the exceptional chain.
    pub chain: Vec<i64>,
    pub delta_k2: Q,
    /// Change of self-intersection of a curve through the point along the first eigendirection.
    pub delta_c2: Q,
    /// Same for the second eigendirection, which meets the last chain curve.
    pub delta_d2: Q,
}

impl ResolutionData {
    /// Intersection matrix of the exceptional chain.
    pub fn intersection_matrix(&self) -> Vec<Vec<Q>> {
        let n = self.chain.len();
        let mut m = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            m[i][i] = Q::from_integer(-self.chain[i]);
            if i + 1 < n {
                m[i][i + 1] = Q::one();
                m[i + 1][i] = Q::one();
            }
        }
        m
    }

    /// Coefficients of the exceptional curves in the pullback of a curve
    /// meeting chain curve `index` transversally.
    pub fn pullback_coefficients(&self, index: usize) -> Vec<Q> {
        let m = self.intersection_matrix();
        let e: Vec<Q> = (0..self.chain.len())
            .map(|i| if i == index { -Q::one() } else { Q::zero() })
            .collect();
        linalg::solve(&m, &e).expect("chain matrix is negative definite")
    }

    /// `x^T M y` for coefficient vectors in this chain.
    pub fn pair(&self, x: &[Q], y: &[Q]) -> Q {
        let m = self.intersection_matrix();
        let mut s = Q::zero();
        for i in 0..x.len() {
            for j in 0..y.len() {
                s += x[i] * m[i][j] * y[j];
            }
        }
        s
    }
}

fn hj_chain(m: i64, q: i64) -> Vec<i64> {
    let (mut a, mut b) = (m, q);
    let mut out = Vec::new();
    while b > 0 {
        let c = (a + b - 1) / b;
        out.push(c);
        let r = c * b - a;
        a = b;
        b = r;
    }
    out
}

/// Minimal resolution data of `1/m(1,q)`.
pub fn hj_resolve(s: SingularityType) -> ResolutionData {
    let chain = hj_chain(s.m, s.q);
    let mut data = ResolutionData {
        sing: s,
        chain,
        delta_k2: Q::zero(),
        delta_c2: Q::zero(),
        delta_d2: Q::zero(),
    };
    let m = data.intersection_matrix();
    let rhs: Vec<Q> = data.chain.iter().map(|&a| Q::from_integer(a - 2)).collect();
    let d = linalg::solve(&m, &rhs).expect("chain matrix is negative definite");
    data.delta_k2 = d.iter().zip(&rhs).map(|(x, y)| x * y).sum();
    let n = data.chain.len();
    let first = data.pullback_coefficients(0);
    let last = data.pullback_coefficients(n - 1);
    data.delta_c2 = data.pair(&first, &first);
    data.delta_d2 = data.pair(&last, &last);
    data
}

/// `K^2` of the minimal resolution.
pub fn resolve_all(k2: Q, sings: &[SingularityType]) -> Q {
    sings
        .iter()
        .fold(k2, |acc, s| acc + hj_resolve(*s).delta_k2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchCurve {
    pub class: DivisorClass,
    pub ram_index: i64,
    pub multiplicity: i64,
}

/// Ramification of a quotient map by a group of order `group_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationDatum {
    pub curves: Vec<BranchCurve>,
    pub isolated: Vec<SingularityType>,
    pub group_order: i64,
}

/// `K^2` of the quotient: `(K - sum (r-1) m R)^2 / |N|`.
pub fn hurwitz_k2(lattice: &PicardLattice, datum: &RamificationDatum) -> Result<Q> {
    if datum.group_order < 1 {
        return Err(Error::Unsupported(format!(
            "group order {}",
            datum.group_order
        )));
    }
    let mut pull = lattice.canonical.clone();
    for c in &datum.curves {
        if c.class.0.len() != lattice.rank {
            return Err(Error::DimensionMismatch {
                expected: lattice.rank,
                found: c.class.0.len(),
            });
        }
        if c.ram_index < 2 || datum.group_order % c.ram_index != 0 {
            return Err(Error::Unsupported(format!(
                "ramification index {} for a group of order {}",
                c.ram_index, datum.group_order
            )));
        }
        pull = pull.sub(&c.class.scale((c.ram_index - 1) * c.multiplicity));
    }
    Ok(Q::new(lattice.dot(&pull, &pull), datum.group_order))
}

/// Formats a rational as `a` or `a/b`.
pub fn fmt_q(x: Q) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Classes `aL - b(E1+E2+E3) - cE4 - dE5` of invariant rational curves with
/// square zero, from `a^2 - 3b^2 - c^2 - d^2 = 0`, `3a - 3b - c - d = rhs`, `1 <= a <= 10`.
pub fn dp4c3_solutions(rhs: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for a in 1..=10i64 {
        for b in 0..=a {
            for c in 0..=a {
                for d in 0..=a {
                    if a * a - 3 * b * b - c * c - d * d == 0 && 3 * a - 3 * b - c - d == rhs {
                        out.push((a, b, c, d));
                    }
                }
            }
        }
    }
    out
}

/// The invariant square-zero rational classes for `<(123)>` on the degree 4 surface.
pub fn dp4c3_invariant_zero_curves() -> Vec<DivisorClass> {
    dp4c3_solutions(2)
        .into_iter()
        .map(|(a, b, c, d)| DivisorClass(vec![a, -b, -b, -b, -c, -d]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Q {
        Q::new(a, b)
    }

    #[test]
    fn table_rows() {
        let expect: [(&[i64], Q, Q, Q); 9] = [
            (&[2], q(0, 1), q(-1, 2), q(-1, 2)),
            (&[3], q(-1, 3), q(-1, 3), q(-1, 3)),
            (&[2, 2], q(0, 1), q(-2, 3), q(-2, 3)),
            (&[4], q(-1, 1), q(-1, 4), q(-1, 4)),
            (&[2, 2, 2], q(0, 1), q(-3, 4), q(-3, 4)),
            (&[5], q(-9, 5), q(-1, 5), q(-1, 5)),
            (&[3, 2], q(-2, 5), q(-2, 5), q(-3, 5)),
            (&[2, 3], q(-2, 5), q(-3, 5), q(-2, 5)),
            (&[2, 2, 2, 2], q(0, 1), q(-4, 5), q(-4, 5)),
        ];
        for ((m, qq), (chain, k, c, d)) in TABLE1.iter().zip(expect.iter()) {
            let r = hj_resolve(SingularityType::new(*m, *qq).unwrap());
            assert_eq!(r.chain, chain.to_vec(), "{m} {qq}");
            assert_eq!(
                (r.delta_k2, r.delta_c2, r.delta_d2),
                (*k, *c, *d),
                "{m} {qq}"
            );
        }
    }

    #[test]
    fn du_val_and_duality() {
        for n in 1..=8 {
            assert_eq!(hj_resolve(SingularityType::a(n)).delta_k2, Q::zero());
        }
        for m in 2..=12 {
            for qq in 1..m {
                let Ok(s) = SingularityType::new(m, qq) else {
                    continue;
                };
                let a = hj_resolve(s);
                let b = hj_resolve(s.dual());
                let mut rev = a.chain.clone();
                rev.reverse();
                assert_eq!(rev, b.chain);
                assert_eq!((a.delta_c2, a.delta_d2), (b.delta_d2, b.delta_c2));
                assert_eq!(a.delta_k2, b.delta_k2);
            }
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(
            SingularityType::normalized(4, 2),
            Some(SingularityType { m: 2, q: 1 })
        );
        assert_eq!(
            SingularityType::normalized(6, 3),
            Some(SingularityType { m: 2, q: 1 })
        );
        assert_eq!(SingularityType::normalized(3, 3), None);
        assert_eq!(
            SingularityType::normalized(8, 4),
            Some(SingularityType { m: 2, q: 1 })
        );
        assert_eq!(
            SingularityType::normalized(5, 7),
            Some(SingularityType { m: 5, q: 2 })
        );
        assert!(SingularityType::new(4, 2).is_err());
        assert_eq!(
            SingularityType { m: 5, q: 3 }.canonical(),
            SingularityType { m: 5, q: 2 }
        );
        assert_eq!(format!("{}", SingularityType::a(4)), "A4");
        assert_eq!(format!("{}", SingularityType { m: 3, q: 1 }), "1/3(1,1)");
    }

    #[test]
    fn hurwitz_examples() {
        let x4 = PicardLattice::del_pezzo(4).unwrap();
        let d = RamificationDatum {
            curves: vec![BranchCurve {
                class: x4.l().sub(&x4.e(5)),
                ram_index: 2,
                multiplicity: 1,
            }],
            isolated: vec![SingularityType::a(1); 2],
            group_order: 2,
        };
        assert_eq!(hurwitz_k2(&x4, &d).unwrap(), q(4, 1));
        let x5 = PicardLattice::del_pezzo(5).unwrap();
        let d = RamificationDatum {
            curves: vec![BranchCurve {
                class: x5.canonical.neg(),
                ram_index: 2,
                multiplicity: 9,
            }],
            isolated: vec![],
            group_order: 60,
        };
        assert_eq!(hurwitz_k2(&x5, &d).unwrap(), q(25, 3));
        let quad = PicardLattice::quadric();
        let d = RamificationDatum {
            curves: vec![],
            isolated: vec![],
            group_order: 60,
        };
        assert_eq!(hurwitz_k2(&quad, &d).unwrap(), q(2, 15));
        let bad = RamificationDatum {
            curves: vec![BranchCurve {
                class: quad.canonical.clone(),
                ram_index: 7,
                multiplicity: 1,
            }],
            isolated: vec![],
            group_order: 60,
        };
        assert!(hurwitz_k2(&quad, &bad).is_err());
    }

    #[test]
    fn resolution_sums() {
        let s = |m, qq| SingularityType { m, q: qq };
        let a1 = SingularityType::a(1);
        let diag = [
            a1,
            a1,
            SingularityType::a(2),
            s(3, 1),
            SingularityType::a(4),
            s(5, 1),
        ];
        assert_eq!(resolve_all(q(2, 15), &diag), q(-2, 1));
        let tw = [a1, a1, SingularityType::a(2), s(3, 1), s(5, 2), s(5, 2)];
        assert_eq!(resolve_all(q(2, 15), &tw), q(-1, 1));
        let c3 = [s(3, 1), s(3, 1), s(3, 1), s(3, 1), SingularityType::a(2)];
        assert_eq!(resolve_all(q(4, 3), &c3), Q::zero());
    }

    #[test]
    fn dp4c3_classes() {
        let x = PicardLattice::del_pezzo(4).unwrap();
        let got = dp4c3_invariant_zero_curves();
        assert_eq!(got.len(), 4);
        let mut names: Vec<String> = got.iter().map(|c| x.name(c)).collect();
        names.sort();
        let want = ["2L-E1-E2-E3-E4", "2L-E1-E2-E3-E5", "L-E4", "L-E5"];
        for c in &got {
            assert_eq!(x.dot(c, c), 0);
            assert_eq!(x.dot(c, &x.canonical), -2);
        }
        assert_eq!(names, want);
        assert!(dp4c3_solutions(0).iter().all(|&(a, ..)| a >= 1));
    }
}
