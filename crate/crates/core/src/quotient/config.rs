use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{fmt_q, hj_resolve, ResolutionData, SingularityType};
use crate::error::{Error, Result};
use crate::Q;

/// Curves on a smooth surface with their intersection matrix and the ambient `K^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveConfiguration {
    pub k2: Q,
    pub labels: Vec<String>,
    /// Symmetric; the diagonal holds self-intersections.
    pub pairings: Vec<Vec<Q>>,
}

impl CurveConfiguration {
    pub fn new(k2: Q, labels: Vec<String>, pairings: Vec<Vec<Q>>) -> Result<Self> {
        let n = labels.len();
        if pairings.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: pairings.len(),
            });
        }
        for (i, row) in pairings.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for j in 0..i {
                if row[j] != pairings[j][i] {
                    return Err(Error::Mismatch {
                        what: format!("pairing {}.{}", labels[i], labels[j]),
                        expected: fmt_q(pairings[j][i]),
                        computed: fmt_q(row[j]),
                    });
                }
            }
        }
        Ok(CurveConfiguration {
            k2,
            labels,
            pairings,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    pub fn self_int(&self, label: &str) -> Result<Q> {
        let i = self.index(label)?;
        Ok(self.pairings[i][i])
    }

    pub fn pair(&self, a: &str, b: &str) -> Result<Q> {
        Ok(self.pairings[self.index(a)?][self.index(b)?])
    }

    /// Contracts a `(-1)`-curve and drops it from the list.
    pub fn contract(&self, label: &str) -> Result<Self> {
        let e = self.index(label)?;
        let s = self.pairings[e][e];
        if s != -Q::one() {
            return Err(Error::NotContractible {
                label: label.into(),
                self_int: fmt_q(s),
            });
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != e).collect();
        let pairings = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| self.pairings[i][j] + self.pairings[i][e] * self.pairings[j][e])
                    .collect()
            })
            .collect();
        Ok(CurveConfiguration {
            k2: self.k2 + Q::one(),
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            pairings,
        })
    }

    pub fn contract_sequence<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        let mut c = self.clone();
        for l in labels {
            c = c.contract(l.as_ref())?;
        }
        Ok(c)
    }

    /// Reads the plain-text format: `k2 <q>`, `curve <label> <self>`, `meet <a> <b> <q>`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut k2 = None;
        let mut labels: Vec<String> = Vec::new();
        let mut selfs: Vec<Q> = Vec::new();
        let mut meets: Vec<(String, String, Q)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let w: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("line {}: {raw}", n + 1));
            match (w[0], w.len()) {
                ("k2", 2) => k2 = Some(parse_q(w[1]).ok_or_else(bad)?),
                ("curve", 3) => {
                    labels.push(w[1].to_string());
                    selfs.push(parse_q(w[2]).ok_or_else(bad)?);
                }
                ("meet", 4) => meets.push((
                    w[1].to_string(),
                    w[2].to_string(),
                    parse_q(w[3]).ok_or_else(bad)?,
                )),
                _ => return Err(bad()),
            }
        }
        let k2 = k2.ok_or_else(|| Error::Parse("missing k2".into()))?;
        let n = labels.len();
        let mut m = vec![vec![Q::zero(); n]; n];
        for (i, s) in selfs.into_iter().enumerate() {
            m[i][i] = s;
        }
        let find = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownLabel(l.into()))
        };
        for (a, b, v) in meets {
            let (i, j) = (find(&a)?, find(&b)?);
            if i == j {
                return Err(Error::Parse(format!("meet {a} {a}")));
            }
            m[i][j] = v;
            m[j][i] = v;
        }
        CurveConfiguration::new(k2, labels, m)
    }
}

fn parse_q(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((a, b)) => {
            let d: i64 = b.parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Q::new(a.parse().ok()?, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// End of the exceptional chain met by a curve branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Last,
}

/// `count` branches of a curve through `point` along the eigendirection of `side`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Branch {
    pub point: usize,
    pub side: Side,
    pub count: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPoint {
    pub label: String,
    pub sing: SingularityType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCurve {
    pub label: String,
    pub branches: Vec<Branch>,
}

impl QuotientCurve {
    pub fn new(label: &str, branches: &[(usize, Side, i64)]) -> Self {
        QuotientCurve {
            label: label.into(),
            branches: branches
                .iter()
                .map(|&(point, side, count)| Branch { point, side, count })
                .collect(),
        }
    }
}

fn chain_index(r: &ResolutionData, side: Side) -> usize {
    match side {
        Side::First => 0,
        Side::Last => r.chain.len() - 1,
    }
}

/// Minimal resolution of a quotient surface carrying the given curves.
///
/// `pairings` are intersection numbers on the singular surface. The result
/// lists the strict transforms first, then the exceptional curves of each
/// point labelled `<point>.<i>`.
pub fn resolved_configuration(
    k2: Q,
    points: &[QuotientPoint],
    curves: &[QuotientCurve],
    pairings: &[Vec<Q>],
) -> Result<CurveConfiguration> {
    let nc = curves.len();
    if pairings.len() != nc || pairings.iter().any(|r| r.len() != nc) {
        return Err(Error::DimensionMismatch {
            expected: nc,
            found: pairings.len(),
        });
    }
    let res: Vec<ResolutionData> = points.iter().map(|p| hj_resolve(p.sing)).collect();
    // per curve and point: coefficients of the exceptional curves in the pullback
    let mut coef: Vec<Vec<Vec<Q>>> = Vec::with_capacity(nc);
    for c in curves {
        let mut per: Vec<Vec<Q>> = res.iter().map(|r| vec![Q::zero(); r.chain.len()]).collect();
        for b in &c.branches {
            let r = res
                .get(b.point)
                .ok_or_else(|| Error::UnknownLabel(format!("point {}", b.point)))?;
            let x = r.pullback_coefficients(chain_index(r, b.side));
            for (acc, v) in per[b.point].iter_mut().zip(x) {
                *acc += v * Q::from_integer(b.count);
            }
        }
        coef.push(per);
    }
    let mut labels: Vec<String> = curves.iter().map(|c| c.label.clone()).collect();
    for (p, r) in points.iter().zip(&res) {
        for i in 0..r.chain.len() {
            labels.push(format!("{}.{}", p.label, i + 1));
        }
    }
    let n = labels.len();
    let mut m = vec![vec![Q::zero(); n]; n];
    for a in 0..nc {
        for b in 0..nc {
            let mut v = pairings[a][b];
            for (k, r) in res.iter().enumerate() {
                v += r.pair(&coef[a][k], &coef[b][k]);
            }
            m[a][b] = v;
        }
    }
    let mut offset = nc;
    for (k, r) in res.iter().enumerate() {
        let block = r.intersection_matrix();
        for i in 0..r.chain.len() {
            for j in 0..r.chain.len() {
                m[offset + i][offset + j] = block[i][j];
            }
        }
        for (a, c) in curves.iter().enumerate() {
            for b in c.branches.iter().filter(|b| b.point == k) {
                let i = offset + chain_index(r, b.side);
                m[a][i] += Q::from_integer(b.count);
                m[i][a] += Q::from_integer(b.count);
            }
        }
        offset += r.chain.len();
    }
    let k2 = res.iter().fold(k2, |acc, r| acc + r.delta_k2);
    CurveConfiguration::new(k2, labels, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> Q {
        Q::from_integer(a)
    }

    #[test]
    fn contraction_rule() {
        let cfg = CurveConfiguration::new(
            q(7),
            vec!["E".into(), "C".into(), "D".into()],
            vec![
                vec![q(-1), q(1), q(2)],
                vec![q(1), q(-2), q(0)],
                vec![q(2), q(0), q(3)],
            ],
        )
        .unwrap();
        let out = cfg.contract("E").unwrap();
        assert_eq!(out.k2, q(8));
        assert_eq!(out.labels, vec!["C".to_string(), "D".to_string()]);
        assert_eq!(out.pairings, vec![vec![q(-1), q(2)], vec![q(2), q(7)]]);
        assert_eq!(cfg.contract_sequence::<&str>(&[]).unwrap(), cfg);
        match cfg.contract("C") {
            Err(Error::NotContractible { self_int, .. }) => assert_eq!(self_int, "-2"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(cfg.contract("Z"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn parse_round() {
        let cfg = CurveConfiguration::parse("k2 1/2\ncurve a -1 # x\ncurve b -1/2\nmeet a b 1/3\n")
            .unwrap();
        assert_eq!(cfg.k2, Q::new(1, 2));
        assert_eq!(cfg.pair("b", "a").unwrap(), Q::new(1, 3));
        assert!(CurveConfiguration::parse("curve a -1\n").is_err());
        assert!(CurveConfiguration::parse("k2 1\nmeet a b 1\n").is_err());
    }

    #[test]
    fn single_a1_point() {
        // two curves of square 1/2 through one A1 point from opposite directions
        let pts = [QuotientPoint {
            label: "P".into(),
            sing: SingularityType::a(1),
        }];
        let curves = [
            QuotientCurve::new("R", &[(0, Side::First, 1)]),
            QuotientCurve::new("S", &[(0, Side::Last, 1)]),
        ];
        let h = Q::new(1, 2);
        let cfg = resolved_configuration(q(2), &pts, &curves, &[vec![h, h], vec![h, h]]).unwrap();
        assert_eq!(cfg.labels, vec!["R", "S", "P.1"]);
        assert_eq!(cfg.pair("R", "R").unwrap(), q(0));
        assert_eq!(cfg.pair("R", "S").unwrap(), q(0));
        assert_eq!(cfg.pair("R", "P.1").unwrap(), q(1));
        assert_eq!(cfg.pair("P.1", "P.1").unwrap(), q(-2));
        assert_eq!(cfg.k2, q(2));
    }
}
