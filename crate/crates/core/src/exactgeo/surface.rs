use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use super::field::{FieldElement, MultiQuadraticField};
use crate::error::{Error, Result};
use crate::Q;

fn big(q: Q) -> BigRational {
    BigRational::new((*q.numer()).into(), (*q.denom()).into())
}

/// Rank of a matrix over a multiquadratic field.
pub fn rank(rows: &[Vec<FieldElement>]) -> usize {
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..ncols {
                let t = &f * &m[r][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Point of `P^4`.
#[derive(Clone, Debug)]
pub struct ProjPoint(pub Vec<FieldElement>);

impl ProjPoint {
    /// Scales so that the first nonzero coordinate is 1.
    pub fn normalized(&self) -> Result<ProjPoint> {
        let lead = self
            .0
            .iter()
            .find(|x| !x.is_zero())
            .ok_or(Error::DivisionByZero)?;
        let inv = lead.inv()?;
        Ok(ProjPoint(self.0.iter().map(|x| x * &inv).collect()))
    }

    pub fn same_as(&self, other: &ProjPoint) -> bool {
        match (self.normalized(), other.normalized()) {
            (Ok(a), Ok(b)) => a.0 == b.0,
            _ => false,
        }
    }

    pub fn conjugate(&self, mask: usize) -> ProjPoint {
        ProjPoint(self.0.iter().map(|x| x.conjugate(mask)).collect())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Intersection of two diagonal quadrics `sum a_i x_i^2 = sum b_i x_i^2 = 0` in `P^4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticSurface {
    pub a: [Q; 5],
    pub b: [Q; 5],
}

impl QuarticSurface {
    pub fn new(a: [Q; 5], b: [Q; 5]) -> Result<Self> {
        for i in 0..5 {
            for j in 0..i {
                if a[i] * b[j] == a[j] * b[i] {
                    return Err(Error::Unsupported(format!(
                        "singular pencil: columns {} and {} are proportional",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(QuarticSurface { a, b })
    }

    fn forms(&self) -> [&[Q; 5]; 2] {
        [&self.a, &self.b]
    }

    /// Values `sum c_i u_i v_i` of both forms.
    pub fn polar(&self, u: &ProjPoint, v: &ProjPoint) -> [FieldElement; 2] {
        let field = u.0[0].field().clone();
        self.forms().map(|c| {
            (0..5).fold(FieldElement::zero(&field), |acc, i| {
                &acc + &(&u.0[i] * &v.0[i]).scale(&big(c[i]))
            })
        })
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.polar(p, p).iter().all(FieldElement::is_zero)
    }
}

/// Line spanned by two points.
#[derive(Clone, Debug)]
pub struct LineOnSurface {
    pub p: ProjPoint,
    pub q: ProjPoint,
}

impl LineOnSurface {
    /// Nonzero coefficient of `F(x p + y q)`, if any, as `(form, monomial, value)`.
    pub fn defect(&self, s: &QuarticSurface) -> Option<(usize, &'static str, FieldElement)> {
        let pp = s.polar(&self.p, &self.p);
        let pq = s.polar(&self.p, &self.q);
        let qq = s.polar(&self.q, &self.q);
        for f in 0..2 {
            for (mono, v) in [("x^2", &pp[f]), ("2xy", &pq[f]), ("y^2", &qq[f])] {
                if !v.is_zero() {
                    return Some((f, mono, v.clone()));
                }
            }
        }
        None
    }

    fn rows(&self) -> [Vec<FieldElement>; 2] {
        [self.p.0.clone(), self.q.0.clone()]
    }

    pub fn same_as(&self, other: &LineOnSurface) -> bool {
        let [a, b] = self.rows();
        let [c, d] = other.rows();
        rank(&[a, b, c, d]) == 2
    }

    pub fn meets(&self, other: &LineOnSurface) -> bool {
        let [a, b] = self.rows();
        let [c, d] = other.rows();
        rank(&[a, b, c, d]) <= 3
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        let [a, b] = self.rows();
        rank(&[a, b, x.0.clone()]) == 2
    }

    pub fn map(&self, m: &PointMap) -> LineOnSurface {
        LineOnSurface {
            p: m.apply(&self.p),
            q: m.apply(&self.q),
        }
    }

    /// Applies coordinate signs to both spanning points.
    pub fn with_signs(&self, signs: [i64; 5]) -> LineOnSurface {
        let f = |x: &ProjPoint| {
            ProjPoint(
                x.0.iter()
                    .zip(signs)
                    .map(|(c, s)| if s < 0 { -c } else { c.clone() })
                    .collect(),
            )
        };
        LineOnSurface {
            p: f(&self.p),
            q: f(&self.q),
        }
    }
}

/// `y_i = signs[i] * x_{perm[i]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: [usize; 5],
    pub signs: [i64; 5],
}

impl SignedPermutation {
    pub fn identity() -> Self {
        SignedPermutation {
            perm: [0, 1, 2, 3, 4],
            signs: [1; 5],
        }
    }

    /// Sign change of the listed coordinates (1-based).
    pub fn flip(coords: &[usize]) -> Self {
        let mut s = Self::identity();
        for &c in coords {
            s.signs[c - 1] = -1;
        }
        s
    }

    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        // (self . other)(x)_i = s_i * other(x)_{p(i)} = s_i t_{p(i)} x_{q(p(i))}
        let mut out = Self::identity();
        for i in 0..5 {
            out.perm[i] = other.perm[self.perm[i]];
            out.signs[i] = self.signs[i] * other.signs[self.perm[i]];
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm == [0, 1, 2, 3, 4]
    }

    pub fn is_identity_projectively(&self) -> bool {
        self.is_diagonal() && (self.signs == [1; 5] || self.signs == [-1; 5])
    }

    pub fn apply(&self, x: &ProjPoint) -> ProjPoint {
        ProjPoint(
            (0..5)
                .map(|i| {
                    let c = &x.0[self.perm[i]];
                    if self.signs[i] < 0 {
                        -c
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        )
    }

    /// Whether the pencil of quadrics is mapped to itself.
    pub fn preserves(&self, s: &QuarticSurface) -> bool {
        let k = MultiQuadraticField::new(&[]).expect("Q is a field");
        let row = |c: &[Q; 5]| -> Vec<FieldElement> {
            (0..5)
                .map(|j| FieldElement::rational(&k, big(c[j])))
                .collect()
        };
        // x_j^2 picks up the coefficient of y_i with perm[i] = j
        let pulled = |c: &[Q; 5]| -> [Q; 5] {
            let mut out = [Q::from_integer(0); 5];
            for i in 0..5 {
                out[self.perm[i]] = c[i];
            }
            out
        };
        rank(&[row(&s.a), row(&s.b), row(&pulled(&s.a)), row(&pulled(&s.b))]) == 2
    }
}

/// Coordinate map or Galois conjugation acting on points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointMap {
    Coordinate(SignedPermutation),
    /// Negates the square roots of the generators in the mask.
    Galois(usize),
}

impl PointMap {
    pub fn apply(&self, x: &ProjPoint) -> ProjPoint {
        match self {
            PointMap::Coordinate(g) => g.apply(x),
            PointMap::Galois(mask) => x.conjugate(*mask),
        }
    }
}

/// The distinct lines among all sign changes of `base` that lie on `s`, in sign-pattern order.
pub fn sign_pattern_lines(
    s: &QuarticSurface,
    base: &LineOnSurface,
) -> Vec<([i64; 5], LineOnSurface)> {
    let mut out: Vec<([i64; 5], LineOnSurface)> = Vec::new();
    for m in 0..16u32 {
        let mut signs = [1i64; 5];
        for (t, sg) in signs.iter_mut().enumerate().skip(1) {
            if m >> (4 - t) & 1 == 1 {
                *sg = -1;
            }
        }
        let l = base.with_signs(signs);
        if l.defect(s).is_none() && !out.iter().any(|(_, x)| x.same_as(&l)) {
            out.push((signs, l));
        }
    }
    out
}

/// Checks that 16 lines lie on the surface, are distinct and meet 5 others each; returns the incidence matrix.
pub fn verify_lines(s: &QuarticSurface, lines: &[LineOnSurface]) -> Result<Vec<Vec<u8>>> {
    if lines.len() != 16 {
        return Err(Error::DimensionMismatch {
            expected: 16,
            found: lines.len(),
        });
    }
    for (i, l) in lines.iter().enumerate() {
        if let Some((f, mono, v)) = l.defect(s) {
            return Err(Error::NotOnSurface(format!(
                "line {i}: coefficient of {mono} in form {} is {v}",
                f + 1
            )));
        }
    }
    let mut inc = vec![vec![0u8; 16]; 16];
    for i in 0..16 {
        for j in 0..i {
            if lines[i].same_as(&lines[j]) {
                return Err(Error::Mismatch {
                    what: format!("lines {j} and {i}"),
                    expected: "distinct".into(),
                    computed: "equal".into(),
                });
            }
            let m = u8::from(lines[i].meets(&lines[j]));
            inc[i][j] = m;
            inc[j][i] = m;
        }
    }
    for (i, row) in inc.iter().enumerate() {
        let d: usize = row.iter().map(|&x| x as usize).sum();
        if d != 5 {
            return Err(Error::Mismatch {
                what: format!("degree of line {i}"),
                expected: "5".into(),
                computed: format!("{d}"),
            });
        }
    }
    Ok(inc)
}

/// Where `m` sends each line, as indices into `lines`.
pub fn line_permutation(
    s: &QuarticSurface,
    lines: &[LineOnSurface],
    m: &PointMap,
) -> Result<Vec<usize>> {
    if let PointMap::Coordinate(g) = m {
        if !g.preserves(s) {
            return Err(Error::Unsupported(format!(
                "{g:?} does not preserve the surface"
            )));
        }
    }
    let mut out = Vec::with_capacity(lines.len());
    for (i, l) in lines.iter().enumerate() {
        let img = l.map(m);
        let j = lines.iter().position(|x| x.same_as(&img)).ok_or_else(|| {
            Error::NotOnSurface(format!("image of line {i} is not among the lines"))
        })?;
        out.push(j);
    }
    Ok(out)
}

/// Fixed points on `s` of a diagonal sign change.
///
/// Each eigenspace meets the surface in a diagonal system; a plane gives four
/// points, a line gives none, a solid gives a curve.
pub fn fixed_points(
    s: &QuarticSurface,
    g: &SignedPermutation,
    field: &Arc<MultiQuadraticField>,
) -> Result<Vec<ProjPoint>> {
    if !g.is_diagonal() {
        return Err(Error::Unsupported(
            "fixed points of a non-diagonal map".into(),
        ));
    }
    if !g.preserves(s) {
        return Err(Error::Unsupported(format!(
            "{g:?} does not preserve the surface"
        )));
    }
    if g.is_identity_projectively() {
        return Err(Error::CurveOfFixedPoints);
    }
    let mut out = Vec::new();
    for sign in [1, -1] {
        let idx: Vec<usize> = (0..5).filter(|&i| g.signs[i] == sign).collect();
        match idx.len() {
            0 => {}
            1 => {
                let mut x = vec![FieldElement::zero(field); 5];
                x[idx[0]] = FieldElement::one(field);
                let p = ProjPoint(x);
                if s.contains(&p) {
                    out.push(p);
                }
            }
            2 => {
                let (i, j) = (idx[0], idx[1]);
                // a t^2 + b u^2 = 0 for both forms
                let det = s.a[i] * s.b[j] - s.a[j] * s.b[i];
                if det == Q::from_integer(0) {
                    return Err(Error::CurveOfFixedPoints);
                }
            }
            3 => out.extend(plane_points(s, &idx, field)?),
            _ => return Err(Error::CurveOfFixedPoints),
        }
    }
    Ok(out)
}

/// The four points of the surface in the coordinate plane spanned by `idx`.
fn plane_points(
    s: &QuarticSurface,
    idx: &[usize],
    field: &Arc<MultiQuadraticField>,
) -> Result<Vec<ProjPoint>> {
    let (i, j, k) = (idx[0], idx[1], idx[2]);
    // squares (u, v, w) solve a_i u + a_j v + a_k w = 0 = b_i u + b_j v + b_k w: the cross product
    let (a, b) = (&s.a, &s.b);
    let sq = [
        a[j] * b[k] - a[k] * b[j],
        a[k] * b[i] - a[i] * b[k],
        a[i] * b[j] - a[j] * b[i],
    ];
    let zero = Q::from_integer(0);
    if sq.iter().filter(|x| **x == zero).count() > 0 {
        // a vanishing square puts a coordinate vertex on the surface and the pencil is singular
        return Err(Error::Unsupported("degenerate coordinate plane".into()));
    }
    let scale = sq[2];
    let roots: Vec<FieldElement> = sq
        .iter()
        .map(|q| {
            FieldElement::sqrt_rational(field, &big(*q / scale)).ok_or_else(|| {
                Error::Unsupported(format!(
                    "the field does not contain the square root of {}",
                    q / scale
                ))
            })
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (su, sv) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let mut x = vec![FieldElement::zero(field); 5];
        x[i] = if su > 0 { roots[0].clone() } else { -&roots[0] };
        x[j] = if sv > 0 { roots[1].clone() } else { -&roots[1] };
        x[k] = roots[2].clone();
        out.push(ProjPoint(x));
    }
    Ok(out)
}

/// Index of `p` in `points`, up to scaling.
pub fn find_point(points: &[ProjPoint], p: &ProjPoint) -> Option<usize> {
    points.iter().position(|x| x.same_as(p))
}

pub fn describe_points(points: &[ProjPoint]) -> Vec<String> {
    points.iter().map(|p| format!("{p}")).collect()
}
