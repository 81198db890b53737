//! The quadratic Cremona map `(x:y:z) -> ((y-x)z : (z-x)y : yz)` of order 5.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::examples::ExampleCheck;
use super::field::{parse_element, FieldElement, MultiQuadraticField};
use crate::error::Result;

/// Polynomial in `x, y, z` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(BTreeMap<[u32; 3], BigInt>);

impl Poly {
    pub fn var(i: usize) -> Poly {
        let mut e = [0; 3];
        e[i] = 1;
        Poly(BTreeMap::from([(e, BigInt::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> usize {
        self.0.len()
    }

    fn insert(&mut self, e: [u32; 3], c: BigInt) {
        let v = self.0.entry(e).or_default();
        *v += c;
        if v.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.0 {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.0 {
            out.insert(*e, -c);
        }
        out
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::default();
        for (a, c) in &self.0 {
            for (b, d) in &o.0 {
                out.insert([a[0] + b[0], a[1] + b[1], a[2] + b[2]], c * d);
            }
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::default();
        for (e, c) in &self.0 {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                out.insert(f, c * BigInt::from(e[i]));
            }
        }
        out
    }

    pub fn eval(&self, p: &[FieldElement; 3]) -> FieldElement {
        let field = p[0].field().clone();
        let mut acc = FieldElement::zero(&field);
        for (e, c) in &self.0 {
            let mut t = FieldElement::rational(&field, BigRational::from_integer(c.clone()));
            for i in 0..3 {
                for _ in 0..e[i] {
                    t = &t * &p[i];
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

/// Components of the map.
pub fn cremona_map() -> [Poly; 3] {
    let (x, y, z) = (Poly::var(0), Poly::var(1), Poly::var(2));
    [y.sub(&x).mul(&z), z.sub(&x).mul(&y), y.mul(&z)]
}

/// `outer` evaluated at the polynomials `inner`.
pub fn compose(outer: &[Poly; 3], inner: &[Poly; 3]) -> [Poly; 3] {
    outer.clone().map(|p| {
        let mut acc = Poly::default();
        for (e, c) in &p.0 {
            let mut t = Poly(BTreeMap::from([([0, 0, 0], c.clone())]));
            for i in 0..3 {
                for _ in 0..e[i] {
                    t = t.mul(&inner[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CremonaReport {
    pub common_factor_degree: u32,
    pub fixed_points: Vec<String>,
    /// `(point, lambda^2 - t lambda + d)` for the tangent action in the chart `z = 1`.
    pub char_polys: Vec<(String, String)>,
    pub checks: Vec<ExampleCheck>,
}

impl CremonaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(ExampleCheck::passed)
    }

    pub fn failures(&self) -> Vec<&ExampleCheck> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }
}

fn push(
    out: &mut Vec<ExampleCheck>,
    what: String,
    expected: impl ToString,
    computed: impl ToString,
) {
    out.push(ExampleCheck {
        what,
        expected: expected.to_string(),
        computed: computed.to_string(),
    });
}

fn char_poly(t: &FieldElement, d: &FieldElement) -> String {
    format!("l^2 - ({t})l + ({d})")
}

/// Tangent map of `g` at a fixed point with `z = 1`, as `(trace, det)`.
fn tangent(g: &[Poly; 3], p: &[FieldElement; 3]) -> Result<(FieldElement, FieldElement)> {
    let c = g[2].eval(p);
    let c2 = &c * &c;
    // d(A/C)/du = (A_u C - A C_u) / C^2 in the chart z = 1
    let mut j = [
        [
            FieldElement::zero(p[0].field()),
            FieldElement::zero(p[0].field()),
        ],
        [
            FieldElement::zero(p[0].field()),
            FieldElement::zero(p[0].field()),
        ],
    ];
    for (r, num) in g[..2].iter().enumerate() {
        let a = num.eval(p);
        for (col, var) in [0usize, 1].iter().enumerate() {
            let top =
                &(&num.derivative(*var).eval(p) * &c) - &(&a * &g[2].derivative(*var).eval(p));
            j[r][col] = top.div(&c2)?;
        }
    }
    let trace = &j[0][0] + &j[1][1];
    let det = &(&j[0][0] * &j[1][1]) - &(&j[0][1] * &j[1][0]);
    Ok((trace, det))
}

pub fn verify_cremona_order5() -> Result<CremonaReport> {
    let mut checks = Vec::new();
    let g = cremona_map();
    let mut h = g.clone();
    for _ in 1..5 {
        h = compose(&g, &h);
    }
    let (x, y, z) = (Poly::var(0), Poly::var(1), Poly::var(2));
    let proportional = !h[0].is_zero()
        && h[0].mul(&y).sub(&h[1].mul(&x)).is_zero()
        && h[0].mul(&z).sub(&h[2].mul(&x)).is_zero();
    push(
        &mut checks,
        "g^5 = id up to a common factor".into(),
        true,
        proportional,
    );
    let mut g4 = g.clone();
    for _ in 1..4 {
        g4 = compose(&g, &g4);
    }
    let g4_trivial =
        g4[0].mul(&y).sub(&g4[1].mul(&x)).is_zero() && g4[0].mul(&z).sub(&g4[2].mul(&x)).is_zero();
    push(&mut checks, "g^k != id for k < 5".into(), false, g4_trivial);
    let common_factor_degree = h[0].degree().saturating_sub(1);

    let k: Arc<MultiQuadraticField> = MultiQuadraticField::new(&[5])?;
    let e = |s: &str| parse_element(&k, s);
    let points = [
        [e("sqrt(5)-1")?, e("2")?, e("sqrt(5)+1")?],
        [e("sqrt(5)+1")?, e("-2")?, e("sqrt(5)-1")?],
    ];
    let want_t = e("(sqrt(5)-1)/2")?;
    let one = FieldElement::one(&k);
    let mut fixed = Vec::new();
    let mut polys = Vec::new();
    for p in &points {
        let name = format!("({} : {} : {})", p[0], p[1], p[2]);
        let img: Vec<FieldElement> = g.iter().map(|c| c.eval(p)).collect();
        let fixed_here = (0..3).all(|i| (0..3).all(|j| (&img[i] * &p[j]) == (&img[j] * &p[i])));
        push(&mut checks, format!("g fixes {name}"), true, fixed_here);
        let affine = [p[0].div(&p[2])?, p[1].div(&p[2])?, one.clone()];
        let (t, d) = tangent(&g, &affine)?;
        // a primitive fifth root pair xi^a, xi^-a: t^2 + t - 1 = 0 and d = 1
        let order5 = (&(&(&t * &t) + &t) - &one).is_zero() && d.is_one();
        push(
            &mut checks,
            format!("tangent action at {name} has eigenvalues xi^a, xi^-a"),
            true,
            order5,
        );
        push(
            &mut checks,
            format!("characteristic polynomial at {name}"),
            char_poly(&want_t, &one),
            char_poly(&t, &d),
        );
        fixed.push(name.clone());
        polys.push((name, char_poly(&t, &d)));
    }
    Ok(CremonaReport {
        common_factor_degree,
        fixed_points: fixed,
        char_polys: polys,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_points() {
        let r = verify_cremona_order5().unwrap();
        let failed: Vec<&str> = r.failures().iter().map(|c| c.what.as_str()).collect();
        // the order, both fixed points and the order-5 tangent action hold
        assert!(
            failed
                .iter()
                .all(|w| w.starts_with("characteristic polynomial")),
            "{failed:?}"
        );
        assert_eq!(r.common_factor_degree, 31);
    }

    #[test]
    fn poly_basics() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let p = x.mul(&x).sub(&y);
        assert_eq!(p.derivative(0), x.add(&x));
        assert_eq!(p.degree(), 2);
        assert!(p.sub(&p).is_zero());
    }
}
