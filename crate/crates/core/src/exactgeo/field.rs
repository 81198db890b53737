//! Multiquadratic number fields `Q(sqrt(d_1), ..., sqrt(d_k))`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Generators are distinct squarefree integers; `-1` stands for `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiQuadraticField {
    gens: Vec<i64>,
}

fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

fn is_rational_square(q: &BigRational) -> bool {
    is_square(&(q.numer() * q.denom()))
}

impl MultiQuadraticField {
    pub fn new(gens: &[i64]) -> Result<Arc<Self>> {
        if gens.len() > 6 {
            return Err(Error::Unsupported(format!("{} generators", gens.len())));
        }
        for &g in gens {
            if g == 0 || g == 1 || !is_squarefree(g) {
                return Err(Error::Unsupported(format!(
                    "generator {g} is not a squarefree integer other than 0, 1"
                )));
            }
        }
        // products over nonempty subsets must not be squares, or the degree drops
        for s in 1..(1usize << gens.len()) {
            let p: BigInt = (0..gens.len())
                .filter(|t| s >> t & 1 == 1)
                .map(|t| BigInt::from(gens[t]))
                .product();
            if is_square(&p) {
                return Err(Error::Unsupported(format!(
                    "generators {gens:?} are dependent modulo squares"
                )));
            }
        }
        Ok(Arc::new(MultiQuadraticField {
            gens: gens.to_vec(),
        }))
    }

    pub fn generators(&self) -> &[i64] {
        &self.gens
    }

    pub fn dimension(&self) -> usize {
        1 << self.gens.len()
    }

    fn subset_product(&self, s: usize) -> BigInt {
        (0..self.gens.len())
            .filter(|t| s >> t & 1 == 1)
            .map(|t| BigInt::from(self.gens[t]))
            .product()
    }

    fn basis_name(&self, s: usize) -> String {
        let mut out = String::new();
        for (t, &g) in self.gens.iter().enumerate() {
            if s >> t & 1 == 1 {
                if g == -1 {
                    out.insert(0, 'i');
                } else {
                    out.push_str(&format!("√{g}"));
                }
            }
        }
        out
    }

    /// Bit mask of the generator `g`.
    pub fn generator_mask(&self, g: i64) -> Result<usize> {
        self.gens
            .iter()
            .position(|&x| x == g)
            .map(|t| 1 << t)
            .ok_or_else(|| Error::UnknownName(format!("generator {g}")))
    }
}

/// Element of a [`MultiQuadraticField`], with one rational coefficient per subset of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Arc<MultiQuadraticField>,
    coeffs: Vec<BigRational>,
}

impl FieldElement {
    pub fn zero(field: &Arc<MultiQuadraticField>) -> Self {
        FieldElement {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.dimension()],
        }
    }

    pub fn one(field: &Arc<MultiQuadraticField>) -> Self {
        Self::rational(field, BigRational::one())
    }

    pub fn rational(field: &Arc<MultiQuadraticField>, q: BigRational) -> Self {
        let mut x = Self::zero(field);
        x.coeffs[0] = q;
        x
    }

    pub fn int(field: &Arc<MultiQuadraticField>, n: i64) -> Self {
        Self::rational(field, BigRational::from_integer(n.into()))
    }

    /// The basis element `prod_{t in s} sqrt(g_t)`.
    pub fn basis(field: &Arc<MultiQuadraticField>, s: usize) -> Self {
        let mut x = Self::zero(field);
        x.coeffs[s] = BigRational::one();
        x
    }

    pub fn from_coeffs(field: &Arc<MultiQuadraticField>, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != field.dimension() {
            return Err(Error::DimensionMismatch {
                expected: field.dimension(),
                found: coeffs.len(),
            });
        }
        Ok(FieldElement {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn field(&self) -> &Arc<MultiQuadraticField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then_some(&self.coeffs[0])
    }

    /// A square root of the rational `q`, if the field contains one.
    pub fn sqrt_rational(field: &Arc<MultiQuadraticField>, q: &BigRational) -> Option<Self> {
        if q.is_zero() {
            return Some(Self::zero(field));
        }
        for s in 0..field.dimension() {
            let p = field.subset_product(s);
            // sqrt(q) = u / sqrt(p) = u e_s / p when q p = u^2
            let qp = q * BigRational::from_integer(p.clone());
            if is_rational_square(&qp) {
                let u = BigRational::new((qp.numer() * qp.denom()).sqrt(), qp.denom().clone());
                let mut x = Self::zero(field);
                x.coeffs[s] = u / BigRational::from_integer(p.abs());
                return Some(x);
            }
        }
        None
    }

    /// Applies the automorphism negating `sqrt(g_t)` for every `t` in the mask `s`.
    pub fn conjugate(&self, s: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(b, c)| {
                if (b & s).count_ones() % 2 == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Product over all conjugates; always rational.
    pub fn norm(&self) -> BigRational {
        let mut p = self.clone();
        for s in 1..self.field.dimension() {
            p = &p * &self.conjugate(s);
        }
        p.coeffs[0].clone()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut p = Self::one(&self.field);
        for s in 1..self.field.dimension() {
            p = &p * &self.conjugate(s);
        }
        let n = (&p * self).coeffs[0].clone();
        Ok(p.scale(&n.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn check(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "elements of different fields"
        );
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, other: &FieldElement) -> FieldElement {
        self.check(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, other: &FieldElement) -> FieldElement {
        self.check(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, other: &FieldElement) -> FieldElement {
        self.check(other);
        let n = self.field.dimension();
        let mut out = vec![BigRational::zero(); n];
        for (s, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (t, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                let k = BigRational::from_integer(self.field.subset_product(s & t));
                out[s ^ t] += a * b * k;
            }
        }
        FieldElement {
            field: self.field.clone(),
            coeffs: out,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let name = self.field.basis_name(s);
            let mag = c.abs();
            let body = match (mag.is_one(), name.is_empty()) {
                (_, true) => format!("{mag}"),
                (true, false) => name,
                (false, false) => format!("{mag}{name}"),
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Parses expressions such as `2`, `-i`, `sqrt(2)+sqrt(3)`, `i*(1+sqrt(6))`, `√2(x)`, `1/2`.
pub fn parse_element(field: &Arc<MultiQuadraticField>, s: &str) -> Result<FieldElement> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        field,
        chars,
        pos: 0,
        src: s,
    };
    let x = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.err());
    }
    Ok(x)
}

struct Parser<'a> {
    field: &'a Arc<MultiQuadraticField>,
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self) -> Error {
        Error::Parse(format!("field element `{}` at {}", self.src, self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some('/') => {
                    self.pos += 1;
                    acc = acc.div(&self.factor()?)?;
                }
                Some(c) if c == '(' || c == 'i' || c == '√' || c == 's' || c.is_ascii_digit() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn number(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err())
    }

    fn root(&mut self, n: i64) -> Result<FieldElement> {
        FieldElement::sqrt_rational(self.field, &BigRational::from_integer(n.into()))
            .ok_or_else(|| self.err())
    }

    fn factor(&mut self) -> Result<FieldElement> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some('(') => {
                self.pos += 1;
                let x = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(x)
            }
            Some('i') => {
                self.pos += 1;
                self.root(-1)
            }
            Some('√') => {
                self.pos += 1;
                let n = self.number()?;
                self.root(n)
            }
            Some('s') => {
                let word: String = self.chars[self.pos..].iter().take(5).collect();
                if word != "sqrt(" {
                    return Err(self.err());
                }
                self.pos += 5;
                let neg = self.peek() == Some('-');
                if neg {
                    self.pos += 1;
                }
                let n = self.number()?;
                if self.peek() != Some(')') {
                    return Err(self.err());
                }
                self.pos += 1;
                self.root(if neg { -n } else { n })
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(FieldElement::int(self.field, n))
            }
            _ => Err(self.err()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Arc<MultiQuadraticField> {
        MultiQuadraticField::new(&[-1, 2, 3]).unwrap()
    }

    #[test]
    fn basis_products() {
        let k = f();
        let r2 = parse_element(&k, "sqrt(2)").unwrap();
        let r3 = parse_element(&k, "√3").unwrap();
        assert_eq!(&r2 * &r3, parse_element(&k, "sqrt(6)").unwrap());
        assert_eq!(
            (&r2 * &r2).as_rational(),
            Some(&BigRational::from_integer(2.into()))
        );
        let i = parse_element(&k, "i").unwrap();
        assert_eq!(&i * &i, FieldElement::int(&k, -1));
        assert_eq!(
            format!("{}", parse_element(&k, "i(1+√6)").unwrap()),
            "i + i√2√3"
        );
    }

    #[test]
    fn inverse_and_conjugate() {
        let k = f();
        let a = parse_element(&k, "√2+√3").unwrap();
        assert!((&a.inv().unwrap() * &a).is_one());
        let c = a.conjugate(k.generator_mask(2).unwrap());
        assert_eq!(c, parse_element(&k, "-√2+√3").unwrap());
        assert_eq!(FieldElement::zero(&k).inv(), Err(Error::DivisionByZero));
        assert_eq!(a.norm(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn square_roots() {
        let k = f();
        let half = BigRational::new(3.into(), 2.into());
        let r = FieldElement::sqrt_rational(&k, &half).unwrap();
        assert_eq!(&r * &r, FieldElement::rational(&k, half));
        let m6 = BigRational::from_integer((-6).into());
        let r = FieldElement::sqrt_rational(&k, &m6).unwrap();
        assert_eq!(&r * &r, FieldElement::rational(&k, m6));
        assert!(FieldElement::sqrt_rational(&k, &BigRational::from_integer(5.into())).is_none());
    }

    #[test]
    fn bad_generators() {
        assert!(MultiQuadraticField::new(&[4]).is_err());
        assert!(MultiQuadraticField::new(&[2, 3, 6]).is_err());
        assert!(MultiQuadraticField::new(&[5]).is_ok());
        assert!(parse_element(&f(), "sqrt(5)").is_err());
        assert!(parse_element(&f(), "1+").is_err());
    }
}
