//! Quotients of `P^1 x P^1` by a polyhedral group acting faithfully on both factors.
//!
//! Every nontrivial element of a finite subgroup of `PGL_2` fixes two points
//! of `P^1`, and the stabilizer of such a point is a maximal cyclic subgroup
//! `Z`. A generator of `Z` rotates the tangent lines at its two fixed points
//! by inverse roots of unity, so on the product the four points over a pair of
//! poles carry weights `(1, e)` and `(1, -e)`, where the second factor acts
//! through an automorphism sending the generator to a conjugate of its `e`-th
//! power.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::SingularityType;
use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polyhedral {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    A4,
    S4,
    A5,
}

/// How the second factor is identified with the first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// The same action on both factors.
    Diagonal,
    /// The second factor twisted by an outer automorphism.
    Twisted,
}

fn cycle(n: usize, shift: usize) -> Perm {
    Perm((0..n).map(|i| ((i + shift) % n) as u8).collect())
}

fn generators(g: Polyhedral) -> Result<Vec<Perm>> {
    let p = |s: &str, n| Perm::parse_cycles(s, n);
    Ok(match g {
        Polyhedral::Cyclic(n) if n >= 2 => vec![cycle(n, 1)],
        Polyhedral::Dihedral(2) => vec![p("(12)(34)", 4)?, p("(13)(24)", 4)?],
        Polyhedral::Dihedral(n) if n >= 3 => {
            vec![
                cycle(n, 1),
                Perm((0..n).map(|i| ((n - i) % n) as u8).collect()),
            ]
        }
        Polyhedral::A4 => vec![p("(123)", 4)?, p("(12)(34)", 4)?],
        Polyhedral::S4 => vec![p("(1234)", 4)?, p("(12)", 4)?],
        Polyhedral::A5 => vec![p("(12345)", 5)?, p("(123)", 5)?],
        other => return Err(Error::Unsupported(format!("{other:?}"))),
    })
}

fn closure(gens: &[Perm]) -> Vec<Perm> {
    let id = Perm::identity(gens[0].len());
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

fn power(g: &Perm, k: usize) -> Perm {
    (0..k).fold(Perm::identity(g.len()), |acc, _| acc.compose(g))
}

fn cyclic_span(g: &Perm) -> BTreeSet<Perm> {
    (0..g.order()).map(|k| power(g, k)).collect()
}

fn conj(x: &Perm, g: &Perm) -> Perm {
    x.compose(g).compose(&x.inverse())
}

/// Singular points of the quotient and the number of points upstairs with nontrivial stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductQuotient {
    /// Canonical representatives, sorted.
    pub singularities: Vec<SingularityType>,
    pub special_points: usize,
}

pub fn p1xp1_quotient_singularities(
    group: Polyhedral,
    pairing: Pairing,
) -> Result<ProductQuotient> {
    let gens = generators(group)?;
    let elems = closure(&gens);
    // the outer automorphism of A5 is conjugation by an odd permutation
    let theta: Option<Perm> = match (pairing, group) {
        (Pairing::Diagonal, _) => None,
        (Pairing::Twisted, Polyhedral::A5) => Some(Perm::parse_cycles("(12)", 5)?),
        (Pairing::Twisted, other) => {
            return Err(Error::Unsupported(format!("twisted pairing for {other:?}")));
        }
    };
    let cyclics: BTreeSet<BTreeSet<Perm>> = elems
        .iter()
        .filter(|g| !g.is_identity())
        .map(cyclic_span)
        .collect();
    let maximal: Vec<&BTreeSet<Perm>> = cyclics
        .iter()
        .filter(|z| !cyclics.iter().any(|w| w.len() > z.len() && z.is_subset(w)))
        .collect();
    let mut done: BTreeSet<BTreeSet<Perm>> = BTreeSet::new();
    let mut sings = Vec::new();
    let mut points = 0;
    for z in maximal {
        if done.contains(z) {
            continue;
        }
        for x in &elems {
            done.insert(z.iter().map(|g| conj(x, g)).collect());
        }
        let k = z.len();
        let g = z
            .iter()
            .find(|g| g.order() == k)
            .expect("cyclic group has a generator");
        let image = match &theta {
            Some(t) => conj(t, g),
            None => g.clone(),
        };
        let e = (1..k)
            .filter(|e| e.gcd(&k) == 1)
            .find(|&e| {
                let ge = power(g, e);
                elems.iter().any(|x| conj(x, &ge) == image)
            })
            .ok_or_else(|| Error::Unsupported("automorphism does not preserve classes".into()))?;
        let normalizer = elems
            .iter()
            .filter(|x| z.iter().all(|h| z.contains(&conj(x, h))))
            .count();
        let (k, e) = (k as i64, e as i64);
        let plus = SingularityType::normalized(k, e)
            .expect("faithful action")
            .canonical();
        let minus = SingularityType::normalized(k, -e)
            .expect("faithful action")
            .canonical();
        if normalizer == z.len() {
            sings.extend([plus, plus, minus, minus]);
        } else {
            sings.extend([plus, minus]);
        }
        points += 4 * elems.len() / normalizer;
    }
    sings.sort();
    Ok(ProductQuotient {
        singularities: sings,
        special_points: points,
    })
}
