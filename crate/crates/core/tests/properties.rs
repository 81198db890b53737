use std::sync::Arc;

use dpquot::exactgeo::{FieldElement, MultiQuadraticField};
use dpquot::lattice::{blowdown, DivisorClass, PicardLattice};
use dpquot::weyl::reflection;
use num_rational::BigRational;
use proptest::prelude::*;

fn field() -> Arc<MultiQuadraticField> {
    MultiQuadraticField::new(&[-1, 2, 3]).unwrap()
}

fn element() -> impl Strategy<Value = FieldElement> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 8).prop_map(|v| {
        let coeffs = v
            .into_iter()
            .map(|(n, d)| BigRational::new(n.into(), d.into()))
            .collect();
        FieldElement::from_coeffs(&field(), coeffs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        for s in 0..8 {
            prop_assert_eq!((&a * &b).conjugate(s), &a.conjugate(s) * &b.conjugate(s));
            prop_assert_eq!((&a + &b).conjugate(s), &a.conjugate(s) + &b.conjugate(s));
        }
        let mut p = a.clone();
        for s in 1..8 {
            p = &p * &a.conjugate(s);
        }
        prop_assert!(p.as_rational().is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blowdown_k2(degree in 4i64..=8, order in prop::collection::vec(any::<u16>(), 40)) {
        let x = PicardLattice::del_pezzo(degree).unwrap();
        let mut curves = x.enumerate_minus_one_curves();
        // a random order, then a greedy disjoint subset
        let mut keyed: Vec<(u16, DivisorClass)> = curves.drain(..).enumerate().map(|(i, c)| (order[i % order.len()].wrapping_mul(i as u16 + 7), c)).collect();
        keyed.sort();
        let mut chosen: Vec<DivisorClass> = Vec::new();
        for (_, c) in keyed {
            if chosen.len() + degree as usize >= 9 {
                break;
            }
            if chosen.iter().all(|d| x.dot(d, &c) == 0) {
                chosen.push(c);
            }
        }
        let (y, _) = blowdown(&x, &chosen).unwrap();
        prop_assert_eq!(y.degree(), degree + chosen.len() as i64);
        prop_assert_eq!(y.rank, x.rank - chosen.len());
    }
}

#[test]
fn reflections_preserve_gram_and_k() {
    for degree in 4..=8 {
        let x = PicardLattice::del_pezzo(degree).unwrap();
        for r in x.enumerate_roots() {
            let s = reflection(&x, &r);
            assert!(s.is_isometry_of(&x), "degree {degree}, root {}", x.name(&r));
            assert!(s.compose(&s).is_identity());
        }
    }
}
