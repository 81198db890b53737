//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails. Every comparison is exact.

use std::collections::BTreeSet;
use std::process::ExitCode;

use dpquot::exactgeo::{
    example_ids, surface, verify_cremona_order5, verify_example, verify_lines, FieldElement,
    MultiQuadraticField,
};
use dpquot::lattice::{blowdown, DivisorClass, PicardLattice};
use dpquot::mmp::{self, EquivariantSurface, Verdict, VerdictEngine};
use dpquot::perm::S5;
use dpquot::quotient::{
    dp4c3_invariant_zero_curves, hj_resolve, p1xp1_quotient_singularities, replay, resolve_all,
    Pairing, Polyhedral, SingularityType, TABLE1,
};
use dpquot::weyl::{generate_weyl, named_element, reflection, subgroup_from_words, ActionGroup};
use dpquot::Q;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};

/// Allowed absolute error on every rational comparison.
const TOLERANCE: Q = Q::new_raw(0, 1);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(a: i64, b: i64) -> Q {
    Q::new(a, b)
}

fn same(what: &str, expected: Q, computed: Q) -> Result<(), String> {
    let diff = expected - computed;
    if diff.abs() <= TOLERANCE {
        Ok(())
    } else {
        Err(format!("{what}: expected {expected}, computed {computed}"))
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, expected: T, computed: T) -> Result<(), String> {
    if expected == computed {
        Ok(())
    } else {
        Err(format!(
            "{what}: expected {expected:?}, computed {computed:?}"
        ))
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn c1_weyl_orders() -> Outcome {
    for (d, n) in [(4, 1920), (5, 120)] {
        let x = PicardLattice::del_pezzo(d).map_err(err)?;
        eq(
            &format!("|W| in degree {d}"),
            n,
            generate_weyl(&x).map_err(err)?.order(),
        )?;
    }
    Ok("1920 and 120".into())
}

fn c2_lines() -> Outcome {
    for (d, n) in [(4, 16), (5, 10), (6, 6), (7, 3)] {
        let x = PicardLattice::del_pezzo(d).map_err(err)?;
        eq(
            &format!("(-1)-curves in degree {d}"),
            n,
            x.enumerate_minus_one_curves().len(),
        )?;
    }
    let x = PicardLattice::del_pezzo(4).map_err(err)?;
    let lines = x.enumerate_minus_one_curves();
    for a in &lines {
        eq(
            &format!("valence of {}", x.name(a)),
            5,
            lines.iter().filter(|b| x.dot(a, b) == 1).count(),
        )?;
    }
    Ok("16/10/6/3, degree-4 graph 5-regular".into())
}

fn c3_table1() -> Outcome {
    let want: [(&[i64], Q, Q, Q); 9] = [
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
    for ((m, qq), (chain, k, c, d)) in TABLE1.iter().zip(want) {
        let r = hj_resolve(SingularityType::new(*m, *qq).map_err(err)?);
        let row = format!("1/{m}(1,{qq})");
        eq(&format!("{row} chain"), chain.to_vec(), r.chain.clone())?;
        same(&format!("{row} dK^2"), k, r.delta_k2)?;
        same(&format!("{row} dC^2"), c, r.delta_c2)?;
        same(&format!("{row} dD^2"), d, r.delta_d2)?;
    }
    Ok("nine rows".into())
}

fn c4_hurwitz() -> Outcome {
    let x4 = PicardLattice::del_pezzo(4).map_err(err)?;
    let v = x4.canonical.sub(&x4.l()).add(&x4.e(5));
    same("(K-L+E5)^2/2", q(4, 1), q(x4.dot(&v, &v), 2))?;
    same(
        "dp4-c2 quotient K^2",
        q(4, 1),
        replay("dp4-c2").map_err(err)?.k2_quotient,
    )?;
    let x5 = PicardLattice::del_pezzo(5).map_err(err)?;
    let k10 = x5.canonical.scale(10);
    same("(10K)^2/60", q(25, 3), q(x5.dot(&k10, &k10), 60))?;
    same(
        "dp5-a5 quotient K^2",
        q(25, 3),
        replay("dp5-a5").map_err(err)?.k2_quotient,
    )?;
    let x8 = PicardLattice::del_pezzo(8).map_err(err)?;
    same(
        "K^2/60 in degree 8",
        q(2, 15),
        q(x8.dot(&x8.canonical, &x8.canonical), 60),
    )?;
    same(
        "dp8-a5-diag quotient K^2",
        q(2, 15),
        replay("dp8-a5-diag").map_err(err)?.k2_quotient,
    )?;
    for (k, want) in [(1, 8), (2, 9), (3, 8), (4, 9)] {
        let r = replay(&format!("dp4-i1234-{k}")).map_err(err)?;
        same(&format!("dp4-i1234-{k} K^2"), q(want, 1), r.k2_quotient)?;
        eq(&format!("dp4-i1234-{k} checks"), true, r.passed())?;
    }
    Ok("4, 25/3, 2/15, 8 9 8 9".into())
}

fn c5_resolution_chains() -> Outcome {
    for (id, pairing, resolved, contracted) in [
        ("dp8-a5-diag", Pairing::Diagonal, -2, 2),
        ("dp8-a5-twisted", Pairing::Twisted, -1, 3),
    ] {
        let pq = p1xp1_quotient_singularities(Polyhedral::A5, pairing).map_err(err)?;
        same(
            &format!("{id} resolved K^2"),
            q(resolved, 1),
            resolve_all(q(2, 15), &pq.singularities),
        )?;
        let r = replay(id).map_err(err)?;
        same(
            &format!("{id} replay resolved K^2"),
            q(resolved, 1),
            r.k2_resolved,
        )?;
        same(
            &format!("{id} K^2 after contractions"),
            q(contracted, 1),
            r.k2_final,
        )?;
        if let Some(f) = r.failures().first() {
            return Err(format!(
                "{id}: {} [{}] expected {} computed {}",
                f.op, f.inputs, f.expected, f.computed
            ));
        }
    }
    Ok("2/15 -> -2 -> 2 and 2/15 -> -1 -> 3".into())
}

fn c6_diophantine() -> Outcome {
    let x = PicardLattice::del_pezzo(4).map_err(err)?;
    let got: BTreeSet<String> = dp4c3_invariant_zero_curves()
        .iter()
        .map(|c| x.name(c))
        .collect();
    let want: BTreeSet<String> = ["2L-E1-E2-E3-E4", "2L-E1-E2-E3-E5", "L-E4", "L-E5"]
        .into_iter()
        .map(String::from)
        .collect();
    eq("invariant square-zero classes", want, got)?;
    Ok("four classes".into())
}

fn c7_s5() -> Outcome {
    let r = S5::new().verify_normal_subgroup_lemma();
    eq("subgroups of S5", 156, r.subgroup_count)?;
    eq(
        "counterexamples",
        Vec::<Vec<String>>::new(),
        r.counterexamples,
    )?;
    Ok(format!(
        "156 subgroups, {} classes, all witnessed",
        r.class_count
    ))
}

fn c8_surfaces() -> Outcome {
    for name in ["s63", "s68", "s69"] {
        let s = surface(name).map_err(err)?;
        verify_lines(&s.surface, &s.lines()).map_err(|e| format!("{name}: {e}"))?;
    }
    let images = [
        ("dp4i12ex-a", &["i1345", "i15", "i45"][..]),
        ("dp4i12ex-b", &["i34", "i45"]),
        ("dp4i12ex-c", &["i1345"]),
        ("dp4i12ex-d", &["i34"]),
    ];
    let x = PicardLattice::del_pezzo(4).map_err(err)?;
    let w = generate_weyl(&x).map_err(err)?;
    for (id, words) in images {
        let r = verify_example(id).map_err(err)?;
        let want = subgroup_from_words(&w, words).map_err(err)?;
        let got: Vec<&str> = r.galois_image.iter().map(String::as_str).collect();
        let got = subgroup_from_words(&w, &got).map_err(err)?;
        eq(&format!("{id} Galois image"), want.elements, got.elements)?;
    }
    let mut checks = 0;
    for id in example_ids().map_err(err)? {
        let r = verify_example(&id).map_err(err)?;
        if let Some(f) = r.failures().first() {
            return Err(format!(
                "{id}: {}: expected {} computed {}",
                f.what, f.expected, f.computed
            ));
        }
        checks += r.checks.len();
    }
    Ok(format!(
        "48 lines, {checks} example checks (fixed points, images, ranks)"
    ))
}

fn c9_sweep() -> Outcome {
    let engine = VerdictEngine::new().map_err(err)?;
    let mut flagged = BTreeSet::new();
    let mut classes = 0;
    for row in engine.sweep().map_err(err)? {
        if !row.passes_filter {
            continue;
        }
        classes += 1;
        if let Verdict::ExceptionalCase(tag) = &row.verdict {
            let words: &[&str] = match tag.as_str() {
                "trivial" => &[],
                "C2" => &["i12"],
                "V4" => &["i12", "i13"],
                "C4" => &["(12)(34)i15"],
                other => return Err(format!("unexpected tag {other}")),
            };
            let named = subgroup_from_words(&engine.rep.ambient, words).map_err(err)?;
            eq(
                &format!("{tag} conjugate to its representative"),
                true,
                engine.rep.are_conjugate(&row.group, &named).map_err(err)?,
            )?;
            if !flagged.insert(tag.clone()) {
                return Err(format!("class {tag} flagged twice"));
            }
        }
    }
    let want: BTreeSet<String> = ["trivial", "C2", "V4", "C4"]
        .into_iter()
        .map(String::from)
        .collect();
    eq("exceptional classes", want, flagged)?;

    let x5 = PicardLattice::del_pezzo(5).map_err(err)?;
    let s5 = S5::new();
    let subs = s5.all_subgroups();
    for &h in &subs {
        let gens = S5::members(h)
            .map(|i| named_element(&x5, &s5.elements[i].cycles()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let g = ActionGroup::generate(&x5, &gens, Vec::new()).map_err(err)?;
        match mmp::main_verdict(&EquivariantSurface::with_group(g, true)).map_err(err)? {
            Verdict::Rational { .. } => {}
            v => {
                return Err(format!(
                    "degree 5 subgroup of order {}: {v:?}",
                    S5::order(h)
                ))
            }
        }
    }
    Ok(format!(
        "{classes} filtered classes, 4 exceptional; {} degree-5 subgroups rational",
        subs.len()
    ))
}

fn c10_cremona() -> Outcome {
    let r = verify_cremona_order5().map_err(err)?;
    match r.failures().first() {
        None => Ok("order 5, two fixed points, characteristic polynomials".into()),
        Some(f) => Err(format!(
            "{}: expected {} computed {}",
            f.what, f.expected, f.computed
        )),
    }
}

fn runner(cases: u32, seed: u8) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::from_seed(Default::default(), &[seed; 32]),
    )
}

fn c11_properties() -> Outcome {
    let field = MultiQuadraticField::new(&[-1, 2, 3]).map_err(err)?;
    let f = field.clone();
    let element = prop::collection::vec((-20i64..=20, 1i64..=6), 8).prop_map(move |v| {
        let coeffs = v
            .into_iter()
            .map(|(n, d)| BigRational::new(n.into(), d.into()))
            .collect();
        FieldElement::from_coeffs(&f, coeffs).unwrap()
    });
    runner(1000, 11)
        .run(&(element.clone(), element.clone(), element), |(a, b, c)| {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            for s in 0..8 {
                prop_assert_eq!((&a * &b).conjugate(s), &a.conjugate(s) * &b.conjugate(s));
            }
            Ok(())
        })
        .map_err(|e| format!("field axioms: {e}"))?;

    runner(64, 12)
        .run(
            &(4i64..=8, prop::collection::vec(any::<u16>(), 40)),
            |(degree, order)| {
                let x = PicardLattice::del_pezzo(degree).unwrap();
                let mut keyed: Vec<(u16, DivisorClass)> = x
                    .enumerate_minus_one_curves()
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| (order[i % order.len()].wrapping_mul(i as u16 + 7), c))
                    .collect();
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
                Ok(())
            },
        )
        .map_err(|e| format!("blowdown K^2: {e}"))?;

    let mut roots = 0;
    for degree in 4..=8 {
        let x = PicardLattice::del_pezzo(degree).map_err(err)?;
        for r in x.enumerate_roots() {
            let s = reflection(&x, &r);
            if !s.is_isometry_of(&x) || s.apply(&x.canonical) != x.canonical {
                return Err(format!("reflection in {} (degree {degree})", x.name(&r)));
            }
            roots += 1;
        }
    }
    Ok(format!(
        "1000 field cases, 64 contraction sets, {roots} reflections"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Weyl orders", c1_weyl_orders),
        ("line counts and 5-regularity", c2_lines),
        ("resolution table", c3_table1),
        ("Hurwitz chains", c4_hurwitz),
        ("resolution chains", c5_resolution_chains),
        ("Diophantine classification", c6_diophantine),
        ("S5 normal-subgroup lemma", c7_s5),
        ("explicit surfaces", c8_surfaces),
        ("verdict sweep", c9_sweep),
        ("Cremona map of order 5", c10_cremona),
        ("property suites", c11_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
