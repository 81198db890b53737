use dpquot::exactgeo::*;
use dpquot::lattice::PicardLattice;
use dpquot::weyl::{generate_weyl, invariant_rank, iota_support, named_element, ActionGroup};
use dpquot::Error;

fn setup(name: &str) -> (SurfaceFixture, Vec<LineOnSurface>, Labeling) {
    let s = surface(name).unwrap();
    let lines = s.lines();
    let inc = verify_lines(&s.surface, &lines).unwrap();
    let lab = calibrated_labeling(&s, &lines, &inc).unwrap();
    (s, lines, lab)
}

fn lattice_of(
    s: &SurfaceFixture,
    lines: &[LineOnSurface],
    lab: &Labeling,
    m: PointMap,
) -> dpquot::weyl::LatticeAutomorphism {
    let perm = line_permutation(&s.surface, lines, &m).unwrap();
    lattice_element(&lab.labels, &perm).unwrap()
}

#[test]
fn field_examples() {
    let k = MultiQuadraticField::new(&[-1, 2, 3]).unwrap();
    let a = parse_element(&k, "sqrt(2)+sqrt(3)").unwrap();
    assert!((&a.inv().unwrap() * &a).is_one());
    let r2 = parse_element(&k, "sqrt(2)").unwrap();
    let r3 = parse_element(&k, "sqrt(3)").unwrap();
    assert_eq!(&r2 * &r3, parse_element(&k, "sqrt(6)").unwrap());
    let mask = k.generator_mask(2).unwrap();
    assert_eq!(
        a.conjugate(mask),
        parse_element(&k, "-sqrt(2)+sqrt(3)").unwrap()
    );
}

#[test]
fn lines_on_both_surfaces() {
    for name in ["s63", "s68", "s69"] {
        let s = surface(name).unwrap();
        let found: Vec<[i64; 5]> = sign_pattern_lines(&s.surface, &s.base)
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        assert_eq!(found, s.signs, "{name}");
        let inc = verify_lines(&s.surface, &s.lines()).unwrap();
        assert!(inc
            .iter()
            .all(|r| r.iter().filter(|&&x| x == 1).count() == 5));
        assert!(s.surface.contains(&s.point));
    }
}

#[test]
fn corrupted_line_is_rejected() {
    let s = surface("s63").unwrap();
    let mut lines = s.lines();
    // flip one coordinate of one spanning point only
    let c = &lines[3].q.0[1];
    lines[3].q.0[1] = -c;
    match verify_lines(&s.surface, &lines) {
        Err(Error::NotOnSurface(msg)) => assert!(msg.starts_with("line 3"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn labeling_of_63() {
    let s = surface("s63").unwrap();
    let inc = verify_lines(&s.surface, &s.lines()).unwrap();
    let lab = label_lines(&inc).unwrap();
    assert_eq!(lab.count, 1920);
    let t = standard_incidence();
    for i in 0..16 {
        for j in 0..16 {
            assert_eq!(inc[i][j], t[lab.labels[i]][lab.labels[j]]);
        }
    }
}

#[test]
fn sign_changes_and_galois() {
    let (s, lines, lab) = setup("s63");
    let x = PicardLattice::del_pezzo(4).unwrap();
    let w = generate_weyl(&x).unwrap();
    let i12 = lattice_of(
        &s,
        &lines,
        &lab,
        PointMap::Coordinate(SignedPermutation::flip(&[1, 2])),
    );
    assert!(w.contains(&i12));
    assert_eq!(i12.order(), 2);
    assert_eq!(iota_support(&x, &i12).unwrap(), Some(vec![1, 2]));
    let g = ActionGroup::generate(&x, &[i12], vec![]).unwrap();
    assert_eq!(invariant_rank(&g), 4);
    // sqrt(3) -> -sqrt(3) acts as iota_45 and swaps E1 and L23
    let sigma = lattice_of(
        &s,
        &lines,
        &lab,
        PointMap::Galois(s.field.generator_mask(3).unwrap()),
    );
    assert_eq!(sigma, named_element(&x, "i45").unwrap());
    assert_eq!(sigma.apply(&x.e(1)), x.lij(2, 3));
}

#[test]
fn order_four_map() {
    let (s, lines, lab) = setup("s68");
    let x = PicardLattice::del_pezzo(4).unwrap();
    let g = parse_map("-2 1 4 3 -5").unwrap();
    let gl = lattice_of(&s, &lines, &lab, PointMap::Coordinate(g));
    assert_eq!(gl.order(), 4);
    let sigma = lattice_of(
        &s,
        &lines,
        &lab,
        PointMap::Galois(s.field.generator_mask(2).unwrap()),
    );
    let geo = ActionGroup::generate(&x, std::slice::from_ref(&gl), vec![]).unwrap();
    let both = ActionGroup::generate(&x, &[gl, sigma], vec![]).unwrap();
    assert_eq!(invariant_rank(&geo), 2);
    assert_eq!(invariant_rank(&both), 1);
}

#[test]
fn fixed_point_examples() {
    let s = surface("s63").unwrap();
    let pts = fixed_points(&s.surface, &SignedPermutation::flip(&[1, 3]), &s.field).unwrap();
    let want: Vec<ProjPoint> = expand_pm("0:±i*sqrt(3):0:±i:1")
        .iter()
        .map(|p| parse_point(&s.field, p).unwrap())
        .collect();
    assert_eq!(pts.len(), 4);
    assert!(want.iter().all(|p| find_point(&pts, p).is_some()));
    assert_eq!(
        fixed_points(
            &s.surface,
            &SignedPermutation::flip(&[1, 2, 3, 4]),
            &s.field
        )
        .unwrap_err(),
        Error::CurveOfFixedPoints
    );
    let s = surface("s68").unwrap();
    let pts = fixed_points(&s.surface, &SignedPermutation::flip(&[1, 2]), &s.field).unwrap();
    let p1 = parse_point(&s.field, "0 : 0 : sqrt(6) : -sqrt(6) : 1").unwrap();
    assert!(find_point(&pts, &p1).is_some());
}

#[test]
fn every_example_verifies() {
    for id in example_ids().unwrap() {
        let r = verify_example(&id).unwrap();
        assert!(r.passed(), "{id}: {:?}", r.failures());
    }
}

#[test]
fn example_headlines() {
    let r = verify_example("dp4i12ex-a").unwrap();
    assert_eq!((r.rho_x, r.rho_g, r.rho_y), (2, 1, Some(2)));
    assert!(r.verdict.starts_with("non-rational"));
    let r = verify_example("dp4i12i13ex-c").unwrap();
    assert_eq!(r.rho_y, Some(4));
    assert!(r.verdict.starts_with("rational"));
    let r = verify_example("dp4c2i15ex-b").unwrap();
    assert!(r.rho_y.unwrap() >= 3);
    let r = verify_example("dp4i12ex-b").unwrap();
    assert!(r
        .annotations
        .iter()
        .any(|a| a.contains("not Galois-invariant")));
    assert!(matches!(verify_example("nope"), Err(Error::UnknownName(_))));
}

#[test]
fn cremona_order_and_fixed_points() {
    let r = verify_cremona_order5().unwrap();
    for c in &r.checks {
        if !c.what.starts_with("characteristic polynomial") {
            assert!(c.passed(), "{c:?}");
        }
    }
    assert_eq!(r.fixed_points.len(), 2);
}
