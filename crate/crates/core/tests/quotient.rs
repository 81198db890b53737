use dpquot::lattice::PicardLattice;
use dpquot::quotient::{
    dp1_2a4_configuration, dp4c3_invariant_zero_curves, dp4c3_solutions, hj_resolve, hurwitz_k2,
    p1xp1_quotient_singularities, replay, resolve_all, BranchCurve, Pairing, Polyhedral,
    RamificationDatum, SingularityType, CATALOGUE,
};
use dpquot::Q;

fn q(a: i64, b: i64) -> Q {
    Q::new(a, b)
}

fn st(m: i64, qq: i64) -> SingularityType {
    SingularityType::new(m, qq).unwrap()
}

#[test]
fn table_rows() {
    let r = hj_resolve(st(5, 2));
    assert_eq!(r.chain, [3, 2]);
    assert_eq!(
        (r.delta_k2, r.delta_c2, r.delta_d2),
        (q(-2, 5), q(-2, 5), q(-3, 5))
    );
    let r = hj_resolve(st(2, 1));
    assert_eq!(
        (r.chain.as_slice(), r.delta_k2, r.delta_c2, r.delta_d2),
        (&[2][..], q(0, 1), q(-1, 2), q(-1, 2))
    );
    let r = hj_resolve(st(5, 1));
    assert_eq!((r.chain.as_slice(), r.delta_k2), (&[5][..], q(-9, 5)));
}

#[test]
fn hurwitz() {
    let x4 = PicardLattice::del_pezzo(4).unwrap();
    let d = RamificationDatum {
        curves: vec![BranchCurve {
            class: x4.l().sub(&x4.e(5)),
            ram_index: 2,
            multiplicity: 1,
        }],
        isolated: vec![],
        group_order: 2,
    };
    assert_eq!(hurwitz_k2(&x4, &d).unwrap(), q(4, 1));
    let x5 = PicardLattice::del_pezzo(5).unwrap();
    let d = RamificationDatum {
        curves: vec![BranchCurve {
            class: x5.canonical.scale(-9),
            ram_index: 2,
            multiplicity: 1,
        }],
        isolated: vec![],
        group_order: 60,
    };
    assert_eq!(hurwitz_k2(&x5, &d).unwrap(), q(25, 3));
    let d = RamificationDatum {
        curves: vec![],
        isolated: vec![],
        group_order: 60,
    };
    assert_eq!(hurwitz_k2(&PicardLattice::quadric(), &d).unwrap(), q(2, 15));
}

#[test]
fn resolution_sums() {
    let a = SingularityType::a;
    assert_eq!(
        resolve_all(q(2, 15), &[a(1), a(1), a(2), st(3, 1), a(4), st(5, 1)]),
        q(-2, 1)
    );
    assert_eq!(
        resolve_all(q(2, 15), &[a(1), a(1), a(2), st(3, 1), st(5, 2), st(5, 2)]),
        q(-1, 1)
    );
    let c31 = st(3, 1);
    assert_eq!(resolve_all(q(4, 3), &[c31, c31, c31, c31, a(2)]), q(0, 1));
}

#[test]
fn configurations() {
    let c = dp1_2a4_configuration().unwrap();
    let stars = ["star1", "star2", "star3", "star4"];
    let sharps = ["sharp1", "sharp2", "sharp3", "sharp4"];
    let out = c
        .contract_sequence(&stars)
        .unwrap()
        .contract_sequence(&sharps)
        .unwrap();
    assert_eq!(out.k2, q(9, 1));
    assert_eq!(c.contract_sequence::<&str>(&[]).unwrap(), c);
    assert!(c.contract("m1").is_err());
}

#[test]
fn product_quotients() {
    let a = SingularityType::a;
    let mut want = vec![a(1), a(1), a(2), st(3, 1), a(4), st(5, 1)];
    want.sort();
    let got = p1xp1_quotient_singularities(Polyhedral::A5, Pairing::Diagonal).unwrap();
    assert_eq!(got.singularities, want);
    let mut want = vec![a(1), a(1), a(2), st(3, 1), st(5, 2), st(5, 2)];
    want.sort();
    let got = p1xp1_quotient_singularities(Polyhedral::A5, Pairing::Twisted).unwrap();
    assert_eq!(got.singularities, want);
    let got = p1xp1_quotient_singularities(Polyhedral::Dihedral(2), Pairing::Diagonal).unwrap();
    assert_eq!(got.singularities, vec![a(1); 6]);
}

#[test]
fn diophantine() {
    let x = PicardLattice::del_pezzo(4).unwrap();
    let mut got: Vec<String> = dp4c3_invariant_zero_curves()
        .iter()
        .map(|c| x.name(c))
        .collect();
    got.sort();
    assert_eq!(got, ["2L-E1-E2-E3-E4", "2L-E1-E2-E3-E5", "L-E4", "L-E5"]);
    assert!(dp4c3_solutions(0).iter().all(|s| s.0 >= 1));
}

#[test]
fn replays() {
    let r = replay("dp5-a5").unwrap();
    assert_eq!((r.k2_resolved, r.descriptor.as_str()), (q(8, 1), "F3"));
    let r = replay("dp4-c2").unwrap();
    assert_eq!((r.k2_quotient, r.k2_final), (q(4, 1), q(8, 1)));
    assert_eq!(replay("dp4-i1234-2").unwrap().k2_quotient, q(9, 1));
    for id in CATALOGUE {
        let r = replay(id).unwrap();
        assert!(r.passed(), "{id}: {:?}", r.failures());
    }
    assert!(replay("dp3-none").is_err());
}
