//! Rank-three coverage: the unit cube end to end, plus a singular
//! three-dimensional cone subdivision. Everything at rank two is already
//! covered by the unit tests; these exercise the face parametrization,
//! volume recursion and series windows one dimension up.

use multifan::cohomology::{spanning_set, XiClass};
use multifan::dh::{count_via_todd, ehrhart, rigidity_check, todd_class, volume, MultiPolytope};
use multifan::fixtures;
use multifan::morelli::{
    mu_todd_cone, sample_generic_e, sample_generic_e_for_cones, theorem_main_sides,
    verify_corollary_main, verify_mu_additivity, verify_td_additivity,
};
use multifan::rat::{rat, Int, Rat};
use multifan::Simplex;

fn iv(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

#[test]
fn cube_counts_on_every_face() {
    let poly = fixtures::cube_polytope();
    let (fan, levels) = poly.normal_fan().unwrap();
    let xi = XiClass::new(levels);
    let po = MultiPolytope::new(&fan, xi.clone()).unwrap();
    for k in fan.all_faces() {
        let scanned = po.count_points(k).unwrap();
        let brute = poly.brute_count_face(k).unwrap();
        assert_eq!(scanned, brute, "face {k}");
        let todd = count_via_todd(&fan, &xi, k).unwrap();
        assert_eq!(todd, rat(scanned), "face {k}");
    }
    assert_eq!(po.count_points(&Simplex::empty()).unwrap(), 8);
}

#[test]
fn cube_ehrhart_and_volumes() {
    let poly = fixtures::cube_polytope();
    let (fan, levels) = poly.normal_fan().unwrap();
    let xi = XiClass::new(levels);
    assert_eq!(
        ehrhart(&fan, &xi).unwrap(),
        vec![rat(1), rat(3), rat(3), rat(1)]
    );
    for k in fan.all_faces() {
        assert_eq!(
            volume(&fan, &xi, k).unwrap(),
            poly.face_volume_geometric(k).unwrap(),
            "face {k}"
        );
    }
}

#[test]
fn cube_rigidity() {
    let fan = fixtures::cube_fan();
    assert_eq!(fan.todd_genus().unwrap(), 1);
    assert!(rigidity_check(&fan, 3).unwrap());
}

#[test]
fn cube_decomposition_identities() {
    let fan = fixtures::cube_fan();
    let tt = todd_class(&fan, 3).unwrap();
    let xi = XiClass::from_i64(&[2, 1, 3, 0, -1, 1]);
    for k in 1..=3usize {
        let e = sample_generic_e(&fan, k, 0);
        // the Todd component of each degree decomposes over the faces
        let sides = theorem_main_sides(&fan, &tt.degree_part(k), &xi, &e).unwrap();
        assert!(sides.holds(), "k={k} residual {}", sides.residual());
        // and a few spanning classes reduce to zero in the quotient
        for x in spanning_set(&fan, k).iter().step_by(7) {
            assert!(verify_corollary_main(&fan, x, &e).unwrap(), "k={k}");
        }
    }
}

#[test]
fn singular_three_dimensional_subdivision_is_additive() {
    // cone on e1, e2, (1,1,2) has multiplicity two; star it at (1,1,1)
    let parent = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 2])];
    let hub = iv(&[1, 1, 1]);
    let children = vec![
        vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), hub.clone()],
        vec![iv(&[1, 0, 0]), hub.clone(), iv(&[1, 1, 2])],
        vec![iv(&[0, 1, 0]), hub.clone(), iv(&[1, 1, 2])],
    ];
    let all: Vec<Vec<Vec<Int>>> = std::iter::once(parent.clone())
        .chain(children.iter().cloned())
        .collect();
    for seed in 0..2u64 {
        let e = sample_generic_e_for_cones(3, &all, 3, seed);
        assert!(verify_mu_additivity(&parent, &children, &e).unwrap());
        let lhs = mu_todd_cone(&parent, &e).unwrap();
        let rhs: Rat = children
            .iter()
            .map(|c| mu_todd_cone(c, &e).unwrap())
            .sum();
        assert_eq!(lhs, rhs);
    }
    let v = vec![rat(2), rat(3), rat(7)];
    for order in 0..=2 {
        assert!(verify_td_additivity(&parent, &children, &v, order).unwrap());
    }
}
