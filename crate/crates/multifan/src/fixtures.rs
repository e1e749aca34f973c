//! Shared desk-scale fixtures: the unit square, the standard 2-simplex,
//! the right triangle with a singular normal cone, a weighted rank-1
//! multi-fan, and the unit cube. The verify subcommands and the test
//! suites both run over these.

use crate::cohomology::XiClass;
use crate::fan::SimplicialMultiFan;
use crate::polytope::HRepPolytope;
use crate::rat::{rat, Int};

fn iv(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Unit square `[0,1]^2`: facets x<=1, y<=1, -x<=0, -y<=0.
pub fn square_polytope() -> HRepPolytope {
    HRepPolytope::new(
        2,
        vec![
            (iv(&[1, 0]), rat(1)),
            (iv(&[0, 1]), rat(1)),
            (iv(&[-1, 0]), rat(0)),
            (iv(&[0, -1]), rat(0)),
        ],
    )
    .unwrap()
}

pub fn square_fan() -> SimplicialMultiFan {
    square_polytope().normal_fan().unwrap().0
}

pub fn square_xi() -> XiClass {
    XiClass::new(square_polytope().normal_fan().unwrap().1)
}

/// Standard 2-simplex: x>=0, y>=0, x+y<=1.
pub fn simplex_polytope() -> HRepPolytope {
    HRepPolytope::new(
        2,
        vec![
            (iv(&[-1, 0]), rat(0)),
            (iv(&[0, -1]), rat(0)),
            (iv(&[1, 1]), rat(1)),
        ],
    )
    .unwrap()
}

pub fn simplex_fan() -> SimplicialMultiFan {
    simplex_polytope().normal_fan().unwrap().0
}

pub fn simplex_xi() -> XiClass {
    XiClass::new(simplex_polytope().normal_fan().unwrap().1)
}

/// Triangle with vertices (0,0), (2,0), (0,1); the normal cone at (0,1)
/// has multiplicity two.
pub fn triangle_polytope() -> HRepPolytope {
    HRepPolytope::new(
        2,
        vec![
            (iv(&[-1, 0]), rat(0)),
            (iv(&[0, -1]), rat(0)),
            (iv(&[1, 2]), rat(2)),
        ],
    )
    .unwrap()
}

pub fn triangle_fan() -> SimplicialMultiFan {
    triangle_polytope().normal_fan().unwrap().0
}

pub fn triangle_xi() -> XiClass {
    XiClass::new(triangle_polytope().normal_fan().unwrap().1)
}

/// The projective-plane fan with edges (1,0), (0,1), (-1,-1).
pub fn p2_fan() -> SimplicialMultiFan {
    SimplicialMultiFan::new(
        2,
        vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, -1])],
        vec![(vec![0, 1], 1), (vec![1, 2], 1), (vec![0, 2], 1)],
    )
    .unwrap()
}

/// Rank-1 multi-fan covering the line twice: edges +1 and -1, both cones
/// with weight 2.
pub fn mf1() -> SimplicialMultiFan {
    SimplicialMultiFan::new(
        1,
        vec![iv(&[1]), iv(&[-1])],
        vec![(vec![0], 2), (vec![1], 2)],
    )
    .unwrap()
}

pub fn mf1_xi() -> XiClass {
    XiClass::new(vec![rat(1), rat(1)])
}

/// The projective-line fan: edges +1 and -1 with unit weights.
pub fn p1_fan() -> SimplicialMultiFan {
    SimplicialMultiFan::new(
        1,
        vec![iv(&[1]), iv(&[-1])],
        vec![(vec![0], 1), (vec![1], 1)],
    )
    .unwrap()
}

/// Unit cube `[0,1]^3`.
pub fn cube_polytope() -> HRepPolytope {
    HRepPolytope::new(
        3,
        vec![
            (iv(&[1, 0, 0]), rat(1)),
            (iv(&[0, 1, 0]), rat(1)),
            (iv(&[0, 0, 1]), rat(1)),
            (iv(&[-1, 0, 0]), rat(0)),
            (iv(&[0, -1, 0]), rat(0)),
            (iv(&[0, 0, -1]), rat(0)),
        ],
    )
    .unwrap()
}

pub fn cube_fan() -> SimplicialMultiFan {
    cube_polytope().normal_fan().unwrap().0
}

pub fn cube_xi() -> XiClass {
    XiClass::new(cube_polytope().normal_fan().unwrap().1)
}
