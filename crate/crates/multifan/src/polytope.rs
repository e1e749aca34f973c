//! Simple lattice polytopes in H-representation, their normal fans, and
//! the brute-force oracles: direct lattice-point counts and triangulated
//! lattice-normalized volumes.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{Simplex, SimplicialMultiFan};
use crate::matrix::RatMat;
use crate::rat::{dot_int, int_to_rat_vec, rat_ceil, rat_floor, Int, Rat};
use crate::snf::{int_kernel_basis, IntMat};

/// `P = { u : <u, v_i> <= d_i }` with primitive integer normals.
#[derive(Debug, Clone)]
pub struct HRepPolytope {
    rank: usize,
    facets: Vec<(Vec<Int>, Rat)>,
}

/// A vertex with the facets active at it.
#[derive(Debug, Clone)]
pub struct VertexData {
    pub point: Vec<Rat>,
    pub incident: Simplex,
}

impl HRepPolytope {
    pub fn new(rank: usize, facets: Vec<(Vec<Int>, Rat)>) -> Result<Self> {
        for (normal, _) in &facets {
            if normal.len() != rank {
                return Err(Error::DimensionMismatch);
            }
            if normal.iter().all(Zero::is_zero) {
                return Err(Error::Internal("zero facet normal".into()));
            }
            let mut g = Int::zero();
            for x in normal {
                g = num::integer::gcd(g, x.clone());
            }
            if !g.is_one() {
                return Err(Error::Internal("facet normal must be primitive".into()));
            }
        }
        Ok(HRepPolytope { rank, facets })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn facets(&self) -> &[(Vec<Int>, Rat)] {
        &self.facets
    }

    /// Enumerate the vertices by solving every n-subset of facet
    /// equalities and keeping the feasible solutions. Fails when some
    /// vertex lies on more than n facets.
    pub fn vertices(&self) -> Result<Vec<VertexData>> {
        let n = self.rank;
        let m = self.facets.len();
        let mut found: BTreeSet<Vec<Rat>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut subset: Vec<usize> = (0..n).collect();
        if m < n {
            return Err(Error::NotPolytope);
        }
        loop {
            let rows: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&i| int_to_rat_vec(&self.facets[i].0))
                .collect();
            let rhs: Vec<Rat> = subset.iter().map(|&i| self.facets[i].1.clone()).collect();
            let mat = RatMat::from_rows(rows);
            if mat.rank() == n {
                if let Some(u) = mat.solve(&rhs) {
                    if self.contains(&u) && !found.contains(&u) {
                        let active: Vec<usize> = (0..m)
                            .filter(|&i| dot_int(&u, &self.facets[i].0) == self.facets[i].1)
                            .collect();
                        if active.len() > n {
                            return Err(Error::NotSimple);
                        }
                        found.insert(u.clone());
                        out.push(VertexData {
                            point: u,
                            incident: Simplex::new(active),
                        });
                    }
                }
            }
            // next n-subset of 0..m in lexicographic order
            let mut i = n;
            loop {
                if i == 0 {
                    return if out.is_empty() {
                        Err(Error::NotPolytope)
                    } else {
                        Ok(out)
                    };
                }
                i -= 1;
                if subset[i] + (n - i) < m {
                    subset[i] += 1;
                    for j in i + 1..n {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    pub fn contains(&self, u: &[Rat]) -> bool {
        self.facets
            .iter()
            .all(|(normal, d)| dot_int(u, normal) <= *d)
    }

    /// The normal fan: one edge per facet, one unit-weight cone per
    /// vertex, together with the support levels of the facets. Errors on
    /// non-simple, unbounded or redundant input.
    pub fn normal_fan(&self) -> Result<(SimplicialMultiFan, Vec<Rat>)> {
        let verts = self.vertices()?;
        let cones: Vec<(Vec<usize>, i64)> = verts
            .iter()
            .map(|v| (v.incident.ids().to_vec(), 1))
            .collect();
        let edges: Vec<Vec<Int>> = self.facets.iter().map(|(v, _)| v.clone()).collect();
        let fan = SimplicialMultiFan::new(self.rank, edges, cones)?;
        if !fan.is_complete() {
            return Err(Error::NotPolytope);
        }
        let xi = self.facets.iter().map(|(_, d)| d.clone()).collect();
        Ok((fan, xi))
    }

    fn bounding_box(&self, nu: i64) -> Result<Vec<(Int, Int)>> {
        let verts = self.vertices()?;
        let nu = Rat::from_integer(Int::from(nu));
        Ok((0..self.rank)
            .map(|c| {
                let coords: Vec<Rat> = verts.iter().map(|v| &v.point[c] * &nu).collect();
                let lo = coords.iter().map(rat_floor).min().unwrap();
                let hi = coords.iter().map(rat_ceil).max().unwrap();
                (lo, hi)
            })
            .collect())
    }

    fn scan<F>(&self, nu: i64, mut visit: F) -> Result<()>
    where
        F: FnMut(&[Rat]),
    {
        let boxes = self.bounding_box(nu)?;
        let mut u: Vec<Int> = boxes.iter().map(|(lo, _)| lo.clone()).collect();
        if boxes.iter().any(|(lo, hi)| lo > hi) {
            return Ok(());
        }
        loop {
            let pt = int_to_rat_vec(&u);
            visit(&pt);
            let mut c = self.rank;
            loop {
                if c == 0 {
                    return Ok(());
                }
                c -= 1;
                u[c] += 1;
                if u[c] <= boxes[c].1 {
                    break;
                }
                u[c] = boxes[c].0.clone();
            }
        }
    }

    /// Exact number of lattice points of the nu-fold dilate.
    pub fn brute_count(&self, nu: i64) -> Result<i64> {
        let nu_rat = Rat::from_integer(Int::from(nu));
        let mut count = 0;
        self.scan(nu, |u| {
            let inside = self
                .facets
                .iter()
                .all(|(normal, d)| dot_int(u, normal) <= d * &nu_rat);
            if inside {
                count += 1;
            }
        })?;
        Ok(count)
    }

    /// Lattice points of `P` lying on the closed face cut out by the
    /// facets in `j`.
    pub fn brute_count_face(&self, j: &Simplex) -> Result<i64> {
        let mut count = 0;
        self.scan(1, |u| {
            let on_face = j
                .ids()
                .iter()
                .all(|&i| dot_int(u, &self.facets[i].0) == self.facets[i].1);
            if on_face && self.contains(u) {
                count += 1;
            }
        })?;
        Ok(count)
    }

    /// Coefficients `a_0 ... a_n` of the degree-n count polynomial, from
    /// the counts at nu = 1 ... n+1.
    pub fn ehrhart_interpolate(&self) -> Result<Vec<Rat>> {
        let n = self.rank;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for nu in 1..=(n as i64 + 1) {
            let count = self.brute_count(nu)?;
            let nu_rat = Rat::from_integer(Int::from(nu));
            let mut pow = vec![Rat::one(); n + 1];
            for k in (0..n).rev() {
                pow[k] = &pow[k + 1] * &nu_rat;
            }
            rows.push(pow);
            rhs.push(Rat::from_integer(Int::from(count)));
        }
        RatMat::from_rows(rows)
            .solve(&rhs)
            .ok_or_else(|| Error::Internal("interpolation system is singular".into()))
    }

    /// Lattice-normalized volume of the face cut out by the facets in
    /// `j`, by pyramid decomposition over its own facets. Vertices count
    /// as 1.
    pub fn face_volume_geometric(&self, j: &Simplex) -> Result<Rat> {
        let verts = self.vertices()?;
        let on_face: Vec<&VertexData> = verts
            .iter()
            .filter(|v| j.is_subset_of(&v.incident))
            .collect();
        if on_face.is_empty() {
            return Err(Error::EmptyFace);
        }
        let d = self.rank - j.len();
        if d == 0 {
            return Ok(Rat::one());
        }
        let rows = IntMat::from_rows_cols(
            j.ids().iter().map(|&i| self.facets[i].0.clone()).collect(),
            self.rank,
        );
        let dirs = int_kernel_basis(&rows);
        debug_assert_eq!(dirs.len(), d);
        let basis = IntMat::from_cols(dirs);
        let u0 = &on_face[0].point;
        let mut constraints = Vec::new();
        for (i, (normal, offset)) in self.facets.iter().enumerate() {
            if j.contains(i) {
                continue;
            }
            let mapped: Vec<Rat> = (0..d)
                .map(|c| dot_int(&int_to_rat_vec(&basis.col(c)), normal))
                .collect();
            let shift = offset - dot_int(u0, normal);
            if mapped.iter().all(Zero::is_zero) {
                if shift.is_negative() {
                    return Err(Error::EmptyFace);
                }
                continue;
            }
            constraints.push(crate::rat::normalize_halfspace(&mapped, &shift)?);
        }
        constraints.sort();
        constraints.dedup();
        volume_hpolytope(d, &constraints)
    }
}

/// Lattice-normalized volume of `{ c : <c, a_i> <= b_i }` with primitive
/// integer normals, by recursive pyramid decomposition: the height of a
/// pyramid over a facet with primitive normal `a` at offset `b` is
/// `b - <apex, a>` in lattice units.
pub fn volume_hpolytope(d: usize, constraints: &[(Vec<Int>, Rat)]) -> Result<Rat> {
    if d == 0 {
        return Ok(Rat::one());
    }
    let poly = HRepFacetShell {
        d,
        constraints: constraints.to_vec(),
    };
    let verts = poly.vertices();
    if verts.is_empty() {
        return Ok(Rat::zero());
    }
    if d == 1 {
        let lo = verts.iter().map(|v| v[0].clone()).min().unwrap();
        let hi = verts.iter().map(|v| v[0].clone()).max().unwrap();
        return Ok(hi - lo);
    }
    let apex = &verts[0];
    let mut total = Rat::zero();
    for (a, b) in constraints {
        let height = b - dot_int(apex, a);
        if height.is_zero() {
            continue;
        }
        let facet_verts: Vec<&Vec<Rat>> = verts
            .iter()
            .filter(|v| dot_int(v, a) == *b)
            .collect();
        if facet_verts.len() < d {
            continue;
        }
        let dirs = int_kernel_basis(&IntMat::from_rows(vec![a.clone()]));
        let basis = IntMat::from_cols(dirs);
        let y0 = facet_verts[0];
        let mut sub = Vec::new();
        for (a2, b2) in constraints {
            if a2 == a && b2 == b {
                continue;
            }
            let mapped: Vec<Rat> = (0..d - 1)
                .map(|c| dot_int(&int_to_rat_vec(&basis.col(c)), a2))
                .collect();
            if mapped.iter().all(Zero::is_zero) {
                continue;
            }
            let shift = b2 - dot_int(y0, a2);
            sub.push(crate::rat::normalize_halfspace(&mapped, &shift)?);
        }
        sub.sort();
        sub.dedup();
        let fv = volume_hpolytope(d - 1, &sub)?;
        total += height.abs() * fv;
    }
    Ok(total / Rat::from_integer(Int::from(d as i64)))
}

struct HRepFacetShell {
    d: usize,
    constraints: Vec<(Vec<Int>, Rat)>,
}

impl HRepFacetShell {
    fn vertices(&self) -> Vec<Vec<Rat>> {
        let n = self.d;
        let m = self.constraints.len();
        if m < n {
            return Vec::new();
        }
        let mut found = BTreeSet::new();
        let mut subset: Vec<usize> = (0..n).collect();
        loop {
            let rows: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&i| int_to_rat_vec(&self.constraints[i].0))
                .collect();
            let rhs: Vec<Rat> = subset
                .iter()
                .map(|&i| self.constraints[i].1.clone())
                .collect();
            let mat = RatMat::from_rows(rows);
            if mat.rank() == n {
                if let Some(u) = mat.solve(&rhs) {
                    let feasible = self
                        .constraints
                        .iter()
                        .all(|(a, b)| dot_int(&u, a) <= *b);
                    if feasible {
                        found.insert(u);
                    }
                }
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return found.into_iter().collect();
                }
                i -= 1;
                if subset[i] + (n - i) < m {
                    subset[i] += 1;
                    for j in i + 1..n {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rat::{frac, rat};

    #[test]
    fn unit_square_normal_fan_and_levels() {
        let p = fixtures::square_polytope();
        let (fan, xi) = p.normal_fan().unwrap();
        assert_eq!(fan.face_counts(), vec![1, 4, 4]);
        assert!(fan.is_complete());
        assert_eq!(xi, vec![rat(1), rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn simplex_normal_fan_has_three_cones() {
        let p = fixtures::simplex_polytope();
        let (fan, _) = p.normal_fan().unwrap();
        assert_eq!(fan.face_counts(), vec![1, 3, 3]);
    }

    #[test]
    fn triangle_normal_fan_has_singular_vertex() {
        let p = fixtures::triangle_polytope();
        let (fan, _) = p.normal_fan().unwrap();
        let singular = (0..fan.n_cones())
            .find(|&ci| fan.group(ci).order == Int::from(2))
            .expect("one vertex has multiplicity two");
        assert_eq!(fan.cone(singular).0.ids(), [0, 2]);
    }

    #[test]
    fn non_simple_vertex_is_rejected() {
        // x <= 1, y <= 1, x + y <= 2 meet at one point
        let p = HRepPolytope::new(
            2,
            vec![
                (vec![Int::from(1), Int::from(0)], rat(1)),
                (vec![Int::from(0), Int::from(1)], rat(1)),
                (vec![Int::from(1), Int::from(1)], rat(2)),
                (vec![Int::from(-1), Int::from(0)], rat(0)),
                (vec![Int::from(0), Int::from(-1)], rat(0)),
            ],
        )
        .unwrap();
        assert_eq!(p.vertices().unwrap_err(), Error::NotSimple);
    }

    #[test]
    fn unbounded_region_is_not_a_polytope() {
        let p = HRepPolytope::new(
            2,
            vec![
                (vec![Int::from(-1), Int::from(0)], rat(0)),
                (vec![Int::from(0), Int::from(-1)], rat(0)),
            ],
        )
        .unwrap();
        assert!(matches!(p.normal_fan().unwrap_err(), Error::NotPolytope));
    }

    #[test]
    fn brute_counts_match_closed_forms() {
        let sq = fixtures::square_polytope();
        assert_eq!(sq.brute_count(1).unwrap(), 4);
        assert_eq!(sq.brute_count(2).unwrap(), 9);
        let sx = fixtures::simplex_polytope();
        assert_eq!(sx.brute_count(2).unwrap(), 6);
        let tr = fixtures::triangle_polytope();
        assert_eq!(tr.brute_count(1).unwrap(), 4);
    }

    #[test]
    fn ehrhart_interpolation_of_fixtures() {
        assert_eq!(
            fixtures::square_polytope().ehrhart_interpolate().unwrap(),
            vec![rat(1), rat(2), rat(1)]
        );
        assert_eq!(
            fixtures::simplex_polytope().ehrhart_interpolate().unwrap(),
            vec![frac(1, 2), frac(3, 2), rat(1)]
        );
        assert_eq!(
            fixtures::triangle_polytope().ehrhart_interpolate().unwrap(),
            vec![rat(1), rat(2), rat(1)]
        );
    }

    #[test]
    fn leading_interpolated_coefficient_is_one_for_fixtures() {
        for p in [
            fixtures::square_polytope(),
            fixtures::simplex_polytope(),
            fixtures::triangle_polytope(),
        ] {
            let a = p.ehrhart_interpolate().unwrap();
            assert_eq!(a.last().unwrap(), &rat(1));
        }
    }

    #[test]
    fn face_volumes_of_the_square() {
        let p = fixtures::square_polytope();
        assert_eq!(p.face_volume_geometric(&Simplex::empty()).unwrap(), rat(1));
        for i in 0..4 {
            assert_eq!(
                p.face_volume_geometric(&Simplex::new(vec![i])).unwrap(),
                rat(1)
            );
        }
        assert_eq!(
            p.face_volume_geometric(&Simplex::new(vec![0, 1])).unwrap(),
            rat(1)
        );
    }

    #[test]
    fn face_volumes_of_the_triangle() {
        let p = fixtures::triangle_polytope();
        assert_eq!(p.face_volume_geometric(&Simplex::empty()).unwrap(), rat(1));
        // bottom edge from (0,0) to (2,0) has lattice length 2
        assert_eq!(
            p.face_volume_geometric(&Simplex::new(vec![1])).unwrap(),
            rat(2)
        );
        // hypotenuse from (2,0) to (0,1) is primitive
        assert_eq!(
            p.face_volume_geometric(&Simplex::new(vec![2])).unwrap(),
            rat(1)
        );
        assert_eq!(
            p.face_volume_geometric(&Simplex::new(vec![0])).unwrap(),
            rat(1)
        );
    }

    #[test]
    fn empty_face_is_reported() {
        let p = fixtures::square_polytope();
        assert_eq!(
            p.face_volume_geometric(&Simplex::new(vec![0, 2])).unwrap_err(),
            Error::EmptyFace
        );
    }

    #[test]
    fn cube_volume_and_counts() {
        let p = fixtures::cube_polytope();
        assert_eq!(p.brute_count(1).unwrap(), 8);
        assert_eq!(p.brute_count(2).unwrap(), 27);
        assert_eq!(p.face_volume_geometric(&Simplex::empty()).unwrap(), rat(1));
        assert_eq!(
            p.ehrhart_interpolate().unwrap(),
            vec![rat(1), rat(3), rat(3), rat(1)]
        );
    }
}
