//! Multi-polytopes over a complete simplicial multi-fan: the
//! Duistermaat-Heckman function, lattice-point counts through the
//! half-integral shift, equivariant Todd classes, volumes, Ehrhart
//! coefficients and the rigidity of the Todd-class push-forward.

use num::{One, Signed, Zero};

use crate::cohomology::{p_star, pushforward_series, CohClass, XiClass};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::fan::{Simplex, SimplicialMultiFan};
use crate::mpoly::MultiPoly;
use crate::rat::{dot, frac, is_integer, rat_ceil, rat_floor, Int, Rat};
use crate::series::{todd_factor, LaurentSeries};
use crate::snf::{int_kernel_basis, quotient_group, IntMat};

/// A multi-fan together with support levels, one per edge.
pub struct MultiPolytope<'f> {
    pub fan: &'f SimplicialMultiFan,
    pub xi: XiClass,
}

/// One sampled value of the Duistermaat-Heckman function.
#[derive(Debug, Clone)]
pub struct DhfSample {
    pub point: Vec<Rat>,
    pub value: i64,
}

impl<'f> MultiPolytope<'f> {
    pub fn new(fan: &'f SimplicialMultiFan, xi: XiClass) -> Result<Self> {
        if xi.coeffs.len() != fan.n_edges() {
            return Err(Error::DimensionMismatch);
        }
        Ok(MultiPolytope { fan, xi })
    }

    /// Vertex of the multi-polytope at a maximal cone: the unique point
    /// paired to the support level along each of the cone's edges.
    pub fn vertex(&self, ci: usize) -> Vec<Rat> {
        self.xi.restrict(self.fan, ci)
    }

    pub fn is_t_cartier(&self) -> bool {
        self.xi.is_t_cartier(self.fan)
    }

    /// Offsets shifted by one half along every edge not in `k`, used to
    /// move the walls off the lattice.
    fn shifted(&self, k: &Simplex) -> MultiPolytope<'f> {
        let half = frac(1, 2);
        let coeffs = self
            .xi
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, d)| if k.contains(i) { d.clone() } else { d + &half })
            .collect();
        MultiPolytope {
            fan: self.fan,
            xi: XiClass::new(coeffs),
        }
    }

    /// Signed weighted cone count at `u` inside the affine slice of face
    /// `k`, using the generic direction `v` for the sign bookkeeping. The
    /// value does not depend on `v`.
    pub fn dhf_eval(&self, k: &Simplex, u: &[Rat], v: &[Rat]) -> Result<i64> {
        let fan = self.fan;
        if !fan.is_face(k.ids()) {
            return Err(Error::NotAFace);
        }
        for &j in k.ids() {
            if dot(u, &fan.edge_rat(j)) != self.xi.coeffs[j] {
                return Err(Error::Internal("point off the face slice".into()));
            }
        }
        if !fan.is_generic_vector(v) {
            return Err(Error::NonGenericVector);
        }
        for i in fan.link_edges(k) {
            if dot(u, &fan.edge_rat(i)) == self.xi.coeffs[i] {
                return Err(Error::PointOnHyperplane);
            }
        }
        let mut total = 0i64;
        for ci in fan.cones_containing(k) {
            let (s, w) = fan.cone(ci);
            let mut positives = 0usize;
            let mut inside = true;
            for &i in s.ids() {
                if k.contains(i) {
                    continue;
                }
                let p = fan.dual_pairing(ci, i, v);
                let margin = dot(u, &fan.edge_rat(i)) - &self.xi.coeffs[i];
                let coord = if p.is_positive() {
                    positives += 1;
                    margin
                } else {
                    -margin
                };
                if !coord.is_positive() {
                    inside = false;
                    break;
                }
            }
            if inside {
                let sign = if positives.is_multiple_of(2) { 1 } else { -1 };
                total += sign * w;
            }
        }
        Ok(total)
    }

    /// Lattice points of the face `k`, counted with the signs and weights
    /// of the Duistermaat-Heckman function of the half-shifted levels.
    pub fn count_points(&self, k: &Simplex) -> Result<i64> {
        let fan = self.fan;
        if !fan.is_complete() {
            return Err(Error::NotComplete);
        }
        if !self.is_t_cartier() {
            return Err(Error::NotTCartier);
        }
        if !fan.is_face(k.ids()) {
            return Err(Error::NotAFace);
        }
        let shifted = self.shifted(k);
        let cones = fan.cones_containing(k);
        let base = self.vertex(cones[0]);
        debug_assert!(base.iter().all(is_integer));
        let d = fan.rank() - k.len();
        let rows = IntMat::from_rows_cols(
            k.ids().iter().map(|&j| fan.edge(j).to_vec()).collect(),
            fan.rank(),
        );
        let dirs = int_kernel_basis(&rows);
        debug_assert_eq!(dirs.len(), d);
        let basis = IntMat::from_cols(dirs);
        let basis_rat = basis.to_rat();

        let mut boxes: Vec<(Int, Int)> = Vec::new();
        for c in 0..d {
            let mut lo: Option<Int> = None;
            let mut hi: Option<Int> = None;
            for &ci in &cones {
                let vert = shifted.vertex(ci);
                let diff: Vec<Rat> = vert.iter().zip(&base).map(|(a, b)| a - b).collect();
                let coords = basis_rat
                    .solve(&diff)
                    .ok_or_else(|| Error::Internal("vertex off the face slice".into()))?;
                let f = rat_floor(&coords[c]);
                let g = rat_ceil(&coords[c]);
                lo = Some(match lo {
                    None => f.clone(),
                    Some(x) => x.min(f.clone()),
                });
                hi = Some(match hi {
                    None => g.clone(),
                    Some(x) => x.max(g.clone()),
                });
            }
            boxes.push((lo.unwrap() - 1, hi.unwrap() + 1));
        }

        let v = fan.generic_vector().to_vec();
        let mut total = 0i64;
        let mut coord: Vec<Int> = boxes.iter().map(|(lo, _)| lo.clone()).collect();
        loop {
            let mut u = base.clone();
            for (c, t) in coord.iter().enumerate() {
                let t = Rat::from_integer(t.clone());
                for r in 0..fan.rank() {
                    u[r] += &t * &basis_rat[(r, c)];
                }
            }
            total += shifted.dhf_eval(k, &u, &v)?;
            let mut c = d;
            loop {
                if c == 0 {
                    return Ok(total);
                }
                c -= 1;
                coord[c] += 1;
                if coord[c] <= boxes[c].1 {
                    break;
                }
                coord[c] = boxes[c].0.clone();
            }
        }
    }

    /// Sample the Duistermaat-Heckman function on a grid of half-integral
    /// points around the vertices, for the support and independence
    /// checks.
    pub fn dhf_samples(&self, margin: i64, v: &[Rat]) -> Result<Vec<DhfSample>> {
        let fan = self.fan;
        let n = fan.rank();
        let verts: Vec<Vec<Rat>> = (0..fan.n_cones()).map(|ci| self.vertex(ci)).collect();
        let mut boxes = Vec::new();
        for c in 0..n {
            let lo = verts.iter().map(|u| rat_floor(&u[c])).min().unwrap() - margin;
            let hi = verts.iter().map(|u| rat_ceil(&u[c])).max().unwrap() + margin;
            boxes.push((lo, hi));
        }
        let half = frac(1, 2);
        let mut out = Vec::new();
        let mut coord: Vec<Int> = boxes.iter().map(|(lo, _)| lo.clone()).collect();
        loop {
            let point: Vec<Rat> = coord
                .iter()
                .map(|t| Rat::from_integer(t.clone()) + &half)
                .collect();
            match self.dhf_eval(&Simplex::empty(), &point, v) {
                Ok(value) => out.push(DhfSample { point, value }),
                Err(Error::PointOnHyperplane) => {}
                Err(e) => return Err(e),
            }
            let mut c = n;
            loop {
                if c == 0 {
                    return Ok(out);
                }
                c -= 1;
                coord[c] += 1;
                if coord[c] <= boxes[c].1 {
                    break;
                }
                coord[c] = boxes[c].0.clone();
            }
        }
    }
}

fn todd_edge_coeffs(chi: &CycNum, order: usize) -> Result<Vec<CycNum>> {
    // x / (1 - chi e^{-x}) as a power series in x, degrees 0..=order.
    let f = todd_factor(&Rat::one(), chi, order as i64)?.shift(1);
    (0..=order as i64).map(|d| f.coeff(d)).collect()
}

/// The equivariant Todd class restricted to a face: the sum over the
/// multiplicity groups of all maximal cones containing `k` of the product
/// of Todd factors over the link edges of `k`, Stanley-Reisner reduced.
/// The group sum collapses every coefficient to a rational number.
pub fn todd_class_k(
    fan: &SimplicialMultiFan,
    k: &Simplex,
    order: usize,
) -> Result<CohClass> {
    let link = fan.link_edges(k);
    let g_set = fan.group_union(k)?;
    let m = fan.n_edges();
    let mut acc = MultiPoly::zero(m, order);
    for g in &g_set {
        let mut p = MultiPoly::one(m, order);
        for &i in &link {
            let coeffs = todd_edge_coeffs(&g.chi(i), order)?;
            p = p.mul_univariate(i, &coeffs, |supp| fan.is_face(supp));
        }
        acc = acc.add(&p);
    }
    let mut terms = Vec::new();
    for (exps, c) in acc.terms() {
        let r = c
            .as_rational()
            .map_err(|_| Error::Internal("todd class coefficient not rational".into()))?;
        terms.push((exps.clone(), r));
    }
    Ok(CohClass::from_terms(fan, terms, Some(order)))
}

/// The equivariant Todd class of the multi-fan.
pub fn todd_class(fan: &SimplicialMultiFan, order: usize) -> Result<CohClass> {
    todd_class_k(fan, &Simplex::empty(), order)
}

/// Lattice-point count of the face `k` through the Todd class and the
/// push-forward; agrees with `count_points` on every complete multi-fan
/// with T-Cartier levels.
pub fn count_via_todd(fan: &SimplicialMultiFan, xi: &XiClass, k: &Simplex) -> Result<Rat> {
    if !xi.is_t_cartier(fan) {
        return Err(Error::NotTCartier);
    }
    let n = fan.rank();
    let tk = todd_class_k(fan, k, n)?;
    let xk = CohClass::face_monomial(fan, k)?;
    p_star(fan, &xk.mul(&tk, fan), xi)
}

/// Lattice-normalized volume of the face `k`: the multiplicity of the
/// face times the push-forward of `e^xi x_K`.
pub fn volume(fan: &SimplicialMultiFan, xi: &XiClass, k: &Simplex) -> Result<Rat> {
    let xk = CohClass::face_monomial(fan, k)?;
    let gens: Vec<Vec<Int>> = k.ids().iter().map(|&i| fan.edge(i).to_vec()).collect();
    let h = quotient_group(&gens, fan.rank())?;
    Ok(Rat::from_integer(h.order) * p_star(fan, &xk, xi)?)
}

/// Ehrhart coefficients `a_0 ... a_n` of the count polynomial of the
/// dilates of the multi-polytope, through the graded pairing of powers of
/// `xi` against the graded pieces of the Todd class.
pub fn ehrhart(fan: &SimplicialMultiFan, xi: &XiClass) -> Result<Vec<Rat>> {
    let n = fan.rank();
    let tt = todd_class(fan, n)?;
    let xi_class = xi.to_class(fan);
    let zero = XiClass::zero(fan);
    let mut out = Vec::new();
    let mut factorial = vec![Rat::one(); n + 1];
    for j in 1..=n {
        factorial[j] = &factorial[j - 1] * Rat::from_integer(Int::from(j as i64));
    }
    for k in 0..=n {
        let tk = tt.degree_part(k);
        let pow = xi_class.pow(n - k, fan).scale(&factorial[n - k].recip());
        out.push(p_star(fan, &pow.mul(&tk, fan), &zero)?);
    }
    Ok(out)
}

/// The push-forward of the Todd class is the constant Todd genus: all
/// Laurent coefficients vanish except degree zero, for every generic
/// direction. Checked through degree `order` at three seeded directions.
pub fn rigidity_check(fan: &SimplicialMultiFan, order: usize) -> Result<bool> {
    let td = Rat::from_integer(Int::from(fan.todd_genus()?));
    let tt = todd_class(fan, fan.rank() + order)?;
    let zero = XiClass::zero(fan);
    for seed in 0..3 {
        let v = fan.sample_generic_vector(seed);
        let series = pushforward_series(fan, &tt, &zero, &v, order as i64)?;
        for d in series.min_deg()..=(order as i64) {
            let c = series.coeff(d)?.as_rational()?;
            let expect = if d == 0 { td.clone() } else { Rat::zero() };
            if c != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Localized Laurent expansion of the non-equivariant Todd series of a
/// list of full-dimensional cones: each cone contributes the group
/// average of the product of its Todd factors with the dual pairings
/// against `v` as coefficients.
pub fn todd_series_of_cones(
    cones: &[Vec<Vec<Int>>],
    v: &[Rat],
    order: i64,
) -> Result<LaurentSeries> {
    let n = v.len();
    let hi_factor = order + n as i64;
    let mut total = LaurentSeries::zero(-(n as i64), order);
    for vectors in cones {
        if vectors.len() != n {
            return Err(Error::DimensionMismatch);
        }
        let rats: Vec<Vec<Rat>> = vectors
            .iter()
            .map(|w| crate::rat::int_to_rat_vec(w))
            .collect();
        let duals = crate::matrix::dual_basis(&rats)?;
        let group = quotient_group(vectors, n)?;
        let mut cone_sum = LaurentSeries::zero(-(n as i64), order);
        for coords in &group.lift_coords {
            let mut prod = LaurentSeries::one(hi_factor);
            for (pos, coord) in coords.iter().enumerate() {
                let c = dot(duals.row(pos), v);
                if c.is_zero() {
                    return Err(Error::NonGenericVector);
                }
                let chi = crate::cyclo::root_of_unity(coord);
                let f = todd_factor(&c, &chi, hi_factor)?;
                prod = prod.mul(&f);
            }
            cone_sum = cone_sum.add(&prod.truncate_to(order)?);
        }
        let scale = CycNum::from_rat(Rat::from_integer(group.order).recip());
        total = total.add(&cone_sum.scale(&scale));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rat::rat;

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn half_point(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| frac(x, 2)).collect()
    }

    #[test]
    fn dhf_is_the_indicator_of_the_square() {
        let fan = fixtures::square_fan();
        let po = MultiPolytope::new(&fan, fixtures::square_xi()).unwrap();
        let v = fan.generic_vector().to_vec();
        let o = Simplex::empty();
        assert_eq!(po.dhf_eval(&o, &half_point(&[1, 1]), &v).unwrap(), 1);
        assert_eq!(po.dhf_eval(&o, &rv(&[2, 2]), &v).unwrap(), 0);
        assert_eq!(po.dhf_eval(&o, &half_point(&[-1, 1]), &v).unwrap(), 0);
    }

    #[test]
    fn dhf_of_the_doubled_line() {
        let fan = fixtures::mf1();
        let po = MultiPolytope::new(&fan, fixtures::mf1_xi()).unwrap();
        let v = fan.generic_vector().to_vec();
        assert_eq!(
            po.dhf_eval(&Simplex::empty(), &half_point(&[1]), &v).unwrap(),
            2
        );
        assert_eq!(
            po.dhf_eval(&Simplex::empty(), &rv(&[3]), &v).unwrap(),
            0
        );
    }

    #[test]
    fn dhf_rejects_wall_points() {
        let fan = fixtures::square_fan();
        let po = MultiPolytope::new(&fan, fixtures::square_xi()).unwrap();
        let v = fan.generic_vector().to_vec();
        assert_eq!(
            po.dhf_eval(&Simplex::empty(), &[rat(1), frac(1, 2)], &v)
                .unwrap_err(),
            Error::PointOnHyperplane
        );
    }

    #[test]
    fn dhf_is_independent_of_the_direction() {
        let fan = fixtures::triangle_fan();
        let po = MultiPolytope::new(&fan, fixtures::triangle_xi()).unwrap();
        let v0 = fan.sample_generic_vector(0);
        let reference = po.dhf_samples(1, &v0).unwrap();
        for seed in 1..5 {
            let v = fan.sample_generic_vector(seed);
            let other = po.dhf_samples(1, &v).unwrap();
            assert_eq!(reference.len(), other.len());
            for (a, b) in reference.iter().zip(&other) {
                assert_eq!(a.point, b.point);
                assert_eq!(a.value, b.value, "at {:?}", a.point);
            }
        }
    }

    #[test]
    fn dhf_vanishes_outside_the_vertex_hull() {
        for (fan, xi) in [
            (fixtures::square_fan(), fixtures::square_xi()),
            (fixtures::triangle_fan(), fixtures::triangle_xi()),
        ] {
            let po = MultiPolytope::new(&fan, xi).unwrap();
            let v = fan.generic_vector().to_vec();
            let verts: Vec<Vec<Rat>> = (0..fan.n_cones()).map(|ci| po.vertex(ci)).collect();
            for s in po.dhf_samples(2, &v).unwrap() {
                let outside_box = (0..fan.rank()).any(|c| {
                    verts.iter().all(|u| s.point[c] > u[c])
                        || verts.iter().all(|u| s.point[c] < u[c])
                });
                if outside_box {
                    assert_eq!(s.value, 0, "at {:?}", s.point);
                }
            }
        }
    }

    #[test]
    fn count_points_of_the_fixtures() {
        let fan = fixtures::square_fan();
        let po = MultiPolytope::new(&fan, fixtures::square_xi()).unwrap();
        assert_eq!(po.count_points(&Simplex::empty()).unwrap(), 4);

        let fan = fixtures::triangle_fan();
        let po = MultiPolytope::new(&fan, fixtures::triangle_xi()).unwrap();
        assert_eq!(po.count_points(&Simplex::empty()).unwrap(), 4);

        let fan = fixtures::mf1();
        let po = MultiPolytope::new(&fan, fixtures::mf1_xi()).unwrap();
        assert_eq!(po.count_points(&Simplex::empty()).unwrap(), 6);
    }

    #[test]
    fn count_points_matches_brute_force_on_faces() {
        for (p, fanxi) in [
            (fixtures::square_polytope(), fixtures::square_polytope().normal_fan().unwrap()),
            (fixtures::simplex_polytope(), fixtures::simplex_polytope().normal_fan().unwrap()),
            (fixtures::triangle_polytope(), fixtures::triangle_polytope().normal_fan().unwrap()),
        ] {
            let (fan, xi) = fanxi;
            let po = MultiPolytope::new(&fan, XiClass::new(xi)).unwrap();
            for k in fan.all_faces() {
                let expect = p.brute_count_face(k).unwrap();
                assert_eq!(po.count_points(k).unwrap(), expect, "face {k}");
            }
        }
    }

    #[test]
    fn todd_class_of_the_square() {
        let fan = fixtures::square_fan();
        let tt = todd_class(&fan, 2).unwrap();
        assert_eq!(tt.degree_part(0), CohClass::one(&fan).scale(&rat(1)));
        let t1 = tt.degree_part(1);
        for i in 0..4 {
            let mut m = vec![0u32; 4];
            m[i] = 1;
            let c = t1.terms().find(|(mm, _)| **mm == m).unwrap().1.clone();
            assert_eq!(c, frac(1, 2));
        }
    }

    #[test]
    fn todd_class_of_the_triangle_reflects_the_multiplicity() {
        let fan = fixtures::triangle_fan();
        let tt = todd_class(&fan, 2).unwrap();
        let coeff = |m: Vec<u32>| -> Rat {
            tt.terms()
                .find(|(mm, _)| **mm == m)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::zero)
        };
        // the singular pair picks up the character average
        assert_eq!(coeff(vec![1, 0, 1]), frac(1, 2));
        assert_eq!(coeff(vec![1, 1, 0]), frac(1, 4));
        assert_eq!(coeff(vec![0, 1, 1]), frac(1, 4));
        assert_eq!(coeff(vec![2, 0, 0]), frac(1, 12));
    }

    #[test]
    fn todd_class_of_mf1_has_no_cross_terms() {
        let fan = fixtures::mf1();
        let tt = todd_class(&fan, 1).unwrap();
        let terms: Vec<(Vec<u32>, Rat)> =
            tt.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        assert_eq!(
            terms,
            vec![
                (vec![0, 0], rat(1)),
                (vec![0, 1], frac(1, 2)),
                (vec![1, 0], frac(1, 2)),
            ]
        );
    }

    #[test]
    fn todd_class_k_runs_over_link_edges_only() {
        let fan = fixtures::square_fan();
        let k = Simplex::new(vec![0]);
        let tk = todd_class_k(&fan, &k, 2).unwrap();
        let t1 = tk.degree_part(1);
        let present: Vec<Vec<u32>> = t1.terms().map(|(m, _)| m.clone()).collect();
        // only the two edges adjacent to edge 0 appear
        assert_eq!(present, vec![vec![0, 0, 0, 1], vec![0, 1, 0, 0]]);
        for (_, c) in t1.terms() {
            assert_eq!(c, &frac(1, 2));
        }
    }

    #[test]
    fn scans_match_brute_counts_on_dilates() {
        for p in [
            fixtures::square_polytope(),
            fixtures::simplex_polytope(),
            fixtures::triangle_polytope(),
        ] {
            let (fan, levels) = p.normal_fan().unwrap();
            let xi = XiClass::new(levels);
            for nu in 1..=3 {
                let po = MultiPolytope::new(&fan, xi.scale_by_int(nu)).unwrap();
                assert_eq!(
                    po.count_points(&Simplex::empty()).unwrap(),
                    p.brute_count(nu).unwrap(),
                    "nu = {nu}"
                );
            }
        }
    }

    #[test]
    fn todd_class_k_at_a_maximal_face_counts_the_group() {
        let fan = fixtures::triangle_fan();
        let k = Simplex::new(vec![0, 2]);
        let tk = todd_class_k(&fan, &k, 2).unwrap();
        // empty product summed over the two group elements
        assert_eq!(tk.degree_part(0), CohClass::one(&fan).scale(&rat(2)));
    }

    #[test]
    fn counts_via_todd_agree_with_scans() {
        for (fan, xi) in [
            (fixtures::square_fan(), fixtures::square_xi()),
            (fixtures::simplex_fan(), fixtures::simplex_xi()),
            (fixtures::triangle_fan(), fixtures::triangle_xi()),
            (fixtures::mf1(), fixtures::mf1_xi()),
        ] {
            let po = MultiPolytope::new(&fan, xi.clone()).unwrap();
            for k in fan.all_faces() {
                let scanned = po.count_points(k).unwrap();
                let todd = count_via_todd(&fan, &xi, k).unwrap();
                assert_eq!(todd, rat(scanned), "face {k}");
            }
        }
    }

    #[test]
    fn ehrhart_of_the_fixtures() {
        assert_eq!(
            ehrhart(&fixtures::square_fan(), &fixtures::square_xi()).unwrap(),
            vec![rat(1), rat(2), rat(1)]
        );
        assert_eq!(
            ehrhart(&fixtures::simplex_fan(), &fixtures::simplex_xi()).unwrap(),
            vec![frac(1, 2), frac(3, 2), rat(1)]
        );
        assert_eq!(
            ehrhart(&fixtures::triangle_fan(), &fixtures::triangle_xi()).unwrap(),
            vec![rat(1), rat(2), rat(1)]
        );
        assert_eq!(
            ehrhart(&fixtures::mf1(), &fixtures::mf1_xi()).unwrap(),
            vec![rat(4), rat(2)]
        );
    }

    #[test]
    fn ehrhart_polynomial_matches_counts_beyond_interpolation() {
        for (fan, xi) in [
            (fixtures::square_fan(), fixtures::square_xi()),
            (fixtures::triangle_fan(), fixtures::triangle_xi()),
            (fixtures::mf1(), fixtures::mf1_xi()),
        ] {
            let a = ehrhart(&fan, &xi).unwrap();
            let n = fan.rank();
            for nu in 1..=(n as i64 + 2) {
                let scaled = xi.scale_by_int(nu);
                let po = MultiPolytope::new(&fan, scaled).unwrap();
                let count = po.count_points(&Simplex::empty()).unwrap();
                let nu_rat = rat(nu);
                let mut predicted = Rat::zero();
                for (k, ak) in a.iter().enumerate() {
                    let mut pow = Rat::one();
                    for _ in 0..(n - k) {
                        pow *= &nu_rat;
                    }
                    predicted += ak * pow;
                }
                assert_eq!(predicted, rat(count), "nu = {nu}");
            }
        }
    }

    #[test]
    fn leading_and_subleading_coefficients_are_volumes() {
        for (fan, xi) in [
            (fixtures::square_fan(), fixtures::square_xi()),
            (fixtures::triangle_fan(), fixtures::triangle_xi()),
            (fixtures::mf1(), fixtures::mf1_xi()),
        ] {
            let a = ehrhart(&fan, &xi).unwrap();
            assert_eq!(a[0], volume(&fan, &xi, &Simplex::empty()).unwrap());
            let mut facet_sum = Rat::zero();
            for i in 0..fan.n_edges() {
                facet_sum += volume(&fan, &xi, &Simplex::new(vec![i])).unwrap();
            }
            assert_eq!(a[1], facet_sum * frac(1, 2));
        }
    }

    #[test]
    fn volumes_match_geometry_on_every_face() {
        for p in [
            fixtures::square_polytope(),
            fixtures::simplex_polytope(),
            fixtures::triangle_polytope(),
        ] {
            let (fan, xi) = p.normal_fan().unwrap();
            let xi = XiClass::new(xi);
            for k in fan.all_faces() {
                assert_eq!(
                    volume(&fan, &xi, k).unwrap(),
                    p.face_volume_geometric(k).unwrap(),
                    "face {k}"
                );
            }
        }
    }

    #[test]
    fn singular_vertex_volume_cancels_the_multiplicity() {
        let fan = fixtures::triangle_fan();
        let xi = fixtures::triangle_xi();
        let k = Simplex::new(vec![0, 2]);
        let xk = CohClass::face_monomial(&fan, &k).unwrap();
        assert_eq!(p_star(&fan, &xk, &xi).unwrap(), frac(1, 2));
        assert_eq!(volume(&fan, &xi, &k).unwrap(), rat(1));
    }

    #[test]
    fn rigidity_of_the_fixtures() {
        for (fan, genus) in [
            (fixtures::square_fan(), 1),
            (fixtures::simplex_fan(), 1),
            (fixtures::triangle_fan(), 1),
            (fixtures::mf1(), 2),
        ] {
            assert_eq!(fan.todd_genus().unwrap(), genus);
            assert!(rigidity_check(&fan, fan.rank()).unwrap());
        }
    }
}
