//! Residue coefficients on the Grassmannian: sampling of generic planes,
//! intersection vectors, the two routes to the coefficients of the
//! decomposition identities, and the verifiers that check those
//! identities exactly on a fan.
//!
//! A coefficient is never manipulated as a symbolic rational function on
//! the Grassmannian; it is evaluated at explicit generic planes `E`, and
//! the constancy of the full decomposition sums across independently
//! sampled planes is what realizes the degree-zero statement.

use num::{One, Zero};

use crate::cohomology::{graded_quotient, iota_eval, p_star, CohClass, XiClass};
use crate::cyclo::{root_of_unity, CycNum};
use crate::error::{Error, Result};
use crate::fan::{Simplex, SimplicialMultiFan};
use crate::matrix::{wedge_pairing, RatMat};
use crate::rat::{int_to_rat_vec, primitivize, Int, Rat};
use crate::sample::Sampler;
use crate::series::{todd_factor, LaurentSeries};
use crate::snf::{int_kernel_basis, quotient_group, IntMat};

/// An integer basis of a plane of rank `n - k + 1`, certified generic for
/// all the cones it is used against.
#[derive(Debug, Clone)]
pub struct GrassmannPoint {
    pub k: usize,
    pub basis: Vec<Vec<Int>>,
}

impl GrassmannPoint {
    pub fn new(k: usize, basis: Vec<Vec<Int>>) -> Self {
        GrassmannPoint { k, basis }
    }

    pub fn basis_rat(&self) -> Vec<Vec<Rat>> {
        self.basis.iter().map(|r| int_to_rat_vec(r)).collect()
    }
}

/// A single evaluated coefficient.
#[derive(Debug, Clone)]
pub struct MuValue {
    pub face: Simplex,
    pub k: usize,
    pub value: Rat,
}

/// Both sides of a verified identity, kept exact for reporting.
#[derive(Debug, Clone)]
pub struct Identity {
    pub lhs: Rat,
    pub rhs: Rat,
}

impl Identity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn residual(&self) -> Rat {
        &self.lhs - &self.rhs
    }
}

/// Coordinates of `target` in the basis given by the cone vectors; these
/// are the pairings of `target` against the dual basis of the cone.
pub fn cone_coords(vectors: &[Vec<Int>], target: &[Rat]) -> Result<Vec<Rat>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let m = IntMat::from_cols(vectors.to_vec()).to_rat();
    m.solve(target)
        .ok_or_else(|| Error::Internal("target outside the cone span".into()))
}

/// A nonzero vector spanning the intersection of the plane `E` with the
/// span of the cone, primitive with positive leading entry. Errors when
/// the intersection is not a line.
pub fn v_ej_for_cone(e: &GrassmannPoint, vectors: &[Vec<Int>]) -> Result<Vec<Rat>> {
    let n = vectors
        .first()
        .map(Vec::len)
        .or_else(|| e.basis.first().map(Vec::len))
        .ok_or(Error::DimensionMismatch)?;
    let re = e.basis.len();
    let cols = re + vectors.len();
    let mut m = RatMat::zero(n, cols);
    for (l, row) in e.basis.iter().enumerate() {
        for r in 0..n {
            m[(r, l)] = Rat::from_integer(row[r].clone());
        }
    }
    for (j, v) in vectors.iter().enumerate() {
        for r in 0..n {
            m[(r, re + j)] = -Rat::from_integer(v[r].clone());
        }
    }
    let kernel = m.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::NonGenericPlane);
    }
    let coeffs = &kernel[0][..re];
    let mut v = vec![Rat::zero(); n];
    for (l, a) in coeffs.iter().enumerate() {
        for (entry, b) in v.iter_mut().zip(&e.basis[l]) {
            *entry += a * Rat::from_integer(b.clone());
        }
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::NonGenericPlane);
    }
    Ok(int_to_rat_vec(&primitivize(&v)?))
}

fn cone_vectors(fan: &SimplicialMultiFan, j: &Simplex) -> Vec<Vec<Int>> {
    j.ids().iter().map(|&i| fan.edge(i).to_vec()).collect()
}

/// Intersection vector for a face of a fan.
pub fn v_ej(fan: &SimplicialMultiFan, j: &Simplex, e: &GrassmannPoint) -> Result<Vec<Rat>> {
    v_ej_for_cone(e, &cone_vectors(fan, j))
}

/// The genericity certificate of `E` against a list of cones: every
/// intersection is a line and pairs nonzero against every dual vector.
pub fn certify_cones(e: &GrassmannPoint, cones: &[Vec<Vec<Int>>]) -> bool {
    for vectors in cones {
        let Ok(v) = v_ej_for_cone(e, vectors) else {
            return false;
        };
        let Ok(coords) = cone_coords(vectors, &v) else {
            return false;
        };
        if coords.iter().any(Zero::is_zero) {
            return false;
        }
    }
    true
}

pub fn certify(fan: &SimplicialMultiFan, k: usize, e: &GrassmannPoint) -> bool {
    if e.basis.len() != fan.rank() - k + 1 {
        return false;
    }
    let rows: Vec<Vec<Rat>> = e.basis_rat();
    if RatMat::from_rows(rows).rank() != e.basis.len() {
        return false;
    }
    let cones: Vec<Vec<Vec<Int>>> = fan
        .faces(k)
        .iter()
        .map(|j| cone_vectors(fan, j))
        .collect();
    certify_cones(e, &cones)
}

/// Seeded rejection sampling of a certified generic plane for the
/// dimension-k faces of a fan. Requires `1 <= k <= rank`.
pub fn sample_generic_e(fan: &SimplicialMultiFan, k: usize, seed: u64) -> GrassmannPoint {
    assert!(k >= 1 && k <= fan.rank());
    let rows = fan.rank() - k + 1;
    let mut sampler = Sampler::new(seed);
    loop {
        let basis: Vec<Vec<Int>> = (0..rows)
            .map(|_| {
                sampler
                    .vector(fan.rank())
                    .iter()
                    .map(|r| r.to_integer())
                    .collect()
            })
            .collect();
        let e = GrassmannPoint::new(k, basis);
        if certify(fan, k, &e) {
            return e;
        }
        sampler.grow();
    }
}

/// Same sampling against an explicit list of cones, for subdivision
/// checks that are not tied to a complete fan.
pub fn sample_generic_e_for_cones(
    rank: usize,
    cones: &[Vec<Vec<Int>>],
    k: usize,
    seed: u64,
) -> GrassmannPoint {
    assert!(k >= 1 && k <= rank);
    let rows = rank - k + 1;
    let mut sampler = Sampler::new(seed);
    loop {
        let basis: Vec<Vec<Int>> = (0..rows)
            .map(|_| {
                sampler
                    .vector(rank)
                    .iter()
                    .map(|r| r.to_integer())
                    .collect()
            })
            .collect();
        let e = GrassmannPoint::new(k, basis);
        let independent =
            RatMat::from_rows(e.basis_rat()).rank() == rows;
        if independent && certify_cones(&e, cones) {
            return e;
        }
        sampler.grow();
    }
}

/// The coefficient of `x` at the face `j`: the restriction of `x`
/// evaluated on the intersection vector, divided by the product of the
/// dual pairings. Evaluated through any maximal cone containing `j`.
pub fn mu(
    fan: &SimplicialMultiFan,
    x: &CohClass,
    j: &Simplex,
    e: &GrassmannPoint,
) -> Result<MuValue> {
    if !fan.is_face(j.ids()) {
        return Err(Error::NotAFace);
    }
    if let Some(d) = x.homogeneous_degree() {
        if d != j.len() {
            return Err(Error::Internal(
                "coefficient of a class of mismatched degree".into(),
            ));
        }
    }
    let value = if j.is_empty() {
        // The empty face: the coefficient is the constant term.
        let ci = 0;
        iota_eval(fan, ci, x, &vec![Rat::zero(); fan.rank()])
    } else {
        let vectors = cone_vectors(fan, j);
        let v = v_ej_for_cone(e, &vectors)?;
        let coords = cone_coords(&vectors, &v)?;
        if coords.iter().any(Zero::is_zero) {
            return Err(Error::NonGenericPlane);
        }
        let ci = *fan
            .cones_containing(j)
            .first()
            .ok_or(Error::NotAFace)?;
        let num = iota_eval(fan, ci, x, &v);
        let den: Rat = coords.iter().product();
        num / den
    };
    Ok(MuValue {
        face: j.clone(),
        k: j.len(),
        value,
    })
}

/// Group-averaged Todd coefficient of a standalone cone, evaluated at an
/// explicit intersection vector. Homogeneous of degree zero in the
/// vector, so any nonzero rescaling gives the same value.
pub fn mu_todd_cone_at(vectors: &[Vec<Int>], v_ej: &[Rat]) -> Result<Rat> {
    let k = vectors.len();
    if k == 0 {
        return Ok(Rat::one());
    }
    let rank = vectors[0].len();
    let coords = cone_coords(vectors, v_ej)?;
    if coords.iter().any(Zero::is_zero) {
        return Err(Error::NonGenericPlane);
    }
    let group = quotient_group(vectors, rank)?;
    let window = k as i64;
    let mut sum = CycNum::zero();
    for lift in &group.lift_coords {
        let mut prod = LaurentSeries::one(window);
        for jj in 0..k {
            let chi = root_of_unity(&lift[jj]);
            let f = todd_factor(&coords[jj], &chi, window)?;
            prod = prod.mul(&f);
        }
        sum = sum.add(&prod.coeff(0)?);
    }
    let avg = sum.scale(&Rat::from_integer(group.order.clone()).recip());
    avg.as_rational()
}

pub fn mu_todd_cone(vectors: &[Vec<Int>], e: &GrassmannPoint) -> Result<Rat> {
    if vectors.is_empty() {
        return Ok(Rat::one());
    }
    let v = v_ej_for_cone(e, vectors)?;
    mu_todd_cone_at(vectors, &v)
}

/// The Todd-route coefficient of dimension-k faces of a fan.
pub fn mu_todd(
    fan: &SimplicialMultiFan,
    k: usize,
    j: &Simplex,
    e: &GrassmannPoint,
) -> Result<MuValue> {
    if !fan.is_face(j.ids()) || j.len() != k {
        return Err(Error::NotAFace);
    }
    let value = mu_todd_cone(&cone_vectors(fan, j), e)?;
    Ok(MuValue {
        face: j.clone(),
        k,
        value,
    })
}

/// Both sides of the push-forward decomposition for one class: the
/// push-forward of `e^xi x` against the weighted sum of face terms.
pub fn theorem_main_sides(
    fan: &SimplicialMultiFan,
    x: &CohClass,
    xi: &XiClass,
    e: &GrassmannPoint,
) -> Result<Identity> {
    let k = x.homogeneous_degree().unwrap_or(0);
    let lhs = p_star(fan, x, xi)?;
    let mut rhs = Rat::zero();
    for j in fan.faces(k) {
        let coeff = mu(fan, x, j, e)?.value;
        if coeff.is_zero() {
            continue;
        }
        let xj = CohClass::face_monomial(fan, j)?;
        rhs += coeff * p_star(fan, &xj, xi)?;
    }
    Ok(Identity { lhs, rhs })
}

pub fn verify_theorem_main(
    fan: &SimplicialMultiFan,
    x: &CohClass,
    xi: &XiClass,
    e: &GrassmannPoint,
) -> Result<bool> {
    Ok(theorem_main_sides(fan, x, xi, e)?.holds())
}

/// Reduction of `x - sum_J mu(x,J) x_J` in the graded quotient; the
/// decomposition holds in ordinary cohomology exactly when this is zero.
pub fn corollary_main_reduction(
    fan: &SimplicialMultiFan,
    x: &CohClass,
    e: &GrassmannPoint,
) -> Result<Vec<Rat>> {
    let k = x.homogeneous_degree().unwrap_or(0);
    let mut diff = x.clone();
    for j in fan.faces(k) {
        let coeff = mu(fan, x, j, e)?.value;
        if coeff.is_zero() {
            continue;
        }
        let xj = CohClass::face_monomial(fan, j)?;
        diff = diff.sub(&xj.scale(&coeff));
    }
    graded_quotient(fan, k).reduce(&diff)
}

pub fn verify_corollary_main(
    fan: &SimplicialMultiFan,
    x: &CohClass,
    e: &GrassmannPoint,
) -> Result<bool> {
    Ok(corollary_main_reduction(fan, x, e)?
        .iter()
        .all(Zero::is_zero))
}

/// Basis of the annihilator of a face's span, in echelon order with
/// primitive integer rows.
pub fn annihilator_basis(fan: &SimplicialMultiFan, j: &Simplex) -> Vec<Vec<Int>> {
    let rows = IntMat::from_rows_cols(cone_vectors(fan, j), fan.rank());
    int_kernel_basis(&rows)
}

/// The wedge pairings of the dual vectors against `E` are proportional to
/// the dual pairings with the intersection vector, with one nonzero
/// constant for the whole face.
pub fn verify_lemma_wevj(
    fan: &SimplicialMultiFan,
    j: &Simplex,
    e: &GrassmannPoint,
) -> Result<bool> {
    let vectors = cone_vectors(fan, j);
    let v = v_ej_for_cone(e, &vectors)?;
    let coords = cone_coords(&vectors, &v)?;
    let omega: Vec<Vec<Rat>> = annihilator_basis(fan, j)
        .iter()
        .map(|r| int_to_rat_vec(r))
        .collect();
    let e_rows = e.basis_rat();
    let ci = *fan.cones_containing(j).first().ok_or(Error::NotAFace)?;
    let mut wedges = Vec::new();
    for &i in j.ids() {
        let u = fan.dual_of(ci, i);
        wedges.push(wedge_pairing(&u, &omega, &e_rows)?);
    }
    // proportionality with a single nonzero ratio
    if wedges.iter().all(Zero::is_zero) {
        return Ok(false);
    }
    let pivot = wedges.iter().position(|w| !w.is_zero()).unwrap();
    if coords[pivot].is_zero() {
        return Ok(false);
    }
    for idx in 0..wedges.len() {
        if &wedges[idx] * &coords[pivot] != &wedges[pivot] * &coords[idx] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Additivity of the Todd-route coefficient under a simplicial
/// subdivision of a single cone: the parent coefficient is the sum of the
/// coefficients of the top-dimensional subdivision cones.
pub fn verify_mu_additivity(
    parent: &[Vec<Int>],
    subdivision: &[Vec<Vec<Int>>],
    e: &GrassmannPoint,
) -> Result<bool> {
    let lhs = mu_todd_cone(parent, e)?;
    let mut rhs = Rat::zero();
    for child in subdivision {
        rhs += mu_todd_cone(child, e)?;
    }
    Ok(lhs == rhs)
}

/// Additivity of the localized Todd series under a simplicial
/// subdivision, compared coefficient by coefficient through `order`.
pub fn verify_td_additivity(
    parent: &[Vec<Int>],
    subdivision: &[Vec<Vec<Int>>],
    v: &[Rat],
    order: i64,
) -> Result<bool> {
    let lhs = crate::dh::todd_series_of_cones(&[parent.to_vec()], v, order)?;
    let rhs = crate::dh::todd_series_of_cones(subdivision, v, order)?;
    let lo = lhs.min_deg().min(rhs.min_deg());
    for d in lo..=order {
        if lhs.coeff(d)? != rhs.coeff(d)? {
            return Ok(false);
        }
    }
    Ok(true)
}
