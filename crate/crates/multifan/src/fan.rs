//! Simplicial multi-fans: weighted collections of simplicial cones encoded
//! by a simplicial complex on edge ids plus integer edge vectors.
//!
//! A fan is validated and preprocessed once at construction: the face
//! closure, the dual basis and multiplicity group of every maximal cone,
//! completeness, and a canonical generic vector are all computed eagerly.
//! After that every query is pure, so fans can be shared freely.

use std::collections::{BTreeMap, BTreeSet};

use num::{Signed, Zero};

use crate::cyclo::{root_of_unity, CycNum};
use crate::error::{Error, Result};
use crate::matrix::{dual_basis, RatMat};
use crate::rat::{dot, frac_part, int_to_rat_vec, Int, Rat};
use crate::sample::Sampler;
use crate::snf::{quotient_group, saturate, IntMat, QuotientGroup};

/// A face of the simplicial complex: sorted, deduplicated edge ids.
/// The empty simplex is the base point of the complex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Simplex(ids)
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|i| other.contains(*i))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut ids = self.0.clone();
        ids.extend_from_slice(&other.0);
        Simplex::new(ids)
    }

    pub fn with(&self, id: usize) -> Simplex {
        let mut ids = self.0.clone();
        ids.push(id);
        Simplex::new(ids)
    }

    pub fn without(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|i| !other.contains(*i)).collect())
    }
}

impl std::fmt::Display for Simplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// An element of a multiplicity group, as a fractional vector in
/// `(Q/Z)^m` indexed by the fan's edges. Entries lie in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub fractional: Vec<Rat>,
}

impl GroupElement {
    pub fn chi(&self, edge: usize) -> CycNum {
        root_of_unity(&self.fractional[edge])
    }

    pub fn support(&self) -> Vec<usize> {
        self.fractional
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.fractional.iter().all(Zero::is_zero)
    }
}

#[derive(Clone)]
struct ConeData {
    /// Rows are the dual basis vectors, aligned with the cone's sorted ids.
    duals: RatMat,
    group: QuotientGroup,
}

/// Validation summary printed by the command line front end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanDiagnostics {
    /// `face_counts[k]` is the number of k-dimensional cones; entry 0 is
    /// always 1 for the base point.
    pub face_counts: Vec<usize>,
    pub complete: bool,
    pub todd_genus: Option<i64>,
}

#[derive(Clone)]
pub struct SimplicialMultiFan {
    rank: usize,
    edges: Vec<Vec<Int>>,
    cones: Vec<(Simplex, i64)>,
    faces_by_dim: Vec<Vec<Simplex>>,
    face_set: BTreeSet<Simplex>,
    cone_data: Vec<ConeData>,
    complete: bool,
    generic_v: Vec<Rat>,
}

impl std::fmt::Debug for SimplicialMultiFan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SimplicialMultiFan")
            .field("rank", &self.rank)
            .field("edges", &self.edges)
            .field("cones", &self.cones)
            .finish()
    }
}

impl SimplicialMultiFan {
    pub fn new(
        rank: usize,
        edges: Vec<Vec<Int>>,
        maximal_cones: Vec<(Vec<usize>, i64)>,
    ) -> Result<Self> {
        if maximal_cones.is_empty() {
            return Err(Error::Internal("no maximal cones".into()));
        }
        for (i, v) in edges.iter().enumerate() {
            if v.len() != rank {
                return Err(Error::DimensionMismatch);
            }
            if v.iter().all(Zero::is_zero) {
                return Err(Error::Internal(format!("edge {i} is the zero vector")));
            }
        }
        let mut cones = Vec::new();
        let mut seen = BTreeSet::new();
        for (ids, w) in maximal_cones {
            if ids.iter().any(|&i| i >= edges.len()) {
                return Err(Error::Internal("cone references unknown edge".into()));
            }
            let s = Simplex::new(ids.clone());
            if s.len() != ids.len() || s.len() != rank {
                return Err(Error::Internal(format!(
                    "maximal cone {s} must have exactly {rank} distinct edges"
                )));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::Internal(format!("duplicate maximal cone {s}")));
            }
            cones.push((s, w));
        }
        let mut used = vec![false; edges.len()];
        for (s, _) in &cones {
            for &i in s.ids() {
                used[i] = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::DanglingEdge(i));
        }

        // Face closure of the listed maximal cones.
        let mut face_set = BTreeSet::new();
        for (s, _) in &cones {
            let ids = s.ids();
            for mask in 0u64..(1u64 << ids.len()) {
                let subset: Vec<usize> = ids
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask & (1 << b) != 0)
                    .map(|(_, &i)| i)
                    .collect();
                face_set.insert(Simplex::new(subset));
            }
        }
        let mut faces_by_dim = vec![Vec::new(); rank + 1];
        for s in &face_set {
            faces_by_dim[s.len()].push(s.clone());
        }

        let mut cone_data = Vec::new();
        for (s, _) in &cones {
            let vectors: Vec<Vec<Rat>> = s
                .ids()
                .iter()
                .map(|&i| int_to_rat_vec(&edges[i]))
                .collect();
            let duals = dual_basis(&vectors)?;
            let gens: Vec<Vec<Int>> = s.ids().iter().map(|&i| edges[i].clone()).collect();
            let group = quotient_group(&gens, rank).map_err(|_| Error::DegenerateCone)?;
            cone_data.push(ConeData { duals, group });
        }

        let mut fan = SimplicialMultiFan {
            rank,
            edges,
            cones,
            faces_by_dim,
            face_set,
            cone_data,
            complete: false,
            generic_v: Vec::new(),
        };
        fan.generic_v = fan.sample_generic_vector(0);
        fan.complete = fan.compute_complete();
        Ok(fan)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, i: usize) -> &[Int] {
        &self.edges[i]
    }

    pub fn edge_rat(&self, i: usize) -> Vec<Rat> {
        int_to_rat_vec(&self.edges[i])
    }

    pub fn n_cones(&self) -> usize {
        self.cones.len()
    }

    pub fn cone(&self, ci: usize) -> (&Simplex, i64) {
        (&self.cones[ci].0, self.cones[ci].1)
    }

    /// Dual basis rows of a maximal cone, aligned with its sorted ids.
    pub fn duals(&self, ci: usize) -> &RatMat {
        &self.cone_data[ci].duals
    }

    /// Dual vector of edge `i` inside maximal cone `ci`.
    pub fn dual_of(&self, ci: usize, i: usize) -> Vec<Rat> {
        let pos = self.cones[ci]
            .0
            .ids()
            .iter()
            .position(|&j| j == i)
            .expect("edge belongs to the cone");
        self.cone_data[ci].duals.row(pos).to_vec()
    }

    pub fn group(&self, ci: usize) -> &QuotientGroup {
        &self.cone_data[ci].group
    }

    pub fn faces(&self, k: usize) -> &[Simplex] {
        &self.faces_by_dim[k]
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Simplex> {
        self.face_set.iter()
    }

    pub fn is_face(&self, ids: &[usize]) -> bool {
        self.face_set.contains(&Simplex::new(ids.to_vec()))
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces_by_dim.iter().map(Vec::len).collect()
    }

    /// Edges `i` with `K + {i}` still a face.
    pub fn link_edges(&self, k: &Simplex) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| !k.contains(i) && self.face_set.contains(&k.with(i)))
            .collect()
    }

    pub fn cones_containing(&self, k: &Simplex) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&ci| k.is_subset_of(&self.cones[ci].0))
            .collect()
    }

    /// A vector is generic when it pairs nonzero against every dual basis
    /// vector of every maximal cone; this keeps it off all cone walls.
    pub fn is_generic_vector(&self, v: &[Rat]) -> bool {
        if v.len() != self.rank {
            return false;
        }
        self.cone_data
            .iter()
            .all(|cd| cd.duals.mul_vec(v).iter().all(|c| !c.is_zero()))
    }

    /// Seeded rejection sampling of a generic integer vector. The result
    /// is reproducible from the seed; the certificate is checked exactly.
    pub fn sample_generic_vector(&self, seed: u64) -> Vec<Rat> {
        if self.rank == 0 {
            return Vec::new();
        }
        Sampler::new(seed).find(self.rank, |v| self.is_generic_vector(v))
    }

    /// The canonical generic vector cached at construction.
    pub fn generic_vector(&self) -> &[Rat] {
        &self.generic_v
    }

    /// Weighted covering degree of a generic vector: the sum of weights of
    /// maximal cones containing it.
    pub fn degree(&self, v: &[Rat]) -> Result<i64> {
        if !self.is_generic_vector(v) {
            return Err(Error::VectorOnWall);
        }
        let mut d = 0;
        for (ci, (_, w)) in self.cones.iter().enumerate() {
            let coords = self.cone_data[ci].duals.mul_vec(v);
            if coords.iter().all(|c| c.is_positive()) {
                d += w;
            }
        }
        Ok(d)
    }

    fn compute_complete(&self) -> bool {
        if self.rank == 0 {
            return true;
        }
        for wall in self.faces(self.rank - 1) {
            let proj = match self.project(wall) {
                Ok(p) => p,
                Err(_) => return false,
            };
            if !proj.fan.rank1_balanced() {
                return false;
            }
        }
        true
    }

    /// Weights balance on the two sides of the origin; rank-1 fans only.
    fn rank1_balanced(&self) -> bool {
        debug_assert_eq!(self.rank, 1);
        let mut pos = 0i64;
        let mut neg = 0i64;
        for (s, w) in &self.cones {
            let v = &self.edges[s.ids()[0]];
            if v[0].is_positive() {
                pos += w;
            } else {
                neg += w;
            }
        }
        pos == neg
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The common covering degree of a complete multi-fan.
    pub fn todd_genus(&self) -> Result<i64> {
        if !self.complete {
            return Err(Error::NotComplete);
        }
        if self.rank == 0 {
            return Ok(self.cones.iter().map(|(_, w)| w).sum());
        }
        self.degree(&self.generic_v)
    }

    pub fn diagnostics(&self) -> FanDiagnostics {
        FanDiagnostics {
            face_counts: self.face_counts(),
            complete: self.complete,
            todd_genus: self.todd_genus().ok(),
        }
    }

    /// The projected multi-fan with respect to a face `K`: the quotient of
    /// the ambient lattice by the saturated span of `K`'s edges, with the
    /// link of `K` as its combinatorics and the restricted weights.
    pub fn project(&self, k: &Simplex) -> Result<ProjectedFan> {
        if !self.face_set.contains(k) {
            return Err(Error::NotAFace);
        }
        if k.is_empty() {
            let m = self.n_edges();
            return Ok(ProjectedFan {
                base: k.clone(),
                quotient: IntMat::identity(self.rank),
                link_edges: (0..m).collect(),
                fan: self.clone(),
            });
        }
        let cols: Vec<Vec<Int>> = k.ids().iter().map(|&i| self.edges[i].clone()).collect();
        let basis = saturate(&IntMat::from_cols(cols))?;
        // Complete the saturated basis to a basis of the ambient lattice
        // and read the quotient off the complementary coordinates.
        let dec = crate::snf::snf(&basis);
        let u_inv_rat = dec.u.to_rat().inverse().expect("unimodular");
        let n_proj = self.rank - k.len();
        let mut quotient = IntMat::zero(n_proj, self.rank);
        for r in 0..n_proj {
            for c in 0..self.rank {
                let v = &u_inv_rat[(k.len() + r, c)];
                debug_assert!(crate::rat::is_integer(v));
                quotient[(r, c)] = v.to_integer();
            }
        }
        let link = self.link_edges(k);
        let proj_edges: Vec<Vec<Int>> = link.iter().map(|&i| quotient.mul_vec(&self.edges[i])).collect();
        let index_of: BTreeMap<usize, usize> =
            link.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut proj_cones = Vec::new();
        for ci in self.cones_containing(k) {
            let (s, w) = &self.cones[ci];
            let rest: Vec<usize> = s
                .ids()
                .iter()
                .filter(|i| !k.contains(**i))
                .map(|i| index_of[i])
                .collect();
            proj_cones.push((rest, *w));
        }
        Ok(ProjectedFan {
            base: k.clone(),
            quotient,
            link_edges: link,
            fan: SimplicialMultiFan::new(n_proj, proj_edges, proj_cones)?,
        })
    }

    /// Elements of the multiplicity group of maximal cone `ci`, as
    /// fractional vectors over all edges: entry `i` is the coordinate of
    /// the coset lift against the dual basis, reduced mod 1, and zero off
    /// the cone.
    pub fn group_elements(&self, ci: usize) -> Vec<GroupElement> {
        let (s, _) = &self.cones[ci];
        let group = &self.cone_data[ci].group;
        let m = self.n_edges();
        group
            .lift_coords
            .iter()
            .map(|coords| {
                let mut fractional = vec![Rat::zero(); m];
                for (pos, &i) in s.ids().iter().enumerate() {
                    fractional[i] = frac_part(&coords[pos]);
                }
                GroupElement { fractional }
            })
            .collect()
    }

    /// Union of the multiplicity groups of the maximal cones containing
    /// `K`, deduplicated by fractional vector. `K = o` gives the whole
    /// group of the multi-fan.
    pub fn group_union(&self, k: &Simplex) -> Result<Vec<GroupElement>> {
        if !self.face_set.contains(k) {
            return Err(Error::NotAFace);
        }
        let mut seen: BTreeMap<Vec<Rat>, GroupElement> = BTreeMap::new();
        for ci in self.cones_containing(k) {
            for g in self.group_elements(ci) {
                seen.entry(g.fractional.clone()).or_insert(g);
            }
        }
        Ok(seen.into_values().collect())
    }

    pub fn group_delta(&self) -> Vec<GroupElement> {
        self.group_union(&Simplex::empty())
            .expect("the empty simplex is always a face")
    }

    /// Pairing of the dual vector of `i` in cone `ci` with `v`.
    pub fn dual_pairing(&self, ci: usize, i: usize, v: &[Rat]) -> Rat {
        dot(&self.dual_of(ci, i), v)
    }
}

/// Result of projecting a multi-fan along a face.
#[derive(Debug)]
pub struct ProjectedFan {
    pub base: Simplex,
    /// Integer matrix realizing `N -> N/N_K`.
    pub quotient: IntMat,
    /// Original edge id of each projected edge, index aligned.
    pub link_edges: Vec<usize>,
    pub fan: SimplicialMultiFan,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rat::rat;

    #[test]
    fn square_fan_diagnostics() {
        let fan = fixtures::square_fan();
        assert_eq!(fan.face_counts(), vec![1, 4, 4]);
        assert!(fan.is_complete());
        assert_eq!(fan.todd_genus().unwrap(), 1);
    }

    #[test]
    fn p2_fan_diagnostics() {
        let fan = fixtures::p2_fan();
        assert_eq!(fan.face_counts(), vec![1, 3, 3]);
        assert!(fan.is_complete());
        assert_eq!(fan.todd_genus().unwrap(), 1);
    }

    #[test]
    fn collinear_cone_is_degenerate() {
        let err = SimplicialMultiFan::new(
            2,
            vec![vec![Int::from(1), Int::from(0)], vec![Int::from(2), Int::from(0)]],
            vec![(vec![0, 1], 1)],
        )
        .unwrap_err();
        assert_eq!(err, Error::DegenerateCone);
    }

    #[test]
    fn unused_edge_is_dangling() {
        let err = SimplicialMultiFan::new(
            1,
            vec![vec![Int::from(1)], vec![Int::from(-1)]],
            vec![(vec![0], 1)],
        )
        .unwrap_err();
        assert_eq!(err, Error::DanglingEdge(1));
    }

    #[test]
    fn degree_counts_weighted_cover() {
        let fan = fixtures::square_fan();
        assert_eq!(fan.degree(&[rat(2), rat(1)]).unwrap(), 1);
        let mf = fixtures::mf1();
        assert_eq!(mf.degree(&[rat(5)]).unwrap(), 2);
    }

    #[test]
    fn degree_outside_support_is_zero() {
        let half = SimplicialMultiFan::new(1, vec![vec![Int::from(1)]], vec![(vec![0], 1)]).unwrap();
        assert_eq!(half.degree(&[rat(-1)]).unwrap(), 0);
        assert!(!half.is_complete());
        assert_eq!(half.todd_genus().unwrap_err(), Error::NotComplete);
    }

    #[test]
    fn degree_rejects_wall_vectors() {
        let fan = fixtures::square_fan();
        assert_eq!(fan.degree(&[rat(1), rat(0)]).unwrap_err(), Error::VectorOnWall);
    }

    #[test]
    fn mf1_is_complete_with_genus_two() {
        let mf = fixtures::mf1();
        assert!(mf.is_complete());
        assert_eq!(mf.todd_genus().unwrap(), 2);
    }

    #[test]
    fn triangle_fan_genus_one() {
        let fan = fixtures::triangle_fan();
        assert!(fan.is_complete());
        assert_eq!(fan.todd_genus().unwrap(), 1);
    }

    #[test]
    fn degree_is_constant_on_complete_fans() {
        for fan in [fixtures::square_fan(), fixtures::triangle_fan()] {
            let expect = fan.todd_genus().unwrap();
            for seed in 0..20u64 {
                let v = fan.sample_generic_vector(seed);
                assert_eq!(fan.degree(&v).unwrap(), expect);
            }
        }
    }

    #[test]
    fn project_empty_face_is_identity() {
        let fan = fixtures::square_fan();
        let p = fan.project(&Simplex::empty()).unwrap();
        assert_eq!(p.fan.rank(), 2);
        assert_eq!(p.fan.face_counts(), fan.face_counts());
    }

    #[test]
    fn project_square_edge_gives_complete_line() {
        let fan = fixtures::square_fan();
        let p = fan.project(&Simplex::new(vec![0])).unwrap();
        assert_eq!(p.fan.rank(), 1);
        assert!(p.fan.is_complete());
        assert_eq!(p.link_edges, vec![1, 3]);
    }

    #[test]
    fn project_mf1_vertex_is_rank_zero() {
        let mf = fixtures::mf1();
        let p = mf.project(&Simplex::new(vec![0])).unwrap();
        assert_eq!(p.fan.rank(), 0);
        assert_eq!(p.fan.todd_genus().unwrap(), 2);
    }

    #[test]
    fn project_rejects_non_faces() {
        let fan = fixtures::square_fan();
        // opposite edges never span a cone
        assert_eq!(
            fan.project(&Simplex::new(vec![0, 2])).unwrap_err(),
            Error::NotAFace
        );
    }

    #[test]
    fn iterated_projection_matches_direct() {
        for fan in [fixtures::square_fan(), fixtures::triangle_fan()] {
            for (s, _) in fan.cones.iter() {
                let first = s.ids()[0];
                let k1 = Simplex::new(vec![first]);
                let p1 = fan.project(&k1).unwrap();
                let rest: Vec<usize> = s
                    .ids()
                    .iter()
                    .skip(1)
                    .map(|i| p1.link_edges.iter().position(|j| j == i).unwrap())
                    .collect();
                let p2 = p1.fan.project(&Simplex::new(rest)).unwrap();
                let direct = fan.project(s).unwrap();
                assert_eq!(p2.fan.rank(), direct.fan.rank());
                assert_eq!(p2.fan.todd_genus().ok(), direct.fan.todd_genus().ok());
            }
        }
    }

    #[test]
    fn smooth_cones_have_trivial_groups() {
        let fan = fixtures::square_fan();
        for ci in 0..fan.n_cones() {
            let els = fan.group_elements(ci);
            assert_eq!(els.len(), 1);
            assert!(els[0].is_identity());
        }
        assert_eq!(fan.group_delta().len(), 1);
    }

    #[test]
    fn triangle_singular_cone_group() {
        use crate::rat::frac;
        let fan = fixtures::triangle_fan();
        // the cone on edges 0 and 2 has index two
        let ci = (0..fan.n_cones())
            .find(|&ci| fan.cone(ci).0.ids() == [0, 2])
            .unwrap();
        assert_eq!(fan.group(ci).order, Int::from(2));
        let els = fan.group_elements(ci);
        assert_eq!(els.len(), 2);
        let nontrivial = els.iter().find(|g| !g.is_identity()).unwrap();
        assert_eq!(nontrivial.fractional[0], frac(1, 2));
        assert_eq!(nontrivial.fractional[1], rat(0));
        assert_eq!(nontrivial.fractional[2], frac(1, 2));
        assert_eq!(fan.group_delta().len(), 2);
    }

    #[test]
    fn nonprimitive_edge_gives_order_two_group() {
        let fan = SimplicialMultiFan::new(
            1,
            vec![vec![Int::from(2)], vec![Int::from(-1)]],
            vec![(vec![0], 1), (vec![1], 1)],
        )
        .unwrap();
        let ci = 0;
        assert_eq!(fan.group(ci).order, Int::from(2));
        let els = fan.group_elements(ci);
        assert_eq!(els.len(), 2);
    }

    #[test]
    fn characters_are_trivial_off_the_cone() {
        let fan = fixtures::triangle_fan();
        for ci in 0..fan.n_cones() {
            let (s, _) = fan.cone(ci);
            for g in fan.group_elements(ci) {
                for i in 0..fan.n_edges() {
                    if !s.contains(i) {
                        assert!(g.chi(i).is_one());
                    }
                }
            }
        }
    }

    #[test]
    fn group_sizes_match_quotient_orders() {
        for fan in [fixtures::square_fan(), fixtures::triangle_fan(), fixtures::mf1()] {
            for ci in 0..fan.n_cones() {
                assert_eq!(fan.group_elements(ci).len(), fan.group(ci).order_usize());
            }
        }
    }
}
