//! The Stanley-Reisner model of the equivariant cohomology of a
//! simplicial multi-fan: classes, restrictions to maximal cones, the
//! localized push-forward, spanning sets, and the graded quotient by the
//! ideal of positive-degree polynomial classes.
//!
//! The push-forward is computed by single-variable localization: every
//! linear form is specialized along a generic vector `v`, turning the sum
//! over maximal cones into a Laurent series in one variable `s`. For a
//! complete multi-fan all polar parts cancel exactly, and the constant
//! term is independent of `v`; both facts are asserted at runtime.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::fan::{Simplex, SimplicialMultiFan};
use crate::matrix::RatMat;
use crate::rat::{dot, is_integer, Rat};
use crate::series::LaurentSeries;

/// Dense exponent vector over the fan's edges.
pub type Monomial = Vec<u32>;

pub fn monomial_degree(m: &Monomial) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

pub fn monomial_support(m: &Monomial) -> Vec<usize> {
    m.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, _)| i)
        .collect()
}

/// A class of Stanley-Reisner ring elements: monomials supported on faces
/// with rational coefficients. `order = None` means an exact polynomial
/// class; `Some(d)` marks a series class truncated at total degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohClass {
    n_vars: usize,
    order: Option<usize>,
    terms: BTreeMap<Monomial, Rat>,
}

impl CohClass {
    pub fn zero(fan: &SimplicialMultiFan) -> Self {
        CohClass {
            n_vars: fan.n_edges(),
            order: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(fan: &SimplicialMultiFan) -> Self {
        let mut c = CohClass::zero(fan);
        c.terms.insert(vec![0; c.n_vars], Rat::one());
        c
    }

    /// The squarefree monomial of a face.
    pub fn face_monomial(fan: &SimplicialMultiFan, j: &Simplex) -> Result<Self> {
        if !fan.is_face(j.ids()) {
            return Err(Error::NotAFace);
        }
        let mut m = vec![0u32; fan.n_edges()];
        for &i in j.ids() {
            m[i] = 1;
        }
        let mut c = CohClass::zero(fan);
        c.terms.insert(m, Rat::one());
        Ok(c)
    }

    pub fn from_terms(
        fan: &SimplicialMultiFan,
        terms: impl IntoIterator<Item = (Monomial, Rat)>,
        order: Option<usize>,
    ) -> Self {
        let mut c = CohClass {
            n_vars: fan.n_edges(),
            order,
            terms: BTreeMap::new(),
        };
        for (m, coeff) in terms {
            c.add_term(m, coeff);
        }
        c
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree when homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = monomial_degree(m);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    fn add_term(&mut self, m: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        if let Some(o) = self.order {
            if monomial_degree(&m) > o {
                return;
            }
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n_vars, other.n_vars);
        let order = match (self.order, other.order) {
            (None, o) | (o, None) => o,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let mut out = CohClass {
            n_vars: self.n_vars,
            order,
            terms: BTreeMap::new(),
        };
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return CohClass {
                n_vars: self.n_vars,
                order: self.order,
                terms: BTreeMap::new(),
            };
        }
        CohClass {
            n_vars: self.n_vars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    /// Product inside the Stanley-Reisner ring: monomials whose support is
    /// not a face vanish.
    pub fn mul(&self, other: &Self, fan: &SimplicialMultiFan) -> Self {
        assert_eq!(self.n_vars, other.n_vars);
        let order = match (self.order, other.order) {
            (None, o) | (o, None) => o,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let mut out = CohClass {
            n_vars: self.n_vars,
            order,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                if let Some(o) = order {
                    if monomial_degree(&m) > o {
                        continue;
                    }
                }
                if !fan.is_face(&monomial_support(&m)) {
                    continue;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: usize, fan: &SimplicialMultiFan) -> Self {
        let mut acc = CohClass::one(fan);
        for _ in 0..e {
            acc = acc.mul(self, fan);
        }
        acc
    }

    pub fn degree_part(&self, k: usize) -> Self {
        CohClass {
            n_vars: self.n_vars,
            order: None,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| monomial_degree(m) == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(monomial_degree).max().unwrap_or(0)
    }
}

/// A degree-two class `sum_i d_i x_i` given by one coefficient per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiClass {
    pub coeffs: Vec<Rat>,
}

impl XiClass {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        XiClass { coeffs }
    }

    pub fn zero(fan: &SimplicialMultiFan) -> Self {
        XiClass {
            coeffs: vec![Rat::zero(); fan.n_edges()],
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        XiClass {
            coeffs: coeffs.iter().map(|&c| crate::rat::rat(c)).collect(),
        }
    }

    pub fn scale_by_int(&self, nu: i64) -> Self {
        let f = crate::rat::rat(nu);
        XiClass {
            coeffs: self.coeffs.iter().map(|c| c * &f).collect(),
        }
    }

    pub fn to_class(&self, fan: &SimplicialMultiFan) -> CohClass {
        let terms = self.coeffs.iter().enumerate().map(|(i, c)| {
            let mut m = vec![0u32; fan.n_edges()];
            m[i] = 1;
            (m, c.clone())
        });
        CohClass::from_terms(fan, terms, None)
    }

    /// The linear form of the restriction to cone `ci`, i.e. the vertex of
    /// the associated multi-polytope.
    pub fn restrict(&self, fan: &SimplicialMultiFan, ci: usize) -> Vec<Rat> {
        let (s, _) = fan.cone(ci);
        let duals = fan.duals(ci);
        let mut out = vec![Rat::zero(); fan.rank()];
        for (pos, &i) in s.ids().iter().enumerate() {
            for c in 0..fan.rank() {
                out[c] += &self.coeffs[i] * &duals[(pos, c)];
            }
        }
        out
    }

    /// True when every restriction to a maximal cone is integral.
    pub fn is_t_cartier(&self, fan: &SimplicialMultiFan) -> bool {
        (0..fan.n_cones()).all(|ci| self.restrict(fan, ci).iter().all(is_integer))
    }
}

/// The polynomial-class image of a lattice form: `sum_i <u, v_i> x_i`.
pub fn theta(fan: &SimplicialMultiFan, u: &[Rat]) -> CohClass {
    let coeffs: Vec<Rat> = (0..fan.n_edges())
        .map(|i| dot(u, &fan.edge_rat(i)))
        .collect();
    XiClass::new(coeffs).to_class(fan)
}

/// Restriction of a class to a maximal cone, split by total degree, with
/// every dual basis vector specialized against `v`: entry `k` is the
/// degree-k part of the restriction evaluated at `v`.
pub fn localize(fan: &SimplicialMultiFan, ci: usize, x: &CohClass, v: &[Rat]) -> Vec<Rat> {
    let (s, _) = fan.cone(ci);
    let pairings: Vec<Rat> = (0..fan.n_edges())
        .map(|i| {
            if s.contains(i) {
                fan.dual_pairing(ci, i, v)
            } else {
                Rat::zero()
            }
        })
        .collect();
    let mut out = vec![Rat::zero(); x.max_degree() + 1];
    'term: for (m, c) in x.terms() {
        let mut val = c.clone();
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.contains(i) {
                continue 'term;
            }
            for _ in 0..e {
                val *= &pairings[i];
            }
        }
        out[monomial_degree(m)] += val;
    }
    out
}

/// Full evaluation of the restriction of `x` to cone `ci` at the vector
/// `at`: substitute each generator by the pairing of its dual vector.
pub fn iota_eval(fan: &SimplicialMultiFan, ci: usize, x: &CohClass, at: &[Rat]) -> Rat {
    localize(fan, ci, x, at).into_iter().sum()
}

/// The localized push-forward of `e^xi x` as a Laurent series in `s` up
/// to degree `order`, using the generic direction `v`.
///
/// For a complete multi-fan all coefficients in degrees `-rank .. -1`
/// cancel; this is asserted and a failure is reported as an error rather
/// than returned.
pub fn pushforward_series(
    fan: &SimplicialMultiFan,
    x: &CohClass,
    xi: &XiClass,
    v: &[Rat],
    order: i64,
) -> Result<LaurentSeries> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    if !fan.is_generic_vector(v) {
        return Err(Error::NonGenericVector);
    }
    let n = fan.rank() as i64;
    let need_hi = order + n;
    if let Some(d) = x.order() {
        if (d as i64) < need_hi {
            return Err(Error::TruncationTooShort);
        }
    }
    let mut total = LaurentSeries::zero(-n, order);
    for ci in 0..fan.n_cones() {
        let (s, w) = fan.cone(ci);
        let pairings: Vec<Rat> = s
            .ids()
            .iter()
            .map(|&i| fan.dual_pairing(ci, i, v))
            .collect();
        let c_xi: Rat = s
            .ids()
            .iter()
            .zip(&pairings)
            .map(|(&i, p)| &xi.coeffs[i] * p)
            .sum();
        let exp = LaurentSeries::exp(&c_xi, need_hi);
        let loc = localize(fan, ci, x, v);
        let mut xs = LaurentSeries::zero(0, need_hi);
        for (k, val) in loc.iter().enumerate() {
            if (k as i64) > need_hi {
                break;
            }
            if !val.is_zero() {
                xs = xs.add(&LaurentSeries::monomial(
                    CycNum::from_rat(val.clone()),
                    k as i64,
                    need_hi,
                ));
            }
        }
        let denom: Rat = pairings.iter().product::<Rat>()
            * Rat::from_integer(fan.group(ci).order.clone());
        let factor = Rat::from_integer(w.into()) / denom;
        let term = exp
            .mul(&xs)
            .scale(&CycNum::from_rat(factor))
            .shift(-n);
        let term = term.truncate_to(order)?;
        total = total.add(&term);
    }
    for d in total.min_deg()..0 {
        if !total.coeff(d)?.is_zero() {
            return Err(Error::PoleCancellationFailure);
        }
    }
    Ok(total)
}

/// Degree-zero component of the push-forward: exact, rational, and
/// independent of the localization direction.
pub fn p_star(fan: &SimplicialMultiFan, x: &CohClass, xi: &XiClass) -> Result<Rat> {
    let v = fan.generic_vector().to_vec();
    p_star_at(fan, x, xi, &v)
}

pub fn p_star_at(
    fan: &SimplicialMultiFan,
    x: &CohClass,
    xi: &XiClass,
    v: &[Rat],
) -> Result<Rat> {
    let series = pushforward_series(fan, x, xi, v, 0)?;
    series.coeff(0)?.as_rational()
}

/// The generating family of the degree-k part: products of `k1` basis
/// forms with a codimension `k - k1` face monomial, `0 <= k1 < k`.
pub fn spanning_set(fan: &SimplicialMultiFan, k: usize) -> Vec<CohClass> {
    let n = fan.rank();
    let mut out = Vec::new();
    for k1 in 0..k {
        let mut multiset = vec![0usize; k1];
        loop {
            let mut prefix = CohClass::one(fan);
            for &b in &multiset {
                let mut e = vec![Rat::zero(); n];
                e[b] = Rat::one();
                prefix = prefix.mul(&theta(fan, &e), fan);
            }
            for j in fan.faces(k - k1) {
                let xj = CohClass::face_monomial(fan, j).expect("faces enumerate faces");
                out.push(prefix.mul(&xj, fan));
            }
            // next nondecreasing multiset over 0..n
            let mut pos = k1;
            loop {
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
                pos -= 1;
                if multiset[pos] + 1 < n {
                    multiset[pos] += 1;
                    for q in pos + 1..k1 {
                        multiset[q] = multiset[pos];
                    }
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    out
}

/// All degree-k monomials supported on faces, in canonical order.
pub fn face_monomials(fan: &SimplicialMultiFan, k: usize) -> Vec<Monomial> {
    let m = fan.n_edges();
    let mut out = Vec::new();
    fn rec(
        fan: &SimplicialMultiFan,
        m: usize,
        next: usize,
        remaining: usize,
        current: &mut Monomial,
        support: &mut Vec<usize>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for i in next..m {
            support.push(i);
            if fan.is_face(support) {
                for e in 1..=remaining {
                    current[i] = e as u32;
                    rec(fan, m, i + 1, remaining - e, current, support, out);
                }
                current[i] = 0;
            }
            support.pop();
        }
    }
    let mut current = vec![0u32; m];
    let mut support = Vec::new();
    rec(fan, m, 0, k, &mut current, &mut support, &mut out);
    out.sort();
    out
}

/// A graded piece of the ordinary cohomology: the degree-k monomial space
/// modulo the ideal generated by the degree-one polynomial classes.
pub struct GradedQuotient {
    pub degree: usize,
    pub monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    rel_rref: RatMat,
    pivots: Vec<usize>,
    /// Monomials representing a basis of the quotient.
    pub basis: Vec<Monomial>,
}

pub fn graded_quotient(fan: &SimplicialMultiFan, k: usize) -> GradedQuotient {
    let monomials = face_monomials(fan, k);
    let index: BTreeMap<Monomial, usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let n = fan.rank();
    let mut rows = Vec::new();
    if k >= 1 {
        for m in face_monomials(fan, k - 1) {
            let mx = CohClass::from_terms(fan, [(m, Rat::one())], None);
            for b in 0..n {
                let mut e = vec![Rat::zero(); n];
                e[b] = Rat::one();
                let rel = theta(fan, &e).mul(&mx, fan);
                let mut row = vec![Rat::zero(); monomials.len()];
                for (mm, c) in rel.terms() {
                    row[index[mm]] = c.clone();
                }
                rows.push(row);
            }
        }
    }
    let (rel_rref, pivots) = if rows.is_empty() {
        (RatMat::zero(0, monomials.len()), Vec::new())
    } else {
        RatMat::from_rows(rows).rref()
    };
    let basis = monomials
        .iter()
        .enumerate()
        .filter(|(i, _)| !pivots.contains(i))
        .map(|(_, m)| m.clone())
        .collect();
    GradedQuotient {
        degree: k,
        monomials,
        index,
        rel_rref,
        pivots,
        basis,
    }
}

impl GradedQuotient {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical representative of the image of `x` in the quotient, as a
    /// coefficient vector over `monomials`. The input must be homogeneous
    /// of the quotient's degree (or zero).
    pub fn reduce(&self, x: &CohClass) -> Result<Vec<Rat>> {
        let mut vec = vec![Rat::zero(); self.monomials.len()];
        for (m, c) in x.terms() {
            if monomial_degree(m) != self.degree {
                return Err(Error::Internal(
                    "graded reduction of inhomogeneous class".into(),
                ));
            }
            let idx = self
                .index
                .get(m)
                .ok_or_else(|| Error::Internal("monomial outside face ring".into()))?;
            vec[*idx] = c.clone();
        }
        for (r, &p) in self.pivots.iter().enumerate() {
            if vec[p].is_zero() {
                continue;
            }
            let f = vec[p].clone();
            for (c, entry) in vec.iter_mut().enumerate() {
                *entry = &*entry - &f * &self.rel_rref[(r, c)];
            }
        }
        Ok(vec)
    }

    pub fn reduces_to_zero(&self, x: &CohClass) -> Result<bool> {
        Ok(self.reduce(x)?.iter().all(Zero::is_zero))
    }
}
