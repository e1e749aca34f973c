//! Truncated multivariate polynomials over cyclotomic coefficients.
//!
//! These hold Todd-class expansions before and after Stanley-Reisner
//! reduction. Multiplication takes a support filter so that monomials
//! whose variable set is not a face can be dropped as soon as they appear;
//! a non-face support never becomes a face again when more variables are
//! multiplied in.

use std::collections::BTreeMap;

use crate::cyclo::CycNum;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    pub n_vars: usize,
    /// Total-degree truncation: all terms of degree <= order are exact.
    pub order: usize,
    terms: BTreeMap<Vec<u32>, CycNum>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize, order: usize) -> Self {
        MultiPoly {
            n_vars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_vars: usize, order: usize) -> Self {
        let mut p = MultiPoly::zero(n_vars, order);
        p.terms.insert(vec![0; n_vars], CycNum::one());
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycNum)> {
        self.terms.iter()
    }

    pub fn total_degree(exps: &[u32]) -> usize {
        exps.iter().map(|&e| e as usize).sum()
    }

    pub fn support(exps: &[u32]) -> Vec<usize> {
        exps.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: CycNum) {
        debug_assert_eq!(exps.len(), self.n_vars);
        debug_assert!(Self::total_degree(&exps) <= self.order);
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n_vars, other.n_vars);
        let order = self.order.min(other.order);
        let mut out = MultiPoly::zero(self.n_vars, order);
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            if Self::total_degree(e) <= order {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Multiply by a univariate power series in variable `var` given by
    /// dense coefficients (degree 0 first), keeping only terms whose
    /// support passes `keep`.
    pub fn mul_univariate<F>(&self, var: usize, coeffs: &[CycNum], keep: F) -> Self
    where
        F: Fn(&[usize]) -> bool,
    {
        let mut out = MultiPoly::zero(self.n_vars, self.order);
        for (exps, c) in &self.terms {
            let room = self.order - Self::total_degree(exps);
            for (d, f) in coeffs.iter().take(room + 1).enumerate() {
                if f.is_zero() {
                    continue;
                }
                let mut e = exps.clone();
                e[var] += d as u32;
                if d > 0 && exps[var] == 0 {
                    let supp = Self::support(&e);
                    if !keep(&supp) {
                        continue;
                    }
                }
                out.add_term(e, c.mul(f));
            }
        }
        out
    }

    /// Multiply by the squarefree monomial on `vars`, truncating and
    /// filtering supports as in `mul_univariate`.
    pub fn mul_monomial<F>(&self, vars: &[usize], keep: F) -> Self
    where
        F: Fn(&[usize]) -> bool,
    {
        let mut out = MultiPoly::zero(self.n_vars, self.order);
        for (exps, c) in &self.terms {
            if Self::total_degree(exps) + vars.len() > self.order {
                continue;
            }
            let mut e = exps.clone();
            for &v in vars {
                e[v] += 1;
            }
            let supp = Self::support(&e);
            if keep(&supp) {
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Terms of one total degree.
    pub fn degree_part(&self, k: usize) -> Vec<(Vec<u32>, CycNum)> {
        self.terms
            .iter()
            .filter(|(e, _)| Self::total_degree(e) == k)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    fn c(n: i64, d: i64) -> CycNum {
        CycNum::from_rat(frac(n, d))
    }

    #[test]
    fn univariate_product_truncates_by_total_degree() {
        let p = MultiPoly::one(2, 2);
        let todd = [c(1, 1), c(1, 2), c(1, 12)];
        let q = p
            .mul_univariate(0, &todd, |_| true)
            .mul_univariate(1, &todd, |_| true);
        assert_eq!(q.terms().count(), 6);
        assert_eq!(q.terms.get([1, 1].as_slice()), Some(&c(1, 4)));
        assert_eq!(q.terms.get([2, 0].as_slice()), Some(&c(1, 12)));
        assert_eq!(q.terms.get([2, 1].as_slice()), None);
    }

    #[test]
    fn support_filter_prunes_non_faces() {
        let p = MultiPoly::one(2, 3);
        let series = [c(1, 1), c(1, 1)];
        let no_mixed = |s: &[usize]| s.len() <= 1;
        let q = p
            .mul_univariate(0, &series, no_mixed)
            .mul_univariate(1, &series, no_mixed);
        assert_eq!(q.terms.get([1, 1].as_slice()), None);
        assert!(q.terms.contains_key([1, 0].as_slice()));
    }

    #[test]
    fn monomial_shift_respects_truncation() {
        let p = MultiPoly::one(3, 1);
        let q = p.mul_monomial(&[0, 2], |_| true);
        // degree 2 > order 1, so the product is empty
        assert_eq!(q.terms().count(), 0);
        let p2 = MultiPoly::one(3, 2);
        let q2 = p2.mul_monomial(&[0, 2], |_| true);
        assert_eq!(q2.terms().count(), 1);
    }
}
