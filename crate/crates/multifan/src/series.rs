//! Truncated Laurent series in one variable over cyclotomic coefficients.
//!
//! A series tracks a window `[lo, hi]`: coefficients below `lo` are exactly
//! zero, coefficients in the window are stored, and nothing is claimed
//! above `hi`. Binary operations propagate the window so that a stored
//! coefficient is always exact; asking beyond the window is an error, never
//! a silent zero.

use num::{One, Zero};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    lo: i64,
    coeffs: Vec<CycNum>,
}

impl LaurentSeries {
    pub fn zero(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi);
        LaurentSeries {
            lo,
            coeffs: vec![CycNum::zero(); (hi - lo + 1) as usize],
        }
    }

    pub fn constant(c: CycNum, hi: i64) -> Self {
        let mut s = LaurentSeries::zero(0, hi.max(0));
        s.coeffs[0] = c;
        s.trim()
    }

    pub fn one(hi: i64) -> Self {
        LaurentSeries::constant(CycNum::one(), hi)
    }

    pub fn monomial(c: CycNum, deg: i64, hi: i64) -> Self {
        assert!(deg <= hi);
        let mut s = LaurentSeries::zero(deg, hi);
        s.coeffs[0] = c;
        s
    }

    /// Power series of `exp(c s)` up to degree `hi`.
    pub fn exp(c: &Rat, hi: i64) -> Self {
        assert!(hi >= 0);
        let mut s = LaurentSeries::zero(0, hi);
        let mut term = Rat::one();
        for j in 0..=hi {
            if j > 0 {
                term = &term * c / Rat::from_integer(j.into());
            }
            s.coeffs[j as usize] = CycNum::from_rat(term.clone());
        }
        s
    }

    pub fn min_deg(&self) -> i64 {
        self.lo
    }

    pub fn max_deg(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `s^d`. Below the window the coefficient is known to
    /// be zero; above it the truncation cannot answer.
    pub fn coeff(&self, d: i64) -> Result<CycNum> {
        if d > self.max_deg() {
            return Err(Error::TruncationTooShort);
        }
        if d < self.lo {
            return Ok(CycNum::zero());
        }
        Ok(self.coeffs[(d - self.lo) as usize].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycNum::is_zero)
    }

    /// Drop exact leading zeros; keeps at least one coefficient.
    fn trim(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs[0].is_zero() {
            self.coeffs.remove(0);
            self.lo += 1;
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let lo = self.lo.min(other.lo);
        let hi = self.max_deg().min(other.max_deg());
        let mut out = LaurentSeries::zero(lo, hi.max(lo));
        for d in lo..=hi {
            let a = if d >= self.lo && d <= self.max_deg() {
                self.coeffs[(d - self.lo) as usize].clone()
            } else {
                CycNum::zero()
            };
            let b = if d >= other.lo && d <= other.max_deg() {
                other.coeffs[(d - other.lo) as usize].clone()
            } else {
                CycNum::zero()
            };
            out.coeffs[(d - lo) as usize] = a.add(&b);
        }
        out.trim()
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(CycNum::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        LaurentSeries {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// Product; the result window is the largest one on which every
    /// coefficient of the true product is determined by the operands.
    pub fn mul(&self, other: &Self) -> Self {
        let lo = self.lo + other.lo;
        let hi = (self.lo + other.max_deg()).min(other.lo + self.max_deg());
        let mut out = LaurentSeries::zero(lo, hi.max(lo));
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let d = self.lo + i as i64 + other.lo + j as i64;
                if d > hi {
                    break;
                }
                let idx = (d - lo) as usize;
                out.coeffs[idx] = out.coeffs[idx].add(&a.mul(b));
            }
        }
        out.trim()
    }

    pub fn shift(&self, by: i64) -> Self {
        LaurentSeries {
            lo: self.lo + by,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn truncate_to(&self, hi: i64) -> Result<Self> {
        if hi > self.max_deg() {
            return Err(Error::TruncationTooShort);
        }
        let keep = (hi - self.lo + 1).max(1) as usize;
        if hi < self.lo {
            return Ok(LaurentSeries::zero(hi, hi));
        }
        Ok(LaurentSeries {
            lo: self.lo,
            coeffs: self.coeffs[..keep].to_vec(),
        })
    }

    /// Multiplicative inverse. The leading stored coefficient must be
    /// nonzero within the window.
    pub fn inverse(&self) -> Result<Self> {
        let Some(offset) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            return Err(Error::CyclotomicDivisionByZero);
        };
        let d = self.lo + offset as i64;
        let rel = &self.coeffs[offset..];
        let n = rel.len();
        let lead_inv = rel[0].inv()?;
        let mut b = vec![CycNum::zero(); n];
        b[0] = lead_inv.clone();
        for k in 1..n {
            let mut acc = CycNum::zero();
            for i in 1..=k {
                acc = acc.add(&rel[i].mul(&b[k - i]));
            }
            b[k] = acc.neg().mul(&lead_inv);
        }
        Ok(LaurentSeries { lo: -d, coeffs: b })
    }
}

/// Expansion of `1 / (1 - chi * e^{-c s})` as a Laurent series up to
/// degree `order`.
///
/// With `chi = 1` the series has a simple pole with residue `1/c`; for any
/// other root of unity it starts at the constant `1/(1 - chi)`.
pub fn todd_factor(c: &Rat, chi: &CycNum, order: i64) -> Result<LaurentSeries> {
    let chi_is_one = chi.is_one();
    if chi_is_one && c.is_zero() {
        return Err(Error::NonGenericSpecialization);
    }
    let hi = order + 2;
    let exp = LaurentSeries::exp(&-c.clone(), hi);
    let denom = LaurentSeries::one(hi).sub(&exp.scale(chi));
    let inv = denom.inverse()?;
    inv.truncate_to(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::root_of_unity;
    use crate::rat::{frac, rat};

    fn q(n: i64, d: i64) -> CycNum {
        CycNum::from_rat(frac(n, d))
    }

    #[test]
    fn todd_factor_unit_character_is_the_bernoulli_series() {
        let f = todd_factor(&rat(1), &CycNum::one(), 2).unwrap();
        assert_eq!(f.coeff(-1).unwrap(), q(1, 1));
        assert_eq!(f.coeff(0).unwrap(), q(1, 2));
        assert_eq!(f.coeff(1).unwrap(), q(1, 12));
        assert_eq!(f.coeff(2).unwrap(), q(0, 1));
    }

    #[test]
    fn todd_factor_scales_with_the_coefficient() {
        let f = todd_factor(&rat(2), &CycNum::one(), 1).unwrap();
        assert_eq!(f.coeff(-1).unwrap(), q(1, 2));
        assert_eq!(f.coeff(0).unwrap(), q(1, 2));
        assert_eq!(f.coeff(1).unwrap(), q(1, 6));
    }

    #[test]
    fn todd_factor_at_minus_one_has_no_pole() {
        let chi = root_of_unity(&frac(1, 2));
        let f = todd_factor(&rat(3), &chi, 1).unwrap();
        assert_eq!(f.coeff(-1).unwrap(), q(0, 1));
        assert_eq!(f.coeff(0).unwrap(), q(1, 2));
        assert_eq!(f.coeff(1).unwrap(), q(3, 4));
    }

    #[test]
    fn todd_factor_rejects_degenerate_input() {
        assert_eq!(
            todd_factor(&rat(0), &CycNum::one(), 1).unwrap_err(),
            Error::NonGenericSpecialization
        );
    }

    #[test]
    fn todd_factor_times_denominator_is_one() {
        for c in [rat(1), rat(2), frac(-3, 2)] {
            let order = 4;
            let f = todd_factor(&c, &CycNum::one(), order).unwrap();
            let denom = LaurentSeries::one(order + 2)
                .sub(&LaurentSeries::exp(&-c.clone(), order + 2));
            let prod = f.mul(&denom);
            for d in prod.min_deg()..=prod.max_deg() {
                let expect = if d == 0 { CycNum::one() } else { CycNum::zero() };
                assert_eq!(prod.coeff(d).unwrap(), expect, "degree {d}");
            }
        }
    }

    #[test]
    fn coeff_of_square_product_matches_hand_convolution() {
        let f = todd_factor(&rat(1), &CycNum::one(), 1).unwrap();
        let sq = f.mul(&f);
        assert_eq!(sq.coeff(0).unwrap(), q(5, 12));
        assert_eq!(sq.coeff(-2).unwrap(), q(1, 1));
    }

    #[test]
    fn coeff_outside_window_errors_or_is_zero() {
        let f = todd_factor(&rat(1), &CycNum::one(), 1).unwrap();
        assert_eq!(f.coeff(2).unwrap_err(), Error::TruncationTooShort);
        assert_eq!(f.coeff(-5).unwrap(), CycNum::zero());
    }

    #[test]
    fn product_window_respects_both_truncations() {
        let f = todd_factor(&rat(1), &CycNum::one(), 3).unwrap();
        let g = todd_factor(&rat(2), &CycNum::one(), 1).unwrap();
        let prod = f.mul(&g);
        // g is only known to degree 1, and its pole lets degree 1 + (-1)
        // receive contributions, so the product is exact through degree 0.
        assert_eq!(prod.max_deg(), 0);
    }

    #[test]
    fn truncation_consistency_under_longer_operands() {
        let short = todd_factor(&rat(2), &CycNum::one(), 2).unwrap();
        let long = todd_factor(&rat(2), &CycNum::one(), 6).unwrap();
        let a = short.mul(&short);
        let b = long.mul(&long);
        for d in a.min_deg()..=a.max_deg() {
            assert_eq!(a.coeff(d).unwrap(), b.coeff(d).unwrap());
        }
    }

    #[test]
    fn inverse_round_trips() {
        let f = LaurentSeries::exp(&rat(3), 5).shift(-2);
        let inv = f.inverse().unwrap();
        let prod = f.mul(&inv);
        assert_eq!(prod.coeff(0).unwrap(), CycNum::one());
        for d in prod.min_deg()..=prod.max_deg() {
            if d != 0 {
                assert_eq!(prod.coeff(d).unwrap(), CycNum::zero());
            }
        }
    }
}
