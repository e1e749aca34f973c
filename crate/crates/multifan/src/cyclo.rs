//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! A `CycNum` is an element of Q[x]/Phi_m(x) stored as a dense coefficient
//! vector of length deg(Phi_m), always reduced. Conductor 1 means a plain
//! rational. Binary operations lift both operands to the lcm of their
//! conductors, and any value that reduces to a rational is demoted back to
//! conductor 1, so rationality is visible in the representation.
//!
//! Conductors stay small here: they are orders of multiplicity groups of
//! cones, and every exposed sum over such a group is rational in the end.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{frac_part, Rat};

fn phi_euler(m: u64) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

// Polynomials are dense coefficient vectors, lowest degree first.

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`, `b` nonzero.
fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    if rem.len() <= db {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    while rem.len() > db && !(rem.len() == 1 && rem[0].is_zero()) {
        let dr = rem.len() - 1;
        let c = rem.last().unwrap() / &lead;
        quot[dr - db] = c.clone();
        for i in 0..=db {
            let v = &rem[dr - db + i] - &c * &b[i];
            rem[dr - db + i] = v;
        }
        poly_trim(&mut rem);
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// The m-th cyclotomic polynomial, by exact division of x^m - 1 by the
/// cyclotomic polynomials of the proper divisors of m.
fn cyclotomic_poly(m: u64) -> Vec<Rat> {
    assert!(m >= 1);
    let mut table: Vec<(u64, Vec<Rat>)> = Vec::new();
    for d in 1..=m {
        if !m.is_multiple_of(d) {
            continue;
        }
        // x^d - 1
        let mut num = vec![Rat::zero(); d as usize + 1];
        num[0] = -Rat::one();
        num[d as usize] = Rat::one();
        let mut phi = num;
        for (e, p) in &table {
            if d % e == 0 {
                let (q, r) = poly_divrem(&phi, p);
                debug_assert!(r.iter().all(Zero::is_zero));
                phi = q;
            }
        }
        table.push((d, phi));
    }
    table.pop().unwrap().1
}

/// Element of Q(zeta_m), reduced mod Phi_m.
#[derive(Debug, Clone)]
pub struct CycNum {
    conductor: u64,
    coeffs: Vec<Rat>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        CycNum::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        CycNum {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_i64(n: i64) -> Self {
        CycNum::from_rat(crate::rat::rat(n))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    /// The rational value, or an error when the element has a genuine
    /// cyclotomic part.
    pub fn as_rational(&self) -> Result<Rat> {
        if self.conductor == 1 {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::ExpectedRational)
        }
    }

    fn normalized(conductor: u64, mut coeffs: Vec<Rat>) -> Self {
        let deg = phi_euler(conductor);
        coeffs.resize(deg, Rat::zero());
        if conductor > 1 && coeffs[1..].iter().all(Zero::is_zero) {
            return CycNum {
                conductor: 1,
                coeffs: vec![coeffs[0].clone()],
            };
        }
        CycNum { conductor, coeffs }
    }

    fn reduce(conductor: u64, poly: &[Rat]) -> Self {
        let phi = cyclotomic_poly(conductor);
        let (_, rem) = poly_divrem(poly, &phi);
        CycNum::normalized(conductor, rem)
    }

    /// Reduced coefficient vector in Q(zeta_target), full length, without
    /// any demotion; `conductor` must divide `target`.
    fn lift_coeffs(&self, target: u64) -> Vec<Rat> {
        let deg = phi_euler(target);
        if self.conductor == target {
            let mut out = self.coeffs.clone();
            out.resize(deg, Rat::zero());
            return out;
        }
        debug_assert_eq!(target % self.conductor, 0);
        let step = (target / self.conductor) as usize;
        let mut poly = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        let phi = cyclotomic_poly(target);
        let (_, mut rem) = poly_divrem(&poly, &phi);
        rem.resize(deg, Rat::zero());
        rem
    }

    fn common(a: &CycNum, b: &CycNum) -> (Vec<Rat>, Vec<Rat>, u64) {
        let m = num::integer::lcm(a.conductor, b.conductor);
        (a.lift_coeffs(m), b.lift_coeffs(m), m)
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        let (a, b, m) = CycNum::common(self, other);
        let coeffs = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        CycNum::normalized(m, coeffs)
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        let (a, b, m) = CycNum::common(self, other);
        CycNum::reduce(m, &poly_mul(&a, &b))
    }

    pub fn scale(&self, r: &Rat) -> CycNum {
        CycNum::normalized(
            self.conductor,
            self.coeffs.iter().map(|x| x * r).collect(),
        )
    }

    /// Multiplicative inverse via the extended Euclidean algorithm mod
    /// Phi_m, which is irreducible, so any nonzero element is a unit.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::CyclotomicDivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(CycNum::from_rat(self.coeffs[0].recip()));
        }
        let phi = cyclotomic_poly(self.conductor);
        // r0 = a, r1 = Phi_m; track s with r = s*a + t*Phi_m.
        let mut r0 = self.coeffs.clone();
        poly_trim(&mut r0);
        let mut r1 = phi;
        let mut s0 = vec![Rat::one()];
        let mut s1 = vec![Rat::zero()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divrem(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut s = vec![Rat::zero(); s0.len().max(qs.len())];
            for (i, v) in s0.iter().enumerate() {
                s[i] += v;
            }
            for (i, v) in qs.iter().enumerate() {
                s[i] -= v;
            }
            poly_trim(&mut s);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant gcd.
        debug_assert_eq!(r0.len(), 1);
        let g = r0[0].clone();
        let inv_coeffs: Vec<Rat> = s0.iter().map(|c| c / &g).collect();
        Ok(CycNum::reduce(self.conductor, &inv_coeffs))
    }

    pub fn pow(&self, e: u32) -> CycNum {
        let mut acc = CycNum::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl Eq for CycNum {}

impl std::fmt::Display for CycNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", crate::rat::fmt_rat(&self.coeffs[0]));
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = crate::rat::fmt_rat(c);
            match i {
                0 => parts.push(c),
                1 => parts.push(format!("{c}*z{}", self.conductor)),
                _ => parts.push(format!("{c}*z{}^{i}", self.conductor)),
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `e^{2 pi i q}` as an exact cyclotomic number. The conductor is the
/// denominator of `q` reduced mod 1.
pub fn root_of_unity(q: &Rat) -> CycNum {
    use num::ToPrimitive;
    let q = frac_part(q);
    let m = q.denom().to_u64().expect("conductor fits in u64");
    if m == 1 {
        return CycNum::one();
    }
    let a = q.numer().to_u64().expect("numerator fits in u64") as usize;
    let mut poly = vec![Rat::zero(); a + 1];
    poly[a] = Rat::one();
    CycNum::reduce(m, &poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, rat};
    use proptest::prelude::*;

    #[test]
    fn root_at_zero_is_one() {
        assert!(root_of_unity(&rat(0)).is_one());
        assert!(root_of_unity(&rat(5)).is_one());
    }

    #[test]
    fn root_at_one_half_is_minus_one() {
        let z = root_of_unity(&frac(1, 2));
        assert!(z.is_rational());
        assert_eq!(z.as_rational().unwrap(), rat(-1));
    }

    #[test]
    fn third_root_satisfies_its_minimal_polynomial() {
        let z = root_of_unity(&frac(1, 3));
        let lhs = z.pow(2).add(&z).add(&CycNum::one());
        assert!(lhs.is_zero());
        assert!(z.as_rational().is_err());
    }

    #[test]
    fn inverse_of_rational() {
        let two = CycNum::from_i64(2);
        assert_eq!(two.inv().unwrap().as_rational().unwrap(), frac(1, 2));
    }

    #[test]
    fn inverse_of_one_minus_second_root() {
        let a = CycNum::one().sub(&root_of_unity(&frac(1, 2)));
        assert_eq!(a.as_rational().unwrap(), rat(2));
        assert_eq!(a.inv().unwrap().as_rational().unwrap(), frac(1, 2));
    }

    #[test]
    fn inverse_of_one_minus_third_root() {
        let z = root_of_unity(&frac(1, 3));
        let a = CycNum::one().sub(&z);
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        // (2 + z)/3
        let expect = CycNum::from_i64(2).add(&z).scale(&frac(1, 3));
        assert_eq!(inv, expect);
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(
            CycNum::zero().inv().unwrap_err(),
            Error::CyclotomicDivisionByZero
        );
    }

    #[test]
    fn rational_detection_demotes_conductor() {
        let z = root_of_unity(&frac(1, 2));
        let a = CycNum::one().sub(&z).scale(&frac(1, 2));
        assert_eq!(a.as_rational().unwrap(), rat(1));
        let z3 = root_of_unity(&frac(1, 3));
        assert_eq!(z3.as_rational().unwrap_err(), Error::ExpectedRational);
    }

    #[test]
    fn mixed_conductor_arithmetic() {
        let z2 = root_of_unity(&frac(1, 2));
        let z3 = root_of_unity(&frac(1, 3));
        // zeta_2 * zeta_3 = zeta_6 = e^{2 pi i (1/2 + 1/3)} = e^{2 pi i 5/6}
        let prod = z2.mul(&z3);
        assert_eq!(prod, root_of_unity(&frac(5, 6)));
        let sum = z3.add(&z3.pow(2));
        assert_eq!(sum.as_rational().unwrap(), rat(-1));
    }

    proptest! {
        #[test]
        fn roots_multiply_by_adding_exponents(a in 0i64..12, b in 0i64..12, m in 1i64..9) {
            let x = root_of_unity(&frac(a, m));
            let y = root_of_unity(&frac(b, m));
            prop_assert_eq!(x.mul(&y), root_of_unity(&frac(a + b, m)));
        }

        #[test]
        fn nonzero_elements_invert(num in -5i64..=5, den in 1i64..=4, m in 1u64..=7) {
            let z = root_of_unity(&frac(1, m as i64));
            let a = z.scale(&frac(num, den)).add(&CycNum::from_i64(1));
            if !a.is_zero() {
                let inv = a.inv().unwrap();
                prop_assert!(a.mul(&inv).is_one());
            }
        }
    }
}
