//! Exact rational scalars.
//!
//! Everything in this crate is computed over `Rat`; floating point never
//! appears. `Rat` is kept in lowest terms with a positive denominator by
//! construction, so equality is plain structural equality.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(int(n), int(d))
}

/// Parse `"p"` or `"p/q"` with optional sign, exactly.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Internal(format!("invalid rational literal: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: Int = num.parse().map_err(|_| bad())?;
    let d: Int = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => Int::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Canonical text form: `p` when the denominator is one, else `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn rat_floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

pub fn rat_ceil(r: &Rat) -> Int {
    r.ceil().to_integer()
}

/// Reduce into `[0, 1)`.
pub fn frac_part(r: &Rat) -> Rat {
    r - Rat::from_integer(rat_floor(r))
}

/// Scale a nonzero rational normal by the positive factor that makes it a
/// primitive integer vector, scaling the offset along, so the halfspace
/// `<normal, x> <= offset` is unchanged.
pub fn normalize_halfspace(normal: &[Rat], offset: &Rat) -> Result<(Vec<Int>, Rat)> {
    if normal.iter().all(num::Zero::is_zero) {
        return Err(Error::Internal("zero halfspace normal".into()));
    }
    let mut lcm = Int::one();
    for x in normal {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<Int> = normal
        .iter()
        .map(|x| (x * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = Int::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.clone());
    }
    let scale = Rat::new(lcm, g.clone());
    let prim = ints.iter().map(|x| x / &g).collect();
    Ok((prim, offset * scale))
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[Rat], b: &[Int]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x * Rat::from_integer(y.clone()))
        .sum()
}

pub fn int_to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Scale a rational vector to a primitive integer vector, first nonzero
/// entry positive. Errors on the zero vector.
pub fn primitivize(v: &[Rat]) -> Result<Vec<Int>> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::Internal("primitivize of zero vector".into()));
    }
    let mut lcm = Int::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let mut ints: Vec<Int> = v
        .iter()
        .map(|x| (x * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = Int::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.clone());
    }
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    if ints.iter().find(|x| !x.is_zero()).unwrap().sign() == Sign::Minus {
        for x in ints.iter_mut() {
            *x = -x.clone();
        }
    }
    Ok(ints)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "3/7", "-10/4"] {
            let r = parse_rat(s).unwrap();
            let t = fmt_rat(&r);
            assert_eq!(parse_rat(&t).unwrap(), r);
        }
        assert_eq!(fmt_rat(&parse_rat("-10/4").unwrap()), "-5/2");
        assert_eq!(fmt_rat(&parse_rat("4/2").unwrap()), "2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn primitivize_scales_and_orients() {
        let v = vec![frac(-2, 3), frac(4, 3)];
        assert_eq!(primitivize(&v).unwrap(), vec![int(1), int(-2)]);
        assert!(primitivize(&[rat(0), rat(0)]).is_err());
    }

    #[test]
    fn frac_part_lands_in_unit_interval() {
        assert_eq!(frac_part(&frac(-1, 2)), frac(1, 2));
        assert_eq!(frac_part(&frac(7, 3)), frac(1, 3));
        assert_eq!(frac_part(&rat(-2)), rat(0));
    }
}
