//! Rational scalars and the usual combinatorial coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Lossy conversion; goes through numerator and denominator separately so
/// huge values with a moderate quotient still convert.
pub fn to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = r.numer().bits().max(r.denom().bits()) as i64 - 60;
    let n = (r.numer() >> shift.max(0) as usize).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift.max(0) as usize).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Exact `Some(k)` when `r` is an integer fitting in i64.
pub fn as_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational literal: {s:?}"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Generalized binomial coefficient `beta (beta-1) ... (beta-j+1) / j!`.
pub fn binom(beta: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    let mut top = beta.clone();
    for k in 1..=j {
        acc = acc * &top / Rational::from_integer(BigInt::from(k));
        top -= Rational::one();
    }
    acc
}

/// Rising factorial `theta (theta+1) ... (theta+j-1)`.
pub fn pochhammer(theta: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    let mut f = theta.clone();
    for _ in 0..j {
        acc *= &f;
        f += Rational::one();
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.abs().gcd(&b.abs())
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_matches_small_table() {
        assert_eq!(binom(&rat(1, 3), 2), rat(-1, 9));
        assert_eq!(binom(&int(-1), 3), int(-1));
        assert_eq!(binom(&int(5), 7), int(0));
        assert_eq!(binom(&int(-2), 2), int(3));
        assert_eq!(binom(&rat(1, 2), 0), int(1));
    }

    #[test]
    fn binom_for_nonnegative_integers_is_the_ordinary_coefficient() {
        for n in 0..12i64 {
            for k in 0..14u32 {
                let expect = if (k as i64) > n {
                    BigInt::zero()
                } else {
                    factorial(n as u32) / (factorial(k) * factorial(n as u32 - k))
                };
                assert_eq!(binom(&int(n), k), Rational::from_integer(expect));
            }
        }
    }

    #[test]
    fn pochhammer_relates_to_binom() {
        // binom(-a, j) = (-1)^j (a)_j / j!
        let a = rat(7, 5);
        for j in 0..8u32 {
            let sign = if j % 2 == 0 { int(1) } else { int(-1) };
            let rhs = sign * pochhammer(&a, j) / Rational::from_integer(factorial(j));
            assert_eq!(binom(&-a.clone(), j), rhs);
        }
    }

    #[test]
    fn text_roundtrip() {
        for r in [rat(-3, 8), int(0), int(17), rat(5, -15)] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn to_f64_handles_big_parts() {
        let big = Rational::new(BigInt::from(10).pow(400) * 3, BigInt::from(10).pow(400) * 4);
        assert!((to_f64(&big) - 0.75).abs() < 1e-15);
    }
}
