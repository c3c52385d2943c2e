//! Laurent series in a local parameter `t`, truncated or exact.

use std::fmt;

use crate::algebra::rational::binom;
use crate::algebra::{Field, Rational, Ring};
use crate::error::{Error, Result};

/// `Σ coeffs[k] t^(valuation + k)`, known for every exponent below
/// `precision`; `precision == None` means the series is exact (finite).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T> {
    valuation: i64,
    coeffs: Vec<T>,
    precision: Option<i64>,
}

impl<T: Ring> TruncatedSeries<T> {
    pub fn exact(valuation: i64, coeffs: Vec<T>) -> Self {
        Self {
            valuation,
            coeffs,
            precision: None,
        }
        .normalized()
    }

    pub fn truncated(valuation: i64, coeffs: Vec<T>, precision: i64) -> Self {
        Self {
            valuation,
            coeffs,
            precision: Some(precision),
        }
        .normalized()
    }

    pub fn monomial(c: T, exponent: i64) -> Self {
        Self::exact(exponent, vec![c])
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    pub fn zero() -> Self {
        Self::exact(0, Vec::new())
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn precision(&self) -> Option<i64> {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// Coefficients from `valuation` upward.
    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `t^e`; fails when `e` lies beyond the known range.
    pub fn coeff(&self, e: i64) -> Result<T> {
        if let Some(p) = self.precision {
            if e >= p {
                return Err(Error::InsufficientOrder(format!(
                    "coefficient of t^{e} requested, series known below t^{p}"
                )));
            }
        }
        if e < self.valuation {
            return Ok(T::zero());
        }
        Ok(self
            .coeffs
            .get((e - self.valuation) as usize)
            .cloned()
            .unwrap_or_else(T::zero))
    }

    fn normalized(mut self) -> Self {
        if let Some(p) = self.precision {
            let keep = (p - self.valuation).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().map(Ring::is_zero).unwrap_or(false) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.valuation = self.precision.map(|p| self.valuation.min(p)).unwrap_or(0);
            return self;
        }
        self.coeffs.drain(..lead);
        self.valuation += lead as i64;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drops every term at or above `t^precision`.
    pub fn truncate(&self, precision: i64) -> Self {
        let p = self.precision.map_or(precision, |q| q.min(precision));
        Self {
            valuation: self.valuation,
            coeffs: self.coeffs.clone(),
            precision: Some(p),
        }
        .normalized()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
            precision: self.precision,
        }
        .normalized()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            precision: self.precision.map(|p| p + k),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = match (self.precision, other.precision) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if self.is_zero() {
            return Self { precision, ..other.clone() }.normalized();
        }
        if other.is_zero() {
            return Self { precision, ..self.clone() }.normalized();
        }
        let lo = self.valuation.min(other.valuation);
        let hi = (self.valuation + self.coeffs.len() as i64).max(other.valuation + other.coeffs.len() as i64);
        let mut coeffs = vec![T::zero(); (hi - lo) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = (self.valuation - lo) as usize + k;
            coeffs[idx] = coeffs[idx].add(c);
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let idx = (other.valuation - lo) as usize + k;
            coeffs[idx] = coeffs[idx].add(c);
        }
        Self {
            valuation: lo,
            coeffs,
            precision,
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        Self {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
            precision: self.precision,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let precision = match (self.precision, other.precision) {
            (Some(a), Some(b)) => Some((self.valuation + b).min(other.valuation + a)),
            (Some(a), None) => Some(a + other.valuation),
            (None, Some(b)) => Some(b + self.valuation),
            (None, None) => None,
        };
        if self.is_zero() || other.is_zero() {
            let mut z = Self::zero();
            z.precision = precision;
            return z.normalized();
        }
        let valuation = self.valuation + other.valuation;
        let limit = precision.map(|p| (p - valuation).max(0) as usize);
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = limit.map_or(full, |l| l.min(full));
        let mut coeffs = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self {
            valuation,
            coeffs,
            precision,
        }
        .normalized()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal `d/dt`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.mul(&T::from_rational(&Rational::from_integer((self.valuation + k as i64).into()))))
            .collect();
        Self {
            valuation: self.valuation - 1,
            coeffs,
            precision: self.precision.map(|p| p - 1),
        }
        .normalized()
    }

    /// `(1 + u)^beta` by the binomial series, for `u` of positive valuation,
    /// known below `t^precision`.
    pub fn one_plus_pow(u: &Self, beta: &Rational, precision: i64) -> Result<Self> {
        if !u.is_zero() && u.valuation < 1 {
            return Err(Error::invalid("binomial series needs a series vanishing at t = 0"));
        }
        let mut acc = Self::one().truncate(precision);
        if u.is_zero() {
            return Ok(acc);
        }
        let mut term = Self::one();
        let mut k = 1u32;
        while (k as i64) * u.valuation < precision {
            term = term.mul(u).truncate(precision);
            let c = binom(beta, k);
            if !num_traits::Zero::is_zero(&c) {
                acc = acc.add(&term.scale(&T::from_rational(&c)));
            }
            k += 1;
        }
        Ok(acc)
    }

    /// `1 / (1 - u)` by the geometric series, `u` of positive valuation.
    pub fn geometric(u: &Self, precision: i64) -> Result<Self> {
        Self::one_plus_pow(&u.neg(), &Rational::from_integer((-1).into()), precision)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> TruncatedSeries<U> {
        TruncatedSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(f).collect(),
            precision: self.precision,
        }
        .normalized()
    }
}

impl<T: Field> TruncatedSeries<T> {
    /// Multiplicative inverse, known to the same relative order.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let rel = match self.precision {
            Some(p) => p - self.valuation,
            None => {
                return Err(Error::invalid(
                    "inverse of an exact series needs a truncation; use inv_to",
                ))
            }
        };
        self.inv_to(rel)
    }

    /// Inverse with `relative` known terms.
    pub fn inv_to(&self, relative: i64) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv0 = self.coeffs[0].inv()?;
        let n = relative.max(0) as usize;
        let mut out: Vec<T> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut s = T::zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s = s.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out.push(s.mul(&inv0).neg());
        }
        let rel = match self.precision {
            Some(p) => relative.min(p - self.valuation),
            None => relative,
        };
        Ok(Self::truncated(-self.valuation, out, -self.valuation + rel))
    }
}

impl<T: Ring + fmt::Display> fmt::Display for TruncatedSeries<T> {
    /// `(c)*t^e + ... + O(t^p)`, ascending exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(format!("({c})*t^{}", self.valuation + k as i64));
        }
        if let Some(p) = self.precision {
            parts.push(format!("O(t^{p})"));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn binomial_series_squares_back() {
        // (1 + t)^(1/2) squared is 1 + t up to the truncation
        let u = TruncatedSeries::monomial(int(1), 1);
        let s = TruncatedSeries::one_plus_pow(&u, &rat(1, 2), 8).unwrap();
        assert_eq!(s.coeff(2).unwrap(), rat(-1, 8));
        let sq = s.mul(&s);
        assert_eq!(sq.precision(), Some(8));
        assert_eq!(sq.coefficients(), &[int(1), int(1)]);
    }

    #[test]
    fn inverse_and_precision_bookkeeping() {
        let s = TruncatedSeries::exact(-2, vec![int(2), int(1), int(3)]);
        let i = s.inv_to(6).unwrap();
        assert_eq!(i.valuation(), 2);
        assert_eq!(i.precision(), Some(8));
        let one = s.mul(&i);
        assert_eq!(one.coeff(0).unwrap(), int(1));
        for e in 1..6 {
            assert_eq!(one.coeff(e).unwrap(), int(0));
        }
        assert!(one.coeff(6).is_err());
    }

    #[test]
    fn derivative_of_laurent_series() {
        let s = TruncatedSeries::exact(-1, vec![int(1), int(0), int(5)]);
        let d = s.derivative();
        assert_eq!(d.coeff(-2).unwrap(), int(-1));
        assert_eq!(d.coeff(0).unwrap(), int(5));
        assert_eq!(d.coeff(-1).unwrap(), int(0));
    }
}
