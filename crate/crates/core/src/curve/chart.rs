//! Local parametrizations of the curve near its poles.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use super::series::TruncatedSeries;
use super::{SuperellipticCurve, MAX_ORDER};
use crate::algebra::rational::to_f64;
use crate::algebra::{rat, Field, Rational, Ring};
use crate::error::{Error, Result};

/// `exp(2πi · num/den)` kept as a reduced fraction of a full turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase {
    num: u32,
    den: u32,
}

impl Phase {
    pub const ONE: Phase = Phase { num: 0, den: 1 };

    pub fn new(num: i64, den: u32) -> Self {
        assert!(den > 0, "phase denominator must be positive");
        let n = num.rem_euclid(den as i64) as u32;
        let g = n.gcd(&den).max(1);
        Phase { num: n / g, den: den / g }
    }

    pub fn turns(&self) -> (u32, u32) {
        (self.num, self.den)
    }

    pub fn mul(&self, other: &Phase) -> Phase {
        let den = self.den.lcm(&other.den);
        let a = self.num as i64 * (den / self.den) as i64;
        let b = other.num as i64 * (den / other.den) as i64;
        Phase::new(a + b, den)
    }

    pub fn pow(&self, k: i64) -> Phase {
        Phase::new(self.num as i64 * k, self.den)
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// `Some(±1)` when the phase is real.
    pub fn as_sign(&self) -> Option<i64> {
        match (self.num, self.den) {
            (0, _) => Some(1),
            (1, 2) => Some(-1),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * self.num as f64 / self.den as f64)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "1")
        } else {
            write!(f, "exp(2*pi*i*{}/{})", self.num, self.den)
        }
    }
}

/// `Π base^exponent` with principal branches, factor by factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Radical<T> {
    pub bases: Vec<T>,
    pub exponent: Rational,
}

impl Radical<Complex64> {
    pub fn to_complex(&self) -> Complex64 {
        let e = to_f64(&self.exponent);
        self.bases.iter().map(|b| b.powf(e)).product()
    }
}

/// `z = z(t)`, `w = phase · radical · w(t)` near a point of the curve.
#[derive(Clone, Debug)]
pub struct Chart<T> {
    pub z: TruncatedSeries<T>,
    pub w: TruncatedSeries<T>,
    pub phase: Phase,
    pub radical: Option<Radical<T>>,
}

impl Chart<Complex64> {
    /// Complex prefactor multiplying the `w` series.
    pub fn prefactor(&self) -> Complex64 {
        let r = self.radical.as_ref().map_or(Complex64::new(1.0, 0.0), Radical::to_complex);
        self.phase.to_complex() * r
    }
}

fn check_order(order: i64) -> Result<()> {
    if order < 1 {
        return Err(Error::invalid("series order must be at least 1"));
    }
    if order > MAX_ORDER {
        return Err(Error::InsufficientOrder(format!("order {order} exceeds the cap {MAX_ORDER}")));
    }
    Ok(())
}

/// Chart at the `k`-th point over infinity (1-based):
/// `z = t^(-m1)`, `w = ε^(k-1) t^(-N1) Π (1 - a_i t^m1)^(1/m)` with
/// `ε = exp(2πi/s)`, the `w` series known to `order` terms.
pub fn expand_at_infinity<T: Ring>(curve: &SuperellipticCurve<T>, k: usize, order: i64) -> Result<Chart<T>> {
    check_order(order)?;
    let inv = curve.invariants();
    if k < 1 || k > inv.s as usize {
        return Err(Error::invalid(format!("infinity point index {k} outside 1..={}", inv.s)));
    }
    let (m1, n1) = (inv.m1 as i64, inv.n1 as i64);
    let precision = order;
    let root = rat(1, curve.m() as i64);
    let mut w = TruncatedSeries::one().truncate(precision);
    for a in curve.branch_points() {
        let u = TruncatedSeries::monomial(a.neg(), m1);
        w = w.mul(&TruncatedSeries::one_plus_pow(&u, &root, precision)?);
    }
    Ok(Chart {
        z: TruncatedSeries::monomial(T::one(), -m1),
        w: w.shift(-n1),
        phase: Phase::new(k as i64 - 1, inv.s),
        radical: None,
    })
}

/// Chart at the branch point `(a_ν, 0)` (1-based `nu`):
/// `z = a_ν + t^m`, `w = t Π_{h≠ν} (a_ν - a_h + t^m)^(1/m)`, the constant
/// factors `(a_ν - a_h)^(1/m)` split off into the radical.
pub fn expand_at_branch_point<T: Field>(curve: &SuperellipticCurve<T>, nu: usize, order: i64) -> Result<Chart<T>> {
    check_order(order)?;
    let pts = curve.branch_points();
    if nu < 1 || nu > pts.len() {
        return Err(Error::invalid(format!("branch point index {nu} outside 1..={}", pts.len())));
    }
    let m = curve.m() as i64;
    let a_nu = &pts[nu - 1];
    let root = rat(1, m);
    let mut bases = Vec::new();
    let mut w = TruncatedSeries::one().truncate(order);
    for (h, a) in pts.iter().enumerate() {
        if h + 1 == nu {
            continue;
        }
        let c = a_nu.sub(a);
        let ci = c.inv().map_err(|_| Error::invalid("coincident branch points"))?;
        let u = TruncatedSeries::monomial(ci, m);
        w = w.mul(&TruncatedSeries::one_plus_pow(&u, &root, order)?);
        bases.push(c);
    }
    let z = TruncatedSeries::exact(0, vec![a_nu.clone()]).add(&TruncatedSeries::monomial(T::one(), m));
    Ok(Chart {
        z,
        w: w.shift(1),
        phase: Phase::ONE,
        radical: Some(Radical { bases, exponent: root }),
    })
}

/// `m w^(m-1) dw/dt - Σ_i P(z)/(z - a_i) dz/dt` along the chart, with the
/// prefactor's `m`-th power folded in; vanishes to the chart's precision.
pub fn dw_identity_defect<T: Ring>(curve: &SuperellipticCurve<T>, chart: &Chart<T>) -> TruncatedSeries<T> {
    let m = curve.m();
    // (phase · radical)^m: the phase is an s-th root of unity and s | m
    let mut pre_m = T::one();
    if let Some(r) = &chart.radical {
        debug_assert!(r.exponent.clone() * Rational::from_integer((m as i64).into()) == rat(1, 1));
        for b in &r.bases {
            pre_m = pre_m.mul(b);
        }
    }
    debug_assert!(chart.phase.pow(m as i64).is_one());
    let lhs = chart
        .w
        .pow(m - 1)
        .mul(&chart.w.derivative())
        .scale(&T::from_rational(&Rational::from_integer((m as i64).into())))
        .scale(&pre_m);
    let dz = chart.z.derivative();
    let pts = curve.branch_points();
    let mut rhs = TruncatedSeries::zero();
    for i in 0..pts.len() {
        let mut prod = dz.clone();
        for (h, a) in pts.iter().enumerate() {
            if h != i {
                prod = prod.mul(&chart.z.sub(&TruncatedSeries::monomial(a.clone(), 0)));
            }
        }
        rhs = rhs.add(&prod);
    }
    // an exact rhs carries no precision; borrow the lhs one
    let out = lhs.sub(&rhs);
    match lhs.precision() {
        Some(p) => out.truncate(p),
        None => out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::{MultiPoly, RatFunc};

    fn curve_0_1_x(m: u32, n: i64) -> SuperellipticCurve<MultiPoly> {
        let pts = vec![MultiPoly::zero(), MultiPoly::one(), MultiPoly::var("x")];
        SuperellipticCurve::with_points(m, n, pts).unwrap()
    }

    #[test]
    fn infinity_leading_terms() {
        let c = curve_0_1_x(3, 1);
        let ch = expand_at_infinity(&c, 1, 1).unwrap();
        assert_eq!(ch.z.valuation(), -1);
        assert_eq!(ch.w.valuation(), -1);
        assert!(ch.w.coeff(-1).unwrap().is_one());
        let pts = vec![int(0), int(1), int(3)];
        let c2 = SuperellipticCurve::with_points(2, 1, pts).unwrap();
        let ch2 = expand_at_infinity(&c2, 1, 4).unwrap();
        assert_eq!((ch2.z.valuation(), ch2.w.valuation()), (-2, -3));
    }

    #[test]
    fn third_coefficient_matches_factorwise_composition() {
        // w t = Π (1 - a_i t)^(1/3) for a = (0, 1, x); brute force: expand
        // (1 - t)^(1/3) and (1 - x t)^(1/3) separately and convolve
        let c = curve_0_1_x(3, 1);
        let ch = expand_at_infinity(&c, 1, 4).unwrap();
        let x = MultiPoly::var("x");
        let b = |k: u32| MultiPoly::constant(crate::algebra::binom(&rat(1, 3), k));
        let sign = |k: u32| if k.is_multiple_of(2) { MultiPoly::one() } else { -MultiPoly::one() };
        let mut expect = MultiPoly::zero();
        for k in 0..=3u32 {
            let t1 = &b(k) * &sign(k);
            let t2 = &(&b(3 - k) * &sign(3 - k)) * &x.pow(3 - k);
            expect = &expect + &(&t1 * &t2);
        }
        assert_eq!(ch.w.coeff(2).unwrap(), expect);
    }

    #[test]
    fn branch_point_chart_structure() {
        let pts = vec![int(0), int(1)];
        let c = SuperellipticCurve::with_points(2, -1, pts).unwrap();
        let ch2 = expand_at_branch_point(&c, 2, 6).unwrap();
        assert_eq!(ch2.z.coefficients().iter().filter(|c| !c.is_zero()).count(), 2);
        let ch = expand_at_branch_point(&c, 1, 6).unwrap();
        // w = (-1)^(1/2) t (1 - t^2)^(1/2)
        assert_eq!(ch.radical.as_ref().unwrap().bases, vec![int(-1)]);
        assert_eq!(ch.w.coeff(1).unwrap(), int(1));
        assert_eq!(ch.w.coeff(3).unwrap(), rat(-1, 2));
        let cn = c.map_points(|r| Complex64::new(to_f64(r), 0.0)).unwrap();
        let chn = expand_at_branch_point(&cn, 1, 6).unwrap();
        assert!((chn.prefactor() - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn dw_identity_holds_on_every_chart() {
        let c = curve_0_1_x(3, 1);
        for k in 1..=3 {
            let ch = expand_at_infinity(&c, k, 8).unwrap();
            assert!(dw_identity_defect(&c, &ch).is_zero());
        }
        let cr = SuperellipticCurve::with_points(
            2,
            -1,
            vec![RatFunc::zero(), RatFunc::one(), RatFunc::var("x"), RatFunc::var("y")],
        )
        .unwrap();
        for nu in 1..=4 {
            let ch = expand_at_branch_point(&cr, nu, 8).unwrap();
            assert!(dw_identity_defect(&cr, &ch).is_zero());
        }
    }
}
