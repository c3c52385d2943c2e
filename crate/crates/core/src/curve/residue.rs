//! Residues of `Ω_i^(j) = w^(jn) dz / (z - a_i)` read off the local charts.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::chart::{expand_at_branch_point, expand_at_infinity, Phase};
use super::series::TruncatedSeries;
use super::{SuperellipticCurve, MAX_ORDER};
use crate::algebra::{int, Field, Rational, Ring};
use crate::error::{Error, Result};

/// A pole of the differentials: a point over infinity (`n > 0`) or a branch
/// point `(a_ν, 0)` (`n < 0`), both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pole {
    Infinity(usize),
    BranchPoint(usize),
}

/// `phase · value`.
#[derive(Clone, Debug, PartialEq)]
pub struct Residue<T> {
    pub phase: Phase,
    pub value: T,
}

impl<T: Ring> Residue<T> {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

fn check_indices<T: Ring>(curve: &SuperellipticCurve<T>, i: usize, j: u32) -> Result<()> {
    if i < 1 || i > curve.branch_points().len() {
        return Err(Error::invalid(format!("differential index {i} out of range")));
    }
    if j < 1 {
        return Err(Error::invalid("power index j must be positive"));
    }
    Ok(())
}

/// Runs `f` at increasing orders until the needed coefficient is in range.
fn with_doubling<R>(start: i64, mut f: impl FnMut(i64) -> Result<R>) -> Result<R> {
    let mut order = start.max(1);
    loop {
        match f(order) {
            Err(Error::InsufficientOrder(msg)) => {
                if order >= MAX_ORDER {
                    return Err(Error::InsufficientOrder(msg));
                }
                order = (order * 2).min(MAX_ORDER);
            }
            other => return other,
        }
    }
}

/// Residue at the `k`-th point over infinity, `n > 0`.
pub fn residue_at_infinity<T: Ring>(curve: &SuperellipticCurve<T>, i: usize, j: u32, k: usize) -> Result<Residue<T>> {
    check_indices(curve, i, j)?;
    if curve.n() <= 0 {
        return Err(Error::invalid("points over infinity are poles only for n > 0"));
    }
    let inv = curve.invariants();
    let jn = j as i64 * curve.n();
    let m1 = inv.m1 as i64;
    let phase = Phase::new(jn * (k as i64 - 1), inv.s);
    let start = jn * inv.n1 as i64 + 2 * m1;
    let a_i = curve.branch_points()[i - 1].clone();
    with_doubling(start, |order| {
        let chart = expand_at_infinity(curve, k, order)?;
        let wp = chart.w.pow(jn as u32);
        let dz = chart.z.derivative();
        // 1/(z - a_i) = t^m1 / (1 - a_i t^m1)
        let recip = TruncatedSeries::geometric(&TruncatedSeries::monomial(a_i.clone(), m1), order)?.shift(m1);
        let value = wp.mul(&dz).mul(&recip).coeff(-1)?;
        Ok(Residue { phase, value })
    })
}

/// Residue at the branch point `(a_ν, 0)`, `n < 0`. The radical prefactor
/// raised to `jn` is rational whenever the residue can be nonzero, so it is
/// folded into the value.
pub fn residue_at_branch_point<T: Field>(
    curve: &SuperellipticCurve<T>,
    i: usize,
    j: u32,
    nu: usize,
) -> Result<Residue<T>> {
    check_indices(curve, i, j)?;
    if curve.n() >= 0 {
        return Err(Error::invalid("branch points are poles only for n < 0"));
    }
    let m = curve.m() as i64;
    let jn_abs = j as i64 * curve.n().abs();
    if jn_abs % m != 0 {
        // all exponents of t are ≡ jn - 1 (mod m)
        return Ok(Residue { phase: Phase::ONE, value: T::zero() });
    }
    let d = (jn_abs / m) as u32;
    let pts = curve.branch_points();
    if nu < 1 || nu > pts.len() {
        return Err(Error::invalid(format!("branch point index {nu} out of range")));
    }
    let c_i = pts[nu - 1].sub(&pts[i - 1]);
    with_doubling(jn_abs + 2 * m, |order| {
        let chart = expand_at_branch_point(curve, nu, order)?;
        let rel = order;
        let w_inv = chart.w.inv_to(rel)?;
        let wp = w_inv.pow(jn_abs as u32);
        let dz = chart.z.derivative();
        let recip = if i == nu {
            TruncatedSeries::monomial(T::one(), -m)
        } else {
            TruncatedSeries::exact(0, vec![c_i.clone()])
                .add(&TruncatedSeries::monomial(T::one(), m))
                .inv_to(rel)?
        };
        let series_part = wp.mul(&dz).mul(&recip).coeff(-1)?;
        // (Π c_h^(1/m))^(jn) = Π c_h^(-d)
        let mut pre = T::one();
        for b in &chart.radical.as_ref().expect("branch chart carries a radical").bases {
            pre = pre.mul(&pow_u(&b.inv()?, d));
        }
        Ok(Residue { phase: Phase::ONE, value: series_part.mul(&pre) })
    })
}

fn pow_u<T: Ring>(x: &T, k: u32) -> T {
    let mut acc = T::one();
    for _ in 0..k {
        acc = acc.mul(x);
    }
    acc
}

/// Residue of `Ω_i^(j)` at `pole`, by chart substitution and truncated
/// series products alone.
pub fn residue_series_oracle<T: Field>(curve: &SuperellipticCurve<T>, i: usize, j: u32, pole: Pole) -> Result<Residue<T>> {
    match pole {
        Pole::Infinity(k) => residue_at_infinity(curve, i, j, k),
        Pole::BranchPoint(nu) => residue_at_branch_point(curve, i, j, nu),
    }
}

/// Constant relating the closed-form residue sums to the true residue:
/// `residue = phase · factor · closed_form`. Zero factor when the
/// residue vanishes for divisibility reasons.
///
/// At infinity the factor is `-m1 (-1)^(N1 d)` with `d = j n s / m` and the
/// phase `ε^(jn(k-1))`; at a branch point it is `m`.
pub fn formula_normalization<T: Ring>(curve: &SuperellipticCurve<T>, j: u32, pole: Pole) -> Result<(Phase, Rational)> {
    let m = curve.m() as i64;
    let n = curve.n();
    match pole {
        Pole::Infinity(k) => {
            if n <= 0 {
                return Err(Error::invalid("points over infinity are poles only for n > 0"));
            }
            let inv = curve.invariants();
            if k < 1 || k > inv.s as usize {
                return Err(Error::invalid(format!("infinity point index {k} outside 1..={}", inv.s)));
            }
            let jns = j as i64 * n * inv.s as i64;
            let phase = Phase::new(j as i64 * n * (k as i64 - 1), inv.s);
            if jns % m != 0 {
                return Ok((phase, int(0)));
            }
            let d = jns / m;
            let sign = if (inv.n1 as i64 * d).is_odd() { 1 } else { -1 };
            Ok((phase, int(sign * inv.m1 as i64)))
        }
        Pole::BranchPoint(nu) => {
            if n >= 0 {
                return Err(Error::invalid("branch points are poles only for n < 0"));
            }
            if nu < 1 || nu > curve.branch_points().len() {
                return Err(Error::invalid(format!("branch point index {nu} out of range")));
            }
            let factor = if (j as i64 * n).abs() % m == 0 { m } else { 0 };
            Ok((Phase::ONE, int(factor)))
        }
    }
}
