//! The bivariate Garnier system in Hamiltonian form and its numeric
//! verification on algebraic solutions.
//!
//! `∂H_k/∂u_j`, `∂H_k/∂v_j` are exact (forward-mode dual numbers);
//! `∂u_j/∂a_k`, `∂v_j/∂a_k` are central differences with nearest-root
//! matching between the stencil points.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::branches::{u_roots, v_momenta};
use super::{GarnierAlgebraicSolution, GarnierSpec, Sign};
use crate::algebra::rational::to_f64;
use crate::algebra::{int, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
struct Dual {
    v: Complex64,
    d: Complex64,
}

impl Dual {
    fn constant(v: Complex64) -> Self {
        Self { v, d: Complex64::new(0.0, 0.0) }
    }

    fn seed(v: Complex64) -> Self {
        Self { v, d: Complex64::new(1.0, 0.0) }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual { v: self.v / o.v, d: (self.d * o.v - self.v * o.d) / (o.v * o.v) }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { v: -self.v, d: -self.d }
    }
}

/// `θ_1..θ_4`, `θ_∞` as floats and `ϰ = ((θ_1+θ_2+θ_3+θ_4-1)^2 - θ_∞^2)/4`.
#[derive(Clone, Copy, Debug)]
struct Params {
    theta: [f64; 4],
    kappa: f64,
}

impl Params {
    fn new(spec: &GarnierSpec) -> Result<Self> {
        if spec.m_vars != 2 {
            return Err(Error::precondition(format!("Hamiltonians are available for M = 2 only, got M = {}", spec.m_vars)));
        }
        let s: Rational = spec.theta.iter().sum::<Rational>() - int(1);
        let kappa = (&s * &s - &spec.theta_inf * &spec.theta_inf) / int(4);
        Ok(Self {
            theta: [0, 1, 2, 3].map(|i| to_f64(&spec.theta[i])),
            kappa: to_f64(&kappa),
        })
    }
}

/// `H_k` (`k = 0, 1` for `a_1, a_2`).
fn hamiltonian(k: usize, a: [f64; 2], u: [Dual; 2], v: [Dual; 2], p: &Params) -> Dual {
    let c = |x: f64| Dual::constant(Complex64::new(x, 0.0));
    let (a1, a2) = (c(a[0]), c(a[1]));
    let ak = c(a[k]);
    let one = c(1.0);
    let t = |x: Dual| x * (x - one) * (x - a1) * (x - a2);
    let t_prime_ak = c(a[k] * (a[k] - 1.0) * (a[k] - a[1 - k]));
    let lambda_ak = (ak - u[0]) * (ak - u[1]);
    let mut sum = c(0.0);
    for j in 0..2 {
        let uj = u[j];
        let lambda_prime = uj - u[1 - j];
        let shift = |i: usize| if i == k { 1.0 } else { 0.0 };
        let coeff = c(p.theta[0] - shift(0)) / (uj - a1)
            + c(p.theta[1] - shift(1)) / (uj - a2)
            + c(p.theta[2]) / uj
            + c(p.theta[3]) / (uj - one);
        let bracket = v[j] * v[j] - coeff * v[j] + c(p.kappa) / (uj * (uj - one));
        sum = sum + t(uj) / ((uj - ak) * lambda_prime) * bracket;
    }
    -(lambda_ak / t_prime_ak) * sum
}

/// `(∂H_k/∂u_j, ∂H_k/∂v_j)` for `j = 0, 1`.
fn gradient(k: usize, a: [f64; 2], u: [Complex64; 2], v: [Complex64; 2], p: &Params) -> ([Complex64; 2], [Complex64; 2]) {
    let mut du = [Complex64::new(0.0, 0.0); 2];
    let mut dv = du;
    for j in 0..2 {
        let mut uu = u.map(Dual::constant);
        uu[j] = Dual::seed(u[j]);
        du[j] = hamiltonian(k, a, uu, v.map(Dual::constant), p).d;
        let mut vv = v.map(Dual::constant);
        vv[j] = Dual::seed(v[j]);
        dv[j] = hamiltonian(k, a, u.map(Dual::constant), vv, p).d;
    }
    (du, dv)
}

/// Value of `H_k` at a point, for tests and reports.
pub fn hamiltonian_value(k: usize, a: [f64; 2], u: [Complex64; 2], v: [Complex64; 2], spec: &GarnierSpec) -> Result<Complex64> {
    if k > 1 {
        return Err(Error::invalid(format!("H_{} does not exist for M = 2", k + 1)));
    }
    let p = Params::new(spec)?;
    Ok(hamiltonian(k, a, u.map(Dual::constant), v.map(Dual::constant), &p).v)
}

/// `|LHS - RHS|` of the eight Hamilton equations, ordered
/// `(k, j, u-equation then v-equation)` for `∂/∂a_k` and branch `j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HamiltonResidual {
    pub equations: [f64; 8],
}

impl HamiltonResidual {
    pub fn max(&self) -> f64 {
        self.equations.iter().copied().fold(0.0, f64::max)
    }
}

fn simple_pair(sol: &GarnierAlgebraicSolution, a: [f64; 2]) -> Result<[Complex64; 2]> {
    let r = u_roots(sol.pm_coeffs(), &a)?;
    if !r.is_simple() || r.roots.len() != 2 {
        return Err(Error::precondition(format!("P_2 does not have two simple roots at a = ({}, {})", a[0], a[1])));
    }
    Ok([r.roots[0], r.roots[1]])
}

/// Orders `next` to follow `prev` by the cheaper of the two matchings.
fn match_pair(prev: [Complex64; 2], next: [Complex64; 2]) -> [Complex64; 2] {
    let keep = (prev[0] - next[0]).norm() + (prev[1] - next[1]).norm();
    let swap = (prev[0] - next[1]).norm() + (prev[1] - next[0]).norm();
    if swap < keep {
        [next[1], next[0]]
    } else {
        next
    }
}

/// Residual of the Garnier system for `M = 2` at `a`, finite-difference
/// step `h`.
pub fn garnier_residual_m2(sol: &GarnierAlgebraicSolution, eps: &[Sign], a: [f64; 2], h: f64) -> Result<HamiltonResidual> {
    if sol.m_vars() != 2 {
        return Err(Error::precondition(format!("M = {} but the check needs M = 2", sol.m_vars())));
    }
    if h.is_nan() || h <= 0.0 {
        return Err(Error::invalid("finite-difference step must be positive"));
    }
    if a[0] == a[1] || a.iter().any(|&x| x == 0.0 || x == 1.0) {
        return Err(Error::precondition("a_1, a_2, 0, 1 must be distinct"));
    }
    let spec = sol.spec(eps)?;
    let p = Params::new(&spec)?;
    let momenta = |u: [Complex64; 2], at: [f64; 2]| -> Result<[Complex64; 2]> {
        let v = v_momenta(&u, sol.betas(), eps, &at)?;
        Ok([v[0], v[1]])
    };
    let u0 = simple_pair(sol, a)?;
    let v0 = momenta(u0, a)?;
    let gap = (u0[0] - u0[1]).norm();
    let mut out = [0.0; 8];
    for k in 0..2 {
        let mut shifted = [[Complex64::new(0.0, 0.0); 2]; 2];
        let mut mom = shifted;
        for (s, sign) in [1.0, -1.0].into_iter().enumerate() {
            let mut at = a;
            at[k] += sign * h;
            let u = match_pair(u0, simple_pair(sol, at)?);
            let moved = (u[0] - u0[0]).norm().max((u[1] - u0[1]).norm());
            if moved > 0.25 * gap {
                return Err(Error::precondition("branches collide within the finite-difference stencil"));
            }
            shifted[s] = u;
            mom[s] = momenta(u, at)?;
        }
        let (dh_du, dh_dv) = gradient(k, a, u0, v0, &p);
        for j in 0..2 {
            let du = (shifted[0][j] - shifted[1][j]) / (2.0 * h);
            let dv = (mom[0][j] - mom[1][j]) / (2.0 * h);
            out[4 * k + 2 * j] = (du - dh_dv[j]).norm();
            out[4 * k + 2 * j + 1] = (dv + dh_du[j]).norm();
        }
    }
    Ok(HamiltonResidual { equations: out })
}

/// One `(a, ε)` line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub a: Vec<f64>,
    pub eps: Vec<i64>,
    pub residual: f64,
}

/// [`garnier_residual_m2`] over every point and all 16 sign vectors.
pub fn verify_grid(sol: &GarnierAlgebraicSolution, points: &[[f64; 2]], h: f64) -> Result<Vec<VerificationRow>> {
    let jobs: Vec<([f64; 2], Vec<Sign>)> = points
        .iter()
        .flat_map(|&a| Sign::all_vectors(4).into_iter().map(move |e| (a, e)))
        .collect();
    jobs.par_iter()
        .map(|(a, eps)| {
            let r = garnier_residual_m2(sol, eps, *a, h)?;
            Ok(VerificationRow {
                a: a.to_vec(),
                eps: eps.iter().map(|e| e.value()).collect(),
                residual: r.max(),
            })
        })
        .collect()
}

/// Branch continuation and residuals along the segment `from → to`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathReport {
    pub steps: usize,
    pub max_residual: f64,
    /// Largest branch displacement between consecutive points, over the
    /// step length.
    pub max_speed: f64,
    pub min_separation: f64,
}

pub fn continuity_check(
    sol: &GarnierAlgebraicSolution,
    eps: &[Sign],
    from: [f64; 2],
    to: [f64; 2],
    steps: usize,
    h: f64,
) -> Result<PathReport> {
    if steps == 0 {
        return Err(Error::invalid("need at least one step"));
    }
    let step_len = ((to[0] - from[0]).powi(2) + (to[1] - from[1]).powi(2)).sqrt() / steps as f64;
    let mut prev: Option<[Complex64; 2]> = None;
    let mut report = PathReport {
        steps,
        max_residual: 0.0,
        max_speed: 0.0,
        min_separation: f64::INFINITY,
    };
    for s in 0..=steps {
        let t = s as f64 / steps as f64;
        let a = [from[0] + t * (to[0] - from[0]), from[1] + t * (to[1] - from[1])];
        let mut u = simple_pair(sol, a)?;
        if let Some(pu) = prev {
            u = match_pair(pu, u);
            let jump = (u[0] - pu[0]).norm().max((u[1] - pu[1]).norm());
            report.max_speed = report.max_speed.max(jump / step_len);
        }
        report.min_separation = report.min_separation.min((u[0] - u[1]).norm());
        report.max_residual = report.max_residual.max(garnier_residual_m2(sol, eps, a, h)?.max());
        prev = Some(u);
    }
    Ok(report)
}
