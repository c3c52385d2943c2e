//! Second solution `b_1^L = b_1^P ∫ W/(b_1^P)^2` of the hypergeometric
//! equation with a polynomial solution, evaluated numerically.
//!
//! The integral runs from [`LIOUVILLIAN_BASE_POINT`] along the real axis,
//! stepping over real zeros of `b_1^P` on small upper half-plane
//! semicircles. Derivatives for the residual checks are central
//! differences with step [`FD_STEP`]; the neighbouring values are formed as
//! `I(x) + ∫_x^(x±h)` so the shared part of the integral cancels exactly.

use num_complex::Complex64;
use num_rational::BigRational;

use super::families::thm7_triple;
use super::zeros::polynomial_zeros;
use super::X;
use crate::algebra::rational::to_f64;
use crate::algebra::{int, Rational};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_path, kronrod_panel, QuadOptions, Segment};

pub const LIOUVILLIAN_BASE_POINT: f64 = 2.0;
pub const FD_STEP: f64 = 1e-5;

/// `b_1^P`, its roots and the Wronskian `x^(-c) (x-1)^(c-b+n-1)`.
#[derive(Clone, Debug)]
pub struct LiouvillianKernel {
    n: i64,
    b: f64,
    c: f64,
    b_exact: Rational,
    c_exact: Rational,
    exact: Vec<Rational>,
    coeffs: Vec<f64>,
    roots: Vec<Complex64>,
}

fn horner_c(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn horner_exact(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(int(0), |acc, a| acc * x + a)
}

fn exact_f64(v: f64) -> Result<Rational> {
    BigRational::from_float(v).ok_or_else(|| Error::invalid(format!("{v} is not a finite number")))
}

impl LiouvillianKernel {
    pub fn new(n: i64, b: &Rational, c: &Rational) -> Result<Self> {
        let (b1, _) = thm7_triple(n, b, c)?;
        let poly = b1.as_poly().expect("b_1^P is a polynomial").clone();
        if poly.is_zero() {
            return Err(Error::precondition("b_1^P vanishes identically"));
        }
        let exact = if poly.is_constant() { vec![poly.lc()] } else { poly.to_univariate(X)? };
        let roots = if exact.len() > 1 { polynomial_zeros(&poly)?.roots } else { Vec::new() };
        Ok(Self {
            n,
            b: to_f64(b),
            c: to_f64(c),
            b_exact: b.clone(),
            c_exact: c.clone(),
            coeffs: exact.iter().map(to_f64).collect(),
            exact,
            roots,
        })
    }

    pub fn b1p(&self, z: Complex64) -> Complex64 {
        horner_c(&self.coeffs, z)
    }

    pub fn b1p_derivative(&self, z: Complex64) -> Complex64 {
        let d: Vec<f64> = self.coeffs.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
        horner_c(&d, z)
    }

    /// `z^(-c) (z-1)^(c-b+n-1)`, principal branches.
    pub fn wronskian(&self, z: Complex64) -> Complex64 {
        let e = self.c - self.b + self.n as f64 - 1.0;
        (-self.c * z.ln() + e * (z - 1.0).ln()).exp()
    }

    pub fn integrand(&self, z: Complex64) -> Complex64 {
        let p = self.b1p(z);
        self.wronskian(z) / (p * p)
    }

    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    /// Real-axis path from the base point to `x`, detouring above zeros
    /// of `b_1^P` that lie close to it.
    pub fn path_to(&self, x: f64) -> Result<Vec<Segment>> {
        let x0 = LIOUVILLIAN_BASE_POINT;
        let (lo, hi) = (x0.min(x), x0.max(x));
        let dir = if x >= x0 { 1.0 } else { -1.0 };
        let mut detours: Vec<(f64, f64)> = Vec::new();
        for r in &self.roots {
            if r.re <= lo - 0.25 || r.re >= hi + 0.25 || r.im.abs() >= 0.25 {
                continue;
            }
            let mut gap = [x0, x, 1.0, 0.0].iter().map(|&p| (r.re - p).abs()).fold(f64::INFINITY, f64::min);
            for other in &self.roots {
                if other != r {
                    gap = gap.min((other - r).norm());
                }
            }
            if gap < 1e-9 {
                return Err(Error::precondition(format!(
                    "b_1^P has a zero at {:.6} on the endpoint of the integration path",
                    r.re
                )));
            }
            let radius = (0.4 * gap).min(0.25);
            if r.im.abs() < radius && r.re > lo && r.re < hi {
                detours.push((r.re, radius));
            }
        }
        detours.sort_by(|a, b| (dir * a.0).total_cmp(&(dir * b.0)));
        let re = |v: f64| Complex64::new(v, 0.0);
        let mut path = Vec::new();
        let mut at = x0;
        for (centre, radius) in detours {
            let enter = centre - dir * radius;
            path.push(Segment::Line { from: re(at), to: re(enter) });
            let (start, end) = if dir > 0.0 { (std::f64::consts::PI, 0.0) } else { (0.0, std::f64::consts::PI) };
            path.push(Segment::Arc {
                center: re(centre),
                radius,
                start,
                end,
            });
            at = centre + dir * radius;
        }
        path.push(Segment::Line { from: re(at), to: re(x) });
        Ok(path)
    }
}

/// Values and checks at one sample point.
#[derive(Clone, Debug)]
pub struct LiouvillianSample {
    pub x: f64,
    pub b1p: f64,
    /// `∫ W/(b_1^P)^2` from the base point.
    pub integral: Complex64,
    pub b1l: Complex64,
    pub b3l: Complex64,
    /// `|b_1^P (b_1^L)' - (b_1^P)' b_1^L - W| / |W|` with the difference quotient for `(b_1^L)'`.
    pub wronskian_rel_error: f64,
    /// `|b'' + ((b-n+1)x - c)/(x(x-1)) b' - n b/(x(x-1)) b|` for `b = b_1^L`.
    pub ode_residual: f64,
}

/// Evaluates `b_1^L`, `b_3^L` and both checks at each `x > 1`.
pub fn liouvillian_eval(
    n: i64,
    b: &Rational,
    c: &Rational,
    sample_points: &[f64],
    quad_tol: f64,
) -> Result<Vec<LiouvillianSample>> {
    let kernel = LiouvillianKernel::new(n, b, c)?;
    let opts = QuadOptions {
        tol: quad_tol,
        ..QuadOptions::default()
    };
    let k = int(1) + &kernel.b_exact - &kernel.c_exact;
    if k == int(0) {
        return Err(Error::precondition("c = b + 1 is excluded"));
    }
    let kf = to_f64(&k);
    let h = FD_STEP;
    let mut out = Vec::with_capacity(sample_points.len());
    for &x in sample_points {
        if !x.is_finite() || x <= 1.0 {
            return Err(Error::invalid(format!("sample point {x} is not in (1, ∞)")));
        }
        let z = Complex64::new(x, 0.0);
        let p0 = kernel.b1p(z);
        let scale = kernel.coeffs.iter().map(|a| a.abs()).sum::<f64>() * x.max(1.0).powi(kernel.coeffs.len() as i32);
        if p0.norm() <= 1e-12 * scale {
            return Err(Error::precondition(format!("sample point {x} is a zero of b_1^P")));
        }
        let path = kernel.path_to(x)?;
        let f = |w: Complex64| kernel.integrand(w);
        let integral = integrate_path(&f, &path, opts)?.value;
        let b1l = p0 * integral;

        let along = |t: f64| kernel.integrand(Complex64::new(t, 0.0));
        let (dplus, _) = kronrod_panel(&along, x, x + h);
        let (dminus, _) = kronrod_panel(&along, x, x - h);
        let (xe, he) = (exact_f64(x)?, exact_f64(h)?);
        let pe = |v: &Rational| horner_exact(&kernel.exact, v);
        let (pp_e, p0_e, pm_e) = (pe(&(&xe + &he)), pe(&xe), pe(&(&xe - &he)));
        let dp1 = to_f64(&(&pp_e - &pm_e));
        let dp2 = to_f64(&(&pp_e - &(int(2) * &p0_e) + &pm_e));
        let (pp, pm) = (to_f64(&pp_e), to_f64(&pm_e));
        let d1 = integral * dp1 + dplus * pp - dminus * pm;
        let d2 = integral * dp2 + dplus * pp + dminus * pm;
        let db = d1 / (2.0 * h);
        let ddb = d2 / (h * h);

        let xx1 = x * (x - 1.0);
        let nf = n as f64;
        let residual = ddb + db * (((kernel.b - nf + 1.0) * x - kernel.c) / xx1) - b1l * (nf * kernel.b / xx1);
        let w = kernel.wronskian(z);
        let dp0 = kernel.b1p_derivative(z);
        let wr = p0 * db - dp0 * b1l;
        let exact_db = dp0 * integral + w / p0;
        let b3l = -(exact_db * x + b1l * kernel.b) / kf;
        out.push(LiouvillianSample {
            x,
            b1p: p0.re,
            integral,
            b1l,
            b3l,
            wronskian_rel_error: (wr - w).norm() / w.norm(),
            ode_residual: residual.norm(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn integrand_matches_closed_form() {
        // b_1^P = (1 + x)/3 here, so W/(b_1^P)^2 = 9 (x-1)^(2/3) / (x^(1/3) (x+1)^2)
        let k = LiouvillianKernel::new(1, &rat(-1, 3), &rat(1, 3)).unwrap();
        for x in [1.5, 2.0, 4.0, 7.25] {
            let z = Complex64::new(x, 0.0);
            let display = (x - 1.0f64).powf(2.0 / 3.0) / (x.powf(1.0 / 3.0) * (x + 1.0).powi(2));
            assert!((k.integrand(z).re / display - 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn detour_around_real_zero() {
        let k = LiouvillianKernel::new(2, &rat(-2, 3), &rat(-1, 3)).unwrap();
        let path = k.path_to(5.0).unwrap();
        assert_eq!(path.len(), 3);
        assert!(matches!(path[1], Segment::Arc { .. }));
        assert!((path[2].end() - Complex64::new(5.0, 0.0)).norm() < 1e-15);
        assert!((path[0].end() - path[1].start()).norm() < 1e-12);
        assert!((path[1].end() - path[2].start()).norm() < 1e-12);
    }

    #[test]
    fn checks_hold_at_samples() {
        for (n, b, c) in [(1, rat(-1, 3), rat(1, 3)), (2, rat(-2, 3), rat(-1, 3))] {
            let s = liouvillian_eval(n, &b, &c, &[2.0, 3.0, 5.0], 1e-10).unwrap();
            for v in &s {
                assert!(v.wronskian_rel_error < 1e-8, "{v:?}");
                assert!(v.ode_residual < 1e-6, "{v:?}");
            }
        }
    }

    #[test]
    fn rejects_bad_samples() {
        assert!(liouvillian_eval(1, &rat(-1, 3), &rat(1, 3), &[0.5], 1e-10).is_err());
        assert!(liouvillian_eval(2, &rat(-2, 3), &rat(-1, 3), &[2.0 + 3f64.sqrt()], 1e-10).is_err());
    }
}
