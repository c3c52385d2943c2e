//! Numeric root branches `u_j(a)` of `P_M(z, a)` and the momenta `v_j^ε`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{a_var, Sign};
use crate::algebra::rational::to_f64;
use crate::algebra::{RatFunc, Rational};
use crate::error::{Error, Result};

/// Relative size below which a leading coefficient counts as zero.
const DEGREE_DROP_TOL: f64 = 1e-13;
/// Relative distance below which two roots are reported as one.
const MERGE_TOL: f64 = 1e-7;
/// Closest a branch may come to a pole in [`v_momenta`].
const POLE_CLEARANCE: f64 = 1e-12;

/// Distinct roots sorted by `(re, im)` with their multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchRoots {
    pub roots: Vec<Complex64>,
    pub multiplicities: Vec<usize>,
    /// The `z^M` coefficient vanished at this point; `roots` belong to the
    /// lower-degree polynomial.
    pub degree_drop: bool,
}

impl BranchRoots {
    /// Roots repeated according to multiplicity.
    pub fn with_multiplicity(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(z, &k)| std::iter::repeat_n(*z, k))
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        !self.degree_drop && self.multiplicities.iter().all(|&k| k == 1)
    }
}

pub(crate) fn eval_coeffs(pm_coeffs: &[RatFunc], a: &[f64]) -> Result<Vec<Complex64>> {
    let lookup = |v: &str| {
        (1..=a.len()).find(|&i| a_var(i) == v).map(|i| Complex64::new(a[i - 1], 0.0))
    };
    pm_coeffs.iter().map(|c| c.eval_complex(&lookup)).collect()
}

fn quadratic(c: &[Complex64; 3]) -> Vec<Complex64> {
    let [c0, c1, c2] = *c;
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    // pick the sign that avoids cancellation
    let q = if (c1 + disc).norm() >= (c1 - disc).norm() { -0.5 * (c1 + disc) } else { -0.5 * (c1 - disc) };
    if q.norm() == 0.0 {
        return vec![Complex64::new(0.0, 0.0); 2];
    }
    vec![q / c2, c0 / q]
}

fn companion_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = c.len() - 1;
    let lead = c[d];
    let m = DMatrix::<Complex64>::from_fn(d, d, |i, j| {
        if i == 0 {
            -c[d - 1 - j] / lead
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let eig = m
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::numerical("companion matrix eigenvalues did not converge"))?;
    Ok(eig.iter().copied().collect())
}

/// Roots of a polynomial with complex coefficients `[c_0, ..., c_d]`.
pub fn complex_poly_roots(coeffs: &[Complex64]) -> Result<BranchRoots> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::precondition("P_M vanishes identically at this point"));
    }
    let mut top = coeffs.len() - 1;
    while top > 0 && coeffs[top].norm() <= DEGREE_DROP_TOL * scale {
        top -= 1;
    }
    let degree_drop = top + 1 < coeffs.len();
    let c = &coeffs[..=top];
    let raw = match top {
        0 => Vec::new(),
        1 => vec![-c[0] / c[1]],
        2 => quadratic(&[c[0], c[1], c[2]]),
        _ => companion_roots(c)?,
    };
    let mut roots: Vec<Complex64> = Vec::new();
    let mut multiplicities: Vec<usize> = Vec::new();
    for z in raw {
        match roots.iter().position(|w| (w - z).norm() <= MERGE_TOL * w.norm().max(1.0)) {
            Some(k) => {
                let m = multiplicities[k] as f64;
                roots[k] = (roots[k] * m + z) / (m + 1.0);
                multiplicities[k] += 1;
            }
            None => {
                roots.push(z);
                multiplicities.push(1);
            }
        }
    }
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&i, &j| roots[i].re.total_cmp(&roots[j].re).then(roots[i].im.total_cmp(&roots[j].im)));
    Ok(BranchRoots {
        roots: order.iter().map(|&i| roots[i]).collect(),
        multiplicities: order.iter().map(|&i| multiplicities[i]).collect(),
        degree_drop,
    })
}

/// Zeros `u_1, ..., u_M` of `P_M(z, a)` at a numeric point `a`.
pub fn u_roots(pm_coeffs: &[RatFunc], a: &[f64]) -> Result<BranchRoots> {
    if pm_coeffs.len() != a.len() + 1 {
        return Err(Error::invalid(format!(
            "P_M has degree {} in z but {} deformation variables were given",
            pm_coeffs.len().saturating_sub(1),
            a.len()
        )));
    }
    complex_poly_roots(&eval_coeffs(pm_coeffs, a)?)
}

/// `v_j^ε = Σ_i (1 + ε_i) β_i/(u_j - a_i)` over the poles `a_1..a_M, 0, 1`.
pub fn v_momenta(u: &[Complex64], betas: &[Rational], eps: &[Sign], a: &[f64]) -> Result<Vec<Complex64>> {
    if betas.len() != a.len() + 2 || eps.len() != betas.len() {
        return Err(Error::invalid(format!(
            "{} deformation variables need {} exponents and signs, got {} and {}",
            a.len(),
            a.len() + 2,
            betas.len(),
            eps.len()
        )));
    }
    let poles: Vec<f64> = a.iter().copied().chain([0.0, 1.0]).collect();
    let weights: Vec<f64> = betas.iter().zip(eps).map(|(b, e)| (1 + e.value()) as f64 * to_f64(b)).collect();
    u.iter()
        .map(|&uj| {
            let mut v = Complex64::new(0.0, 0.0);
            for (&p, &w) in poles.iter().zip(&weights) {
                let gap = uj - p;
                if gap.norm() <= POLE_CLEARANCE * p.abs().max(1.0) {
                    return Err(Error::precondition(format!("branch u = {uj} sits on the pole {p}")));
                }
                if w != 0.0 {
                    v += w / gap;
                }
            }
            Ok(v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::garnier::thm10_solution;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn simple_quadratics() {
        let r = complex_poly_roots(&[c(-1.0), c(0.0), c(1.0)]).unwrap();
        assert_eq!(r.roots, vec![c(-1.0), c(1.0)]);
        assert!(r.is_simple());
        let d = complex_poly_roots(&[c(1.0), c(-2.0), c(1.0)]).unwrap();
        assert_eq!(d.roots.len(), 1);
        assert_eq!(d.multiplicities, vec![2]);
        assert!((d.roots[0] - 1.0).norm() < 1e-12);
        let drop = complex_poly_roots(&[c(2.0), c(-1.0), c(0.0)]).unwrap();
        assert!(drop.degree_drop);
        assert_eq!(drop.roots, vec![c(2.0)]);
    }

    #[test]
    fn cubic_by_companion() {
        // (z - 1)(z + 2)(z - 3i)
        let roots = [c(1.0), c(-2.0), Complex64::new(0.0, 3.0)];
        let mut p = vec![c(1.0)];
        for r in roots {
            let mut next = vec![c(0.0); p.len() + 1];
            for (k, a) in p.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * r;
            }
            p = next;
        }
        let got = complex_poly_roots(&p).unwrap();
        assert_eq!(got.roots.len(), 3);
        assert!((got.roots[0] + 2.0).norm() < 1e-12);
        assert!((got.roots[1] - Complex64::new(0.0, 3.0)).norm() < 1e-12);
        assert!((got.roots[2] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn example_8_roots_match_newton() {
        let sol = thm10_solution(2, 2, 1).unwrap();
        let a = [2.2, 3.7];
        let coeffs = eval_coeffs(sol.pm_coeffs(), &a).unwrap();
        let got = u_roots(sol.pm_coeffs(), &a).unwrap();
        assert!(got.is_simple());
        for &z0 in &got.roots {
            // independent refinement with a few Newton steps
            let mut z = z0 + Complex64::new(1e-6, 1e-6);
            for _ in 0..50 {
                let p = coeffs[0] + z * (coeffs[1] + z * coeffs[2]);
                let dp = coeffs[1] + 2.0 * z * coeffs[2];
                z -= p / dp;
            }
            assert!((z - z0).norm() < 1e-12 * z.norm().max(1.0), "{z} vs {z0}");
        }
    }

    #[test]
    fn example_8_degree_drop_on_a2_minus_a1_equal_one() {
        // the z^2 coefficient is 3(a1 - a2 - 1)(a1 - a2 + 1)(a1 + a2 - 1)/8
        let sol = thm10_solution(2, 2, 1).unwrap();
        for a in [[2.0, 3.0], [2.25, 3.25], [2.5, 3.5]] {
            let r = u_roots(sol.pm_coeffs(), &a).unwrap();
            assert!(r.degree_drop);
            assert_eq!(r.roots.len(), 1);
        }
        let r = u_roots(sol.pm_coeffs(), &[2.0, 3.0]).unwrap();
        assert!((r.roots[0] - 1.5).norm() < 1e-14);
    }

    #[test]
    fn momenta() {
        let u = [Complex64::new(0.3, 0.7), c(5.0)];
        let a = [2.0, 3.0];
        let betas = vec![rat(1, 4); 4];
        let v = v_momenta(&u, &betas, &[Sign::Minus; 4], &a).unwrap();
        assert!(v.iter().all(|x| x.norm() == 0.0));
        let plus = v_momenta(&u, &betas, &[Sign::Plus; 4], &a).unwrap();
        let expect = 0.5 * (1.0 / (u[0] - 2.0) + 1.0 / (u[0] - 3.0) + 1.0 / u[0] + 1.0 / (u[0] - 1.0));
        assert!((plus[0] - expect).norm() < 1e-15);
        let one = v_momenta(&u, &betas, &[Sign::Plus, Sign::Minus, Sign::Minus, Sign::Minus], &a).unwrap();
        assert!((one[1] - 0.5 / (u[1] - 2.0)).norm() < 1e-15);
        assert!(v_momenta(&[c(3.0)], &betas, &[Sign::Plus; 4], &a).is_err());
        assert!(v_momenta(&u, &[int(1)], &[Sign::Plus], &a).is_err());
    }
}
