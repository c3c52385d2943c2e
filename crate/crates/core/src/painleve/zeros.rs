//! Complex roots of univariate polynomials via a balanced companion
//! matrix, with reports on conjugation and unit-circle inversion symmetry.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::rational::to_f64;
use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};

/// Pairing tolerance for the symmetry flags.
pub const SYMMETRY_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct RootReport {
    pub degree: usize,
    /// Sorted by real part, then imaginary part.
    pub roots: Vec<Complex64>,
    /// Exact coefficient palindrome `a_j = a_(d-j)`.
    pub palindromic: bool,
    /// Largest distance from `conj(z)` to the nearest root, relative to `max(1, |z|)`.
    pub conjugation_defect: f64,
    /// Largest distance from `1/conj(z)` to the nearest root over nonzero
    /// roots, relative to `max(1, 1/|z|)`.
    pub inversion_defect: f64,
}

impl RootReport {
    pub fn conjugation_symmetric(&self) -> bool {
        self.conjugation_defect <= SYMMETRY_TOL
    }

    pub fn inversion_paired(&self) -> bool {
        self.inversion_defect <= SYMMETRY_TOL
    }
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Parlett–Reinsch balancing with radix 2.
fn balance(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / 2.0;
            while c < g {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while c > g {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

fn nearest(roots: &[Complex64], z: Complex64) -> f64 {
    roots.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min)
}

/// All complex roots of a univariate polynomial, each refined by one
/// Newton step.
pub fn polynomial_zeros(p: &MultiPoly) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::invalid("the zero polynomial has no finite root set"));
    }
    if p.vars().len() > 1 {
        return Err(Error::invalid(format!("expected a univariate polynomial, got variables {:?}", p.vars())));
    }
    let exact: Vec<Rational> = match p.vars().first() {
        Some(v) => p.to_univariate(v)?,
        None => vec![p.lc()],
    };
    let degree = exact.len() - 1;
    if degree == 0 {
        return Err(Error::precondition("polynomial has degree 0"));
    }
    let palindromic = exact.iter().eq(exact.iter().rev());
    let coeffs: Vec<f64> = exact.iter().map(to_f64).collect();
    let low = coeffs.iter().position(|&a| a != 0.0).expect("nonzero polynomial");
    let reduced = &coeffs[low..];
    let d = reduced.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); low];
    if d > 0 {
        let lead = reduced[d];
        let mut m = DMatrix::<f64>::zeros(d, d);
        for j in 0..d {
            m[(0, j)] = -reduced[d - 1 - j] / lead;
        }
        for i in 1..d {
            m[(i, i - 1)] = 1.0;
        }
        balance(&mut m);
        for z in m.complex_eigenvalues().iter() {
            let (v, dv) = horner(reduced, *z);
            let step = if dv.norm() > 0.0 { v / dv } else { Complex64::new(0.0, 0.0) };
            let polished = z - step;
            roots.push(if polished.re.is_finite() && polished.im.is_finite() { polished } else { *z });
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let conjugation_defect = roots
        .iter()
        .map(|z| nearest(&roots, z.conj()) / z.norm().max(1.0))
        .fold(0.0, f64::max);
    let inversion_defect = roots
        .iter()
        .filter(|z| z.norm() > 0.0)
        .map(|z| {
            let inv = 1.0 / z.conj();
            nearest(&roots, inv) / inv.norm().max(1.0)
        })
        .fold(0.0, f64::max);
    Ok(RootReport {
        degree,
        roots,
        palindromic,
        conjugation_defect,
        inversion_defect,
    })
}

/// One CSV row of a zero distribution. The flags say whether `conj(z)` and
/// `1/conj(z)` are roots within [`SYMMETRY_TOL`], in the relative sense of
/// [`RootReport`]; a root at `0` counts as inversion-paired.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroRow {
    pub poly_id: String,
    pub degree: usize,
    pub re: f64,
    pub im: f64,
    pub conjugate_paired: bool,
    pub inversion_paired: bool,
}

impl ZeroRow {
    pub fn from_report(poly_id: &str, report: &RootReport) -> Vec<ZeroRow> {
        report
            .roots
            .iter()
            .map(|z| {
                let inversion_paired = z.norm() == 0.0 || {
                    let inv = 1.0 / z.conj();
                    nearest(&report.roots, inv) / inv.norm().max(1.0) <= SYMMETRY_TOL
                };
                ZeroRow {
                    poly_id: poly_id.to_string(),
                    degree: report.degree,
                    re: z.re,
                    im: z.im,
                    conjugate_paired: nearest(&report.roots, z.conj()) / z.norm().max(1.0) <= SYMMETRY_TOL,
                    inversion_paired,
                }
            })
            .collect()
    }
}

/// Writes rows with the header
/// `poly_id,degree,re,im,conjugate_paired,inversion_paired`.
pub fn write_zeros_csv<W: Write>(out: W, rows: &[ZeroRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn sixth_roots_of_unity() {
        let r = polynomial_zeros(&parse_poly("2/3*x^2 - 2/3*x + 2/3").unwrap()).unwrap();
        let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        assert!((r.roots[0] - w.conj()).norm() < 1e-14);
        assert!((r.roots[1] - w).norm() < 1e-14);
        assert!(r.palindromic && r.conjugation_symmetric() && r.inversion_paired());
    }

    #[test]
    fn zero_and_minus_one() {
        let r = polynomial_zeros(&parse_poly("1/3*x^2 + 1/3*x").unwrap()).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!((r.roots[0] + 1.0).norm() < 1e-15);
        assert_eq!(r.roots[1], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn asymmetric_roots_are_flagged() {
        let r = polynomial_zeros(&parse_poly("x^2 - 5*x + 6").unwrap()).unwrap();
        assert!(r.conjugation_symmetric());
        assert!(!r.inversion_paired());
        assert!(polynomial_zeros(&MultiPoly::zero()).is_err());
        assert!(polynomial_zeros(&MultiPoly::from_i64(4)).is_err());
        assert!(polynomial_zeros(&parse_poly("x*y + 1").unwrap()).is_err());
    }

    #[test]
    fn csv_layout() {
        let r = polynomial_zeros(&parse_poly("x^2 + 1").unwrap()).unwrap();
        let mut buf = Vec::new();
        write_zeros_csv(&mut buf, &ZeroRow::from_report("Q2", &r)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("poly_id,degree,re,im,conjugate_paired,inversion_paired"));
        assert_eq!(text.lines().count(), 3);
    }
}
