//! Superelliptic curves `w^m = (z - a_1)...(z - a_N)`: invariants, local
//! charts at the points over infinity and at the branch points, and a
//! series-based residue computation.

pub mod chart;
pub mod residue;
pub mod series;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{MultiPoly, RatFunc, Ring};
use crate::error::{Error, Result};

pub use chart::{expand_at_branch_point, expand_at_infinity, Chart, Phase, Radical};
pub use residue::{formula_normalization, residue_series_oracle, Pole, Residue};
pub use series::TruncatedSeries;

/// Largest number of series terms a chart expansion may request.
pub const MAX_ORDER: i64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub s: u32,
    pub n1: u32,
    pub m1: u32,
    pub genus: u32,
    pub infinity_points: u32,
    /// Poles of the differentials at branch points; nonzero only for `n < 0`.
    pub finite_poles: u32,
}

/// Invariants of `w^m = P_N(z)`. `finite_poles` is reported as `N`; callers
/// with `n > 0` should ignore it.
pub fn curve_invariants(m: u32, big_n: u32) -> Result<CurveInvariants> {
    if m < 1 || big_n < 2 {
        return Err(Error::invalid(format!("need m >= 1 and N >= 2, got m={m}, N={big_n}")));
    }
    let s = m.gcd(&big_n);
    let twice = (m - 1) * (big_n - 1) + 1 - s;
    Ok(CurveInvariants {
        s,
        n1: big_n / s,
        m1: m / s,
        genus: twice / 2,
        infinity_points: s,
        finite_poles: big_n,
    })
}

/// Number of independent closed contours carrying the differentials with
/// exponent sign `n`.
pub fn cycle_count(m: u32, big_n: u32, n: i64) -> Result<u32> {
    let inv = curve_invariants(m, big_n)?;
    Ok(if n > 0 {
        (m - 1) * (big_n - 1)
    } else {
        2 * inv.genus + big_n - 1
    })
}

/// Curve together with the exponent `n` of the differentials
/// `w^(jn) dz / (z - a_i)`. Branch points are ring elements: symbolic
/// polynomials, rational functions or complex numbers.
#[derive(Clone, Debug)]
pub struct SuperellipticCurve<P> {
    m: u32,
    n: i64,
    branch_points: Vec<P>,
}

impl<P: Ring> SuperellipticCurve<P> {
    pub fn with_points(m: u32, n: i64, branch_points: Vec<P>) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid("m must be positive"));
        }
        if branch_points.len() < 2 {
            return Err(Error::invalid("need at least two branch points"));
        }
        if n == 0 {
            return Err(Error::invalid("n must be nonzero"));
        }
        if (n.unsigned_abs()).gcd(&(m as u64)) != 1 {
            return Err(Error::invalid(format!("n={n} and m={m} are not coprime")));
        }
        if n > 0 && m == 1 {
            return Err(Error::invalid("m = 1 with n > 0 gives exact differentials only"));
        }
        for i in 0..branch_points.len() {
            for j in 0..i {
                if branch_points[i].sub(&branch_points[j]).is_zero() {
                    return Err(Error::invalid(format!("branch points {} and {} coincide", j + 1, i + 1)));
                }
            }
        }
        Ok(Self { m, n, branch_points })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.branch_points.len() as u32
    }

    pub fn branch_points(&self) -> &[P] {
        &self.branch_points
    }

    pub fn invariants(&self) -> CurveInvariants {
        curve_invariants(self.m, self.degree()).expect("validated on construction")
    }

    /// Same curve with branch points mapped into another ring.
    pub fn map_points<Q: Ring>(&self, f: impl Fn(&P) -> Q) -> Result<SuperellipticCurve<Q>> {
        SuperellipticCurve::with_points(self.m, self.n, self.branch_points.iter().map(f).collect())
    }
}

/// Variable name of the `i`-th branch point (1-based).
pub fn point_var(i: usize) -> String {
    format!("a{i}")
}

impl SuperellipticCurve<MultiPoly> {
    /// Branch points `a1, ..., aN` as independent variables.
    pub fn symbolic(m: u32, n: i64, big_n: u32) -> Result<Self> {
        let pts = (1..=big_n as usize).map(|i| MultiPoly::var(&point_var(i))).collect();
        Self::with_points(m, n, pts)
    }

    pub fn to_ratfunc(&self) -> SuperellipticCurve<RatFunc> {
        self.map_points(|p| RatFunc::from_poly(p.clone()))
            .expect("same points stay distinct")
    }
}

impl SuperellipticCurve<Complex64> {
    /// Numeric curve; points closer than `1e-12` count as coincident.
    pub fn numeric(m: u32, n: i64, branch_points: Vec<Complex64>) -> Result<Self> {
        for i in 0..branch_points.len() {
            for j in 0..i {
                if (branch_points[i] - branch_points[j]).norm() < 1e-12 {
                    return Err(Error::invalid(format!("branch points {} and {} coincide", j + 1, i + 1)));
                }
            }
        }
        Self::with_points(m, n, branch_points)
    }

    /// `P(z) = Π (z - a_i)`.
    pub fn eval_p(&self, z: Complex64) -> Complex64 {
        self.branch_points.iter().map(|a| z - a).product()
    }

    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.branch_points.len() {
            for j in 0..i {
                best = best.min((self.branch_points[i] - self.branch_points[j]).norm());
            }
        }
        best
    }
}
