//! Closed contours on the curve, stored as z-plane paths with a start sheet.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::continuation::{circle, nearest_sheet, root_of_unity};
use super::{HomologyCase, PathSpec, PeriodOptions};
use crate::curve::{cycle_count, SuperellipticCurve};
use crate::error::{Error, Result};
use crate::quadrature::Segment;

/// Fraction of the local separation used as the radius of small circles.
const SMALL_RADIUS: f64 = 0.3;
/// Candidate base points tried for the keyhole loops.
const BASE_CANDIDATES: usize = 48;

/// What a basis contour goes around; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CycleKind {
    /// Commutator of the loops around `a_pair` and `a_(pair+1)`, started on `sheet`.
    Pochhammer { pair: usize, sheet: u32 },
    /// Small loop around the point `P_k` over infinity.
    Infinity { k: usize },
    /// Small loop around the branch point `(a_ν, 0)`.
    Puncture { nu: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cycle {
    pub kind: CycleKind,
    pub path: PathSpec,
}

/// Large-circle radius `10 max|a_i| + 10`.
pub fn infinity_radius(curve: &SuperellipticCurve<Complex64>) -> f64 {
    10.0 * curve.branch_points().iter().map(|a| a.norm()).fold(0.0, f64::max) + 10.0
}

fn separation_from(curve: &SuperellipticCurve<Complex64>, nu: usize) -> f64 {
    let pts = curve.branch_points();
    pts.iter()
        .enumerate()
        .filter(|&(h, _)| h != nu)
        .map(|(_, a)| (a - pts[nu]).norm())
        .fold(f64::INFINITY, f64::min)
}

fn point_segment_distance(p: Complex64, from: Complex64, to: Complex64) -> f64 {
    let d = to - from;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - from).norm();
    }
    let s = (((p - from) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (from + d * s)).norm()
}

/// Loop from `base` around the point `index` (0-based), counterclockwise
/// when `direction` is `1.0`.
fn keyhole(curve: &SuperellipticCurve<Complex64>, base: Complex64, index: usize, direction: f64) -> Vec<Segment> {
    let c = curve.branch_points()[index];
    let r = SMALL_RADIUS * separation_from(curve, index);
    let theta = (base - c).arg();
    let entry = c + Complex64::from_polar(r, theta);
    vec![
        Segment::Line { from: base, to: entry },
        circle(c, r, theta, direction),
        Segment::Line { from: entry, to: base },
    ]
}

/// Base point seeing every keyhole ray with the widest margin.
fn choose_base(curve: &SuperellipticCurve<Complex64>, clearance: f64) -> Result<Complex64> {
    let pts = curve.branch_points();
    let centroid: Complex64 = pts.iter().sum::<Complex64>() / pts.len() as f64;
    let spread = pts.iter().map(|a| (a - centroid).norm()).fold(0.0, f64::max);
    let radius = spread + curve.min_separation().max(1e-3);
    let mut best = (f64::NEG_INFINITY, centroid);
    for q in 0..BASE_CANDIDATES {
        // irrational offset keeps candidates off symmetric directions
        let angle = -PI / 2.0 + 2.0 * PI * (q as f64 + 0.137) / BASE_CANDIDATES as f64;
        let base = centroid + Complex64::from_polar(radius, angle);
        let mut margin = f64::INFINITY;
        for (i, a) in pts.iter().enumerate() {
            let r = SMALL_RADIUS * separation_from(curve, i);
            let entry = a + Complex64::from_polar(r, (base - a).arg());
            for (h, b) in pts.iter().enumerate() {
                if h != i {
                    margin = margin.min(point_segment_distance(*b, base, entry));
                }
            }
        }
        if margin > best.0 {
            best = (margin, base);
        }
    }
    if best.0 < clearance {
        return Err(Error::precondition(format!(
            "no base point keeps the keyhole rays {clearance:.3e} away from the branch points"
        )));
    }
    Ok(best.1)
}

/// `γ_i γ_(i+1) γ_i^(-1) γ_(i+1)^(-1)` for the 1-based pair `i`.
pub fn pochhammer(curve: &SuperellipticCurve<Complex64>, pair: usize, sheet: u32, clearance: f64) -> Result<Cycle> {
    let big_n = curve.branch_points().len();
    if pair < 1 || pair >= big_n {
        return Err(Error::invalid(format!("pair index {pair} outside 1..{big_n}")));
    }
    if sheet >= curve.m() {
        return Err(Error::invalid(format!("sheet {sheet} outside 0..{}", curve.m())));
    }
    let base = choose_base(curve, clearance)?;
    let (i, k) = (pair - 1, pair);
    let mut segments = keyhole(curve, base, i, 1.0);
    segments.extend(keyhole(curve, base, k, 1.0));
    segments.extend(keyhole(curve, base, i, -1.0));
    segments.extend(keyhole(curve, base, k, -1.0));
    Ok(Cycle {
        kind: CycleKind::Pochhammer { pair, sheet },
        path: PathSpec { segments, start_branch: sheet },
    })
}

/// Large circle traversed `m1` times clockwise, started on the sheet where
/// `w ≈ ε^(k-1) z^(N/m)` with `ε = exp(2πi/s)`.
pub fn infinity_loop(curve: &SuperellipticCurve<Complex64>, k: usize) -> Result<Cycle> {
    let inv = curve.invariants();
    if k < 1 || k > inv.s as usize {
        return Err(Error::invalid(format!("infinity point index {k} outside 1..={}", inv.s)));
    }
    let radius = infinity_radius(curve);
    let z0 = Complex64::new(radius, 0.0);
    let m = curve.m() as f64;
    // chart value ε^(k-1) R^(N/m) Π (1 - a_i/R)^(1/m)
    let mut w0 = root_of_unity(k as i64 - 1, inv.s) * radius.powf(curve.degree() as f64 / m);
    for a in curve.branch_points() {
        w0 *= (1.0 - a / radius).powf(1.0 / m);
    }
    let sheet = nearest_sheet(curve, z0, w0);
    Ok(Cycle {
        kind: CycleKind::Infinity { k },
        path: PathSpec {
            segments: vec![circle(Complex64::new(0.0, 0.0), radius, 0.0, -(inv.m1 as f64))],
            start_branch: sheet,
        },
    })
}

/// Circle around `a_ν` traversed `m` times counterclockwise.
pub fn puncture_loop(curve: &SuperellipticCurve<Complex64>, nu: usize) -> Result<Cycle> {
    let big_n = curve.branch_points().len();
    if nu < 1 || nu > big_n {
        return Err(Error::invalid(format!("branch point index {nu} outside 1..={big_n}")));
    }
    let r = SMALL_RADIUS * separation_from(curve, nu - 1);
    Ok(Cycle {
        kind: CycleKind::Puncture { nu },
        path: PathSpec {
            segments: vec![circle(curve.branch_points()[nu - 1], r, 0.0, curve.m() as f64)],
            start_branch: 0,
        },
    })
}

/// `L` contours for the given case: Pochhammer loops on sheets `0..m-2` for
/// the pairs `1..N-2` and on sheets `0..m-s-1` for the pair `N-1`, then
/// `s - 1` loops around infinity (`n > 0`) or `N - 1` loops around the
/// branch points (`n < 0`).
pub fn build_cycle_basis(curve: &SuperellipticCurve<Complex64>, case: HomologyCase, opts: &PeriodOptions) -> Result<Vec<Cycle>> {
    let expected = HomologyCase::of(curve);
    if case != expected {
        return Err(Error::precondition(format!("curve belongs to case {expected:?}, not {case:?}")));
    }
    let inv = curve.invariants();
    let (m, big_n, s) = (curve.m(), curve.degree() as usize, inv.s);
    let clearance = opts.clearance(curve);
    let mut out = Vec::new();
    for pair in 1..big_n {
        let sheets = if pair + 1 == big_n { m - s } else { m - 1 };
        for sheet in 0..sheets {
            out.push(pochhammer(curve, pair, sheet, clearance)?);
        }
    }
    match case {
        HomologyCase::Compact => {}
        HomologyCase::PuncturedAtInfinity => {
            for k in 1..s as usize {
                out.push(infinity_loop(curve, k)?);
            }
        }
        HomologyCase::PuncturedAtBranchPoints => {
            for nu in 1..big_n {
                out.push(puncture_loop(curve, nu)?);
            }
        }
    }
    debug_assert_eq!(out.len() as u32, cycle_count(m, curve.degree(), curve.n()).unwrap_or(0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basis_sizes() {
        let pts = vec![c(0.0, 0.0), c(1.0, 0.0), c(2.0, 1.0)];
        let opts = PeriodOptions::default();
        for (m, n, expect) in [(2, 1, 2), (3, 1, 4), (1, -1, 2), (3, -1, 4), (2, -1, 4)] {
            let cv = SuperellipticCurve::numeric(m, n, pts.clone()).unwrap();
            let basis = build_cycle_basis(&cv, HomologyCase::of(&cv), &opts).unwrap();
            assert_eq!(basis.len(), expect, "m = {m}, n = {n}");
            assert_eq!(basis.len() as u32, cycle_count(m, 3, n).unwrap());
        }
        let cv = SuperellipticCurve::numeric(3, 1, pts).unwrap();
        assert!(build_cycle_basis(&cv, HomologyCase::Compact, &opts).is_err());
    }

    #[test]
    fn paths_are_closed_and_clear() {
        let pts = vec![c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        let cv = SuperellipticCurve::numeric(2, 1, pts.clone()).unwrap();
        let clearance = PeriodOptions::default().clearance(&cv);
        for cyc in build_cycle_basis(&cv, HomologyCase::of(&cv), &PeriodOptions::default()).unwrap() {
            let segs = &cyc.path.segments;
            assert!((segs[0].start() - segs[segs.len() - 1].end()).norm() < 1e-12);
            for s in segs {
                for t in 0..=20 {
                    let z = s.point(t as f64 / 20.0);
                    assert!(pts.iter().all(|a| (z - a).norm() >= clearance));
                }
            }
        }
    }
}
