//! Contour integrals of `Ω_i^(j)`, the period matrix and the checks built on it.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::continuation::{continue_w, nearest_sheet, principal_root, root_of_unity, WTrace};
use super::cycles::{Cycle, CycleKind};
use super::{PathSpec, PeriodMatrix, PeriodOptions};
use crate::algebra::rational::to_f64;
use crate::curve::{cycle_count, formula_normalization, point_var, Pole, SuperellipticCurve};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::schlesinger::closed_form::{branch_residue_sum, infinity_residue_sum};
use crate::schlesinger::Frame;

/// `|w_end - w_start|` allowed, relative to `|w_start|`, for a path to count as closed on the curve.
const CLOSURE_TOL: f64 = 1e-8;

fn check_power(curve: &SuperellipticCurve<Complex64>, i: usize, j: u32) -> Result<()> {
    if i < 1 || i > curve.branch_points().len() {
        return Err(Error::invalid(format!("differential index {i} out of range")));
    }
    if j < 1 {
        return Err(Error::invalid("power index j must be positive"));
    }
    Ok(())
}

fn closed_trace(curve: &SuperellipticCurve<Complex64>, path: &PathSpec, opts: &PeriodOptions) -> Result<WTrace> {
    if !path.is_closed() {
        return Err(Error::precondition("path is not closed in the z-plane"));
    }
    let trace = continue_w(curve, path, opts.steps, opts.clearance(curve))?;
    if (trace.end() - trace.start()).norm() > CLOSURE_TOL * trace.start().norm() {
        return Err(Error::precondition(format!(
            "path does not close on the curve: w returns multiplied by {}",
            trace.monodromy()
        )));
    }
    Ok(trace)
}

fn integrate_on_trace(
    curve: &SuperellipticCurve<Complex64>,
    i: usize,
    j: u32,
    path: &PathSpec,
    trace: &WTrace,
    tol: f64,
) -> Result<Complex64> {
    let power = j as i32 * curve.n() as i32;
    let a_i = curve.branch_points()[i - 1];
    let quad = QuadOptions { tol, ..QuadOptions::default() };
    let mut total = Complex64::new(0.0, 0.0);
    for (index, seg) in path.segments.iter().enumerate() {
        let f = |t: f64| {
            let z = seg.point(t);
            trace.w_at(curve, index, t, z).powi(power) / (z - a_i) * seg.velocity(t)
        };
        total += integrate(&f, 0.0, 1.0, quad)?.value;
    }
    Ok(total)
}

/// `∮ w^(jn) dz/(z - a_i)` along a closed path, `i` 1-based.
pub fn integrate_omega(
    curve: &SuperellipticCurve<Complex64>,
    i: usize,
    j: u32,
    path: &PathSpec,
    opts: &PeriodOptions,
) -> Result<Complex64> {
    check_power(curve, i, j)?;
    let trace = closed_trace(curve, path, opts)?;
    integrate_on_trace(curve, i, j, path, &trace, opts.tol)
}

/// All `N` periods over one path.
fn periods_over(curve: &SuperellipticCurve<Complex64>, j: u32, path: &PathSpec, opts: &PeriodOptions) -> Result<Vec<Complex64>> {
    check_power(curve, 1, j)?;
    let trace = closed_trace(curve, path, opts)?;
    (1..=curve.branch_points().len())
        .into_par_iter()
        .map(|i| integrate_on_trace(curve, i, j, path, &trace, opts.tol))
        .collect()
}

/// `B[i][k] = ∮_(cycle_k) Ω_i^(j)`; needs exactly `L` cycles.
pub fn period_matrix(
    curve: &SuperellipticCurve<Complex64>,
    j: u32,
    cycles: &[Cycle],
    opts: &PeriodOptions,
) -> Result<PeriodMatrix> {
    check_power(curve, 1, j)?;
    let expected = cycle_count(curve.m(), curve.degree(), curve.n())? as usize;
    if cycles.len() != expected {
        return Err(Error::precondition(format!("period matrix needs L = {expected} cycles, got {}", cycles.len())));
    }
    let traces = cycles
        .par_iter()
        .map(|c| closed_trace(curve, &c.path, opts))
        .collect::<Result<Vec<_>>>()?;
    let big_n = curve.branch_points().len();
    let cols = cycles.len();
    let entries = (0..big_n * cols)
        .into_par_iter()
        .map(|idx| {
            let (i, k) = (idx / cols, idx % cols);
            integrate_on_trace(curve, i + 1, j, &cycles[k].path, &traces[k], opts.tol)
        })
        .collect::<Result<Vec<_>>>()?;
    PeriodMatrix::new(big_n, cols, entries)
}

/// Number of singular values above `rank_tol` times the largest.
pub fn rank_check(b: &PeriodMatrix, rank_tol: f64) -> usize {
    if b.rows == 0 || b.cols == 0 {
        return 0;
    }
    let m = DMatrix::from_fn(b.rows, b.cols, |i, k| b.get(i, k));
    let sv = m.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rank_tol * top).count()
}

/// Residue of `Ω_i^(j)` at the pole a small basis loop encloses, from the
/// closed-form sums at the curve's numeric branch points. The loop integral
/// equals `2πi` times this value.
pub fn exact_small_loop_residue(curve: &SuperellipticCurve<Complex64>, i: usize, j: u32, kind: CycleKind) -> Result<Complex64> {
    check_power(curve, i, j)?;
    let big_n = curve.branch_points().len();
    let pts = curve.branch_points();
    let m = curve.m() as i64;
    match kind {
        CycleKind::Infinity { k } => {
            let inv = curve.invariants();
            let (phase, factor) = formula_normalization(curve, j, Pole::Infinity(k))?;
            let jns = j as i64 * curve.n() * inv.s as i64;
            if jns % m != 0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let closed = infinity_residue_sum(big_n, inv.s, inv.n1, jns / m, i);
            let value = closed.eval_complex(&|v| (1..=big_n).find(|&h| point_var(h) == v).map(|h| pts[h - 1]))?;
            Ok(phase.to_complex() * to_f64(&factor) * value)
        }
        CycleKind::Puncture { nu } => {
            let (_, factor) = formula_normalization(curve, j, Pole::BranchPoint(nu))?;
            let jn = j as i64 * curve.n().abs();
            if jn % m != 0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let closed = branch_residue_sum(big_n, (jn / m) as u32, i, nu)?;
            let frame = Frame::Shifted { nu };
            let a_nu = pts[nu - 1];
            let value = closed.eval_complex(&|v| {
                (1..=big_n)
                    .find(|&h| frame.var(h) == v)
                    .map(|h| if h == nu { a_nu } else { a_nu - pts[h - 1] })
            })?;
            Ok(to_f64(&factor) * value)
        }
        CycleKind::Pochhammer { .. } => Err(Error::invalid("Pochhammer loops enclose no single pole")),
    }
}

/// One compared derivative `∂b_i/∂a_var`, indices 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FdEntry {
    pub i: usize,
    pub var: usize,
    pub finite_difference: Complex64,
    pub predicted: Complex64,
}

impl FdEntry {
    pub fn deviation(&self) -> f64 {
        (self.finite_difference - self.predicted).norm()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsomonodromyReport {
    pub entries: Vec<FdEntry>,
    pub max_deviation: f64,
}

/// Fourth-order central differences (steps `±h`, `±2h`) of the periods over
/// a fixed z-plane path against `∂b_i/∂a_var = -(jn/m)(b_i - b_var)/(a_i - a_var)` for every `i ≠ var`.
/// The start sheet of each displaced curve is the one continuous with the
/// base curve's.
pub fn isomonodromy_fd_check(
    curve: &SuperellipticCurve<Complex64>,
    path: &PathSpec,
    j: u32,
    h: f64,
    opts: &PeriodOptions,
) -> Result<IsomonodromyReport> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::invalid("difference step must be positive"));
    }
    let base = periods_over(curve, j, path, opts)?;
    let z0 = path.start().ok_or_else(|| Error::invalid("path has no segments"))?;
    let w0 = principal_root(curve, z0) * root_of_unity(path.start_branch as i64, curve.m());
    let pts = curve.branch_points();
    let big_n = pts.len();
    let displaced = |var: usize, step: f64| -> Result<Vec<Complex64>> {
        let mut moved = pts.to_vec();
        moved[var] += step;
        let c = SuperellipticCurve::numeric(curve.m(), curve.n(), moved)?;
        let start_branch = nearest_sheet(&c, z0, w0);
        let p = PathSpec { segments: path.segments.clone(), start_branch };
        // keep the base clearance so the moved points stay off the path
        let o = PeriodOptions { clearance_factor: opts.clearance(curve) / c.min_separation(), ..*opts };
        periods_over(&c, j, &p, &o)
    };
    let ratio = j as f64 * curve.n() as f64 / curve.m() as f64;
    let mut entries = Vec::new();
    for var in 0..big_n {
        let (plus, minus) = (displaced(var, h)?, displaced(var, -h)?);
        let (plus2, minus2) = (displaced(var, 2.0 * h)?, displaced(var, -2.0 * h)?);
        for i in (0..big_n).filter(|&i| i != var) {
            entries.push(FdEntry {
                i: i + 1,
                var: var + 1,
                finite_difference: (8.0 * (plus[i] - minus[i]) - (plus2[i] - minus2[i])) / (12.0 * h),
                predicted: -ratio * (base[i] - base[var]) / (pts[i] - pts[var]),
            });
        }
    }
    let max_deviation = entries.iter().map(FdEntry::deviation).fold(0.0, f64::max);
    Ok(IsomonodromyReport { entries, max_deviation })
}
