//! One-call summary of the period checks on a curve: matrix, rank,
//! column sums, small-loop residues and optional deformation derivatives.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{
    build_cycle_basis, exact_small_loop_residue, isomonodromy_fd_check, period_matrix, rank_check, CycleKind,
    HomologyCase, PeriodMatrix, PeriodOptions,
};
use crate::curve::SuperellipticCurve;
use crate::error::Result;

pub const SUM_TOL: f64 = 1e-9;
pub const RESIDUE_TOL: f64 = 1e-8;
pub const FD_TOL: f64 = 1e-6;
pub const FD_STEP: f64 = 1e-3;

/// Pass thresholds of a [`PeriodReport`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PeriodTolerances {
    pub sum: f64,
    pub residue: f64,
    pub fd: f64,
}

impl Default for PeriodTolerances {
    fn default() -> Self {
        Self { sum: SUM_TOL, residue: RESIDUE_TOL, fd: FD_TOL }
    }
}

/// Small loop `cycle` (1-based column) against `2πi` times the closed-form
/// residue, worst over the differentials, relative to `max(1, |2πi res|)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidueComparison {
    pub cycle: usize,
    pub kind: CycleKind,
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodReport {
    pub m: u32,
    pub n: i64,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub j: u32,
    pub case: HomologyCase,
    pub cycles: Vec<CycleKind>,
    pub rank: usize,
    pub expected_rank: usize,
    pub relative_column_sum_defect: f64,
    pub residues: Vec<ResidueComparison>,
    /// Worst deviation over every basis cycle, when requested.
    pub fd_max_deviation: Option<f64>,
    pub tolerances: PeriodTolerances,
    pub passed: bool,
    #[serde(skip)]
    pub matrix: PeriodMatrix,
}

/// Builds the basis for the curve's own case, integrates `Ω^(j)` over it and
/// runs the checks; `fd_step` adds the finite-difference comparison.
pub fn period_report(
    curve: &SuperellipticCurve<Complex64>,
    j: u32,
    opts: &PeriodOptions,
    fd_step: Option<f64>,
    tolerances: PeriodTolerances,
) -> Result<PeriodReport> {
    let case = HomologyCase::of(curve);
    let cycles = build_cycle_basis(curve, case, opts)?;
    let matrix = period_matrix(curve, j, &cycles, opts)?;
    let big_n = curve.branch_points().len();
    let mut residues = Vec::new();
    for (k, cyc) in cycles.iter().enumerate() {
        if matches!(cyc.kind, CycleKind::Pochhammer { .. }) {
            continue;
        }
        let exact = (1..=big_n)
            .map(|i| exact_small_loop_residue(curve, i, j, cyc.kind).map(|r| Complex64::new(0.0, 2.0 * PI) * r))
            .collect::<Result<Vec<_>>>()?;
        let scale = exact.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let deviation = (0..big_n).map(|i| (matrix.get(i, k) - exact[i]).norm()).fold(0.0, f64::max) / scale;
        residues.push(ResidueComparison { cycle: k + 1, kind: cyc.kind, deviation });
    }
    let fd_max_deviation = match fd_step {
        Some(h) => {
            let mut worst = 0.0f64;
            for cyc in &cycles {
                worst = worst.max(isomonodromy_fd_check(curve, &cyc.path, j, h, opts)?.max_deviation);
            }
            Some(worst)
        }
        None => None,
    };
    let rank = rank_check(&matrix, opts.rank_tol);
    let expected_rank = big_n.saturating_sub(1);
    let relative_column_sum_defect = matrix.relative_column_sum_defect();
    let passed = rank == expected_rank
        && relative_column_sum_defect < tolerances.sum
        && residues.iter().all(|r| r.deviation < tolerances.residue)
        && fd_max_deviation.is_none_or(|d| d < tolerances.fd);
    Ok(PeriodReport {
        m: curve.m(),
        n: curve.n(),
        big_n,
        j,
        case,
        cycles: cycles.iter().map(|c| c.kind).collect(),
        rank,
        expected_rank,
        relative_column_sum_defect,
        residues,
        fd_max_deviation,
        tolerances,
        passed,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_with_three_points() {
        let pts = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(2.1, 0.9)];
        let cv = SuperellipticCurve::numeric(3, 1, pts).unwrap();
        let r = period_report(&cv, 1, &PeriodOptions::default(), None, PeriodTolerances::default()).unwrap();
        assert_eq!(r.case, HomologyCase::PuncturedAtInfinity);
        assert_eq!(r.rank, 2);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.cycles.len(), r.matrix.cols);
    }
}
