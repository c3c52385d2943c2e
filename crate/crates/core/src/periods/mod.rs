//! Periods of `Ω_i^(j) = w^(jn) dz/(z - a_i)` over closed contours of
//! `w^m = (z - a_1)...(z - a_N)` at numeric branch points: continuation of
//! `w`, contour integration, the period matrix, its numerical rank and a
//! finite-difference check of the deformation equations.

pub mod continuation;
pub mod cycles;
pub mod integrate;
pub mod report;

use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::curve::SuperellipticCurve;
use crate::error::{Error, Result};
use crate::quadrature::Segment;

pub use continuation::{continue_w, TraceSample, WTrace};
pub use cycles::{build_cycle_basis, infinity_loop, pochhammer, puncture_loop, Cycle, CycleKind};
pub use integrate::{
    exact_small_loop_residue, integrate_omega, isomonodromy_fd_check, period_matrix, rank_check, FdEntry,
    IsomonodromyReport,
};
pub use report::{period_report, PeriodReport, PeriodTolerances, ResidueComparison};

/// Path in the z-plane and the sheet `w` starts on: sheet `k` means
/// `w = exp(2πik/m) · exp(Log P(z)/m)` at the first point.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSpec {
    pub segments: Vec<Segment>,
    pub start_branch: u32,
}

impl PathSpec {
    pub fn start(&self) -> Option<Complex64> {
        self.segments.first().map(Segment::start)
    }

    pub fn end(&self) -> Option<Complex64> {
        self.segments.last().map(Segment::end)
    }

    pub fn is_closed(&self) -> bool {
        match (self.start(), self.end()) {
            (Some(a), Some(b)) => (a - b).norm() <= 1e-12 * a.norm().max(1.0),
            _ => false,
        }
    }
}

/// Which homology group the contours are taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomologyCase {
    /// `n > 0`, `gcd(m, N) = 1`: closed cycles on the compact surface.
    Compact,
    /// `n > 0`, `gcd(m, N) > 1`: the points over infinity removed.
    PuncturedAtInfinity,
    /// `n < 0`: the branch points removed.
    PuncturedAtBranchPoints,
}

impl HomologyCase {
    pub fn of<P>(curve: &SuperellipticCurve<P>) -> Self
    where
        P: crate::algebra::Ring,
    {
        if curve.n() < 0 {
            HomologyCase::PuncturedAtBranchPoints
        } else if curve.invariants().s == 1 {
            HomologyCase::Compact
        } else {
            HomologyCase::PuncturedAtInfinity
        }
    }
}

/// Numeric settings shared by the period computations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodOptions {
    /// Paths keep at least this multiple of the minimal branch-point separation.
    pub clearance_factor: f64,
    pub tol: f64,
    pub rank_tol: f64,
    /// Initial continuation steps per segment.
    pub steps: usize,
}

impl Default for PeriodOptions {
    fn default() -> Self {
        Self {
            clearance_factor: 0.05,
            tol: 1e-10,
            rank_tol: 1e-8,
            steps: 64,
        }
    }
}

impl PeriodOptions {
    pub fn clearance(&self, curve: &SuperellipticCurve<Complex64>) -> f64 {
        self.clearance_factor * curve.min_separation()
    }
}

/// `N × L` matrix of periods: row `i` is the differential, column `k` the cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Complex64>,
}

impl PeriodMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!("{} entries for a {rows} x {cols} matrix", entries.len())));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn get(&self, i: usize, k: usize) -> Complex64 {
        self.entries[i * self.cols + k]
    }

    pub fn column(&self, k: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, k)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max_k |Σ_i B[i][k]|`.
    pub fn column_sum_defect(&self) -> f64 {
        (0..self.cols)
            .map(|k| self.column(k).iter().sum::<Complex64>().norm())
            .fold(0.0, f64::max)
    }

    /// `max_k |Σ_i B[i][k]| / max(Σ_i |B[i][k]|, max|B|)`: each column sum
    /// against the size of its terms, floored at the matrix scale so columns
    /// that vanish exactly are not judged on their noise. Zero matrices give 0.
    pub fn relative_column_sum_defect(&self) -> f64 {
        let floor = self.max_abs();
        if floor == 0.0 {
            return 0.0;
        }
        (0..self.cols)
            .map(|k| {
                let col = self.column(k);
                let terms: f64 = col.iter().map(|z| z.norm()).sum();
                col.iter().sum::<Complex64>().norm() / terms.max(floor)
            })
            .fold(0.0, f64::max)
    }

    /// `B · C` for a square `cols × cols` recombination `C`.
    pub fn recombine(&self, c: &[Vec<Complex64>]) -> Result<Self> {
        if c.len() != self.cols || c.iter().any(|row| row.len() != self.cols) {
            return Err(Error::invalid("recombination matrix must be L x L"));
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for (idx, slot) in out.entries.iter_mut().enumerate() {
            let (i, k) = (idx / self.cols, idx % self.cols);
            *slot = (0..self.cols).map(|l| self.get(i, l) * c[l][k]).sum();
        }
        Ok(out)
    }
}

#[derive(Serialize)]
struct MatrixRow {
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

/// Writes `row,col,re,im` with 1-based indices.
pub fn write_period_matrix_csv<W: Write>(out: W, b: &PeriodMatrix) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for i in 0..b.rows {
        for k in 0..b.cols {
            let z = b.get(i, k);
            w.serialize(MatrixRow { row: i + 1, col: k + 1, re: z.re, im: z.im })
                .map_err(|e| Error::Io(e.to_string()))?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct TraceRow {
    segment: usize,
    t: f64,
    z_re: f64,
    z_im: f64,
    w_re: f64,
    w_im: f64,
}

/// Writes `segment,t,z_re,z_im,w_re,w_im`.
pub fn write_trace_csv<W: Write>(out: W, trace: &WTrace) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in trace.samples() {
        w.serialize(TraceRow { segment: s.segment, t: s.t, z_re: s.z.re, z_im: s.z.im, w_re: s.w.re, w_im: s.w.im })
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
