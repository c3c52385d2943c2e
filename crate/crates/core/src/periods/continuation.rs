//! Analytic continuation of `w = P(z)^(1/m)` along piecewise paths by
//! nearest-root selection.

use num_complex::Complex64;
use serde::Serialize;

use super::PathSpec;
use crate::curve::SuperellipticCurve;
use crate::error::{Error, Result};
use crate::quadrature::Segment;

/// Smallest step, in segment parameter, before a branch jump is reported.
const MIN_STEP: f64 = 1e-12;
/// The next root must be at least this many times farther than the chosen one.
const AMBIGUITY_MARGIN: f64 = 2.0;
/// Largest step relative to the distance from the nearest branch point.
const RELATIVE_STEP: f64 = 0.5;

/// `exp(2πi k/m)`.
pub fn root_of_unity(k: i64, m: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64)
}

/// `exp(Log P(z)/m)`.
pub fn principal_root(curve: &SuperellipticCurve<Complex64>, z: Complex64) -> Complex64 {
    let p = curve.eval_p(z);
    if curve.m() == 1 {
        p
    } else {
        p.powf(1.0 / curve.m() as f64)
    }
}

/// Sheet index `k` whose value `ω^k · principal_root(z)` is nearest `w`.
pub fn nearest_sheet(curve: &SuperellipticCurve<Complex64>, z: Complex64, w: Complex64) -> u32 {
    let base = principal_root(curve, z);
    (0..curve.m())
        .min_by(|&a, &b| {
            let da = (base * root_of_unity(a as i64, curve.m()) - w).norm();
            let db = (base * root_of_unity(b as i64, curve.m()) - w).norm();
            da.total_cmp(&db)
        })
        .unwrap_or(0)
}

/// One tracked point of a continuation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceSample {
    pub segment: usize,
    pub t: f64,
    pub z: Complex64,
    pub w: Complex64,
}

/// Samples of `w` along a path, ordered by segment and parameter.
#[derive(Clone, Debug)]
pub struct WTrace {
    samples: Vec<TraceSample>,
    /// Start index of each segment in `samples`, plus a final sentinel.
    offsets: Vec<usize>,
}

impl WTrace {
    pub fn samples(&self) -> &[TraceSample] {
        &self.samples
    }

    pub fn start(&self) -> Complex64 {
        self.samples[0].w
    }

    pub fn end(&self) -> Complex64 {
        self.samples[self.samples.len() - 1].w
    }

    /// `w_end / w_start`.
    pub fn monodromy(&self) -> Complex64 {
        self.end() / self.start()
    }

    fn segment_samples(&self, segment: usize) -> &[TraceSample] {
        &self.samples[self.offsets[segment]..self.offsets[segment + 1]]
    }

    /// `w` at parameter `t` of `segment`, continued from the last sample
    /// before `t`.
    pub fn w_at(&self, curve: &SuperellipticCurve<Complex64>, segment: usize, t: f64, z: Complex64) -> Complex64 {
        let local = self.segment_samples(segment);
        let k = local.partition_point(|s| s.t <= t).saturating_sub(1);
        let anchor = &local[k];
        if curve.m() == 1 {
            return curve.eval_p(z);
        }
        let inv_m = 1.0 / curve.m() as f64;
        let mut w = anchor.w;
        for a in curve.branch_points() {
            w *= ((z - a) / (anchor.z - a)).powf(inv_m);
        }
        w
    }
}

fn distance_to_branch_points(curve: &SuperellipticCurve<Complex64>, z: Complex64) -> f64 {
    curve.branch_points().iter().map(|a| (z - a).norm()).fold(f64::INFINITY, f64::min)
}

/// Chooses the `m`-th root at `z` nearest to `prev`; `None` when the
/// second-nearest root is within the ambiguity margin.
fn select_root(curve: &SuperellipticCurve<Complex64>, z: Complex64, prev: Complex64) -> Option<Complex64> {
    let base = principal_root(curve, z);
    if curve.m() == 1 {
        return Some(base);
    }
    let mut best = (f64::INFINITY, base);
    let mut second = f64::INFINITY;
    for k in 0..curve.m() {
        let cand = base * root_of_unity(k as i64, curve.m());
        let d = (cand - prev).norm();
        if d < best.0 {
            second = best.0;
            best = (d, cand);
        } else if d < second {
            second = d;
        }
    }
    (second >= AMBIGUITY_MARGIN * best.0).then_some(best.1)
}

/// Continues `w` along `path` from its start sheet, starting from `steps`
/// uniform steps per segment and halving wherever the root choice is
/// ambiguous or the step is large next to a branch point.
pub fn continue_w(
    curve: &SuperellipticCurve<Complex64>,
    path: &PathSpec,
    steps: usize,
    clearance: f64,
) -> Result<WTrace> {
    if path.segments.is_empty() {
        return Err(Error::invalid("path has no segments"));
    }
    if path.start_branch >= curve.m() {
        return Err(Error::invalid(format!("start branch {} outside 0..{}", path.start_branch, curve.m())));
    }
    let z0 = path.segments[0].start();
    let mut w = principal_root(curve, z0) * root_of_unity(path.start_branch as i64, curve.m());
    let nominal = 1.0 / steps.max(1) as f64;
    let mut samples = Vec::new();
    let mut offsets = Vec::with_capacity(path.segments.len() + 1);
    for (index, seg) in path.segments.iter().enumerate() {
        offsets.push(samples.len());
        let mut t = 0.0;
        let mut z = seg.start();
        check_clearance(curve, z, clearance)?;
        if index > 0 {
            // consecutive segments must join
            let prev_end = path.segments[index - 1].end();
            if (prev_end - z).norm() > 1e-12 * z.norm().max(1.0) {
                return Err(Error::invalid(format!("segment {index} does not start where segment {} ends", index - 1)));
            }
        }
        samples.push(TraceSample { segment: index, t, z, w });
        let mut dt = nominal;
        while t < 1.0 {
            let step = dt.min(1.0 - t);
            let t_next = if step >= 1.0 - t { 1.0 } else { t + step };
            let z_next = seg.point(t_next);
            let room = distance_to_branch_points(curve, z);
            let accepted = if (z_next - z).norm() <= RELATIVE_STEP * room { select_root(curve, z_next, w) } else { None };
            match accepted {
                Some(w_next) => {
                    check_clearance(curve, z_next, clearance)?;
                    t = t_next;
                    z = z_next;
                    w = w_next;
                    samples.push(TraceSample { segment: index, t, z, w });
                    dt = (2.0 * dt).min(nominal);
                }
                None => {
                    dt *= 0.5;
                    if dt < MIN_STEP {
                        return Err(Error::numerical(format!(
                            "branch jump near z = {z}: successive root choices stay ambiguous"
                        )));
                    }
                }
            }
        }
    }
    offsets.push(samples.len());
    Ok(WTrace { samples, offsets })
}

fn check_clearance(curve: &SuperellipticCurve<Complex64>, z: Complex64, clearance: f64) -> Result<()> {
    let d = distance_to_branch_points(curve, z);
    if d < clearance {
        return Err(Error::precondition(format!(
            "path point {z} lies {d:.3e} from a branch point, inside the clearance {clearance:.3e}"
        )));
    }
    Ok(())
}

/// Closed circle of `turns` full turns (negative for clockwise) starting at
/// angle `start`.
pub fn circle(center: Complex64, radius: f64, start: f64, turns: f64) -> Segment {
    Segment::Arc {
        center,
        radius,
        start,
        end: start + 2.0 * std::f64::consts::PI * turns,
    }
}
