//! Globally adaptive Gauss–Kronrod (7, 15) quadrature for complex-valued
//! integrands of one real variable.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

/// Gauss weights for the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Outcome of [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub value: Complex64,
    /// Sum of the per-panel Kronrod–Gauss differences.
    pub error: f64,
    pub panels: usize,
}

/// Limits for [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    /// Target for the estimated error, relative to `max(1, |I|)`.
    pub tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_panels: 4000,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    magnitude: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Roundoff allowance, in units of `ε ∫|f|`, below which the error target
/// is not pushed.
const ROUNDOFF_FLOOR: f64 = 50.0;

/// Kronrod value, Kronrod-Gauss difference and Kronrod estimate of `∫|f|`.
fn panel(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let (lo, hi) = (f(c - dx), f(c + dx));
        let s = lo + hi;
        k += s * WGK[j];
        abs += (lo.norm() + hi.norm()) * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    Panel {
        a,
        b,
        value: k * h,
        error: ((k - g) * h).norm(),
        magnitude: abs * h.abs(),
    }
}

/// One 15-point Kronrod panel with its embedded 7-point Gauss estimate.
pub fn kronrod_panel(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let p = panel(f, a, b);
    (p.value, p.error)
}

/// `∫_a^b f`, splitting the worst panel until the summed error estimate
/// meets `opts.tol`, or falls to the roundoff level of `∫|f|` when the
/// integral cancels heavily.
pub fn integrate(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, opts: QuadOptions) -> Result<Quadrature> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::invalid("quadrature tolerance must be positive"));
    }
    if a == b {
        return Ok(Quadrature {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            panels: 0,
        });
    }
    let first = panel(f, a, b);
    let mut total = first.value;
    let mut err = first.error;
    let mut magnitude = first.magnitude;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    while err > (opts.tol * total.norm().max(1.0)).max(ROUNDOFF_FLOOR * f64::EPSILON * magnitude) {
        if !total.re.is_finite() || !total.im.is_finite() {
            return Err(Error::numerical("integrand is not finite on the path"));
        }
        if heap.len() >= opts.max_panels {
            return Err(Error::numerical(format!(
                "quadrature did not converge: error {err:.3e} after {} panels",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("heap is nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            return Err(Error::numerical("quadrature panel collapsed below machine resolution"));
        }
        let left = panel(f, worst.a, mid);
        let right = panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        magnitude += left.magnitude + right.magnitude - worst.magnitude;
        heap.push(left);
        heap.push(right);
    }
    // resum to shed drift from the running updates
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(Quadrature {
        value,
        error,
        panels: heap.len(),
    })
}

/// Piece of an integration path in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Segment {
    Line { from: Complex64, to: Complex64 },
    /// `center + radius·e^(iθ)` for `θ` from `start` to `end`.
    Arc { center: Complex64, radius: f64, start: f64, end: f64 },
}

impl Segment {
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * t,
            Segment::Arc { center, radius, start, end } => center + Complex64::from_polar(radius, start + (end - start) * t),
        }
    }

    /// `dz/dt` on `t ∈ [0, 1]`.
    pub fn velocity(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc { center: _, radius, start, end } => {
                let th = start + (end - start) * t;
                Complex64::new(0.0, 1.0) * Complex64::from_polar(radius, th) * (end - start)
            }
        }
    }

    pub fn start(&self) -> Complex64 {
        self.point(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.point(1.0)
    }
}

/// `∫ f(z) dz` along one segment.
pub fn integrate_segment(f: &dyn Fn(Complex64) -> Complex64, seg: &Segment, opts: QuadOptions) -> Result<Quadrature> {
    let g = |t: f64| f(seg.point(t)) * seg.velocity(t);
    integrate(&g, 0.0, 1.0, opts)
}

/// `∫ f(z) dz` along consecutive segments.
pub fn integrate_path(f: &dyn Fn(Complex64) -> Complex64, path: &[Segment], opts: QuadOptions) -> Result<Quadrature> {
    let mut out = Quadrature {
        value: Complex64::new(0.0, 0.0),
        error: 0.0,
        panels: 0,
    };
    for seg in path {
        let q = integrate_segment(f, seg, opts)?;
        out.value += q.value;
        out.error += q.error;
        out.panels += q.panels;
    }
    Ok(out)
}
