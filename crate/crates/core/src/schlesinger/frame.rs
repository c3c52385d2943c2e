//! Coordinates in which solution entries are stored.
//!
//! `Standard` uses `a1..aN` directly. `Shifted { nu }` keeps `a_ν` and
//! replaces every other `a_h` by `u_h = a_ν - a_h`; rational layers built at
//! the branch point `ν` become Laurent polynomials there. The change of
//! variables is invertible and linear, so identities transfer both ways.

use serde::{Deserialize, Serialize};

use crate::algebra::{MultiPoly, RatFunc};
use crate::curve::point_var;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Frame {
    Standard,
    Shifted { nu: usize },
}

impl Frame {
    /// Name of the coordinate standing in for `a_h`.
    pub fn var(&self, h: usize) -> String {
        match *self {
            Frame::Shifted { nu } if h != nu => format!("u{h}"),
            _ => point_var(h),
        }
    }

    /// `a_h` written in this frame.
    pub fn point(&self, h: usize) -> RatFunc {
        RatFunc::from_poly(self.point_poly(h))
    }

    pub fn point_poly(&self, h: usize) -> MultiPoly {
        match *self {
            Frame::Shifted { nu } if h != nu => &MultiPoly::var(&point_var(nu)) - &MultiPoly::var(&format!("u{h}")),
            _ => MultiPoly::var(&point_var(h)),
        }
    }

    /// `a_i - a_j` in this frame.
    pub fn difference(&self, i: usize, j: usize) -> MultiPoly {
        &self.point_poly(i) - &self.point_poly(j)
    }

    /// `∂f/∂a_j` for `f` written in this frame.
    pub fn partial(&self, f: &RatFunc, j: usize, big_n: usize) -> RatFunc {
        match *self {
            Frame::Standard => f.partial(&point_var(j)),
            Frame::Shifted { nu } if j != nu => -f.partial(&format!("u{j}")),
            Frame::Shifted { nu } => {
                let mut acc = f.partial(&point_var(nu));
                for h in (1..=big_n).filter(|&h| h != nu) {
                    acc = &acc + &f.partial(&format!("u{h}"));
                }
                acc
            }
        }
    }

    /// Rewrites `f` from this frame into `a1..aN`.
    pub fn to_standard(&self, f: &RatFunc, big_n: usize) -> Result<RatFunc> {
        match *self {
            Frame::Standard => Ok(f.clone()),
            Frame::Shifted { nu } => {
                let mut out = f.clone();
                for h in (1..=big_n).filter(|&h| h != nu) {
                    let v = &MultiPoly::var(&point_var(nu)) - &MultiPoly::var(&point_var(h));
                    out = out.substitute_poly(&format!("u{h}"), &v)?;
                }
                Ok(out)
            }
        }
    }

    /// Rewrites `f` in `a1..aN` into this frame.
    pub fn from_standard(&self, f: &RatFunc, big_n: usize) -> Result<RatFunc> {
        match *self {
            Frame::Standard => Ok(f.clone()),
            Frame::Shifted { nu } => {
                let mut out = f.clone();
                for h in (1..=big_n).filter(|&h| h != nu) {
                    out = out.substitute_poly(&point_var(h), &self.point_poly(h))?;
                }
                Ok(out)
            }
        }
    }
}
