//! Exact residual of the Schlesinger system on a triangular solution.
//!
//! For `j ≠ i` the equation `∂B_i/∂a_j = [B_i, B_j]/(a_i - a_j)` is tested
//! in the cleared form `(a_i - a_j) ∂b_i/∂a_j - [B_i, B_j]`, which keeps
//! every intermediate denominator a power product of the solution's own
//! factors. The quotient by `a_i - a_j` is only formed for nonzero
//! results.

use rayon::prelude::*;

use super::TriangularSolution;
use crate::algebra::{MultiPoly, RatFunc};
use crate::error::Result;

/// One scalar equation; `j == i` marks the `∂/∂a_i` equation.
#[derive(Clone, Debug)]
pub struct ResidualEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    /// In `a1..aN`.
    pub value: RatFunc,
}

#[derive(Clone, Debug, Default)]
pub struct SchlesingerResidual {
    /// `∂b_i^(kl)/∂a_j - [B_i, B_j]_(kl)/(a_i - a_j)` and the `∂/∂a_i` rows.
    pub equations: Vec<ResidualEntry>,
    /// Coefficient of `da_j` in the inhomogeneity `F_i^(kl)`, `l - k >= 2`.
    pub inhomogeneity: Vec<ResidualEntry>,
}

impl SchlesingerResidual {
    pub fn is_zero(&self) -> bool {
        self.equations.iter().all(|e| e.value.is_zero())
    }

    pub fn inhomogeneity_vanishes(&self) -> bool {
        self.inhomogeneity.iter().all(|e| e.value.is_zero())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &ResidualEntry> {
        self.equations.iter().filter(|e| !e.value.is_zero())
    }
}

/// `[B_i, B_j]_(kl)`.
fn commutator(sol: &TriangularSolution, i: usize, j: usize, k: usize, l: usize) -> RatFunc {
    let mut acc = RatFunc::zero();
    for s in k..=l {
        let t1 = &sol.entry(i, k, s) * &sol.entry(j, s, l);
        let t2 = &sol.entry(j, k, s) * &sol.entry(i, s, l);
        acc = &(&acc + &t1) - &t2;
    }
    acc
}

/// `Σ_{k<s<l} b_i^(ks) b_j^(sl) - Σ_{k<t<l} b_j^(kt) b_i^(tl)`.
fn inner_products(sol: &TriangularSolution, i: usize, j: usize, k: usize, l: usize) -> RatFunc {
    let mut acc = RatFunc::zero();
    for s in k + 1..l {
        acc = &acc + &(&sol.entry(i, k, s) * &sol.entry(j, s, l));
        acc = &acc - &(&sol.entry(j, k, s) * &sol.entry(i, s, l));
    }
    acc
}

fn quotient(num: RatFunc, by: &MultiPoly) -> RatFunc {
    if num.is_zero() {
        return num;
    }
    num.checked_div(&RatFunc::from_poly(by.clone())).expect("distinct poles")
}

/// Evaluates every equation of the system on `sol`.
pub fn schlesinger_residual(sol: &TriangularSolution) -> Result<SchlesingerResidual> {
    let (p, big_n) = (sol.size(), sol.poles());
    let frame = sol.frame();
    let mut tasks = Vec::new();
    for i in 1..=big_n {
        for j in 1..=big_n {
            for k in 1..p {
                for l in k + 1..=p {
                    tasks.push((i, j, k, l));
                }
            }
        }
    }
    let eqs: Vec<(ResidualEntry, Option<ResidualEntry>)> = tasks
        .par_iter()
        .map(|&(i, j, k, l)| -> Result<_> {
            let b = sol.entry(i, k, l);
            let (value, inhom) = if i != j {
                let diff = frame.difference(i, j);
                let db = frame.partial(&b, j, big_n);
                let cleared = &(&db * &RatFunc::from_poly(diff.clone())) - &commutator(sol, i, j, k, l);
                let inhom = if l - k >= 2 {
                    Some(quotient(inner_products(sol, i, j, k, l), &diff))
                } else {
                    None
                };
                (quotient(cleared, &diff), inhom)
            } else {
                let mut acc = frame.partial(&b, i, big_n);
                let mut f = RatFunc::zero();
                for h in (1..=big_n).filter(|&h| h != i) {
                    let diff = frame.difference(i, h);
                    acc = &acc + &quotient(commutator(sol, i, h, k, l), &diff);
                    if l - k >= 2 {
                        f = &f - &quotient(inner_products(sol, i, h, k, l), &diff);
                    }
                }
                (acc, (l - k >= 2).then_some(f))
            };
            let to_std = |v: RatFunc| -> Result<RatFunc> {
                if v.is_zero() {
                    Ok(v)
                } else {
                    frame.to_standard(&v, big_n)
                }
            };
            let eq = ResidualEntry {
                i,
                j,
                k,
                l,
                value: to_std(value)?,
            };
            let inh = match inhom {
                Some(v) => Some(ResidualEntry {
                    i,
                    j,
                    k,
                    l,
                    value: to_std(v)?,
                }),
                None => None,
            };
            Ok((eq, inh))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = SchlesingerResidual::default();
    for (e, f) in eqs {
        out.equations.push(e);
        if let Some(f) = f {
            out.inhomogeneity.push(f);
        }
    }
    Ok(out)
}
