//! Rational and Liouvillian solutions of Painleve VI coming from triangular
//! 2x2 Schlesinger systems, exact checks against the equation, Okamoto's
//! birational transformations and zero distributions of the special
//! polynomials.

pub mod equation;
pub mod families;
pub mod liouvillian;
pub mod okamoto;
pub mod zeros;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::text::{format_ratfunc, parse_ratfunc};
use crate::algebra::{int, rat, MultiPoly, RatFunc, Rational};
use crate::error::{Error, Result};

pub use equation::{
    conjugate_momentum, degenerate_kind, degenerate_solves, hamiltonian_residual, hypergeom_residual,
    linear_system_residual, pvi_residual, Degenerate, Hypergeom,
};
pub use families::{
    thm5_polynomials, thm5_solution, thm5_theta, thm5_triple, thm6_basis, thm6_family, thm6_theta, thm7_polynomials,
    thm7_solution, thm7_theta, thm7_triple, thm8_admissible, thm8_basis, thm8_family, thm8_grid, thm8_theta,
};
pub use liouvillian::{liouvillian_eval, LiouvillianSample, LIOUVILLIAN_BASE_POINT};
pub use okamoto::{degenerate_prolongation, okamoto_apply, riccati_residual, Generator, OkamotoImage};
pub use zeros::{polynomial_zeros, write_zeros_csv, RootReport, ZeroRow};

/// Independent variable of PVI.
pub const X: &str = "x";
/// Free parameter of one-parameter families.
pub const FAMILY_VAR: &str = "c";

pub(crate) fn x() -> RatFunc {
    RatFunc::var(X)
}

pub(crate) fn x_poly() -> MultiPoly {
    MultiPoly::var(X)
}

/// Exponents `±β_1, ±β_2, ±β_3` at `0, 1, x` and `β_∞` at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTuple {
    pub beta1: Rational,
    pub beta2: Rational,
    pub beta3: Rational,
    pub beta_inf: Rational,
}

impl ThetaTuple {
    pub fn new(beta1: Rational, beta2: Rational, beta3: Rational, beta_inf: Rational) -> Self {
        Self {
            beta1,
            beta2,
            beta3,
            beta_inf,
        }
    }

    /// `β_1 + β_2 + β_3 + β_∞ = 0`, which every triangular family satisfies.
    pub fn is_triangular(&self) -> bool {
        (&self.beta1 + &self.beta2 + &self.beta3 + &self.beta_inf) == int(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PVIParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl PVIParams {
    pub fn as_strings(&self) -> [String; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta].map(format_rational)
    }
}

pub fn pvi_params(theta: &ThetaTuple) -> PVIParams {
    let two = int(2);
    let half = rat(1, 2);
    let t = &two * &theta.beta_inf - int(1);
    PVIParams {
        alpha: &t * &t * &half,
        beta: -&two * &theta.beta1 * &theta.beta1,
        gamma: &two * &theta.beta2 * &theta.beta2,
        delta: &half - &two * &theta.beta3 * &theta.beta3,
    }
}

/// `y = x b_1 / (b_1 + (1 - x) b_3)`.
pub fn y_from_b(b1: &RatFunc, b3: &RatFunc) -> Result<RatFunc> {
    let den = b1 + &(&(&RatFunc::one() - &x()) * b3);
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    (&x() * b1).checked_div(&den)
}

/// Parameters of Okamoto's affine Weyl group action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OkamotoCoords {
    pub b1: Rational,
    pub b2: Rational,
    pub b3: Rational,
    pub b4: Rational,
}

impl OkamotoCoords {
    pub fn new(b1: Rational, b2: Rational, b3: Rational, b4: Rational) -> Self {
        Self { b1, b2, b3, b4 }
    }

    pub fn from_theta(t: &ThetaTuple) -> Self {
        Self {
            b1: &t.beta1 + &t.beta2,
            b2: &t.beta1 - &t.beta2,
            b3: &t.beta3 + &t.beta_inf - int(1),
            b4: &t.beta3 - &t.beta_inf,
        }
    }

    pub fn to_theta(&self) -> ThetaTuple {
        let half = rat(1, 2);
        ThetaTuple {
            beta1: (&self.b1 + &self.b2) * &half,
            beta2: (&self.b1 - &self.b2) * &half,
            beta3: (&self.b3 + &self.b4 + int(1)) * &half,
            beta_inf: (&self.b3 - &self.b4 + int(1)) * &half,
        }
    }

    pub fn as_array(&self) -> [Rational; 4] {
        [self.b1.clone(), self.b2.clone(), self.b3.clone(), self.b4.clone()]
    }

    pub fn from_array(b: [Rational; 4]) -> Self {
        let [b1, b2, b3, b4] = b;
        Self { b1, b2, b3, b4 }
    }
}

/// Where a family came from: theorem number and the integers or rationals
/// it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyProvenance {
    pub theorem: u8,
    pub parameters: BTreeMap<String, String>,
}

/// A solution `y(x)` of PVI, possibly depending on the free variable
/// [`FAMILY_VAR`].
#[derive(Clone, Debug)]
pub struct PVISolutionFamily {
    pub y: RatFunc,
    pub theta: ThetaTuple,
    pub params: PVIParams,
    pub provenance: FamilyProvenance,
}

impl PVISolutionFamily {
    pub(crate) fn new(y: RatFunc, theta: ThetaTuple, theorem: u8, parameters: &[(&str, String)]) -> Self {
        let params = pvi_params(&theta);
        Self {
            y,
            theta,
            params,
            provenance: FamilyProvenance {
                theorem,
                parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            },
        }
    }

    pub fn has_parameter(&self) -> bool {
        self.y.vars().iter().any(|v| v == FAMILY_VAR)
    }

    /// `y` at a rational value of the family parameter.
    pub fn specialize(&self, c: &Rational) -> Result<RatFunc> {
        self.y.eval_partial(FAMILY_VAR, c)
    }

    pub fn to_document(&self, residual_zero: Option<bool>) -> FamilyDocument {
        FamilyDocument {
            schema_version: crate::schlesinger::SCHEMA_VERSION,
            kind: "pvi_family".into(),
            provenance: self.provenance.clone(),
            theta: [&self.theta.beta1, &self.theta.beta2, &self.theta.beta3, &self.theta.beta_inf].map(format_rational),
            params: self.params.as_strings(),
            y: format_ratfunc(&self.y),
            has_parameter: self.has_parameter(),
            residual_zero,
        }
    }

    /// Reads `y` and the exponents back; `params` is recomputed from them.
    pub fn from_document(doc: &FamilyDocument) -> Result<Self> {
        if doc.kind != "pvi_family" {
            return Err(Error::invalid(format!("expected a pvi_family document, got {:?}", doc.kind)));
        }
        let [b1, b2, b3, binf] = [0, 1, 2, 3].map(|k| parse_rational(&doc.theta[k]));
        let theta = ThetaTuple::new(b1?, b2?, b3?, binf?);
        Ok(Self {
            y: parse_ratfunc(&doc.y)?,
            params: pvi_params(&theta),
            theta,
            provenance: doc.provenance.clone(),
        })
    }
}

/// JSON form of a [`PVISolutionFamily`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub schema_version: u32,
    pub kind: String,
    pub provenance: FamilyProvenance,
    /// `[β_1, β_2, β_3, β_∞]`
    pub theta: [String; 4],
    /// `[α, β, γ, δ]`
    pub params: [String; 4],
    pub y: String,
    pub has_parameter: bool,
    /// Outcome of the exact residual check, when one was run.
    pub residual_zero: Option<bool>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ratfunc;

    fn theta(b: [(i64, i64); 4]) -> ThetaTuple {
        let [a, b, c, d] = b.map(|(p, q)| rat(p, q));
        ThetaTuple::new(a, b, c, d)
    }

    #[test]
    fn parameter_map() {
        let p = pvi_params(&theta([(1, 6), (1, 6), (1, 6), (-1, 2)]));
        assert_eq!(p.as_strings(), ["2", "-1/18", "1/18", "4/9"]);
        let p = pvi_params(&theta([(0, 1); 4]));
        assert_eq!(p.as_strings(), ["1/2", "0", "0", "1/2"]);
        let p = pvi_params(&theta([(-1, 2), (-1, 2), (-1, 2), (3, 2)]));
        assert_eq!(p.as_strings(), ["2", "-1/2", "1/2", "0"]);
    }

    #[test]
    fn y_from_b_examples() {
        let b1 = parse_ratfunc("(x + 1)/3").unwrap();
        let b3 = parse_ratfunc("(-2*x + 1)/3").unwrap();
        assert_eq!(y_from_b(&b1, &b3).unwrap(), parse_ratfunc("x*(x + 1)/(2*x^2 - 2*x + 2)").unwrap());
        assert_eq!(y_from_b(&RatFunc::one(), &RatFunc::one()).unwrap(), parse_ratfunc("x/(2 - x)").unwrap());
        let b1 = parse_ratfunc("(x^2 - 4*x + 1)/9").unwrap();
        let b3 = parse_ratfunc("(-2*x^2 + 2*x + 1)/9").unwrap();
        assert_eq!(
            y_from_b(&b1, &b3).unwrap(),
            parse_ratfunc("x*(x^2 - 4*x + 1)/(2*x^3 - 3*x^2 - 3*x + 2)").unwrap()
        );
        // b1 + (1 - x) b3 = 0
        let b3 = parse_ratfunc("1/(x - 1)").unwrap();
        assert!(y_from_b(&RatFunc::one(), &b3).is_err());
    }

    #[test]
    fn okamoto_coords_round_trip() {
        let t = theta([(0, 1), (-1, 1), (1, 1), (0, 1)]);
        let b = OkamotoCoords::from_theta(&t);
        assert_eq!(b, OkamotoCoords::new(int(-1), int(1), int(0), int(1)));
        assert_eq!(b.to_theta(), t);
    }
}
