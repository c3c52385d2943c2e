//! Algebraic solutions of Garnier systems built from triangular 2x2
//! Schlesinger data: the polynomial `P_M(z, a)`, its root branches `u_j`,
//! the momenta `v_j^ε` and a numeric check of the Hamiltonian system for
//! two deformation variables.
//!
//! The `M + 2` poles are ordered `a_1, ..., a_M, 0, 1`.

pub mod branches;
pub mod families;
pub mod hamiltonian;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::text::{format_ratfunc, parse_ratfunc};
use crate::algebra::{int, MultiPoly, RatFunc, Rational};
use crate::curve::point_var;
use crate::error::{Error, Result};

pub use branches::{u_roots, v_momenta, BranchRoots};
pub use families::{thm10_solution, thm11_basis, thm11_family};
pub use hamiltonian::{continuity_check, garnier_residual_m2, verify_grid, HamiltonResidual, PathReport, VerificationRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::invalid(format!("sign entries are ±1, got {v}"))),
        }
    }

    /// All `2^len` sign vectors, `Plus` first in each slot.
    pub fn all_vectors(len: usize) -> Vec<Vec<Sign>> {
        (0..1usize << len)
            .map(|mask| (0..len).map(|i| if mask >> i & 1 == 0 { Sign::Plus } else { Sign::Minus }).collect())
            .collect()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Parameters `θ_1..θ_(M+2), θ_∞` of `G_M(θ)` with the sign vector they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GarnierSpec {
    pub m_vars: usize,
    pub theta: Vec<Rational>,
    pub theta_inf: Rational,
    pub eps: Vec<Sign>,
}

/// `θ_i = 2 ε_i β_i`, `θ_∞ = 2β_∞ - 1`.
pub fn theta_from_eps(betas: &[Rational], eps: &[Sign], beta_inf: &Rational) -> Result<GarnierSpec> {
    if betas.len() != eps.len() {
        return Err(Error::invalid(format!("{} exponents but {} signs", betas.len(), eps.len())));
    }
    if betas.len() < 3 {
        return Err(Error::invalid("a Garnier system needs at least three finite poles"));
    }
    Ok(GarnierSpec {
        m_vars: betas.len() - 2,
        theta: betas.iter().zip(eps).map(|(b, e)| int(2 * e.value()) * b).collect(),
        theta_inf: int(2) * beta_inf - int(1),
        eps: eps.to_vec(),
    })
}

/// Variable name of the `i`-th deformation variable (1-based).
pub fn a_var(i: usize) -> String {
    point_var(i)
}

/// Poles `a_1, ..., a_M, 0, 1` as polynomials.
fn poles(m_vars: usize) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = (1..=m_vars).map(|i| MultiPoly::var(&a_var(i))).collect();
    out.push(MultiPoly::zero());
    out.push(MultiPoly::one());
    out
}

/// Coefficients `[P_0, ..., P_M]` (ascending powers of `z`) of
/// `P_M(z, a) = Π(z - a_i) Σ b_i/(z - a_i)`.
pub fn pm_polynomial(b: &[RatFunc]) -> Result<Vec<RatFunc>> {
    if b.len() < 3 {
        return Err(Error::invalid("P_M needs at least three residues"));
    }
    let total = b.iter().fold(RatFunc::zero(), |acc, t| &acc + t);
    if !total.is_zero() {
        return Err(Error::precondition("Σ b_i is not identically zero, so P_M would have degree M + 1"));
    }
    let pts = poles(b.len() - 2);
    let mut coeffs = vec![RatFunc::zero(); b.len() - 1];
    for (i, bi) in b.iter().enumerate() {
        if bi.is_zero() {
            continue;
        }
        // Π_(k≠i) (z - a_k), ascending in z
        let mut prod = vec![MultiPoly::one()];
        for (k, p) in pts.iter().enumerate() {
            if k == i {
                continue;
            }
            let mut next = vec![MultiPoly::zero(); prod.len() + 1];
            for (d, c) in prod.iter().enumerate() {
                next[d + 1] = &next[d + 1] + c;
                next[d] = &next[d] - &(c * p);
            }
            prod = next;
        }
        for (d, c) in prod.iter().take(coeffs.len()).enumerate() {
            coeffs[d] = &coeffs[d] + &(bi * &RatFunc::from_poly(c.clone()));
        }
    }
    Ok(coeffs)
}

/// Theorem number and construction parameters of a Garnier solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GarnierProvenance {
    pub theorem: u8,
    pub parameters: BTreeMap<String, String>,
}

/// Residues `b_i(a)` at the poles `a_1..a_M, 0, 1`, the coefficients of
/// `P_M` and the exponents `β_i`, `β_∞`.
#[derive(Clone, Debug)]
pub struct GarnierAlgebraicSolution {
    m_vars: usize,
    b: Vec<RatFunc>,
    pm_coeffs: Vec<RatFunc>,
    betas: Vec<Rational>,
    beta_inf: Rational,
    provenance: GarnierProvenance,
}

impl GarnierAlgebraicSolution {
    pub fn new(b: Vec<RatFunc>, betas: Vec<Rational>, beta_inf: Rational, provenance: GarnierProvenance) -> Result<Self> {
        if betas.len() != b.len() {
            return Err(Error::invalid(format!("{} residues but {} exponents", b.len(), betas.len())));
        }
        let pm_coeffs = pm_polynomial(&b)?;
        Ok(Self {
            m_vars: b.len() - 2,
            b,
            pm_coeffs,
            betas,
            beta_inf,
            provenance,
        })
    }

    pub fn m_vars(&self) -> usize {
        self.m_vars
    }

    pub fn b(&self) -> &[RatFunc] {
        &self.b
    }

    pub fn pm_coeffs(&self) -> &[RatFunc] {
        &self.pm_coeffs
    }

    pub fn betas(&self) -> &[Rational] {
        &self.betas
    }

    pub fn beta_inf(&self) -> &Rational {
        &self.beta_inf
    }

    pub fn provenance(&self) -> &GarnierProvenance {
        &self.provenance
    }

    pub fn spec(&self, eps: &[Sign]) -> Result<GarnierSpec> {
        theta_from_eps(&self.betas, eps, &self.beta_inf)
    }

    pub fn to_document(&self, verification: Option<Vec<VerificationRow>>) -> GarnierDocument {
        GarnierDocument {
            schema_version: crate::schlesinger::SCHEMA_VERSION,
            kind: "garnier_solution".into(),
            provenance: self.provenance.clone(),
            m_vars: self.m_vars,
            betas: self.betas.iter().map(format_rational).collect(),
            beta_inf: format_rational(&self.beta_inf),
            b: self.b.iter().map(format_ratfunc).collect(),
            pm_coeffs: self.pm_coeffs.iter().map(format_ratfunc).collect(),
            verification,
        }
    }

    /// Rebuilds the solution from its residues and exponents; the stored
    /// `P_M` coefficients must agree with the recomputed ones.
    pub fn from_document(doc: &GarnierDocument) -> Result<Self> {
        if doc.kind != "garnier_solution" {
            return Err(Error::invalid(format!("expected a garnier_solution document, got {:?}", doc.kind)));
        }
        let b = doc.b.iter().map(|s| parse_ratfunc(s)).collect::<Result<Vec<_>>>()?;
        let betas = doc.betas.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let sol = Self::new(b, betas, parse_rational(&doc.beta_inf)?, doc.provenance.clone())?;
        if sol.m_vars != doc.m_vars {
            return Err(Error::invalid(format!("document says M = {}, residues give M = {}", doc.m_vars, sol.m_vars)));
        }
        let stored = doc.pm_coeffs.iter().map(|s| parse_ratfunc(s)).collect::<Result<Vec<_>>>()?;
        if stored != sol.pm_coeffs {
            return Err(Error::invalid("stored P_M coefficients disagree with the residues"));
        }
        Ok(sol)
    }
}

/// JSON form of a [`GarnierAlgebraicSolution`] with an optional numeric report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GarnierDocument {
    pub schema_version: u32,
    pub kind: String,
    pub provenance: GarnierProvenance,
    #[serde(rename = "M")]
    pub m_vars: usize,
    pub betas: Vec<String>,
    pub beta_inf: String,
    pub b: Vec<String>,
    /// Ascending powers of `z`.
    pub pm_coeffs: Vec<String>,
    pub verification: Option<Vec<VerificationRow>>,
}
