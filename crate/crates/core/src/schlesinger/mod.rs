//! Upper-triangular solutions of the Schlesinger system built from
//! residues of `w^(jn) dz/(z - a_i)`, with an exact residual checker.

pub mod build;
pub mod closed_form;
pub mod frame;
pub mod residual;

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::text::{format_ratfunc, parse_ratfunc};
use crate::algebra::{rat, RatFunc, Rational};
use crate::curve::Pole;
use crate::error::{Error, Result};

pub use build::{build_polynomial_solution, build_rational_solution, check_against_oracle, OracleCheck};
pub use frame::Frame;
pub use residual::{schlesinger_residual, ResidualEntry, SchlesingerResidual};

pub const SCHEMA_VERSION: u32 = 1;

/// Diagonal exponents `β_i^k` with a common step `β_i^k - β_i^(k+1) = n/m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentGrid {
    n: i64,
    m: u32,
    /// `beta[i][k]`, both 0-based.
    beta: Vec<Vec<Rational>>,
}

impl ExponentGrid {
    /// `β_i^k = ((p+1)/2 - k) n/m`, the same for every pole.
    pub fn uniform(p: usize, poles: usize, n: i64, m: u32) -> Result<Self> {
        let step = rat(n, m as i64);
        let row: Vec<Rational> = (1..=p)
            .map(|k| (rat(p as i64 + 1, 2) - rat(k as i64, 1)) * &step)
            .collect();
        Self::from_table(vec![row; poles], n, m)
    }

    pub fn from_table(beta: Vec<Vec<Rational>>, n: i64, m: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::invalid("exponent step needs n != 0 and m > 0"));
        }
        if n.unsigned_abs().gcd(&(m as u64)) != 1 {
            return Err(Error::invalid(format!("n={n} and m={m} are not coprime")));
        }
        let p = beta.first().map_or(0, Vec::len);
        if p < 2 || beta.len() < 2 || beta.iter().any(|r| r.len() != p) {
            return Err(Error::invalid("exponent table must be N x p with N, p >= 2"));
        }
        let step = rat(n, m as i64);
        for (i, row) in beta.iter().enumerate() {
            for k in 0..p - 1 {
                if &row[k] - &row[k + 1] != step {
                    return Err(Error::invalid(format!(
                        "exponents of pole {} do not step by {}",
                        i + 1,
                        format_rational(&step)
                    )));
                }
            }
        }
        Ok(Self { n, m, beta })
    }

    pub fn size(&self) -> usize {
        self.beta[0].len()
    }

    pub fn poles(&self) -> usize {
        self.beta.len()
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `β_i^k`, 1-based.
    pub fn beta(&self, i: usize, k: usize) -> &Rational {
        &self.beta[i - 1][k - 1]
    }

    pub fn table(&self) -> &[Vec<Rational>] {
        &self.beta
    }
}

/// `α_ij = Σ_k β_i^k β_j^k` for an `N x p` exponent table (see
/// [`ExponentGrid::table`]); `τ = Π_{i<j} (a_i - a_j)^(α_ij)`.
pub fn tau_exponents(beta: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let t = beta;
    t.iter()
        .map(|bi| t.iter().map(|bj| bi.iter().zip(bj).map(|(x, y)| x * y).sum()).collect())
        .collect()
}

/// Where a solution came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// `3` for the polynomial family, `4` for the rational one, absent for
    /// user-supplied data.
    pub theorem: Option<u8>,
    pub pole: Option<Pole>,
    pub constants: Vec<String>,
}

/// `B^(i)` upper triangular; off-diagonal entries stored in `frame`.
#[derive(Clone, Debug)]
pub struct TriangularSolution {
    grid: ExponentGrid,
    frame: Frame,
    entries: BTreeMap<(usize, usize, usize), RatFunc>,
    provenance: Provenance,
}

impl TriangularSolution {
    /// Missing `(i, k, l)` entries are zero.
    pub fn new(
        grid: ExponentGrid,
        frame: Frame,
        entries: BTreeMap<(usize, usize, usize), RatFunc>,
        provenance: Provenance,
    ) -> Result<Self> {
        let (p, big_n) = (grid.size(), grid.poles());
        for &(i, k, l) in entries.keys() {
            if i < 1 || i > big_n || k < 1 || l > p || k >= l {
                return Err(Error::invalid(format!("entry ({i}, {k}, {l}) outside the strict upper triangle")));
            }
        }
        let mut full = BTreeMap::new();
        for i in 1..=big_n {
            for k in 1..p {
                for l in k + 1..=p {
                    let e = entries.get(&(i, k, l)).cloned().unwrap_or_else(RatFunc::zero);
                    full.insert((i, k, l), e);
                }
            }
        }
        Ok(Self {
            grid,
            frame,
            entries: full,
            provenance,
        })
    }

    pub fn grid(&self) -> &ExponentGrid {
        &self.grid
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn size(&self) -> usize {
        self.grid.size()
    }

    pub fn poles(&self) -> usize {
        self.grid.poles()
    }

    /// `B^(i)_{kl}` in the storage frame, diagonal included.
    pub fn entry(&self, i: usize, k: usize, l: usize) -> RatFunc {
        match k.cmp(&l) {
            std::cmp::Ordering::Less => self.entries[&(i, k, l)].clone(),
            std::cmp::Ordering::Equal => RatFunc::constant(self.grid.beta(i, k).clone()),
            std::cmp::Ordering::Greater => RatFunc::zero(),
        }
    }

    pub(crate) fn entry_ref(&self, i: usize, k: usize, l: usize) -> Option<&RatFunc> {
        self.entries.get(&(i, k, l))
    }

    /// Off-diagonal entry in `a1..aN`.
    pub fn entry_standard(&self, i: usize, k: usize, l: usize) -> Result<RatFunc> {
        self.frame.to_standard(&self.entry(i, k, l), self.poles())
    }

    /// Replaces one off-diagonal entry, given in the storage frame.
    pub fn with_entry(mut self, i: usize, k: usize, l: usize, value: RatFunc) -> Result<Self> {
        match self.entries.get_mut(&(i, k, l)) {
            Some(slot) => {
                *slot = value;
                Ok(self)
            }
            None => Err(Error::invalid(format!("no off-diagonal entry ({i}, {k}, {l})"))),
        }
    }

    pub fn to_document(&self) -> Result<SolutionDocument> {
        let mut entries = Vec::new();
        for &(i, k, l) in self.entries.keys() {
            entries.push(EntryDocument {
                i,
                k,
                l,
                value: format_ratfunc(&self.entry_standard(i, k, l)?),
            });
        }
        Ok(SolutionDocument {
            schema_version: SCHEMA_VERSION,
            kind: "triangular_solution".into(),
            p: self.size(),
            poles: self.poles(),
            n: self.grid.n(),
            m: self.grid.m(),
            provenance: self.provenance.clone(),
            grid: self.grid.table().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
            entries,
        })
    }

    /// Reads a document; solutions tagged with a branch-point pole are
    /// moved to the shifted frame of that pole.
    pub fn from_document(doc: &SolutionDocument) -> Result<Self> {
        if doc.kind != "triangular_solution" {
            return Err(Error::invalid(format!("expected a triangular_solution document, got {:?}", doc.kind)));
        }
        let table = doc
            .grid
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let grid = ExponentGrid::from_table(table, doc.n, doc.m)?;
        if grid.size() != doc.p || grid.poles() != doc.poles {
            return Err(Error::invalid("grid shape disagrees with p and N"));
        }
        let frame = match doc.provenance.pole {
            Some(Pole::BranchPoint(nu)) if nu >= 1 && nu <= doc.poles => Frame::Shifted { nu },
            _ => Frame::Standard,
        };
        let mut entries = BTreeMap::new();
        for e in &doc.entries {
            let v = parse_ratfunc(&e.value)?;
            entries.insert((e.i, e.k, e.l), frame.from_standard(&v, doc.poles)?);
        }
        Self::new(grid, frame, entries, doc.provenance.clone())
    }
}

/// `Σ_i b_i^(kl)` for every `k < l`, in `a1..aN`.
pub fn sum_constraint(sol: &TriangularSolution) -> Result<Vec<((usize, usize), RatFunc)>> {
    let p = sol.size();
    let mut out = Vec::new();
    for k in 1..p {
        for l in k + 1..=p {
            let mut acc = RatFunc::zero();
            for i in 1..=sol.poles() {
                acc = &acc + &sol.entry(i, k, l);
            }
            out.push(((k, l), sol.frame.to_standard(&acc, sol.poles())?));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryDocument {
    pub i: usize,
    pub k: usize,
    pub l: usize,
    pub value: String,
}

/// JSON form of a [`TriangularSolution`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub schema_version: u32,
    pub kind: String,
    pub p: usize,
    #[serde(rename = "N")]
    pub poles: usize,
    pub n: i64,
    pub m: u32,
    pub provenance: Provenance,
    pub grid: Vec<Vec<String>>,
    pub entries: Vec<EntryDocument>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn tau_exponents_examples() {
        let g = ExponentGrid::uniform(2, 3, 1, 3).unwrap();
        let a = tau_exponents(g.table());
        assert_eq!(a[0][1], rat(1, 18));
        let zero = tau_exponents(&vec![vec![int(0), int(0)]; 3]);
        assert!(zero.iter().flatten().all(|x| *x == int(0)));
        let g2 = ExponentGrid::uniform(2, 4, 3, 2).unwrap();
        assert_eq!(tau_exponents(g2.table())[2][3], rat(9, 8));
    }

    #[test]
    fn rejects_broken_progression() {
        let bad = vec![vec![int(1), int(0)], vec![int(1), int(1)]];
        assert!(ExponentGrid::from_table(bad, 1, 1).is_err());
    }
}
