//! Polynomial solutions for `n > 0, m | M + 2` and the rational
//! `M`-parameter families for `m = 1, n < 0`.

use num_integer::Integer;

use super::{a_var, poles, GarnierAlgebraicSolution, GarnierProvenance};
use crate::algebra::rational::format_rational;
use crate::algebra::{binom, int, rat, MultiPoly, RatFunc, Rational};
use crate::error::{Error, Result};

const Z: &str = "z";

/// `Σ_(k_1+..+k_M+k_(M+2)=t) Π C(β, k_l) a_l^(k_l)` for `t = 0..=total`,
/// with `a_(M+2) = 1`.
fn product_series(m_vars: usize, beta: &Rational, total: usize) -> Vec<MultiPoly> {
    let coeffs: Vec<Rational> = (0..=total as u32).map(|k| binom(beta, k)).collect();
    let mut s = vec![MultiPoly::zero(); total + 1];
    s[0] = MultiPoly::one();
    let mut factors: Vec<MultiPoly> = (1..=m_vars).map(|i| MultiPoly::var(&a_var(i))).collect();
    factors.push(MultiPoly::one());
    for f in &factors {
        let powers: Vec<MultiPoly> = (0..=total as u32).map(|k| f.pow(k)).collect();
        let mut next = vec![MultiPoly::zero(); total + 1];
        for t in 0..=total {
            for k in 0..=t {
                if s[t - k].is_zero() || coeffs[k] == int(0) {
                    continue;
                }
                next[t] = &next[t] + &(&powers[k] * &s[t - k]).scale(&coeffs[k]);
            }
        }
        s = next;
    }
    s
}

/// Polynomial residues `b_i(a)` for coprime `n > 0`, `m > 1` with
/// `m | M + 2`; `β_i = n/2m`.
pub fn thm10_solution(m_vars: usize, m: i64, n: i64) -> Result<GarnierAlgebraicSolution> {
    if m_vars == 0 {
        return Err(Error::invalid("M must be positive"));
    }
    if n <= 0 || m <= 1 {
        return Err(Error::precondition(format!("need n > 0 and m > 1, got n = {n}, m = {m}")));
    }
    if n.gcd(&m) != 1 {
        return Err(Error::precondition(format!("n = {n} and m = {m} are not coprime")));
    }
    let poles_count = m_vars as i64 + 2;
    if poles_count % m != 0 {
        return Err(Error::precondition(format!("m = {m} does not divide M + 2 = {poles_count}")));
    }
    let total = (poles_count / m * n) as usize;
    let s = product_series(m_vars, &rat(n, m), total);
    let pts = poles(m_vars);
    let b = pts
        .iter()
        .map(|ai| {
            let mut acc = MultiPoly::zero();
            let mut power = MultiPoly::one();
            for q in 0..=total {
                let term = &power * &s[total - q];
                acc = if q % 2 == 0 { &acc + &term } else { &acc - &term };
                power = &power * ai;
                if power.is_zero() {
                    break;
                }
            }
            RatFunc::from_poly(acc)
        })
        .collect();
    let beta = rat(n, 2 * m);
    let provenance = GarnierProvenance {
        theorem: 10,
        parameters: [("M", m_vars.to_string()), ("m", m.to_string()), ("n", n.to_string())]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    };
    GarnierAlgebraicSolution::new(b, vec![beta; m_vars + 2], rat(-poles_count * n, 2 * m), provenance)
}

/// `res_(z=a_j) w^n dz/(z - a_i)` for `w = z(z-1)Π(z-a_k)`, `n < 0`; row `j`
/// holds the vector over `i`, for the poles `a_1, ..., a_M, 0`.
pub fn thm11_basis(m_vars: usize, n: i64) -> Result<Vec<Vec<RatFunc>>> {
    if m_vars == 0 {
        return Err(Error::invalid("M must be positive"));
    }
    if n >= 0 {
        return Err(Error::precondition(format!("need n < 0, got {n}")));
    }
    let d = (-n) as u32;
    let pts: Vec<RatFunc> = poles(m_vars).into_iter().map(RatFunc::from_poly).collect();
    let z = RatFunc::var(Z);
    let mut rows = Vec::with_capacity(m_vars + 1);
    for (j, aj) in pts.iter().enumerate().take(m_vars + 1) {
        // Π_(k≠j) (z - a_k)^(-d)
        let mut regular = RatFunc::one();
        for (k, ak) in pts.iter().enumerate() {
            if k != j {
                regular = &regular * &(&z - ak);
            }
        }
        let regular = regular.pow(-(d as i32))?;
        let row = pts
            .iter()
            .enumerate()
            .map(|(i, ai)| {
                let (g, order) = if i == j { (regular.clone(), d + 1) } else { (regular.checked_div(&(&z - ai))?, d) };
                let mut der = g;
                let mut fact = int(1);
                for k in 1..order {
                    der = der.partial(Z);
                    fact *= int(k as i64);
                }
                Ok(der.substitute(Z, aj)?.scale(&(int(1) / fact)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// `b = Σ_j c_j b^(j) + b^(M+1)` over the residue vectors at `a_1..a_M` and
/// `0`; `β_i = n/2`.
pub fn thm11_family(m_vars: usize, n: i64, c: &[Rational]) -> Result<GarnierAlgebraicSolution> {
    if c.len() != m_vars {
        return Err(Error::invalid(format!("expected {m_vars} family coefficients, got {}", c.len())));
    }
    let basis = thm11_basis(m_vars, n)?;
    let mut b = basis[m_vars].clone();
    for (cj, row) in c.iter().zip(&basis) {
        for (bi, r) in b.iter_mut().zip(row) {
            *bi = &*bi + &r.scale(cj);
        }
    }
    let mut parameters: std::collections::BTreeMap<String, String> =
        [("M".to_string(), m_vars.to_string()), ("n".to_string(), n.to_string())].into_iter().collect();
    for (j, cj) in c.iter().enumerate() {
        parameters.insert(format!("c{}", j + 1), format_rational(cj));
    }
    let poles_count = m_vars as i64 + 2;
    GarnierAlgebraicSolution::new(
        b,
        vec![rat(n, 2); m_vars + 2],
        rat(-poles_count * n, 2),
        GarnierProvenance { theorem: 11, parameters },
    )
}
