//! Closed-form residue sums producing the polynomial (`n > 0`) and
//! rational (`n < 0`) triangular layers.

use num_traits::{One, Zero};

use super::frame::Frame;
use crate::algebra::{binom, int, rat, MultiPoly, RatFunc, Rational};
use crate::curve::point_var;
use crate::error::Result;

/// Calls `f` on every vector of `parts` nonnegative integers summing to `total`.
pub fn for_each_composition(total: u32, parts: usize, f: &mut dyn FnMut(&[u32])) {
    fn rec(buf: &mut Vec<u32>, left: u32, parts: usize, f: &mut dyn FnMut(&[u32])) {
        if buf.len() + 1 == parts {
            buf.push(left);
            f(buf);
            buf.pop();
            return;
        }
        for k in 0..=left {
            buf.push(k);
            rec(buf, left - k, parts, f);
            buf.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = Vec::with_capacity(parts);
    rec(&mut buf, total, parts, f);
}

fn monomial(vars: &[String], exps: &[u32], c: Rational) -> MultiPoly {
    let mut p = MultiPoly::constant(c);
    for (v, &e) in vars.iter().zip(exps) {
        if e > 0 {
            p = &p * &MultiPoly::var(v).pow(e);
        }
    }
    p
}

/// `Σ_{k_1+…+k_N+q = N1·d} (-1)^q Π_h C(d/s, k_h) a_h^(k_h) a_i^q` in the
/// variables `a1..aN`; `i` is 1-based.
pub fn infinity_residue_sum(big_n: usize, s: u32, n1: u32, d: i64, i: usize) -> MultiPoly {
    let vars: Vec<String> = (1..=big_n).map(point_var).collect();
    let beta = rat(d, s as i64);
    let total = n1 as i64 * d;
    let table: Vec<Rational> = (0..=total as u32).map(|k| binom(&beta, k)).collect();
    let mut terms: Vec<MultiPoly> = Vec::new();
    for_each_composition(total as u32, big_n + 1, &mut |ks| {
        let q = ks[big_n];
        let mut c = if q % 2 == 0 { int(1) } else { int(-1) };
        for &k in &ks[..big_n] {
            c *= &table[k as usize];
            if c.is_zero() {
                return;
            }
        }
        let mut e = ks[..big_n].to_vec();
        e[i - 1] += q;
        terms.push(monomial(&vars, &e, c));
    });
    MultiPoly::sum(terms.iter())
}

/// Residue sums at the branch point `ν` with `d = j|n|/m`, in the frame
/// where `a_ν - a_h` is the variable `u_h`:
///
/// for `i ≠ ν`, `Σ_{k_1+…+k_N = d-1} (-1)^(k_ν) / (a_ν-a_i)^(k_ν+1) Π_{h≠ν} C(-d, k_h) / (a_ν-a_h)^(k_h+d)`;
///
/// for `i = ν`, `Σ'_{k_1+…+k_N = d} Π_{h≠ν} C(-d, k_h) / (a_ν-a_h)^(k_h+d)` with `k_ν` absent.
pub fn branch_residue_sum(big_n: usize, d: u32, i: usize, nu: usize) -> Result<RatFunc> {
    let frame = Frame::Shifted { nu };
    let others: Vec<usize> = (1..=big_n).filter(|&h| h != nu).collect();
    let names: Vec<String> = others.iter().map(|&h| frame.var(h)).collect();
    let table: Vec<Rational> = (0..=d).map(|k| binom(&int(-(d as i64)), k)).collect();
    // common denominator Π u_h^(top_h)
    let mut top: Vec<u32> = vec![if i == nu { 2 * d } else { 2 * d - 1 }; others.len()];
    if i != nu {
        let pos = others.iter().position(|&h| h == i).expect("i ≠ ν");
        top[pos] = 2 * d;
    }
    let mut terms: Vec<MultiPoly> = Vec::new();
    if i == nu {
        for_each_composition(d, others.len(), &mut |ks| {
            let mut c = Rational::one();
            let mut e = Vec::with_capacity(ks.len());
            for (pos, &k) in ks.iter().enumerate() {
                c *= &table[k as usize];
                e.push(top[pos] - (k + d));
            }
            terms.push(monomial(&names, &e, c));
        });
    } else {
        if d == 0 {
            return Ok(RatFunc::zero());
        }
        let ipos = others.iter().position(|&h| h == i).expect("i ≠ ν");
        // ks[0] is k_ν, the rest follow `others`
        for_each_composition(d - 1, others.len() + 1, &mut |ks| {
            let k_nu = ks[0];
            let mut c = if k_nu % 2 == 0 { int(1) } else { int(-1) };
            let mut e = Vec::with_capacity(others.len());
            for (pos, &k) in ks[1..].iter().enumerate() {
                c *= &table[k as usize];
                let mut used = k + d;
                if pos == ipos {
                    used += k_nu + 1;
                }
                e.push(top[pos] - used);
            }
            terms.push(monomial(&names, &e, c));
        });
    }
    let num = MultiPoly::sum(terms.iter());
    let factors: Vec<(MultiPoly, u32)> = names.iter().zip(&top).map(|(v, &t)| (MultiPoly::var(v), t)).collect();
    RatFunc::from_factored(num, &factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn composition_counts() {
        let mut n = 0;
        for_each_composition(3, 3, &mut |_| n += 1);
        assert_eq!(n, 10);
        let mut n0 = 0;
        for_each_composition(0, 4, &mut |ks| {
            assert_eq!(ks, &[0, 0, 0, 0]);
            n0 += 1
        });
        assert_eq!(n0, 1);
    }

    #[test]
    fn torus_layer() {
        // m = N = 3, n = 1, j = 1: d = 1, polynomial (a1 + a2 + a3 - a_i)/3 shape
        let p = infinity_residue_sum(3, 3, 1, 1, 1);
        assert_eq!(p, parse_poly("1/3*a2 + 1/3*a3 - 2/3*a1").unwrap());
    }

    #[test]
    fn branch_layer_single_term() {
        // d = 1, N = 3, ν = 1, i = 2: 1/((a1-a2)^2 (a1-a3))
        let r = branch_residue_sum(3, 1, 2, 1).unwrap();
        let expect = crate::algebra::parse_ratfunc("1/(u2^2*u3)").unwrap();
        assert_eq!(r, expect);
        let r1 = branch_residue_sum(3, 1, 1, 1).unwrap();
        // Σ' over k2+k3 = 1 of C(-1,k)/(u^(k+1)): -1/(u2^2 u3) - 1/(u2 u3^2)
        let expect1 = crate::algebra::parse_ratfunc("-1/(u2^2*u3) - 1/(u2*u3^2)").unwrap();
        assert_eq!(r1, expect1);
    }
}
