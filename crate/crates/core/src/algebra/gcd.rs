//! Multivariate gcd: content extraction plus a subresultant remainder
//! sequence on a main variable, with a Euclid fallback for the univariate case.

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::rational::Rational;

/// Monic gcd (leading coefficient one in graded-lex order).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic().1;
    }
    if b.is_zero() {
        return a.monic().1;
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let (ma, ra) = split_monomial(a);
    let (mb, rb) = split_monomial(b);
    let mono = monomial_gcd(&ma, &mb);
    let g = gcd_no_monomial(&ra, &rb);
    (&mono * &g).monic().1
}

/// Splits `p = m * r` with `m` the largest monomial factor (coefficient one).
pub(crate) fn split_monomial(p: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let m = p.monomial_content();
    if m.iter().all(|&e| e == 0) {
        return (MultiPoly::one(), p.clone());
    }
    let mono = monomial_from(p.vars(), &m);
    (mono, p.div_monomial(&m))
}

pub(crate) fn monomial_from(vars: &[String], exps: &[u32]) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for (v, &e) in vars.iter().zip(exps.iter()) {
        if e > 0 {
            acc = &acc * &MultiPoly::monomial(v, e, Rational::one());
        }
    }
    acc
}

fn monomial_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_one() || b.is_one() {
        return MultiPoly::one();
    }
    let mut acc = MultiPoly::one();
    for v in a.vars() {
        let e = a.degree_in(v).min(b.degree_in(v));
        if e > 0 {
            acc = &acc * &MultiPoly::monomial(v, e, Rational::one());
        }
    }
    acc
}

fn gcd_no_monomial(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let (_, am) = a.monic();
    let (_, bm) = b.monic();
    if am == bm {
        return am;
    }
    // a variable present on one side only forces the gcd into its content
    if let Some(v) = a.vars().iter().find(|v| !b.contains_var(v)) {
        return fold_gcd(b.clone(), a.coefficients_in(v));
    }
    if let Some(v) = b.vars().iter().find(|v| !a.contains_var(v)) {
        return fold_gcd(a.clone(), b.coefficients_in(v));
    }
    if a.vars().len() == 1 {
        return univariate_gcd(a, b);
    }
    let v = a
        .vars()
        .iter()
        .min_by_key(|v| a.degree_in(v).max(b.degree_in(v)))
        .cloned()
        .expect("non-constant");
    let ca = content_in(a, &v);
    let cb = content_in(b, &v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let cg = gcd(&ca, &cb);
    let h = primitive_prs_gcd(&pa, &pb, &v);
    (&cg * &h).monic().1
}

fn fold_gcd(start: MultiPoly, coeffs: Vec<MultiPoly>) -> MultiPoly {
    let mut g = start;
    // small coefficients first: the gcd collapses to one sooner
    let mut coeffs = coeffs;
    coeffs.sort_by_key(|c| c.nterms());
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g.monic().1
}

/// Monic gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &MultiPoly, var: &str) -> MultiPoly {
    if !p.contains_var(var) {
        return p.monic().1;
    }
    let mut coeffs = p.coefficients_in(var);
    coeffs.retain(|c| !c.is_zero());
    coeffs.sort_by_key(|c| c.nterms());
    let mut g = MultiPoly::zero();
    for c in coeffs {
        g = gcd(&g, &c);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g
}

fn univariate_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let v = a.vars()[0].clone();
    let mut r0 = a.to_univariate(&v).expect("univariate");
    let mut r1 = b.to_univariate(&v).expect("univariate");
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while r1.len() > 1 || (r1.len() == 1 && !r1[0].is_zero()) {
        let r = urem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    MultiPoly::from_univariate(&v, &r0).monic().1
}

fn urem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r: Vec<Rational> = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].recip();
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let q = &r[top] * &inv;
        if !q.is_zero() {
            for k in 0..=db {
                let t = &q * &b[k];
                r[top - db + k] -= t;
            }
        }
        r.pop();
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
    }
    if r.is_empty() {
        r.push(Rational::zero());
    }
    r
}

type UPoly = Vec<MultiPoly>;

fn udeg(p: &UPoly) -> usize {
    p.len() - 1
}

fn utrim(p: &mut UPoly) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn uis_zero(p: &UPoly) -> bool {
    p.len() == 1 && p[0].is_zero()
}

/// lc(b)^(deg a - deg b + 1) * a mod b, coefficients kept in the polynomial ring.
fn prem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = udeg(b);
    let lcb = &b[db];
    let mut r = a.clone();
    let mut e = udeg(a) as i64 - db as i64 + 1;
    while !uis_zero(&r) && udeg(&r) >= db {
        let dr = udeg(&r);
        let lcr = r[dr].clone();
        let s = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for k in 0..=db {
            let t = &lcr * &b[k];
            r[s + k] = &r[s + k] - &t;
        }
        r.pop();
        if r.is_empty() {
            r.push(MultiPoly::zero());
        }
        utrim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lcb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// gcd of two polynomials primitive in `v`, via the subresultant sequence.
fn primitive_prs_gcd(a: &MultiPoly, b: &MultiPoly, v: &str) -> MultiPoly {
    let mut pa: UPoly = a.coefficients_in(v);
    let mut pb: UPoly = b.coefficients_in(v);
    if udeg(&pa) < udeg(&pb) {
        std::mem::swap(&mut pa, &mut pb);
    }
    if udeg(&pb) == 0 {
        return MultiPoly::one();
    }
    let mut g = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let delta = (udeg(&pa) - udeg(&pb)) as u32;
        let r = prem(&pa, &pb);
        if uis_zero(&r) {
            break;
        }
        if udeg(&r) == 0 {
            return MultiPoly::one();
        }
        let divisor = &g * &h.pow(delta);
        pa = pb;
        pb = r
            .into_iter()
            .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
            .collect();
        g = pa[udeg(&pa)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g.pow(d).div_exact(&h.pow(d - 1)).expect("subresultant division is exact"),
        };
    }
    let res = MultiPoly::from_coefficients_in(v, &pb);
    let c = content_in(&res, v);
    res.div_exact(&c).expect("content divides").monic().1
}

/// True when `p` is provably irreducible: of degree one in some variable and
/// primitive with respect to it.
pub fn certified_irreducible(p: &MultiPoly) -> bool {
    if p.is_constant() {
        return false;
    }
    for v in p.vars() {
        if p.degree_in(v) == 1 {
            let cs = p.coefficients_in(v);
            if cs[0].is_zero() {
                // p = v * c1 is irreducible only when c1 is a unit
                if cs[1].is_constant() {
                    return true;
                }
                continue;
            }
            if gcd(&cs[0], &cs[1]).is_constant() {
                return true;
            }
        }
    }
    false
}
