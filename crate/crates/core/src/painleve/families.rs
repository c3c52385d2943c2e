//! The rational families: polynomial ones from the torus with three
//! punctures and their hypergeometric generalization (`n > 0`), and the
//! one-parameter families from the thrice-punctured sphere (`n < 0`).

use super::{x, x_poly, y_from_b, PVISolutionFamily, ThetaTuple, FAMILY_VAR, X};
use crate::algebra::rational::{format_rational, is_integer};
use crate::algebra::{binom, int, rat, MultiPoly, RatFunc, Rational};
use crate::error::{Error, Result};

/// `Σ_j coeff(j) x^j` for `j` in `range`.
fn series(range: std::ops::RangeInclusive<i64>, coeff: impl Fn(i64) -> Rational) -> MultiPoly {
    let terms: Vec<MultiPoly> = range
        .filter_map(|j| {
            let c = coeff(j);
            (c != int(0)).then(|| MultiPoly::monomial(X, j as u32, c))
        })
        .collect();
    MultiPoly::sum(terms.iter())
}

/// `binom(top, k)` with `binom(top, k) = 0` for `k < 0`.
fn bin(top: &Rational, k: i64) -> Rational {
    if k < 0 {
        int(0)
    } else {
        binom(top, k as u32)
    }
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// `poly(x) / x^k`.
fn over_x(poly: MultiPoly, k: u32) -> Result<RatFunc> {
    RatFunc::from_factored(poly, &[(x_poly(), k)])
}

/// `poly(1 - x) / (1 - x)^k`.
fn over_one_minus_x(poly: MultiPoly, k: u32) -> Result<RatFunc> {
    let shifted = poly.substitute(X, &(&MultiPoly::one() - &x_poly()));
    let base = &x_poly() - &MultiPoly::one();
    RatFunc::from_factored(shifted.scale(&sign(k as i64)), &[(base, k)])
}

fn check_thm5(n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::precondition(format!("n must be a positive integer, got {n}")));
    }
    if n % 3 == 0 {
        return Err(Error::precondition(format!("3 divides n = {n}; Theorem 5 needs 3 ∤ n")));
    }
    Ok(())
}

/// `(b_1^P, b_2^P, b_3^P)` for `β_1 = β_2 = β_3 = n/6`.
pub fn thm5_triple(n: i64) -> Result<[RatFunc; 3]> {
    check_thm5(n)?;
    let t = rat(n, 3);
    let tm = &t - int(1);
    let s = sign(n + 1);
    let b1 = series(0..=n, |j| &s * bin(&t, j) * bin(&t, n - j));
    let b2 = series(0..=n, |j| &s * bin(&t, j) * bin(&tm, n - j));
    let b3 = series(0..=n, |j| &s * bin(&tm, j) * bin(&t, n - j));
    Ok([b1, b2, b3].map(RatFunc::from_poly))
}

pub fn thm5_theta(n: i64) -> ThetaTuple {
    let b = rat(n, 6);
    ThetaTuple::new(b.clone(), b.clone(), b, rat(-n, 2))
}

/// `P_(n+1)`, `Q_(n+1)` of the rational solution for `3 ∤ n`.
pub fn thm5_polynomials(n: i64) -> Result<(MultiPoly, MultiPoly)> {
    check_thm5(n)?;
    let t = rat(n, 3);
    let p = series(1..=n + 1, |j| bin(&t, j - 1) * bin(&t, n - j + 1));
    let scale = rat(-3 * (n + 1), n);
    let q = series(0..=n + 1, |j| &scale * bin(&t, j) * bin(&t, n - j + 1));
    Ok((p, q))
}

/// `y = P_(n+1)/Q_(n+1)`.
pub fn thm5_solution(n: i64) -> Result<PVISolutionFamily> {
    let (p, q) = thm5_polynomials(n)?;
    let y = RatFunc::new(p, q)?;
    Ok(PVISolutionFamily::new(y, thm5_theta(n), 5, &[("n", n.to_string())]))
}

/// `[[b_1^R, b_2^R, b_3^R], [b̃_1^R, b̃_2^R, b̃_3^R]]` for `n < 0`.
pub fn thm6_basis(n: i64) -> Result<[[RatFunc; 3]; 2]> {
    if n > -1 {
        return Err(Error::precondition(format!("n must be a negative integer, got {n}")));
    }
    let d = -n;
    let (md, md1) = (int(-d), int(-d - 1));
    let s = sign(n);
    let k = 2 * d as u32;
    let b1 = over_x(series(0..=d, |j| &s * bin(&md, j) * bin(&md, d - j)), k)?;
    let b2 = over_x(series(0..=d - 1, |j| &s * bin(&md1, j) * bin(&md, d - 1 - j)), k - 1)?;
    let b3 = over_x(series(0..=d - 1, |j| &s * bin(&md, j) * bin(&md1, d - 1 - j)), k)?;
    let t1 = over_one_minus_x(series(0..=d - 1, |j| bin(&md1, j) * bin(&md, d - 1 - j)), k - 1)?;
    let t2 = over_one_minus_x(series(0..=d, |j| bin(&md, j) * bin(&md, d - j)), k)?;
    let t3 = over_one_minus_x(series(0..=d - 1, |j| bin(&md, j) * bin(&md1, d - 1 - j)), k)?;
    Ok([[b1, b2, b3], [t1, t2, t3]])
}

pub fn thm6_theta(n: i64) -> ThetaTuple {
    let b = rat(n, 2);
    ThetaTuple::new(b.clone(), b.clone(), b, rat(-3 * n, 2))
}

fn family_from_basis(b1: &RatFunc, b3: &RatFunc, t1: &RatFunc, t3: &RatFunc) -> Result<RatFunc> {
    let c = RatFunc::var(FAMILY_VAR);
    y_from_b(&(&(&c * b1) + t1), &(&(&c * b3) + t3))
}

/// `y(x, c)` built from `c b^R + b̃^R`.
pub fn thm6_family(n: i64) -> Result<PVISolutionFamily> {
    let [[b1, _, b3], [t1, _, t3]] = thm6_basis(n)?;
    let y = family_from_basis(&b1, &b3, &t1, &t3)?;
    Ok(PVISolutionFamily::new(y, thm6_theta(n), 6, &[("n", n.to_string())]))
}

/// `b_3 = -x b_1'/(1 + b - c) - b b_1/(1 + b - c)`.
fn b3_from_b1(b1: &RatFunc, b: &Rational, c: &Rational) -> Result<RatFunc> {
    let k = int(1) + b - c;
    if k == int(0) {
        return Err(Error::precondition("c = b + 1 is excluded"));
    }
    let kinv = k.recip();
    Ok(-&(&(&x() * &b1.partial(X)) + &b1.scale(b)).scale(&kinv))
}

fn check_thm7(n: i64, b: &Rational, c: &Rational) -> Result<()> {
    if n < 1 {
        return Err(Error::precondition(format!("n must be a positive integer, got {n}")));
    }
    if is_integer(c) && *c <= int(-1) && *c >= int(-n + 1) {
        return Err(Error::precondition(format!("c = {} lies in {{-1, ..., -n+1}}", format_rational(c))));
    }
    if *c == b + int(1) {
        return Err(Error::precondition("c = b + 1 is excluded"));
    }
    Ok(())
}

pub fn thm7_theta(n: i64, b: &Rational, c: &Rational) -> ThetaTuple {
    let half = rat(1, 2);
    ThetaTuple::new(
        (int(1) + b - c) * &half,
        (int(n) + c - int(1)) * &half,
        -b * &half,
        rat(-n, 2),
    )
}

/// `(b_1^P(b, c, x), b_3^P(b, c, x))`.
pub fn thm7_triple(n: i64, b: &Rational, c: &Rational) -> Result<(RatFunc, RatFunc)> {
    check_thm7(n, b, c)?;
    let (mb, top) = (-b.clone(), c + int(n - 1));
    let b1 = RatFunc::from_poly(series(0..=n, |j| bin(&mb, j) * bin(&top, n - j)));
    let b3 = b3_from_b1(&b1, b, c)?;
    Ok((b1, b3))
}

/// `P_(n+1)(b, c, x)` and `Q_(n+1)(b, c, x)` from their binomial sums.
pub fn thm7_polynomials(n: i64, b: &Rational, c: &Rational) -> Result<(MultiPoly, MultiPoly)> {
    check_thm7(n, b, c)?;
    let (mb, top) = (-b.clone(), c + int(n - 1));
    let p = series(1..=n + 1, |j| bin(&mb, j - 1) * bin(&top, n - j + 1));
    let scale = -int(n + 1) / (int(1) + b - c);
    let q = series(0..=n + 1, |j| &scale * bin(&mb, j) * bin(&top, n - j + 1));
    Ok((p, q))
}

pub fn thm7_solution(n: i64, b: &Rational, c: &Rational) -> Result<PVISolutionFamily> {
    let (p, q) = thm7_polynomials(n, b, c)?;
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let y = RatFunc::new(p, q)?;
    let params = [("n", n.to_string()), ("b", format_rational(b)), ("c", format_rational(c))];
    Ok(PVISolutionFamily::new(y, thm7_theta(n, b, c), 7, &params))
}

/// `c > 1`, `b >= 1`, `a > c`, `c - a < b < c - 1`.
pub fn thm8_admissible(a: i64, b: i64, c: i64) -> bool {
    c > 1 && b >= 1 && a > c && c - a < b && b < c - 1
}

/// Every admissible `(a, b, c)` with `a <= a_max`.
pub fn thm8_grid(a_max: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for a in 1..=a_max {
        for c in 2..a {
            for b in 1..c - 1 {
                if thm8_admissible(a, b, c) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

pub fn thm8_theta(a: i64, b: i64, c: i64) -> ThetaTuple {
    ThetaTuple::new(rat(1 + b - c, 2), rat(c - a - 1, 2), rat(-b, 2), rat(a, 2))
}

/// `[[b_1^R, b_3^R], [b̃_1^R, b̃_3^R]]` for integer `(a, b, c)`.
pub fn thm8_basis(a: i64, b: i64, c: i64) -> Result<[[RatFunc; 2]; 2]> {
    if !thm8_admissible(a, b, c) {
        return Err(Error::precondition(format!(
            "(a, b, c) = ({a}, {b}, {c}) violates c > 1, b >= 1, a > c, c - a < b < c - 1"
        )));
    }
    let mb = int(-b);
    let top1 = int(c - a - 1);
    // the binomial pair with index j multiplies the power d - j, not j
    let d1 = c - b - 1;
    let b1 = over_x(series(0..=d1, |k| bin(&mb, d1 - k) * bin(&top1, k)), (c - 1) as u32)?;
    let top2 = int(b - c);
    let d2 = a - c;
    let t1 = over_one_minus_x(series(0..=d2, |k| bin(&mb, d2 - k) * bin(&top2, k)), (a + b - c) as u32)?;
    let (br, cr) = (int(b), int(c));
    let b3 = b3_from_b1(&b1, &br, &cr)?;
    let t3 = b3_from_b1(&t1, &br, &cr)?;
    Ok([[b1, b3], [t1, t3]])
}

pub fn thm8_family(a: i64, b: i64, c: i64) -> Result<PVISolutionFamily> {
    let [[b1, b3], [t1, t3]] = thm8_basis(a, b, c)?;
    let y = family_from_basis(&b1, &b3, &t1, &t3)?;
    let params = [("a", a.to_string()), ("b", b.to_string()), ("c", c.to_string())];
    Ok(PVISolutionFamily::new(y, thm8_theta(a, b, c), 8, &params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ratfunc;
    use crate::painleve::{hypergeom_residual, linear_system_residual, pvi_residual, Hypergeom};

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn thm5_examples() {
        let y1 = thm5_solution(1).unwrap().y;
        assert_eq!(y1, r("x*(x + 1)/(2*(x^2 - x + 1))"));
        assert_eq!(thm5_solution(2).unwrap().y, r("x*(x^2 - 4*x + 1)/(2*x^3 - 3*x^2 - 3*x + 2)"));
        assert_eq!(
            thm5_solution(4).unwrap().y,
            r("x*(5*x^4 - 16*x^3 + 12*x^2 - 16*x + 5)/(10*x^5 - 25*x^4 + 10*x^3 + 10*x^2 - 25*x + 10)")
        );
        assert!(matches!(thm5_solution(3), Err(Error::Precondition(_))));
    }

    #[test]
    fn thm5_triples_match_listed_values() {
        let [b1, b2, b3] = thm5_triple(4).unwrap();
        assert_eq!(b1, r("-(5*x^4 - 16*x^3 + 12*x^2 - 16*x + 5)/243"));
        assert_eq!(b2, r("-(5*x^4 - 4*x^3 - 6*x^2 + 20*x - 10)/243"));
        assert_eq!(b3, r("-(-10*x^4 + 20*x^3 - 6*x^2 - 4*x + 5)/243"));
    }

    #[test]
    fn thm5_triple_gives_the_same_y() {
        for n in [1, 2, 4, 5, 7] {
            let [b1, b2, b3] = thm5_triple(n).unwrap();
            assert!((&(&b1 + &b2) + &b3).is_zero());
            assert_eq!(y_from_b(&b1, &b3).unwrap(), thm5_solution(n).unwrap().y, "n = {n}");
            let (r1, r2) = linear_system_residual(&b1, &b2, &thm5_theta(n)).unwrap();
            assert!(r1.is_zero() && r2.is_zero());
        }
    }

    #[test]
    fn thm6_basis_values() {
        let [[b1, b2, b3], [t1, t2, t3]] = thm6_basis(-2).unwrap();
        assert_eq!(b1, r("(3 + 4*x + 3*x^2)/x^4"));
        assert_eq!(b2, r("-(2 + 3*x)/x^3"));
        assert_eq!(b3, r("-(3 + 2*x)/x^4"));
        assert_eq!(t1, r("(-5 + 3*x)/(1 - x)^3"));
        assert_eq!(t2, r("(10 - 10*x + 3*x^2)/(1 - x)^4"));
        assert_eq!(t3, r("(-5 + 2*x)/(1 - x)^4"));
        let th = thm6_theta(-2);
        for f in [&b1, &t1] {
            assert!(hypergeom_residual(f, Hypergeom::First, &th).unwrap().is_zero());
        }
        for f in [&b2, &t2] {
            assert!(hypergeom_residual(f, Hypergeom::Second, &th).unwrap().is_zero());
        }
    }

    #[test]
    fn thm6_examples() {
        assert_eq!(thm6_family(-1).unwrap().y, r("((1 - c)*x^2 + c)/(2*((1 - c)*x + c))"));
        let y2 = thm6_family(-2).unwrap().y;
        assert_eq!(y2, r("((1 - c)*x^4*(3*x - 5) + c*(3 - 5*x))/(5*((1 - c)*x^3*(x - 2) + c*(1 - 2*x)))"));
        let y3 = thm6_family(-3).unwrap().y;
        assert_eq!(
            y3,
            r("((1 - c)*x^6*(14 - 16*x + 5*x^2) + c*(5 - 16*x + 14*x^2))/(4*((1 - c)*x^5*(7 - 7*x + 2*x^2) + c*(2 - 7*x + 7*x^2)))")
        );
    }

    #[test]
    fn thm7_specializations() {
        let y = thm7_solution(1, &rat(-1, 3), &rat(1, 3)).unwrap().y;
        assert_eq!(y, thm5_solution(1).unwrap().y);
        let (b1, b3) = thm7_triple(1, &int(0), &int(2)).unwrap();
        assert_eq!(b1, RatFunc::from_i64(2));
        assert!(b3.is_zero());
        assert_eq!(thm7_solution(1, &int(0), &int(2)).unwrap().y, x());
        assert!(thm7_solution(3, &int(0), &int(-2)).is_err());
        assert!(thm7_solution(2, &int(1), &int(2)).is_err());
    }

    #[test]
    fn thm7_sums_agree_with_derivative_formula() {
        for (n, b, c) in [(2, rat(1, 2), rat(3, 4)), (3, rat(-2, 5), rat(7, 3)), (4, int(2), rat(-1, 2))] {
            let (b1, b3) = thm7_triple(n, &b, &c).unwrap();
            let fam = thm7_solution(n, &b, &c).unwrap();
            assert_eq!(y_from_b(&b1, &b3).unwrap(), fam.y);
            assert!(hypergeom_residual(&b1, Hypergeom::First, &fam.theta).unwrap().is_zero());
        }
    }

    #[test]
    fn thm7_reciprocity() {
        // c + n - 1 = -b
        let (n, b) = (4, rat(2, 7));
        let c = -&b - int(n - 1);
        let (_, q) = thm7_polynomials(n, &b, &c).unwrap();
        let co = q.to_univariate(X).unwrap();
        let rev: Vec<_> = co.iter().rev().cloned().collect();
        assert_eq!(co, rev);
    }

    #[test]
    fn thm8_matches_thm6_basis() {
        // (a, b, c) = (3|n|, |n|, 1 + 2|n|) with n = -2
        let [[b1, b3], [t1, t3]] = thm8_basis(6, 2, 5).unwrap();
        let [[r1, _, r3], [s1, _, s3]] = thm6_basis(-2).unwrap();
        let k = b1.checked_div(&r1).unwrap().constant_value().expect("proportional");
        assert_eq!(b3, r3.scale(&k));
        let kt = t1.checked_div(&s1).unwrap().constant_value().expect("proportional");
        assert_eq!(t3, s3.scale(&kt));
        assert_eq!(thm8_theta(6, 2, 5), thm6_theta(-2));
    }

    #[test]
    fn thm8_smallest_family() {
        assert!(thm8_family(2, 1, 2).is_err());
        assert!(thm8_family(4, 1, 2).is_err());
        let fam = thm8_family(4, 1, 3).unwrap();
        for c in [0, 1, 2] {
            let y = fam.specialize(&int(c)).unwrap();
            assert!(pvi_residual(&y, &fam.params).unwrap().is_zero(), "c = {c}");
        }
    }

    #[test]
    fn thm8_basis_solves_the_hypergeometric_equation() {
        for (a, b, c) in thm8_grid(8) {
            let [[b1, _], [t1, _]] = thm8_basis(a, b, c).unwrap();
            let th = thm8_theta(a, b, c);
            for f in [&b1, &t1] {
                assert!(hypergeom_residual(f, Hypergeom::First, &th).unwrap().is_zero(), "({a}, {b}, {c})");
            }
        }
    }

    #[test]
    fn thm8_grid_is_nonempty() {
        let g = thm8_grid(8);
        assert!(g.contains(&(4, 1, 3)));
        assert!(g.iter().all(|&(a, b, c)| thm8_admissible(a, b, c) && a <= 8));
    }
}
