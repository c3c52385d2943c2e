//! Painleve VI families: printed examples, exact residuals against a
//! numeric oracle, zero distributions, the Okamoto example and the
//! Liouvillian samples.

use std::time::Instant;

use isolab::algebra::rational::to_f64;
use isolab::algebra::{int, parse_ratfunc, rat, RatFunc, Rational};
use isolab::golden::thm7_grid;
use isolab::painleve::liouvillian::LiouvillianKernel;
use isolab::painleve::{
    degenerate_prolongation, liouvillian_eval, polynomial_zeros, pvi_params, pvi_residual, riccati_residual,
    thm5_polynomials, thm5_solution, thm5_triple, thm6_basis, thm6_family, thm7_solution, thm7_theta, thm8_family,
    thm8_grid, OkamotoCoords, PVIParams, PVISolutionFamily, ZeroRow, FAMILY_VAR, X,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn r(s: &str) -> RatFunc {
    parse_ratfunc(s).unwrap()
}

fn eval_at(y: &RatFunc, x: &Rational) -> Rational {
    y.eval_rational(&|v| (v == X).then(|| x.clone())).unwrap()
}

/// PVI evaluated in floating point, relative to the largest term. The
/// five-point derivative stencils run on exact samples of `y` in rational
/// arithmetic, so only the final values are rounded.
fn numeric_pvi_defect(y: &RatFunc, p: &PVIParams, x0: &Rational) -> f64 {
    let h = rat(1, 1_000_000);
    let s: Vec<Rational> = (-2..=2).map(|k| eval_at(y, &(x0 + &h * int(k)))).collect();
    let d1 = to_f64(&((&s[0] - &s[1] * int(8) + &s[3] * int(8) - &s[4]) / (&h * int(12))));
    let d2 = to_f64(&((-&s[0] + &s[1] * int(16) - &s[2] * int(30) + &s[3] * int(16) - &s[4]) / (&h * &h * int(12))));
    let (x, y0) = (to_f64(x0), to_f64(&s[2]));
    let [a, b, g, d] = [&p.alpha, &p.beta, &p.gamma, &p.delta].map(to_f64);
    let t1 = 0.5 * (1.0 / y0 + 1.0 / (y0 - 1.0) + 1.0 / (y0 - x)) * d1 * d1;
    let t2 = -(1.0 / x + 1.0 / (x - 1.0) + 1.0 / (y0 - x)) * d1;
    let t3 = y0 * (y0 - 1.0) * (y0 - x) / (x * x * (x - 1.0) * (x - 1.0))
        * (a + b * x / (y0 * y0) + g * (x - 1.0) / ((y0 - 1.0) * (y0 - 1.0)) + d * x * (x - 1.0) / ((y0 - x) * (y0 - x)));
    let scale = [d2, t1, t2, t3].iter().map(|v| v.abs()).fold(1.0, f64::max);
    (d2 - t1 - t2 - t3).abs() / scale
}

fn sample_points() -> [Rational; 3] {
    [rat(23, 10), rat(-3, 5), rat(37, 100)]
}

/// Exact residual and the floating-point oracle, with the family parameter
/// fixed at `3/7` for the oracle.
fn assert_solves(fam: &PVISolutionFamily, label: &str) {
    assert!(pvi_residual(&fam.y, &fam.params).unwrap().is_zero(), "{label}: exact residual");
    let y = if fam.has_parameter() { fam.specialize(&rat(3, 7)).unwrap() } else { fam.y.clone() };
    for x in sample_points() {
        let defect = numeric_pvi_defect(&y, &fam.params, &x);
        assert!(defect < 1e-6, "{label}: oracle defect {defect:e} at x = {x}");
    }
}

#[test]
fn example_1_values() {
    let t = Instant::now();
    let cases = [
        (1, rat(1, 3), ["x + 1", "x - 2", "-2*x + 1"], "x*(x + 1)/(2*x^2 - 2*x + 2)"),
        (2, rat(1, 9), ["x^2 - 4*x + 1", "x^2 + 2*x - 2", "-2*x^2 + 2*x + 1"], "x*(x^2 - 4*x + 1)/(2*x^3 - 3*x^2 - 3*x + 2)"),
        (
            4,
            rat(-1, 243),
            ["5*x^4 - 16*x^3 + 12*x^2 - 16*x + 5", "5*x^4 - 4*x^3 - 6*x^2 + 20*x - 10", "-10*x^4 + 20*x^3 - 6*x^2 - 4*x + 5"],
            "x*(5*x^4 - 16*x^3 + 12*x^2 - 16*x + 5)/(10*x^5 - 25*x^4 + 10*x^3 + 10*x^2 - 25*x + 10)",
        ),
    ];
    for (n, scale, bs, y) in cases {
        let triple = thm5_triple(n).unwrap();
        for (got, want) in triple.iter().zip(bs) {
            assert_eq!(*got, r(want).scale(&scale), "n = {n}");
        }
        assert_eq!(thm5_solution(n).unwrap().y, r(y), "n = {n}");
    }
    assert!(t.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn example_1_parameters() {
    let expected = [(1, ["2", "-1/18", "1/18", "4/9"]), (2, ["9/2", "-2/9", "2/9", "5/18"]), (4, ["25/2", "-8/9", "8/9", "-7/18"])];
    for (n, params) in expected {
        assert_eq!(thm5_solution(n).unwrap().params.as_strings(), params.map(String::from));
    }
}

#[test]
fn example_2_values() {
    let t = Instant::now();
    let cases = [
        (
            -1,
            ["(1 + x)/x^2", "-1/x", "-1/x^2", "1/(1 - x)", "(x - 2)/(1 - x)^2", "1/(1 - x)^2"],
            "((1 - c)*x^2 + c)/(2*((1 - c)*x + c))",
        ),
        (
            -3,
            [
                "(10 + 18*x + 18*x^2 + 10*x^3)/x^6",
                "-(6 + 12*x + 10*x^2)/x^5",
                "-(10 + 12*x + 6*x^2)/x^6",
                "(28 - 32*x + 10*x^2)/(1 - x)^5",
                "(-56 + 84*x - 48*x^2 + 10*x^3)/(1 - x)^6",
                "(28 - 24*x + 6*x^2)/(1 - x)^6",
            ],
            "((1 - c)*x^6*(14 - 16*x + 5*x^2) + c*(5 - 16*x + 14*x^2))/(4*((1 - c)*x^5*(7 - 7*x + 2*x^2) + c*(2 - 7*x + 7*x^2)))",
        ),
    ];
    for (n, fs, y) in cases {
        let basis = thm6_basis(n).unwrap();
        for (got, want) in basis.iter().flatten().zip(fs) {
            assert_eq!(*got, r(want), "n = {n}");
        }
        assert_eq!(thm6_family(n).unwrap().y, r(y), "n = {n}");
    }
    let params = thm6_family(-2).unwrap().params.as_strings();
    assert_eq!(params, ["25/2", "-2", "2", "-3/2"].map(String::from));
    assert!(t.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn example_2_bases_sum_to_zero() {
    for n in -5..=-1 {
        for triple in thm6_basis(n).unwrap() {
            let total = triple.iter().fold(RatFunc::zero(), |acc, t| &acc + t);
            assert!(total.is_zero(), "n = {n}");
        }
    }
}

#[test]
fn theorem_5_residuals() {
    for n in (1..=12).filter(|n| n % 3 != 0) {
        assert_solves(&thm5_solution(n).unwrap(), &format!("thm5 n={n}"));
    }
    assert!(thm5_solution(3).is_err());
    assert!(thm5_solution(0).is_err());
}

#[test]
fn theorem_6_residuals() {
    for n in -5..=-1 {
        let fam = thm6_family(n).unwrap();
        assert!(fam.has_parameter());
        assert_solves(&fam, &format!("thm6 n={n}"));
    }
}

#[test]
fn theorem_7_residuals() {
    let grid = thm7_grid();
    assert_eq!(grid.len(), 10);
    for (n, b, c) in grid {
        assert_solves(&thm7_solution(n, &b, &c).unwrap(), &format!("thm7 ({n}, {b}, {c})"));
    }
}

#[test]
fn theorem_8_residuals() {
    let grid = thm8_grid(8);
    assert!(!grid.is_empty());
    for (a, b, c) in grid {
        assert_solves(&thm8_family(a, b, c).unwrap(), &format!("thm8 ({a}, {b}, {c})"));
    }
}

#[test]
fn oracle_rejects_a_wrong_solution() {
    let fam = thm5_solution(2).unwrap();
    let wrong = &fam.y + &r("x/1000");
    assert!(!pvi_residual(&wrong, &fam.params).unwrap().is_zero());
    assert!(numeric_pvi_defect(&wrong, &fam.params, &rat(23, 10)) > 1e-6);
}

fn coefficients(p: &isolab::algebra::MultiPoly) -> Vec<Rational> {
    p.to_univariate(X).unwrap()
}

#[test]
fn reciprocal_polynomials() {
    for n in (1..=50).filter(|n| n % 3 != 0) {
        let (_, q) = thm5_polynomials(n).unwrap();
        let c = coefficients(&q);
        assert_eq!(c.len() as i64, n + 2, "deg Q_(n+1)");
        assert!(c.iter().eq(c.iter().rev()), "Q_{} not palindromic", n + 1);
        let b1 = thm5_triple(n).unwrap()[0].as_poly().unwrap().clone();
        let c = coefficients(&b1);
        assert!(c.iter().eq(c.iter().rev()), "b1^P not palindromic for n = {n}");
    }
}

#[test]
fn figure_zero_distributions() {
    for (n, rows) in [(25, 26), (28, 29)] {
        let (p, q) = thm5_polynomials(n).unwrap();
        for (id, poly) in [("P", p), ("Q", q)] {
            let report = polynomial_zeros(&poly).unwrap();
            assert_eq!(report.roots.len(), rows, "{id} n = {n}");
            assert!(report.conjugation_defect < 1e-8, "{id} n = {n}: {:e}", report.conjugation_defect);
            assert!(report.inversion_defect < 1e-8, "{id} n = {n}: {:e}", report.inversion_defect);
            let table = ZeroRow::from_report(id, &report);
            assert!(table.iter().all(|row| row.conjugate_paired && row.inversion_paired));
            // each root annihilates the polynomial relative to its term sizes
            let c: Vec<f64> = coefficients(&poly).iter().map(to_f64).collect();
            for z in &report.roots {
                let value = c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
                let size: f64 = c.iter().enumerate().map(|(k, a)| a.abs() * z.norm().powi(k as i32)).sum();
                assert!(value.norm() <= 1e-9 * size, "{id} n = {n} root {z}");
            }
        }
    }
}

#[test]
fn smallest_zero_set() {
    let (p, _) = thm5_polynomials(1).unwrap();
    let roots = polynomial_zeros(&p).unwrap().roots;
    assert_eq!(roots.len(), 2);
    assert!((roots[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
    assert!(roots[1].norm() < 1e-14);
}

#[test]
fn example_3_okamoto() {
    let b = OkamotoCoords::new(int(-1), int(1), int(0), int(1));
    let p = r("2*x*(x - 1)/(x^2 + c)");
    assert!(riccati_residual(&p, &b).is_zero());
    let (yw, pw) = degenerate_prolongation(&p, &b.b1, &b.b3).unwrap();
    assert_eq!(yw, r("(x^2 + c)/(2*(x + c))"));
    let one = RatFunc::one();
    let expected = (&p - &(&one + &one)).checked_div(&(&p - &one)).unwrap();
    assert_eq!(pw, expected);
    let params = PVIParams { alpha: int(2), beta: rat(-1, 2), gamma: rat(1, 2), delta: int(0) };
    assert!(pvi_residual(&yw, &params).unwrap().is_zero());
    for x in sample_points() {
        assert!(numeric_pvi_defect(&yw.eval_partial(FAMILY_VAR, &rat(5, 3)).unwrap(), &params, &x) < 1e-6);
    }
}

#[test]
fn liouvillian_cases() {
    for (n, b, c) in [(1, rat(-1, 3), rat(1, 3)), (2, rat(-2, 3), rat(-1, 3))] {
        for s in liouvillian_eval(n, &b, &c, &[2.0, 3.0, 5.0], 1e-10).unwrap() {
            assert!(s.wronskian_rel_error < 1e-8, "({n}, {b}, {c}) x = {}: {:e}", s.x, s.wronskian_rel_error);
            assert!(s.ode_residual < 1e-6, "({n}, {b}, {c}) x = {}: {:e}", s.x, s.ode_residual);
        }
    }
}

/// Composite Simpson on the real segment `[2, x]`, which stays clear of the
/// zeros of `b_1^P` for these cases.
fn simpson(kernel: &LiouvillianKernel, to: f64) -> f64 {
    let steps = 20_000;
    let h = (to - 2.0) / steps as f64;
    let f = |t: f64| kernel.integrand(Complex64::new(t, 0.0)).re;
    let inner: f64 = (1..steps).map(|k| if k % 2 == 1 { 4.0 } else { 2.0 } * f(2.0 + k as f64 * h)).sum();
    (f(2.0) + inner + f(to)) * h / 3.0
}

#[test]
fn liouvillian_integral_against_simpson() {
    for (n, b, c, xs) in [(1, rat(-1, 3), rat(1, 3), vec![3.0, 5.0]), (2, rat(-2, 3), rat(-1, 3), vec![3.0])] {
        let kernel = LiouvillianKernel::new(n, &b, &c).unwrap();
        for s in liouvillian_eval(n, &b, &c, &xs, 1e-10).unwrap() {
            let reference = simpson(&kernel, s.x);
            assert!((s.integral.re - reference).abs() < 1e-9 * reference.abs().max(1.0), "n = {n} x = {}", s.x);
            assert!(s.integral.im.abs() < 1e-12);
        }
    }
}

#[test]
fn family_documents_round_trip() {
    for fam in [thm5_solution(4).unwrap(), thm6_family(-2).unwrap(), thm7_solution(2, &rat(1, 2), &rat(3, 4)).unwrap()] {
        let doc = fam.to_document(Some(true));
        let back = PVISolutionFamily::from_document(&doc).unwrap();
        assert_eq!(back.y, fam.y);
        assert_eq!(back.params, fam.params);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(serde_json::to_string(&back.to_document(Some(true))).unwrap(), text);
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theorem_5_triples_sum_to_zero(n in 1i64..=30) {
        prop_assume!(n % 3 != 0);
        let [b1, b2, b3] = thm5_triple(n).unwrap();
        prop_assert!((&(&b1 + &b2) + &b3).is_zero());
    }

    #[test]
    fn theorem_7_exponents_are_triangular(n in 1i64..=6, b in small_rational(), c in small_rational()) {
        let theta = thm7_theta(n, &b, &c);
        prop_assert!(theta.is_triangular());
        // alpha = (2 beta_inf - 1)^2 / 2 from the exponent at infinity
        let s = int(2) * &theta.beta_inf - int(1);
        prop_assert_eq!(pvi_params(&theta).alpha, &s * &s * rat(1, 2));
    }

    #[test]
    fn theorem_7_random_grid_solves(n in 1i64..=3, b in small_rational(), c in small_rational()) {
        if let Ok(fam) = thm7_solution(n, &b, &c) {
            prop_assert!(pvi_residual(&fam.y, &fam.params).unwrap().is_zero());
        }
    }
}
