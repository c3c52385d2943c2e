//! Acceptance run: one pass/fail line per criterion, with timings.
//! Exits nonzero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use isolab::algebra::{int, parse_ratfunc, rat, RatFunc};
use isolab::curve::{curve_invariants, cycle_count, SuperellipticCurve};
use isolab::garnier::{thm10_solution, thm11_family, verify_grid, GarnierAlgebraicSolution};
use isolab::painleve::{
    degenerate_prolongation, liouvillian_eval, polynomial_zeros, pvi_residual, riccati_residual, thm5_polynomials,
    thm5_solution, thm5_triple, thm6_basis, thm6_family, thm7_solution, thm8_family, thm8_grid, OkamotoCoords,
    PVIParams, PVISolutionFamily, ZeroRow,
};
use isolab::periods::{period_report, PeriodOptions, PeriodTolerances};
use isolab::schlesinger::{
    build_polynomial_solution, build_rational_solution, check_against_oracle, schlesinger_residual, sum_constraint,
    TriangularSolution,
};
use num_complex::Complex64;
use num_integer::Integer;

type Outcome = Result<String, String>;

/// `(id, name, body, time limit)`.
type Criterion = (u8, &'static str, fn() -> Outcome, Option<Duration>);

fn r(s: &str) -> RatFunc {
    parse_ratfunc(s).expect("literal parses")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sum(fs: &[RatFunc]) -> RatFunc {
    fs.iter().fold(RatFunc::zero(), |acc, f| &acc + f)
}

// 1
fn example_1() -> Outcome {
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
        let triple = thm5_triple(n).map_err(|e| e.to_string())?;
        for (k, (got, want)) in triple.iter().zip(bs).enumerate() {
            ensure(*got == r(want).scale(&scale), || format!("n={n} b{}^P differs", k + 1))?;
        }
        let fam = thm5_solution(n).map_err(|e| e.to_string())?;
        ensure(fam.y == r(y), || format!("n={n} y differs"))?;
    }
    Ok("b^P and y for n = 1, 2, 4 equal the printed values".into())
}

// 2
fn example_2() -> Outcome {
    let cases: [(i64, [&str; 6], &str); 3] = [
        (
            -1,
            ["(1 + x)/x^2", "-1/x", "-1/x^2", "1/(1 - x)", "(x - 2)/(1 - x)^2", "1/(1 - x)^2"],
            "((1 - c)*x^2 + c)/(2*((1 - c)*x + c))",
        ),
        (
            -2,
            [
                "(3 + 4*x + 3*x^2)/x^4",
                "-(2 + 3*x)/x^3",
                "-(3 + 2*x)/x^4",
                "(-5 + 3*x)/(1 - x)^3",
                "(10 - 10*x + 3*x^2)/(1 - x)^4",
                "(-5 + 2*x)/(1 - x)^4",
            ],
            "((1 - c)*x^4*(3*x - 5) + c*(3 - 5*x))/(5*((1 - c)*x^3*(x - 2) + c*(1 - 2*x)))",
        ),
        (
            -3,
            [
                "(10 + 18*x + 18*x^2 + 10*x^3)/x^6",
                "-(6 + 12*x + 10*x^2)/x^5",
                "-(10 + 12*x + 6*x^2)/x^6",
                "(28 - 32*x + 10*x^2)/(1 - x)^5",
                // printed with the opposite overall sign; this one sums to zero with its neighbours
                "(-56 + 84*x - 48*x^2 + 10*x^3)/(1 - x)^6",
                "(28 - 24*x + 6*x^2)/(1 - x)^6",
            ],
            "((1 - c)*x^6*(14 - 16*x + 5*x^2) + c*(5 - 16*x + 14*x^2))/(4*((1 - c)*x^5*(7 - 7*x + 2*x^2) + c*(2 - 7*x + 7*x^2)))",
        ),
    ];
    for (n, fs, y) in cases {
        let basis = thm6_basis(n).map_err(|e| e.to_string())?;
        for (k, (got, want)) in basis.iter().flatten().zip(fs).enumerate() {
            ensure(*got == r(want), || format!("n={n} function {} differs", k + 1))?;
        }
        for triple in &basis {
            ensure(sum(triple).is_zero(), || format!("n={n} basis does not sum to zero"))?;
        }
        let fam = thm6_family(n).map_err(|e| e.to_string())?;
        ensure(fam.y == r(y), || format!("n={n} y(x, c) differs"))?;
    }
    Ok("six functions and y(x, c) for n = -1, -2, -3 (n=-3 ~b2 sign-corrected)".into())
}

fn residual_zero(fam: &PVISolutionFamily) -> Result<bool, String> {
    pvi_residual(&fam.y, &fam.params).map(|res| res.is_zero()).map_err(|e| e.to_string())
}

// 3
fn pvi_residuals() -> Outcome {
    let mut count = 0;
    for n in (1..=12).filter(|n| n % 3 != 0) {
        let fam = thm5_solution(n).map_err(|e| e.to_string())?;
        ensure(residual_zero(&fam)?, || format!("thm5 n={n}"))?;
        count += 1;
    }
    for n in -5..=-1 {
        let fam = thm6_family(n).map_err(|e| e.to_string())?;
        ensure(residual_zero(&fam)?, || format!("thm6 n={n}"))?;
        count += 1;
    }
    let thm7_points = [
        (1, rat(-1, 3), rat(1, 3)),
        (1, rat(1, 2), rat(1, 5)),
        (2, rat(-2, 3), rat(-1, 3)),
        (2, rat(1, 2), rat(3, 4)),
        (2, rat(3, 2), rat(-1, 2)),
        (3, rat(-2, 5), rat(7, 3)),
        (3, rat(1, 4), rat(2, 3)),
        (4, int(2), rat(-1, 2)),
        (4, rat(-1, 7), rat(5, 2)),
        (5, rat(2, 3), rat(1, 6)),
    ];
    for (n, b, c) in &thm7_points {
        let fam = thm7_solution(*n, b, c).map_err(|e| format!("thm7 ({n}, {b}, {c}): {e}"))?;
        ensure(residual_zero(&fam)?, || format!("thm7 ({n}, {b}, {c})"))?;
        count += 1;
    }
    let grid = thm8_grid(8);
    for &(a, b, c) in &grid {
        let fam = thm8_family(a, b, c).map_err(|e| e.to_string())?;
        ensure(residual_zero(&fam)?, || format!("thm8 ({a}, {b}, {c})"))?;
        count += 1;
    }
    Ok(format!("{count} families with identically zero residual ({} from thm8_grid(8))", grid.len()))
}

fn schlesinger_grid() -> Vec<TriangularSolution> {
    let mut out = Vec::new();
    for p in 2..=4 {
        for big_n in 2..=5 {
            for m in [2u32, 3, 4] {
                for n in [1i64, 2] {
                    if let Ok(s) = build_polynomial_solution(p, big_n, m, n, &[], 1) {
                        out.push(s);
                    }
                }
            }
            for m in [1u32, 2] {
                for n in [-1i64, -2, -3] {
                    if let Ok(s) = build_rational_solution(p, big_n, m, n, &[], 1) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

fn label(sol: &TriangularSolution) -> String {
    format!("p={} N={} m={} n={}", sol.size(), sol.poles(), sol.grid().m(), sol.grid().n())
}

// 4
fn schlesinger_residuals() -> Outcome {
    let grid = schlesinger_grid();
    ensure(!grid.is_empty(), || "no admissible instance".into())?;
    let mut with_f = 0;
    for sol in &grid {
        let res = schlesinger_residual(sol).map_err(|e| e.to_string())?;
        ensure(res.is_zero(), || format!("{}: residual nonzero", label(sol)))?;
        if sol.size() >= 3 {
            ensure(res.inhomogeneity_vanishes(), || format!("{}: F nonzero", label(sol)))?;
            with_f += 1;
        }
        for (_, s) in sum_constraint(sol).map_err(|e| e.to_string())? {
            ensure(s.is_zero(), || format!("{}: sum constraint", label(sol)))?;
        }
    }
    Ok(format!("{} instances, F = 0 checked on {with_f} with p >= 3", grid.len()))
}

// 5
fn oracle_equivalence() -> Outcome {
    let grid = schlesinger_grid();
    let mut layers = 0;
    for sol in &grid {
        for check in check_against_oracle(sol).map_err(|e| e.to_string())? {
            ensure(check.agrees, || format!("{}: i={} gap={}", label(sol), check.i, check.gap))?;
            layers += 1;
        }
    }
    Ok(format!("{} instances, {layers} layers equal to the series residues", grid.len()))
}

// 6
fn curve_grid() -> Outcome {
    for m in 1..=6u32 {
        for big_n in 2..=8u32 {
            let inv = curve_invariants(m, big_n).map_err(|e| e.to_string())?;
            // Riemann-Hurwitz with N fully ramified points and gcd(m, N) points over infinity
            let s = m.gcd(&big_n) as i64;
            let chi = 2 * m as i64 - (big_n as i64 * (m as i64 - 1) + m as i64 - s);
            ensure(inv.genus as i64 == (2 - chi) / 2, || format!("genus at m={m} N={big_n}"))?;
            let punctured = if s == 1 { 2 * inv.genus } else { 2 * inv.genus + s as u32 - 1 };
            if m > 1 {
                let l = cycle_count(m, big_n, 1).map_err(|e| e.to_string())?;
                ensure(l == punctured, || format!("L(n>0) at m={m} N={big_n}"))?;
            }
            let l = cycle_count(m, big_n, -1).map_err(|e| e.to_string())?;
            ensure(l == 2 * inv.genus + big_n - 1, || format!("L(n<0) at m={m} N={big_n}"))?;
        }
    }
    let g33 = curve_invariants(3, 3).map_err(|e| e.to_string())?.genus;
    let l33 = cycle_count(3, 3, 1).map_err(|e| e.to_string())?;
    let l13 = cycle_count(1, 3, -1).map_err(|e| e.to_string())?;
    ensure(g33 == 1 && l33 == 4, || format!("(3,3): g={g33} L={l33}"))?;
    ensure(l13 == 2, || format!("(1,3): L={l13}"))?;
    Ok("m <= 6, N <= 8; (3,3) g=1 L=4; (1,3) L=2".into())
}

// 7
fn periods_grid() -> Outcome {
    let all = [(0.0, 0.0), (1.0, 0.0), (2.1, 0.9), (-0.7, 1.3), (0.6, -1.4)].map(|(re, im)| Complex64::new(re, im));
    let opts = PeriodOptions::default();
    let tolerances = PeriodTolerances { sum: 1e-9, residue: 1e-8, fd: 1e-6 };
    let mut failures = Vec::new();
    let mut count = 0;
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for m in [2u32, 3, 4] {
        for big_n in 3..=5usize {
            for n in [1i64, -1, 2, -2] {
                if n.abs().gcd(&(m as i64)) != 1 {
                    continue;
                }
                for j in 1..=2u32 {
                    // for n > 0 and m | j the differentials are single-valued
                    if n > 0 && j % m == 0 {
                        continue;
                    }
                    let curve = SuperellipticCurve::numeric(m, n, all[..big_n].to_vec()).map_err(|e| e.to_string())?;
                    let rep = period_report(&curve, j, &opts, Some(1e-3), tolerances).map_err(|e| e.to_string())?;
                    count += 1;
                    let res = rep.residues.iter().map(|c| c.deviation).fold(0.0, f64::max);
                    worst.0 = worst.0.max(rep.relative_column_sum_defect);
                    worst.1 = worst.1.max(res);
                    worst.2 = worst.2.max(rep.fd_max_deviation.unwrap_or(0.0));
                    if !rep.passed {
                        failures.push(format!(
                            "(m={m},N={big_n},n={n},j={j}) rank {} vs {}, sum {:.1e}, res {:.1e}, fd {:.1e}",
                            rep.rank,
                            rep.expected_rank,
                            rep.relative_column_sum_defect,
                            res,
                            rep.fd_max_deviation.unwrap_or(0.0)
                        ));
                    }
                }
            }
        }
    }
    let summary = format!(
        "{count} cases; worst sum {:.1e}, residue {:.1e}, fd {:.1e}",
        worst.0, worst.1, worst.2
    );
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {} failing: {}", failures.len(), failures.join("; ")))
    }
}

// 8
fn zeros() -> Outcome {
    for n in (1..=50).filter(|n| n % 3 != 0) {
        let (_, q) = thm5_polynomials(n).map_err(|e| e.to_string())?;
        let c = q.to_univariate("x").map_err(|e| e.to_string())?;
        ensure(c.iter().eq(c.iter().rev()), || format!("Q_{} not palindromic", n + 1))?;
    }
    let mut counts = Vec::new();
    for n in [25, 28] {
        let (p, q) = thm5_polynomials(n).map_err(|e| e.to_string())?;
        let mut rows = Vec::new();
        for (id, poly) in [(format!("P{}", n + 1), p), (format!("Q{}", n + 1), q)] {
            let report = polynomial_zeros(&poly).map_err(|e| e.to_string())?;
            ensure(report.conjugation_defect < 1e-8, || format!("{id} conjugation {:e}", report.conjugation_defect))?;
            ensure(report.inversion_defect < 1e-8, || format!("{id} inversion {:e}", report.inversion_defect))?;
            rows.extend(ZeroRow::from_report(&id, &report));
        }
        let p_rows = rows.iter().filter(|r| r.poly_id.starts_with('P')).count();
        counts.push(format!("{p_rows}/{}", rows.len() - p_rows));
    }
    ensure(counts == ["26/26", "29/29"], || format!("row counts {counts:?}"))?;
    Ok(format!("Q palindromes n <= 50; pairing < 1e-8 for n = 25, 28; rows {}", counts.join(", ")))
}

// 9
fn okamoto() -> Outcome {
    let b = OkamotoCoords::new(int(-1), int(1), int(0), int(1));
    let p = r("2*x*(x - 1)/(x^2 + c)");
    ensure(riccati_residual(&p, &b).is_zero(), || "Riccati residual nonzero".into())?;
    let (yw, pw) = degenerate_prolongation(&p, &b.b1, &b.b3).map_err(|e| e.to_string())?;
    ensure(yw == r("(x^2 + c)/(2*(x + c))"), || "y_w differs".into())?;
    let params = PVIParams { alpha: int(2), beta: rat(-1, 2), gamma: rat(1, 2), delta: int(0) };
    let res = pvi_residual(&yw, &params).map_err(|e| e.to_string())?;
    ensure(res.is_zero(), || "y_w fails PVI(2, -1/2, 1/2, 0)".into())?;
    let one = RatFunc::one();
    let expected = (&p - &(&one + &one)).checked_div(&(&p - &one)).map_err(|e| e.to_string())?;
    ensure(pw == expected, || "p_w differs from (p - 2)/(p - 1)".into())?;
    Ok("y_w, Riccati, PVI(2, -1/2, 1/2, 0) and p_w exact".into())
}

fn garnier_worst(sol: &GarnierAlgebraicSolution) -> Result<f64, String> {
    let rows = verify_grid(sol, &[[2.2, 3.7], [-1.3, 2.6], [3.1, -1.6]], 1e-5).map_err(|e| e.to_string())?;
    ensure(rows.len() == 48, || format!("{} rows", rows.len()))?;
    Ok(rows.iter().map(|row| row.residual).fold(0.0, f64::max))
}

// 10
fn garnier() -> Outcome {
    let first = thm10_solution(2, 2, 1).map_err(|e| e.to_string())?;
    let printed = [
        "3*a1^2 - 2*a1*a2 - a2^2 - 2*a1 + 2*a2 - 1",
        "3*a2^2 - 2*a1*a2 - a1^2 + 2*a1 - 2*a2 - 1",
        "-a1^2 + 2*a1*a2 - a2^2 + 2*a1 + 2*a2 - 1",
        "-a1^2 + 2*a1*a2 - a2^2 - 2*a1 - 2*a2 + 3",
    ];
    for (k, (got, want)) in first.b().iter().zip(printed).enumerate() {
        ensure(*got == r(want).scale(&rat(1, 8)), || format!("m=2 b{} differs", k + 1))?;
    }
    let second = thm10_solution(2, 4, 1).map_err(|e| e.to_string())?;
    let printed = ["-3*a1 + a2 + 1", "a1 - 3*a2 + 1", "a1 + a2 + 1", "a1 + a2 - 3"];
    for (k, (got, want)) in second.b().iter().zip(printed).enumerate() {
        ensure(*got == r(want).scale(&rat(1, 4)), || format!("m=4 b{} differs", k + 1))?;
    }
    let nine_a = thm11_family(2, -1, &[int(1), int(1)]).map_err(|e| e.to_string())?;
    let nine_b = thm11_family(2, -1, &[int(2), int(-1)]).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for (name, sol) in [("Ex8 m=2", &first), ("Ex8 m=4", &second), ("Ex9 c=(1,1)", &nine_a), ("Ex9 c=(2,-1)", &nine_b)] {
        let w = garnier_worst(sol)?;
        ensure(w < 1e-6, || format!("{name}: residual {w:e}"))?;
        worst = worst.max(w);
    }
    Ok(format!("coefficients exact (1/8, +1/4); worst residual {worst:.1e} over 4 x 48 cases"))
}

// 11
fn liouvillian() -> Outcome {
    let mut worst = (0.0f64, 0.0f64);
    for (n, b, c) in [(1, rat(-1, 3), rat(1, 3)), (2, rat(-2, 3), rat(-1, 3))] {
        for s in liouvillian_eval(n, &b, &c, &[2.0, 3.0, 5.0], 1e-10).map_err(|e| e.to_string())? {
            ensure(s.wronskian_rel_error < 1e-8, || format!("({n}, {b}, {c}) x={} Wronskian {:e}", s.x, s.wronskian_rel_error))?;
            ensure(s.ode_residual < 1e-6, || format!("({n}, {b}, {c}) x={} ODE {:e}", s.x, s.ode_residual))?;
            worst = (worst.0.max(s.wronskian_rel_error), worst.1.max(s.ode_residual));
        }
    }
    Ok(format!("worst Wronskian {:.1e}, worst ODE residual {:.1e}", worst.0, worst.1))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "Example 1", example_1, Some(Duration::from_secs(1))),
        (2, "Example 2", example_2, Some(Duration::from_secs(1))),
        (3, "PVI residuals", pvi_residuals, Some(Duration::from_secs(60))),
        (4, "Schlesinger residuals", schlesinger_residuals, Some(Duration::from_secs(120))),
        (5, "oracle equivalence", oracle_equivalence, None),
        (6, "curve invariants", curve_grid, None),
        (7, "periods", periods_grid, Some(Duration::from_secs(300))),
        (8, "zero distributions", zeros, None),
        (9, "Okamoto / Example 3", okamoto, None),
        (10, "Garnier", garnier, Some(Duration::from_secs(120))),
        (11, "Liouvillian", liouvillian, None),
    ];
    let mut failed = 0;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(detail), Some(l)) if elapsed > l => Err(format!("{detail}; over the {} s limit", l.as_secs())),
            (o, _) => o,
        };
        let limit_text = limit.map(|l| format!(" (limit {} s)", l.as_secs())).unwrap_or_default();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {id:>2} {tag} {name}: {detail} [{:.2} s{limit_text}]", elapsed.as_secs_f64());
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
