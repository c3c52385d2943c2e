//! Genus and contour counts of `w^m = (z - a_1)...(z - a_N)` against an
//! Euler-characteristic count from the ramification data.

use isolab::curve::{curve_invariants, cycle_count, SuperellipticCurve};
use isolab::periods::{build_cycle_basis, HomologyCase, PeriodOptions};
use num_complex::Complex64;
use num_integer::Integer;

/// Genus from Riemann-Hurwitz: every finite branch point is fully ramified
/// and infinity has `gcd(m, N)` preimages.
fn hurwitz_genus(m: u32, big_n: u32) -> u32 {
    let s = m.gcd(&big_n) as i64;
    let (m, big_n) = (m as i64, big_n as i64);
    let ramification = big_n * (m - 1) + (m - s);
    let chi = 2 * m - ramification;
    ((2 - chi) / 2) as u32
}

#[test]
fn genus_grid() {
    for m in 1..=6u32 {
        for big_n in 2..=8u32 {
            let inv = curve_invariants(m, big_n).unwrap();
            assert_eq!(inv.genus, hurwitz_genus(m, big_n), "m = {m}, N = {big_n}");
            assert_eq!(inv.s * inv.m1, m);
            assert_eq!(inv.s * inv.n1, big_n);
            assert_eq!(inv.infinity_points, inv.s);
            if m == 2 {
                assert_eq!(inv.genus, (big_n - 1) / 2);
            }
        }
    }
}

#[test]
fn cycle_counts_are_punctured_surface_ranks() {
    for m in 1..=6u32 {
        for big_n in 2..=8u32 {
            let inv = curve_invariants(m, big_n).unwrap();
            // first homology of a genus g surface with k > 0 punctures has rank 2g + k - 1
            let at_infinity = if inv.s == 1 { 2 * inv.genus } else { 2 * inv.genus + inv.s - 1 };
            if m > 1 {
                assert_eq!(cycle_count(m, big_n, 1).unwrap(), at_infinity, "m = {m}, N = {big_n}");
            }
            assert_eq!(cycle_count(m, big_n, -1).unwrap(), 2 * inv.genus + big_n - 1, "m = {m}, N = {big_n}");
        }
    }
}

#[test]
fn printed_values() {
    let inv = curve_invariants(3, 3).unwrap();
    assert_eq!(inv.genus, 1);
    assert_eq!(cycle_count(3, 3, 1).unwrap(), 4);
    assert_eq!(cycle_count(1, 3, -1).unwrap(), 2);
}

#[test]
fn bases_have_the_counted_size() {
    let pts: Vec<Complex64> = [(0.0, 0.0), (1.0, 0.0), (2.1, 0.9), (-0.7, 1.3), (0.6, -1.4), (1.9, -1.1)]
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect();
    let opts = PeriodOptions::default();
    for m in 1..=5u32 {
        for big_n in 2..=6usize {
            for n in [1i64, -1, 2, -3] {
                if (m == 1 && n > 0) || (n.unsigned_abs() as u32).gcd(&m) != 1 {
                    continue;
                }
                let curve = SuperellipticCurve::numeric(m, n, pts[..big_n].to_vec()).unwrap();
                let basis = build_cycle_basis(&curve, HomologyCase::of(&curve), &opts).unwrap();
                assert_eq!(basis.len() as u32, cycle_count(m, big_n as u32, n).unwrap(), "m = {m}, N = {big_n}, n = {n}");
            }
        }
    }
}

#[test]
fn invalid_shapes() {
    assert!(curve_invariants(0, 3).is_err());
    assert!(curve_invariants(3, 1).is_err());
}
