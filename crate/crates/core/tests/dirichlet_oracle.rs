mod common;

use common::is_prime_td;
use evasive_core::dirichlet::{max_discrepancy, max_discrepancy_with, PrimePowers};

fn lambda_td(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut v = n;
    while v.is_multiple_of(p) {
        v /= p;
    }
    if v == 1 && is_prime_td(p) {
        (p as f64).ln()
    } else {
        0.0
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Sup of `|ψ(y; m, a) − y/φ(m)|` over every integer `y ≤ z`, every left
/// limit `y⁻` at an integer `y ≤ z`, and `y = z`.
fn brute_sup(z: f64, m: u64, lambda: &[f64]) -> f64 {
    let phi = (1..=m).filter(|&a| gcd(a, m) == 1).count() as f64;
    let top = z.floor() as u64;
    let mut best: f64 = 0.0;
    for a in (0..m).filter(|&a| gcd(a, m) == 1) {
        let mut psi = 0.0;
        for y in 1..=top {
            let before = psi;
            if y % m == a {
                psi += lambda[y as usize];
            }
            best = best.max((before - y as f64 / phi).abs());
            best = best.max((psi - y as f64 / phi).abs());
        }
        best = best.max((psi - z / phi).abs());
    }
    best
}

#[test]
fn candidate_set_matches_brute_force() {
    let lambda: Vec<f64> = (0..=1000).map(lambda_td).collect();
    let table = PrimePowers::up_to(1000);
    let mut zs: Vec<f64> = (1..=1000).step_by(7).map(|z| z as f64).collect();
    zs.extend([1.0, 2.5, 10.0, 99.9, 100.0, 500.5, 999.99, 1000.0]);
    for &z in &zs {
        for m in 1..=20 {
            let got = max_discrepancy_with(&table, z, m).unwrap();
            let want = brute_sup(z, m, &lambda);
            assert!(
                (got.sup_value - want).abs() < 1e-9,
                "z = {z}, m = {m}: {} vs {want}",
                got.sup_value
            );
            assert_eq!(gcd(got.worst_a, m), 1);
        }
    }
}

#[test]
fn record_dominates_endpoint_deviation() {
    let lambda: Vec<f64> = (0..=600).map(lambda_td).collect();
    for m in [1u64, 4, 7, 12, 30] {
        let z = 600.0;
        let rec = max_discrepancy(z, m).unwrap();
        let phi = (1..=m).filter(|&a| gcd(a, m) == 1).count() as f64;
        for a in (0..m).filter(|&a| gcd(a, m) == 1) {
            let psi: f64 = (1..=600u64).filter(|n| n % m == a).map(|n| lambda[n as usize]).sum();
            assert!(rec.sup_value + 1e-9 >= (psi - z / phi).abs());
        }
    }
}
