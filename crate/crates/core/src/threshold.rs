//! Comparisons of an integer against a real power of another integer.
//!
//! Thresholds such as `P(r − 1) > r^α` are decided with logarithms. When the
//! two logarithms agree to within a relative band of `1e-12` the comparison
//! is redone exactly: the exponent is matched to a fraction `num/den` with a
//! small denominator and `value^den` is compared with `base^num` in big
//! integer arithmetic.

use std::cmp::Ordering;

use num_bigint::BigUint;

/// Relative width of the band in which the float comparison is not trusted.
pub const GUARD_BAND: f64 = 1e-12;

/// Largest denominator tried when recovering a rational exponent.
const MAX_DENOMINATOR: u64 = 10_000;

/// Snaps `x` to the nearest integer if it lies within a relative `1e-9` of
/// it. Used when turning real interval bounds like `n^{1/4}` into integers.
pub(crate) fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r
    } else {
        x
    }
}

pub(crate) fn snapped_ceil(x: f64) -> u64 {
    snap(x).ceil().max(0.0) as u64
}

pub(crate) fn snapped_floor(x: f64) -> u64 {
    snap(x).floor().max(0.0) as u64
}

/// The fraction `num/den` with `den ≤ max_den` that reproduces `x` to
/// within a few ulps, found among the continued-fraction convergents.
fn rational_exponent(x: f64, max_den: u64) -> Option<(u64, u64)> {
    if x.is_nan() || x < 0.0 {
        return None;
    }
    let tol = 4.0 * f64::EPSILON * x.max(1.0);
    let (mut h_prev, mut h) = (0u64, 1u64);
    let (mut k_prev, mut k) = (1u64, 0u64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a > u32::MAX as f64 {
            return None;
        }
        let a = a as u64;
        let h_next = a.checked_mul(h)?.checked_add(h_prev)?;
        let k_next = a.checked_mul(k)?.checked_add(k_prev)?;
        if k_next > max_den {
            return None;
        }
        (h_prev, h, k_prev, k) = (h, h_next, k, k_next);
        if (h as f64 / k as f64 - x).abs() <= tol {
            return Some((h, k));
        }
        let frac = v - a as f64;
        if frac <= 0.0 {
            return None;
        }
        v = 1.0 / frac;
    }
    None
}

/// Orders `value` against `base^exponent` for `base ≥ 1`, `exponent ≥ 0`.
pub fn cmp_power(value: u64, base: u64, exponent: f64) -> Ordering {
    assert!(base >= 1, "base must be positive");
    if value == 0 {
        return Ordering::Less;
    }
    if base == 1 || exponent == 0.0 {
        return value.cmp(&1);
    }
    let lhs = (value as f64).ln();
    let rhs = exponent * (base as f64).ln();
    let scale = lhs.abs().max(rhs.abs());
    if (lhs - rhs).abs() > GUARD_BAND * scale {
        return lhs.partial_cmp(&rhs).expect("finite logarithms");
    }
    match rational_exponent(exponent, MAX_DENOMINATOR) {
        Some((num, den)) => {
            let lhs = BigUint::from(value).pow(den as u32);
            let rhs = BigUint::from(base).pow(num as u32);
            lhs.cmp(&rhs)
        }
        // No small fraction matches; the float verdict is the best available.
        None => lhs.partial_cmp(&rhs).unwrap_or(Ordering::Equal),
    }
}

/// `value > base^exponent`.
pub fn exceeds_power(value: u64, base: u64, exponent: f64) -> bool {
    cmp_power(value, base, exponent) == Ordering::Greater
}

/// `value ≥ base^exponent`.
pub fn reaches_power(value: u64, base: u64, exponent: f64) -> bool {
    cmp_power(value, base, exponent) != Ordering::Less
}
