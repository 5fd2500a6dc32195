//! Largest prime factors, pointwise and over intervals, and Euler's totient.
//!
//! `P(k)` denotes the largest prime dividing `k`, with `P(1) = 0`.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::sieve::{is_prime, mul_mod, small_primes, DEFAULT_SEGMENT_LEN};
use crate::{Error, Result};

/// Trial division bound for pointwise factoring.
pub const TRIAL_LIMIT: u64 = 10_000;

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| small_primes(TRIAL_LIMIT))
}

/// Brent's variant of Pollard's rho with polynomial `x² + c` and start 2.
/// Returns a nontrivial factor of the odd composite `n`, or `None` if this
/// `c` cycles without one.
fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    const BATCH: u64 = 128;
    let step = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let mut g = 1;
    let (mut x, mut ys) = (y, y);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = step(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        // Batch overshot: retrace one step at a time.
        loop {
            ys = step(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pushes the prime factors (with repetition, in no particular order) of a
/// cofactor that has no prime divisor `≤ TRIAL_LIMIT`.
fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if n < TRIAL_LIMIT * TRIAL_LIMIT || is_prime(n) {
        out.push(n);
        return;
    }
    let d = (1..)
        .find_map(|c| pollard_brent(n, c))
        .expect("rho finds a factor of every composite for some c");
    split_large(d, out);
    split_large(n / d, out);
}

/// Distinct prime factors of `k`, ascending. Empty for `k = 1`.
pub fn distinct_prime_factors(k: u64) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(Error::domain("0 has no prime factorization"));
    }
    let mut rest = k;
    let mut out = Vec::new();
    for &p in trial_primes() {
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            out.push(p);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
    }
    if rest > 1 {
        let mut large = Vec::new();
        split_large(rest, &mut large);
        out.extend(large);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `P(k)`: the largest prime dividing `k`, or 0 for `k = 1`.
pub fn largest_prime_factor(k: u64) -> Result<u64> {
    Ok(distinct_prime_factors(k)?.last().copied().unwrap_or(0))
}

/// Euler's totient `φ(m)`.
pub fn euler_phi(m: u64) -> Result<u64> {
    let primes = distinct_prime_factors(m)?;
    Ok(primes.iter().fold(m, |acc, &p| acc / p * (p - 1)))
}

/// Source of `P(k)` values: either computed on demand or read from a table.
pub trait LargestPrimeFactor {
    /// `P(k)` for `k ≥ 1`.
    fn lpf(&self, k: u64) -> u64;
}

/// Computes every value with [`largest_prime_factor`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Pointwise;

impl LargestPrimeFactor for Pointwise {
    fn lpf(&self, k: u64) -> u64 {
        largest_prime_factor(k).expect("P(k) requested for k = 0")
    }
}

/// `P(n)` for every `n` in a contiguous interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorTable {
    lo: u64,
    values: Vec<u64>,
}

impl FactorTable {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.values.len() as u64 - 1
    }

    /// `P(n)` if `n` lies in the table.
    pub fn get(&self, n: u64) -> Option<u64> {
        let idx = n.checked_sub(self.lo)?;
        self.values.get(idx as usize).copied()
    }

    /// Values in order, starting at `lo`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

impl LargestPrimeFactor for FactorTable {
    /// Reads the table, falling back to pointwise factoring out of range.
    fn lpf(&self, k: u64) -> u64 {
        self.get(k).unwrap_or_else(|| Pointwise.lpf(k))
    }
}

/// Sieves `P(n)` over `[a, b]` given all primes `≤ √b`.
fn lpf_segment(a: u64, b: u64, base: &[u64]) -> Vec<u64> {
    let len = (b - a + 1) as usize;
    let mut rest: Vec<u64> = (a..=b).collect();
    let mut lpf = vec![0u64; len];
    for &p in base {
        if p * p > b {
            break;
        }
        let mut idx = (a.div_ceil(p) * p - a) as usize;
        while idx < len {
            let v = &mut rest[idx];
            loop {
                *v /= p;
                if !(*v).is_multiple_of(p) {
                    break;
                }
            }
            lpf[idx] = p;
            idx += p as usize;
        }
    }
    // A cofactor that survived every prime ≤ √b is itself prime and exceeds
    // all primes divided out above.
    for (slot, &r) in lpf.iter_mut().zip(&rest) {
        if r > 1 {
            *slot = r;
        }
    }
    lpf
}

/// Table of `P(n)` over `[lo, hi]`.
pub fn lpf_table(lo: u64, hi: u64) -> Result<FactorTable> {
    lpf_table_with(lo, hi, DEFAULT_SEGMENT_LEN)
}

/// Table of `P(n)` over `[lo, hi]`, sieved in windows of `segment_len`.
/// Windows are processed in parallel.
pub fn lpf_table_with(lo: u64, hi: u64, segment_len: u64) -> Result<FactorTable> {
    if lo == 0 {
        return Err(Error::domain("P(0) is undefined"));
    }
    if lo > hi {
        return Err(Error::EmptyInterval { lo, hi });
    }
    if segment_len == 0 {
        return Err(Error::config("segment length must be positive"));
    }
    let base = small_primes(hi.isqrt());
    let starts: Vec<u64> = (0..)
        .map(|i: u64| lo + i * segment_len)
        .take_while(|&s| s <= hi)
        .collect();
    let parts: Vec<Vec<u64>> = starts
        .par_iter()
        .map(|&a| {
            let b = a.saturating_add(segment_len - 1).min(hi);
            lpf_segment(a, b, &base)
        })
        .collect();
    Ok(FactorTable {
        lo,
        values: parts.concat(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lpf_oracle(mut k: u64) -> u64 {
        let mut best = 0;
        let mut d = 2;
        while d * d <= k {
            while k.is_multiple_of(d) {
                best = d;
                k /= d;
            }
            d += 1;
        }
        if k > 1 {
            k
        } else {
            best
        }
    }

    #[test]
    fn pointwise_examples() {
        assert_eq!(largest_prime_factor(1), Ok(0));
        assert_eq!(largest_prime_factor(12), Ok(3));
        assert_eq!(largest_prime_factor(1024), Ok(2));
        assert!(matches!(largest_prime_factor(0), Err(Error::Domain(_))));
    }

    #[test]
    fn pointwise_matches_oracle() {
        for k in 1..=100_000 {
            assert_eq!(largest_prime_factor(k).unwrap(), lpf_oracle(k), "k = {k}");
        }
    }

    #[test]
    fn pollard_splits_large_semiprimes() {
        let p = 4_294_967_291u64;
        let q = 4_294_967_279u64;
        assert_eq!(distinct_prime_factors(p * q).unwrap(), vec![q, p]);
        assert_eq!(largest_prime_factor(1_000_000_007 * 998_244_353), Ok(1_000_000_007));
        assert_eq!(largest_prime_factor(10_007 * 10_009 * 10_037), Ok(10_037));
        assert_eq!(largest_prime_factor(10_007u64.pow(4)), Ok(10_007));
        assert_eq!(largest_prime_factor(u64::MAX), Ok(6_700_417));
    }

    #[test]
    fn table_examples() {
        assert_eq!(lpf_table(90, 96).unwrap().values(), &[5, 13, 23, 31, 47, 19, 3]);
        assert_eq!(lpf_table(1, 1).unwrap().values(), &[0]);
        assert_eq!(lpf_table(97, 97).unwrap().values(), &[97]);
        assert_eq!(lpf_table(5, 4), Err(Error::EmptyInterval { lo: 5, hi: 4 }));
    }

    #[test]
    fn table_matches_pointwise() {
        let lo = 999_000;
        let t = lpf_table_with(lo, 1_000_000, 4096).unwrap();
        for (i, &v) in t.values().iter().enumerate() {
            let n = lo + i as u64;
            assert_eq!(v, largest_prime_factor(n).unwrap(), "n = {n}");
        }
        let t = lpf_table_with(1, 20_000, 333).unwrap();
        assert_eq!(t.hi(), 20_000);
        for n in 1..=20_000 {
            assert_eq!(t.get(n), Some(lpf_oracle(n)));
        }
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_phi(1), Ok(1));
        assert_eq!(euler_phi(12), Ok(4));
        assert_eq!(euler_phi(97), Ok(96));
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn totient_matches_gcd_count() {
        for m in 1..=500u64 {
            let count = (1..=m).filter(|&a| gcd(a, m) == 1).count() as u64;
            assert_eq!(euler_phi(m).unwrap(), count);
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::test_runner::Config::with_cases(500))]
        #[test]
        fn totient_is_multiplicative(m in 1u64..=10_000, n in 1u64..=10_000) {
            proptest::prop_assume!(gcd(m, n) == 1);
            proptest::prop_assert_eq!(
                euler_phi(m * n).unwrap(),
                euler_phi(m).unwrap() * euler_phi(n).unwrap()
            );
        }

        #[test]
        fn table_window_matches_pointwise(lo in 1u64..1_000_000, width in 0u64..2_000) {
            let t = lpf_table_with(lo, lo + width, 257).unwrap();
            for n in lo..=lo + width {
                proptest::prop_assert_eq!(t.get(n).unwrap(), largest_prime_factor(n).unwrap());
            }
        }
    }
}
