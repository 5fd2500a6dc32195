//! Prime generation, deterministic primality and the von Mangoldt function.
//!
//! Interval enumeration uses a segmented sieve of Eratosthenes over odd
//! numbers only. Working memory is one segment (half a byte per value in
//! the segment) plus the base primes up to `√hi`, independent of `lo`.

use crate::{Error, Result};

/// Values covered by one sieve segment unless configured otherwise.
pub const DEFAULT_SEGMENT_LEN: u64 = 1 << 20;

/// Strong-pseudoprime bases that are deterministic for every `n < 2^64`
/// (Jim Sinclair's set).
const MR_BASES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    if n < 41 * 41 {
        return true;
    }

    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for base in MR_BASES {
        let a = base % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// All primes `≤ limit`, by a plain (unsegmented) sieve. Meant for base
/// primes and small tables.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// The complete, ascending list of primes in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeInterval {
    lo: u64,
    hi: u64,
    primes: Vec<u64>,
}

impl PrimeInterval {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.primes
    }
}

/// Primes in `[lo, hi]` with the default segment length.
pub fn primes_in(lo: u64, hi: u64) -> Result<PrimeInterval> {
    primes_in_with(lo, hi, DEFAULT_SEGMENT_LEN)
}

pub fn primes_in_with(lo: u64, hi: u64, segment_len: u64) -> Result<PrimeInterval> {
    let primes = PrimeSegments::new(lo, hi, segment_len)?.flatten().collect();
    Ok(PrimeInterval { lo, hi, primes })
}

/// Number of primes in `[lo, hi]`, streamed segment by segment.
pub fn count_primes(lo: u64, hi: u64) -> Result<u64> {
    Ok(PrimeSegments::new(lo, hi, DEFAULT_SEGMENT_LEN)?
        .map(|seg| seg.len() as u64)
        .sum())
}

/// Iterator over the primes of `[lo, hi]`, one segment at a time.
///
/// Each item holds the primes of one window of `segment_len` consecutive
/// integers (possibly none).
#[derive(Clone, Debug)]
pub struct PrimeSegments {
    base: Vec<u64>,
    next: u64,
    hi: u64,
    segment_len: u64,
    done: bool,
    marks: Vec<bool>,
}

impl PrimeSegments {
    pub fn new(lo: u64, hi: u64, segment_len: u64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval { lo, hi });
        }
        if segment_len < 2 {
            return Err(Error::config("segment length must be at least 2"));
        }
        // Odd base primes only; the sieve never stores even values.
        let base = small_primes(hi.isqrt()).into_iter().skip(1).collect();
        Ok(Self {
            base,
            next: lo,
            hi,
            segment_len,
            done: false,
            marks: Vec::new(),
        })
    }

    fn sieve_segment(&mut self, a: u64, b: u64) -> Vec<u64> {
        let mut out = Vec::new();
        if a <= 2 && 2 <= b {
            out.push(2);
        }
        let first = a.max(3) | 1;
        if first > b {
            return out;
        }
        let count = ((b - first) / 2 + 1) as usize;
        self.marks.clear();
        self.marks.resize(count, true);
        for &p in &self.base {
            let sq = p * p;
            if sq > b {
                break;
            }
            let mut start = if sq >= first {
                sq
            } else {
                first.div_ceil(p) * p
            };
            if start % 2 == 0 {
                start += p;
            }
            let mut idx = ((start - first) / 2) as usize;
            let step = p as usize;
            while idx < count {
                self.marks[idx] = false;
                idx += step;
            }
        }
        out.extend(
            self.marks
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| first + 2 * i as u64),
        );
        out
    }
}

impl Iterator for PrimeSegments {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let a = self.next;
        let b = a.saturating_add(self.segment_len - 1).min(self.hi);
        if b == self.hi {
            self.done = true;
        } else {
            self.next = b + 1;
        }
        Some(self.sieve_segment(a, b))
    }
}

/// Largest `r` with `r^k ≤ n`.
pub fn integer_root(n: u64, k: u32) -> u64 {
    match k {
        0 => panic!("zeroth root"),
        1 => return n,
        2 => return n.isqrt(),
        _ => {}
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as u64;
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// The prime `p` with `n = p^j` for some `j ≥ 1`, if any.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    for k in 1..64 {
        let r = integer_root(n, k);
        if r < 2 {
            break;
        }
        if r.pow(k) == n && is_prime(r) {
            return Some(r);
        }
    }
    None
}

/// von Mangoldt weight: `log p` when `n` is a power of the prime `p`, else 0.
pub fn mangoldt_weight(n: u64) -> f64 {
    prime_power_base(n).map_or(0.0, |p| (p as f64).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_examples() {
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(is_prime(2861));
        assert!(!is_prime(2575));
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..100_000 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn primality_near_u64_limit() {
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(u64::MAX));
        // Strong pseudoprimes to several small bases.
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
        // Product of two 32-bit primes.
        assert!(!is_prime(4_294_967_291 * 4_294_967_279));
    }

    #[test]
    fn interval_examples() {
        assert_eq!(primes_in(10, 20).unwrap().primes(), &[11, 13, 17, 19]);
        assert!(primes_in(1, 1).unwrap().is_empty());
        assert_eq!(primes_in(90, 97).unwrap().primes(), &[97]);
        assert_eq!(
            primes_in(5, 4),
            Err(Error::EmptyInterval { lo: 5, hi: 4 })
        );
    }

    #[test]
    fn small_segments_agree_with_default() {
        let a = primes_in_with(1, 20_000, 2).unwrap();
        let b = primes_in_with(1, 20_000, 37).unwrap();
        let c = primes_in(1, 20_000).unwrap();
        assert_eq!(a, c);
        assert_eq!(b, c);
        assert_eq!(c.len(), 2262);
    }

    #[test]
    fn counts_known_values() {
        assert_eq!(count_primes(1, 1_000_000).unwrap(), 78_498);
        assert_eq!(count_primes(1, 10_000_000).unwrap(), 664_579);
        assert_eq!(count_primes(2, 2).unwrap(), 1);
    }

    proptest::proptest! {
        #[test]
        fn interval_is_filter_of_is_prime(lo in 1u64..100_000, width in 0u64..3_000, seg in 2u64..5_000) {
            let hi = (lo + width).min(100_000);
            let got = primes_in_with(lo, hi, seg).unwrap();
            let want: Vec<u64> = (lo..=hi).filter(|&n| is_prime(n)).collect();
            proptest::prop_assert_eq!(got.primes(), want.as_slice());
        }
    }

    #[test]
    fn roots() {
        assert_eq!(integer_root(8, 3), 2);
        assert_eq!(integer_root(7, 3), 1);
        assert_eq!(integer_root(u64::MAX, 2), 4_294_967_295);
        assert_eq!(integer_root(u64::MAX, 63), 2);
        assert_eq!(integer_root(1 << 62, 62), 2);
    }

    #[test]
    fn mangoldt_examples() {
        assert_eq!(mangoldt_weight(1), 0.0);
        assert!((mangoldt_weight(8) - 0.693_147).abs() < 1e-6);
        assert_eq!(mangoldt_weight(6), 0.0);
        assert_eq!(prime_power_base(1 << 63), Some(2));
        assert_eq!(prime_power_base(3u64.pow(40)), Some(3));
        assert_eq!(prime_power_base(6u64.pow(20)), None);
    }

    #[test]
    fn chebyshev_identity() {
        for y in [1u64, 2, 10, 97, 1000, 10_000] {
            let direct: f64 = (1..=y).map(mangoldt_weight).sum();
            let by_primes: f64 = small_primes(y)
                .into_iter()
                .map(|p| {
                    let mut count = 0;
                    let mut v = p;
                    while v <= y {
                        count += 1;
                        v = v.saturating_mul(p);
                    }
                    count as f64 * (p as f64).ln()
                })
                .sum();
            assert!((direct - by_primes).abs() < 1e-8, "y = {y}");
        }
    }
}
