//! Independent oracles shared by the integration tests. Everything here
//! uses trial division and direct loops only.

#![allow(dead_code)]

pub fn is_prime_td(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn prime_divisors_td(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn lpf_td(n: u64) -> u64 {
    prime_divisors_td(n).last().copied().unwrap_or(0)
}

/// `f(n)` by enumerating every `(k, p, q, r)`, including every prime
/// divisor `q` of `r − 1`.
pub fn f_naive(n: u64) -> u128 {
    let mut best = 0u128;
    for p in (2..n).filter(|&p| is_prime_td(p)) {
        let mut k = 1;
        while k * p < n {
            let r = n - k * p;
            if is_prime_td(r) {
                for q in prime_divisors_td(r - 1) {
                    let (k, p, q, r) = (k as u128, p as u128, q as u128, r as u128);
                    best = best.max((p * p * k).min(p * k * r).min(q * r));
                }
            }
            k += 1;
        }
    }
    best
}

/// `a^(num/den)` compared with an integer via exact integer powers, for
/// thresholds with small rational exponents.
pub fn pow_exceeds(value: u64, base: u64, num: u32, den: u32) -> std::cmp::Ordering {
    use num_bigint::BigUint;
    BigUint::from(value).pow(den).cmp(&BigUint::from(base).pow(num))
}
