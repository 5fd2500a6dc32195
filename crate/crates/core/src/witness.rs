//! Witness quadruples, the edge-budget function `f(n)` and the two
//! constructions that produce witnesses for large `n`.
//!
//! A witness for `n` is `(k, p, q, r)` with `k ≥ 1`, primes `p, q, r`,
//! `n = k·p + r` and `r ≡ 1 (mod q)`. Its score is `min{p²k, pkr, qr}` and
//! `f(n)` is the largest score over all witnesses for `n` (0 when none
//! exists).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::factor::{gcd, FactorTable, LargestPrimeFactor, Pointwise};
use crate::sieve::{is_prime, primes_in};
use crate::threshold::{exceeds_power, reaches_power, snapped_ceil, snapped_floor};
use crate::{Error, Result};

/// Largest `n` for which scores are guaranteed to fit the certificate format.
pub const MAX_N: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub k: u64,
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub score: u128,
}

/// `min{p²k, pkr, qr}` without primality checks.
///
/// `qr` always fits in 128 bits, so saturating the other two products never
/// changes the minimum.
fn raw_score(k: u64, p: u64, q: u64, r: u64) -> u128 {
    let (k, p, q, r) = (k as u128, p as u128, q as u128, r as u128);
    let pk = p.saturating_mul(k);
    let p2k = pk.saturating_mul(p);
    let pkr = pk.saturating_mul(r);
    p2k.min(pkr).min(q * r)
}

/// Score of the quadruple `(k, p, q, r)`.
pub fn score(k: u64, p: u64, q: u64, r: u64) -> Result<u128> {
    if k == 0 {
        return Err(Error::InvalidWitness("k must be at least 1".into()));
    }
    for (name, v) in [("p", p), ("q", q), ("r", r)] {
        if !is_prime(v) {
            return Err(Error::InvalidWitness(format!("{name} = {v} is not prime")));
        }
    }
    Ok(raw_score(k, p, q, r))
}

impl Witness {
    /// Builds a witness with its score; `p`, `q`, `r` must be prime.
    pub fn new(k: u64, p: u64, q: u64, r: u64) -> Result<Self> {
        Ok(Self {
            k,
            p,
            q,
            r,
            score: score(k, p, q, r)?,
        })
    }

    /// The `n = kp + r` this witness speaks for, if it fits in 64 bits.
    pub fn n(&self) -> Option<u64> {
        self.k.checked_mul(self.p)?.checked_add(self.r)
    }

    /// Empirical exponent `log(score) / log(n)`.
    pub fn beta(&self, n: u64) -> f64 {
        (self.score as f64).ln() / (n as f64).ln()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(k={}, p={}, q={}, r={}; score {})",
            self.k, self.p, self.q, self.r, self.score
        )
    }
}

/// True iff `w` is a witness for `n` and its stored score is exact.
pub fn validate(n: u64, w: &Witness) -> bool {
    w.k >= 1
        && w.n() == Some(n)
        && w.q != 0
        && w.r >= 3
        && (w.r - 1).is_multiple_of(w.q)
        && is_prime(w.p)
        && is_prime(w.q)
        && is_prime(w.r)
        && raw_score(w.k, w.p, w.q, w.r) == w.score
}

/// Which construction produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Exact,
    Bv,
    Smooth,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Exact => "exact",
            Strategy::Bv => "bv",
            Strategy::Smooth => "smooth",
        })
    }
}

/// A witness together with the `n` it certifies: the serialized
/// certificate `{n, k, p, q, r, score, strategy}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: u64,
    pub k: u64,
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub score: u128,
    pub strategy: Strategy,
}

impl Certificate {
    pub fn new(n: u64, w: Witness, strategy: Strategy) -> Self {
        Self {
            n,
            k: w.k,
            p: w.p,
            q: w.q,
            r: w.r,
            score: w.score,
            strategy,
        }
    }

    pub fn witness(&self) -> Witness {
        Witness {
            k: self.k,
            p: self.p,
            q: self.q,
            r: self.r,
            score: self.score,
        }
    }

    pub fn is_valid(&self) -> bool {
        validate(self.n, &self.witness())
    }
}

/// `f(n)` with one maximizing witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactValue {
    pub value: u128,
    pub witness: Option<Witness>,
}

/// Dense primality and `P` tables for evaluating `f(n)` at every `n ≤ limit`.
#[derive(Clone, Debug)]
pub struct ExactSolver {
    limit: u64,
    prime: Vec<bool>,
    primes: Vec<u64>,
    lpf: FactorTable,
}

impl ExactSolver {
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::domain("f(n) is defined for n ≥ 1"));
        }
        let primes = primes_in(1, limit)?.into_vec();
        let mut prime = vec![false; limit as usize + 1];
        for &p in &primes {
            prime[p as usize] = true;
        }
        Ok(Self {
            limit,
            prime,
            primes,
            lpf: crate::factor::lpf_table(1, limit)?,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Enumerates primes `p < n` and `k ≥ 1` with `kp < n`; `r = n − kp`
    /// must be a prime `≥ 3`. For fixed `(k, p, r)` the score does not
    /// decrease with `q`, so `q = P(r − 1)` is optimal. Ties keep the first
    /// witness in ascending `(p, k)` order.
    pub fn solve(&self, n: u64) -> Result<ExactValue> {
        if n == 0 {
            return Err(Error::domain("f(n) is defined for n ≥ 1"));
        }
        if n > self.limit {
            return Err(Error::domain(format!(
                "n = {n} exceeds the solver limit {}",
                self.limit
            )));
        }
        let mut best = ExactValue {
            value: 0,
            witness: None,
        };
        for &p in self.primes.iter().take_while(|&&p| p < n) {
            let mut kp = p;
            let mut k = 1;
            while kp < n {
                let r = n - kp;
                if r >= 3 && self.prime[r as usize] {
                    let q = self.lpf.values()[(r - 2) as usize];
                    let s = raw_score(k, p, q, r);
                    if s > best.value {
                        best = ExactValue {
                            value: s,
                            witness: Some(Witness { k, p, q, r, score: s }),
                        };
                    }
                }
                kp += p;
                k += 1;
            }
        }
        Ok(best)
    }
}

/// `f(n)`, exactly, together with a maximizing witness.
pub fn f_exact(n: u64) -> Result<ExactValue> {
    ExactSolver::new(n.max(1))?.solve(n)
}

fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// The residue `a ∈ [0, pq)` with `a ≡ n (mod p)` and `a ≡ 1 (mod q)`.
pub fn crt_pair(n: u64, p: u64, q: u64) -> Result<u64> {
    if p == 0 || q == 0 {
        return Err(Error::domain("moduli must be positive"));
    }
    if p == q || gcd(p, q) != 1 {
        return Err(Error::domain(format!("moduli {p} and {q} are not coprime")));
    }
    let m = p as u128 * q as u128;
    let np = n % p;
    // a = np + p·t with p·t ≡ 1 − np (mod q).
    let inv = inverse_mod(p % q, q).expect("coprime moduli");
    let need = (1 + q as u128 - (np % q) as u128) % q as u128;
    let t = need * inv as u128 % q as u128;
    let a = (np as u128 + p as u128 * t) % m;
    u64::try_from(a).map_err(|_| Error::domain("modulus pq exceeds 64 bits"))
}

/// The integer window `[⌈n^θ⌉, ⌊2n^θ⌋]` with `θ = 1/4 − eps` from which
/// `strategy_bv` draws `p` and `q`.
pub fn bv_prime_window(n: u64, eps: f64) -> Result<(u64, u64)> {
    if !(0.0..0.25).contains(&eps) {
        return Err(Error::config(format!("eps = {eps} must lie in [0, 1/4)")));
    }
    let x = (n as f64).powf(0.25 - eps);
    Ok((snapped_ceil(x), snapped_floor(2.0 * x)))
}

/// Witness from two primes `p ≠ q` near `n^{1/4−ε}` and a prime
/// `r ∈ [n/4, n/2]` with `r ≡ a (mod pq)`.
///
/// Pairs are tried in ascending `p`, then ascending `q`; for each, `r` is
/// scanned upward from `⌈n/4⌉`. Pairs where `gcd(a, pq) > 1` are skipped.
pub fn strategy_bv(n: u64, eps: f64) -> Result<Option<Witness>> {
    let (lo, hi) = bv_prime_window(n, eps)?;
    if lo > hi || n < 4 {
        return Ok(None);
    }
    let primes = primes_in(lo.max(1), hi)?.into_vec();
    let r_lo = n.div_ceil(4);
    let r_hi = n / 2;
    for &p in &primes {
        for &q in &primes {
            if p == q {
                continue;
            }
            let a = crt_pair(n, p, q)?;
            let m = p * q;
            if gcd(a, m) != 1 {
                continue;
            }
            let offset = (a + m - r_lo % m) % m;
            let mut r = r_lo + offset;
            while r <= r_hi {
                if is_prime(r) {
                    let w = Witness::new((n - r) / p, p, q, r)?;
                    debug_assert!(validate(n, &w));
                    return Ok(Some(w));
                }
                r += m;
            }
        }
    }
    Ok(None)
}

/// Primes `r` in an interval whose shift `r − 1` has a large prime factor:
/// `P(r − 1) > r^α`.
#[derive(Clone, Debug, PartialEq)]
pub struct RSet {
    alpha: f64,
    lo: u64,
    hi: u64,
    members: Vec<u64>,
}

impl RSet {
    /// An empty set over an empty interval.
    pub fn empty(alpha: f64) -> Self {
        Self {
            alpha,
            lo: 1,
            hi: 0,
            members: Vec::new(),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn interval(&self) -> (u64, u64) {
        (self.lo, self.hi)
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, r: u64) -> bool {
        self.members.binary_search(&r).is_ok()
    }
}

fn check_exponent(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v <= 1.0 {
        Ok(())
    } else {
        Err(Error::config(format!("{name} = {v} must lie in (0, 1]")))
    }
}

/// All primes `r ∈ [lo, hi]` with `P(r − 1) > r^alpha`.
pub fn build_rset(lo: u64, hi: u64, alpha: f64) -> Result<RSet> {
    if lo > hi {
        return Err(Error::EmptyInterval { lo, hi });
    }
    check_exponent("alpha", alpha)?;
    let lo = lo.max(1);
    let mut members = Vec::new();
    if hi >= 2 {
        let primes = primes_in(lo, hi)?;
        let lpf = crate::factor::lpf_table(lo.max(2) - 1, hi - 1)?;
        members.extend(
            primes
                .primes()
                .iter()
                .copied()
                .filter(|&r| exceeds_power(lpf.lpf(r - 1), r, alpha)),
        );
    }
    Ok(RSet {
        alpha,
        lo,
        hi,
        members,
    })
}

/// Witness with `p = P(n − r)`, `q = P(r − 1)` for the first `r` in `rset`
/// with `P(n − r) ≥ n^gamma`; `None` marks `n` as exceptional.
pub fn strategy_smooth(n: u64, rset: &RSet, gamma: f64) -> Result<Option<Witness>> {
    strategy_smooth_with(n, rset, gamma, &Pointwise)
}

/// [`strategy_smooth`] reading `P` values from `lpf`.
pub fn strategy_smooth_with<L: LargestPrimeFactor>(
    n: u64,
    rset: &RSet,
    gamma: f64,
    lpf: &L,
) -> Result<Option<Witness>> {
    check_exponent("gamma", gamma)?;
    if let Some(&last) = rset.members.last() {
        if last >= n {
            return Err(Error::domain(format!(
                "R-set member {last} is not below n = {n}"
            )));
        }
    }
    for &r in &rset.members {
        let p = lpf.lpf(n - r);
        if p >= 2 && reaches_power(p, n, gamma) {
            let q = lpf.lpf(r - 1);
            let w = Witness::new((n - r) / p, p, q, r)?;
            debug_assert!(validate(n, &w));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: u64, p: u64, q: u64, r: u64) -> Witness {
        Witness::new(k, p, q, r).unwrap()
    }

    #[test]
    fn score_examples() {
        assert_eq!(score(1, 5, 2, 5), Ok(10));
        assert_eq!(score(2, 2, 2, 5), Ok(8));
        assert_eq!(score(1, 2, 2, 3), Ok(4));
        assert!(matches!(score(1, 4, 2, 5), Err(Error::InvalidWitness(_))));
        assert!(matches!(score(0, 2, 2, 5), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn score_does_not_overflow() {
        let big = 18_446_744_073_709_551_557u64;
        assert_eq!(score(big, big, big, big), Ok(big as u128 * big as u128));
    }

    #[test]
    fn validate_examples() {
        assert!(validate(10, &w(1, 5, 2, 5)));
        let bad_q = Witness { k: 1, p: 5, q: 3, r: 5, score: 10 };
        assert!(!validate(10, &bad_q));
        let bad_r = Witness { k: 2, p: 2, q: 2, r: 6, score: 8 };
        assert!(!validate(10, &bad_r));
        let bad_score = Witness { score: 11, ..w(1, 5, 2, 5) };
        assert!(!validate(10, &bad_score));
        assert!(!validate(11, &w(1, 5, 2, 5)));
        let zero_k = Witness { k: 0, p: 5, q: 2, r: 5, score: 0 };
        assert!(!validate(5, &zero_k));
    }

    #[test]
    fn f_exact_examples() {
        assert_eq!(f_exact(4).unwrap(), ExactValue { value: 0, witness: None });
        assert_eq!(f_exact(5).unwrap().value, 4);
        assert_eq!(
            f_exact(9).unwrap(),
            ExactValue { value: 8, witness: Some(w(2, 2, 2, 5)) }
        );
        assert_eq!(
            f_exact(10).unwrap(),
            ExactValue { value: 10, witness: Some(w(1, 5, 2, 5)) }
        );
        assert_eq!(f_exact(1).unwrap().value, 0);
        assert!(f_exact(0).is_err());
    }

    #[test]
    fn solver_rejects_out_of_range() {
        let s = ExactSolver::new(100).unwrap();
        assert!(s.solve(101).is_err());
        assert_eq!(s.solve(10).unwrap().value, 10);
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_pair(10, 3, 7), Ok(1));
        assert_eq!(crt_pair(11, 3, 5), Ok(11));
        for t in 0..50 {
            let a = crt_pair(7 * t, 7, 11).unwrap();
            assert_eq!(a % 7, 0);
            assert_eq!(a % 11, 1);
        }
        assert!(crt_pair(10, 5, 5).is_err());
    }

    proptest::proptest! {
        #[test]
        fn crt_solves_both_congruences(n in 0u64..u64::MAX, pi in 0usize..200, qi in 0usize..200) {
            let primes = crate::sieve::small_primes(1223);
            proptest::prop_assume!(pi != qi);
            let (p, q) = (primes[pi], primes[qi]);
            let a = crt_pair(n, p, q).unwrap();
            proptest::prop_assert!(a < p * q);
            proptest::prop_assert_eq!(a % p, n % p);
            proptest::prop_assert_eq!(a % q, 1 % q);
        }
    }

    #[test]
    fn bv_example() {
        let got = strategy_bv(10_000, 0.0).unwrap().unwrap();
        assert_eq!(got, w(649, 11, 13, 2861));
        assert_eq!(got.score, 37_193);
        assert_eq!(bv_prime_window(10_000, 0.0), Ok((10, 20)));
    }

    #[test]
    fn bv_without_pair() {
        // [n^{1/4}, 2n^{1/4}] = [2, 4] holds only 2 and 3; both divide 6·k.
        assert_eq!(bv_prime_window(16, 0.0), Ok((2, 4)));
        // [1.09, 2.19] contains only the prime 2.
        assert_eq!(strategy_bv(100, 0.23).unwrap(), None);
        assert!(strategy_bv(100, 0.25).is_err());
        assert!(strategy_bv(100, -0.1).is_err());
    }

    #[test]
    fn bv_results_validate() {
        for n in (1_000..200_000).step_by(997) {
            for eps in [0.0, 0.05, 0.1] {
                if let Some(found) = strategy_bv(n, eps).unwrap() {
                    assert!(validate(n, &found), "n = {n}, eps = {eps}: {found}");
                }
            }
        }
    }

    #[test]
    fn rset_examples() {
        assert_eq!(build_rset(5, 25, 0.5).unwrap().members(), &[7, 11, 23]);
        assert_eq!(build_rset(1, 25, 0.5).unwrap().members(), &[3, 7, 11, 23]);
        assert!(!build_rset(13, 13, 0.677).unwrap().contains(13));
        assert!(build_rset(1, 1, 0.5).unwrap().is_empty());
        assert_eq!(
            build_rset(26, 25, 0.5),
            Err(Error::EmptyInterval { lo: 26, hi: 25 })
        );
        assert!(build_rset(1, 25, 0.0).is_err());
    }

    #[test]
    fn rset_membership_matches_integer_square_test() {
        let rs = build_rset(2, 10_000, 0.5).unwrap();
        let want: Vec<u64> = (2..=10_000u64)
            .filter(|&r| is_prime(r))
            .filter(|&r| {
                let p = crate::factor::largest_prime_factor(r - 1).unwrap();
                p * p > r
            })
            .collect();
        assert_eq!(rs.members(), want.as_slice());
    }

    #[test]
    fn smooth_example() {
        let rs = build_rset(5, 25, 0.5).unwrap();
        let got = strategy_smooth(100, &rs, 0.5).unwrap().unwrap();
        assert_eq!(got, w(3, 31, 3, 7));
        assert_eq!(got.score, 21);
        assert_eq!(strategy_smooth(100, &RSet::empty(0.5), 0.5), Ok(None));
        assert!(strategy_smooth(23, &rs, 0.5).is_err());
    }

    #[test]
    fn smooth_gamma_boundary_is_inclusive() {
        // n = 49, r = 7: P(42) = 7 = 49^{1/2} exactly.
        let rs = build_rset(7, 7, 0.5).unwrap();
        assert_eq!(rs.members(), &[7]);
        assert_eq!(strategy_smooth(49, &rs, 0.5).unwrap(), Some(w(6, 7, 3, 7)));
        assert_eq!(strategy_smooth(49, &rs, 0.51).unwrap(), None);
    }
}
