//! Arithmetic certificates for the evasiveness of sparse monotone graph
//! properties.
//!
//! A *witness* is a quadruple `(k, p, q, r)` of a positive integer and three
//! primes with `n = k·p + r` and `q | r − 1`. Its score `min{p²k, pkr, qr}`
//! is a lower bound for the edge budget `f(n)`, the maximum score over all
//! witnesses for `n`. Properties of `n`-vertex graphs with at most `c·f(n)`
//! edges are evasive for an absolute constant `c`, so every witness is a
//! certificate for that many edges.
//!
//! The crate computes `f(n)` exactly for moderate `n` and builds witnesses
//! for large `n` with two constructions:
//!
//! * [`witness::strategy_bv`] picks two primes `p, q` near `n^{1/4−ε}` and
//!   searches the progression `r ≡ a (mod pq)` for a prime, where `a` solves
//!   `a ≡ n (mod p)`, `a ≡ 1 (mod q)`.
//! * [`witness::strategy_smooth`] scans primes `r` whose shift `r − 1` has a
//!   large prime factor and takes `p = P(n − r)`, `q = P(r − 1)`.
//!
//! Supporting experiments live in [`dirichlet`] (ψ in progressions and the
//! averaged worst-case discrepancy) and [`survey`] (exceptional-set surveys,
//! rough shifted-prime densities and largest prime factors of differences).

pub mod dirichlet;
pub mod error;
pub mod factor;
pub mod format;
pub mod sieve;
pub mod sum;
pub mod survey;
pub mod threshold;
pub mod witness;

pub use error::{Error, Result};
