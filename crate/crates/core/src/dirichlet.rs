//! Chebyshev's ψ in arithmetic progressions and its worst-case deviation
//! from `y/φ(m)`.
//!
//! `ψ(y; m, a)` sums `Λ(n)` over `n ≤ y` with `n ≡ a (mod m)`. As a function
//! of real `y` it is a step function, so `ψ(y; m, a) − y/φ(m)` is piecewise
//! linear with slope `−1/φ(m)`. On each step its absolute value is extremal
//! either just after a jump or in the left limit at the next jump, which
//! makes the supremum over `y ∈ (0, z]` an exact finite maximum over the
//! prime powers `≤ z` plus the endpoint `z`.

use rayon::prelude::*;
use serde::Serialize;

use crate::factor::{euler_phi, gcd};
use crate::format::sig9;
use crate::sieve::{PrimeSegments, DEFAULT_SEGMENT_LEN};
use crate::sum::NeumaierSum;
use crate::{Error, Result};

/// Prime powers `p^j ≤ limit` in ascending order, each with weight `log p`.
#[derive(Clone, Debug)]
pub struct PrimePowers {
    limit: u64,
    entries: Vec<(u64, f64)>,
}

impl PrimePowers {
    pub fn up_to(limit: u64) -> Self {
        let mut entries = Vec::new();
        if limit >= 2 {
            let segments = PrimeSegments::new(2, limit, DEFAULT_SEGMENT_LEN)
                .expect("2 ≤ limit and positive segment length");
            for p in segments.flatten() {
                let w = (p as f64).ln();
                let mut v = p;
                loop {
                    entries.push((v, w));
                    match v.checked_mul(p) {
                        Some(next) if next <= limit => v = next,
                        _ => break,
                    }
                }
            }
            entries.sort_unstable_by_key(|e| e.0);
        }
        Self { limit, entries }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn entries(&self) -> &[(u64, f64)] {
        &self.entries
    }
}

fn floor_arg(y: f64) -> u64 {
    if y < 1.0 {
        0
    } else {
        y.floor() as u64
    }
}

/// `ψ(y; m, a) = Σ_{n ≤ y, n ≡ a (mod m)} Λ(n)`.
pub fn psi(y: f64, m: u64, a: u64) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    if a >= m {
        return Err(Error::domain(format!("residue {a} is not below modulus {m}")));
    }
    if !y.is_finite() {
        return Err(Error::domain("y must be finite"));
    }
    let table = PrimePowers::up_to(floor_arg(y));
    Ok(psi_with(&table, y, m, a))
}

/// `ψ(y; m, a)` from a precomputed prime-power table covering `⌊y⌋`.
pub fn psi_with(table: &PrimePowers, y: f64, m: u64, a: u64) -> f64 {
    let top = floor_arg(y);
    table
        .entries
        .iter()
        .take_while(|e| e.0 <= top)
        .filter(|e| e.0 % m == a)
        .map(|e| e.1)
        .sum::<NeumaierSum>()
        .value()
}

/// Where `|ψ(y; m, a) − y/φ(m)|` reaches its supremum over `y ∈ (0, z]`
/// and coprime `a`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscrepancyRecord {
    pub m: u64,
    pub worst_a: u64,
    #[serde(serialize_with = "sig9")]
    pub worst_y: f64,
    #[serde(serialize_with = "sig9")]
    pub sup_value: f64,
    /// The supremum is the left limit at `worst_y` rather than a value.
    pub is_left_limit: bool,
}

/// Exact `sup_{y ≤ z} max_{gcd(a,m)=1} |ψ(y; m, a) − y/φ(m)|`.
///
/// For `m = 1` the single residue class is represented by `a = 0`.
pub fn max_discrepancy(z: f64, m: u64) -> Result<DiscrepancyRecord> {
    check_z(z)?;
    let table = PrimePowers::up_to(floor_arg(z));
    max_discrepancy_with(&table, z, m)
}

fn check_z(z: f64) -> Result<()> {
    if z.is_finite() && z > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("z = {z} must be positive and finite")))
    }
}

/// [`max_discrepancy`] over a shared prime-power table covering `⌊z⌋`.
pub fn max_discrepancy_with(table: &PrimePowers, z: f64, m: u64) -> Result<DiscrepancyRecord> {
    check_z(z)?;
    if m == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    if table.limit < floor_arg(z) {
        return Err(Error::domain("prime-power table does not cover z"));
    }
    let phi = euler_phi(m)? as f64;
    let m_us = usize::try_from(m).map_err(|_| Error::domain("modulus too large"))?;
    let mut class_psi = vec![NeumaierSum::new(); m_us];

    let mut best: Option<DiscrepancyRecord> = None;
    let mut consider = |a: u64, y: f64, value: f64, left: bool| {
        if best.is_none_or(|b| value > b.sup_value) {
            best = Some(DiscrepancyRecord {
                m,
                worst_a: a,
                worst_y: y,
                sup_value: value,
                is_left_limit: left,
            });
        }
    };

    let top = floor_arg(z);
    for &(j, w) in table.entries.iter().take_while(|e| e.0 <= top) {
        let a = j % m;
        if gcd(a, m) != 1 {
            continue;
        }
        let acc = &mut class_psi[a as usize];
        let y = j as f64;
        consider(a, y, (acc.value() - y / phi).abs(), true);
        acc.add(w);
        consider(a, y, (acc.value() - y / phi).abs(), false);
    }
    for a in 0..m {
        if gcd(a, m) == 1 {
            consider(a, z, (class_psi[a as usize].value() - z / phi).abs(), false);
        }
    }
    Ok(best.expect("every modulus has a coprime residue"))
}

/// `⌊√z / (log z)^b⌋`: the largest modulus in the averaged sum.
pub fn bv_cutoff(z: f64, b: f64) -> u64 {
    let c = z.sqrt() / z.ln().powf(b);
    if c >= 1.0 {
        c.floor() as u64
    } else {
        0
    }
}

/// The averaged discrepancy with its per-modulus terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BvSum {
    #[serde(serialize_with = "sig9")]
    pub z: f64,
    #[serde(serialize_with = "sig9")]
    pub b: f64,
    pub cutoff: u64,
    #[serde(serialize_with = "sig9")]
    pub value: f64,
    pub records: Vec<DiscrepancyRecord>,
}

fn check_bv_args(z: f64, b: f64) -> Result<()> {
    if !(z.is_finite() && z >= 3.0) {
        return Err(Error::domain(format!("z = {z} must be at least 3")));
    }
    if !(b.is_finite() && b >= 0.0) {
        return Err(Error::domain(format!("B = {b} must be nonnegative")));
    }
    Ok(())
}

/// `Σ_{m ≤ √z/(log z)^B} max_discrepancy(z, m)`, with the terms.
///
/// Moduli are evaluated in parallel; the reduction runs in ascending `m`.
pub fn bv_breakdown(z: f64, b: f64) -> Result<BvSum> {
    check_bv_args(z, b)?;
    let cutoff = bv_cutoff(z, b);
    let table = PrimePowers::up_to(floor_arg(z));
    let records = (1..=cutoff)
        .into_par_iter()
        .map(|m| max_discrepancy_with(&table, z, m))
        .collect::<Result<Vec<_>>>()?;
    let value = records
        .iter()
        .map(|r| r.sup_value)
        .sum::<NeumaierSum>()
        .value();
    Ok(BvSum {
        z,
        b,
        cutoff,
        value,
        records,
    })
}

/// The averaged worst-case discrepancy
/// `Σ_{m ≤ √z/(log z)^B} max_{y ≤ z} max_{gcd(a,m)=1} |ψ(y; m, a) − y/φ(m)|`.
pub fn bv_sum(z: f64, b: f64) -> Result<f64> {
    Ok(bv_breakdown(z, b)?.value)
}
