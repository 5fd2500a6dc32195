//! Re-validation of certificates found in any report this tool emits.

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::Value;

use evasive_core::witness::{score, validate, Witness};

#[derive(Debug, Serialize)]
pub struct VerifySummary {
    pub checked: usize,
    pub valid: usize,
    /// `(n, valid)` per certificate, in input order.
    pub results: Vec<(u64, bool)>,
}

impl VerifySummary {
    pub fn all_valid(&self) -> bool {
        self.checked > 0 && self.valid == self.checked
    }
}

fn field(obj: &Value, name: &str) -> Result<u64> {
    obj.get(name)
        .and_then(Value::as_u64)
        .with_context(|| format!("missing or non-integer field {name:?}"))
}

/// A witness object with `k, p, q, r` and optionally `score`. A missing
/// score is recomputed; a present one must match.
fn check_witness(n: u64, obj: &Value) -> Result<bool> {
    let (k, p, q, r) = (field(obj, "k")?, field(obj, "p")?, field(obj, "q")?, field(obj, "r")?);
    let stored = match obj.get("score") {
        Some(v) => match v.as_u64() {
            Some(s) => s as u128,
            None => return Ok(false),
        },
        None => match score(k, p, q, r) {
            Ok(s) => s,
            Err(_) => return Ok(false),
        },
    };
    Ok(validate(n, &Witness { k, p, q, r, score: stored }))
}

/// Accepts a certificate `{n, k, p, q, r, score, strategy}`, an `f-exact`
/// report `{n, value, witness}`, or a survey report with `records`.
/// Records without a witness are skipped.
pub fn verify_json(text: &str) -> Result<VerifySummary> {
    let doc: Value = serde_json::from_str(text).context("input is not JSON")?;
    let mut results = Vec::new();
    if let Some(records) = doc.get("records").and_then(Value::as_array) {
        for rec in records {
            let n = field(rec, "n")?;
            if let Some(w) = rec.get("witness").filter(|w| !w.is_null()) {
                results.push((n, check_witness(n, w)?));
            }
        }
    } else {
        let n = field(&doc, "n")?;
        match doc.get("witness") {
            Some(Value::Null) => results.push((n, false)),
            Some(w) => results.push((n, check_witness(n, w)?)),
            None => results.push((n, check_witness(n, &doc)?)),
        }
    }
    if results.is_empty() {
        bail!("no certificates found in input");
    }
    let valid = results.iter().filter(|r| r.1).count();
    Ok(VerifySummary {
        checked: results.len(),
        valid,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_each_report_shape() {
        let cert = r#"{"n":10000,"k":649,"p":11,"q":13,"r":2861,"score":37193,"strategy":"bv"}"#;
        assert!(verify_json(cert).unwrap().all_valid());
        let exact = r#"{"n":10,"value":10,"witness":{"k":1,"p":5,"q":2,"r":5}}"#;
        assert!(verify_json(exact).unwrap().all_valid());
        let survey = r#"{"records":[
            {"n":100,"witness":{"k":3,"p":31,"q":3,"r":7,"score":21}},
            {"n":99,"witness":null}]}"#;
        let s = verify_json(survey).unwrap();
        assert_eq!((s.checked, s.valid), (1, 1));
    }

    #[test]
    fn rejects_bad_certificates() {
        let wrong_score = r#"{"n":10,"k":1,"p":5,"q":2,"r":5,"score":9}"#;
        assert!(!verify_json(wrong_score).unwrap().all_valid());
        let wrong_q = r#"{"n":10,"k":1,"p":5,"q":3,"r":5}"#;
        assert!(!verify_json(wrong_q).unwrap().all_valid());
        let absent = r#"{"n":50,"strategy":"smooth","witness":null}"#;
        assert!(!verify_json(absent).unwrap().all_valid());
        assert!(verify_json("not json").is_err());
        assert!(verify_json(r#"{"records":[]}"#).is_err());
    }
}
