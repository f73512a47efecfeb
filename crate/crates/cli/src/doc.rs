//! Wire forms for machine-readable output: stable field order, exact
//! integers and rationals as strings, elapsed time isolated in one field.

use std::time::Duration;

use num_bigint::BigUint;
use primespan::{Claim, Error, Result, Status, VerificationReport, Witness};
use serde::{Deserialize, Serialize};

/// Claim parameters; absent ones are omitted from the wire form.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

impl Params {
    pub fn of(claim: Claim) -> Params {
        Params {
            a: claim.a(),
            m: claim.m(),
            k: claim.k(),
        }
    }
}

/// Verification report as serialized; the field order is part of the
/// contract and elapsed_ms is the only field that varies between identical
/// runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub claim: String,
    pub params: Params,
    pub range: (u64, u64),
    pub status: Status,
    pub counterexamples: Vec<u64>,
    pub witnesses: Vec<Witness>,
    pub elapsed_ms: u64,
    #[serde(default)]
    pub threshold: Option<String>,
}

impl ReportDoc {
    pub fn from_report(r: &VerificationReport) -> ReportDoc {
        ReportDoc {
            claim: r.claim.name().to_string(),
            params: Params::of(r.claim),
            range: r.range,
            status: r.status,
            counterexamples: r.counterexamples.clone(),
            witnesses: r.witnesses.clone(),
            elapsed_ms: r.elapsed.as_millis().min(u64::MAX as u128) as u64,
            threshold: r.threshold_used.as_ref().map(|t| t.to_string()),
        }
    }

    /// Rebuilds the library report. Elapsed time is carried in whole
    /// milliseconds; every other field is exact.
    pub fn into_report(self) -> Result<VerificationReport> {
        let claim = Claim::from_parts(&self.claim, self.params.a, self.params.m, self.params.k)?;
        let threshold_used = self
            .threshold
            .map(|s| {
                s.parse::<BigUint>()
                    .map_err(|_| Error::InvalidInput(format!("bad threshold integer: {s}")))
            })
            .transpose()?;
        Ok(VerificationReport {
            claim,
            range: self.range,
            status: self.status,
            counterexamples: self.counterexamples,
            witnesses: self.witnesses,
            elapsed: Duration::from_millis(self.elapsed_ms),
            threshold_used,
        })
    }
}

/// Threshold query result; rationals ride as "num/den" strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdDoc {
    pub kind: String,
    pub m: u32,
    pub bits: u32,
    pub lo: String,
    pub hi: String,
    pub threshold: String,
}

/// Onset scan result; min_n is null when the horizon itself fails.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExploreDoc {
    pub claim: String,
    pub params: Params,
    pub horizon: u64,
    pub min_n: Option<u64>,
}
