//! Sweep outcomes: witnesses, counterexamples, and the report that carries
//! them, plus an independent recheck of every recorded witness.

use std::time::Duration;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{threshold_enclosure, Rat};
use crate::intervals::{breusch_interval, dusart_interval_enclosure};
use crate::primality::is_prime;
use crate::theorems::claim::Claim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    CounterexamplesFound,
    Indeterminate,
}

/// Up to four primes certifying one n; absent fields were not part of the claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadWitness {
    pub n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Least prime at or above n inside the claim's interval; interval_hi is
    /// the certified upper endpoint the prime was checked against.
    PrimeInInterval {
        n: u64,
        interval_hi: Rat,
        least_prime: u64,
    },
    /// Least prime in the closed interval [lo, hi] = [kn, (k+1)n].
    KPrime {
        n: u64,
        lo: u64,
        hi: u64,
        least_prime: u64,
    },
    /// Certified bound on the logarithmic endpoint, strictly below the wide one.
    Containment {
        n: u64,
        dusart_hi_bound: Rat,
        breusch_hi: Rat,
    },
    Quad(QuadWitness),
    /// Perfect power a^m = value inside the claimed open window.
    PowerOnly { n: u64, a: u64, value: u64 },
    /// Power in the lower window and prime s in the upper one.
    PowerAndPrime { n: u64, a: u64, value: u64, s: u64 },
    /// Prime r in the lower window and power in the upper one.
    PrimeAndPower { n: u64, r: u64, a: u64, value: u64 },
    /// Certified lower bound on the degree-m window threshold.
    ThresholdFloor { m: u32, lo: Rat },
}

impl Witness {
    /// The swept variable this witness certifies.
    pub fn at(&self) -> u64 {
        match *self {
            Witness::PrimeInInterval { n, .. }
            | Witness::KPrime { n, .. }
            | Witness::Containment { n, .. }
            | Witness::PowerOnly { n, .. }
            | Witness::PowerAndPrime { n, .. }
            | Witness::PrimeAndPower { n, .. } => n,
            Witness::Quad(q) => q.n,
            Witness::ThresholdFloor { m, .. } => m as u64,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub claim: Claim,
    /// Requested sweep range; the effective start may sit higher when the
    /// claim's hypothesis demands it.
    pub range: (u64, u64),
    pub status: Status,
    /// Every n in range where the claim failed, strictly ascending.
    pub counterexamples: Vec<u64>,
    /// Sampled witnesses: first, last, and every K-th in between.
    pub witnesses: Vec<Witness>,
    pub elapsed: Duration,
    /// Least n the claim's hypothesis admits, when it has one.
    pub threshold_used: Option<BigUint>,
}

fn fail(msg: String) -> Error {
    Error::InvalidInput(msg)
}

fn check(cond: bool, what: &str, at: u64) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(format!("witness recheck failed: {what} at {at}")))
    }
}

fn pow_u128(a: u64, m: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..m {
        acc = acc.saturating_mul(a as u128);
    }
    acc
}

/// p prime with n < a p and 2 a p < 3 n, all exactly.
fn check_scaled_low(n: u64, a: u64, p: u64) -> Result<()> {
    let (n, ap) = (n as u128, a as u128 * p as u128);
    check(is_prime(p), "p prime", p)?;
    check(ap > n && 2 * ap < 3 * n, "n < a p < 3n/2", n as u64)
}

/// q prime with 3 n < 2 a q and a q < 2 n, all exactly.
fn check_scaled_high(n: u64, a: u64, q: u64) -> Result<()> {
    let (n, aq) = (n as u128, a as u128 * q as u128);
    check(is_prime(q), "q prime", q)?;
    check(2 * aq > 3 * n && aq < 2 * n, "3n/2 < a q < 2n", n as u64)
}

/// value = a^m is the least m-th power above n and stays below 3n/2.
fn check_power_low(n: u64, m: u32, a: u64, value: u64) -> Result<()> {
    check(a >= 1 && pow_u128(a, m) == value as u128, "value = a^m", n)?;
    check(a == 1 || pow_u128(a - 1, m) <= n as u128, "a minimal", n)?;
    let (n, v) = (n as u128, value as u128);
    check(v > n && 2 * v < 3 * n, "n < a^m < 3n/2", n as u64)
}

/// value = a^m is the least m-th power above 3n/2 and stays below 2n.
fn check_power_high(n: u64, m: u32, a: u64, value: u64) -> Result<()> {
    check(a >= 1 && pow_u128(a, m) == value as u128, "value = a^m", n)?;
    check(
        a == 1 || 2 * pow_u128(a - 1, m) <= 3 * n as u128,
        "a minimal",
        n,
    )?;
    let (n, v) = (n as u128, value as u128);
    check(2 * v > 3 * n && v < 2 * n, "3n/2 < a^m < 2n", n as u64)
}

/// Tightens the fresh per-n enclosure until it confirms the recorded bound,
/// in the given direction. Block-level bounds recorded by the sweep are
/// strictly looser than the true endpoint, so some rung always settles it.
fn confirm_against_enclosure(
    n: u64,
    recorded: &Rat,
    want_inner: bool,
) -> Result<()> {
    for bits in [64u32, 128, 256, 512, 1024] {
        let (inner, outer) = dusart_interval_enclosure(n, bits);
        if want_inner {
            if *recorded <= inner.hi {
                return Ok(());
            }
        } else if *recorded >= outer.hi {
            return Ok(());
        }
    }
    Err(fail(format!(
        "witness recheck failed: recorded logarithmic bound unconfirmed at {n}"
    )))
}

impl VerificationReport {
    /// Recomputes every recorded witness from scratch and confirms each
    /// counterexample list is strictly ascending. Errors on the first
    /// inconsistency.
    pub fn revalidate(&self) -> Result<()> {
        for w in self.counterexamples.windows(2) {
            if w[0] >= w[1] {
                return Err(fail("counterexamples not strictly ascending".into()));
            }
        }
        for w in &self.witnesses {
            self.revalidate_witness(w)?;
        }
        Ok(())
    }

    fn revalidate_witness(&self, w: &Witness) -> Result<()> {
        match (self.claim, w) {
            (
                Claim::Breusch,
                Witness::PrimeInInterval {
                    n,
                    interval_hi,
                    least_prime: p,
                },
            ) => {
                check(is_prime(*p), "prime", *p)?;
                check(*p >= *n, "p >= n", *n)?;
                check(
                    *interval_hi == breusch_interval(*n).hi,
                    "interval endpoint",
                    *n,
                )?;
                check(Rat::from(*p) <= *interval_hi, "p inside interval", *n)
            }
            (
                Claim::Dusart,
                Witness::PrimeInInterval {
                    n,
                    interval_hi,
                    least_prime: p,
                },
            ) => {
                check(is_prime(*p), "prime", *p)?;
                check(*p >= *n, "p >= n", *n)?;
                check(Rat::from(*p) <= *interval_hi, "p inside interval", *n)?;
                confirm_against_enclosure(*n, interval_hi, true)
            }
            (
                Claim::DusartInBreusch,
                Witness::Containment {
                    n,
                    dusart_hi_bound,
                    breusch_hi,
                },
            ) => {
                check(
                    *breusch_hi == breusch_interval(*n).hi,
                    "wide endpoint",
                    *n,
                )?;
                check(dusart_hi_bound < breusch_hi, "containment", *n)?;
                confirm_against_enclosure(*n, dusart_hi_bound, false)
            }
            (Claim::ScaledLower { a }, Witness::Quad(qw)) => {
                let p = qw.p.ok_or_else(|| fail(format!("missing p at {}", qw.n)))?;
                check(qw.q.is_none() && qw.r.is_none() && qw.s.is_none(), "shape", qw.n)?;
                check_scaled_low(qw.n, a, p)
            }
            (Claim::ScaledUpper { a }, Witness::Quad(qw)) => {
                let q = qw.q.ok_or_else(|| fail(format!("missing q at {}", qw.n)))?;
                check(qw.p.is_none() && qw.r.is_none() && qw.s.is_none(), "shape", qw.n)?;
                check_scaled_high(qw.n, a, q)
            }
            (Claim::ScaledPair { a }, Witness::Quad(qw)) => {
                let p = qw.p.ok_or_else(|| fail(format!("missing p at {}", qw.n)))?;
                let q = qw.q.ok_or_else(|| fail(format!("missing q at {}", qw.n)))?;
                check(qw.r.is_none() && qw.s.is_none(), "shape", qw.n)?;
                check_scaled_low(qw.n, a, p)?;
                check_scaled_high(qw.n, a, q)
            }
            (Claim::ScaledFour { a }, Witness::Quad(qw)) => {
                let p = qw.p.ok_or_else(|| fail(format!("missing p at {}", qw.n)))?;
                let q = qw.q.ok_or_else(|| fail(format!("missing q at {}", qw.n)))?;
                let r = qw.r.ok_or_else(|| fail(format!("missing r at {}", qw.n)))?;
                let s = qw.s.ok_or_else(|| fail(format!("missing s at {}", qw.n)))?;
                check_scaled_low(qw.n, a, p)?;
                check_scaled_high(qw.n, a, q)?;
                check_scaled_low(qw.n, 1, r)?;
                check_scaled_high(qw.n, 1, s)
            }
            (Claim::PowerLower { m }, Witness::PowerOnly { n, a, value }) => {
                check_power_low(*n, m, *a, *value)
            }
            (Claim::PowerUpper { m }, Witness::PowerOnly { n, a, value }) => {
                check_power_high(*n, m, *a, *value)
            }
            (Claim::PowerThenPrime { m }, Witness::PowerAndPrime { n, a, value, s }) => {
                check_power_low(*n, m, *a, *value)?;
                check_scaled_high(*n, 1, *s)
            }
            (Claim::PrimeThenPower { m }, Witness::PrimeAndPower { n, r, a, value }) => {
                check_scaled_low(*n, 1, *r)?;
                check_power_high(*n, m, *a, *value)
            }
            (
                Claim::KInterval { k },
                Witness::KPrime {
                    n,
                    lo,
                    hi,
                    least_prime: p,
                },
            ) => {
                check(*lo == k as u64 * *n, "lo = k n", *n)?;
                check(*hi == (k as u64 + 1) * *n, "hi = (k+1) n", *n)?;
                check(is_prime(*p), "prime", *p)?;
                check(*lo <= *p && *p <= *hi, "p inside closed interval", *n)
            }
            (Claim::ThresholdFloor { kind }, Witness::ThresholdFloor { m, lo }) => {
                check(*lo > Rat::new(72, 5), "lo > 72/5", *m as u64)?;
                let fresh = threshold_enclosure(kind, *m, 16)?;
                check(*lo <= fresh.hi, "lo below fresh upper bound", *m as u64)
            }
            (claim, w) => Err(fail(format!(
                "witness {w:?} does not belong to claim {claim}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ThresholdKind;

    fn report(claim: Claim, witnesses: Vec<Witness>) -> VerificationReport {
        VerificationReport {
            claim,
            range: (1, 100),
            status: Status::Verified,
            counterexamples: vec![],
            witnesses,
            elapsed: Duration::ZERO,
            threshold_used: None,
        }
    }

    #[test]
    fn good_witnesses_pass() {
        let cases = vec![
            report(
                Claim::Breusch,
                vec![Witness::PrimeInInterval {
                    n: 8,
                    interval_hi: Rat::new(99, 8),
                    least_prime: 11,
                }],
            ),
            report(
                Claim::ScaledFour { a: 2 },
                vec![Witness::Quad(QuadWitness {
                    n: 29,
                    p: Some(17),
                    q: Some(23),
                    r: Some(31),
                    s: Some(47),
                })],
            ),
            report(
                Claim::PowerLower { m: 2 },
                vec![Witness::PowerOnly {
                    n: 286,
                    a: 17,
                    value: 289,
                }],
            ),
            report(
                Claim::PrimeThenPower { m: 2 },
                vec![Witness::PrimeAndPower {
                    n: 402,
                    r: 409,
                    a: 25,
                    value: 625,
                }],
            ),
            report(
                Claim::KInterval { k: 4 },
                vec![Witness::KPrime {
                    n: 3,
                    lo: 12,
                    hi: 15,
                    least_prime: 13,
                }],
            ),
            report(
                Claim::ThresholdFloor {
                    kind: ThresholdKind::LowerWindow,
                },
                vec![Witness::ThresholdFloor {
                    m: 2,
                    lo: Rat::new(285, 1),
                }],
            ),
        ];
        for r in cases {
            r.revalidate().unwrap();
        }
    }

    #[test]
    fn tampered_witnesses_fail() {
        let bad_prime = report(
            Claim::Breusch,
            vec![Witness::PrimeInInterval {
                n: 8,
                interval_hi: Rat::new(99, 8),
                least_prime: 9,
            }],
        );
        assert!(bad_prime.revalidate().is_err());

        let outside = report(
            Claim::Breusch,
            vec![Witness::PrimeInInterval {
                n: 8,
                interval_hi: Rat::new(99, 8),
                least_prime: 13,
            }],
        );
        assert!(outside.revalidate().is_err());

        let wrong_endpoint = report(
            Claim::Breusch,
            vec![Witness::PrimeInInterval {
                n: 8,
                interval_hi: Rat::new(100, 8),
                least_prime: 11,
            }],
        );
        assert!(wrong_endpoint.revalidate().is_err());

        let not_minimal = report(
            Claim::PowerLower { m: 2 },
            vec![Witness::PowerOnly {
                n: 286,
                a: 18,
                value: 324,
            }],
        );
        assert!(not_minimal.revalidate().is_err());

        let wrong_shape = report(
            Claim::ScaledLower { a: 2 },
            vec![Witness::Quad(QuadWitness {
                n: 29,
                p: Some(17),
                q: Some(23),
                r: None,
                s: None,
            })],
        );
        assert!(wrong_shape.revalidate().is_err());

        let mismatched = report(
            Claim::Breusch,
            vec![Witness::PowerOnly {
                n: 286,
                a: 17,
                value: 289,
            }],
        );
        assert!(mismatched.revalidate().is_err());
    }

    #[test]
    fn unsorted_counterexamples_fail() {
        let mut r = report(Claim::Breusch, vec![]);
        r.counterexamples = vec![5, 4];
        assert!(r.revalidate().is_err());
    }

    #[test]
    fn witness_serde_shape() {
        let w = Witness::Quad(QuadWitness {
            n: 29,
            p: Some(17),
            q: Some(23),
            r: None,
            s: None,
        });
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"kind":"quad","n":29,"p":17,"q":23}"#);
        let back: Witness = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);

        let w = Witness::PrimeInInterval {
            n: 8,
            interval_hi: Rat::new(99, 8),
            least_prime: 11,
        };
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"prime_in_interval","n":8,"interval_hi":"99/8","least_prime":11}"#
        );
    }
}
