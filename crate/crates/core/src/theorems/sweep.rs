//! Deterministic chunked sweep driver shared by every claim. Chunks are
//! claimed off an atomic counter by a small worker pool and merged back in
//! chunk order, so reports do not depend on the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exactmath::DEFAULT_PRECISION_CAP;
use crate::primality::PrimeCache;
use crate::theorems::claim::Claim;
use crate::theorems::kernels;
use crate::theorems::report::{Status, VerificationReport, Witness};

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Work unit width. Values above 2^24 are clamped so per-chunk prime
    /// windows stay inside the cache's range cap.
    pub chunk_size: u64,
    pub workers: usize,
    /// Enclosure precision for logarithmic and threshold bounds.
    pub bits: u32,
    /// Refinement ceiling before a point is declared indeterminate.
    pub precision_cap: u32,
    /// Witness sampling keeps about this many entries per report.
    pub witness_cap: usize,
    /// Largest admissible sweep count, a time and memory guard.
    pub max_range: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            chunk_size: 1 << 20,
            workers: std::thread::available_parallelism()
                .map(|p| p.get().min(8))
                .unwrap_or(1),
            bits: 64,
            precision_cap: DEFAULT_PRECISION_CAP,
            witness_cap: 10_000,
            max_range: 1 << 32,
        }
    }
}

/// Global sampling plan: first, last, and every step-th point from the
/// effective start, fixed before chunking so the selection cannot depend on
/// chunk layout or worker count.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Sampler {
    pub start: u64,
    pub end: u64,
    pub step: u64,
}

impl Sampler {
    pub(crate) fn hit(&self, x: u64) -> bool {
        x == self.start || x == self.end || (x - self.start) % self.step == 0
    }

    /// Visits the sampled points of [lo, hi] in ascending order; the segment
    /// must lie inside [start, end].
    pub(crate) fn for_each_in(&self, lo: u64, hi: u64, mut f: impl FnMut(u64)) {
        debug_assert!(self.start <= lo && hi <= self.end);
        let rem = (lo - self.start) % self.step;
        let mut x = if rem == 0 { lo } else { lo + (self.step - rem) };
        while x <= hi {
            f(x);
            match x.checked_add(self.step) {
                Some(next) => x = next,
                None => break,
            }
        }
        if self.end == hi && (self.end - self.start) % self.step != 0 {
            f(self.end);
        }
    }
}

#[derive(Default)]
pub(crate) struct ChunkOutcome {
    pub counterexamples: Vec<u64>,
    pub witnesses: Vec<Witness>,
    pub indeterminate: Vec<u64>,
}

pub(crate) struct SweepCtx<'a> {
    pub cache: &'a PrimeCache,
    pub cfg: &'a SweepConfig,
    pub sampler: Sampler,
}

/// Largest endpoint the kernel arithmetic stays within u64 for.
fn domain_cap(claim: &Claim) -> u64 {
    match claim {
        Claim::Breusch | Claim::Dusart | Claim::DusartInBreusch => {
            ((u64::MAX as u128 * 8 - 27) / 9) as u64
        }
        Claim::KInterval { k } => u64::MAX / (*k as u64 + 1),
        // degrees, not endpoints; enclosure work explodes long before this
        Claim::ThresholdFloor { .. } => 1 << 24,
        _ => 1 << 63,
    }
}

/// Verifies the claim over every point of [n_lo, n_hi] its hypothesis
/// admits. The sweep starts at the hypothesis bound when that is higher, and
/// the report records that bound as the threshold in use.
pub fn verify_claim(
    claim: Claim,
    n_lo: u64,
    n_hi: u64,
    cache: &PrimeCache,
    cfg: &SweepConfig,
) -> Result<VerificationReport> {
    let t0 = Instant::now();
    claim.validate()?;
    if n_lo < 1 {
        return Err(Error::InvalidInput("sweeps start at 1".into()));
    }
    if n_lo > n_hi {
        return Err(Error::InvalidInput(
            "empty range: the minimum exceeds the maximum".into(),
        ));
    }
    let cap = domain_cap(&claim);
    if n_hi > cap {
        return Err(Error::RangeTooLarge {
            what: "sweep endpoint",
            requested: n_hi as u128,
            cap: cap as u128,
        });
    }
    let threshold = claim.hypothesis_start(cfg.bits, cfg.precision_cap)?;
    let start = match &threshold {
        None => Some(n_lo),
        // a hypothesis bound past u64 leaves nothing checkable in any range
        Some(t) => u64::try_from(t).ok().map(|t| n_lo.max(t)),
    };
    let Some(start) = start.filter(|s| *s <= n_hi) else {
        return Ok(VerificationReport {
            claim,
            range: (n_lo, n_hi),
            status: Status::Verified,
            counterexamples: Vec::new(),
            witnesses: Vec::new(),
            elapsed: t0.elapsed(),
            threshold_used: threshold,
        });
    };
    let (counterexamples, indeterminate, witnesses) = sweep(claim, start, n_hi, cache, cfg)?;
    let status = if !counterexamples.is_empty() {
        Status::CounterexamplesFound
    } else if !indeterminate.is_empty() {
        Status::Indeterminate
    } else {
        Status::Verified
    };
    Ok(VerificationReport {
        claim,
        range: (n_lo, n_hi),
        status,
        counterexamples,
        witnesses,
        elapsed: t0.elapsed(),
        threshold_used: threshold,
    })
}

type SweepOutput = (Vec<u64>, Vec<u64>, Vec<Witness>);

fn sweep(
    claim: Claim,
    start: u64,
    end: u64,
    cache: &PrimeCache,
    cfg: &SweepConfig,
) -> Result<SweepOutput> {
    let count = end - start + 1;
    if count > cfg.max_range {
        return Err(Error::RangeTooLarge {
            what: "sweep range",
            requested: count as u128,
            cap: cfg.max_range as u128,
        });
    }
    let step = count.div_ceil(cfg.witness_cap.max(1) as u64).max(1);
    let sampler = Sampler {
        start,
        end,
        step,
    };
    let chunk = cfg.chunk_size.clamp(1, 1 << 24);
    let n_chunks = usize::try_from(count.div_ceil(chunk)).expect("chunk count fits usize");
    let ctx = SweepCtx {
        cache,
        cfg,
        sampler,
    };
    let slots: Vec<Mutex<Option<Result<ChunkOutcome>>>> =
        (0..n_chunks).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = cfg.workers.clamp(1, 128).min(n_chunks);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n_chunks {
                    break;
                }
                let c_lo = start + i as u64 * chunk;
                let c_hi = end.min(c_lo.saturating_add(chunk - 1));
                let res = kernels::run_chunk(claim, c_lo, c_hi, &ctx);
                *slots[i].lock().expect("chunk slot") = Some(res);
            });
        }
    });
    let mut counterexamples = Vec::new();
    let mut indeterminate = Vec::new();
    let mut witnesses = Vec::new();
    for slot in slots {
        let out = slot
            .into_inner()
            .expect("chunk slot")
            .expect("every chunk claimed")?;
        counterexamples.extend(out.counterexamples);
        indeterminate.extend(out.indeterminate);
        witnesses.extend(out.witnesses);
    }
    Ok((counterexamples, indeterminate, witnesses))
}

/// Point query: checks the claim's bare property at exactly n, ignoring the
/// hypothesis bound, and returns the witness when one exists. Ok(None) means
/// the property fails at n.
pub fn witness_at(
    claim: Claim,
    n: u64,
    cache: &PrimeCache,
    cfg: &SweepConfig,
) -> Result<Option<Witness>> {
    claim.validate()?;
    if n < 1 {
        return Err(Error::InvalidInput("point queries start at 1".into()));
    }
    // the logarithmic factor divides by ln^2 n, which vanishes at 1
    if n == 1 && matches!(claim, Claim::Dusart | Claim::DusartInBreusch) {
        return Err(Error::InvalidInput(format!(
            "{claim} is undefined at n = 1"
        )));
    }
    let cap = domain_cap(&claim);
    if n > cap {
        return Err(Error::RangeTooLarge {
            what: "query point",
            requested: n as u128,
            cap: cap as u128,
        });
    }
    let ctx = SweepCtx {
        cache,
        cfg,
        sampler: Sampler {
            start: n,
            end: n,
            step: 1,
        },
    };
    let out = kernels::run_chunk(claim, n, n, &ctx)?;
    if let Some(&x) = out.indeterminate.first() {
        return Err(Error::Indeterminate {
            context: format!("point {x} under {claim}"),
            bits: cfg.bits,
            cap: cfg.precision_cap,
        });
    }
    Ok(out.witnesses.into_iter().next())
}

/// Least N so the claim's bare property holds at every point of
/// [N, horizon], scanning from the smallest point the property is defined at
/// and ignoring the hypothesis bound. None when the horizon itself fails.
pub fn empirical_min_n(
    claim: Claim,
    horizon: u64,
    cache: &PrimeCache,
    cfg: &SweepConfig,
) -> Result<Option<u64>> {
    claim.validate()?;
    if claim.sweeps_degree() {
        return Err(Error::InvalidInput(
            "degree-swept claims have no onset in n".into(),
        ));
    }
    let start = match claim {
        // the logarithmic factor needs n >= 2; containment is stated from 8
        Claim::Dusart => 2,
        Claim::DusartInBreusch => 8,
        _ => 1,
    };
    if horizon < start {
        return Err(Error::InvalidInput(format!(
            "onset scan needs a horizon of at least {start}"
        )));
    }
    let cap = domain_cap(&claim);
    if horizon > cap {
        return Err(Error::RangeTooLarge {
            what: "onset horizon",
            requested: horizon as u128,
            cap: cap as u128,
        });
    }
    let (failures, indeterminate, _) = sweep(claim, start, horizon, cache, cfg)?;
    let last_failure = failures.last().copied();
    if let Some(&x) = indeterminate.last() {
        if last_failure.map_or(true, |f| f < x) {
            return Err(Error::Indeterminate {
                context: format!("onset scan undecided at {x}"),
                bits: cfg.bits,
                cap: cfg.precision_cap,
            });
        }
    }
    Ok(match last_failure {
        None => Some(start),
        Some(f) if f == horizon => None,
        Some(f) => Some(f + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{Rat, ThresholdKind};
    use crate::theorems::report::{QuadWitness, Witness};

    fn cache() -> PrimeCache {
        PrimeCache::with_defaults()
    }

    fn cfg() -> SweepConfig {
        SweepConfig::default()
    }

    fn verify(claim: Claim, lo: u64, hi: u64) -> VerificationReport {
        verify_claim(claim, lo, hi, &cache(), &cfg()).unwrap()
    }

    #[test]
    fn sampler_visits_exactly_the_hits() {
        for (start, end, step) in [(1u64, 50, 7), (10, 10, 3), (5, 104, 10), (3, 40, 1)] {
            let s = Sampler { start, end, step };
            let brute: Vec<u64> = (start..=end).filter(|&x| s.hit(x)).collect();
            let mut got = Vec::new();
            let mut lo = start;
            // arbitrary uneven segmentation
            for seg in [3u64, 11, 1, 29, 64, 101] {
                if lo > end {
                    break;
                }
                let hi = end.min(lo + seg);
                s.for_each_in(lo, hi, |x| got.push(x));
                lo = hi + 1;
            }
            assert_eq!(got, brute, "start={start} end={end} step={step}");
        }
    }

    #[test]
    fn wide_interval_sweep_small_range() {
        let r = verify(Claim::Breusch, 1, 200);
        assert_eq!(r.status, Status::Verified);
        assert!(r.counterexamples.is_empty());
        assert_eq!(r.threshold_used, None);
        // step is 1 here, so every n appears
        assert_eq!(r.witnesses.len(), 200);
        assert_eq!(
            r.witnesses[7],
            Witness::PrimeInInterval {
                n: 8,
                interval_hi: Rat::new(99, 8),
                least_prime: 11,
            }
        );
        r.revalidate().unwrap();
    }

    #[test]
    fn scaled_sweeps_start_at_their_thresholds() {
        let r = verify(Claim::ScaledLower { a: 1 }, 1, 20);
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.threshold_used, Some(13u32.into()));
        assert_eq!(
            r.witnesses.first(),
            Some(&Witness::Quad(QuadWitness {
                n: 13,
                p: Some(17),
                q: None,
                r: None,
                s: None,
            }))
        );

        let r = verify(Claim::ScaledLower { a: 2 }, 1, 40);
        assert_eq!(
            r.witnesses.first().map(|w| match w {
                Witness::Quad(q) => (q.n, q.p),
                _ => panic!("wrong witness shape"),
            }),
            Some((25, Some(13)))
        );

        let r = verify(Claim::ScaledUpper { a: 2 }, 1, 40);
        assert_eq!(r.threshold_used, Some(29u32.into()));
        assert_eq!(
            r.witnesses.first().map(|w| match w {
                Witness::Quad(q) => (q.n, q.q),
                _ => panic!("wrong witness shape"),
            }),
            Some((29, Some(23)))
        );

        let r = verify(Claim::ScaledPair { a: 1 }, 1, 100);
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.threshold_used, Some(15u32.into()));
        assert_eq!(
            r.witnesses.first(),
            Some(&Witness::Quad(QuadWitness {
                n: 15,
                p: Some(17),
                q: Some(23),
                r: None,
                s: None,
            }))
        );
        r.revalidate().unwrap();
    }

    #[test]
    fn four_prime_sweep_matches_known_values() {
        let r = verify(Claim::ScaledFour { a: 2 }, 29, 29);
        assert_eq!(r.status, Status::Verified);
        assert_eq!(
            r.witnesses,
            vec![Witness::Quad(QuadWitness {
                n: 29,
                p: Some(17),
                q: Some(23),
                r: Some(31),
                s: Some(47),
            })]
        );
        r.revalidate().unwrap();

        let r = verify(Claim::ScaledFour { a: 20 }, 1, 400);
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.threshold_used, Some(289u32.into()));
        assert_eq!(r.witnesses.first().map(|w| w.at()), Some(289));
    }

    #[test]
    fn kinterval_counterexamples_are_exactly_the_exceptions() {
        for k in 2u32..=7 {
            let claim = Claim::KInterval { k };
            let r = verify(claim, 1, 2000);
            assert_eq!(
                r.counterexamples,
                claim.known_exceptions().to_vec(),
                "k={k}"
            );
            let expected = if claim.known_exceptions().is_empty() {
                Status::Verified
            } else {
                Status::CounterexamplesFound
            };
            assert_eq!(r.status, expected, "k={k}");
            r.revalidate().unwrap();
        }
    }

    #[test]
    fn power_sweeps_freeze_known_first_witnesses() {
        let r = verify(Claim::PowerLower { m: 2 }, 1, 1000);
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.threshold_used, Some(286u32.into()));
        assert_eq!(
            r.witnesses.first(),
            Some(&Witness::PowerOnly {
                n: 286,
                a: 17,
                value: 289,
            })
        );
        r.revalidate().unwrap();

        let r = verify(Claim::PowerUpper { m: 2 }, 1, 1000);
        assert_eq!(r.threshold_used, Some(402u32.into()));
        assert_eq!(
            r.witnesses.first(),
            Some(&Witness::PowerOnly {
                n: 402,
                a: 25,
                value: 625,
            })
        );

        let r = verify(Claim::PowerThenPrime { m: 2 }, 1, 600);
        assert_eq!(
            r.witnesses.first(),
            Some(&Witness::PowerAndPrime {
                n: 286,
                a: 17,
                value: 289,
                s: 431,
            })
        );
        r.revalidate().unwrap();

        let r = verify(Claim::PrimeThenPower { m: 2 }, 1, 600);
        assert_eq!(
            r.witnesses.first(),
            Some(&Witness::PrimeAndPower {
                n: 402,
                r: 409,
                a: 25,
                value: 625,
            })
        );
        r.revalidate().unwrap();
    }

    #[test]
    fn power_sweep_with_unreachable_threshold_is_trivially_verified() {
        // the degree-40 threshold dwarfs u64, so no point is checkable
        let r = verify(Claim::PowerLower { m: 40 }, 1, 1000);
        assert_eq!(r.status, Status::Verified);
        assert!(r.witnesses.is_empty());
        assert!(r.threshold_used.unwrap() > u64::MAX.into());
    }

    #[test]
    fn logarithmic_sweep_verifies_from_its_threshold() {
        let r = verify(Claim::Dusart, 1, 4000);
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.threshold_used, Some(3275u32.into()));
        let first = r.witnesses.first().unwrap();
        match first {
            Witness::PrimeInInterval { n, least_prime, .. } => {
                assert_eq!((*n, *least_prime), (3275, 3299));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        r.revalidate().unwrap();
    }

    #[test]
    fn containment_sweep_small_range() {
        let r = verify(Claim::DusartInBreusch, 1, 5000);
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.threshold_used, Some(8u32.into()));
        assert_eq!(r.witnesses.first().map(|w| w.at()), Some(8));
        assert_eq!(r.witnesses.last().map(|w| w.at()), Some(5000));
        r.revalidate().unwrap();
    }

    #[test]
    fn threshold_floor_sweep_covers_all_degrees() {
        for kind in [ThresholdKind::LowerWindow, ThresholdKind::UpperWindow] {
            let r = verify(Claim::ThresholdFloor { kind }, 1, 64);
            assert_eq!(r.status, Status::Verified, "{kind:?}");
            assert_eq!(r.witnesses.len(), 64);
            for w in &r.witnesses {
                match w {
                    Witness::ThresholdFloor { lo, .. } => assert!(*lo > Rat::new(72, 5)),
                    other => panic!("unexpected witness {other:?}"),
                }
            }
            r.revalidate().unwrap();
        }
    }

    #[test]
    fn threshold_floor_respects_the_precision_cap() {
        let mut tight = cfg();
        tight.bits = 64;
        tight.precision_cap = 32;
        let r = verify_claim(
            Claim::ThresholdFloor {
                kind: ThresholdKind::LowerWindow,
            },
            1,
            8,
            &cache(),
            &tight,
        )
        .unwrap();
        assert_eq!(r.status, Status::Indeterminate);
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn reports_are_invariant_across_workers_and_chunking() {
        let base = cfg();
        let mut one = base.clone();
        one.workers = 1;
        one.chunk_size = 512;
        let mut many = base.clone();
        many.workers = 8;
        many.chunk_size = 512;
        let mut coarse = base.clone();
        coarse.workers = 3;
        coarse.chunk_size = 7919;

        let claims = [
            Claim::Breusch,
            Claim::ScaledPair { a: 1 },
            Claim::KInterval { k: 4 },
            Claim::PowerThenPrime { m: 2 },
            Claim::DusartInBreusch,
        ];
        let c = cache();
        for claim in claims {
            let a = verify_claim(claim, 1, 30_000, &c, &one).unwrap();
            let b = verify_claim(claim, 1, 30_000, &c, &many).unwrap();
            let d = verify_claim(claim, 1, 30_000, &c, &coarse).unwrap();
            for other in [&b, &d] {
                assert_eq!(a.status, other.status, "{claim}");
                assert_eq!(a.counterexamples, other.counterexamples, "{claim}");
                assert_eq!(a.witnesses, other.witnesses, "{claim}");
                assert_eq!(a.threshold_used, other.threshold_used, "{claim}");
            }
        }
    }

    #[test]
    fn pair_failures_are_exactly_the_union_of_part_failures() {
        let c = cache();
        let cfg = cfg();
        for a in [1u64, 2, 3] {
            let claim = Claim::ScaledPair { a };
            let start = u64::try_from(&claim.hypothesis_start(64, 4096).unwrap().unwrap()).unwrap();
            let pair = sweep(claim, start, 2500, &c, &cfg).unwrap().0;
            let low = sweep(Claim::ScaledLower { a }, start, 2500, &c, &cfg).unwrap().0;
            let high = sweep(Claim::ScaledUpper { a }, start, 2500, &c, &cfg).unwrap().0;
            let mut union: Vec<u64> = low.into_iter().chain(high).collect();
            union.sort_unstable();
            union.dedup();
            assert_eq!(pair, union, "a={a}");
        }
    }

    #[test]
    fn point_queries_ignore_the_hypothesis_bound() {
        let c = cache();
        let cfg = cfg();
        assert_eq!(
            witness_at(Claim::Breusch, 8, &c, &cfg).unwrap(),
            Some(Witness::PrimeInInterval {
                n: 8,
                interval_hi: Rat::new(99, 8),
                least_prime: 11
            })
        );
        // below the stated bound of 15, yet both windows hold at 8
        assert_eq!(
            witness_at(Claim::ScaledPair { a: 1 }, 8, &c, &cfg).unwrap(),
            Some(Witness::Quad(QuadWitness {
                n: 8,
                p: Some(11),
                q: Some(13),
                r: None,
                s: None
            }))
        );
        assert_eq!(
            witness_at(Claim::KInterval { k: 4 }, 2, &c, &cfg).unwrap(),
            None
        );
        match witness_at(Claim::Dusart, 3275, &c, &cfg).unwrap() {
            Some(Witness::PrimeInInterval { least_prime, .. }) => assert_eq!(least_prime, 3299),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(witness_at(Claim::Dusart, 1, &c, &cfg).is_err());
        match witness_at(
            Claim::ThresholdFloor {
                kind: ThresholdKind::LowerWindow,
            },
            2,
            &c,
            &cfg,
        )
        .unwrap()
        {
            Some(Witness::ThresholdFloor { m, lo }) => {
                assert_eq!(m, 2);
                assert!(lo > Rat::new(72, 5));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn onset_scan_matches_frozen_values() {
        let c = cache();
        let cfg = cfg();
        assert_eq!(
            empirical_min_n(Claim::Breusch, 1000, &c, &cfg).unwrap(),
            Some(1)
        );
        assert_eq!(
            empirical_min_n(Claim::ScaledPair { a: 1 }, 100, &c, &cfg).unwrap(),
            Some(8)
        );
        assert_eq!(
            empirical_min_n(Claim::KInterval { k: 4 }, 100, &c, &cfg).unwrap(),
            Some(3)
        );
        // the last bare failure sits just under the stated hypothesis
        assert_eq!(
            empirical_min_n(Claim::Dusart, 10_000, &c, &cfg).unwrap(),
            Some(3275)
        );
        assert_eq!(
            empirical_min_n(Claim::DusartInBreusch, 5000, &c, &cfg).unwrap(),
            Some(8)
        );
    }

    #[test]
    fn onset_scan_reports_failure_at_horizon_as_none() {
        let c = cache();
        let cfg = cfg();
        // k=6 fails at 4, so a horizon of 4 cannot admit any onset
        assert_eq!(
            empirical_min_n(Claim::KInterval { k: 6 }, 4, &c, &cfg).unwrap(),
            None
        );
    }

    #[test]
    fn invalid_ranges_are_rejected() {
        let c = cache();
        let cfg = cfg();
        assert!(verify_claim(Claim::Breusch, 0, 10, &c, &cfg).is_err());
        assert!(verify_claim(Claim::Breusch, 10, 5, &c, &cfg).is_err());
        assert!(verify_claim(Claim::KInterval { k: 9 }, 1, 10, &c, &cfg).is_err());
        let mut small = cfg.clone();
        small.max_range = 100;
        assert!(matches!(
            verify_claim(Claim::Breusch, 1, 1000, &c, &small),
            Err(Error::RangeTooLarge { .. })
        ));
        assert!(empirical_min_n(
            Claim::ThresholdFloor {
                kind: ThresholdKind::LowerWindow
            },
            64,
            &c,
            &cfg
        )
        .is_err());
    }
}
