//! Deterministic primality for u64 and segmented sieving over windows.
//!
//! `is_prime` is exact for the full u64 range via a fixed Miller-Rabin
//! witness set. `PrimeCache` answers window queries by sieving with cached
//! base primes and falls back to per-survivor `is_prime` checks when a
//! window reaches past the square of the base bound.

use crate::error::{Error, Result};
use crate::intervals::IntervalQ;

/// Witnesses certifying Miller-Rabin for every n < 2^64.
const WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Exact primality test for any u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &WITNESSES {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sizing knobs for the segmented sieve.
#[derive(Clone, Copy, Debug)]
pub struct PrimeCacheConfig {
    /// Base primes are sieved up to this bound once and reused.
    pub base_bound: u64,
    /// Windows wider than a segment are sieved in slices of this width.
    pub segment_width: u64,
    /// Refuses window queries wider than this instead of thrashing memory.
    pub range_width_cap: u64,
}

impl Default for PrimeCacheConfig {
    fn default() -> Self {
        PrimeCacheConfig {
            base_bound: 1 << 20,
            segment_width: 1 << 20,
            range_width_cap: 1 << 28,
        }
    }
}

/// Reusable sieve state: base primes plus scratch for window queries.
pub struct PrimeCache {
    config: PrimeCacheConfig,
    base_primes: Vec<u64>,
}

impl PrimeCache {
    pub fn new(config: PrimeCacheConfig) -> Self {
        assert!(config.base_bound >= 4, "base bound too small to sieve with");
        assert!(config.segment_width >= 64, "degenerate segment width");
        let base_primes = simple_sieve(config.base_bound);
        PrimeCache {
            config,
            base_primes,
        }
    }

    pub fn with_defaults() -> Self {
        PrimeCache::new(PrimeCacheConfig::default())
    }

    pub fn config(&self) -> PrimeCacheConfig {
        self.config
    }

    /// Primes in [lo, hi], ascending. Empty when lo > hi.
    pub fn primes_in_range(&self, lo: u64, hi: u64) -> Result<Vec<u64>> {
        if lo > hi {
            return Ok(Vec::new());
        }
        let width = hi - lo + 1;
        if width as u128 > self.config.range_width_cap as u128 {
            return Err(Error::RangeTooLarge {
                what: "prime window",
                requested: width as u128,
                cap: self.config.range_width_cap as u128,
            });
        }
        let mut out = Vec::new();
        self.for_each_prime(lo, hi, |p| {
            out.push(p);
            true
        });
        Ok(out)
    }

    /// Least prime p with lo <= p <= hi.
    pub fn least_prime_in_range(&self, lo: u64, hi: u64) -> Option<u64> {
        if lo > hi {
            return None;
        }
        let mut found = None;
        self.for_each_prime(lo, hi, |p| {
            found = Some(p);
            false
        });
        found
    }

    /// Least prime inside a rational interval, honoring open endpoints.
    pub fn least_prime_in(&self, iv: &IntervalQ) -> Result<Option<u64>> {
        let Some((lo_int, hi_int)) = iv.integer_bounds() else {
            return Ok(None);
        };
        let lo = lo_int.max(2u64.into());
        let hi = hi_int;
        if lo > hi {
            return Ok(None);
        }
        let lo: u64 = lo
            .try_into()
            .map_err(|_| Error::InvalidInput("interval endpoint exceeds u64".into()))?;
        let hi: u64 = hi
            .try_into()
            .map_err(|_| Error::InvalidInput("interval endpoint exceeds u64".into()))?;
        Ok(self.least_prime_in_range(lo, hi))
    }

    /// Streams primes in [lo, hi] ascending; the visitor returns false to stop.
    pub(crate) fn for_each_prime<F: FnMut(u64) -> bool>(&self, lo: u64, hi: u64, mut visit: F) {
        if lo > hi {
            return;
        }
        let mut seg_lo = lo;
        loop {
            let seg_hi = seg_lo
                .saturating_add(self.config.segment_width - 1)
                .min(hi);
            if !self.sieve_segment(seg_lo, seg_hi, &mut visit) {
                return;
            }
            if seg_hi == hi {
                return;
            }
            seg_lo = seg_hi + 1;
        }
    }

    fn sieve_segment<F: FnMut(u64) -> bool>(&self, lo: u64, hi: u64, visit: &mut F) -> bool {
        let len = (hi - lo + 1) as usize;
        let mut composite = vec![false; len];
        if lo == 0 {
            composite[0] = true;
            if len > 1 {
                composite[1] = true;
            }
        } else if lo == 1 {
            composite[0] = true;
        }
        for &p in &self.base_primes {
            if let Some(psq) = p.checked_mul(p) {
                if psq > hi {
                    break;
                }
                let Some(first_multiple) = lo.div_ceil(p).checked_mul(p) else {
                    continue;
                };
                let mut start = psq.max(first_multiple);
                while start <= hi {
                    composite[(start - lo) as usize] = true;
                    match start.checked_add(p) {
                        Some(next) => start = next,
                        None => break,
                    }
                }
            } else {
                break;
            }
        }
        // base primes only certify up to base_bound^2; past that, survivors
        // get an exact per-number check
        let certified = self
            .config
            .base_bound
            .checked_mul(self.config.base_bound)
            .unwrap_or(u64::MAX);
        for (i, &c) in composite.iter().enumerate() {
            if c {
                continue;
            }
            let n = lo + i as u64;
            if n > certified && !is_prime(n) {
                continue;
            }
            if !visit(n) {
                return false;
            }
        }
        true
    }
}

fn simple_sieve(bound: u64) -> Vec<u64> {
    let bound = bound as usize;
    let mut composite = vec![false; bound + 1];
    let mut primes = Vec::new();
    for n in 2..=bound {
        if composite[n] {
            continue;
        }
        primes.push(n as u64);
        let mut multiple = n * n;
        while multiple <= bound {
            composite[multiple] = true;
            multiple += n;
        }
    }
    primes
}
