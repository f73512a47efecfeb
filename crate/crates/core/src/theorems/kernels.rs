//! Per-chunk verification kernels. Each is a pure function of its chunk
//! bounds, so merged sweep output is identical for any worker count or
//! chunk layout.

use crate::error::{Error, Result};
use crate::exactmath::{floor_root, ln_enclosure, pow_saturating, threshold_enclosure_capped, Rat};
use crate::exactmath::ThresholdKind;
use crate::intervals::{breusch_interval, dusart_interval_enclosure};
use crate::primality::PrimeCache;
use crate::theorems::claim::Claim;
use crate::theorems::report::{QuadWitness, Witness};
use crate::theorems::sweep::{ChunkOutcome, SweepCtx};

/// Window slack beyond the chunk for the streaming least-prime scans. Gaps
/// this wide never show up at desk scales; when a window still runs dry the
/// stream falls back to an explicit bounded search, so correctness does not
/// rest on the constant.
const GAP_MARGIN: u64 = 4096;

pub(crate) fn run_chunk(claim: Claim, lo: u64, hi: u64, ctx: &SweepCtx) -> Result<ChunkOutcome> {
    match claim {
        Claim::Breusch => breusch_chunk(lo, hi, ctx),
        Claim::Dusart => dusart_chunk(lo, hi, ctx),
        Claim::DusartInBreusch => containment_chunk(lo, hi, ctx),
        Claim::ScaledLower { a } => scaled_chunk(a, true, false, false, lo, hi, ctx),
        Claim::ScaledUpper { a } => scaled_chunk(a, false, true, false, lo, hi, ctx),
        Claim::ScaledPair { a } => scaled_chunk(a, true, true, false, lo, hi, ctx),
        Claim::ScaledFour { a } => scaled_chunk(a, true, true, true, lo, hi, ctx),
        Claim::PowerLower { m } => power_chunk(m, true, false, lo, hi, ctx),
        Claim::PowerUpper { m } => power_chunk(m, false, false, lo, hi, ctx),
        Claim::PowerThenPrime { m } => power_chunk(m, true, true, lo, hi, ctx),
        Claim::PrimeThenPower { m } => power_chunk(m, false, true, lo, hi, ctx),
        Claim::KInterval { k } => kinterval_chunk(k, lo, hi, ctx),
        Claim::ThresholdFloor { kind } => threshold_chunk(kind, lo, hi, ctx),
    }
}

/// Streaming least-prime queries over a pre-sieved window, for nondecreasing
/// query points at or above the window start.
struct LeastPrimeStream<'a> {
    primes: Vec<u64>,
    idx: usize,
    window_hi: u64,
    cache: &'a PrimeCache,
}

impl<'a> LeastPrimeStream<'a> {
    fn new(cache: &'a PrimeCache, lo: u64, hi: u64) -> Result<Self> {
        Ok(LeastPrimeStream {
            primes: cache.primes_in_range(lo, hi)?,
            idx: 0,
            window_hi: hi,
            cache,
        })
    }

    /// Least prime in [min, bound], or None if there is none. `min` must be
    /// nondecreasing across calls and never below the window start; the
    /// search resumes past the window when it runs dry.
    fn least_in(&mut self, min: u64, bound: u64) -> Option<u64> {
        while self.idx < self.primes.len() && self.primes[self.idx] < min {
            self.idx += 1;
        }
        if let Some(&p) = self.primes.get(self.idx) {
            return if p <= bound { Some(p) } else { None };
        }
        if self.window_hi >= bound {
            return None;
        }
        self.cache
            .least_prime_in_range(min.max(self.window_hi + 1), bound)
    }
}

fn floor_3x_over(x: u64, d: u128) -> u64 {
    ((3 * x as u128) / d) as u64
}

fn breusch_chunk(lo: u64, hi: u64, ctx: &SweepCtx) -> Result<ChunkOutcome> {
    let mut out = ChunkOutcome::default();
    let mut stream = LeastPrimeStream::new(ctx.cache, lo, hi.saturating_add(GAP_MARGIN))?;
    for n in lo..=hi {
        // greatest integer under the closed endpoint 9(n+3)/8
        let bound = ((9 * n as u128 + 27) / 8) as u64;
        match stream.least_in(n, bound) {
            Some(p) => {
                if ctx.sampler.hit(n) {
                    out.witnesses.push(Witness::PrimeInInterval {
                        n,
                        interval_hi: breusch_interval(n).hi,
                        least_prime: p,
                    });
                }
            }
            None => out.counterexamples.push(n),
        }
    }
    Ok(out)
}

/// Certified dyadic bounds on 1/(2 ln^2 x) for every integer x in a block.
/// Blocks are fixed sub-divisions of each octave, independent of chunk
/// layout.
struct FactorBlock {
    hi_n: u64,
    /// floor(2^63 f_lo): scaling by this and shifting never overstates f.
    c_num: u64,
    /// ceil(2^63 f_hi): scaling by this and shifting never understates f.
    d_num: u64,
}

impl FactorBlock {
    fn for_n(n: u64, bits: u32) -> FactorBlock {
        debug_assert!(n >= 2);
        let bits = bits.max(16);
        let lg = 63 - n.leading_zeros();
        let width = 1u64 << lg.saturating_sub(10);
        let base = 1u64 << lg;
        let lo_n = base + (n - base) / width * width;
        let hi_n = lo_n + width;
        // ln is increasing, so the block's top end minimizes the factor and
        // the bottom end maximizes it
        let top = ln_enclosure(hi_n, bits).hi;
        let bottom = ln_enclosure(lo_n, bits).lo;
        let factor_lo = (Rat::from(2u64) * &top * &top).recip();
        let factor_hi = (Rat::from(2u64) * &bottom * &bottom).recip();
        FactorBlock {
            hi_n,
            c_num: dyadic63_floor(&factor_lo),
            d_num: dyadic63_ceil(&factor_hi),
        }
    }
}

fn dyadic63_floor(x: &Rat) -> u64 {
    u64::try_from((x * Rat::pow2(63)).floor_int()).unwrap_or(u64::MAX)
}

fn dyadic63_ceil(x: &Rat) -> u64 {
    u64::try_from((x * Rat::pow2(63)).ceil_int()).unwrap_or(u64::MAX)
}

/// n (1 + num/2^63), the exact rational behind a dyadic block bound.
fn dyadic_bound(n: u64, num: u64) -> Rat {
    Rat::from(n) * (Rat::one() + Rat::new(num, 1i128 << 63))
}

enum PointCheck {
    Pass(Rat),
    Fail,
    Indeterminate,
}

/// Decides p against the logarithmic endpoint of n exactly, refining the
/// enclosure until one side is certain or the precision cap is reached.
fn settle_dusart_point(n: u64, p: u64, bits: u32, cap: u32) -> PointCheck {
    let mut bits = bits.max(16);
    let p_rat = Rat::from(p);
    loop {
        let (inner, outer) = dusart_interval_enclosure(n, bits);
        if p_rat <= inner.hi {
            return PointCheck::Pass(inner.hi);
        }
        if p_rat > outer.hi {
            return PointCheck::Fail;
        }
        if bits >= cap {
            return PointCheck::Indeterminate;
        }
        bits = bits.saturating_mul(2).min(cap);
    }
}

fn dusart_chunk(lo: u64, hi: u64, ctx: &SweepCtx) -> Result<ChunkOutcome> {
    debug_assert!(lo >= 2);
    let mut out = ChunkOutcome::default();
    let mut stream = LeastPrimeStream::new(ctx.cache, lo, hi.saturating_add(GAP_MARGIN))?;
    let mut block: Option<FactorBlock> = None;
    for n in lo..=hi {
        if block.as_ref().map_or(true, |b| n >= b.hi_n) {
            block = Some(FactorBlock::for_n(n, ctx.cfg.bits));
        }
        let b = block.as_ref().expect("block just ensured");
        let inner_int = n + ((n as u128 * b.c_num as u128) >> 63) as u64;
        let outer_frac = (n as u128 * b.d_num as u128 + ((1u128 << 63) - 1)) >> 63;
        let outer_int = u64::try_from(n as u128 + outer_frac)
            .expect("outer endpoint fits u64 under the domain guard");
        match stream.least_in(n, outer_int) {
            None => out.counterexamples.push(n),
            Some(p) if p <= inner_int => {
                if ctx.sampler.hit(n) {
                    out.witnesses.push(Witness::PrimeInInterval {
                        n,
                        interval_hi: dyadic_bound(n, b.c_num),
                        least_prime: p,
                    });
                }
            }
            Some(p) => match settle_dusart_point(n, p, ctx.cfg.bits, ctx.cfg.precision_cap) {
                PointCheck::Pass(bound) => {
                    if ctx.sampler.hit(n) {
                        out.witnesses.push(Witness::PrimeInInterval {
                            n,
                            interval_hi: bound,
                            least_prime: p,
                        });
                    }
                }
                PointCheck::Fail => out.counterexamples.push(n),
                PointCheck::Indeterminate => out.indeterminate.push(n),
            },
        }
    }
    Ok(out)
}

/// Decides whether the logarithmic interval of n sits inside the wide one,
/// refining until certain or capped.
fn settle_containment_point(n: u64, bits: u32, cap: u32) -> PointCheck {
    let breusch_hi = breusch_interval(n).hi;
    let mut bits = bits.max(16);
    loop {
        let (inner, outer) = dusart_interval_enclosure(n, bits);
        if outer.hi < breusch_hi {
            return PointCheck::Pass(outer.hi);
        }
        if inner.hi >= breusch_hi {
            return PointCheck::Fail;
        }
        if bits >= cap {
            return PointCheck::Indeterminate;
        }
        bits = bits.saturating_mul(2).min(cap);
    }
}

fn containment_chunk(lo: u64, hi: u64, ctx: &SweepCtx) -> Result<ChunkOutcome> {
    debug_assert!(lo >= 8);
    let mut out = ChunkOutcome::default();
    let mut n = lo;
    while n <= hi {
        let b = FactorBlock::for_n(n, ctx.cfg.bits);
        let seg_hi = hi.min(b.hi_n - 1);
        // d <= 2^60 means 1 + d/2^63 <= 9/8, so every integer x here has
        // x (1 + f(x)) < x (1 + d/2^63) <= 9x/8, strictly under 9(x+3)/8
        if b.d_num <= 1 << 60 {
            ctx.sampler.for_each_in(n, seg_hi, |x| {
                out.witnesses.push(Witness::Containment {
                    n: x,
                    dusart_hi_bound: dyadic_bound(x, b.d_num),
                    breusch_hi: breusch_interval(x).hi,
                });
            });
        } else {
            for x in n..=seg_hi {
                match settle_containment_point(x, ctx.cfg.bits, ctx.cfg.precision_cap) {
                    PointCheck::Pass(bound) => {
                        if ctx.sampler.hit(x) {
                            out.witnesses.push(Witness::Containment {
                                n: x,
                                dusart_hi_bound: bound,
                                breusch_hi: breusch_interval(x).hi,
                            });
                        }
                    }
                    PointCheck::Fail => out.counterexamples.push(x),
                    PointCheck::Indeterminate => out.indeterminate.push(x),
                }
            }
        }
        n = seg_hi + 1;
    }
    Ok(out)
}

/// Least prime p with n < a p < 3n/2, if any.
fn scaled_low_prime(s: &mut LeastPrimeStream<'_>, n: u64, a: u64) -> Option<u64> {
    let p_min = n / a + 1;
    let p_max = ((3 * n as u128 - 1) / (2 * a as u128)) as u64;
    if p_max < p_min {
        return None;
    }
    s.least_in(p_min, p_max)
}

/// Least prime q with 3n/2 < a q < 2n, if any.
fn scaled_high_prime(s: &mut LeastPrimeStream<'_>, n: u64, a: u64) -> Option<u64> {
    let q_min = floor_3x_over(n, 2 * a as u128) + 1;
    let q_max = ((2 * n as u128 - 1) / a as u128) as u64;
    if q_max < q_min {
        return None;
    }
    s.least_in(q_min, q_max)
}

#[allow(clippy::too_many_arguments)]
fn scaled_chunk(
    a: u64,
    want_p: bool,
    want_q: bool,
    want_rs: bool,
    lo: u64,
    hi: u64,
    ctx: &SweepCtx,
) -> Result<ChunkOutcome> {
    let cache = ctx.cache;
    let mut out = ChunkOutcome::default();
    let mut sp = if want_p {
        Some(LeastPrimeStream::new(
            cache,
            lo / a + 1,
            (hi / a + 1).saturating_add(GAP_MARGIN),
        )?)
    } else {
        None
    };
    let mut sq = if want_q {
        Some(LeastPrimeStream::new(
            cache,
            floor_3x_over(lo, 2 * a as u128) + 1,
            floor_3x_over(hi, 2 * a as u128).saturating_add(1 + GAP_MARGIN),
        )?)
    } else {
        None
    };
    let mut sr = if want_rs {
        Some(LeastPrimeStream::new(
            cache,
            lo + 1,
            hi.saturating_add(1 + GAP_MARGIN),
        )?)
    } else {
        None
    };
    let mut ss = if want_rs {
        Some(LeastPrimeStream::new(
            cache,
            floor_3x_over(lo, 2) + 1,
            floor_3x_over(hi, 2).saturating_add(1 + GAP_MARGIN),
        )?)
    } else {
        None
    };
    for n in lo..=hi {
        let mut w = QuadWitness {
            n,
            p: None,
            q: None,
            r: None,
            s: None,
        };
        let mut ok = true;
        if let Some(s) = sp.as_mut() {
            w.p = scaled_low_prime(s, n, a);
            ok &= w.p.is_some();
        }
        if let Some(s) = sq.as_mut() {
            w.q = scaled_high_prime(s, n, a);
            ok &= w.q.is_some();
        }
        if let Some(s) = sr.as_mut() {
            w.r = scaled_low_prime(s, n, 1);
            ok &= w.r.is_some();
        }
        if let Some(s) = ss.as_mut() {
            w.s = scaled_high_prime(s, n, 1);
            ok &= w.s.is_some();
        }
        if !ok {
            out.counterexamples.push(n);
        } else if ctx.sampler.hit(n) {
            out.witnesses.push(Witness::Quad(w));
        }
    }
    Ok(out)
}

/// Least m-th power strictly above n, when it also stays under 3n/2.
fn lower_power(n: u64, m: u32) -> Option<(u64, u64)> {
    let a = floor_root(n, m) + 1;
    let v = pow_saturating(a, m);
    (v <= (3 * n as u128 - 1) / 2).then(|| (a, v as u64))
}

/// Least m-th power strictly above 3n/2, when it also stays under 2n.
fn upper_power(n: u64, m: u32) -> Option<(u64, u64)> {
    let a = floor_root(floor_3x_over(n, 2), m) + 1;
    let v = pow_saturating(a, m);
    (v <= 2 * n as u128 - 1).then(|| (a, v as u64))
}

fn power_chunk(
    m: u32,
    lower: bool,
    with_prime: bool,
    lo: u64,
    hi: u64,
    ctx: &SweepCtx,
) -> Result<ChunkOutcome> {
    let mut out = ChunkOutcome::default();
    let mut stream = if !with_prime {
        None
    } else if lower {
        // the power fills the lower window, so the prime goes above 3n/2
        Some(LeastPrimeStream::new(
            ctx.cache,
            floor_3x_over(lo, 2) + 1,
            floor_3x_over(hi, 2).saturating_add(1 + GAP_MARGIN),
        )?)
    } else {
        Some(LeastPrimeStream::new(
            ctx.cache,
            lo + 1,
            hi.saturating_add(1 + GAP_MARGIN),
        )?)
    };
    for n in lo..=hi {
        let power = if lower {
            lower_power(n, m)
        } else {
            upper_power(n, m)
        };
        let prime = stream.as_mut().map(|s| {
            if lower {
                scaled_high_prime(s, n, 1)
            } else {
                scaled_low_prime(s, n, 1)
            }
        });
        let Some((a, value)) = power else {
            out.counterexamples.push(n);
            continue;
        };
        let found = match prime {
            None => None,
            Some(None) => {
                out.counterexamples.push(n);
                continue;
            }
            Some(Some(p)) => Some(p),
        };
        if ctx.sampler.hit(n) {
            out.witnesses.push(match (found, lower) {
                (None, _) => Witness::PowerOnly { n, a, value },
                (Some(s), true) => Witness::PowerAndPrime { n, a, value, s },
                (Some(r), false) => Witness::PrimeAndPower { n, r, a, value },
            });
        }
    }
    Ok(out)
}

fn kinterval_chunk(k: u32, lo: u64, hi: u64, ctx: &SweepCtx) -> Result<ChunkOutcome> {
    let k = k as u64;
    let mut out = ChunkOutcome::default();
    let mut stream =
        LeastPrimeStream::new(ctx.cache, k * lo, (k * hi).saturating_add(GAP_MARGIN))?;
    for n in lo..=hi {
        let (wlo, whi) = (k * n, (k + 1) * n);
        match stream.least_in(wlo, whi) {
            Some(p) => {
                if ctx.sampler.hit(n) {
                    out.witnesses.push(Witness::KPrime {
                        n,
                        lo: wlo,
                        hi: whi,
                        least_prime: p,
                    });
                }
            }
            None => out.counterexamples.push(n),
        }
    }
    Ok(out)
}

fn threshold_chunk(kind: ThresholdKind, lo: u64, hi: u64, ctx: &SweepCtx) -> Result<ChunkOutcome> {
    let mut out = ChunkOutcome::default();
    let floor = Rat::new(72, 5);
    let three_halves = Rat::new(3, 2);
    for x in lo..=hi {
        let m = x as u32;
        match threshold_enclosure_capped(kind, m, ctx.cfg.bits, ctx.cfg.precision_cap) {
            Ok(enc) => {
                // the hypothesis is nonvacuous only because 2^m > 3/2, so
                // that is checked exactly alongside the floor itself
                let pow_ok = Rat::pow2(m as i64) > three_halves;
                if pow_ok && enc.lo > floor {
                    if ctx.sampler.hit(x) {
                        out.witnesses.push(Witness::ThresholdFloor { m, lo: enc.lo });
                    }
                } else {
                    out.counterexamples.push(x);
                }
            }
            Err(Error::Indeterminate { .. }) => out.indeterminate.push(x),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
