//! Rational-endpoint intervals and perfect-power queries inside them.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::threshold::DEFAULT_PRECISION_CAP;
use crate::exactmath::{ceil_root_big, ln_enclosure, Rat};

/// Interval with exact rational endpoints and per-endpoint openness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalQ {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl IntervalQ {
    pub fn new(lo: Rat, hi: Rat, lo_open: bool, hi_open: bool) -> Result<Self> {
        if lo > hi || (lo == hi && (lo_open || hi_open)) {
            return Err(Error::InvalidInput(format!(
                "interval [{lo}, {hi}] is empty or reversed"
            )));
        }
        Ok(IntervalQ {
            lo,
            hi,
            lo_open,
            hi_open,
        })
    }

    pub fn closed(lo: Rat, hi: Rat) -> Self {
        Self::new(lo, hi, false, false).expect("closed interval needs lo <= hi")
    }

    pub fn open(lo: Rat, hi: Rat) -> Self {
        Self::new(lo, hi, true, true).expect("open interval needs lo < hi")
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = if self.lo_open {
            x > &self.lo
        } else {
            x >= &self.lo
        };
        let below = if self.hi_open {
            x < &self.hi
        } else {
            x <= &self.hi
        };
        above && below
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Least and greatest integers admitted by the endpoints, or None when
    /// the interval holds no integer.
    pub fn integer_bounds(&self) -> Option<(BigInt, BigInt)> {
        let least = if self.lo_open {
            self.lo.floor_int() + 1
        } else {
            self.lo.ceil_int()
        };
        let greatest = if self.hi_open {
            self.hi.ceil_int() - 1
        } else {
            self.hi.floor_int()
        };
        if least > greatest {
            None
        } else {
            Some((least, greatest))
        }
    }
}

impl fmt::Display for IntervalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_open { "(" } else { "[" };
        let close = if self.hi_open { ")" } else { "]" };
        write!(
            f,
            "{}{}, {}{}",
            open,
            self.lo.display_pretty(),
            self.hi.display_pretty(),
            close
        )
    }
}

/// A perfect power a^m caught strictly inside an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerWitness {
    pub a: BigUint,
    pub m: u32,
    pub value: BigUint,
}

/// Closed interval [n, 9(n+3)/8].
pub fn breusch_interval(n: u64) -> IntervalQ {
    assert!(n >= 1, "defined for positive n");
    let hi = Rat::new(BigInt::from(9u32) * BigInt::from(n as u128 + 3), 8);
    IntervalQ::closed(Rat::from(n), hi)
}

/// Certified sandwich of [n, (1 + 1/(2 ln^2 n)) n]: a prime in `inner` is
/// provably in the true interval, and nothing outside `outer` can be.
pub fn dusart_interval_enclosure(n: u64, bits: u32) -> (IntervalQ, IntervalQ) {
    assert!(n >= 2, "ln n must be positive");
    let l = ln_enclosure(n, bits);
    let nq = Rat::from(n);
    let two = Rat::from(2u64);
    let inner_hi = &nq + &nq / (&two * &l.hi * &l.hi);
    let outer_hi = &nq + &nq / (&two * &l.lo * &l.lo);
    (
        IntervalQ::closed(nq.clone(), inner_hi),
        IntervalQ::closed(nq, outer_hi),
    )
}

/// Whether [n, (1 + 1/(2 ln^2 n)) n] provably sits inside [n, 9(n+3)/8],
/// refining precision internally up to the default cap.
pub fn breusch_contains_dusart(n: u64, bits: u32) -> Result<bool> {
    breusch_contains_dusart_capped(n, bits, DEFAULT_PRECISION_CAP)
}

pub fn breusch_contains_dusart_capped(n: u64, bits: u32, cap: u32) -> Result<bool> {
    assert!(n >= 8, "containment is only claimed from n = 8 on");
    let breusch_hi = breusch_interval(n).hi;
    let mut work = bits.max(4);
    loop {
        let (inner, outer) = dusart_interval_enclosure(n, work);
        if outer.hi < breusch_hi {
            return Ok(true);
        }
        if inner.hi >= breusch_hi {
            return Ok(false);
        }
        if work >= cap {
            return Err(Error::Indeterminate {
                context: format!("containment of the logarithmic interval at n = {n}"),
                bits: work,
                cap,
            });
        }
        work = work.saturating_mul(2).min(cap);
    }
}

/// Least perfect m-th power strictly inside (lo, hi), if any.
pub fn power_in_open(lo: &Rat, hi: &Rat, m: u32) -> Option<PowerWitness> {
    assert!(m >= 1, "degree must be positive");
    assert!(!lo.is_negative() && lo < hi, "need 0 <= lo < hi");
    // least integer strictly above lo; any a^m below it fails the lower bound
    let target: BigUint = (lo.floor_int() + BigInt::one())
        .try_into()
        .expect("floor of a nonnegative rational");
    let a = ceil_root_big(&target, m).max(BigUint::one());
    let value = (&a).pow(m);
    if &Rat::from(value.clone()) < hi {
        Some(PowerWitness { a, m, value })
    } else {
        None
    }
}
