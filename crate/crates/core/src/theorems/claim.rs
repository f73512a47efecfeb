//! Claim catalog: every verifiable statement, with parameters and the
//! hypothesis bound its sweep starts from.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exactmath::{threshold_start, ThresholdKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    /// A prime in [n, 9(n+3)/8] for every positive n.
    Breusch,
    /// A prime in [n, (1 + 1/(2 ln^2 n)) n] for every n >= 3275.
    Dusart,
    /// The logarithmic interval sits inside [n, 9(n+3)/8] for every n >= 8.
    DusartInBreusch,
    /// A prime p with n < a p < 3n/2 for every n > 12a.
    ScaledLower { a: u64 },
    /// A prime q with 3n/2 < a q < 2n for every n > 72a/5.
    ScaledUpper { a: u64 },
    /// Both scaled primes at once for every n > 72a/5.
    ScaledPair { a: u64 },
    /// The scaled pair plus an unscaled pair for every n > 72a/5; needs a >= 2.
    ScaledFour { a: u64 },
    /// A perfect m-th power strictly inside (n, 3n/2) past the lower-window threshold.
    PowerLower { m: u32 },
    /// A perfect m-th power strictly inside (3n/2, 2n) past the upper-window threshold.
    PowerUpper { m: u32 },
    /// An m-th power in (n, 3n/2) and a prime in (3n/2, 2n), together.
    PowerThenPrime { m: u32 },
    /// A prime in (n, 3n/2) and an m-th power in (3n/2, 2n), together.
    PrimeThenPower { m: u32 },
    /// A prime in closed [kn, (k+1)n] for every n outside the known exception set.
    KInterval { k: u32 },
    /// The window threshold exceeds 72/5 for every degree m (sweeps m, not n).
    ThresholdFloor { kind: ThresholdKind },
}

impl Claim {
    pub fn name(&self) -> &'static str {
        match self {
            Claim::Breusch => "breusch",
            Claim::Dusart => "dusart",
            Claim::DusartInBreusch => "dusart-in-breusch",
            Claim::ScaledLower { .. } => "scaled-lower",
            Claim::ScaledUpper { .. } => "scaled-upper",
            Claim::ScaledPair { .. } => "scaled-pair",
            Claim::ScaledFour { .. } => "scaled-four",
            Claim::PowerLower { .. } => "power-lower",
            Claim::PowerUpper { .. } => "power-upper",
            Claim::PowerThenPrime { .. } => "power-then-prime",
            Claim::PrimeThenPower { .. } => "prime-then-power",
            Claim::KInterval { .. } => "kinterval",
            Claim::ThresholdFloor { kind } => match kind {
                ThresholdKind::LowerWindow => "threshold-lower",
                ThresholdKind::UpperWindow => "threshold-upper",
            },
        }
    }

    /// Builds a claim from a name plus optional parameters, rejecting both
    /// missing and extraneous ones.
    pub fn from_parts(name: &str, a: Option<u64>, m: Option<u32>, k: Option<u32>) -> Result<Claim> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        let need_a = |a: Option<u64>| {
            a.ok_or_else(|| Error::InvalidInput(format!("claim {name} needs a scaling factor a")))
        };
        let need_m = |m: Option<u32>| {
            m.ok_or_else(|| Error::InvalidInput(format!("claim {name} needs a degree m")))
        };
        let claim = match name {
            "breusch" => Claim::Breusch,
            "dusart" => Claim::Dusart,
            "dusart-in-breusch" => Claim::DusartInBreusch,
            "scaled-lower" => Claim::ScaledLower { a: need_a(a)? },
            "scaled-upper" => Claim::ScaledUpper { a: need_a(a)? },
            "scaled-pair" => Claim::ScaledPair { a: need_a(a)? },
            "scaled-four" => Claim::ScaledFour { a: need_a(a)? },
            "power-lower" => Claim::PowerLower { m: need_m(m)? },
            "power-upper" => Claim::PowerUpper { m: need_m(m)? },
            "power-then-prime" => Claim::PowerThenPrime { m: need_m(m)? },
            "prime-then-power" => Claim::PrimeThenPower { m: need_m(m)? },
            "kinterval" => Claim::KInterval {
                k: k.ok_or_else(|| {
                    Error::InvalidInput("claim kinterval needs an interval factor k".into())
                })?,
            },
            "threshold-lower" => Claim::ThresholdFloor {
                kind: ThresholdKind::LowerWindow,
            },
            "threshold-upper" => Claim::ThresholdFloor {
                kind: ThresholdKind::UpperWindow,
            },
            other => return bad(format!("unknown claim: {other}")),
        };
        if a.is_some() && claim.a().is_none() {
            return bad(format!("claim {name} takes no scaling factor a"));
        }
        if m.is_some() && claim.m().is_none() {
            return bad(format!("claim {name} takes no degree m"));
        }
        if k.is_some() && claim.k().is_none() {
            return bad(format!("claim {name} takes no interval factor k"));
        }
        claim.validate()?;
        Ok(claim)
    }

    pub fn a(&self) -> Option<u64> {
        match *self {
            Claim::ScaledLower { a }
            | Claim::ScaledUpper { a }
            | Claim::ScaledPair { a }
            | Claim::ScaledFour { a } => Some(a),
            _ => None,
        }
    }

    pub fn m(&self) -> Option<u32> {
        match *self {
            Claim::PowerLower { m }
            | Claim::PowerUpper { m }
            | Claim::PowerThenPrime { m }
            | Claim::PrimeThenPower { m } => Some(m),
            _ => None,
        }
    }

    pub fn k(&self) -> Option<u32> {
        match *self {
            Claim::KInterval { k } => Some(k),
            _ => None,
        }
    }

    pub fn threshold_kind(&self) -> Option<ThresholdKind> {
        match *self {
            Claim::PowerLower { .. } | Claim::PowerThenPrime { .. } => {
                Some(ThresholdKind::LowerWindow)
            }
            Claim::PowerUpper { .. } | Claim::PrimeThenPower { .. } => {
                Some(ThresholdKind::UpperWindow)
            }
            Claim::ThresholdFloor { kind } => Some(kind),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Claim::ScaledLower { a }
            | Claim::ScaledUpper { a }
            | Claim::ScaledPair { a } => {
                if a < 1 {
                    return Err(Error::InvalidInput("scaling factor a must be positive".into()));
                }
            }
            Claim::ScaledFour { a } => {
                if a < 2 {
                    return Err(Error::InvalidInput(
                        "the four-prime claim needs a greater than 1".into(),
                    ));
                }
            }
            Claim::PowerLower { m }
            | Claim::PowerUpper { m }
            | Claim::PowerThenPrime { m }
            | Claim::PrimeThenPower { m } => {
                if m < 1 {
                    return Err(Error::InvalidInput("degree m must be positive".into()));
                }
            }
            Claim::KInterval { k } => {
                if !(2..=7).contains(&k) {
                    return Err(Error::InvalidInput(
                        "interval factor k must lie in 2..=7".into(),
                    ));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// True when the sweep variable is a degree m rather than an integer n.
    pub fn sweeps_degree(&self) -> bool {
        matches!(self, Claim::ThresholdFloor { .. })
    }

    /// Least n the claim's hypothesis admits, when it has one. The power
    /// claims resolve their irrational threshold to the least integer above
    /// it; the others are exact rational bounds.
    pub fn hypothesis_start(&self, bits: u32, precision_cap: u32) -> Result<Option<BigUint>> {
        let start = match *self {
            Claim::Breusch | Claim::KInterval { .. } | Claim::ThresholdFloor { .. } => None,
            Claim::Dusart => Some(BigUint::from(3275u32)),
            Claim::DusartInBreusch => Some(BigUint::from(8u32)),
            Claim::ScaledLower { a } => Some(BigUint::from(12 * a as u128 + 1)),
            Claim::ScaledUpper { a } | Claim::ScaledPair { a } | Claim::ScaledFour { a } => {
                Some(BigUint::from(72 * a as u128 / 5 + 1))
            }
            Claim::PowerLower { m }
            | Claim::PowerUpper { m }
            | Claim::PowerThenPrime { m }
            | Claim::PrimeThenPower { m } => {
                let kind = self.threshold_kind().expect("power claims have a kind");
                Some(threshold_start(kind, m, bits, precision_cap)?)
            }
        };
        Ok(start)
    }

    /// The finitely many n the claim itself excludes.
    pub fn known_exceptions(&self) -> &'static [u64] {
        match *self {
            Claim::KInterval { k: 4 } => &[2],
            Claim::KInterval { k: 6 } => &[4],
            Claim::KInterval { k: 7 } => &[2],
            _ => &[],
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        if let Some(a) = self.a() {
            write!(f, "(a={a})")?;
        }
        if let Some(m) = self.m() {
            write!(f, "(m={m})")?;
        }
        if let Some(k) = self.k() {
            write!(f, "(k={k})")?;
        }
        Ok(())
    }
}
