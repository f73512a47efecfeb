//! Exact, exhaustive verification of interval-prime statements: primes in
//! [n, 9(n+3)/8] and in the logarithmic refinement, scaled and perfect-power
//! window variants, and primes between consecutive multiples kn and (k+1)n.
//! All arithmetic is integer or big-rational; irrational endpoints are
//! handled through certified enclosures that refine on demand.

pub mod error;
pub mod exactmath;
pub mod intervals;
pub mod primality;
pub mod theorems;

pub use error::{Error, Result};
pub use exactmath::{Enclosure, Rat, ThresholdKind};
pub use intervals::{IntervalQ, PowerWitness};
pub use primality::{is_prime, PrimeCache, PrimeCacheConfig};
pub use theorems::{
    empirical_min_n, verify_claim, witness_at, Claim, QuadWitness, Status, SweepConfig,
    VerificationReport, Witness,
};
