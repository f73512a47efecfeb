//! Claim verification: deterministic sweeps that produce reports carrying
//! counterexamples and independently recheckable witnesses.

mod claim;
mod kernels;
mod report;
mod sweep;

pub use claim::Claim;
pub use report::{QuadWitness, Status, VerificationReport, Witness};
pub use sweep::{empirical_min_n, verify_claim, witness_at, SweepConfig};
