use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::enclosure::{root_enclosure, Enclosure};
use super::rat::Rat;
use crate::error::{Error, Result};

/// Hard ceiling on working precision; exceeding it turns a question into an
/// explicit indeterminate error instead of a silent guess. Overridable per
/// call site (the CLI wires it to PRIMESPAN_PRECISION_CAP).
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

/// Which scaled sub-window of (n, 2n) a threshold gates.
///
/// `LowerWindow` bounds the least n guaranteeing a perfect m-th power in
/// (n, 3n/2): 14.4 / ((3/2)^(1/m) - 1)^m. `UpperWindow` does the same for
/// (3n/2, 2n): 14.4 / (2^(1/m) - (3/2)^(1/m))^m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdKind {
    LowerWindow,
    UpperWindow,
}

impl ThresholdKind {
    pub fn name(self) -> &'static str {
        match self {
            ThresholdKind::LowerWindow => "lower",
            ThresholdKind::UpperWindow => "upper",
        }
    }
}

/// Certified enclosure of the threshold constant for `kind` at degree `m`,
/// with relative width at most 2^-bits. Exact (zero width) when the roots
/// involved are rational, i.e. at m = 1.
pub fn threshold_enclosure(kind: ThresholdKind, m: u32, bits: u32) -> Result<Enclosure> {
    threshold_enclosure_capped(kind, m, bits, DEFAULT_PRECISION_CAP)
}

pub fn threshold_enclosure_capped(
    kind: ThresholdKind,
    m: u32,
    bits: u32,
    cap: u32,
) -> Result<Enclosure> {
    assert!(m >= 1, "degree must be positive");
    let indeterminate = |work: u32| Error::Indeterminate {
        context: format!(
            "threshold enclosure ({}, m={m}) at {bits} requested bits",
            kind.name()
        ),
        bits: work,
        cap,
    };
    if bits > cap {
        return Err(indeterminate(bits));
    }

    // outward-rounded interval arithmetic over exact rationals; extra
    // working bits absorb the m-fold amplification of root error
    let mut work = bits
        .saturating_add(2 * (32 - m.leading_zeros()))
        .saturating_add(8);
    loop {
        if work > cap {
            return Err(indeterminate(work));
        }
        if let Some(enc) = threshold_attempt(kind, m, bits, work) {
            return Ok(enc);
        }
        work = work.saturating_mul(2);
    }
}

fn threshold_attempt(kind: ThresholdKind, m: u32, bits: u32, work: u32) -> Option<Enclosure> {
    let three_halves = Rat::new(3, 2);
    let r15 = root_enclosure(&three_halves, m, work);
    let (d_lo, d_hi) = match kind {
        ThresholdKind::LowerWindow => {
            let one = Rat::one();
            (&r15.lo - &one, &r15.hi - &one)
        }
        ThresholdKind::UpperWindow => {
            let r2 = root_enclosure(&Rat::from(2u64), m, work);
            (&r2.lo - &r15.hi, &r2.hi - &r15.lo)
        }
    };
    if !d_lo.is_positive() {
        return None;
    }
    let t_lo = d_lo.pow_u(m);
    let t_hi = d_hi.pow_u(m);
    let c = Rat::new(72, 5);
    let lo = &c / &t_hi;
    let hi = &c / &t_lo;

    let width = &hi - &lo;
    let scale = if lo > Rat::one() { lo.clone() } else { Rat::one() };
    if width <= Rat::pow2(-(bits as i64)) * scale {
        Some(Enclosure::new(lo, hi, bits))
    } else {
        None
    }
}

/// Least integer strictly greater than the enclosed value.
///
/// For an exact enclosure this is floor(v) + 1 directly. Otherwise the
/// floors of both bounds must agree; until they do, `refine` is asked for a
/// tighter enclosure at doubled precision, and crossing `cap` yields an
/// indeterminate error rather than a rounded answer.
pub fn min_integer_exceeding<F>(e: Enclosure, mut refine: F, cap: u32) -> Result<BigUint>
where
    F: FnMut(u32) -> Result<Enclosure>,
{
    let mut cur = e;
    loop {
        if cur.is_exact() {
            return positive(cur.lo.floor_int() + 1);
        }
        let fl = cur.lo.floor_int();
        let fh = cur.hi.floor_int();
        if fl == fh {
            // value lies in (lo, hi) within [fl, fl+1), so fl+1 exceeds it
            return positive(fl + 1);
        }
        let next = cur.bits.saturating_mul(2).max(32);
        if next > cap {
            return Err(Error::Indeterminate {
                context: format!(
                    "least integer above enclosure [{}, {}] not separated",
                    cur.lo, cur.hi
                ),
                bits: cur.bits,
                cap,
            });
        }
        cur = refine(next)?;
    }
}

fn positive(v: num_bigint::BigInt) -> Result<BigUint> {
    v.try_into()
        .map_err(|_| Error::InvalidInput("expected a positive result".into()))
}

/// Sweep-start constant: least integer n strictly above the threshold.
pub fn threshold_start(kind: ThresholdKind, m: u32, bits: u32, cap: u32) -> Result<BigUint> {
    let first = threshold_enclosure_capped(kind, m, bits, cap)?;
    min_integer_exceeding(
        first,
        |b| threshold_enclosure_capped(kind, m, b, cap),
        cap,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::enclosure::dyadic_root_floor;
    use num_bigint::BigUint;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn degree_one_is_exact() {
        for kind in [ThresholdKind::LowerWindow, ThresholdKind::UpperWindow] {
            let e = threshold_enclosure(kind, 1, 20).unwrap();
            assert!(e.is_exact());
            assert_eq!(e.lo, rat(144, 5));
        }
    }

    #[test]
    fn degree_two_lower_window() {
        // 14.4/(sqrt(1.5)-1)^2 = 285.0906...
        let e = threshold_enclosure(ThresholdKind::LowerWindow, 2, 20).unwrap();
        assert!(e.lo > Rat::from(285u64));
        assert!(e.hi < rat(1426, 5)); // 285.2
        assert!(e.width() <= Rat::pow2(-20) * &e.hi);

        // algebraic oracle: threshold = 14.4/(2.5 - 2*sqrt(1.5))
        let (slo, shi) = dyadic_root_floor(&BigUint::from(3u32), &BigUint::from(2u32), 2, 60);
        let c = rat(72, 5);
        let two = Rat::from(2u64);
        let oracle_lo = &c / (rat(5, 2) - &two * &slo);
        let oracle_hi = &c / (rat(5, 2) - &two * &shi);
        assert!(e.lo <= oracle_hi && oracle_lo <= e.hi);
    }

    #[test]
    fn degree_two_upper_window() {
        // 14.4/(sqrt(2)-sqrt(1.5))^2 = 401.1322...
        let e = threshold_enclosure(ThresholdKind::UpperWindow, 2, 20).unwrap();
        assert!(e.lo > Rat::from(401u64));
        assert!(e.hi < rat(4013, 10)); // 401.3
        // algebraic oracle: threshold = 14.4/(3.5 - 2*sqrt(3))
        let (slo, shi) = dyadic_root_floor(&BigUint::from(3u32), &BigUint::from(1u32), 2, 60);
        let c = rat(72, 5);
        let two = Rat::from(2u64);
        let oracle_lo = &c / (rat(7, 2) - &two * &slo);
        let oracle_hi = &c / (rat(7, 2) - &two * &shi);
        assert!(e.lo <= oracle_hi && oracle_lo <= e.hi);
    }

    #[test]
    fn min_integer_examples() {
        let cap = DEFAULT_PRECISION_CAP;
        let exact = Enclosure::exact(rat(144, 5), 8);
        let n = min_integer_exceeding(exact, |_| unreachable!(), cap).unwrap();
        assert_eq!(n, BigUint::from(29u32));

        // integer-valued exact enclosure still needs the strictly-greater rule
        let exact = Enclosure::exact(Rat::from(5u64), 8);
        let n = min_integer_exceeding(exact, |_| unreachable!(), cap).unwrap();
        assert_eq!(n, BigUint::from(6u32));

        let t1 = threshold_start(ThresholdKind::LowerWindow, 2, 20, cap).unwrap();
        assert_eq!(t1, BigUint::from(286u32));
        let t2 = threshold_start(ThresholdKind::UpperWindow, 2, 20, cap).unwrap();
        assert_eq!(t2, BigUint::from(402u32));
        let t1 = threshold_start(ThresholdKind::LowerWindow, 1, 20, cap).unwrap();
        assert_eq!(t1, BigUint::from(29u32));
    }

    #[test]
    fn sweep_starts_match_oracle_values() {
        let cap = DEFAULT_PRECISION_CAP;
        let cases = [
            (ThresholdKind::LowerWindow, 3u32, 4752u64),
            (ThresholdKind::UpperWindow, 3, 9418),
            (ThresholdKind::LowerWindow, 4, 111_173),
            (ThresholdKind::UpperWindow, 4, 310_468),
        ];
        for (kind, m, expected) in cases {
            let start = threshold_start(kind, m, 32, cap).unwrap();
            assert_eq!(start, BigUint::from(expected), "kind={kind:?} m={m}");
        }
    }

    #[test]
    fn refinement_hits_the_cap_honestly() {
        // an enclosure straddling an integer that refinement never separates
        let stuck = Enclosure::new(rat(6, 1), rat(8, 1), 16);
        let err = min_integer_exceeding(
            stuck.clone(),
            |b| Ok(Enclosure::new(stuck.lo.clone(), stuck.hi.clone(), b)),
            64,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Indeterminate { .. }));
    }

    #[test]
    fn cap_blocks_oversized_requests() {
        let err = threshold_enclosure_capped(ThresholdKind::LowerWindow, 2, 512, 64).unwrap_err();
        assert!(matches!(err, Error::Indeterminate { .. }));
    }

    #[test]
    fn lower_bounds_exceed_constant_for_all_small_degrees() {
        let c = rat(72, 5);
        for m in 1..=64u32 {
            for kind in [ThresholdKind::LowerWindow, ThresholdKind::UpperWindow] {
                let e = threshold_enclosure(kind, m, 16).unwrap();
                assert!(e.lo > c, "kind={kind:?} m={m}");
            }
        }
    }

    #[test]
    fn nesting_under_refinement() {
        for kind in [ThresholdKind::LowerWindow, ThresholdKind::UpperWindow] {
            let coarse = threshold_enclosure(kind, 5, 8).unwrap();
            let fine = threshold_enclosure(kind, 5, 40).unwrap();
            assert!(fine.nested_in(&coarse), "kind={kind:?}");
        }
    }
}
