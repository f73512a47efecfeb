use std::cmp::Ordering;

use num_bigint::BigUint;

use super::rat::Rat;
use super::roots::floor_root_big;

/// Certified two-sided bounds on a real value: lo <= value <= hi, with
/// equality on both sides exactly when the value is rational and known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rat,
    pub hi: Rat,
    /// Requested precision; the width obligation is 2^-bits (absolute for
    /// root and ln enclosures, relative for thresholds).
    pub bits: u32,
}

impl Enclosure {
    pub fn new(lo: Rat, hi: Rat, bits: u32) -> Self {
        assert!(lo <= hi, "inverted enclosure");
        Enclosure { lo, hi, bits }
    }

    pub fn exact(v: Rat, bits: u32) -> Self {
        Enclosure {
            lo: v.clone(),
            hi: v,
            bits,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// True when `self` lies within `outer`. Refining an enclosure must
    /// keep it nested inside every coarser one.
    pub fn nested_in(&self, outer: &Enclosure) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }
}

/// Certified bounds on base^(1/m) for rational base > 1.
///
/// When the root is itself rational the enclosure is exact; otherwise the
/// bounds are dyadic with lo < base^(1/m) < hi and hi - lo <= 2^-bits,
/// each side certified by the exact integer comparison lo^m < base < hi^m.
pub fn root_enclosure(base: &Rat, m: u32, bits: u32) -> Enclosure {
    assert!(m >= 1, "root degree must be positive");
    assert!(*base > Rat::one(), "base must exceed 1");

    let num = base.numer_uint();
    let den = base.denom_uint();
    let rn = floor_root_big(&num, m);
    let rd = floor_root_big(&den, m);
    if rn.pow(m) == num && rd.pow(m) == den {
        return Enclosure::exact(Rat::new(rn, rd), bits);
    }

    let two = Rat::from(2u64);
    let mut lo = Rat::one();
    let mut hi = two.clone();
    while hi.pow_u(m) <= *base {
        hi = hi * &two;
    }
    let target = Rat::pow2(-(bits as i64));
    while &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        match mid.pow_u(m).cmp(base) {
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid,
            // unreachable once the rational-root test above has failed,
            // but exactness is the right answer if it ever fires
            Ordering::Equal => return Enclosure::exact(mid, bits),
        }
    }
    Enclosure::new(lo, hi, bits)
}

/// Helper shared by tests and thresholds: dyadic bounds s/2^k <= root <
/// (s+1)/2^k derived purely from integer floor roots, independent of the
/// bisection above.
pub fn dyadic_root_floor(num: &BigUint, den: &BigUint, m: u32, k: u32) -> (Rat, Rat) {
    // base^(1/m) * 2^k = (num * 2^(k*m) / den)^(1/m); floor division of the
    // radicand shifts the floor root down by at most one.
    let scaled = (num << (k as usize * m as usize)) / den;
    let s = floor_root_big(&scaled, m);
    let denom = BigUint::from(1u32) << k as usize;
    (
        Rat::new(s.clone(), denom.clone()),
        Rat::new(s + BigUint::from(2u32), denom),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn rational_roots_are_exact() {
        let e = root_enclosure(&rat(3, 2), 1, 20);
        assert!(e.is_exact());
        assert_eq!(e.lo, rat(3, 2));

        let e = root_enclosure(&rat(9, 4), 2, 20);
        assert!(e.is_exact());
        assert_eq!(e.lo, rat(3, 2));

        let e = root_enclosure(&Rat::from(27u64), 3, 20);
        assert!(e.is_exact());
        assert_eq!(e.lo, Rat::from(3u64));
    }

    #[test]
    fn sqrt_three_halves() {
        // sqrt(1.5) = 1.2247448713915890...
        let e = root_enclosure(&rat(3, 2), 2, 20);
        assert!(!e.is_exact());
        assert!(e.width() <= Rat::pow2(-20));
        let (olo, ohi) = dyadic_root_floor(
            &BigUint::from(3u32),
            &BigUint::from(2u32),
            2,
            40,
        );
        assert!(e.lo <= ohi && olo <= e.hi, "disjoint from oracle bounds");
        assert!(e.lo < rat(12248, 10000) && e.hi > rat(12247, 10000));
    }

    #[test]
    fn sqrt_two() {
        // sqrt(2) = 1.4142135623730950...
        let e = root_enclosure(&Rat::from(2u64), 2, 20);
        assert!(e.width() <= Rat::pow2(-20));
        assert!(e.lo < rat(14143, 10000) && e.hi > rat(14142, 10000));
        // strict bracketing certified by exact powers
        assert!(e.lo.pow_u(2) < Rat::from(2u64));
        assert!(e.hi.pow_u(2) > Rat::from(2u64));
    }

    #[test]
    fn widening_precision_nests() {
        let base = rat(3, 2);
        let coarse = root_enclosure(&base, 5, 8);
        let mid = root_enclosure(&base, 5, 24);
        let fine = root_enclosure(&base, 5, 48);
        assert!(fine.nested_in(&mid));
        assert!(mid.nested_in(&coarse));
        assert!(fine.width() <= Rat::pow2(-48));
    }

    #[test]
    fn large_degree_roots() {
        let e = root_enclosure(&Rat::from(2u64), 64, 30);
        // 2^(1/64) = 1.0108892860517...
        assert!(e.lo > rat(10108, 10000));
        assert!(e.hi < rat(10109, 10000));
    }

    #[test]
    fn dyadic_oracle_brackets_true_root() {
        let (lo, hi) = dyadic_root_floor(&BigUint::from(2u32), &BigUint::from(1u32), 2, 30);
        assert!(lo.pow_u(2) <= Rat::from(2u64));
        assert!(hi.pow_u(2) > Rat::from(2u64));
        assert!(&hi - &lo == Rat::pow2(-30) * Rat::from(2u64));
    }
}
