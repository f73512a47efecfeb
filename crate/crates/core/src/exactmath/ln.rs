use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use super::enclosure::Enclosure;
use super::rat::Rat;

/// Certified bounds on ln(n) for integer n >= 2.
///
/// Reduction: ln(n) = k*ln(2) + ln(r) with r = n/2^k in [1, 2). Both parts
/// use the series 2*atanh(y) = 2*sum y^(2i+1)/(2i+1) with y = (r-1)/(r+1)
/// in [0, 1/3], whose tail after j terms is below
/// y^(2j+1)/(2j+1) * 1/(1-y^2); partial sums are exact rationals, so the
/// lower bound is the doubled partial sum and the upper bound adds the
/// doubled tail bound. Widening `bits` only ever tightens the result.
pub fn ln_enclosure(n: u64, bits: u32) -> Enclosure {
    assert!(n >= 2, "ln enclosure defined for n >= 2");
    let k = 63 - n.leading_zeros();
    let pow2k = 1u64 << k;

    // budget: k * ln2 error + series error <= 2^-bits
    let ln2_bits = bits + 2 + 33 - (k + 1).leading_zeros();
    let ln2 = ln2_enclosure(ln2_bits);
    let k_rat = Rat::from(k as u64);
    let mut lo = &k_rat * &ln2.lo;
    let mut hi = &k_rat * &ln2.hi;

    if n != pow2k {
        let r = Rat::new(n, pow2k);
        let (series_lo, series_hi) = atanh_series(&r, bits + 2);
        lo = lo + series_lo;
        hi = hi + series_hi;
    }
    Enclosure::new(lo, hi, bits)
}

/// Certified bounds on ln(2) = 2*atanh(1/3), memoized per requested
/// precision so repeated sweep queries stay cheap.
pub fn ln2_enclosure(bits: u32) -> Enclosure {
    static CACHE: OnceLock<Mutex<HashMap<u32, (Rat, Rat)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().unwrap();
        if let Some((lo, hi)) = guard.get(&bits) {
            return Enclosure::new(lo.clone(), hi.clone(), bits);
        }
    }
    let (lo, hi) = atanh_series(&Rat::from(2u64), bits);
    cache
        .lock()
        .unwrap()
        .insert(bits, (lo.clone(), hi.clone()));
    Enclosure::new(lo, hi, bits)
}

/// Bounds on ln(r) = 2*atanh((r-1)/(r+1)) for rational r in (1, 2], with
/// total width at most 2^-bits.
fn atanh_series(r: &Rat, bits: u32) -> (Rat, Rat) {
    let one = Rat::one();
    debug_assert!(*r > one && *r <= Rat::from(2u64));
    let y = (r - &one) / (r + &one);
    let y2 = &y * &y;
    // 1/(1-y^2) <= 9/8 for y <= 1/3
    let geom = (&one - &y2).recip();

    let target = Rat::pow2(-(bits as i64 + 1));
    let mut sum = Rat::zero();
    let mut term_pow = y.clone(); // y^(2i+1)
    let mut i = 0u32;
    loop {
        sum = sum + &term_pow / Rat::from(2 * i as u64 + 1);
        let next_pow = &term_pow * &y2;
        let next_term = &next_pow / Rat::from(2 * i as u64 + 3);
        let tail_bound = &next_term * &geom;
        if tail_bound <= target {
            let two = Rat::from(2u64);
            return (&two * &sum, &two * (&sum + &tail_bound));
        }
        term_pow = next_pow;
        i += 1;
    }
}
