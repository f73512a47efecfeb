use num_bigint::BigUint;
use num_traits::One;

/// Largest r with r^m <= x. Exact for all inputs; panics if m == 0.
pub fn floor_root_big(x: &BigUint, m: u32) -> BigUint {
    assert!(m >= 1, "root degree must be positive");
    if m == 1 || *x <= BigUint::one() {
        return x.clone();
    }
    let mut r = x.nth_root(m);
    // nth_root is already exact; the fixup keeps the postcondition locally
    // checkable without trusting the seed.
    while r.pow(m) > *x {
        r -= 1u32;
    }
    while (&r + 1u32).pow(m) <= *x {
        r += 1u32;
    }
    r
}

/// Smallest r with r^m >= x.
pub fn ceil_root_big(x: &BigUint, m: u32) -> BigUint {
    let r = floor_root_big(x, m);
    if r.pow(m) == *x {
        r
    } else {
        r + 1u32
    }
}

/// u64 fast path of `floor_root_big`, for sweep kernels.
pub fn floor_root(x: u64, m: u32) -> u64 {
    assert!(m >= 1, "root degree must be positive");
    if m == 1 || x <= 1 {
        return x;
    }
    if m >= 64 {
        // x < 2^64 <= 2^m, so the root lies in [1, 2)
        return 1;
    }
    let mut r = (x as f64).powf(1.0 / m as f64) as u64;
    if r == 0 {
        r = 1;
    }
    while r > 1 && pow_exceeds(r, m, x) {
        r -= 1;
    }
    while !pow_exceeds(r + 1, m, x) {
        r += 1;
    }
    r
}

/// Smallest a with a^m > x; the least candidate base above a u64 bound.
pub fn next_power_base(x: u64, m: u32) -> u64 {
    floor_root(x, m) + 1
}

/// True iff base^m > x, without overflow.
pub fn pow_exceeds(base: u64, m: u32, x: u64) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..m {
        acc = acc.saturating_mul(base as u128);
        if acc > x as u128 {
            return true;
        }
    }
    acc > x as u128
}

/// base^m clamped to u128::MAX, for exact comparisons against small bounds.
pub fn pow_saturating(base: u64, m: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..m {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
