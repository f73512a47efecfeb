use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number in canonical form: reduced, denominator positive.
///
/// Serializes as the string `"num/den"` (just `"num"` when the denominator
/// is 1); no floating point anywhere.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// 2^e for any integer e, negative exponents included.
    pub fn pow2(e: i64) -> Self {
        let p = BigInt::one() << e.unsigned_abs() as usize;
        if e >= 0 {
            Rat::from_int(p)
        } else {
            Rat::new(BigInt::one(), p)
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Numerator magnitude; panics on negative values.
    pub fn numer_uint(&self) -> BigUint {
        assert!(!self.is_negative(), "numer_uint on a negative rational");
        self.0.numer().magnitude().clone()
    }

    pub fn denom_uint(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.0.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    pub fn pow_u(&self, m: u32) -> Rat {
        Rat(Pow::pow(&self.0, m as i32))
    }

    /// Exact finite decimal expansion, available iff the denominator is of
    /// the form 2^a * 5^b. Used only for human-readable output.
    pub fn decimal_exact(&self) -> Option<String> {
        let mut den = self.denom_uint();
        let two = BigUint::from(2u32);
        let five = BigUint::from(5u32);
        let mut a = 0u64;
        let mut b = 0u64;
        while (&den % &two).is_zero() {
            den /= &two;
            a += 1;
        }
        while (&den % &five).is_zero() {
            den /= &five;
            b += 1;
        }
        if !den.is_one() {
            return None;
        }
        let k = a.max(b);
        // num/den = num * (10^k / den) / 10^k with the division exact
        let ten_k = BigUint::from(10u32).pow(
            u32::try_from(k).expect("decimal exponent fits u32"),
        );
        let scale = &ten_k / self.denom_uint();
        let digits = (self.0.numer().magnitude() * scale).to_string();
        let k = k as usize;
        let mut s = String::new();
        if self.is_negative() {
            s.push('-');
        }
        if k == 0 {
            s.push_str(&digits);
            return Some(s);
        }
        let whole = if digits.len() > k {
            &digits[..digits.len() - k]
        } else {
            "0"
        };
        let frac_start = digits.len().saturating_sub(k);
        let mut frac: String = if digits.len() >= k {
            digits[frac_start..].to_string()
        } else {
            format!("{}{}", "0".repeat(k - digits.len()), digits)
        };
        while frac.ends_with('0') {
            frac.pop();
        }
        s.push_str(whole);
        if !frac.is_empty() {
            s.push('.');
            s.push_str(&frac);
        }
        Some(s)
    }

    /// Human-facing rendering: exact decimal when finite, else "num/den".
    pub fn display_pretty(&self) -> String {
        self.decimal_exact().unwrap_or_else(|| self.to_string())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({})", self)
    }
}

impl FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|e| format!("bad integer {t:?}: {e}"))
        };
        match s.split_once('/') {
            None => Ok(Rat::from_int(parse_int(s)?)),
            Some((n, d)) => {
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err("zero denominator".into());
                }
                Ok(Rat::new(parse_int(n)?, den))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<u64> for Rat {
    fn from(n: u64) -> Self {
        Rat::from_int(n)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigUint> for Rat {
    fn from(n: BigUint) -> Self {
        Rat::from_int(BigInt::from_biguint(Sign::Plus, n))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(&self.0, rhs.0))
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}
