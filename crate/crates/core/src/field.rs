//! Exact scalar fields.
//!
//! Every coefficient in the library lives in a type implementing [`Field`].
//! The default instance is [`Rational`], an arbitrary-precision fraction kept
//! in lowest terms with a positive denominator. [`Fp`] is a small prime field
//! used to exercise the generic code paths.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in canonical form.
pub type Rational = BigRational;

/// A commutative field with exact, decidable equality.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse; fails on zero.
    fn try_recip(&self) -> Result<Self>;

    /// Image of an integer under the canonical ring map.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// `num / den`, failing when `den` maps to zero.
    fn from_fraction(num: &BigInt, den: &BigInt) -> Result<Self> {
        Ok(Self::from_bigint(num) * Self::from_bigint(den).try_recip()?)
    }

    /// Text form used by the JSON schemas; `p/q`, with `q` omitted when 1.
    fn to_text(&self) -> String {
        self.to_string()
    }

    /// Inverse of [`Field::to_text`].
    fn parse_text(s: &str) -> Result<Self>;

    /// Whether printing needs a sign of its own (used by series rendering).
    fn is_negative(&self) -> bool {
        false
    }
}

impl Field for Rational {
    fn try_recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_fraction(num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }

    fn parse_text(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Parse `p/q` or `p` (optional leading `-`). Rejects `q = 0`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |msg: &str| Error::Parse {
        position: 0,
        message: format!("{msg}: {s:?}"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad("invalid numerator"))?;
    let den = BigInt::from_str(den).map_err(|_| bad("invalid denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Integers modulo a prime `P` (P must be prime and below 2^32).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn try_recip(&self) -> Result<Self> {
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(P - 2))
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n % BigInt::from(P);
        let r = r.to_i64().expect("residue fits in i64");
        Fp::new(r)
    }

    fn parse_text(s: &str) -> Result<Self> {
        let q = parse_rational(s)?;
        Self::from_fraction(q.numer(), q.denom())
    }
}
