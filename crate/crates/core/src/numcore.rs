//! Exact scalar arithmetic and the combinatorial primitives everything else
//! is built from.
//!
//! All scalars are [`Rational`] (always in lowest terms with a positive
//! denominator); counts are [`Natural`]. There is no floating point here.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational, canonical after every operation.
pub type Rational = BigRational;

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// Exact rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact rational `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Lift a natural into the rationals.
pub fn natural_to_rational(n: &Natural) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// Converts an exact rational back to a natural.
///
/// Fails with [`Error::NonIntegerResult`] when the denominator does not
/// reduce to one and with [`Error::NegativeResult`] when it is negative.
pub fn rational_to_natural(x: &Rational, what: &str) -> Result<Natural> {
    if !x.is_integer() {
        return Err(Error::NonIntegerResult {
            what: what.to_string(),
            value: format_rational(x),
        });
    }
    integer_to_natural(x.numer(), what)
}

/// Converts a signed integer to a natural, failing on negatives.
pub fn integer_to_natural(x: &BigInt, what: &str) -> Result<Natural> {
    x.to_biguint().ok_or_else(|| Error::NegativeResult {
        what: what.to_string(),
        value: x.to_string(),
    })
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Natural {
    if k < 0 || k as u64 > n {
        return Natural::zero();
    }
    let k = (k as u64).min(n - k as u64);
    // Running product stays integral: after step i it equals C(n-k+i, i).
    let mut acc = Natural::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Signed convenience wrapper used inside alternating sums.
pub fn binomial_int(n: u64, k: i64) -> BigInt {
    BigInt::from(binomial(n, k))
}

pub fn factorial(n: u64) -> Natural {
    (2..=n).fold(Natural::one(), |acc, i| acc * i)
}

/// `x^e` with the convention `0^0 = 1`.
pub fn int_pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// Truncated power `(x)_+^e`.
///
/// Equals `x^e` for `x > 0` and `0` for `x < 0`. At the kink `x = 0` it is
/// `0` for `e >= 1` and `1` for `e = 0` (right-continuous, matching the
/// half-open support `[0, 1)` of the order-one B-spline).
pub fn truncated_pow(x: &Rational, e: u32) -> Rational {
    if x.is_positive() {
        int_pow(x, e)
    } else if x.is_zero() && e == 0 {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q` or `p` with decimal big integers, optional leading `-` on
/// the numerator and `q > 0`. The result is reduced to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    let numer = parse_signed(num).ok_or_else(bad)?;
    let denom = match den {
        None => BigInt::one(),
        Some(q) => {
            if !q.bytes().all(|b| b.is_ascii_digit()) || q.is_empty() {
                return Err(bad());
            }
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            q
        }
    };
    Ok(Rational::new(numer, denom))
}

fn parse_signed(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// Smallest rational of the form `m / 2^bits` that is `>= sqrt(x)`, for
/// `x >= 0`.
pub fn sqrt_upper_bound(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative(), "square root of a negative rational");
    // sqrt(p/q) = sqrt(p*q)/q; scale by 2^bits before taking the integer root.
    let scale = BigInt::one() << bits;
    let radicand = x.numer() * x.denom() * &scale * &scale;
    let mut root = radicand.sqrt();
    if &root * &root < radicand {
        root += 1;
    }
    let (quot, rem) = root.div_rem(x.denom());
    let quot = if rem.sign() == Sign::Plus {
        quot + 1
    } else {
        quot
    };
    Rational::new(quot, scale)
}
