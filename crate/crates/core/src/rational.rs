//! Exact rational helpers on top of [`num_rational::BigRational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integer(q: &Rational) -> bool {
    q.is_integer()
}

/// True iff the reduced denominator is a power of two.
pub fn is_dyadic(q: &Rational) -> bool {
    let mut d = q.denom().clone();
    let two = BigInt::from(2);
    while d.is_even() {
        d /= &two;
    }
    d.is_one()
}

/// True iff `q = ±2^k` for some integer `k`.
pub fn is_signed_power_of_two(q: &Rational) -> bool {
    if q.is_zero() {
        return false;
    }
    let a = q.abs();
    let pow2 = |n: &BigInt| {
        let mut n = n.clone();
        let two = BigInt::from(2);
        while n.is_even() && !n.is_zero() {
            n /= &two;
        }
        n.is_one()
    };
    pow2(a.numer()) && pow2(a.denom())
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// Fractional part `q - floor(q)`, in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

/// Small odd primes used to pick sample points that avoid cut values.
pub(crate) const SAMPLE_DIVISORS: [i64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
