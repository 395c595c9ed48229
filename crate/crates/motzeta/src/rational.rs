//! Exact rational scalars.
//!
//! Coefficients live in `Q` throughout: the `Psi_n` sequences and binomial
//! elements introduce denominators even when the final answers are integral.
//! `num::BigRational` keeps values reduced with a positive denominator, which
//! is exactly the canonical form we need.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// Exact rational scalar: reduced, denominator > 0.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// True if the rational is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Exact factorial as a rational.
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// Lossy conversion to `f64` (exact for small values).
pub fn to_f64(x: &Rat) -> f64 {
    // num's BigRational has no direct to_f64 for arbitrary size; go through
    // a division of approximations, good to f64 precision for our ranges.
    big_to_f64(x.numer()) / big_to_f64(x.denom())
}

fn big_to_f64(n: &BigInt) -> f64 {
    let mut v = 0.0f64;
    let (sign, digits) = n.to_u32_digits();
    for d in digits.iter().rev() {
        v = v * 4294967296.0 + f64::from(*d);
    }
    if sign == num::bigint::Sign::Minus {
        -v
    } else {
        v
    }
}

/// Render a rational as `p` or `p/q`.
pub fn display(x: &Rat) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p` or `p/q`.
pub fn parse(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Number-theoretic Moebius function on positive integers.
pub fn moebius_int(n: u64) -> i64 {
    debug_assert!(n >= 1);
    let mut n = n;
    let mut primes = 0;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            ds.push(d);
        }
    }
    ds
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
