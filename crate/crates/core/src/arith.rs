//! Small integer and rational helpers shared by the exact routines.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt_i128(n: i128) -> i128 {
    debug_assert!(n >= 0);
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square_i128(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt_i128(n);
        r * r == n
    }
}

pub fn is_square_big(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// p-adic valuation of a nonzero integer, returning the unit part as well.
pub fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    (v, m)
}

/// Prime divisors of |n| in increasing order.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= m {
        let bp = BigInt::from(p);
        if (&m % &bp).is_zero() {
            out.push(p);
            while (&m % &bp).is_zero() {
                m /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        out.push(m.to_u64().expect("prime factor exceeds u64"));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Squarefree integer in the rational square class of `q` (q nonzero).
pub fn squarefree_class(q: &BigRational) -> BigInt {
    let prod = q.numer() * q.denom();
    squarefree_part(&prod)
}

pub fn squarefree_part(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_zero());
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut m = n.abs();
    let mut out = BigInt::one();
    for p in prime_divisors(&m.clone()) {
        let (v, rest) = split_valuation(&m, p);
        m = rest;
        if v % 2 == 1 {
            out *= p;
        }
    }
    out * sign
}

/// Divisors of a positive integer, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn to_i128(v: &BigInt, what: &'static str) -> crate::Result<i128> {
    v.to_i128().ok_or(crate::Error::Overflow(what))
}
