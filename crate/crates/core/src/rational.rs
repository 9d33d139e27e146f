//! Exact rational helpers on top of [`num_rational::BigRational`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: &Rational, exp: u64) -> Rational {
    let mut result = Rational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    result
}

pub fn pow2(exp: i64) -> Rational {
    let p = Rational::from_integer(BigInt::one() << exp.unsigned_abs());
    if exp >= 0 {
        p
    } else {
        p.recip()
    }
}

/// Exact `p/q` rendering; integers are still written with a denominator.
pub fn to_exact(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Decimal rendering with `digits` significant figures; approximate by nature.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // Scientific rendering computed exactly: find exponent e with 10^e <= a < 10^(e+1).
    let ten = int(10);
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < Rational::one() {
        scaled *= &ten;
        e -= 1;
    }
    let mut mantissa_digits = String::new();
    for _ in 0..digits.max(1) {
        let d = scaled.to_integer();
        mantissa_digits.push_str(&d.to_string());
        scaled = (scaled - Rational::from_integer(d)) * &ten;
    }
    let sign = if neg { "-" } else { "" };
    if (-4..=6).contains(&e) {
        let v = r.to_f64().unwrap_or(f64::NAN);
        format!("{sign}{:.*}", digits, v.abs())
    } else {
        let (head, tail) = mantissa_digits.split_at(1);
        format!("{sign}{head}.{tail}e{e}")
    }
}

/// Floor of a non-negative rational as an unsigned integer.
pub fn floor_u(r: &Rational) -> BigUint {
    r.numer()
        .div_floor(r.denom())
        .to_biguint()
        .unwrap_or_default()
}

/// Binomial coefficient `C(n, k)` in exact integers.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}
