//! Exact scalar arithmetic: arbitrary-precision rationals and integers.
//!
//! Every coefficient in the library is a [`Rat`]; no floating point enters
//! any algebraic computation.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rat = BigRational;
/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Renders `a/b`, or just `a` when the value is an integer.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= Int::from(k);
    }
    acc
}

/// `d (d-1) ... (d-s+1)`, the coefficient of the iterated Euler relation.
pub fn falling_factorial(d: u32, s: u32) -> Int {
    let mut acc = Int::one();
    for k in 0..s {
        acc *= Int::from(d as i64 - k as i64);
    }
    acc
}

/// Non-negative integer power of a rational.
pub fn rat_pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Gcd of a set of integers; zero when the set is empty or all-zero.
pub fn int_gcd_all<'a>(values: impl IntoIterator<Item = &'a Int>) -> Int {
    let mut g = Int::zero();
    for v in values {
        g = num::integer::gcd(g, v.abs());
        if g.is_one() {
            break;
        }
    }
    g
}

/// Lcm of a set of positive integers; one when the set is empty.
pub fn int_lcm_all<'a>(values: impl IntoIterator<Item = &'a Int>) -> Int {
    let mut l = Int::one();
    for v in values {
        l = num::integer::lcm(l, v.abs());
    }
    l
}

/// Sign of an integer as -1, 0, 1.
pub fn int_signum(v: &Int) -> i32 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), Int::from(1));
        assert_eq!(factorial(5), Int::from(120));
        assert_eq!(falling_factorial(5, 2), Int::from(20));
        assert_eq!(falling_factorial(3, 3), Int::from(6));
        assert_eq!(falling_factorial(4, 0), Int::from(1));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rat(&rat(4, 2)), "2");
        assert_eq!(format_rat(&rat(-1, 3)), "-1/3");
        assert_eq!(format_rat(&rat(2, -4)), "-1/2");
    }

    #[test]
    fn powers() {
        assert_eq!(rat_pow(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(rat_pow(&rat(5, 1), 0), rat_int(1));
    }
}
