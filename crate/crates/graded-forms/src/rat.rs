//! Exact rational scalars and the small combinatorial helpers (factorials,
//! binomials, rising/falling products) used throughout the operator calculus.
//!
//! Half-integers show up only inside ratios of Gamma values at unit shifts, so
//! everything here stays in Q: a ratio Γ(x+a)/Γ(x) with integer a ≥ 0 is the
//! rising product x(x+1)...(x+a-1), and generalized binomials with rational
//! tops are falling products over a factorial.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Exact rational number, always reduced, positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// n! as a rational (n must be nonnegative).
pub fn factorial(n: i64) -> Rat {
    assert!(n >= 0, "factorial of negative integer");
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rat::from_integer(acc)
}

/// Integer binomial coefficient C(n, k) for n, k ≥ 0 (zero when k > n).
pub fn binom(n: i64, k: i64) -> Rat {
    if k < 0 || k > n {
        return Rat::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rat::new(num, den)
}

/// Generalized binomial C(x, k) for rational (possibly negative or half-integer)
/// top: the falling product x(x-1)...(x-k+1)/k!.
pub fn binom_rat(x: &Rat, k: i64) -> Rat {
    if k < 0 {
        return Rat::zero();
    }
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= x - rat(i);
    }
    acc / factorial(k)
}

/// Rising product x(x+1)...(x+a-1) = Γ(x+a)/Γ(x) for integer a ≥ 0.
pub fn rising(x: &Rat, a: i64) -> Rat {
    assert!(a >= 0, "rising product needs a nonnegative length");
    let mut acc = Rat::one();
    for i in 0..a {
        acc *= x + rat(i);
    }
    acc
}

/// p^e for a (possibly negative) integer exponent.
pub fn rat_pow(p: i64, e: i64) -> Rat {
    let base = rat(p);
    if e >= 0 {
        let mut acc = Rat::one();
        for _ in 0..e {
            acc *= &base;
        }
        acc
    } else {
        Rat::one() / rat_pow(p, -e)
    }
}

/// Renders a rational as "n" or "n/d" (used by error messages and reports).
pub fn rat_display(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// True when the rational is a (possibly negative) integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Sign as -1, 0, 1.
pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
