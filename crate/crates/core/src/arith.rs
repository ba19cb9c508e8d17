//! Exact integer helpers: factorial quotients, multinomials, involution
//! counts and 2-adic valuations.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{arg, Result};

pub type Nat = BigUint;
pub type Int = BigInt;
pub type Rational = BigRational;

/// A 2-adic valuation; zero has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: &Nat) -> Parity {
        if n.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn of_int(n: &Int) -> Parity {
        if n.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn from_odd(odd: bool) -> Parity {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self.is_odd() as u8
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_odd(self.is_odd() ^ rhs.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Binary digit sum.
pub fn s2(n: u64) -> u64 {
    n.count_ones() as u64
}

pub fn s2_big(n: &Nat) -> u64 {
    n.count_ones()
}

pub fn v2(n: &Nat) -> Valuation {
    match n.trailing_zeros() {
        Some(v) => Valuation::Finite(v),
        None => Valuation::Infinite,
    }
}

pub fn v2_int(n: &Int) -> Valuation {
    match n.trailing_zeros() {
        Some(v) => Valuation::Finite(v),
        None => Valuation::Infinite,
    }
}

/// Legendre: v2(n!) = n - s2(n).
pub fn v2_factorial(n: u64) -> u64 {
    n - s2(n)
}

/// Kummer: the number of carries when adding b and a-b in base 2.
pub fn v2_binomial(a: u64, b: u64) -> Result<u64> {
    if b > a {
        return arg(format!("binomial C({a},{b}) needs b <= a"));
    }
    Ok(s2(b) + s2(a - b) - s2(a))
}

/// Lucas: C(a,b) is odd iff the binary digits of b are dominated by those of a.
pub fn binom_mod2(a: u64, b: u64) -> Result<Parity> {
    if b > a {
        return arg(format!("binomial C({a},{b}) needs b <= a"));
    }
    Ok(Parity::from_odd(b & !a == 0))
}

pub fn factorial(n: u64) -> Nat {
    falling(n, n)
}

/// n(n-1)...(n-k+1); zero when k > n.
pub fn falling(n: u64, k: u64) -> Nat {
    if k > n {
        return Nat::zero();
    }
    let mut acc = Nat::one();
    for j in (n - k + 1)..=n {
        acc *= j;
    }
    acc
}

/// top!/bottom!, with 1/bottom! read as 0 for negative bottom.
///
/// Panics if 0 <= top < bottom, where the quotient is not an integer.
pub fn fact_quotient(top: i64, bottom: i64) -> Nat {
    if bottom < 0 {
        return Nat::zero();
    }
    assert!(
        top >= bottom,
        "fact_quotient({top}, {bottom}) is not an integer"
    );
    falling(top as u64, (top - bottom) as u64)
}

/// C(n, k), zero outside 0 <= k <= n.
pub fn binomial(n: i64, k: i64) -> Nat {
    if n < 0 || k < 0 || k > n {
        return Nat::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    falling(n, k) / factorial(k)
}

pub fn multinomial(n: u64, parts: &[u64]) -> Result<Nat> {
    let total: u64 = parts.iter().sum();
    if total != n {
        return arg(format!("multinomial parts sum to {total}, expected {n}"));
    }
    let mut acc = Nat::one();
    let mut left = n;
    for &p in parts {
        acc *= binomial(left as i64, p as i64);
        left -= p;
    }
    Ok(acc)
}

pub fn pow(base: u64, exp: u64) -> Nat {
    num_traits::pow(Nat::from(base), exp as usize)
}

/// Division that must leave no remainder. A remainder means a formula was
/// evaluated outside its domain, which is a bug rather than a rounding issue.
pub fn div_exact(num: &Nat, den: &Nat, what: &str) -> Nat {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "{what}: {num} is not divisible by {den}");
    q
}

/// Number of involutions on n points; zero for negative n.
pub fn involutions(n: i64) -> Nat {
    if n < 0 {
        return Nat::zero();
    }
    let n = n as u64;
    let mut total = Nat::zero();
    let mut pow2 = Nat::one();
    for a in 0..=n / 2 {
        total += falling(n, 2 * a) / (&pow2 * factorial(a));
        pow2 <<= 1;
    }
    total
}

/// Closed form for v2(I_n), n >= 1.
pub fn v2_involutions(n: u64) -> Result<u64> {
    if n == 0 {
        return arg("the involution valuation formula is stated for n >= 1");
    }
    Ok(match n % 4 {
        0 => n / 4,
        1 => (n - 1) / 4,
        2 => (n + 2) / 4,
        _ => (n + 5) / 4,
    })
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

pub fn is_odd_prime(n: u64) -> bool {
    n != 2 && is_prime(n)
}

pub fn check_odd_prime(q: u64) -> Result<u64> {
    if is_odd_prime(q) {
        Ok(q)
    } else {
        arg(format!("q = {q} must be an odd prime"))
    }
}

/// q is an odd prime with q - 1 a power of two.
pub fn is_fermat_prime(q: u64) -> bool {
    is_odd_prime(q) && (q - 1).is_power_of_two()
}

pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn to_u64(n: &Nat) -> Option<u64> {
    n.to_u64()
}

/// Converts an integral rational to a natural number.
pub fn rational_to_nat(r: &Rational) -> Option<Nat> {
    if !r.is_integer() {
        return None;
    }
    r.to_integer().to_biguint()
}
