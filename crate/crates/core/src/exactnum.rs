//! Exact rational arithmetic and the residue-symbol toolkit.
//!
//! Rationals are [`num_rational::BigRational`], which keeps values canonical
//! (reduced, positive denominator), so structural equality is value equality.
//! On top of that this module provides deterministic primality testing,
//! Legendre symbols, Hilbert symbols at rational places, and square-class
//! reduction. Inputs are desk-scale: numerators and denominators up to
//! `10^12`, which trial division handles exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// Largest numerator/denominator magnitude accepted by the factoring
/// routines. Values up to `BOUND^2`-sized products never appear because
/// canonical rationals have coprime parts and are reduced separately.
pub const FACTOR_BOUND: u64 = 1_000_000_000_000;

/// A place of the rationals: a finite prime or the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Place {
    Finite(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{}", p),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Writes `n = p^k` with `p` prime, if possible.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = n;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if !is_prime(p) {
        return None;
    }
    let mut m = n;
    let mut k = 0u32;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m == 1 {
        Some((p, k))
    } else {
        None
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p` via Euler's criterion.
pub fn legendre_symbol(a: &BigInt, p: u64) -> Result<i32> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let r = a.mod_floor(&BigInt::from(p)).to_u64().expect("reduced residue fits u64");
    Ok(legendre_residue(r, p))
}

fn legendre_residue(r: u64, p: u64) -> i32 {
    if r == 0 {
        return 0;
    }
    let e = powmod(r, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Squarefree part of a nonzero integer `n` with `|n| <= FACTOR_BOUND`,
/// sign preserved. Trial division up to `sqrt(|n|)` leaves a cofactor that
/// is `1`, a prime, a prime square, or a product of two distinct primes,
/// all of which are resolved exactly.
fn squarefree_part_i128(n: i128) -> i128 {
    debug_assert!(n != 0);
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out: i128 = 1;
    let mut d: u128 = 2;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0u32;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            if e % 2 == 1 {
                out *= d as i128;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        // Cofactor has no divisor <= sqrt(original m), so it is prime here.
        out *= m as i128;
    }
    sign * out
}

fn checked_i128(v: &BigInt, argument: &'static str) -> Result<i128> {
    let i = v.to_i128().ok_or_else(|| Error::InvalidArgument {
        argument,
        reason: format!("{} exceeds the supported magnitude {}", v, FACTOR_BOUND),
    })?;
    if i.unsigned_abs() > FACTOR_BOUND as u128 {
        return Err(Error::InvalidArgument {
            argument,
            reason: format!("{} exceeds the supported magnitude {}", v, FACTOR_BOUND),
        });
    }
    Ok(i)
}

/// The structure constants of a quaternion algebra reduced to their square
/// classes: a pair of nonzero squarefree integers, signs preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreePair {
    a: BigInt,
    b: BigInt,
}

impl SquarefreePair {
    pub fn reduce(a: &BigRational, b: &BigRational) -> Result<Self> {
        Ok(SquarefreePair { a: squarefree_reduce(a)?, b: squarefree_reduce(b)? })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }
}

/// The squarefree integer in the same square class of `Q*` as `a`.
pub fn squarefree_reduce(a: &BigRational) -> Result<BigInt> {
    if a.is_zero() {
        return Err(Error::InvalidArgument { argument: "a", reason: "must be nonzero".into() });
    }
    // a and numer*denom differ by the square denom^2.
    let num = checked_i128(a.numer(), "numerator")?;
    let den = checked_i128(a.denom(), "denominator")?;
    // num and den are coprime, so the squarefree parts multiply without
    // cancellation.
    Ok(BigInt::from(squarefree_part_i128(num) * squarefree_part_i128(den)))
}

fn eps2(u: i64) -> u32 {
    // (u - 1)/2 mod 2 for odd u; depends only on u mod 4.
    if u.rem_euclid(4) == 1 {
        0
    } else {
        1
    }
}

fn omega2(u: i64) -> u32 {
    // (u^2 - 1)/8 mod 2 for odd u; depends only on u mod 8.
    match u.rem_euclid(8) {
        1 | 7 => 0,
        _ => 1,
    }
}

/// Hilbert symbol `(a, b)_v` over the completion of `Q` at `v`.
///
/// `+1` iff `x^2 - a y^2 - b z^2` has a nontrivial zero over the completion.
/// Both arguments are reduced to their square classes first, so the symbol
/// only depends on the classes of `a` and `b`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i32> {
    let sa = squarefree_reduce(a)?
        .to_i64()
        .ok_or_else(|| Error::InvalidArgument { argument: "a", reason: "square class too large".into() })?;
    let sb = squarefree_reduce(b)?
        .to_i64()
        .ok_or_else(|| Error::InvalidArgument { argument: "b", reason: "square class too large".into() })?;
    match place {
        Place::Infinity => Ok(if sa < 0 && sb < 0 { -1 } else { 1 }),
        Place::Finite(p) => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            Ok(hilbert_squarefree(sa, sb, p))
        }
    }
}

fn hilbert_squarefree(a: i64, b: i64, p: u64) -> i32 {
    // a, b squarefree, so valuations are 0 or 1.
    let pi = p as i64;
    let (alpha, u) = if a % pi == 0 { (1u32, a / pi) } else { (0, a) };
    let (beta, v) = if b % pi == 0 { (1u32, b / pi) } else { (0, b) };
    if p == 2 {
        let exp = eps2(u) * eps2(v) + alpha * omega2(v) + beta * omega2(u);
        return if exp % 2 == 0 { 1 } else { -1 };
    }
    // Odd p: (-1)^(alpha beta (p-1)/2) (u/p)^beta (v/p)^alpha.
    let mut sign = 1i32;
    if alpha * beta == 1 && (p - 1) / 2 % 2 == 1 {
        sign = -sign;
    }
    let lu = legendre_residue(((u % pi + pi) % pi) as u64, p);
    let lv = legendre_residue(((v % pi + pi) % pi) as u64, p);
    if beta == 1 {
        sign *= lu;
    }
    if alpha == 1 {
        sign *= lv;
    }
    sign
}
