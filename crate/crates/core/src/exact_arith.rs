//! Exact integer and rational arithmetic.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; this module
//! adds the number-theoretic pieces the rest of the crate needs: gcd, a
//! probable-prime test and a budgeted factorization (trial division followed
//! by Pollard-Brent rho on whatever cofactor is left).

use std::collections::BTreeMap;

use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; zero is `0/1`.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` in lowest terms. Panics if `den` is zero.
pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

/// The integer `n` as a rational.
pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Nonnegative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Work limits for [`factor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorEffort {
    /// Primes below this bound are removed by trial division.
    pub trial_bound: u64,
    /// Total Pollard-Brent iterations spent on one composite cofactor.
    pub rho_iterations: u64,
}

impl Default for FactorEffort {
    fn default() -> Self {
        FactorEffort {
            trial_bound: 1_000_000,
            rho_iterations: 2_000_000,
        }
    }
}

/// Prime factorization of `|n|`, possibly partial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    /// Prime (or, above 2^64, probable prime) factors with exponents.
    pub primes: BTreeMap<BigInt, u32>,
    /// Composite cofactors that survived the rho budget.
    pub unfactored: Vec<BigInt>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    /// Product of all prime powers and unfactored cofactors.
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (p, e) in &self.primes {
            acc *= p.pow(*e);
        }
        for c in &self.unfactored {
            acc *= c;
        }
        acc
    }

    fn push(&mut self, p: BigInt, e: u32) {
        *self.primes.entry(p).or_insert(0) += e;
    }
}

/// Factors `|n|`. Primes below `effort.trial_bound` are found by trial
/// division; any remaining composite is attacked with Pollard-Brent rho, and
/// cofactors that outlast the budget are reported in
/// [`Factorization::unfactored`].
pub fn factor(n: &BigInt, effort: &FactorEffort) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::FactorZero);
    }
    let mut out = Factorization::default();
    let mut rest = n.abs();

    let (reduced, limit_reached) = trial_divide(&mut out, rest, effort.trial_bound);
    rest = reduced;
    if rest.is_one() {
        return Ok(out);
    }
    // Every prime factor below the bound is gone, so a cofactor below the
    // bound squared is itself prime.
    let bound = BigInt::from(effort.trial_bound);
    if !limit_reached || rest < &bound * &bound || is_probable_prime(&rest) {
        out.push(rest, 1);
        return Ok(out);
    }

    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if is_probable_prime(&m) {
            out.push(m, 1);
            continue;
        }
        match pollard_brent(&m, effort.rho_iterations) {
            Some(d) => {
                let other = &m / &d;
                stack.push(d);
                stack.push(other);
            }
            None => out.unfactored.push(m),
        }
    }
    out.unfactored.sort();
    Ok(out)
}

/// Strips prime factors below `bound`. The flag reports whether the bound,
/// rather than `d * d > rest`, ended the loop.
fn trial_divide(out: &mut Factorization, mut rest: BigInt, bound: u64) -> (BigInt, bool) {
    let mut d: u64 = 2;
    while d < bound {
        if let Some(small) = rest.to_u64() {
            if small == 1 {
                return (rest, false);
            }
            return trial_divide_u64(out, small, d, bound);
        }
        let big_d = BigInt::from(d);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&big_d);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push(big_d, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    (rest, true)
}

fn trial_divide_u64(
    out: &mut Factorization,
    mut rest: u64,
    mut d: u64,
    bound: u64,
) -> (BigInt, bool) {
    while d < bound {
        if (d as u128) * (d as u128) > rest as u128 {
            if rest > 1 {
                out.push(BigInt::from(rest), 1);
            }
            return (BigInt::one(), false);
        }
        let mut e = 0;
        while rest.is_multiple_of(d) {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            out.push(BigInt::from(d), e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    (BigInt::from(rest), true)
}

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin with the first twelve prime bases. Deterministic below
/// 3.3 * 10^24, probabilistic above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    if n < &BigInt::from(41 * 41) {
        return !n.is_one();
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &SMALL_PRIMES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho with batched gcds. Tries successive
/// polynomial constants until it finds a proper divisor or spends
/// `budget` iterations.
fn pollard_brent(n: &BigInt, budget: u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    const BATCH: u64 = 128;
    let mut spent = 0u64;
    let mut c = BigInt::one();
    while spent < budget {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = BigInt::one();
        while g.is_one() && spent < budget {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                spent += steps;
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if g == *n {
            // The batch overshot; replay it one step at a time.
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
        c += 1u32;
    }
    None
}
