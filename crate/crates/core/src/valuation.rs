//! p-adic valuations on the rationals.

use std::fmt;
use std::ops::Add;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{is_probable_prime, BigInt, Rational};

/// A value in `Z ∪ {∞}`. `Finite(_) < Infinite` and `Infinite` absorbs
/// addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Finite(i64),
    Infinite,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(g) => Some(g),
            Val::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Val::Infinite
    }
}

impl Add for Val {
    type Output = Val;

    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinite,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(g) => write!(f, "{g}"),
            Val::Infinite => f.write_str("inf"),
        }
    }
}

/// The p-adic valuation `v_p` on `Q`, value group `Z`, residue field `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PAdic {
    p: BigInt,
}

impl PAdic {
    pub fn new(p: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        if !is_probable_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(PAdic { p })
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    /// Characteristic of the residue field, which for `v_p` is `p`.
    pub fn residue_char(&self) -> &BigInt {
        &self.p
    }

    /// Whether the residue characteristic divides `n`.
    pub fn residue_char_divides(&self, n: usize) -> bool {
        (BigInt::from(n) % &self.p).is_zero()
    }

    /// Exponent of `p` in a nonzero integer; `∞` for zero.
    pub fn val_int(&self, n: &BigInt) -> Val {
        if n.is_zero() {
            return Val::Infinite;
        }
        Val::Finite(self.multiplicity(n) as i64)
    }

    pub fn val(&self, q: &Rational) -> Val {
        if q.is_zero() {
            return Val::Infinite;
        }
        let up = self.multiplicity(q.numer()) as i64;
        let down = self.multiplicity(q.denom()) as i64;
        Val::Finite(up - down)
    }

    fn multiplicity(&self, n: &BigInt) -> u64 {
        // Fast path for small primes and word-sized inputs.
        if let (Some(mut m), Some(p)) = (n.to_i128().map(i128::unsigned_abs), self.p.to_u128()) {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return k;
        }
        let mut m = n.clone();
        let mut k = 0;
        loop {
            let (q, r) = m.div_rem(&self.p);
            if !r.is_zero() {
                return k;
            }
            m = q;
            k += 1;
        }
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v_{}", self.p)
    }
}
