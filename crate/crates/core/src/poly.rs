//! Univariate polynomials over `Q` with an explicit formal degree.
//!
//! A [`FormalPoly`] of formal degree `n` stands for the binary form
//! `y^n A(x/y)`. Its coefficient vector always has exactly `n + 1` entries
//! and is never trimmed, so the leading entry may be zero. Every operation
//! states the formal degree of its result.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{BigInt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalPoly {
    coeffs: Vec<Rational>,
}

impl FormalPoly {
    /// Polynomial `Σ coeffs[i] x^i` of formal degree `coeffs.len() - 1`.
    /// An empty vector gives the zero polynomial of formal degree 0.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            return FormalPoly::zero(0);
        }
        FormalPoly { coeffs }
    }

    /// Like [`FormalPoly::new`], padded with zeros up to formal degree `n`.
    pub fn with_formal_degree(mut coeffs: Vec<Rational>, n: usize) -> Result<Self> {
        while coeffs.len() > n + 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() > n + 1 {
            return Err(Error::FormalDegreeTooSmall {
                formal: n,
                actual: coeffs.len() - 1,
            });
        }
        coeffs.resize(n + 1, Rational::zero());
        Ok(FormalPoly { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        FormalPoly::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(n: usize) -> Self {
        FormalPoly {
            coeffs: vec![Rational::zero(); n + 1],
        }
    }

    pub fn constant(c: Rational) -> Self {
        FormalPoly { coeffs: vec![c] }
    }

    /// The monomial `x^k` at formal degree `k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        FormalPoly { coeffs }
    }

    pub fn formal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Index of the highest nonzero coefficient, `None` for zero.
    pub fn actual_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// True when the actual degree equals the formal degree.
    pub fn is_proper(&self) -> bool {
        self.actual_degree() == Some(self.formal_degree())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero past the formal degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `a_n` with respect to the formal degree.
    pub fn leading(&self) -> &Rational {
        &self.coeffs[self.formal_degree()]
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Equality as elements of `Q[x]`, ignoring formal degree.
    pub fn same_polynomial(&self, other: &FormalPoly) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|i| self.coeff(i) == other.coeff(i))
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Formal degree `n - 1`; the derivative of a formal constant is the
    /// zero polynomial of formal degree 0.
    pub fn derivative(&self) -> FormalPoly {
        if self.formal_degree() == 0 {
            return FormalPoly::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect();
        FormalPoly { coeffs }
    }

    /// `A(x + t)` at the same formal degree, by repeated synthetic division.
    pub fn taylor_shift(&self, t: &Rational) -> FormalPoly {
        let mut c = self.coeffs.clone();
        if t.is_zero() {
            return FormalPoly { coeffs: c };
        }
        let n = self.formal_degree();
        for i in 0..n {
            for j in (i..n).rev() {
                let carry = &c[j + 1] * t;
                c[j] += carry;
            }
        }
        FormalPoly { coeffs: c }
    }

    /// `x^n A(1/x)` with respect to the formal degree.
    pub fn reverse(&self) -> FormalPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        FormalPoly { coeffs }
    }

    /// `A(t x)`.
    pub fn scale_arg(&self, t: &Rational) -> Result<FormalPoly> {
        if t.is_zero() {
            return Err(Error::ZeroScale);
        }
        let mut power = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * &power;
                power *= t;
                out
            })
            .collect();
        Ok(FormalPoly { coeffs })
    }

    /// `t A(x)`.
    pub fn scale_all(&self, t: &Rational) -> Result<FormalPoly> {
        if t.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(FormalPoly {
            coeffs: self.coeffs.iter().map(|c| c * t).collect(),
        })
    }
}

impl Add for &FormalPoly {
    type Output = FormalPoly;

    /// Formal degree `max(deg_f A, deg_f B)`.
    fn add(self, rhs: &FormalPoly) -> FormalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        FormalPoly {
            coeffs: (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect(),
        }
    }
}

impl Sub for &FormalPoly {
    type Output = FormalPoly;

    fn sub(self, rhs: &FormalPoly) -> FormalPoly {
        self + &(-rhs)
    }
}

impl Neg for &FormalPoly {
    type Output = FormalPoly;

    fn neg(self) -> FormalPoly {
        FormalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &FormalPoly {
    type Output = FormalPoly;

    /// Formal degree `deg_f A + deg_f B`.
    fn mul(self, rhs: &FormalPoly) -> FormalPoly {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        FormalPoly { coeffs }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for FormalPoly {
            type Output = FormalPoly;

            fn $method(self, rhs: FormalPoly) -> FormalPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);
