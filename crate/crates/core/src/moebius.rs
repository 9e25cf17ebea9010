//! The right action of `GL(2, Q)` on polynomials of fixed formal degree.
//!
//! For `g = [[a, b], [c, d]]` and `A` of formal degree `n`,
//! `A·g = (cx + d)^n A((ax + b)/(cx + d)) = Σ a_i (ax + b)^i (cx + d)^(n-i)`.
//! The formal degree of the result is always `n`; its actual degree may drop.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{BigInt, Rational};
use crate::poly::FormalPoly;

/// A nonsingular 2×2 rational matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

/// Zero pattern of a matrix, following the case split upper triangular,
/// lower triangular, and each of those times the swap `[[0, 1], [1, 0]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixShape {
    /// `c = 0`.
    Upper,
    /// `b = 0`.
    Lower,
    /// `d = 0`, i.e. upper triangular times swap.
    UpperSwap,
    /// `a = 0`, i.e. lower triangular times swap.
    LowerSwap,
    /// All four entries nonzero.
    Full,
}

impl Mat2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        let m = Mat2 { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Mat2 {
            a: Rational::one(),
            b: Rational::zero(),
            c: Rational::zero(),
            d: Rational::one(),
        }
    }

    /// `[[0, 1], [1, 0]]`, acting as `A ↦ x^n A(1/x)`.
    pub fn swap() -> Self {
        Mat2 {
            a: Rational::zero(),
            b: Rational::one(),
            c: Rational::one(),
            d: Rational::zero(),
        }
    }

    /// `[[1, t], [0, 1]]`, acting as `A(x) ↦ A(x + t)`.
    pub fn upper_shear(t: Rational) -> Self {
        Mat2 {
            a: Rational::one(),
            b: t,
            c: Rational::zero(),
            d: Rational::one(),
        }
    }

    /// `[[1, 0], [t, 1]]`.
    pub fn lower_shear(t: Rational) -> Self {
        Mat2 {
            a: Rational::one(),
            b: Rational::zero(),
            c: t,
            d: Rational::one(),
        }
    }

    pub fn diagonal(s: Rational, u: Rational) -> Result<Self> {
        Mat2::new(s, Rational::zero(), Rational::zero(), u)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn inverse(&self) -> Mat2 {
        let det = self.det();
        Mat2 {
            a: &self.d / &det,
            b: -&self.b / &det,
            c: -&self.c / &det,
            d: &self.a / &det,
        }
    }

    pub fn shape(&self) -> MatrixShape {
        if self.c.is_zero() {
            MatrixShape::Upper
        } else if self.b.is_zero() {
            MatrixShape::Lower
        } else if self.d.is_zero() {
            MatrixShape::UpperSwap
        } else if self.a.is_zero() {
            MatrixShape::LowerSwap
        } else {
            MatrixShape::Full
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Powers `(α x + β)^k` for `k = 0..=n`, each as a dense coefficient vector.
fn linear_powers(alpha: &BigInt, beta: &BigInt, n: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(vec![BigInt::one()]);
    for k in 1..=n {
        let prev: &Vec<BigInt> = &out[k - 1];
        let mut next = vec![BigInt::zero(); k + 1];
        for (i, c) in prev.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[i] += c * beta;
            next[i + 1] += c * alpha;
        }
        out.push(next);
    }
    out
}

fn lcm_of_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

fn scaled_to_integer(q: &Rational, scale: &BigInt) -> BigInt {
    q.numer() * (scale / q.denom())
}

/// `A·g` at the formal degree of `A`.
///
/// Works over the integers: with `D A` and `L g` integral,
/// `A·g = ((D A)·(L g)) / (D L^n)`.
pub fn act(poly: &FormalPoly, g: &Mat2) -> FormalPoly {
    let n = poly.formal_degree();
    let d = lcm_of_denominators(poly.coeffs());
    let l = lcm_of_denominators(g.entries());
    let [ga, gb, gc, gd] = g.entries().map(|q| scaled_to_integer(q, &l));
    let num = linear_powers(&ga, &gb, n);
    let den = linear_powers(&gc, &gd, n);
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, a_i) in poly.coeffs().iter().enumerate() {
        if a_i.is_zero() {
            continue;
        }
        let a_i = scaled_to_integer(a_i, &d);
        let left = &num[i];
        let right = &den[n - i];
        for (j, x) in left.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let scaled = &a_i * x;
            for (k, y) in right.iter().enumerate() {
                if !y.is_zero() {
                    out[j + k] += &scaled * y;
                }
            }
        }
    }
    let divisor = d * num_traits::pow(l, n);
    FormalPoly::new(
        out.into_iter()
            .map(|c| Rational::new(c, divisor.clone()))
            .collect(),
    )
}

impl FormalPoly {
    /// Method form of [`act`].
    pub fn act(&self, g: &Mat2) -> FormalPoly {
        act(self, g)
    }
}
