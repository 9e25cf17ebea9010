//! Random polynomials and matrices for property tests and benchmarks.

use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use crate::exact_arith::{BigInt, Rational};
use crate::moebius::{Mat2, MatrixShape};
use crate::poly::FormalPoly;

/// Primes used by the generators.
pub const SMALL_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

/// Integer polynomial of exact degree `n` with coefficients in
/// `[-bound, bound]` and nonzero constant and leading terms.
pub fn random_int_poly<R: Rng>(rng: &mut R, n: usize, bound: i64) -> FormalPoly {
    let mut coeffs: Vec<i64> = (0..=n).map(|_| rng.gen_range(-bound..=bound)).collect();
    for i in [0, n] {
        while coeffs[i] == 0 {
            coeffs[i] = rng.gen_range(-bound..=bound);
        }
    }
    FormalPoly::from_ints(&coeffs)
}

/// Nonzero rational with numerator and denominator in `1..=bound` up to sign.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let num = rng.gen_range(1..=bound) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new(num.into(), rng.gen_range(1..=bound).into())
}

/// Nonzero rational `a/b` with `p ∤ ab`.
pub fn random_unit<R: Rng>(rng: &mut R, p: u32, bound: i64) -> Rational {
    let pick = |rng: &mut R| loop {
        let x = rng.gen_range(1..=bound);
        if x % p as i64 != 0 {
            return x;
        }
    };
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let num = pick(rng) * sign;
    let den = pick(rng);
    Rational::new(num.into(), den.into())
}

/// Rational polynomial of formal degree `n`; each coefficient is zero with
/// probability `zero_prob`, otherwise `p^e · unit` with `e` in `-1..=3`.
pub fn random_poly_with_content<R: Rng>(
    rng: &mut R,
    n: usize,
    p: u32,
    zero_prob: f64,
) -> FormalPoly {
    let coeffs = (0..=n)
        .map(|_| {
            if rng.gen_bool(zero_prob) {
                Rational::zero()
            } else {
                let e: i32 = rng.gen_range(-1..=3);
                p_power(p, e) * random_unit(rng, p, 12)
            }
        })
        .collect();
    FormalPoly::new(coeffs)
}

fn p_power(p: u32, e: i32) -> Rational {
    let base = Rational::from_integer(BigInt::from(p));
    base.pow(e)
}

/// Eisenstein-Dumas polynomial at `v_p` of degree `n ≥ 1`.
///
/// Picks `v_0, v_n ≥ 0` with `gcd(v_0 - v_n, n) = 1` and sets
/// `a_i = p^{e_i} u_i` with `p`-adic units `u_i` and
/// `e_i ≥ ceil(((n - i) v_0 + i v_n) / n)`, equality at the endpoints.
/// Interior coefficients are zero with probability 1/4.
pub fn random_ed_poly<R: Rng>(rng: &mut R, n: usize, p: u32) -> FormalPoly {
    assert!(n >= 1);
    let (v0, vn) = loop {
        let v0: i64 = rng.gen_range(0..=4);
        let vn: i64 = rng.gen_range(0..=3);
        if (v0 - vn).unsigned_abs().gcd(&(n as u64)) == 1 {
            break (v0, vn);
        }
    };
    let ni = n as i64;
    let coeffs = (0..=n)
        .map(|i| {
            let ii = i as i64;
            let min_e = Integer::div_ceil(&((ni - ii) * v0 + ii * vn), &ni);
            let e = if i == 0 {
                v0
            } else if i == n {
                vn
            } else if rng.gen_bool(0.25) {
                return Rational::zero();
            } else {
                min_e + rng.gen_range(0..=1)
            };
            p_power(p, e as i32) * random_unit(rng, p, 9)
        })
        .collect();
    FormalPoly::new(coeffs)
}

/// Random nonsingular matrix with the requested zero pattern; the free
/// entries are nonzero rationals with numerator and denominator at most
/// `bound`.
pub fn random_matrix<R: Rng>(rng: &mut R, shape: MatrixShape, bound: i64) -> Mat2 {
    let mut r = || random_rational(rng, bound);
    let z = Rational::zero;
    let m = match shape {
        MatrixShape::Upper => Mat2::new(r(), r(), z(), r()),
        MatrixShape::Lower => Mat2::new(r(), z(), r(), r()),
        MatrixShape::UpperSwap => Mat2::new(r(), r(), r(), z()),
        MatrixShape::LowerSwap => Mat2::new(z(), r(), r(), r()),
        MatrixShape::Full => loop {
            if let Ok(m) = Mat2::new(r(), r(), r(), r()) {
                break Ok(m);
            }
        },
    };
    m.expect("triangular patterns with nonzero diagonal are nonsingular")
}

/// Random nonsingular matrix with entries that may vanish.
pub fn random_any_matrix<R: Rng>(rng: &mut R, bound: i64) -> Mat2 {
    loop {
        let mut e = || {
            if rng.gen_bool(0.2) {
                Rational::zero()
            } else {
                random_rational(rng, bound)
            }
        };
        if let Ok(m) = Mat2::new(e(), e(), e(), e()) {
            return m;
        }
    }
}
