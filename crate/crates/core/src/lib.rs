//! Irreducibility certificates over `Q` from Eisenstein-Dumas polynomials in
//! the `GL(2, Q)` orbit of a polynomial.
//!
//! A [`poly::FormalPoly`] carries a formal degree `n` and is acted on by
//! nonsingular 2×2 matrices through the associated binary form. If some
//! member of the orbit satisfies the Eisenstein-Dumas conditions at a prime,
//! the polynomial is irreducible. [`certify::certify_search`] looks for such
//! a member in a structured, finite part of the orbit and returns a
//! [`certify::Certificate`] that can be rechecked independently.

pub mod certify;
pub mod error;
pub mod exact_arith;
pub mod moebius;
pub mod newton;
pub mod oracle;
pub mod poly;
pub mod sample;
pub mod valuation;

pub use certify::{
    candidate_primes, certify_search, lower_transform, one_param_member, phi, upper_transform,
    CandidatePrimes, Certificate, SearchConfig, Stage, Verdict, Witness,
};
pub use error::{Error, Result};
pub use exact_arith::{BigInt, FactorEffort, Rational};
pub use moebius::{act, Mat2, MatrixShape};
pub use newton::{
    dumas_concat_holds, is_ed, is_ed_strict, newton_polygon, EdReport, NewtonPolygon,
};
pub use oracle::{brute_irreducible, OracleVerdict};
pub use poly::FormalPoly;
pub use valuation::{PAdic, Val};
