//! Irreducibility certification by searching the Möbius orbit for an
//! Eisenstein-Dumas polynomial.
//!
//! For each candidate prime `p` (ascending) the search tries, in order:
//!
//! 1. the input itself;
//! 2. the upper transform `U(A) = A(x - a_{n-1}/(n a_n))`;
//! 3. the lower transform `L(A) = A·[[1, 0], [-a_1/(n a_0), 1]]`;
//! 4. members `A·[[t, φ(t)], [1, 1]]` of the one-parameter family, for each
//!    configured `t`.
//!
//! Stages 2 to 4 are only attempted when `p` does not divide `n`; without
//! that hypothesis `U` and `L` lose their canonical role. An ED polynomial
//! anywhere in the orbit proves the input irreducible; failure proves
//! nothing, so the only other verdict is "inconclusive".

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_arith::{factor, BigInt, FactorEffort, Rational};
use crate::moebius::{act, Mat2};
use crate::newton::{is_ed, EdReport};
use crate::poly::FormalPoly;
use crate::valuation::PAdic;

/// Default bound on numerator and denominator of the `t` grid.
pub const DEFAULT_T_HEIGHT: u64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Direct = 1,
    Upper = 2,
    Lower = 3,
    OneParameter = 4,
}

impl Stage {
    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Stage> {
        match n {
            1 => Some(Stage::Direct),
            2 => Some(Stage::Upper),
            3 => Some(Stage::Lower),
            4 => Some(Stage::OneParameter),
            _ => None,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Direct => "direct",
            Stage::Upper => "upper transform",
            Stage::Lower => "lower transform",
            Stage::OneParameter => "one-parameter family",
        };
        write!(f, "stage {} ({name})", self.number())
    }
}

/// Upper shear sending `A` to `U(A)`, whose `x^{n-1}` coefficient vanishes.
pub fn upper_transform(poly: &FormalPoly) -> Result<(Mat2, FormalPoly)> {
    let n = poly.formal_degree();
    if n == 0 {
        return Err(Error::DegreeTooSmall {
            required: 1,
            actual: 0,
        });
    }
    let lead = poly.leading();
    if lead.is_zero() {
        return Err(Error::LeadingCoefficientZero(n));
    }
    let shift = -(&poly.coeffs()[n - 1] / (lead * Rational::from_integer(n.into())));
    let transformed = poly.taylor_shift(&shift);
    Ok((Mat2::upper_shear(shift), transformed))
}

/// Lower shear sending `A` to `L(A)`, whose `x` coefficient vanishes.
pub fn lower_transform(poly: &FormalPoly) -> Result<(Mat2, FormalPoly)> {
    let n = poly.formal_degree();
    if n == 0 {
        return Err(Error::DegreeTooSmall {
            required: 1,
            actual: 0,
        });
    }
    let a0 = poly.constant_term();
    if a0.is_zero() {
        return Err(Error::ConstantCoefficientZero);
    }
    let c = -(&poly.coeffs()[1] / (a0 * Rational::from_integer(n.into())));
    let g = Mat2::lower_shear(c);
    let transformed = act(poly, &g);
    Ok((g, transformed))
}

/// `φ(t) = t - n A(t) / A'(t)`.
pub fn phi(poly: &FormalPoly, t: &Rational) -> Result<Rational> {
    let slope = poly.derivative().eval(t);
    if slope.is_zero() {
        return Err(Error::DerivativeVanishes(t.to_string()));
    }
    let n = Rational::from_integer(poly.formal_degree().into());
    Ok(t - n * poly.eval(t) / slope)
}

/// The member `A·[[t, φ(t)], [1, 1]]` of the one-parameter family. The matrix
/// has determinant `t - φ(t) = n A(t) / A'(t)`, so `t` must be neither a root
/// of `A` nor of `A'`.
pub fn one_param_member(poly: &FormalPoly, t: &Rational) -> Result<(Mat2, FormalPoly)> {
    let phi_t = phi(poly, t)?;
    if poly.eval(t).is_zero() {
        return Err(Error::PolynomialVanishes(t.to_string()));
    }
    let g = Mat2::new(
        t.clone(),
        phi_t,
        Rational::from_integer(1.into()),
        Rational::from_integer(1.into()),
    )?;
    let member = act(poly, &g);
    Ok((g, member))
}

/// Rationals `a/b` with `|a| ≤ height` and `1 ≤ b ≤ height`, without
/// repetition, ordered by height `max(|a|, b)` in lowest terms, then value.
pub fn t_grid(height: u64) -> Vec<Rational> {
    let h = height as i64;
    let mut seen = BTreeSet::new();
    for b in 1..=h {
        for a in -h..=h {
            let q = Rational::new(a.into(), b.into());
            let ht = q.numer().abs().max(q.denom().clone());
            seen.insert((ht, q));
        }
    }
    seen.into_iter().map(|(_, q)| q).collect()
}

/// Primes worth trying, with the factorization status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidatePrimes {
    pub primes: BTreeSet<BigInt>,
    /// False if some cofactor could not be split within the effort budget.
    pub complete: bool,
    /// True when `a_0 a_n = 0` and only the primes dividing `n` were used.
    pub degenerate: bool,
}

/// Primes dividing `n`, or the numerator or denominator of `b_0/b_n` (for
/// `U(A)`) or `c_0/c_n` (for `L(A)`). A ratio is skipped when it is zero or
/// undefined. Any other prime has `v_p = 0` on both ratios, hence a gcd of
/// `n` with them, and cannot satisfy D1 after a triangular transform.
pub fn candidate_primes(poly: &FormalPoly, effort: &FactorEffort) -> CandidatePrimes {
    let n = poly.formal_degree();
    let mut out = CandidatePrimes {
        primes: BTreeSet::new(),
        complete: true,
        degenerate: false,
    };
    let absorb = |m: &BigInt, out: &mut CandidatePrimes| {
        if m.is_zero() {
            return;
        }
        let f = factor(m, effort).expect("nonzero input");
        out.complete &= f.is_complete();
        out.primes.extend(f.primes.into_keys());
    };
    if n > 0 {
        absorb(&BigInt::from(n), &mut out);
    }
    if poly.constant_term().is_zero() || poly.leading().is_zero() || n == 0 {
        out.degenerate = true;
        return out;
    }
    let ratios = [
        upper_transform(poly)
            .ok()
            .map(|(_, u)| (u.constant_term().clone(), u.leading().clone())),
        lower_transform(poly)
            .ok()
            .map(|(_, l)| (l.constant_term().clone(), l.leading().clone())),
    ];
    for (num, den) in ratios.into_iter().flatten() {
        if num.is_zero() || den.is_zero() {
            continue;
        }
        let q = num / den;
        absorb(q.numer(), &mut out);
        absorb(q.denom(), &mut out);
    }
    out
}

/// Search parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Parameters tried in the one-parameter stage, in order.
    pub t_candidates: Vec<Rational>,
    /// Primes tried in addition to the computed candidates.
    pub extra_primes: Vec<BigInt>,
    pub effort: FactorEffort,
}

impl SearchConfig {
    pub fn with_height(height: u64) -> Self {
        SearchConfig {
            t_candidates: t_grid(height),
            extra_primes: Vec::new(),
            effort: FactorEffort::default(),
        }
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig::with_height(DEFAULT_T_HEIGHT)
    }
}

/// The successful part of a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub prime: BigInt,
    pub stage: Stage,
    /// The family parameter, for stage 4 only.
    pub t: Option<Rational>,
    pub transform: Mat2,
    /// `act(input, transform)`.
    pub polynomial: FormalPoly,
    pub report: EdReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    /// No witness found. `candidates_complete` is false when some
    /// factorization was cut short, so the prime set may be missing entries.
    Inconclusive {
        candidates_complete: bool,
    },
}

/// One failed or skipped attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub prime: BigInt,
    pub stage: Stage,
    pub t: Option<Rational>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub input: FormalPoly,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub audit: Vec<AuditEntry>,
}

impl Certificate {
    /// Re-derives the witness from the input: the transformed polynomial
    /// must match exactly and the ED report must recompute to the stored one
    /// with a true verdict.
    pub fn recheck(&self) -> bool {
        match (&self.verdict, &self.witness) {
            (Verdict::Irreducible, Some(w)) => {
                let Ok(v) = PAdic::new(w.prime.clone()) else {
                    return false;
                };
                let report = is_ed(&w.polynomial, &v);
                self.input.is_proper()
                    && act(&self.input, &w.transform) == w.polynomial
                    && report == w.report
                    && report.verdict
            }
            (Verdict::Inconclusive { .. }, None) => true,
            _ => false,
        }
    }
}

fn failure_reason(r: &EdReport) -> String {
    if !r.d0 {
        "D0 fails: a_0 a_n = 0".to_string()
    } else if !r.d1 {
        format!("D1 fails: gcd = {}", r.gcd_value.unwrap_or(0))
    } else {
        format!("D2 fails at i = {}", r.failing_index.unwrap_or(0))
    }
}

/// A transformed polynomial tried at every eligible prime.
struct Attempt {
    stage: Stage,
    t: Option<Rational>,
    outcome: std::result::Result<(Mat2, FormalPoly), String>,
}

struct PrimeOutcome {
    witness: Option<Witness>,
    audit: Vec<AuditEntry>,
}

fn try_prime<'a>(
    poly: &FormalPoly,
    p: &BigInt,
    triangular: &'a [Attempt],
    family: impl FnOnce() -> &'a [Attempt],
) -> PrimeOutcome {
    let v = PAdic::new(p.clone()).expect("candidate primes are prime");
    let n = poly.formal_degree();
    let mut audit = Vec::new();
    let entry = |stage, t: &Option<Rational>, reason| AuditEntry {
        prime: p.clone(),
        stage,
        t: t.clone(),
        reason,
    };

    let direct = is_ed(poly, &v);
    if direct.verdict {
        return PrimeOutcome {
            witness: Some(Witness {
                prime: p.clone(),
                stage: Stage::Direct,
                t: None,
                transform: Mat2::identity(),
                polynomial: poly.clone(),
                report: direct,
            }),
            audit,
        };
    }
    audit.push(entry(Stage::Direct, &None, failure_reason(&direct)));

    if v.residue_char_divides(n) {
        audit.push(entry(
            Stage::Upper,
            &None,
            format!("skipped stages 2-4: {p} divides n = {n}"),
        ));
        return PrimeOutcome {
            witness: None,
            audit,
        };
    }

    for attempt in triangular
        .iter()
        .chain(std::iter::once(family).flat_map(|f| f()))
    {
        match &attempt.outcome {
            Err(reason) => audit.push(entry(attempt.stage, &attempt.t, reason.clone())),
            Ok((g, transformed)) => {
                let report = is_ed(transformed, &v);
                if report.verdict {
                    return PrimeOutcome {
                        witness: Some(Witness {
                            prime: p.clone(),
                            stage: attempt.stage,
                            t: attempt.t.clone(),
                            transform: g.clone(),
                            polynomial: transformed.clone(),
                            report,
                        }),
                        audit,
                    };
                }
                audit.push(entry(attempt.stage, &attempt.t, failure_reason(&report)));
            }
        }
    }
    PrimeOutcome {
        witness: None,
        audit,
    }
}

/// Runs the staged search and returns the first success in
/// (prime, stage, t) order, so the certificate is a pure function of the
/// input and configuration. One-parameter members are built lazily, in
/// parallel, the first time a prime reaches stage 4.
pub fn certify_search(poly: &FormalPoly, config: &SearchConfig) -> Result<Certificate> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = poly.formal_degree();
    if !poly.is_proper() {
        return Err(Error::RootAtInfinity(n));
    }
    if n < 2 {
        return Err(Error::DegreeTooSmall {
            required: 2,
            actual: n,
        });
    }

    let candidates = candidate_primes(poly, &config.effort);
    let mut primes = candidates.primes.clone();
    for p in &config.extra_primes {
        primes.insert(PAdic::new(p.clone())?.prime().clone());
    }
    let primes: Vec<BigInt> = primes.into_iter().collect();

    let triangular = triangular_attempts(poly);
    let family: OnceCell<Vec<Attempt>> = OnceCell::new();

    let mut audit = Vec::new();
    for p in &primes {
        let outcome = try_prime(poly, p, &triangular, || {
            family.get_or_init(|| family_attempts(poly, &config.t_candidates))
        });
        audit.extend(outcome.audit);
        if let Some(witness) = outcome.witness {
            return Ok(Certificate {
                input: poly.clone(),
                verdict: Verdict::Irreducible,
                witness: Some(witness),
                audit,
            });
        }
    }
    Ok(Certificate {
        input: poly.clone(),
        verdict: Verdict::Inconclusive {
            candidates_complete: candidates.complete,
        },
        witness: None,
        audit,
    })
}

/// Stages 2 and 3 do not depend on the prime, so they are computed once.
fn triangular_attempts(poly: &FormalPoly) -> Vec<Attempt> {
    vec![
        Attempt {
            stage: Stage::Upper,
            t: None,
            outcome: upper_transform(poly).map_err(|e| e.to_string()),
        },
        Attempt {
            stage: Stage::Lower,
            t: None,
            outcome: lower_transform(poly).map_err(|e| e.to_string()),
        },
    ]
}

/// Stage 4 members, one per `t`, built in parallel.
fn family_attempts(poly: &FormalPoly, ts: &[Rational]) -> Vec<Attempt> {
    ts.par_iter()
        .map(|t| Attempt {
            stage: Stage::OneParameter,
            t: Some(t.clone()),
            outcome: one_param_member(poly, t).map_err(|e| e.to_string()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rational};

    fn p(c: &[i64]) -> FormalPoly {
        FormalPoly::from_ints(c)
    }

    fn cyclotomic(p: usize) -> FormalPoly {
        FormalPoly::from_ints(&vec![1; p])
    }

    fn primes(c: &CandidatePrimes) -> Vec<u64> {
        use num_traits::ToPrimitive;
        c.primes.iter().map(|p| p.to_u64().unwrap()).collect()
    }

    #[test]
    fn upper_examples() {
        let (g, u) = upper_transform(&p(&[8, 4, 1])).unwrap();
        assert_eq!(g, Mat2::upper_shear(int(-2)));
        assert_eq!(u, p(&[4, 0, 1]));

        let a = p(&[3, 1, 0, 5]);
        let (g, u) = upper_transform(&a).unwrap();
        assert_eq!(g, Mat2::identity());
        assert_eq!(u, a);

        let (g, u) = upper_transform(&cyclotomic(5)).unwrap();
        assert_eq!(g, Mat2::upper_shear(rational(-1, 4)));
        assert_eq!(u.constant_term(), &rational(205, 256));
        assert!(u.coeffs()[3].is_zero());
    }

    #[test]
    fn upper_requires_leading_coefficient() {
        let a = FormalPoly::with_formal_degree(vec![int(1), int(1)], 2).unwrap();
        assert_eq!(upper_transform(&a), Err(Error::LeadingCoefficientZero(2)));
        assert!(matches!(
            upper_transform(&p(&[3])),
            Err(Error::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn lower_examples() {
        let (g, l) = lower_transform(&p(&[8, 4, 1])).unwrap();
        assert_eq!(g, Mat2::lower_shear(rational(-1, 4)));
        assert_eq!(l, FormalPoly::new(vec![int(8), int(0), rational(1, 2)]));

        let a = p(&[3, 0, 1, 5]);
        let (g, l) = lower_transform(&a).unwrap();
        assert_eq!(g, Mat2::identity());
        assert_eq!(l, a);

        let a = p(&[3, -2, 7, 5]);
        let (_, l) = lower_transform(&a).unwrap();
        let (_, u) = upper_transform(&a.reverse()).unwrap();
        assert_eq!(l, u.reverse());
        assert_eq!(
            lower_transform(&p(&[0, 1, 1])),
            Err(Error::ConstantCoefficientZero)
        );
    }

    #[test]
    fn phi_examples() {
        // A(t) = 0 gives a fixed point.
        let a = p(&[-1, 0, 1]);
        assert_eq!(phi(&a, &int(1)).unwrap(), int(1));
        assert_eq!(phi(&p(&[0, 0, 1]), &int(1)).unwrap(), int(0));
        assert_eq!(phi(&p(&[8, 4, 1]), &int(0)).unwrap(), int(-4));
        assert!(matches!(
            phi(&p(&[8, 4, 1]), &int(-2)),
            Err(Error::DerivativeVanishes(_))
        ));
    }

    #[test]
    fn one_param_examples() {
        let a = p(&[8, 4, 1]);
        let (g, member) = one_param_member(&a, &int(0)).unwrap();
        let expected = Mat2::new(int(0), int(-4), int(1), int(1)).unwrap();
        assert_eq!(g, expected);
        assert_eq!(member, act(&a, &expected));
        // det = n A(t)/A'(t) = 2 * 8/4.
        assert_eq!(g.det(), int(4));

        assert!(matches!(
            one_param_member(&p(&[-1, 0, 1]), &int(1)),
            Err(Error::PolynomialVanishes(_))
        ));
        assert!(matches!(
            one_param_member(&a, &int(-2)),
            Err(Error::DerivativeVanishes(_))
        ));
    }

    #[test]
    fn t_grid_order() {
        let g = t_grid(2);
        let expected = vec![
            int(-1),
            int(0),
            int(1),
            int(-2),
            rational(-1, 2),
            rational(1, 2),
            int(2),
        ];
        assert_eq!(g, expected);
        let g = t_grid(8);
        let set: BTreeSet<_> = g.iter().cloned().collect();
        assert_eq!(set.len(), g.len());
        assert!(g.contains(&rational(-7, 8)));
        assert!(!g.contains(&rational(9, 8)));
    }

    #[test]
    fn candidate_prime_examples() {
        let effort = FactorEffort::default();
        let c = candidate_primes(&p(&[9, 0, -14, 0, 1]), &effort);
        assert_eq!(primes(&c), vec![2, 3]);
        assert!(c.complete && !c.degenerate);

        let c = candidate_primes(&cyclotomic(5), &effort);
        for q in [2, 5, 41] {
            assert!(primes(&c).contains(&q));
        }

        let c = candidate_primes(&p(&[8, 4, 1]), &effort);
        assert!(primes(&c).contains(&2));

        let c = candidate_primes(&p(&[0, 3, 1]), &effort);
        assert!(c.degenerate);
        assert_eq!(primes(&c), vec![2]);
    }

    #[test]
    fn certify_ed_input_whose_normal_forms_fail() {
        let cert = certify_search(&p(&[8, 4, 1]), &SearchConfig::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Irreducible);
        let w = cert.witness.as_ref().unwrap();
        assert_eq!(w.prime, BigInt::from(2));
        assert_eq!(w.stage, Stage::Direct);
        assert!(cert.recheck());
    }

    #[test]
    fn certify_cyclotomic_uses_upper_transform() {
        for q in [3usize, 5, 7] {
            let cert = certify_search(&cyclotomic(q), &SearchConfig::default()).unwrap();
            let w = cert.witness.as_ref().unwrap();
            assert_eq!(w.prime, BigInt::from(q));
            assert_eq!(w.stage, Stage::Upper);
            assert_eq!(w.transform, Mat2::upper_shear(rational(-1, q as i64 - 1)));
            assert!(cert.recheck());
        }
    }

    #[test]
    fn certify_counterexample_is_inconclusive() {
        let cert = certify_search(&p(&[9, 0, -14, 0, 1]), &SearchConfig::default()).unwrap();
        assert_eq!(
            cert.verdict,
            Verdict::Inconclusive {
                candidates_complete: true
            }
        );
        assert!(cert.witness.is_none());
        assert!(cert.audit.iter().any(|e| e.stage == Stage::OneParameter));
        assert!(cert.recheck());
    }

    #[test]
    fn certify_rejects_bad_input() {
        let cfg = SearchConfig::default();
        let improper = FormalPoly::with_formal_degree(vec![int(1), int(0), int(1)], 3).unwrap();
        assert_eq!(
            certify_search(&improper, &cfg),
            Err(Error::RootAtInfinity(3))
        );
        assert!(matches!(
            certify_search(&p(&[1, 1]), &cfg),
            Err(Error::DegreeTooSmall { .. })
        ));
        assert_eq!(
            certify_search(&FormalPoly::zero(2), &cfg),
            Err(Error::ZeroPolynomial)
        );
        let cfg = SearchConfig {
            extra_primes: vec![BigInt::from(4)],
            ..SearchConfig::default()
        };
        assert!(matches!(
            certify_search(&p(&[8, 4, 1]), &cfg),
            Err(Error::NotPrime(_))
        ));
    }

    #[test]
    fn extra_primes_are_searched() {
        // x^2 + 3x + 3 is Eisenstein at 3; the extra prime sorts after it.
        let cfg = SearchConfig {
            extra_primes: vec![BigInt::from(101)],
            ..SearchConfig::default()
        };
        let cert = certify_search(&p(&[3, 3, 1]), &cfg).unwrap();
        assert_eq!(cert.witness.unwrap().prime, BigInt::from(3));
    }

    #[test]
    fn one_parameter_stage_certifies() {
        // x^3 + 2 is ED at v_2 and 2 does not divide 3; hide it behind a
        // dense matrix and offer t = s/u = 1.
        let e = p(&[2, 0, 0, 1]);
        let g = Mat2::new(int(1), int(2), int(1), int(3)).unwrap();
        let a = act(&e, &g.inverse());
        let cfg = SearchConfig {
            t_candidates: vec![int(1)],
            ..SearchConfig::default()
        };
        let cert = certify_search(&a, &cfg).unwrap();
        assert_eq!(cert.verdict, Verdict::Irreducible);
        assert!(cert.recheck());
    }

    #[test]
    fn search_is_deterministic() {
        let a = p(&[6, -4, 2, 9, 3]);
        let cfg = SearchConfig::default();
        let first = certify_search(&a, &cfg).unwrap();
        for _ in 0..3 {
            assert_eq!(certify_search(&a, &cfg).unwrap(), first);
        }
    }
}
