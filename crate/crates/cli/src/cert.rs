//! JSON form of certificates and its independent re-validation.
//!
//! Every rational is written as an exact `num/den` string.

use edcert_core::{is_ed, Certificate, EdReport, Mat2, PAdic, Verdict};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::{format_poly, format_rational, parse_poly, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub d0: bool,
    pub d1: bool,
    pub d2: bool,
    pub gcd_value: Option<u64>,
    pub failing_index: Option<usize>,
}

impl From<&EdReport> for ReportJson {
    fn from(r: &EdReport) -> Self {
        ReportJson {
            d0: r.d0,
            d1: r.d1,
            d2: r.d2,
            gcd_value: r.gcd_value,
            failing_index: r.failing_index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditJson {
    pub prime: String,
    pub stage: u8,
    pub t: Option<String>,
    pub reason: String,
}

/// Serialized certificate. For an inconclusive verdict `prime`, `stage`,
/// `t`, `transform` and `report` are null and `witness_coeffs` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub input: String,
    pub formal_degree: usize,
    pub verdict: String,
    pub candidates_complete: bool,
    pub prime: Option<String>,
    pub stage: Option<u8>,
    pub t: Option<String>,
    pub transform: Option<[String; 4]>,
    pub witness_coeffs: Vec<String>,
    pub report: Option<ReportJson>,
    pub audit: Vec<AuditJson>,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        let w = c.witness.as_ref();
        let (verdict, candidates_complete) = match c.verdict {
            Verdict::Irreducible => ("irreducible", true),
            Verdict::Inconclusive {
                candidates_complete,
            } => ("inconclusive", candidates_complete),
        };
        CertificateJson {
            input: format_poly(&c.input),
            formal_degree: c.input.formal_degree(),
            verdict: verdict.to_string(),
            candidates_complete,
            prime: w.map(|w| w.prime.to_string()),
            stage: w.map(|w| w.stage.number()),
            t: w.and_then(|w| w.t.as_ref()).map(format_rational),
            transform: w.map(|w| w.transform.entries().map(format_rational)),
            witness_coeffs: w
                .map(|w| w.polynomial.coeffs().iter().map(format_rational).collect())
                .unwrap_or_default(),
            report: w.map(|w| ReportJson::from(&w.report)),
            audit: c
                .audit
                .iter()
                .map(|e| AuditJson {
                    prime: e.prime.to_string(),
                    stage: e.stage.number(),
                    t: e.t.as_ref().map(format_rational),
                    reason: e.reason.clone(),
                })
                .collect(),
        }
    }
}

pub fn to_json(cert: &Certificate) -> String {
    serde_json::to_string_pretty(&CertificateJson::from(cert)).expect("plain data serializes")
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("certificate is inconclusive")]
    Inconclusive,
    #[error("witness coefficients do not match act(input, transform)")]
    WitnessMismatch,
    #[error("stored report does not match the recomputed one")]
    ReportMismatch,
    #[error("recomputed report does not satisfy the Eisenstein-Dumas conditions")]
    NotEd,
}

fn malformed(e: impl ToString) -> VerifyError {
    VerifyError::Malformed(e.to_string())
}

/// Re-parses a JSON certificate, recomputes `act(input, transform)` and the
/// ED report at `prime`, and compares both with the stored values exactly.
/// Returns the recomputed report on success.
pub fn verify_json(text: &str) -> Result<EdReport, VerifyError> {
    let cert: CertificateJson = serde_json::from_str(text).map_err(malformed)?;
    let input = parse_poly(&cert.input, Some(cert.formal_degree)).map_err(malformed)?;
    match cert.verdict.as_str() {
        "irreducible" => {}
        "inconclusive" => return Err(VerifyError::Inconclusive),
        other => return Err(malformed(format!("unknown verdict {other:?}"))),
    }
    let prime = cert
        .prime
        .as_deref()
        .ok_or_else(|| malformed("missing prime"))?;
    let v = prime
        .parse::<edcert_core::BigInt>()
        .map_err(malformed)
        .and_then(|p| PAdic::new(p).map_err(malformed))?;
    let entries = cert
        .transform
        .as_ref()
        .ok_or_else(|| malformed("missing transform"))?
        .iter()
        .map(|s| parse_rational(s).map_err(malformed))
        .collect::<Result<Vec<_>, _>>()?;
    let [a, b, c, d]: [_; 4] = entries.try_into().expect("four entries");
    let g = Mat2::new(a, b, c, d).map_err(malformed)?;

    let image = input.act(&g);
    let recomputed: Vec<String> = image.coeffs().iter().map(format_rational).collect();
    if recomputed != cert.witness_coeffs {
        return Err(VerifyError::WitnessMismatch);
    }
    let report = is_ed(&image, &v);
    if Some(ReportJson::from(&report)) != cert.report {
        return Err(VerifyError::ReportMismatch);
    }
    if !report.verdict {
        return Err(VerifyError::NotEd);
    }
    Ok(report)
}
