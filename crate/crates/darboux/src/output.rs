//! Machine-readable result documents.
//!
//! Polynomials are serialized in the canonical expression syntax, so a
//! document round-trips through the parser.  Big integers and rationals
//! travel as strings.  Field order is fixed by the struct definitions,
//! making repeated runs byte-identical except for `timing_ms`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::darboux::{DarbouxOutcome, DarbouxReport};
use crate::derivation::{AbsoluteIrreducibility, DarbouxCertificate, Derivation};
use crate::extactic::ExtacticCurve;
use crate::poly::BiPoly;
use crate::prellesinger::{PowerProductCertificate, ProductKind};
use crate::ratfirstint::RationalFirstIntegral;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Clone, Debug)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub command: String,
    pub input: SystemInfo,
    pub parameters: Parameters,
    pub result: ResultBody,
    pub verify: VerifyInfo,
    pub timing_ms: u128,
}

#[derive(Serialize, Clone, Debug)]
pub struct SystemInfo {
    pub a: String,
    pub b: String,
    pub degree: u32,
    pub height: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_common_factor: Option<String>,
}

impl SystemInfo {
    pub fn new(d: &Derivation, removed: Option<&BiPoly>) -> Self {
        SystemInfo {
            a: d.a().to_canonical_string(),
            b: d.b().to_canonical_string(),
            degree: d.degree(),
            height: d.height().to_string(),
            reduced_common_factor: removed.map(|f| f.to_canonical_string()),
        }
    }
}

#[derive(Serialize, Clone, Debug, Default)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
}

#[derive(Serialize, Clone, Debug, Default)]
pub struct ResultBody {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extactic: Option<ExtacticOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub darboux: Option<DarbouxOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_integral: Option<FirstIntegralOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prelle_singer: Option<PrelleSingerOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_integrating_factor: Option<InverseOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bench: Option<BenchOut>,
}

#[derive(Serialize, Clone, Debug)]
pub struct ExtacticOut {
    pub curve: String,
    pub n: u32,
    pub reduced: bool,
    pub is_zero: bool,
    pub degree: Option<u32>,
    pub height: String,
    pub basis_len: usize,
    pub degree_bound: u64,
    pub height_bound: String,
}

impl ExtacticOut {
    pub fn new(c: &ExtacticCurve) -> Self {
        ExtacticOut {
            curve: c.poly.to_canonical_string(),
            n: c.n,
            reduced: c.reduced,
            is_zero: c.poly.is_zero(),
            degree: c.poly.total_degree(),
            height: c.poly.height().to_string(),
            basis_len: c.basis_len,
            degree_bound: c.degree_bound,
            height_bound: c.height_bound.to_string(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct CertificateOut {
    pub poly: String,
    pub cofactor: String,
    pub degree: u32,
    pub extactic_multiplicity: u32,
    pub absolutely_irreducible: String,
}

impl CertificateOut {
    pub fn new(c: &DarbouxCertificate) -> Self {
        CertificateOut {
            poly: c.poly.to_canonical_string(),
            cofactor: c.cofactor.to_canonical_string(),
            degree: c.poly.total_degree().unwrap_or(0),
            extactic_multiplicity: c.extactic_multiplicity,
            absolutely_irreducible: match c.absolutely_irreducible {
                AbsoluteIrreducibility::Yes => "yes",
                AbsoluteIrreducibility::No => "no",
                AbsoluteIrreducibility::Unknown => "unknown",
            }
            .to_string(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct DiscardedFactorOut {
    pub poly: String,
    pub multiplicity: u32,
    pub degree: u32,
}

#[derive(Serialize, Clone, Debug)]
pub struct DarbouxOut {
    pub outcome: String,
    pub certificates: Vec<CertificateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_null_degree: Option<u32>,
    pub discarded_factors: Vec<DiscardedFactorOut>,
    pub implies_rational_first_integral: bool,
    pub count_threshold: u64,
    pub extactic: ExtacticOut,
}

impl DarbouxOut {
    pub fn new(r: &DarbouxReport, threshold: u64) -> Self {
        let (outcome, minimal) = match &r.outcome {
            DarbouxOutcome::Finite(_) => ("finite".to_string(), None),
            DarbouxOutcome::InfiniteFamily {
                minimal_null_degree,
            } => ("infinite_family".to_string(), *minimal_null_degree),
        };
        DarbouxOut {
            outcome,
            certificates: r.certificates().iter().map(CertificateOut::new).collect(),
            minimal_null_degree: minimal,
            discarded_factors: r
                .discarded_factors
                .iter()
                .map(|(f, m)| DiscardedFactorOut {
                    poly: f.to_canonical_string(),
                    multiplicity: *m,
                    degree: f.total_degree().unwrap_or(0),
                })
                .collect(),
            implies_rational_first_integral: r.implies_rational_first_integral,
            count_threshold: threshold,
            extactic: ExtacticOut::new(&r.extactic),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct FirstIntegralOut {
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<[u64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub none_below: Option<u32>,
}

impl FirstIntegralOut {
    pub fn found(fi: &RationalFirstIntegral) -> Self {
        FirstIntegralOut {
            found: true,
            p: Some(fi.p.to_canonical_string()),
            q: Some(fi.q.to_canonical_string()),
            degree: Some(fi.degree),
            shift: Some([fi.shift_used.0, fi.shift_used.1]),
            iterations: Some(fi.iterations),
            none_below: None,
        }
    }

    pub fn none_below(n: u32) -> Self {
        FirstIntegralOut {
            found: false,
            p: None,
            q: None,
            degree: None,
            shift: None,
            iterations: None,
            none_below: Some(n),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct ProductOut {
    pub kind: String,
    pub factors: Vec<String>,
    pub cofactors: Vec<String>,
    pub exponents: Vec<String>,
    pub homogeneous_exponents: Vec<Vec<String>>,
    pub product_display: String,
}

impl ProductOut {
    pub fn new(p: &PowerProductCertificate) -> Self {
        ProductOut {
            kind: match p.kind {
                ProductKind::FirstIntegral => "first_integral",
                ProductKind::IntegratingFactor => "integrating_factor",
            }
            .to_string(),
            factors: p
                .certificates
                .iter()
                .map(|c| c.poly.to_canonical_string())
                .collect(),
            cofactors: p
                .certificates
                .iter()
                .map(|c| c.cofactor.to_canonical_string())
                .collect(),
            exponents: p.exponents.iter().map(rational_string).collect(),
            homogeneous_exponents: p
                .homogeneous_exponents
                .iter()
                .map(|v| v.iter().map(rational_string).collect())
                .collect(),
            product_display: power_product_display(p),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct PrelleSingerOut {
    pub outcome: String,
    pub degree_reached: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_first_integral: Option<FirstIntegralOut>,
}

#[derive(Serialize, Clone, Debug)]
pub struct InverseOut {
    pub basis: Vec<String>,
    pub dimension: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct BenchOut {
    pub d: u32,
    pub system: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub emitted_to: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub darboux: Option<DarbouxOut>,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerifyInfo {
    pub enabled: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
}

pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Human form of a power product, e.g. `(X)^-1 * (Y)^-1`.
pub fn power_product_display(p: &PowerProductCertificate) -> String {
    let mut parts = Vec::new();
    for (cert, e) in p.certificates.iter().zip(&p.exponents) {
        if e.is_zero() {
            continue;
        }
        parts.push(format!(
            "({})^{}",
            cert.poly.to_canonical_string(),
            rational_string(e)
        ));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" * ")
    }
}

/// Serialize with the fixed field order; pretty format for humans.
pub fn to_json(doc: &ResultDocument) -> String {
    serde_json::to_string_pretty(doc).expect("document serializes")
}

pub fn bigint_string(v: &BigInt) -> String {
    v.to_string()
}
