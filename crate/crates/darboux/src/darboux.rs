//! The Lagutinskii-Pereira algorithm: compute E_N(D), detect the
//! infinite case, factor the curve, and keep the factors that pass the
//! Darboux divisibility test.

use crate::derivation::{AbsoluteIrreducibility, DarbouxCertificate, Derivation};
use crate::error::{Error, Result};
use crate::extactic::{extactic_curve, minimal_null_degree, ExtacticCurve};
use crate::factor::{count_absolute_factors, factor_bivariate};
use crate::poly::BiPoly;

#[derive(Clone, Debug)]
pub enum DarbouxOutcome {
    /// All irreducible Darboux polynomials of degree <= N, with cofactors.
    Finite(Vec<DarbouxCertificate>),
    /// E_N(D) = 0: infinitely many irreducible Darboux polynomials; the
    /// minimal degree with a vanishing curve is attached.
    InfiniteFamily { minimal_null_degree: Option<u32> },
}

#[derive(Clone, Debug)]
pub struct DarbouxReport {
    pub outcome: DarbouxOutcome,
    pub extactic: ExtacticCurve,
    pub degree_bound_used: u32,
    /// Factors of E_N(D) with degree > N: the divisibility theorem does
    /// not cover them, so they are reported untested for transparency.
    pub discarded_factors: Vec<(BiPoly, u32)>,
    /// Set when the number of certificates reaches the Darboux count
    /// threshold, which implies a rational first integral exists.
    pub implies_rational_first_integral: bool,
}

impl DarbouxReport {
    pub fn certificates(&self) -> &[DarbouxCertificate] {
        match &self.outcome {
            DarbouxOutcome::Finite(c) => c,
            DarbouxOutcome::InfiniteFamily { .. } => &[],
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.outcome, DarbouxOutcome::InfiniteFamily { .. })
    }
}

/// d(d+1)/2 + 2: a derivation with at least this many relatively prime
/// irreducible Darboux polynomials has a rational first integral.
pub fn darboux_count_threshold(d: u32) -> u64 {
    assert!(d >= 1, "threshold needs d >= 1");
    u64::from(d) * (u64::from(d) + 1) / 2 + 2
}

pub fn lagutinskii_pereira(d: &Derivation, n: u32) -> Result<DarbouxReport> {
    if n < 1 {
        return Err(Error::InvalidParameter(
            "lagutinskii_pereira needs N >= 1".into(),
        ));
    }
    let curve = extactic_curve(d, n);
    if curve.is_zero() {
        let minimal = minimal_null_degree(d, n);
        return Ok(DarbouxReport {
            outcome: DarbouxOutcome::InfiniteFamily {
                minimal_null_degree: minimal,
            },
            extactic: curve,
            degree_bound_used: n,
            discarded_factors: vec![],
            implies_rational_first_integral: true,
        });
    }
    let fact = factor_bivariate(&curve.poly)?;
    let mut certs = Vec::new();
    let mut discarded = Vec::new();
    for (f, mult) in fact.factors {
        if f.total_degree().unwrap_or(0) > n {
            discarded.push((f, mult));
            continue;
        }
        if let Some(mut cert) = d.cofactor_of(&f)? {
            cert.extactic_multiplicity = mult;
            cert.absolutely_irreducible = annotate_absolute(&f)?;
            // soundness: re-check D(f) = g f independently of the
            // division that produced g
            assert!(cert.verify(d), "certificate failed re-verification");
            certs.push(cert);
        }
    }
    let implies = certs.len() as u64 >= darboux_count_threshold(d.degree().max(1));
    Ok(DarbouxReport {
        outcome: DarbouxOutcome::Finite(certs),
        extactic: curve,
        degree_bound_used: n,
        discarded_factors: discarded,
        implies_rational_first_integral: implies,
    })
}

fn annotate_absolute(f: &BiPoly) -> Result<AbsoluteIrreducibility> {
    if f.total_degree().unwrap_or(0) == 1 {
        return Ok(AbsoluteIrreducibility::Yes);
    }
    Ok(if count_absolute_factors(f)? == 1 {
        AbsoluteIrreducibility::Yes
    } else {
        AbsoluteIrreducibility::No
    })
}
