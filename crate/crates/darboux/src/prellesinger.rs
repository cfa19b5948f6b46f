//! Linear-algebra steps of the Prelle-Singer method over a set of
//! Darboux certificates, plus the inverse-integrating-factor system.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::derivation::{DarbouxCertificate, Derivation};
use crate::error::Result;
use crate::extactic::MonomialBasis;
use crate::linalg::{
    reduce_against_lattice, solve_diophantine, AffineOutcome, RatMatrix,
};
use crate::poly::BiPoly;
use crate::ratfirstint::kernel_of_cofactor_map;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    FirstIntegral,
    IntegratingFactor,
}

/// A power product prod f_i^(n_i) of Darboux polynomials whose cofactor
/// sum witnesses either a first integral (sum = 0) or an integrating
/// factor (sum = -div(A,B)).
#[derive(Clone, Debug)]
pub struct PowerProductCertificate {
    pub certificates: Vec<DarbouxCertificate>,
    /// Exponents; integers whenever an integer solution exists (always,
    /// for the first-integral kind).
    pub exponents: Vec<BigRational>,
    pub kind: ProductKind,
    /// Basis of the homogeneous solution space, attached when the
    /// integrating-factor system is underdetermined.
    pub homogeneous_exponents: Vec<Vec<BigRational>>,
}

impl PowerProductCertificate {
    /// Sum of n_i g_i over the certificates.
    pub fn cofactor_sum(&self) -> BiPoly {
        let mut acc = BiPoly::zero();
        for (cert, e) in self.certificates.iter().zip(&self.exponents) {
            acc = &acc + &cert.cofactor.scale(e);
        }
        acc
    }

    /// Re-check the defining identity symbolically.
    pub fn verify(&self, d: &Derivation) -> bool {
        let sum = self.cofactor_sum();
        match self.kind {
            ProductKind::FirstIntegral => {
                sum.is_zero() && self.exponents.iter().any(|e| !e.is_zero())
            }
            ProductKind::IntegratingFactor => sum == -&d.divergence(),
        }
    }
}

/// Cofactor-coefficient matrix: one column per certificate, rows over
/// the degree-<= d-1 monomial space in cantor order.
fn cofactor_matrix(d: &Derivation, certs: &[DarbouxCertificate]) -> (RatMatrix, MonomialBasis) {
    let rows_basis = MonomialBasis::full(d.degree().max(1) - 1);
    let mut m = RatMatrix::zero(rows_basis.len(), certs.len());
    for (col, cert) in certs.iter().enumerate() {
        for (mono, c) in cert.cofactor.terms() {
            let row = rows_basis
                .index_of(mono)
                .expect("cofactor degree <= d - 1");
            m.set(row, col, c.clone());
        }
    }
    (m, rows_basis)
}

/// Step 3: a nonzero integer solution of sum n_i g_i = 0, as a power
/// product that is then a first integral; `None` when only the trivial
/// solution exists.
pub fn solve_log_derivative(
    d: &Derivation,
    certs: &[DarbouxCertificate],
) -> Option<PowerProductCertificate> {
    if certs.is_empty() {
        return None;
    }
    let (m, _) = cofactor_matrix(d, certs);
    let kernel = m.nullspace();
    let first = kernel.into_iter().next()?;
    let out = PowerProductCertificate {
        certificates: certs.to_vec(),
        exponents: first,
        kind: ProductKind::FirstIntegral,
        homogeneous_exponents: vec![],
    };
    assert!(out.verify(d), "cofactor sum must vanish exactly");
    Some(out)
}

/// Step 4: exponents with sum n_i g_i = -div(A,B).  Prefers an integer
/// point of the affine solution space (reduced against the kernel
/// lattice); falls back to the rational solution with free variables at
/// zero.  `None` when the system is inconsistent.
pub fn solve_integrating_factor(
    d: &Derivation,
    certs: &[DarbouxCertificate],
) -> Result<Option<PowerProductCertificate>> {
    let div = d.divergence();
    if certs.is_empty() {
        if div.is_zero() {
            return Ok(Some(PowerProductCertificate {
                certificates: vec![],
                exponents: vec![],
                kind: ProductKind::IntegratingFactor,
                homogeneous_exponents: vec![],
            }));
        }
        return Ok(None);
    }
    let (m, rows_basis) = cofactor_matrix(d, certs);
    let rhs: Vec<BigRational> = rows_basis
        .monomials()
        .iter()
        .map(|mono| -div.coeff(mono.x, mono.y))
        .collect();
    let homogeneous = m.nullspace();
    // integer-first: the matrix and right-hand side are integral
    let m_int: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    debug_assert!(m.get(i, j).denom().is_one());
                    m.get(i, j).numer().clone()
                })
                .collect()
        })
        .collect();
    let rhs_int: Vec<BigInt> = rhs
        .iter()
        .map(|b| {
            debug_assert!(b.denom().is_one());
            b.numer().clone()
        })
        .collect();
    let exponents = if let Some((mut x, lattice)) = solve_diophantine(&m_int, &rhs_int) {
        reduce_against_lattice(&mut x, &lattice);
        x.into_iter().map(BigRational::from_integer).collect()
    } else {
        match m.solve_affine(&rhs)? {
            AffineOutcome::Solution { particular, .. } => particular,
            AffineOutcome::Inconsistent => return Ok(None),
        }
    };
    let out = PowerProductCertificate {
        certificates: certs.to_vec(),
        exponents,
        kind: ProductKind::IntegratingFactor,
        homogeneous_exponents: homogeneous,
    };
    assert!(out.verify(d), "cofactor sum must equal -div exactly");
    Ok(Some(out))
}

/// Basis of {R : deg R <= N, A R_X + B R_Y = div(A,B) R}: polynomial
/// inverse integrating factors, computed as a cofactor-map kernel at
/// g = div(A,B).
pub fn inverse_integrating_factor(d: &Derivation, n: u32) -> Result<Vec<BiPoly>> {
    let basis = kernel_of_cofactor_map(d, &d.divergence(), n)?;
    for r in &basis {
        debug_assert!(
            (&(&(d.a() * &r.partial_x()) + &(d.b() * &r.partial_y()))
                - &(&d.divergence() * r))
                .is_zero(),
            "inverse integrating factor identity must hold"
        );
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::darboux::lagutinskii_pereira;
    use crate::derivation::{gen_exponential_example, gen_linear_example, Derivation};
    use crate::parse::parse_polynomial;

    fn p(s: &str) -> BiPoly {
        parse_polynomial(s).unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn linear_certs(d: &Derivation) -> Vec<DarbouxCertificate> {
        lagutinskii_pereira(d, 1).unwrap().certificates().to_vec()
    }

    #[test]
    fn log_derivative_for_linear_fixture() {
        let d = gen_linear_example(2);
        let certs = linear_certs(&d); // {(Y, 2), (X, 3)} in canonical order
        let out = solve_log_derivative(&d, &certs).unwrap();
        // cofactors (2, 3): kernel (3, -2) means Y^3 X^-2, i.e. the
        // inverse of X^2 Y^-3; proportional to the expected solution
        assert_eq!(out.exponents, vec![rat(3), rat(-2)]);
        assert!(out.verify(&d));
    }

    #[test]
    fn log_derivative_none_for_independent_cofactors() {
        let d = gen_exponential_example(3).unwrap();
        let certs = linear_certs(&d); // cofactors X+2 and X+1
        assert!(solve_log_derivative(&d, &certs).is_none());
    }

    #[test]
    fn log_derivative_single_zero_cofactor() {
        let d = gen_exponential_example(3).unwrap();
        let f = crate::derivation::exponential_first_integral(3);
        let cert = d.cofactor_of(&f).unwrap().unwrap();
        let out = solve_log_derivative(&d, &[cert]).unwrap();
        assert_eq!(out.exponents, vec![rat(1)]);
    }

    #[test]
    fn integrating_factor_for_linear_fixture() {
        let d = gen_linear_example(2);
        let certs = linear_certs(&d);
        let out = solve_integrating_factor(&d, &certs).unwrap().unwrap();
        // certificates in canonical order are (Y, 2), (X, 3):
        // 2 n1 + 3 n2 = -5 has the integer point (-1, -1)
        assert_eq!(out.exponents, vec![rat(-1), rat(-1)]);
        assert_eq!(out.homogeneous_exponents, vec![vec![rat(3), rat(-2)]]);
        assert!(out.verify(&d));
    }

    #[test]
    fn integrating_factor_trivial_for_hamiltonian() {
        let d = gen_exponential_example(3).unwrap();
        let certs = linear_certs(&d);
        let out = solve_integrating_factor(&d, &certs).unwrap().unwrap();
        assert!(out.exponents.iter().all(|e| e.is_zero()));
        assert!(out.verify(&d));
        // empty certificate set also admits the trivial factor
        let out = solve_integrating_factor(&d, &[]).unwrap().unwrap();
        assert!(out.exponents.is_empty());
    }

    #[test]
    fn integrating_factor_none_when_unreachable() {
        let d = gen_linear_example(2);
        assert!(solve_integrating_factor(&d, &[]).unwrap().is_none());
        // a single certificate with cofactor 3 forces the rational
        // solution n = -5/3
        let cert = d.cofactor_of(&p("X")).unwrap().unwrap();
        let out = solve_integrating_factor(&d, &[cert]).unwrap().unwrap();
        assert_eq!(
            out.exponents,
            vec![BigRational::new(BigInt::from(-5), BigInt::from(3))]
        );
        assert!(out.verify(&d));
    }

    #[test]
    fn inverse_integrating_factor_examples() {
        let d = gen_linear_example(2);
        let basis = inverse_integrating_factor(&d, 2).unwrap();
        assert_eq!(basis, vec![p("X*Y")]);
        // Hamiltonian: div = 0, constants solve the system at N = 0
        let d3 = gen_exponential_example(3).unwrap();
        let basis = inverse_integrating_factor(&d3, 0).unwrap();
        assert_eq!(basis, vec![BiPoly::one()]);
        // fixture A at N = 1: whatever the solver returns must satisfy
        // the identity
        let fa = Derivation::new(p("-2*X^2"), p("1 - 4*X*Y")).unwrap();
        let basis = inverse_integrating_factor(&fa, 1).unwrap();
        for r in &basis {
            let lhs = &(&(fa.a() * &r.partial_x()) + &(fa.b() * &r.partial_y()))
                - &(&fa.divergence() * r);
            assert!(lhs.is_zero());
        }
    }

    #[test]
    fn darboux_threshold_consistency() {
        // reaching the Darboux count threshold forces a log-derivative
        // relation; the linear fixture at degree 3 has infinitely many
        // certificates, so test the contrapositive shape on a small set:
        // with both X and Y plus the pencil member X^2 - Y^3 we exceed
        // nothing, but a relation already exists among {X, Y, X^2-Y^3}
        let d = gen_linear_example(2);
        let mut certs = linear_certs(&d);
        certs.push(d.cofactor_of(&p("X^2 - Y^3")).unwrap().unwrap());
        let out = solve_log_derivative(&d, &certs).unwrap();
        assert!(out.verify(&d));
    }
}
