//! The polynomial derivation D = A dX + B dY and Darboux certificates.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gcd;
use crate::poly::BiPoly;

/// Planar polynomial derivation with coprime integer components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    a: BiPoly,
    b: BiPoly,
    degree: u32,
    height: BigInt,
}

impl Derivation {
    /// Strict constructor: integer coefficients, not both zero, coprime.
    pub fn new(a: BiPoly, b: BiPoly) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroSystem);
        }
        if !a.has_integer_coeffs() || !b.has_integer_coeffs() {
            return Err(Error::NonIntegerCoefficients);
        }
        let g = gcd::gcd(&a, &b)?;
        if !g.is_constant() {
            return Err(Error::NonCoprime);
        }
        Ok(Self::new_unchecked(a, b))
    }

    /// Reduce mode: divides A and B by their gcd before validating.
    /// Returns the removed common factor when it was nonconstant.
    pub fn new_reduced(a: BiPoly, b: BiPoly) -> Result<(Self, Option<BiPoly>)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroSystem);
        }
        if !a.has_integer_coeffs() || !b.has_integer_coeffs() {
            return Err(Error::NonIntegerCoefficients);
        }
        let g = gcd::gcd(&a, &b)?;
        if g.is_constant() {
            return Ok((Self::new_unchecked(a, b), None));
        }
        let ra = a.exact_div(&g)?.expect("gcd divides A");
        let rb = b.exact_div(&g)?.expect("gcd divides B");
        Ok((Self::new_unchecked(ra, rb), Some(g)))
    }

    fn new_unchecked(a: BiPoly, b: BiPoly) -> Self {
        let degree = a
            .total_degree()
            .unwrap_or(0)
            .max(b.total_degree().unwrap_or(0));
        let height = a.height().max(b.height());
        Derivation {
            a,
            b,
            degree,
            height,
        }
    }

    pub fn a(&self) -> &BiPoly {
        &self.a
    }

    pub fn b(&self) -> &BiPoly {
        &self.b
    }

    /// d = max(deg A, deg B).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// H = max of the two coefficient heights.
    pub fn height(&self) -> &BigInt {
        &self.height
    }

    /// D(f) = A f_X + B f_Y.
    pub fn apply(&self, f: &BiPoly) -> BiPoly {
        let out = &(&self.a * &f.partial_x()) + &(&self.b * &f.partial_y());
        debug_assert!(
            out.is_zero()
                || f.is_constant()
                || out.total_degree().unwrap() < f.total_degree().unwrap() + self.degree.max(1)
        );
        out
    }

    /// D applied k times.
    pub fn iterate_apply(&self, f: &BiPoly, k: u32) -> BiPoly {
        let mut cur = f.clone();
        for _ in 0..k {
            cur = self.apply(&cur);
        }
        cur
    }

    /// div(A, B) = A_X + B_Y.
    pub fn divergence(&self) -> BiPoly {
        &self.a.partial_x() + &self.b.partial_y()
    }

    /// The shifted derivation A(X+x0, Y+y0) dX + B(X+x0, Y+y0) dY.
    pub fn shifted(&self, x0: &BigInt, y0: &BigInt) -> Derivation {
        Self::new_unchecked(self.a.shift(x0, y0), self.b.shift(x0, y0))
    }

    /// Darboux test: if f divides D(f) exactly, returns the certificate
    /// with cofactor D(f)/f.  Errors on constant f.
    pub fn cofactor_of(&self, f: &BiPoly) -> Result<Option<DarbouxCertificate>> {
        if f.is_constant() {
            return Err(Error::ConstantInput);
        }
        let df = self.apply(f);
        let Some(g) = df.exact_div(f)? else {
            return Ok(None);
        };
        // deg g <= d - 1 always holds for a true cofactor
        debug_assert!(
            g.total_degree().unwrap_or(0) < self.degree.max(1),
            "cofactor degree bound violated"
        );
        let f_norm = f.primitive_part();
        Ok(Some(DarbouxCertificate {
            poly: f_norm,
            cofactor: g,
            extactic_multiplicity: 0,
            absolutely_irreducible: AbsoluteIrreducibility::Unknown,
        }))
    }

    /// Stable hash of the canonical text of (A, B); used to seed
    /// deterministic evaluation-point choices.
    pub fn fingerprint(&self) -> u64 {
        let mut h = fnv1a(0xcbf29ce484222325, self.a.to_canonical_string().as_bytes());
        h = fnv1a(h, b"|");
        fnv1a(h, self.b.to_canonical_string().as_bytes())
    }
}

fn fnv1a(mut h: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Three-valued annotation for absolute irreducibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbsoluteIrreducibility {
    Yes,
    No,
    Unknown,
}

/// A verified Darboux polynomial f with its cofactor g: D(f) = g f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxCertificate {
    /// Primitive, normalized polynomial.
    pub poly: BiPoly,
    /// Cofactor, deg <= d - 1.
    pub cofactor: BiPoly,
    /// Exact power of `poly` dividing the extactic curve; 0 when the
    /// certificate was not derived from an extactic computation.
    pub extactic_multiplicity: u32,
    pub absolutely_irreducible: AbsoluteIrreducibility,
}

impl DarbouxCertificate {
    /// Re-check the defining identity D(f) = g f symbolically.
    pub fn verify(&self, d: &Derivation) -> bool {
        d.apply(&self.poly) == &self.cofactor * &self.poly
    }
}

/// The Hamiltonian derivation of F = Y (X+1)...(X+d-1) + X, a family
/// with d-1 linear Darboux polynomials and F itself as a polynomial
/// first integral of degree d.
pub fn gen_exponential_example(d: u32) -> Result<Derivation> {
    if d < 2 {
        return Err(Error::InvalidParameter(
            "exponential example needs d >= 2".into(),
        ));
    }
    let mut prod = BiPoly::one();
    for i in 1..d {
        prod = &prod * &(&BiPoly::var_x() + &BiPoly::constant_int(i as i64));
    }
    // F = Y * prod + X; A = dF/dY = prod, B = -dF/dX = -(Y*prod' + 1)
    let a = prod.clone();
    let b = -&(&(&BiPoly::var_y() * &prod.partial_x()) + &BiPoly::one());
    Derivation::new(a, b)
}

/// First integral of the exponential example: F = Y (X+1)...(X+d-1) + X.
pub fn exponential_first_integral(d: u32) -> BiPoly {
    let mut prod = BiPoly::one();
    for i in 1..d {
        prod = &prod * &(&BiPoly::var_x() + &BiPoly::constant_int(i as i64));
    }
    &(&BiPoly::var_y() * &prod) + &BiPoly::var_x()
}

/// The derivation (n+1) X dX + n Y dY, which has X^n - Y^(n+1) as a
/// Darboux polynomial and X^n / Y^(n+1) as a rational first integral.
pub fn gen_linear_example(n: u32) -> Derivation {
    assert!(n >= 1, "linear example needs n >= 1");
    let a = BiPoly::term_int(n as i64 + 1, 1, 0);
    let b = BiPoly::term_int(n as i64, 0, 1);
    Derivation::new(a, b).expect("components are coprime")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use num_rational::BigRational;

    fn p(s: &str) -> BiPoly {
        parse_polynomial(s).unwrap()
    }

    fn fixture_a() -> Derivation {
        Derivation::new(p("-2*X^2"), p("1 - 4*X*Y")).unwrap()
    }

    #[test]
    fn apply_examples() {
        let d = gen_linear_example(2);
        let f = p("X^2 - Y^3");
        assert_eq!(d.apply(&f), f.scale(&BigRational::from_integer(6.into())));
        assert!(d.apply(&BiPoly::constant_int(42)).is_zero());
        assert_eq!(fixture_a().apply(&p("Y")), p("1 - 4*X*Y"));
    }

    #[test]
    fn iterate_examples() {
        let d = fixture_a();
        assert_eq!(d.iterate_apply(&p("X"), 2), p("8*X^3"));
        let f = p("X*Y + 7");
        assert_eq!(d.iterate_apply(&f, 0), f);
        assert_eq!(d.iterate_apply(&p("Y"), 2), p("-4*X + 24*X^2*Y"));
    }

    #[test]
    fn cofactor_examples() {
        let d = gen_linear_example(2);
        let cert = d.cofactor_of(&p("X^2 - Y^3")).unwrap().unwrap();
        assert_eq!(cert.cofactor, BiPoly::constant_int(6));
        assert!(cert.verify(&d));

        let d = fixture_a();
        assert!(d.cofactor_of(&p("Y")).unwrap().is_none());
        let cert = d.cofactor_of(&p("X")).unwrap().unwrap();
        assert_eq!(cert.cofactor, p("-2*X"));
        assert!(cert.verify(&d));
        assert_eq!(
            d.cofactor_of(&BiPoly::one()),
            Err(Error::ConstantInput)
        );
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(gen_linear_example(2).divergence(), BiPoly::constant_int(5));
        assert_eq!(fixture_a().divergence(), p("-8*X"));
        // Hamiltonian systems are divergence free
        let d = gen_exponential_example(4).unwrap();
        assert!(d.divergence().is_zero());
    }

    #[test]
    fn shift_derivation_examples() {
        let d = gen_linear_example(2);
        let s = d.shifted(&BigInt::from(0), &BigInt::from(0));
        assert_eq!(s, d);
        let s = d.shifted(&BigInt::from(1), &BigInt::from(0));
        assert_eq!(s.a(), &p("3*X + 3"));
        assert_eq!(s.b(), &p("2*Y"));
        // Darboux polynomials shift along with the derivation
        let f = p("X^2 - Y^3");
        let (x0, y0) = (BigInt::from(2), BigInt::from(-1));
        let ds = d.shifted(&x0, &y0);
        let fs = f.shift(&x0, &y0);
        let cert = ds.cofactor_of(&fs).unwrap().unwrap();
        assert_eq!(cert.cofactor, BiPoly::constant_int(6));
    }

    #[test]
    fn exponential_example_components() {
        let d3 = gen_exponential_example(3).unwrap();
        assert_eq!(d3.a(), &p("X^2 + 3*X + 2"));
        assert_eq!(d3.b(), &p("-2*X*Y - 3*Y - 1"));
        assert_eq!(d3.degree(), 2);
        let d2 = gen_exponential_example(2).unwrap();
        assert_eq!(d2.a(), &p("X + 1"));
        assert_eq!(d2.b(), &p("-Y - 1"));
        // D(X+1) = (X+1)(X+2) for d = 3
        assert_eq!(d3.apply(&p("X + 1")), p("X^2 + 3*X + 2"));
        // F is a first integral by construction
        let f = exponential_first_integral(3);
        assert_eq!(f, p("X^2*Y + 3*X*Y + X + 2*Y"));
        assert!(d3.apply(&f).is_zero());
        assert!(gen_exponential_example(1).is_err());
    }

    #[test]
    fn linear_example_first_integral() {
        let n = 3;
        let d = gen_linear_example(n);
        assert_eq!(d.a(), &p("4*X"));
        // X^n - Y^(n+1) is Darboux
        let f = &p("X").pow(n) - &p("Y").pow(n + 1);
        let cert = d.cofactor_of(&f).unwrap().unwrap();
        assert_eq!(cert.cofactor, BiPoly::constant_int(12));
        // q D(p) - p D(q) = 0 for p = X^n, q = Y^(n+1)
        let (pp, qq) = (p("X").pow(n), p("Y").pow(n + 1));
        let lhs = &(&qq * &d.apply(&pp)) - &(&pp * &d.apply(&qq));
        assert!(lhs.is_zero());
    }

    #[test]
    fn constructor_rejects_bad_inputs() {
        assert_eq!(
            Derivation::new(p("X*Y"), p("X*Y^2")),
            Err(Error::NonCoprime)
        );
        assert_eq!(
            Derivation::new(BiPoly::zero(), BiPoly::zero()),
            Err(Error::ZeroSystem)
        );
        let half = BiPoly::term(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            1,
            0,
        );
        assert_eq!(
            Derivation::new(half, BiPoly::one()),
            Err(Error::NonIntegerCoefficients)
        );
        // reduce mode accepts the non-coprime pair
        let (d, removed) = Derivation::new_reduced(p("X*Y"), p("X*Y^2")).unwrap();
        assert_eq!(removed.unwrap(), p("X*Y"));
        assert_eq!(d.a(), &BiPoly::one());
        assert_eq!(d.b(), &p("Y"));
    }

    #[test]
    fn leibniz_rule_spot_checks() {
        let d = fixture_a();
        let cases = [
            (p("X^2 + Y"), p("X*Y - 3")),
            (p("X + Y + 1"), p("Y^2")),
            (p("X^3 - 2*X*Y"), p("X + 5*Y^2 - 7")),
        ];
        for (f, g) in cases {
            let lhs = d.apply(&(&f * &g));
            let rhs = &(&d.apply(&f) * &g) + &(&f * &d.apply(&g));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cofactor_additivity_for_coprime_products() {
        let d = gen_linear_example(2);
        let f1 = p("X");
        let f2 = p("X^2 - Y^3");
        let c1 = d.cofactor_of(&f1).unwrap().unwrap();
        let c2 = d.cofactor_of(&f2).unwrap().unwrap();
        let prod = d.cofactor_of(&(&f1 * &f2)).unwrap().unwrap();
        assert_eq!(prod.cofactor, &c1.cofactor + &c2.cofactor);
    }

    #[test]
    fn fingerprint_is_stable_and_input_sensitive() {
        let d1 = gen_linear_example(2);
        let d2 = gen_linear_example(2);
        let d3 = gen_linear_example(3);
        assert_eq!(d1.fingerprint(), d2.fingerprint());
        assert_ne!(d1.fingerprint(), d3.fingerprint());
    }
}
