//! Dense univariate polynomials over the integers.
//!
//! Workhorse for content/primitive-part bookkeeping, subresultant gcd and
//! the integer factorization pipeline.  Coefficients are stored low to
//! high with no trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Positive gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient; returns the unit
    /// (signed content) alongside.
    pub fn normalize(&self) -> (BigInt, UniPoly) {
        if self.is_zero() {
            return (BigInt::one(), UniPoly::zero());
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        let prim = UniPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        };
        (c, prim)
    }

    pub fn primitive_part(&self) -> UniPoly {
        self.normalize().1
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        let mut h = BigInt::zero();
        for c in &self.coeffs {
            let a = c.abs();
            if a > h {
                h = a;
            }
        }
        h
    }

    /// Exact division; `None` if `self` is not a polynomial multiple of
    /// `den` over the rationals with integer quotient coefficients allowed
    /// to be rational (division is done over Q; a non-integer quotient is
    /// returned as-is impossible here because callers divide integer
    /// multiples).  Panics on zero divisor.
    pub fn div_exact(&self, den: &UniPoly) -> Option<UniPoly> {
        assert!(!den.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let dn = den.degree().unwrap();
        let mut rem = self.clone();
        let lc = den.leading();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dn)];
        while let Some(dr) = rem.degree() {
            if dr < dn {
                return None;
            }
            let (qc, r) = rem.leading().div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let k = dr - dn;
            q[k] = qc.clone();
            let t = den.mul(&UniPoly::monomial(qc, k));
            rem = rem.sub(&t);
        }
        Some(UniPoly::from_coeffs(q))
    }

    /// Pseudo-remainder: `lc(den)^(deg num - deg den + 1) * num mod den`.
    pub fn pseudo_rem(&self, den: &UniPoly) -> UniPoly {
        let dn = den.degree().expect("pseudo_rem by zero");
        let mut rem = self.clone();
        let Some(dr0) = rem.degree() else {
            return rem;
        };
        if dr0 < dn {
            // still scale for exactness conventions
            return rem;
        }
        let lc = den.leading();
        let mut steps_left = dr0 - dn + 1;
        while let Some(dr) = rem.degree() {
            if dr < dn {
                break;
            }
            let t = den.mul(&UniPoly::monomial(rem.leading(), dr - dn));
            rem = rem.scale(&lc).sub(&t);
            steps_left -= 1;
        }
        for _ in 0..steps_left {
            rem = rem.scale(&lc);
        }
        rem
    }

    /// Primitive gcd via the subresultant polynomial remainder sequence.
    /// Signs are dropped throughout; the final primitive part absorbs
    /// units, so each beta division stays exact up to sign.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.degree() == Some(0) {
            return UniPoly::one();
        }
        let mut delta = a.degree().unwrap() - b.degree().unwrap();
        let mut beta = BigInt::one();
        let mut psi = BigInt::one();
        loop {
            let prem = a.pseudo_rem(&b);
            if prem.is_zero() {
                return b.primitive_part();
            }
            let r = UniPoly::from_coeffs(
                prem.coeffs
                    .iter()
                    .map(|c| {
                        let (q, rem) = c.div_rem(&beta);
                        debug_assert!(rem.is_zero(), "subresultant step must divide exactly");
                        q
                    })
                    .collect(),
            );
            let gamma = b.leading().abs();
            a = b;
            b = r;
            if b.degree() == Some(0) {
                return UniPoly::one();
            }
            if delta > 0 {
                let num = pow_bigint(&gamma, delta as u32);
                let den = pow_bigint(&psi, delta as u32 - 1);
                let (q, rem) = num.div_rem(&den);
                debug_assert!(rem.is_zero(), "psi update must divide exactly");
                psi = q;
            }
            delta = a.degree().unwrap() - b.degree().unwrap();
            beta = &gamma * pow_bigint(&psi, delta as u32);
        }
    }
}

pub(crate) fn pow_bigint(b: &BigInt, e: u32) -> BigInt {
    let mut acc = BigInt::one();
    let mut base = b.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(v: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn arithmetic_basics() {
        let f = up(&[1, 2, 1]); // (x+1)^2
        let g = up(&[1, 1]);
        assert_eq!(g.mul(&g), f);
        assert_eq!(f.div_exact(&g), Some(g.clone()));
        assert_eq!(up(&[1, 0, 1]).div_exact(&g), None);
        assert_eq!(f.derivative(), up(&[2, 2]));
        assert_eq!(f.eval(&BigInt::from(3)), BigInt::from(16));
    }

    #[test]
    fn gcd_simple() {
        // gcd((x+1)^2(x-2), (x+1)(x+3)) = x+1
        let f = up(&[1, 1]).mul(&up(&[1, 1])).mul(&up(&[-2, 1]));
        let g = up(&[1, 1]).mul(&up(&[3, 1]));
        assert_eq!(f.gcd(&g), up(&[1, 1]));
        // coprime
        assert_eq!(up(&[1, 0, 1]).gcd(&up(&[1, 1])), UniPoly::one());
        // gcd with zero
        assert_eq!(up(&[2, 4]).gcd(&UniPoly::zero()), up(&[1, 2]));
    }

    #[test]
    fn gcd_larger() {
        // gcd of products with a shared quartic factor
        let shared = up(&[3, 0, 1, 2]); // 2x^3 + x^2 + 3
        let f = shared.mul(&up(&[-1, 4, 7]));
        let g = shared.mul(&up(&[5, 1]));
        assert_eq!(f.gcd(&g), shared.primitive_part());
    }

    #[test]
    fn content_and_normalize() {
        let f = up(&[-4, -8]);
        let (unit, prim) = f.normalize();
        assert_eq!(unit, BigInt::from(-4));
        assert_eq!(prim, up(&[1, 2]));
    }
}
