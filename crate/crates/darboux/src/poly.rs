//! Sparse bivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! the cantor position (k,l) -> ((k+l)^2 + 3k + l)/2, i.e. graded with the
//! X exponent breaking ties.  All normalization conventions (primitive over
//! the integers, positive leading coefficient in this order) refer to it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent pair of a term `X^x * Y^y`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }

    /// Position in the graded order used throughout: (0,0) -> 0,
    /// (0,1) -> 1, (1,0) -> 2, (0,2) -> 3, ...
    pub fn cantor_index(&self) -> u64 {
        let k = self.x as u64;
        let l = self.y as u64;
        ((k + l) * (k + l) + 3 * k + l) / 2
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.x).cmp(&(other.degree(), other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse bivariate polynomial over the rationals.  No zero coefficients
/// are stored; the zero polynomial has an empty term map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant_int(1)
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = BiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::new(0, 0), c);
        }
        p
    }

    pub fn constant_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// Single term `c * X^x * Y^y`.
    pub fn term(c: BigRational, x: u32, y: u32) -> Self {
        let mut p = BiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::new(x, y), c);
        }
        p
    }

    pub fn term_int(c: i64, x: u32, y: u32) -> Self {
        Self::term(BigRational::from_integer(BigInt::from(c)), x, y)
    }

    pub fn var_x() -> Self {
        Self::term_int(1, 1, 0)
    }

    pub fn var_y() -> Self {
        Self::term_int(1, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, x: u32, y: u32) -> BigRational {
        self.terms
            .get(&Monomial::new(x, y))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.y).max()
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().is_none_or(|d| d == 0)
    }

    /// Leading term under the cantor order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn insert_add(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_x(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            if m.x > 0 {
                out.insert_add(
                    Monomial::new(m.x - 1, m.y),
                    c.clone() * BigRational::from_integer(BigInt::from(m.x)),
                );
            }
        }
        out
    }

    pub fn partial_y(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            if m.y > 0 {
                out.insert_add(
                    Monomial::new(m.x, m.y - 1),
                    c.clone() * BigRational::from_integer(BigInt::from(m.y)),
                );
            }
        }
        out
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut pow_x: Vec<BigRational> = vec![BigRational::one()];
        let mut pow_y: Vec<BigRational> = vec![BigRational::one()];
        for (m, c) in &self.terms {
            while pow_x.len() <= m.x as usize {
                let next = pow_x.last().unwrap().clone() * x.clone();
                pow_x.push(next);
            }
            while pow_y.len() <= m.y as usize {
                let next = pow_y.last().unwrap().clone() * y.clone();
                pow_y.push(next);
            }
            acc += c.clone() * pow_x[m.x as usize].clone() * pow_y[m.y as usize].clone();
        }
        acc
    }

    /// Substitute `X -> X + x0`, `Y -> Y + y0`.
    pub fn shift(&self, x0: &BigInt, y0: &BigInt) -> BiPoly {
        if x0.is_zero() && y0.is_zero() {
            return self.clone();
        }
        let max_x = self.deg_x().unwrap_or(0) as usize;
        let max_y = self.deg_y().unwrap_or(0) as usize;
        // (X + s)^k expansions for k up to the degree, reused across terms.
        let pow_x = binomial_shifts(BiPoly::var_x(), x0, max_x);
        let pow_y = binomial_shifts(BiPoly::var_y(), y0, max_y);
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            let prod = &pow_x[m.x as usize] * &pow_y[m.y as usize];
            out = &out + &prod.scale(c);
        }
        out
    }

    /// Exchange the two variables.
    pub fn swap_xy(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.y, m.x), c.clone()))
                .collect(),
        }
    }

    /// Substitute `Y -> Y + c*X` (shear).  Degree in X may grow.
    pub fn shear_y(&self, c: &BigInt) -> BiPoly {
        if c.is_zero() {
            return self.clone();
        }
        let cc = BigRational::from_integer(c.clone());
        let sub = &BiPoly::var_y() + &BiPoly::var_x().scale(&cc);
        let max_y = self.deg_y().unwrap_or(0);
        let mut pows = Vec::with_capacity(max_y as usize + 1);
        pows.push(BiPoly::one());
        for _ in 0..max_y {
            let next = pows.last().unwrap() * &sub;
            pows.push(next);
        }
        let mut out = BiPoly::zero();
        for (m, coeff) in &self.terms {
            let t = BiPoly::term(coeff.clone(), m.x, 0);
            out = &out + &(&t * &pows[m.y as usize]);
        }
        out
    }

    /// Exact division: returns `Some(q)` with `self = q * den`, or `None`
    /// when no exact polynomial quotient exists.
    pub fn exact_div(&self, den: &BiPoly) -> Result<Option<BiPoly>> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(BiPoly::zero()));
        }
        let (lm_d, lc_d) = den.leading().unwrap();
        let lm_d = *lm_d;
        let lc_d = lc_d.clone();
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((lm_r, lc_r)) = rem.leading() {
            if lm_r.x < lm_d.x || lm_r.y < lm_d.y {
                return Ok(None);
            }
            let qm = Monomial::new(lm_r.x - lm_d.x, lm_r.y - lm_d.y);
            let qc = lc_r.clone() / lc_d.clone();
            let t = BiPoly::term(qc, qm.x, qm.y);
            rem = &rem - &(&t * den);
            quot = &quot + &t;
        }
        Ok(Some(quot))
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Height `max |coefficient|` of an integer-coefficient polynomial.
    /// Zero polynomial has height 0.
    pub fn height(&self) -> BigInt {
        let mut h = BigInt::zero();
        for c in self.terms.values() {
            debug_assert!(c.denom().is_one(), "height requires integer coefficients");
            let a = c.numer().abs();
            if a > h {
                h = a;
            }
        }
        h
    }

    /// Write `self = unit * primitive` with `primitive` an integer
    /// polynomial of content 1 whose leading coefficient (cantor order) is
    /// positive.  The zero polynomial normalizes to unit 1, primitive 0.
    pub fn normalize(&self) -> (BigRational, BiPoly) {
        if self.is_zero() {
            return (BigRational::one(), BiPoly::zero());
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * &denom_lcm / c.denom();
            num_gcd = num_gcd.gcd(&n);
        }
        let mut unit = BigRational::new(num_gcd.clone(), denom_lcm.clone());
        let scale = BigRational::new(denom_lcm, num_gcd);
        let mut prim = self.scale(&scale);
        if prim.leading().unwrap().1.is_negative() {
            prim = -&prim;
            unit = -unit;
        }
        (unit, prim)
    }

    /// The primitive normalized part (drops the unit).
    pub fn primitive_part(&self) -> BiPoly {
        self.normalize().1
    }

    /// Coefficient of `X^k` as a polynomial in Y alone.
    pub fn coeff_of_x_power(&self, k: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.x == k)
                .map(|(m, c)| (Monomial::new(0, m.y), c.clone()))
                .collect(),
        }
    }

    /// Multiply by the monomial `X^x * Y^y`.
    pub fn mul_monomial(&self, x: u32, y: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.x + x, m.y + y), c.clone()))
                .collect(),
        }
    }

    /// Canonical comparison used to order factors and certificates:
    /// by total degree, then leading monomial, then the coefficient
    /// sequence read from the leading term down.
    pub fn cmp_canonical(&self, other: &BiPoly) -> Ordering {
        let da = self.total_degree();
        let db = other.total_degree();
        if da != db {
            return da.cmp(&db);
        }
        let la = self.leading().map(|(m, _)| *m);
        let lb = other.leading().map(|(m, _)| *m);
        if la != lb {
            return la.cmp(&lb);
        }
        let mut ia = self.terms.iter().rev();
        let mut ib = other.terms.iter().rev();
        loop {
            match (ia.next(), ib.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    if ma != mb {
                        // Larger next monomial means the other poly "ran out"
                        // earlier at this position.
                        return ma.cmp(mb);
                    }
                    match ca.cmp(cb) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
            }
        }
    }

    /// Canonical text form, parseable by the expression parser.
    /// Requires integer coefficients for round-tripping; rational
    /// coefficients are printed with a `/` and will not re-parse.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let is_const = m.x == 0 && m.y == 0;
            let coeff_is_one = abs.is_one();
            if !coeff_is_one || is_const {
                if abs.denom().is_one() {
                    out.push_str(&abs.numer().to_string());
                } else {
                    out.push_str(&format!("{}/{}", abs.numer(), abs.denom()));
                }
                if !is_const {
                    out.push('*');
                }
            }
            if m.x > 0 {
                out.push('X');
                if m.x > 1 {
                    out.push_str(&format!("^{}", m.x));
                }
                if m.y > 0 {
                    out.push('*');
                }
            }
            if m.y > 0 {
                out.push('Y');
                if m.y > 1 {
                    out.push_str(&format!("^{}", m.y));
                }
            }
        }
        out
    }
}

fn binomial_shifts(var: BiPoly, s: &BigInt, max: usize) -> Vec<BiPoly> {
    // (var + s)^k for k = 0..=max
    let base = &var + &BiPoly::constant(BigRational::from_integer(s.clone()));
    let mut out = Vec::with_capacity(max + 1);
    out.push(BiPoly::one());
    for _ in 0..max {
        let next = out.last().unwrap() * &base;
        out.push(next);
    }
    out
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(*m, -c.clone());
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let (small, large) = if self.num_terms() <= rhs.num_terms() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = BiPoly::zero();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                out.insert_add(
                    Monomial::new(m1.x + m2.x, m1.y + m2.y),
                    c1.clone() * c2.clone(),
                );
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}
