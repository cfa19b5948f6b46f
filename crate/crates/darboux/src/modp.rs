//! Modular arithmetic support: Montgomery u64 fields, deterministic
//! prime generation, univariate polynomials mod p, and balanced CRT.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Descending sequence of primes strictly below `below`.
pub fn primes_below(below: u64) -> impl Iterator<Item = u64> {
    let mut n = below;
    std::iter::from_fn(move || {
        loop {
            if n <= 2 {
                return None;
            }
            n -= 1;
            if is_prime_u64(n) {
                return Some(n);
            }
        }
    })
}

/// First prime of the canonical 62-bit CRT sequence.
pub const CRT_PRIME_CEILING: u64 = 1 << 62;

/// Montgomery arithmetic modulo an odd prime p < 2^62.
#[derive(Clone, Copy, Debug)]
pub struct Mont {
    pub p: u64,
    pinv: u64, // -p^{-1} mod 2^64
    r2: u64,   // 2^128 mod p
}

impl Mont {
    pub fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < (1 << 62));
        // Newton iteration for p^{-1} mod 2^64
        let mut inv = p;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let pinv = inv.wrapping_neg();
        let r = (u64::MAX % p) + 1; // 2^64 mod p
        let r2 = mul_mod(r, r, p);
        Mont { p, pinv, r2 }
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let t2 = (t.wrapping_add(m as u128 * self.p as u128) >> 64) as u64;
        if t2 >= self.p {
            t2 - self.p
        } else {
            t2
        }
    }

    /// Convert into Montgomery form.
    #[inline(always)]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    /// Convert out of Montgomery form.
    #[inline(always)]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn one_mont(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        // b in Montgomery form; result in Montgomery form
        let mut acc = self.one_mont();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Inverse in Montgomery form (p prime).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = v.mod_floor(&m);
        r.to_u64().expect("reduced value fits u64")
    }
}

/// Determinant of an l x l matrix in Montgomery form, by Gaussian
/// elimination.  Consumes the scratch matrix.
pub fn det_mont(mont: &Mont, m: &mut [u64], l: usize) -> u64 {
    let mut det = mont.one_mont();
    let mut neg = false;
    for col in 0..l {
        let mut piv = None;
        for r in col..l {
            if m[r * l + col] != 0 {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else {
            return 0;
        };
        if piv != col {
            for j in 0..l {
                m.swap(col * l + j, piv * l + j);
            }
            neg = !neg;
        }
        let pv = m[col * l + col];
        det = mont.mul(det, pv);
        let inv = mont.inv(pv);
        for r in col + 1..l {
            let f = m[r * l + col];
            if f == 0 {
                continue;
            }
            let f = mont.mul(f, inv);
            m[r * l + col] = 0;
            for j in col + 1..l {
                let t = mont.mul(f, m[col * l + j]);
                m[r * l + j] = mont.sub(m[r * l + j], t);
            }
        }
    }
    let det = mont.from_mont(det);
    if neg && det != 0 {
        mont.p - det
    } else {
        det
    }
}

/// Balanced incremental CRT accumulator: reconstructs the integer of
/// least absolute value congruent to all residues.
#[derive(Clone, Debug)]
pub struct CrtAccumulator {
    pub value: BigInt,
    pub modulus: BigInt,
}

impl CrtAccumulator {
    pub fn new() -> Self {
        CrtAccumulator {
            value: BigInt::zero(),
            modulus: BigInt::one(),
        }
    }

    pub fn push(&mut self, residue: u64, p: u64) {
        let p_big = BigInt::from(p);
        let r_big = BigInt::from(residue);
        if self.modulus.is_one() {
            self.value = balanced(&r_big, &p_big);
            self.modulus = p_big;
            return;
        }
        // value' = value + modulus * t with t = (residue - value)/modulus mod p
        let e = self.modulus.extended_gcd(&p_big);
        debug_assert!(e.gcd.is_one());
        let inv_mod_p = e.x.mod_floor(&p_big);
        let diff = (&r_big - &self.value).mod_floor(&p_big);
        let t = (&diff * &inv_mod_p).mod_floor(&p_big);
        self.value += &self.modulus * t;
        self.modulus *= &p_big;
        self.value = balanced(&self.value, &self.modulus);
    }
}

impl Default for CrtAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

fn balanced(v: &BigInt, m: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Dense univariate polynomial over F_p in plain (non-Montgomery)
/// residues; used by the factorization machinery where p is small.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>, // low to high, no trailing zeros
}

impl ZpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        let mut poly = ZpPoly { p, coeffs };
        poly.trim();
        poly
    }

    pub fn zero(p: u64) -> Self {
        ZpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        ZpPoly {
            p,
            coeffs: vec![1],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
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

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn from_bigint_coeffs(p: u64, coeffs: &[BigInt]) -> Self {
        let m = BigInt::from(p);
        ZpPoly::new(
            p,
            coeffs
                .iter()
                .map(|c| c.mod_floor(&m).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn add(&self, rhs: &ZpPoly) -> ZpPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZpPoly::new(
            self.p,
            (0..n)
                .map(|i| (self.coeff(i) + rhs.coeff(i)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &ZpPoly) -> ZpPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZpPoly::new(
            self.p,
            (0..n)
                .map(|i| (self.coeff(i) + self.p - rhs.coeff(i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &ZpPoly) -> ZpPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        ZpPoly::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> ZpPoly {
        ZpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&a| mul_mod(a, c, self.p))
                .collect(),
        )
    }

    pub fn monic(&self) -> ZpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = pow_mod(self.leading(), self.p - 2, self.p);
        self.scale(inv)
    }

    pub fn divmod(&self, den: &ZpPoly) -> (ZpPoly, ZpPoly) {
        let dd = den.degree().expect("division by zero");
        let lc_inv = pow_mod(den.leading(), self.p - 2, self.p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (ZpPoly::zero(self.p), self.clone());
        }
        let qlen = rem.len() - dd;
        let mut q = vec![0u64; qlen];
        for k in (0..qlen).rev() {
            let c = mul_mod(rem[k + dd], lc_inv, self.p);
            if c == 0 {
                continue;
            }
            q[k] = c;
            for (j, &dc) in den.coeffs.iter().enumerate() {
                let t = mul_mod(c, dc, self.p);
                rem[k + j] = (rem[k + j] + self.p - t) % self.p;
            }
        }
        (ZpPoly::new(self.p, q), ZpPoly::new(self.p, rem))
    }

    pub fn rem(&self, den: &ZpPoly) -> ZpPoly {
        self.divmod(den).1
    }

    pub fn gcd(&self, rhs: &ZpPoly) -> ZpPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> ZpPoly {
        if self.coeffs.len() <= 1 {
            return ZpPoly::zero(self.p);
        }
        ZpPoly::new(
            self.p,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| mul_mod(c, (i as u64 + 1) % self.p, self.p))
                .collect(),
        )
    }

    /// x^e mod self, by square and multiply.
    pub fn pow_x_mod(&self, e: u64) -> ZpPoly {
        let x = ZpPoly::new(self.p, vec![0, 1]);
        let mut acc = ZpPoly::one(self.p);
        let mut base = x.rem(self);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(self);
            }
            base = base.mul(&base).rem(self);
            e >>= 1;
        }
        acc
    }

    /// Extended Euclid: returns (g, s, t) with s*self + t*rhs = g (monic).
    pub fn extended_gcd(&self, rhs: &ZpPoly) -> (ZpPoly, ZpPoly, ZpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (ZpPoly::one(p), ZpPoly::zero(p));
        let (mut t0, mut t1) = (ZpPoly::zero(p), ZpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc_inv = pow_mod(r0.leading(), p - 2, p);
        (r0.scale(lc_inv), s0.scale(lc_inv), t0.scale(lc_inv))
    }
}

/// Lift a residue in [0, p) to the balanced representative in
/// (-p/2, p/2] as a BigInt.
pub fn balanced_lift(r: u64, p: u64) -> BigInt {
    if r > p / 2 {
        BigInt::from_biguint(Sign::Minus, (p - r).into())
    } else {
        BigInt::from(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_test_agrees_with_small_table() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime_u64((1 << 61) - 1)); // Mersenne
        assert!(!is_prime_u64((1 << 62) - 1));
    }

    #[test]
    fn montgomery_matches_plain() {
        let p = primes_below(CRT_PRIME_CEILING).next().unwrap();
        let mont = Mont::new(p);
        let pairs = [(3u64, 5u64), (p - 1, p - 2), (123456789, 987654321)];
        for (a, b) in pairs {
            let am = mont.to_mont(a);
            let bm = mont.to_mont(b);
            assert_eq!(mont.from_mont(mont.mul(am, bm)), mul_mod(a, b, p));
            assert_eq!(mont.from_mont(mont.add(am, bm)), (a + b) % p);
            let inv = mont.from_mont(mont.inv(mont.to_mont(a)));
            assert_eq!(mul_mod(inv, a, p), 1);
        }
    }

    #[test]
    fn det_small_matrix() {
        let p = 1_000_000_007u64;
        let mont = Mont::new(p);
        // det [[1,2],[3,4]] = -2
        let mut m: Vec<u64> = [1u64, 2, 3, 4].iter().map(|&v| mont.to_mont(v)).collect();
        let d = det_mont(&mont, &mut m, 2);
        assert_eq!(d, p - 2);
        // singular
        let mut m: Vec<u64> = [1u64, 2, 2, 4].iter().map(|&v| mont.to_mont(v)).collect();
        assert_eq!(det_mont(&mont, &mut m, 2), 0);
    }

    #[test]
    fn crt_reconstructs_balanced() {
        let p1 = 1_000_000_007u64;
        let p2 = 998_244_353u64;
        let target = BigInt::from(-123456789012345i64);
        let mut acc = CrtAccumulator::new();
        let r1 = target.mod_floor(&BigInt::from(p1)).to_u64().unwrap();
        let r2 = target.mod_floor(&BigInt::from(p2)).to_u64().unwrap();
        acc.push(r1, p1);
        acc.push(r2, p2);
        assert_eq!(acc.value, target);
    }

    #[test]
    fn zp_poly_euclid() {
        let p = 13u64;
        // f = (x+1)(x+2), g = (x+1)(x+5)
        let f = ZpPoly::new(p, vec![2, 3, 1]);
        let g = ZpPoly::new(p, vec![5, 6, 1]);
        assert_eq!(f.gcd(&g), ZpPoly::new(p, vec![1, 1]));
        let (gg, s, t) = f.extended_gcd(&g);
        let lhs = s.mul(&f).add(&t.mul(&g));
        assert_eq!(lhs, gg);
    }
}
