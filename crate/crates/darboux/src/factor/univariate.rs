//! Univariate integer factorization: Berlekamp mod a small prime,
//! monic Hensel lifting to above the coefficient bound, subset
//! recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::modp::{is_prime_u64, ZpPoly};
use crate::unipoly::{pow_bigint, UniPoly};

/// Yun squarefree decomposition of a primitive positive-lc polynomial.
pub(crate) fn squarefree_decompose_uni(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    debug_assert!(!f.is_zero());
    if f.degree() == Some(0) {
        return vec![];
    }
    let fp = f.derivative();
    let g = f.gcd(&fp);
    if g.degree() == Some(0) {
        return vec![(f.clone(), 1)];
    }
    let mut w = f.div_exact(&g).expect("gcd divides f");
    let mut y = fp.div_exact(&g).expect("gcd divides f'");
    let mut out = Vec::new();
    let mut i = 1u32;
    while w.degree().is_some_and(|d| d > 0) {
        let z = y.sub(&w.derivative());
        let gi = w.gcd(&z);
        if gi.degree().is_some_and(|d| d > 0) {
            out.push((gi.clone(), i));
        }
        w = w.div_exact(&gi).expect("Yun step divides");
        y = z.div_exact(&gi).expect("Yun step divides");
        i += 1;
    }
    debug_assert_eq!(
        {
            let mut prod = UniPoly::one();
            for (a, e) in &out {
                for _ in 0..*e {
                    prod = prod.mul(a);
                }
            }
            prod
        },
        *f,
        "Yun output must reconstruct the input"
    );
    out
}

/// Factor a primitive squarefree positive-lc polynomial of degree >= 1
/// into primitive positive-lc irreducibles whose product is the input.
pub(crate) fn factor_squarefree_uni(f: &UniPoly) -> Vec<UniPoly> {
    let n = f.degree().expect("nonzero");
    if n == 1 {
        return vec![f.clone()];
    }
    let lc = f.leading();
    let v = monicize(f, &lc);
    let factors_v = factor_monic_squarefree(&v);
    let mut out: Vec<UniPoly> = factors_v
        .iter()
        .map(|w| unmonicize(w, &lc))
        .collect();
    out.sort_by(cmp_uni);
    debug_assert_eq!(
        {
            let mut prod = UniPoly::one();
            for h in &out {
                prod = prod.mul(h);
            }
            prod
        },
        *f
    );
    out
}

pub(crate) fn cmp_uni(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs()))
}

/// v(T) = lc^(n-1) * f(T/lc): monic with integer coefficients.
fn monicize(f: &UniPoly, lc: &BigInt) -> UniPoly {
    let n = f.degree().unwrap();
    let coeffs: Vec<BigInt> = (0..=n)
        .map(|i| {
            if i == n {
                BigInt::one()
            } else {
                f.coeff(i) * pow_bigint(lc, (n - 1 - i) as u32)
            }
        })
        .collect();
    UniPoly::from_coeffs(coeffs)
}

/// Inverse transform: a monic integer factor w of v maps back to the
/// primitive positive-lc factor of f, pp(w(lc * T)).
fn unmonicize(w: &UniPoly, lc: &BigInt) -> UniPoly {
    let d = w.degree().unwrap();
    let coeffs: Vec<BigInt> = (0..=d)
        .map(|i| w.coeff(i) * pow_bigint(lc, i as u32))
        .collect();
    UniPoly::from_coeffs(coeffs).primitive_part()
}

fn factor_monic_squarefree(v: &UniPoly) -> Vec<UniPoly> {
    let n = v.degree().unwrap();
    debug_assert!(v.is_monic() && n >= 2);
    // prime with squarefree reduction
    let p = choose_prime(v);
    let vp = ZpPoly::from_bigint_coeffs(p, v.coeffs());
    let modular = berlekamp_factor(&vp);
    if modular.len() == 1 {
        return vec![v.clone()];
    }
    // factor coefficient bound: 2^n * ||v||_2 for monic factors of monic
    // v; the extra (n+1) headroom makes factor values at the points 0
    // and 1 exactly recoverable from their balanced residues, which the
    // recombination filter relies on
    let norm2_sq: BigInt = v.coeffs().iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2_sq.sqrt() + 1);
    let target = &bound * 2 * (n as u64 + 1) + 1;
    let mut pk = BigInt::from(p);
    while pk < target {
        pk = &pk * &pk;
    }
    let lifted = hensel_lift_tree(v, &modular, p, &pk);
    recombine(v, lifted, &pk)
}

fn choose_prime(v: &UniPoly) -> u64 {
    let mut p = 2u64;
    loop {
        while !is_prime_u64(p) {
            p += 1;
        }
        let lc_mod = v.leading().mod_floor(&BigInt::from(p));
        if !lc_mod.is_zero() {
            let vp = ZpPoly::from_bigint_coeffs(p, v.coeffs());
            let g = vp.gcd(&vp.derivative());
            if g.degree() == Some(0) {
                return p;
            }
        }
        p += 1;
        assert!(p < 1 << 16, "no small prime with squarefree reduction");
    }
}

// ---------------------------------------------------------------------
// Berlekamp over F_p, deterministic
// ---------------------------------------------------------------------

pub(crate) fn berlekamp_factor(f: &ZpPoly) -> Vec<ZpPoly> {
    let p = f.p;
    let n = f.degree().expect("nonzero");
    if n == 1 {
        return vec![f.monic()];
    }
    let f = f.monic();
    // columns of the Frobenius matrix: x^(p i) mod f
    let xp = f.pow_x_mod(p);
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = ZpPoly::one(p);
    for _ in 0..n {
        let mut col = vec![0u64; n];
        for (k, &c) in cur.coeffs.iter().enumerate() {
            col[k] = c;
        }
        cols.push(col);
        cur = cur.mul(&xp).rem(&f);
    }
    // kernel of (B - I)
    let mut mat = vec![vec![0u64; n]; n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            mat[i][j] = col[i];
        }
        mat[j][j] = (mat[j][j] + p - 1) % p;
    }
    let basis = kernel_mod_p(&mut mat, p);
    let r = basis.len();
    debug_assert!(r >= 1);
    if r == 1 {
        return vec![f];
    }
    let mut factors = vec![f.clone()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let vp = ZpPoly::new(p, v.clone());
        if vp.degree().is_none_or(|d| d == 0) {
            continue;
        }
        let mut next = Vec::new();
        for w in factors {
            if w.degree() == Some(1) {
                next.push(w);
                continue;
            }
            let mut rem_w = w;
            for s in 0..p {
                if rem_w.degree() == Some(0) {
                    break;
                }
                let shifted = vp.sub(&ZpPoly::new(p, vec![s]));
                let g = rem_w.gcd(&shifted);
                if let Some(dg) = g.degree() {
                    if dg >= 1 && dg < rem_w.degree().unwrap() {
                        rem_w = rem_w.divmod(&g).0;
                        next.push(g);
                    }
                }
            }
            if rem_w.degree().is_some_and(|d| d >= 1) {
                next.push(rem_w);
            }
        }
        factors = next;
    }
    debug_assert_eq!(factors.len(), r, "Berlekamp splitting incomplete");
    factors.into_iter().map(|w| w.monic()).collect()
}

fn kernel_mod_p(mat: &mut [Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(row, pr);
        let inv = crate::modp::pow_mod(mat[row][col], p - 2, p);
        for j in col..cols {
            mat[row][j] = crate::modp::mul_mod(mat[row][j], inv, p);
        }
        for r in 0..rows {
            if r != row && mat[r][col] != 0 {
                let fct = mat[r][col];
                for j in col..cols {
                    let t = crate::modp::mul_mod(fct, mat[row][j], p);
                    mat[r][j] = (mat[r][j] + p - t) % p;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == rows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for &(r, c) in &pivots {
            // reduced echelon: pivot rows have 1 at pivot col
            let coeff = mat[r][free];
            if coeff != 0 {
                v[c] = (p - coeff) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------
// monic Hensel lifting with BigInt coefficients mod m
// ---------------------------------------------------------------------

type ZmPoly = Vec<BigInt>; // low to high, reduced into [0, m)

fn zm_trim(p: &mut ZmPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn zm_reduce(p: &[BigInt], m: &BigInt) -> ZmPoly {
    let mut out: ZmPoly = p.iter().map(|c| c.mod_floor(m)).collect();
    zm_trim(&mut out);
    out
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZmPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out: ZmPoly = (0..n)
        .map(|i| {
            (a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).mod_floor(m)
        })
        .collect();
    zm_trim(&mut out);
    out
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZmPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out: ZmPoly = (0..n)
        .map(|i| {
            (a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).mod_floor(m)
        })
        .collect();
    zm_trim(&mut out);
    out
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZmPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    let mut out: ZmPoly = out.into_iter().map(|c| c.mod_floor(m)).collect();
    zm_trim(&mut out);
    out
}

/// Division by a monic polynomial, coefficients mod m.
fn zm_divmod_monic(num: &[BigInt], den: &[BigInt], m: &BigInt) -> (ZmPoly, ZmPoly) {
    debug_assert!(den.last().is_some_and(|c| c.is_one()));
    let dd = den.len() - 1;
    let mut rem: Vec<BigInt> = num.to_vec();
    if rem.len() <= dd {
        return (vec![], zm_reduce(&rem, m));
    }
    let qlen = rem.len() - dd;
    let mut q = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].mod_floor(m);
        if c.is_zero() {
            rem[k + dd] = BigInt::zero();
            continue;
        }
        q[k] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let t = (&rem[k + j] - &c * dc).mod_floor(m);
            rem[k + j] = t;
        }
    }
    rem.truncate(dd);
    let mut rem = zm_reduce(&rem, m);
    zm_trim(&mut rem);
    (zm_reduce(&q, m), rem)
}

/// One quadratic Hensel step: from f = g h (mod m), s g + t h = 1 (mod m)
/// to the same data mod m2 (m2 divides m^2).  All monic in the cases we
/// lift (f, g, h monic).
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &ZmPoly,
    h: &ZmPoly,
    s: &ZmPoly,
    t: &ZmPoly,
    m2: &BigInt,
) -> (ZmPoly, ZmPoly, ZmPoly, ZmPoly) {
    let f = zm_reduce(f, m2);
    let e = zm_sub(&f, &zm_mul(g, h, m2), m2);
    let se = zm_mul(s, &e, m2);
    let (q, r) = zm_divmod_monic(&se, h, m2);
    // g* = g + t e + q g ; h* = h + r
    let g2 = zm_add(&zm_add(g, &zm_mul(t, &e, m2), m2), &zm_mul(&q, g, m2), m2);
    let h2 = zm_add(h, &r, m2);
    // Bezout update
    let one = vec![BigInt::one()];
    let b = zm_sub(&zm_add(&zm_mul(s, &g2, m2), &zm_mul(t, &h2, m2), m2), &one, m2);
    let sb = zm_mul(s, &b, m2);
    let (c, d) = zm_divmod_monic(&sb, &h2, m2);
    let s2 = zm_sub(s, &d, m2);
    let t2 = zm_sub(&zm_sub(t, &zm_mul(t, &b, m2), m2), &zm_mul(&c, &g2, m2), m2);
    (g2, h2, s2, t2)
}

/// Lift the modular factorization of monic f from mod p to mod pk
/// (pk = p^(2^j)), returning factors as BigInt coefficient vectors
/// reduced into [0, pk).
fn hensel_lift_tree(f: &UniPoly, modular: &[ZpPoly], p: u64, pk: &BigInt) -> Vec<ZmPoly> {
    fn go(f: &[BigInt], modular: &[ZpPoly], p: u64, pk: &BigInt) -> Vec<ZmPoly> {
        if modular.len() == 1 {
            return vec![zm_reduce(f, pk)];
        }
        let mid = modular.len() / 2;
        let (left, right) = modular.split_at(mid);
        let p_big = BigInt::from(p);
        let gp = left.iter().fold(ZpPoly::one(p), |acc, w| acc.mul(w));
        let hp = right.iter().fold(ZpPoly::one(p), |acc, w| acc.mul(w));
        let (one, s0, t0) = gp.extended_gcd(&hp);
        debug_assert_eq!(one.degree(), Some(0));
        let to_zm = |z: &ZpPoly| -> ZmPoly {
            z.coeffs.iter().map(|&c| BigInt::from(c)).collect()
        };
        let mut g = to_zm(&gp);
        let mut h = to_zm(&hp);
        let mut s = to_zm(&s0);
        let mut t = to_zm(&t0);
        let mut m = p_big.clone();
        while &m < pk {
            let mut m2 = &m * &m;
            if m2 > *pk {
                m2 = pk.clone();
            }
            let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &s, &t, &m2);
            g = g2;
            h = h2;
            s = s2;
            t = t2;
            m = m2;
        }
        let mut out = go(&g, left, p, pk);
        out.extend(go(&h, right, p, pk));
        out
    }
    go(f.coeffs(), modular, p, pk)
}

// ---------------------------------------------------------------------
// recombination
// ---------------------------------------------------------------------

fn balance(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn recombine(v: &UniPoly, mut lifted: Vec<ZmPoly>, pk: &BigInt) -> Vec<UniPoly> {
    // canonical order for determinism
    lifted.sort_by(|a, b| (a.len(), &a[..]).cmp(&(b.len(), &b[..])));
    let mut current = v.clone();
    let mut out = Vec::new();
    let mut card = 1usize;
    // evaluations of the lifted factors at 0 and 1 (mod pk): a true
    // factor's value must divide the value of `current` at the same
    // point, which rejects almost all subsets for two cheap divisions
    let eval_at = |f: &ZmPoly, x: u64| -> BigInt {
        let mut acc = BigInt::zero();
        let xb = BigInt::from(x);
        for c in f.iter().rev() {
            acc = (acc * &xb + c).mod_floor(pk);
        }
        acc
    };
    let mut vals0: Vec<BigInt> = lifted.iter().map(|f| eval_at(f, 0)).collect();
    let mut vals1: Vec<BigInt> = lifted.iter().map(|f| eval_at(f, 1)).collect();
    'outer: loop {
        if 2 * card > lifted.len() {
            break;
        }
        let cur0 = current.eval(&BigInt::zero());
        let cur1 = current.eval(&BigInt::one());
        let combos = Combinations::new(lifted.len(), card);
        for subset in combos {
            let mut c0 = BigInt::one();
            let mut c1 = BigInt::one();
            for &i in &subset {
                c0 = (c0 * &vals0[i]).mod_floor(pk);
                c1 = (c1 * &vals1[i]).mod_floor(pk);
            }
            // pk exceeds twice any true factor's value at 0 or 1, so the
            // balanced representatives are the exact values and the
            // divisibility filter never rejects a genuine factor
            let c0 = balance(&c0, pk);
            let c1 = balance(&c1, pk);
            if !cur0.is_zero() && (c0.is_zero() || !(&cur0 % &c0).is_zero()) {
                continue;
            }
            if !cur1.is_zero() && (c1.is_zero() || !(&cur1 % &c1).is_zero()) {
                continue;
            }
            let mut prod: ZmPoly = vec![BigInt::one()];
            for &i in &subset {
                prod = zm_mul(&prod, &lifted[i], pk);
            }
            let cand = UniPoly::from_coeffs(prod.iter().map(|c| balance(c, pk)).collect());
            if let Some(q) = current.div_exact(&cand) {
                out.push(cand);
                current = q;
                let mut keep = Vec::with_capacity(lifted.len() - subset.len());
                let mut keep0 = Vec::new();
                let mut keep1 = Vec::new();
                for (i, f) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(f);
                        keep0.push(vals0[i].clone());
                        keep1.push(vals1[i].clone());
                    }
                }
                lifted = keep;
                vals0 = keep0;
                vals1 = keep1;
                continue 'outer;
            }
        }
        card += 1;
    }
    if current.degree().is_some_and(|d| d >= 1) {
        out.push(current);
    }
    out
}

/// Lexicographic k-subsets of 0..n.
pub(crate) struct Combinations {
    n: usize,
    k: usize,
    state: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let state = if k <= n { Some((0..k).collect()) } else { None };
        Combinations { n, k, state }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.state.clone()?;
        // advance
        let mut next = cur.clone();
        let mut i = self.k;
        loop {
            if i == 0 {
                self.state = None;
                break;
            }
            i -= 1;
            if next[i] + (self.k - i) < self.n {
                next[i] += 1;
                for j in i + 1..self.k {
                    next[j] = next[j - 1] + 1;
                }
                self.state = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(v: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn squarefree_decomposition_basic() {
        // (x+1)^2 (x-3)
        let f = up(&[1, 1]).mul(&up(&[1, 1])).mul(&up(&[-3, 1]));
        let d = squarefree_decompose_uni(&f);
        assert_eq!(d, vec![(up(&[-3, 1]), 1), (up(&[1, 1]), 2)]);
    }

    #[test]
    fn berlekamp_small() {
        // x^2 + 1 mod 5 = (x+2)(x+3)
        let f = ZpPoly::new(5, vec![1, 0, 1]);
        let mut fs = berlekamp_factor(&f);
        fs.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
        assert_eq!(fs, vec![ZpPoly::new(5, vec![2, 1]), ZpPoly::new(5, vec![3, 1])]);
        // x^2 + 1 mod 7 irreducible
        let f = ZpPoly::new(7, vec![1, 0, 1]);
        assert_eq!(berlekamp_factor(&f).len(), 1);
    }

    #[test]
    fn factors_cyclotomic_product() {
        // x^4 - 1 = (x-1)(x+1)(x^2+1)
        let f = up(&[-1, 0, 0, 0, 1]);
        let fs = factor_squarefree_uni(&f);
        assert_eq!(fs, vec![up(&[-1, 1]), up(&[1, 1]), up(&[1, 0, 1])]);
    }

    #[test]
    fn factors_non_monic() {
        // 6x^2 + 5x + 1 = (2x+1)(3x+1)
        let f = up(&[1, 5, 6]);
        let fs = factor_squarefree_uni(&f);
        assert_eq!(fs, vec![up(&[1, 2]), up(&[1, 3])]);
    }

    #[test]
    fn irreducible_stays_whole() {
        let f = up(&[1, 0, 1]);
        assert_eq!(factor_squarefree_uni(&f), vec![f.clone()]);
        // Swinnerton-Dyer-ish: x^4 - 10x^2 + 1 (irreducible, splits mod
        // every prime; stresses recombination)
        let f = up(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree_uni(&f), vec![f.clone()]);
    }

    #[test]
    fn larger_product_with_big_coefficients() {
        let a = up(&[17, 0, 3, 25]);
        let b = up(&[-11, 7, 19]);
        let c = up(&[5, 13]);
        let f = a.mul(&b).mul(&c);
        let mut expected = vec![a, b, c];
        expected.sort_by(cmp_uni);
        assert_eq!(factor_squarefree_uni(&f), expected);
    }

    #[test]
    fn combinations_enumerate_lexicographically() {
        let cs: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            cs,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
    }
}
