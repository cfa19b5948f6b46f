//! The extactic matrix, its determinant E_N(D), and the reduced variant
//! E_{N,0}(D).
//!
//! Determinants of polynomial matrices are computed by evaluation and
//! interpolation: the matrix entries are iterated modulo a prime as dense
//! coefficient arrays, evaluated on a triangular integer grid sized by the
//! degree bound, interpolated per prime, and recombined by balanced CRT
//! over enough primes to exceed twice the height bound.  Both bounds are
//! therefore load-bearing: the grid proves the degree, the prime count
//! proves the coefficients.  Small matrices take a direct fraction-free
//! elimination over the polynomial ring instead.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::modp::{det_mont, primes_below, CrtAccumulator, Mont, CRT_PRIME_CEILING};
use crate::poly::{BiPoly, Monomial};
use crate::unipoly::pow_bigint;

/// Monomial basis of the degree-<= N polynomial space in cantor order,
/// optionally without the constant monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    n: u32,
    include_constant: bool,
    monomials: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn full(n: u32) -> Self {
        Self::build(n, true)
    }

    /// Constant-free basis; errors for n = 0 (empty basis).
    pub fn reduced(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "reduced basis needs n >= 1".into(),
            ));
        }
        Ok(Self::build(n, false))
    }

    fn build(n: u32, include_constant: bool) -> Self {
        let mut monomials = Vec::new();
        for x in 0..=n {
            for y in 0..=(n - x) {
                if !include_constant && x == 0 && y == 0 {
                    continue;
                }
                monomials.push(Monomial::new(x, y));
            }
        }
        monomials.sort();
        MonomialBasis {
            n,
            include_constant,
            monomials,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn include_constant(&self) -> bool {
        self.include_constant
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.monomials.binary_search(m).ok()
    }
}

/// An extactic determinant with the metadata that produced it.
#[derive(Clone, Debug)]
pub struct ExtacticCurve {
    pub poly: BiPoly,
    pub n: u32,
    pub reduced: bool,
    pub basis_len: usize,
    pub derivation_fingerprint: u64,
    pub degree_bound: u64,
    pub height_bound: BigInt,
}

impl ExtacticCurve {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Check the two size bounds on the computed polynomial.
    pub fn satisfies_bounds(&self) -> bool {
        let deg_ok = self
            .poly
            .total_degree()
            .is_none_or(|d| u64::from(d) <= self.degree_bound);
        let height_ok = self.poly.height() <= self.height_bound;
        deg_ok && height_ok
    }
}

/// deg E_N(D) <= N*l + (d-1)*(l-1)*l/2 for basis length l.
pub(crate) fn degree_bound_for_len(d: u32, n: u32, l: usize) -> u64 {
    let l = l as u64;
    let dm1 = u64::from(d.max(1)) - 1;
    u64::from(n) * l + dm1 * (l - 1) * l / 2
}

/// ||E_N(D)||_inf <= (2 l H (l (d-1) + N)^3)^(l(l-1)/2) for basis length l.
pub(crate) fn height_bound_for_len(d: u32, n: u32, h: &BigInt, l: usize) -> BigInt {
    let l_big = BigInt::from(l);
    let dm1 = BigInt::from(d.max(1) - 1);
    let base: BigInt =
        BigInt::from(2) * &l_big * h * pow_bigint(&(&l_big * &dm1 + BigInt::from(n)), 3);
    let exp = (l * (l - 1) / 2) as u32;
    pow_bigint(&base, exp)
}

/// Degree bound with the full-basis length l = (N+1)(N+2)/2.
pub fn degree_bound(d: u32, n: u32) -> u64 {
    assert!(d >= 1, "degree bound needs d >= 1");
    let l = ((n as usize) + 1) * ((n as usize) + 2) / 2;
    degree_bound_for_len(d, n, l)
}

/// Height bound with the full-basis length l = (N+1)(N+2)/2.
pub fn height_bound(d: u32, n: u32, h: &BigInt) -> BigInt {
    assert!(d >= 1, "height bound needs d >= 1");
    assert!(h >= &BigInt::one(), "height bound needs H >= 1");
    let l = ((n as usize) + 1) * ((n as usize) + 2) / 2;
    height_bound_for_len(d, n, h, l)
}

/// The l x l matrix with entry (r, c) = D^r(v_c), rows top to bottom
/// starting at D^0, columns in cantor order.
pub fn extactic_matrix(d: &Derivation, basis: &MonomialBasis) -> Vec<Vec<BiPoly>> {
    let mut rows = Vec::with_capacity(basis.len());
    let first: Vec<BiPoly> = basis
        .monomials()
        .iter()
        .map(|m| BiPoly::term(BigRational::one(), m.x, m.y))
        .collect();
    rows.push(first);
    for _ in 1..basis.len() {
        let prev = rows.last().unwrap();
        rows.push(prev.iter().map(|f| d.apply(f)).collect());
    }
    rows
}

/// E_N(D): the determinant over the full monomial basis.  Exact.
pub fn extactic_curve(d: &Derivation, n: u32) -> ExtacticCurve {
    let basis = MonomialBasis::full(n);
    curve_for_basis(d, &basis)
}

/// E_{N,0}(D): the determinant over the constant-free basis.  Exact.
pub fn extactic_reduced(d: &Derivation, n: u32) -> Result<ExtacticCurve> {
    let basis = MonomialBasis::reduced(n)?;
    Ok(curve_for_basis(d, &basis))
}

pub(crate) fn curve_for_basis(d: &Derivation, basis: &MonomialBasis) -> ExtacticCurve {
    let l = basis.len();
    let bt = degree_bound_for_len(d.degree(), basis.n(), l);
    let hb = height_bound_for_len(d.degree(), basis.n(), d.height(), l);
    let poly = if l <= 4 {
        det_direct(&extactic_matrix(d, basis))
    } else {
        det_by_interpolation(d, basis, bt, &hb)
    };
    debug_assert!(
        poly.total_degree().is_none_or(|t| u64::from(t) <= bt),
        "extactic degree bound violated"
    );
    ExtacticCurve {
        poly,
        n: basis.n(),
        reduced: !basis.include_constant(),
        basis_len: l,
        derivation_fingerprint: d.fingerprint(),
        degree_bound: bt,
        height_bound: hb,
    }
}

/// Smallest n <= max_n with E_n(D) = 0, i.e. the exact degree of the
/// minimal rational first integral when one of degree <= max_n exists.
pub fn minimal_null_degree(d: &Derivation, max_n: u32) -> Option<u32> {
    for n in 1..=max_n {
        let basis = MonomialBasis::full(n);
        if has_nonzero_witness(d, &basis) {
            continue;
        }
        if curve_for_basis(d, &basis).is_zero() {
            return Some(n);
        }
    }
    None
}

// ---------------------------------------------------------------------
// direct fraction-free determinant for small matrices
// ---------------------------------------------------------------------

pub(crate) fn det_direct(m: &[Vec<BiPoly>]) -> BiPoly {
    let l = m.len();
    let mut w: Vec<Vec<BiPoly>> = m.to_vec();
    let mut prev = BiPoly::one();
    let mut neg = false;
    for k in 0..l {
        if w[k][k].is_zero() {
            let Some(sw) = (k + 1..l).find(|&r| !w[r][k].is_zero()) else {
                return BiPoly::zero();
            };
            w.swap(k, sw);
            neg = !neg;
        }
        for i in k + 1..l {
            for j in k + 1..l {
                let t = &(&w[k][k] * &w[i][j]) - &(&w[i][k] * &w[k][j]);
                w[i][j] = if t.is_zero() {
                    t
                } else {
                    t.exact_div(&prev)
                        .unwrap()
                        .expect("Bareiss division is exact")
                };
            }
            w[i][k] = BiPoly::zero();
        }
        prev = w[k][k].clone();
    }
    let det = w[l - 1][l - 1].clone();
    if neg {
        -&det
    } else {
        det
    }
}

// ---------------------------------------------------------------------
// dense mod-p entry iteration
// ---------------------------------------------------------------------

/// Dense bivariate coefficient block modulo a prime, Montgomery domain.
#[derive(Clone)]
struct DenseBi {
    dx: usize,
    dy: usize,
    c: Vec<u64>, // c[i * (dy+1) + j]
}

impl DenseBi {
    fn zero() -> Self {
        DenseBi {
            dx: 0,
            dy: 0,
            c: vec![0],
        }
    }

    fn from_bipoly(mont: &Mont, f: &BiPoly) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        let dx = f.deg_x().unwrap() as usize;
        let dy = f.deg_y().unwrap() as usize;
        let mut c = vec![0u64; (dx + 1) * (dy + 1)];
        for (m, v) in f.terms() {
            debug_assert!(v.denom().is_one());
            let r = mont.reduce_bigint(v.numer());
            c[m.x as usize * (dy + 1) + m.y as usize] = mont.to_mont(r);
        }
        DenseBi { dx, dy, c }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }
}

/// acc += f * g (dense, mod p).
fn mul_acc(mont: &Mont, f: &DenseBi, g: &DenseBi, acc: &mut DenseBi) {
    let dx = f.dx + g.dx;
    let dy = f.dy + g.dy;
    if acc.dx < dx || acc.dy < dy {
        let mut bigger = DenseBi {
            dx: dx.max(acc.dx),
            dy: dy.max(acc.dy),
            c: vec![0; (dx.max(acc.dx) + 1) * (dy.max(acc.dy) + 1)],
        };
        for i in 0..=acc.dx {
            for j in 0..=acc.dy {
                bigger.c[i * (bigger.dy + 1) + j] = acc.c[i * (acc.dy + 1) + j];
            }
        }
        *acc = bigger;
    }
    let stride = acc.dy + 1;
    for i1 in 0..=f.dx {
        for j1 in 0..=f.dy {
            let a = f.c[i1 * (f.dy + 1) + j1];
            if a == 0 {
                continue;
            }
            for i2 in 0..=g.dx {
                for j2 in 0..=g.dy {
                    let b = g.c[i2 * (g.dy + 1) + j2];
                    if b == 0 {
                        continue;
                    }
                    let cell = &mut acc.c[(i1 + i2) * stride + (j1 + j2)];
                    *cell = mont.add(*cell, mont.mul(a, b));
                }
            }
        }
    }
}

fn partial_x_mod(mont: &Mont, f: &DenseBi, small: &[u64]) -> DenseBi {
    if f.dx == 0 {
        return DenseBi::zero();
    }
    let dx = f.dx - 1;
    let dy = f.dy;
    let mut c = vec![0u64; (dx + 1) * (dy + 1)];
    for i in 1..=f.dx {
        for j in 0..=f.dy {
            let v = f.c[i * (f.dy + 1) + j];
            if v != 0 {
                c[(i - 1) * (dy + 1) + j] = mont.mul(v, small[i]);
            }
        }
    }
    DenseBi { dx, dy, c }
}

fn partial_y_mod(mont: &Mont, f: &DenseBi, small: &[u64]) -> DenseBi {
    if f.dy == 0 {
        return DenseBi::zero();
    }
    let dx = f.dx;
    let dy = f.dy - 1;
    let mut c = vec![0u64; (dx + 1) * (dy + 1)];
    for i in 0..=f.dx {
        for j in 1..=f.dy {
            let v = f.c[i * (f.dy + 1) + j];
            if v != 0 {
                c[i * (dy + 1) + (j - 1)] = mont.mul(v, small[j]);
            }
        }
    }
    DenseBi { dx, dy, c }
}

/// All matrix entries D^r(v_c) reduced mod p, built by iterating the
/// derivation on dense blocks (no large exact polynomials involved).
fn entries_mod_p(mont: &Mont, d: &Derivation, basis: &MonomialBasis) -> Vec<Vec<DenseBi>> {
    let l = basis.len();
    let a = DenseBi::from_bipoly(mont, d.a());
    let b = DenseBi::from_bipoly(mont, d.b());
    // Montgomery forms of the small integers used by derivatives
    let max_deg = degree_bound_for_len(d.degree(), basis.n(), l) as usize + 2;
    let small: Vec<u64> = (0..=max_deg as u64)
        .map(|v| mont.to_mont(v % mont.p))
        .collect();
    let mut rows: Vec<Vec<DenseBi>> = Vec::with_capacity(l);
    let first: Vec<DenseBi> = basis
        .monomials()
        .iter()
        .map(|m| {
            let dx = m.x as usize;
            let dy = m.y as usize;
            let mut c = vec![0u64; (dx + 1) * (dy + 1)];
            c[dx * (dy + 1) + dy] = mont.one_mont();
            DenseBi { dx, dy, c }
        })
        .collect();
    rows.push(first);
    for _ in 1..l {
        let prev = rows.last().unwrap();
        let next: Vec<DenseBi> = prev
            .iter()
            .map(|f| {
                let fx = partial_x_mod(mont, f, &small);
                let fy = partial_y_mod(mont, f, &small);
                let mut acc = DenseBi::zero();
                if !fx.is_zero() {
                    mul_acc(mont, &a, &fx, &mut acc);
                }
                if !fy.is_zero() {
                    mul_acc(mont, &b, &fy, &mut acc);
                }
                acc
            })
            .collect();
        rows.push(next);
    }
    rows
}

// ---------------------------------------------------------------------
// evaluation grid + interpolation, one prime
// ---------------------------------------------------------------------

/// Values of det at the lower-set grid {(x, y) : x + y <= bt}, as rows
/// vals[x] of length bt+1-x.
fn grid_values(mont: &Mont, entries: &[Vec<DenseBi>], l: usize, bt: usize) -> Vec<Vec<u64>> {
    (0..=bt)
        .into_par_iter()
        .map(|x| {
            let xm = mont.to_mont(x as u64 % mont.p);
            // collapse each entry to a univariate poly in Y at X = x
            let unis: Vec<Vec<u64>> = entries
                .iter()
                .flat_map(|row| row.iter())
                .map(|e| {
                    let stride = e.dy + 1;
                    (0..=e.dy)
                        .map(|j| {
                            let mut acc = 0u64;
                            for i in (0..=e.dx).rev() {
                                acc = mont.add(mont.mul(acc, xm), e.c[i * stride + j]);
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            let mut mat = vec![0u64; l * l];
            let mut row_vals = Vec::with_capacity(bt + 1 - x);
            for y in 0..=(bt - x) {
                let ym = mont.to_mont(y as u64 % mont.p);
                for (cell, uni) in mat.iter_mut().zip(&unis) {
                    let mut acc = 0u64;
                    for &c in uni.iter().rev() {
                        acc = mont.add(mont.mul(acc, ym), c);
                    }
                    *cell = acc;
                }
                row_vals.push(det_mont_in_mont(mont, &mut mat, l));
            }
            row_vals
        })
        .collect()
}

/// det of a matrix whose entries are already Montgomery; output Montgomery.
fn det_mont_in_mont(mont: &Mont, m: &mut [u64], l: usize) -> u64 {
    // det_mont returns a plain residue; convert back to Montgomery
    let d = det_mont(mont, m, l);
    mont.to_mont(d)
}

/// Interpolate the coefficients (mod p, plain residues) of the polynomial
/// of total degree <= bt from its lower-set grid values at integer nodes.
fn interpolate_lower_set(mont: &Mont, mut vals: Vec<Vec<u64>>, bt: usize) -> Vec<((u32, u32), u64)> {
    // inverses of 1..=bt in Montgomery form
    let invs: Vec<u64> = (0..=bt)
        .map(|k| {
            if k == 0 {
                0
            } else {
                mont.inv(mont.to_mont(k as u64 % mont.p))
            }
        })
        .collect();
    // Newton coefficients along x for each fixed y: vals is indexed
    // [x][y]; divided differences run over x for fixed y.  Transpose view:
    // column y has entries x = 0..=bt-y.
    let mut cx: Vec<Vec<u64>> = (0..=bt)
        .map(|y| (0..=(bt - y)).map(|x| vals[x][y]).collect())
        .collect();
    vals.clear();
    for col in cx.iter_mut() {
        newton_in_place(mont, col, &invs);
    }
    // now cx[y][i] = x-Newton coefficient of order i at row y; divided
    // differences over y for each fixed i
    let mut coeffs: Vec<Vec<u64>> = (0..=bt)
        .map(|i| (0..=(bt - i)).map(|y| cx[y][i]).collect())
        .collect();
    for col in coeffs.iter_mut() {
        newton_in_place(mont, col, &invs);
    }
    // coeffs[i][j] multiplies Nx_i(X) * Ny_j(Y) with N_k = prod (T - a),
    // a < k.  Expand to the monomial basis.
    let newton_basis = newton_basis_polys(mont, bt);
    let mut dense = vec![0u64; (bt + 1) * (bt + 1)];
    for (i, row) in coeffs.iter().enumerate() {
        if row.iter().all(|&c| c == 0) {
            continue;
        }
        // wy = sum_j row[j] * Ny_j, dense in Y
        let mut wy = vec![0u64; bt - i + 1];
        for (j, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, &b) in newton_basis[j].iter().enumerate() {
                wy[k] = mont.add(wy[k], mont.mul(c, b));
            }
        }
        for (xi, &nb) in newton_basis[i].iter().enumerate() {
            if nb == 0 {
                continue;
            }
            for (yj, &wv) in wy.iter().enumerate() {
                if wv != 0 {
                    let cell = &mut dense[xi * (bt + 1) + yj];
                    *cell = mont.add(*cell, mont.mul(nb, wv));
                }
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..=bt {
        for j in 0..=bt {
            let v = dense[i * (bt + 1) + j];
            if v != 0 {
                out.push(((i as u32, j as u32), mont.from_mont(v)));
            }
        }
    }
    out
}

/// In-place Newton divided differences over nodes 0, 1, 2, ...
fn newton_in_place(mont: &Mont, v: &mut [u64], invs: &[u64]) {
    let m = v.len();
    for k in 1..m {
        for i in (k..m).rev() {
            let diff = mont.sub(v[i], v[i - 1]);
            v[i] = mont.mul(diff, invs[k]);
        }
    }
}

/// N_k(T) = prod_{a<k} (T - a) as dense coefficient vectors mod p.
fn newton_basis_polys(mont: &Mont, bt: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(bt + 1);
    out.push(vec![mont.one_mont()]);
    for k in 0..bt {
        let prev = out.last().unwrap();
        let a = mont.to_mont(k as u64 % mont.p);
        let mut next = vec![0u64; prev.len() + 1];
        for (i, &c) in prev.iter().enumerate() {
            // (T - a) * c T^i
            next[i + 1] = mont.add(next[i + 1], c);
            next[i] = mont.sub(next[i], mont.mul(a, c));
        }
        out.push(next);
    }
    out
}

fn curve_mod_p(p: u64, d: &Derivation, basis: &MonomialBasis, bt: usize) -> Vec<((u32, u32), u64)> {
    let mont = Mont::new(p);
    let entries = entries_mod_p(&mont, d, basis);
    let vals = grid_values(&mont, &entries, basis.len(), bt);
    if vals.iter().all(|row| row.iter().all(|&v| v == 0)) {
        return Vec::new();
    }
    interpolate_lower_set(&mont, vals, bt)
}

fn det_by_interpolation(d: &Derivation, basis: &MonomialBasis, bt: u64, hb: &BigInt) -> BiPoly {
    let bt = bt as usize;
    // enough primes for |coeff| <= hb: product must exceed 2*hb
    let needed_bits = (hb * 2u32 + 1u32).bits() as usize;
    let mut primes = Vec::new();
    let mut bits = 0usize;
    for p in primes_below(CRT_PRIME_CEILING) {
        primes.push(p);
        bits += 61;
        if bits >= needed_bits {
            break;
        }
    }
    let per_prime: Vec<Vec<((u32, u32), u64)>> = primes
        .par_iter()
        .map(|&p| curve_mod_p(p, d, basis, bt))
        .collect();
    combine_crt(&primes, &per_prime)
}

pub(crate) fn combine_crt(primes: &[u64], per_prime: &[Vec<((u32, u32), u64)>]) -> BiPoly {
    use std::collections::BTreeMap;
    let mut support: BTreeMap<(u32, u32), Vec<u64>> = BTreeMap::new();
    for (idx, coeffs) in per_prime.iter().enumerate() {
        for &((i, j), v) in coeffs {
            support
                .entry((i, j))
                .or_insert_with(|| vec![0; primes.len()])[idx] = v;
        }
    }
    let mut out = BiPoly::zero();
    for ((i, j), residues) in support {
        let mut acc = CrtAccumulator::new();
        for (idx, &p) in primes.iter().enumerate() {
            acc.push(residues[idx], p);
        }
        if !acc.value.is_zero() {
            out = &out + &BiPoly::term(BigRational::from_integer(acc.value), i, j);
        }
    }
    out
}

// ---------------------------------------------------------------------
// probabilistic nonzero witness
// ---------------------------------------------------------------------

/// Sound nonzero test: evaluates the determinant at a few deterministic
/// pseudo-random points modulo two primes.  A nonzero value proves
/// E != 0; all-zero samples prove nothing (callers then compute the
/// full curve or construct a first-integral certificate).
pub(crate) fn has_nonzero_witness(d: &Derivation, basis: &MonomialBasis) -> bool {
    let l = basis.len();
    let bt = degree_bound_for_len(d.degree(), basis.n(), l);
    let range = 2 * bt + 1;
    let mut state = d
        .fingerprint()
        .wrapping_mul(0x9e3779b97f4a7c15)
        .wrapping_add(u64::from(basis.n()) << 1)
        .wrapping_add(u64::from(basis.include_constant()));
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        state >> 11
    };
    for p in primes_below(CRT_PRIME_CEILING).take(2) {
        let mont = Mont::new(p);
        let entries = entries_mod_p(&mont, d, basis);
        let mut mat = vec![0u64; l * l];
        for _ in 0..3 {
            let x = mont.to_mont(next() % range % p);
            let y = mont.to_mont(next() % range % p);
            for (cell, e) in mat
                .iter_mut()
                .zip(entries.iter().flat_map(|row| row.iter()))
            {
                // Horner over x then y on the dense block
                let stride = e.dy + 1;
                let mut acc = 0u64;
                for j in (0..=e.dy).rev() {
                    let mut ax = 0u64;
                    for i in (0..=e.dx).rev() {
                        ax = mont.add(mont.mul(ax, x), e.c[i * stride + j]);
                    }
                    acc = mont.add(mont.mul(acc, y), ax);
                }
                *cell = acc;
            }
            if det_mont(&mont, &mut mat.clone(), l) != 0 {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::{gen_exponential_example, gen_linear_example};
    use crate::parse::parse_polynomial;

    fn p(s: &str) -> BiPoly {
        parse_polynomial(s).unwrap()
    }

    fn fixture_a() -> Derivation {
        Derivation::new(p("-2*X^2"), p("1 - 4*X*Y")).unwrap()
    }

    #[test]
    fn basis_lengths_and_order() {
        let b = MonomialBasis::full(1);
        assert_eq!(b.len(), 3);
        assert_eq!(
            b.monomials(),
            &[Monomial::new(0, 0), Monomial::new(0, 1), Monomial::new(1, 0)]
        );
        let b = MonomialBasis::full(3);
        assert_eq!(b.len(), 10);
        let b = MonomialBasis::reduced(3).unwrap();
        assert_eq!(b.len(), 9);
        assert!(MonomialBasis::reduced(0).is_err());
    }

    #[test]
    fn matrix_for_fixture_a() {
        let d = fixture_a();
        let m = extactic_matrix(&d, &MonomialBasis::full(1));
        assert_eq!(m[0], vec![BiPoly::one(), p("Y"), p("X")]);
        assert_eq!(m[1], vec![BiPoly::zero(), p("1 - 4*X*Y"), p("-2*X^2")]);
        assert_eq!(
            m[2],
            vec![BiPoly::zero(), p("-4*X + 24*X^2*Y"), p("8*X^3")]
        );
    }

    #[test]
    fn trivial_n0_curve() {
        let d = gen_linear_example(2);
        let c = extactic_curve(&d, 0);
        assert_eq!(c.poly, BiPoly::one());
        assert_eq!(c.basis_len, 1);
    }

    #[test]
    fn e1_of_fixture_a_is_16_x4_y() {
        let c = extactic_curve(&fixture_a(), 1);
        assert_eq!(c.poly, p("16*X^4*Y"));
        assert!(c.satisfies_bounds());
    }

    #[test]
    fn e1_of_linear_example() {
        let c = extactic_curve(&gen_linear_example(2), 1);
        assert_eq!(c.poly, p("6*X*Y"));
    }

    #[test]
    fn reduced_e1_of_linear_example() {
        let c = extactic_reduced(&gen_linear_example(2), 1).unwrap();
        assert_eq!(c.poly, p("X*Y"));
    }

    /// Independent oracle for diagonal derivations aX dX + bY dY: the
    /// matrix column of X^i Y^j is the weight w = a i + b j powers times
    /// the monomial, so E is (prod of basis monomials) * Vandermonde(w).
    fn diagonal_curve_oracle(a: i64, b: i64, basis: &MonomialBasis) -> BiPoly {
        let mut prod = BiPoly::one();
        let mut weights = Vec::new();
        for m in basis.monomials() {
            prod = &prod * &BiPoly::term_int(1, m.x, m.y);
            weights.push(a * i64::from(m.x) + b * i64::from(m.y));
        }
        let mut v = BigInt::one();
        for i in 0..weights.len() {
            for j in i + 1..weights.len() {
                v *= BigInt::from(weights[j] - weights[i]);
            }
        }
        prod.scale(&BigRational::from_integer(v))
    }

    #[test]
    fn diagonal_oracle_matches_direct_and_interpolated_route() {
        // n = 1 uses the direct Bareiss path, n = 2 the grid path
        for (a, b, n) in [(3i64, 2i64, 1u32), (3, 2, 2), (5, 1, 2), (4, 7, 2)] {
            let d = Derivation::new(
                BiPoly::term_int(a, 1, 0),
                BiPoly::term_int(b, 0, 1),
            )
            .unwrap();
            let basis = MonomialBasis::full(n);
            let expected = diagonal_curve_oracle(a, b, &basis);
            let got = curve_for_basis(&d, &basis);
            assert_eq!(got.poly, expected, "a={a} b={b} n={n}");
            assert!(got.satisfies_bounds());
        }
    }

    #[test]
    fn e2_of_linear_example_vandermonde_value() {
        // weights {0,2,3,4,5,6}: V = 207360, monomial product X^4 Y^4
        let c = extactic_curve(&gen_linear_example(2), 2);
        assert_eq!(c.poly, p("207360*X^4*Y^4"));
        assert!(c.satisfies_bounds());
    }

    #[test]
    fn e3_vanishes_for_degree_3_first_integral() {
        // X^2 / Y^3 is a first integral of exact degree 3
        let c = extactic_curve(&gen_linear_example(2), 3);
        assert!(c.is_zero());
    }

    #[test]
    fn reduced_e3_of_linear_example_is_zero_by_weight_collision() {
        // X^2 and Y^3 share weight 6, so the reduced curve vanishes too
        let c = extactic_reduced(&gen_linear_example(2), 3).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn degree_and_height_bound_values() {
        assert_eq!(degree_bound(2, 1), 6);
        assert_eq!(degree_bound(1, 3), 30);
        assert_eq!(
            height_bound(2, 1, &BigInt::from(4)),
            BigInt::from(3623878656u64)
        );
        // degree_bound(d, 0) = 0 for any d
        assert_eq!(degree_bound(7, 0), 0);
    }

    #[test]
    fn minimal_null_degree_examples() {
        assert_eq!(minimal_null_degree(&gen_linear_example(2), 3), Some(3));
        assert_eq!(minimal_null_degree(&fixture_a(), 1), None);
        let d3 = gen_exponential_example(3).unwrap();
        assert_eq!(minimal_null_degree(&d3, 3), Some(3));
    }

    #[test]
    fn witness_finds_nonzero_curves() {
        assert!(has_nonzero_witness(&fixture_a(), &MonomialBasis::full(1)));
        assert!(has_nonzero_witness(
            &gen_linear_example(2),
            &MonomialBasis::full(2)
        ));
        // zero curve: no witness can exist
        assert!(!has_nonzero_witness(
            &gen_linear_example(2),
            &MonomialBasis::full(3)
        ));
    }

    #[test]
    fn e1_of_exponential_family_contains_linear_factors() {
        let d = gen_exponential_example(3).unwrap();
        let c = extactic_curve(&d, 1);
        // hand expansion: E_1 = 2 A (B (2X+3) + A Y) with the cubic junk
        let expected = &(&p("X^2 + 3*X + 2") * &p("-3*X^2*Y - 9*X*Y - 7*Y - 2*X - 3"))
            .scale(&BigRational::from_integer(BigInt::from(2)));
        assert_eq!(&c.poly, expected);
        for f in ["X + 1", "X + 2"] {
            assert!(c.poly.exact_div(&p(f)).unwrap().is_some());
        }
    }

    #[test]
    fn reduced_e3_of_exponential_family_divisible_by_first_integral() {
        let d = gen_exponential_example(3).unwrap();
        let c = extactic_reduced(&d, 3).unwrap();
        assert!(!c.is_zero());
        let f = crate::derivation::exponential_first_integral(3);
        assert!(c.poly.exact_div(&f).unwrap().is_some());
        assert!(c.satisfies_bounds());
    }

    #[test]
    fn vanishing_is_upward_closed() {
        // E_3(linear) = 0 forces E_4(linear) = 0
        let d = gen_linear_example(2);
        assert!(extactic_curve(&d, 4).is_zero());
    }

    #[test]
    fn reduced_e1_nonzero_for_distinct_diagonal_linear_part() {
        // A(0,0) = B(0,0) = 0 with linear part diag(2, 5)
        let d = Derivation::new(p("2*X + X^2"), p("5*Y + X*Y")).unwrap();
        let c = extactic_reduced(&d, 1).unwrap();
        assert!(!c.is_zero());
        assert_eq!(c.poly, p("-3*X*Y"));
    }

    #[test]
    fn basis_change_sign_only_under_column_swap() {
        // permuting two basis columns flips the determinant sign
        let d = fixture_a();
        let basis = MonomialBasis::full(1);
        let mut m = extactic_matrix(&d, &basis);
        let e = det_direct(&m);
        for row in m.iter_mut() {
            row.swap(1, 2);
        }
        let swapped = det_direct(&m);
        assert_eq!(swapped, -&e);
    }

    #[test]
    fn grid_route_matches_direct_elimination_on_random_systems() {
        // full dual-route check of the modular pipeline: entries iterated
        // mod p, triangular grid, Newton interpolation, CRT — against a
        // direct fraction-free determinant over the polynomial ring
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        let mut random_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut f = BiPoly::zero();
            for x in 0..=2u32 {
                for y in 0..=(2 - x) {
                    if rng.gen_bool(0.7) {
                        let c = rng.gen_range(-9i64..=9);
                        f = &f + &BiPoly::term_int(c, x, y);
                    }
                }
            }
            f
        };
        let mut done = 0;
        while done < 5 {
            let a = random_poly(&mut rng);
            let b = random_poly(&mut rng);
            let Ok(d) = Derivation::new(a, b) else { continue };
            if d.degree() < 1 {
                continue;
            }
            // l = 6 forces the grid route in production code
            let basis = MonomialBasis::full(2);
            let via_grid = curve_for_basis(&d, &basis).poly;
            let via_direct = det_direct(&extactic_matrix(&d, &basis));
            assert_eq!(via_grid, via_direct, "system #{done}");
            // reduced basis too (l = 5)
            let basis = MonomialBasis::reduced(2).unwrap();
            let via_grid = curve_for_basis(&d, &basis).poly;
            let via_direct = det_direct(&extactic_matrix(&d, &basis));
            assert_eq!(via_grid, via_direct, "reduced, system #{done}");
            done += 1;
        }
    }

    #[test]
    fn interpolation_path_matches_direct_on_small_case() {
        // force the grid path on an l = 3 matrix and compare
        let d = fixture_a();
        let basis = MonomialBasis::full(1);
        let bt = degree_bound_for_len(d.degree(), 1, 3);
        let hb = height_bound_for_len(d.degree(), 1, d.height(), 3);
        let via_grid = det_by_interpolation(&d, &basis, bt, &hb);
        let via_bareiss = det_direct(&extactic_matrix(&d, &basis));
        assert_eq!(via_grid, via_bareiss);
        assert_eq!(via_grid, p("16*X^4*Y"));
    }
}
