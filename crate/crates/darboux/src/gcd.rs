//! Primitive gcd of bivariate polynomials.
//!
//! Subresultant PRS in X over Z[Y], with content handled by the
//! univariate integer gcd.  Output is integer primitive with positive
//! leading coefficient in the cantor order.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::BiPoly;
use crate::unipoly::UniPoly;

pub fn gcd(a: &BiPoly, b: &BiPoly) -> Result<BiPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    if a.is_zero() {
        return Ok(b.primitive_part());
    }
    if b.is_zero() {
        return Ok(a.primitive_part());
    }
    Ok(gcd_prim(&a.primitive_part(), &b.primitive_part()))
}

fn gcd_prim(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let ax = a.deg_x().unwrap();
    let bx = b.deg_x().unwrap();
    if ax == 0 && bx == 0 {
        return gcd_univar_y(a, b);
    }
    if ax == 0 {
        return gcd_univar_y(a, &content_x(b));
    }
    if bx == 0 {
        return gcd_univar_y(&content_x(a), b);
    }
    let ca = content_x(a);
    let cb = content_x(b);
    let pa = a.exact_div(&ca).unwrap().expect("content divides");
    let pb = b.exact_div(&cb).unwrap().expect("content divides");
    let cg = gcd_univar_y(&ca, &cb);
    if coprime_by_modular_image(&pa, &pb) {
        return cg;
    }
    let pg = subres_prs_x(pa, pb);
    (&cg * &pg).primitive_part()
}

/// Cheap sound coprimality proof for the X-primitive parts: if the
/// univariate images at some Y = y0 modulo a prime are coprime with full
/// X-degree, any common divisor h would have deg_x h = 0 (its leading X
/// coefficient cannot vanish at y0 mod p) and would then divide the
/// trivial X-content.  Inconclusive images fall back to the subresultant
/// chain.
fn coprime_by_modular_image(pa: &BiPoly, pb: &BiPoly) -> bool {
    use crate::modp::{mul_mod, pow_mod, primes_below, Mont, ZpPoly, CRT_PRIME_CEILING};
    let p = primes_below(CRT_PRIME_CEILING)
        .next()
        .expect("prime exists");
    let mont = Mont::new(p);
    let dxa = pa.deg_x().unwrap() as usize;
    let dxb = pb.deg_x().unwrap() as usize;
    let image = |f: &BiPoly, dx: usize, y0: u64| -> Option<ZpPoly> {
        let mut coeffs = vec![0u64; dx + 1];
        for (m, c) in f.terms() {
            let num = mont.reduce_bigint(c.numer());
            let yp = pow_mod(y0, u64::from(m.y), p);
            coeffs[m.x as usize] = (coeffs[m.x as usize] + mul_mod(num, yp, p)) % p;
        }
        let z = ZpPoly::new(p, coeffs);
        if z.degree() == Some(dx) {
            Some(z)
        } else {
            None
        }
    };
    for y0 in 0..8u64 {
        let Some(ia) = image(pa, dxa, y0) else {
            continue;
        };
        let Some(ib) = image(pb, dxb, y0) else {
            continue;
        };
        return ia.gcd(&ib).degree() == Some(0);
    }
    false
}

/// gcd of two polynomials in Y alone.
fn gcd_univar_y(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let ua = uni_from_y(a);
    let ub = uni_from_y(b);
    uni_to_y(&ua.gcd(&ub))
}

/// Content of `f` with respect to X: the gcd in Z[Y] of the coefficients
/// of the X powers.
pub(crate) fn content_x(f: &BiPoly) -> BiPoly {
    let mut acc = BiPoly::zero();
    for k in 0..=f.deg_x().unwrap_or(0) {
        let c = f.coeff_of_x_power(k);
        if c.is_zero() {
            continue;
        }
        acc = if acc.is_zero() {
            c.primitive_part()
        } else {
            gcd_univar_y(&acc, &c)
        };
        if acc.is_constant() {
            return BiPoly::one();
        }
    }
    acc
}

/// Subresultant PRS on two X-primitive polynomials with positive X degree.
/// Returns the primitive gcd of the pair (1 when coprime in X).
fn subres_prs_x(mut a: BiPoly, mut b: BiPoly) -> BiPoly {
    if a.deg_x().unwrap() < b.deg_x().unwrap() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg_x().unwrap() == 0 {
        return BiPoly::one();
    }
    let mut delta = a.deg_x().unwrap() - b.deg_x().unwrap();
    let mut beta = BiPoly::one();
    let mut psi = BiPoly::one();
    loop {
        let prem = pseudo_rem_x(&a, &b);
        if prem.is_zero() {
            let g = &b;
            let pp = g
                .exact_div(&content_x(g))
                .unwrap()
                .expect("content divides");
            return pp.primitive_part();
        }
        let r = prem
            .exact_div(&beta)
            .unwrap()
            .expect("subresultant step must divide exactly");
        let gamma = b.coeff_of_x_power(b.deg_x().unwrap());
        a = b;
        b = r;
        if b.deg_x().unwrap() == 0 {
            return BiPoly::one();
        }
        if delta > 0 {
            let num = gamma.pow(delta);
            let den = psi.pow(delta - 1);
            psi = num
                .exact_div(&den)
                .unwrap()
                .expect("psi update must divide exactly");
        }
        delta = a.deg_x().unwrap() - b.deg_x().unwrap();
        beta = &gamma * &psi.pow(delta);
    }
}

/// `lc_x(den)^(deg_x num - deg_x den + 1) * num  mod  den`, eliminating X.
fn pseudo_rem_x(num: &BiPoly, den: &BiPoly) -> BiPoly {
    let dn = den.deg_x().expect("pseudo_rem_x by zero");
    let lc = den.coeff_of_x_power(dn);
    let mut rem = num.clone();
    let Some(dr0) = rem.deg_x() else {
        return rem;
    };
    if dr0 < dn {
        return rem;
    }
    let mut steps_left = dr0 - dn + 1;
    loop {
        let Some(dr) = rem.deg_x() else { break };
        if dr < dn || rem.is_zero() {
            break;
        }
        let t = (&rem.coeff_of_x_power(dr).mul_monomial(dr - dn, 0)) * den;
        rem = &(&rem * &lc) - &t;
        steps_left -= 1;
    }
    for _ in 0..steps_left {
        rem = &rem * &lc;
    }
    rem
}

pub(crate) fn uni_from_y(f: &BiPoly) -> UniPoly {
    debug_assert_eq!(f.deg_x().unwrap_or(0), 0);
    let deg = f.deg_y().unwrap_or(0) as usize;
    let mut coeffs = vec![BigInt::from(0); deg + 1];
    for (m, c) in f.terms() {
        debug_assert!(c.denom().is_one());
        coeffs[m.y as usize] = c.numer().clone();
    }
    UniPoly::from_coeffs(coeffs)
}

pub(crate) fn uni_to_y(f: &UniPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for (j, c) in f.coeffs().iter().enumerate() {
        out = &out
            + &BiPoly::term(
                num_rational::BigRational::from_integer(c.clone()),
                0,
                j as u32,
            );
    }
    out
}
