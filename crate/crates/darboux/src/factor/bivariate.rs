//! Bivariate factorization of a squarefree polynomial over Q.
//!
//! A shear Y -> Y + cX makes the leading X coefficient constant, an
//! integer y0 is chosen so the image in X is squarefree of full degree,
//! the image is factored, and the coprime factor system is Hensel-lifted
//! in powers of (Y - y0) to precision deg_Y + 1.  True factors are then
//! found by subset trial division.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::BiPoly;
use crate::unipoly::{pow_bigint, UniPoly};

use super::univariate::{cmp_uni, factor_squarefree_uni, Combinations};

/// Factor a squarefree primitive polynomial with no univariate content
/// (deg_x >= 1, deg_y >= 1, content trivial in both variables) into
/// normalized irreducibles.
pub(crate) fn factor_squarefree_bivariate(g: &BiPoly) -> Vec<BiPoly> {
    let total = g.total_degree().unwrap();
    debug_assert!(g.deg_x().unwrap() >= 1 && g.deg_y().unwrap() >= 1);

    // shear so the X^total coefficient is a nonzero constant
    let shear = (0..)
        .map(BigInt::from)
        .find(|c| !leading_form_at(g, c).is_zero())
        .expect("a shear below the degree always exists");
    let gc = g.shear_y(&shear);
    debug_assert_eq!(gc.deg_x().unwrap(), total);

    let factors_sheared = factor_sheared(&gc, total);

    let minus = -&shear;
    let mut out: Vec<BiPoly> = factors_sheared
        .iter()
        .map(|f| f.shear_y(&minus).primitive_part())
        .collect();
    out.sort_by(|a, b| a.cmp_canonical(b));
    out
}

/// Leading form L(1, c) where L is the top-degree part of g.
fn leading_form_at(g: &BiPoly, c: &BigInt) -> BigRational {
    let total = g.total_degree().unwrap();
    let mut acc = BigRational::zero();
    for (m, coeff) in g.terms() {
        if m.degree() == total {
            acc += coeff.clone()
                * BigRational::from_integer(pow_bigint(c, m.y));
        }
    }
    acc
}

/// Core routine on the sheared polynomial: lc_x is a nonzero constant.
fn factor_sheared(gc: &BiPoly, n: u32) -> Vec<BiPoly> {
    // choose y0 with squarefree full-degree image
    let mut y0 = BigInt::zero();
    let image = loop {
        let u = eval_y(gc, &y0);
        debug_assert_eq!(u.degree(), Some(n as usize));
        let d = u.derivative();
        if u.gcd(&d).degree() == Some(0) {
            break u;
        }
        y0 += 1;
    };
    let image_prim = image.primitive_part();
    let univ_factors = factor_squarefree_uni(&image_prim);
    if univ_factors.len() == 1 {
        return vec![gc.clone()];
    }

    // monicize: G = lcc^(n-1) gc(X/lcc, Y)
    let lcc = {
        let c = gc.coeff(n, 0);
        debug_assert!(c.denom().is_one());
        c.numer().clone()
    };
    let g_monic = monicize_x(gc, &lcc, n);
    let prec = g_monic.deg_y().unwrap_or(0) as usize + 1;
    // series view: z = Y - y0, so expand around y0
    let g_series_poly = g_monic.shift(&BigInt::zero(), &y0);
    let f_series = series_from_bipoly(&g_series_poly, prec);

    // image factors of the monicized polynomial
    let mut monic_images: Vec<UniPoly> = univ_factors
        .iter()
        .map(|h| monicize_image(h, &lcc))
        .collect();
    monic_images.sort_by(cmp_uni);

    let lifted = lift_tree(&f_series, &monic_images, prec);

    // subset recombination against the sheared polynomial
    let mut remaining = gc.clone();
    let mut live: Vec<SeriesPoly> = lifted;
    let mut out = Vec::new();
    let mut card = 1usize;
    'outer: loop {
        if 2 * card > live.len() {
            break;
        }
        for subset in Combinations::new(live.len(), card) {
            let mut prod = series_one(prec);
            for &i in &subset {
                prod = series_poly_mul(&prod, &live[i], prec);
            }
            let cand_monic = series_to_bipoly(&prod, &y0);
            // map the monic candidate back through the monicization
            let cand = substitute_scale_x(&cand_monic, &lcc).primitive_part();
            if let Ok(Some(q)) = remaining.exact_div(&cand) {
                out.push(cand);
                remaining = q;
                let mut keep = Vec::with_capacity(live.len() - subset.len());
                for (i, f) in live.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(f);
                    }
                }
                live = keep;
                continue 'outer;
            }
        }
        card += 1;
    }
    if !remaining.is_constant() {
        out.push(remaining.primitive_part());
    }
    out
}

fn eval_y(f: &BiPoly, y0: &BigInt) -> UniPoly {
    let dx = f.deg_x().unwrap() as usize;
    let mut coeffs = vec![BigInt::zero(); dx + 1];
    let y = BigRational::from_integer(y0.clone());
    for k in 0..=dx {
        let c = f.coeff_of_x_power(k as u32);
        let v = c.eval(&BigRational::zero(), &y);
        debug_assert!(v.denom().is_one());
        coeffs[k] = v.numer().clone();
    }
    UniPoly::from_coeffs(coeffs)
}

/// G = lcc^(n-1) * gc(X/lcc, Y): monic in X with integer coefficients.
fn monicize_x(gc: &BiPoly, lcc: &BigInt, n: u32) -> BiPoly {
    let mut out = BiPoly::zero();
    for k in 0..=n {
        let c = gc.coeff_of_x_power(k);
        if c.is_zero() {
            continue;
        }
        let scaled = if k == n {
            // a_n = lcc, and a_n * lcc^(n-1-n) = 1
            debug_assert_eq!(c, BiPoly::constant(BigRational::from_integer(lcc.clone())));
            BiPoly::one()
        } else {
            c.scale(&BigRational::from_integer(pow_bigint(lcc, n - 1 - k)))
        };
        out = &out + &scaled.mul_monomial(k, 0);
    }
    debug_assert!(out.coeff(n, 0).is_one());
    out
}

/// Image factor h of u maps to the monic integer factor of the
/// monicized image: (lcc^(deg h) h(X/lcc)) / lc(h).
fn monicize_image(h: &UniPoly, lcc: &BigInt) -> UniPoly {
    let d = h.degree().unwrap();
    let lc = h.leading();
    let coeffs: Vec<BigInt> = (0..=d)
        .map(|i| {
            let v = h.coeff(i) * pow_bigint(lcc, (d - i) as u32);
            let (q, r) = num_integer::Integer::div_rem(&v, &lc);
            debug_assert!(r.is_zero(), "monic image must have integer coefficients");
            q
        })
        .collect();
    UniPoly::from_coeffs(coeffs)
}

/// X^i -> lcc^i X^i.
fn substitute_scale_x(f: &BiPoly, lcc: &BigInt) -> BiPoly {
    let mut out = BiPoly::zero();
    for (m, c) in f.terms() {
        let scaled = c.clone() * BigRational::from_integer(pow_bigint(lcc, m.x));
        out = &out + &BiPoly::term(scaled, m.x, m.y);
    }
    out
}

// ---------------------------------------------------------------------
// truncated power series in z with rational coefficients
// ---------------------------------------------------------------------

type Series = Vec<BigRational>; // coefficient of z^k at index k

fn s_trim(s: &mut Series) {
    while s.last().is_some_and(|c| c.is_zero()) {
        s.pop();
    }
}

fn s_add(a: &Series, b: &Series) -> Series {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out: Series = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero).clone() + b.get(i).unwrap_or(&zero).clone())
        .collect();
    s_trim(&mut out);
    out
}

fn s_sub(a: &Series, b: &Series) -> Series {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out: Series = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero).clone() - b.get(i).unwrap_or(&zero).clone())
        .collect();
    s_trim(&mut out);
    out
}

fn s_mul(a: &Series, b: &Series, prec: usize) -> Series {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let n = (a.len() + b.len() - 1).min(prec);
    let mut out = vec![BigRational::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() || i >= prec {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j >= prec {
                break;
            }
            if !bj.is_zero() {
                out[i + j] += ai.clone() * bj.clone();
            }
        }
    }
    s_trim(&mut out);
    out
}

/// Polynomial in X whose coefficients are truncated series in z.
/// Index = X power; no trailing zero X coefficients.
type SeriesPoly = Vec<Series>;

fn sp_trim(p: &mut SeriesPoly) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn series_one(_prec: usize) -> SeriesPoly {
    vec![vec![BigRational::one()]]
}

fn sp_deg(p: &SeriesPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

fn series_poly_mul(a: &SeriesPoly, b: &SeriesPoly, prec: usize) -> SeriesPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out: SeriesPoly = vec![vec![]; a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_empty() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_empty() {
                continue;
            }
            let t = s_mul(ai, bj, prec);
            out[i + j] = s_add(&out[i + j], &t);
        }
    }
    sp_trim(&mut out);
    out
}

fn series_poly_add(a: &SeriesPoly, b: &SeriesPoly) -> SeriesPoly {
    let n = a.len().max(b.len());
    let empty: Series = vec![];
    let mut out: SeriesPoly = (0..n)
        .map(|i| s_add(a.get(i).unwrap_or(&empty), b.get(i).unwrap_or(&empty)))
        .collect();
    sp_trim(&mut out);
    out
}

fn series_poly_sub(a: &SeriesPoly, b: &SeriesPoly) -> SeriesPoly {
    let n = a.len().max(b.len());
    let empty: Series = vec![];
    let mut out: SeriesPoly = (0..n)
        .map(|i| s_sub(a.get(i).unwrap_or(&empty), b.get(i).unwrap_or(&empty)))
        .collect();
    sp_trim(&mut out);
    out
}

/// Truncate every coefficient series at `prec`.
fn sp_truncate(p: &SeriesPoly, prec: usize) -> SeriesPoly {
    let mut out: SeriesPoly = p
        .iter()
        .map(|s| {
            let mut t = s[..s.len().min(prec)].to_vec();
            s_trim(&mut t);
            t
        })
        .collect();
    sp_trim(&mut out);
    out
}

fn sp_is_monic(p: &SeriesPoly) -> bool {
    match p.last() {
        Some(top) => top.len() == 1 && top[0].is_one(),
        None => false,
    }
}

/// Division by a monic-in-X series polynomial.
fn sp_divmod_monic(num: &SeriesPoly, den: &SeriesPoly, prec: usize) -> (SeriesPoly, SeriesPoly) {
    debug_assert!(sp_is_monic(den));
    let dd = sp_deg(den).unwrap();
    let mut rem: SeriesPoly = num.clone();
    sp_trim(&mut rem);
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let qlen = rem.len() - dd;
    let mut q: SeriesPoly = vec![vec![]; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].clone();
        if c.is_empty() {
            continue;
        }
        q[k] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            if dc.is_empty() {
                continue;
            }
            let t = s_mul(&c, dc, prec);
            rem[k + j] = s_sub(&rem[k + j], &t);
        }
        debug_assert!(rem[k + dd].is_empty());
    }
    rem.truncate(dd);
    sp_trim(&mut rem);
    sp_trim(&mut q);
    (q, rem)
}

fn series_from_bipoly(f: &BiPoly, prec: usize) -> SeriesPoly {
    let dx = f.deg_x().unwrap_or(0) as usize;
    let mut out: SeriesPoly = vec![vec![]; dx + 1];
    for (m, c) in f.terms() {
        let s = &mut out[m.x as usize];
        let k = m.y as usize;
        if k >= prec {
            continue;
        }
        if s.len() <= k {
            s.resize(k + 1, BigRational::zero());
        }
        s[k] = c.clone();
    }
    for s in out.iter_mut() {
        s_trim(s);
    }
    sp_trim(&mut out);
    out
}

/// Convert a series polynomial (in z = Y - y0) back to a BiPoly in Y.
fn series_to_bipoly(p: &SeriesPoly, y0: &BigInt) -> BiPoly {
    let mut out = BiPoly::zero();
    for (i, s) in p.iter().enumerate() {
        for (k, c) in s.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &BiPoly::term(c.clone(), i as u32, k as u32);
            }
        }
    }
    out.shift(&BigInt::zero(), &(-y0))
}

// ---------------------------------------------------------------------
// rational univariate helpers for the Bezout seed
// ---------------------------------------------------------------------

type QPoly = Vec<BigRational>;

fn q_trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai.clone() * bj.clone();
        }
    }
    q_trim(&mut out);
    out
}

fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out: QPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero).clone() - b.get(i).unwrap_or(&zero).clone())
        .collect();
    q_trim(&mut out);
    out
}

fn q_divmod(num: &QPoly, den: &QPoly) -> (QPoly, QPoly) {
    let dd = den.len() - 1;
    let lc = den.last().unwrap().clone();
    let mut rem = num.clone();
    q_trim(&mut rem);
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let qlen = rem.len() - dd;
    let mut q = vec![BigRational::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].clone() / lc.clone();
        if c.is_zero() {
            continue;
        }
        q[k] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let t = c.clone() * dc.clone();
            rem[k + j] -= t;
        }
    }
    rem.truncate(dd);
    q_trim(&mut rem);
    q_trim(&mut q);
    (q, rem)
}

/// s*a + t*b = 1 for coprime a, b over Q.
fn q_bezout(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (QPoly, QPoly) = (vec![BigRational::one()], vec![]);
    let (mut t0, mut t1): (QPoly, QPoly) = (vec![], vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = q_divmod(&r0, &r1);
        let s = q_sub(&s0, &q_mul(&q, &s1));
        let t = q_sub(&t0, &q_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    assert_eq!(r0.len(), 1, "Bezout seed requires coprime inputs");
    let inv = BigRational::one() / r0[0].clone();
    (
        s0.iter().map(|c| c.clone() * inv.clone()).collect(),
        t0.iter().map(|c| c.clone() * inv.clone()).collect(),
    )
}

// ---------------------------------------------------------------------
// Hensel lifting over the series ring
// ---------------------------------------------------------------------

fn from_qpoly(q: &QPoly) -> SeriesPoly {
    q.iter()
        .map(|c| {
            if c.is_zero() {
                vec![]
            } else {
                vec![c.clone()]
            }
        })
        .collect()
}

/// One quadratic step: from f = g h (mod z^m), s g + t h = 1 (mod z^m)
/// to the same congruences mod z^m2 (m2 <= 2m), g and h monic in X.
fn sp_hensel_step(
    f: &SeriesPoly,
    g: &SeriesPoly,
    h: &SeriesPoly,
    s: &SeriesPoly,
    t: &SeriesPoly,
    m2: usize,
) -> (SeriesPoly, SeriesPoly, SeriesPoly, SeriesPoly) {
    let f = sp_truncate(f, m2);
    let e = series_poly_sub(&f, &series_poly_mul(g, h, m2));
    let se = series_poly_mul(s, &e, m2);
    let (q, r) = sp_divmod_monic(&se, h, m2);
    let g2 = series_poly_add(
        &series_poly_add(g, &series_poly_mul(t, &e, m2)),
        &series_poly_mul(&q, g, m2),
    );
    let h2 = series_poly_add(h, &r);
    let one = series_one(m2);
    let b = series_poly_sub(
        &series_poly_add(&series_poly_mul(s, &g2, m2), &series_poly_mul(t, &h2, m2)),
        &one,
    );
    let sb = series_poly_mul(s, &b, m2);
    let (c, d) = sp_divmod_monic(&sb, &h2, m2);
    let s2 = series_poly_sub(s, &d);
    let t2 = series_poly_sub(
        &series_poly_sub(t, &series_poly_mul(t, &b, m2)),
        &series_poly_mul(&c, &g2, m2),
    );
    (g2, h2, s2, t2)
}

/// Lift the coprime monic factor system of `f_series` (the images mod z)
/// to precision `prec` by a binary tree of pairwise quadratic lifts.
fn lift_tree(f_series: &SeriesPoly, images: &[UniPoly], prec: usize) -> Vec<SeriesPoly> {
    if images.len() == 1 {
        return vec![sp_truncate(f_series, prec)];
    }
    let mid = images.len() / 2;
    let (left, right) = images.split_at(mid);
    let prod_q = |part: &[UniPoly]| -> QPoly {
        let mut acc: QPoly = vec![BigRational::one()];
        for u in part {
            let q: QPoly = u
                .coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect();
            acc = q_mul(&acc, &q);
        }
        acc
    };
    let g_img = prod_q(left);
    let h_img = prod_q(right);
    let (s_img, t_img) = q_bezout(&g_img, &h_img);
    let mut g = from_qpoly(&g_img);
    let mut h = from_qpoly(&h_img);
    let mut s = from_qpoly(&s_img);
    let mut t = from_qpoly(&t_img);
    let mut m = 1usize;
    while m < prec {
        let m2 = (2 * m).min(prec);
        let (g2, h2, s2, t2) = sp_hensel_step(f_series, &g, &h, &s, &t, m2);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = m2;
    }
    let mut out = lift_tree(&g, left, prec);
    out.extend(lift_tree(&h, right, prec));
    out
}

/// Oracle-grade check used in tests and debug builds: a claimed factor
/// list must multiply back to the input up to a rational unit.
#[allow(dead_code)]
pub(crate) fn reconstructs(f: &BiPoly, factors: &[BiPoly]) -> bool {
    let mut prod = BiPoly::one();
    for w in factors {
        prod = &prod * w;
    }
    match (f.exact_div(&prod), prod.exact_div(f)) {
        (Ok(Some(q1)), Ok(Some(q2))) => q1.is_constant() && q2.is_constant(),
        _ => false,
    }
}
