//! Factorization of bivariate polynomials over the rationals:
//! squarefree decomposition, univariate and bivariate irreducible
//! factorization, and counting of absolute factors.

mod absolute;
mod bivariate;
mod univariate;

pub use absolute::{count_absolute_factors, is_squarefree};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::gcd::{self, content_x, uni_from_y, uni_to_y};
use crate::poly::BiPoly;

/// Complete factorization: `unit * prod factors[i]^mult[i]` reconstructs
/// the input exactly; factors are primitive, normalized, irreducible
/// over Q, pairwise non-associate, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigRational,
    pub factors: Vec<(BiPoly, u32)>,
}

impl Factorization {
    /// Multiply everything back together.
    pub fn expand(&self) -> BiPoly {
        let mut acc = BiPoly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

/// Yun-style squarefree decomposition.  Returns the unit and the list of
/// (squarefree primitive factor, multiplicity), canonically ordered.
pub fn squarefree_decompose(f: &BiPoly) -> Result<(BigRational, Vec<(BiPoly, u32)>)> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (unit, prim) = f.normalize();
    if prim.is_constant() {
        return Ok((unit, vec![]));
    }
    let mut parts: Vec<(BiPoly, u32)> = Vec::new();
    // split off the content in X: a polynomial in Y alone
    let cx = content_x(&prim);
    let px = prim.exact_div(&cx)?.expect("content divides");
    if !cx.is_constant() {
        for (u, e) in univariate::squarefree_decompose_uni(&uni_from_y(&cx)) {
            parts.push((uni_to_y(&u), e));
        }
    }
    if !px.is_constant() {
        if px.deg_x().unwrap_or(0) == 0 {
            unreachable!("X-primitive part is constant or involves X");
        }
        parts.extend(yun_in_x(&px)?);
    }
    parts.sort_by(|a, b| a.0.cmp_canonical(&b.0).then(a.1.cmp(&b.1)));
    debug_assert_eq!(
        {
            let mut acc = BiPoly::constant(unit.clone());
            for (s, e) in &parts {
                acc = &acc * &s.pow(*e);
            }
            acc
        },
        *f,
        "squarefree decomposition must reconstruct the input"
    );
    Ok((unit, parts))
}

/// Yun loop with respect to X on an X-primitive polynomial: every
/// irreducible factor involves X, so the X derivative kills none.
fn yun_in_x(f: &BiPoly) -> Result<Vec<(BiPoly, u32)>> {
    let fx = f.partial_x();
    let g = gcd::gcd(f, &fx)?;
    if g.is_constant() {
        return Ok(vec![(f.primitive_part(), 1)]);
    }
    let mut w = f.exact_div(&g)?.expect("gcd divides f");
    let mut y = fx.exact_div(&g)?.expect("gcd divides f_X");
    let mut out = Vec::new();
    let mut i = 1u32;
    while !w.is_constant() {
        let z = &y - &w.partial_x();
        let gi = gcd::gcd(&w, &z)?;
        if !gi.is_constant() {
            out.push((gi.clone(), i));
        }
        w = w.exact_div(&gi)?.expect("Yun step divides");
        y = z.exact_div(&gi)?.expect("Yun step divides");
        i += 1;
    }
    Ok(out)
}

/// Factor a univariate polynomial (in X alone or Y alone) over Q.
pub fn factor_univariate(f: &BiPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let in_x = f.deg_y().unwrap_or(0) == 0;
    let in_y = f.deg_x().unwrap_or(0) == 0;
    if !in_x && !in_y {
        return Err(Error::InvalidParameter(
            "factor_univariate needs a polynomial in one variable".into(),
        ));
    }
    factor_bivariate(f)
}

/// Complete irreducible factorization over Q.
pub fn factor_bivariate(f: &BiPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let (unit, squarefree) = squarefree_decompose(f)?;
    let mut factors: Vec<(BiPoly, u32)> = Vec::new();
    for (s, e) in &squarefree {
        for w in factor_squarefree(s)? {
            factors.push((w, *e));
        }
    }
    factors.sort_by(|a, b| a.0.cmp_canonical(&b.0));
    let fact = Factorization { unit, factors };
    debug_assert_eq!(fact.expand(), *f, "factorization must reconstruct");
    Ok(fact)
}

/// Irreducible factors of a squarefree primitive polynomial.
fn factor_squarefree(s: &BiPoly) -> Result<Vec<BiPoly>> {
    let mut out = Vec::new();
    // univariate content in X direction (factors in Y alone)
    let cx = content_x(s);
    let s1 = s.exact_div(&cx)?.expect("content divides");
    if !cx.is_constant() {
        out.extend(factor_uni_in(&cx, false));
    }
    // univariate content in Y direction (factors in X alone)
    let cy = content_y(&s1);
    let s2 = s1.exact_div(&cy)?.expect("content divides");
    if !cy.is_constant() {
        out.extend(factor_uni_in(&cy, true));
    }
    if !s2.is_constant() {
        if s2.deg_x().unwrap_or(0) == 0 || s2.deg_y().unwrap_or(0) == 0 {
            // univariate remainder (content split removed the other side)
            out.extend(factor_uni_in(&s2, s2.deg_y().unwrap_or(0) == 0));
        } else {
            out.extend(bivariate::factor_squarefree_bivariate(&s2));
        }
    }
    out.sort_by(|a, b| a.cmp_canonical(b));
    Ok(out)
}

fn content_y(f: &BiPoly) -> BiPoly {
    content_x(&f.swap_xy()).swap_xy()
}

/// Factor a polynomial living in a single variable; `in_x` selects which.
fn factor_uni_in(f: &BiPoly, in_x: bool) -> Vec<BiPoly> {
    let uni = if in_x {
        uni_from_y(&f.swap_xy())
    } else {
        uni_from_y(f)
    };
    let prim = uni.primitive_part();
    if prim.degree() == Some(0) {
        return vec![];
    }
    univariate::factor_squarefree_uni(&prim)
        .into_iter()
        .map(|u| {
            let bp = uni_to_y(&u);
            if in_x {
                bp.swap_xy()
            } else {
                bp
            }
        })
        .collect()
}

/// Convenience wrapper for tests: factor and return only the factor
/// polynomials with multiplicities, without the unit.
pub fn factor_multiset(f: &BiPoly) -> Result<Vec<(BiPoly, u32)>> {
    Ok(factor_bivariate(f)?.factors)
}
