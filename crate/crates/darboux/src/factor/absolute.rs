//! Counting absolutely irreducible factors via the first-order linear
//! system f (G_Y - H_X) = G f_Y - H f_X with the standard degree
//! truncations: the rational solution space has dimension equal to the
//! number of irreducible factors over the complex numbers.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gcd;
use crate::linalg::RatMatrix;
use crate::poly::BiPoly;

/// Number of absolutely irreducible factors of a squarefree nonconstant
/// polynomial.  Errors on non-squarefree input.
pub fn count_absolute_factors(f: &BiPoly) -> Result<u32> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    if !is_squarefree(f)? {
        return Err(Error::InvalidParameter(
            "count_absolute_factors needs a squarefree polynomial".into(),
        ));
    }
    let f = f.primitive_part();
    let m = f.deg_x().unwrap_or(0);
    let n = f.deg_y().unwrap_or(0);
    if m == 0 || n == 0 {
        // univariate squarefree: splits into deg distinct linear factors
        // over the complex numbers
        return Ok(f.total_degree().unwrap());
    }
    // unknowns: G with deg_X <= m-1, deg_Y <= n; H with deg_X <= m,
    // deg_Y <= n-1
    let g_monos: Vec<(u32, u32)> = (0..m)
        .flat_map(|i| (0..=n).map(move |j| (i, j)))
        .collect();
    let h_monos: Vec<(u32, u32)> = (0..=m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .collect();
    let cols = g_monos.len() + h_monos.len();
    let rows = (2 * m as usize) * (2 * n as usize);
    let row_index = |i: u32, j: u32| -> usize { (i as usize) * (2 * n as usize) + j as usize };

    let fx = f.partial_x();
    let fy = f.partial_y();
    let mut mat = RatMatrix::zero(rows, cols);
    for (col, &(i, j)) in g_monos.iter().enumerate() {
        // contribution of G = X^i Y^j: f * dY(G) - G * fY
        let mono = BiPoly::term_int(1, i, j);
        let contrib = &(&f * &mono.partial_y()) - &(&mono * &fy);
        for (mm, c) in contrib.terms() {
            mat.set(row_index(mm.x, mm.y), col, c.clone());
        }
    }
    for (col0, &(i, j)) in h_monos.iter().enumerate() {
        let col = g_monos.len() + col0;
        // contribution of H = X^i Y^j: -f * dX(H) + H * fX
        let mono = BiPoly::term_int(1, i, j);
        let contrib = &(&mono * &fx) - &(&f * &mono.partial_x());
        for (mm, c) in contrib.terms() {
            mat.set(row_index(mm.x, mm.y), col, c.clone());
        }
    }
    let dim = mat.nullspace().len();
    Ok(dim as u32)
}

/// Squarefree test in characteristic zero:
/// gcd(f, gcd(f_X, f_Y)) is constant.
pub fn is_squarefree(f: &BiPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if f.is_constant() {
        return Ok(true);
    }
    let fx = f.partial_x();
    let fy = f.partial_y();
    let d = if fx.is_zero() {
        gcd::gcd(f, &fy)?
    } else if fy.is_zero() {
        gcd::gcd(f, &fx)?
    } else {
        gcd::gcd(f, &gcd::gcd(&fx, &fy)?)?
    };
    let _ = BigRational::zero();
    Ok(d.is_constant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn p(s: &str) -> BiPoly {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn gaussian_split_counts_two() {
        // X^2 + Y^2 = (X + iY)(X - iY)
        assert_eq!(count_absolute_factors(&p("X^2 + Y^2")).unwrap(), 2);
    }

    #[test]
    fn linear_is_absolutely_irreducible() {
        assert_eq!(count_absolute_factors(&p("X - Y")).unwrap(), 1);
    }

    #[test]
    fn additivity_over_rational_factors() {
        let f = &p("X^2 + Y^2") * &p("X + Y");
        assert_eq!(count_absolute_factors(&f).unwrap(), 3);
    }

    #[test]
    fn rationally_irreducible_but_absolutely_split() {
        // X^2 - 2 Y^2 is irreducible over Q, splits over Q(sqrt 2)
        assert_eq!(count_absolute_factors(&p("X^2 - 2*Y^2")).unwrap(), 2);
        // genuinely absolutely irreducible
        assert_eq!(
            count_absolute_factors(&p("X^2*Y + 3*X*Y + 2*Y + X")).unwrap(),
            1
        );
        assert_eq!(count_absolute_factors(&p("Y - X^2")).unwrap(), 1);
    }

    #[test]
    fn univariate_inputs_count_degree() {
        assert_eq!(count_absolute_factors(&p("X^2 - 2")).unwrap(), 2);
        assert_eq!(count_absolute_factors(&p("Y^3 - 2")).unwrap(), 3);
    }

    #[test]
    fn rejects_non_squarefree() {
        let e = count_absolute_factors(&p("X^2 + 2*X*Y + Y^2"));
        assert!(e.is_err());
        assert_eq!(
            count_absolute_factors(&BiPoly::constant_int(5)),
            Err(Error::ConstantInput)
        );
    }

    #[test]
    fn count_bounds_rational_factor_count() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let mut done = 0;
        while done < 15 {
            let mut f = BiPoly::zero();
            for x in 0..=3u32 {
                for y in 0..=(3 - x) {
                    if rng.gen_bool(0.5) {
                        let c = rng.gen_range(-9i64..=9);
                        f = &f + &BiPoly::term_int(c, x, y);
                    }
                }
            }
            if f.is_constant() || !is_squarefree(&f).unwrap_or(false) {
                continue;
            }
            let count = count_absolute_factors(&f).unwrap();
            let rational = crate::factor::factor_bivariate(&f).unwrap().factors.len() as u32;
            assert!(count >= rational, "absolute count below rational count for {f}");
            if count == 1 {
                assert_eq!(rational, 1, "absolutely irreducible implies irreducible: {f}");
            }
            done += 1;
        }
    }

    #[test]
    fn squarefree_detection() {
        assert!(is_squarefree(&p("X*Y + 1")).unwrap());
        assert!(!is_squarefree(&p("(X + Y)*(X + Y)")).unwrap());
        assert!(is_squarefree(&p("(Y + 1)*(X + 1)")).unwrap());
        assert!(!is_squarefree(&p("(Y + 1)*(Y + 1)*(X + 1)")).unwrap());
    }
}
