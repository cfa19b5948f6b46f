//! Compute extactic curves and the size bounds that control them.
//!
//! The N-th extactic curve of a derivation D is the determinant of the
//! matrix whose columns run over the monomials of degree <= N and whose
//! rows apply D repeatedly.  Every Darboux polynomial of degree <= N
//! divides it, and it vanishes identically exactly when a rational first
//! integral of exact degree N exists.
//!
//! Run with: cargo run --example extactic_curves

use darboux::{extactic_curve, extactic_reduced, parse_polynomial, Derivation};

fn main() {
    // the running example: D = -2 X^2 dX + (1 - 4 X Y) dY
    let d = Derivation::new(
        parse_polynomial("-2*X^2").unwrap(),
        parse_polynomial("1 - 4*X*Y").unwrap(),
    )
    .unwrap();

    let e1 = extactic_curve(&d, 1);
    println!("E_1 = {}", e1.poly);
    println!(
        "  degree {} <= bound {}, height {} <= bound {}",
        e1.poly.total_degree().unwrap(),
        e1.degree_bound,
        e1.poly.height(),
        e1.height_bound
    );
    // X^4 Y: X divides it and is Darboux; Y divides it but is not.
    // The divisibility theorem is one-directional.

    // a diagonal system with the rational first integral X^2 / Y^3
    let lin = darboux::gen_linear_example(2);
    for n in 1..=3 {
        let e = extactic_curve(&lin, n);
        if e.is_zero() {
            println!("E_{n} of the linear system = 0  (first integral of exact degree {n})");
        } else {
            println!("E_{n} of the linear system = {}", e.poly);
        }
    }

    // the reduced curve stays informative where the full one vanishes
    let ham = darboux::gen_exponential_example(3).unwrap();
    let full = extactic_curve(&ham, 3);
    let red = extactic_reduced(&ham, 3).unwrap();
    println!(
        "Hamiltonian example: E_3 zero: {}, E_(3,0) zero: {} (degree {})",
        full.is_zero(),
        red.is_zero(),
        red.poly.total_degree().unwrap()
    );
    let f = darboux::derivation::exponential_first_integral(3);
    println!(
        "E_(3,0) divisible by the first integral F = {}: {}",
        f,
        red.poly.exact_div(&f).unwrap().is_some()
    );
}
