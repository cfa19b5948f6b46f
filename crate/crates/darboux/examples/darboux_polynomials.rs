//! Find all irreducible Darboux polynomials of bounded degree.
//!
//! Factor the extactic curve and keep the factors f with f | D(f): each
//! one carries an invariant algebraic curve of the flow.
//!
//! Run with: cargo run --example darboux_polynomials

use darboux::{lagutinskii_pereira, parse_polynomial, Derivation, DarbouxOutcome};

fn main() {
    let d = Derivation::new(
        parse_polynomial("-2*X^2").unwrap(),
        parse_polynomial("1 - 4*X*Y").unwrap(),
    )
    .unwrap();

    let report = lagutinskii_pereira(&d, 1).unwrap();
    println!("E_1 = {}", report.extactic.poly);
    for cert in report.certificates() {
        println!(
            "Darboux polynomial {} with cofactor {}, multiplicity {} in E_1",
            cert.poly, cert.cofactor, cert.extactic_multiplicity
        );
        assert!(cert.verify(&d));
    }
    // Y divides E_1 as well, but D(Y) = 1 - 4 X Y is not a multiple of
    // Y, so it is rejected by the divisibility test.

    // a system with infinitely many Darboux polynomials
    let lin = darboux::gen_linear_example(2);
    match lagutinskii_pereira(&lin, 3).unwrap().outcome {
        DarbouxOutcome::InfiniteFamily {
            minimal_null_degree,
        } => println!(
            "linear system at degree 3: infinite family, minimal vanishing degree {:?}",
            minimal_null_degree
        ),
        DarbouxOutcome::Finite(certs) => println!("finite: {} certificates", certs.len()),
    }
}
