//! The worst-case family for undetermined coefficients: the Hamiltonian
//! system of F = Y (X+1)...(X+d-1) + X has d-1 linear Darboux
//! polynomials, so products give at least 2^(d-1) + 1 Darboux
//! polynomials of degree <= d, exponentially many of them reducible.
//! Factoring the extactic curve sidesteps the blowup: the irreducible
//! ones are recovered directly.
//!
//! Run with: cargo run --example exponential_family

use darboux::derivation::exponential_first_integral;
use darboux::{gen_exponential_example, lagutinskii_pereira, rat_first_int, FirstIntegralOutcome};

fn main() {
    for d in 3..=5u32 {
        let deriv = gen_exponential_example(d).unwrap();
        println!("d = {d}: A = {}, B = {}", deriv.a(), deriv.b());

        let report = lagutinskii_pereira(&deriv, 1).unwrap();
        let certs = report.certificates();
        println!(
            "  {} linear Darboux polynomials -> at least {} Darboux polynomials of degree <= {d}",
            certs.len(),
            (1u64 << certs.len()) + 1
        );

        match rat_first_int(&deriv, d).unwrap() {
            FirstIntegralOutcome::Found(fi) => {
                let f = exponential_first_integral(d);
                println!(
                    "  polynomial first integral recovered (degree {}), pencil contains F: {}",
                    fi.degree,
                    fi.pencil_contains(&f)
                );
            }
            FirstIntegralOutcome::NoneBelow(_) => unreachable!("F is a first integral"),
        }
    }
}
