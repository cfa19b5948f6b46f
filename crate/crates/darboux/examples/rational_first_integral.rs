//! Decide existence of a rational first integral of bounded degree and
//! construct one.
//!
//! Run with: cargo run --example rational_first_integral

use darboux::{
    gen_exponential_example, gen_linear_example, rat_first_int, verify_first_integral,
    FirstIntegralOutcome,
};

fn main() {
    // (n+1) X dX + n Y dY has the first integral X^n / Y^(n+1)
    let d = gen_linear_example(2);
    match rat_first_int(&d, 3).unwrap() {
        FirstIntegralOutcome::Found(fi) => {
            println!(
                "first integral ({}) / ({}) of exact degree {}",
                fi.p, fi.q, fi.degree
            );
            println!(
                "  found at shift {:?} after {} while-loop pass(es)",
                fi.shift_used, fi.iterations
            );
            assert!(verify_first_integral(&d, &fi.p, &fi.q).unwrap());
        }
        FirstIntegralOutcome::NoneBelow(n) => println!("none below {n}"),
    }

    // Hamiltonian systems have their Hamiltonian as a polynomial first
    // integral; the kernel of the cofactor map at cofactor zero finds it
    let ham = gen_exponential_example(4).unwrap();
    match rat_first_int(&ham, 4).unwrap() {
        FirstIntegralOutcome::Found(fi) => {
            println!("Hamiltonian family d = 4: pencil ({}) / ({})", fi.p, fi.q);
        }
        FirstIntegralOutcome::NoneBelow(n) => println!("none below {n}"),
    }

    // and a system with no rational first integral at low degree
    let d = darboux::Derivation::new(
        darboux::parse_polynomial("-2*X^2").unwrap(),
        darboux::parse_polynomial("1 - 4*X*Y").unwrap(),
    )
    .unwrap();
    match rat_first_int(&d, 2).unwrap() {
        FirstIntegralOutcome::NoneBelow(n) => {
            println!("running example: no rational first integral below degree {n}")
        }
        FirstIntegralOutcome::Found(_) => unreachable!(),
    }
}
