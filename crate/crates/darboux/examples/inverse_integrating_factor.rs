//! Polynomial inverse integrating factors: solutions R of
//! A R_X + B R_Y = div(A,B) R with deg R <= N.  Algebraic limit cycles
//! of the vector field are factors of R.
//!
//! Run with: cargo run --example inverse_integrating_factor

use darboux::{gen_exponential_example, gen_linear_example, inverse_integrating_factor};

fn main() {
    let d = gen_linear_example(2);
    let basis = inverse_integrating_factor(&d, 2).unwrap();
    println!("linear system, degree <= 2:");
    for r in &basis {
        println!("  R = {r}");
    }

    // divergence-free systems admit constants
    let ham = gen_exponential_example(3).unwrap();
    let basis = inverse_integrating_factor(&ham, 3).unwrap();
    println!("Hamiltonian system, degree <= 3: dimension {}", basis.len());
    for r in &basis {
        println!("  R = {r}");
    }
}
