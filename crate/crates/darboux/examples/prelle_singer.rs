//! The linear steps of the Prelle-Singer procedure: find exponents n_i
//! with sum n_i g_i = 0 (first integral) or = -div(A,B) (integrating
//! factor) over a set of Darboux certificates.
//!
//! Run with: cargo run --example prelle_singer

use darboux::output::power_product_display;
use darboux::{
    gen_linear_example, lagutinskii_pereira, solve_integrating_factor, solve_log_derivative,
};

fn main() {
    let d = gen_linear_example(2); // 3 X dX + 2 Y dY
    let certs = lagutinskii_pereira(&d, 1)
        .unwrap()
        .certificates()
        .to_vec();
    for c in &certs {
        println!("certificate {} with cofactor {}", c.poly, c.cofactor);
    }

    // sum n_i g_i = 0 over cofactors (2, 3) has kernel (3, -2):
    // Y^3 X^-2 is a first integral
    let fi = solve_log_derivative(&d, &certs).unwrap();
    println!("first integral  {}", power_product_display(&fi));
    assert!(fi.verify(&d));

    // sum n_i g_i = -div = -5 has the integer point (-1, -1):
    // 1 / (X Y) is an integrating factor
    let r = solve_integrating_factor(&d, &certs).unwrap().unwrap();
    println!("integrating factor  {}", power_product_display(&r));
    assert!(r.verify(&d));
    println!(
        "homogeneous directions: {} (adding any multiple keeps the identity)",
        r.homogeneous_exponents.len()
    );
}
