//! Build a spring-mass chain, solve its pencil and inspect the modal data.
//!
//! ```text
//! cargo run --example chain_modal
//! ```

use massbound::{build_chain, solve_pencil, Result};

fn main() -> Result<()> {
    let masses = [15.0, 21.0, 24.0, 27.0, 30.0];
    let springs = [1000.0, 2000.0, 3000.0, 4000.0, 5000.0];
    let sys = build_chain(&masses, &springs)?;
    let modal = solve_pencil(&sys)?;

    println!("{:>4} {:>14} {:>12}", "mode", "lambda", "freq (Hz)");
    for (i, lambda) in modal.eigenvalues().iter().enumerate() {
        let hz = lambda.sqrt() / (2.0 * std::f64::consts::PI);
        println!("{:>4} {:>14.6} {:>12.6}", i + 1, lambda, hz);
    }

    // G = M V is biorthogonal to V
    let gtv = modal.left().transpose().matmul(modal.right())?;
    let mut worst: f64 = 0.0;
    for i in 0..modal.k() {
        for j in 0..modal.k() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gtv[(i, j)] - target).abs());
        }
    }
    println!("max |G^T V - I| = {worst:.2e}");

    let first = modal.truncate(1)?;
    println!("v1 = {:?}", first.right_vector(0));
    println!("g1 = {:?}", first.left_vector(0));
    Ok(())
}
