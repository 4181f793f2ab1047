//! Use a certified lower bound on the least mass eigenvalue to decide
//! whether a mass reduction keeps the system physical.
//!
//! ```text
//! cargo run --example perturbation_check
//! ```

use massbound::{
    admissible_perturbation, apply_perturbation, realizability_certificate, Perturbation, ReferenceSystem, Result,
    SymmetricMatrix,
};

fn main() -> Result<()> {
    let sys = ReferenceSystem::M1.system();
    let bound = 6.8;
    println!("certified lower bound on w1: {bound}");

    for removed in [2.0, 6.0, 7.0, 16.0] {
        let delta = SymmetricMatrix::diagonal(&[-removed; 5])?;
        let verdict = admissible_perturbation(bound, &delta)?;
        let truth = realizability_certificate(&sys.mass().add(&delta)?)?;
        println!(
            "remove {removed:>4} per mass: certified {:<5} (margin {:>5.2}), actually realizable {} (least eigenvalue {})",
            verdict.admissible, verdict.margin, truth.realizable, truth.least_eigenvalue
        );
    }

    // a certified change can be applied and re-solved
    let modified = apply_perturbation(&sys, &Perturbation::mass_only(SymmetricMatrix::diagonal(&[-6.0; 5])?))?;
    println!("modified first eigenvalue: {:.4}", modified.modal.eigenvalues()[0]);
    Ok(())
}
