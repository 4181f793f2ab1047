//! Estimate the mass matrix from a growing number of eigenvector pairs and
//! watch the recommended shift converge.
//!
//! ```text
//! cargo run --example mass_estimate
//! ```

use massbound::estimation::{alpha_progression, estimate_from_modal};
use massbound::{f_alpha, refine_with_pairs, solve_pencil, ReferenceSystem, Result};

fn main() -> Result<()> {
    for which in ReferenceSystem::ALL {
        let sys = which.system();
        let modal = solve_pencil(&sys)?;
        let (g1, v1) = (modal.left_vector(0), modal.right_vector(0));
        println!("{which}");
        for est in alpha_progression(&modal)? {
            let bound = f_alpha(&g1, &v1, est.recommended_alpha)?;
            println!(
                "  k = {}  rho = {:>9.4}  alpha = {:>9.4}  F(alpha) = {:>9.4}",
                est.k, est.rho, est.recommended_alpha, bound
            );
        }

        // adding pairs one at a time gives the same estimate
        let mut est = estimate_from_modal(&modal, 1)?;
        for i in 1..modal.k() {
            est = refine_with_pairs(&est, &modal.left_vector(i), &modal.right_vector(i))?;
        }
        let err = est.m_prime.max_abs_diff(&sys.mass().to_matrix());
        println!("  all pairs reproduce M to {err:.1e}");
    }
    Ok(())
}
