//! Run the reference comparison for both chains and print a summary table.
//! The full JSON report goes to the path given as the first argument.
//!
//! ```text
//! cargo run --example reproduce_report [report.json]
//! ```

use massbound::experiment::cmd_reproduce;

fn main() {
    let report = match cmd_reproduce() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    };
    println!("{:<4} {:>6} {:>8} {:>12} {:>10} {:>6}", "sys", "w1", "ref", "rec-alpha F", "sweep max", "status");
    for s in &report.systems {
        let c = &s.comparison;
        println!(
            "{:<4} {:>6} {:>8} {:>12.4} {:>10.4} {:>6}",
            s.name,
            s.true_w1,
            c.reference_value,
            c.recommended_alpha_bound,
            c.sweep_max_bound.unwrap_or(f64::NAN),
            c.status
        );
        for level in &s.levels {
            println!(
                "       k = {}  alpha = {:.4}  F = {:.4}  in window: {}",
                level.k, level.recommended_alpha, level.f_at_recommended_alpha, level.recommended_alpha_valid
            );
        }
    }
    println!("overall: {}", report.overall);
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, report.to_json()).expect("write report");
        println!("wrote {path}");
    }
}
