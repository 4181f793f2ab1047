//! Sweep the bound F(alpha) for the first reference chain and compare with
//! the true least mass eigenvalue, which is known here because the mass
//! matrix is.
//!
//! ```text
//! cargo run --example bound_sweep [out.svg]
//! ```

use massbound::bounds::{stepped_grid, window_edge};
use massbound::linalg::sym_eigen;
use massbound::svg::render_sweep;
use massbound::{solve_pencil, sweep, ReferenceSystem, Result, Validity};

fn main() -> Result<()> {
    let sys = ReferenceSystem::M1.system();
    let modal = solve_pencil(&sys)?;
    let (g1, v1) = (modal.left_vector(0), modal.right_vector(0));

    let spectrum = sym_eigen(sys.mass())?.values;
    let edge = window_edge(&spectrum).unwrap();
    println!("w1 = {}, validity window ends at alpha = {edge}", spectrum[0]);

    let grid = stepped_grid(0.0, 30.0, 0.5)?;
    let result = sweep(&g1, &v1, &grid, Some(&spectrum))?;
    for s in result.samples.iter().step_by(6) {
        let mark = match s.validity {
            Validity::Valid => "certified",
            _ => "",
        };
        println!("alpha {:>5.1}  F {:>10.4}  {mark}", s.alpha, s.value);
    }
    if let Some(best) = result.best {
        println!("best certified bound {:.4} at alpha {}", best.value, best.alpha);
    }

    if let Some(path) = std::env::args().nth(1) {
        let svg = render_sweep(&result.samples, Some(spectrum[0]), "M1, first pair");
        std::fs::write(&path, svg).expect("write svg");
        println!("wrote {path}");
    }
    Ok(())
}
