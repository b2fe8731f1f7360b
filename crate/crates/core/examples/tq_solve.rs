//! Solves the TQ and dual TQ-equations for every eigenvalue and prints the
//! Bethe roots and dual roots.
//!
//! cargo run --example tq_solve -- [N] [xi]

use xxx_wronskian::chain::ModelParams;
use xxx_wronskian::spectrum::compute_spectrum;
use xxx_wronskian::tq::{boundary_functions, TQSolution};
use xxx_wronskian::Result;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let xi = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.75);
    let p = ModelParams::new(n, 0.7, 1.3, xi)?;
    let bf = boundary_functions(&p);
    println!("f = {}\ng = {}\ngamma = {}", bf.f, bf.g, bf.gamma);

    let spec = compute_spectrum(&p)?;
    for (k, t) in spec.t_polys.iter().enumerate() {
        let sol = TQSolution::solve(t, &bf, n)?;
        println!("\n#{k}  E = {:.6}", spec.energies[k]);
        println!(
            "  Q = {}   (residual {:.1e})",
            sol.q_poly.trimmed(1e-14),
            sol.q_residual
        );
        println!(
            "  P = {}   (residual {:.1e})",
            sol.p_poly.trimmed(1e-14),
            sol.p_residual
        );
        println!("  Bethe roots {:?}", sol.bethe_roots);
        println!("  dual roots  {:?}", sol.dual_roots);
    }
    Ok(())
}
