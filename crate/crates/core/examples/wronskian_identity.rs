//! The Wronskian-type identity for each eigenvalue: W = mu u^{2N+1}, and
//! mu agrees with the antidifference of gamma u (Q - P) up to a constant.
//!
//! cargo run --example wronskian_identity -- [N] [xi]

use xxx_wronskian::chain::ModelParams;
use xxx_wronskian::spectrum::compute_spectrum;
use xxx_wronskian::tq::{boundary_functions, TQSolution};
use xxx_wronskian::wronskian::verify_identity;
use xxx_wronskian::Result;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let xi = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.75);
    let p = ModelParams::new(n, 0.7, 1.3, xi)?;
    let bf = boundary_functions(&p);
    let spec = compute_spectrum(&p)?;
    println!(
        "{:>3} {:>11} {:>11} {:>11} {:>8} {:>6}",
        "#", "divisible", "mu match", "relation", "deg mu", "pass"
    );
    for (k, t) in spec.t_polys.iter().enumerate() {
        let sol = TQSolution::solve(t, &bf, n)?;
        let r = verify_identity(&sol, &bf, n, 1e-7);
        println!(
            "{k:>3} {:>11.2e} {:>11.2e} {:>11.2e} {:>8} {:>6}",
            r.divisibility_defect,
            r.mu_match_defect,
            r.relation_defect,
            r.mu_degree.map_or("-".into(), |d| d.to_string()),
            r.passed
        );
        if k == 0 {
            println!("    mu       = {}", r.mu_poly.trimmed(1e-12));
            println!("    mu_anti  = {}", r.mu_anti.trimmed(1e-12));
        }
    }
    Ok(())
}
