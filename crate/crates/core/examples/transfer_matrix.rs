//! Builds the transfer matrix and checks its structural identities:
//! commutativity, evenness, charge conjugation and the link to H.
//!
//! cargo run --example transfer_matrix -- [N]

use xxx_wronskian::chain::{self, ModelParams};
use xxx_wronskian::{Result, C64};

fn main() -> Result<()> {
    let n = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let p = ModelParams::new(n, 0.7, 1.3, 0.75)?;
    println!(
        "N = {n}, alpha = {}, beta = {}, xi = {}, gamma = {}",
        p.alpha,
        p.beta,
        p.xi,
        p.gamma()
    );

    let u = C64::new(0.4, 0.3);
    let v = C64::new(-1.1, 0.6);
    let t = chain::transfer_matrix(u, &p);
    println!(
        "dim T = {}, max |T(u)| = {:.4}",
        t.nrows(),
        chain::max_abs(&t)
    );
    println!(
        "[T(u), T(v)]        {:.2e}",
        chain::commutativity_defect(&p, u, v)
    );
    println!("T(-u) - T(u)        {:.2e}", chain::parity_defect(&p, u));
    println!("C T C - T(reflect)  {:.2e}", chain::duality_defect(&p, u));

    let link = chain::hamiltonian_link(&p, 1e-5);
    println!(
        "dT/du at i/2 = {:.6} H + {:.6}, fit defect {:.2e}",
        link.scale, link.shift, link.defect
    );

    // leading behaviour T(u) ~ -2 u^{2N+2}
    let big = C64::new(1e4, 0.0);
    let lead = chain::transfer_matrix(big, &p)[(0, 0)] / big.powi(2 * n as i32 + 2);
    println!("T(1e4)_00 / u^(2N+2) = {lead:.6}");
    Ok(())
}
