//! Joint eigenbasis of H and T(u), with each eigenvalue of T(u)
//! reconstructed as a polynomial.
//!
//! cargo run --example spectrum -- [N]

use xxx_wronskian::chain::ModelParams;
use xxx_wronskian::spectrum::compute_spectrum;
use xxx_wronskian::Result;

fn main() -> Result<()> {
    let n = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);
    let p = ModelParams::new(n, 0.7, 1.3, 0.75)?;
    let spec = compute_spectrum(&p)?;
    for (k, (e, t)) in spec.energies.iter().zip(&spec.t_polys).enumerate() {
        let (odd, even) = t.parity_defect();
        println!(
            "#{k:<3} E = {e:>10.6}  deg T = {:?}  lead = {:.8}  odd/even = {:.1e}  recon = {:.1e}",
            t.degree(),
            t.leading(),
            odd / even,
            spec.recon_residuals[k]
        );
    }
    Ok(())
}
