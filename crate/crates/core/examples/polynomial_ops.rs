//! Shifts, the discrete antidifference, interpolation and root finding.
//!
//! cargo run --example polynomial_ops

use xxx_wronskian::poly::{circle_nodes, Polynomial, HALF_I};
use xxx_wronskian::{Result, C64};

fn main() -> Result<()> {
    let u2 = Polynomial::from_real(&[0.0, 0.0, 1.0]);
    println!("u^2 shifted by i/2:   {}", u2.shift(HALF_I));

    // mu^+ - mu^- = h with mu(0) = 0
    let h = u2.clone();
    let mu = h.antidifference();
    println!("antidifference of u^2: {mu}");
    println!("check mu^+ - mu^-:     {}", mu.difference().trimmed(1e-14));

    // sample a polynomial on a circle and rebuild it
    let p = Polynomial::from_roots(
        C64::new(1.0, 0.0),
        &[C64::new(0.5, 0.2), C64::new(-1.0, 0.0), C64::new(0.0, 1.5)],
    );
    let samples: Vec<(C64, C64)> = circle_nodes(1.0, 4)
        .into_iter()
        .map(|u| (u, p.eval(u)))
        .collect();
    let rebuilt = Polynomial::interpolate(&samples)?;
    println!("interpolation error:   {:.2e}", (&rebuilt - &p).max_abs());

    let mut roots = rebuilt.roots()?;
    roots.sort_by(|a, b| a.re.total_cmp(&b.re));
    println!("recovered roots:       {roots:?}");

    let (odd, even) = Polynomial::from_real(&[4.0, 0.0, 1.0]).parity_defect();
    println!("parity of u^2 + 4:     odd {odd}, even {even}");
    Ok(())
}
