//! Enumerates every area a near-equilateral pentagon can have when inscribed
//! in a circle, then checks each one against the pentagon polynomial.

use heronion::geom::{distinct_k2, enumerate_areas, EnumerateOptions, Family};
use heronion::heron::pipelines::{alpha_cyclic_small, config_residual};

fn main() -> heronion::Result<()> {
    let sides = [1.0, 1.01, 0.99, 1.02, 0.98];
    let en = enumerate_areas(&sides, Family::Cyclic, &EnumerateOptions::default())?;
    let alpha5 = alpha_cyclic_small(5, 0)?;
    println!("{:>14} {:>12} {:>8} {:>10}", "K2", "r", "branch", "residual");
    for s in &en.solutions {
        let res = config_residual(&alpha5, &s.config(Family::Cyclic)?)?;
        println!("{:>14.8} {:>12.8} {:>8} {:>10.2e}", s.k2, s.r, s.branch.label(), res);
    }
    println!("{} solutions, {} distinct K2", en.solutions.len(), distinct_k2(&en.solutions, 1e-8).len());
    Ok(())
}
