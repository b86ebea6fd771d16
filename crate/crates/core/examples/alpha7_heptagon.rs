//! The heptagon area polynomial at fixed integer squared sides, a univariate
//! polynomial of degree 38 in `k16 = 16 K^2`.

use heronion::geom::{enumerate_areas, EnumerateOptions, Family};
use heronion::heron::alpha7::{alpha7_specialized, SigmaSet};

fn main() -> heronion::Result<()> {
    let squared = [4, 5, 6, 7, 8, 9, 10];
    let sigma_set = SigmaSet::from_squared_sides(&squared, 0)?;
    let rep = alpha7_specialized(&sigma_set)?;
    println!("squared sides {squared:?}: degree {}, monic {}", rep.degree, rep.monic);

    let sides: Vec<f64> = squared.iter().map(|&a| (a as f64).sqrt()).collect();
    let en = enumerate_areas(&sides, Family::Cyclic, &EnumerateOptions::default())?;
    for s in &en.solutions {
        let point = [("k16".to_string(), 16.0 * s.k2)].into_iter().collect();
        let (v, total) = rep.poly.eval_f64_parts(&point)?;
        println!("K2 {:>16.8e}  relative residual {:.1e}", s.k2, v.abs() / total);
    }
    Ok(())
}
