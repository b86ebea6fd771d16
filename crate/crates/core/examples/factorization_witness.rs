//! Numerical witnesses that the vertex polynomial of a random inscribed
//! polygon factors as predicted.

use heronion::geom::{Family, PolygonConfig};
use heronion::heron::witness::factorization_witness;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> heronion::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for family in [Family::Cyclic, Family::Semicyclic] {
        for n in 3..=8 {
            let cfg = PolygonConfig::random(&mut rng, n, family.delta());
            let w = factorization_witness(&cfg, 1e-9)?;
            println!(
                "{:<10} n={n}: t gap {:.1e}, P gap {:.1e}, u2 error {:.1e}, pass {}",
                family.name(),
                w.t_discrepancy,
                w.p_discrepancy,
                w.u2_error,
                w.pass
            );
        }
    }
    Ok(())
}
