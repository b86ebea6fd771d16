//! Builds the small named area polynomials and prints their shape.

use heronion::heron::pipelines::named_polynomial;

fn main() -> heronion::Result<()> {
    for (family, n, parity) in [("alpha", 3, 0), ("beta", 4, 1), ("beta", 4, -1), ("alpha", 5, 0), ("alpha_semi", 3, 0)] {
        let p = named_polynomial(family, n, parity)?;
        let k = p.table().index("k16")?;
        println!(
            "{family:<10} n={n} parity={parity}: {} terms, weighted degree {}, degree {} in k16",
            p.num_terms(),
            p.weighted_degree().unwrap_or(0),
            p.degree_in(k).unwrap_or(0)
        );
    }
    let a3 = named_polynomial("alpha", 3, 0)?;
    print!("alpha3:\n{}", a3.to_text());
    Ok(())
}
