//! Polynomials satisfied by the circumradius: symbolic for a quadrilateral,
//! and in `r2` alone for integer sides.

use heronion::geom::{mobius_polynomial, mobius_specialized, Family};

fn main() -> heronion::Result<()> {
    let m = mobius_polynomial(4, Family::Cyclic)?;
    println!("cyclic n=4: degree {} in r2, {} terms", m.degree_in_r2(), m.poly.num_terms());

    let t = mobius_specialized(&[3, 4, 5], Family::Cyclic)?;
    print!("3-4-5 triangle:\n{}", t.poly.to_text());

    for family in [Family::Cyclic, Family::Semicyclic] {
        let h = mobius_specialized(&[3, 5, 6, 7, 8, 10], family)?;
        println!("{} n=6 at sides 3,5,6,7,8,10: degree {} in r2", family.name(), h.degree_in_r2());
    }
    Ok(())
}
