//! The degree-10 covariant `C` of a binary quintic vanishes on quintics of the
//! form `l q^2` and not on generic ones.

use heronion::heron::forms::{quintic_covariant_c, BinaryForm};
use heronion::VarTable;

fn main() -> heronion::Result<()> {
    let t = VarTable::new(&[])?;
    let l = BinaryForm::from_ints(&t, &[1, -2])?;
    let q = BinaryForm::from_ints(&t, &[3, 1, -4])?;
    let planted = l.mul(&q.mul(&q));
    println!("C(l q^2) is zero: {}", quintic_covariant_c(&planted)?.is_zero());
    let generic = BinaryForm::from_ints(&t, &[1, 0, -3, 2, 5, -1])?;
    println!("C(generic) is zero: {}", quintic_covariant_c(&generic)?.is_zero());
    Ok(())
}
