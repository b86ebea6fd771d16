//! Binary forms, transvectants and the degree-9 covariant of a quintic.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, VarTable};
use crate::symgen::binomial;

/// `sum_k c_k x^(d-k) y^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    coeffs: Vec<MultiPoly>,
}

fn falling(n: i64, k: i64) -> i64 {
    (0..k).map(|i| n - i).product()
}

impl BinaryForm {
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| Error::InvalidArgument("form needs coefficients".into()))?;
        let t = first.table().clone();
        if coeffs.iter().any(|c| !t.same_variables(c.table())) {
            return Err(Error::TableMismatch("form coefficients use different tables".into()));
        }
        Ok(BinaryForm { coeffs })
    }

    /// Integer coefficients over `table`.
    pub fn from_ints(table: &Arc<VarTable>, coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| MultiPoly::constant(table, c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.coeffs[0].table()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn zero_of_degree(&self, d: usize) -> BinaryForm {
        BinaryForm { coeffs: vec![MultiPoly::zero(self.table()); d + 1] }
    }

    /// `d^(a+b) / dx^a dy^b`.
    pub fn partial(&self, a: usize, b: usize) -> Result<BinaryForm> {
        let d = self.degree();
        if a + b > d {
            return Err(Error::DegreeTooSmall(d, a + b));
        }
        let mut out = self.zero_of_degree(d - a - b);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k < b || d - k < a || c.is_zero() {
                continue;
            }
            let f = falling((d - k) as i64, a as i64) * falling(k as i64, b as i64);
            out.coeffs[k - b] = &out.coeffs[k - b] + &c.scale_i64(f);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = self.zero_of_degree(self.degree() + other.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm> {
        if self.degree() != other.degree() {
            return Err(Error::InvalidArgument("adding forms of different degree".into()));
        }
        Ok(BinaryForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn scale_i64(&self, c: i64) -> BinaryForm {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| a.scale_i64(c)).collect() }
    }

    /// The form as a polynomial over `target`, which must contain `x`, `y`
    /// and the variables of the coefficients.
    pub fn to_poly(&self, target: &Arc<VarTable>, x: &str, y: &str) -> Result<MultiPoly> {
        let d = self.degree() as u32;
        let mut acc = MultiPoly::zero(target);
        for (k, c) in self.coeffs.iter().enumerate() {
            let k = k as u32;
            let mono = MultiPoly::monomial(target, BigInt::from(1), &[(x, d - k), (y, k)])?;
            acc = acc + c.embed(target)? * mono;
        }
        Ok(acc)
    }
}

/// `(f, g)^(d) = sum_i (-1)^i C(d, i) f_{x^i y^(d-i)} g_{x^(d-i) y^i}`.
pub fn transvectant(f: &BinaryForm, g: &BinaryForm, d: usize) -> Result<BinaryForm> {
    if d > f.degree() || d > g.degree() {
        return Err(Error::DegreeTooSmall(f.degree().min(g.degree()), d));
    }
    let mut acc = f.zero_of_degree(f.degree() + g.degree() - 2 * d);
    for i in 0..=d {
        let c = binomial(d as i64, i as i64) * if i % 2 == 0 { 1 } else { -1 };
        let term = f.partial(i, d - i)?.mul(&g.partial(d - i, i)?).scale_i64(c);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `C = 2 Q (H, i)^(2) + 25 H (Q, i)^(2) + 6 Q i^2` with `H = (Q, Q)^(2)`
/// and `i = (Q, Q)^(4)`. Vanishes exactly when `Q` is a linear form times
/// the square of a quadratic.
pub fn quintic_covariant_c(q: &BinaryForm) -> Result<BinaryForm> {
    if q.degree() != 5 {
        return Err(Error::InvalidArgument(format!("covariant needs a quintic, got degree {}", q.degree())));
    }
    let h = transvectant(q, q, 2)?;
    let i = transvectant(q, q, 4)?;
    let a = q.mul(&transvectant(&h, &i, 2)?).scale_i64(2);
    let b = h.mul(&transvectant(q, &i, 2)?).scale_i64(25);
    let c = q.mul(&i.mul(&i)).scale_i64(6);
    a.add(&b)?.add(&c)
}

/// Variables `u2, u3, t4..t7` with their weights.
pub fn quintic_table() -> Arc<VarTable> {
    VarTable::new(&[("u2", 2), ("u3", 3), ("t4", 4), ("t5", 5), ("t6", 6), ("t7", 7)]).expect("static table")
}

/// `u2 x^5 + u3 x^4 y + t4 x^3 y^2 + t5 x^2 y^3 + t6 x y^4 + t7 y^5`.
pub fn generic_quintic() -> BinaryForm {
    let t = quintic_table();
    BinaryForm { coeffs: (0..6).map(|i| MultiPoly::var_index(&t, i)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty() -> Arc<VarTable> {
        VarTable::new(&[]).unwrap()
    }

    #[test]
    fn trivial_transvectants() {
        let t = empty();
        let x5 = BinaryForm::from_ints(&t, &[1, 0, 0, 0, 0, 0]).unwrap();
        assert!(transvectant(&x5, &x5, 2).unwrap().is_zero());
        let f = BinaryForm::from_ints(&t, &[1, -2, 3]).unwrap();
        let g = BinaryForm::from_ints(&t, &[4, 0, 1, 7]).unwrap();
        assert_eq!(transvectant(&f, &g, 0).unwrap(), f.mul(&g));
        assert!(transvectant(&f, &g, 3).is_err());
    }

    #[test]
    fn transvectant_matches_direct_differentiation() {
        let t = empty();
        let q = BinaryForm::from_ints(&t, &[3, -1, 4, 1, -5, 9]).unwrap();
        let xy = VarTable::new(&[("x", 1), ("y", 1)]).unwrap();
        let qp = q.to_poly(&xy, "x", "y").unwrap();
        for d in 0..=5usize {
            let mut want = MultiPoly::zero(&xy);
            for i in 0..=d {
                let mut a = qp.clone();
                for _ in 0..i {
                    a = a.derivative(0);
                }
                for _ in 0..d - i {
                    a = a.derivative(1);
                }
                let mut b = qp.clone();
                for _ in 0..d - i {
                    b = b.derivative(0);
                }
                for _ in 0..i {
                    b = b.derivative(1);
                }
                let c = binomial(d as i64, i as i64) * if i % 2 == 0 { 1 } else { -1 };
                want = want + (a * b).scale_i64(c);
            }
            let got = transvectant(&q, &q, d).unwrap().to_poly(&xy, "x", "y").unwrap();
            assert_eq!(got, want, "d = {d}");
        }
    }

    #[test]
    fn covariant_on_factored_shapes() {
        let t = empty();
        let xy4 = BinaryForm::from_ints(&t, &[0, 0, 0, 0, 1, 0]).unwrap();
        assert!(quintic_covariant_c(&xy4).unwrap().is_zero());
        let lin = BinaryForm::from_ints(&t, &[1, 1]).unwrap();
        let quad = BinaryForm::from_ints(&t, &[1, 1, 1]).unwrap();
        let q = lin.mul(&quad.mul(&quad));
        assert!(quintic_covariant_c(&q).unwrap().is_zero());
        let generic = BinaryForm::from_ints(&t, &[1, 0, 0, 0, 0, 1]).unwrap();
        assert!(!quintic_covariant_c(&generic).unwrap().is_zero());
        assert!(quintic_covariant_c(&quad).is_err());
    }

    #[test]
    fn covariant_on_random_forms() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let t = empty();
        let mut draw = |k: usize| -> Vec<i64> { (0..k).map(|_| rng.gen_range(-9..=9)).collect() };
        for _ in 0..50 {
            let lin = BinaryForm::from_ints(&t, &draw(2)).unwrap();
            let quad = BinaryForm::from_ints(&t, &draw(3)).unwrap();
            let q = lin.mul(&quad.mul(&quad));
            assert!(quintic_covariant_c(&q).unwrap().is_zero());
        }
        for _ in 0..50 {
            let q = BinaryForm::from_ints(&t, &draw(6)).unwrap();
            assert!(!quintic_covariant_c(&q).unwrap().is_zero());
        }
    }
}
