//! Univariate views, resultants and discriminants.

use rayon::prelude::*;

use super::MultiPoly;
use crate::error::{Error, Result};

/// A polynomial regarded as univariate in one of its variables.
#[derive(Clone, Debug)]
pub struct UniView {
    base: MultiPoly,
    main_var: usize,
    /// `coeffs[k]` multiplies `main_var^k`; trailing entry is nonzero.
    coeffs: Vec<MultiPoly>,
}

impl UniView {
    pub fn new(base: &MultiPoly, main_var: &str) -> Result<UniView> {
        let v = base.table().index(main_var)?;
        Ok(Self::from_index(base, v))
    }

    pub fn from_index(base: &MultiPoly, main_var: usize) -> UniView {
        UniView { base: base.clone(), main_var, coeffs: base.coefficients_in(main_var) }
    }

    pub fn base(&self) -> &MultiPoly {
        &self.base
    }

    pub fn main_var(&self) -> usize {
        self.main_var
    }

    pub fn main_var_name(&self) -> &str {
        &self.base.table().names()[self.main_var]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&MultiPoly> {
        self.coeffs.last()
    }

    /// Rebuilds `sum coeffs[k] * main_var^k`.
    pub fn reassemble(&self) -> MultiPoly {
        let mut acc = MultiPoly::zero(self.base.table());
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = acc + c.shift_var(self.main_var, k as u32).expect("degree fits");
        }
        acc
    }

    fn compatible(&self, other: &UniView) -> Result<()> {
        self.base.check_table(&other.base)?;
        if self.main_var != other.main_var {
            return Err(Error::MainVarMismatch(self.main_var_name().into(), other.main_var_name().into()));
        }
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(())
    }

    /// Sylvester matrix: `deg g` rows of `f` coefficients, then `deg f` rows
    /// of `g`, highest power leftmost.
    pub fn sylvester_matrix(&self, other: &UniView) -> Result<Vec<Vec<MultiPoly>>> {
        self.compatible(other)?;
        let df = self.coeffs.len() - 1;
        let dg = other.coeffs.len() - 1;
        let n = df + dg;
        let zero = MultiPoly::zero(self.base.table());
        let mut m = vec![vec![zero; n]; n];
        for i in 0..dg {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                m[i][i + k] = c.clone();
            }
        }
        for i in 0..df {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                m[dg + i][i + k] = c.clone();
            }
        }
        Ok(m)
    }

    /// Resultant in the main variable: the Sylvester determinant, computed
    /// by fraction-free elimination.
    ///
    /// With `f` rows first this is `lc(f)^deg(g) * prod g(roots of f)`, so
    /// `Res(z - a, z - b) = a - b`.
    pub fn resultant(&self, other: &UniView) -> Result<MultiPoly> {
        let m = self.sylvester_matrix(other)?;
        if m.is_empty() {
            return Ok(MultiPoly::one(self.base.table()));
        }
        bareiss_determinant(m)
    }

    /// Same value as [`UniView::resultant`], via the subresultant
    /// pseudo-remainder sequence.
    pub fn resultant_prs(&self, other: &UniView) -> Result<MultiPoly> {
        self.compatible(other)?;
        let table = self.base.table();
        let one = MultiPoly::one(table);
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        let mut s = one.clone();
        if a.len() < b.len() {
            if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
                s = -&s;
            }
            std::mem::swap(&mut a, &mut b);
        }
        if b.len() == 1 {
            return Ok(&s * &b[0].pow((a.len() - 1) as u32));
        }
        let mut g = one.clone();
        let mut h = one.clone();
        loop {
            let da = a.len() - 1;
            let db = b.len() - 1;
            let delta = (da - db) as u32;
            if da % 2 == 1 && db % 2 == 1 {
                s = -&s;
            }
            let r = pseudo_remainder(&a, &b)?;
            if r.is_empty() {
                return Ok(MultiPoly::zero(table));
            }
            a = b;
            let divisor = &g * &h.pow(delta);
            b = r.iter().map(|c| c.exact_divide(&divisor)).collect::<Result<Vec<_>>>()?;
            g = a.last().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                g.pow(delta).exact_divide(&h.pow(delta - 1))?
            };
            if b.len() == 1 {
                let da = (a.len() - 1) as u32;
                let t = b[0].pow(da).exact_divide(&h.pow(da - 1))?;
                return Ok(&s * &t);
            }
        }
    }

    pub fn derivative(&self) -> UniView {
        UniView::from_index(&self.base.derivative(self.main_var), self.main_var)
    }

    /// `(-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<MultiPoly> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        if d < 2 {
            return Err(Error::DegreeTooSmall(d, 2));
        }
        let res = self.resultant(&self.derivative())?;
        let q = res
            .exact_divide(self.leading().unwrap())
            .map_err(|e| Error::PipelineIntegrity(format!("discriminant division: {e}")))?;
        Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
    }
}

fn trim(v: &mut Vec<MultiPoly>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, coefficient lists lowest first.
fn pseudo_remainder(a: &[MultiPoly], b: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut r: Vec<MultiPoly> = a.to_vec();
    let mut e = (a.len() - b.len() + 1) as u32;
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &(&lr * bc);
        }
        r.pop();
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    Ok(r)
}

/// Determinant by Bareiss fraction-free elimination with exact division.
/// Rows below the pivot are updated in parallel; every entry is computed by
/// the same sequence of operations, so the result does not depend on the
/// thread count.
pub fn bareiss_determinant(mut m: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = m.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    let table = m[0][0].table().clone();
    let mut negate = false;
    let mut prev = MultiPoly::one(&table);
    for k in 0..n.saturating_sub(1) {
        // Prefer the sparsest nonzero pivot.
        let piv = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].num_terms());
        let piv = match piv {
            Some(p) => p,
            None => return Ok(MultiPoly::zero(&table)),
        };
        if piv != k {
            m.swap(piv, k);
            negate = !negate;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pkk = &pivot_row[k];
        rest.par_iter_mut().try_for_each(|row| -> Result<()> {
            let rik = row[k].clone();
            for j in k + 1..n {
                let mut v = &row[j] * pkk;
                if !rik.is_zero() && !pivot_row[j].is_zero() {
                    v = v - &rik * &pivot_row[j];
                }
                row[j] = if k == 0 { v } else { v.exact_divide(&prev)? };
            }
            row[k] = MultiPoly::zero(&table);
            Ok(())
        })?;
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

#[cfg(test)]
mod tests {
    use super::super::VarTable;
    use super::*;

    fn table() -> std::sync::Arc<VarTable> {
        VarTable::new(&[("z", 1), ("a", 1), ("b", 1), ("c", 2)]).unwrap()
    }

    fn v(t: &std::sync::Arc<VarTable>, n: &str) -> MultiPoly {
        MultiPoly::var(t, n).unwrap()
    }

    #[test]
    fn shared_root_gives_zero() {
        let t = table();
        let z = v(&t, "z");
        let one = MultiPoly::one(&t);
        let f = UniView::new(&(z.pow(2) - &one), "z").unwrap();
        let g = UniView::new(&(&z - &one), "z").unwrap();
        assert!(f.resultant(&g).unwrap().is_zero());
        assert!(f.resultant_prs(&g).unwrap().is_zero());
    }

    #[test]
    fn linear_resultant_sign() {
        let t = table();
        let z = v(&t, "z");
        let (a, b) = (v(&t, "a"), v(&t, "b"));
        let f = UniView::new(&(&z - &a), "z").unwrap();
        let g = UniView::new(&(&z - &b), "z").unwrap();
        // 2x2 Sylvester determinant | 1 -a ; 1 -b | = a - b.
        assert_eq!(f.resultant(&g).unwrap(), &a - &b);
        assert_eq!(f.resultant_prs(&g).unwrap(), &a - &b);
        assert_eq!(g.resultant(&f).unwrap(), &b - &a);
    }

    #[test]
    fn quadratic_discriminant() {
        let t = table();
        let z = v(&t, "z");
        let (b, c) = (v(&t, "b"), v(&t, "c"));
        let f = UniView::new(&(z.pow(2) + &b * &z + &c), "z").unwrap();
        assert_eq!(f.discriminant().unwrap(), b.pow(2) - c.scale_i64(4));
    }

    #[test]
    fn double_root_discriminant() {
        let t = table();
        let z = v(&t, "z");
        let one = MultiPoly::one(&t);
        let p = (&z - &one).pow(2) * (&z - one.scale_i64(2));
        assert!(UniView::new(&p, "z").unwrap().discriminant().unwrap().is_zero());
        let lin = UniView::new(&z, "z").unwrap();
        assert!(matches!(lin.discriminant(), Err(Error::DegreeTooSmall(1, 2))));
    }

    #[test]
    fn cubic_discriminant_matches_closed_form() {
        let t = VarTable::new(&[("z", 1), ("u2", 2), ("t3", 3), ("t4", 4), ("t5", 5)]).unwrap();
        let z = v(&t, "z");
        let (u2, t3, t4, t5) = (v(&t, "u2"), v(&t, "t3"), v(&t, "t4"), v(&t, "t5"));
        let f = &u2 + &t3 * &z + &t4 * z.pow(2) + &t5 * z.pow(3);
        let d = UniView::new(&f, "z").unwrap().discriminant().unwrap();
        let want = t3.pow(2) * t4.pow(2) - (&u2 * t4.pow(3)).scale_i64(4) - (t3.pow(3) * &t5).scale_i64(4)
            + (&u2 * &t3 * &t4 * &t5).scale_i64(18)
            - (u2.pow(2) * t5.pow(2)).scale_i64(27);
        assert_eq!(d, want);
    }

    #[test]
    fn mismatched_inputs() {
        let t = table();
        let z = v(&t, "z");
        let a = v(&t, "a");
        let f = UniView::new(&z, "z").unwrap();
        let g = UniView::new(&a, "a").unwrap();
        assert!(matches!(f.resultant(&g), Err(Error::MainVarMismatch(_, _))));
        let zero = UniView::new(&MultiPoly::zero(&t), "z").unwrap();
        assert!(matches!(f.resultant(&zero), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn reassembles() {
        let t = table();
        let p = v(&t, "z").pow(3) * v(&t, "a") + v(&t, "b") * v(&t, "z") + v(&t, "c");
        assert_eq!(UniView::new(&p, "z").unwrap().reassemble(), p);
    }
}
