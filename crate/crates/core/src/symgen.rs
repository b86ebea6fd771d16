//! Symmetric functions, Fibonacci polynomials and the identity tying the
//! squared side lengths of an inscribed polygon to its vertex quotients.

use std::ops::Neg;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};
use crate::geom::PolygonConfig;
use crate::poly::{MultiPoly, VarTable};

/// Scalars usable by the generic routines here and in the recursions.
pub trait Field: Num + Clone + Neg<Output = Self> {}
impl<T: Num + Clone + Neg<Output = T>> Field for T {}

/// Embeds a small integer into any [`Field`].
pub fn int<T: Field>(k: i64) -> T {
    let mut acc = T::zero();
    let mut base = T::one();
    let mut m = k.unsigned_abs();
    while m > 0 {
        if m & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        m >>= 1;
    }
    if k < 0 {
        -acc
    } else {
        acc
    }
}

/// `[e_0 = 1, e_1, ..., e_k]` of the given values.
pub fn elementary_symmetric<T: Field>(values: &[T]) -> Vec<T> {
    let mut e = vec![T::one()];
    for v in values {
        e.push(T::zero());
        for j in (1..e.len()).rev() {
            let add = e[j - 1].clone() * v.clone();
            e[j] = e[j].clone() + add;
        }
    }
    e
}

/// Binomial coefficient with `C(a, b) = 0` for `b < 0` and the falling
/// factorial definition for negative `a`.
pub fn binomial(a: i64, b: i64) -> i64 {
    if b < 0 {
        return 0;
    }
    if a >= 0 && b > a {
        return 0;
    }
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..b {
        num *= (a - i) as i128;
        den *= (i + 1) as i128;
    }
    (num / den) as i64
}

/// Coefficients of `F_k(x) = sum_i C(k - i, i) x^i`, lowest first.
/// `F_0 = 1` and `F_k = 0` for `k < 0`.
pub fn fibonacci_coeffs(k: i64) -> Vec<i64> {
    if k < 0 {
        return Vec::new();
    }
    (0..=k / 2).map(|i| binomial(k - i, i)).collect()
}

/// `F_k` as a polynomial in `x` (weight 1).
pub fn fibonacci_poly(k: i64) -> MultiPoly {
    let table = VarTable::new(&[("x", 1)]).expect("static table");
    fibonacci_poly_in(&table, "x", k).expect("x exists")
}

pub fn fibonacci_poly_in(table: &Arc<VarTable>, var: &str, k: i64) -> Result<MultiPoly> {
    let i = table.index(var)?;
    let mut terms = Vec::new();
    for (e, c) in fibonacci_coeffs(k).into_iter().enumerate() {
        let mut exps = vec![0u32; table.len()];
        exps[i] = e as u32;
        terms.push((exps, BigInt::from(c)));
    }
    MultiPoly::from_terms(table, terms, 0)
}

/// Elementary symmetric functions of the vertex quotients of one polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct TauVector<T> {
    pub n: usize,
    pub delta: i32,
    /// `tau[0..=n]`.
    pub tau: Vec<T>,
}

impl<T: Field> TauVector<T> {
    pub fn from_quotients(q: &[T], delta: i32) -> Self {
        TauVector { n: q.len(), delta, tau: elementary_symmetric(q) }
    }
}

/// The linear combinations `d_0..d_{n/2}` and `e_0..e_{n/2}` of the `tau`.
#[derive(Clone, Debug, PartialEq)]
pub struct DECoeffs<T> {
    pub d: Vec<T>,
    pub e: Vec<T>,
}

pub fn de_coeffs<T: Field>(tau: &TauVector<T>) -> DECoeffs<T> {
    let n = tau.n as i64;
    let t = &tau.tau;
    let half = (n / 2) as usize;
    let mut d = Vec::with_capacity(half + 1);
    let mut e = Vec::with_capacity(half + 1);
    for k in 0..=half as i64 {
        let mut dk = T::zero();
        let mut ek = T::zero();
        for i in 0..=k {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let lo = t[(k - i) as usize].clone();
            let hi = t[(n - k + i) as usize].clone();
            let cd = sign * binomial(n - 1 - 2 * k + i, i);
            let ce = sign * (binomial(n - 2 * k + i, i) + binomial(n - 2 * k + i - 1, i - 1));
            dk = dk + int::<T>(cd) * (lo.clone() - hi.clone());
            ek = ek + int::<T>(ce) * (lo + hi);
        }
        d.push(dk);
        e.push(ek);
    }
    DECoeffs { d, e }
}

fn poly_mul<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn poly_add<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(T::zero);
            let y = b.get(i).cloned().unwrap_or_else(T::zero);
            x + y
        })
        .collect()
}

/// Both sides of `delta * sum (-x)^i sigma_i = E(r^2 x)^2 / 4 + (r^2 x - 1/4) D(r^2 x)^2`
/// as coefficient lists in `x` (lowest first, length `n + 1`).
pub fn main_identity_sides<T: Field>(sigma: &[T], tau: &TauVector<T>, r2: &T) -> (Vec<T>, Vec<T>) {
    let n = tau.n;
    let de = de_coeffs(tau);
    let mut lhs = Vec::with_capacity(n + 1);
    for (i, s) in sigma.iter().enumerate() {
        let sign = if i % 2 == 0 { tau.delta } else { -tau.delta };
        lhs.push(int::<T>(sign as i64) * s.clone());
    }
    let scale = |c: &[T]| -> Vec<T> {
        let mut pw = T::one();
        c.iter()
            .map(|x| {
                let v = x.clone() * pw.clone();
                pw = pw.clone() * r2.clone();
                v
            })
            .collect()
    };
    let e = scale(&de.e);
    let d = scale(&de.d);
    let quarter = T::one() / int::<T>(4);
    let e2: Vec<T> = poly_mul(&e, &e).into_iter().map(|x| x * quarter.clone()).collect();
    let lin = vec![-quarter, r2.clone()];
    let d2 = poly_mul(&lin, &poly_mul(&d, &d));
    let mut rhs = poly_add(&e2, &d2);
    let len = rhs.len().max(n + 1);
    rhs.resize(len, T::zero());
    lhs.resize(len, T::zero());
    (lhs, rhs)
}

/// Normalized coefficient residual of the main identity for a configuration:
/// `max |lhs_i - rhs_i| / max |lhs_i|`.
pub fn main_identity_residual(config: &PolygonConfig) -> Result<f64> {
    config.validate()?;
    let tau = TauVector::from_quotients(&config.q, config.delta);
    let sq: Vec<_> = config.squared_sides_complex();
    let sigma = elementary_symmetric(&sq);
    let r2 = num_complex::Complex64::new(config.r * config.r, 0.0);
    let (lhs, rhs) = main_identity_sides(&sigma, &tau, &r2);
    let scale = lhs.iter().chain(rhs.iter()).map(|c| c.norm()).fold(0.0, f64::max);
    let diff = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::Degenerate("all coefficients vanish".into()));
    }
    Ok(diff / scale)
}

/// Exact residual (zero iff the identity holds) for configurations whose
/// quotients and squared radius are rational.
pub fn main_identity_residual_exact(
    q: &[num_rational::BigRational],
    delta: i32,
    r2: &num_rational::BigRational,
) -> num_rational::BigRational {
    use num_rational::BigRational;
    let tau = TauVector::from_quotients(q, delta);
    let sq: Vec<BigRational> = q
        .iter()
        .map(|qi| r2 * (int::<BigRational>(2) - qi - BigRational::one() / qi))
        .collect();
    let sigma = elementary_symmetric(&sq);
    let (lhs, rhs) = main_identity_sides(&sigma, &tau, r2);
    lhs.iter()
        .zip(&rhs)
        .map(|(a, b)| num_traits::Signed::abs(&(a - b)))
        .fold(BigRational::zero(), |m, x| if x > m { x } else { m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rat(k: i64) -> BigRational {
        BigRational::from_integer(k.into())
    }

    #[test]
    fn symmetric_functions_of_squared_345() {
        let e = elementary_symmetric(&[rat(9), rat(16), rat(25)]);
        assert_eq!(e, vec![rat(1), rat(50), rat(769), rat(3600)]);
        assert_eq!(elementary_symmetric::<BigRational>(&[]), vec![rat(1)]);
        assert_eq!(elementary_symmetric(&[rat(7)]), vec![rat(1), rat(7)]);
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci_coeffs(0), vec![1]);
        assert!(fibonacci_coeffs(-3).is_empty());
        assert_eq!(fibonacci_coeffs(3), vec![1, 2]);
        let f = fibonacci_poly(3);
        assert_eq!(f.to_text(), "vars: x:1\n2 x\n1\n");
        assert!(fibonacci_poly(-1).is_zero());
        for k in 1..15 {
            let lhs = fibonacci_coeffs(k);
            let a = fibonacci_coeffs(k - 1);
            let b = fibonacci_coeffs(k - 2);
            let mut rhs = vec![0i64; lhs.len().max(a.len()).max(b.len() + 1)];
            for (i, c) in a.iter().enumerate() {
                rhs[i] += c;
            }
            for (i, c) in b.iter().enumerate() {
                rhs[i + 1] += c;
            }
            while rhs.last() == Some(&0) {
                rhs.pop();
            }
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn generating_function_truncated() {
        // sum F_k(x) t^k * (1 - t - x t^2) = 1 up to t^12, coefficientwise in x.
        for k in 0..=12i64 {
            let mut acc = vec![0i64; 8];
            for (i, c) in fibonacci_coeffs(k).iter().enumerate() {
                acc[i] += c;
            }
            for (i, c) in fibonacci_coeffs(k - 1).iter().enumerate() {
                acc[i] -= c;
            }
            for (i, c) in fibonacci_coeffs(k - 2).iter().enumerate() {
                acc[i + 1] -= c;
            }
            let want: Vec<i64> = (0..8).map(|i| if k == 0 && i == 0 { 1 } else { 0 }).collect();
            assert_eq!(acc, want, "t^{k}");
        }
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(-1, 0), 1);
        assert_eq!(binomial(2, 5), 0);
    }

    #[test]
    fn de_boundary_values() {
        let q = vec![rat(-2), rat(-3), BigRational::new(1.into(), 6.into())];
        let de = de_coeffs(&TauVector::from_quotients(&q, 1));
        assert_eq!(de.d[0], rat(0));
        assert_eq!(de.e[0], rat(2));
        let q = vec![rat(-2), rat(-3), BigRational::new((-1).into(), 6.into())];
        let de = de_coeffs(&TauVector::from_quotients(&q, -1));
        assert_eq!(de.e[0], rat(0));
        assert_eq!(de.d[0], rat(2));
    }
}
