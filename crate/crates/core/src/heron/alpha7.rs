//! `alpha_7`, `beta_8`, `beta_8*` at fixed integer symmetric functions, and
//! the `u2`-multiplicity check on the generic resultant of `F` and `G`.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::fg::fg_polynomials;
use super::tu::tu_recursion;
use crate::error::{Error, Result};
use crate::geom::Family;
use crate::poly::{MultiPoly, UniView, VarTable};

/// Input for the specialized pipeline. Rational symmetric functions can be
/// brought to this form by scaling the squared sides, since every
/// polynomial involved is weighted-homogeneous.
#[derive(Clone, Debug)]
pub struct SigmaSet {
    /// `sigma_1..sigma_n`, `n` in 7, 8.
    pub sigma: Vec<BigInt>,
    /// `sqrt(sigma_8)` for `n = 8`.
    pub sqrt_top: Option<BigInt>,
    pub eps: i32,
}

impl SigmaSet {
    /// Symmetric functions of integer squared sides. For `n = 8` the product
    /// of the squared sides must be a perfect square.
    pub fn from_squared_sides(squared: &[i64], eps: i32) -> Result<SigmaSet> {
        let n = squared.len();
        let vals: Vec<BigInt> = squared.iter().map(|&a| BigInt::from(a)).collect();
        let mut sigma = vec![BigInt::one()];
        for v in &vals {
            sigma.push(BigInt::zero());
            for k in (1..sigma.len()).rev() {
                let d = &sigma[k - 1] * v;
                sigma[k] += d;
            }
        }
        sigma.remove(0);
        let sqrt_top = if n % 2 == 0 {
            let s = sigma[n - 1].sqrt();
            if &s * &s != sigma[n - 1] {
                return Err(Error::InvalidArgument("product of squared sides is not a perfect square".into()));
            }
            Some(s)
        } else {
            None
        };
        Ok(SigmaSet { sigma, sqrt_top, eps })
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }
}

/// Specialized result with the intermediate degree bookkeeping.
#[derive(Clone, Debug, Serialize)]
pub struct Alpha7Report {
    pub n: usize,
    pub eps: i32,
    /// Degree and `u2`-valuation of `Res(F~, G~, u3)`.
    pub res_degree: u32,
    pub res_valuation: u32,
    /// Degree and `u2`-valuation of `Res(F1~, G1~, u3)`.
    pub res1_degree: u32,
    pub res1_valuation: u32,
    pub degree: u32,
    pub monic: bool,
    /// Largest coefficient bit length of the result.
    pub max_bits: u64,
    #[serde(skip)]
    pub poly: MultiPoly,
}

/// `t4..t7` in `u2, u3` at fixed symmetric functions.
fn specialized_t(sigma_set: &SigmaSet, table: &Arc<VarTable>) -> Result<Vec<MultiPoly>> {
    let n = sigma_set.n();
    if n != 7 && n != 8 {
        return Err(Error::InvalidArgument(format!("specialized pipeline needs n = 7 or 8, got {n}")));
    }
    let eps = match (n, sigma_set.eps) {
        (7, 0) => 0,
        (8, e) if e.abs() == 1 => e,
        _ => return Err(Error::InvalidArgument(format!("parity {} invalid for n = {n}", sigma_set.eps))),
    };
    let mut sigma = vec![MultiPoly::one(table)];
    sigma.extend(sigma_set.sigma.iter().map(|s| MultiPoly::from_bigint(table, s.clone())));
    let zero = MultiPoly::zero(table);
    let u = vec![zero.clone(), zero.clone(), MultiPoly::var(table, "u2")?, MultiPoly::var(table, "u3")?];
    let extra = match (n, &sigma_set.sqrt_top) {
        (8, Some(s)) => {
            if s * s != sigma_set.sigma[7] {
                return Err(Error::InvalidArgument("sqrt_top^2 differs from sigma_8".into()));
            }
            MultiPoly::from_bigint(table, s.clone())
        }
        (8, None) => return Err(Error::InvalidArgument("n = 8 needs sqrt(sigma_8)".into())),
        _ => zero,
    };
    Ok(tu_recursion(Family::Cyclic, n, &sigma, &u, &extra, eps))
}

fn expand(p: &MultiPoly, t: &[MultiPoly], table: &Arc<VarTable>) -> Result<MultiPoly> {
    p.substitute(&[
        ("u2", MultiPoly::var(table, "u2")?),
        ("u3", MultiPoly::var(table, "u3")?),
        ("t4", t[4].clone()),
        ("t5", t[5].clone()),
        ("t6", t[6].clone()),
        ("t7", t[7].clone()),
    ])
}

fn max_bits(p: &MultiPoly) -> u64 {
    p.terms().map(|(_, c)| c.bits()).max().unwrap_or(0)
}

/// `2^101 5^5 Res(F~, G~, u3) / (u2^4 Res(F1~, G1~, u3))` with
/// `u2 = -k16 / 4`, as a polynomial in `k16` alone.
pub fn alpha7_specialized(sigma_set: &SigmaSet) -> Result<Alpha7Report> {
    let table = VarTable::new(&[("u2", 2), ("u3", 3)])?;
    let t = specialized_t(sigma_set, &table)?;
    let fg = fg_polynomials();
    let f = expand(&fg.f, &t, &table)?;
    let g = expand(&fg.g, &t, &table)?;
    let f1 = expand(&fg.f1, &t, &table)?;
    let g1 = expand(&fg.g1, &t, &table)?;
    let (res, res1) = rayon::join(
        || UniView::new(&f, "u3")?.resultant(&UniView::new(&g, "u3")?),
        || UniView::new(&f1, "u3")?.resultant(&UniView::new(&g1, "u3")?),
    );
    let (res, res1) = (res?, res1?);
    if res1.is_zero() {
        return Err(Error::Degenerate("Res(F1, G1, u3) vanishes identically at these sigma".into()));
    }
    let u2 = MultiPoly::var(&table, "u2")?;
    let den = &u2.pow(4) * &res1;
    // The quotient has denominators dividing 5^5, so scale first.
    let q = res
        .scale(&BigInt::from(5).pow(5u32))
        .exact_divide(&den)
        .map_err(|e| Error::PipelineIntegrity(format!("u2^4 Res(F1, G1) does not divide Res(F, G): {e}")))?;
    let scaled = q.scale_pow2(101);
    let out_table = VarTable::new(&[("k16", 2)])?;
    let k16 = MultiPoly::var(&out_table, "k16")?;
    let poly = scaled.substitute(&[("u2", k16.scale_i64(-1).scale_pow2(-2)), ("u3", MultiPoly::zero(&out_table))])?;
    if !poly.is_integral() {
        return Err(Error::PipelineIntegrity("specialized result has non-integral coefficients".into()));
    }
    let degree = poly.degree_in(0).unwrap_or(0);
    let monic = poly.leading_coefficient_in(0).constant_value() == Some(One::one());
    Ok(Alpha7Report {
        n: sigma_set.n(),
        eps: sigma_set.eps,
        res_degree: res.degree_in(0).unwrap_or(0),
        res_valuation: res.valuation_in(0).unwrap_or(0),
        res1_degree: res1.degree_in(0).unwrap_or(0),
        res1_valuation: res1.valuation_in(0).unwrap_or(0),
        degree,
        monic,
        max_bits: max_bits(&poly),
        poly,
    })
}

/// Outcome of the generic multiplicity check.
#[derive(Clone, Debug, Serialize)]
pub struct MplctyReport {
    /// `None` when skipped for time.
    pub valuation: Option<u32>,
    pub divisible_by_u2_7: Option<bool>,
    pub divisible_by_u2_8: Option<bool>,
    pub seconds: f64,
    pub skipped: bool,
}

/// Computes `Res(F, G, u3)` in `u2, t4..t7` and its `u2`-adic valuation.
/// Reports `skipped` instead of a verdict if it took longer than `budget`.
pub fn mplcty_divisibility_check(budget: Duration) -> Result<MplctyReport> {
    let start = Instant::now();
    let fg = fg_polynomials();
    let res = UniView::new(&fg.f, "u3")?.resultant(&UniView::new(&fg.g, "u3")?)?;
    let seconds = start.elapsed().as_secs_f64();
    if start.elapsed() > budget {
        return Ok(MplctyReport { valuation: None, divisible_by_u2_7: None, divisible_by_u2_8: None, seconds, skipped: true });
    }
    if res.is_zero() {
        return Err(Error::PipelineIntegrity("Res(F, G, u3) vanishes".into()));
    }
    let u2 = res.table().index("u2")?;
    let v = res.valuation_in(u2).unwrap_or(0);
    Ok(MplctyReport {
        valuation: Some(v),
        divisible_by_u2_7: Some(v >= 7),
        divisible_by_u2_8: Some(v >= 8),
        seconds,
        skipped: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_from_sides() {
        let s = SigmaSet::from_squared_sides(&[1, 2, 3], 0).unwrap();
        assert_eq!(s.sigma, vec![BigInt::from(6), BigInt::from(11), BigInt::from(6)]);
        assert!(SigmaSet::from_squared_sides(&[2, 3], 1).is_err());
        let s = SigmaSet::from_squared_sides(&[2, 8], 1).unwrap();
        assert_eq!(s.sqrt_top, Some(BigInt::from(4)));
    }

    #[test]
    fn rejects_bad_parity() {
        let s = SigmaSet::from_squared_sides(&[1, 2, 3, 4, 5, 6, 7], 1).unwrap();
        assert!(alpha7_specialized(&s).is_err());
    }
}
