//! Exact structural checks on `alpha_5`: its constant term in `16 K^2` and
//! its restriction to a vanishing side.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::pipelines::{alpha_cyclic_full, alpha_cyclic_small};
use crate::error::{Error, Result};
use crate::poly::{symmetric_reduce, MultiPoly, VarTable};

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// The extracted square root for `const5`.
    #[serde(skip)]
    pub witness: Option<MultiPoly>,
}

fn table_of(prefix: &str, n: usize, weight: u32, lead: Option<(&str, u32)>) -> Result<Arc<VarTable>> {
    let mut specs: Vec<(String, u32)> = lead.iter().map(|(s, w)| (s.to_string(), *w)).collect();
    for i in 1..=n {
        let w = if prefix == "s" { i as u32 } else { weight };
        specs.push((format!("{prefix}{i}"), w));
    }
    VarTable::from_owned(specs)
}

/// Product over `signs` of `sum e_j v_j`, as a polynomial in the
/// variables `v_j` (given by their indices).
fn signed_sum_product(table: &Arc<VarTable>, idx: &[usize], patterns: &[Vec<i64>]) -> MultiPoly {
    let mut acc = MultiPoly::one(table);
    for signs in patterns {
        let mut f = MultiPoly::zero(table);
        for (&i, &e) in idx.iter().zip(signs) {
            f = f + MultiPoly::var_index(table, i).scale_i64(e);
        }
        acc = &acc * &f;
    }
    acc
}

/// Rewrites a polynomial that is even in every `a_i` as one in `x_i = a_i^2`.
fn halve_exponents(p: &MultiPoly, target: &Arc<VarTable>) -> Result<MultiPoly> {
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        if e.iter().any(|k| k % 2 == 1) {
            return Err(Error::PipelineIntegrity("product has an odd power of a side".into()));
        }
        terms.push((e.iter().map(|k| k / 2).collect(), c.clone()));
    }
    MultiPoly::from_terms(target, terms, p.den_pow2())
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `prod (a1 +- a2 +- ... +- a5)` over the 16 sign patterns, in `s1..s5`.
pub fn sign_pattern_product_5() -> Result<MultiPoly> {
    let a = table_of("a", 5, 1, None)?;
    let patterns: Vec<Vec<i64>> = (0..16u32)
        .map(|b| (0..5).map(|j| if j > 0 && b >> (j - 1) & 1 == 1 { -1 } else { 1 }).collect())
        .collect();
    let prod = signed_sum_product(&a, &[0, 1, 2, 3, 4], &patterns);
    let x = table_of("x", 5, 1, None)?;
    let px = halve_exponents(&prod, &x)?;
    let s = table_of("s", 5, 1, None)?;
    let xn = names("x", 5);
    let sn = names("s", 5);
    let xr: Vec<&str> = xn.iter().map(|s| s.as_str()).collect();
    let sr: Vec<&str> = sn.iter().map(|s| s.as_str()).collect();
    symmetric_reduce(&px, &xr, &s, &sr)
}

/// `alpha_5` at `16 K^2 = 0`, over `s1..s5`.
pub fn alpha5_constant_term() -> Result<MultiPoly> {
    let a5 = alpha_cyclic_small(5, 0)?;
    let s = table_of("s", 5, 1, None)?;
    a5.substitute(&[("k16", MultiPoly::zero(&s))])
}

/// `alpha_5(0, s)` is the sign-pattern product times a perfect square.
pub fn const5() -> Result<CheckReport> {
    let c = alpha5_constant_term()?;
    let prod = sign_pattern_product_5()?;
    let name = "const5".to_string();
    let q = match c.exact_divide(&prod) {
        Ok(q) => q,
        Err(e) => return Ok(CheckReport { name, pass: false, detail: format!("division failed: {e}"), witness: None }),
    };
    match q.sqrt() {
        Some(g) if !g.is_zero() => {
            let detail = format!(
                "quotient is a square; root has {} terms, weighted degree {}",
                g.num_terms(),
                g.weighted_degree().unwrap_or(0)
            );
            Ok(CheckReport { name, pass: true, detail, witness: Some(g) })
        }
        _ => Ok(CheckReport { name, pass: false, detail: "quotient is not a square".into(), witness: None }),
    }
}

/// `(k16 - 4 s2 + s1^2)^2 - 64 s4`.
pub fn alpha4_closed_form(table: &Arc<VarTable>) -> Result<MultiPoly> {
    let b = MultiPoly::parse_in(table, "1 k16 ; -4 s2 ; 1 s1^2")?;
    Ok(b.pow(2) - MultiPoly::parse_in(table, "64 s4")?)
}

/// `alpha_5` with `s5 = 0` equals `alpha_4^2` times the product of
/// `k16 + (x1 +- x2 +- x3 +- x4)^2` over the three patterns with two minus
/// signs.
pub fn degen5() -> Result<CheckReport> {
    let name = "degen5".to_string();
    let target = table_of("s", 4, 1, Some(("k16", 2)))?;
    let a5 = alpha_cyclic_small(5, 0)?;
    let lhs = a5.substitute(&[("s5", MultiPoly::zero(&target))])?;

    let a4 = alpha_cyclic_full(4)?.embed(&target)?;
    if a4 != alpha4_closed_form(&target)? {
        return Ok(CheckReport { name, pass: false, detail: "alpha_4 differs from its closed form".into(), witness: None });
    }
    let x = table_of("x", 4, 1, Some(("k16", 2)))?;
    let k16 = MultiPoly::var(&x, "k16")?;
    let mut prod = MultiPoly::one(&x);
    for minus in [[1, 2], [1, 3], [2, 3]] {
        let mut lin = MultiPoly::var_index(&x, 1);
        for j in 2..=4 {
            let e = if minus.contains(&(j - 1)) { -1 } else { 1 };
            lin = lin + MultiPoly::var_index(&x, j).scale_i64(e);
        }
        prod = &prod * &(&k16 + &lin.pow(2));
    }
    let xn = names("x", 4);
    let sn = names("s", 4);
    let xr: Vec<&str> = xn.iter().map(|s| s.as_str()).collect();
    let sr: Vec<&str> = sn.iter().map(|s| s.as_str()).collect();
    let prod = symmetric_reduce(&prod, &xr, &target, &sr)?;
    let rhs = &a4.pow(2) * &prod;
    let pass = lhs == rhs;
    let detail = format!(
        "weighted degrees {} = 2 * {} + {}",
        lhs.weighted_degree().unwrap_or(0),
        a4.weighted_degree().unwrap_or(0),
        prod.weighted_degree().unwrap_or(0)
    );
    Ok(CheckReport { name, pass, detail, witness: None })
}

/// `alpha_5(0, s)` at integer squared sides, exactly.
pub fn alpha5_constant_at(squared: &[i64; 5]) -> Result<BigInt> {
    let c = alpha5_constant_term()?;
    let mut sigma = vec![BigInt::one()];
    for &a in squared {
        sigma.push(BigInt::from(0));
        for k in (1..sigma.len()).rev() {
            let d = &sigma[k - 1] * a;
            sigma[k] += d;
        }
    }
    let point = (1..=5)
        .map(|i| (format!("s{i}"), num_rational::BigRational::from_integer(sigma[i].clone())))
        .collect();
    let v = c.eval_rational(&point)?;
    if !v.is_integer() {
        return Err(Error::PipelineIntegrity("non-integral value".into()));
    }
    Ok(v.to_integer())
}
