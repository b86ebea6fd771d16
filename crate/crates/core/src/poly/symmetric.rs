//! Rewriting symmetric polynomials in elementary symmetric functions.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;

use super::{MultiPoly, Mono, VarTable};
use crate::error::{Error, Result};

/// Elementary symmetric polynomials `e_0..e_k` in the listed variables.
fn elementary(table: &Arc<VarTable>, vars: &[usize]) -> Vec<MultiPoly> {
    let mut e = vec![MultiPoly::one(table)];
    for &v in vars {
        let x = MultiPoly::var_index(table, v);
        let mut next = e.clone();
        next.push(MultiPoly::zero(table));
        for j in 1..next.len() {
            next[j] = &next[j] + &(&e[j - 1] * &x);
        }
        e = next;
    }
    e
}

/// Expresses `p`, symmetric in the variables named by `vars`, as a
/// polynomial in `sigma_names[i]` = `e_{i+1}(vars)` over `target`.
/// Variables of `p` outside `vars` pass through by name.
pub fn symmetric_reduce(
    p: &MultiPoly,
    vars: &[&str],
    target: &Arc<VarTable>,
    sigma_names: &[&str],
) -> Result<MultiPoly> {
    let table = p.table().clone();
    let k = vars.len();
    if sigma_names.len() != k {
        return Err(Error::InvalidArgument("need one symmetric-function name per variable".into()));
    }
    let idx: Vec<usize> = vars.iter().map(|v| table.index(v)).collect::<Result<_>>()?;
    let sig_idx: Vec<usize> = sigma_names.iter().map(|s| target.index(s)).collect::<Result<_>>()?;

    // Split each term into its exponent on `vars` and the rest.
    let split = |m: Mono| -> (Vec<u32>, Mono) {
        let key = idx.iter().map(|&v| m.exp(v)).collect();
        let mut rest = m;
        for &v in &idx {
            rest = rest.with_exp(v, 0);
        }
        (key, rest)
    };
    let mut work: BTreeMap<Vec<u32>, Vec<(Mono, BigInt)>> = BTreeMap::new();
    for (m, c) in p.raw_terms() {
        let (key, rest) = split(*m);
        work.entry(key).or_default().push((rest, c.clone()));
    }
    let mut work: BTreeMap<Vec<u32>, MultiPoly> = work
        .into_iter()
        .map(|(key, mut terms)| {
            terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
            (key, MultiPoly::from_raw(&table, terms, p.den_pow2()))
        })
        .collect();

    let e = elementary(&table, &idx);
    let mut e_pows: HashMap<(usize, u32), MultiPoly> = HashMap::new();
    let mut out = MultiPoly::zero(target);
    while let Some((lambda, coeff)) = work.pop_last() {
        if coeff.is_zero() {
            continue;
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("polynomial is not symmetric".into()));
        }
        // e_1^(l1-l2) e_2^(l2-l3) ... e_k^lk has leading term x^lambda.
        let mut expo = vec![0u32; k];
        for j in 0..k {
            expo[j] = lambda[j] - if j + 1 < k { lambda[j + 1] } else { 0 };
        }
        let mut prod = MultiPoly::one(&table);
        for (j, &a) in expo.iter().enumerate() {
            if a > 0 {
                let pw = e_pows.entry((j, a)).or_insert_with(|| e[j + 1].pow(a)).clone();
                prod = &prod * &pw;
            }
        }
        // Subtract coeff * prod from the remaining work.
        for (m, c) in prod.raw_terms() {
            let (key, rest) = split(*m);
            debug_assert!(rest.is_one());
            if key == lambda {
                continue;
            }
            let delta = coeff.scale(c).scale_pow2(-(prod.den_pow2() as i32));
            let entry = work.entry(key.clone()).or_insert_with(|| MultiPoly::zero(&table));
            *entry = &*entry - &delta;
            if entry.is_zero() {
                work.remove(&key);
            }
        }
        let mut mono_exps = vec![0u32; target.len()];
        for (j, &a) in expo.iter().enumerate() {
            mono_exps[sig_idx[j]] += a;
        }
        let sig_mono = MultiPoly::from_terms(target, vec![(mono_exps, BigInt::from(1))], 0)?;
        out = out + sig_mono * coeff.embed(target)?;
    }
    Ok(out)
}
