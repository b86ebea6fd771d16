//! Exact multivariate division and square roots.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{format, MultiPoly, Mono};
use crate::error::{Error, Result};

fn odd_part(c: &BigInt) -> (BigInt, u32) {
    let v = c.trailing_zeros().unwrap_or(0) as u32;
    (c >> v as usize, v)
}

impl MultiPoly {
    fn witness(&self, m: Mono, c: &BigInt, den: u32) -> Error {
        let exps = m.exps(self.table.len());
        let mono = format::monomial_string(&self.table, &exps);
        let coef = format::coefficient_string(c, den);
        Error::NotDivisible { remainder: if mono.is_empty() { coef } else { format!("{coef} {mono}") } }
    }

    /// Returns `q` with `self = q * den` exactly.
    ///
    /// Quotients must have dyadic coefficients; anything else is reported as
    /// [`Error::NotDivisible`] with the first offending remainder term.
    pub fn exact_divide(&self, den: &MultiPoly) -> Result<MultiPoly> {
        self.check_table(den)?;
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(MultiPoly::zero(&self.table));
        }
        // Clear adjoined square roots from the divisor with conjugates.
        let mut num = self.clone();
        let mut d = den.clone();
        for r in self.table.rules.clone() {
            if d.uses_var(r.var) {
                let conj = d.negate_var(r.var);
                num = num.checked_mul(&conj)?;
                d = d.checked_mul(&conj)?;
            }
        }
        if d.terms.len() == 1 {
            return num.divide_by_term(&d);
        }
        num.divide_general(&d)
    }

    fn divide_by_term(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let (dm, dc) = &d.terms[0];
        let (odd, v) = odd_part(dc);
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let q = m.div(*dm).ok_or_else(|| self.witness(*m, c, self.den_pow2))?;
            let (qc, r) = c.div_rem(&odd);
            if !r.is_zero() {
                return Err(self.witness(*m, c, self.den_pow2));
            }
            out.push((q, qc));
        }
        // self = N / 2^a, d = 2^v * odd * m / 2^b  =>  q = (N/odd) * 2^(b - a - v).
        let shift = d.den_pow2 as i64 - self.den_pow2 as i64 - v as i64;
        let q = MultiPoly::from_raw(&self.table, out, 0);
        Ok(q.scale_pow2(shift as i32))
    }

    fn divide_general(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let (dm, dc) = d.terms.last().unwrap();
        let (odd, v) = odd_part(dc);
        // Remainder is rem / 2^scale with integer entries; quotient terms are
        // collected as (mono, numerator, 2-power denominator).
        let mut rem: BTreeMap<Mono, BigInt> = self.terms.iter().cloned().collect();
        let mut scale: u32 = 0;
        let mut quot: Vec<(Mono, BigInt, u32)> = Vec::new();
        while let Some((&m, c)) = rem.iter().next_back() {
            let qm = m.div(*dm).ok_or_else(|| self.witness(m, c, self.den_pow2 + scale))?;
            let (mut qc, r) = c.div_rem(&odd);
            if !r.is_zero() {
                return Err(self.witness(m, c, self.den_pow2 + scale));
            }
            // Need qc divisible by 2^v to stay at the current scale.
            let tz = qc.trailing_zeros().unwrap_or(u64::MAX).min(v as u64) as u32;
            if tz < v {
                let lift = v - tz;
                for x in rem.values_mut() {
                    *x <<= lift as usize;
                }
                scale += lift;
                qc <<= lift as usize;
            }
            let qc = qc >> v as usize;
            for (tm, tc) in &d.terms {
                let mm = tm.mul(qm).ok_or(Error::ExponentOverflow(super::MAX_EXP))?;
                let delta = tc * &qc;
                let e = rem.entry(mm).or_insert_with(BigInt::zero);
                *e -= delta;
                if e.is_zero() {
                    rem.remove(&mm);
                }
            }
            quot.push((qm, qc, scale));
        }
        // Quotient = sum qc / 2^scale_i, then times 2^(b - a).
        let max_scale = quot.iter().map(|t| t.2).max().unwrap_or(0);
        let mut terms: Vec<(Mono, BigInt)> = quot
            .into_iter()
            .map(|(m, c, s)| (m, c << (max_scale - s) as usize))
            .collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let q = MultiPoly::from_raw(&self.table, terms, max_scale);
        Ok(q.scale_pow2(d.den_pow2 as i32 - self.den_pow2 as i32))
    }

    /// Exact square root, if `self` is the square of a polynomial with
    /// dyadic coefficients. The root has positive leading coefficient.
    pub fn sqrt(&self) -> Option<MultiPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        // Make the denominator an even power of two.
        let (p, den) = if self.den_pow2 % 2 == 1 {
            (self.scale_pow2(1), self.den_pow2 + 1)
        } else {
            (self.clone(), self.den_pow2)
        };
        let terms: Vec<(Mono, BigInt)> = if p.den_pow2 == den {
            p.terms.clone()
        } else {
            p.terms.iter().map(|(m, c)| (*m, c << (den - p.den_pow2) as usize)).collect()
        };
        let n = self.table.len();
        let (lm, lc) = terms.last().unwrap();
        if lc.is_negative() {
            return None;
        }
        let sm = lm.sqrt(n)?;
        let sc = lc.sqrt();
        if &(&sc * &sc) != lc {
            return None;
        }
        let two_sc = &sc * 2;
        let mut rem: BTreeMap<Mono, BigInt> = terms.iter().cloned().collect();
        rem.remove(lm);
        let mut root: Vec<(Mono, BigInt)> = vec![(sm, sc)];
        while let Some((&m, c)) = rem.iter().next_back() {
            let tm = m.div(sm)?;
            if tm >= sm {
                return None;
            }
            let (tc, r) = c.div_rem(&two_sc);
            if !r.is_zero() {
                return None;
            }
            // rem -= 2 * root * t + t^2
            for (rm, rc) in &root {
                let mm = rm.mul(tm)?;
                let e = rem.entry(mm).or_insert_with(BigInt::zero);
                *e -= rc * &tc * 2;
                if e.is_zero() {
                    rem.remove(&mm);
                }
            }
            let mm = tm.mul(tm)?;
            let e = rem.entry(mm).or_insert_with(BigInt::zero);
            *e -= &tc * &tc;
            if e.is_zero() {
                rem.remove(&mm);
            }
            root.push((tm, tc));
        }
        root.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Some(MultiPoly::from_raw(&self.table, root, den / 2))
    }
}
