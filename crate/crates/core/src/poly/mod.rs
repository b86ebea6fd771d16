//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Every polynomial carries a shared [`VarTable`] (names, grading weights and
//! optional square-root adjunctions) and a single power-of-two denominator, so
//! the quarter and half factors that show up in the elimination recursions stay
//! exact without leaving integer arithmetic.

mod division;
mod format;
pub(crate) mod mono;
mod resultant;
mod symmetric;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
pub use mono::{Mono, MAX_EXP, MAX_VARS};
pub use resultant::{bareiss_determinant, UniView};
pub use symmetric::symmetric_reduce;

/// Rewrite `var^2 -> replacement`, applied after every multiplication.
///
/// This is how square roots are adjoined (e.g. `sq^2 -> s6` for the square
/// root of the last symmetric function). The replacement may not mention any
/// ruled variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareRule {
    pub var: usize,
    pub(crate) terms: Vec<(Mono, BigInt)>,
    pub(crate) den_pow2: u32,
}

/// Ordered variable names with positive grading weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    weights: Vec<u32>,
    rules: Vec<SquareRule>,
}

impl VarTable {
    pub fn new(specs: &[(&str, u32)]) -> Result<Arc<VarTable>> {
        Self::from_owned(specs.iter().map(|(n, w)| (n.to_string(), *w)).collect())
    }

    pub fn from_owned(specs: Vec<(String, u32)>) -> Result<Arc<VarTable>> {
        if specs.len() > MAX_VARS {
            return Err(Error::TooManyVariables(specs.len(), MAX_VARS));
        }
        let mut names = Vec::with_capacity(specs.len());
        let mut weights = Vec::with_capacity(specs.len());
        for (name, w) in specs {
            if w == 0 {
                return Err(Error::InvalidArgument(format!("weight of `{name}` must be positive")));
            }
            if name.is_empty() || names.contains(&name) {
                return Err(Error::InvalidArgument(format!("duplicate or empty variable name `{name}`")));
            }
            names.push(name);
            weights.push(w);
        }
        Ok(Arc::new(VarTable { names, weights, rules: Vec::new() }))
    }

    /// Returns a copy of this table where `var^2` is rewritten to
    /// `replacement` (a polynomial over a table with the same variables).
    pub fn with_square_rule(&self, var: &str, replacement: &MultiPoly) -> Result<Arc<VarTable>> {
        let idx = self.index(var)?;
        if replacement.table.names != self.names || replacement.table.weights != self.weights {
            return Err(Error::TableMismatch("square rule replacement".into()));
        }
        let mut ruled: Vec<usize> = self.rules.iter().map(|r| r.var).collect();
        ruled.push(idx);
        for (m, _) in &replacement.terms {
            if ruled.iter().any(|&v| m.exp(v) > 0) {
                return Err(Error::InvalidArgument(format!(
                    "replacement for `{var}^2` mentions a ruled variable"
                )));
            }
        }
        if let Some((lo, hi)) = replacement.weighted_degree_range() {
            let want = 2 * self.weights[idx] as u64;
            if lo != want || hi != want {
                return Err(Error::InvalidArgument(format!(
                    "replacement for `{var}^2` must have weight {want}"
                )));
            }
        }
        let mut table = self.clone();
        table.rules.retain(|r| r.var != idx);
        table.rules.push(SquareRule { var: idx, terms: replacement.terms.clone(), den_pow2: replacement.den_pow2 });
        Ok(Arc::new(table))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn rules(&self) -> &[SquareRule] {
        &self.rules
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    /// Same variables and weights; rules are not compared.
    pub fn same_variables(&self, other: &VarTable) -> bool {
        self.names == other.names && self.weights == other.weights
    }
}

/// Hash-map accumulator used by multiplication and substitution.
#[derive(Default)]
pub(crate) struct Accum {
    map: FxHashMap<Mono, BigInt>,
}

impl Accum {
    #[inline]
    pub(crate) fn add(&mut self, m: Mono, c: BigInt) {
        match self.map.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub(crate) fn into_terms(self) -> Vec<(Mono, BigInt)> {
        let mut v: Vec<(Mono, BigInt)> = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// Sparse polynomial `2^-den_pow2 * sum c_m x^m` over a [`VarTable`].
#[derive(Clone)]
pub struct MultiPoly {
    table: Arc<VarTable>,
    /// Sorted ascending by monomial, no zero coefficients.
    terms: Vec<(Mono, BigInt)>,
    den_pow2: u32,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.table, &other.table) || self.table.same_variables(&other.table))
            && self.den_pow2 == other.den_pow2
            && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.to_inline_string())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_inline_string())
    }
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k as usize
}

impl MultiPoly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        MultiPoly { table: table.clone(), terms: Vec::new(), den_pow2: 0 }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, 1)
    }

    pub fn constant(table: &Arc<VarTable>, c: i64) -> Self {
        Self::from_bigint(table, BigInt::from(c))
    }

    pub fn from_bigint(table: &Arc<VarTable>, c: BigInt) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(Mono::ONE, c)] };
        MultiPoly { table: table.clone(), terms, den_pow2: 0 }
    }

    /// `c / 2^k`.
    pub fn dyadic(table: &Arc<VarTable>, c: i64, k: u32) -> Self {
        let mut p = Self::constant(table, c);
        p.den_pow2 = k;
        p.normalize_den();
        p
    }

    pub fn var(table: &Arc<VarTable>, name: &str) -> Result<Self> {
        let i = table.index(name)?;
        Ok(Self::var_index(table, i))
    }

    pub fn var_index(table: &Arc<VarTable>, i: usize) -> Self {
        MultiPoly { table: table.clone(), terms: vec![(Mono::var(i, 1), BigInt::one())], den_pow2: 0 }
    }

    /// Monomial `c * prod name_i^e_i`.
    pub fn monomial(table: &Arc<VarTable>, c: BigInt, powers: &[(&str, u32)]) -> Result<Self> {
        let mut exps = vec![0u32; table.len()];
        for (name, e) in powers {
            exps[table.index(name)?] += e;
        }
        Self::from_terms(table, vec![(exps, c)], 0)
    }

    /// Builds a polynomial from explicit exponent vectors.
    pub fn from_terms(table: &Arc<VarTable>, terms: Vec<(Vec<u32>, BigInt)>, den_pow2: u32) -> Result<Self> {
        let mut acc = Accum::default();
        for (exps, c) in terms {
            if exps.len() != table.len() {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector has length {} but table has {} variables",
                    exps.len(),
                    table.len()
                )));
            }
            let m = Mono::from_exps(&exps).ok_or(Error::ExponentOverflow(MAX_EXP))?;
            acc.add(m, c);
        }
        let mut p = MultiPoly { table: table.clone(), terms: acc.into_terms(), den_pow2 };
        p.normalize_den();
        Ok(p.reduce_rules())
    }

    pub(crate) fn from_raw(table: &Arc<VarTable>, terms: Vec<(Mono, BigInt)>, den_pow2: u32) -> Self {
        let mut p = MultiPoly { table: table.clone(), terms, den_pow2 };
        p.normalize_den();
        p
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn den_pow2(&self) -> u32 {
        self.den_pow2
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// True when all coefficients are integers (no pending power of two).
    pub fn is_integral(&self) -> bool {
        self.den_pow2 == 0
    }

    /// Constant value as a rational, or `None` if the polynomial is not constant.
    pub fn constant_value(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        let c = self.terms.first().map(|t| t.1.clone()).unwrap_or_default();
        Some(BigRational::new(c, pow2(self.den_pow2)))
    }

    /// Terms as `(exponent vector, numerator)`; the common denominator is
    /// `2^den_pow2`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &BigInt)> + '_ {
        let n = self.table.len();
        self.terms.iter().map(move |(m, c)| (m.exps(n), c))
    }

    pub(crate) fn raw_terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    /// Coefficient of the monomial with the given exponents, as a rational.
    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        let m = match Mono::from_exps(exps) {
            Some(m) => m,
            None => return BigRational::zero(),
        };
        match self.terms.binary_search_by(|t| t.0.cmp(&m)) {
            Ok(i) => BigRational::new(self.terms[i].1.clone(), pow2(self.den_pow2)),
            Err(_) => BigRational::zero(),
        }
    }

    /// Coefficient of a monomial given by `(name, exponent)` pairs.
    pub fn coefficient_of(&self, powers: &[(&str, u32)]) -> Result<BigRational> {
        let mut exps = vec![0u32; self.table.len()];
        for (name, e) in powers {
            exps[self.table.index(name)?] += e;
        }
        Ok(self.coefficient(&exps))
    }

    fn normalize_den(&mut self) {
        if self.terms.is_empty() {
            self.den_pow2 = 0;
            return;
        }
        if self.den_pow2 == 0 {
            return;
        }
        let tz = self
            .terms
            .iter()
            .map(|(_, c)| c.trailing_zeros().unwrap_or(0))
            .min()
            .unwrap_or(0);
        let k = tz.min(self.den_pow2 as u64) as u32;
        if k > 0 {
            for t in &mut self.terms {
                t.1 >>= k as usize;
            }
            self.den_pow2 -= k;
        }
    }

    fn check_table(&self, other: &MultiPoly) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) || *self.table == *other.table {
            Ok(())
        } else {
            Err(Error::TableMismatch(format!(
                "[{}] vs [{}]",
                self.table.names.join(","),
                other.table.names.join(",")
            )))
        }
    }

    fn aligned(&self, den: u32) -> Vec<(Mono, BigInt)> {
        let k = den - self.den_pow2;
        if k == 0 {
            self.terms.clone()
        } else {
            self.terms.iter().map(|(m, c)| (*m, c << k as usize)).collect()
        }
    }

    fn merge(&self, other: &MultiPoly, negate_other: bool) -> MultiPoly {
        let den = self.den_pow2.max(other.den_pow2);
        let a = self.aligned(den);
        let b = other.aligned(den);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        MultiPoly::from_raw(&self.table, out, den)
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_table(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_table(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_table(other)?;
        Ok(self.mul_raw(other)?.reduce_rules())
    }

    pub(crate) fn mul_raw(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(&self.table));
        }
        let den = self.den_pow2 + other.den_pow2;
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        if small.terms.len() == 1 {
            let (m0, c0) = &small.terms[0];
            let mut out = Vec::with_capacity(big.terms.len());
            for (m, c) in &big.terms {
                out.push((m.mul(*m0).ok_or(Error::ExponentOverflow(MAX_EXP))?, c * c0));
            }
            return Ok(MultiPoly::from_raw(&self.table, out, den));
        }
        let mut acc = Accum::default();
        acc.map.reserve(big.terms.len() * 2);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(*mb).ok_or(Error::ExponentOverflow(MAX_EXP))?;
                acc.add(m, ca * cb);
            }
        }
        Ok(MultiPoly::from_raw(&self.table, acc.into_terms(), den))
    }

    /// Applies the table's square rules until no ruled exponent exceeds 1.
    pub(crate) fn reduce_rules(self) -> MultiPoly {
        if self.table.rules.is_empty() {
            return self;
        }
        let rules = &self.table.rules;
        let needs = self.terms.iter().any(|(m, _)| rules.iter().any(|r| m.exp(r.var) >= 2));
        if !needs {
            return self;
        }
        // Group terms by how many times each rule fires.
        let mut groups: HashMap<Vec<u32>, Vec<(Mono, BigInt)>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut key = Vec::with_capacity(rules.len());
            let mut rest = *m;
            for r in rules {
                let e = m.exp(r.var);
                key.push(e / 2);
                rest = rest.with_exp(r.var, e % 2);
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        let mut keys: Vec<_> = groups.keys().cloned().collect();
        keys.sort();
        let mut total = MultiPoly::zero(&self.table);
        for key in keys {
            let mut terms = groups.remove(&key).unwrap();
            terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
            let mut part = MultiPoly::from_raw(&self.table, terms, self.den_pow2);
            for (r, &q) in rules.iter().zip(&key) {
                if q > 0 {
                    let repl = MultiPoly::from_raw(&self.table, r.terms.clone(), r.den_pow2);
                    let rp = repl.pow_raw(q).expect("rule power overflow");
                    part = part.mul_raw(&rp).expect("exponent overflow in rule");
                }
            }
            total = total.merge(&part, false);
        }
        total
    }

    fn pow_raw(&self, k: u32) -> Result<MultiPoly> {
        let mut result = MultiPoly::one(&self.table);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_raw(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_raw(&base)?;
            }
        }
        Ok(result)
    }

    pub fn checked_pow(&self, k: u32) -> Result<MultiPoly> {
        let mut result = MultiPoly::one(&self.table);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        self.checked_pow(k).expect("exponent overflow")
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(m, x)| (*m, x * c)).collect();
        MultiPoly::from_raw(&self.table, terms, self.den_pow2)
    }

    pub fn scale_i64(&self, c: i64) -> MultiPoly {
        self.scale(&BigInt::from(c))
    }

    /// Multiplies by `2^k` (`k` may be negative).
    pub fn scale_pow2(&self, k: i32) -> MultiPoly {
        if k >= 0 {
            let terms = self.terms.iter().map(|(m, c)| (*m, c << k as usize)).collect();
            MultiPoly::from_raw(&self.table, terms, self.den_pow2)
        } else {
            MultiPoly::from_raw(&self.table, self.terms.clone(), self.den_pow2 + (-k) as u32)
        }
    }

    /// Integer content-free normal form with positive leading coefficient
    /// (under the internal order). Useful for comparing up to a scalar.
    pub fn primitive_part(&self) -> (BigRational, MultiPoly) {
        if self.is_zero() {
            return (BigRational::zero(), self.clone());
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
        }
        if self.terms.last().unwrap().1.is_negative() {
            g = -g;
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c / &g)).collect();
        (
            BigRational::new(g, pow2(self.den_pow2)),
            MultiPoly { table: self.table.clone(), terms, den_pow2: 0 },
        )
    }

    /// Clears the power-of-two denominator, returning `(2^den * self, den)`.
    pub fn clear_denominator(&self) -> (MultiPoly, u32) {
        (MultiPoly { table: self.table.clone(), terms: self.terms.clone(), den_pow2: 0 }, self.den_pow2)
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(var)).max()
    }

    pub fn degree_in_name(&self, name: &str) -> Result<Option<u32>> {
        Ok(self.degree_in(self.table.index(name)?))
    }

    /// Smallest exponent of `var` over all terms (the `var`-adic valuation).
    pub fn valuation_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(var)).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        let n = self.table.len();
        self.terms.iter().map(|(m, _)| m.total_degree(n)).max()
    }

    /// `(min, max)` weighted degree over the terms, `None` for zero.
    pub fn weighted_degree_range(&self) -> Option<(u64, u64)> {
        let w = &self.table.weights;
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    pub fn weighted_degree(&self) -> Option<u64> {
        self.weighted_degree_range().map(|r| r.1)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.weighted_degree_range() {
            None => true,
            Some((lo, hi)) => lo == hi,
        }
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    /// Coefficients with respect to `var`, lowest power first.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = match self.degree_in(var) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut buckets: Vec<Vec<(Mono, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var);
            buckets[e as usize].push((m.with_exp(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut b| {
                b.sort_unstable_by(|a, b| a.0.cmp(&b.0));
                MultiPoly::from_raw(&self.table, b, self.den_pow2)
            })
            .collect()
    }

    /// Leading coefficient in `var`.
    pub fn leading_coefficient_in(&self, var: usize) -> MultiPoly {
        self.coefficients_in(var).pop().unwrap_or_else(|| MultiPoly::zero(&self.table))
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                out.push((m.with_exp(var, e - 1), c * BigInt::from(e)));
            }
        }
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        MultiPoly::from_raw(&self.table, out, self.den_pow2)
    }

    /// Multiplies by `var^k`.
    pub fn shift_var(&self, var: usize, k: u32) -> Result<MultiPoly> {
        let m = Mono::var(var, k);
        let mut out = Vec::with_capacity(self.terms.len());
        for (x, c) in &self.terms {
            out.push((x.mul(m).ok_or(Error::ExponentOverflow(MAX_EXP))?, c.clone()));
        }
        Ok(MultiPoly::from_raw(&self.table, out, self.den_pow2).reduce_rules())
    }

    /// Replaces `var` by `-var`.
    pub fn negate_var(&self, var: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, if m.exp(var) % 2 == 1 { -c } else { c.clone() }))
            .collect();
        MultiPoly::from_raw(&self.table, terms, self.den_pow2)
    }

    /// Re-expresses this polynomial over `target`, matching variables by
    /// name. Every variable actually used must exist in `target`.
    pub fn embed(&self, target: &Arc<VarTable>) -> Result<MultiPoly> {
        let map = self.var_map(target, &[])?;
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut nm = Mono::ONE;
            for (i, j) in map.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    let j = j.ok_or_else(|| Error::UnknownVariable(self.table.names[i].clone()))?;
                    nm = nm.with_exp(j, nm.exp(j) + e);
                }
            }
            out.push((nm, c.clone()));
        }
        let mut acc = Accum::default();
        for (m, c) in out {
            acc.add(m, c);
        }
        Ok(MultiPoly::from_raw(target, acc.into_terms(), self.den_pow2).reduce_rules())
    }

    fn var_map(&self, target: &Arc<VarTable>, skip: &[usize]) -> Result<Vec<Option<usize>>> {
        let mut map = Vec::with_capacity(self.table.len());
        for (i, name) in self.table.names.iter().enumerate() {
            if skip.contains(&i) {
                map.push(None);
                continue;
            }
            let j = target.names.iter().position(|n| n == name);
            if j.is_none() && self.uses_var(i) {
                return Err(Error::UnknownVariable(name.clone()));
            }
            map.push(j);
        }
        Ok(map)
    }

    /// Simultaneous substitution. All bound polynomials share one target
    /// table; unbound variables pass through by name into that table.
    pub fn substitute(&self, bindings: &[(&str, MultiPoly)]) -> Result<MultiPoly> {
        let target = match bindings.first() {
            Some((_, p)) => p.table.clone(),
            None => return Ok(self.clone()),
        };
        for (_, p) in bindings {
            if !(Arc::ptr_eq(&p.table, &target) || *p.table == *target) {
                return Err(Error::TableMismatch("substitution bindings use different tables".into()));
            }
        }
        let mut bound: Vec<(usize, &MultiPoly)> = Vec::with_capacity(bindings.len());
        for (name, p) in bindings {
            bound.push((self.table.index(name)?, p));
        }
        let skip: Vec<usize> = bound.iter().map(|b| b.0).collect();
        let map = self.var_map(&target, &skip)?;

        // Group terms by the exponents of the bound variables so each power
        // product is formed once.
        let mut groups: HashMap<Vec<u32>, Vec<(Mono, BigInt)>> = HashMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = bound.iter().map(|(v, _)| m.exp(*v)).collect();
            let mut nm = Mono::ONE;
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    let e = m.exp(i);
                    if e > 0 {
                        nm = nm.with_exp(*j, nm.exp(*j) + e);
                    }
                }
            }
            groups.entry(key).or_default().push((nm, c.clone()));
        }
        let mut power_cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut keys: Vec<_> = groups.keys().cloned().collect();
        keys.sort();
        let mut acc = MultiPoly::zero(&target);
        for key in keys {
            let mut terms = groups.remove(&key).unwrap();
            let mut a = Accum::default();
            for (m, c) in terms.drain(..) {
                a.add(m, c);
            }
            let mut part = MultiPoly::from_raw(&target, a.into_terms(), self.den_pow2).reduce_rules();
            for (bi, &e) in key.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = match power_cache.get(&(bi, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = bound[bi].1.checked_pow(e)?;
                        power_cache.insert((bi, e), p.clone());
                        p
                    }
                };
                part = part.checked_mul(&pw)?;
            }
            acc = acc.checked_add(&part)?;
        }
        Ok(acc)
    }

    /// Exact evaluation at rational values (keyed by variable name).
    pub fn eval_rational(&self, point: &HashMap<String, BigRational>) -> Result<BigRational> {
        let vals = self.point_values(point, |_| true)?;
        let n = self.table.len();
        let mut cache: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]; n];
        let mut sum = BigInt::zero();
        let mut den_acc = BigInt::one();
        // Sum with a common denominator to avoid repeated gcds.
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for i in 0..n {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                let v = vals[i].as_ref().unwrap();
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap() * v;
                    cache[i].push(next);
                }
                term *= &cache[i][e];
            }
            if term.denom().is_one() && den_acc.is_one() {
                sum += term.numer();
            } else {
                total += term;
            }
        }
        den_acc = pow2(self.den_pow2);
        Ok((total + BigRational::from_integer(sum)) / BigRational::from_integer(den_acc))
    }

    /// Floating-point evaluation.
    pub fn eval_f64(&self, point: &HashMap<String, f64>) -> Result<f64> {
        Ok(self.eval_f64_parts(point)?.0)
    }

    /// Returns `(value, sum of |term|)`; the ratio is a relative residual.
    pub fn eval_f64_parts(&self, point: &HashMap<String, f64>) -> Result<(f64, f64)> {
        let n = self.table.len();
        let mut vals = vec![0.0f64; n];
        for i in 0..n {
            if self.uses_var(i) {
                vals[i] = *point
                    .get(&self.table.names[i])
                    .ok_or_else(|| Error::UnboundVariable(self.table.names[i].clone()))?;
            }
        }
        let scale = 0.5f64.powi(self.den_pow2 as i32);
        let (mut s, mut a) = (0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN) * scale;
            for (i, v) in vals.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t *= v.powi(e as i32);
                }
            }
            s += t;
            a += t.abs();
        }
        Ok((s, a))
    }

    /// Exact evaluation returning `(value, sum of |term|)` for a relative
    /// residual that does not suffer from floating-point cancellation.
    pub fn eval_rational_parts(&self, point: &HashMap<String, BigRational>) -> Result<(BigRational, BigRational)> {
        let vals = self.point_values(point, |_| true)?;
        let n = self.table.len();
        let mut cache: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]; n];
        let mut total = BigRational::zero();
        let mut abs = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for i in 0..n {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                let v = vals[i].as_ref().unwrap();
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap() * v;
                    cache[i].push(next);
                }
                term *= &cache[i][e];
            }
            abs += term.abs();
            total += term;
        }
        let d = BigRational::from_integer(pow2(self.den_pow2));
        Ok((total / &d, abs / d))
    }

    fn point_values(
        &self,
        point: &HashMap<String, BigRational>,
        _filter: impl Fn(usize) -> bool,
    ) -> Result<Vec<Option<BigRational>>> {
        let n = self.table.len();
        let mut vals = vec![None; n];
        for (i, slot) in vals.iter_mut().enumerate() {
            if self.uses_var(i) {
                *slot = Some(
                    point
                        .get(&self.table.names[i])
                        .cloned()
                        .ok_or_else(|| Error::UnboundVariable(self.table.names[i].clone()))?,
                );
            }
        }
        Ok(vals)
    }

    /// Univariate coefficient list in `var` for a polynomial that uses no
    /// other variable, as rationals (lowest power first).
    pub fn univariate_coefficients(&self, var: usize) -> Result<Vec<BigRational>> {
        for (m, _) in &self.terms {
            if !m.with_exp(var, 0).is_one() {
                return Err(Error::InvalidArgument("polynomial is not univariate".into()));
            }
        }
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![BigRational::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            out[m.exp(var) as usize] = BigRational::new(c.clone(), pow2(self.den_pow2));
        }
        Ok(out)
    }

    fn to_inline_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (exps, c)) in self.sorted_canonical().into_iter().enumerate() {
            let coef = format::coefficient_string(&c, self.den_pow2);
            let mono = format::monomial_string(&self.table, &exps);
            if i > 0 {
                s.push(' ');
                if !coef.starts_with('-') {
                    s.push('+');
                }
            }
            if mono.is_empty() {
                s.push_str(&coef);
            } else if coef == "1" {
                s.push_str(&mono);
            } else if coef == "-1" {
                s.push('-');
                s.push_str(&mono);
            } else {
                s.push_str(&coef);
                s.push('*');
                s.push_str(&mono.replace(' ', "*"));
            }
        }
        s
    }

    /// Terms in canonical output order (weighted graded reverse lex,
    /// largest first).
    pub fn sorted_canonical(&self) -> Vec<(Vec<u32>, BigInt)> {
        let n = self.table.len();
        let w = &self.table.weights;
        let mut v: Vec<(Vec<u32>, BigInt, u64)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.exps(n), c.clone(), m.weighted_degree(w)))
            .collect();
        v.sort_by(|a, b| format::grevlex_cmp(&b.0, b.2, &a.0, a.2));
        v.into_iter().map(|(e, c, _)| (e, c)).collect()
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect(concat!("MultiPoly::", stringify!($method)))
            }
        }
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        MultiPoly { table: self.table.clone(), terms, den_pow2: self.den_pow2 }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
