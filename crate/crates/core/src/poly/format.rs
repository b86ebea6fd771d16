//! Canonical text and JSON serialization.
//!
//! Text layout:
//!
//! ```text
//! vars: k16:2 s1:1 s2:2
//! rule: sq^2 = 1 s4
//! 1 k16
//! 1 s1^2
//! -4 s2
//! ```
//!
//! Terms are listed in weighted graded reverse lexicographic order, largest
//! first. Coefficients are reduced fractions `p/2^k` when not integral.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Accum, MultiPoly, Mono, VarTable, MAX_EXP};
use crate::error::{Error, Result};

/// `a` vs `b` in weighted grevlex (`Greater` means `a` comes first).
pub(crate) fn grevlex_cmp(a: &[u32], wa: u64, b: &[u32], wb: u64) -> Ordering {
    match wa.cmp(&wb) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

pub(crate) fn coefficient_string(c: &BigInt, den_pow2: u32) -> String {
    if den_pow2 == 0 {
        return c.to_string();
    }
    let tz = c.trailing_zeros().unwrap_or(0).min(den_pow2 as u64) as u32;
    let num = c >> tz as usize;
    let k = den_pow2 - tz;
    if k == 0 {
        num.to_string()
    } else {
        format!("{}/{}", num, BigInt::one() << k as usize)
    }
}

pub(crate) fn monomial_string(table: &VarTable, exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(table.names[i].clone()),
            _ => parts.push(format!("{}^{}", table.names[i], e)),
        }
    }
    parts.join(" ")
}

fn parse_coefficient(s: &str) -> Result<(BigInt, u32)> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        None => Ok((s.parse::<BigInt>().map_err(|_| bad())?, 0)),
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q <= BigInt::zero() {
                return Err(bad());
            }
            let k = q.trailing_zeros().unwrap_or(0);
            if q != BigInt::one() << k as usize {
                return Err(Error::Parse(format!("denominator of `{s}` is not a power of two")));
            }
            Ok((p, k as u32))
        }
    }
}

fn parse_monomial(table: &VarTable, tokens: &[&str]) -> Result<Vec<u32>> {
    let mut exps = vec![0u32; table.len()];
    for tok in tokens {
        let (name, e) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?),
            None => (*tok, 1),
        };
        let i = table.index(name)?;
        exps[i] += e;
        if exps[i] > MAX_EXP {
            return Err(Error::ExponentOverflow(MAX_EXP));
        }
    }
    Ok(exps)
}

fn parse_terms(table: &Arc<VarTable>, lines: &[&str]) -> Result<MultiPoly> {
    let mut parsed = Vec::with_capacity(lines.len());
    let mut den = 0u32;
    for line in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (first, rest) = tokens.split_first().ok_or_else(|| Error::Parse("empty term".into()))?;
        let (c, k) = parse_coefficient(first)?;
        den = den.max(k);
        parsed.push((parse_monomial(table, rest)?, c, k));
    }
    let mut acc = Accum::default();
    for (exps, c, k) in parsed {
        let m = Mono::from_exps(&exps).ok_or(Error::ExponentOverflow(MAX_EXP))?;
        acc.add(m, c << (den - k) as usize);
    }
    Ok(MultiPoly::from_raw(table, acc.into_terms(), den))
}

fn term_lines(p: &MultiPoly) -> Vec<String> {
    p.sorted_canonical()
        .into_iter()
        .map(|(exps, c)| {
            let coef = coefficient_string(&c, p.den_pow2);
            let mono = monomial_string(&p.table, &exps);
            if mono.is_empty() {
                coef
            } else {
                format!("{coef} {mono}")
            }
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct JsonVar {
    name: String,
    weight: u32,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    c: String,
    e: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct JsonRule {
    var: String,
    den_pow2: u32,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    vars: Vec<JsonVar>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    rules: Vec<JsonRule>,
    den_pow2: u32,
    terms: Vec<JsonTerm>,
}

impl MultiPoly {
    /// Canonical text serialization (ends with a newline).
    pub fn to_text(&self) -> String {
        let t = &self.table;
        let mut out = String::from("vars:");
        for (n, w) in t.names.iter().zip(&t.weights) {
            out.push_str(&format!(" {n}:{w}"));
        }
        out.push('\n');
        for r in &t.rules {
            let repl = MultiPoly { table: t.clone(), terms: r.terms.clone(), den_pow2: r.den_pow2 };
            out.push_str(&format!("rule: {}^2 = {}\n", t.names[r.var], term_lines(&repl).join(" ; ")));
        }
        for line in term_lines(self) {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Parses term lines (separated by newlines or `;`) over an existing
    /// table, e.g. `"1 u3^2 t4^3 ; -4 u2 t4^4"`.
    pub fn parse_in(table: &Arc<VarTable>, body: &str) -> Result<MultiPoly> {
        let terms: Vec<&str> = body.split(['\n', ';']).map(str::trim).filter(|l| !l.is_empty()).collect();
        Ok(parse_terms(table, &terms)?.reduce_rules())
    }

    pub fn from_text(text: &str) -> Result<MultiPoly> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let specs = header
            .strip_prefix("vars:")
            .ok_or_else(|| Error::Parse("header must start with `vars:`".into()))?;
        let mut vars = Vec::new();
        for tok in specs.split_whitespace() {
            let (n, w) = tok.split_once(':').ok_or_else(|| Error::Parse(format!("bad variable `{tok}`")))?;
            let w: u32 = w.parse().map_err(|_| Error::Parse(format!("bad weight in `{tok}`")))?;
            vars.push((n.to_string(), w));
        }
        let mut table = VarTable::from_owned(vars)?;
        let rest: Vec<&str> = lines.collect();
        let mut body = Vec::new();
        for line in rest {
            if let Some(rule) = line.strip_prefix("rule:") {
                let (lhs, rhs) = rule.split_once('=').ok_or_else(|| Error::Parse(format!("bad rule `{line}`")))?;
                let var = lhs.trim().strip_suffix("^2").ok_or_else(|| Error::Parse(format!("bad rule `{line}`")))?;
                let base = VarTable::from_owned(
                    table.names.iter().cloned().zip(table.weights.iter().cloned()).collect(),
                )?;
                let terms: Vec<&str> = rhs.split(';').map(str::trim).collect();
                let repl = parse_terms(&base, &terms)?;
                table = table.with_square_rule(var.trim(), &repl)?;
            } else {
                body.push(line);
            }
        }
        Ok(parse_terms(&table, &body)?.reduce_rules())
    }

    pub fn to_json(&self) -> String {
        let t = &self.table;
        let json_terms = |p: &MultiPoly| -> Vec<JsonTerm> {
            p.sorted_canonical()
                .into_iter()
                .map(|(e, c)| JsonTerm { c: c.to_string(), e })
                .collect()
        };
        let rules = t
            .rules
            .iter()
            .map(|r| {
                let repl = MultiPoly { table: t.clone(), terms: r.terms.clone(), den_pow2: r.den_pow2 };
                JsonRule { var: t.names[r.var].clone(), den_pow2: r.den_pow2, terms: json_terms(&repl) }
            })
            .collect();
        let doc = JsonPoly {
            vars: t.names.iter().zip(&t.weights).map(|(n, w)| JsonVar { name: n.clone(), weight: *w }).collect(),
            rules,
            den_pow2: self.den_pow2,
            terms: json_terms(self),
        };
        serde_json::to_string_pretty(&doc).expect("serializing a polynomial cannot fail")
    }

    pub fn from_json(text: &str) -> Result<MultiPoly> {
        let doc: JsonPoly = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let specs: Vec<(String, u32)> = doc.vars.iter().map(|v| (v.name.clone(), v.weight)).collect();
        let base = VarTable::from_owned(specs)?;
        let build = |table: &Arc<VarTable>, terms: &[JsonTerm], den: u32| -> Result<MultiPoly> {
            let mut v = Vec::with_capacity(terms.len());
            for t in terms {
                let c: BigInt = t.c.parse().map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.c)))?;
                v.push((t.e.clone(), c));
            }
            MultiPoly::from_terms(table, v, den)
        };
        let mut table = base.clone();
        for r in &doc.rules {
            let repl = build(&base, &r.terms, r.den_pow2)?;
            table = table.with_square_rule(&r.var, &repl)?;
        }
        build(&table, &doc.terms, doc.den_pow2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> MultiPoly {
        let t = VarTable::new(&[("k16", 2), ("s1", 1), ("s2", 2)]).unwrap();
        let k = MultiPoly::var(&t, "k16").unwrap();
        let s1 = MultiPoly::var(&t, "s1").unwrap();
        let s2 = MultiPoly::var(&t, "s2").unwrap();
        &k - s2.scale_i64(4) + s1.pow(2).scale_pow2(-2) + MultiPoly::constant(&t, 3)
    }

    #[test]
    fn text_round_trip() {
        let p = sample();
        let text = p.to_text();
        assert_eq!(
            text,
            "vars: k16:2 s1:1 s2:2\n1 k16\n1/4 s1^2\n-4 s2\n3\n"
        );
        assert_eq!(MultiPoly::from_text(&text).unwrap(), p);
    }

    #[test]
    fn json_round_trip() {
        let p = sample();
        let q = MultiPoly::from_json(&p.to_json()).unwrap();
        assert_eq!(q, p);
        assert_eq!(q.to_json(), p.to_json());
    }

    #[test]
    fn rules_round_trip() {
        let base = VarTable::new(&[("sq", 2), ("s4", 4)]).unwrap();
        let s4 = MultiPoly::var(&base, "s4").unwrap();
        let t = base.with_square_rule("sq", &s4).unwrap();
        let p = MultiPoly::var(&t, "sq").unwrap().scale_i64(-8) + MultiPoly::var(&t, "s4").unwrap();
        let text = p.to_text();
        assert!(text.contains("rule: sq^2 = 1 s4"));
        let q = MultiPoly::from_text(&text).unwrap();
        assert_eq!(q, p);
        assert_eq!(q.table().rules().len(), 1);
        assert_eq!(MultiPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn rejects_non_dyadic() {
        assert!(MultiPoly::from_text("vars: x:1\n1/3 x\n").is_err());
    }
}
