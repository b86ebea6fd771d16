use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::geom::{enumerate_areas, mobius_polynomial, mobius_specialized, AreaSolution, EnumerateOptions, Family};
use crate::heron::alpha7::{alpha7_specialized, SigmaSet};
use crate::heron::pipelines::{alpha_cyclic_small, alpha_semicyclic, config_residual, named_polynomial, Branch};
use crate::poly::MultiPoly;

use super::{CheckRecord, RunReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidArgument(format!("unknown format `{s}` (text, json)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExpandArgs {
    pub family: String,
    pub n: usize,
    pub parity: i32,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// Supported `(family, n, parity)` combinations, one per line.
pub fn expand_matrix() -> &'static str {
    "alpha       n = 3..6\n\
     beta        n = 4, 6        parity +1 | -1\n\
     alpha_semi  n = 2..6\n\
     beta_semi   n = 4, 6        parity +1 | -1\n"
}

fn supported(family: &str, n: usize, parity: i32) -> bool {
    match family {
        "alpha" => (3..=6).contains(&n),
        "beta" | "beta_semi" => (n == 4 || n == 6) && parity.abs() == 1,
        "alpha_semi" => (2..=6).contains(&n),
        _ => false,
    }
}

/// Builds a named polynomial and returns its serialization alongside the
/// report. With `out` set the serialization is also written there.
pub fn cmd_expand(args: &ExpandArgs, command: Vec<String>) -> Result<(RunReport, String)> {
    if !supported(&args.family, args.n, args.parity) {
        return Err(Error::InvalidArgument(format!(
            "unsupported combination family={} n={} parity={}; supported:\n{}",
            args.family,
            args.n,
            args.parity,
            expand_matrix()
        )));
    }
    let p = named_polynomial(&args.family, args.n, args.parity)?;
    let body = match args.format {
        Format::Text => p.to_text(),
        Format::Json => p.to_json() + "\n",
    };
    let mut report = RunReport::new(command, 0);
    let degree = p.degree_in_name("k16")?.unwrap_or(0);
    let lead = p.leading_coefficient_in(p.table().index("k16")?);
    let monic = lead.constant_value().map_or(false, |c| c == num_rational::BigRational::from_integer(1.into()));
    report.checks.push(CheckRecord::new(
        format!("expand/{}/{}", args.family, args.n),
        monic && p.is_integral(),
        None,
        format!(
            "terms {}, weighted degree {}, degree {} in k16, monic {}",
            p.num_terms(),
            p.weighted_degree().unwrap_or(0),
            degree,
            monic
        ),
    ));
    if let Some(path) = &args.out {
        std::fs::write(path, &body).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
        report.outputs.push(path.display().to_string());
    }
    report.finish();
    Ok((report, body))
}

#[derive(Clone, Debug)]
pub struct AreasArgs {
    pub sides: Vec<f64>,
    pub family: Family,
    /// Relative residual accepted from the cross-check.
    pub tol: f64,
    pub format: Format,
}

/// The polynomial used to cross-check a solution, if one is available.
enum Checker {
    Config(MultiPoly),
    /// `k16` polynomials of `alpha_7` or `beta_8` / `beta_8*` by parity.
    Specialized(Vec<(i32, MultiPoly)>),
    None(String),
}

fn integer_squares(sides: &[f64]) -> Option<Vec<i64>> {
    sides
        .iter()
        .map(|a| {
            let x = a * a;
            let k = x.round();
            ((x - k).abs() <= 1e-9 * x.max(1.0) && k >= 1.0 && k < 1e12).then_some(k as i64)
        })
        .collect()
}

fn checker(sides: &[f64], family: Family) -> Result<Checker> {
    let n = sides.len();
    Ok(match (family, n) {
        (Family::Cyclic, 3..=6) => Checker::Config(alpha_cyclic_small(n, if n % 2 == 0 { 1 } else { 0 })?),
        (Family::Semicyclic, 2..=6) => {
            Checker::Config(alpha_semicyclic(n, if n == 4 || n == 6 { Branch::Plus } else { Branch::Full })?)
        }
        (Family::Cyclic, 7 | 8) => {
            let Some(sq) = integer_squares(sides) else {
                return Ok(Checker::None("squared sides are not integers".into()));
            };
            let parities: &[i32] = if n == 7 { &[0] } else { &[1, -1] };
            let mut polys = Vec::new();
            for &eps in parities {
                let sigma_set = match SigmaSet::from_squared_sides(&sq, eps) {
                    Ok(s) => s,
                    Err(e) => return Ok(Checker::None(e.to_string())),
                };
                polys.push((eps, alpha7_specialized(&sigma_set)?.poly));
            }
            Checker::Specialized(polys)
        }
        _ => Checker::None(format!("no area polynomial for n = {n}")),
    })
}

fn residual(checker: &Checker, sol: &AreaSolution, family: Family) -> Result<Option<f64>> {
    match checker {
        Checker::Config(p) => Ok(Some(config_residual(p, &sol.config(family)?)?)),
        Checker::Specialized(polys) => {
            let eps = if sol.sides.len() == 7 { 0 } else { sol.parity };
            let Some((_, p)) = polys.iter().find(|(e, _)| *e == eps) else {
                return Ok(None);
            };
            let point = [("k16".to_string(), 16.0 * sol.k2)].into_iter().collect();
            let (v, s) = p.eval_f64_parts(&point)?;
            Ok(Some(if s == 0.0 { v.abs() } else { v.abs() / s }))
        }
        Checker::None(_) => Ok(None),
    }
}

fn sig9(x: f64) -> String {
    format!("{x:>16.8e}")
}

/// Enumerates the areas for the given sides and checks every `16 K^2`
/// against the area polynomial when one is available.
pub fn cmd_areas(args: &AreasArgs, command: Vec<String>) -> Result<(RunReport, String)> {
    if args.sides.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
        return Err(Error::InvalidArgument("side lengths must be positive".into()));
    }
    let en = enumerate_areas(&args.sides, args.family, &EnumerateOptions::default())?;
    let chk = checker(&args.sides, args.family)?;
    let mut residuals = Vec::with_capacity(en.solutions.len());
    for sol in &en.solutions {
        residuals.push(residual(&chk, sol, args.family)?);
    }
    let sides_text: Vec<String> = args.sides.iter().map(|a| a.to_string()).collect();
    let body = match args.format {
        Format::Json => serde_json::to_string_pretty(&en.solutions).expect("solutions serialize") + "\n",
        Format::Text => {
            let mut out = format!(
                "# family {}, n {}, sides {}, {} solutions\n",
                args.family.name(),
                args.sides.len(),
                sides_text.join(","),
                en.solutions.len()
            );
            out.push_str(&format!(
                "{:>4} {:>16} {:>16} {:>16} {:>6} {:>6} {:>10}\n",
                "idx", "K2", "K", "r", "parity", "branch", "residual"
            ));
            for (i, (sol, res)) in en.solutions.iter().zip(&residuals).enumerate() {
                let res = res.map(|r| format!("{r:.2e}")).unwrap_or_else(|| "-".into());
                out.push_str(&format!(
                    "{:>4} {} {} {} {:>6} {:>6} {:>10}\n",
                    i + 1,
                    sig9(sol.k2),
                    sig9(sol.k2.max(0.0).sqrt()),
                    sig9(sol.r),
                    if sol.parity == 0 { "0".to_string() } else { format!("{:+}", sol.parity) },
                    sol.branch.label(),
                    res
                ));
            }
            out
        }
    };
    let mut report = RunReport::new(command, 0);
    let checked: Vec<f64> = residuals.iter().flatten().copied().collect();
    let name = format!("areas/{}/n={}", args.family.name(), args.sides.len());
    let record = match &chk {
        Checker::None(why) => {
            let mut r = CheckRecord::new(name, true, None, format!("{} solutions, not cross-checked: {why}", en.solutions.len()));
            r.status = super::Status::Skipped;
            r
        }
        _ => {
            let worst = checked.iter().copied().fold(0.0, f64::max);
            let bad = checked.iter().filter(|r| !(**r < args.tol)).count();
            CheckRecord::new(
                name,
                bad == 0 && checked.len() == en.solutions.len(),
                Some(worst),
                format!("{} solutions, {} checked, {} above {:.0e}", en.solutions.len(), checked.len(), bad, args.tol),
            )
        }
    };
    report.checks.push(record);
    report.finish();
    Ok((report, body))
}

#[derive(Clone, Debug)]
pub struct MobiusArgs {
    pub n: Option<usize>,
    pub family: Family,
    /// Integer side lengths for the specialized product.
    pub sides: Option<Vec<i64>>,
}

/// `M` or `M'` in canonical text, symbolic in the side lengths or at the
/// given integer sides.
pub fn cmd_mobius(args: &MobiusArgs, command: Vec<String>) -> Result<(RunReport, String)> {
    let m = match (&args.sides, args.n) {
        (Some(s), n) => {
            if n.is_some_and(|n| n != s.len()) {
                return Err(Error::InvalidArgument("--n disagrees with the number of sides".into()));
            }
            mobius_specialized(s, args.family)?
        }
        (None, Some(n)) => mobius_polynomial(n, args.family)?,
        (None, None) => return Err(Error::InvalidArgument("give --n or --sides".into())),
    };
    let mut report = RunReport::new(command, 0);
    report.checks.push(CheckRecord::new(
        format!("mobius/{}/n={}", args.family.name(), m.n),
        true,
        None,
        format!("degree {} in r2 after removing r2^{}, {} terms", m.degree_in_r2(), m.stripped, m.poly.num_terms()),
    ));
    report.finish();
    Ok((report, m.poly.to_text()))
}
