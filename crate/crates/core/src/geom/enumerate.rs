//! All areas of inscribed polygons with prescribed side lengths.
//!
//! On the branch `r > max a_j / 2` every quotient is `exp(2 i e_j theta_j)`
//! with `sin theta_j = a_j / 2r`, and the polygon closes when the signed sum
//! of the `theta_j` hits a multiple of `pi` (cyclic) or an odd multiple of
//! `pi / 2` (semicyclic). On the branch `r < min a_j / 2` the quotients are
//! negative reals `-exp(e_j L_j)` and closing needs `sum e_j L_j = 0`.
//! Each sign pattern with `e_1 = +1` is scanned on a grid and every bracket
//! is bisected.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Family, PolygonConfig};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "r>max")]
    Outer,
    #[serde(rename = "r<min")]
    Inner,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Outer => "r>max",
            Branch::Inner => "r<min",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AreaSolution {
    pub sides: Vec<f64>,
    pub r: f64,
    /// `[re, im]` pairs.
    pub q: Vec<[f64; 2]>,
    #[serde(rename = "K2")]
    pub k2: f64,
    pub parity: i32,
    pub branch: Branch,
}

impl AreaSolution {
    pub fn quotients(&self) -> Vec<Complex64> {
        self.q.iter().map(|p| Complex64::new(p[0], p[1])).collect()
    }

    pub fn config(&self, family: Family) -> Result<PolygonConfig> {
        PolygonConfig::new(self.r, self.quotients(), family.delta())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Bisection stops once the bracket on `r` is narrower than `tol * r`.
    pub tol: f64,
    /// Grid points per branch scan.
    pub grid: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { tol: 1e-12, grid: 4000 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Enumeration {
    pub solutions: Vec<AreaSolution>,
    /// Per-pattern notes: skipped degenerate patterns, merged duplicates.
    pub diagnostics: Vec<String>,
}

struct Root {
    r: f64,
    q: Vec<Complex64>,
    branch: Branch,
}

fn outer_quotients(sides: &[f64], signs: &[f64], r: f64) -> Vec<Complex64> {
    sides
        .iter()
        .zip(signs)
        .map(|(a, e)| Complex64::from_polar(1.0, 2.0 * e * (a / (2.0 * r)).min(1.0).asin()))
        .collect()
}

fn inner_quotients(sides: &[f64], signs: &[f64], r: f64) -> Vec<Complex64> {
    sides
        .iter()
        .zip(signs)
        .map(|(a, e)| {
            let c = (a * a / (2.0 * r * r) - 1.0).max(1.0);
            Complex64::new(-(e * c.acosh()).exp(), 0.0)
        })
        .collect()
}

/// Scans `f` over the increasing parameter grid and bisects every sign
/// change of `f - level`. Brackets where both ends are within `noise(p)` of
/// the level are rounding noise on a flat stretch and are skipped.
fn scan<F: Fn(f64) -> f64, N: Fn(f64) -> f64>(f: &F, noise: &N, params: &[f64], levels: &[f64], tol: f64) -> Vec<f64> {
    let vals: Vec<f64> = params.iter().map(|&p| f(p)).collect();
    let floor: Vec<f64> = params.iter().map(|&p| noise(p)).collect();
    let mut out = Vec::new();
    for &level in levels {
        for k in 0..params.len() - 1 {
            let (fa, fb) = (vals[k] - level, vals[k + 1] - level);
            if floor[k] > 0.0 && fa.abs() <= floor[k] && fb.abs() <= floor[k + 1] {
                continue;
            }
            // Hits at a grid point count once, from the left bracket; the
            // first point gets a little slack for diameters (theta = pi/2).
            if fa == 0.0 || (k == 0 && fa.abs() < 1e-12) {
                out.push(params[k]);
                continue;
            }
            if fa * fb >= 0.0 {
                continue;
            }
            let (mut lo, mut hi, mut flo) = (params[k], params[k + 1], fa);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi || (hi - lo) <= tol * mid.abs().max(tol) {
                    break;
                }
                let fm = f(mid) - level;
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
    }
    out
}

fn outer_roots(sides: &[f64], signs: &[f64], family: Family, opts: &EnumerateOptions) -> Vec<Root> {
    let amax = sides.iter().cloned().fold(0.0, f64::max);
    let r0 = amax / 2.0;
    // r = r0 / (1 - u^2) removes the square-root singularity at r = r0.
    let r_of = |u: f64| r0 / (1.0 - u * u);
    let angle_sum = |u: f64| {
        let t = 1.0 - u * u;
        sides.iter().zip(signs).map(|(a, e)| e * (a / amax * t).min(1.0).asin()).sum::<f64>()
    };
    let n = opts.grid;
    let params: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
    let bound = sides.len() as f64 * FRAC_PI_2;
    let mut levels = Vec::new();
    match family {
        Family::Cyclic => {
            let kmax = (bound / PI).floor() as i64;
            for k in -kmax..=kmax {
                levels.push(k as f64 * PI);
            }
        }
        Family::Semicyclic => {
            let kmax = (bound / FRAC_PI_2).ceil() as i64;
            for k in -kmax..=kmax {
                if k % 2 != 0 {
                    levels.push(k as f64 * FRAC_PI_2);
                }
            }
        }
    }
    // Patterns whose angle sum vanishes identically give only flat polygons.
    if params.iter().all(|&u| angle_sum(u).abs() < 1e-12) {
        return Vec::new();
    }
    let tol_u = opts.tol * 1e-2;
    scan(&angle_sum, &|_| 0.0, &params, &levels, tol_u)
        .into_iter()
        .map(|u| {
            let r = r_of(u);
            Root { r, q: outer_quotients(sides, signs, r), branch: Branch::Outer }
        })
        .collect()
}

fn inner_roots(sides: &[f64], signs: &[f64], opts: &EnumerateOptions) -> Vec<Root> {
    let amin = sides.iter().cloned().fold(f64::INFINITY, f64::min);
    let r0 = amin / 2.0;
    let s1 = 0.99f64.sqrt();
    // r = r0 (1 - s^2) down to r0 / 100, then geometric.
    let r_of = move |s: f64| {
        if s <= s1 {
            r0 * (1.0 - s * s)
        } else {
            0.01 * r0 * (-(s - s1) * 10.0).exp()
        }
    };
    let log_sum = |s: f64| {
        let r = r_of(s);
        sides
            .iter()
            .zip(signs)
            .map(|(a, e)| e * (a * a / (2.0 * r * r) - 1.0).max(1.0).acosh())
            .sum::<f64>()
    };
    let noise = |s: f64| {
        let r = r_of(s);
        1e-10 * sides.iter().map(|a| (a * a / (2.0 * r * r) - 1.0).max(1.0).acosh()).sum::<f64>()
    };
    let n = opts.grid;
    let end = s1 + 6.0;
    let params: Vec<f64> = (0..=n).map(|k| end * k as f64 / n as f64).collect();
    scan(&log_sum, &noise, &params, &[0.0], opts.tol * 1e-2)
        .into_iter()
        .filter(|&s| s > 0.0)
        .map(|s| {
            let r = r_of(s);
            Root { r, q: inner_quotients(sides, signs, r), branch: Branch::Inner }
        })
        .collect()
}

fn same_multiset(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let mut used = vec![false; b.len()];
    for x in a {
        let hit = b.iter().enumerate().position(|(j, y)| !used[j] && (x - y).norm() <= tol);
        match hit {
            Some(j) => used[j] = true,
            None => return false,
        }
    }
    true
}

/// All areas of polygons with the given side lengths, up to reflection.
pub fn enumerate_areas(sides: &[f64], family: Family, opts: &EnumerateOptions) -> Result<Enumeration> {
    let n = sides.len();
    let min_n = if family == Family::Cyclic { 3 } else { 2 };
    if n < min_n || n > 16 {
        return Err(Error::InvalidArgument(format!("need {min_n}..16 sides, got {n}")));
    }
    if sides.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
        return Err(Error::InvalidArgument("side lengths must be positive".into()));
    }
    let delta = family.delta();
    let inner = (if n % 2 == 0 { 1 } else { -1 }) == delta;
    let patterns: Vec<Vec<f64>> = (0..1u32 << (n - 1))
        .map(|bits| {
            (0..n).map(|j| if j > 0 && bits >> (j - 1) & 1 == 1 { -1.0 } else { 1.0 }).collect()
        })
        .collect();
    let mut found: Vec<(usize, Root)> = patterns
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, signs)| {
            let mut roots = outer_roots(sides, signs, family, opts);
            if inner {
                roots.extend(inner_roots(sides, signs, opts));
            }
            roots.into_iter().map(move |r| (i, r))
        })
        .collect();
    found.sort_by_key(|(i, _)| *i);

    let mut out = Enumeration::default();
    for (i, root) in found {
        let config = match PolygonConfig::new(root.r, root.q.clone(), delta) {
            Ok(c) => c,
            Err(e) => {
                out.diagnostics.push(format!("pattern {i}: rejected root r={}: {e}", root.r));
                continue;
            }
        };
        let k2 = config.k2();
        let sol = AreaSolution {
            sides: sides.to_vec(),
            r: root.r,
            q: root.q.iter().map(|z| [z.re, z.im]).collect(),
            k2,
            parity: config.parity(),
            branch: root.branch,
        };
        let inv: Vec<Complex64> = root.q.iter().map(|z| z.inv()).collect();
        let dup = out.solutions.iter().any(|s| {
            let sq = s.quotients();
            (s.k2 - k2).abs() <= 1e-8 * (1.0 + k2.abs())
                && (same_multiset(&sq, &root.q, 1e-8) || same_multiset(&sq, &inv, 1e-8))
        });
        if dup {
            out.diagnostics.push(format!("pattern {i}: duplicate of an earlier solution (K2={k2:.12e})"));
            continue;
        }
        out.solutions.push(sol);
    }
    out.solutions.sort_by(|a, b| {
        a.k2.total_cmp(&b.k2).then_with(|| {
            let ka: Vec<(f64, f64)> = a.q.iter().map(|p| (p[0], p[1])).collect();
            let kb: Vec<(f64, f64)> = b.q.iter().map(|p| (p[0], p[1])).collect();
            ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    Ok(out)
}

/// Distinct `K^2` values up to relative tolerance, ascending.
pub fn distinct_k2(solutions: &[AreaSolution], tol: f64) -> Vec<f64> {
    let mut v: Vec<f64> = solutions.iter().map(|s| s.k2).collect();
    v.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    for k in v {
        match out.last() {
            Some(&last) if (k - last).abs() <= tol * (1.0 + k.abs().max(last.abs())) => {}
            _ => out.push(k),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_345() {
        let e = enumerate_areas(&[3.0, 4.0, 5.0], Family::Cyclic, &EnumerateOptions::default()).unwrap();
        assert_eq!(e.solutions.len(), 1);
        let s = &e.solutions[0];
        assert!((s.k2 - 36.0).abs() < 1e-9);
        assert!((s.r - 2.5).abs() < 1e-9);
    }

    #[test]
    fn right_triangle_on_diameter() {
        let e = enumerate_areas(&[3.0, 4.0], Family::Semicyclic, &EnumerateOptions::default()).unwrap();
        assert_eq!(e.solutions.len(), 1);
        assert!((e.solutions[0].k2 - 36.0).abs() < 1e-9);
    }

    #[test]
    fn regular_pentagon_max_area() {
        let e = enumerate_areas(&[1.0; 5], Family::Cyclic, &EnumerateOptions::default()).unwrap();
        let kmax = e.solutions.iter().map(|s| s.k2).fold(0.0, f64::max).sqrt();
        let want = 0.25 * (25.0 + 10.0 * 5f64.sqrt()).sqrt();
        assert!((kmax - want).abs() < 1e-9, "{kmax} vs {want}");
    }

    #[test]
    fn rejects_bad_sides() {
        assert!(enumerate_areas(&[1.0, -1.0, 1.0], Family::Cyclic, &EnumerateOptions::default()).is_err());
        assert!(enumerate_areas(&[1.0, 1.0], Family::Cyclic, &EnumerateOptions::default()).is_err());
    }
}
