//! Numeric witness that a configuration satisfies the `t`/`u` recursion and
//! the factorization of `P_n` / `P'_n`.

use num_complex::Complex64;
use serde::Serialize;

use super::tu::{half_m, last_index, tu_recursion};
use crate::error::{Error, Result};
use crate::geom::{Family, PolygonConfig};
use crate::symgen::{de_coeffs, elementary_symmetric};

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub n: usize,
    pub family: Family,
    pub parity: i32,
    /// Largest relative gap between recursive and closed-form `t_j`, `j <= m`.
    pub t_discrepancy: f64,
    /// Largest relative gap between the coefficients of `P_n` and the
    /// claimed product.
    pub p_discrepancy: f64,
    /// `|u_2 + 4 K^2|`, relative.
    pub u2_error: f64,
    /// `|t_n|` for odd semicyclic `n`.
    pub tn: Option<f64>,
    pub pass: bool,
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn factorization_witness(cfg: &PolygonConfig, tol: f64) -> Result<WitnessReport> {
    cfg.validate()?;
    let n = cfg.n();
    let family = if cfg.delta == 1 { Family::Cyclic } else { Family::Semicyclic };
    if family == Family::Cyclic && n < 3 || n < 2 {
        return Err(Error::InvalidArgument(format!("witness needs more sides, got {n}")));
    }
    let m = half_m(n);
    let last = last_index(n, family);
    let r2 = Complex64::new(cfg.r * cfg.r, 0.0);
    let de = de_coeffs(&cfg.tau());
    let (d, e) = (&de.d, &de.e);
    let get = |v: &Vec<Complex64>, k: usize| v.get(k).copied().unwrap_or_default();
    let sigma: Vec<Complex64> = elementary_symmetric(&cfg.squared_sides_complex());

    let r2j = |j: usize| r2.powu(j as u32);
    let mut u = vec![Complex64::default(); m + 1];
    for (j, uj) in u.iter_mut().enumerate().skip(2) {
        let mut s = Complex64::default();
        for i in 1..j {
            s += match family {
                Family::Cyclic => (get(d, i) * 0.25 - get(d, i - 1)) * get(d, j - i),
                Family::Semicyclic => get(e, i) * get(e, j - i) * 0.25,
            };
        }
        *uj = s * r2j(j);
    }
    let parity = match family {
        Family::Cyclic => cfg.crossing_parity()?,
        Family::Semicyclic => cfg.semicyclic_parity()?,
    };
    let (extra, eps) = match family {
        Family::Cyclic if n % 2 == 0 => (sigma[n].sqrt(), parity),
        Family::Cyclic => (Complex64::default(), 0),
        Family::Semicyclic => (r2, 0),
    };
    let t = tu_recursion(family, n, &sigma, &u, &extra, eps);

    let scale = 1.0 + t.iter().chain(&u).map(|z| z.norm()).fold(0.0, f64::max);
    let mut t_gap: f64 = 0.0;
    for j in 0..=m {
        let direct = -match family {
            Family::Cyclic => get(e, j),
            Family::Semicyclic => get(d, j),
        } * r2j(j);
        t_gap = t_gap.max((t[j] - direct).norm() / scale);
    }

    let pn: Vec<Complex64> = (2..=last).map(|j| if j <= m { u[j] } else { t[j] }).collect();
    // z^-1 D(r^2 z) or E(r^2 z) / 2z, lowest coefficient first
    let base: Vec<Complex64> = match family {
        Family::Cyclic => (1..d.len()).map(|k| d[k] * r2j(k)).collect(),
        Family::Semicyclic => (1..e.len()).map(|k| e[k] * r2j(k) * 0.5).collect(),
    };
    let sq = if base.is_empty() { vec![Complex64::default()] } else { poly_mul(&base, &base) };
    let product = match family {
        Family::Cyclic => poly_mul(&[Complex64::new(0.25, 0.0), -r2], &sq),
        Family::Semicyclic => sq,
    };
    let len = pn.len().max(product.len());
    let mut p_gap: f64 = 0.0;
    for k in 0..len {
        let a = pn.get(k).copied().unwrap_or_default();
        let b = product.get(k).copied().unwrap_or_default();
        p_gap = p_gap.max((a - b).norm() / scale);
    }

    let k16 = cfg.sixteen_k2();
    let u2 = if m >= 2 { u[2] } else { t[2] };
    let u2_error = (u2 + k16 / 4.0).norm() / (1.0 + k16.abs());
    let tn = (family == Family::Semicyclic && n % 2 == 1).then(|| t[n].norm() / scale);
    let pass = t_gap < tol && p_gap < tol && u2_error < tol && tn.map_or(true, |x| x < tol);
    Ok(WitnessReport { n, family, parity, t_discrepancy: t_gap, p_discrepancy: p_gap, u2_error, tn, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_configurations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 3..=9 {
            for delta in [1, -1] {
                for _ in 0..10 {
                    let cfg = PolygonConfig::random(&mut rng, n, delta);
                    let w = factorization_witness(&cfg, 1e-9).unwrap();
                    assert!(w.pass, "n = {n}, delta = {delta}: {w:?}");
                }
            }
        }
    }

    #[test]
    fn semicyclic_pair_of_legs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = PolygonConfig::random(&mut rng, 2, -1);
        assert!(factorization_witness(&cfg, 1e-9).unwrap().pass);
    }
}
