//! Area polynomials for cyclic `n <= 6` and semicyclic `n <= 6`.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::One;

use super::tu::{build_tu, u2_to_k16, TUSystem};
use crate::error::{Error, Result};
use crate::geom::{Family, PolygonConfig};
use crate::poly::{MultiPoly, UniView, VarTable};

/// Which square-root branch of a semicyclic area polynomial to return.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
    Full,
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Branch::Plus),
            "minus" | "-" => Ok(Branch::Minus),
            "full" => Ok(Branch::Full),
            _ => Err(Error::InvalidArgument(format!("unknown branch {s:?}"))),
        }
    }
}

/// `a0 + a1 z + a2 z^2 + a3 z^3` discriminant.
pub fn cubic_discriminant(a0: &MultiPoly, a1: &MultiPoly, a2: &MultiPoly, a3: &MultiPoly) -> MultiPoly {
    let t1 = (a1 * a2).pow(2);
    let t2 = (a3 * &a1.pow(3)).scale_i64(-4);
    let t3 = (&a2.pow(3) * a0).scale_i64(-4);
    let t4 = (&a3.pow(2) * &a0.pow(2)).scale_i64(-27);
    let t5 = (&(a3 * a2) * &(a1 * a0)).scale_i64(18);
    t1 + t2 + t3 + t4 + t5
}

/// Output table `k16, [extra], s1..sn`; `extra` is a name, weight and
/// optional square rule `extra^2 = rule(k16, s)`.
fn output_table(n: usize, extra: Option<(&str, u32)>) -> Result<Arc<VarTable>> {
    let mut specs: Vec<(String, u32)> = vec![("k16".into(), 2)];
    if let Some((name, w)) = extra {
        specs.push((name.into(), w));
    }
    for i in 1..=n {
        specs.push((format!("s{i}"), i as u32));
    }
    VarTable::from_owned(specs)
}

fn with_rule(table: &Arc<VarTable>, var: &str, body: &str) -> Result<Arc<VarTable>> {
    let rhs = MultiPoly::parse_in(table, body)?;
    table.with_square_rule(var, &rhs)
}

/// Checks integrality, monicity in `k16`, degree and homogeneity.
fn check_output(p: &MultiPoly, degree: u32, what: &str) -> Result<()> {
    if !p.is_integral() {
        return Err(Error::PipelineIntegrity(format!("{what}: non-integral coefficients")));
    }
    let k = p.table().index("k16")?;
    let d = p.degree_in(k).unwrap_or(0);
    if d != degree {
        return Err(Error::PipelineIntegrity(format!("{what}: degree {d} in k16, expected {degree}")));
    }
    let lc = p.leading_coefficient_in(k);
    if lc.constant_value() != Some(One::one()) {
        return Err(Error::PipelineIntegrity(format!("{what}: not monic in k16")));
    }
    if !p.is_homogeneous() || p.weighted_degree() != Some(2 * degree as u64) {
        return Err(Error::PipelineIntegrity(format!("{what}: not homogeneous of weight {}", 2 * degree)));
    }
    Ok(())
}

fn cyclic_target(n: usize) -> Result<Arc<VarTable>> {
    if n % 2 == 0 {
        let t = output_table(n, Some(("sq", (n / 2) as u32)))?;
        with_rule(&t, "sq", &format!("1 s{n}"))
    } else {
        output_table(n, None)
    }
}

/// `alpha_3`, `alpha_4` (`beta_4`, `beta_4*`), `alpha_5`, `beta_6`, `beta_6*`
/// over `k16, [sq], s1..sn` where `k16 = 16 K^2` and `sq^2 = s_n`.
pub fn alpha_cyclic_small(n: usize, eps: i32) -> Result<MultiPoly> {
    if !(3..=6).contains(&n) {
        return Err(Error::InvalidArgument(format!("cyclic pipeline covers n = 3..6, got {n}")));
    }
    let sys = build_tu(n, Family::Cyclic, eps)?;
    let target = cyclic_target(n)?;
    let k16 = MultiPoly::var(&target, "k16")?;
    if n <= 4 {
        // m = 1: P_n(z) = t2 + t3 z with t2 = u2 = -k16/4.
        let out = k16 + u2_to_k16(&sys.t[2], &target)?.scale_i64(4);
        check_output(&out, 1, "cyclic n <= 4")?;
        return Ok(out);
    }
    let u2 = &sys.u[2];
    let disc = cubic_discriminant(u2, &sys.t[3], &sys.t[4], &sys.t[5]).scale_pow2(18);
    let out = u2_to_k16(&disc, &target)?;
    check_output(&out, 7, &format!("cyclic n = {n}"))?;
    Ok(out)
}

/// `alpha_n` for cyclic `n` with both parities multiplied together when `n`
/// is even, so no square root remains.
pub fn alpha_cyclic_full(n: usize) -> Result<MultiPoly> {
    if n % 2 == 1 {
        return alpha_cyclic_small(n, 0);
    }
    let p = &alpha_cyclic_small(n, 1)? * &alpha_cyclic_small(n, -1)?;
    let sq = p.table().index("sq")?;
    if p.uses_var(sq) {
        return Err(Error::PipelineIntegrity("square root survived the product".into()));
    }
    p.embed(&output_table(n, None)?)
}

fn semicyclic_target(n: usize, with_w: bool) -> Result<Arc<VarTable>> {
    if with_w {
        // w^2 = u2 t_n = -u2 s_n = k16 s_n / 4
        let t = output_table(n, Some(("w", (1 + n / 2) as u32)))?;
        let rhs = MultiPoly::parse_in(&t, &format!("1 k16 s{n}"))?.scale_pow2(-2);
        t.with_square_rule("w", &rhs)
    } else {
        output_table(n, None)
    }
}

/// Adds `w` (weight `1 + n/2`, `w^2 = -u2 s_n`) after `u2` in the table of
/// `sys` and returns it together with the embedded `t`.
fn adjoin_w(sys: &TUSystem) -> Result<(Arc<VarTable>, Vec<MultiPoly>, MultiPoly)> {
    let n = sys.n;
    let mut specs: Vec<(String, u32)> = Vec::new();
    for (name, &wt) in sys.table.names().iter().zip(sys.table.weights()) {
        specs.push((name.clone(), wt));
        if name == "u2" {
            specs.push(("w".into(), (1 + n / 2) as u32));
        }
    }
    if !specs.iter().any(|s| s.0 == "w") {
        specs.insert(0, ("u2".into(), 2));
        specs.insert(1, ("w".into(), (1 + n / 2) as u32));
    }
    let plain = VarTable::from_owned(specs)?;
    let table = with_rule(&plain, "w", &format!("-1 u2 s{n}"))?;
    let t = sys.t.iter().map(|p| p.embed(&table)).collect::<Result<Vec<_>>>()?;
    let w = MultiPoly::var(&table, "w")?;
    Ok((table, t, w))
}

fn pick_branch(plus: MultiPoly, branch: Branch, n: usize, degree: u32) -> Result<MultiPoly> {
    let w = plus.table().index("w")?;
    let minus = plus.negate_var(w);
    match branch {
        Branch::Plus => Ok(plus),
        Branch::Minus => Ok(minus),
        Branch::Full => {
            let p = &plus * &minus;
            if p.uses_var(w) {
                return Err(Error::PipelineIntegrity("w survived the product".into()));
            }
            let out = p.embed(&semicyclic_target(n, false)?)?;
            check_output(&out, 2 * degree, &format!("semicyclic n = {n}"))?;
            Ok(out)
        }
    }
}

/// `alpha'_n` (or the `beta'_n` factors for `n = 4, 6`) over
/// `k16, [w], s1..sn`. `branch` is ignored for odd `n` and `n = 2`.
pub fn alpha_semicyclic(n: usize, branch: Branch) -> Result<MultiPoly> {
    match n {
        2 => {
            let sys = build_tu(2, Family::Semicyclic, 0)?;
            let target = semicyclic_target(2, false)?;
            let out = MultiPoly::var(&target, "k16")? + sys.t[2].embed(&target)?.scale_i64(4);
            check_output(&out, 1, "semicyclic n = 2")?;
            Ok(out)
        }
        3 => {
            let t = VarTable::new(&[("u2", 2), ("s1", 1), ("s2", 2), ("s3", 3)])?;
            let s = |i: usize| MultiPoly::var_index(&t, i);
            let one = MultiPoly::one(&t);
            let disc = cubic_discriminant(&s(3), &(s(2) + s(0)), &s(1), &one).scale_i64(16);
            let out = u2_to_k16(&disc, &semicyclic_target(3, false)?)?;
            check_output(&out, 3, "semicyclic n = 3")?;
            Ok(out)
        }
        4 => {
            let plain = VarTable::new(&[("u2", 2), ("w", 3), ("s1", 1), ("s2", 2), ("s3", 3), ("s4", 4)])?;
            let t = with_rule(&plain, "w", "-1 u2 s4")?;
            let v = |i: usize| MultiPoly::var_index(&t, i);
            let one = MultiPoly::one(&t);
            // 1 - s1 x + (s2 + u2) x^2 - (s3 - 2w) x^3
            let disc = cubic_discriminant(&one, &-v(2), &(v(3) + v(0)), &(v(1).scale_i64(2) - v(4))).scale_i64(16);
            let plus = u2_to_k16(&disc, &semicyclic_target(4, true)?)?;
            check_output(&plus, 3, "semicyclic n = 4")?;
            pick_branch(plus, branch, 4, 3)
        }
        5 => {
            let sys = build_tu(5, Family::Semicyclic, 0)?;
            let u2 = &sys.u[2];
            let t = &sys.t;
            let f = &t[3].pow(2) - &(u2 * &t[4]).scale_i64(4);
            let res = UniView::new(&f, "r2")?.resultant(&UniView::new(&t[5], "r2")?)?.scale_pow2(-2);
            let out = u2_to_k16(&res, &semicyclic_target(5, false)?)?;
            check_output(&out, 15, "semicyclic n = 5")?;
            Ok(out)
        }
        6 => {
            let sys = build_tu(6, Family::Semicyclic, 0)?;
            let (table, t, w) = adjoin_w(&sys)?;
            let u2 = MultiPoly::var(&table, "u2")?;
            let f = &t[3].pow(2) - &(&u2 * &(&t[4] - &w.scale_i64(2))).scale_i64(4);
            let g = &(&u2 * &t[5]) - &(&t[3] * &w);
            let res = UniView::new(&f, "r2")?.resultant(&UniView::new(&g, "r2")?)?;
            let den = u2.pow(6).scale_i64(4);
            let q = res
                .exact_divide(&den)
                .map_err(|e| Error::PipelineIntegrity(format!("division by 4 u2^6: {e}")))?;
            let plus = u2_to_k16(&q, &semicyclic_target(6, true)?)?;
            check_output(&plus, 15, "semicyclic n = 6")?;
            pick_branch(plus, branch, 6, 15)
        }
        _ => Err(Error::InvalidArgument(format!("semicyclic pipeline covers n = 2..6, got {n}"))),
    }
}

/// The squared-area polynomial for the named family, as exported by the
/// command line: `alpha` (cyclic, parities multiplied), `beta` (cyclic
/// even `n`, one parity), `alpha_semi`, `beta_semi` (`n` in 4, 6).
pub fn named_polynomial(family: &str, n: usize, parity: i32) -> Result<MultiPoly> {
    match family {
        "alpha" => alpha_cyclic_full(n),
        "beta" => {
            if n % 2 == 1 {
                return Err(Error::InvalidArgument("beta needs even n".into()));
            }
            alpha_cyclic_small(n, parity)
        }
        "alpha_semi" => alpha_semicyclic(n, Branch::Full),
        "beta_semi" => {
            if n != 4 && n != 6 {
                return Err(Error::InvalidArgument("beta_semi needs n = 4 or 6".into()));
            }
            alpha_semicyclic(n, if parity < 0 { Branch::Minus } else { Branch::Plus })
        }
        _ => Err(Error::InvalidArgument(format!("unknown family {family:?}"))),
    }
}

/// Evaluation point for an output polynomial: `k16`, `s1..sn` and, when
/// the table has them, `sq = eps sqrt(s_n)` with the crossing parity or `w`
/// of a semicyclic configuration. With these signs the `Plus` / `eps = +1`
/// polynomial vanishes on every configuration.
pub fn config_point(table: &VarTable, k16: f64, sigma: &[f64], root: f64) -> HashMap<String, f64> {
    let mut point = HashMap::new();
    point.insert("k16".to_string(), k16);
    for (i, s) in sigma.iter().enumerate().skip(1) {
        point.insert(format!("s{i}"), *s);
    }
    for name in ["sq", "w"] {
        if table.contains(name) {
            point.insert(name.to_string(), root);
        }
    }
    point
}

/// Relative residual `|p| / sum |terms|` of `p` at a configuration.
pub fn config_residual(p: &MultiPoly, cfg: &PolygonConfig) -> Result<f64> {
    let sigma = cfg.sigma();
    let n = cfg.n();
    let root = if cfg.delta == 1 {
        cfg.crossing_parity()? as f64 * sigma[n].sqrt()
    } else {
        cfg.semicyclic_w()?
    };
    let point = config_point(p.table(), cfg.sixteen_k2(), &sigma, root);
    let (v, s) = p.eval_f64_parts(&point)?;
    Ok(if s == 0.0 { v.abs() } else { v.abs() / s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heron::fg::proportionality;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rat_point(pairs: &[(&str, i64)]) -> HashMap<String, BigRational> {
        pairs.iter().map(|(k, v)| (k.to_string(), BigRational::from_integer((*v).into()))).collect()
    }

    #[test]
    fn triangle_and_square() {
        let a3 = alpha_cyclic_small(3, 0).unwrap();
        assert_eq!(a3, MultiPoly::parse_in(a3.table(), "1 k16 ; -4 s2 ; 1 s1^2").unwrap());
        let v = a3.eval_rational(&rat_point(&[("k16", 576), ("s1", 50), ("s2", 769), ("s3", 3600)])).unwrap();
        assert_eq!(v, BigRational::from_integer(0.into()));
        let b4 = alpha_cyclic_small(4, 1).unwrap();
        assert_eq!(b4, MultiPoly::parse_in(b4.table(), "1 k16 ; -4 s2 ; 1 s1^2 ; -8 sq").unwrap());
        let v = b4.eval_rational(&rat_point(&[("k16", 16), ("s1", 4), ("s2", 6), ("s3", 4), ("s4", 1), ("sq", 1)])).unwrap();
        assert_eq!(v, BigRational::from_integer(0.into()));
        let b4s = alpha_cyclic_small(4, -1).unwrap();
        assert_eq!(b4s, MultiPoly::parse_in(b4s.table(), "1 k16 ; -4 s2 ; 1 s1^2 ; 8 sq").unwrap());
    }

    #[test]
    fn cubic_discriminant_matches_resultant() {
        let t = VarTable::new(&[("z", 1), ("a", 1), ("b", 1), ("c", 1), ("d", 1)]).unwrap();
        let v = |i| MultiPoly::var_index(&t, i);
        let z = v(0);
        let cubic = v(1) + &v(2) * &z + &v(3) * &z.pow(2) + &v(4) * &z.pow(3);
        let d = UniView::new(&cubic, "z").unwrap().discriminant().unwrap();
        assert_eq!(d, cubic_discriminant(&v(1), &v(2), &v(3), &v(4)));
    }

    #[test]
    fn pentagon_shape() {
        let a5 = alpha_cyclic_small(5, 0).unwrap();
        assert_eq!(a5.degree_in_name("k16").unwrap(), Some(7));
        assert_eq!(a5.weighted_degree(), Some(14));
        assert!(a5.is_homogeneous());
    }

    #[test]
    fn hexagon_parities_multiply_out() {
        let b = alpha_cyclic_small(6, 1).unwrap();
        let bs = alpha_cyclic_small(6, -1).unwrap();
        let sq = b.table().index("sq").unwrap();
        assert!(b.uses_var(sq));
        assert_eq!(bs, b.negate_var(sq));
        let full = alpha_cyclic_full(6).unwrap();
        assert_eq!(full.degree_in_name("k16").unwrap(), Some(14));
    }

    #[test]
    fn semicyclic_small_cases() {
        let a2 = alpha_semicyclic(2, Branch::Full).unwrap();
        let v = a2.eval_rational(&rat_point(&[("k16", 576), ("s1", 25), ("s2", 144)])).unwrap();
        assert_eq!(v, BigRational::from_integer(0.into()));
        let a3 = alpha_semicyclic(3, Branch::Full).unwrap();
        // 16 discr(z^3 + s1 z^2 + c z + s3) with c = s2 - k16/4, five-term form
        let t = a3.table().clone();
        let s = |i| MultiPoly::var_index(&t, i);
        let c = &s(2) - &s(0).scale_pow2(-2);
        let d = &(&s(1) * &c).pow(2) - &c.pow(3).scale_i64(4) - (&s(1).pow(3) * &s(3)).scale_i64(4)
            + (&s(1) * &(&c * &s(3))).scale_i64(18)
            - s(3).pow(2).scale_i64(27);
        assert_eq!(a3, d.scale_i64(16));
    }

    #[test]
    fn semicyclic_triangle_from_recursion() {
        // m = 1: u2 = t2 and t3 = 0 on the solution set; eliminating r2
        // gives the same polynomial up to a constant.
        let sys = build_tu(3, Family::Semicyclic, 0).unwrap();
        let mut specs: Vec<(String, u32)> = vec![("u2".into(), 2)];
        for (n, w) in sys.table.names().iter().zip(sys.table.weights()) {
            specs.push((n.clone(), *w));
        }
        let table = VarTable::from_owned(specs).unwrap();
        let u2 = MultiPoly::var(&table, "u2").unwrap();
        let f = sys.t[2].embed(&table).unwrap() - u2;
        let g = sys.t[3].embed(&table).unwrap();
        let res = UniView::new(&f, "r2").unwrap().resultant(&UniView::new(&g, "r2").unwrap()).unwrap();
        let res = u2_to_k16(&res, &semicyclic_target(3, false).unwrap()).unwrap();
        let a3 = alpha_semicyclic(3, Branch::Full).unwrap();
        assert!(proportionality(&res, &a3).is_some());
    }

    #[test]
    fn semicyclic_quadrilateral_branches() {
        let p = alpha_semicyclic(4, Branch::Plus).unwrap();
        let m = alpha_semicyclic(4, Branch::Minus).unwrap();
        assert_ne!(p, m);
        let full = alpha_semicyclic(4, Branch::Full).unwrap();
        assert_eq!(full.degree_in_name("k16").unwrap(), Some(6));
        assert!(!full.table().contains("w"));
    }

    #[test]
    fn semicyclic_pentagon_degree() {
        let a = alpha_semicyclic(5, Branch::Full).unwrap();
        assert_eq!(a.weighted_degree(), Some(30));
    }

    #[test]
    fn semicyclic_hexagon_division() {
        let p = alpha_semicyclic(6, Branch::Plus).unwrap();
        assert_eq!(p.degree_in_name("k16").unwrap(), Some(15));
        assert!(p.uses_var(p.table().index("w").unwrap()));
    }

    #[test]
    fn random_configurations_are_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cases = [
            (alpha_cyclic_small(3, 0).unwrap(), 3, 1),
            (alpha_cyclic_small(4, 1).unwrap(), 4, 1),
            (alpha_cyclic_small(5, 0).unwrap(), 5, 1),
            (alpha_cyclic_small(6, 1).unwrap(), 6, 1),
            (alpha_semicyclic(2, Branch::Full).unwrap(), 2, -1),
            (alpha_semicyclic(3, Branch::Full).unwrap(), 3, -1),
            (alpha_semicyclic(4, Branch::Plus).unwrap(), 4, -1),
            (alpha_semicyclic(5, Branch::Full).unwrap(), 5, -1),
        ];
        for (p, n, delta) in &cases {
            for _ in 0..20 {
                let cfg = PolygonConfig::random(&mut rng, *n, *delta);
                let r = config_residual(p, &cfg).unwrap();
                assert!(r < 1e-9, "n = {n}, delta = {delta}: residual {r}");
            }
        }
    }
}
