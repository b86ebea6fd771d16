//! The covariant coefficients `F`, `G` and the auxiliary `F1`, `G1` in
//! `u2, u3, t4..t7`, with the identities relating them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::forms::{generic_quintic, quintic_covariant_c, quintic_table};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

#[derive(Clone, Debug)]
pub struct FgPolys {
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub f1: MultiPoly,
    pub g1: MultiPoly,
}

const F_TEXT: &str = "
1 u3^2 t4^3 ; -4 u2 t4^4 ; -4 u3^3 t4 t5 ; 18 u2 u3 t4^2 t5 ; -27 u2^2 t4 t5^2
8 u3^4 t6 ; -42 u2 u3^2 t4 t6 ; 36 u2^2 t4^2 t6 ; 54 u2^2 u3 t5 t6 ; -80 u2^3 t6^2
8 u2 u3^3 t7 ; -30 u2^2 u3 t4 t7 ; 50 u2^3 t5 t7";

const G_TEXT: &str = "
1 u3^2 t4^2 t5 ; -4 u2 t4^3 t5 ; -4 u3^3 t5^2 ; 18 u2 u3 t4 t5^2 ; -27 u2^2 t5^3
2 u3^3 t4 t6 ; -8 u2 u3 t4^2 t6 ; -6 u2 u3^2 t5 t6 ; 36 u2^2 t4 t5 t6 ; -8 u2^2 u3 t6^2
16 u3^4 t7 ; -74 u2 u3^2 t4 t7 ; 40 u2^2 t4^2 t7 ; 110 u2^2 u3 t5 t7 ; -200 u2^3 t6 t7";

const F1_TEXT: &str = "4 u3^3 ; -15 u2 u3 t4 ; 25 u2^2 t5";
const G1_TEXT: &str = "7 u3^2 t4 ; -20 u2 t4^2 ; -5 u2 u3 t5 ; 100 u2^2 t6";

/// `F` (weight 18), `G` (19), `F1` (9) and `G1` (10).
pub fn fg_polynomials() -> FgPolys {
    let t = quintic_table();
    let p = |s: &str| MultiPoly::parse_in(&t, s).expect("static polynomial");
    FgPolys { f: p(F_TEXT), g: p(G_TEXT), f1: p(F1_TEXT), g1: p(G1_TEXT) }
}

/// `lhs / rhs` if the two are proportional by a nonzero rational.
pub fn proportionality(lhs: &MultiPoly, rhs: &MultiPoly) -> Option<BigRational> {
    if lhs.is_zero() || rhs.is_zero() {
        return None;
    }
    let (cl, pl) = lhs.primitive_part();
    let (cr, pr) = rhs.primitive_part();
    if pl == pr {
        Some(cl / cr)
    } else if pl == -&pr {
        Some(-(cl / cr))
    } else {
        None
    }
}

/// Covariant coefficients of the generic quintic: `(x^9 coeff, x^8 y coeff)`.
pub fn covariant_leading_coefficients() -> Result<(MultiPoly, MultiPoly)> {
    let c = quintic_covariant_c(&generic_quintic())?;
    Ok((c.coeffs()[0].clone(), c.coeffs()[1].clone()))
}

/// Monomials over the quintic table with the given weighted degree.
fn monomials_of_weight(weights: &[u32], w: u32) -> Vec<Vec<u32>> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e * weights[i] <= left {
            cur.push(e);
            rec(weights, i + 1, left - e * weights[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, w, &mut Vec::new(), &mut out);
    out
}

/// Exact Gaussian elimination; returns one solution of `A x = b` (free
/// variables set to zero) or `None` if inconsistent.
pub fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = BigRational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        b[r] *= &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in c..cols {
                    let d = &f * &a[r][k];
                    a[i][k] -= d;
                }
                let d = &f * &b[r];
                b[i] -= d;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Some(x)
}

/// Certificate `scale * target = a * p + b * q` with integer polynomials.
#[derive(Clone, Debug)]
pub struct Membership {
    pub scale: BigInt,
    pub a: MultiPoly,
    pub b: MultiPoly,
}

/// Searches for weighted-homogeneous cofactors with
/// `target = a * p + b * q`, then verifies the identity exactly.
pub fn ideal_membership(target: &MultiPoly, p: &MultiPoly, q: &MultiPoly) -> Result<Option<Membership>> {
    let table = target.table().clone();
    let weights = table.weights().to_vec();
    let wt = target.weighted_degree().ok_or(Error::ZeroPolynomial)?;
    let wp = p.weighted_degree().ok_or(Error::ZeroPolynomial)?;
    let wq = q.weighted_degree().ok_or(Error::ZeroPolynomial)?;
    let ma = if wt >= wp { monomials_of_weight(&weights, (wt - wp) as u32) } else { Vec::new() };
    let mb = if wt >= wq { monomials_of_weight(&weights, (wt - wq) as u32) } else { Vec::new() };
    let mono = |e: &Vec<u32>| MultiPoly::from_terms(&table, vec![(e.clone(), BigInt::one())], 0);
    let mut columns: Vec<MultiPoly> = Vec::new();
    for e in &ma {
        columns.push(mono(e)? * p);
    }
    for e in &mb {
        columns.push(mono(e)? * q);
    }
    let mut row_of: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, BigRational)> = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        for (exps, c) in col.terms() {
            let n = row_of.len();
            let i = *row_of.entry(exps).or_insert(n);
            entries.push((i, j, BigRational::new(c.clone(), BigInt::one() << col.den_pow2() as usize)));
        }
    }
    for (exps, _) in target.terms() {
        let n = row_of.len();
        row_of.entry(exps).or_insert(n);
    }
    let nrows = row_of.len();
    let mut a = vec![vec![BigRational::zero(); columns.len()]; nrows];
    for (i, j, c) in entries {
        a[i][j] += c;
    }
    let mut b = vec![BigRational::zero(); nrows];
    for (exps, &i) in &row_of {
        b[i] = target.coefficient(exps);
    }
    let Some(x) = solve_rational(a, b) else { return Ok(None) };
    let mut lcm = BigInt::one();
    for v in &x {
        lcm = lcm.lcm(v.denom());
    }
    let build = |monos: &[Vec<u32>], xs: &[BigRational]| -> Result<MultiPoly> {
        let terms = monos
            .iter()
            .zip(xs)
            .filter(|(_, v)| !v.is_zero())
            .map(|(e, v)| (e.clone(), (v * BigRational::from_integer(lcm.clone())).to_integer()))
            .collect();
        MultiPoly::from_terms(&table, terms, 0)
    };
    let ca = build(&ma, &x[..ma.len()])?;
    let cb = build(&mb, &x[ma.len()..])?;
    let lhs = target.scale(&lcm);
    if lhs != &ca * p + &cb * q {
        return Err(Error::PipelineIntegrity("cofactor identity failed to verify".into()));
    }
    let scale = if lcm.is_negative() { -lcm } else { lcm };
    Ok(Some(Membership { scale, a: ca, b: cb }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_coefficients() {
        let fg = fg_polynomials();
        assert_eq!(fg.f.weighted_degree(), Some(18));
        assert_eq!(fg.g.weighted_degree(), Some(19));
        assert!(fg.f.is_homogeneous() && fg.g.is_homogeneous());
        let c = fg.f.coefficient_of(&[("u2", 2), ("u3", 1), ("t5", 1), ("t6", 1)]).unwrap();
        assert_eq!(c, BigRational::from_integer(54.into()));
    }

    #[test]
    fn derivative_relations() {
        let fg = fg_polynomials();
        let t = fg.f.table().clone();
        let u2 = MultiPoly::var(&t, "u2").unwrap();
        let u3 = MultiPoly::var(&t, "u3").unwrap();
        assert_eq!(fg.f.derivative(5), (&u2 * &fg.f1).scale_i64(2));
        assert_eq!((&u2 * &fg.g1).scale_i64(2), (&u3 * &fg.f1).scale_i64(4) - fg.g.derivative(5));
    }

    #[test]
    fn covariant_proportionality() {
        let fg = fg_polynomials();
        let (c0, c1) = covariant_leading_coefficients().unwrap();
        let rf = proportionality(&c0, &fg.f);
        let rg = proportionality(&c1, &fg.g);
        assert!(rf.is_some() && rg.is_some());
    }

    #[test]
    fn multiples_lie_in_the_auxiliary_ideal() {
        let fg = fg_polynomials();
        let t = fg.f.table().clone();
        let u2 = MultiPoly::var(&t, "u2").unwrap();
        let u3 = MultiPoly::var(&t, "u3").unwrap();
        for target in [&u2 * &fg.f, &u3 * &fg.f, &u2 * &fg.g, &u3 * &fg.g] {
            let m = ideal_membership(&target, &fg.f1, &fg.g1).unwrap().expect("cofactors exist");
            assert_eq!(target.scale(&m.scale), &m.a * &fg.f1 + &m.b * &fg.g1);
        }
        assert!(ideal_membership(&fg.f, &fg.f1, &fg.g1).unwrap().is_none());
        assert!(ideal_membership(&fg.g, &fg.f1, &fg.g1).unwrap().is_none());
    }

    #[test]
    fn solves_small_systems() {
        let r = |k: i64| BigRational::from_integer(k.into());
        let x = solve_rational(vec![vec![r(2), r(1)], vec![r(1), r(3)]], vec![r(3), r(4)]).unwrap();
        assert_eq!(x, vec![r(1), r(1)]);
        assert!(solve_rational(vec![vec![r(1), r(1)], vec![r(2), r(2)]], vec![r(1), r(3)]).is_none());
    }
}
