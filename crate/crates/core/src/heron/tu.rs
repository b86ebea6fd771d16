//! The `t_j` / `u_j` substitutions and the polynomials `P_n`, `P'_n`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::Family;
use crate::poly::{MultiPoly, VarTable};

/// Ring operations needed by the recursions, so the same code runs on
/// symbolic polynomials and on complex numbers.
pub trait TuScalar: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `c * self / 2^k`.
    fn scaled(&self, c: i64, k: u32) -> Self;
    /// The constant `c` in the same ring as `self`.
    fn constant_like(&self, c: i64) -> Self;
}

impl TuScalar for MultiPoly {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scaled(&self, c: i64, k: u32) -> Self {
        self.scale_i64(c).scale_pow2(-(k as i32))
    }
    fn constant_like(&self, c: i64) -> Self {
        MultiPoly::constant(self.table(), c)
    }
}

impl TuScalar for Complex64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scaled(&self, c: i64, k: u32) -> Self {
        self * (c as f64 / (1u64 << k) as f64)
    }
    fn constant_like(&self, c: i64) -> Self {
        Complex64::new(c as f64, 0.0)
    }
}

/// `m = floor((n - 1) / 2)`.
pub fn half_m(n: usize) -> usize {
    (n - 1) / 2
}

/// Index of the last `t_j`: `2m + 1` (cyclic) or `n` (semicyclic).
pub fn last_index(n: usize, family: Family) -> usize {
    match family {
        Family::Cyclic => 2 * half_m(n) + 1,
        Family::Semicyclic => n,
    }
}

/// Runs the recursion for `t_0..t_last`.
///
/// `sigma[j]` is `sigma_j` (index 0 unused) and `u[j]` is `u_j` for
/// `2 <= j <= m` (other entries unused). `extra` is `sqrt(sigma_n)` for
/// cyclic polygons, where `eps` multiplies the tail term, and `r^2` for
/// semicyclic ones.
pub fn tu_recursion<T: TuScalar>(family: Family, n: usize, sigma: &[T], u: &[T], extra: &T, eps: i32) -> Vec<T> {
    let m = half_m(n);
    let last = last_index(n, family);
    let zero = extra.constant_like(0);
    let mut t: Vec<T> = vec![zero.clone(); last + 1];
    t[0] = extra.constant_like(-2);
    for j in 1..=last {
        let mut acc = if j <= n { sigma[j].scaled(if j % 2 == 1 { 1 } else { -1 }, 0) } else { zero.clone() };
        for i in j.saturating_sub(m).max(1)..=m.min(j - 1) {
            acc = acc.add(&t[i].mul(&t[j - i]).scaled(1, 2));
        }
        if family == Family::Semicyclic {
            let mut cross = zero.clone();
            for i in j.saturating_sub(m).max(1)..=(m + 1).min(j) {
                cross = cross.add(&t[i - 1].mul(&t[j - i]));
            }
            acc = acc.sub(&extra.mul(&cross));
        }
        if j <= m {
            if j >= 2 {
                acc = acc.sub(&u[j]);
            }
        } else if family == Family::Cyclic && eps != 0 {
            acc = acc.add(&t[j - m - 1].mul(extra).scaled(eps as i64, 0));
        }
        t[j] = acc;
    }
    t
}

/// Expanded `t_j` in the variables `u_2..u_m`, then `sq` (cyclic, even `n`,
/// with `sq^2 = s_n`) or `r2` (semicyclic), then `s_1..s_n`.
#[derive(Clone, Debug)]
pub struct TUSystem {
    pub n: usize,
    pub m: usize,
    pub family: Family,
    pub eps: i32,
    pub table: Arc<VarTable>,
    /// `t_0..t_last`.
    pub t: Vec<MultiPoly>,
    /// `u_0..u_m` with `u_0 = u_1 = 0`.
    pub u: Vec<MultiPoly>,
}

/// Variable table shared by the expanded recursions.
pub fn tu_table(n: usize, family: Family) -> Result<Arc<VarTable>> {
    let m = half_m(n);
    let mut specs: Vec<(String, u32)> = (2..=m).map(|j| (format!("u{j}"), j as u32)).collect();
    let sq = family == Family::Cyclic && n % 2 == 0;
    match family {
        Family::Cyclic if sq => specs.push(("sq".into(), (n / 2) as u32)),
        Family::Cyclic => {}
        Family::Semicyclic => specs.push(("r2".into(), 1)),
    }
    for i in 1..=n {
        specs.push((format!("s{i}"), i as u32));
    }
    let table = VarTable::from_owned(specs)?;
    if sq {
        let sn = MultiPoly::var(&table, &format!("s{n}"))?;
        table.with_square_rule("sq", &sn)
    } else {
        Ok(table)
    }
}

pub fn build_tu(n: usize, family: Family, eps: i32) -> Result<TUSystem> {
    let (min_n, max_n) = match family {
        Family::Cyclic => (3, 12),
        Family::Semicyclic => (2, 12),
    };
    if n < min_n || n > max_n {
        return Err(Error::InvalidArgument(format!("n = {n} unsupported for {}", family.name())));
    }
    let eps = match family {
        Family::Cyclic if n % 2 == 1 && eps != 0 => {
            return Err(Error::InvalidArgument("odd cyclic polygons have parity 0".into()))
        }
        Family::Cyclic if n % 2 == 0 && eps.abs() != 1 => {
            return Err(Error::InvalidArgument("even cyclic polygons need parity +1 or -1".into()))
        }
        Family::Cyclic => eps,
        Family::Semicyclic => 0,
    };
    let table = tu_table(n, family)?;
    let m = half_m(n);
    let zero = MultiPoly::zero(&table);
    let sigma: Vec<MultiPoly> = std::iter::once(Ok(MultiPoly::one(&table)))
        .chain((1..=n).map(|i| MultiPoly::var(&table, &format!("s{i}"))))
        .collect::<Result<_>>()?;
    let mut u = vec![zero.clone(); m + 1];
    for (j, uj) in u.iter_mut().enumerate().skip(2) {
        *uj = MultiPoly::var(&table, &format!("u{j}"))?;
    }
    let extra = match family {
        Family::Cyclic if n % 2 == 0 => MultiPoly::var(&table, "sq")?,
        Family::Cyclic => zero,
        Family::Semicyclic => MultiPoly::var(&table, "r2")?,
    };
    let t = tu_recursion(family, n, &sigma, &u, &extra, eps);
    Ok(TUSystem { n, m, family, eps, table, t, u })
}

/// Coefficients of `P_n(z)` or `P'_n(z)`, lowest first: `u_j` for
/// `j <= m`, `t_j` beyond, for `j = 2..=last`.
#[derive(Clone, Debug)]
pub struct PnPolynomial {
    pub family: Family,
    pub n: usize,
    pub coeffs: Vec<MultiPoly>,
}

impl TUSystem {
    pub fn last(&self) -> usize {
        last_index(self.n, self.family)
    }

    pub fn pn(&self) -> PnPolynomial {
        let coeffs = (2..=self.last())
            .map(|j| if j <= self.m { self.u[j].clone() } else { self.t[j].clone() })
            .collect();
        PnPolynomial { family: self.family, n: self.n, coeffs }
    }
}

/// Rewrites `u_2 = -k16 / 4` and moves `p` onto `target`, which must
/// contain `k16` and every other variable of `p`.
pub fn u2_to_k16(p: &MultiPoly, target: &Arc<VarTable>) -> Result<MultiPoly> {
    if !p.table().contains("u2") {
        return p.embed(target);
    }
    let k16 = MultiPoly::var(target, "k16")?;
    p.substitute(&[("u2", k16.scale_i64(-1).scale_pow2(-2))])
}

pub fn pn_polynomial(sys: &TUSystem) -> PnPolynomial {
    sys.pn()
}
