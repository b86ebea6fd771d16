//! Polynomial relations between the circumradius and the side lengths.
//!
//! With `x_j = r cos theta_j` and `y_j = r sin theta_j = a_j / 2`, the
//! product over sign patterns of `Im prod (x_j + i e_j y_j)` (cyclic) or of
//! the real part (semicyclic) involves every `x_j` to even powers only, so
//! `x_j^2 -> r^2 - y_j^2` turns it into a polynomial in `r^2` and `y_j^2`.

use std::collections::HashMap;
use std::sync::Arc;

use super::Family;
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, VarTable};

/// `M` (cyclic) or `M'` (semicyclic) over variables `r2, Y1..Yn` with
/// `Yj = y_j^2 = a_j^2 / 4`.
#[derive(Clone, Debug)]
pub struct MobiusPoly {
    pub n: usize,
    pub family: Family,
    /// Product before removing the power of `r2`.
    pub full: MultiPoly,
    /// `full / r2^stripped`.
    pub poly: MultiPoly,
    pub stripped: u32,
}

impl MobiusPoly {
    pub fn degree_in_r2(&self) -> u32 {
        self.poly.degree_in(0).unwrap_or(0)
    }
}

/// Coefficient arithmetic for the masked product.
trait Ops<C: Clone> {
    fn zero(&self) -> C;
    fn one(&self) -> C;
    fn add(&self, a: &C, b: &C) -> C;
    fn mul(&self, a: &C, b: &C) -> C;
    fn neg(&self, a: &C) -> C;
    fn is_zero(&self, a: &C) -> bool;
    /// `r^2 - y_j^2`.
    fn x2(&self, j: usize) -> C;
    /// `y_j^2`.
    fn y2(&self, j: usize) -> C;
    /// `y_j` itself when it is a known number, so it need not be tracked.
    fn y(&self, _j: usize) -> Option<C> {
        None
    }
}

/// Expands the product over patterns `(+1, e_2..e_n)` of `Im` (or `Re`) of
/// `prod (x_j + i e_j y_j)`, tracking which `x_j`, `y_j` occur to odd powers
/// in a bit mask and folding squares into coefficients.
fn masked_product<C: Clone, O: Ops<C>>(n: usize, real_part: bool, ops: &O) -> Result<C> {
    let full = (1u32 << n) - 1;
    let mut overlap_cache: HashMap<(u32, u32), C> = HashMap::new();
    let mut overlap = |xo: u32, yo: u32| -> C {
        overlap_cache
            .entry((xo, yo))
            .or_insert_with(|| {
                let mut c = ops.one();
                for j in 0..n {
                    if xo >> j & 1 == 1 {
                        c = ops.mul(&c, &ops.x2(j));
                    }
                    if yo >> j & 1 == 1 {
                        c = ops.mul(&c, &ops.y2(j));
                    }
                }
                c
            })
            .clone()
    };
    let mut state: Vec<((u32, u32), C)> = vec![((0, 0), ops.one())];
    for pattern in 0..1u32 << (n - 1) {
        let signs: Vec<i32> = (0..n).map(|j| if j > 0 && pattern >> (j - 1) & 1 == 1 { -1 } else { 1 }).collect();
        // Terms of the factor: y-subset S with |S| odd (Im) or even (Re),
        // coefficient i^|S| prod e_j with the i-power folded into a sign.
        let mut factor: Vec<(u32, u32, C)> = Vec::new();
        for s in 0..=full {
            let k = s.count_ones() as i64;
            if (k % 2 == 0) != real_part {
                continue;
            }
            let ipow = if real_part { k / 2 } else { (k - 1) / 2 };
            let mut c = if ipow % 2 == 0 { ops.one() } else { ops.neg(&ops.one()) };
            let mut tracked = 0u32;
            for (j, &e) in signs.iter().enumerate() {
                if s >> j & 1 == 1 {
                    if e < 0 {
                        c = ops.neg(&c);
                    }
                    match ops.y(j) {
                        Some(v) => c = ops.mul(&c, &v),
                        None => tracked |= 1 << j,
                    }
                }
            }
            factor.push((full & !s, tracked, c));
        }
        let mut next: HashMap<(u32, u32), C> = HashMap::new();
        for ((xm, ym), c) in &state {
            for (fx, fy, coeff) in &factor {
                let key = (xm ^ fx, ym ^ fy);
                let term = ops.mul(&ops.mul(c, coeff), &overlap(xm & fx, ym & fy));
                let slot = next.entry(key).or_insert_with(|| ops.zero());
                *slot = ops.add(slot, &term);
            }
        }
        let mut v: Vec<((u32, u32), C)> = next.into_iter().collect();
        v.sort_by_key(|(k, _)| *k);
        state = v;
    }
    let mut result = ops.zero();
    for (key, c) in state {
        if key == (0, 0) {
            result = c;
        } else if !ops.is_zero(&c) {
            return Err(Error::PipelineIntegrity(format!("odd powers left over in mask {key:?}")));
        }
    }
    Ok(result)
}

fn strip(n: usize, family: Family, full: MultiPoly) -> Result<MobiusPoly> {
    if full.is_zero() {
        return Err(Error::Degenerate("product vanishes identically".into()));
    }
    let v = full.valuation_in(0).unwrap_or(0);
    let r2 = MultiPoly::var_index(full.table(), 0);
    let poly = full.exact_divide(&r2.pow(v))?;
    Ok(MobiusPoly { n, family, full, poly, stripped: v })
}

/// Largest `n` expanded with symbolic side lengths.
pub const MAX_SYMBOLIC_N: usize = 5;

/// Fully symbolic `M` / `M'` in `r2, Y1..Yn`.
pub fn mobius_polynomial(n: usize, family: Family) -> Result<MobiusPoly> {
    if n < 2 || (family == Family::Cyclic && n < 3) {
        return Err(Error::InvalidArgument(format!("n = {n} too small")));
    }
    if n > MAX_SYMBOLIC_N {
        return Err(Error::ResourceLimit(format!(
            "symbolic expansion limited to n <= {MAX_SYMBOLIC_N}; use specialized side lengths"
        )));
    }
    let mut specs = vec![("r2".to_string(), 1)];
    for j in 1..=n {
        specs.push((format!("Y{j}"), 1));
    }
    let table = VarTable::from_owned(specs)?;
    let y2 = (1..=n).map(|j| MultiPoly::var_index(&table, j)).collect();
    let full = masked_product(n, family == Family::Semicyclic, &PolyOps { table, y2 })?;
    strip(n, family, full)
}

/// Coefficients in `r2` plus whatever `y2` refers to.
struct PolyOps {
    table: Arc<VarTable>,
    y2: Vec<MultiPoly>,
}

impl Ops<MultiPoly> for PolyOps {
    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(&self.table)
    }
    fn one(&self) -> MultiPoly {
        MultiPoly::one(&self.table)
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a * b
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
    fn x2(&self, j: usize) -> MultiPoly {
        MultiPoly::var_index(&self.table, 0) - &self.y2[j]
    }
    fn y2(&self, j: usize) -> MultiPoly {
        self.y2[j].clone()
    }
}

/// Doubled coordinates `2 x_j`, `2 y_j = a_j` at integer side lengths.
struct SideOps {
    table: Arc<VarTable>,
    sides: Vec<i64>,
}

impl Ops<MultiPoly> for SideOps {
    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(&self.table)
    }
    fn one(&self) -> MultiPoly {
        MultiPoly::one(&self.table)
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a * b
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
    fn x2(&self, j: usize) -> MultiPoly {
        MultiPoly::var_index(&self.table, 0).scale_i64(4) - MultiPoly::constant(&self.table, self.sides[j] * self.sides[j])
    }
    fn y2(&self, j: usize) -> MultiPoly {
        MultiPoly::constant(&self.table, self.sides[j] * self.sides[j])
    }
    fn y(&self, j: usize) -> Option<MultiPoly> {
        Some(MultiPoly::constant(&self.table, self.sides[j]))
    }
}

/// `M` / `M'` as a polynomial in `r2` alone at integer side lengths `a_j`.
/// Works for `n <= 8`.
pub fn mobius_specialized(sides: &[i64], family: Family) -> Result<MobiusPoly> {
    let n = sides.len();
    if n < 2 || n > 8 {
        return Err(Error::InvalidArgument(format!("specialized product needs 2..=8 sides, got {n}")));
    }
    if sides.iter().any(|&a| a <= 0 || a > 1 << 20) {
        return Err(Error::InvalidArgument("side lengths must be positive and below 2^20".into()));
    }
    let table = VarTable::new(&[("r2", 1)])?;
    let ops = SideOps { table, sides: sides.to_vec() };
    let doubled = masked_product(n, family == Family::Semicyclic, &ops)?;
    // each of the 2^(n-1) factors picked up 2^n
    strip(n, family, doubled.scale_pow2(-((n as i32) << (n - 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::delta_count;

    #[test]
    fn triangle_circumradius() {
        let m = mobius_specialized(&[3, 4, 5], Family::Cyclic).unwrap();
        assert_eq!(m.degree_in_r2(), 1);
        let c = m.poly.univariate_coefficients(0).unwrap();
        let root = -(&c[0] / &c[1]);
        assert_eq!(root, num_rational::BigRational::new(25.into(), 4.into()));
    }

    #[test]
    fn symbolic_degrees_small() {
        for n in 3..=4 {
            let m = mobius_polynomial(n, Family::Cyclic).unwrap();
            assert_eq!(m.degree_in_r2() as u64, delta_count(n, Family::Cyclic).unwrap());
            let mp = mobius_polynomial(n, Family::Semicyclic).unwrap();
            assert_eq!(mp.degree_in_r2() as u64, delta_count(n, Family::Semicyclic).unwrap());
            let lead = mp.full.leading_coefficient_in(0);
            assert_eq!(mp.full.degree_in(0).unwrap() as usize, n << (n - 2));
            assert!(lead.is_constant() && lead.constant_value().unwrap() == num_rational::BigRational::from_integer(1.into()));
        }
    }

    #[test]
    fn symbolic_matches_specialized() {
        let m = mobius_polynomial(4, Family::Cyclic).unwrap();
        let s = mobius_specialized(&[2, 3, 4, 6], Family::Cyclic).unwrap();
        let table = s.full.table().clone();
        let r2 = MultiPoly::var(&table, "r2").unwrap();
        let vals = [4, 9, 16, 36];
        let mut bindings = vec![("r2", r2)];
        let names: Vec<String> = (1..=4).map(|j| format!("Y{j}")).collect();
        for (j, v) in vals.iter().enumerate() {
            bindings.push((names[j].as_str(), MultiPoly::constant(&table, *v).scale_pow2(-2)));
        }
        let sub = m.full.substitute(&bindings).unwrap();
        assert_eq!(sub, s.full);
    }
}
