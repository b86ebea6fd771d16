//! Inscribed polygons described by a radius and vertex quotients.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::symgen::{de_coeffs, elementary_symmetric, TauVector};

/// Circle of radius `r` centred at the origin with vertices `v_1..v_n` and
/// `v_{n+1} = delta * v_1`; `q_i = v_{i+1} / v_i`.
///
/// `delta = 1` is a cyclic n-gon, `delta = -1` a semicyclic (n+1)-gon whose
/// extra side is a diameter. Quotients are unit complex numbers, or negative
/// reals for the small-radius branch of the solver.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonConfig {
    pub delta: i32,
    pub r: f64,
    pub q: Vec<Complex64>,
}

const TOL: f64 = 1e-9;

impl PolygonConfig {
    pub fn new(r: f64, q: Vec<Complex64>, delta: i32) -> Result<Self> {
        let c = PolygonConfig { delta, r, q };
        c.validate()?;
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    /// Unit quotients `exp(i angle)` for the first `n - 1` edges; the last is
    /// solved from `prod q = delta`.
    pub fn from_angles(r: f64, delta: i32, angles: &[f64]) -> Result<Self> {
        let mut q: Vec<Complex64> = angles.iter().map(|&a| Complex64::from_polar(1.0, a)).collect();
        let prod: Complex64 = q.iter().product();
        q.push(Complex64::new(delta as f64, 0.0) / prod);
        Self::new(r, q, delta)
    }

    /// Negative-real quotients; the last is solved from `prod q = delta`.
    pub fn from_negative_reals(r: f64, delta: i32, values: &[f64]) -> Result<Self> {
        let prod: f64 = values.iter().product();
        let mut q: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        q.push(Complex64::new(delta as f64 / prod, 0.0));
        Self::new(r, q, delta)
    }

    /// Random unit-quotient configuration with `n` edges.
    pub fn random<R: Rng>(rng: &mut R, n: usize, delta: i32) -> Self {
        loop {
            let r = rng.gen_range(0.5..2.0);
            let angles: Vec<f64> = (0..n - 1)
                .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
                .collect();
            if let Ok(c) = Self::from_angles(r, delta, &angles) {
                if c.squared_sides().iter().all(|&a| a > 1e-3 * r * r) {
                    return c;
                }
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.delta != 1 && self.delta != -1 {
            return Err(Error::InvalidArgument("delta must be +1 or -1".into()));
        }
        if !(self.r > 0.0) || self.q.is_empty() {
            return Err(Error::InvalidArgument("need r > 0 and at least one edge".into()));
        }
        let prod: Complex64 = self.q.iter().product();
        if (prod - Complex64::new(self.delta as f64, 0.0)).norm() > 1e-7 {
            return Err(Error::InvalidArgument(format!("product of quotients is {prod}, not {}", self.delta)));
        }
        for (i, q) in self.q.iter().enumerate() {
            let unit = (q.norm() - 1.0).abs() < TOL;
            let neg_real = q.im.abs() < TOL && q.re < 0.0;
            if !unit && !neg_real {
                return Err(Error::InvalidArgument(format!("quotient {i} is neither unit nor negative real")));
            }
        }
        for (i, a) in self.squared_sides_complex().iter().enumerate() {
            if a.re <= TOL * self.r * self.r || a.im.abs() > 1e-7 * (1.0 + a.re.abs()) {
                return Err(Error::DegenerateEdge(format!("edge {i} has squared length {a}")));
            }
        }
        Ok(())
    }

    /// `a_i^2 = r^2 (2 - q_i - 1/q_i)` as complex numbers.
    pub fn squared_sides_complex(&self) -> Vec<Complex64> {
        let r2 = self.r * self.r;
        self.q.iter().map(|q| (Complex64::new(2.0, 0.0) - q - q.inv()) * r2).collect()
    }

    pub fn squared_sides(&self) -> Vec<f64> {
        self.squared_sides_complex().iter().map(|a| a.re).collect()
    }

    pub fn sides(&self) -> Vec<f64> {
        self.squared_sides().iter().map(|a| a.sqrt()).collect()
    }

    /// `sigma_0..sigma_n` of the squared sides.
    pub fn sigma(&self) -> Vec<f64> {
        elementary_symmetric(&self.squared_sides())
    }

    pub fn tau(&self) -> TauVector<Complex64> {
        TauVector::from_quotients(&self.q, self.delta)
    }

    /// `16 K^2 = -r^4 (tau_1 - delta tau_{n-1})^2`.
    pub fn sixteen_k2(&self) -> f64 {
        let t = self.tau();
        let n = self.n();
        let z = t.tau[1] - t.tau[n - 1] * self.delta as f64;
        (-(z * z) * self.r.powi(4)).re
    }

    pub fn k2(&self) -> f64 {
        self.sixteen_k2() / 16.0
    }

    /// Signed area from the shoelace formula on the actual vertices
    /// (unit-quotient configurations only).
    pub fn shoelace_area(&self) -> f64 {
        let mut v = Complex64::new(self.r, 0.0);
        let mut pts = vec![v];
        for q in &self.q {
            v *= q;
            pts.push(v);
        }
        let mut a = 0.0;
        for w in pts.windows(2) {
            a += w[0].re * w[1].im - w[1].re * w[0].im;
        }
        // The closing side of a semicyclic polygon is the diameter back to v_1.
        if self.delta == -1 {
            let (p, q) = (pts[pts.len() - 1], pts[0]);
            a += p.re * q.im - q.re * p.im;
        }
        a / 2.0
    }

    /// Reflection in the real axis: every quotient inverted.
    pub fn reflected(&self) -> Self {
        PolygonConfig { delta: self.delta, r: self.r, q: self.q.iter().map(|q| q.inv()).collect() }
    }

    /// Crossing parity of a cyclic polygon: 0 for odd `n`, otherwise the sign
    /// of the real number `prod (1 - q_i)` normalized so that convex polygons
    /// get +1. The raw product has sign `(-1)^(n/2 + 1)` on a convex polygon.
    pub fn crossing_parity(&self) -> Result<i32> {
        for (i, q) in self.q.iter().enumerate() {
            if (Complex64::new(1.0, 0.0) - q).norm() < TOL {
                return Err(Error::DegenerateEdge(format!("edge {i} has zero length")));
            }
        }
        let n = self.n();
        if n % 2 == 1 {
            return Ok(0);
        }
        let raw = self.q.iter().fold(Complex64::new(1.0, 0.0), |acc, q| acc * (Complex64::new(1.0, 0.0) - q));
        let sign = if raw.re > 0.0 { 1 } else { -1 };
        let norm = if (n / 2 + 1) % 2 == 0 { 1 } else { -1 };
        Ok(sign * norm)
    }

    /// Sign of the real product `e_1 * e_{n/2} / 2` for an even semicyclic
    /// configuration, 0 when `n` is odd.
    pub fn semicyclic_parity(&self) -> Result<i32> {
        if self.delta != -1 {
            return Err(Error::InvalidArgument("semicyclic parity needs delta = -1".into()));
        }
        let w = self.semicyclic_w()?;
        Ok(if w > 0.0 {
            1
        } else if w < 0.0 {
            -1
        } else {
            0
        })
    }

    /// `w = r^(n+2) e_1 e_{n/2} / 4`, which equals `2 eps |K| sqrt(sigma_n)`.
    pub fn semicyclic_w(&self) -> Result<f64> {
        let n = self.n();
        if n % 2 == 1 {
            return Ok(0.0);
        }
        let de = de_coeffs(&self.tau());
        let prod = de.e[1] * de.e[n / 2] * self.r.powi(n as i32 + 2) / 4.0;
        Ok(prod.re)
    }

    /// Branch-independent parity used to pick the matching polynomial:
    /// crossing parity for cyclic, semicyclic parity otherwise.
    pub fn parity(&self) -> i32 {
        if self.delta == 1 {
            self.crossing_parity().unwrap_or(0)
        } else {
            self.semicyclic_parity().unwrap_or(0)
        }
    }
}
