//! Paths `q_j = 1 - δ_0 r^j e^{iθ}` approaching 1 inside a Stolz sector.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::Error;

/// Minimal value of `(1 - |q|) N` for a truncation at order `N` to be used at `q`.
pub const ADEQUACY: f64 = 30.0;

#[derive(Clone, Debug, PartialEq)]
pub struct StolzPath {
    m: f64,
    theta: f64,
    delta0: f64,
    ratio: f64,
    deltas: Vec<f64>,
    points: Vec<Complex64>,
}

impl StolzPath {
    pub const DEFAULT_POINTS: usize = 8;
    pub const DEFAULT_DELTA0: f64 = 0.2;
    pub const DEFAULT_RATIO: f64 = 0.5;

    pub fn new(m: f64, theta: f64, count: usize, delta0: f64, ratio: f64) -> Result<Self, Error> {
        if !(m >= 1.0) || !m.is_finite() {
            return Err(Error::InvalidPath(format!("sector constant M = {m} must be >= 1")));
        }
        if !(theta.abs() < core::f64::consts::FRAC_PI_2) {
            return Err(Error::InvalidPath(format!("|theta| = {} must be below pi/2", theta.abs())));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidPath(format!("ratio r = {ratio} must lie in (0, 1)")));
        }
        if !(delta0 > 0.0) || !delta0.is_finite() {
            return Err(Error::InvalidPath(format!("delta0 = {delta0} must be positive")));
        }
        let dir = Complex64::from_polar(1.0, theta);
        let mut deltas = Vec::with_capacity(count);
        let mut points = Vec::with_capacity(count);
        let mut delta = delta0;
        for index in 0..count {
            let q = Complex64::new(1.0, 0.0) - dir * delta;
            let modulus = q.norm();
            if !(modulus < 1.0) {
                return Err(Error::OutsideDisk { index, modulus });
            }
            let ratio_j = sector_ratio(q);
            if !(ratio_j <= m) {
                return Err(Error::SectorViolation { index, ratio: ratio_j, m });
            }
            deltas.push(delta);
            points.push(q);
            delta *= ratio;
        }
        Ok(Self { m, theta, delta0, ratio, deltas, points })
    }

    /// The radial path with 8 points, `δ_0 = 0.2`, `r = 0.5`.
    pub fn default_radial() -> Self {
        Self::new(1.0, 0.0, Self::DEFAULT_POINTS, Self::DEFAULT_DELTA0, Self::DEFAULT_RATIO)
            .expect("default path is valid")
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn delta0(&self) -> f64 {
        self.delta0
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest order satisfying the adequacy rule at every point.
    pub fn auto_order(&self) -> Result<usize, Error> {
        self.points
            .iter()
            .map(|q| needed_order(q.norm()))
            .max()
            .ok_or(Error::EmptyPath)
    }

    pub fn check_adequacy(&self, order: usize) -> Result<(), Error> {
        if self.points.is_empty() {
            return Err(Error::EmptyPath);
        }
        for (index, q) in self.points.iter().enumerate() {
            let modulus = q.norm();
            if (1.0 - modulus) * (order as f64) < ADEQUACY {
                return Err(Error::InadequateOrder {
                    index,
                    modulus,
                    order,
                    needed: needed_order(modulus),
                });
            }
        }
        Ok(())
    }
}

/// `|1 - q| / (1 - |q|)`
pub fn sector_ratio(q: Complex64) -> f64 {
    (Complex64::new(1.0, 0.0) - q).norm() / (1.0 - q.norm())
}

fn needed_order(modulus: f64) -> usize {
    let n = (ADEQUACY / (1.0 - modulus)).ceil() as usize;
    // guard against rounding just below the bound
    if (1.0 - modulus) * n as f64 >= ADEQUACY {
        n
    } else {
        n + 1
    }
}
