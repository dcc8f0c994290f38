//! Brute-force reference computations for low-dimensional sections.
//!
//! These are slow and deliberately naive. Each returns its value together
//! with an a priori error bound, so tests can compare a fast evaluator
//! against `value ± error_bound`.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coord::{CoordFunctional, CoordVector};
use crate::error::{invalid, Error, Result};
use crate::norm::{NormOracle, Reference};
use crate::sampling::{l2_sphere, uniform_cube};

/// Scans are exponential in dimension; nothing above this is accepted.
pub const MAX_SCAN_DIM: usize = 3;
pub const MIN_RESOLUTION: usize = 64;
pub const MIN_RAY_STEPS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleValue {
    pub value: f64,
    pub error_bound: f64,
}

/// Regular grid on `[-radius, radius]^dim`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanGrid {
    dim: usize,
    resolution: usize,
    radius: f64,
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 || d > MAX_SCAN_DIM {
        return Err(invalid(format!("scan oracles need dimension 1..=3, got {d}")));
    }
    Ok(())
}

impl ScanGrid {
    pub fn new(dim: usize, resolution: usize, radius: f64) -> Result<Self> {
        check_dim(dim)?;
        if resolution < MIN_RESOLUTION {
            return Err(invalid(format!("resolution must be at least {MIN_RESOLUTION}, got {resolution}")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(invalid(format!("grid radius must be positive, got {radius}")));
        }
        Ok(Self { dim, resolution, radius })
    }

    /// Grid whose outer face lies outside the unit ball of `norm`.
    pub fn covering(norm: &NormOracle, resolution: usize) -> Result<Self> {
        let (lo, _) = norm.constants_against(Reference::LInf);
        Self::new(norm.dim(), resolution, 1.0 / lo)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn resolution(&self) -> usize {
        self.resolution
    }
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.radius / (self.resolution - 1) as f64
    }

    fn coord(&self, i: usize) -> f64 {
        -self.radius + i as f64 * self.spacing()
    }

    /// Grid points on the boundary of the cube. Their directions cover the
    /// sphere with angular gaps of order `spacing / radius`.
    pub fn surface_points(&self) -> Vec<CoordVector> {
        let r = self.resolution;
        let total = r.pow(self.dim as u32);
        (0..total)
            .filter_map(|mut k| {
                let mut v = Vec::with_capacity(self.dim);
                let mut on_face = false;
                for _ in 0..self.dim {
                    let i = k % r;
                    k /= r;
                    on_face |= i == 0 || i == r - 1;
                    v.push(self.coord(i));
                }
                on_face.then(|| CoordVector::from_values(v))
            })
            .collect()
    }
}

/// Gauge of a star-shaped set along the ray through `x`, by testing
/// `x / t` at `t = k * t_max / steps`. The result is the first grid value
/// after the last non-member, so it is within one step of the true gauge.
pub fn gauge_by_ray_scan<M>(member: M, x: &CoordVector, steps: usize, t_max: f64) -> Result<OracleValue>
where
    M: Fn(&CoordVector) -> bool + Sync,
{
    check_dim(x.dim())?;
    if steps < MIN_RAY_STEPS {
        return Err(invalid(format!("ray scan needs at least {MIN_RAY_STEPS} steps, got {steps}")));
    }
    if !(t_max > 0.0) {
        return Err(invalid(format!("ray scan range must be positive, got {t_max}")));
    }
    let dt = t_max / steps as f64;
    if x.is_zero() {
        return Ok(OracleValue { value: 0.0, error_bound: 0.0 });
    }
    if !member(&x.scaled(1.0 / t_max)) {
        return Err(Error::InvalidSet(format!("no transition along the ray within t <= {t_max}")));
    }
    let last_out = (1..=steps)
        .into_par_iter()
        .filter(|&k| !member(&x.scaled(1.0 / (k as f64 * dt))))
        .max()
        .unwrap_or(0);
    Ok(OracleValue {
        value: (last_out + 1) as f64 * dt,
        error_bound: dt,
    })
}

/// `max <φ, x> / norm(x)` over the surface of `grid`.
///
/// With `c |x|∞ <= norm(x) <= C |x|∞`, moving a point by half a grid step
/// changes the ratio by at most `(|φ|₁ + D C) (h/2) / (c R)` with
/// `D <= |φ|₁ / c`; that is the reported bound.
pub fn dual_by_sphere_scan(norm: &NormOracle, phi: &CoordFunctional, grid: &ScanGrid) -> Result<OracleValue> {
    if grid.dim() != norm.dim() {
        return Err(invalid(format!("grid dimension {} differs from norm dimension {}", grid.dim(), norm.dim())));
    }
    let value = grid
        .surface_points()
        .par_iter()
        .map(|x| phi.pair(x) / norm.eval(x))
        .reduce(|| f64::NEG_INFINITY, f64::max);
    let (c, big_c) = norm.constants_against(Reference::LInf);
    let l1 = phi.norm_l1();
    let error_bound = (l1 + l1 / c * big_c) * 0.5 * grid.spacing() / (c * grid.radius());
    Ok(OracleValue { value, error_bound })
}

/// `Q(x, y)` for the Euclidean norm, which by the parallelogram law is
/// `|x - y|²`.
pub fn hilbert_q_oracle(x: &CoordVector, y: &CoordVector) -> f64 {
    let d = x - y;
    d.dot(&d)
}

/// Worst `norm((x+y)/2) - (norm(x) + norm(y))/2` over random pairs.
///
/// Half the pairs are independent points of the unit cube, half are close
/// pairs `y = x + 0.05 u` (`u` on the Euclidean sphere), which is where
/// flat pieces and rounding show up.
pub fn convexity_midpoint_scan<R: Rng + ?Sized>(norm: &NormOracle, samples: usize, rng: &mut R) -> Result<OracleValue> {
    if samples < 1000 {
        return Err(invalid(format!("convexity scan needs at least 1000 samples, got {samples}")));
    }
    let d = norm.dim();
    let pairs: Vec<(CoordVector, CoordVector)> = (0..samples)
        .map(|k| {
            let x = uniform_cube(rng, d);
            let y = if k % 2 == 0 {
                uniform_cube(rng, d)
            } else {
                x.add_scaled(0.05, &l2_sphere(rng, d))
            };
            (x, y)
        })
        .collect();
    let value = pairs
        .par_iter()
        .map(|(x, y)| norm.eval(&(x + y).scaled(0.5)) - 0.5 * (norm.eval(x) + norm.eval(y)))
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Ok(OracleValue { value, error_bound: 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::seeded_rng;

    #[test]
    fn grid_invariants() {
        assert!(ScanGrid::new(4, 64, 1.0).is_err());
        assert!(ScanGrid::new(2, 63, 1.0).is_err());
        assert!(ScanGrid::new(2, 64, 0.0).is_err());
        let g = ScanGrid::new(2, 64, 1.0).unwrap();
        assert_eq!(g.surface_points().len(), 4 * 63);
    }

    #[test]
    fn ray_scan_examples() {
        let x = CoordVector::basis(2, 1).scaled(2.0);
        let g = gauge_by_ray_scan(|v| v.norm_l2() <= 1.0, &x, 10_000, 4.0).unwrap();
        assert!((g.value - 2.0).abs() <= g.error_bound);
        let y = CoordVector::from_values(vec![1.0, 1.0]);
        let g = gauge_by_ray_scan(|v| v.norm_l1() <= 1.0, &y, 10_000, 4.0).unwrap();
        assert!((g.value - 2.0).abs() <= g.error_bound);
        assert!(gauge_by_ray_scan(|v| v.norm_l1() <= 1.0, &y, 10_000, 1.0).is_err());
        assert!(gauge_by_ray_scan(|_| true, &y, 100, 1.0).is_err());
    }

    #[test]
    fn sphere_scan_examples() {
        let l2 = NormOracle::l2(2);
        let g = ScanGrid::covering(&l2, 256).unwrap();
        let v = dual_by_sphere_scan(&l2, &CoordFunctional::basis(2, 1), &g).unwrap();
        assert!((v.value - 1.0).abs() <= 1e-3);
        let linf = NormOracle::linf(2);
        let v = dual_by_sphere_scan(&linf, &CoordFunctional::from_values(vec![1.0, 1.0]), &g).unwrap();
        assert!((v.value - 2.0).abs() <= 1e-2);
        let l1 = NormOracle::l1(3);
        let g3 = ScanGrid::covering(&l1, 64).unwrap();
        let v = dual_by_sphere_scan(&l1, &CoordFunctional::from_values(vec![1.0, -1.0, 1.0]), &g3).unwrap();
        assert!((v.value - 1.0).abs() <= 1e-2);
    }

    #[test]
    fn hilbert_q_examples() {
        let e1 = CoordVector::basis(3, 1);
        assert_eq!(hilbert_q_oracle(&e1, &e1), 0.0);
        assert_eq!(hilbert_q_oracle(&e1, &-&e1), 4.0);
    }

    #[test]
    fn midpoint_scan_on_l2() {
        let mut rng = seeded_rng(1, 0);
        let v = convexity_midpoint_scan(&NormOracle::l2(3), 1000, &mut rng).unwrap();
        assert!(v.value <= 1e-12);
        assert!(convexity_midpoint_scan(&NormOracle::l2(3), 10, &mut rng).is_err());
    }
}
