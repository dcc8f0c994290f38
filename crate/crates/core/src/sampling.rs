//! Seeded random points for audits and ascent starts.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::coord::CoordVector;

/// Uniform point of the cube `[-1, 1]^dim`.
pub fn uniform_cube<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CoordVector {
    CoordVector::from_values((0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect())
}

/// Standard Gaussian vector in `R^dim`.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CoordVector {
    CoordVector::from_values((0..dim).map(|_| rng.sample(StandardNormal)).collect())
}

/// Uniform point of the Euclidean unit sphere.
pub fn l2_sphere<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CoordVector {
    loop {
        let g = gaussian(rng, dim);
        let n = g.norm_l2();
        if n > 1e-12 {
            return g.scaled(1.0 / n);
        }
    }
}

/// Random point of the unit sphere of the sup norm: a uniform cube point
/// with one random coordinate pushed to `±1`.
pub fn linf_sphere<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CoordVector {
    let mut x = uniform_cube(rng, dim);
    let i = rng.random_range(1..=dim);
    let s = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    x.set(i, s);
    x
}
