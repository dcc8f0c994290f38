//! Finitely supported coordinate sequences.
//!
//! Points and functionals both live on the canonical basis `e_1, e_2, ...`.
//! Storage is dense up to a dimension bound; coordinates past the stored
//! length are zero, so vectors of different lengths compare and pair as
//! sequences.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of a sequence space with finite support inside `1..=dim`.
#[derive(Clone, Default, Serialize, Deserialize)]
pub struct CoordVector {
    values: Vec<f64>,
}

impl CoordVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            values: vec![0.0; dim],
        }
    }

    pub fn from_values(values: Vec<f64>) -> Self {
        Self { values }
    }

    /// Builds a vector from `(index, value)` pairs with 1-based indices.
    pub fn from_entries(dim: usize, entries: &[(usize, f64)]) -> Result<Self> {
        let mut v = Self::zeros(dim);
        let mut seen = vec![false; dim];
        for &(index, value) in entries {
            if index == 0 || index > dim {
                return Err(Error::SupportOutOfBounds { index, bound: dim });
            }
            if seen[index - 1] {
                return Err(Error::InvalidParameter(format!(
                    "duplicate coordinate index {index}"
                )));
            }
            seen[index - 1] = true;
            v.values[index - 1] = value;
        }
        Ok(v)
    }

    /// The canonical basis vector `e_index` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(
            index >= 1 && index <= dim,
            "basis index {index} outside 1..={dim}"
        );
        let mut v = Self::zeros(dim);
        v.values[index - 1] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Coordinate `index` (1-based); zero past the stored length.
    pub fn get(&self, index: usize) -> f64 {
        assert!(index >= 1, "coordinates are 1-based");
        self.values.get(index - 1).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, index: usize, value: f64) {
        assert!(index >= 1, "coordinates are 1-based");
        if index > self.values.len() {
            self.values.resize(index, 0.0);
        }
        self.values[index - 1] = value;
    }

    /// Nonzero entries as `(index, value)`, the canonical sparse form.
    pub fn entries(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (i + 1, *v))
    }

    /// Largest index carrying a nonzero coordinate.
    pub fn support_max(&self) -> Option<usize> {
        self.values.iter().rposition(|v| *v != 0.0).map(|i| i + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }

    pub fn dot(&self, other: &CoordVector) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_l1(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }

    pub fn norm_l2(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_linf(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * t).collect(),
        }
    }

    /// `self + t * other`, padded to the longer length.
    pub fn add_scaled(&self, t: f64, other: &CoordVector) -> Self {
        let n = self.dim().max(other.dim());
        let mut values = self.values.clone();
        values.resize(n, 0.0);
        for (i, b) in other.values.iter().enumerate() {
            values[i] += t * b;
        }
        Self { values }
    }

    /// The coordinate projection `P_n`: keeps coordinates `1..=n`.
    pub fn truncated(&self, n: usize) -> Self {
        let mut values: Vec<f64> = self.values.iter().take(n).copied().collect();
        values.resize(n, 0.0);
        Self { values }
    }

    /// Same sequence stored with length `dim`; fails if that would drop support.
    pub fn padded(&self, dim: usize) -> Result<Self> {
        if let Some(s) = self.support_max() {
            if s > dim {
                return Err(Error::SupportOutOfBounds {
                    index: s,
                    bound: dim,
                });
            }
        }
        Ok(self.truncated(dim))
    }
}

impl PartialEq for CoordVector {
    fn eq(&self, other: &Self) -> bool {
        let n = self.dim().max(other.dim());
        (1..=n).all(|i| self.get(i) == other.get(i))
    }
}

impl fmt::Debug for CoordVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoordVector{:?}", self.values)
    }
}

impl Add for &CoordVector {
    type Output = CoordVector;
    fn add(self, rhs: &CoordVector) -> CoordVector {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &CoordVector {
    type Output = CoordVector;
    fn sub(self, rhs: &CoordVector) -> CoordVector {
        self.add_scaled(-1.0, rhs)
    }
}

impl Mul<&CoordVector> for f64 {
    type Output = CoordVector;
    fn mul(self, rhs: &CoordVector) -> CoordVector {
        rhs.scaled(self)
    }
}

impl Neg for &CoordVector {
    type Output = CoordVector;
    fn neg(self) -> CoordVector {
        self.scaled(-1.0)
    }
}

/// A finitely supported element of the dual sequence space.
#[derive(Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CoordFunctional {
    coords: CoordVector,
}

impl CoordFunctional {
    pub fn zeros(dim: usize) -> Self {
        Self {
            coords: CoordVector::zeros(dim),
        }
    }

    pub fn from_values(values: Vec<f64>) -> Self {
        Self {
            coords: CoordVector::from_values(values),
        }
    }

    pub fn from_entries(dim: usize, entries: &[(usize, f64)]) -> Result<Self> {
        CoordVector::from_entries(dim, entries).map(|coords| Self { coords })
    }

    /// The coordinate functional `e_index^*`.
    pub fn basis(dim: usize, index: usize) -> Self {
        Self {
            coords: CoordVector::basis(dim, index),
        }
    }

    /// The functional with the same coordinates as `v` (the Riesz map on the
    /// canonical basis).
    pub fn from_vector(v: &CoordVector) -> Self {
        Self { coords: v.clone() }
    }

    pub fn coords(&self) -> &CoordVector {
        &self.coords
    }

    pub fn values(&self) -> &[f64] {
        self.coords.values()
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn get(&self, index: usize) -> f64 {
        self.coords.get(index)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// `<self, x> = sum_i self_i x_i`.
    pub fn pair(&self, x: &CoordVector) -> f64 {
        self.coords.dot(x)
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self {
            coords: self.coords.scaled(t),
        }
    }

    pub fn add_scaled(&self, t: f64, other: &CoordFunctional) -> Self {
        Self {
            coords: self.coords.add_scaled(t, &other.coords),
        }
    }

    /// `self ∘ P` for the rank-one projection `P x = x - <psi, x> v`.
    pub fn compose_projection(&self, psi: &CoordFunctional, v: &CoordVector) -> Self {
        self.add_scaled(-self.pair(v), psi)
    }

    pub fn truncated(&self, n: usize) -> Self {
        Self {
            coords: self.coords.truncated(n),
        }
    }

    pub fn norm_l1(&self) -> f64 {
        self.coords.norm_l1()
    }

    pub fn norm_l2(&self) -> f64 {
        self.coords.norm_l2()
    }

    pub fn norm_linf(&self) -> f64 {
        self.coords.norm_linf()
    }
}

impl fmt::Debug for CoordFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoordFunctional{:?}", self.coords.values())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_reject_duplicates_and_out_of_range() {
        assert!(CoordVector::from_entries(3, &[(1, 1.0), (1, 2.0)]).is_err());
        assert!(matches!(
            CoordVector::from_entries(3, &[(4, 1.0)]),
            Err(Error::SupportOutOfBounds { index: 4, bound: 3 })
        ));
        assert!(CoordVector::from_entries(3, &[(0, 1.0)]).is_err());
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        let a = CoordVector::from_values(vec![1.0, 0.0]);
        let b = CoordVector::from_values(vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(a, b);
        assert_ne!(a, CoordVector::from_values(vec![1.0, 0.0, 1e-300]));
    }

    #[test]
    fn canonical_entries_drop_zeros() {
        let v = CoordVector::from_values(vec![0.0, 2.0, 0.0, -1.0]);
        let e: Vec<_> = v.entries().collect();
        assert_eq!(e, vec![(2, 2.0), (4, -1.0)]);
        assert_eq!(v.support_max(), Some(4));
        assert_eq!(CoordVector::zeros(5).support_max(), None);
    }

    #[test]
    fn pairing_across_lengths() {
        let f = CoordFunctional::from_values(vec![1.0, 2.0]);
        let x = CoordVector::from_values(vec![3.0, 4.0, 5.0]);
        assert_eq!(f.pair(&x), 11.0);
    }

    #[test]
    fn projection_composition() {
        // P0 x = x - x_1 e_1; (e_3 + e_1) ∘ P0 = e_3
        let psi = CoordFunctional::basis(4, 1);
        let v = CoordVector::basis(4, 1);
        let phi = CoordFunctional::from_values(vec![1.0, 0.0, 1.0, 0.0]);
        let composed = phi.compose_projection(&psi, &v);
        assert_eq!(composed, CoordFunctional::basis(4, 3));
    }

    #[test]
    fn padded_refuses_to_drop_support() {
        let v = CoordVector::from_values(vec![0.0, 0.0, 1.0]);
        assert!(v.padded(2).is_err());
        assert_eq!(v.padded(5).unwrap().dim(), 5);
    }
}
