//! Volumes of halfspace, hyperplane-slice, and strip intersections with the
//! box `[0,n]^d`, and the direction functional `V_d(v)` together with its
//! maximum over the sphere.
//!
//! Two numeric paths coexist. The [`exact`] path works over arbitrary-precision
//! rationals and is exact whenever the inputs are rational; the [`float`] path
//! mirrors it in `f64` with compensated summation. Quantities that are
//! irrational for rational inputs (a slice's true `(d-1)`-volume carries a
//! factor `|v|`) are returned as floats built from an exact rational core.

use crate::error::{Error, Result};
use crate::numeric::{rat_to_f64, Rat};
use num_traits::{Signed, Zero};

pub mod exact;
pub mod float;
mod vdmax;

pub use vdmax::{vd_max, VdMaxOptions, VdMaxResult};

/// A nonzero direction vector, the hyperplane/strip normal.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction<T> {
    coords: Vec<T>,
}

impl<T: Zero> Direction<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch);
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroDirection);
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }
}

impl<T: Zero + Signed + Clone> Direction<T> {
    /// Flips every negative coordinate, returning the flip pattern alongside.
    /// Coordinate reflections are symmetries of the box, so every operation
    /// here reduces to the positive-normalized form.
    pub fn positive_normalized(&self) -> (Self, Vec<bool>) {
        let flips: Vec<bool> = self.coords.iter().map(|c| c.is_negative()).collect();
        let coords = self
            .coords
            .iter()
            .map(|c| if c.is_negative() { -c.clone() } else { c.clone() })
            .collect();
        (Self { coords }, flips)
    }

    pub fn is_positive_normalized(&self) -> bool {
        !self.coords.iter().any(|c| c.is_negative())
    }

    /// The l1 norm.
    pub fn l1(&self) -> T {
        let mut acc = T::zero();
        for c in &self.coords {
            acc = acc + c.abs();
        }
        acc
    }
}

impl Direction<Rat> {
    /// Euclidean norm, as a float (it is irrational for most rational inputs).
    pub fn l2_f64(&self) -> f64 {
        let sq: Rat = self.coords.iter().map(|c| c * c).sum();
        rat_to_f64(&sq).sqrt()
    }

    pub fn to_f64(&self) -> Direction<f64> {
        Direction {
            coords: self.coords.iter().map(rat_to_f64).collect(),
        }
    }
}

impl Direction<f64> {
    pub fn l2(&self) -> f64 {
        crate::linalg::norm(&self.coords)
    }

    /// Rescales to unit Euclidean length.
    pub fn unit(&self) -> Direction<f64> {
        let n = self.l2();
        Direction {
            coords: self.coords.iter().map(|c| c / n).collect(),
        }
    }
}

/// The box `[0, n]^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSpec<T> {
    pub dim: usize,
    pub side: T,
}

impl<T: Zero + PartialOrd> BoxSpec<T> {
    pub fn new(dim: usize, side: T) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch);
        }
        if side <= T::zero() {
            return Err(Error::InvalidBox);
        }
        Ok(Self { dim, side })
    }
}

impl<T: Zero + PartialOrd + num_traits::One> BoxSpec<T> {
    /// The unit cube `[0,1]^d`.
    pub fn unit(dim: usize) -> Result<Self> {
        Self::new(dim, T::one())
    }
}

/// The open strip `{x : t - width < v.x < t}`, with `width` measured in
/// `v.x` units. The strip of the counting problem has `width = v.e` for
/// positive-normalized `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Slab<T> {
    pub v: Direction<T>,
    pub t: T,
    pub width: T,
}

impl<T: Zero + PartialOrd> Slab<T> {
    pub fn new(v: Direction<T>, t: T, width: T) -> Result<Self> {
        if width <= T::zero() {
            return Err(Error::InvalidWidth);
        }
        Ok(Self { v, t, width })
    }
}

/// Thresholds of the central section (`t0`) and central strip (`t1`, `t2`]).
#[derive(Debug, Clone, PartialEq)]
pub struct CentralParams<T> {
    pub t0: T,
    pub t1: T,
    pub t2: T,
}

/// `t0 = n(v.e)/2`, `t1 = t0 - (v.e)/2`, `t2 = t0 + (v.e)/2` for
/// positive-normalized `v`.
pub fn central_params<T>(v: &Direction<T>, box_: &BoxSpec<T>) -> Result<CentralParams<T>>
where
    T: Signed + Clone + PartialOrd,
{
    if !v.is_positive_normalized() {
        return Err(Error::Precondition(
            "central_params expects a positive-normalized direction".into(),
        ));
    }
    if v.dim() != box_.dim {
        return Err(Error::DimensionMismatch);
    }
    let l1 = v.l1();
    let two = T::one() + T::one();
    let half = l1 / two;
    let t0 = box_.side.clone() * half.clone();
    let t1 = t0.clone() - half.clone();
    let t2 = t0.clone() + half;
    Ok(CentralParams { t0, t1, t2 })
}
