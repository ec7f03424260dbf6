//! Floating-point mirror of the exact path, for irrational directions and for
//! the sphere optimizer. The inclusion-exclusion sum cancels badly as the
//! dimension grows, so every signed accumulation is compensated and the path
//! is capped at `d <= 64`.

use super::{BoxSpec, Direction, Slab};
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

pub const MAX_FLOAT_DIM: usize = 64;

struct Reduced {
    coords: Vec<f64>,
    t: f64,
    dropped: usize,
}

fn reduce(v: &Direction<f64>, t: f64, side: f64) -> Reduced {
    let mut coords = Vec::with_capacity(v.dim());
    let mut t = t;
    let mut dropped = 0;
    for &c in v.coords() {
        if c == 0.0 {
            dropped += 1;
        } else if c < 0.0 {
            t -= side * c;
            coords.push(-c);
        } else {
            coords.push(c);
        }
    }
    Reduced { coords, t, dropped }
}

/// Depth-first signed subset sum with running partial arguments; each term's
/// argument is built by at most `d` additions, and the signed series is
/// accumulated with Neumaier compensation.
fn signed_subset_sum(scaled: &[f64], t: f64, power: i32) -> f64 {
    fn rec(scaled: &[f64], idx: usize, rest: f64, negate: bool, power: i32, acc: &mut CompensatedSum) {
        if rest <= 0.0 {
            return;
        }
        if idx == scaled.len() {
            let term = rest.powi(power);
            acc.add(if negate { -term } else { term });
            return;
        }
        rec(scaled, idx + 1, rest, negate, power, acc);
        rec(scaled, idx + 1, rest - scaled[idx], !negate, power, acc);
    }
    let mut acc = CompensatedSum::new();
    rec(scaled, 0, t, false, power, &mut acc);
    acc.value()
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).fold(1.0, |a, k| a * k as f64)
}

fn check_dims(dim: usize, box_: &BoxSpec<f64>) -> Result<()> {
    if dim != box_.dim {
        return Err(Error::DimensionMismatch);
    }
    if dim > MAX_FLOAT_DIM {
        return Err(Error::DimensionTooLarge {
            dim,
            max: MAX_FLOAT_DIM,
        });
    }
    Ok(())
}

/// `vol{x in [0,n]^d : v.x <= t}`. Requires every `v_i > 0`.
pub fn halfspace_box_volume(v: &Direction<f64>, t: f64, box_: &BoxSpec<f64>) -> Result<f64> {
    check_dims(v.dim(), box_)?;
    if let Some(i) = v.coords().iter().position(|&c| c <= 0.0) {
        return Err(Error::NonPositiveCoordinate(i));
    }
    let d = v.dim();
    let n = box_.side;
    let full: f64 = v.l1() * n;
    if t >= full {
        return Ok(n.powi(d as i32));
    }
    if t <= 0.0 {
        return Ok(0.0);
    }
    let scaled: Vec<f64> = v.coords().iter().map(|c| c * n).collect();
    let sum = signed_subset_sum(&scaled, t, d as i32);
    let prod: f64 = v.coords().iter().product();
    Ok(sum / (factorial_f64(d) * prod))
}

/// `vol_{d-1}(A(v,t) cap [0,n]^d) / |v|` for any nonzero direction.
pub fn slice_density(v: &Direction<f64>, t: f64, box_: &BoxSpec<f64>) -> Result<f64> {
    check_dims(v.dim(), box_)?;
    let n = box_.side;
    let red = reduce(v, t, n);
    let k = red.coords.len();
    if k == 0 {
        return Err(Error::ZeroDirection);
    }
    let prism = n.powi(red.dropped as i32);
    if k == 1 {
        if red.t >= 0.0 && red.t <= red.coords[0] * n {
            return Ok(prism / red.coords[0]);
        }
        return Ok(0.0);
    }
    let full: f64 = red.coords.iter().sum::<f64>() * n;
    if red.t <= 0.0 || red.t >= full {
        return Ok(0.0);
    }
    let scaled: Vec<f64> = red.coords.iter().map(|c| c * n).collect();
    let sum = signed_subset_sum(&scaled, red.t, (k - 1) as i32);
    let prod: f64 = red.coords.iter().product();
    Ok(sum * prism / (factorial_f64(k - 1) * prod))
}

/// True `(d-1)`-volume of the hyperplane slice.
pub fn slice_volume(v: &Direction<f64>, t: f64, box_: &BoxSpec<f64>) -> Result<f64> {
    Ok(slice_density(v, t, box_)? * v.l2())
}

/// Volume of the strip `{t - width < v.x < t}` inside the box, clamped to
/// `[0, n^d]`.
pub fn strip_volume(slab: &Slab<f64>, box_: &BoxSpec<f64>) -> Result<f64> {
    check_dims(slab.v.dim(), box_)?;
    if !(slab.width > 0.0) {
        return Err(Error::InvalidWidth);
    }
    let n = box_.side;
    let red = reduce(&slab.v, slab.t, n);
    let k = red.coords.len();
    if k == 0 {
        return Err(Error::ZeroDirection);
    }
    let prism = n.powi(red.dropped as i32);
    let dir = Direction::new(red.coords)?;
    let rbox = BoxSpec::new(k, n)?;
    let upper = halfspace_box_volume(&dir, red.t, &rbox)?;
    let lower = halfspace_box_volume(&dir, red.t - slab.width, &rbox)?;
    let vol = (upper - lower) * prism;
    Ok(vol.clamp(0.0, n.powi(box_.dim as i32)))
}

/// `V_d(v)` with float arithmetic, used by the sphere optimizer.
pub fn vd_of_direction(v: &Direction<f64>) -> Result<f64> {
    let red = reduce(v, 0.0, 1.0);
    let k = red.coords.len();
    if k == 0 {
        return Err(Error::ZeroDirection);
    }
    if k == 1 {
        return Ok(1.0);
    }
    if k > MAX_FLOAT_DIM {
        return Err(Error::DimensionTooLarge {
            dim: k,
            max: MAX_FLOAT_DIM,
        });
    }
    let l1: f64 = red.coords.iter().sum();
    let t0 = l1 / 2.0;
    let sum = signed_subset_sum(&red.coords, t0, (k - 1) as i32);
    let prod: f64 = red.coords.iter().product();
    Ok(l1 * sum / (factorial_f64(k - 1) * prod))
}
