//! Multi-start maximization of `V_d(v)` over the positive orthant of the unit
//! sphere. The positive orthant is parametrized free of constraints by
//! `v = (1, exp(u_1), ..., exp(u_{d-1}))` (the objective is scale-invariant),
//! each start runs Nelder-Mead, and the starts are reduced in index order.

use super::{float, Direction};
use crate::error::{Error, Result};
use crate::optimize::NelderMead;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct VdMaxOptions {
    /// Number of optimizer starts; the first start is always the all-ones
    /// direction.
    pub starts: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for VdMaxOptions {
    fn default() -> Self {
        Self {
            starts: 32,
            seed: 0,
            tol: 1e-10,
            max_iter: 4000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VdMaxResult {
    /// Best direction found, positive-normalized and of unit length.
    pub direction: Vec<f64>,
    pub value: f64,
    pub converged: bool,
    pub starts: usize,
    pub warnings: Vec<String>,
}

fn direction_from_params(u: &[f64]) -> Vec<f64> {
    let mut v = Vec::with_capacity(u.len() + 1);
    v.push(1.0);
    v.extend(u.iter().map(|x| x.exp()));
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

/// Maximizes `V_d(v)` over nonzero directions. Returns the best direction and
/// value; non-convergence is reported in `warnings` with the best-so-far
/// result, never silently.
pub fn vd_max(d: usize, opts: &VdMaxOptions) -> Result<VdMaxResult> {
    if d < 2 {
        return Err(Error::Precondition("vd_max needs dimension >= 2".into()));
    }
    if d > float::MAX_FLOAT_DIM {
        return Err(Error::DimensionTooLarge {
            dim: d,
            max: float::MAX_FLOAT_DIM,
        });
    }
    let starts = opts.starts.max(1);
    let objective = |u: &[f64]| -> f64 {
        let v = direction_from_params(u);
        match Direction::new(v) {
            Ok(dir) => float::vd_of_direction(&dir).unwrap_or(f64::NEG_INFINITY),
            Err(_) => f64::NEG_INFINITY,
        }
    };

    let nm = NelderMead {
        ftol: opts.tol,
        xtol: 1e-9,
        max_iter: opts.max_iter,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    let mut any_converged = false;
    for start in 0..starts {
        let u0: Vec<f64> = if start == 0 {
            vec![0.0; d - 1]
        } else {
            (0..d - 1).map(|_| rng.gen_range(-1.2..1.2)).collect()
        };
        let r = nm.maximize(objective, &u0, 0.35);
        let v = direction_from_params(&r.x);
        any_converged |= r.converged;
        let candidate = (r.value, v, r.converged);
        best = Some(match best {
            None => candidate,
            Some(cur) => {
                // numerically tied optima resolve to the lexicographically
                // smallest positive-normalized direction
                if candidate.0 > cur.0 + 1e-9 {
                    candidate
                } else if (candidate.0 - cur.0).abs() <= 1e-9
                    && candidate.1.as_slice() < cur.1.as_slice()
                {
                    (cur.0.max(candidate.0), candidate.1, candidate.2 || cur.2)
                } else {
                    cur
                }
            }
        });
    }
    let (value, direction, _) = best.unwrap();
    let mut warnings = Vec::new();
    if !any_converged {
        warnings.push(format!(
            "no start converged within {} iterations; reporting best-so-far",
            opts.max_iter
        ));
    }
    Ok(VdMaxResult {
        direction,
        value,
        converged: any_converged,
        starts,
        warnings,
    })
}
