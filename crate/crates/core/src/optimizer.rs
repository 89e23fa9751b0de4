//! Grid-then-golden-section minimization over measurement directions.
//!
//! A coarse `theta_grid × phi_grid` scan picks the basin, then alternating
//! golden-section passes on θ and φ polish the minimum. The procedure is
//! deterministic: no random restarts, and grid ties go to the smallest θ,
//! then the smallest φ.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::MeasurementAngles;

/// Cap on alternating θ/φ rounds. Refinement normally stops earlier, at the
/// first round that gains no more than `ROUND_STALL`.
const MAX_REFINE_ROUNDS: usize = 200;
const ROUND_STALL: f64 = 1e-15;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Grid points on `[0, π]`, endpoints included.
    pub theta_grid: usize,
    /// Grid points on `[0, 2π)`.
    pub phi_grid: usize,
    /// Golden-section stops once the bracket is narrower than this (radians).
    pub refine_tolerance: f64,
    /// Iteration cap for a single golden-section pass.
    pub max_refine_iters: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            theta_grid: 64,
            phi_grid: 32,
            refine_tolerance: 1e-8,
            max_refine_iters: 200,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.theta_grid < 8 || self.phi_grid < 8 {
            return Err(Error::InvalidConfig(format!(
                "grids must have at least 8 points (theta {}, phi {})",
                self.theta_grid, self.phi_grid
            )));
        }
        if !(self.refine_tolerance > 0.0 && self.refine_tolerance.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "refine tolerance must be positive, got {}",
                self.refine_tolerance
            )));
        }
        Ok(())
    }

    fn theta_step(&self) -> f64 {
        PI / (self.theta_grid - 1) as f64
    }

    fn phi_step(&self) -> f64 {
        2.0 * PI / self.phi_grid as f64
    }
}

#[derive(Debug, Clone)]
pub struct OptimumReport {
    pub angles: MeasurementAngles,
    pub value: f64,
    /// Best value seen on the coarse grid.
    pub grid_value: f64,
    /// `grid_value − value`, never negative.
    pub refinement_gain: f64,
    /// Best value after the grid stage and after every refinement pass.
    pub history: Vec<f64>,
}

pub fn minimize<F>(objective: F, cfg: &OptimizerConfig) -> Result<OptimumReport>
where
    F: Fn(MeasurementAngles) -> Result<f64> + Sync,
{
    cfg.validate()?;
    let (dt, dp) = (cfg.theta_step(), cfg.phi_step());

    let rows: Vec<Vec<f64>> = (0..cfg.theta_grid)
        .into_par_iter()
        .map(|i| {
            let theta = (i as f64 * dt).min(PI);
            (0..cfg.phi_grid)
                .map(|j| objective(MeasurementAngles::new(theta, j as f64 * dp)?))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;

    let (mut bi, mut bj, mut best) = (0, 0, f64::INFINITY);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v < best {
                (bi, bj, best) = (i, j, v);
            }
        }
    }
    if !best.is_finite() {
        return Err(Error::OptimizerFailure(
            "objective is not finite anywhere on the grid".into(),
        ));
    }
    let grid_value = best;
    let mut theta = (bi as f64 * dt).min(PI);
    let mut phi = bj as f64 * dp;
    let mut history = vec![best];

    for _ in 0..MAX_REFINE_ROUNDS {
        let start = best;
        let (t, v) = golden_section(
            |t| objective(MeasurementAngles::new(t, phi)?),
            (theta - dt).max(0.0),
            (theta + dt).min(PI),
            cfg,
        )?;
        if v < best {
            (theta, best) = (t, v);
        }
        history.push(best);

        let (p, v) = golden_section(
            |p| objective(MeasurementAngles::new(theta, p)?),
            phi - dp,
            phi + dp,
            cfg,
        )?;
        if v < best {
            (phi, best) = (p.rem_euclid(2.0 * PI), v);
        }
        history.push(best);
        if start - best <= ROUND_STALL {
            break;
        }
    }

    Ok(OptimumReport {
        angles: MeasurementAngles::new(theta, phi)?,
        value: best,
        grid_value,
        refinement_gain: grid_value - best,
        history,
    })
}

/// Golden-section search on `[lo, hi]`; returns the best point evaluated.
fn golden_section<F>(f: F, mut lo: f64, mut hi: f64, cfg: &OptimizerConfig) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    let (mut best_x, mut best_f) = if f2 < f1 { (x2, f2) } else { (x1, f1) };

    let mut iters = 0;
    while hi - lo > cfg.refine_tolerance {
        if iters == cfg.max_refine_iters {
            return Err(Error::OptimizerFailure(format!(
                "bracket still {:.3e} wide after {} iterations",
                hi - lo,
                iters
            )));
        }
        iters += 1;
        if f1 <= f2 {
            hi = x2;
            (x2, f2) = (x1, f1);
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
            if f1 < best_f {
                (best_x, best_f) = (x1, f1);
            }
        } else {
            lo = x1;
            (x1, f1) = (x2, f2);
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
            if f2 < best_f {
                (best_x, best_f) = (x2, f2);
            }
        }
    }
    Ok((best_x, best_f))
}
