//! Priestley-Chao spacings estimator of the coefficient density.
//!
//! For sorted angles `z_(1) <= ... <= z_(n)` with paired values `u_[j]`,
//! bandwidth `h` and threshold `delta`, the estimate at `a = (a0, a1)` is
//!
//! ```text
//! sum over the delta-window of
//!     K(u_[j] - a0 cos z_(j) - a1 sin z_(j); h) * (z_(j+1) - z_(j))
//! ```
//!
//! and zero when the window is empty. Evaluation is direct `O(n * grid)`
//! summation: the kernel argument couples the evaluation point with
//! `(z, u)` through cos/sin, so FFT-style binning does not apply.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::transform::TransformedDataset;
use crate::util::KahanSum;

/// Bandwidth, threshold and kernel for one estimator evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    pub h: f64,
    pub delta: f64,
    pub kernel: KernelSpec,
}

impl EstimatorConfig {
    pub fn new(h: f64, delta: f64, kernel: KernelSpec) -> Result<Self> {
        let cfg = Self { h, delta, kernel };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "bandwidth h must be positive and finite, got {}",
                self.h
            )));
        }
        if !(0.0..=std::f64::consts::FRAC_PI_4).contains(&self.delta) {
            return Err(Error::InvalidParameter(format!(
                "threshold delta must lie in [0, pi/4], got {}",
                self.delta
            )));
        }
        Ok(())
    }
}

/// Evaluation point `a = (a0, a1)` in the coefficient plane.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EvalPoint {
    pub a0: f64,
    pub a1: f64,
}

impl EvalPoint {
    pub fn new(a0: f64, a1: f64) -> Result<Self> {
        if !a0.is_finite() || !a1.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "evaluation point must be finite, got ({a0}, {a1})"
            )));
        }
        Ok(Self { a0, a1 })
    }
}

/// Per-observation quantities shared by every evaluation point.
struct Precomputed {
    cos_z: Vec<f64>,
    sin_z: Vec<f64>,
    u: Vec<f64>,
    spacing: Vec<f64>,
}

fn precompute(data: &TransformedDataset, delta: f64) -> Result<Precomputed> {
    let win = data.window(delta)?;
    let z = data.z_sorted();
    let u = data.u_paired();
    let mut pre = Precomputed {
        cos_z: Vec::with_capacity(win.active.len()),
        sin_z: Vec::with_capacity(win.active.len()),
        u: Vec::with_capacity(win.active.len()),
        spacing: Vec::with_capacity(win.active.len()),
    };
    for j in win.active {
        pre.cos_z.push(z[j].cos());
        pre.sin_z.push(z[j].sin());
        pre.u.push(u[j]);
        pre.spacing.push(z[j + 1] - z[j]);
    }
    Ok(pre)
}

#[inline]
fn estimate_precomputed(pre: &Precomputed, kernel: &KernelSpec, h: f64, a: EvalPoint) -> f64 {
    let mut acc = KahanSum::new();
    for j in 0..pre.u.len() {
        let arg = pre.u[j] - a.a0 * pre.cos_z[j] - a.a1 * pre.sin_z[j];
        acc.add(kernel.evaluate_unchecked(arg, h) * pre.spacing[j]);
    }
    acc.total()
}

/// Estimate the coefficient density at a single point. Returns zero when
/// the `delta`-window is empty.
pub fn estimate_point(
    data: &TransformedDataset,
    cfg: &EstimatorConfig,
    a: EvalPoint,
) -> Result<f64> {
    cfg.validate()?;
    if data.n() < 2 {
        return Err(Error::SampleTooSmall { needed: 2, got: data.n() });
    }
    let pre = precompute(data, cfg.delta)?;
    Ok(estimate_precomputed(&pre, &cfg.kernel, cfg.h, a))
}

/// Estimate on a grid of points, sharing the per-observation
/// precomputation and parallelizing over grid nodes. Elementwise equal to
/// [`estimate_point`].
pub fn estimate_grid(
    data: &TransformedDataset,
    cfg: &EstimatorConfig,
    grid: &[EvalPoint],
) -> Result<Vec<f64>> {
    cfg.validate()?;
    if data.n() < 2 {
        return Err(Error::SampleTooSmall { needed: 2, got: data.n() });
    }
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty evaluation grid".into()));
    }
    let pre = precompute(data, cfg.delta)?;
    Ok(grid
        .par_iter()
        .map(|&a| estimate_precomputed(&pre, &cfg.kernel, cfg.h, a))
        .collect())
}
