//! Flat-top weight functions and the Fourier-inversion kernel.
//!
//! The weight `w(t) = (1 - t^{2m})^p` on `[-1, 1]` is even, equals one at
//! the origin with vanishing derivatives up to order `ell`, and is
//! `(ell+1)`-fold continuously differentiable once extended by zero. The
//! induced kernel
//!
//! ```text
//! K(x; h) = h^{-2} / (2 pi^2) * \int_0^1 w(s) s cos(s x / h) ds
//! ```
//!
//! is evaluated by panel-split Gauss-Legendre quadrature with a node budget
//! that grows with the oscillation frequency `|x| / h`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, LazyLock, Mutex};

use crate::error::{Error, Result};
use crate::util::KahanSum;

/// Gauss-Legendre nodes per quadrature panel. One panel then covers at
/// most ~25 radians of phase, which keeps the per-panel error far below
/// the 1e-9 target.
const PANEL_ORDER: usize = 32;

/// Weight function of flatness order `ell` plus its quadrature policy.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    ell: usize,
    m: u32,
    p: u32,
    quadrature_nodes: usize,
}

impl KernelSpec {
    /// Build the weight of flatness order `ell`: the smallest `m` with
    /// `2m >= ell + 1` and boundary exponent `p = ell + 2`.
    pub fn new(ell: usize) -> Self {
        Self::with_nodes(ell, 64)
    }

    /// Same as [`KernelSpec::new`] with an explicit base node budget.
    pub fn with_nodes(ell: usize, quadrature_nodes: usize) -> Self {
        let m = ((ell + 2) / 2) as u32;
        let p = (ell + 2) as u32;
        Self { ell, m, p, quadrature_nodes: quadrature_nodes.max(1) }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn quadrature_nodes(&self) -> usize {
        self.quadrature_nodes
    }

    /// Evaluate `w(t)`: exact polynomial inside `[-1, 1]`, zero outside.
    #[inline]
    pub fn weight(&self, t: f64) -> f64 {
        let t2 = t * t;
        if t2 > 1.0 {
            return 0.0;
        }
        (1.0 - t2.powi(self.m as i32)).powi(self.p as i32)
    }

    /// Evaluate `K(x; h)`.
    pub fn evaluate(&self, x: f64, h: f64) -> Result<f64> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "bandwidth h must be positive and finite, got {h}"
            )));
        }
        Ok(self.evaluate_unchecked(x, h))
    }

    /// `evaluate` without the bandwidth check, for hot loops that have
    /// validated their configuration once.
    #[inline]
    pub(crate) fn evaluate_unchecked(&self, x: f64, h: f64) -> f64 {
        let y = (x / h).abs();
        let budget = self.node_budget(y);
        self.profile(y, budget) / (2.0 * PI * PI * h * h)
    }

    /// Evaluate with an explicit total node budget (diagnostic hook for
    /// quadrature-convergence checks).
    pub fn evaluate_with_budget(&self, x: f64, h: f64, budget: usize) -> Result<f64> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "bandwidth h must be positive and finite, got {h}"
            )));
        }
        let y = (x / h).abs();
        Ok(self.profile(y, budget.max(1)) / (2.0 * PI * PI * h * h))
    }

    /// Total node budget: at least the configured base, plus enough nodes
    /// to keep ~8 per oscillation period of `cos(s y)` on `[0, 1]`.
    #[inline]
    fn node_budget(&self, y: f64) -> usize {
        let oscillation = (4.0 * y / PI).ceil() as usize;
        self.quadrature_nodes.max(oscillation + 32)
    }

    /// `\int_0^1 w(s) s cos(s y) ds` by panel-split Gauss-Legendre.
    fn profile(&self, y: f64, budget: usize) -> f64 {
        let panels = budget.div_ceil(PANEL_ORDER).max(1);
        let rule = gauss_legendre(PANEL_ORDER);
        let width = 1.0 / panels as f64;
        let half = 0.5 * width;
        let mut acc = KahanSum::new();
        for panel in 0..panels {
            let center = (panel as f64 + 0.5) * width;
            for &(node, w_q) in rule.iter() {
                let s = center + half * node;
                acc.add(half * w_q * self.weight(s) * s * (s * y).cos());
            }
        }
        acc.total()
    }
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// computed by Newton iteration on the Legendre recurrence and cached.
pub fn gauss_legendre(n: usize) -> Arc<Vec<(f64, f64)>> {
    static CACHE: LazyLock<Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>> =
        LazyLock::new(|| Mutex::new(HashMap::new()));
    let mut cache = CACHE.lock().expect("gauss-legendre cache poisoned");
    cache.entry(n).or_insert_with(|| Arc::new(compute_gauss_legendre(n))).clone()
}

fn compute_gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut rule = vec![(0.0, 0.0); n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp;
        loop {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Newton converged to the i-th largest positive root; fill both
        // symmetric positions.
        rule[i] = (-x, w);
        rule[n - 1 - i] = (x, w);
    }
    if n % 2 == 1 {
        rule[n / 2].0 = 0.0;
    }
    rule
}

/// Legendre polynomial `P_n(x)` and its derivative via the three-term
/// recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
