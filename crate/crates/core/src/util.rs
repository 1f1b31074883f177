//! Small numeric helpers shared across modules.

/// Compensated (Kahan) accumulator. Long spacing/kernel sums cancel to many
/// digits below their term magnitudes, so plain summation is not enough.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum
    }
}

/// Next representable `f64` above `x`, for stepping just past a piece
/// boundary. Only used for finite positive `x`.
#[inline]
pub(crate) fn next_up(x: f64) -> f64 {
    debug_assert!(x.is_finite() && x > 0.0);
    f64::from_bits(x.to_bits() + 1)
}
