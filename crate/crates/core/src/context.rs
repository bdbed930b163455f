use crate::error::{Result, SpinError};

/// Default absolute per-coefficient comparison tolerance.
pub const DEFAULT_COMPARE_TOL: f64 = 1e-10;

/// Number of spins together with the numerical knobs shared by every
/// operation on that spin planar algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinContext {
    n: usize,
    delta: f64,
    /// Absolute per-coefficient tolerance for element comparison.
    pub compare_tol: f64,
    /// Coefficients with modulus at or below this are dropped by [`SpinElement::pruned`].
    ///
    /// [`SpinElement::pruned`]: crate::SpinElement::pruned
    pub prune: f64,
}

impl SpinContext {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(SpinError::InvalidContext("number of spins must be at least 1".into()));
        }
        if n > u16::MAX as usize {
            return Err(SpinError::InvalidContext(format!("{n} spins is too many")));
        }
        Ok(SpinContext { n, delta: (n as f64).sqrt(), compare_tol: DEFAULT_COMPARE_TOL, prune: 0.0 })
    }

    pub fn with_compare_tol(mut self, tol: f64) -> Self {
        self.compare_tol = tol;
        self
    }

    pub fn with_prune(mut self, prune: f64) -> Self {
        self.prune = prune;
        self
    }

    /// Number of spins `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Loop modulus `δ = √N`.
    pub fn delta(&self) -> f64 {
        self.delta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_squared_is_n() {
        for n in 1..10 {
            let ctx = SpinContext::new(n).unwrap();
            assert!((ctx.delta() * ctx.delta() - n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_zero_spins() {
        assert!(SpinContext::new(0).is_err());
    }
}
