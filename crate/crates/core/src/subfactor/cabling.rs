use serde::Serialize;

use crate::color::{Shading, SpinColor};
use crate::error::{Result, SpinError};

/// Cabling parameters `(ℓ, ε)` attached to a biunitary of width `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CablingData {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub shading: Shading,
}

impl CablingData {
    pub fn new(n: usize, color: SpinColor, ell: usize) -> Result<Self> {
        if ell == 0 || ell >= color.width {
            return Err(SpinError::RotationOutOfRange { ell, width: color.width });
        }
        Ok(CablingData { n, k: color.width, ell, shading: color.shading })
    }

    /// Number of strands capped off by `F`, `k − ℓ`.
    pub fn cap(&self) -> usize {
        self.k - self.ell
    }

    /// `(m, η)^(ℓ,ε) = (mℓ, εη^ℓ)`.
    pub fn cabled(&self, m: usize, eta: Shading) -> SpinColor {
        let shading = if eta.is_minus() { self.shading.flipped(self.ell) } else { self.shading };
        SpinColor::new(m * self.ell, shading)
    }

    /// Ambient color of `Q_(m,+)`.
    pub fn ambient(&self, m: usize) -> SpinColor {
        self.cabled(m, Shading::Plus)
    }

    /// Color of the staircase element `u_(m,+)`.
    pub fn staircase_color(&self, m: usize) -> SpinColor {
        SpinColor::new(m * self.ell + self.cap(), self.shading)
    }

    /// Row count of the level-`m` membership operator, `N^{mℓ+k−ℓ}`.
    pub fn rows(&self, m: usize) -> u128 {
        (self.n as u128).saturating_pow((m * self.ell + self.cap()) as u32)
    }

    /// Modulus of the cabled planar algebra, `δ^ℓ`.
    pub fn modulus(&self) -> f64 {
        (self.n as f64).sqrt().powi(self.ell as i32)
    }
}
