//! The double-circle condition as a linear map.
//!
//! With `c = k − ℓ` and `u_m` the staircase element,
//! `σ̃(x) = u_m · I^c(x) · u_m*` and `F = δ^{−c} I_L^c ∘ E_L^c`, where `I`, `E` are
//! the right inclusion and expectation and `I_L`, `E_L` their left versions.
//! `x` belongs to the level-`m` space iff `σ̃(x)` lies in the range of `F`, i.e.
//! iff `L(x) = σ̃(x) − F(σ̃(x))` vanishes.

use crate::color::SpinColor;
use crate::element::{SpinElement, C64, ONE, ZERO};
use crate::error::{Result, SpinError};
use crate::numerics::ComplexMatrix;
use crate::parallel::Execution;
use crate::tangle::{cond_left_pow, cond_right_pow, incl_left_pow, incl_right_pow, mult};

#[derive(Debug, Clone)]
pub struct MembershipOperator<'a> {
    pub level: usize,
    /// Color of the space being cut down.
    pub ambient: SpinColor,
    /// Number of capped strands `c = k − ℓ`.
    pub cap: usize,
    u: &'a SpinElement,
    delta: f64,
}

impl<'a> MembershipOperator<'a> {
    /// `u` must have color `(w + cap, ε)` where `ambient = (w, ε)`.
    pub fn new(level: usize, ambient: SpinColor, cap: usize, u: &'a SpinElement) -> Result<Self> {
        let expected = SpinColor::new(ambient.width + cap, ambient.shading);
        if u.color() != expected {
            return Err(SpinError::ColorMismatch { left: u.color(), right: expected });
        }
        Ok(MembershipOperator { level, ambient, cap, u, delta: (u.n() as f64).sqrt() })
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }

    /// Color of `σ̃(x)`.
    pub fn target(&self) -> SpinColor {
        self.u.color()
    }

    /// Color of the partner `y`.
    pub fn partner_color(&self) -> SpinColor {
        SpinColor::new(self.ambient.width, self.ambient.shading.flipped(self.cap))
    }

    pub fn columns(&self) -> usize {
        self.ambient.dimension(self.n())
    }

    pub fn rows(&self) -> usize {
        self.target().dimension(self.n())
    }

    fn check(&self, x: &SpinElement, color: SpinColor) -> Result<()> {
        if x.color() != color || x.n() != self.n() {
            return Err(SpinError::ColorMismatch { left: x.color(), right: color });
        }
        Ok(())
    }

    /// `σ̃(x) = u_m I^c(x) u_m*`, an isometry for the normalized trace.
    pub fn sigma_tilde(&self, x: &SpinElement) -> Result<SpinElement> {
        self.check(x, self.ambient)?;
        mult(&mult(self.u, &incl_right_pow(x, self.cap)?)?, &self.u.star())
    }

    /// `σ = δ^{−c/2} σ̃`, an isometry for the picture inner product.
    pub fn sigma(&self, x: &SpinElement) -> Result<SpinElement> {
        Ok(self.sigma_tilde(x)?.scale_real(self.delta.powf(-(self.cap as f64) / 2.0)))
    }

    /// `σ̃*(z) = δ^{−c} E^c(u_m* z u_m)`.
    pub fn sigma_tilde_adjoint(&self, z: &SpinElement) -> Result<SpinElement> {
        self.check(z, self.target())?;
        let inner = mult(&mult(&self.u.star(), z)?, self.u)?;
        Ok(cond_right_pow(&inner, self.cap)?.scale_real(self.delta.powi(-(self.cap as i32))))
    }

    /// The projection `F = δ^{−c} I_L^c E_L^c` onto elements with `c` left through strands.
    pub fn f_projection(&self, z: &SpinElement) -> Result<SpinElement> {
        self.check(z, self.target())?;
        Ok(incl_left_pow(&cond_left_pow(z, self.cap)?, self.cap)?.scale_real(self.delta.powi(-(self.cap as i32))))
    }

    /// `L(x) = σ̃(x) − F σ̃(x)`.
    pub fn apply(&self, x: &SpinElement) -> Result<SpinElement> {
        let s = self.sigma_tilde(x)?;
        s.sub(&self.f_projection(&s)?)
    }

    /// `σ̃* F σ̃ (x)`; equals `x` exactly on the level-`m` space.
    pub fn double_circle(&self, x: &SpinElement) -> Result<SpinElement> {
        self.sigma_tilde_adjoint(&self.f_projection(&self.sigma_tilde(x)?)?)
    }

    /// Partner `y = δ^{−c} E_L^c(σ̃(x))`, so that `σ̃(x) = I_L^c(y)` on the level-`m` space.
    pub fn partner(&self, x: &SpinElement) -> Result<SpinElement> {
        Ok(cond_left_pow(&self.sigma_tilde(x)?, self.cap)?.scale_real(self.delta.powi(-(self.cap as i32))))
    }

    /// Inverse of [`partner`](Self::partner): `x = δ^{−c} E^c(u_m* I_L^c(y) u_m)`.
    pub fn reconstruct(&self, y: &SpinElement) -> Result<SpinElement> {
        self.check(y, self.partner_color())?;
        self.sigma_tilde_adjoint(&incl_left_pow(y, self.cap)?)
    }

    /// Dense matrix of `L` in ordinal bases: column `j` is `L(e_j)`.
    pub fn assemble(&self, exec: Execution) -> Result<ComplexMatrix> {
        let rows = self.rows();
        let n = self.n();
        let ambient = self.ambient;
        let columns = exec.map_range(self.columns(), |j| -> Result<Vec<C64>> {
            let e = SpinElement::from_ordinal(n, ambient, j as u64, ONE);
            let mut col = vec![ZERO; rows];
            for (&o, &c) in self.apply(&e)?.raw() {
                col[o as usize] = c;
            }
            Ok(col)
        });
        let columns = columns.into_iter().collect::<Result<Vec<_>>>()?;
        ComplexMatrix::from_columns(rows, &columns)
    }

    /// Dense matrix of `I_L^c` from the partner color into the target color.
    pub fn assemble_left_inclusion(&self) -> Result<ComplexMatrix> {
        let partner = self.partner_color();
        let n = self.n();
        let rows = self.rows();
        let columns = (0..partner.dimension(n))
            .map(|j| {
                let img = incl_left_pow(&SpinElement::from_ordinal(n, partner, j as u64, ONE), self.cap)?;
                let mut col = vec![ZERO; rows];
                for (&o, &c) in img.raw() {
                    col[o as usize] = c;
                }
                Ok(col)
            })
            .collect::<Result<Vec<_>>>()?;
        ComplexMatrix::from_columns(rows, &columns)
    }

    /// Relative residual of the best solution `y` of `I_L^c(y) = σ̃(x)`.
    pub fn partner_solvability(&self, x: &SpinElement, inclusion: &ComplexMatrix) -> Result<f64> {
        let s = self.sigma_tilde(x)?;
        let b = s.to_dense();
        let y = inclusion.least_squares(&b, 1e-12)?;
        let fitted = inclusion.matmul(&ComplexMatrix::from_columns(y.len(), &[y])?)?.column(0);
        let err: f64 = fitted.iter().zip(&b).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        let scale: f64 = b.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        Ok(if scale == 0.0 { 0.0 } else { err / scale })
    }
}
