use crate::element::SpinElement;
use crate::error::{Result, SpinError};
use crate::qit::is_biunitary;
use crate::tangle::{incl_left_pow, incl_right_pow, mult, rotate_pow};

use super::cabling::CablingData;

/// The staircase elements `u_(m,+)` for `m = 0..=max_level`.
#[derive(Debug, Clone)]
pub struct Staircase {
    pub cabling: CablingData,
    elements: Vec<SpinElement>,
    /// `u` at odd steps, `R^{−ℓ}(u*)` at even steps.
    odd_step: SpinElement,
    even_step: SpinElement,
}

impl Staircase {
    /// Fails unless `u` is `{0,ℓ}`-biunitary at tolerance `tol`.
    pub fn build(u: &SpinElement, ell: usize, max_level: usize, tol: f64) -> Result<Self> {
        let cabling = CablingData::new(u.n(), u.color(), ell)?;
        is_biunitary(u, ell, tol)?.into_result()?;
        let base = SpinElement::unit(u.n(), cabling.staircase_color(0));
        let mut stair = Staircase {
            cabling,
            elements: vec![base],
            odd_step: u.clone(),
            even_step: rotate_pow(&u.star(), -(ell as i64))?,
        };
        stair.extend_to(max_level)?;
        Ok(stair)
    }

    /// Build further levels on demand.
    pub fn extend_to(&mut self, max_level: usize) -> Result<()> {
        let ell = self.cabling.ell;
        while self.elements.len() <= max_level {
            let m = self.elements.len() - 1;
            let v = if (m + 1) % 2 == 1 { &self.odd_step } else { &self.even_step };
            let lower = incl_right_pow(&self.elements[m], ell)?;
            let next = mult(&lower, &incl_left_pow(v, m * ell)?)?;
            self.elements.push(next);
        }
        Ok(())
    }

    pub fn max_level(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn level(&self, m: usize) -> Result<&SpinElement> {
        self.elements.get(m).ok_or(SpinError::LevelOutOfRange { level: m, built: self.max_level() })
    }

    /// `max(‖u_m u_m* − 1‖, ‖u_m* u_m − 1‖)`.
    pub fn unitarity_defect(&self, m: usize) -> Result<f64> {
        let u = self.level(m)?;
        let unit = SpinElement::unit(u.n(), u.color());
        let a = mult(u, &u.star())?.sub(&unit)?.operator_norm()?;
        let b = mult(&u.star(), u)?.sub(&unit)?.operator_norm()?;
        Ok(a.max(b))
    }
}
