use serde::Serialize;

use crate::element::SpinElement;
use crate::error::{Result, SpinError};
use crate::tangle::{cond_right_pow, incl_right_pow, mult, rotate_pow};

use super::cabling::CablingData;
use super::level::QLevelResult;
use super::membership::MembershipOperator;
use super::staircase::Staircase;

/// Products checked per level are capped at this many basis vectors per factor.
const PRODUCT_FACTORS: usize = 16;

/// Largest relative projection residual per closure type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosureReport {
    pub first_level: usize,
    pub last_level: usize,
    pub multiplication: f64,
    pub inclusion: f64,
    pub expectation: f64,
    pub rotation: f64,
    pub adjoint: f64,
    pub unit: f64,
    /// `‖E^ℓ(1) − δ^ℓ 1‖` between consecutive levels.
    pub modulus: f64,
}

impl ClosureReport {
    pub fn max_residual(&self) -> f64 {
        [self.multiplication, self.inclusion, self.expectation, self.rotation, self.adjoint, self.unit, self.modulus]
            .into_iter()
            .fold(0.0, f64::max)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

/// Check that the computed spaces are closed under the generating tangles.
/// `results` must hold consecutive levels.
pub fn verify_planar_closure(cabling: &CablingData, results: &[QLevelResult]) -> Result<ClosureReport> {
    if results.len() < 2 || results.windows(2).any(|w| w[1].m != w[0].m + 1) {
        return Err(SpinError::InvalidContext("closure needs at least two consecutive levels".into()));
    }
    let ell = cabling.ell;
    let delta_ell = cabling.modulus();
    let mut r = ClosureReport {
        first_level: results[0].m,
        last_level: results[results.len() - 1].m,
        multiplication: 0.0,
        inclusion: 0.0,
        expectation: 0.0,
        rotation: 0.0,
        adjoint: 0.0,
        unit: 0.0,
        modulus: 0.0,
    };
    for (i, level) in results.iter().enumerate() {
        let factors = &level.basis[..level.basis.len().min(PRODUCT_FACTORS)];
        for a in factors {
            for b in factors {
                r.multiplication = r.multiplication.max(level.projection_residual(&mult(a, b)?)?);
            }
        }
        for b in &level.basis {
            r.adjoint = r.adjoint.max(level.projection_residual(&b.star())?);
            if level.ambient.width > 0 {
                r.rotation = r.rotation.max(level.projection_residual(&rotate_pow(b, 2 * ell as i64)?)?);
            }
        }
        for b in &level.minus_basis {
            if level.ambient.width > 0 {
                r.rotation = r.rotation.max(level.projection_residual(&rotate_pow(b, ell as i64)?)?);
            }
        }
        let unit = SpinElement::unit(cabling.n, level.ambient);
        r.unit = r.unit.max(level.projection_residual(&unit)?);

        if let Some(next) = results.get(i + 1) {
            for b in &level.basis {
                r.inclusion = r.inclusion.max(next.projection_residual(&incl_right_pow(b, ell)?)?);
            }
            for b in &next.basis {
                r.expectation = r.expectation.max(level.projection_residual(&cond_right_pow(b, ell)?)?);
            }
            let capped = cond_right_pow(&SpinElement::unit(cabling.n, next.ambient), ell)?;
            r.modulus = r.modulus.max(capped.max_abs_diff(&unit.scale_real(delta_ell)));
        }
    }
    Ok(r)
}

/// Partner `y` of a level-`m` element `x`; fails if `x` is not in the computed space.
pub fn extract_partner_y(stair: &Staircase, m: usize, x: &SpinElement, tol: f64) -> Result<SpinElement> {
    let cabling = stair.cabling;
    let op = MembershipOperator::new(m, cabling.ambient(m), cabling.cap(), stair.level(m)?)?;
    let norm = x.norm();
    let residual = if norm == 0.0 { 0.0 } else { op.apply(x)?.norm() / norm };
    if residual > tol {
        return Err(SpinError::NotInKernel { level: m, residual });
    }
    op.partner(x)
}

/// Recover `x` from its partner `y`.
pub fn reconstruct_from_partner(stair: &Staircase, m: usize, y: &SpinElement) -> Result<SpinElement> {
    let cabling = stair.cabling;
    let op = MembershipOperator::new(m, cabling.ambient(m), cabling.cap(), stair.level(m)?)?;
    op.reconstruct(y)
}
