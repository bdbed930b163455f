use serde::Serialize;

use crate::color::{Shading, SpinColor};
use crate::element::SpinElement;
use crate::error::{Result, SpinError};
use crate::parallel::Execution;
use crate::qit::DEFAULT_TOLERANCE;
use crate::tangle::rotate_pow;

use super::cabling::CablingData;
use super::membership::MembershipOperator;
use super::staircase::Staircase;

pub const DEFAULT_KERNEL_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_ROW_CAP: u128 = 10_000;

/// The computed space `Q_(m,+)` and its rotated partner `Q_(m,−)`.
#[derive(Debug, Clone)]
pub struct QLevelResult {
    pub m: usize,
    pub ambient: SpinColor,
    pub dim: usize,
    /// Orthonormal for the normalized trace inner product.
    pub basis: Vec<SpinElement>,
    /// Largest `‖L(b)‖` over the basis.
    pub residual: f64,
    pub gap: Option<f64>,
    pub singular_values: Vec<f64>,
    pub minus_ambient: SpinColor,
    pub minus_basis: Vec<SpinElement>,
}

impl QLevelResult {
    pub fn summary(&self) -> LevelSummary {
        LevelSummary { m: self.m, dim: self.dim, residual: self.residual, gap: self.gap }
    }

    /// `‖z − Pz‖ / max(‖z‖, 1)` for the orthogonal projection `P` onto the span of `basis`.
    pub fn projection_residual(&self, z: &SpinElement) -> Result<f64> {
        projection_residual(&self.basis, z)
    }
}

pub(crate) fn projection_residual(basis: &[SpinElement], z: &SpinElement) -> Result<f64> {
    let norm = z.norm().max(1.0);
    let mut rest = z.clone();
    for b in basis {
        rest = rest.linear_combination(b, -z.inner_product(b)?)?;
    }
    Ok(rest.norm() / norm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelSummary {
    pub m: usize,
    pub dim: usize,
    pub residual: f64,
    pub gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionReport {
    pub levels: Vec<LevelSummary>,
}

/// Kernel of `L` at level `m` with orthonormal basis and diagnostics.
fn kernel(op: &MembershipOperator<'_>, rel_tol: f64, exec: Execution) -> Result<(Vec<SpinElement>, f64, Option<f64>, Vec<f64>)> {
    let matrix = op.assemble(exec)?;
    // σ̃ is a trace isometry, which fixes the Euclidean size of a unit column.
    let column_scale = (SpinElement::basis_weight(op.n(), op.ambient) / SpinElement::basis_weight(op.n(), op.target())).sqrt();
    let kb = matrix.kernel_basis_scaled(rel_tol, column_scale)?;
    let scale = 1.0 / SpinElement::basis_weight(op.n(), op.ambient).sqrt();
    let basis = kb
        .vectors
        .iter()
        .map(|v| Ok(SpinElement::from_dense(op.n(), op.ambient, v)?.scale_real(scale)))
        .collect::<Result<Vec<_>>>()?;
    let mut residual = 0.0f64;
    for b in &basis {
        residual = residual.max(op.apply(b)?.norm());
    }
    let gap = kb.spectral_gap();
    Ok((basis, residual, gap, kb.singular_values))
}

/// Compute `Q_(m,+)` from a staircase built through level `m`.
pub fn q_level(stair: &Staircase, m: usize, rel_tol: f64, exec: Execution) -> Result<QLevelResult> {
    let cabling = stair.cabling;
    let ambient = cabling.ambient(m);
    let op = MembershipOperator::new(m, ambient, cabling.cap(), stair.level(m)?)?;
    let (basis, residual, gap, singular_values) = kernel(&op, rel_tol, exec)?;
    let minus_ambient = cabling.cabled(m, Shading::Minus);
    let minus_basis = if m == 0 {
        // No strands to rotate: solve directly with the trivial staircase element.
        let unit = SpinElement::unit(cabling.n, SpinColor::new(cabling.cap(), minus_ambient.shading));
        let op = MembershipOperator::new(0, minus_ambient, cabling.cap(), &unit)?;
        kernel(&op, rel_tol, exec)?.0
    } else {
        basis.iter().map(|b| rotate_pow(b, cabling.ell as i64)).collect::<Result<Vec<_>>>()?
    };
    Ok(QLevelResult { m, ambient, dim: basis.len(), basis, residual, gap, singular_values, minus_ambient, minus_basis })
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// Relative singular-value threshold for kernels.
    pub kernel_tol: f64,
    /// Tolerance for the biunitarity certificate of the input.
    pub cert_tol: f64,
    /// Largest allowed row count `N^{mℓ+k−ℓ}`.
    pub row_cap: u128,
    pub exec: Execution,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            kernel_tol: DEFAULT_KERNEL_TOLERANCE,
            cert_tol: DEFAULT_TOLERANCE,
            row_cap: DEFAULT_ROW_CAP,
            exec: Execution::default(),
        }
    }
}

/// The planar subalgebra generated by a biunitary, computed through `max_level`.
#[derive(Debug, Clone)]
pub struct PlanarSubalgebra {
    pub staircase: Staircase,
    pub levels: Vec<QLevelResult>,
}

impl PlanarSubalgebra {
    pub fn cabling(&self) -> CablingData {
        self.staircase.cabling
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.dim).collect()
    }

    pub fn report(&self) -> DimensionReport {
        DimensionReport { levels: self.levels.iter().map(QLevelResult::summary).collect() }
    }

    pub fn level(&self, m: usize) -> Result<&QLevelResult> {
        self.levels.get(m).ok_or(SpinError::LevelOutOfRange { level: m, built: self.levels.len().saturating_sub(1) })
    }

    pub fn operator(&self, m: usize) -> Result<MembershipOperator<'_>> {
        let cabling = self.cabling();
        MembershipOperator::new(m, cabling.ambient(m), cabling.cap(), self.staircase.level(m)?)
    }
}

/// Refuse runs whose largest operator would exceed the row cap.
pub fn check_resources(cabling: &CablingData, max_level: usize, row_cap: u128) -> Result<()> {
    let rows = cabling.rows(max_level);
    if rows > row_cap {
        return Err(SpinError::ResourceCap(format!(
            "level {max_level} needs N^(mℓ+k−ℓ) = {}^{} = {rows} rows, above the cap of {row_cap}",
            cabling.n,
            max_level * cabling.ell + cabling.cap()
        )));
    }
    Ok(())
}

/// Certify `u`, build its staircase and compute `Q_(m,+)` for `m = 0..=max_level`.
pub fn construct(u: &SpinElement, ell: usize, max_level: usize, opts: &BuildOptions) -> Result<PlanarSubalgebra> {
    let cabling = CablingData::new(u.n(), u.color(), ell)?;
    check_resources(&cabling, max_level, opts.row_cap)?;
    let staircase = Staircase::build(u, ell, max_level, opts.cert_tol)?;
    let levels = (0..=max_level)
        .map(|m| q_level(&staircase, m, opts.kernel_tol, opts.exec))
        .collect::<Result<Vec<_>>>()?;
    Ok(PlanarSubalgebra { staircase, levels })
}
