//! Biunitarity certificates: named unitarity residuals and a verdict.

use std::fmt;

use serde::Serialize;

use crate::color::SpinColor;
use crate::element::SpinElement;
use crate::error::{Result, SpinError};
use crate::tangle::{mult, partial_swap_a, rotate, rotate_pow};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub const U_U_STAR: &str = "u u* = 1";
pub const U_STAR_U: &str = "u* u = 1";
pub const R_R_STAR: &str = "r r* = 1";
pub const R_STAR_R: &str = "r* r = 1";
pub const A_A_STAR: &str = "A(u) A(u)* = 1";
pub const A_STAR_A: &str = "A(u)* A(u) = 1";
pub const ROT_ROT_STAR: &str = "R(u) R(u)* = 1";
pub const ROT_STAR_ROT: &str = "R(u)* R(u) = 1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateKind {
    /// Unitarity of `u` and of its `ell`-fold rotation.
    ZeroEll { width: usize, ell: usize, shading: crate::color::Shading },
    /// Unitarity of the partial swap and of the one-click rotation on `P_(4,+)`.
    PartialSwapRotation,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateKind::ZeroEll { width, ell, shading } => {
                write!(f, "{{0,{ell}}}-biunitary in P_{}", SpinColor::new(*width, *shading))
            }
            CertificateKind::PartialSwapRotation => f.write_str("{A,R(4,+)}-biunitary in P_(4,+)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub relation: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiunitaryCertificate {
    pub kind: CertificateKind,
    pub residuals: Vec<Residual>,
    pub verdict: bool,
    pub tolerance: f64,
}

impl BiunitaryCertificate {
    fn new(kind: CertificateKind, residuals: Vec<Residual>, tolerance: f64) -> Self {
        let verdict = residuals.iter().all(|r| r.value <= tolerance);
        BiunitaryCertificate { kind, residuals, verdict, tolerance }
    }

    pub fn residual(&self, relation: &str) -> Option<f64> {
        self.residuals.iter().find(|r| r.relation == relation).map(|r| r.value)
    }

    /// Relations whose residual exceeds the tolerance.
    pub fn failed(&self) -> Vec<&'static str> {
        self.residuals.iter().filter(|r| r.value > self.tolerance).map(|r| r.relation).collect()
    }

    pub fn into_result(self) -> Result<Self> {
        if self.verdict {
            Ok(self)
        } else {
            let failed = self
                .residuals
                .iter()
                .filter(|r| r.value > self.tolerance)
                .map(|r| format!("{} (residual {:.3e})", r.relation, r.value))
                .collect();
            Err(SpinError::NotBiunitary { failed })
        }
    }
}

/// `(‖xx* − 1‖, ‖x*x − 1‖)` in operator norm.
fn unitarity_residuals(x: &SpinElement) -> Result<(f64, f64)> {
    let unit = SpinElement::unit(x.n(), x.color());
    let xs = x.star();
    let a = mult(x, &xs)?.sub(&unit)?.operator_norm()?;
    let b = mult(&xs, x)?.sub(&unit)?.operator_norm()?;
    Ok((a, b))
}

/// Certificate that `u` and `rotate_pow(u, ell)` are both unitary.
pub fn is_biunitary(u: &SpinElement, ell: usize, tolerance: f64) -> Result<BiunitaryCertificate> {
    let color = u.color();
    if ell == 0 || ell >= color.width {
        return Err(SpinError::RotationOutOfRange { ell, width: color.width });
    }
    let (a, b) = unitarity_residuals(u)?;
    let (c, d) = unitarity_residuals(&rotate_pow(u, ell as i64)?)?;
    let residuals = vec![
        Residual { relation: U_U_STAR, value: a },
        Residual { relation: U_STAR_U, value: b },
        Residual { relation: R_R_STAR, value: c },
        Residual { relation: R_STAR_R, value: d },
    ];
    let kind = CertificateKind::ZeroEll { width: color.width, ell, shading: color.shading };
    Ok(BiunitaryCertificate::new(kind, residuals, tolerance))
}

/// Certificate that the partial swap and the one-click rotation of `u` are unitary.
pub fn is_ab_biunitary_ueb(u: &SpinElement, tolerance: f64) -> Result<BiunitaryCertificate> {
    let (a, b) = unitarity_residuals(&partial_swap_a(u)?)?;
    let (c, d) = unitarity_residuals(&rotate(u)?)?;
    let residuals = vec![
        Residual { relation: A_A_STAR, value: a },
        Residual { relation: A_STAR_A, value: b },
        Residual { relation: ROT_ROT_STAR, value: c },
        Residual { relation: ROT_STAR_ROT, value: d },
    ];
    Ok(BiunitaryCertificate::new(CertificateKind::PartialSwapRotation, residuals, tolerance))
}
