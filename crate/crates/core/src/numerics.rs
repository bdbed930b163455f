//! Dense complex linear algebra: products, adjoints, singular values and
//! threshold-based kernel extraction.
//!
//! Backed by the Golub–Kahan SVD in `nalgebra`, which is
//! deterministic for a fixed input.

use nalgebra::DMatrix;

use crate::element::{C64, ONE, ZERO};
use crate::error::{Result, SpinError};

const SVD_EPS: f64 = 1e-15;
const SVD_MAX_ITER: usize = 10_000;

/// Row-major dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn from_row_major(rows: usize, cols: usize, entries: &[C64]) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(SpinError::Matrix(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(SpinError::Matrix(format!("non-finite entry at ({}, {})", pos / cols.max(1), pos % cols.max(1))));
        }
        Ok(ComplexMatrix(DMatrix::from_row_slice(rows, cols, entries)))
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(SpinError::Matrix("ragged rows".into()));
        }
        let flat: Vec<C64> = rows.iter().flatten().copied().collect();
        Self::from_row_major(rows.len(), cols, &flat)
    }

    /// Build from columns of equal length.
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(SpinError::Matrix("columns of unequal length".into()));
        }
        let flat: Vec<C64> = columns.iter().flatten().copied().collect();
        if flat.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(SpinError::Matrix("non-finite entry".into()));
        }
        Ok(ComplexMatrix(DMatrix::from_column_slice(rows, columns.len(), &flat)))
    }

    pub(crate) fn from_dmatrix(m: DMatrix<C64>) -> Self {
        ComplexMatrix(m)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        ComplexMatrix(DMatrix::from_fn(rows, cols, f))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix(DMatrix::from_element(rows, cols, ZERO))
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix(DMatrix::identity(n, n))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.0[(r, c)]
    }

    pub fn set(&mut self, r: usize, c: usize, value: C64) {
        self.0[(r, c)] = value;
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        self.0.column(c).iter().copied().collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows()).map(|r| self.0.row(r).iter().copied().collect()).collect()
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols() != other.rows() {
            return Err(SpinError::Matrix(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(ComplexMatrix(&self.0 * &other.0))
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix(self.0.adjoint())
    }

    pub fn transpose(&self) -> ComplexMatrix {
        ComplexMatrix(self.0.transpose())
    }

    pub fn scale(&self, c: C64) -> ComplexMatrix {
        ComplexMatrix(&self.0 * c)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.0.shape() != other.0.shape() {
            return Err(SpinError::Matrix("shape mismatch in subtraction".into()));
        }
        Ok(ComplexMatrix(&self.0 - &other.0))
    }

    pub fn subtract_identity(&self) -> Result<ComplexMatrix> {
        if self.rows() != self.cols() {
            return Err(SpinError::Matrix("subtract_identity needs a square matrix".into()));
        }
        let mut m = self.0.clone();
        for i in 0..m.nrows() {
            m[(i, i)] -= ONE;
        }
        Ok(ComplexMatrix(m))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Singular values in nonincreasing order.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        if self.rows() == 0 || self.cols() == 0 {
            return Ok(Vec::new());
        }
        let svd = self
            .0
            .clone()
            .try_svd(false, false, SVD_EPS, SVD_MAX_ITER)
            .ok_or(SpinError::NonConvergence { rows: self.rows(), cols: self.cols() })?;
        let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        Ok(s)
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> Result<f64> {
        Ok(self.singular_values()?.first().copied().unwrap_or(0.0))
    }

    /// `‖M − I‖` in operator norm.
    pub fn operator_norm_defect(&self) -> Result<f64> {
        self.subtract_identity()?.operator_norm()
    }

    /// Orthonormal basis of the (numerical) kernel: right singular vectors with
    /// `σ_i ≤ rel_tol · σ_max`.
    pub fn kernel_basis(&self, rel_tol: f64) -> Result<KernelBasis> {
        self.kernel_basis_scaled(rel_tol, 0.0)
    }

    /// As [`kernel_basis`](Self::kernel_basis) with threshold
    /// `rel_tol · max(σ_max, scale)`, so a map that vanishes up to rounding
    /// has full kernel.
    pub fn kernel_basis_scaled(&self, rel_tol: f64, scale: f64) -> Result<KernelBasis> {
        let (rows, cols) = (self.rows(), self.cols());
        if cols == 0 {
            return Ok(KernelBasis { vectors: Vec::new(), singular_values: Vec::new(), kept: 0, threshold: 0.0 });
        }
        // Pad wide matrices so the SVD yields a full set of right singular vectors.
        let m = if rows < cols { self.0.clone().resize_vertically(cols, ZERO) } else { self.0.clone() };
        let svd = m.try_svd(false, true, SVD_EPS, SVD_MAX_ITER).ok_or(SpinError::NonConvergence { rows, cols })?;
        let v_t = svd.v_t.expect("requested V");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        let singular_values: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
        let sigma_max = singular_values.first().copied().unwrap_or(0.0);
        let threshold = rel_tol * sigma_max.max(scale);
        let kept = singular_values.iter().take_while(|&&s| s > threshold).count();
        let vectors = order[kept..]
            .iter()
            .map(|&i| v_t.row(i).iter().map(|c| c.conj()).collect::<Vec<C64>>())
            .collect();
        Ok(KernelBasis { vectors, singular_values, kept, threshold })
    }

    /// Minimum-norm least-squares solution of `M x = b`.
    pub fn least_squares(&self, b: &[C64], rel_tol: f64) -> Result<Vec<C64>> {
        if b.len() != self.rows() {
            return Err(SpinError::Matrix("right-hand side length mismatch".into()));
        }
        let (rows, cols) = (self.rows(), self.cols());
        let svd = self.0.clone().try_svd(true, true, SVD_EPS, SVD_MAX_ITER).ok_or(SpinError::NonConvergence { rows, cols })?;
        let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let rhs = nalgebra::DVector::from_column_slice(b);
        let x = svd
            .solve(&rhs, rel_tol * sigma_max)
            .map_err(|e| SpinError::Matrix(e.to_string()))?;
        Ok(x.iter().copied().collect())
    }
}

/// Result of [`ComplexMatrix::kernel_basis`].
#[derive(Debug, Clone)]
pub struct KernelBasis {
    /// Orthonormal kernel vectors.
    pub vectors: Vec<Vec<C64>>,
    /// All singular values, nonincreasing (padded with zeros for wide inputs).
    pub singular_values: Vec<f64>,
    /// Number of singular values above the threshold.
    pub kept: usize,
    pub threshold: f64,
}

impl KernelBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    /// Smallest kept over largest discarded singular value; `None` when one
    /// side is empty or the discarded values are exactly zero.
    pub fn spectral_gap(&self) -> Option<f64> {
        let smallest_kept = *self.singular_values[..self.kept].last()?;
        let largest_discarded = *self.singular_values.get(self.kept)?;
        (largest_discarded > 0.0).then(|| smallest_kept / largest_discarded)
    }
}
