//! Sparse elements of the spin planar algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::basis::{Codec, SpinBasisIndex};
use crate::color::SpinColor;
use crate::context::SpinContext;
use crate::error::{Result, SpinError};
use crate::numerics::ComplexMatrix;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// A finite linear combination of basis vectors of one color, in the
/// normalized basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinElement {
    n: usize,
    color: SpinColor,
    coeffs: BTreeMap<u64, C64>,
}

impl SpinElement {
    pub fn zero(n: usize, color: SpinColor) -> Self {
        SpinElement { n, color, coeffs: BTreeMap::new() }
    }

    /// Unit-coefficient element at `idx`.
    pub fn basis(ctx: &SpinContext, color: SpinColor, idx: &SpinBasisIndex) -> Result<Self> {
        idx.validate(ctx.n(), color)?;
        let ord = Codec::new(ctx.n(), color).pack(idx);
        Ok(Self::from_ordinal(ctx.n(), color, ord, ONE))
    }

    pub(crate) fn from_ordinal(n: usize, color: SpinColor, ord: u64, c: C64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != ZERO {
            coeffs.insert(ord, c);
        }
        SpinElement { n, color, coeffs }
    }

    pub(crate) fn from_map(n: usize, color: SpinColor, mut coeffs: BTreeMap<u64, C64>) -> Self {
        coeffs.retain(|_, c| *c != ZERO);
        SpinElement { n, color, coeffs }
    }

    /// Build from `(index, coefficient)` pairs; repeated indices accumulate.
    pub fn from_terms<I>(ctx: &SpinContext, color: SpinColor, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SpinBasisIndex, C64)>,
    {
        let codec = Codec::new(ctx.n(), color);
        let mut out = Self::zero(ctx.n(), color);
        for (idx, c) in terms {
            idx.validate(ctx.n(), color)?;
            out.accumulate(codec.pack(&idx), c);
        }
        out.coeffs.retain(|_, c| *c != ZERO);
        Ok(out)
    }

    /// Scalar multiple of the identity of `P_(0,+)`.
    pub fn scalar(n: usize, c: C64) -> Self {
        Self::from_ordinal(n, SpinColor::plus(0), 0, c)
    }

    /// The unit of `P_(k,ε)`: all indices with top = bottom, every slot value.
    pub fn unit(n: usize, color: SpinColor) -> Self {
        let codec = Codec::new(n, color);
        let mut coeffs = BTreeMap::new();
        for left in 0..(if codec.layout.left { codec.n } else { 1 }) {
            for t in 0..codec.tuple {
                for right in 0..(if codec.layout.right { codec.n } else { 1 }) {
                    let ord = codec.encode(crate::basis::Slots { left, top: t, bottom: t, right });
                    coeffs.insert(ord, ONE);
                }
            }
        }
        SpinElement { n, color, coeffs }
    }

    /// Dense coordinate vector of length `dim P_(k,ε)`.
    pub fn from_dense(n: usize, color: SpinColor, values: &[C64]) -> Result<Self> {
        let dim = color.dimension(n);
        if values.len() != dim {
            return Err(SpinError::Matrix(format!(
                "dense vector has length {} but {color} has dimension {dim}",
                values.len()
            )));
        }
        let coeffs = values
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != ZERO)
            .map(|(i, c)| (i as u64, *c))
            .collect();
        Ok(SpinElement { n, color, coeffs })
    }

    pub fn to_dense(&self) -> Vec<C64> {
        let mut out = vec![ZERO; self.color.dimension(self.n)];
        for (&o, &c) in &self.coeffs {
            out[o as usize] = c;
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self) -> SpinColor {
        self.color
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn codec(&self) -> Codec {
        Codec::new(self.n, self.color)
    }

    pub(crate) fn raw(&self) -> &BTreeMap<u64, C64> {
        &self.coeffs
    }

    pub(crate) fn accumulate(&mut self, ord: u64, c: C64) {
        *self.coeffs.entry(ord).or_insert(ZERO) += c;
    }

    pub(crate) fn drop_zeros(&mut self) {
        self.coeffs.retain(|_, c| *c != ZERO);
    }

    /// Coefficient at a structured index (zero if absent or invalid).
    pub fn coeff(&self, idx: &SpinBasisIndex) -> C64 {
        if idx.validate(self.n, self.color).is_err() {
            return ZERO;
        }
        self.coeffs.get(&self.codec().pack(idx)).copied().unwrap_or(ZERO)
    }

    /// Nonzero terms in ordinal order.
    pub fn terms(&self) -> impl Iterator<Item = (SpinBasisIndex, C64)> + '_ {
        let codec = self.codec();
        self.coeffs.iter().map(move |(&o, &c)| (codec.unpack(o), c))
    }

    pub fn pruned(&self, threshold: f64) -> Self {
        let coeffs = self.coeffs.iter().filter(|(_, c)| c.norm() > threshold).map(|(&o, &c)| (o, c)).collect();
        SpinElement { n: self.n, color: self.color, coeffs }
    }

    pub(crate) fn check_compatible(&self, other: &SpinElement) -> Result<()> {
        if self.n != other.n {
            return Err(SpinError::SpinCountMismatch { left: self.n, right: other.n });
        }
        if self.color != other.color {
            return Err(SpinError::ColorMismatch { left: self.color, right: other.color });
        }
        Ok(())
    }

    /// `self + c·other`.
    pub fn linear_combination(&self, other: &SpinElement, c: C64) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&o, &v) in &other.coeffs {
            out.accumulate(o, c * v);
        }
        out.drop_zeros();
        Ok(out)
    }

    pub fn add(&self, other: &SpinElement) -> Result<Self> {
        self.linear_combination(other, ONE)
    }

    pub fn sub(&self, other: &SpinElement) -> Result<Self> {
        self.linear_combination(other, -ONE)
    }

    pub fn scale(&self, c: C64) -> Self {
        let coeffs = self.coeffs.iter().map(|(&o, &v)| (o, c * v)).collect();
        Self::from_map(self.n, self.color, coeffs)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    /// Conjugate coefficients and swap top with bottom.
    pub fn star(&self) -> Self {
        let codec = self.codec();
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&o, &c)| {
                let mut s = codec.decode(o);
                std::mem::swap(&mut s.top, &mut s.bottom);
                (codec.encode(s), c.conj())
            })
            .collect();
        SpinElement { n: self.n, color: self.color, coeffs }
    }

    /// Weight `τ(e_b^* e_b)` shared by every basis vector of this color.
    pub(crate) fn basis_weight(n: usize, color: SpinColor) -> f64 {
        let layout = color.layout();
        (n as f64).powi(-((layout.pairs + layout.slot_count()) as i32))
    }

    /// Normalized trace `τ`, with `τ(1) = 1` on every color.
    pub fn normalized_trace(&self) -> C64 {
        let codec = self.codec();
        let sum: C64 = self
            .coeffs
            .iter()
            .filter(|(&o, _)| {
                let s = codec.decode(o);
                s.top == s.bottom
            })
            .map(|(_, &c)| c)
            .sum();
        sum * Self::basis_weight(self.n, self.color)
    }

    /// `⟨x, y⟩ = τ(y^* x)`.
    pub fn inner_product(&self, other: &SpinElement) -> Result<C64> {
        self.check_compatible(other)?;
        let (small, large, conj_small) =
            if self.nnz() <= other.nnz() { (self, other, false) } else { (other, self, true) };
        let mut sum = ZERO;
        for (o, a) in &small.coeffs {
            if let Some(b) = large.coeffs.get(o) {
                // τ(e_b^* e_b') vanishes unless b = b'.
                sum += if conj_small { a.conj() * b } else { a * b.conj() };
            }
        }
        Ok(sum * Self::basis_weight(self.n, self.color))
    }

    /// Inner product from the unnormalized picture trace, `δ^k τ(y^* x)`.
    pub fn picture_inner_product(&self, other: &SpinElement) -> Result<C64> {
        let delta = (self.n as f64).sqrt();
        Ok(self.inner_product(other)? * delta.powi(self.color.width as i32))
    }

    pub fn norm(&self) -> f64 {
        let sq = self.coeffs.values().fold(0.0, |acc, c| acc + c.norm_sqr());
        (sq * Self::basis_weight(self.n, self.color)).sqrt()
    }

    /// Largest absolute coefficient difference; infinite on color mismatch.
    pub fn max_abs_diff(&self, other: &SpinElement) -> f64 {
        if self.check_compatible(other).is_err() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for (o, a) in &self.coeffs {
            let b = other.coeffs.get(o).copied().unwrap_or(ZERO);
            worst = worst.max((a - b).norm());
        }
        for (o, b) in &other.coeffs {
            if !self.coeffs.contains_key(o) {
                worst = worst.max(b.norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &SpinElement, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// The element as a block-diagonal matrix: one `N^m × N^m` block (rows =
    /// top tuple, columns = bottom tuple) per value of the bracket slots.
    pub fn matrix_blocks(&self) -> Vec<ComplexMatrix> {
        let codec = self.codec();
        let t = codec.tuple as usize;
        let right_radix = if codec.layout.right { codec.n } else { 1 };
        let left_radix = if codec.layout.left { codec.n } else { 1 };
        let mut blocks = vec![ComplexMatrix::zeros(t, t); (left_radix * right_radix) as usize];
        for (&o, &c) in &self.coeffs {
            let s = codec.decode(o);
            blocks[(s.left * right_radix + s.right) as usize].set(s.top as usize, s.bottom as usize, c);
        }
        blocks
    }

    /// Operator norm in the C*-algebra `P_(k,ε)`, the largest singular value
    /// over all blocks.
    pub fn operator_norm(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for b in self.matrix_blocks() {
            worst = worst.max(b.operator_norm()?);
        }
        Ok(worst)
    }
}

impl fmt::Display for SpinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 in P{}", self.color);
        }
        let mut first = true;
        for (idx, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)·{idx}", c.re, c.im)?;
        }
        Ok(())
    }
}
