//! Colors `(k, ±)` of the spin planar algebra and the slot layout they induce.
//!
//! A basis vector of `P_(k,ε)` carries an optional left bracket spin `[p)`, a
//! top tuple and a bottom tuple of equal length `m`, and an optional right
//! bracket spin `(q]`. Which of these are present is a pure function of the
//! color.

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shading {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Shading {
    pub fn is_minus(self) -> bool {
        self == Shading::Minus
    }

    /// `self · (−)^times`.
    pub fn flipped(self, times: usize) -> Shading {
        if times % 2 == 0 {
            self
        } else {
            -self
        }
    }
}

impl Neg for Shading {
    type Output = Shading;

    fn neg(self) -> Shading {
        match self {
            Shading::Plus => Shading::Minus,
            Shading::Minus => Shading::Plus,
        }
    }
}

impl fmt::Display for Shading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shading::Plus => "+",
            Shading::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinColor {
    pub width: usize,
    pub shading: Shading,
}

/// Which slots a basis index of a given color carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub left: bool,
    pub right: bool,
    /// Length of the top (and bottom) tuple.
    pub pairs: usize,
}

impl Layout {
    pub fn slot_count(&self) -> usize {
        self.left as usize + self.right as usize
    }
}

impl SpinColor {
    pub const fn new(width: usize, shading: Shading) -> Self {
        SpinColor { width, shading }
    }

    pub const fn plus(width: usize) -> Self {
        SpinColor::new(width, Shading::Plus)
    }

    pub const fn minus(width: usize) -> Self {
        SpinColor::new(width, Shading::Minus)
    }

    pub fn layout(&self) -> Layout {
        let minus = self.shading.is_minus();
        if self.width == 0 {
            // (0,−) has the single S(i) slot, stored as a left slot.
            return Layout { left: minus, right: false, pairs: 0 };
        }
        let left = minus;
        let right = (self.width + minus as usize) % 2 == 1;
        let pairs = (self.width - left as usize - right as usize) / 2;
        Layout { left, right, pairs }
    }

    /// Dimension of `P_(k,ε)` on `n` spins.
    pub fn dimension(&self, n: usize) -> usize {
        let layout = self.layout();
        n.pow((2 * layout.pairs + layout.slot_count()) as u32)
    }

    /// Color after one click of rotation.
    pub fn rotated(&self) -> SpinColor {
        SpinColor::new(self.width, -self.shading)
    }

    /// Color of the ℓ-fold cabling of `(level, +)` for a box of shading `self.shading`.
    pub fn cabled(level: usize, ell: usize, shading: Shading) -> SpinColor {
        SpinColor::new(level * ell, shading)
    }
}

impl fmt::Display for SpinColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.width, self.shading)
    }
}
