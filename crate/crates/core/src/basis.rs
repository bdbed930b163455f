//! Structured and packed basis indices.
//!
//! Internally every basis vector of a color is identified by a single `u64`
//! ordinal. The ordinal packs four mixed-radix fields: the left slot spin, the
//! top tuple read as a base-`N` number (first spin most significant), the
//! bottom tuple likewise, and the right slot spin. Absent fields have radix 1.

use std::fmt;

use crate::color::{Layout, SpinColor};
use crate::error::{Result, SpinError};

/// Structured view of a basis index. Spins are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinBasisIndex {
    pub left: Option<usize>,
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
    pub right: Option<usize>,
}

impl SpinBasisIndex {
    pub fn new(left: Option<usize>, top: Vec<usize>, bottom: Vec<usize>, right: Option<usize>) -> Self {
        SpinBasisIndex { left, top, bottom, right }
    }

    /// `e^{top}_{bottom}` with no bracket slots.
    pub fn pairs(top: Vec<usize>, bottom: Vec<usize>) -> Self {
        SpinBasisIndex::new(None, top, bottom, None)
    }

    /// The `S(s)` basis of `P_(0,−)`.
    pub fn s(spin: usize) -> Self {
        SpinBasisIndex::new(Some(spin), Vec::new(), Vec::new(), None)
    }

    /// The single basis vector of `P_(0,+)`.
    pub fn scalar() -> Self {
        SpinBasisIndex::new(None, Vec::new(), Vec::new(), None)
    }

    pub fn validate(&self, n: usize, color: SpinColor) -> Result<()> {
        let layout = color.layout();
        let bad = |reason: String| Err(SpinError::InvalidIndex { color, reason });
        if self.left.is_some() != layout.left {
            return bad(format!("left slot must be {}", if layout.left { "present" } else { "absent" }));
        }
        if self.right.is_some() != layout.right {
            return bad(format!("right slot must be {}", if layout.right { "present" } else { "absent" }));
        }
        if self.top.len() != layout.pairs || self.bottom.len() != layout.pairs {
            return bad(format!(
                "top/bottom tuples must have length {} (got {} and {})",
                layout.pairs,
                self.top.len(),
                self.bottom.len()
            ));
        }
        let spins = self.left.iter().chain(&self.top).chain(&self.bottom).chain(self.right.iter());
        if let Some(s) = spins.into_iter().find(|&&s| s >= n) {
            return bad(format!("spin {} out of range 1..={n}", s + 1));
        }
        Ok(())
    }
}

impl fmt::Display for SpinBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(",");
        if self.top.is_empty() && self.right.is_none() {
            return match self.left {
                Some(s) => write!(f, "S({})", s + 1),
                None => f.write_str("1"),
            };
        }
        f.write_str("e")?;
        if let Some(p) = self.left {
            write!(f, "[{})", p + 1)?;
        }
        if !self.top.is_empty() {
            write!(f, "^{{{}}}_{{{}}}", join(&self.top), join(&self.bottom))?;
        }
        if let Some(q) = self.right {
            write!(f, "({}]", q + 1)?;
        }
        Ok(())
    }
}

/// Unpacked ordinal fields. Absent slots hold 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Slots {
    pub left: u64,
    pub top: u64,
    pub bottom: u64,
    pub right: u64,
}

/// Mixed-radix packing for one `(N, color)` pair.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Codec {
    pub n: u64,
    pub layout: Layout,
    /// `N^pairs`, the radix of the top and bottom fields.
    pub tuple: u64,
    left_radix: u64,
    right_radix: u64,
}

impl Codec {
    pub fn new(n: usize, color: SpinColor) -> Self {
        let layout = color.layout();
        let n = n as u64;
        Codec {
            n,
            layout,
            tuple: n.pow(layout.pairs as u32),
            left_radix: if layout.left { n } else { 1 },
            right_radix: if layout.right { n } else { 1 },
        }
    }

    pub fn size(&self) -> u64 {
        self.left_radix * self.tuple * self.tuple * self.right_radix
    }

    #[inline]
    pub fn encode(&self, s: Slots) -> u64 {
        ((s.left * self.tuple + s.top) * self.tuple + s.bottom) * self.right_radix + s.right
    }

    #[inline]
    pub fn decode(&self, mut ord: u64) -> Slots {
        let right = ord % self.right_radix;
        ord /= self.right_radix;
        let bottom = ord % self.tuple;
        ord /= self.tuple;
        let top = ord % self.tuple;
        let left = ord / self.tuple;
        Slots { left, top, bottom, right }
    }

    pub fn pack(&self, idx: &SpinBasisIndex) -> u64 {
        let tuple = |v: &[usize]| v.iter().fold(0u64, |acc, &s| acc * self.n + s as u64);
        self.encode(Slots {
            left: idx.left.unwrap_or(0) as u64,
            top: tuple(&idx.top),
            bottom: tuple(&idx.bottom),
            right: idx.right.unwrap_or(0) as u64,
        })
    }

    pub fn unpack(&self, ord: u64) -> SpinBasisIndex {
        let s = self.decode(ord);
        let tuple = |mut v: u64| {
            let mut out = vec![0usize; self.layout.pairs];
            for slot in out.iter_mut().rev() {
                *slot = (v % self.n) as usize;
                v /= self.n;
            }
            out
        };
        SpinBasisIndex {
            left: self.layout.left.then_some(s.left as usize),
            top: tuple(s.top),
            bottom: tuple(s.bottom),
            right: self.layout.right.then_some(s.right as usize),
        }
    }
}

/// All basis indices of a color, in ordinal order.
pub fn enumerate_basis(n: usize, color: SpinColor) -> Vec<SpinBasisIndex> {
    let codec = Codec::new(n, color);
    (0..codec.size()).map(|o| codec.unpack(o)).collect()
}
