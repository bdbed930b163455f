//! Finite groups: the Latin square of a multiplication table and the
//! predicted structure of its planar algebra.

use crate::basis::SpinBasisIndex;
use crate::color::SpinColor;
use crate::context::SpinContext;
use crate::element::{SpinElement, C64};
use crate::error::{Result, SpinError};
use crate::qit::{latin_to_qls, qls_element, LatinSquare};

/// Multiplication table `table[g][h] = gh` on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl GroupTable {
    /// Checks closure, associativity, identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(SpinError::NotAGroup("table must be a nonempty n x n array".into()));
        }
        if let Some((g, h)) = pairs(n).find(|&(g, h)| table[g][h] >= n) {
            return Err(SpinError::NotAGroup(format!("closure fails: {}·{} is out of range", g + 1, h + 1)));
        }
        for a in 0..n {
            for (b, c) in pairs(n) {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(SpinError::NotAGroup(format!(
                        "associativity fails at ({}, {}, {})",
                        a + 1,
                        b + 1,
                        c + 1
                    )));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| SpinError::NotAGroup("no identity element".into()))?;
        let inverses = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| SpinError::NotAGroup(format!("element {} has no inverse", g + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupTable { table, identity, inverses })
    }

    /// From 1-based symbols as written in files.
    pub fn from_one_based(rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.iter().flatten().any(|&s| s == 0) {
            return Err(SpinError::NotAGroup("symbols are 1-based; found 0".into()));
        }
        Self::new(rows.into_iter().map(|r| r.into_iter().map(|s| s - 1).collect()).collect())
    }

    pub fn cyclic(n: usize) -> Self {
        Self::new((0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect()).expect("Z_n is a group")
    }

    /// Permutations of three points in lexicographic order, composed as `(gh)(x) = g(h(x))`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("closed");
        let table = perms
            .iter()
            .map(|g| perms.iter().map(|h| index([g[h[0]], g[h[1]], g[h[2]]])).collect())
            .collect();
        Self::new(table).expect("S_3 is a group")
    }

    /// `Z2` … `Z6` and `S3`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name.to_ascii_uppercase().as_str() {
            "S3" => Ok(Self::symmetric3()),
            other => match other.strip_prefix('Z').and_then(|d| d.parse::<usize>().ok()) {
                Some(n @ 2..=6) => Ok(Self::cyclic(n)),
                _ => Err(SpinError::Parse(format!("unknown builtin group `{name}` (expected Z2..Z6 or S3)"))),
            },
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn latin_square(&self) -> LatinSquare {
        LatinSquare::new(self.table.clone()).expect("square")
    }

    /// `u = Σ e^{gh}_g(h]` in `P_(3,+)`.
    pub fn biunitary(&self) -> Result<SpinElement> {
        qls_element(&latin_to_qls(&self.latin_square())?)
    }

    /// Predicted `dim Q_(m,+)`: 1 at `m = 0`, `n^{m−1}` after.
    pub fn predicted_dimensions(&self, max_level: usize) -> Vec<usize> {
        (0..=max_level).map(|m| if m == 0 { 1 } else { self.order().pow(m as u32 - 1) }).collect()
    }

    /// Orbit sums `Σ_g e^{g i_1..}_{g j_1..}(g q]` over the diagonal left action on
    /// `G^m`, one per tuple starting with the identity, in `P_(m,+)`.
    pub fn orbit_sums(&self, m: usize) -> Result<Vec<SpinElement>> {
        let n = self.order();
        let ctx = SpinContext::new(n)?;
        let color = SpinColor::plus(m);
        if m == 0 {
            return Ok(vec![SpinElement::unit(n, color)]);
        }
        let pairs = m / 2;
        let count = n.pow(m as u32 - 1);
        (0..count)
            .map(|code| {
                let mut tuple = vec![self.identity; m];
                let mut rest = code;
                for slot in tuple[1..].iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                let terms = (0..n).map(|g| {
                    let moved: Vec<usize> = tuple.iter().map(|&t| self.mul(g, t)).collect();
                    let right = (m % 2 == 1).then(|| moved[2 * pairs]);
                    let idx = SpinBasisIndex::new(None, moved[..pairs].to_vec(), moved[pairs..2 * pairs].to_vec(), right);
                    (idx, C64::new(1.0, 0.0))
                });
                SpinElement::from_terms(&ctx, color, terms)
            })
            .collect()
    }

    /// `X_g = Σ_q e^q_{qg}` in `P_(2,+)`.
    pub fn x_element(&self, g: usize) -> Result<SpinElement> {
        let n = self.order();
        let terms = (0..n).map(|q| (SpinBasisIndex::pairs(vec![q], vec![self.mul(q, g)]), C64::new(1.0, 0.0)));
        SpinElement::from_terms(&SpinContext::new(n)?, SpinColor::plus(2), terms)
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}
