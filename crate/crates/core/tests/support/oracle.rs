//! A deliberately naive second model of the construction, used only to
//! cross-check dimensions.
//!
//! Elements are dense vectors indexed by boundary words: the left slot, the
//! top tuple, the right slot and the reversed bottom tuple, read in that
//! order. Rotation is then a cyclic shift of the word, inclusions insert or
//! duplicate one letter, and products are computed pairwise over all basis
//! vectors. Nothing here touches the packed ordinals of the library.

use nalgebra::DMatrix;
use spinplanar::basis::SpinBasisIndex;
use spinplanar::color::Layout;
use spinplanar::{Shading, SpinColor, SpinElement, C64};

#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub color: SpinColor,
    pub v: Vec<C64>,
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn word_number(n: usize, w: &[usize]) -> usize {
    w.iter().fold(0, |acc, &s| acc * n + s)
}

fn word(n: usize, k: usize, mut num: usize) -> Vec<usize> {
    let mut w = vec![0; k];
    for slot in w.iter_mut().rev() {
        *slot = num % n;
        num /= n;
    }
    w
}

// (0,−) carries its single slot without any strands.
fn word_len(color: SpinColor) -> usize {
    color.width + usize::from(color == SpinColor::minus(0))
}

fn word_of(idx: &SpinBasisIndex) -> Vec<usize> {
    let mut w: Vec<usize> = idx.left.into_iter().collect();
    w.extend(&idx.top);
    w.extend(idx.right);
    w.extend(idx.bottom.iter().rev());
    w
}

fn index_of(w: &[usize], layout: Layout) -> SpinBasisIndex {
    let mut pos = 0;
    let left = layout.left.then(|| {
        pos += 1;
        w[0]
    });
    let top = w[pos..pos + layout.pairs].to_vec();
    pos += layout.pairs;
    let right = layout.right.then(|| {
        pos += 1;
        w[pos - 1]
    });
    let bottom = w[pos..pos + layout.pairs].iter().rev().copied().collect();
    SpinBasisIndex::new(left, top, bottom, right)
}

impl Dense {
    pub fn zero(n: usize, color: SpinColor) -> Self {
        Dense { n, color, v: vec![zero(); n.pow(word_len(color) as u32)] }
    }

    pub fn from_library(u: &SpinElement) -> Self {
        let mut d = Dense::zero(u.n(), u.color());
        for (idx, c) in u.terms() {
            d.v[word_number(u.n(), &word_of(&idx))] += c;
        }
        d
    }

    pub fn basis(n: usize, color: SpinColor, j: usize) -> Self {
        let mut d = Dense::zero(n, color);
        d.v[j] = C64::new(1.0, 0.0);
        d
    }

    fn terms(&self) -> impl Iterator<Item = (Vec<usize>, C64)> + '_ {
        let k = word_len(self.color);
        self.v.iter().enumerate().filter(|(_, c)| c.norm() != 0.0).map(move |(j, &c)| (word(self.n, k, j), c))
    }

    fn add(&mut self, w: &[usize], c: C64) {
        let j = word_number(self.n, w);
        self.v[j] += c;
    }

    pub fn unit(n: usize, color: SpinColor) -> Self {
        let mut d = Dense::zero(n, color);
        for j in 0..d.v.len() {
            let idx = index_of(&word(n, word_len(color), j), color.layout());
            if idx.top == idx.bottom {
                d.v[j] = C64::new(1.0, 0.0);
            }
        }
        d
    }

    pub fn mult(&self, other: &Dense) -> Dense {
        assert_eq!(self.color, other.color);
        let layout = self.color.layout();
        let mut out = Dense::zero(self.n, self.color);
        for (wa, a) in self.terms() {
            let ia = index_of(&wa, layout);
            for (wb, b) in other.terms() {
                let ib = index_of(&wb, layout);
                if ia.left == ib.left && ia.right == ib.right && ia.bottom == ib.top {
                    let w = word_of(&SpinBasisIndex::new(ia.left, ia.top.clone(), ib.bottom, ia.right));
                    out.add(&w, a * b);
                }
            }
        }
        out
    }

    pub fn star(&self) -> Dense {
        let layout = self.color.layout();
        let mut out = Dense::zero(self.n, self.color);
        for (w, c) in self.terms() {
            let i = index_of(&w, layout);
            out.add(&word_of(&SpinBasisIndex::new(i.left, i.bottom, i.top, i.right)), c.conj());
        }
        out
    }

    /// New strand on the right: duplicate the right slot or insert a free letter where it goes.
    pub fn incl_right(&self) -> Dense {
        let target = SpinColor::new(self.color.width + 1, self.color.shading);
        let mut out = Dense::zero(self.n, target);
        let layout = self.color.layout();
        let at = layout.left as usize + layout.pairs;
        for (w, c) in self.terms() {
            if self.color == SpinColor::minus(0) {
                out.add(&w, c);
            } else if layout.right {
                let mut w2 = w.clone();
                w2.insert(at, w[at]);
                out.add(&w2, c);
            } else {
                for q in 0..self.n {
                    let mut w2 = w.clone();
                    w2.insert(at, q);
                    out.add(&w2, c);
                }
            }
        }
        out
    }

    /// New strand on the left: copy the left slot to the end of the word or prepend a free letter.
    pub fn incl_left(&self) -> Dense {
        let target = SpinColor::new(self.color.width + 1, -self.color.shading);
        let mut out = Dense::zero(self.n, target);
        let layout = self.color.layout();
        for (w, c) in self.terms() {
            if self.color == SpinColor::minus(0) {
                out.add(&w, c);
            } else if layout.left {
                let mut w2 = w.clone();
                w2.push(w[0]);
                out.add(&w2, c);
            } else {
                for p in 0..self.n {
                    let mut w2 = vec![p];
                    w2.extend(&w);
                    out.add(&w2, c);
                }
            }
        }
        out
    }

    fn rotation_weight(&self, shading: Shading) -> f64 {
        let root = (self.n as f64).sqrt();
        match (self.color.width % 2, shading) {
            (0, Shading::Plus) => root,
            (0, Shading::Minus) => 1.0 / root,
            _ => 1.0,
        }
    }

    /// Plus boxes shift the word by one letter; minus boxes keep it.
    pub fn rotate(&self) -> Dense {
        let k = self.color.width;
        assert!(k > 0);
        let mut out = Dense::zero(self.n, SpinColor::new(k, -self.color.shading));
        let weight = self.rotation_weight(self.color.shading);
        for (w, c) in self.terms() {
            let w2 = if self.color.shading == Shading::Plus {
                let mut s = vec![w[k - 1]];
                s.extend(&w[..k - 1]);
                s
            } else {
                w
            };
            out.add(&w2, c * weight);
        }
        out
    }

    pub fn rotate_inverse(&self) -> Dense {
        let k = self.color.width;
        assert!(k > 0);
        let source = -self.color.shading;
        let mut out = Dense::zero(self.n, SpinColor::new(k, source));
        let weight = self.rotation_weight(source);
        for (w, c) in self.terms() {
            let w2 = if source == Shading::Plus {
                let mut s = w[1..].to_vec();
                s.push(w[0]);
                s
            } else {
                w
            };
            out.add(&w2, c / weight);
        }
        out
    }

    fn times(&self, count: usize, op: fn(&Dense) -> Dense) -> Dense {
        (0..count).fold(self.clone(), |acc, _| op(&acc))
    }
}

/// Staircase elements `u_0..=u_max` from the same recursion, in the word model.
pub fn staircase(u: &Dense, ell: usize, max_level: usize) -> Vec<Dense> {
    let k = u.color.width;
    let mut out = vec![Dense::unit(u.n, SpinColor::new(k - ell, u.color.shading))];
    let rotated_star = u.star().times(ell, Dense::rotate_inverse);
    for m in 0..max_level {
        let v = if (m + 1) % 2 == 1 { u } else { &rotated_star };
        let next = out[m].times(ell, Dense::incl_right).mult(&v.times(m * ell, Dense::incl_left));
        out.push(next);
    }
    out
}

fn columns_to_matrix(rows: usize, cols: Vec<Vec<C64>>) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r])
}

/// `dim Q` at each level: kernel of `(1 − P)σ̃` with `P` the orthogonal
/// projection onto the range of the `c`-fold left inclusion.
pub fn dimensions(u: &SpinElement, ell: usize, max_level: usize) -> Vec<usize> {
    let du = Dense::from_library(u);
    let n = du.n;
    let (k, eps) = (du.color.width, du.color.shading);
    let cap = k - ell;
    let stair = staircase(&du, ell, max_level);
    (0..=max_level)
        .map(|m| {
            let um = &stair[m];
            let um_star = um.star();
            let ambient = SpinColor::new(m * ell, eps);
            let partner = SpinColor::new(m * ell, if cap % 2 == 1 { -eps } else { eps });
            let rows = um.v.len();

            let s_cols = (0..n.pow(word_len(ambient) as u32))
                .map(|j| um.mult(&Dense::basis(n, ambient, j).times(cap, Dense::incl_right)).mult(&um_star).v)
                .collect();
            let s = columns_to_matrix(rows, s_cols);
            let a_cols = (0..n.pow(word_len(partner) as u32))
                .map(|j| Dense::basis(n, partner, j).times(cap, Dense::incl_left).v)
                .collect();
            let a = columns_to_matrix(rows, a_cols);

            let svd = a.clone().svd(true, false);
            let u_a = svd.u.expect("left vectors");
            let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
            let rank = svd.singular_values.iter().filter(|&&x| x > 1e-10 * smax).count();
            let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
            order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
            let basis = DMatrix::from_fn(rows, rank, |r, c| u_a[(r, order[c])]);
            let projector = &basis * basis.adjoint();
            let l = (DMatrix::identity(rows, rows) - projector) * s;

            let cols = l.ncols();
            let sv = l.svd(false, false).singular_values;
            let lmax = sv.iter().cloned().fold(0.0, f64::max);
            let kept = sv.iter().filter(|&&x| x > 1e-8 * lmax.max(1.0)).count();
            cols - kept
        })
        .collect()
}
