//! The generating tangle operations on the spin planar algebra: multiplication,
//! one-click rotation, left and right inclusion, left and right conditional
//! expectation, and the partial swap `A` on `P_(4,+)`.
//!
//! Every operation is linear and is implemented directly on packed ordinals.
//! Constants are stated in the normalized basis.

use std::collections::{BTreeMap, HashMap};

use crate::basis::{Codec, Slots};
use crate::color::{Shading, SpinColor};
use crate::element::{SpinElement, C64, ZERO};
use crate::error::{Result, SpinError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TangleOpKind {
    Mult,
    RotateCW,
    RotateInv,
    InclRight,
    InclLeft,
    CondRight,
    CondLeft,
    PartialSwapA,
}

impl TangleOpKind {
    /// Target color when applied to an element of `source`.
    pub fn target(self, source: SpinColor) -> Result<SpinColor> {
        let unsupported = |op| Err(SpinError::UnsupportedColor { op, color: source });
        let SpinColor { width, shading } = source;
        match self {
            TangleOpKind::Mult => Ok(source),
            TangleOpKind::RotateCW | TangleOpKind::RotateInv if width == 0 => unsupported("rotate"),
            TangleOpKind::RotateCW | TangleOpKind::RotateInv => Ok(source.rotated()),
            TangleOpKind::InclRight => Ok(SpinColor::new(width + 1, shading)),
            TangleOpKind::InclLeft => Ok(SpinColor::new(width + 1, -shading)),
            TangleOpKind::CondRight if width == 0 => unsupported("cond_right"),
            TangleOpKind::CondRight => Ok(SpinColor::new(width - 1, shading)),
            TangleOpKind::CondLeft if width == 0 => unsupported("cond_left"),
            TangleOpKind::CondLeft => Ok(SpinColor::new(width - 1, -shading)),
            TangleOpKind::PartialSwapA if source == SpinColor::plus(4) => Ok(source),
            TangleOpKind::PartialSwapA => unsupported("partial_swap_a"),
        }
    }
}

/// Apply a basis map `f` that emits weighted target slots for each source term.
fn transform<F>(x: &SpinElement, target: SpinColor, f: F) -> SpinElement
where
    F: Fn(Slots, &mut Vec<(Slots, f64)>),
{
    let src = x.codec();
    let dst = Codec::new(x.n(), target);
    let mut buf = Vec::new();
    let mut out: BTreeMap<u64, C64> = BTreeMap::new();
    for (&o, &c) in x.raw() {
        buf.clear();
        f(src.decode(o), &mut buf);
        for &(s, w) in &buf {
            *out.entry(dst.encode(s)).or_insert(ZERO) += c * w;
        }
    }
    SpinElement::from_map(x.n(), target, out)
}

fn slots(left: u64, top: u64, bottom: u64, right: u64) -> Slots {
    Slots { left, top, bottom, right }
}

/// Product `x·y`: `e[p)^I_J(q] · e[p')^K_L(q'] = δ_{pp'} δ_{JK} δ_{qq'} e[p)^I_L(q]`.
pub fn mult(x: &SpinElement, y: &SpinElement) -> Result<SpinElement> {
    x.check_compatible(y)?;
    let codec = x.codec();
    let mut rows: HashMap<(u64, u64, u64), Vec<(u64, C64)>> = HashMap::with_capacity(y.nnz());
    for (&o, &c) in y.raw() {
        let s = codec.decode(o);
        rows.entry((s.left, s.top, s.right)).or_default().push((s.bottom, c));
    }
    let mut acc: HashMap<u64, C64> = HashMap::new();
    for (&o, &a) in x.raw() {
        let s = codec.decode(o);
        if let Some(row) = rows.get(&(s.left, s.bottom, s.right)) {
            for &(bottom, b) in row {
                *acc.entry(codec.encode(slots(s.left, s.top, bottom, s.right))).or_insert(ZERO) += a * b;
            }
        }
    }
    Ok(SpinElement::from_map(x.n(), x.color(), acc.into_iter().collect()))
}

/// One click of rotation, `P_(k,ε) → P_(k,−ε)`.
pub fn rotate(x: &SpinElement) -> Result<SpinElement> {
    let color = x.color();
    let target = TangleOpKind::RotateCW.target(color)?;
    let n = x.n() as u64;
    let root = (x.n() as f64).sqrt();
    let m = color.layout().pairs as u32;
    let out = match (color.width % 2, color.shading) {
        // e^{i_1..i_m}_{j_1..j_m} ↦ √N e[j_1)^{i_1..i_{m-1}}_{j_2..j_m}(i_m]
        (0, Shading::Plus) => {
            let p = n.pow(m - 1);
            transform(x, target, |s, out| out.push((slots(s.bottom / p, s.top / n, s.bottom % p, s.top % n), root)))
        }
        // e[p)^I_J(q] ↦ N^{-1/2} e^{p,I}_{J,q}
        (0, Shading::Minus) => {
            let t = n.pow(m);
            transform(x, target, |s, out| out.push((slots(0, s.left * t + s.top, s.bottom * n + s.right, 0), 1.0 / root)))
        }
        // e(q] ↦ e[q)
        (1, Shading::Plus) if m == 0 => transform(x, target, |s, out| out.push((slots(s.right, 0, 0, 0), 1.0))),
        // e^I_J(q] ↦ e[j_1)^I_{j_2..j_m,q}
        (1, Shading::Plus) => {
            let p = n.pow(m - 1);
            transform(x, target, |s, out| {
                out.push((slots(s.bottom / p, s.top, (s.bottom % p) * n + s.right, 0), 1.0))
            })
        }
        // e[p) ↦ e(p]
        (1, Shading::Minus) if m == 0 => transform(x, target, |s, out| out.push((slots(0, 0, 0, s.left), 1.0))),
        // e[p)^I_J ↦ e^{p,i_1..i_{m-1}}_J(i_m]
        (1, Shading::Minus) => {
            let p = n.pow(m - 1);
            transform(x, target, |s, out| out.push((slots(0, s.left * p + s.top / n, s.bottom, s.top % n), 1.0)))
        }
        _ => unreachable!(),
    };
    Ok(out)
}

/// Inverse of [`rotate`], `P_(k,ε) → P_(k,−ε)`, obtained by inverting each basis bijection.
pub fn rotate_inverse(x: &SpinElement) -> Result<SpinElement> {
    let color = x.color();
    let target = TangleOpKind::RotateInv.target(color)?;
    let n = x.n() as u64;
    let root = (x.n() as f64).sqrt();
    // `target` is the source color of the forward rotation being undone.
    let m = target.layout().pairs as u32;
    let out = match (target.width % 2, target.shading) {
        (0, Shading::Plus) => {
            let p = n.pow(m - 1);
            transform(x, target, |s, out| out.push((slots(0, s.top * n + s.right, s.left * p + s.bottom, 0), 1.0 / root)))
        }
        (0, Shading::Minus) => {
            let t = n.pow(m);
            transform(x, target, |s, out| out.push((slots(s.top / t, s.top % t, s.bottom / n, s.bottom % n), root)))
        }
        (1, Shading::Plus) if m == 0 => transform(x, target, |s, out| out.push((slots(0, 0, 0, s.left), 1.0))),
        (1, Shading::Plus) => {
            let p = n.pow(m - 1);
            transform(x, target, |s, out| out.push((slots(0, s.top, s.left * p + s.bottom / n, s.bottom % n), 1.0)))
        }
        (1, Shading::Minus) if m == 0 => transform(x, target, |s, out| out.push((slots(s.right, 0, 0, 0), 1.0))),
        (1, Shading::Minus) => {
            let p = n.pow(m - 1);
            transform(x, target, |s, out| out.push((slots(s.top / p, (s.top % p) * n + s.right, s.bottom, 0), 1.0)))
        }
        _ => unreachable!(),
    };
    Ok(out)
}

/// `ell`-fold rotation; negative counts apply the inverse rotation.
pub fn rotate_pow(x: &SpinElement, ell: i64) -> Result<SpinElement> {
    let step = if ell >= 0 { rotate } else { rotate_inverse };
    let mut cur = x.clone();
    for _ in 0..ell.unsigned_abs() {
        cur = step(&cur)?;
    }
    if ell == 0 {
        TangleOpKind::RotateCW.target(x.color())?;
    }
    Ok(cur)
}

/// Inclusion `I`: add a through strand on the right, `P_(k,ε) → P_(k+1,ε)`.
pub fn incl_right(x: &SpinElement) -> Result<SpinElement> {
    let color = x.color();
    let target = TangleOpKind::InclRight.target(color)?;
    let n = x.n() as u64;
    let layout = color.layout();
    let out = if color == SpinColor::minus(0) {
        // S(p) ↦ e[p)
        transform(x, target, |s, out| out.push((s, 1.0)))
    } else if layout.right {
        transform(x, target, |s, out| out.push((slots(s.left, s.top * n + s.right, s.bottom * n + s.right, 0), 1.0)))
    } else {
        transform(x, target, |s, out| out.extend((0..n).map(|q| (slots(s.left, s.top, s.bottom, q), 1.0))))
    };
    Ok(out)
}

/// Inclusion with a through strand on the left, `P_(k,ε) → P_(k+1,−ε)`.
pub fn incl_left(x: &SpinElement) -> Result<SpinElement> {
    let color = x.color();
    let target = TangleOpKind::InclLeft.target(color)?;
    let n = x.n() as u64;
    let layout = color.layout();
    let out = if color == SpinColor::minus(0) {
        // S(p) ↦ e(p]
        transform(x, target, |s, out| out.push((slots(0, 0, 0, s.left), 1.0)))
    } else if layout.left {
        let t = n.pow(layout.pairs as u32);
        transform(x, target, |s, out| {
            out.push((slots(0, s.left * t + s.top, s.left * t + s.bottom, s.right), 1.0))
        })
    } else {
        transform(x, target, |s, out| out.extend((0..n).map(|p| (slots(p, s.top, s.bottom, s.right), 1.0))))
    };
    Ok(out)
}

/// Conditional expectation tangle `E`: cap the rightmost strand, `P_(k+1,ε) → P_(k,ε)`.
pub fn cond_right(x: &SpinElement) -> Result<SpinElement> {
    let color = x.color();
    let target = TangleOpKind::CondRight.target(color)?;
    let n = x.n() as u64;
    let root = (x.n() as f64).sqrt();
    let layout = color.layout();
    let out = if color == SpinColor::minus(1) {
        // e[p) ↦ √N S(p)
        transform(x, target, |s, out| out.push((s, root)))
    } else if layout.right {
        transform(x, target, |s, out| out.push((slots(s.left, s.top, s.bottom, 0), 1.0 / root)))
    } else {
        transform(x, target, |s, out| {
            if s.top % n == s.bottom % n {
                out.push((slots(s.left, s.top / n, s.bottom / n, s.top % n), root));
            }
        })
    };
    Ok(out)
}

/// Cap the leftmost strand, `P_(k,ε) → P_(k−1,−ε)`.
pub fn cond_left(x: &SpinElement) -> Result<SpinElement> {
    let color = x.color();
    let target = TangleOpKind::CondLeft.target(color)?;
    let root = (x.n() as f64).sqrt();
    let layout = color.layout();
    let out = if color == SpinColor::plus(1) {
        // e(q] ↦ √N S(q)
        transform(x, target, |s, out| out.push((slots(s.right, 0, 0, 0), root)))
    } else if layout.left {
        transform(x, target, |s, out| out.push((slots(0, s.top, s.bottom, s.right), 1.0 / root)))
    } else {
        let t = (x.n() as u64).pow(layout.pairs as u32 - 1);
        transform(x, target, |s, out| {
            if s.top / t == s.bottom / t {
                out.push((slots(s.top / t, s.top % t, s.bottom % t, s.right), root));
            }
        })
    };
    Ok(out)
}

/// Partial swap `e^{ij}_{kl} ↦ e^{il}_{kj}` on `P_(4,+)`.
pub fn partial_swap_a(x: &SpinElement) -> Result<SpinElement> {
    let target = TangleOpKind::PartialSwapA.target(x.color())?;
    let n = x.n() as u64;
    Ok(transform(x, target, |s, out| {
        let (i, j, k, l) = (s.top / n, s.top % n, s.bottom / n, s.bottom % n);
        out.push((slots(0, i * n + l, k * n + j, 0), 1.0));
    }))
}

fn iterate(x: &SpinElement, times: usize, op: fn(&SpinElement) -> Result<SpinElement>) -> Result<SpinElement> {
    let mut cur = x.clone();
    for _ in 0..times {
        cur = op(&cur)?;
    }
    Ok(cur)
}

pub fn incl_right_pow(x: &SpinElement, times: usize) -> Result<SpinElement> {
    iterate(x, times, incl_right)
}

pub fn incl_left_pow(x: &SpinElement, times: usize) -> Result<SpinElement> {
    iterate(x, times, incl_left)
}

pub fn cond_right_pow(x: &SpinElement, times: usize) -> Result<SpinElement> {
    iterate(x, times, cond_right)
}

pub fn cond_left_pow(x: &SpinElement, times: usize) -> Result<SpinElement> {
    iterate(x, times, cond_left)
}

impl SpinElement {
    /// Close every strand on the right, then apply `τ`.
    pub fn picture_trace_right(&self) -> C64 {
        let closed = cond_right_pow(self, self.color().width).expect("width decreases to zero");
        closed.normalized_trace()
    }

    /// Close every strand on the left, then apply `τ`.
    pub fn picture_trace_left(&self) -> C64 {
        let closed = cond_left_pow(self, self.color().width).expect("width decreases to zero");
        closed.normalized_trace()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::SpinBasisIndex;
    use crate::context::SpinContext;
    use crate::element::ONE;

    // 1-based helper mirroring the written notation.
    fn e(n: usize, color: SpinColor, l: Option<usize>, t: &[usize], b: &[usize], r: Option<usize>) -> SpinElement {
        let idx = SpinBasisIndex::new(
            l.map(|s| s - 1),
            t.iter().map(|s| s - 1).collect(),
            b.iter().map(|s| s - 1).collect(),
            r.map(|s| s - 1),
        );
        SpinElement::basis(&SpinContext::new(n).unwrap(), color, &idx).unwrap()
    }

    const P2: SpinColor = SpinColor::plus(2);
    const P3: SpinColor = SpinColor::plus(3);

    #[test]
    fn mult_matrix_units() {
        let a = e(2, P2, None, &[1], &[2], None);
        let b = e(2, P2, None, &[2], &[1], None);
        assert_eq!(mult(&a, &b).unwrap(), e(2, P2, None, &[1], &[1], None));
        assert!(mult(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn mult_respects_right_slot() {
        let a = e(2, P3, None, &[1], &[2], Some(1));
        assert!(mult(&a, &e(2, P3, None, &[2], &[1], Some(2))).unwrap().is_zero());
        assert_eq!(mult(&a, &e(2, P3, None, &[2], &[1], Some(1))).unwrap(), e(2, P3, None, &[1], &[1], Some(1)));
    }

    #[test]
    fn mult_on_zero_boxes() {
        let s1 = e(3, SpinColor::minus(0), Some(1), &[], &[], None);
        let s2 = e(3, SpinColor::minus(0), Some(2), &[], &[], None);
        assert_eq!(mult(&s1, &s1).unwrap(), s1);
        assert!(mult(&s1, &s2).unwrap().is_zero());
        let c = SpinElement::scalar(3, C64::new(2.0, 1.0));
        assert_eq!(mult(&c, &c).unwrap(), SpinElement::scalar(3, C64::new(3.0, 4.0)));
    }

    #[test]
    fn rotation_examples() {
        let r = rotate(&e(2, P2, None, &[1], &[2], None)).unwrap();
        let want = e(2, SpinColor::minus(2), Some(2), &[], &[], Some(1)).scale_real(2f64.sqrt());
        assert!(r.approx_eq(&want, 1e-15));
        let r = rotate(&e(3, SpinColor::minus(3), Some(2), &[1], &[3], None)).unwrap();
        assert_eq!(r, e(3, P3, None, &[2], &[3], Some(1)));
        assert!(rotate(&SpinElement::scalar(2, ONE)).is_err());
    }

    #[test]
    fn rotation_inverse_on_every_basis_vector() {
        for n in 2..=3 {
            for w in 1..=5 {
                for color in [SpinColor::plus(w), SpinColor::minus(w)] {
                    let codec = Codec::new(n, color);
                    for o in 0..codec.size() {
                        let x = SpinElement::from_ordinal(n, color, o, ONE);
                        let back = rotate_inverse(&rotate(&x).unwrap()).unwrap();
                        assert!(back.approx_eq(&x, 1e-14), "{color} {o}");
                        let back = rotate(&rotate_inverse(&x).unwrap()).unwrap();
                        assert!(back.approx_eq(&x, 1e-14), "{color} {o}");
                    }
                }
            }
        }
    }

    #[test]
    fn inclusion_examples() {
        let x = e(2, SpinColor::plus(1), None, &[], &[], Some(1));
        assert_eq!(incl_right(&x).unwrap(), e(2, P2, None, &[1], &[1], None));
        let y = incl_right(&e(2, P2, None, &[1], &[2], None)).unwrap();
        let want = e(2, P3, None, &[1], &[2], Some(1)).add(&e(2, P3, None, &[1], &[2], Some(2))).unwrap();
        assert_eq!(y, want);
        let z = incl_left(&e(2, SpinColor::minus(3), Some(1), &[2], &[2], None)).unwrap();
        assert_eq!(z, e(2, SpinColor::plus(4), None, &[1, 2], &[1, 2], None));
        let w = incl_left(&e(2, P2, None, &[1], &[2], None)).unwrap();
        let m3 = SpinColor::minus(3);
        assert_eq!(w, e(2, m3, Some(1), &[1], &[2], None).add(&e(2, m3, Some(2), &[1], &[2], None)).unwrap());
    }

    #[test]
    fn inclusions_are_unital() {
        for n in 2..=3 {
            for w in 0..=4 {
                for color in [SpinColor::plus(w), SpinColor::minus(w)] {
                    let one = SpinElement::unit(n, color);
                    let r = incl_right(&one).unwrap();
                    assert_eq!(r, SpinElement::unit(n, r.color()));
                    let l = incl_left(&one).unwrap();
                    assert_eq!(l, SpinElement::unit(n, l.color()));
                }
            }
        }
    }

    #[test]
    fn conditional_expectation_examples() {
        let r2 = 2f64.sqrt();
        assert!(cond_right(&e(2, P2, None, &[1], &[2], None)).unwrap().is_zero());
        let c = cond_right(&e(2, P2, None, &[1], &[1], None)).unwrap();
        assert!(c.approx_eq(&e(2, SpinColor::plus(1), None, &[], &[], Some(1)).scale_real(r2), 1e-15));
        let c = cond_right(&e(2, P3, None, &[1], &[2], Some(1))).unwrap();
        assert!(c.approx_eq(&e(2, P2, None, &[1], &[2], None).scale_real(1.0 / r2), 1e-15));
        let c = cond_left(&e(2, SpinColor::plus(4), None, &[1, 2], &[1, 2], None)).unwrap();
        assert!(c.approx_eq(&e(2, SpinColor::minus(3), Some(1), &[2], &[2], None).scale_real(r2), 1e-15));
        let c = cond_left(&e(2, SpinColor::minus(3), Some(1), &[2], &[2], None)).unwrap();
        assert!(c.approx_eq(&e(2, P2, None, &[2], &[2], None).scale_real(1.0 / r2), 1e-15));
    }

    #[test]
    fn conditional_expectation_of_unit_is_modulus() {
        for n in 2..=3 {
            let delta = (n as f64).sqrt();
            for w in 1..=5 {
                for color in [SpinColor::plus(w), SpinColor::minus(w)] {
                    let one = SpinElement::unit(n, color);
                    let r = cond_right(&one).unwrap();
                    assert!(r.approx_eq(&SpinElement::unit(n, r.color()).scale_real(delta), 1e-14));
                    let l = cond_left(&one).unwrap();
                    assert!(l.approx_eq(&SpinElement::unit(n, l.color()).scale_real(delta), 1e-14));
                }
            }
        }
    }

    #[test]
    fn partial_swap_examples() {
        let c = SpinColor::plus(4);
        let x = e(4, c, None, &[1, 2], &[1, 2], None);
        assert_eq!(partial_swap_a(&x).unwrap(), x);
        let y = e(4, c, None, &[1, 2], &[3, 4], None);
        assert_eq!(partial_swap_a(&y).unwrap(), e(4, c, None, &[1, 4], &[3, 2], None));
        assert!(partial_swap_a(&e(2, P3, None, &[1], &[1], Some(1))).is_err());
    }

    #[test]
    fn picture_trace_of_matrix_unit() {
        let x = e(2, P2, None, &[1], &[1], None);
        assert!((x.picture_trace_right() - ONE).norm() < 1e-14);
        assert!((x.picture_trace_left() - ONE).norm() < 1e-14);
    }

    #[test]
    fn op_kind_colors() {
        let c = SpinColor::minus(3);
        assert_eq!(TangleOpKind::InclLeft.target(c).unwrap(), SpinColor::plus(4));
        assert_eq!(TangleOpKind::CondLeft.target(c).unwrap(), SpinColor::plus(2));
        assert_eq!(TangleOpKind::CondRight.target(c).unwrap(), SpinColor::minus(2));
        assert!(TangleOpKind::CondRight.target(SpinColor::plus(0)).is_err());
    }
}
