//! Coefficient maps between quantum-information objects and elements of the
//! spin planar algebra.
//!
//! Placement of indices:
//! * Hadamard, `P_(2,+)`: `u = Σ h_ij/√n e^i_j`.
//! * quantum Latin square, `P_(3,+)`: `u = Σ Q[r][c]_s e^s_r(c]` (top = component,
//!   bottom = row, right bracket = column).
//! * biunitary matrix, `P_(4,+)`: the coefficient of `e^{ij}_{lk}` is `u^{ij}_{kl}`.
//! * unitary error basis, `P_(4,+)`: `a^{ij}_{kl} = B(j,l)_{ik}/√n`, placed as for
//!   biunitary matrices.

use crate::basis::SpinBasisIndex;
use crate::color::SpinColor;
use crate::context::SpinContext;
use crate::element::{SpinElement, C64};
use crate::error::{Result, SpinError};
use crate::numerics::ComplexMatrix;

use super::certificate::{is_ab_biunitary_ueb, is_biunitary, BiunitaryCertificate};
use super::objects::{BiunitaryMatrix, HadamardMatrix, LatinSquare, QitObject, QuantumLatinSquare, UnitaryErrorBasis};

fn assemble<I>(n: usize, color: SpinColor, terms: I) -> Result<SpinElement>
where
    I: IntoIterator<Item = (SpinBasisIndex, C64)>,
{
    SpinElement::from_terms(&SpinContext::new(n)?, color, terms)
}

fn expect_color(u: &SpinElement, color: SpinColor, op: &'static str) -> Result<()> {
    if u.color() != color {
        return Err(SpinError::UnsupportedColor { op, color: u.color() });
    }
    Ok(())
}

fn pair(a: usize, b: usize) -> Vec<usize> {
    vec![a, b]
}

pub fn hadamard_element(h: &HadamardMatrix) -> Result<SpinElement> {
    let n = h.n();
    let scale = 1.0 / (n as f64).sqrt();
    let terms = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    assemble(n, SpinColor::plus(2), terms.map(|(i, j)| (SpinBasisIndex::pairs(vec![i], vec![j]), h.entries.get(i, j) * scale)))
}

pub fn from_hadamard(h: &HadamardMatrix, tol: f64) -> Result<SpinElement> {
    QitObject::Hadamard(h.clone()).validate(tol)?;
    hadamard_element(h)
}

pub fn to_hadamard(u: &SpinElement, tol: f64) -> Result<HadamardMatrix> {
    expect_color(u, SpinColor::plus(2), "to_hadamard")?;
    is_biunitary(u, 1, tol)?.into_result()?;
    let n = u.n();
    let root = (n as f64).sqrt();
    let entries = ComplexMatrix::from_fn(n, n, |i, j| u.coeff(&SpinBasisIndex::pairs(vec![i], vec![j])) * root);
    HadamardMatrix::new(entries)
}

/// `Q[r][c] = e_{L[r][c]}`.
pub fn latin_to_qls(l: &LatinSquare) -> Result<QuantumLatinSquare> {
    QitObject::Latin(l.clone()).validate(0.0)?;
    let n = l.n();
    let vectors = l
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|&s| (0..n).map(|t| if t == s { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).collect())
                .collect()
        })
        .collect();
    QuantumLatinSquare::new(vectors)
}

pub fn qls_element(q: &QuantumLatinSquare) -> Result<SpinElement> {
    let n = q.n();
    let mut terms = Vec::with_capacity(n * n * n);
    for (r, row) in q.vectors.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            for (s, &a) in v.iter().enumerate() {
                terms.push((SpinBasisIndex::new(None, vec![s], vec![r], Some(c)), a));
            }
        }
    }
    assemble(n, SpinColor::plus(3), terms)
}

pub fn from_qls(q: &QuantumLatinSquare, tol: f64) -> Result<SpinElement> {
    QitObject::Qls(q.clone()).validate(tol)?;
    qls_element(q)
}

pub fn to_qls(u: &SpinElement, tol: f64) -> Result<QuantumLatinSquare> {
    expect_color(u, SpinColor::plus(3), "to_qls")?;
    is_biunitary(u, 1, tol)?.into_result()?;
    let n = u.n();
    let vectors = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).map(|s| u.coeff(&SpinBasisIndex::new(None, vec![s], vec![r], Some(c)))).collect())
                .collect()
        })
        .collect();
    QuantumLatinSquare::new(vectors)
}

pub fn biunitary_element(b: &BiunitaryMatrix) -> Result<SpinElement> {
    let n = b.n;
    let mut terms = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    terms.push((SpinBasisIndex::pairs(pair(i, j), pair(l, k)), b.entry(i, j, k, l)));
                }
            }
        }
    }
    assemble(n, SpinColor::plus(4), terms)
}

pub fn from_biunitary_matrix(b: &BiunitaryMatrix, tol: f64) -> Result<SpinElement> {
    QitObject::Biunitary(b.clone()).validate(tol)?;
    biunitary_element(b)
}

pub fn to_biunitary_matrix(u: &SpinElement, tol: f64) -> Result<BiunitaryMatrix> {
    expect_color(u, SpinColor::plus(4), "to_biunitary_matrix")?;
    is_biunitary(u, 2, tol)?.into_result()?;
    let n = u.n();
    let entries = ComplexMatrix::from_fn(n * n, n * n, |r, c| {
        let (i, j, k, l) = (r / n, r % n, c / n, c % n);
        u.coeff(&SpinBasisIndex::pairs(pair(i, j), pair(l, k)))
    });
    BiunitaryMatrix::new(n, entries)
}

pub fn ueb_element(e: &UnitaryErrorBasis) -> Result<SpinElement> {
    let n = e.n;
    let scale = 1.0 / (n as f64).sqrt();
    let mut terms = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    terms.push((SpinBasisIndex::pairs(pair(i, j), pair(l, k)), e.matrix(j, l).get(i, k) * scale));
                }
            }
        }
    }
    assemble(n, SpinColor::plus(4), terms)
}

pub fn from_ueb(e: &UnitaryErrorBasis, tol: f64) -> Result<SpinElement> {
    QitObject::Ueb(e.clone()).validate(tol)?;
    ueb_element(e)
}

pub fn to_ueb(u: &SpinElement, tol: f64) -> Result<UnitaryErrorBasis> {
    expect_color(u, SpinColor::plus(4), "to_ueb")?;
    is_ab_biunitary_ueb(u, tol)?.into_result()?;
    let n = u.n();
    let root = (n as f64).sqrt();
    let matrices = (0..n * n)
        .map(|idx| {
            let (j, l) = (idx / n, idx % n);
            ComplexMatrix::from_fn(n, n, |i, k| u.coeff(&SpinBasisIndex::pairs(pair(i, j), pair(l, k))) * root)
        })
        .collect();
    UnitaryErrorBasis::new(n, matrices)
}

impl QitObject {
    /// The element attached to this object, without validating the object.
    /// Latin squares go through their quantum Latin square.
    pub fn element_unchecked(&self) -> Result<SpinElement> {
        match self {
            QitObject::Hadamard(h) => hadamard_element(h),
            QitObject::Latin(l) => {
                if l.rows.iter().flatten().any(|&s| s >= l.n()) {
                    QitObject::Latin(l.clone()).validate(0.0)?;
                }
                let n = l.n();
                let terms = l.rows.iter().enumerate().flat_map(|(r, row)| {
                    row.iter().enumerate().map(move |(c, &s)| (SpinBasisIndex::new(None, vec![s], vec![r], Some(c)), C64::new(1.0, 0.0)))
                });
                assemble(n, SpinColor::plus(3), terms)
            }
            QitObject::Qls(q) => qls_element(q),
            QitObject::Biunitary(b) => biunitary_element(b),
            QitObject::Ueb(e) => ueb_element(e),
        }
    }

    /// Validates the object, then converts it.
    pub fn to_element(&self, tol: f64) -> Result<SpinElement> {
        self.validate(tol)?;
        self.element_unchecked()
    }

    /// Rotation count of the matching `{0,ℓ}` certificate; `None` for unitary error bases.
    pub fn ell(&self) -> Option<usize> {
        match self {
            QitObject::Hadamard(_) | QitObject::Latin(_) | QitObject::Qls(_) => Some(1),
            QitObject::Biunitary(_) => Some(2),
            QitObject::Ueb(_) => None,
        }
    }

    /// The certificate matching this object type, run on `u`.
    pub fn certify(&self, u: &SpinElement, tol: f64) -> Result<BiunitaryCertificate> {
        match self.ell() {
            Some(ell) => is_biunitary(u, ell, tol),
            None => is_ab_biunitary_ueb(u, tol),
        }
    }

    /// Read an object of the same kind back from an element.
    pub fn from_element(kind: &str, u: &SpinElement, tol: f64) -> Result<QitObject> {
        Ok(match kind {
            "hadamard" => QitObject::Hadamard(to_hadamard(u, tol)?),
            "qls" => QitObject::Qls(to_qls(u, tol)?),
            "latin" => {
                let q = to_qls(u, tol)?;
                QitObject::Latin(qls_to_latin(&q, tol).ok_or_else(|| {
                    SpinError::Validation { defects: vec!["quantum Latin square is not classical".into()] }
                })?)
            }
            "biunitary" => QitObject::Biunitary(to_biunitary_matrix(u, tol)?),
            "ueb" => QitObject::Ueb(to_ueb(u, tol)?),
            other => return Err(SpinError::Parse(format!("unknown object type `{other}`"))),
        })
    }
}

/// The Latin square whose quantum Latin square is `q`, if every vector is a
/// standard basis vector.
pub fn qls_to_latin(q: &QuantumLatinSquare, tol: f64) -> Option<LatinSquare> {
    let n = q.n();
    let mut rows = vec![vec![0; n]; n];
    for (r, row) in q.vectors.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let s = (0..n).find(|&s| (v[s] - C64::new(1.0, 0.0)).norm() <= tol)?;
            if v.iter().enumerate().any(|(t, a)| t != s && a.norm() > tol) {
                return None;
            }
            rows[r][c] = s;
        }
    }
    LatinSquare::new(rows).ok()
}
