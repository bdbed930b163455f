//! JSON interchange. Complex numbers are `[re, im]`; Latin square symbols and
//! element spins are 1-based.

use serde::{Deserialize, Serialize};

use crate::basis::SpinBasisIndex;
use crate::color::SpinColor;
use crate::context::SpinContext;
use crate::element::{SpinElement, C64};
use crate::error::{Result, SpinError};
use crate::numerics::ComplexMatrix;

use super::objects::{BiunitaryMatrix, HadamardMatrix, LatinSquare, QitObject, QuantumLatinSquare, UnitaryErrorBasis};

type Cx = [f64; 2];

fn to_c(c: &Cx) -> C64 {
    C64::new(c[0], c[1])
}

fn from_c(c: C64) -> Cx {
    [c.re, c.im]
}

fn matrix_in(rows: &[Vec<Cx>]) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(to_c).collect()).collect();
    ComplexMatrix::from_rows(&rows).map_err(|e| SpinError::Parse(e.to_string()))
}

fn matrix_out(m: &ComplexMatrix) -> Vec<Vec<Cx>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(from_c).collect()).collect()
}

fn check_n(declared: usize, actual: usize) -> Result<()> {
    if declared != actual {
        return Err(SpinError::Parse(format!("declared n = {declared} but the data has size {actual}")));
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum Wire {
    Hadamard { n: usize, entries: Vec<Vec<Cx>> },
    Latin { n: usize, rows: Vec<Vec<usize>> },
    Qls { n: usize, vectors: Vec<Vec<Vec<Cx>>> },
    Biunitary { n: usize, entries: Vec<Vec<Cx>> },
    Ueb { n: usize, matrices: Vec<Vec<Vec<Cx>>> },
}

impl QitObject {
    pub fn from_json_str(text: &str) -> Result<QitObject> {
        let wire: Wire = serde_json::from_str(text)
            .map_err(|e| SpinError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        Self::from_wire(wire)
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<QitObject> {
        let wire: Wire = serde_json::from_value(value).map_err(|e| SpinError::Parse(e.to_string()))?;
        Self::from_wire(wire)
    }

    fn from_wire(wire: Wire) -> Result<QitObject> {
        Ok(match wire {
            Wire::Hadamard { n, entries } => {
                let h = HadamardMatrix::new(matrix_in(&entries)?)?;
                check_n(n, h.n())?;
                QitObject::Hadamard(h)
            }
            Wire::Latin { n, rows } => {
                let l = LatinSquare::from_one_based(rows)?;
                check_n(n, l.n())?;
                QitObject::Latin(l)
            }
            Wire::Qls { n, vectors } => {
                let q = QuantumLatinSquare::new(
                    vectors.iter().map(|r| r.iter().map(|v| v.iter().map(to_c).collect()).collect()).collect(),
                )?;
                check_n(n, q.n())?;
                QitObject::Qls(q)
            }
            Wire::Biunitary { n, entries } => QitObject::Biunitary(BiunitaryMatrix::new(n, matrix_in(&entries)?)?),
            Wire::Ueb { n, matrices } => {
                let ms = matrices.iter().map(|m| matrix_in(m)).collect::<Result<Vec<_>>>()?;
                QitObject::Ueb(UnitaryErrorBasis::new(n, ms)?)
            }
        })
    }

    fn to_wire(&self) -> Wire {
        match self {
            QitObject::Hadamard(h) => Wire::Hadamard { n: h.n(), entries: matrix_out(&h.entries) },
            QitObject::Latin(l) => Wire::Latin {
                n: l.n(),
                rows: l.rows.iter().map(|r| r.iter().map(|s| s + 1).collect()).collect(),
            },
            QitObject::Qls(q) => Wire::Qls {
                n: q.n(),
                vectors: q.vectors.iter().map(|r| r.iter().map(|v| v.iter().map(|&c| from_c(c)).collect()).collect()).collect(),
            },
            QitObject::Biunitary(b) => Wire::Biunitary { n: b.n, entries: matrix_out(&b.entries) },
            QitObject::Ueb(u) => Wire::Ueb { n: u.n, matrices: u.matrices.iter().map(matrix_out).collect() },
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_wire()).expect("plain data serializes")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<usize>,
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<usize>,
    pub coeff: Cx,
}

/// Coefficient dump of an element, tagged with the object kind it came from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub n: usize,
    pub color: SpinColor,
    pub terms: Vec<TermJson>,
}

impl ElementJson {
    pub fn from_element(u: &SpinElement, source: Option<&str>) -> Self {
        let one = |s: usize| s + 1;
        let terms = u
            .terms()
            .map(|(idx, c)| TermJson {
                left: idx.left.map(one),
                top: idx.top.iter().copied().map(one).collect(),
                bottom: idx.bottom.iter().copied().map(one).collect(),
                right: idx.right.map(one),
                coeff: from_c(c),
            })
            .collect();
        ElementJson { source: source.map(str::to_owned), n: u.n(), color: u.color(), terms }
    }

    pub fn to_element(&self) -> Result<SpinElement> {
        let ctx = SpinContext::new(self.n)?;
        let zero_based = |s: usize| {
            s.checked_sub(1).ok_or_else(|| SpinError::Parse("element spins are 1-based; found 0".into()))
        };
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let idx = SpinBasisIndex::new(
                    t.left.map(zero_based).transpose()?,
                    t.top.iter().map(|&s| zero_based(s)).collect::<Result<_>>()?,
                    t.bottom.iter().map(|&s| zero_based(s)).collect::<Result<_>>()?,
                    t.right.map(zero_based).transpose()?,
                );
                Ok((idx, to_c(&t.coeff)))
            })
            .collect::<Result<Vec<_>>>()?;
        SpinElement::from_terms(&ctx, self.color, terms)
    }
}
