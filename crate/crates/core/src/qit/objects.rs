//! Quantum-information objects and their defining invariants.
//!
//! Constructors check shape only. [`QitObject::defects`] checks the algebraic
//! invariants and names every violated relation.

use serde::Serialize;

use crate::element::C64;
use crate::error::{Result, SpinError};
use crate::numerics::ComplexMatrix;

/// One violated relation with its size and the offending positions (1-based).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Defect {
    pub relation: &'static str,
    pub residual: f64,
    pub detail: String,
}

impl std::fmt::Display for Defect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} violated (residual {:.3e}): {}", self.relation, self.residual, self.detail)
    }
}

pub const HADAMARD_ORTHOGONALITY: &str = "H H* = nI";
pub const HADAMARD_MODULUS: &str = "|h_ij| = 1";
pub const LATIN_RANGE: &str = "symbols in 1..n";
pub const LATIN_ROWS: &str = "each symbol once per row";
pub const LATIN_COLUMNS: &str = "each symbol once per column";
pub const QLS_ROWS: &str = "rows are orthonormal bases";
pub const QLS_COLUMNS: &str = "columns are orthonormal bases";
pub const BIUNITARY_UNITARY: &str = "U unitary";
pub const BIUNITARY_BLOCK_TRANSPOSE: &str = "block transpose unitary";
pub const UEB_UNITARY: &str = "B(j,l) unitary";
pub const UEB_ORTHONORMAL: &str = "Tr(B* B')/n orthonormal";

fn shape_error(msg: String) -> SpinError {
    SpinError::Parse(msg)
}

fn positions(items: &[usize]) -> String {
    items.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(", ")
}

/// `max(‖MM* − I‖, ‖M*M − I‖)`.
fn unitarity_defect(m: &ComplexMatrix) -> Result<f64> {
    let a = m.matmul(&m.adjoint())?.operator_norm_defect()?;
    let b = m.adjoint().matmul(m)?.operator_norm_defect()?;
    Ok(a.max(b))
}

/// Gram matrix `G_ab = ⟨v_b, v_a⟩` of a family of vectors.
fn gram(vectors: &[&Vec<C64>]) -> ComplexMatrix {
    ComplexMatrix::from_fn(vectors.len(), vectors.len(), |a, b| {
        vectors[a].iter().zip(vectors[b]).map(|(x, y)| x * y.conj()).sum()
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HadamardMatrix {
    pub entries: ComplexMatrix,
}

impl HadamardMatrix {
    pub fn new(entries: ComplexMatrix) -> Result<Self> {
        if entries.rows() != entries.cols() || entries.rows() == 0 {
            return Err(shape_error(format!("hadamard matrix must be square and nonempty, got {}x{}", entries.rows(), entries.cols())));
        }
        Ok(HadamardMatrix { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.rows()
    }

    pub fn defects(&self, tol: f64) -> Result<Vec<Defect>> {
        let n = self.n();
        let mut out = Vec::new();
        let hh = self.entries.matmul(&self.entries.adjoint())?;
        let r = hh.sub(&ComplexMatrix::identity(n).scale(C64::new(n as f64, 0.0)))?.operator_norm()?;
        if r > tol {
            out.push(Defect { relation: HADAMARD_ORTHOGONALITY, residual: r, detail: format!("‖HH* − {n}I‖ = {r:.3e}") });
        }
        let mut bad = Vec::new();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let d = (self.entries.get(i, j).norm() - 1.0).abs();
                if d > tol {
                    bad.push(format!("({},{})", i + 1, j + 1));
                    worst = worst.max(d);
                }
            }
        }
        if !bad.is_empty() {
            out.push(Defect { relation: HADAMARD_MODULUS, residual: worst, detail: format!("entries {}", bad.join(", ")) });
        }
        Ok(out)
    }
}

/// Symbols are stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    pub rows: Vec<Vec<usize>>,
}

impl LatinSquare {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(shape_error("latin square must be a nonempty n x n array".into()));
        }
        Ok(LatinSquare { rows })
    }

    /// From 1-based symbols as written in files.
    pub fn from_one_based(rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.iter().flatten().any(|&s| s == 0) {
            return Err(shape_error("latin square symbols are 1-based; found 0".into()));
        }
        Self::new(rows.into_iter().map(|r| r.into_iter().map(|s| s - 1).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn defects(&self) -> Vec<Defect> {
        let n = self.n();
        let mut out = Vec::new();
        let range: Vec<String> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.rows[i][j] >= n)
            .map(|(i, j)| format!("({},{})", i + 1, j + 1))
            .collect();
        if !range.is_empty() {
            out.push(Defect { relation: LATIN_RANGE, residual: range.len() as f64, detail: format!("entries {}", range.join(", ")) });
            return out;
        }
        let is_perm = |cells: Vec<usize>| {
            let mut seen = vec![false; n];
            cells.into_iter().all(|s| !std::mem::replace(&mut seen[s], true))
        };
        let bad_rows: Vec<usize> = (0..n).filter(|&i| !is_perm(self.rows[i].clone())).collect();
        let bad_cols: Vec<usize> = (0..n).filter(|&j| !is_perm((0..n).map(|i| self.rows[i][j]).collect())).collect();
        if !bad_rows.is_empty() {
            out.push(Defect { relation: LATIN_ROWS, residual: bad_rows.len() as f64, detail: format!("rows {}", positions(&bad_rows)) });
        }
        if !bad_cols.is_empty() {
            out.push(Defect { relation: LATIN_COLUMNS, residual: bad_cols.len() as f64, detail: format!("columns {}", positions(&bad_cols)) });
        }
        out
    }
}

/// `vectors[row][column]` is a vector in `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumLatinSquare {
    pub vectors: Vec<Vec<Vec<C64>>>,
}

impl QuantumLatinSquare {
    pub fn new(vectors: Vec<Vec<Vec<C64>>>) -> Result<Self> {
        let n = vectors.len();
        if n == 0 || vectors.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(shape_error("quantum latin square must be an n x n array of vectors of length n".into()));
        }
        if vectors.iter().flatten().flatten().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(shape_error("quantum latin square has non-finite entries".into()));
        }
        Ok(QuantumLatinSquare { vectors })
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn defects(&self, tol: f64) -> Result<Vec<Defect>> {
        let n = self.n();
        let mut out = Vec::new();
        let identity = ComplexMatrix::identity(n);
        let mut check = |relation, lines: Vec<Vec<&Vec<C64>>>, what: &str| -> Result<()> {
            let mut bad = Vec::new();
            let mut worst = 0.0f64;
            for (idx, line) in lines.iter().enumerate() {
                let r = gram(line).sub(&identity)?.operator_norm()?;
                if r > tol {
                    bad.push(idx);
                    worst = worst.max(r);
                }
            }
            if !bad.is_empty() {
                out.push(Defect { relation, residual: worst, detail: format!("{what} {}", positions(&bad)) });
            }
            Ok(())
        };
        let rows = (0..n).map(|i| (0..n).map(|j| &self.vectors[i][j]).collect()).collect();
        let cols = (0..n).map(|j| (0..n).map(|i| &self.vectors[i][j]).collect()).collect();
        check(QLS_ROWS, rows, "rows")?;
        check(QLS_COLUMNS, cols, "columns")?;
        Ok(out)
    }
}

/// `n² × n²` matrix with rows and columns indexed by pairs, `(i,j) ↦ i·n + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiunitaryMatrix {
    pub n: usize,
    pub entries: ComplexMatrix,
}

impl BiunitaryMatrix {
    pub fn new(n: usize, entries: ComplexMatrix) -> Result<Self> {
        if n == 0 || entries.rows() != n * n || entries.cols() != n * n {
            return Err(shape_error(format!(
                "biunitary matrix for n={n} must be {0}x{0}, got {1}x{2}",
                n * n,
                entries.rows(),
                entries.cols()
            )));
        }
        Ok(BiunitaryMatrix { n, entries })
    }

    /// `u^{ij}_{kl}`, 0-based.
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.entries.get(i * self.n + j, k * self.n + l)
    }

    /// `v^{ij}_{kl} = u^{kj}_{il}`.
    pub fn block_transpose(&self) -> ComplexMatrix {
        let n = self.n;
        ComplexMatrix::from_fn(n * n, n * n, |r, c| {
            let (i, j, k, l) = (r / n, r % n, c / n, c % n);
            self.entry(k, j, i, l)
        })
    }

    pub fn defects(&self, tol: f64) -> Result<Vec<Defect>> {
        let mut out = Vec::new();
        let r = unitarity_defect(&self.entries)?;
        if r > tol {
            out.push(Defect { relation: BIUNITARY_UNITARY, residual: r, detail: format!("‖UU* − I‖ = {r:.3e}") });
        }
        let r = unitarity_defect(&self.block_transpose())?;
        if r > tol {
            out.push(Defect { relation: BIUNITARY_BLOCK_TRANSPOSE, residual: r, detail: format!("‖VV* − I‖ = {r:.3e}") });
        }
        Ok(out)
    }
}

/// `matrices[j·n + l] = B(j,l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryErrorBasis {
    pub n: usize,
    pub matrices: Vec<ComplexMatrix>,
}

impl UnitaryErrorBasis {
    pub fn new(n: usize, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        if n == 0 || matrices.len() != n * n || matrices.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(shape_error(format!("unitary error basis for n={n} needs {} matrices of size {n}x{n}", n * n)));
        }
        Ok(UnitaryErrorBasis { n, matrices })
    }

    pub fn matrix(&self, j: usize, l: usize) -> &ComplexMatrix {
        &self.matrices[j * self.n + l]
    }

    pub fn defects(&self, tol: f64) -> Result<Vec<Defect>> {
        let n = self.n;
        let mut out = Vec::new();
        let mut bad = Vec::new();
        let mut worst = 0.0f64;
        for (idx, m) in self.matrices.iter().enumerate() {
            let r = unitarity_defect(m)?;
            if r > tol {
                bad.push(format!("B({},{})", idx / n + 1, idx % n + 1));
                worst = worst.max(r);
            }
        }
        if !bad.is_empty() {
            out.push(Defect { relation: UEB_UNITARY, residual: worst, detail: bad.join(", ") });
        }
        let count = self.matrices.len();
        let mut g = ComplexMatrix::zeros(count, count);
        for a in 0..count {
            for b in 0..count {
                let tr = self.matrices[b].adjoint().matmul(&self.matrices[a])?.trace();
                g.set(a, b, tr / n as f64);
            }
        }
        let r = g.subtract_identity()?.operator_norm()?;
        if r > tol {
            out.push(Defect { relation: UEB_ORTHONORMAL, residual: r, detail: format!("‖G − I‖ = {r:.3e} for the trace Gram matrix") });
        }
        Ok(out)
    }
}

/// Any of the supported quantum-information objects.
#[derive(Debug, Clone, PartialEq)]
pub enum QitObject {
    Hadamard(HadamardMatrix),
    Latin(LatinSquare),
    Qls(QuantumLatinSquare),
    Biunitary(BiunitaryMatrix),
    Ueb(UnitaryErrorBasis),
}

impl QitObject {
    /// The `type` tag used in JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            QitObject::Hadamard(_) => "hadamard",
            QitObject::Latin(_) => "latin",
            QitObject::Qls(_) => "qls",
            QitObject::Biunitary(_) => "biunitary",
            QitObject::Ueb(_) => "ueb",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            QitObject::Hadamard(_) => "complex Hadamard matrix",
            QitObject::Latin(_) => "Latin square",
            QitObject::Qls(_) => "quantum Latin square",
            QitObject::Biunitary(_) => "biunitary matrix",
            QitObject::Ueb(_) => "unitary error basis",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            QitObject::Hadamard(h) => h.n(),
            QitObject::Latin(l) => l.n(),
            QitObject::Qls(q) => q.n(),
            QitObject::Biunitary(b) => b.n,
            QitObject::Ueb(u) => u.n,
        }
    }

    pub fn defects(&self, tol: f64) -> Result<Vec<Defect>> {
        match self {
            QitObject::Hadamard(h) => h.defects(tol),
            QitObject::Latin(l) => Ok(l.defects()),
            QitObject::Qls(q) => q.defects(tol),
            QitObject::Biunitary(b) => b.defects(tol),
            QitObject::Ueb(u) => u.defects(tol),
        }
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let defects = self.defects(tol)?;
        if defects.is_empty() {
            Ok(())
        } else {
            Err(SpinError::Validation { defects: defects.iter().map(|d| d.to_string()).collect() })
        }
    }
}
