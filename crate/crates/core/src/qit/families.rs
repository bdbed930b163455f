//! Standard example families.

use std::f64::consts::PI;

use rand::Rng;

use crate::element::C64;
use crate::numerics::ComplexMatrix;

use super::objects::{BiunitaryMatrix, HadamardMatrix, LatinSquare, QuantumLatinSquare, UnitaryErrorBasis};

fn root_of_unity(n: usize, power: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * (power % n) as f64 / n as f64)
}

/// `F_ij = ω^{ij}`, `ω = e^{2πi/n}`.
pub fn fourier_matrix(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| root_of_unity(n, i * j))
}

pub fn fourier_hadamard(n: usize) -> HadamardMatrix {
    HadamardMatrix::new(fourier_matrix(n)).expect("square")
}

/// Addition table of `Z_n`.
pub fn cyclic_latin_square(n: usize) -> LatinSquare {
    LatinSquare::new((0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()).expect("square")
}

/// A 5×5 Latin square that is not equivalent to any group table.
pub fn non_group_latin_square() -> LatinSquare {
    LatinSquare::from_one_based(vec![
        vec![1, 2, 3, 4, 5],
        vec![2, 4, 1, 5, 3],
        vec![3, 5, 4, 2, 1],
        vec![4, 1, 5, 3, 2],
        vec![5, 3, 2, 1, 4],
    ])
    .expect("square")
}

/// `Q[r][c] = F e_{r+c} / √n`: a quantum Latin square none of whose vectors
/// is a standard basis vector (for `n ≥ 2`).
pub fn fourier_twisted_qls(n: usize) -> QuantumLatinSquare {
    let scale = 1.0 / (n as f64).sqrt();
    let vectors = (0..n)
        .map(|r| (0..n).map(|c| (0..n).map(|s| root_of_unity(n, s * ((r + c) % n)) * scale).collect()).collect())
        .collect();
    QuantumLatinSquare::new(vectors).expect("square")
}

/// Kronecker product `A ⊗ B`, so `u^{ij}_{kl} = A_ik B_jl`.
pub fn tensor_product_biunitary(a: &ComplexMatrix, b: &ComplexMatrix) -> BiunitaryMatrix {
    let n = a.rows();
    let entries = ComplexMatrix::from_fn(n * n, n * n, |r, c| a.get(r / n, c / n) * b.get(r % n, c % n));
    BiunitaryMatrix::new(n, entries).expect("square blocks")
}

/// `B(j,l) = Z^j X^l` with the clock `Z = diag(ω^k)` and the cyclic shift `X e_k = e_{k+1}`.
pub fn shift_clock_ueb(n: usize) -> UnitaryErrorBasis {
    let matrices = (0..n * n)
        .map(|idx| {
            let (j, l) = (idx / n, idx % n);
            // (Z^j X^l)_{ik} = ω^{ij} [i = k + l]
            ComplexMatrix::from_fn(n, n, |i, k| {
                if i == (k + l) % n {
                    root_of_unity(n, i * j)
                } else {
                    C64::new(0.0, 0.0)
                }
            })
        })
        .collect();
    UnitaryErrorBasis::new(n, matrices).expect("n² square matrices")
}

/// Unitary from the QR factorization of a matrix with uniform random entries.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let m = nalgebra::DMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    ComplexMatrix::from_dmatrix(m.qr().q())
}
