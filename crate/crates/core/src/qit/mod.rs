//! Quantum-information objects as biunitary elements.

pub mod certificate;
pub mod convert;
pub mod families;
pub mod json;
pub mod objects;

pub use certificate::{is_ab_biunitary_ueb, is_biunitary, BiunitaryCertificate, CertificateKind, DEFAULT_TOLERANCE};
pub use convert::*;
pub use json::{ElementJson, TermJson};
pub use objects::{BiunitaryMatrix, Defect, HadamardMatrix, LatinSquare, QitObject, QuantumLatinSquare, UnitaryErrorBasis};

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::certificate::*;
    use super::families::*;
    use super::objects::*;
    use super::*;
    use crate::basis::SpinBasisIndex;
    use crate::color::SpinColor;
    use crate::element::{SpinElement, C64};
    use crate::numerics::ComplexMatrix;
    use crate::tangle::rotate_pow;

    const TOL: f64 = DEFAULT_TOLERANCE;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn unit_is_unitary_but_not_biunitary() {
        let u = SpinElement::unit(2, SpinColor::plus(2));
        let cert = is_biunitary(&u, 1, TOL).unwrap();
        assert!(!cert.verdict);
        assert!(cert.residual(U_U_STAR).unwrap() < 1e-12);
        assert!(cert.failed().contains(&R_R_STAR));
    }

    #[test]
    fn ell_out_of_range() {
        let u = SpinElement::unit(2, SpinColor::plus(2));
        assert!(is_biunitary(&u, 0, TOL).is_err());
        assert!(is_biunitary(&u, 2, TOL).is_err());
    }

    #[test]
    fn fourier_is_biunitary() {
        for n in 2..=6 {
            let u = from_hadamard(&fourier_hadamard(n), TOL).unwrap();
            assert!(is_biunitary(&u, 1, TOL).unwrap().verdict, "n={n}");
            assert!(is_biunitary(&rotate_pow(&u, 2).unwrap(), 1, TOL).unwrap().verdict);
        }
    }

    #[test]
    fn hadamard_two_coefficients() {
        let h = HadamardMatrix::new(ComplexMatrix::from_rows(&[vec![c(1.0), c(1.0)], vec![c(1.0), c(-1.0)]]).unwrap()).unwrap();
        let u = from_hadamard(&h, TOL).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let e = |i, j| u.coeff(&SpinBasisIndex::pairs(vec![i], vec![j]));
        assert!((e(0, 0) - c(s)).norm() < 1e-15);
        assert!((e(0, 1) - c(s)).norm() < 1e-15);
        assert!((e(1, 0) - c(s)).norm() < 1e-15);
        assert!((e(1, 1) - c(-s)).norm() < 1e-15);
        let back = to_hadamard(&u, TOL).unwrap();
        assert!(back.entries.sub(&h.entries).unwrap().max_abs_entry() < 1e-12);
    }

    #[test]
    fn all_ones_rejected() {
        let j = HadamardMatrix::new(ComplexMatrix::from_fn(3, 3, |_, _| c(1.0))).unwrap();
        let d = j.defects(TOL).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].relation, HADAMARD_ORTHOGONALITY);
        assert!(from_hadamard(&j, TOL).is_err());
    }

    #[test]
    fn phase_perturbation_breaks_only_unitarity() {
        let mut h = fourier_hadamard(3);
        h.entries.set(1, 1, h.entries.get(1, 1) * C64::from_polar(1.0, 0.4));
        let d = h.defects(TOL).unwrap();
        assert_eq!(d.iter().map(|d| d.relation).collect::<Vec<_>>(), vec![HADAMARD_ORTHOGONALITY]);
        let cert = is_biunitary(&hadamard_element(&h).unwrap(), 1, TOL).unwrap();
        assert!(cert.failed().contains(&U_U_STAR));
        assert!(!cert.failed().contains(&R_R_STAR));
    }

    #[test]
    fn cyclic_latin_to_qls() {
        let q = latin_to_qls(&cyclic_latin_square(2)).unwrap();
        assert_eq!(q.vectors[0][0], vec![c(1.0), c(0.0)]);
        assert_eq!(q.vectors[0][1], vec![c(0.0), c(1.0)]);
        assert_eq!(q.vectors[1][0], vec![c(0.0), c(1.0)]);
        assert_eq!(q.vectors[1][1], vec![c(1.0), c(0.0)]);
    }

    #[test]
    fn latin_squares_give_biunitaries() {
        for l in [cyclic_latin_square(2), cyclic_latin_square(4), non_group_latin_square()] {
            let u = from_qls(&latin_to_qls(&l).unwrap(), TOL).unwrap();
            assert!(is_biunitary(&u, 1, TOL).unwrap().verdict);
        }
    }

    #[test]
    fn group_table_element_placement() {
        // u = Σ e^{g+h}_g(h] for Z_3.
        let u = from_qls(&latin_to_qls(&cyclic_latin_square(3)).unwrap(), TOL).unwrap();
        assert_eq!(u.nnz(), 9);
        for g in 0..3 {
            for h in 0..3 {
                assert_eq!(u.coeff(&SpinBasisIndex::new(None, vec![(g + h) % 3], vec![g], Some(h))), c(1.0));
            }
        }
    }

    #[test]
    fn twisted_qls_is_accepted_and_round_trips() {
        for n in 2..=4 {
            let q = fourier_twisted_qls(n);
            assert!(q.defects(TOL).unwrap().is_empty());
            let u = from_qls(&q, TOL).unwrap();
            assert!(is_biunitary(&u, 1, TOL).unwrap().verdict);
            let back = to_qls(&u, TOL).unwrap();
            for (a, b) in back.vectors.iter().flatten().flatten().zip(q.vectors.iter().flatten().flatten()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn duplicated_column_rejected() {
        let mut q = latin_to_qls(&cyclic_latin_square(3)).unwrap();
        for row in &mut q.vectors {
            row[2] = row[1].clone();
        }
        let names: Vec<_> = q.defects(TOL).unwrap().iter().map(|d| d.relation).collect();
        assert_eq!(names, vec![QLS_ROWS]);
        assert!(from_qls(&q, TOL).is_err());
    }

    #[test]
    fn tensor_products_are_biunitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=3 {
            let (a, b) = (random_unitary(&mut rng, n), random_unitary(&mut rng, n));
            let m = tensor_product_biunitary(&a, &b);
            assert!(m.defects(TOL).unwrap().is_empty());
            let u = from_biunitary_matrix(&m, TOL).unwrap();
            assert!(is_biunitary(&u, 2, TOL).unwrap().verdict);
            let back = to_biunitary_matrix(&u, TOL).unwrap();
            assert!(back.entries.sub(&m.entries).unwrap().max_abs_entry() < 1e-12);
        }
    }

    #[test]
    fn generic_unitary_fails_block_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = BiunitaryMatrix::new(2, random_unitary(&mut rng, 4)).unwrap();
        let names: Vec<_> = m.defects(TOL).unwrap().iter().map(|d| d.relation).collect();
        assert_eq!(names, vec![BIUNITARY_BLOCK_TRANSPOSE]);
        let cert = is_biunitary(&biunitary_element(&m).unwrap(), 2, TOL).unwrap();
        assert!(cert.residual(U_U_STAR).unwrap() < 1e-12);
        assert!(cert.failed().contains(&R_R_STAR));
    }

    #[test]
    fn block_transpose_placement() {
        // The coefficient of e^{ij}_{lk} is u^{ij}_{kl}.
        let m = BiunitaryMatrix::new(2, ComplexMatrix::from_fn(4, 4, |r, c| C64::new((r * 4 + c) as f64, 0.0))).unwrap();
        let u = biunitary_element(&m).unwrap();
        assert_eq!(u.coeff(&SpinBasisIndex::pairs(vec![0, 1], vec![1, 0])), m.entry(0, 1, 0, 1));
        assert_eq!(u.coeff(&SpinBasisIndex::pairs(vec![1, 0], vec![0, 1])), m.entry(1, 0, 1, 0));
        assert_eq!(u.coeff(&SpinBasisIndex::pairs(vec![0, 0], vec![1, 0])), m.entry(0, 0, 0, 1));
    }

    #[test]
    fn shift_clock_ueb_accepted() {
        for n in 2..=4 {
            let e = shift_clock_ueb(n);
            assert!(e.defects(TOL).unwrap().is_empty(), "n={n}");
            let u = from_ueb(&e, TOL).unwrap();
            assert!(is_ab_biunitary_ueb(&u, TOL).unwrap().verdict);
            let back = to_ueb(&u, TOL).unwrap();
            for (a, b) in back.matrices.iter().zip(&e.matrices) {
                assert!(a.sub(b).unwrap().max_abs_entry() < 1e-12);
            }
        }
    }

    #[test]
    fn repeated_unitary_is_not_a_ueb() {
        let x = shift_clock_ueb(2).matrices[1].clone();
        let e = UnitaryErrorBasis::new(2, vec![x; 4]).unwrap();
        let names: Vec<_> = e.defects(TOL).unwrap().iter().map(|d| d.relation).collect();
        assert_eq!(names, vec![UEB_ORTHONORMAL]);
        let cert = is_ab_biunitary_ueb(&ueb_element(&e).unwrap(), TOL).unwrap();
        assert!(!cert.verdict);
        // Partial swap unitarity is the trace orthonormality; rotation unitarity is unitarity of each B.
        assert!(cert.failed().contains(&A_STAR_A));
        assert!(cert.residual(ROT_ROT_STAR).unwrap() < 1e-12);
    }

    #[test]
    fn scaled_matrix_breaks_ueb_unitarity() {
        let mut e = shift_clock_ueb(3);
        e.matrices[4] = e.matrices[4].scale(c(2.0));
        let names: Vec<_> = e.defects(TOL).unwrap().iter().map(|d| d.relation).collect();
        assert!(names.contains(&UEB_UNITARY));
        let cert = is_ab_biunitary_ueb(&ueb_element(&e).unwrap(), TOL).unwrap();
        assert!(cert.failed().contains(&ROT_ROT_STAR));
    }

    #[test]
    fn fourier_at_four_boxes_reports_residuals() {
        // A Hadamard read as a (4,+) element via its Kronecker square.
        let f = fourier_matrix(2).scale(c(1.0 / 2f64.sqrt()));
        let u = biunitary_element(&tensor_product_biunitary(&f, &f)).unwrap();
        let cert = is_ab_biunitary_ueb(&u, TOL).unwrap();
        assert_eq!(cert.residuals.len(), 4);
        assert!(cert.residuals.iter().all(|r| r.value.is_finite()));
    }

    #[test]
    fn latin_defects() {
        let l = LatinSquare::new(vec![vec![0, 1], vec![0, 1]]).unwrap();
        let names: Vec<_> = l.defects().iter().map(|d| d.relation).collect();
        assert_eq!(names, vec![LATIN_COLUMNS]);
        let l = LatinSquare::new(vec![vec![0, 2], vec![1, 0]]).unwrap();
        assert_eq!(l.defects()[0].relation, LATIN_RANGE);
    }

    #[test]
    fn json_round_trip() {
        let objects = vec![
            QitObject::Hadamard(fourier_hadamard(3)),
            QitObject::Latin(non_group_latin_square()),
            QitObject::Qls(fourier_twisted_qls(2)),
            QitObject::Biunitary(tensor_product_biunitary(&fourier_matrix(2), &ComplexMatrix::identity(2))),
            QitObject::Ueb(shift_clock_ueb(2)),
        ];
        for obj in objects {
            let text = obj.to_json_value().to_string();
            assert_eq!(QitObject::from_json_str(&text).unwrap(), obj);
        }
    }

    #[test]
    fn json_errors_are_located() {
        let err = QitObject::from_json_str("{\"type\":\"hadamard\",\n\"n\":2,\"entries\":[[[1,0]]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(QitObject::from_json_str("{\"type\":\"latin\",\"n\":3,\"rows\":[[1,2],[2,1]]}").is_err());
    }

    #[test]
    fn element_json_round_trip() {
        let u = from_hadamard(&fourier_hadamard(3), TOL).unwrap();
        let j = ElementJson::from_element(&u, Some("hadamard"));
        let text = serde_json::to_string(&j).unwrap();
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_element().unwrap(), u);
        let obj = QitObject::from_element("hadamard", &u, TOL).unwrap();
        assert!(obj.element_unchecked().unwrap().approx_eq(&u, 1e-12));
    }
}
