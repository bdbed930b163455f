//! Seeded randomized relation suite for the basic algebra and the generating
//! tangles. Backs the `selftest` command and the acceptance gate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::color::SpinColor;
use crate::element::{SpinElement, C64};
use crate::error::Result;
use crate::parallel::Execution;
use crate::tangle::{
    cond_left, cond_right, incl_left, incl_right, mult, partial_swap_a, rotate, rotate_inverse, rotate_pow,
};

/// Dense element with real and imaginary parts uniform in `[-1, 1)`.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, n: usize, color: SpinColor) -> SpinElement {
    let values: Vec<C64> = (0..color.dimension(n))
        .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    SpinElement::from_dense(n, color, &values).expect("length matches dimension")
}

/// Every color with width at most `max_width`, plus shading first.
pub fn colors_up_to(max_width: usize) -> Vec<SpinColor> {
    (0..=max_width).flat_map(|k| [SpinColor::plus(k), SpinColor::minus(k)]).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub name: &'static str,
    pub evaluations: usize,
    pub max_residual: f64,
    /// Color at which the largest residual occurred.
    pub worst_color: Option<SpinColor>,
}

impl RelationCheck {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual <= tol
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub max_width: usize,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self, tol: f64) -> bool {
        self.checks.iter().all(|c| c.passed(tol))
    }

    pub fn check(&self, name: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Relation names in report order.
pub const RELATIONS: &[&str] = &[
    "associativity",
    "unit laws",
    "star involution",
    "star anti-multiplicativity",
    "trace of adjoint",
    "trace symmetry",
    "inner product via trace",
    "left/right picture trace",
    "cond_right after incl_right",
    "cond_left after incl_left",
    "right adjunction",
    "left adjunction",
    "incl_right multiplicative",
    "incl_left multiplicative",
    "rotation inverse",
    "rotation full turn",
    "rotation isometry",
    "partial swap involution",
];

#[derive(Debug, Clone)]
pub struct RelationSuite {
    pub n: usize,
    pub seed: u64,
    /// Random samples per color and relation.
    pub samples: usize,
    pub max_width: usize,
}

impl RelationSuite {
    pub fn new(n: usize, seed: u64) -> Self {
        RelationSuite { n, seed, samples: 100, max_width: 5 }
    }

    pub fn run(&self, exec: Execution) -> Result<RelationReport> {
        let colors = colors_up_to(self.max_width);
        let per_color = exec.map_slice(&colors, |&c| self.run_color(c));
        let mut checks: Vec<RelationCheck> = RELATIONS
            .iter()
            .map(|&name| RelationCheck { name, evaluations: 0, max_residual: 0.0, worst_color: None })
            .collect();
        for (color, result) in colors.iter().zip(per_color) {
            for (slot, (evals, worst)) in checks.iter_mut().zip(result?) {
                slot.evaluations += evals;
                if evals > 0 && (slot.worst_color.is_none() || worst > slot.max_residual) {
                    slot.max_residual = worst;
                    slot.worst_color = Some(*color);
                }
            }
        }
        Ok(RelationReport { n: self.n, seed: self.seed, samples: self.samples, max_width: self.max_width, checks })
    }

    // Per relation: (evaluations, max residual), in RELATIONS order.
    fn run_color(&self, color: SpinColor) -> Result<Vec<(usize, f64)>> {
        let n = self.n;
        let delta = (n as f64).sqrt();
        let tag = (color.width as u64) << 1 | color.shading.is_minus() as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ tag);
        let mut acc = vec![(0usize, 0.0f64); RELATIONS.len()];
        let mut record = |name: &str, r: f64| {
            let i = RELATIONS.iter().position(|&x| x == name).expect("known relation");
            acc[i].0 += 1;
            acc[i].1 = acc[i].1.max(r);
        };
        let unit = SpinElement::unit(n, color);
        let k = color.width;
        for _ in 0..self.samples {
            let x = random_element(&mut rng, n, color);
            let y = random_element(&mut rng, n, color);
            let z = random_element(&mut rng, n, color);
            let xy = mult(&x, &y)?;

            record("associativity", mult(&xy, &z)?.max_abs_diff(&mult(&x, &mult(&y, &z)?)?));
            record("unit laws", mult(&unit, &x)?.max_abs_diff(&x).max(mult(&x, &unit)?.max_abs_diff(&x)));
            record("star involution", x.star().star().max_abs_diff(&x));
            record("star anti-multiplicativity", xy.star().max_abs_diff(&mult(&y.star(), &x.star())?));
            record("trace of adjoint", (x.star().normalized_trace() - x.normalized_trace().conj()).norm());
            record("trace symmetry", (xy.normalized_trace() - mult(&y, &x)?.normalized_trace()).norm());
            record("inner product via trace", (x.inner_product(&y)? - mult(&y.star(), &x)?.normalized_trace()).norm());

            let expected = x.normalized_trace() * delta.powi(k as i32);
            let (pr, pl) = (x.picture_trace_right(), x.picture_trace_left());
            record("left/right picture trace", (pr - pl).norm().max((pr - expected).norm()));

            record("cond_right after incl_right", cond_right(&incl_right(&x)?)?.max_abs_diff(&x.scale_real(delta)));
            record("cond_left after incl_left", cond_left(&incl_left(&x)?)?.max_abs_diff(&x.scale_real(delta)));

            let (ir_x, ir_y) = (incl_right(&x)?, incl_right(&y)?);
            record("incl_right multiplicative", incl_right(&xy)?.max_abs_diff(&mult(&ir_x, &ir_y)?));
            let (il_x, il_y) = (incl_left(&x)?, incl_left(&y)?);
            record("incl_left multiplicative", incl_left(&xy)?.max_abs_diff(&mult(&il_x, &il_y)?));

            if k >= 1 {
                // x plays the larger element w; a lives one width below.
                let a = random_element(&mut rng, n, SpinColor::new(k - 1, color.shading));
                let lhs = mult(&a, &cond_right(&x)?)?.picture_trace_right();
                let rhs = mult(&incl_right(&a)?, &x)?.picture_trace_right();
                record("right adjunction", (lhs - rhs).norm());

                let b = random_element(&mut rng, n, SpinColor::new(k - 1, -color.shading));
                let lhs = mult(&b, &cond_left(&x)?)?.picture_trace_left();
                let rhs = mult(&incl_left(&b)?, &x)?.picture_trace_left();
                record("left adjunction", (lhs - rhs).norm());

                record(
                    "rotation inverse",
                    rotate_inverse(&rotate(&x)?)?.max_abs_diff(&x).max(rotate(&rotate_inverse(&x)?)?.max_abs_diff(&x)),
                );
                record("rotation full turn", rotate_pow(&x, 2 * k as i64)?.max_abs_diff(&x));
                let (rx, ry) = (rotate(&x)?, rotate(&y)?);
                record(
                    "rotation isometry",
                    (rx.picture_inner_product(&ry)? - x.picture_inner_product(&y)?).norm(),
                );
            }
            if color == SpinColor::plus(4) {
                record("partial swap involution", partial_swap_a(&partial_swap_a(&x)?)?.max_abs_diff(&x));
            }
        }
        Ok(acc)
    }
}
