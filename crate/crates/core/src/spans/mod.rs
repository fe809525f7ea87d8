//! Cone polynomials, the span `V(n, d)` and the checks built on it.

pub mod cone;
pub mod functional;
pub mod mmatrix;
pub mod report;
pub mod witness;

pub use cone::{cone_polynomial, sample_cone, ConeSample};
pub use functional::{apply_directions, apply_point_functional, pairing_matrix, vanishes_on};
pub use mmatrix::{build_m, coefficient_spanning_set};
pub use report::{
    coefficient_span_dimension, cone_span_dimension_sampled, cone_span_dimension_sampled_with,
    m_matrix_dimension, restriction_rank_check, FieldMode, SamplingOptions, SpanMethod, SpanReport,
    DEFAULT_SATURATION,
};
pub use witness::{lemma2_witness, WitnessMethod};

use crate::algebra::monomial::exponents;
use crate::algebra::{binomial, Rational, Scalar};
use crate::geometry::PointConfiguration;
use crate::linalg::{rank_exact, ExactMatrix};

/// Dimension of the degree-`d` forms vanishing on every point of `S`:
/// `C(d+n, n)` minus the rank of the evaluation matrix.
pub fn vanishing_dimension(s: &PointConfiguration, d: usize) -> usize {
    binomial(d + s.n(), s.n()) - rank_exact(&evaluation_matrix(s, d))
}

/// Row `i` holds every degree-`d` monomial evaluated at the `i`-th point.
pub fn evaluation_matrix(s: &PointConfiguration, d: usize) -> ExactMatrix<Rational> {
    let exps = exponents(s.n() + 1, d);
    let rows = s
        .points()
        .iter()
        .map(|p| {
            exps.iter()
                .map(|e| {
                    e.iter()
                        .zip(p.coords())
                        .fold(Rational::one(), |acc, (&a, c)| {
                            acc.mul(&Scalar::pow(c, a as u32))
                        })
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(rows).expect("rows share the monomial count")
}

/// `C(d+n, n) - d`, the vanishing-space dimension for generic points.
pub fn expected_vanishing_dimension(n: usize, d: usize) -> usize {
    binomial(d + n, n) - d
}

/// The conjectured `dim V(2, d)`: full for even `d` and `d = 1`, one short
/// for `d = 3 mod 4`, two short for `d = 1 mod 4` with `d >= 5`.
pub fn conjectured_dimension(d: usize) -> usize {
    let full = expected_vanishing_dimension(2, d);
    match d % 4 {
        _ if d.is_multiple_of(2) || d == 1 => full,
        3 => full - 1,
        _ => full - 2,
    }
}

/// Best proven upper bound on `dim V(n, d)`.
pub fn proven_upper_bound(n: usize, d: usize) -> usize {
    let full = expected_vanishing_dimension(n, d);
    if d.is_multiple_of(2) || d < 3 {
        full
    } else if n == 2 && d % 4 == 1 {
        full - 2
    } else {
        full - 1
    }
}
