//! Span-dimension computations and their reports.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cone::sample_cone;
use super::functional::apply_point_functional;
use super::mmatrix::{build_m, coefficient_spanning_set};
use super::witness::{lemma2_witness, WitnessMethod};
use super::{conjectured_dimension, expected_vanishing_dimension, proven_upper_bound};
use crate::algebra::{binomial, HomogPoly, Rational, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{passes_genericity_screen, PointConfiguration, DEFAULT_BOUND};
use crate::linalg::{rank_exact, rank_mod_p, ExactMatrix, IntegerEchelon, ModularEchelon};

pub const DEFAULT_SATURATION: usize = 15;
/// Extra samples allowed beyond the monomial count.
pub const SAMPLE_SLACK: usize = 25;
/// Cone polynomials checked by [`restriction_rank_check`].
pub const RESTRICTION_SAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanMethod {
    Sampling,
    MMatrix,
    CoefficientExtraction,
}

/// How ranks are computed: exactly over the rationals, or modulo two primes
/// (a lower bound that is correct with high probability).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldMode {
    Exact,
    Modular([u64; 2]),
}

/// Computed `dim V(n, d)`.
///
/// `certified` is set when the rank was computed exactly and the method is
/// known to give the full span (`M(d)` or coefficient extraction for
/// `n = 2`), or when the computed lower bound meets the best proven upper
/// bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanReport {
    pub n: usize,
    pub d: usize,
    pub method: SpanMethod,
    pub dimension: usize,
    pub certified: bool,
    pub expected: Option<usize>,
    pub samples_used: usize,
    /// Accumulated rank after each consumed sample (sampling only).
    #[serde(skip)]
    pub rank_trace: Vec<usize>,
}

impl SpanReport {
    fn new(
        s: &PointConfiguration,
        method: SpanMethod,
        dimension: usize,
        exact: bool,
        samples_used: usize,
    ) -> Result<Self> {
        let (n, d) = (s.n(), s.d());
        let full = expected_vanishing_dimension(n, d);
        if dimension > full {
            return Err(Error::InvariantViolation(format!(
                "span dimension {dimension} exceeds the vanishing-space dimension {full} \
                 (n={n}, d={d})"
            )));
        }
        let spans_everything = match method {
            SpanMethod::MMatrix => true,
            SpanMethod::CoefficientExtraction => n == 2,
            SpanMethod::Sampling => false,
        };
        let certified = exact && (spans_everything || dimension == proven_upper_bound(n, d));
        Ok(SpanReport {
            n,
            d,
            method,
            dimension,
            certified,
            expected: (n == 2).then(|| conjectured_dimension(d)),
            samples_used,
            rank_trace: Vec::new(),
        })
    }

    pub fn upper_bound(&self) -> usize {
        proven_upper_bound(self.n, self.d)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SamplingOptions {
    pub seed: u64,
    pub saturation: usize,
    pub bound: u64,
    pub field: FieldMode,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions {
            seed: 0,
            saturation: DEFAULT_SATURATION,
            bound: DEFAULT_BOUND,
            field: FieldMode::Exact,
        }
    }
}

/// Generator for the `k`-th sample: the seed's ChaCha stream `k`.
pub(crate) fn sample_rng(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

enum Accumulator {
    Exact(IntegerEchelon),
    Modular(ModularEchelon, ModularEchelon),
}

impl Accumulator {
    fn new(cols: usize, field: FieldMode) -> Result<Self> {
        Ok(match field {
            FieldMode::Exact => Accumulator::Exact(IntegerEchelon::new(cols)),
            FieldMode::Modular([p, q]) => {
                Accumulator::Modular(ModularEchelon::new(cols, p)?, ModularEchelon::new(cols, q)?)
            }
        })
    }

    fn insert(&mut self, row: &[Rational]) -> Result<()> {
        match self {
            Accumulator::Exact(e) => {
                e.insert(row);
            }
            Accumulator::Modular(a, b) => {
                a.insert(row)?;
                b.insert(row)?;
            }
        }
        Ok(())
    }

    /// Each modular rank is a lower bound for the rational rank.
    fn rank(&self) -> usize {
        match self {
            Accumulator::Exact(e) => e.rank(),
            Accumulator::Modular(a, b) => a.rank().max(b.rank()),
        }
    }
}

/// Dimension of the span of randomly sampled cone polynomials, exact.
pub fn cone_span_dimension_sampled(
    s: &PointConfiguration,
    d: usize,
    seed: u64,
    saturation: usize,
) -> Result<SpanReport> {
    cone_span_dimension_sampled_with(
        s,
        d,
        &SamplingOptions {
            seed,
            saturation,
            ..SamplingOptions::default()
        },
    )
}

/// Samples cone polynomials through random planes and accumulates their
/// rank until `saturation` consecutive samples add nothing, or
/// `C(d+n, n) + 25` samples have been used.
pub fn cone_span_dimension_sampled_with(
    s: &PointConfiguration,
    d: usize,
    opts: &SamplingOptions,
) -> Result<SpanReport> {
    if d != s.d() {
        return Err(Error::Degree(format!(
            "cone polynomials for {} points have degree {}, not {d}",
            s.d(),
            s.d()
        )));
    }
    if !passes_genericity_screen(s) {
        return Err(Error::GenericityFailure {
            d,
            n: s.n(),
            bound: opts.bound,
            attempts: 1,
        });
    }
    let cols = binomial(d + s.n(), s.n());
    let max_samples = cols + SAMPLE_SLACK;
    let cap = expected_vanishing_dimension(s.n(), d);
    let mut acc = Accumulator::new(cols, opts.field)?;
    let mut trace = Vec::new();
    let mut idle = 0;
    let batch = rayon::current_num_threads().max(1);

    let mut next = 0;
    'outer: while next < max_samples {
        let hi = (next + batch).min(max_samples);
        let polys: Vec<HomogPoly<Rational>> = (next..hi)
            .into_par_iter()
            .map(|k| {
                let mut rng = sample_rng(opts.seed, k as u64);
                sample_cone(s, &mut rng, opts.bound).map(|c| c.poly)
            })
            .collect::<Result<_>>()?;
        for poly in polys {
            let before = acc.rank();
            acc.insert(poly.coeffs())?;
            let after = acc.rank();
            if after > cap {
                return Err(Error::InvariantViolation(format!(
                    "sampled rank {after} exceeds C(d+n,n)-d = {cap}"
                )));
            }
            trace.push(after);
            next += 1;
            if after > before {
                idle = 0;
            } else {
                idle += 1;
                if idle >= opts.saturation {
                    break 'outer;
                }
            }
        }
    }
    let exact = opts.field == FieldMode::Exact;
    let mut report = SpanReport::new(s, SpanMethod::Sampling, acc.rank(), exact, next)?;
    report.rank_trace = trace;
    Ok(report)
}

fn matrix_rank(m: &ExactMatrix<Rational>, field: FieldMode) -> Result<usize> {
    match field {
        FieldMode::Exact => Ok(rank_exact(m)),
        FieldMode::Modular([p, q]) => Ok(rank_mod_p(m, p)?.max(rank_mod_p(m, q)?)),
    }
}

/// `dim V(2, d)` as the rank of `M(d)`.
pub fn m_matrix_dimension(s: &PointConfiguration, field: FieldMode) -> Result<SpanReport> {
    let m = build_m(s)?;
    let r = matrix_rank(&m, field)?;
    SpanReport::new(s, SpanMethod::MMatrix, r, field == FieldMode::Exact, 0)
}

/// Rank of the coefficient spanning set. For `n > 2` this is only known to
/// bound the sampled dimension from above.
pub fn coefficient_span_dimension(s: &PointConfiguration, field: FieldMode) -> Result<SpanReport> {
    let set = coefficient_spanning_set(s, s.d())?;
    let rows: Vec<Vec<Rational>> = set
        .into_iter()
        .filter(|f| !f.is_zero())
        .map(HomogPoly::into_coeffs)
        .collect();
    let used = rows.len();
    let cols = binomial(s.d() + s.n(), s.n());
    let m = if rows.is_empty() {
        ExactMatrix::zeros(0, cols)
    } else {
        ExactMatrix::from_rows(rows)?
    };
    let r = matrix_rank(&m, field)?;
    SpanReport::new(
        s,
        SpanMethod::CoefficientExtraction,
        r,
        field == FieldMode::Exact,
        used,
    )
}

/// For odd `d >= 3`: confirms the point functional kills a batch of sampled
/// cone polynomials and does not kill the moment-curve witness, then returns
/// the resulting bound `C(d+n, n) - d - 1`.
pub fn restriction_rank_check(s: &PointConfiguration, d: usize) -> Result<usize> {
    if d != s.d() {
        return Err(Error::Degree(format!("{} points but d={d}", s.d())));
    }
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "restriction needs odd d >= 3, got {d}"
        )));
    }
    for k in 0..RESTRICTION_SAMPLES {
        let mut rng = sample_rng(0, k as u64);
        let cone = sample_cone(s, &mut rng, DEFAULT_BOUND)?;
        let v = apply_point_functional(s, &cone.poly)?;
        if !v.is_zero() {
            return Err(Error::InvariantViolation(format!(
                "point functional is {v} on a cone polynomial with odd d={d}"
            )));
        }
    }
    let witness = lemma2_witness(d, s.n(), WitnessMethod::Permanent)?;
    if witness.is_zero() {
        return Err(Error::InvariantViolation(format!(
            "witness value vanishes for d={d}"
        )));
    }
    Ok(expected_vanishing_dimension(s.n(), d) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::moment_points;

    #[test]
    fn report_json_keys() {
        let s = moment_points(2, 2).unwrap();
        let r = m_matrix_dimension(&s, FieldMode::Exact).unwrap();
        assert_eq!(
            r.to_json().unwrap(),
            r#"{"n":2,"d":2,"method":"m_matrix","dimension":4,"certified":true,"expected":4,"samples_used":0}"#
        );
    }

    #[test]
    fn restriction_domain() {
        let s = moment_points(4, 2).unwrap();
        assert!(matches!(
            restriction_rank_check(&s, 4),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn small_sampled_dimensions() {
        let s = moment_points(3, 2).unwrap();
        let r = cone_span_dimension_sampled(&s, 3, 0, DEFAULT_SATURATION).unwrap();
        assert_eq!(r.dimension, 6);
        assert!(r.certified);
        assert!(r.rank_trace.windows(2).all(|w| w[0] <= w[1]));
    }
}
