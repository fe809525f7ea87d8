//! Projective points, point configurations, codimension-2 planes and the
//! determinant linear forms that vanish on a point and a plane.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::scalar::as_i64;
use crate::algebra::{binomial, HomogPoly, LinearForm, Rational, Scalar, VarGroup};
use crate::error::{Error, Result};
use crate::linalg::{determinant, rank_exact, ExactMatrix};

pub const DEFAULT_BOUND: u64 = 1000;
pub const SCREEN_ATTEMPTS: usize = 100;

/// Nonzero homogeneous coordinates of a point of `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePoint {
    coords: Vec<Rational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::InvalidPoint("all coordinates are zero".into()));
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        ProjectivePoint::new(coords.iter().map(|&c| Rational::from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Ambient projective dimension `n` (one less than the coordinate count).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidPoint("scaling by zero".into()));
        }
        Ok(ProjectivePoint {
            coords: self.coords.iter().map(|v| v.mul(c)).collect(),
        })
    }

    /// Same projective point (the representatives are proportional).
    pub fn same_point(&self, other: &ProjectivePoint) -> bool {
        self.coords.len() == other.coords.len()
            && rank_exact(
                &ExactMatrix::from_rows(vec![self.coords.clone(), other.coords.clone()])
                    .expect("equal lengths"),
            ) < 2
    }
}

/// An ordered set of `d >= 1` distinct points of `P^n` with chosen
/// representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    n: usize,
    points: Vec<ProjectivePoint>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationFile {
    n: usize,
    points: Vec<Vec<i64>>,
}

impl PointConfiguration {
    pub fn new(n: usize, points: Vec<ProjectivePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Domain(
                "a configuration needs at least one point".into(),
            ));
        }
        if n < 1 {
            return Err(Error::Domain("ambient dimension must be positive".into()));
        }
        if let Some(p) = points.iter().find(|p| p.coords.len() != n + 1) {
            return Err(Error::InvalidPoint(format!(
                "point has {} coordinates, expected {}",
                p.coords.len(),
                n + 1
            )));
        }
        for i in 0..points.len() {
            for j in 0..i {
                if points[i].same_point(&points[j]) {
                    return Err(Error::InvalidPoint(format!(
                        "points {j} and {i} coincide projectively"
                    )));
                }
            }
        }
        Ok(PointConfiguration { n, points })
    }

    pub fn from_i64(n: usize, points: &[Vec<i64>]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| ProjectivePoint::from_i64(p))
            .collect::<Result<Vec<_>>>()?;
        PointConfiguration::new(n, pts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points.
    pub fn d(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &ProjectivePoint {
        &self.points[i]
    }

    /// Replaces the representative of point `i` by `c` times itself.
    pub fn with_rescaled_point(&self, i: usize, c: &Rational) -> Result<Self> {
        let mut points = self.points.clone();
        points[i] = points[i].scaled(c)?;
        Ok(PointConfiguration { n: self.n, points })
    }

    /// Integer coordinates as `i64`, failing on fractions or overflow.
    pub fn integer_coords(&self) -> Result<Vec<Vec<i64>>> {
        self.points
            .iter()
            .map(|p| {
                p.coords
                    .iter()
                    .map(|c| {
                        as_i64(c).ok_or_else(|| {
                            Error::InvalidPoint(format!("coordinate {c} is not a 64-bit integer"))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// `{ "n": int, "points": [[int...]...] }`
    pub fn to_json(&self) -> Result<String> {
        let file = ConfigurationFile {
            n: self.n,
            points: self.integer_coords()?,
        };
        Ok(serde_json::to_string(&file)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: ConfigurationFile = serde_json::from_str(s)?;
        PointConfiguration::from_i64(file.n, &file.points)
    }
}

/// A codimension-2 plane spanned by `n - 1` independent points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneSpan {
    n: usize,
    spanning_points: Vec<ProjectivePoint>,
}

impl PlaneSpan {
    pub fn new(n: usize, spanning_points: Vec<ProjectivePoint>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidPlane(format!(
                "no codimension-2 plane in P^{n}"
            )));
        }
        if spanning_points.len() != n - 1 {
            return Err(Error::InvalidPlane(format!(
                "need {} spanning points, got {}",
                n - 1,
                spanning_points.len()
            )));
        }
        if spanning_points.iter().any(|p| p.coords.len() != n + 1) {
            return Err(Error::InvalidPlane("coordinate count mismatch".into()));
        }
        let m = ExactMatrix::from_rows(spanning_points.iter().map(|p| p.coords.clone()).collect())?;
        if rank_exact(&m) != n - 1 {
            return Err(Error::InvalidPlane("spanning points are dependent".into()));
        }
        Ok(PlaneSpan { n, spanning_points })
    }

    pub fn from_i64(n: usize, points: &[Vec<i64>]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| ProjectivePoint::from_i64(p))
            .collect::<Result<Vec<_>>>()?;
        PlaneSpan::new(n, pts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spanning_points(&self) -> &[ProjectivePoint] {
        &self.spanning_points
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        let mut rows: Vec<Vec<Rational>> = self
            .spanning_points
            .iter()
            .map(|q| q.coords.clone())
            .collect();
        rows.push(p.coords.clone());
        rank_exact(&ExactMatrix::from_rows(rows).expect("equal lengths")) < self.n
    }

    pub fn with_rescaled_point(&self, j: usize, c: &Rational) -> Result<Self> {
        let mut pts = self.spanning_points.clone();
        pts[j] = pts[j].scaled(c)?;
        PlaneSpan::new(self.n, pts)
    }
}

/// The linear form `v -> det[v, P, Q_1, ..., Q_{n-1}]`.
///
/// The coefficient of `x_k` is the cofactor of row `k` in the first column.
/// The form is zero (and flagged degenerate) exactly when `P` lies on the
/// plane.
pub fn linear_form_for(p: &ProjectivePoint, plane: &PlaneSpan) -> Result<LinearForm> {
    let n = plane.n;
    if p.coords.len() != n + 1 {
        return Err(Error::InvalidPoint(format!(
            "point has {} coordinates, plane lives in P^{n}",
            p.coords.len()
        )));
    }
    let columns: Vec<&[Rational]> = std::iter::once(p.coords())
        .chain(plane.spanning_points.iter().map(|q| q.coords()))
        .collect();
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let minor: Vec<Vec<Rational>> = (0..=n)
            .filter(|&r| r != k)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        let det = determinant(&ExactMatrix::from_rows(minor)?)?;
        coeffs.push(if k % 2 == 0 { det } else { det.neg() });
    }
    Ok(LinearForm::new(coeffs))
}

/// `det[x, P, y1, ..., y_{n-1}]` as a form of degree one in each of the
/// groups `x, y1, ..., y_{n-1}` (each with `n + 1` variables).
pub fn plane_pencil_form(p: &ProjectivePoint, n: usize) -> Result<HomogPoly<Rational>> {
    if p.coords.len() != n + 1 || n < 2 {
        return Err(Error::InvalidPoint(format!(
            "point with {} coordinates in P^{n}",
            p.coords.len()
        )));
    }
    let groups = pencil_groups(n);
    let degrees = vec![1; n];
    let mut coeffs = Vec::with_capacity((n + 1usize).pow(n as u32));
    // flat index order: x index most significant, then y1, ...
    let mut idx = vec![0usize; n];
    loop {
        let distinct = (0..n).all(|a| (0..a).all(|b| idx[a] != idx[b]));
        if distinct {
            let unit = |k: usize| -> Vec<Rational> {
                (0..=n)
                    .map(|r| Rational::from_i64(i64::from(r == k)))
                    .collect()
            };
            let mut cols = vec![unit(idx[0]), p.coords.clone()];
            cols.extend(idx[1..].iter().map(|&k| unit(k)));
            let rows: Vec<Vec<Rational>> = (0..=n)
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect();
            coeffs.push(determinant(&ExactMatrix::from_rows(rows)?)?);
        } else {
            coeffs.push(<Rational as Scalar>::zero());
        }
        // odometer, last group fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return HomogPoly::from_coeffs(groups, degrees, coeffs);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] <= n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Variable groups `x, y1, ..., y_{n-1}`, each with `n + 1` variables.
pub fn pencil_groups(n: usize) -> Vec<VarGroup> {
    std::iter::once(VarGroup::new("x", n + 1))
        .chain((1..n).map(|j| VarGroup::new(format!("y{j}"), n + 1)))
        .collect()
}

/// The points `(1, i, i^2, ..., i^n)` for `i = 1..=d`.
pub fn moment_points(d: usize, n: usize) -> Result<PointConfiguration> {
    if d < 1 || n < 2 {
        return Err(Error::Domain(format!(
            "moment points need d >= 1 and n >= 2 (got d={d}, n={n})"
        )));
    }
    let points = (1..=d)
        .map(|i| {
            let coords = (0..=n)
                .map(|k| Rational::from_bigint(&num_bigint::BigInt::from(i).pow(k as u32)))
                .collect();
            ProjectivePoint::new(coords)
        })
        .collect::<Result<Vec<_>>>()?;
    PointConfiguration::new(n, points)
}

/// Distinct points whose degree-`d` vanishing space has the expected
/// dimension `C(d+n, n) - d`.
pub fn passes_genericity_screen(config: &PointConfiguration) -> bool {
    let d = config.d();
    let n = config.n();
    crate::spans::vanishing_dimension(config, d) == binomial(d + n, n) - d
}

/// Integer vectors uniformly from `[-bound, bound]^(n+1)`, nonzero.
fn sample_point<R: Rng>(rng: &mut R, n: usize, bound: u64) -> Option<ProjectivePoint> {
    let b = bound.min(i64::MAX as u64) as i64;
    let coords: Vec<i64> = (0..=n).map(|_| rng.gen_range(-b..=b)).collect();
    ProjectivePoint::from_i64(&coords).ok()
}

fn sample_configuration<R: Rng>(
    rng: &mut R,
    d: usize,
    n: usize,
    bound: u64,
) -> Option<PointConfiguration> {
    let pts = (0..d)
        .map(|_| sample_point(rng, n, bound))
        .collect::<Option<Vec<_>>>()?;
    PointConfiguration::new(n, pts).ok()
}

/// Seeded random configuration that passes the genericity screen.
pub fn random_points(d: usize, n: usize, seed: u64, bound: u64) -> Result<PointConfiguration> {
    if d < 1 || n < 2 {
        return Err(Error::Domain(format!(
            "random points need d >= 1 and n >= 2 (got d={d}, n={n})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SCREEN_ATTEMPTS {
        if let Some(config) = sample_configuration(&mut rng, d, n, bound) {
            if passes_genericity_screen(&config) {
                return Ok(config);
            }
        }
    }
    Err(Error::GenericityFailure {
        d,
        n,
        bound,
        attempts: SCREEN_ATTEMPTS,
    })
}

/// Random codimension-2 plane in `P^n`, resampled until its spanning points
/// are independent.
pub fn random_plane<R: Rng>(rng: &mut R, n: usize, bound: u64) -> Result<PlaneSpan> {
    for _ in 0..SCREEN_ATTEMPTS {
        let Some(config) = sample_configuration(rng, n - 1, n, bound) else {
            continue;
        };
        if let Ok(plane) = PlaneSpan::new(n, config.points) {
            return Ok(plane);
        }
    }
    Err(Error::InvalidPlane(format!(
        "no independent spanning set found in {SCREEN_ATTEMPTS} draws (bound={bound})"
    )))
}
