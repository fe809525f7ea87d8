use crate::algebra::{HomogPoly, LinearForm, Rational, Scalar};
use crate::error::{Error, Result};
use crate::geometry::PointConfiguration;
use crate::linalg::ExactMatrix;

/// `(P_1 . grad) ... (P_d . grad) f` for a degree-`d` form `f` in the `x`
/// variables, `d = |S|`.
pub fn apply_point_functional(s: &PointConfiguration, f: &HomogPoly<Rational>) -> Result<Rational> {
    if f.groups().len() != 1 || f.groups()[0].vars != s.n() + 1 {
        return Err(Error::Structure(format!(
            "expected a single group of {} variables",
            s.n() + 1
        )));
    }
    if f.degrees()[0] != s.d() {
        return Err(Error::Degree(format!(
            "form has degree {}, configuration has {} points",
            f.degrees()[0],
            s.d()
        )));
    }
    let directions: Vec<&[Rational]> = s.points().iter().map(|p| p.coords()).collect();
    apply_directions(&directions, f)
}

/// Differentiates a single-group form along each direction in turn; the
/// number of directions must equal the degree. Repeated directions are
/// allowed here, unlike in a configuration.
pub fn apply_directions(directions: &[&[Rational]], f: &HomogPoly<Rational>) -> Result<Rational> {
    if f.groups().len() != 1 {
        return Err(Error::Structure("expected a single variable group".into()));
    }
    if f.degrees()[0] != directions.len() {
        return Err(Error::Degree(format!(
            "form has degree {}, got {} directions",
            f.degrees()[0],
            directions.len()
        )));
    }
    let group = f.groups()[0].name.clone();
    let mut g = f.clone();
    for w in directions {
        g = g.directional_derivative(w, &group)?;
    }
    Ok(g.coeffs()[0].clone())
}

/// `A[i][j] = (P_i . grad) L_j`.
pub fn pairing_matrix(
    s: &PointConfiguration,
    forms: &[LinearForm],
) -> Result<ExactMatrix<Rational>> {
    let rows = s
        .points()
        .iter()
        .map(|p| {
            forms
                .iter()
                .map(|l| l.derivative_along(p.coords()))
                .collect()
        })
        .collect();
    let m = ExactMatrix::from_rows(rows)?;
    if !m.is_square() {
        return Err(Error::Structure(format!(
            "{} points but {} forms",
            s.d(),
            forms.len()
        )));
    }
    Ok(m)
}

/// Whether `f` vanishes at every point of `S`.
pub fn vanishes_on(s: &PointConfiguration, f: &HomogPoly<Rational>) -> Result<bool> {
    for p in s.points() {
        if !f.evaluate_at(p.coords())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
