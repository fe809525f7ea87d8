//! The coefficient matrix `M(d)` and the coefficient spanning set.
//!
//! With the plane points kept symbolic, `prod_i det[x, P_i, y1, ..., y_{n-1}]`
//! has degree `d` in `x` and in each `y` group. Every coefficient of a
//! `y`-monomial is a form in `x` lying in `V(n, d)`; for `n = 2` these
//! coefficients span `V(2, d)` and, arranged by (x-monomial, y-monomial),
//! form `M(d)`.

use crate::algebra::{HomogPoly, Rational, VarGroup};
use crate::error::{Error, Result};
use crate::geometry::{plane_pencil_form, PointConfiguration};
use crate::linalg::ExactMatrix;

/// `prod_i det[x, P_i, y1, ..., y_{n-1}]`.
pub fn pencil_product(s: &PointConfiguration) -> Result<HomogPoly<Rational>> {
    let mut acc: Option<HomogPoly<Rational>> = None;
    for p in s.points() {
        let form = plane_pencil_form(p, s.n())?;
        acc = Some(match acc {
            None => form,
            Some(a) => a.multiply(&form)?,
        });
    }
    Ok(acc.expect("configuration is nonempty"))
}

/// `M(d)`: row = x-monomial, column = y-monomial, both in monomial-index
/// order. Only defined for `n = 2`.
pub fn build_m(s: &PointConfiguration) -> Result<ExactMatrix<Rational>> {
    if s.n() != 2 {
        return Err(Error::UnsupportedDimension(s.n()));
    }
    let prod = pencil_product(s)?;
    let sizes = prod.group_sizes();
    ExactMatrix::from_entries(sizes[0], sizes[1], prod.into_coeffs())
}

/// Every coefficient (as a form of degree `d` in `x`) of the pencil product
/// with respect to the plane-point variables, in plane-monomial order.
/// Identically zero coefficients are included.
pub fn coefficient_spanning_set(
    s: &PointConfiguration,
    d: usize,
) -> Result<Vec<HomogPoly<Rational>>> {
    if d != s.d() {
        return Err(Error::Degree(format!(
            "degree {d} requested for {} points",
            s.d()
        )));
    }
    let prod = pencil_product(s)?;
    let sizes = prod.group_sizes();
    let n_x = sizes[0];
    let rest: usize = sizes[1..].iter().product();
    let coeffs = prod.coeffs();
    (0..rest)
        .map(|r| {
            let slice = (0..n_x).map(|i| coeffs[i * rest + r].clone()).collect();
            HomogPoly::from_coeffs(vec![VarGroup::new("x", s.n() + 1)], vec![d], slice)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::moment_points;
    use crate::linalg::rank_exact;

    #[test]
    fn m1_at_the_first_moment_point() {
        let s = moment_points(1, 2).unwrap();
        let m = build_m(&s).unwrap();
        // det[x, (1,1,1), y] = x1(y3 - y2) - x2(y3 - y1) + x3(y2 - y1)
        let expected =
            ExactMatrix::from_i64_rows(&[vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]).unwrap();
        assert_eq!(m, expected);
        assert!(m.is_skew_symmetric());
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn rejects_other_dimensions() {
        let s = moment_points(2, 3).unwrap();
        assert!(matches!(build_m(&s), Err(Error::UnsupportedDimension(3))));
    }

    #[test]
    fn spanning_set_shape() {
        let s = moment_points(2, 3).unwrap();
        let set = coefficient_spanning_set(&s, 2).unwrap();
        // two plane-point groups of degree 2 in 4 variables
        assert_eq!(set.len(), 100);
        assert!(set.iter().any(|f| !f.is_zero()));
        assert!(coefficient_spanning_set(&s, 3).is_err());
    }
}
