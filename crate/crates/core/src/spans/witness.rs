//! Nonvanishing witness for the point functional on the moment curve.
//!
//! For `P_i = (1, i, i^2, ..., i^n)` and
//! `f0(v) = prod_i det[phi(v), phi(P_i), phi(P_{i+1})]` (indices mod `d`,
//! `phi` = first three coordinates), `f0` vanishes on the points while the
//! functional `(P_1 . grad) ... (P_d . grad)` does not kill it. The value is
//! computed three ways.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{HomogPoly, LinearForm, Rational, Scalar};
use crate::error::{Error, Result};
use crate::geometry::moment_points;
use crate::linalg::{permanent, ExactMatrix, PermanentMethod};

use super::functional::apply_point_functional;

pub const CLOSED_FORM_LIMIT: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessMethod {
    /// Expand `f0` and differentiate.
    Symbolic,
    /// Permanent of `B[i][j] = det[phi(P_i), phi(P_j), phi(P_{j+1})]`.
    Permanent,
    /// Direct enumeration of the Vandermonde-product permutation sum.
    ClosedForm,
}

impl WitnessMethod {
    pub const ALL: [WitnessMethod; 3] = [
        WitnessMethod::Symbolic,
        WitnessMethod::Permanent,
        WitnessMethod::ClosedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WitnessMethod::Symbolic => "symbolic",
            WitnessMethod::Permanent => "permanent",
            WitnessMethod::ClosedForm => "closed_form",
        }
    }
}

pub fn lemma2_witness(d: usize, n: usize, method: WitnessMethod) -> Result<Rational> {
    if d < 3 {
        return Err(Error::Domain(format!("witness needs d >= 3, got {d}")));
    }
    if n < 2 {
        return Err(Error::Domain(format!("witness needs n >= 2, got {n}")));
    }
    match method {
        WitnessMethod::Symbolic => symbolic(d, n),
        WitnessMethod::Permanent => permanent(&witness_matrix(d), PermanentMethod::Ryser),
        WitnessMethod::ClosedForm => {
            if d > CLOSED_FORM_LIMIT {
                return Err(Error::Size {
                    method: "closed_form",
                    size: d,
                    limit: CLOSED_FORM_LIMIT,
                });
            }
            Ok(Rational::from_bigint(&closed_form(d)))
        }
    }
}

/// `phi(P_i) = (1, i, i^2)` for `i = 1..=d`.
fn projected(d: usize) -> Vec<[Rational; 3]> {
    (1..=d as i64)
        .map(|i| {
            [
                Rational::from_i64(1),
                Rational::from_i64(i),
                Rational::from_i64(i * i),
            ]
        })
        .collect()
}

fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

fn dot(a: &[Rational; 3], b: &[Rational; 3]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// Coefficients of `det[phi(v), phi(P_j), phi(P_{j+1})]` on `x_1, x_2, x_3`.
fn factor_normals(d: usize) -> Vec<[Rational; 3]> {
    let pts = projected(d);
    (0..d).map(|j| cross(&pts[j], &pts[(j + 1) % d])).collect()
}

/// `B[i][j] = det[phi(P_i), phi(P_j), phi(P_{j+1})]`.
pub fn witness_matrix(d: usize) -> ExactMatrix<Rational> {
    let pts = projected(d);
    let normals = factor_normals(d);
    let rows = pts
        .iter()
        .map(|p| normals.iter().map(|nrm| dot(p, nrm)).collect())
        .collect();
    ExactMatrix::from_rows(rows).expect("square")
}

/// The polynomial `f0` in the `n + 1` variables `x`.
pub fn witness_polynomial(d: usize, n: usize) -> Result<HomogPoly<Rational>> {
    let mut acc: Option<HomogPoly<Rational>> = None;
    for nrm in factor_normals(d) {
        let mut coeffs = nrm.to_vec();
        coeffs.resize(n + 1, Rational::zero());
        let f = LinearForm::new(coeffs).to_poly("x");
        acc = Some(match acc {
            None => f,
            Some(a) => a.multiply(&f)?,
        });
    }
    Ok(acc.expect("d >= 3"))
}

fn symbolic(d: usize, n: usize) -> Result<Rational> {
    let s = moment_points(d, n)?;
    apply_point_functional(&s, &witness_polynomial(d, n)?)
}

/// `sum over s of (d-1)(d-s(d))(s(d)-1) prod_{i<d} (s(i)-i)(s(i)-i-1)`,
/// enumerating permutations depth-first and pruning zero factors.
fn closed_form(d: usize) -> BigInt {
    fn go(d: i64, i: i64, used: u32, partial: i128, acc: &mut BigInt) {
        if i == d {
            let last = (1..=d)
                .find(|k| used & (1 << k) == 0)
                .expect("one value left");
            let term = (d - 1) * (d - last) * (last - 1);
            *acc += BigInt::from(partial) * BigInt::from(term);
            return;
        }
        for k in 1..=d {
            if used & (1 << k) != 0 {
                continue;
            }
            let f = (k - i) * (k - i - 1);
            if f == 0 {
                continue;
            }
            go(d, i + 1, used | (1 << k), partial * f as i128, acc);
        }
    }
    let mut acc = BigInt::from(0);
    go(d as i64, 1, 0, 1, &mut acc);
    acc
}
