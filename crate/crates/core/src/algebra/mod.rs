//! Exact scalars and homogeneous polynomial arithmetic.

pub mod monomial;
pub mod poly;
pub mod scalar;

pub use monomial::{binomial, monomial_at, monomial_count, monomial_index, ExponentVector};
pub use poly::{HomogPoly, VarGroup};
pub use scalar::{Fp, Rational, Scalar, F61};

/// A degree-1 form in one group of variables.
///
/// A zero form is only legal when flagged degenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm<S = Rational> {
    coeffs: Vec<S>,
    degenerate: bool,
}

impl<S: Scalar> LinearForm<S> {
    /// Sets the degenerate flag exactly when every coefficient is zero.
    pub fn new(coeffs: Vec<S>) -> Self {
        let degenerate = coeffs.iter().all(Scalar::is_zero);
        LinearForm { coeffs, degenerate }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn evaluate(&self, v: &[S]) -> S {
        self.coeffs
            .iter()
            .zip(v)
            .fold(S::zero(), |acc, (c, x)| acc.add(&c.mul(x)))
    }

    /// Derivative along `w`, i.e. the form evaluated at `w`.
    pub fn derivative_along(&self, w: &[S]) -> S {
        self.evaluate(w)
    }

    pub fn to_poly(&self, group: &str) -> HomogPoly<S> {
        HomogPoly::linear(VarGroup::new(group, self.coeffs.len()), self.coeffs.clone())
            .expect("linear form has at least one variable")
    }
}
