//! Matrix permanents: permutation expansion and Ryser's formula.

use serde::{Deserialize, Serialize};

use super::matrix::ExactMatrix;
use crate::algebra::Scalar;
use crate::error::{Error, Result};

pub const NAIVE_LIMIT: usize = 10;
pub const RYSER_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PermanentMethod {
    Naive,
    Ryser,
}

/// `sum over permutations s of prod_i M[i][s(i)]`.
pub fn permanent<S: Scalar>(m: &ExactMatrix<S>, method: PermanentMethod) -> Result<S> {
    if !m.is_square() {
        return Err(Error::Structure(format!(
            "permanent of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let (limit, name) = match method {
        PermanentMethod::Naive => (NAIVE_LIMIT, "naive"),
        PermanentMethod::Ryser => (RYSER_LIMIT, "ryser"),
    };
    if n > limit {
        return Err(Error::Size {
            method: name,
            size: n,
            limit,
        });
    }
    Ok(match method {
        PermanentMethod::Naive => naive(m),
        PermanentMethod::Ryser => ryser(m),
    })
}

fn naive<S: Scalar>(m: &ExactMatrix<S>) -> S {
    fn expand<S: Scalar>(m: &ExactMatrix<S>, row: usize, used: u32, partial: &S) -> S {
        if row == m.rows() {
            return partial.clone();
        }
        let mut acc = S::zero();
        for j in 0..m.cols() {
            if used & (1 << j) != 0 || m.get(row, j).is_zero() {
                continue;
            }
            let next = partial.mul(m.get(row, j));
            acc = acc.add(&expand(m, row + 1, used | (1 << j), &next));
        }
        acc
    }
    expand(m, 0, 0, &S::one())
}

/// Inclusion-exclusion over column subsets visited in Gray-code order.
fn ryser<S: Scalar>(m: &ExactMatrix<S>) -> S {
    let n = m.rows();
    if n == 0 {
        return S::one();
    }
    let mut row_sums = vec![S::zero(); n];
    let mut total = S::zero();
    let mut gray: u32 = 0;
    for k in 1u32..(1 << n) {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray & (1 << j) != 0;
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s = if adding {
                s.add(m.get(i, j))
            } else {
                s.sub(m.get(i, j))
            };
        }
        let prod = row_sums.iter().fold(S::one(), |acc, v| acc.mul(v));
        // (-1)^(n - |S|)
        if (n as u32 - gray.count_ones()).is_multiple_of(2) {
            total = total.add(&prod);
        } else {
            total = total.sub(&prod);
        }
    }
    total
}
