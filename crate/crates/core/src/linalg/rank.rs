//! Rank and determinant kernels.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::matrix::ExactMatrix;
use crate::algebra::scalar::{
    clear_denominators, inv_mod, is_prime_u64, mul_mod, rational_mod, sub_mod,
};
use crate::algebra::{Rational, Scalar};
use crate::error::{Error, Result};

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled to integers by the LCM of its denominators.
/// Pivots are the first nonzero entry in the current column.
pub fn rank_exact(m: &ExactMatrix<Rational>) -> usize {
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| clear_denominators(m.row(i)))
        .collect();
    bareiss_rank(rows, m.cols())
}

pub(crate) fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let n_rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                // Sylvester's identity makes this division exact
                row[j] = v / &prev;
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of the entry-wise reduction modulo the prime `p`.
///
/// Never exceeds [`rank_exact`]; equal unless `p` divides every maximal
/// nonzero minor.
pub fn rank_mod_p(m: &ExactMatrix<Rational>, p: u64) -> Result<usize> {
    check_prime(p)?;
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for v in m.row(i) {
            row.push(rational_mod(v, p).ok_or_else(|| Error::BadPrime {
                p,
                reason: format!("divides the denominator of entry {v}"),
            })?);
        }
        rows.push(row);
    }
    Ok(modular_rank(rows, m.cols(), p))
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if !(3..1 << 63).contains(&p) || !is_prime_u64(p) {
        return Err(Error::BadPrime {
            p,
            reason: "not an odd prime below 2^63".into(),
        });
    }
    Ok(())
}

fn modular_rank(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let n_rows = a.len();
    let mut r = 0;
    for c in 0..cols {
        if r == n_rows {
            break;
        }
        let Some(piv) = (r..n_rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p).expect("pivot is nonzero");
        for j in c..cols {
            a[r][j] = mul_mod(a[r][j], inv, p);
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                row[j] = sub_mod(row[j], mul_mod(f, pivot_row[j], p), p);
            }
        }
        r += 1;
    }
    r
}

/// Rank over any scalar field by Gaussian elimination.
pub fn rank_field<S: Scalar>(m: &ExactMatrix<S>) -> usize {
    let mut a = m.to_rows();
    let cols = m.cols();
    let n_rows = a.len();
    let mut r = 0;
    for c in 0..cols {
        if r == n_rows {
            break;
        }
        let Some(piv) = (r..n_rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].mul(&inv);
            for j in c..cols {
                row[j] = row[j].sub(&f.mul(&pivot_row[j]));
            }
        }
        r += 1;
    }
    r
}

/// Determinant by Gaussian elimination.
pub fn determinant<S: Scalar>(m: &ExactMatrix<S>) -> Result<S> {
    if !m.is_square() {
        return Err(Error::Structure(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut det = S::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(S::zero());
        };
        if piv != c {
            a.swap(piv, c);
            det = det.neg();
        }
        det = det.mul(&a[c][c]);
        let inv = a[c][c].inv().expect("pivot is nonzero");
        let (head, tail) = a.split_at_mut(c + 1);
        let pivot_row = &head[c];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].mul(&inv);
            for j in c..n {
                row[j] = row[j].sub(&f.mul(&pivot_row[j]));
            }
        }
    }
    Ok(det)
}

/// Uniformly random prime with exactly `bits` bits (`3 <= bits <= 62`).
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R, bits: u32) -> u64 {
    assert!((3..=62).contains(&bits));
    let lo = 1u64 << (bits - 1);
    loop {
        let candidate = rng.gen_range(lo..lo << 1) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}
