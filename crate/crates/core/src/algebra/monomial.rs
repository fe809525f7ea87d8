//! Deterministic indexing of exponent vectors of a fixed degree.
//!
//! Exponent vectors of degree `d` in `m` variables are enumerated in
//! descending lexicographic order, the first entry most significant, so
//! `(d, 0, ..., 0)` has index 0 and `(0, ..., 0, d)` is last.

use crate::error::{Error, Result};

/// `C(n, k)` as `usize`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Number of monomials of degree `d` in `m` variables, `C(d+m-1, m-1)`.
pub fn monomial_count(m: usize, d: usize) -> usize {
    if m == 0 {
        return usize::from(d == 0);
    }
    binomial(d + m - 1, m - 1)
}

/// An exponent vector with its total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    exponents: Vec<usize>,
    degree: usize,
}

impl ExponentVector {
    pub fn new(exponents: Vec<usize>) -> Self {
        let degree = exponents.iter().sum();
        ExponentVector { exponents, degree }
    }

    /// Checks the declared degree against the entries.
    pub fn with_degree(exponents: Vec<usize>, degree: usize) -> Result<Self> {
        let v = ExponentVector::new(exponents);
        if v.degree != degree {
            return Err(Error::InvalidExponent {
                vars: v.exponents.len(),
                exponents: v.exponents,
                degree,
            });
        }
        Ok(v)
    }

    /// Builds from signed entries, rejecting negatives.
    pub fn from_signed(exponents: &[i64], degree: usize) -> Result<Self> {
        let err = || Error::InvalidExponent {
            exponents: exponents.iter().map(|&e| e.max(0) as usize).collect(),
            vars: exponents.len(),
            degree,
        };
        let mut out = Vec::with_capacity(exponents.len());
        for &e in exponents {
            if e < 0 {
                return Err(err());
            }
            out.push(e as usize);
        }
        ExponentVector::with_degree(out, degree).map_err(|_| err())
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vars(&self) -> usize {
        self.exponents.len()
    }
}

/// Position of `e` in the descending-lex enumeration of degree-`d`
/// exponent vectors in `m` variables.
pub fn monomial_index(e: &[usize], m: usize, d: usize) -> Result<usize> {
    if e.len() != m || e.iter().sum::<usize>() != d || m == 0 {
        return Err(Error::InvalidExponent {
            exponents: e.to_vec(),
            vars: m,
            degree: d,
        });
    }
    Ok(index_unchecked(e, d))
}

/// Same as [`monomial_index`] without validation.
pub(crate) fn index_unchecked(e: &[usize], d: usize) -> usize {
    let mut idx = 0;
    let mut rest = d;
    let m = e.len();
    for (pos, &a) in e.iter().enumerate().take(m.saturating_sub(1)) {
        let tail = m - pos - 1;
        // vectors whose entry here exceeds `a` come first
        for b in (a + 1)..=rest {
            idx += monomial_count(tail, rest - b);
        }
        rest -= a;
    }
    idx
}

/// Inverse of [`monomial_index`].
pub fn monomial_at(index: usize, m: usize, d: usize) -> Result<ExponentVector> {
    let count = monomial_count(m, d);
    if m == 0 || index >= count {
        return Err(Error::IndexOutOfRange { index, count });
    }
    let mut e = Vec::with_capacity(m);
    let mut rest = d;
    let mut idx = index;
    for pos in 0..m - 1 {
        let tail = m - pos - 1;
        let mut a = rest;
        loop {
            let block = monomial_count(tail, rest - a);
            if idx < block {
                break;
            }
            idx -= block;
            a -= 1;
        }
        e.push(a);
        rest -= a;
    }
    e.push(rest);
    Ok(ExponentVector {
        exponents: e,
        degree: d,
    })
}

/// All exponent vectors of degree `d` in `m` variables, in index order.
pub fn exponents(m: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(monomial_count(m, d));
    if m == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0; m];
    fill(&mut cur, 0, d, &mut out);
    out
}

fn fill(cur: &mut [usize], pos: usize, rest: usize, out: &mut Vec<Vec<usize>>) {
    if pos + 1 == cur.len() {
        cur[pos] = rest;
        out.push(cur.to_vec());
        return;
    }
    for a in (0..=rest).rev() {
        cur[pos] = a;
        fill(cur, pos + 1, rest - a, out);
    }
}

/// Monomial tables for one group of `m` variables at one degree.
#[derive(Clone, Debug)]
pub(crate) struct MonomialBasis {
    pub vars: usize,
    pub degree: usize,
    pub exps: Vec<Vec<usize>>,
}

impl MonomialBasis {
    pub fn new(vars: usize, degree: usize) -> Self {
        MonomialBasis {
            vars,
            degree,
            exps: exponents(vars, degree),
        }
    }

    /// `table[j][i]` = index of `exps_self[i] + other.exps[j]` at degree
    /// `self.degree + other.degree`.
    pub fn product_table(&self, other: &MonomialBasis) -> Vec<Vec<usize>> {
        let d = self.degree + other.degree;
        let mut sum = vec![0; self.vars];
        other
            .exps
            .iter()
            .map(|b| {
                self.exps
                    .iter()
                    .map(|a| {
                        for k in 0..self.vars {
                            sum[k] = a[k] + b[k];
                        }
                        index_unchecked(&sum, d)
                    })
                    .collect()
            })
            .collect()
    }

    /// For each monomial and each variable `k` with positive exponent,
    /// `(k, exponent, index of the monomial divided by x_k)`.
    pub fn derivative_table(&self) -> Vec<Vec<(usize, usize, usize)>> {
        assert!(self.degree > 0);
        let mut tmp = vec![0; self.vars];
        self.exps
            .iter()
            .map(|a| {
                (0..self.vars)
                    .filter(|&k| a[k] > 0)
                    .map(|k| {
                        tmp.copy_from_slice(a);
                        tmp[k] -= 1;
                        (k, a[k], index_unchecked(&tmp, self.degree - 1))
                    })
                    .collect()
            })
            .collect()
    }
}
