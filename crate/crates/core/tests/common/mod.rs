//! Independent oracles shared by the integration tests. Nothing here calls
//! into the kernels it is used to check.

#![allow(dead_code)]

use std::collections::BTreeMap;

use conespan::algebra::{HomogPoly, Rational, VarGroup};
use num_traits::{One, Zero};
use rand::Rng;

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Every exponent vector of degree `d` in `m` variables, sorted in
/// descending lexicographic order.
pub fn brute_force_exponents(m: usize, d: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let total = (d + 1).pow(m as u32);
    for code in 0..total {
        let mut c = code;
        let mut e = Vec::with_capacity(m);
        for _ in 0..m {
            e.push(c % (d + 1));
            c /= d + 1;
        }
        e.reverse();
        if e.iter().sum::<usize>() == d {
            all.push(e);
        }
    }
    all.sort();
    all.reverse();
    all
}

/// Sparse polynomial as a map from exponent vector to coefficient.
pub type TermMap = BTreeMap<Vec<usize>, Rational>;

pub fn linear_terms(coeffs: &[Rational]) -> TermMap {
    let m = coeffs.len();
    let mut t = TermMap::new();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let mut e = vec![0; m];
            e[k] = 1;
            t.insert(e, c.clone());
        }
    }
    t
}

/// Term-by-term product.
pub fn naive_multiply(a: &TermMap, b: &TermMap) -> TermMap {
    let mut out = TermMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(e).or_insert_with(Rational::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Nonzero terms of a single-group polynomial as a map.
pub fn to_term_map(p: &HomogPoly<Rational>) -> TermMap {
    p.terms()
        .into_iter()
        .map(|(mut exps, c)| (exps.remove(0), c))
        .collect()
}

pub fn from_term_map(vars: usize, degree: usize, t: &TermMap) -> HomogPoly<Rational> {
    let terms: Vec<(Vec<Vec<usize>>, Rational)> = t
        .iter()
        .map(|(e, c)| (vec![e.clone()], c.clone()))
        .collect();
    HomogPoly::from_terms(vec![VarGroup::new("x", vars)], vec![degree], &terms).unwrap()
}

/// Row echelon form over the rationals with plain division.
pub fn naive_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i == rank || rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in 0..cols {
                let sub = &f * &rows[rank][j];
                rows[i][j] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

/// `det[a, b, c]` with `a, b, c` as columns, by the rule of Sarrus.
pub fn det3(a: &[Rational], b: &[Rational], c: &[Rational]) -> Rational {
    &a[0] * &b[1] * &c[2] + &b[0] * &c[1] * &a[2] + &c[0] * &a[1] * &b[2]
        - &c[0] * &b[1] * &a[2]
        - &b[0] * &a[1] * &c[2]
        - &a[0] * &c[1] * &b[2]
}

/// Permanent by summing over every permutation.
pub fn permanent_by_enumeration(m: &[Vec<Rational>]) -> Rational {
    permutations(m.len())
        .iter()
        .map(|s| {
            s.iter()
                .enumerate()
                .fold(Rational::one(), |acc, (i, &j)| acc * &m[i][j])
        })
        .sum()
}

pub fn random_matrix<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    bound: i64,
) -> Vec<Vec<Rational>> {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| q(rng.gen_range(-bound..=bound)))
                .collect()
        })
        .collect()
}

pub fn random_skew<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = q(rng.gen_range(-bound..=bound));
            m[j][i] = -v.clone();
            m[i][j] = v;
        }
    }
    m
}

/// Determinant by the Leibniz formula, `columns[j]` being column `j`.
pub fn det_by_permutations(columns: &[&[Rational]]) -> Rational {
    let n = columns.len();
    permutations(n)
        .iter()
        .map(|s| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| s[i] > s[j])
                .count();
            let prod = (0..n).fold(Rational::one(), |acc, j| acc * &columns[j][s[j]]);
            if inversions % 2 == 0 {
                prod
            } else {
                -prod
            }
        })
        .sum()
}
