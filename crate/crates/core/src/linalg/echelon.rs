//! Incremental row-echelon builders for rank accumulation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::rank::check_prime;
use crate::algebra::scalar::{clear_denominators, inv_mod, mul_mod, rational_mod, sub_mod};
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Exact echelon basis over the rationals, rows kept as primitive integer
/// vectors.
#[derive(Clone, Debug)]
pub struct IntegerEchelon {
    cols: usize,
    basis: Vec<(usize, Vec<BigInt>)>,
}

impl IntegerEchelon {
    pub fn new(cols: usize) -> Self {
        IntegerEchelon {
            cols,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: &[Rational]) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        self.insert_integer(clear_denominators(row))
    }

    pub fn insert_integer(&mut self, mut row: Vec<BigInt>) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        // each basis row is zero at every earlier pivot, so one pass suffices
        for (pivot, b) in &self.basis {
            let f = &row[*pivot];
            if f.is_zero() {
                continue;
            }
            let g = f.gcd(&b[*pivot]);
            let mul_row = &b[*pivot] / &g;
            let mul_basis = f / &g;
            for (r, v) in row.iter_mut().zip(b) {
                *r = &*r * &mul_row - &mul_basis * v;
            }
            make_primitive(&mut row);
        }
        match row.iter().position(|v| !v.is_zero()) {
            Some(pivot) => {
                make_primitive(&mut row);
                self.basis.push((pivot, row));
                true
            }
            None => false,
        }
    }
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return;
    }
    let lead_negative = row
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative());
    let g = if lead_negative { -g } else { g };
    if g != BigInt::from(1) {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Echelon basis over `F_p` with unit pivots.
#[derive(Clone, Debug)]
pub struct ModularEchelon {
    p: u64,
    cols: usize,
    basis: Vec<(usize, Vec<u64>)>,
}

impl ModularEchelon {
    pub fn new(cols: usize, p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(ModularEchelon {
            p,
            cols,
            basis: Vec::new(),
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Adds a rational row reduced mod `p`; returns whether the rank grew.
    pub fn insert(&mut self, row: &[Rational]) -> Result<bool> {
        assert_eq!(row.len(), self.cols, "row length");
        let p = self.p;
        let mut reduced = Vec::with_capacity(row.len());
        for v in row {
            reduced.push(rational_mod(v, p).ok_or_else(|| Error::BadPrime {
                p,
                reason: format!("divides the denominator of {v}"),
            })?);
        }
        Ok(self.insert_residues(reduced))
    }

    pub fn insert_residues(&mut self, mut row: Vec<u64>) -> bool {
        let p = self.p;
        for (pivot, b) in &self.basis {
            let f = row[*pivot];
            if f == 0 {
                continue;
            }
            for (r, v) in row.iter_mut().zip(b) {
                *r = sub_mod(*r, mul_mod(f, *v, p), p);
            }
        }
        match row.iter().position(|&v| v != 0) {
            Some(pivot) => {
                let inv = inv_mod(row[pivot], p).expect("nonzero pivot");
                for v in row.iter_mut() {
                    *v = mul_mod(*v, inv, p);
                }
                self.basis.push((pivot, row));
                true
            }
            None => false,
        }
    }
}
