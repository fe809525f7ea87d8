//! Dense homogeneous polynomials over one or several disjoint variable groups.

use std::fmt;

use super::monomial::{exponents, monomial_count, MonomialBasis};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A named block of variables, e.g. `x` with 3 variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarGroup {
    pub name: String,
    pub vars: usize,
}

impl VarGroup {
    pub fn new(name: impl Into<String>, vars: usize) -> Self {
        VarGroup {
            name: name.into(),
            vars,
        }
    }
}

/// Homogeneous in each variable group separately.
///
/// Coefficients are stored densely, indexed by the cartesian product of the
/// per-group monomial indices with the first group most significant.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogPoly<S> {
    groups: Vec<VarGroup>,
    degrees: Vec<usize>,
    coeffs: Vec<S>,
}

impl<S: Scalar> HomogPoly<S> {
    pub fn zero(groups: Vec<VarGroup>, degrees: Vec<usize>) -> Result<Self> {
        check_shape(&groups, &degrees)?;
        let len = flat_len(&groups, &degrees);
        Ok(HomogPoly {
            groups,
            degrees,
            coeffs: vec![S::zero(); len],
        })
    }

    /// The constant `c` over the given groups, all degrees zero.
    pub fn constant(groups: Vec<VarGroup>, c: S) -> Result<Self> {
        let degrees = vec![0; groups.len()];
        let mut p = HomogPoly::<S>::zero(groups, degrees)?;
        p.coeffs[0] = c;
        Ok(p)
    }

    pub fn from_coeffs(groups: Vec<VarGroup>, degrees: Vec<usize>, coeffs: Vec<S>) -> Result<Self> {
        check_shape(&groups, &degrees)?;
        let len = flat_len(&groups, &degrees);
        if coeffs.len() != len {
            return Err(Error::Structure(format!(
                "expected {len} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(HomogPoly {
            groups,
            degrees,
            coeffs,
        })
    }

    /// A linear form in a single group.
    pub fn linear(group: VarGroup, coeffs: Vec<S>) -> Result<Self> {
        HomogPoly::from_coeffs(vec![group], vec![1], coeffs)
    }

    /// Builds from `(per-group exponent vectors, coefficient)` terms; repeated
    /// monomials accumulate.
    pub fn from_terms(
        groups: Vec<VarGroup>,
        degrees: Vec<usize>,
        terms: &[(Vec<Vec<usize>>, S)],
    ) -> Result<Self> {
        let mut p = HomogPoly::<S>::zero(groups, degrees)?;
        for (exps, c) in terms {
            let i = p.flat_index(exps)?;
            p.coeffs[i] = p.coeffs[i].add(c);
        }
        Ok(p)
    }

    pub fn groups(&self) -> &[VarGroup] {
        &self.groups
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Monomial count of each group at its degree.
    pub fn group_sizes(&self) -> Vec<usize> {
        self.groups
            .iter()
            .zip(&self.degrees)
            .map(|(g, &d)| monomial_count(g.vars, d))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn total_degree(&self) -> usize {
        self.degrees.iter().sum()
    }

    fn group_position(&self, name: &str) -> Result<usize> {
        self.groups
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::Structure(format!("no variable group named {name:?}")))
    }

    /// Flat position of the monomial with the given per-group exponents.
    pub fn flat_index(&self, exps: &[Vec<usize>]) -> Result<usize> {
        if exps.len() != self.groups.len() {
            return Err(Error::Structure(format!(
                "expected {} exponent vectors, got {}",
                self.groups.len(),
                exps.len()
            )));
        }
        let sizes = self.group_sizes();
        let mut flat = 0;
        for (k, e) in exps.iter().enumerate() {
            let idx = super::monomial::monomial_index(e, self.groups[k].vars, self.degrees[k])?;
            flat = flat * sizes[k] + idx;
        }
        Ok(flat)
    }

    pub fn coeff(&self, exps: &[Vec<usize>]) -> Result<&S> {
        let i = self.flat_index(exps)?;
        Ok(&self.coeffs[i])
    }

    /// Nonzero terms as `(per-group exponents, coefficient)`.
    pub fn terms(&self) -> Vec<(Vec<Vec<usize>>, S)> {
        let bases: Vec<Vec<Vec<usize>>> = self
            .groups
            .iter()
            .zip(&self.degrees)
            .map(|(g, &d)| exponents(g.vars, d))
            .collect();
        let sizes: Vec<usize> = bases.iter().map(Vec::len).collect();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(flat, c)| {
                let idx = split_index(flat, &sizes);
                let exps = idx.iter().zip(&bases).map(|(&i, b)| b[i].clone()).collect();
                (exps, c.clone())
            })
            .collect()
    }

    fn same_structure(&self, other: &Self) -> Result<()> {
        if self.groups != other.groups {
            return Err(Error::Structure(format!(
                "variable groups differ: {:?} vs {:?}",
                self.groups, other.groups
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_structure(other)?;
        if self.degrees != other.degrees {
            return Err(Error::Degree(format!(
                "cannot add degrees {:?} and {:?}",
                self.degrees, other.degrees
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(HomogPoly {
            groups: self.groups.clone(),
            degrees: self.degrees.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&S::one().neg()))
    }

    pub fn scale(&self, c: &S) -> Self {
        HomogPoly {
            groups: self.groups.clone(),
            degrees: self.degrees.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Exact product; per-group degrees add.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_structure(other)?;
        let degrees: Vec<usize> = self
            .degrees
            .iter()
            .zip(&other.degrees)
            .map(|(a, b)| a + b)
            .collect();
        let mut out = HomogPoly::<S>::zero(self.groups.clone(), degrees)?;

        // per-group tables: product index of (self monomial, other monomial)
        let tables: Vec<Vec<Vec<usize>>> = self
            .groups
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let a = MonomialBasis::new(g.vars, self.degrees[k]);
                let b = MonomialBasis::new(g.vars, other.degrees[k]);
                a.product_table(&b)
            })
            .collect();
        let sizes_a = self.group_sizes();
        let sizes_b = other.group_sizes();
        let sizes_out = out.group_sizes();

        let rhs: Vec<(Vec<usize>, &S)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(flat, c)| (split_index(flat, &sizes_b), c))
            .collect();

        let mut ia = vec![0; sizes_a.len()];
        for (flat_a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            split_into(flat_a, &sizes_a, &mut ia);
            for (ib, cb) in &rhs {
                let mut flat = 0;
                for k in 0..sizes_out.len() {
                    flat = flat * sizes_out[k] + tables[k][ib[k]][ia[k]];
                }
                out.coeffs[flat].add_mul_assign(ca, cb);
            }
        }
        Ok(out)
    }

    /// `sum_k w_k * d/dx_k` applied within the named group.
    pub fn directional_derivative(&self, w: &[S], group: &str) -> Result<Self> {
        let g = self.group_position(group)?;
        if w.len() != self.groups[g].vars {
            return Err(Error::Structure(format!(
                "direction has {} entries, group {group:?} has {} variables",
                w.len(),
                self.groups[g].vars
            )));
        }
        if self.degrees[g] == 0 {
            return Err(Error::Degree(format!(
                "cannot differentiate: degree 0 in group {group:?}"
            )));
        }
        let basis = MonomialBasis::new(self.groups[g].vars, self.degrees[g]);
        let table = basis.derivative_table();
        let mut degrees = self.degrees.clone();
        degrees[g] -= 1;
        let mut out = HomogPoly::<S>::zero(self.groups.clone(), degrees)?;

        let sizes = self.group_sizes();
        let outer: usize = sizes[..g].iter().product();
        let inner: usize = sizes[g + 1..].iter().product();
        let n_in = sizes[g];
        let n_out = monomial_count(self.groups[g].vars, self.degrees[g] - 1);

        for o in 0..outer {
            for (mi, entries) in table.iter().enumerate() {
                for r in 0..inner {
                    let c = &self.coeffs[(o * n_in + mi) * inner + r];
                    if c.is_zero() {
                        continue;
                    }
                    for &(k, e, target) in entries {
                        if w[k].is_zero() {
                            continue;
                        }
                        let factor = w[k].mul(&S::from_usize(e));
                        out.coeffs[(o * n_out + target) * inner + r].add_mul_assign(c, &factor);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Evaluates with one value vector per group.
    pub fn evaluate(&self, values: &[&[S]]) -> Result<S> {
        if values.len() != self.groups.len() {
            return Err(Error::Structure(format!(
                "expected values for {} groups, got {}",
                self.groups.len(),
                values.len()
            )));
        }
        // per-group monomial values
        let mut per_group = Vec::with_capacity(self.groups.len());
        for (k, g) in self.groups.iter().enumerate() {
            if values[k].len() != g.vars {
                return Err(Error::Structure(format!(
                    "group {:?} expects {} values, got {}",
                    g.name,
                    g.vars,
                    values[k].len()
                )));
            }
            let mons: Vec<S> = exponents(g.vars, self.degrees[k])
                .iter()
                .map(|e| {
                    e.iter()
                        .zip(values[k])
                        .fold(S::one(), |acc, (&a, v)| acc.mul(&v.pow(a as u32)))
                })
                .collect();
            per_group.push(mons);
        }
        let sizes = self.group_sizes();
        let mut idx = vec![0; sizes.len()];
        let mut acc = S::zero();
        for (flat, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            split_into(flat, &sizes, &mut idx);
            let mut term = c.clone();
            for (k, &i) in idx.iter().enumerate() {
                term = term.mul(&per_group[k][i]);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Single-group convenience for [`HomogPoly::evaluate`].
    pub fn evaluate_at(&self, point: &[S]) -> Result<S> {
        self.evaluate(&[point])
    }
}

impl<S: Scalar> fmt::Debug for HomogPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HomogPoly")
            .field("groups", &self.groups)
            .field("degrees", &self.degrees)
            .field("terms", &self.to_string())
            .finish()
    }
}

impl<S: Scalar> fmt::Display for HomogPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (t, (exps, c)) in terms.iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (g, e) in self.groups.iter().zip(exps) {
                for (k, &a) in e.iter().enumerate() {
                    match a {
                        0 => {}
                        1 => write!(f, "*{}{}", g.name, k + 1)?,
                        _ => write!(f, "*{}{}^{a}", g.name, k + 1)?,
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_shape(groups: &[VarGroup], degrees: &[usize]) -> Result<()> {
    if groups.len() != degrees.len() {
        return Err(Error::Structure(format!(
            "{} groups but {} degrees",
            groups.len(),
            degrees.len()
        )));
    }
    if let Some(g) = groups.iter().find(|g| g.vars == 0) {
        return Err(Error::Structure(format!(
            "group {:?} has no variables",
            g.name
        )));
    }
    Ok(())
}

fn flat_len(groups: &[VarGroup], degrees: &[usize]) -> usize {
    groups
        .iter()
        .zip(degrees)
        .map(|(g, &d)| monomial_count(g.vars, d))
        .product()
}

fn split_index(flat: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    split_into(flat, sizes, &mut out);
    out
}

fn split_into(mut flat: usize, sizes: &[usize], out: &mut [usize]) {
    for k in (0..sizes.len()).rev() {
        out[k] = flat % sizes[k];
        flat /= sizes[k];
    }
}
