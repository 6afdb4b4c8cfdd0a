use num_traits::Zero;

use super::{series_add, series_mul, CommMap, CommSeries};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::multi_index::{enumerate_multi_indices, MultiIndex};
use crate::rational::Rational;
use crate::trees::{enumerate_ferns, OutdegreeWeights};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FernPath {
    /// Multiply the Jacobian of `H` out `m` times.
    MatrixPower,
    /// Sum fern energies for every `(i, j, α)`.
    FernSum,
}

/// First nonzero `(i, j, α)` entry, 0-based, with its divided-power value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FernWitness {
    pub row: usize,
    pub col: usize,
    pub alpha: MultiIndex,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FernVerdict {
    pub nilpotent: bool,
    pub witness: Option<FernWitness>,
}

/// Stored coefficients, zero everywhere else.
struct Polynomial<'a>(&'a CommMap);

impl OutdegreeWeights for Polynomial<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn weight(&self, ty: usize, mu: &MultiIndex) -> Option<Rational> {
        Some(self.0.coeff(ty, mu))
    }
}

/// Decides whether `J(H)^m` vanishes, entry degrees checked up to `degree_bound`.
pub fn fern_nilpotency_check(
    h: &CommMap,
    m: usize,
    path: FernPath,
    degree_bound: usize,
    limits: &Limits,
) -> Result<FernVerdict> {
    if m == 0 {
        return Err(Error::invalid("the power m must be at least 1"));
    }
    for (i, c) in h.components().iter().enumerate() {
        if let Some((a, _)) = c.terms().find(|(a, _)| a.degree() < 2) {
            return Err(Error::invalid(format!(
                "component {} has a term {a} of degree below two",
                i + 1
            )));
        }
    }
    let delta = h
        .components()
        .iter()
        .filter_map(CommSeries::max_degree)
        .max()
        .unwrap_or(1);
    let needed = m * (delta - 1);
    if degree_bound < needed {
        return Err(Error::invalid(format!(
            "degree bound {degree_bound} is below m(δ-1) = {needed}"
        )));
    }
    let witness = match path {
        FernPath::MatrixPower => matrix_power_witness(h, m, degree_bound)?,
        FernPath::FernSum => fern_sum_witness(h, m, degree_bound, limits)?,
    };
    Ok(FernVerdict {
        nilpotent: witness.is_none(),
        witness,
    })
}

fn jacobian(h: &CommMap, bound: usize) -> Vec<Vec<CommSeries>> {
    let n = h.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut d = CommSeries::zero(n, bound);
                    for (a, v) in h.component(i).terms() {
                        if let Some(b) = a.checked_sub(&MultiIndex::unit(n, j)) {
                            d.set(b, v.clone());
                        }
                    }
                    d
                })
                .collect()
        })
        .collect()
}

fn matrix_power_witness(h: &CommMap, m: usize, bound: usize) -> Result<Option<FernWitness>> {
    let n = h.dim();
    let j = jacobian(h, bound);
    let mut acc = j.clone();
    for _ in 1..m {
        let mut next = vec![vec![CommSeries::zero(n, bound); n]; n];
        for (r, row) in next.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                for (k, jk) in j.iter().enumerate() {
                    *cell = series_add(cell, &series_mul(&acc[r][k], &jk[c])?)?;
                }
            }
        }
        acc = next;
    }
    for (r, row) in acc.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            if let Some((alpha, value)) = cell.terms().next() {
                return Ok(Some(FernWitness {
                    row: r,
                    col: c,
                    alpha: alpha.clone(),
                    value: value.clone(),
                }));
            }
        }
    }
    Ok(None)
}

fn fern_sum_witness(
    h: &CommMap,
    m: usize,
    bound: usize,
    limits: &Limits,
) -> Result<Option<FernWitness>> {
    let n = h.dim();
    let weights = Polynomial(h);
    let alphas = enumerate_multi_indices(n, bound)?;
    for row in 0..n {
        for col in 0..n {
            for alpha in &alphas {
                let mut value = Rational::zero();
                for fern in enumerate_ferns(n, row, alpha, col, m, limits)? {
                    value += fern.energy(&weights)?;
                }
                if !value.is_zero() {
                    return Ok(Some(FernWitness {
                        row,
                        col,
                        alpha: alpha.clone(),
                        value,
                    }));
                }
            }
        }
    }
    Ok(None)
}
