//! Truncated power series in `N` commuting indeterminates.
//!
//! Coefficients use the divided-power convention: the stored value `F_α`
//! stands for the monomial `(F_α / α!) X^α`. Every series carries its
//! truncation degree `D`; binary operations keep the smaller one.

mod compose;
mod fern;
mod invert;


use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::matrix::Matrix;
use crate::multi_index::{mi_binomial, MultiIndex};
use crate::rational::{self, from_bigint, Rational};
use crate::trees::OutdegreeWeights;

pub use compose::{compose_direct, compose_fdb};
pub use fern::{fern_nilpotency_check, FernPath, FernVerdict, FernWitness};
pub use invert::{
    invert_general, invert_identity_linear, phi_involution, GeneralPath, InversionPath,
};

/// One truncated series, stored sparsely in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommSeries {
    dim: usize,
    trunc: usize,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl CommSeries {
    pub fn zero(dim: usize, trunc: usize) -> Self {
        CommSeries {
            dim,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, trunc: usize, c: Rational) -> Self {
        let mut s = Self::zero(dim, trunc);
        s.set(MultiIndex::zero(dim), c);
        s
    }

    /// The coordinate `X_j`.
    pub fn variable(dim: usize, trunc: usize, j: usize) -> Self {
        let mut s = Self::zero(dim, trunc);
        s.set(MultiIndex::unit(dim, j), Rational::one());
        s
    }

    /// Builds a series, rejecting keys of the wrong length or above `trunc`.
    pub fn from_coeffs(
        dim: usize,
        trunc: usize,
        coeffs: impl IntoIterator<Item = (MultiIndex, Rational)>,
    ) -> Result<Self> {
        let mut s = Self::zero(dim, trunc);
        for (alpha, c) in coeffs {
            check_dim(dim, alpha.dim())?;
            if alpha.degree() > trunc {
                return Err(Error::invalid(format!(
                    "coefficient {alpha} has degree above the truncation {trunc}"
                )));
            }
            let acc = s.coeff(&alpha) + c;
            s.set(alpha, acc);
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Rational {
        self.coeffs
            .get(alpha)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn get(&self, alpha: &MultiIndex) -> Option<&Rational> {
        self.coeffs.get(alpha)
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest degree carrying a nonzero coefficient.
    pub fn max_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(MultiIndex::degree).max()
    }

    /// Sets a coefficient; terms above the truncation are dropped.
    pub(crate) fn set(&mut self, alpha: MultiIndex, c: Rational) {
        if alpha.degree() > self.trunc || c.is_zero() {
            self.coeffs.remove(&alpha);
        } else {
            self.coeffs.insert(alpha, c);
        }
    }

    pub(crate) fn add_to(&mut self, alpha: MultiIndex, c: Rational) {
        if c.is_zero() || alpha.degree() > self.trunc {
            return;
        }
        let v = self.coeff(&alpha) + c;
        self.set(alpha, v);
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let trunc = trunc.min(self.trunc);
        CommSeries {
            dim: self.dim,
            trunc,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(a, _)| a.degree() <= trunc)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.trunc);
        for (a, v) in &self.coeffs {
            out.set(a.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        series_add(self, other)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        series_mul(self, other)
    }
}

pub fn series_add(f: &CommSeries, g: &CommSeries) -> Result<CommSeries> {
    check_dim(f.dim, g.dim)?;
    let mut out = f.truncate(g.trunc);
    for (a, c) in &g.coeffs {
        out.add_to(a.clone(), c.clone());
    }
    Ok(out)
}

/// Divided-power product: `(fg)_α = Σ_{β ≤ α} C(α, β) f_β g_{α-β}`.
pub fn series_mul(f: &CommSeries, g: &CommSeries) -> Result<CommSeries> {
    check_dim(f.dim, g.dim)?;
    let trunc = f.trunc.min(g.trunc);
    let mut out = CommSeries::zero(f.dim, trunc);
    for (a, x) in &f.coeffs {
        if a.degree() > trunc {
            break;
        }
        for (b, y) in &g.coeffs {
            let sum = a.plus(b);
            if sum.degree() > trunc {
                break;
            }
            let c = from_bigint(mi_binomial(&sum, a)) * x * y;
            out.add_to(sum, c);
        }
    }
    Ok(out)
}

/// An `N`-tuple of series sharing dimension `N` and truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommMap {
    components: Vec<CommSeries>,
}

impl CommMap {
    pub fn new(components: Vec<CommSeries>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::invalid("a map needs at least one component"))?;
        let (dim, trunc) = (first.dim, first.trunc);
        check_dim(dim, components.len())?;
        for c in &components {
            check_dim(dim, c.dim)?;
            if c.trunc != trunc {
                return Err(Error::invalid(
                    "components disagree on the truncation degree",
                ));
            }
        }
        Ok(CommMap { components })
    }

    pub fn identity(dim: usize, trunc: usize) -> Self {
        CommMap {
            components: (0..dim)
                .map(|j| CommSeries::variable(dim, trunc, j))
                .collect(),
        }
    }

    pub fn zero(dim: usize, trunc: usize) -> Self {
        CommMap {
            components: vec![CommSeries::zero(dim, trunc); dim],
        }
    }

    /// `X ↦ M X`.
    pub fn linear(m: &Matrix, trunc: usize) -> Self {
        let dim = m.size();
        let mut out = Self::zero(dim, trunc);
        for (i, row) in m.rows().iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out.components[i].set(MultiIndex::unit(dim, j), v.clone());
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn truncation(&self) -> usize {
        self.components[0].trunc
    }

    pub fn components(&self) -> &[CommSeries] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &CommSeries {
        &self.components[i]
    }

    pub fn coeff(&self, i: usize, alpha: &MultiIndex) -> Rational {
        self.components[i].coeff(alpha)
    }

    pub(crate) fn component_mut(&mut self, i: usize) -> &mut CommSeries {
        &mut self.components[i]
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        CommMap {
            components: self.components.iter().map(|c| c.truncate(trunc)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| series_add(a, b))
            .collect::<Result<_>>()?;
        Ok(CommMap { components })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CommMap {
            components: self.components.iter().map(|s| s.scale(c)).collect(),
        }
    }

    /// First component with a nonzero constant term.
    pub fn nonzero_constant(&self) -> Option<usize> {
        let zero = MultiIndex::zero(self.dim());
        self.components.iter().position(|c| c.get(&zero).is_some())
    }

    pub(crate) fn require_zero_constant(&self) -> Result<()> {
        match self.nonzero_constant() {
            Some(component) => Err(Error::NonzeroConstantTerm {
                component: component + 1,
            }),
            None => Ok(()),
        }
    }

    /// Keeps only the terms of degree at least two.
    pub fn nonlinear_part(&self) -> Self {
        let mut out = Self::zero(self.dim(), self.truncation());
        for (i, c) in self.components.iter().enumerate() {
            for (a, v) in c.terms().filter(|(a, _)| a.degree() >= 2) {
                out.components[i].set(a.clone(), v.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CommMapJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: CommMapJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

/// The linear term `(F_{i,e_j})`.
pub fn jacobian_linear_term(f: &CommMap) -> Matrix {
    let n = f.dim();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, f.coeff(i, &MultiIndex::unit(n, j)));
        }
    }
    m
}

/// Coefficients as vertex weights; degrees above the truncation are undefined.
impl OutdegreeWeights for CommMap {
    fn dim(&self) -> usize {
        CommMap::dim(self)
    }

    fn weight(&self, ty: usize, outdegree: &MultiIndex) -> Option<Rational> {
        (outdegree.degree() <= self.truncation()).then(|| self.coeff(ty, outdegree))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CommMapJson {
    kind: String,
    convention: String,
    dimension: usize,
    truncation: usize,
    components: Vec<ComponentJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentJson {
    coeffs: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    alpha: Vec<u32>,
    value: String,
}

impl From<&CommMap> for CommMapJson {
    fn from(f: &CommMap) -> Self {
        CommMapJson {
            kind: "comm".into(),
            convention: "divided-power".into(),
            dimension: f.dim(),
            truncation: f.truncation(),
            components: f
                .components
                .iter()
                .map(|c| ComponentJson {
                    coeffs: c
                        .terms()
                        .map(|(a, v)| TermJson {
                            alpha: a.exponents().to_vec(),
                            value: rational::render(v),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<CommMapJson> for CommMap {
    type Error = Error;

    fn try_from(raw: CommMapJson) -> Result<Self> {
        if raw.kind != "comm" {
            return Err(Error::Parse(format!(
                "expected kind \"comm\", found \"{}\"",
                raw.kind
            )));
        }
        if raw.convention != "divided-power" {
            return Err(Error::Parse(format!(
                "expected convention \"divided-power\", found \"{}\"",
                raw.convention
            )));
        }
        if raw.dimension == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        check_dim(raw.dimension, raw.components.len())?;
        let mut components = Vec::with_capacity(raw.dimension);
        for comp in raw.components {
            let mut s = CommSeries::zero(raw.dimension, raw.truncation);
            for t in comp.coeffs {
                let alpha = MultiIndex::new(t.alpha);
                check_dim(raw.dimension, alpha.dim())?;
                if alpha.degree() > raw.truncation {
                    return Err(Error::invalid(format!(
                        "coefficient {alpha} has degree above the truncation {}",
                        raw.truncation
                    )));
                }
                if s.get(&alpha).is_some() {
                    return Err(Error::Parse(format!("duplicate coefficient {alpha}")));
                }
                s.set(alpha, rational::parse(&t.value)?);
            }
            components.push(s);
        }
        CommMap::new(components)
    }
}
