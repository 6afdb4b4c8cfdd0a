//! Truncated power series in `N` non-commuting indeterminates.
//!
//! Coefficients are plain: `f = Σ_κ f_κ X_κ` over words `κ`, with no
//! factorial normalization. Coefficients themselves commute.

mod compose;
mod invert;


use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::commseries::{CommMap, CommSeries};
use crate::error::{check_dim, Error, Result};
use crate::matrix::Matrix;
use crate::multi_index::mi_factorial;
use crate::rational::{self, from_bigint, Rational};
use crate::trees::WordWeights;
use crate::word::Word;

pub use compose::{free_compose_direct, free_compose_fdb};
pub use invert::{free_invert, free_invert_general};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSeries {
    dim: usize,
    trunc: usize,
    coeffs: BTreeMap<Word, Rational>,
}

impl FreeSeries {
    pub fn zero(dim: usize, trunc: usize) -> Self {
        FreeSeries {
            dim,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, trunc: usize, c: Rational) -> Self {
        let mut s = Self::zero(dim, trunc);
        s.set(Word::empty(), c);
        s
    }

    pub fn variable(dim: usize, trunc: usize, j: usize) -> Self {
        let mut s = Self::zero(dim, trunc);
        s.set(Word::letter(j), Rational::one());
        s
    }

    /// Builds a series from 0-based words, rejecting bad letters and lengths.
    pub fn from_coeffs(
        dim: usize,
        trunc: usize,
        coeffs: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Result<Self> {
        let mut s = Self::zero(dim, trunc);
        for (w, c) in coeffs {
            check_word(dim, trunc, &w)?;
            s.add_to(w, c);
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.coeffs.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn get(&self, w: &Word) -> Option<&Rational> {
        self.coeffs.get(w)
    }

    /// Nonzero terms, shorter words first.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn set(&mut self, w: Word, c: Rational) {
        if w.len() > self.trunc || c.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, c);
        }
    }

    pub(crate) fn add_to(&mut self, w: Word, c: Rational) {
        if c.is_zero() || w.len() > self.trunc {
            return;
        }
        let v = self.coeff(&w) + c;
        self.set(w, v);
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let trunc = trunc.min(self.trunc);
        FreeSeries {
            dim: self.dim,
            trunc,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| w.len() <= trunc)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.trunc);
        for (w, v) in &self.coeffs {
            out.set(w.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.truncate(other.trunc);
        for (w, c) in &other.coeffs {
            out.add_to(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// Collapses words to multi-indices: `F_α = α! Σ_{κ ↦ α} f_κ`.
    pub fn abelianize(&self) -> CommSeries {
        let mut sums: BTreeMap<_, Rational> = BTreeMap::new();
        for (w, c) in &self.coeffs {
            *sums
                .entry(w.abelianize(self.dim))
                .or_insert_with(Rational::zero) += c;
        }
        CommSeries::from_coeffs(
            self.dim,
            self.trunc,
            sums.into_iter()
                .map(|(a, c)| (a.clone(), c * from_bigint(mi_factorial(&a)))),
        )
        .expect("abelianized keys fit")
    }
}

fn check_word(dim: usize, trunc: usize, w: &Word) -> Result<()> {
    if let Some(&l) = w.letters().iter().find(|&&l| l >= dim) {
        return Err(Error::invalid(format!(
            "letter {} is outside 1..={dim}",
            l + 1
        )));
    }
    if w.len() > trunc {
        return Err(Error::invalid(format!(
            "word {w} is longer than the truncation {trunc}"
        )));
    }
    Ok(())
}

/// Concatenation product: `h_κ = Σ_j f_{κ_1..κ_j} g_{κ_{j+1}..κ_k}`.
pub fn free_mul(f: &FreeSeries, g: &FreeSeries) -> Result<FreeSeries> {
    check_dim(f.dim, g.dim)?;
    let trunc = f.trunc.min(g.trunc);
    let mut out = FreeSeries::zero(f.dim, trunc);
    for (a, x) in &f.coeffs {
        if a.len() > trunc {
            break;
        }
        for (b, y) in &g.coeffs {
            if a.len() + b.len() > trunc {
                break;
            }
            out.add_to(a.concat(b), x * y);
        }
    }
    Ok(out)
}

/// Letter-deletion derivative `∂/∂X_j`; `j` is 0-based. The result is
/// truncated one degree lower.
pub fn hausdorff_derivative(f: &FreeSeries, j: usize) -> Result<FreeSeries> {
    if j >= f.dim {
        return Err(Error::invalid(format!(
            "variable {} is outside 1..={}",
            j + 1,
            f.dim
        )));
    }
    let mut out = FreeSeries::zero(f.dim, f.trunc.saturating_sub(1));
    for (w, c) in &f.coeffs {
        for (pos, &l) in w.letters().iter().enumerate() {
            if l == j {
                let rest = w.slice(0, pos).concat(&w.slice(pos + 1, w.len()));
                out.add_to(rest, c.clone());
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMap {
    components: Vec<FreeSeries>,
}

impl FreeMap {
    pub fn new(components: Vec<FreeSeries>) -> Result<Self> {
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
        Ok(FreeMap { components })
    }

    pub fn identity(dim: usize, trunc: usize) -> Self {
        FreeMap {
            components: (0..dim)
                .map(|j| FreeSeries::variable(dim, trunc, j))
                .collect(),
        }
    }

    pub fn zero(dim: usize, trunc: usize) -> Self {
        FreeMap {
            components: vec![FreeSeries::zero(dim, trunc); dim],
        }
    }

    pub fn linear(m: &Matrix, trunc: usize) -> Self {
        let dim = m.size();
        let mut out = Self::zero(dim, trunc);
        for (i, row) in m.rows().iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out.components[i].set(Word::letter(j), v.clone());
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

    pub fn components(&self) -> &[FreeSeries] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &FreeSeries {
        &self.components[i]
    }

    pub fn coeff(&self, i: usize, w: &Word) -> Rational {
        self.components[i].coeff(w)
    }

    pub(crate) fn component_mut(&mut self, i: usize) -> &mut FreeSeries {
        &mut self.components[i]
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        FreeMap {
            components: self.components.iter().map(|c| c.truncate(trunc)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FreeMap {
            components: self.components.iter().map(|s| s.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(FreeMap { components })
    }

    pub(crate) fn require_zero_constant(&self) -> Result<()> {
        match self
            .components
            .iter()
            .position(|c| c.get(&Word::empty()).is_some())
        {
            Some(i) => Err(Error::NonzeroConstantTerm { component: i + 1 }),
            None => Ok(()),
        }
    }

    pub fn abelianize(&self) -> CommMap {
        CommMap::new(self.components.iter().map(FreeSeries::abelianize).collect())
            .expect("shape preserved")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FreeMapJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: FreeMapJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

/// The matrix `(F_{i,(j)})`.
pub fn free_jacobian_at_zero(f: &FreeMap) -> Matrix {
    let n = f.dim();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, f.coeff(i, &Word::letter(j)));
        }
    }
    m
}

impl WordWeights for FreeMap {
    fn dim(&self) -> usize {
        FreeMap::dim(self)
    }

    fn weight(&self, ty: usize, outdegree: &Word) -> Option<Rational> {
        (outdegree.len() <= self.truncation()).then(|| self.coeff(ty, outdegree))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FreeMapJson {
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
    word: Vec<usize>,
    value: String,
}

impl From<&FreeMap> for FreeMapJson {
    fn from(f: &FreeMap) -> Self {
        FreeMapJson {
            kind: "free".into(),
            convention: "plain".into(),
            dimension: f.dim(),
            truncation: f.truncation(),
            components: f
                .components
                .iter()
                .map(|c| ComponentJson {
                    coeffs: c
                        .terms()
                        .map(|(w, v)| TermJson {
                            word: w.letters().iter().map(|l| l + 1).collect(),
                            value: rational::render(v),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<FreeMapJson> for FreeMap {
    type Error = Error;

    fn try_from(raw: FreeMapJson) -> Result<Self> {
        if raw.kind != "free" {
            return Err(Error::Parse(format!(
                "expected kind \"free\", found \"{}\"",
                raw.kind
            )));
        }
        if raw.convention != "plain" {
            return Err(Error::Parse(format!(
                "expected convention \"plain\", found \"{}\"",
                raw.convention
            )));
        }
        if raw.dimension == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        check_dim(raw.dimension, raw.components.len())?;
        let mut components = Vec::with_capacity(raw.dimension);
        for comp in raw.components {
            let mut s = FreeSeries::zero(raw.dimension, raw.truncation);
            for t in comp.coeffs {
                if t.word.contains(&0) {
                    return Err(Error::invalid("letters are numbered from 1"));
                }
                let w = Word::new(t.word.iter().map(|l| l - 1).collect());
                check_word(raw.dimension, raw.truncation, &w)?;
                if s.get(&w).is_some() {
                    return Err(Error::Parse(format!("duplicate coefficient {w}")));
                }
                s.set(w, rational::parse(&t.value)?);
            }
            components.push(s);
        }
        FreeMap::new(components)
    }
}
