//! Energy sums over whole tree families without materializing the trees.
//!
//! Each sum is computed by cutting the trees at the root: the children of the
//! root split the leaf labels into the blocks of a set partition (labelled
//! case) or into consecutive runs of the leaf word (planar case), and each
//! child roots a smaller tree of the same kind. A family sum only depends on
//! the root type and on `#S` (resp. the leaf word), which is the memo key.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::limits::Limits;
use crate::matrix::Matrix;
use crate::multi_index::{count_slots, label_set, MultiIndex};
use crate::partitions::for_each_partition;
use crate::rational::Rational;
use crate::trees::energy::{lookup, lookup_word, OutdegreeWeights, WordWeights};
use crate::trees::planar::compositions_of;
use crate::word::Word;

/// Blocks of every set partition of `[α]`, as multi-indices, grouped by
/// multiset with their multiplicities.
fn block_patterns(alpha: &MultiIndex, min_blocks: usize) -> Vec<(Vec<MultiIndex>, usize)> {
    let dim = alpha.dim();
    let slots = label_set(alpha);
    let mut counts: HashMap<Vec<MultiIndex>, usize> = HashMap::new();
    for_each_partition(slots.len(), |rgs, nblocks| {
        if nblocks < min_blocks {
            return;
        }
        let mut blocks = vec![Vec::new(); nblocks];
        for (s, &b) in slots.iter().zip(rgs) {
            blocks[b].push(*s);
        }
        let mut key: Vec<MultiIndex> = blocks.iter().map(|b| count_slots(dim, b)).collect();
        key.sort();
        *counts.entry(key).or_default() += 1;
    });
    let mut out: Vec<_> = counts.into_iter().collect();
    out.sort();
    out
}

/// `Σ_{t_1..t_b} w(ty, Σ e_{t_k}) ∏_k s[k][t_k]`, grouping type tuples by
/// their multiset.
fn typed_children_sum(
    w: &impl OutdegreeWeights,
    ty: usize,
    per_block: &[Vec<Rational>],
) -> Result<Rational> {
    let dim = w.dim();
    let mut poly: HashMap<MultiIndex, Rational> = HashMap::new();
    poly.insert(MultiIndex::zero(dim), Rational::one());
    for s in per_block {
        let mut next: HashMap<MultiIndex, Rational> = HashMap::new();
        for (mu, c) in &poly {
            for (t, x) in s.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                *next.entry(mu.plus_unit(t)).or_insert_with(Rational::zero) += c * x;
            }
        }
        poly = next;
        if poly.is_empty() {
            return Ok(Rational::zero());
        }
    }
    let mut acc = Rational::zero();
    for (mu, c) in poly {
        if c.is_zero() {
            continue;
        }
        acc += lookup(w, ty, &mu)? * c;
    }
    Ok(acc)
}

/// Sums over final trees `𝔽_{i,α}(m)` with generation `l` weighted by `chain[l]`.
pub struct FinalSums<'a, W> {
    chain: &'a [W],
    dim: usize,
    limits: Limits,
    memo: HashMap<(usize, usize, MultiIndex), Rational>,
}

impl<'a, W: OutdegreeWeights> FinalSums<'a, W> {
    pub fn new(chain: &'a [W], limits: &Limits) -> Self {
        let dim = chain.first().map_or(0, |w| w.dim());
        FinalSums {
            chain,
            dim,
            limits: *limits,
            memo: HashMap::new(),
        }
    }

    /// `Σ_{T ∈ 𝔽_{root,α}(m)} E(T)`.
    pub fn sum(&mut self, root: usize, alpha: &MultiIndex) -> Result<Rational> {
        self.limits.check_partition_ground(alpha.degree())?;
        self.at(0, root, alpha)
    }

    fn at(&mut self, level: usize, ty: usize, alpha: &MultiIndex) -> Result<Rational> {
        let m = self.chain.len();
        if level == m {
            return Ok(if alpha.as_unit() == Some(ty) {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        if alpha.is_zero() {
            return Ok(Rational::zero());
        }
        let key = (level, ty, alpha.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let mut total = Rational::zero();
        for (blocks, mult) in block_patterns(alpha, 1) {
            let mut per_block = Vec::with_capacity(blocks.len());
            for b in &blocks {
                let mut s = Vec::with_capacity(self.dim);
                for t in 0..self.dim {
                    s.push(self.at(level + 1, t, b)?);
                }
                per_block.push(s);
            }
            let x = typed_children_sum(&self.chain[level], ty, &per_block)?;
            total += x * Rational::from_integer(mult.into());
        }
        self.limits.check_cells(self.memo.len() + 1)?;
        self.memo.insert(key, total.clone());
        Ok(total)
    }
}

/// Sums of alternating energies `E^alt_{H,Q}` over `𝔸_{i,α}`.
pub struct AlternatingSums<'a, W> {
    h: &'a W,
    q: &'a Matrix,
    limits: Limits,
    even: HashMap<(usize, MultiIndex), Rational>,
    odd: HashMap<(usize, MultiIndex), Rational>,
}

impl<'a, W: OutdegreeWeights> AlternatingSums<'a, W> {
    pub fn new(h: &'a W, q: &'a Matrix, limits: &Limits) -> Self {
        AlternatingSums {
            h,
            q,
            limits: *limits,
            even: HashMap::new(),
            odd: HashMap::new(),
        }
    }

    pub fn sum(&mut self, root: usize, alpha: &MultiIndex) -> Result<Rational> {
        self.limits.check_partition_ground(alpha.degree())?;
        self.even_at(root, alpha)
    }

    fn even_at(&mut self, ty: usize, alpha: &MultiIndex) -> Result<Rational> {
        if let Some(v) = self.even.get(&(ty, alpha.clone())) {
            return Ok(v.clone());
        }
        let mut total = Rational::zero();
        for j in 0..self.h.dim() {
            let qij = self.q.get(ty, j).clone();
            if qij.is_zero() {
                continue;
            }
            total += qij * self.odd_at(j, alpha)?;
        }
        self.limits
            .check_cells(self.even.len() + self.odd.len() + 1)?;
        self.even.insert((ty, alpha.clone()), total.clone());
        Ok(total)
    }

    fn odd_at(&mut self, ty: usize, alpha: &MultiIndex) -> Result<Rational> {
        if alpha.degree() <= 1 {
            return Ok(if alpha.as_unit() == Some(ty) {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        if let Some(v) = self.odd.get(&(ty, alpha.clone())) {
            return Ok(v.clone());
        }
        let dim = self.h.dim();
        let mut total = Rational::zero();
        for (blocks, mult) in block_patterns(alpha, 2) {
            let mut per_block = Vec::with_capacity(blocks.len());
            for b in &blocks {
                let mut s = Vec::with_capacity(dim);
                for t in 0..dim {
                    s.push(self.even_at(t, b)?);
                }
                per_block.push(s);
            }
            let x = typed_children_sum(self.h, ty, &per_block)?;
            total += x * Rational::from_integer(mult.into());
        }
        self.limits
            .check_cells(self.even.len() + self.odd.len() + 1)?;
        self.odd.insert((ty, alpha.clone()), total.clone());
        Ok(total)
    }
}

/// `Σ_{t_1..t_b} w(ty, (t_1..t_b)) ∏_k s[k][t_k]` over ordered type words.
fn typed_word_children_sum(
    w: &impl WordWeights,
    ty: usize,
    per_run: &[Vec<Rational>],
) -> Result<Rational> {
    let mut acc = Rational::zero();
    let mut partial: Vec<(Word, Rational)> = vec![(Word::empty(), Rational::one())];
    for s in per_run {
        let mut next = Vec::new();
        for (word, c) in &partial {
            for (t, x) in s.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mut w2 = word.clone();
                w2.push(t);
                next.push((w2, c * x));
            }
        }
        partial = next;
        if partial.is_empty() {
            return Ok(acc);
        }
    }
    for (word, c) in partial {
        acc += lookup_word(w, ty, &word)? * c;
    }
    Ok(acc)
}

/// Sums over planar final trees `𝔽⃗_{i,κ}(m)`.
pub struct PlanarFinalSums<'a, W> {
    chain: &'a [W],
    dim: usize,
    limits: Limits,
    memo: HashMap<(usize, usize, Word), Rational>,
}

impl<'a, W: WordWeights> PlanarFinalSums<'a, W> {
    pub fn new(chain: &'a [W], limits: &Limits) -> Self {
        let dim = chain.first().map_or(0, |w| w.dim());
        PlanarFinalSums {
            chain,
            dim,
            limits: *limits,
            memo: HashMap::new(),
        }
    }

    pub fn sum(&mut self, root: usize, word: &Word) -> Result<Rational> {
        self.limits.check_leaves(word.len())?;
        self.at(0, root, word)
    }

    fn at(&mut self, level: usize, ty: usize, word: &Word) -> Result<Rational> {
        if level == self.chain.len() {
            return Ok(if word.letters() == [ty] {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        if word.is_empty() {
            return Ok(Rational::zero());
        }
        let key = (level, ty, word.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let mut total = Rational::zero();
        for runs in compositions_of(word.len()) {
            let mut per_run = Vec::with_capacity(runs.len());
            for &(a, b) in &runs {
                let sub = word.slice(a, b);
                let mut s = Vec::with_capacity(self.dim);
                for t in 0..self.dim {
                    s.push(self.at(level + 1, t, &sub)?);
                }
                per_run.push(s);
            }
            total += typed_word_children_sum(&self.chain[level], ty, &per_run)?;
        }
        self.limits.check_cells(self.memo.len() + 1)?;
        self.memo.insert(key, total.clone());
        Ok(total)
    }
}

/// Sums of planar alternating energies over `𝔸⃗_{i,κ}`.
pub struct PlanarAlternatingSums<'a, W> {
    h: &'a W,
    q: &'a Matrix,
    limits: Limits,
    even: HashMap<(usize, Word), Rational>,
    odd: HashMap<(usize, Word), Rational>,
}

impl<'a, W: WordWeights> PlanarAlternatingSums<'a, W> {
    pub fn new(h: &'a W, q: &'a Matrix, limits: &Limits) -> Self {
        PlanarAlternatingSums {
            h,
            q,
            limits: *limits,
            even: HashMap::new(),
            odd: HashMap::new(),
        }
    }

    pub fn sum(&mut self, root: usize, word: &Word) -> Result<Rational> {
        self.limits.check_leaves(word.len())?;
        self.even_at(root, word)
    }

    fn even_at(&mut self, ty: usize, word: &Word) -> Result<Rational> {
        if let Some(v) = self.even.get(&(ty, word.clone())) {
            return Ok(v.clone());
        }
        let mut total = Rational::zero();
        for j in 0..self.h.dim() {
            let qij = self.q.get(ty, j).clone();
            if qij.is_zero() {
                continue;
            }
            total += qij * self.odd_at(j, word)?;
        }
        self.limits
            .check_cells(self.even.len() + self.odd.len() + 1)?;
        self.even.insert((ty, word.clone()), total.clone());
        Ok(total)
    }

    fn odd_at(&mut self, ty: usize, word: &Word) -> Result<Rational> {
        if word.len() <= 1 {
            return Ok(if word.letters() == [ty] {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        if let Some(v) = self.odd.get(&(ty, word.clone())) {
            return Ok(v.clone());
        }
        let dim = self.h.dim();
        let mut total = Rational::zero();
        for runs in compositions_of(word.len()) {
            if runs.len() < 2 {
                continue;
            }
            let mut per_run = Vec::with_capacity(runs.len());
            for &(a, b) in &runs {
                let sub = word.slice(a, b);
                let mut s = Vec::with_capacity(dim);
                for t in 0..dim {
                    s.push(self.even_at(t, &sub)?);
                }
                per_run.push(s);
            }
            total += typed_word_children_sum(self.h, ty, &per_run)?;
        }
        self.limits
            .check_cells(self.even.len() + self.odd.len() + 1)?;
        self.odd.insert((ty, word.clone()), total.clone());
        Ok(total)
    }
}
