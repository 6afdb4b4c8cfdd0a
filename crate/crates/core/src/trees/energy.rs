//! Tree energies: products of vertex weights indexed by (type, outdegree).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multi_index::MultiIndex;
use crate::rational::Rational;
use crate::trees::labelled::LabelledTree;
use crate::trees::planar::PlanarTree;
use crate::word::Word;

/// Vertex weights `H_{τ(v), μ(v)}` for labelled trees.
///
/// `None` means the entry is undefined, which energy evaluation reports as an
/// error; a defined zero is `Some(0)`.
pub trait OutdegreeWeights {
    fn dim(&self) -> usize;
    fn weight(&self, ty: usize, outdegree: &MultiIndex) -> Option<Rational>;
}

/// Vertex weights `H_{τ(v), μ⃗(v)}` for planar trees.
pub trait WordWeights {
    fn dim(&self) -> usize;
    fn weight(&self, ty: usize, outdegree: &Word) -> Option<Rational>;
}

/// Explicit finite weight table; lookups outside it are undefined.
#[derive(Clone, Debug, Default)]
pub struct WeightTable {
    dim: usize,
    entries: BTreeMap<(usize, MultiIndex), Rational>,
}

impl WeightTable {
    pub fn new(dim: usize) -> Self {
        WeightTable {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, ty: usize, outdegree: MultiIndex, value: Rational) -> &mut Self {
        self.entries.insert((ty, outdegree), value);
        self
    }
}

impl OutdegreeWeights for WeightTable {
    fn dim(&self) -> usize {
        self.dim
    }

    fn weight(&self, ty: usize, outdegree: &MultiIndex) -> Option<Rational> {
        self.entries.get(&(ty, outdegree.clone())).cloned()
    }
}

#[derive(Clone, Debug, Default)]
pub struct WordWeightTable {
    dim: usize,
    entries: BTreeMap<(usize, Word), Rational>,
}

impl WordWeightTable {
    pub fn new(dim: usize) -> Self {
        WordWeightTable {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, ty: usize, outdegree: Word, value: Rational) -> &mut Self {
        self.entries.insert((ty, outdegree), value);
        self
    }
}

impl WordWeights for WordWeightTable {
    fn dim(&self) -> usize {
        self.dim
    }

    fn weight(&self, ty: usize, outdegree: &Word) -> Option<Rational> {
        self.entries.get(&(ty, outdegree.clone())).cloned()
    }
}

pub(crate) fn lookup(w: &impl OutdegreeWeights, ty: usize, mu: &MultiIndex) -> Result<Rational> {
    w.weight(ty, mu).ok_or_else(|| Error::MissingWeight {
        ty: ty + 1,
        outdegree: mu.to_string(),
    })
}

pub(crate) fn lookup_word(w: &impl WordWeights, ty: usize, mu: &Word) -> Result<Rational> {
    w.weight(ty, mu).ok_or_else(|| Error::MissingWeight {
        ty: ty + 1,
        outdegree: mu.to_string(),
    })
}

/// `E_H(T) = ∏_{v internal} H_{τ(v), μ(v)}`; the empty product is 1.
pub fn tree_energy(t: &LabelledTree, h: &impl OutdegreeWeights) -> Result<Rational> {
    let mut acc = Rational::one();
    let mut err = None;
    t.visit(&mut |v, _| {
        if v.is_leaf() || err.is_some() {
            return;
        }
        match lookup(h, v.ty(), &v.outdegree(h.dim())) {
            Ok(x) => acc *= x,
            Err(e) => err = Some(e),
        }
    });
    err.map_or(Ok(acc), Err)
}

/// Alternating energy: `Q[τ(v), τ(child)]` on even internal vertices and
/// `H_{τ(v), μ(v)}` on odd internal vertices.
pub fn alt_tree_energy(
    t: &LabelledTree,
    h: &impl OutdegreeWeights,
    q: &Matrix,
) -> Result<Rational> {
    if !is_alternating(t) {
        return Err(Error::invalid("tree is not alternating"));
    }
    let mut acc = Rational::one();
    let mut err = None;
    t.visit(&mut |v, g| {
        if v.is_leaf() || err.is_some() {
            return;
        }
        if g % 2 == 0 {
            acc *= q.get(v.ty(), v.children()[0].ty());
        } else {
            match lookup(h, v.ty(), &v.outdegree(h.dim())) {
                Ok(x) => acc *= x,
                Err(e) => err = Some(e),
            }
        }
    });
    err.map_or(Ok(acc), Err)
}

/// Even generations have exactly one child; odd ones are leaves or branch.
pub fn is_alternating(t: &LabelledTree) -> bool {
    let mut ok = true;
    t.visit(&mut |v, g| {
        let k = v.children().len();
        if g % 2 == 0 {
            ok &= k == 1;
        } else {
            ok &= k != 1;
        }
    });
    ok
}

pub fn planar_energy(t: &PlanarTree, h: &impl WordWeights) -> Result<Rational> {
    let mut acc = Rational::one();
    let mut err = None;
    t.visit(&mut |v, _| {
        if v.is_leaf() || err.is_some() {
            return;
        }
        match lookup_word(h, v.ty(), &v.free_outdegree()) {
            Ok(x) => acc *= x,
            Err(e) => err = Some(e),
        }
    });
    err.map_or(Ok(acc), Err)
}

pub fn is_planar_alternating(t: &PlanarTree) -> bool {
    let mut ok = true;
    t.visit(&mut |v, g| {
        let k = v.children().len();
        if g % 2 == 0 {
            ok &= k == 1;
        } else {
            ok &= k != 1;
        }
    });
    ok
}

pub fn planar_alt_energy(t: &PlanarTree, h: &impl WordWeights, q: &Matrix) -> Result<Rational> {
    if !is_planar_alternating(t) {
        return Err(Error::invalid("planar tree is not alternating"));
    }
    let mut acc = Rational::one();
    let mut err = None;
    t.visit(&mut |v, g| {
        if v.is_leaf() || err.is_some() {
            return;
        }
        if g % 2 == 0 {
            acc *= q.get(v.ty(), v.children()[0].ty());
        } else {
            match lookup_word(h, v.ty(), &v.free_outdegree()) {
                Ok(x) => acc *= x,
                Err(e) => err = Some(e),
            }
        }
    });
    err.map_or(Ok(acc), Err)
}

/// Generation-wise energy of a final tree of length `chain.len()`: vertices in
/// generation `l` are weighted by `chain[l]`.
pub fn final_tree_energy<W: OutdegreeWeights>(t: &LabelledTree, chain: &[W]) -> Result<Rational> {
    let mut acc = Rational::one();
    let mut err = None;
    t.visit(&mut |v, g| {
        if v.is_leaf() || err.is_some() || acc.is_zero() {
            return;
        }
        let w = &chain[g];
        match lookup(w, v.ty(), &v.outdegree(w.dim())) {
            Ok(x) => acc *= x,
            Err(e) => err = Some(e),
        }
    });
    err.map_or(Ok(acc), Err)
}

pub fn planar_final_tree_energy<W: WordWeights>(t: &PlanarTree, chain: &[W]) -> Result<Rational> {
    let mut acc = Rational::one();
    let mut err = None;
    t.visit(&mut |v, g| {
        if v.is_leaf() || err.is_some() || acc.is_zero() {
            return;
        }
        match lookup_word(&chain[g], v.ty(), &v.free_outdegree()) {
            Ok(x) => acc *= x,
            Err(e) => err = Some(e),
        }
    });
    err.map_or(Ok(acc), Err)
}
