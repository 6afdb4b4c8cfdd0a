//! Labelled and planar tree families, their energies, and family energy sums.
//!
//! Types are 0-based in the API and 1-based in JSON output.

mod energy;
mod fern;
mod labelled;
mod planar;
pub mod sums;

use serde_json::{json, Value};

pub use energy::{
    alt_tree_energy, final_tree_energy, is_alternating, is_planar_alternating, planar_alt_energy,
    planar_energy, planar_final_tree_energy, tree_energy, OutdegreeWeights, WeightTable,
    WordWeightTable, WordWeights,
};
pub use fern::{enumerate_ferns, Fern};
pub use labelled::{canonical_encode, collapse_alternating, expansion_fibre, LabelledTree};
pub use planar::{planar_expansion_fibre, PlanarTree};

use crate::error::{check_dim, Error, Result};
use crate::limits::Limits;
use crate::multi_index::{label_set, MultiIndex};
use crate::word::Word;
use labelled::{check_leaf_count, LabelledEnumerator};
use planar::PlanarEnumerator;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Every leaf in generation `m`.
    Final(usize),
    /// Every internal vertex has two or more children.
    Proper,
    /// Even generations have one child; odd generations are leaves or branch.
    Alternating,
    /// Spine of length `m` ending in a vertex of type `terminal`.
    Fern { length: usize, terminal: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeafSpec {
    /// Labelled trees with leaf labels `[α]`.
    Labels(MultiIndex),
    /// Planar trees with leaf word `κ`.
    Word(Word),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeFamilySpec {
    pub family: Family,
    pub root_type: usize,
    pub leaves: LeafSpec,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trees {
    Labelled(Vec<LabelledTree>),
    Planar(Vec<PlanarTree>),
}

impl Trees {
    pub fn len(&self) -> usize {
        match self {
            Trees::Labelled(v) => v.len(),
            Trees::Planar(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> Value {
        match self {
            Trees::Labelled(v) => Value::Array(v.iter().map(labelled_to_json).collect()),
            Trees::Planar(v) => Value::Array(v.iter().map(planar_to_json).collect()),
        }
    }
}

/// One representative per isomorphism class (labelled) or per typed planar
/// shape, in a deterministic order.
pub fn enumerate_trees(spec: &TreeFamilySpec, limits: &Limits) -> Result<Trees> {
    if spec.dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    if spec.root_type >= spec.dim {
        return Err(Error::invalid("root type must lie in [N]"));
    }
    match &spec.leaves {
        LeafSpec::Labels(alpha) => {
            if alpha.dim() != spec.dim {
                return Err(Error::DimensionMismatch {
                    expected: spec.dim,
                    found: alpha.dim(),
                });
            }
            check_leaf_count(alpha.degree(), limits)?;
            let slots = label_set(alpha);
            let mut en = LabelledEnumerator::new(spec.dim);
            let trees = match spec.family {
                Family::Final(m) => en.final_trees(spec.root_type, &slots, m).as_ref().clone(),
                Family::Proper => en.proper_trees(spec.root_type, &slots).as_ref().clone(),
                Family::Alternating => en.alternating_trees(spec.root_type, &slots),
                Family::Fern { length, terminal } => {
                    let mut v: Vec<LabelledTree> =
                        enumerate_ferns(spec.dim, spec.root_type, alpha, terminal, length, limits)?
                            .iter()
                            .map(Fern::to_tree)
                            .collect();
                    v.sort();
                    v
                }
            };
            Ok(Trees::Labelled(trees))
        }
        LeafSpec::Word(word) => {
            if word.letters().iter().any(|&l| l >= spec.dim) {
                return Err(Error::invalid("word letters must lie in [N]"));
            }
            limits.check_leaves(word.len())?;
            let mut en = PlanarEnumerator::new(spec.dim);
            let trees = match spec.family {
                Family::Final(m) => en
                    .final_trees(spec.root_type, word.letters(), m)
                    .as_ref()
                    .clone(),
                Family::Proper => en
                    .proper_trees(spec.root_type, word.letters())
                    .as_ref()
                    .clone(),
                Family::Alternating => en.alternating_trees(spec.root_type, word.letters()),
                Family::Fern { .. } => {
                    return Err(Error::invalid("ferns are defined for labelled trees only"))
                }
            };
            Ok(Trees::Planar(trees))
        }
    }
}

pub fn final_trees(
    dim: usize,
    root: usize,
    alpha: &MultiIndex,
    m: usize,
    limits: &Limits,
) -> Result<Vec<LabelledTree>> {
    labelled(enumerate_trees(
        &TreeFamilySpec {
            family: Family::Final(m),
            root_type: root,
            leaves: LeafSpec::Labels(alpha.clone()),
            dim,
        },
        limits,
    )?)
}

pub fn proper_trees(
    dim: usize,
    root: usize,
    alpha: &MultiIndex,
    limits: &Limits,
) -> Result<Vec<LabelledTree>> {
    labelled(enumerate_trees(
        &TreeFamilySpec {
            family: Family::Proper,
            root_type: root,
            leaves: LeafSpec::Labels(alpha.clone()),
            dim,
        },
        limits,
    )?)
}

pub fn alternating_trees(
    dim: usize,
    root: usize,
    alpha: &MultiIndex,
    limits: &Limits,
) -> Result<Vec<LabelledTree>> {
    labelled(enumerate_trees(
        &TreeFamilySpec {
            family: Family::Alternating,
            root_type: root,
            leaves: LeafSpec::Labels(alpha.clone()),
            dim,
        },
        limits,
    )?)
}

pub fn planar_final_trees(
    dim: usize,
    root: usize,
    word: &Word,
    m: usize,
    limits: &Limits,
) -> Result<Vec<PlanarTree>> {
    planar(enumerate_trees(
        &TreeFamilySpec {
            family: Family::Final(m),
            root_type: root,
            leaves: LeafSpec::Word(word.clone()),
            dim,
        },
        limits,
    )?)
}

pub fn planar_proper_trees(
    dim: usize,
    root: usize,
    word: &Word,
    limits: &Limits,
) -> Result<Vec<PlanarTree>> {
    planar(enumerate_trees(
        &TreeFamilySpec {
            family: Family::Proper,
            root_type: root,
            leaves: LeafSpec::Word(word.clone()),
            dim,
        },
        limits,
    )?)
}

pub fn planar_alternating_trees(
    dim: usize,
    root: usize,
    word: &Word,
    limits: &Limits,
) -> Result<Vec<PlanarTree>> {
    planar(enumerate_trees(
        &TreeFamilySpec {
            family: Family::Alternating,
            root_type: root,
            leaves: LeafSpec::Word(word.clone()),
            dim,
        },
        limits,
    )?)
}

/// Proper trees whose internal vertices all have a child count accepted by `arity`.
pub fn proper_trees_with_arity(
    dim: usize,
    root: usize,
    alpha: &MultiIndex,
    arity: fn(usize) -> bool,
    limits: &Limits,
) -> Result<Vec<LabelledTree>> {
    if root >= dim {
        return Err(Error::invalid("root type must lie in [N]"));
    }
    check_dim(dim, alpha.dim())?;
    check_leaf_count(alpha.degree(), limits)?;
    let mut en = LabelledEnumerator::with_arity(dim, arity);
    Ok(en.proper_trees(root, &label_set(alpha)).as_ref().clone())
}

fn labelled(t: Trees) -> Result<Vec<LabelledTree>> {
    match t {
        Trees::Labelled(v) => Ok(v),
        Trees::Planar(_) => unreachable!("labelled spec yields labelled trees"),
    }
}

fn planar(t: Trees) -> Result<Vec<PlanarTree>> {
    match t {
        Trees::Planar(v) => Ok(v),
        Trees::Labelled(_) => unreachable!("planar spec yields planar trees"),
    }
}

pub fn labelled_to_json(t: &LabelledTree) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("type".into(), json!(t.ty() + 1));
    if let Some(l) = t.label() {
        obj.insert("label".into(), json!([l.component + 1, l.index]));
    }
    obj.insert(
        "children".into(),
        Value::Array(t.children().iter().map(labelled_to_json).collect()),
    );
    Value::Object(obj)
}

pub fn planar_to_json(t: &PlanarTree) -> Value {
    json!({
        "type": t.ty() + 1,
        "children": t.children().iter().map(planar_to_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests;
