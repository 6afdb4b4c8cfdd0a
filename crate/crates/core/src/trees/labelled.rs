//! Labelled rooted trees in canonical form, and enumeration of the final,
//! proper and alternating families.

use std::collections::HashMap;
use std::rc::Rc;

use crate::error::Result;
use crate::limits::Limits;
use crate::multi_index::{LabelSlot, MultiIndex};
use crate::partitions::for_each_partition;

/// A rooted tree with vertex types and leaf labels.
///
/// Children are kept sorted under the derived order, so two trees compare
/// equal exactly when they are isomorphic. A leaf normally carries a label
/// whose component equals its type; the only unlabelled leaf allowed is the
/// distinguished spine end of a fern.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelledTree {
    ty: usize,
    label: Option<LabelSlot>,
    children: Vec<LabelledTree>,
}

impl LabelledTree {
    pub fn leaf(slot: LabelSlot) -> Self {
        LabelledTree {
            ty: slot.component,
            label: Some(slot),
            children: Vec::new(),
        }
    }

    /// A leaf with a type but no label (fern spine end).
    pub fn bare_leaf(ty: usize) -> Self {
        LabelledTree {
            ty,
            label: None,
            children: Vec::new(),
        }
    }

    pub fn internal(ty: usize, mut children: Vec<LabelledTree>) -> Self {
        assert!(!children.is_empty(), "internal vertex needs a child");
        children.sort();
        LabelledTree {
            ty,
            label: None,
            children,
        }
    }

    pub fn ty(&self) -> usize {
        self.ty
    }

    pub fn label(&self) -> Option<LabelSlot> {
        self.label
    }

    pub fn children(&self) -> &[LabelledTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// `μ(v)`: child types counted as a multi-index.
    pub fn outdegree(&self, dim: usize) -> MultiIndex {
        let mut e = vec![0u32; dim];
        for c in &self.children {
            e[c.ty] += 1;
        }
        MultiIndex::new(e)
    }

    /// Labels of all leaves, sorted.
    pub fn leaf_labels(&self) -> Vec<LabelSlot> {
        let mut out = Vec::new();
        self.visit(&mut |v, _| {
            if let Some(l) = v.label {
                out.push(l);
            }
        });
        out.sort();
        out
    }

    pub fn vertex_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(|c| c.vertex_count())
            .sum::<usize>()
    }

    /// Pre-order walk passing each vertex with its generation.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a LabelledTree, usize)) {
        fn rec<'a>(t: &'a LabelledTree, g: usize, f: &mut impl FnMut(&'a LabelledTree, usize)) {
            f(t, g);
            for c in &t.children {
                rec(c, g + 1, f);
            }
        }
        rec(self, 0, f);
    }

    /// Applies `relabel` to every leaf label and re-canonicalizes.
    pub fn relabel(&self, relabel: &impl Fn(LabelSlot) -> LabelSlot) -> LabelledTree {
        if self.is_leaf() {
            return match self.label {
                Some(l) => LabelledTree::leaf(relabel(l)),
                None => self.clone(),
            };
        }
        LabelledTree::internal(
            self.ty,
            self.children.iter().map(|c| c.relabel(relabel)).collect(),
        )
    }
}

/// Byte key identifying the isomorphism class of `t`.
pub fn canonical_encode(t: &LabelledTree) -> Vec<u8> {
    fn rec(t: &LabelledTree, out: &mut Vec<u8>) {
        if t.is_leaf() {
            out.push(b'L');
            out.extend_from_slice(&(t.ty as u32).to_le_bytes());
            match t.label {
                Some(l) => {
                    out.extend_from_slice(&(l.component as u32).to_le_bytes());
                    out.extend_from_slice(&l.index.to_le_bytes());
                }
                None => out.push(b'-'),
            }
        } else {
            out.push(b'(');
            out.extend_from_slice(&(t.ty as u32).to_le_bytes());
            for c in &t.children {
                rec(c, out);
            }
            out.push(b')');
        }
    }
    let mut out = Vec::new();
    rec(t, &mut out);
    out
}

type Key = (usize, Vec<LabelSlot>, usize);

/// Memoized enumerator for one dimension.
pub(crate) struct LabelledEnumerator {
    dim: usize,
    final_memo: HashMap<Key, Rc<Vec<LabelledTree>>>,
    proper_memo: HashMap<(usize, Vec<LabelSlot>), Rc<Vec<LabelledTree>>>,
    arity: fn(usize) -> bool,
}

impl LabelledEnumerator {
    pub(crate) fn new(dim: usize) -> Self {
        LabelledEnumerator {
            dim,
            final_memo: HashMap::new(),
            proper_memo: HashMap::new(),
            arity: |_| true,
        }
    }

    /// Restricts proper trees to internal vertices whose child count passes `arity`.
    pub(crate) fn with_arity(dim: usize, arity: fn(usize) -> bool) -> Self {
        LabelledEnumerator {
            arity,
            ..Self::new(dim)
        }
    }

    /// `𝔽_{ty,S}(m)`: every leaf in generation `m`.
    pub(crate) fn final_trees(
        &mut self,
        ty: usize,
        slots: &[LabelSlot],
        m: usize,
    ) -> Rc<Vec<LabelledTree>> {
        let key = (ty, slots.to_vec(), m);
        if let Some(hit) = self.final_memo.get(&key) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if m == 0 {
            if let [s] = slots {
                if s.component == ty {
                    out.push(LabelledTree::leaf(*s));
                }
            }
        } else if !slots.is_empty() {
            for blocks in partitions_of(slots) {
                let options: Vec<Vec<LabelledTree>> = blocks
                    .iter()
                    .map(|b| {
                        (0..self.dim)
                            .flat_map(|t| self.final_trees(t, b, m - 1).as_ref().clone())
                            .collect()
                    })
                    .collect();
                extend_products(ty, &options, &mut out);
            }
        }
        out.sort();
        let out = Rc::new(out);
        self.final_memo.insert(key, out.clone());
        out
    }

    /// `𝕊_{ty,S}`: every internal vertex has at least two children.
    pub(crate) fn proper_trees(&mut self, ty: usize, slots: &[LabelSlot]) -> Rc<Vec<LabelledTree>> {
        let key = (ty, slots.to_vec());
        if let Some(hit) = self.proper_memo.get(&key) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if let [s] = slots {
            if s.component == ty {
                out.push(LabelledTree::leaf(*s));
            }
        } else if slots.len() >= 2 {
            for blocks in partitions_of(slots) {
                if blocks.len() < 2 || !(self.arity)(blocks.len()) {
                    continue;
                }
                let options: Vec<Vec<LabelledTree>> = blocks
                    .iter()
                    .map(|b| {
                        (0..self.dim)
                            .flat_map(|t| self.proper_trees(t, b).as_ref().clone())
                            .collect()
                    })
                    .collect();
                extend_products(ty, &options, &mut out);
            }
        }
        out.sort();
        let out = Rc::new(out);
        self.proper_memo.insert(key, out.clone());
        out
    }

    /// `𝔸_{ty,S}`, built as the union over `j` and `T ∈ 𝕊_{j,S}` of the
    /// expansion fibres `P⁻¹(T)`.
    pub(crate) fn alternating_trees(
        &mut self,
        ty: usize,
        slots: &[LabelSlot],
    ) -> Vec<LabelledTree> {
        let mut out = Vec::new();
        for j in 0..self.dim {
            for proper in self.proper_trees(j, slots).iter() {
                out.extend(expansion_fibre(self.dim, ty, proper));
            }
        }
        out.sort();
        out
    }
}

/// `P⁻¹(T)` for a proper tree `T`: a new even root of type `root_ty` above
/// `T`, and an even vertex of every possible type inserted above each
/// non-root vertex of `T`.
pub fn expansion_fibre(dim: usize, root_ty: usize, proper: &LabelledTree) -> Vec<LabelledTree> {
    fn odd(dim: usize, t: &LabelledTree) -> Vec<LabelledTree> {
        if t.is_leaf() {
            return vec![t.clone()];
        }
        let options: Vec<Vec<LabelledTree>> = t
            .children()
            .iter()
            .map(|c| {
                let below = odd(dim, c);
                (0..dim)
                    .flat_map(|e| {
                        below
                            .iter()
                            .map(move |b| LabelledTree::internal(e, vec![b.clone()]))
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        extend_products(t.ty(), &options, &mut out);
        out
    }
    odd(dim, proper)
        .into_iter()
        .map(|t| LabelledTree::internal(root_ty, vec![t]))
        .collect()
}

/// Collapse map `P`: drop the even generations of an alternating tree.
pub fn collapse_alternating(t: &LabelledTree) -> LabelledTree {
    fn odd(t: &LabelledTree) -> LabelledTree {
        if t.is_leaf() {
            return t.clone();
        }
        LabelledTree::internal(
            t.ty(),
            t.children()
                .iter()
                .map(|even| odd(&even.children()[0]))
                .collect(),
        )
    }
    odd(&t.children()[0])
}

pub(crate) fn partitions_of(slots: &[LabelSlot]) -> Vec<Vec<Vec<LabelSlot>>> {
    let mut out = Vec::new();
    for_each_partition(slots.len(), |rgs, nblocks| {
        let mut blocks = vec![Vec::new(); nblocks];
        for (s, &b) in slots.iter().zip(rgs) {
            blocks[b].push(*s);
        }
        out.push(blocks);
    });
    out
}

fn extend_products(ty: usize, options: &[Vec<LabelledTree>], out: &mut Vec<LabelledTree>) {
    if options.iter().any(|o| o.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; options.len()];
    loop {
        let children = idx
            .iter()
            .zip(options)
            .map(|(&k, o)| o[k].clone())
            .collect();
        out.push(LabelledTree::internal(ty, children));
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

pub(crate) fn check_leaf_count(n: usize, limits: &Limits) -> Result<()> {
    limits.check_leaves(n)?;
    limits.check_partition_ground(n)
}
