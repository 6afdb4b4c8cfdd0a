//! Planar (ranked) trees: the free-variable counterpart of labelled trees.

use std::collections::HashMap;
use std::rc::Rc;

use crate::partitions::for_each_composition;
use crate::word::Word;

/// Rooted tree whose children are ordered left to right.
///
/// Leaves carry only a type; reading the leaves left to right gives the leaf
/// word `κ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarTree {
    ty: usize,
    children: Vec<PlanarTree>,
}

impl PlanarTree {
    pub fn leaf(ty: usize) -> Self {
        PlanarTree {
            ty,
            children: Vec::new(),
        }
    }

    pub fn internal(ty: usize, children: Vec<PlanarTree>) -> Self {
        assert!(!children.is_empty(), "internal vertex needs a child");
        PlanarTree { ty, children }
    }

    pub fn ty(&self) -> usize {
        self.ty
    }

    pub fn children(&self) -> &[PlanarTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// `μ⃗(v)`: child types in rank order.
    pub fn free_outdegree(&self) -> Word {
        Word::new(self.children.iter().map(|c| c.ty).collect())
    }

    pub fn leaf_word(&self) -> Word {
        let mut w = Word::empty();
        self.visit(&mut |v, _| {
            if v.is_leaf() {
                w.push(v.ty);
            }
        });
        w
    }

    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a PlanarTree, usize)) {
        fn rec<'a>(t: &'a PlanarTree, g: usize, f: &mut impl FnMut(&'a PlanarTree, usize)) {
            f(t, g);
            for c in &t.children {
                rec(c, g + 1, f);
            }
        }
        rec(self, 0, f);
    }

    /// The bare shape: same tree with every type erased.
    pub fn topology(&self) -> PlanarTree {
        PlanarTree {
            ty: 0,
            children: self.children.iter().map(|c| c.topology()).collect(),
        }
    }
}

pub(crate) struct PlanarEnumerator {
    dim: usize,
    final_memo: HashMap<(usize, Vec<usize>, usize), Rc<Vec<PlanarTree>>>,
    proper_memo: HashMap<(usize, Vec<usize>), Rc<Vec<PlanarTree>>>,
}

impl PlanarEnumerator {
    pub(crate) fn new(dim: usize) -> Self {
        PlanarEnumerator {
            dim,
            final_memo: HashMap::new(),
            proper_memo: HashMap::new(),
        }
    }

    /// `𝔽⃗_{ty,κ}(m)`.
    pub(crate) fn final_trees(
        &mut self,
        ty: usize,
        word: &[usize],
        m: usize,
    ) -> Rc<Vec<PlanarTree>> {
        let key = (ty, word.to_vec(), m);
        if let Some(hit) = self.final_memo.get(&key) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if m == 0 {
            if word == [ty] {
                out.push(PlanarTree::leaf(ty));
            }
        } else if !word.is_empty() {
            for runs in compositions_of(word.len()) {
                let options: Vec<Vec<PlanarTree>> = runs
                    .iter()
                    .map(|&(a, b)| {
                        (0..self.dim)
                            .flat_map(|t| self.final_trees(t, &word[a..b], m - 1).as_ref().clone())
                            .collect()
                    })
                    .collect();
                extend_products(ty, &options, &mut out);
            }
        }
        let out = Rc::new(out);
        self.final_memo.insert(key, out.clone());
        out
    }

    /// `𝕊⃗_{ty,κ}`.
    pub(crate) fn proper_trees(&mut self, ty: usize, word: &[usize]) -> Rc<Vec<PlanarTree>> {
        let key = (ty, word.to_vec());
        if let Some(hit) = self.proper_memo.get(&key) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if word.len() == 1 {
            if word[0] == ty {
                out.push(PlanarTree::leaf(ty));
            }
        } else if word.len() >= 2 {
            for runs in compositions_of(word.len()) {
                if runs.len() < 2 {
                    continue;
                }
                let options: Vec<Vec<PlanarTree>> = runs
                    .iter()
                    .map(|&(a, b)| {
                        (0..self.dim)
                            .flat_map(|t| self.proper_trees(t, &word[a..b]).as_ref().clone())
                            .collect()
                    })
                    .collect();
                extend_products(ty, &options, &mut out);
            }
        }
        let out = Rc::new(out);
        self.proper_memo.insert(key, out.clone());
        out
    }

    /// `𝔸⃗_{ty,κ}` via the expansion fibres of planar proper trees.
    pub(crate) fn alternating_trees(&mut self, ty: usize, word: &[usize]) -> Vec<PlanarTree> {
        let mut out = Vec::new();
        for j in 0..self.dim {
            for proper in self.proper_trees(j, word).iter() {
                out.extend(planar_expansion_fibre(self.dim, ty, proper));
            }
        }
        out
    }
}

pub fn planar_expansion_fibre(dim: usize, root_ty: usize, proper: &PlanarTree) -> Vec<PlanarTree> {
    fn odd(dim: usize, t: &PlanarTree) -> Vec<PlanarTree> {
        if t.is_leaf() {
            return vec![t.clone()];
        }
        let options: Vec<Vec<PlanarTree>> = t
            .children()
            .iter()
            .map(|c| {
                let below = odd(dim, c);
                (0..dim)
                    .flat_map(|e| {
                        below
                            .iter()
                            .map(move |b| PlanarTree::internal(e, vec![b.clone()]))
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
        .map(|t| PlanarTree::internal(root_ty, vec![t]))
        .collect()
}

/// Consecutive runs `(start, end)` for every composition of `0..n`.
pub(crate) fn compositions_of(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for_each_composition(n, |cuts| {
        out.push(cuts.windows(2).map(|w| (w[0], w[1])).collect());
    });
    out
}

fn extend_products(ty: usize, options: &[Vec<PlanarTree>], out: &mut Vec<PlanarTree>) {
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
        out.push(PlanarTree::internal(ty, children));
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
