//! Ferns: a spine `v₀ … v_m` from the root with labelled leaves hanging off it.

use num_traits::One;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::multi_index::{count_slots, label_set, LabelSlot, MultiIndex};
use crate::rational::Rational;
use crate::trees::energy::{lookup, OutdegreeWeights};
use crate::trees::labelled::LabelledTree;

/// One fern with its spine kept explicit.
///
/// `spine_types[l]` is the type of `v_l`; `leaf_blocks[l]` holds the labels of
/// the leaves attached to `v_l` (for `l < m`). The terminal `v_m` is an
/// unlabelled leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fern {
    dim: usize,
    spine_types: Vec<usize>,
    leaf_blocks: Vec<Vec<LabelSlot>>,
}

impl Fern {
    pub fn length(&self) -> usize {
        self.leaf_blocks.len()
    }

    pub fn spine_types(&self) -> &[usize] {
        &self.spine_types
    }

    pub fn leaf_blocks(&self) -> &[Vec<LabelSlot>] {
        &self.leaf_blocks
    }

    pub fn to_tree(&self) -> LabelledTree {
        let m = self.length();
        let mut t = LabelledTree::bare_leaf(self.spine_types[m]);
        for l in (0..m).rev() {
            let mut children: Vec<LabelledTree> = self.leaf_blocks[l]
                .iter()
                .map(|&s| LabelledTree::leaf(s))
                .collect();
            children.push(t);
            t = LabelledTree::internal(self.spine_types[l], children);
        }
        t
    }

    /// `∏_l H_{k_{l-1}, e_{k_l} + #S_l}`.
    pub fn energy(&self, h: &impl OutdegreeWeights) -> Result<Rational> {
        let mut acc = Rational::one();
        for l in 0..self.length() {
            let mu = count_slots(self.dim, &self.leaf_blocks[l]).plus_unit(self.spine_types[l + 1]);
            acc *= lookup(h, self.spine_types[l], &mu)?;
        }
        Ok(acc)
    }
}

/// `Fern_{root,α,terminal}(m)`: all `N^{m-1} · m^{|α|}` ferns.
pub fn enumerate_ferns(
    dim: usize,
    root: usize,
    alpha: &MultiIndex,
    terminal: usize,
    m: usize,
    limits: &Limits,
) -> Result<Vec<Fern>> {
    if m == 0 {
        return Err(Error::invalid("fern length must be at least 1"));
    }
    if root >= dim || terminal >= dim {
        return Err(Error::invalid(
            "fern root and terminal types must lie in [N]",
        ));
    }
    let slots = label_set(alpha);
    limits.check_leaves(slots.len())?;
    let count = (dim as f64).powi(m as i32 - 1) * (m as f64).powi(slots.len() as i32);
    limits.check_cells(count.min(usize::MAX as f64) as usize)?;

    let mut out = Vec::new();
    let mut middle = vec![0usize; m - 1];
    loop {
        let mut spine = Vec::with_capacity(m + 1);
        spine.push(root);
        spine.extend_from_slice(&middle);
        spine.push(terminal);

        let mut assign = vec![0usize; slots.len()];
        loop {
            let mut blocks = vec![Vec::new(); m];
            for (s, &l) in slots.iter().zip(&assign) {
                blocks[l].push(*s);
            }
            out.push(Fern {
                dim,
                spine_types: spine.clone(),
                leaf_blocks: blocks,
            });
            if !odometer(&mut assign, m) {
                break;
            }
        }
        if !odometer(&mut middle, dim) {
            break;
        }
    }
    Ok(out)
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
