//! Set partitions of small finite ground sets.

use crate::error::Result;
use crate::limits::Limits;

/// A partition of a ground set into non-empty blocks, blocks ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition<T> {
    pub blocks: Vec<Vec<T>>,
}

impl<T> SetPartition<T> {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Every set partition of `ground`, each exactly once.
///
/// `ground` is taken in the given order; pass it sorted to get blocks sorted by
/// least element. Fails with a resource-limit error above
/// `limits.max_partition_ground` elements.
pub fn enumerate_set_partitions<T: Clone>(
    ground: &[T],
    limits: &Limits,
) -> Result<Vec<SetPartition<T>>> {
    limits.check_partition_ground(ground.len())?;
    let mut out = Vec::new();
    for_each_partition(ground.len(), |rgs, blocks| {
        let mut parts: Vec<Vec<T>> = vec![Vec::new(); blocks];
        for (x, &b) in ground.iter().zip(rgs) {
            parts[b].push(x.clone());
        }
        out.push(SetPartition { blocks: parts });
    });
    Ok(out)
}

/// Visits every restricted growth string of length `n` with its block count.
///
/// Element `k` belongs to block `rgs[k]`; blocks are numbered by first appearance.
pub(crate) fn for_each_partition(n: usize, mut visit: impl FnMut(&[usize], usize)) {
    fn rec(
        k: usize,
        n: usize,
        blocks: usize,
        rgs: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize], usize),
    ) {
        if k == n {
            visit(rgs, blocks);
            return;
        }
        for b in 0..=blocks {
            rgs.push(b);
            rec(k + 1, n, blocks.max(b + 1), rgs, visit);
            rgs.pop();
        }
    }
    rec(0, n, 0, &mut Vec::with_capacity(n), &mut visit);
}

/// Visits every ordered composition of `0..n` into consecutive non-empty runs,
/// passing the run boundaries `[0, c1, c2, ..., n]`.
pub(crate) fn for_each_composition(n: usize, mut visit: impl FnMut(&[usize])) {
    if n == 0 {
        visit(&[0]);
        return;
    }
    let mut cuts = Vec::with_capacity(n + 1);
    for mask in 0u64..(1u64 << (n - 1)) {
        cuts.clear();
        cuts.push(0);
        for k in 1..n {
            if mask & (1 << (k - 1)) != 0 {
                cuts.push(k);
            }
        }
        cuts.push(n);
        visit(&cuts);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn bell_by_recurrence(n: usize) -> BigUint {
        let mut bell = vec![BigUint::from(1u32)];
        for m in 0..n {
            let mut next = BigUint::from(0u32);
            let mut binom = BigUint::from(1u32);
            for k in 0..=m {
                next += &binom * &bell[k];
                binom = binom * (m - k) / (k + 1);
            }
            bell.push(next);
        }
        bell[n].clone()
    }

    #[test]
    fn small_examples() {
        let empty: Vec<u8> = vec![];
        let p = enumerate_set_partitions(&empty, &Limits::default()).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p[0].is_empty());

        let p = enumerate_set_partitions(&[1, 2], &Limits::default()).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.contains(&SetPartition {
            blocks: vec![vec![1, 2]]
        }));
        assert!(p.contains(&SetPartition {
            blocks: vec![vec![1], vec![2]]
        }));
    }

    #[test]
    fn counts_match_bell_recurrence() {
        for n in 0..=8 {
            let ground: Vec<usize> = (0..n).collect();
            let p = enumerate_set_partitions(&ground, &Limits::default()).unwrap();
            assert_eq!(BigUint::from(p.len()), bell_by_recurrence(n));
        }
        let five: Vec<usize> = (0..5).collect();
        assert_eq!(
            enumerate_set_partitions(&five, &Limits::default())
                .unwrap()
                .len(),
            52
        );
    }

    #[test]
    fn blocks_are_disjoint_covering_and_canonical() {
        let ground: Vec<usize> = (0..6).collect();
        let parts = enumerate_set_partitions(&ground, &Limits::default()).unwrap();
        let mut seen = std::collections::HashSet::new();
        for p in &parts {
            let mut all: Vec<usize> = p.blocks.iter().flatten().copied().collect();
            all.sort();
            assert_eq!(all, ground);
            assert!(p.blocks.iter().all(|b| !b.is_empty()));
            assert!(p.blocks.windows(2).all(|w| w[0][0] < w[1][0]));
            assert!(seen.insert(p.clone()));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let ground: Vec<usize> = (0..13).collect();
        let err = enumerate_set_partitions(&ground, &Limits::default()).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn compositions_count() {
        let mut count = 0;
        for_each_composition(5, |cuts| {
            assert_eq!(cuts[0], 0);
            assert_eq!(*cuts.last().unwrap(), 5);
            count += 1;
        });
        assert_eq!(count, 16);
    }
}
