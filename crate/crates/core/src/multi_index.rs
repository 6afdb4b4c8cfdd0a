//! Multi-indices, the label sets `[α]`, and factorial/binomial helpers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector `α ∈ ℤ≥0^N`.
///
/// Ordered graded-lexicographically: by total degree, then by exponents with
/// earlier variables ranking first, so `(1,0)` precedes `(0,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The basis vector `e_i` (0-based `i`).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// `Some(i)` when this is `e_i`.
    pub fn as_unit(&self) -> Option<usize> {
        if self.degree() == 1 {
            self.0.iter().position(|&a| a == 1)
        } else {
            None
        }
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn plus_unit(&self, i: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[i] += 1;
        MultiIndex(e)
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Every `β ≤ α` componentwise, in no particular order.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::with_capacity(self.dim())];
        for &a in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=a).map(move |b| {
                        let mut p = prefix.clone();
                        p.push(b);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `α! = ∏ αᵢ!`.
pub fn mi_factorial(alpha: &MultiIndex) -> BigInt {
    alpha
        .exponents()
        .iter()
        .fold(BigInt::one(), |acc, &a| acc * factorial(a))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// `C(α, β) = ∏ C(αᵢ, βᵢ)`.
pub fn mi_binomial(alpha: &MultiIndex, beta: &MultiIndex) -> BigInt {
    alpha
        .exponents()
        .iter()
        .zip(beta.exponents())
        .fold(BigInt::one(), |acc, (&a, &b)| acc * binomial(a, b))
}

/// All `α` of dimension `dim` with `|α| ≤ max_degree`, in graded-lex order.
pub fn enumerate_multi_indices(dim: usize, max_degree: usize) -> Result<Vec<MultiIndex>> {
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    let mut out = Vec::new();
    for d in 0..=max_degree {
        out.extend(multi_indices_of_degree(dim, d));
    }
    Ok(out)
}

/// All `α` with `|α| = degree`, in graded-lex order.
pub fn multi_indices_of_degree(dim: usize, degree: usize) -> Vec<MultiIndex> {
    fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == dim {
            prefix.push(left);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            rec(dim, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim > 0 {
        rec(dim, degree as u32, &mut Vec::with_capacity(dim), &mut out);
    }
    out
}

/// Element `(i, a)` of the label set `[α]`; `component` is 0-based, `index` starts at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelSlot {
    pub component: usize,
    pub index: u32,
}

impl LabelSlot {
    pub fn new(component: usize, index: u32) -> Self {
        LabelSlot { component, index }
    }
}

/// `[α] = {(i,a) : 1 ≤ a ≤ αᵢ}` in sorted order.
pub fn label_set(alpha: &MultiIndex) -> Vec<LabelSlot> {
    alpha
        .exponents()
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| (1..=a).map(move |k| LabelSlot::new(i, k)))
        .collect()
}

/// `#S`: per-component counts of a slot set.
pub fn count_slots<'a>(dim: usize, slots: impl IntoIterator<Item = &'a LabelSlot>) -> MultiIndex {
    let mut e = vec![0; dim];
    for s in slots {
        e[s.component] += 1;
    }
    MultiIndex(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(mi_factorial(&mi(&[0, 0, 0])), BigInt::from(1));
        assert_eq!(mi_factorial(&mi(&[2, 1])), BigInt::from(2));
        assert_eq!(mi_factorial(&mi(&[3, 0, 2])), BigInt::from(12));
        for i in 0..4 {
            assert_eq!(mi_factorial(&MultiIndex::unit(4, i)), BigInt::from(1));
        }
    }

    #[test]
    fn enumeration_order_and_count() {
        assert_eq!(
            enumerate_multi_indices(1, 3).unwrap(),
            vec![mi(&[0]), mi(&[1]), mi(&[2]), mi(&[3])]
        );
        assert_eq!(
            enumerate_multi_indices(2, 1).unwrap(),
            vec![mi(&[0, 0]), mi(&[1, 0]), mi(&[0, 1])]
        );
        assert_eq!(enumerate_multi_indices(3, 4).unwrap().len(), 35);
        assert!(enumerate_multi_indices(0, 2).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        for dim in 1..=3 {
            for d in 0..=5 {
                let all = enumerate_multi_indices(dim, d).unwrap();
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                // brute force over the box [0, d]^dim
                let brute = (0..(d + 1).pow(dim as u32))
                    .map(|mut code| {
                        let mut e = Vec::new();
                        for _ in 0..dim {
                            e.push((code % (d + 1)) as u32);
                            code /= d + 1;
                        }
                        mi(&e)
                    })
                    .filter(|a| a.degree() <= d)
                    .count();
                assert_eq!(all.len(), brute);
            }
        }
    }

    #[test]
    fn label_set_counts_back() {
        let a = mi(&[2, 0, 3]);
        let s = label_set(&a);
        assert_eq!(s.len(), 5);
        assert_eq!(count_slots(3, &s), a);
    }

    #[test]
    fn sub_indices_cover_box() {
        let a = mi(&[2, 1]);
        let subs = a.sub_indices();
        assert_eq!(subs.len(), 6);
        assert!(subs.iter().all(|b| b.divides(&a)));
        assert_eq!(mi_binomial(&a, &mi(&[1, 1])), BigInt::from(2));
    }
}
