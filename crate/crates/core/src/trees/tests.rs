use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sums::{AlternatingSums, FinalSums, PlanarAlternatingSums, PlanarFinalSums};
use super::*;
use crate::matrix::Matrix;
use crate::multi_index::{enumerate_multi_indices, LabelSlot};
use crate::partitions::for_each_partition;
use crate::rational::{int, ratio, Rational};

fn lim() -> Limits {
    Limits::default()
}

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

fn leaf1(k: u32) -> LabelledTree {
    LabelledTree::leaf(LabelSlot::new(0, k))
}

fn fig1() -> LabelledTree {
    LabelledTree::internal(
        0,
        vec![
            LabelledTree::internal(0, vec![leaf1(5), leaf1(1), leaf1(2)]),
            LabelledTree::internal(0, vec![leaf1(3), leaf1(6)]),
            leaf1(4),
        ],
    )
}

/// `a_n = Σ_{π ∈ P_n, #π ≥ 2} ∏_B a_{|B|}`, integers only.
fn proper_count_oracle(n: usize) -> u64 {
    let mut a = vec![0u64, 1];
    for k in 2..=n {
        let mut total = 0u64;
        for_each_partition(k, |rgs, nb| {
            if nb < 2 {
                return;
            }
            let mut sizes = vec![0usize; nb];
            for &b in rgs {
                sizes[b] += 1;
            }
            total += sizes.iter().map(|&s| a[s]).product::<u64>();
        });
        a.push(total);
    }
    a[n]
}

fn bell(n: usize) -> usize {
    let mut c = 0;
    for_each_partition(n, |_, _| c += 1);
    c
}

fn random_weights(rng: &mut ChaCha8Rng, dim: usize, max_deg: usize) -> WeightTable {
    let mut w = WeightTable::new(dim);
    for ty in 0..dim {
        for mu in enumerate_multi_indices(dim, max_deg).unwrap() {
            w.insert(ty, mu, ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
        }
    }
    w
}

fn random_word_weights(rng: &mut ChaCha8Rng, dim: usize, max_len: usize) -> WordWeightTable {
    let mut w = WordWeightTable::new(dim);
    for ty in 0..dim {
        for word in Word::all_up_to(dim, max_len) {
            w.insert(ty, word, ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
        }
    }
    w
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> Matrix {
    let mut q = Matrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            q.set(i, j, ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
        }
    }
    q
}

#[test]
fn fig1_tree_is_proper_with_energy_h2_h3_squared() {
    let all = proper_trees(1, 0, &mi(&[6]), &lim()).unwrap();
    let t = fig1();
    assert!(all.contains(&t));
    let mut h = WeightTable::new(1);
    h.insert(0, mi(&[2]), int(5)).insert(0, mi(&[3]), int(2));
    assert_eq!(tree_energy(&t, &h).unwrap(), int(20));
}

#[test]
fn final_two_generation_counts_are_bell_numbers() {
    for k in 1..=6 {
        let n = final_trees(1, 0, &mi(&[k as u32]), 2, &lim())
            .unwrap()
            .len();
        assert_eq!(n, bell(k), "k = {k}");
    }
    assert_eq!(final_trees(1, 0, &mi(&[4]), 2, &lim()).unwrap().len(), 15);
}

#[test]
fn final_length_zero_is_a_bare_leaf_or_empty() {
    assert_eq!(final_trees(2, 1, &mi(&[0, 1]), 0, &lim()).unwrap().len(), 1);
    assert!(final_trees(2, 0, &mi(&[0, 1]), 0, &lim())
        .unwrap()
        .is_empty());
    assert!(final_trees(2, 0, &mi(&[2, 0]), 0, &lim())
        .unwrap()
        .is_empty());
}

#[test]
fn proper_single_leaf() {
    let t = proper_trees(1, 0, &mi(&[1]), &lim()).unwrap();
    assert_eq!(t, vec![leaf1(1)]);
    assert!(t[0].is_leaf());
}

#[test]
fn proper_counts_match_partition_recurrence() {
    let expected = [1u64, 1, 4, 26, 236, 2752];
    for k in 1..=6 {
        let n = proper_trees(1, 0, &mi(&[k as u32]), &lim()).unwrap().len() as u64;
        assert_eq!(n, proper_count_oracle(k));
        assert_eq!(n, expected[k - 1]);
    }
}

#[test]
fn enumerated_trees_are_distinct_proper_and_fully_labelled() {
    for alpha in [mi(&[2, 1]), mi(&[1, 1, 1]), mi(&[3, 1])] {
        let dim = alpha.dim();
        for root in 0..dim {
            let trees = proper_trees(dim, root, &alpha, &lim()).unwrap();
            let keys: BTreeSet<Vec<u8>> = trees.iter().map(canonical_encode).collect();
            assert_eq!(keys.len(), trees.len());
            for t in &trees {
                assert_eq!(t.ty(), root);
                assert_eq!(t.leaf_labels(), label_set(&alpha));
                t.visit(&mut |v, _| {
                    assert!(v.is_leaf() || v.children().len() >= 2);
                    if let Some(l) = v.label() {
                        assert_eq!(l.component, v.ty());
                    }
                });
            }
        }
    }
}

#[test]
fn relabelling_preserves_the_family() {
    let alpha = mi(&[2, 2]);
    let trees: BTreeSet<LabelledTree> = proper_trees(2, 0, &alpha, &lim())
        .unwrap()
        .into_iter()
        .collect();
    // swap the two slots of component 0, cycle nothing in component 1
    let swap = |s: LabelSlot| {
        if s.component == 0 {
            LabelSlot::new(0, 3 - s.index)
        } else {
            s
        }
    };
    let moved: BTreeSet<LabelledTree> = trees.iter().map(|t| t.relabel(&swap)).collect();
    assert_eq!(moved, trees);
}

#[test]
fn binary_trees_with_three_leaves() {
    let trees = proper_trees(1, 0, &mi(&[3]), &lim()).unwrap();
    let mut h = WeightTable::new(1);
    h.insert(0, mi(&[2]), int(1));
    let binary: Vec<_> = trees
        .iter()
        .filter(|t| {
            let mut ok = true;
            t.visit(&mut |v, _| ok &= v.is_leaf() || v.children().len() == 2);
            ok
        })
        .collect();
    assert_eq!(binary.len(), 3);
    for t in binary {
        assert_eq!(tree_energy(t, &h).unwrap(), int(1));
    }
}

#[test]
fn energy_of_leaf_is_one_and_missing_weights_are_reported() {
    let h = WeightTable::new(1);
    assert_eq!(tree_energy(&leaf1(1), &h).unwrap(), int(1));
    let err = tree_energy(&fig1(), &h).unwrap_err();
    assert_eq!(err.code(), "missing-weight");
    assert!(err.to_string().contains("type 1"));
}

#[test]
fn alternating_energy_examples() {
    let mut q = Matrix::zeros(2);
    q.set(0, 1, ratio(3, 7));
    let path = LabelledTree::internal(0, vec![LabelledTree::leaf(LabelSlot::new(1, 1))]);
    let h = WeightTable::new(2);
    assert_eq!(alt_tree_energy(&path, &h, &q).unwrap(), ratio(3, 7));

    // one odd vertex with two even children, each above a leaf
    let even = |k| LabelledTree::internal(0, vec![leaf1(k)]);
    let t = LabelledTree::internal(0, vec![LabelledTree::internal(0, vec![even(1), even(2)])]);
    let q = Matrix::from_rows(vec![vec![ratio(1, 2)]]);
    let mut h = WeightTable::new(1);
    h.insert(0, mi(&[2]), int(1));
    assert_eq!(alt_tree_energy(&t, &h, &q).unwrap(), ratio(1, 8));

    assert_eq!(
        alt_tree_energy(&fig1(), &h, &q).unwrap_err().code(),
        "invalid-argument"
    );
}

#[test]
fn identity_q_collapses_alternating_to_proper_energy() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = random_weights(&mut rng, 2, 4);
    let q = Matrix::identity(2);
    let alpha = mi(&[2, 1]);
    for root in 0..2 {
        let alt = alternating_trees(2, root, &alpha, &lim()).unwrap();
        let mut alt_total = Rational::zero();
        for t in &alt {
            assert!(is_alternating(t));
            alt_total += alt_tree_energy(t, &h, &q).unwrap();
        }
        let proper_total: Rational = proper_trees(2, root, &alpha, &lim())
            .unwrap()
            .iter()
            .map(|t| tree_energy(t, &h).unwrap())
            .sum();
        assert_eq!(alt_total, proper_total);
    }
}

#[test]
fn alternating_family_is_the_union_of_expansion_fibres() {
    let alpha = mi(&[1, 2]);
    let dim = 2;
    for root in 0..dim {
        let alt = alternating_trees(dim, root, &alpha, &lim()).unwrap();
        let keys: BTreeSet<_> = alt.iter().map(canonical_encode).collect();
        assert_eq!(keys.len(), alt.len());
        // |P⁻¹(T)| = N^{|V(T)| - 1}
        let mut expected = 0usize;
        for j in 0..dim {
            for t in proper_trees(dim, j, &alpha, &lim()).unwrap() {
                expected += dim.pow(t.vertex_count() as u32 - 1);
            }
        }
        assert_eq!(alt.len(), expected);
        for a in &alt {
            let collapsed = collapse_alternating(a);
            assert!(expansion_fibre(dim, root, &collapsed).contains(a));
        }
    }
}

#[test]
fn canonical_encoding_ignores_child_order_but_not_labels() {
    let a = LabelledTree::internal(0, vec![leaf1(1), leaf1(2)]);
    let b = LabelledTree::internal(0, vec![leaf1(2), leaf1(1)]);
    assert_eq!(canonical_encode(&a), canonical_encode(&b));
    assert_eq!(canonical_encode(&leaf1(1)), canonical_encode(&leaf1(1)));

    let swapped = fig1().relabel(&|s: LabelSlot| match s.index {
        1 => LabelSlot::new(0, 4),
        4 => LabelSlot::new(0, 1),
        _ => s,
    });
    assert_ne!(canonical_encode(&fig1()), canonical_encode(&swapped));
}

#[test]
fn planar_fig8_has_four_topologies() {
    let dim = 3;
    let word = Word::new(vec![2, 0, 0]);
    let trees = planar_final_trees(dim, 1, &word, 2, &lim()).unwrap();
    let shapes: BTreeSet<PlanarTree> = trees.iter().map(PlanarTree::topology).collect();
    assert_eq!(shapes.len(), 4);
    assert_eq!(trees.len(), dim + dim.pow(3) + 2 * dim.pow(2));
    for t in &trees {
        assert_eq!(t.leaf_word(), word);
        assert_eq!(t.ty(), 1);
    }
}

#[test]
fn planar_energy_examples() {
    let h = WordWeightTable::new(1);
    assert_eq!(planar_energy(&PlanarTree::leaf(0), &h).unwrap(), int(1));

    let v = PlanarTree::internal(
        2,
        vec![
            PlanarTree::leaf(2),
            PlanarTree::leaf(3),
            PlanarTree::leaf(0),
        ],
    );
    assert_eq!(v.free_outdegree(), Word::new(vec![2, 3, 0]));
    let mut h = WordWeightTable::new(4);
    h.insert(2, Word::new(vec![2, 3, 0]), int(7));
    assert_eq!(planar_energy(&v, &h).unwrap(), int(7));
}

fn catalan(n: usize) -> u64 {
    let mut c = vec![1u64];
    for k in 1..=n {
        c.push((0..k).map(|j| c[j] * c[k - 1 - j]).sum());
    }
    c[n]
}

#[test]
fn binary_planar_weights_give_catalan_numbers() {
    let mut h = WordWeightTable::new(1);
    for word in Word::all_up_to(1, 7) {
        let w = if word.len() == 2 { int(1) } else { int(0) };
        h.insert(0, word, w);
    }
    for k in 1..=7 {
        let word = Word::new(vec![0; k]);
        let total: Rational = planar_proper_trees(1, 0, &word, &lim())
            .unwrap()
            .iter()
            .map(|t| planar_energy(t, &h).unwrap())
            .sum();
        assert_eq!(
            total,
            Rational::from_integer(BigInt::from(catalan(k - 1))),
            "k = {k}"
        );
    }
}

#[test]
fn ferns_of_length_one_in_dimension_one_are_unique() {
    for k in 0..=5 {
        let ferns = enumerate_ferns(1, 0, &mi(&[k]), 0, 1, &lim()).unwrap();
        assert_eq!(ferns.len(), 1);
        assert_eq!(ferns[0].leaf_blocks()[0].len(), k as usize);
    }
}

#[test]
fn fern_energy_matches_tree_energy() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = random_weights(&mut rng, 2, 4);
    for f in enumerate_ferns(2, 0, &mi(&[1, 1]), 1, 2, &lim()).unwrap() {
        assert_eq!(
            f.energy(&h).unwrap(),
            tree_energy(&f.to_tree(), &h).unwrap()
        );
    }
    assert_eq!(
        enumerate_ferns(2, 0, &mi(&[1, 1]), 1, 3, &lim())
            .unwrap()
            .len(),
        4 * 9
    );
}

#[test]
fn energy_is_multiplicative_over_root_cuts() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let h = random_weights(&mut rng, 2, 4);
    for t in proper_trees(2, 1, &mi(&[2, 2]), &lim()).unwrap() {
        let parts: Rational = t
            .children()
            .iter()
            .map(|c| tree_energy(c, &h).unwrap())
            .product();
        let root = h.weight(t.ty(), &t.outdegree(2)).unwrap();
        assert_eq!(tree_energy(&t, &h).unwrap(), root * parts);
    }
}

#[test]
fn final_sums_agree_with_explicit_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in 1..=3 {
        let chain: Vec<WeightTable> = (0..m).map(|_| random_weights(&mut rng, 2, 4)).collect();
        let mut sums = FinalSums::new(&chain, &lim());
        for alpha in enumerate_multi_indices(2, 3).unwrap() {
            for root in 0..2 {
                let explicit: Rational = final_trees(2, root, &alpha, m, &lim())
                    .unwrap()
                    .iter()
                    .map(|t| final_tree_energy(t, &chain).unwrap())
                    .sum();
                assert_eq!(sums.sum(root, &alpha).unwrap(), explicit, "m={m} α={alpha}");
            }
        }
    }
}

#[test]
fn alternating_sums_agree_with_explicit_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let h = random_weights(&mut rng, 2, 3);
    let q = random_matrix(&mut rng, 2);
    let mut sums = AlternatingSums::new(&h, &q, &lim());
    for alpha in enumerate_multi_indices(2, 3)
        .unwrap()
        .into_iter()
        .filter(|a| a.degree() >= 1)
    {
        for root in 0..2 {
            let explicit: Rational = alternating_trees(2, root, &alpha, &lim())
                .unwrap()
                .iter()
                .map(|t| alt_tree_energy(t, &h, &q).unwrap())
                .sum();
            assert_eq!(sums.sum(root, &alpha).unwrap(), explicit, "α={alpha}");
        }
    }
}

#[test]
fn planar_sums_agree_with_explicit_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let chain: Vec<WordWeightTable> = (0..2)
        .map(|_| random_word_weights(&mut rng, 2, 3))
        .collect();
    let h = random_word_weights(&mut rng, 2, 3);
    let q = random_matrix(&mut rng, 2);
    let mut finals = PlanarFinalSums::new(&chain, &lim());
    let mut alts = PlanarAlternatingSums::new(&h, &q, &lim());
    for word in Word::all_up_to(2, 3).into_iter().filter(|w| !w.is_empty()) {
        for root in 0..2 {
            let explicit: Rational = planar_final_trees(2, root, &word, 2, &lim())
                .unwrap()
                .iter()
                .map(|t| planar_final_tree_energy(t, &chain).unwrap())
                .sum();
            assert_eq!(finals.sum(root, &word).unwrap(), explicit);
            let explicit: Rational = planar_alternating_trees(2, root, &word, &lim())
                .unwrap()
                .iter()
                .map(|t| planar_alt_energy(t, &h, &q).unwrap())
                .sum();
            assert_eq!(alts.sum(root, &word).unwrap(), explicit);
        }
    }
}

#[test]
fn caps_and_validation() {
    let err = proper_trees(1, 0, &mi(&[9]), &lim()).unwrap_err();
    assert!(err.is_resource_limit());
    assert_eq!(
        proper_trees(2, 2, &mi(&[1, 1]), &lim()).unwrap_err().code(),
        "invalid-argument"
    );
    let spec = TreeFamilySpec {
        family: Family::Fern {
            length: 1,
            terminal: 0,
        },
        root_type: 0,
        leaves: LeafSpec::Word(Word::new(vec![0])),
        dim: 1,
    };
    assert!(enumerate_trees(&spec, &lim()).is_err());
    assert!(enumerate_ferns(1, 0, &mi(&[1]), 0, 0, &lim()).is_err());
}

#[test]
fn json_shapes() {
    let j = labelled_to_json(&LabelledTree::internal(0, vec![leaf1(1)]));
    let want: serde_json::Value =
        serde_json::from_str(r#"{"type":1,"children":[{"type":1,"label":[1,1],"children":[]}]}"#)
            .unwrap();
    assert_eq!(j, want);
    let p = planar_to_json(&PlanarTree::internal(1, vec![PlanarTree::leaf(0)]));
    let want: serde_json::Value =
        serde_json::from_str(r#"{"type":2,"children":[{"type":1,"children":[]}]}"#).unwrap();
    assert_eq!(p, want);
    assert!(Rational::one() > Rational::zero());
}
