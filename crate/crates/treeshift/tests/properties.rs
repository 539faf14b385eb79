//! Property tests for the core value types: serialization, shifts, tree
//! growth and Moore expansions.

use std::collections::BTreeMap;

use proptest::prelude::*;

use treeshift::alphabet::{Alphabet, Arity, Letter};
use treeshift::moore::MooreColoring;
use treeshift::pattern::Pattern;
use treeshift::tree::{FullTree, Word};

fn alpha() -> Alphabet {
    Alphabet::new(["0", "1"]).unwrap()
}

fn k2() -> Arity {
    Arity::new(2).unwrap()
}

/// Full-tree-patterns over two letters with height at most four.
fn full_tree_pattern() -> impl Strategy<Value = Pattern> {
    let leaf = (0usize..2).prop_map(|l| Pattern::single(k2(), Letter(l)));
    leaf.prop_recursive(3, 64, 2, |inner| {
        ((0usize..2), inner.clone(), inner).prop_map(|(l, left, right)| {
            let mut labels = BTreeMap::new();
            labels.insert(Word::root(), Letter(l));
            for (d, child) in [left, right].iter().enumerate() {
                let prefix = Word::root().child(d as u8);
                for (w, letter) in child.labels() {
                    labels.insert(prefix.concat(w), letter);
                }
            }
            Pattern::new(k2(), labels).unwrap()
        })
    })
}

/// General subtree patterns: a full-tree-pattern with some leaves pruned.
fn subtree_pattern() -> impl Strategy<Value = Pattern> {
    (full_tree_pattern(), any::<u64>()).prop_map(|(p, seed)| {
        let mut labels: BTreeMap<Word, Letter> =
            p.labels().map(|(w, l)| (w.clone(), l)).collect();
        let words: Vec<Word> = labels.keys().cloned().collect();
        let mut bits = seed;
        for w in words.iter().rev() {
            if w.is_root() {
                continue;
            }
            let keep = bits & 1 == 1;
            bits >>= 1;
            // drop only current leaves so the support stays prefix-closed
            let is_leaf = (0..2).all(|d| !labels.contains_key(&w.child(d)));
            if !keep && is_leaf {
                labels.remove(w);
            }
        }
        Pattern::new(k2(), labels).unwrap()
    })
}

fn moore_machine() -> impl Strategy<Value = MooreColoring> {
    (1usize..=3).prop_flat_map(|n| {
        (
            proptest::collection::vec((0..n, 0..n), n),
            proptest::collection::vec(0usize..2, n),
            0..n,
        )
            .prop_map(move |(steps, outs, start)| {
                let names = (0..n).map(|i| format!("q{i}")).collect();
                let step = steps.into_iter().map(|(a, b)| vec![a, b]).collect();
                let output = outs.into_iter().map(Letter).collect();
                MooreColoring::new(k2(), names, start, step, output).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn serialization_round_trips(p in full_tree_pattern()) {
        let term = p.to_term(&alpha());
        let back = Pattern::parse_term(&term, &alpha(), k2()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn canonical_order_matches_serialization_order_on_common_support(
        a in full_tree_pattern(),
        b in full_tree_pattern(),
    ) {
        // on a common support the first difference is a letter against a
        // letter, so the canonical order is plain lexicographic order of
        // the serialized terms
        if a.support() == b.support() {
            let (sa, sb) = (a.to_term(&alpha()), b.to_term(&alpha()));
            prop_assert_eq!(a.cmp(&b), sa.cmp(&sb));
        }
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        prop_assert_eq!(a.cmp(&b) == std::cmp::Ordering::Equal, a == b);
    }

    #[test]
    fn shifts_compose(p in subtree_pattern()) {
        let words: Vec<Word> = p.labels().map(|(w, _)| w.clone()).collect();
        for w in &words {
            let shifted = p.subtree_shift(w).unwrap();
            for u in shifted.labels().map(|(u, _)| u.clone()).collect::<Vec<_>>() {
                let twice = shifted.subtree_shift(&u).unwrap();
                let direct = p.subtree_shift(&w.concat(&u)).unwrap();
                prop_assert_eq!(twice, direct);
            }
        }
    }

    #[test]
    fn plus_is_full_and_one_taller(p in subtree_pattern()) {
        let support = p.support();
        let plus = support.plus();
        prop_assert!(plus.is_full());
        prop_assert_eq!(plus.height(), support.height() + 1);
        for w in support.vertices() {
            prop_assert!(plus.contains(w));
        }
    }

    #[test]
    fn moore_expansions_are_consistent(m in moore_machine(), n in 1usize..=4) {
        let deep = m.expand_delta(n).unwrap();
        for d in 1..=n {
            prop_assert_eq!(deep.restrict_delta(d).unwrap(), m.expand_delta(d).unwrap());
        }
        prop_assert_eq!(deep.block_size(), Some(n));
        let tree = FullTree::delta(k2(), n).unwrap();
        prop_assert_eq!(m.expand(&tree).unwrap(), deep);
    }
}
