mod common;

use std::collections::HashMap;
use std::sync::Arc;

use common::{shortlex_words, to_word, weight_words, zigzag};
use rigid_paradox::{enumerate_words, Rank, TreePermutation, VertexLabeling, Word};

#[test]
fn labels_agree_with_oracle_positions() {
    let lab = VertexLabeling::new(Rank::Finite(2));
    for (position, raw) in shortlex_words(2, 7).iter().enumerate() {
        let word = to_word(raw);
        let label = zigzag(position);
        assert_eq!(lab.label_of_word(&word).unwrap(), label);
        assert_eq!(lab.word_of_label(label), word);
    }
    let omega = VertexLabeling::new(Rank::Omega);
    for (position, raw) in weight_words(13).iter().enumerate() {
        let word = to_word(raw);
        assert_eq!(omega.label_of_word(&word).unwrap(), zigzag(position));
    }
}

#[test]
fn frozen_label_examples() {
    let lab = VertexLabeling::new(Rank::Finite(2));
    let text = |n| lab.word_of_label(n).to_string();
    // Length-2 block at positions 5..16 maps to labels 3,-3,4,-4,...,8,-8.
    let block: Vec<String> =
        [3, -3, 4, -4, 5, -5, 6, -6, 7, -7, 8, -8].iter().map(|&n| text(n)).collect();
    assert_eq!(
        block,
        [
            "x1^2", "x1 x2", "x1 X2", "X1^2", "X1 x2", "X1 X2", "x2 x1", "x2 X1", "x2^2", "X2 x1",
            "X2 X1", "X2^2"
        ]
    );
}

#[test]
fn label_round_trips() {
    for rank in [Rank::Finite(2), Rank::Omega] {
        let lab = VertexLabeling::new(rank);
        for n in -100_000..=100_000 {
            assert_eq!(lab.label_of_word(&lab.word_of_label(n)).unwrap(), n);
        }
        for word in enumerate_words(rank, 100_000) {
            assert_eq!(lab.word_of_label(lab.label_of_word(&word).unwrap()), word);
        }
    }
}

#[test]
fn connecting_words_connect() {
    let lab = Arc::new(VertexLabeling::new(Rank::Finite(2)));
    for m in -200..=200 {
        for n in -200..=200 {
            let u = lab.connecting_word(m, n);
            assert_eq!(u.is_identity(), m == n);
            let perm = TreePermutation::new(u, lab.clone()).unwrap();
            assert_eq!(perm.apply(m), n, "{m} -> {n}");
        }
    }
}

#[test]
fn connecting_words_are_unique() {
    let lab = Arc::new(VertexLabeling::new(Rank::Finite(2)));
    let candidates: Vec<Word> = shortlex_words(2, 8).iter().map(|w| to_word(w)).collect();
    for m in -20..=20i64 {
        // Every candidate's image of m, grouped by target.
        let mut by_target: HashMap<i64, Vec<&Word>> = HashMap::new();
        for u in &candidates {
            let target = TreePermutation::new(u.clone(), lab.clone()).unwrap().apply(m);
            by_target.entry(target).or_default().push(u);
        }
        for n in -20..=20i64 {
            let u = lab.connecting_word(m, n);
            let bound = u.len() + 2;
            assert!(bound <= 8, "oracle list too short for {m} -> {n}");
            let hits: Vec<&&Word> = by_target
                .get(&n)
                .map(|v| v.iter().filter(|w| w.len() <= bound).collect())
                .unwrap_or_default();
            assert_eq!(hits.len(), 1, "{m} -> {n}: {hits:?}");
            assert_eq!(**hits[0], u);
        }
    }
}
