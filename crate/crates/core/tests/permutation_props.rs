mod common;

use std::sync::Arc;

use common::{shortlex_words, to_word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigid_paradox::{Letter, Rank, Sign, TreePermutation, VertexLabeling, Word};

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::reduce((0..len).map(|_| {
        let index = rng.gen_range(1..=2);
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        Letter::new(index, sign).unwrap()
    }))
}

#[test]
fn word_action_is_a_homomorphism() {
    let lab = Arc::new(VertexLabeling::new(Rank::Finite(2)));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let u = TreePermutation::new(random_word(&mut rng, 10), lab.clone()).unwrap();
        let v = TreePermutation::new(random_word(&mut rng, 10), lab.clone()).unwrap();
        let uv = u.compose(&v).unwrap();
        assert_eq!(uv.word(), &u.word().mul(v.word()));
        for _ in 0..50 {
            let n = rng.gen_range(-10_000..=10_000);
            assert_eq!(uv.apply(n), u.apply(v.apply(n)));
        }
    }
}

#[test]
fn short_words_have_no_fixed_points() {
    // The full length-8 sweep lives in the acceptance suite.
    let lab = Arc::new(VertexLabeling::new(Rank::Finite(2)));
    for raw in shortlex_words(2, 5).iter().skip(1) {
        let p = TreePermutation::new(to_word(raw), lab.clone()).unwrap();
        for n in -500..=500 {
            assert_ne!(p.apply(n), n, "{} fixes {n}", p.word());
        }
    }
}

#[test]
fn single_steps_change_length_by_one() {
    let lab = Arc::new(VertexLabeling::new(Rank::Finite(2)));
    for letter in [Letter::gen(1), Letter::gen_inv(1), Letter::gen(2), Letter::gen_inv(2)] {
        let p = TreePermutation::new(Word::letter(letter), lab.clone()).unwrap();
        for n in -1000..=1000 {
            let before = lab.word_of_label(n).len() as i64;
            let after = lab.word_of_label(p.apply(n)).len() as i64;
            assert_eq!((after - before).abs(), 1);
        }
    }
}

#[test]
fn higher_rank_actions_are_fixed_point_free() {
    for (rank, max_index) in [(Rank::Finite(3), 3), (Rank::Finite(5), 5), (Rank::Omega, 12)] {
        let lab = Arc::new(VertexLabeling::new(rank));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let len = rng.gen_range(1..=6);
            let word = Word::reduce((0..len).map(|_| {
                let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                Letter::new(rng.gen_range(1..=max_index), sign).unwrap()
            }));
            if word.is_identity() {
                continue;
            }
            let p = TreePermutation::new(word, lab.clone()).unwrap();
            assert!((-300..=300).all(|n| p.apply(n) != n));
        }
    }
}
