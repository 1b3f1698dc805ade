use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigid_paradox::{
    CyclePermutation, Letter, PiecewiseRigidMap, Rank, RationalPoint, Sign, TreePermutation,
    VertexLabeling, Word,
};

fn random_tree_map(rng: &mut ChaCha8Rng, lab: &Arc<VertexLabeling>) -> PiecewiseRigidMap {
    let len = rng.gen_range(0..=8);
    let word = Word::reduce((0..len).map(|_| {
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        Letter::new(rng.gen_range(1..=2), sign).unwrap()
    }));
    PiecewiseRigidMap::from_permutation(TreePermutation::new(word, lab.clone()).unwrap())
}

fn random_point(rng: &mut ChaCha8Rng) -> RationalPoint {
    let d = rng.gen_range(1..=500);
    RationalPoint::new(rng.gen_range(-50_000..=50_000), d).unwrap()
}

#[test]
fn composition_collapses_consistently() {
    let lab = Arc::new(VertexLabeling::new(Rank::Finite(2)));
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let f = random_tree_map(&mut rng, &lab);
        let g = random_tree_map(&mut rng, &lab);
        let fg = f.compose(&g).unwrap();
        assert!(fg.collapsed().is_some());
        let back = f.compose(&f.inverse()).unwrap();
        for _ in 0..100 {
            let x = random_point(&mut rng);
            assert_eq!(fg.eval(x), fg.eval_formal(x));
            assert_eq!(fg.eval(x), f.eval(g.eval(x)));
            assert_eq!(back.eval(x), x);
            assert_eq!(fg.eval_inverse(fg.eval(x)), x);
        }
    }
}

#[test]
fn pieces_preserve_measure() {
    let lab = Arc::new(VertexLabeling::new(Rank::Finite(2)));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut maps =
        vec![PiecewiseRigidMap::from_permutation("(012534)".parse::<CyclePermutation>().unwrap())];
    maps.extend((0..20).map(|_| random_tree_map(&mut rng, &lab)));
    for f in &maps {
        let pieces = f.pieces_in_window(-300, 300);
        assert_eq!(pieces.len(), 600);
        let mut images: Vec<i64> = pieces.iter().map(|p| p.image_start()).collect();
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), 600, "piece images overlap");
        for p in &pieces {
            assert_eq!(p.slope(), 1);
            let x0 = RationalPoint::integer(p.start);
            let x1 = x0 + RationalPoint::new(999, 1000).unwrap();
            assert_eq!(f.eval(x1) - f.eval(x0), x1 - x0);
        }
    }
}

proptest! {
    #[test]
    fn fractional_part_is_preserved(num in -1_000_000i64..1_000_000, den in 1i64..10_000, word in prop::collection::vec(0u8..4, 0..8)) {
        let lab = Arc::new(VertexLabeling::new(Rank::Finite(2)));
        let word = Word::reduce(word.into_iter().map(|c| {
            let sign = if c % 2 == 0 { Sign::Plus } else { Sign::Minus };
            Letter::new(u32::from(c / 2) + 1, sign).unwrap()
        }));
        let f = PiecewiseRigidMap::from_permutation(TreePermutation::new(word, lab).unwrap());
        let x = RationalPoint::new(num, den).unwrap();
        prop_assert_eq!(f.eval(x).fract(), x.fract());
        prop_assert_eq!(f.eval_inverse(f.eval(x)), x);
    }
}
