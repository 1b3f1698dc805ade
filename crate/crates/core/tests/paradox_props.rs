mod common;

use common::{shortlex_words, zigzag};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigid_paradox::paradox::ParadoxInstance;
use rigid_paradox::{Rank, RationalPoint, Sign, WordClass};

/// Rank-2 class letter of a raw word, straight from the four definitions.
fn oracle_class(raw: &[i32]) -> char {
    match raw.first() {
        None => 'D',
        Some(1) => 'A',
        Some(-1) => 'B',
        Some(-2) => 'D',
        Some(2) if raw.iter().all(|&l| l == 2) => 'D',
        Some(2) => 'C',
        _ => unreachable!(),
    }
}

#[test]
fn window_counts_match_oracle() {
    let inst = ParadoxInstance::new(Rank::Finite(2));
    let words = shortlex_words(2, 7);
    for (lo, hi) in [(-8, 8), (-100, 100), (-1000, 1000)] {
        let mut expected = [0u64; 4];
        for (position, raw) in words.iter().enumerate() {
            let n = zigzag(position);
            if (lo..=hi).contains(&n) {
                expected[(oracle_class(raw) as u8 - b'A') as usize] += 1;
            }
        }
        let report = inst.verify_partition(lo, hi, None).unwrap();
        let got: Vec<u64> = ["A", "B", "C", "D"].iter().map(|l| report.count(l).unwrap()).collect();
        assert_eq!(got, expected, "window {lo}..{hi}");
    }
}

#[test]
fn rank_two_partition_and_reassembly() {
    let inst = ParadoxInstance::new(Rank::Finite(2));
    let partition = inst.verify_partition(-10_000, 10_000, None).unwrap();
    assert!(partition.pass());
    assert_eq!(partition.counts.iter().map(|c| c.count).sum::<u64>(), 20_001);
    let reassembly = inst.verify_reassembly(-10_000, 10_000, &[1, 2]).unwrap();
    assert!(reassembly.pass());
    for pair in &reassembly.coverage {
        assert_eq!((pair.covered, pair.double_covered, pair.uncovered), (20_001, 0, 0));
    }
}

#[test]
fn higher_rank_partition_and_reassembly() {
    for k in [3u32, 5] {
        let inst = ParadoxInstance::new(Rank::Finite(k));
        assert!(inst.verify_partition(-2000, 2000, None).unwrap().pass());
        let pairs: Vec<u32> = (1..=k).collect();
        let r = inst.verify_reassembly(-2000, 2000, &pairs).unwrap();
        assert!(r.pass(), "k={k}: {:?}", &r.violations[..r.violations.len().min(5)]);
        assert!(r.coverage.iter().all(|c| c.covered == 4001));
    }
    let omega = ParadoxInstance::new(Rank::Omega);
    let partition = omega.verify_partition(-2000, 2000, Some(10)).unwrap();
    assert!(partition.pass());
    let counted: u64 =
        partition.counts.iter().map(|c| c.count).sum::<u64>() + partition.overflow.unwrap();
    assert_eq!(counted, 4001);
    let pairs: Vec<u32> = (1..=10).collect();
    assert!(omega.verify_reassembly(-2000, 2000, &pairs).unwrap().pass());
}

#[test]
fn pull_back_and_push_forward_agree() {
    let inst = ParadoxInstance::new(Rank::Finite(2));
    for j in [1, 2] {
        let pushed = inst.image_of_minus_side(j, -1000, 1000).unwrap();
        let sigma = inst.generator(j).unwrap();
        let minus = WordClass::new(j, Sign::Minus);
        let pulled: Vec<i64> = (-1000..=1000)
            .filter(|&n| inst.classify_interval(sigma.apply_inverse(n)) == minus)
            .collect();
        assert_eq!(pushed, pulled);
    }
}

#[test]
fn identity_sits_in_the_special_minus_side() {
    assert_eq!(
        ParadoxInstance::new(Rank::Finite(2)).classify_interval(0),
        WordClass::new(2, Sign::Minus)
    );
    assert_eq!(
        ParadoxInstance::new(Rank::Finite(4)).classify_interval(0),
        WordClass::new(4, Sign::Minus)
    );
    assert_eq!(
        ParadoxInstance::new(Rank::Omega).classify_interval(0),
        WordClass::new(1, Sign::Minus)
    );
}

#[test]
fn points_follow_their_interval() {
    let inst = ParadoxInstance::new(Rank::Finite(2));
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for _ in 0..10_000 {
        let x = RationalPoint::new(rng.gen_range(-1_000_000..=1_000_000), rng.gen_range(1..=997))
            .unwrap();
        assert_eq!(inst.classify_point(x), inst.classify_interval(x.floor()));
    }
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let inst = ParadoxInstance::new(Rank::Finite(3));
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = single.install(|| inst.verify_reassembly(-500, 500, &[1, 2, 3]).unwrap());
    let parallel = inst.verify_reassembly(-500, 500, &[1, 2, 3]).unwrap();
    assert_eq!(serial, parallel);
    let serial = single.install(|| inst.verify_partition(-500, 500, None).unwrap());
    assert_eq!(serial, inst.verify_partition(-500, 500, None).unwrap());
}

#[test]
fn measure_audit_doubles() {
    let inst = ParadoxInstance::new(Rank::Finite(2));
    let audit = inst.measure_audit(-100, 100, None).unwrap();
    assert!(audit.pass);
    assert_eq!(audit.window_size, 201);
    assert_eq!(audit.class_total, 201);
    assert_eq!(audit.coverage, vec![(1, 201), (2, 201)]);
}
