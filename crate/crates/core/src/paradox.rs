//! The paradoxical decomposition of the line.
//!
//! Unit interval `[n, n+1)` is the image of `[0, 1)` under the tree map of
//! `word_of_label(n)`, so it inherits that word's class. For each pair `j`
//! the plus side `A_j` and the image `f_j(B_j)` of the minus side tile the
//! line; with `k = 2` these are `A ⊔ g(B)` and `C ⊔ h(D)`.
//!
//! All checks are quantified over a window `lo..=hi` of interval indices.
//! Windows with `lo > hi` are treated as empty.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freegroup::{classify_word, word_in_class, Letter, Rank, Sign, Word, WordClass};
use crate::labeling::VertexLabeling;
use crate::permutation::TreePermutation;
use crate::rigid::{PiecewiseRigidMap, RationalPoint};

/// Default cap on the number of words `certify_free_action` will enumerate.
pub const DEFAULT_WORD_BUDGET: u128 = 2_000_000;

#[derive(Clone, Debug)]
pub struct ParadoxInstance {
    rank: Rank,
    labeling: Arc<VertexLabeling>,
}

impl ParadoxInstance {
    pub fn new(rank: Rank) -> ParadoxInstance {
        ParadoxInstance { rank, labeling: Arc::new(VertexLabeling::new(rank)) }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn labeling(&self) -> &Arc<VertexLabeling> {
        &self.labeling
    }

    pub fn special_index(&self) -> u32 {
        self.rank.special_index()
    }

    /// The tree permutation of generator `x_j`.
    pub fn generator(&self, j: u32) -> Result<TreePermutation> {
        self.rank.check_pair(j)?;
        TreePermutation::new(Word::letter(Letter::gen(j)), self.labeling.clone())
    }

    /// The piecewise rigid map `f_j`.
    pub fn generator_map(&self, j: u32) -> Result<PiecewiseRigidMap> {
        Ok(PiecewiseRigidMap::from_permutation(self.generator(j)?))
    }

    pub fn label(&self, class: WordClass) -> String {
        class.label(self.rank)
    }

    pub fn classify_interval(&self, n: i64) -> WordClass {
        classify_word(&self.labeling.word_of_label(n), self.rank)
            .expect("labeling words are valid for the rank")
    }

    pub fn classify_point(&self, x: RationalPoint) -> WordClass {
        self.classify_interval(x.floor())
    }

    /// Pairs checked by window verification: all of them for finite rank,
    /// `1..=limit` for countable rank.
    pub fn checked_pairs(&self, pair_limit: Option<u32>) -> Result<Vec<u32>> {
        match (self.rank, pair_limit) {
            (Rank::Finite(k), None) => Ok((1..=k).collect()),
            (Rank::Finite(k), Some(j)) => Ok((1..=j.min(k)).collect()),
            (Rank::Omega, Some(j)) if j >= 1 => Ok((1..=j).collect()),
            (Rank::Omega, _) => {
                Err(Error::Context("countable rank requires a pair limit of at least 1".into()))
            }
        }
    }

    /// Checks that every interval in the window lies in exactly one class.
    /// Membership is tested per class with [`word_in_class`]; for countable
    /// rank, pairs above `pair_limit` are tallied together as overflow.
    pub fn verify_partition(
        &self,
        lo: i64,
        hi: i64,
        pair_limit: Option<u32>,
    ) -> Result<PartitionReport> {
        let pairs = self.checked_pairs(pair_limit)?;
        let limit = *pairs.last().expect("at least one pair");
        let classes: Vec<WordClass> = pairs
            .iter()
            .flat_map(|&j| [WordClass::new(j, Sign::Plus), WordClass::new(j, Sign::Minus)])
            .collect();

        let rows: Vec<(i64, std::result::Result<Option<WordClass>, String>)> = window(lo, hi)
            .into_par_iter()
            .map(|n| {
                let word = self.labeling.word_of_label(n);
                let claimed: Vec<WordClass> = classes
                    .iter()
                    .copied()
                    .filter(|&c| word_in_class(&word, c, self.rank))
                    .collect();
                let beyond = word.first().is_some_and(|l| l.index() > limit);
                let result = match (claimed.as_slice(), beyond) {
                    ([class], false) => {
                        if classify_word(&word, self.rank).ok() == Some(*class) {
                            Ok(Some(*class))
                        } else {
                            Err(format!("classify_word disagrees with membership {class:?}"))
                        }
                    }
                    ([], true) => Ok(None),
                    ([], false) => Err("in no class".to_string()),
                    _ => Err(format!("in {} classes", claimed.len() + usize::from(beyond))),
                };
                let result = result.and_then(|c| match self.labeling.label_of_word(&word) {
                    Ok(back) if back == n => Ok(c),
                    _ => Err("label round trip failed".to_string()),
                });
                (n, result)
            })
            .collect();

        let mut counts: BTreeMap<WordClass, u64> = classes.iter().map(|&c| (c, 0)).collect();
        let mut overflow = 0;
        let mut violations = Vec::new();
        for (n, result) in rows {
            match result {
                Ok(Some(class)) => *counts.get_mut(&class).expect("class tracked") += 1,
                Ok(None) => overflow += 1,
                Err(reason) => violations.push(Violation { pair: None, n, reason }),
            }
        }
        Ok(PartitionReport {
            window: Window::new(lo, hi),
            rank: self.rank,
            special_pair: self.special_index(),
            counts: counts
                .into_iter()
                .map(|(class, count)| ClassCount::new(class, self.rank, count))
                .collect(),
            overflow: matches!(self.rank, Rank::Omega).then_some(overflow),
            violations,
        })
    }

    /// Checks `A_j ⊔ f_j(B_j)` over the window for each requested pair.
    /// Membership in `f_j(B_j)` is decided by pulling back through
    /// `f_j^-1`.
    pub fn verify_reassembly(&self, lo: i64, hi: i64, pairs: &[u32]) -> Result<ReassemblyReport> {
        let mut coverage = Vec::with_capacity(pairs.len());
        let mut violations = Vec::new();
        for &j in pairs {
            let generator = self.generator(j)?;
            let plus = WordClass::new(j, Sign::Plus);
            let minus = WordClass::new(j, Sign::Minus);
            let hits: Vec<(i64, bool, bool)> = window(lo, hi)
                .into_par_iter()
                .map(|n| {
                    let in_plus = self.classify_interval(n) == plus;
                    let in_image = self.classify_interval(generator.apply_inverse(n)) == minus;
                    (n, in_plus, in_image)
                })
                .collect();
            let mut entry = PairCoverage {
                pair: j,
                plus_label: self.label(plus),
                minus_label: self.label(minus),
                from_plus: 0,
                from_image: 0,
                covered: 0,
                uncovered: 0,
                double_covered: 0,
            };
            for (n, in_plus, in_image) in hits {
                entry.from_plus += u64::from(in_plus);
                entry.from_image += u64::from(in_image);
                match (in_plus, in_image) {
                    (true, true) => {
                        entry.covered += 1;
                        entry.double_covered += 1;
                        violations.push(Violation {
                            pair: Some(j),
                            n,
                            reason: "double-covered".into(),
                        });
                    }
                    (false, false) => {
                        entry.uncovered += 1;
                        violations.push(Violation { pair: Some(j), n, reason: "uncovered".into() });
                    }
                    _ => entry.covered += 1,
                }
            }
            coverage.push(entry);
        }
        violations.sort_by_key(|v| (v.pair, v.n));
        Ok(ReassemblyReport { window: Window::new(lo, hi), rank: self.rank, coverage, violations })
    }

    /// Forward-image check of `f_j(B_j)`: the set `{ f_j(m) : m in B_j }`
    /// restricted to the window, computed by pushing the preimage window
    /// forward. Must agree with the pull-back test of `verify_reassembly`.
    pub fn image_of_minus_side(&self, j: u32, lo: i64, hi: i64) -> Result<Vec<i64>> {
        let generator = self.generator(j)?;
        let minus = WordClass::new(j, Sign::Minus);
        let mut image: Vec<i64> = window(lo, hi)
            .into_iter()
            .map(|n| generator.apply_inverse(n))
            .filter(|&m| self.classify_interval(m) == minus)
            .map(|m| generator.apply(m))
            .collect();
        image.sort_unstable();
        Ok(image)
    }

    /// Finite-window counting shadow of `μ(A)+μ(B) = μ(C)+μ(D) = μ(ℝ)`.
    pub fn measure_audit(
        &self,
        lo: i64,
        hi: i64,
        pair_limit: Option<u32>,
    ) -> Result<MeasureAuditReport> {
        let pairs = self.checked_pairs(pair_limit)?;
        let partition = self.verify_partition(lo, hi, pair_limit)?;
        let reassembly = self.verify_reassembly(lo, hi, &pairs)?;
        let window_size = window(lo, hi).len() as u64;
        let class_total: u64 =
            partition.counts.iter().map(|c| c.count).sum::<u64>() + partition.overflow.unwrap_or(0);
        let coverage: Vec<(u32, u64)> =
            reassembly.coverage.iter().map(|c| (c.pair, c.covered)).collect();
        let pass = partition.violations.is_empty()
            && reassembly.violations.is_empty()
            && class_total == window_size
            && coverage.iter().all(|&(_, c)| c == window_size);
        Ok(MeasureAuditReport {
            window: Window::new(lo, hi),
            rank: self.rank,
            window_size,
            counts: partition.counts,
            class_total,
            coverage,
            pass,
        })
    }

    /// Checks that no nonempty reduced word of length `<= max_length` over
    /// the first `generators` generators fixes any integer in the window, and
    /// that distinct words act distinctly.
    pub fn certify_free_action(
        &self,
        max_length: usize,
        lo: i64,
        hi: i64,
        generators: Option<u32>,
        budget: u128,
    ) -> Result<CertReport> {
        let pairs = self.checked_pairs(generators)?;
        let k = pairs.len() as u32;
        let needed = nonempty_word_count(k, max_length)
            .ok_or(Error::BudgetExceeded { needed: u128::MAX, cap: budget })?;
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, cap: budget });
        }
        let words = nonempty_words(k, max_length);
        let points: Vec<(i64, Word)> =
            window(lo, hi).into_iter().map(|n| (n, self.labeling.word_of_label(n))).collect();
        let probe = if lo <= 0 && 0 <= hi { 0 } else { lo };

        let results: Vec<(Word, Vec<i64>, i64)> = words
            .par_iter()
            .map(|word| {
                let perm = TreePermutation::new(word.clone(), self.labeling.clone())
                    .expect("word within rank");
                let fixed: Vec<i64> = points
                    .iter()
                    .filter(|(n, vertex)| {
                        self.labeling.label_of_word(&word.mul(vertex)).expect("label in range")
                            == *n
                    })
                    .map(|(n, _)| *n)
                    .collect();
                (word.clone(), fixed, perm.apply(probe))
            })
            .collect();

        let mut violations = Vec::new();
        let mut fixed_points = 0;
        let mut first_word_for_image: HashMap<i64, &Word> = HashMap::new();
        for (word, fixed, image) in &results {
            fixed_points += fixed.len() as u64;
            for &n in fixed {
                violations.push(format!("{word} fixes {n}"));
            }
            if let Some(other) = first_word_for_image.insert(*image, word) {
                violations.push(format!("{word} and {other} both send {probe} to {image}"));
            }
        }
        // The identity also fixes the probe, so it must not share an image.
        if first_word_for_image.contains_key(&probe) {
            violations.push(format!("a nonempty word fixes {probe}"));
        }
        let empty_window = lo > hi;
        Ok(CertReport {
            window: Window::new(lo, hi),
            max_length,
            generators: k,
            words_checked: results.len() as u64,
            fixed_points,
            distinct_actions: if empty_window { 0 } else { first_word_for_image.len() as u64 },
            violations,
        })
    }
}

/// `sum_{L=1..max} 2k (2k-1)^(L-1)`, or `None` on overflow.
pub fn nonempty_word_count(k: u32, max_length: usize) -> Option<u128> {
    let branching = 2 * k as u128 - 1;
    let mut total: u128 = 0;
    let mut level: u128 = 2 * k as u128;
    for _ in 0..max_length {
        total = total.checked_add(level)?;
        level = level.checked_mul(branching)?;
    }
    Some(total)
}

/// Nonempty reduced words over `x_1..x_k` of length `<= max_length`, shortlex.
fn nonempty_words(k: u32, max_length: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> =
        (1..=k).flat_map(|j| [Letter::gen(j), Letter::gen_inv(j)]).collect();
    let mut words = Vec::new();
    let mut level = vec![Word::identity()];
    for _ in 0..max_length {
        level = level
            .iter()
            .flat_map(|w| {
                alphabet.iter().filter(|&&l| !w.last().is_some_and(|last| last.cancels(l))).map(
                    move |&l| {
                        let mut letters = w.letters().to_vec();
                        letters.push(l);
                        Word::from_letters(letters).expect("extension is reduced")
                    },
                )
            })
            .collect();
        words.extend(level.iter().cloned());
    }
    words
}

fn window(lo: i64, hi: i64) -> Vec<i64> {
    if lo > hi {
        Vec::new()
    } else {
        (lo..=hi).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    fn new(lo: i64, hi: i64) -> Window {
        Window { lo, hi }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub class: String,
    pub pair: u32,
    pub side: Sign,
    pub count: u64,
}

impl ClassCount {
    fn new(class: WordClass, rank: Rank, count: u64) -> ClassCount {
        ClassCount { class: class.label(rank), pair: class.pair, side: class.side, count }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<u32>,
    pub n: i64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub window: Window,
    pub rank: Rank,
    pub special_pair: u32,
    pub counts: Vec<ClassCount>,
    /// Countable rank only: intervals whose class lies beyond the pair limit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overflow: Option<u64>,
    pub violations: Vec<Violation>,
}

impl PartitionReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, label: &str) -> Option<u64> {
        self.counts.iter().find(|c| c.class == label).map(|c| c.count)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCoverage {
    pub pair: u32,
    pub plus_label: String,
    pub minus_label: String,
    /// Intervals in the plus side.
    pub from_plus: u64,
    /// Intervals in the image of the minus side.
    pub from_image: u64,
    /// Intervals covered at least once.
    pub covered: u64,
    pub uncovered: u64,
    pub double_covered: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReassemblyReport {
    pub window: Window,
    pub rank: Rank,
    pub coverage: Vec<PairCoverage>,
    pub violations: Vec<Violation>,
}

impl ReassemblyReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasureAuditReport {
    pub window: Window,
    pub rank: Rank,
    pub window_size: u64,
    pub counts: Vec<ClassCount>,
    pub class_total: u64,
    /// `(pair, intervals covered by A_j ⊔ f_j(B_j))`.
    pub coverage: Vec<(u32, u64)>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertReport {
    pub window: Window,
    pub max_length: usize,
    pub generators: u32,
    pub words_checked: u64,
    pub fixed_points: u64,
    pub distinct_actions: u64,
    pub violations: Vec<String>,
}

impl CertReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty() && self.fixed_points == 0
    }
}
