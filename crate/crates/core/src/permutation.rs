//! Permutations of the integers with evaluable inverses.
//!
//! Two backings exist: finitely supported cycle permutations, and tree
//! permutations given by a reduced word `u` acting on labels by left
//! multiplication, `n -> label(u * word(n))`. Left multiplication makes
//! `word -> permutation` a homomorphism: `tree(uv) = tree(u) . tree(v)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freegroup::Word;
use crate::labeling::VertexLabeling;

/// A permutation moving finitely many integers, stored as disjoint cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePermutation {
    cycles: Vec<Vec<i64>>,
    forward: BTreeMap<i64, i64>,
    backward: BTreeMap<i64, i64>,
}

impl CyclePermutation {
    pub fn identity() -> CyclePermutation {
        CyclePermutation::from_map(BTreeMap::new())
    }

    /// Builds from cycles `(a b c)` meaning `a -> b -> c -> a`. Cycles must be
    /// pairwise disjoint with no repeated entries; 1-cycles are dropped.
    pub fn from_cycles(cycles: Vec<Vec<i64>>) -> Result<CyclePermutation> {
        let mut forward = BTreeMap::new();
        for cycle in &cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if forward.insert(a, b).is_some() {
                    return Err(Error::Parse(format!("{a} appears twice in the cycles")));
                }
            }
        }
        forward.retain(|a, b| a != b);
        Ok(CyclePermutation::from_map(forward))
    }

    fn from_map(forward: BTreeMap<i64, i64>) -> CyclePermutation {
        let backward = forward.iter().map(|(&a, &b)| (b, a)).collect();
        // Canonical cycle order: each cycle starts at its minimum, cycles
        // sorted by that minimum. BTreeMap iteration yields minima first.
        let mut cycles = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for &start in forward.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut cycle = vec![start];
            let mut next = forward[&start];
            while next != start {
                seen.insert(next);
                cycle.push(next);
                next = forward[&next];
            }
            cycles.push(cycle);
        }
        CyclePermutation { cycles, forward, backward }
    }

    pub fn cycles(&self) -> &[Vec<i64>] {
        &self.cycles
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.forward.keys().copied()
    }

    pub fn apply(&self, n: i64) -> i64 {
        self.forward.get(&n).copied().unwrap_or(n)
    }

    pub fn apply_inverse(&self, n: i64) -> i64 {
        self.backward.get(&n).copied().unwrap_or(n)
    }

    /// `self . other`: apply `other` first.
    pub fn compose(&self, other: &CyclePermutation) -> CyclePermutation {
        let mut forward = BTreeMap::new();
        for n in self.support().chain(other.support()) {
            let image = self.apply(other.apply(n));
            if image != n {
                forward.insert(n, image);
            }
        }
        CyclePermutation::from_map(forward)
    }

    pub fn inverse(&self) -> CyclePermutation {
        CyclePermutation::from_map(self.backward.clone())
    }
}

impl FromStr for CyclePermutation {
    type Err = Error;

    /// Cycle notation. A group without separators is read one digit per
    /// entry, so `(012534)` is the six-cycle `0 1 2 5 3 4`; otherwise entries
    /// are separated by commas or whitespace, e.g. `(10, -3, 4)(7 8)`.
    /// `()` or an empty string is the identity.
    fn from_str(s: &str) -> Result<CyclePermutation> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("expected `(...)` in `{s}`")))?;
            let (inner, tail) = body;
            rest = tail.trim_start();
            let inner = inner.trim();
            let has_separator = inner.contains(|c: char| c == ',' || c.is_whitespace());
            let entries: Vec<i64> = if has_separator {
                inner
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad entry `{t}`"))))
                    .collect::<Result<_>>()?
            } else {
                inner
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(i64::from)
                            .ok_or_else(|| Error::Parse(format!("bad digit `{c}` in `{inner}`")))
                    })
                    .collect::<Result<_>>()?
            };
            if !entries.is_empty() {
                cycles.push(entries);
            }
        }
        CyclePermutation::from_cycles(cycles)
    }
}

impl fmt::Display for CyclePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in &self.cycles {
            let entries: Vec<String> = cycle.iter().map(|n| n.to_string()).collect();
            write!(f, "({})", entries.join(" "))?;
        }
        Ok(())
    }
}

/// The permutation `n -> label(word * word_of_label(n))`.
#[derive(Clone, Debug)]
pub struct TreePermutation {
    word: Word,
    labeling: Arc<VertexLabeling>,
}

impl TreePermutation {
    pub fn new(word: Word, labeling: Arc<VertexLabeling>) -> Result<TreePermutation> {
        labeling.rank().check_word(&word).map_err(|e| Error::Context(e.to_string()))?;
        Ok(TreePermutation { word, labeling })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn labeling(&self) -> &Arc<VertexLabeling> {
        &self.labeling
    }

    fn act(&self, word: &Word, n: i64) -> i64 {
        let image = word.mul(&self.labeling.word_of_label(n));
        self.labeling.label_of_word(&image).expect("image label exceeds the 64-bit label range")
    }

    pub fn apply(&self, n: i64) -> i64 {
        self.act(&self.word, n)
    }

    pub fn apply_inverse(&self, n: i64) -> i64 {
        self.act(&self.word.inverse(), n)
    }

    fn check_shared(&self, other: &TreePermutation) -> Result<()> {
        // The labeling is canonical per rank, so equal ranks mean equal labelings.
        if self.labeling.rank() != other.labeling.rank() {
            return Err(Error::Context(format!(
                "labelings differ: rank {} vs rank {}",
                self.labeling.rank(),
                other.labeling.rank()
            )));
        }
        Ok(())
    }

    pub fn compose(&self, other: &TreePermutation) -> Result<TreePermutation> {
        self.check_shared(other)?;
        Ok(TreePermutation { word: self.word.mul(&other.word), labeling: self.labeling.clone() })
    }

    pub fn inverse(&self) -> TreePermutation {
        TreePermutation { word: self.word.inverse(), labeling: self.labeling.clone() }
    }
}

impl PartialEq for TreePermutation {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word && self.labeling.rank() == other.labeling.rank()
    }
}

impl Eq for TreePermutation {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegerPermutation {
    Cycle(CyclePermutation),
    Tree(TreePermutation),
}

impl IntegerPermutation {
    pub fn identity() -> IntegerPermutation {
        IntegerPermutation::Cycle(CyclePermutation::identity())
    }

    pub fn apply(&self, n: i64) -> i64 {
        match self {
            IntegerPermutation::Cycle(p) => p.apply(n),
            IntegerPermutation::Tree(p) => p.apply(n),
        }
    }

    pub fn apply_inverse(&self, n: i64) -> i64 {
        match self {
            IntegerPermutation::Cycle(p) => p.apply_inverse(n),
            IntegerPermutation::Tree(p) => p.apply_inverse(n),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            IntegerPermutation::Cycle(p) => p.cycles().is_empty(),
            IntegerPermutation::Tree(p) => p.word().is_identity(),
        }
    }

    /// `self . other`. An identity on either side is absorbed; otherwise both
    /// operands must have the same backing, since a mixed product has no
    /// finite representation here.
    pub fn compose(&self, other: &IntegerPermutation) -> Result<IntegerPermutation> {
        use IntegerPermutation::*;
        match (self, other) {
            (Cycle(p), Cycle(q)) => Ok(Cycle(p.compose(q))),
            (Tree(p), Tree(q)) => Ok(Tree(p.compose(q)?)),
            (p, q) if q.is_identity() => Ok(p.clone()),
            (p, q) if p.is_identity() => Ok(q.clone()),
            _ => Err(Error::Context(
                "cannot collapse a product of a cycle and a tree permutation".into(),
            )),
        }
    }

    pub fn inverse(&self) -> IntegerPermutation {
        match self {
            IntegerPermutation::Cycle(p) => IntegerPermutation::Cycle(p.inverse()),
            IntegerPermutation::Tree(p) => IntegerPermutation::Tree(p.inverse()),
        }
    }

    /// All `n` in `lo..=hi` with `apply(n) == n`, increasing.
    pub fn fixed_points_in_window(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&n| self.apply(n) == n).collect()
    }
}

impl From<CyclePermutation> for IntegerPermutation {
    fn from(p: CyclePermutation) -> Self {
        IntegerPermutation::Cycle(p)
    }
}

impl From<TreePermutation> for IntegerPermutation {
    fn from(p: TreePermutation) -> Self {
        IntegerPermutation::Tree(p)
    }
}

impl fmt::Display for IntegerPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegerPermutation::Cycle(p) => write!(f, "cycle {p}"),
            IntegerPermutation::Tree(p) => write!(f, "tree {}", p.word()),
        }
    }
}
