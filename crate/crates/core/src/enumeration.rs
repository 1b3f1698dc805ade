//! Canonical enumeration of reduced words.
//!
//! Finite rank `k`: words are listed by length, ties broken lexicographically
//! in the alphabet order `x1 < X1 < x2 < X2 < ...`. A length-`L` block holds
//! `2k (2k-1)^(L-1)` words and a word's rank inside its block is a mixed-radix
//! number, so both directions are closed form.
//!
//! Countable rank: the weight `|w| + sum of indices` buckets the words into
//! finite sets. Buckets are listed by increasing weight and each bucket by
//! length then lex. Bucket sizes come from count tables that are grown on
//! demand and never rewritten.

use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::freegroup::{Letter, Rank, Word};

/// Positions are kept in `u128`; every label in `i64` maps to a position
/// in `0..=2^64`.
pub type Position = u128;

const POSITION_LIMIT: Position = (1 << 64) + 1;

#[derive(Debug)]
pub struct Enumerator {
    rank: Rank,
    tables: RwLock<WeightTables>,
}

impl Enumerator {
    pub fn new(rank: Rank) -> Enumerator {
        Enumerator { rank, tables: RwLock::new(WeightTables::default()) }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    /// Enumeration position of `word`.
    pub fn position_of(&self, word: &Word) -> Result<Position> {
        self.rank.check_word(word)?;
        match self.rank {
            Rank::Finite(k) => finite_position(k, word),
            Rank::Omega => self.omega_position(word),
        }
    }

    /// The word at enumeration position `position` (at most `2^64`).
    pub fn word_at(&self, position: Position) -> Result<Word> {
        if position >= POSITION_LIMIT {
            return Err(Error::LabelOverflow);
        }
        match self.rank {
            Rank::Finite(k) => Ok(finite_word_at(k, position)),
            Rank::Omega => self.omega_word_at(position),
        }
    }

    /// The first `count` words.
    pub fn first_words(&self, count: usize) -> Vec<Word> {
        match self.rank {
            Rank::Finite(k) => finite_first_words(k, count),
            Rank::Omega => (0..count as Position)
                .map(|p| self.word_at(p).expect("position within label range"))
                .collect(),
        }
    }

    fn ensure_weight(&self, weight: usize) {
        if self.tables.read().unwrap().max_weight() >= weight as isize {
            return;
        }
        self.tables.write().unwrap().grow_to(weight);
    }

    fn omega_position(&self, word: &Word) -> Result<Position> {
        let weight = usize::try_from(word.weight()).map_err(|_| Error::LabelOverflow)?;
        // Grow one bucket at a time so an absurd weight fails as soon as the
        // buckets before it already pass the label range.
        for w in 0..=weight {
            self.ensure_weight(w);
            if self.tables.read().unwrap().bucket_start(w) >= POSITION_LIMIT {
                return Err(Error::LabelOverflow);
            }
        }
        let tables = self.tables.read().unwrap();
        let mut position = tables.bucket_start(weight);
        position += (0..word.len()).map(|l| tables.total(l, weight)).sum::<u128>();

        let mut remaining = weight;
        let mut prev: Option<Letter> = None;
        for (i, &letter) in word.letters().iter().enumerate() {
            let rest = word.len() - i - 1;
            for ordinal in 0..letter.ordinal() {
                let candidate = Letter::from_ordinal(ordinal);
                let cost = letter_weight(candidate);
                if prev.is_some_and(|p| p.cancels(candidate)) || cost > remaining {
                    continue;
                }
                position += tables.completions(rest, remaining - cost, cost);
            }
            remaining -= letter_weight(letter);
            prev = Some(letter);
        }
        if position >= POSITION_LIMIT {
            return Err(Error::LabelOverflow);
        }
        Ok(position)
    }

    fn omega_word_at(&self, position: Position) -> Result<Word> {
        let mut weight = 0;
        let mut offset = position;
        loop {
            self.ensure_weight(weight);
            let size = self.tables.read().unwrap().bucket_size(weight);
            if offset < size {
                break;
            }
            offset -= size;
            weight += 1;
        }
        let tables = self.tables.read().unwrap();
        let mut length = 0;
        loop {
            let size = tables.total(length, weight);
            if offset < size {
                break;
            }
            offset -= size;
            length += 1;
        }

        let mut letters = Vec::with_capacity(length);
        let mut remaining = weight;
        for i in 0..length {
            let rest = length - i - 1;
            let prev = letters.last().copied();
            let mut ordinal = 0;
            loop {
                let candidate = Letter::from_ordinal(ordinal);
                let cost = letter_weight(candidate);
                assert!(cost <= remaining, "weight tables inconsistent");
                if !prev.is_some_and(|p: Letter| p.cancels(candidate)) {
                    let block = tables.completions(rest, remaining - cost, cost);
                    if offset < block {
                        letters.push(candidate);
                        remaining -= cost;
                        break;
                    }
                    offset -= block;
                }
                ordinal += 1;
            }
        }
        Ok(Word::from_letters(letters).expect("decoded word is reduced"))
    }
}

fn letter_weight(letter: Letter) -> usize {
    letter.index() as usize + 1
}

fn block_size(k: u32, length: usize) -> Option<u128> {
    if length == 0 {
        return Some(1);
    }
    let branching = 2 * k as u128 - 1;
    let exp = u32::try_from(length - 1).ok()?;
    branching.checked_pow(exp)?.checked_mul(2 * k as u128)
}

fn finite_position(k: u32, word: &Word) -> Result<Position> {
    let mut position: u128 = 0;
    for length in 0..word.len() {
        let size = block_size(k, length).ok_or(Error::LabelOverflow)?;
        position = position.checked_add(size).ok_or(Error::LabelOverflow)?;
    }
    let branching = 2 * k as u128 - 1;
    let mut rank_in_block: u128 = 0;
    let mut prev: Option<Letter> = None;
    for (i, &letter) in word.letters().iter().enumerate() {
        let digit = match prev {
            None => letter.ordinal() as u128,
            Some(p) => {
                let skipped = p.inverse().ordinal();
                let ord = letter.ordinal();
                (if ord > skipped { ord - 1 } else { ord }) as u128
            }
        };
        rank_in_block = if i == 0 {
            digit
        } else {
            rank_in_block
                .checked_mul(branching)
                .and_then(|r| r.checked_add(digit))
                .ok_or(Error::LabelOverflow)?
        };
        prev = Some(letter);
    }
    position = position.checked_add(rank_in_block).ok_or(Error::LabelOverflow)?;
    if position >= POSITION_LIMIT {
        return Err(Error::LabelOverflow);
    }
    Ok(position)
}

fn finite_word_at(k: u32, position: Position) -> Word {
    let mut offset = position;
    let mut length = 0;
    loop {
        let size = block_size(k, length).expect("block size fits for positions below 2^64");
        if offset < size {
            break;
        }
        offset -= size;
        length += 1;
    }
    if length == 0 {
        return Word::identity();
    }
    let branching = 2 * k as u128 - 1;
    // Mixed radix: first digit base 2k, the rest base 2k-1.
    let mut digits = vec![0u128; length];
    for slot in digits.iter_mut().skip(1).rev() {
        *slot = offset % branching;
        offset /= branching;
    }
    digits[0] = offset;

    let mut letters: Vec<Letter> = Vec::with_capacity(length);
    for digit in digits {
        let digit = digit as u64;
        let ordinal = match letters.last() {
            None => digit,
            Some(p) => {
                let skipped = p.inverse().ordinal();
                if digit >= skipped {
                    digit + 1
                } else {
                    digit
                }
            }
        };
        letters.push(Letter::from_ordinal(ordinal));
    }
    Word::from_letters(letters).expect("decoded word is reduced")
}

/// Level-by-level generation: extending each length-`L` word in lex order by
/// its allowed letters in alphabet order yields the length-`L+1` block in lex
/// order.
fn finite_first_words(k: u32, count: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(Word::identity());
    let alphabet: Vec<Letter> = (0..2 * k as u64).map(Letter::from_ordinal).collect();
    let mut level_start = 0;
    while out.len() < count {
        let level_end = out.len();
        for i in level_start..level_end {
            let base = out[i].clone();
            for &letter in &alphabet {
                if base.last().is_some_and(|l| l.cancels(letter)) {
                    continue;
                }
                let mut letters = base.letters().to_vec();
                letters.push(letter);
                out.push(Word::from_letters(letters).expect("extension is reduced"));
                if out.len() == count {
                    return out;
                }
            }
        }
        level_start = level_end;
    }
    out
}

/// Count tables for the countable-rank enumeration, indexed by weight.
///
/// `total[w][l]` counts reduced words of length `l` and weight `w`;
/// `starting[w][l][c]` counts those that begin with one fixed letter of
/// weight `c` (the count depends only on the weight).
#[derive(Debug, Default)]
struct WeightTables {
    total: Vec<Vec<u128>>,
    starting: Vec<Vec<Vec<u128>>>,
    bucket_starts: Vec<u128>,
}

impl WeightTables {
    fn max_weight(&self) -> isize {
        self.total.len() as isize - 1
    }

    fn total(&self, length: usize, weight: usize) -> u128 {
        self.total[weight].get(length).copied().unwrap_or(0)
    }

    fn starting(&self, length: usize, weight: usize, cost: usize) -> u128 {
        self.starting[weight].get(length).and_then(|row| row.get(cost)).copied().unwrap_or(0)
    }

    /// Number of ways to append `length` letters of total weight `weight`
    /// after a letter of weight `cost` without cancelling it.
    fn completions(&self, length: usize, weight: usize, cost: usize) -> u128 {
        if length == 0 {
            return u128::from(weight == 0);
        }
        self.total(length, weight) - self.starting(length, weight, cost)
    }

    fn bucket_size(&self, weight: usize) -> u128 {
        self.total[weight].iter().sum()
    }

    fn bucket_start(&self, weight: usize) -> u128 {
        self.bucket_starts[weight]
    }

    fn grow_to(&mut self, weight: usize) {
        while self.total.len() <= weight {
            let w = self.total.len();
            let max_len = w / 2;
            let mut starting = vec![vec![0u128; w + 1]; max_len + 1];
            let mut total = vec![0u128; max_len + 1];
            if w == 0 {
                total[0] = 1;
            }
            for length in 1..=max_len {
                #[allow(clippy::needless_range_loop)]
                for cost in 2..=w {
                    starting[length][cost] = if length == 1 {
                        u128::from(cost == w)
                    } else {
                        self.completions(length - 1, w - cost, cost)
                    };
                }
                total[length] = starting[length].iter().map(|c| 2 * c).sum();
            }
            let start = match w {
                0 => 0,
                _ => self.bucket_starts[w - 1] + self.bucket_size(w - 1),
            };
            self.total.push(total);
            self.starting.push(starting);
            self.bucket_starts.push(start);
        }
    }
}

/// The first `count` reduced words of `rank` in canonical order.
pub fn enumerate_words(rank: Rank, count: usize) -> Vec<Word> {
    Enumerator::new(rank).first_words(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn first_words_rank_two() {
        let words = enumerate_words(Rank::Finite(2), 6);
        let text: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(text, ["e", "x1", "X1", "x2", "X2", "x1^2"]);
    }

    #[test]
    fn first_words_rank_omega() {
        let words = enumerate_words(Rank::Omega, 10);
        let text: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(text, ["e", "x1", "X1", "x2", "X2", "x3", "X3", "x1^2", "X1^2", "x4"]);
    }

    #[test]
    fn position_decode_matches_generation() {
        for rank in [Rank::Finite(2), Rank::Finite(3), Rank::Omega] {
            let e = Enumerator::new(rank);
            for (p, word) in e.first_words(3000).iter().enumerate() {
                assert_eq!(e.position_of(word).unwrap(), p as u128, "{rank} {word}");
                assert_eq!(&e.word_at(p as u128).unwrap(), word);
            }
        }
    }

    #[test]
    fn large_positions_round_trip() {
        for rank in [Rank::Finite(2), Rank::Finite(5), Rank::Omega] {
            let e = Enumerator::new(rank);
            for p in [u64::MAX as u128, (1u128 << 63) + 12345, 987_654_321_987] {
                let word = e.word_at(p).unwrap();
                assert_eq!(e.position_of(&word).unwrap(), p);
            }
            assert!(e.word_at(1 << 64).is_ok());
            assert_eq!(e.word_at((1 << 64) + 1), Err(Error::LabelOverflow));
        }
    }

    #[test]
    fn overflowing_words_are_rejected() {
        let long = Word::reduce(std::iter::repeat_n(Letter::gen(1), 80));
        assert_eq!(Enumerator::new(Rank::Finite(2)).position_of(&long), Err(Error::LabelOverflow));
        assert_eq!(Enumerator::new(Rank::Omega).position_of(&w("x500")), Err(Error::LabelOverflow));
    }

    #[test]
    fn omega_bucket_sizes() {
        let e = Enumerator::new(Rank::Omega);
        e.ensure_weight(6);
        let t = e.tables.read().unwrap();
        // weight 4: x3 X3 x1^2 X1^2; weight 5: x4 X4 and x1/X1 with x2/X2 in either order.
        let sizes: Vec<u128> = (0..=5).map(|w| t.bucket_size(w)).collect();
        assert_eq!(sizes, [1, 0, 2, 2, 4, 10]);
    }
}
