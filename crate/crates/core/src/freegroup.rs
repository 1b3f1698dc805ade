//! Reduced-word arithmetic in free groups of finite rank `k >= 2` or of
//! countably infinite rank, and the split of a free group into the `k`
//! pairs of paradoxical subsets.
//!
//! Generators are numbered from 1. For rank 2 the first generator plays the
//! role of `g` and the second the role of `h`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One generator or inverse generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    index: u32,
    sign: Sign,
}

impl Letter {
    pub fn new(index: u32, sign: Sign) -> Result<Letter> {
        if index == 0 {
            return Err(Error::ZeroIndex);
        }
        Ok(Letter { index, sign })
    }

    /// The generator `x_index`. Panics on index 0.
    pub fn gen(index: u32) -> Letter {
        Letter::new(index, Sign::Plus).expect("generator index must be >= 1")
    }

    /// The inverse generator `x_index^-1`. Panics on index 0.
    pub fn gen_inv(index: u32) -> Letter {
        Letter::new(index, Sign::Minus).expect("generator index must be >= 1")
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn inverse(self) -> Letter {
        Letter { index: self.index, sign: self.sign.flip() }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }

    /// Position in the alphabet order `x1 < X1 < x2 < X2 < ...`.
    pub fn ordinal(self) -> u64 {
        2 * (self.index as u64 - 1) + u64::from(self.sign == Sign::Minus)
    }

    pub fn from_ordinal(ordinal: u64) -> Letter {
        let index = u32::try_from(ordinal / 2 + 1).expect("letter ordinal out of range");
        let sign = if ordinal.is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
        Letter { index, sign }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ordinal().cmp(&other.ordinal())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "x{}", self.index),
            Sign::Minus => write!(f, "X{}", self.index),
        }
    }
}

/// A freely reduced word. The empty word is the identity.
///
/// Every constructor either reduces its input (`reduce`) or rejects input
/// that is not already reduced (`from_letters`), so a `Word` value never
/// contains an adjacent inverse pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn letter(letter: Letter) -> Word {
        Word { letters: vec![letter] }
    }

    /// Wraps an already reduced sequence, failing on the first cancelling pair.
    pub fn from_letters(letters: Vec<Letter>) -> Result<Word> {
        if let Some(position) = letters.windows(2).position(|w| w[0].cancels(w[1])) {
            return Err(Error::NotReduced { position });
        }
        Ok(Word { letters })
    }

    /// Free reduction. Single left-to-right pass with a stack, which yields
    /// the unique reduced form regardless of cancellation order.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for letter in letters {
            match out.last() {
                Some(&top) if top.cancels(letter) => {
                    out.pop();
                }
                _ => out.push(letter),
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.letters.iter().map(|l| l.index).max()
    }

    /// `self * other`, freely reduced. Only the junction can cancel.
    pub fn mul(&self, other: &Word) -> Word {
        let mut keep = self.letters.len();
        let mut skip = 0;
        while keep > 0
            && skip < other.letters.len()
            && self.letters[keep - 1].cancels(other.letters[skip])
        {
            keep -= 1;
            skip += 1;
        }
        let mut letters = Vec::with_capacity(keep + other.letters.len() - skip);
        letters.extend_from_slice(&self.letters[..keep]);
        letters.extend_from_slice(&other.letters[skip..]);
        Word { letters }
    }

    /// `letter * self`.
    pub fn left_mul_letter(&self, letter: Letter) -> Word {
        match self.first() {
            Some(first) if first.cancels(letter) => Word { letters: self.letters[1..].to_vec() },
            _ => {
                let mut letters = Vec::with_capacity(self.letters.len() + 1);
                letters.push(letter);
                letters.extend_from_slice(&self.letters);
                Word { letters }
            }
        }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Weight used by the countable-rank enumeration: length plus the sum of
    /// generator indices.
    pub fn weight(&self) -> u64 {
        self.letters.iter().map(|l| l.index as u64 + 1).sum()
    }

    /// Length first, then lexicographic in the alphabet order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl fmt::Display for Word {
    /// Canonical text form: runs collapse to `x1^3`, the identity prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let letter = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == letter {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{letter}")?;
            } else {
                write!(f, "{letter}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses the word grammar: whitespace-separated `x<j>` / `X<j>` tokens
    /// with an optional nonzero `^<m>` exponent, the rank-2 aliases
    /// `g G h H`, and `e` for the identity. The result is freely reduced.
    fn from_str(s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            let (base, exponent) = match token.split_once('^') {
                Some((base, exp)) => {
                    let m: i64 = exp
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
                    if m == 0 {
                        return Err(Error::Parse(format!("zero exponent in `{token}`")));
                    }
                    (base, m)
                }
                None => (token, 1),
            };
            let letter = match base {
                "e" => {
                    continue;
                }
                "g" => Letter::gen(1),
                "G" => Letter::gen_inv(1),
                "h" => Letter::gen(2),
                "H" => Letter::gen_inv(2),
                _ => {
                    let sign = match base.chars().next() {
                        Some('x') => Sign::Plus,
                        Some('X') => Sign::Minus,
                        _ => return Err(Error::Parse(format!("unknown token `{token}`"))),
                    };
                    let index: u32 = base[1..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad generator index in `{token}`")))?;
                    Letter::new(index, sign)?
                }
            };
            let letter = if exponent < 0 { letter.inverse() } else { letter };
            for _ in 0..exponent.unsigned_abs() {
                letters.push(letter);
            }
        }
        Ok(Word::reduce(letters))
    }
}

/// Rank of a free group: finite `k >= 2` or countably infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rank {
    Finite(u32),
    Omega,
}

impl Rank {
    pub fn finite(k: u32) -> Result<Rank> {
        if k < 2 {
            return Err(Error::InvalidRank(k));
        }
        Ok(Rank::Finite(k))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Rank::Finite(_))
    }

    /// The pair whose minus side absorbs the identity and the pure positive
    /// powers of its generator: the last generator for finite rank, the
    /// first for countable rank.
    pub fn special_index(self) -> u32 {
        match self {
            Rank::Finite(k) => k,
            Rank::Omega => 1,
        }
    }

    pub fn check_letter(self, letter: Letter) -> Result<()> {
        match self {
            Rank::Finite(k) if letter.index > k => {
                Err(Error::InvalidLetter { index: letter.index, rank: self })
            }
            _ => Ok(()),
        }
    }

    pub fn check_word(self, word: &Word) -> Result<()> {
        word.letters().iter().try_for_each(|&l| self.check_letter(l))
    }

    pub fn check_pair(self, pair: u32) -> Result<()> {
        if pair == 0 {
            return Err(Error::ZeroIndex);
        }
        self.check_letter(Letter::gen(pair))
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(k) => write!(f, "{k}"),
            Rank::Omega => f.write_str("omega"),
        }
    }
}

impl FromStr for Rank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rank> {
        match s {
            "omega" | "ω" => Ok(Rank::Omega),
            _ => {
                let k: u32 = s.parse().map_err(|_| Error::Parse(format!("bad rank `{s}`")))?;
                Rank::finite(k)
            }
        }
    }
}

impl Serialize for Rank {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Rank::Finite(k) => serializer.serialize_u32(*k),
            Rank::Omega => serializer.serialize_str("omega"),
        }
    }
}

/// Which paradoxical subset of the group a word belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WordClass {
    pub pair: u32,
    pub side: Sign,
}

impl WordClass {
    pub fn new(pair: u32, side: Sign) -> WordClass {
        WordClass { pair, side }
    }

    /// `A B C D` for rank 2, otherwise `A_j` (plus side) and `B_j` (minus side).
    pub fn label(self, rank: Rank) -> String {
        match (rank, self.pair, self.side) {
            (Rank::Finite(2), 1, Sign::Plus) => "A".into(),
            (Rank::Finite(2), 1, Sign::Minus) => "B".into(),
            (Rank::Finite(2), 2, Sign::Plus) => "C".into(),
            (Rank::Finite(2), 2, Sign::Minus) => "D".into(),
            (_, j, Sign::Plus) => format!("A_{j}"),
            (_, j, Sign::Minus) => format!("B_{j}"),
        }
    }
}

/// Class of `word`. For a non-special generator `x_j` the class is decided
/// by the first letter alone. For the special generator `x_s`, words that
/// start with `x_s` and continue with something other than more `x_s` go to
/// the plus side; the identity, pure positive powers of `x_s` and words
/// starting with `x_s^-1` go to the minus side.
pub fn classify_word(word: &Word, rank: Rank) -> Result<WordClass> {
    rank.check_word(word)?;
    let special = rank.special_index();
    let Some(first) = word.first() else {
        return Ok(WordClass::new(special, Sign::Minus));
    };
    if first.index() != special || first.sign() == Sign::Minus {
        return Ok(WordClass::new(first.index(), first.sign()));
    }
    if word.letters().iter().all(|&l| l == first) {
        Ok(WordClass::new(special, Sign::Minus))
    } else {
        Ok(WordClass::new(special, Sign::Plus))
    }
}

/// Membership predicate for one class, written directly from the class
/// definitions rather than by calling [`classify_word`]; verification uses
/// it to check that exactly one class claims each word.
pub fn word_in_class(word: &Word, class: WordClass, rank: Rank) -> bool {
    let special = rank.special_index();
    let starts_with = |letter: Letter| word.first() == Some(letter);
    if class.pair != special {
        let letter = match class.side {
            Sign::Plus => Letter::gen(class.pair),
            Sign::Minus => Letter::gen_inv(class.pair),
        };
        return starts_with(letter);
    }
    let generator = Letter::gen(special);
    let pure_positive_power = word.letters().iter().all(|&l| l == generator);
    match class.side {
        Sign::Plus => starts_with(generator) && word.len() >= 2 && !pure_positive_power,
        Sign::Minus => starts_with(generator.inverse()) || pure_positive_power,
    }
}

/// Rank-checked group operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    rank: Rank,
}

impl FreeGroup {
    pub fn new(rank: Rank) -> FreeGroup {
        FreeGroup { rank }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn reduce<I: IntoIterator<Item = Letter>>(&self, letters: I) -> Result<Word> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        letters.iter().try_for_each(|&l| self.rank.check_letter(l))?;
        Ok(Word::reduce(letters))
    }

    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word> {
        self.rank.check_word(u).map_err(|e| Error::Context(format!("left operand: {e}")))?;
        self.rank.check_word(v).map_err(|e| Error::Context(format!("right operand: {e}")))?;
        Ok(u.mul(v))
    }

    pub fn invert(&self, u: &Word) -> Word {
        u.inverse()
    }

    pub fn classify(&self, word: &Word) -> Result<WordClass> {
        classify_word(word, self.rank)
    }
}
