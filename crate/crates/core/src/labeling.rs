//! The bijection between the integers and the vertices of the Cayley tree.
//!
//! Vertex `w` sits at canonical enumeration position `p`, and `p` is
//! zigzag-encoded as an integer: `0, 1, 2, 3, 4, ...` becomes
//! `0, 1, -1, 2, -2, ...`. Label 0 is therefore the identity.

use serde::Serialize;

use crate::enumeration::{Enumerator, Position};
use crate::error::{Error, Result};
use crate::freegroup::{Letter, Rank, Word};

pub fn zigzag_decode(position: Position) -> Result<i64> {
    let value: i128 =
        if position % 2 == 1 { position.div_ceil(2) as i128 } else { -((position / 2) as i128) };
    i64::try_from(value).map_err(|_| Error::LabelOverflow)
}

pub fn zigzag_encode(label: i64) -> Position {
    let n = label as i128;
    if n >= 1 {
        (2 * n - 1) as Position
    } else {
        (-2 * n) as Position
    }
}

#[derive(Debug)]
pub struct VertexLabeling {
    enumerator: Enumerator,
}

impl VertexLabeling {
    pub fn new(rank: Rank) -> VertexLabeling {
        VertexLabeling { enumerator: Enumerator::new(rank) }
    }

    pub fn rank(&self) -> Rank {
        self.enumerator.rank()
    }

    pub fn enumerator(&self) -> &Enumerator {
        &self.enumerator
    }

    pub fn word_of_label(&self, label: i64) -> Word {
        self.enumerator
            .word_at(zigzag_encode(label))
            .expect("every i64 label has a position in 0..=2^64")
    }

    pub fn label_of_word(&self, word: &Word) -> Result<i64> {
        let position = self.enumerator.position_of(word).map_err(|e| match e {
            Error::InvalidLetter { .. } => Error::Context(e.to_string()),
            other => other,
        })?;
        zigzag_decode(position)
    }

    /// The unique reduced word `u` whose tree action moves `m` to `n`.
    pub fn connecting_word(&self, m: i64, n: i64) -> Word {
        self.word_of_label(n).mul(&self.word_of_label(m).inverse())
    }

    /// All vertices within `radius` of the identity, with their neighbours.
    pub fn ball(&self, radius: usize) -> Result<CayleyBall> {
        let Rank::Finite(k) = self.rank() else {
            return Err(Error::UnsupportedRank(self.rank()));
        };
        let count: usize = (0..=radius)
            .map(|l| match l {
                0 => 1usize,
                _ => 2 * k as usize * (2 * k as usize - 1).pow(l as u32 - 1),
            })
            .sum();
        let mut entries = Vec::with_capacity(count);
        for word in self.enumerator.first_words(count) {
            let label = self.label_of_word(&word)?;
            let neighbour = |letter: Letter| -> Result<Option<i64>> {
                let next = word.left_mul_letter(letter);
                if next.len() > radius {
                    Ok(None)
                } else {
                    self.label_of_word(&next).map(Some)
                }
            };
            let neighbours = (1..=k)
                .map(|j| Ok((neighbour(Letter::gen(j))?, neighbour(Letter::gen_inv(j))?)))
                .collect::<Result<Vec<_>>>()?;
            entries.push(BallEntry { label, word, neighbours });
        }
        entries.sort_by_key(|e| e.label);
        Ok(CayleyBall { radius, entries })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallEntry {
    pub label: i64,
    #[serde(serialize_with = "crate::serialize_display")]
    pub word: Word,
    /// For generator `j` (index `j - 1`): labels of `x_j w` and `x_j^-1 w`,
    /// `None` when that vertex lies outside the ball.
    pub neighbours: Vec<(Option<i64>, Option<i64>)>,
}

/// A ball of the labeled Cayley tree, entries sorted by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyBall {
    pub radius: usize,
    pub entries: Vec<BallEntry>,
}

impl CayleyBall {
    /// Edges `(from, to, generator)` with `to = x_generator * from`.
    pub fn edges(&self) -> Vec<(i64, i64, u32)> {
        let mut edges = Vec::new();
        for entry in &self.entries {
            for (j, &(forward, _)) in entry.neighbours.iter().enumerate() {
                if let Some(to) = forward {
                    edges.push((entry.label, to, j as u32 + 1));
                }
            }
        }
        edges
    }
}
