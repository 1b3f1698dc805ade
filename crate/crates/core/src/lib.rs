//! Free-group actions on the integers and a paradoxical decomposition of
//! the real line into pieces that reassemble, via piecewise rigid maps,
//! into several copies of the line.
//!
//! The pieces are built in layers:
//!
//! - [`freegroup`]: reduced words and the split of the group into pairs of
//!   paradoxical subsets.
//! - [`labeling`]: a bijection between the integers and the vertices of the
//!   Cayley tree.
//! - [`permutation`]: cycle permutations and the tree permutations induced by
//!   left multiplication.
//! - [`rigid`]: maps of the line that move unit intervals rigidly.
//! - [`paradox`]: classification of unit intervals and window verification
//!   of the partition and reassembly identities.
//! - [`render`]: SVG and DOT output.

pub mod enumeration;
pub mod error;
pub mod freegroup;
pub mod labeling;
pub mod paradox;
pub mod permutation;
pub mod render;
pub mod rigid;

pub use enumeration::{enumerate_words, Enumerator};
pub use error::{Error, Result};
pub use freegroup::{classify_word, FreeGroup, Letter, Rank, Sign, Word, WordClass};
pub use labeling::{CayleyBall, VertexLabeling};
pub use paradox::ParadoxInstance;
pub use permutation::{CyclePermutation, IntegerPermutation, TreePermutation};
pub use rigid::{Piece, PiecewiseRigidMap, RationalPoint};

pub(crate) fn serialize_display<T, S>(
    value: &T,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error>
where
    T: std::fmt::Display,
    S: serde::Serializer,
{
    serializer.collect_str(value)
}
