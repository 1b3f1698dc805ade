//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the enumeration or labeling code under test.

#![allow(dead_code)]

use rigid_paradox::{Letter, Sign, Word};

/// Signed-integer letters: `+j` is `x_j`, `-j` is `x_j^-1`.
pub type RawWord = Vec<i32>;

pub fn raw_is_reduced(w: &[i32]) -> bool {
    w.windows(2).all(|p| p[0] != -p[1])
}

/// Rank used by the alphabet order: x1 < X1 < x2 < X2 < ...
fn raw_key(letter: i32) -> (i32, bool) {
    (letter.abs(), letter < 0)
}

/// Every sequence over the rank-`k` alphabet of length `<= max_len`, reduced
/// or not, via odometer counting.
pub fn all_sequences(k: i32, max_len: usize) -> Vec<RawWord> {
    let alphabet: Vec<i32> = (1..=k).flat_map(|j| [j, -j]).collect();
    let mut out = vec![vec![]];
    for len in 1..=max_len {
        let total = alphabet.len().pow(len as u32);
        for mut code in 0..total {
            let mut w = Vec::with_capacity(len);
            for _ in 0..len {
                w.push(alphabet[code % alphabet.len()]);
                code /= alphabet.len();
            }
            out.push(w);
        }
    }
    out
}

/// All reduced words of length `<= max_len`, sorted by (length, lex).
pub fn shortlex_words(k: i32, max_len: usize) -> Vec<RawWord> {
    let mut words: Vec<RawWord> =
        all_sequences(k, max_len).into_iter().filter(|w| raw_is_reduced(w)).collect();
    words.sort_by(|a, b| {
        a.len().cmp(&b.len()).then_with(|| {
            let ka: Vec<_> = a.iter().map(|&l| raw_key(l)).collect();
            let kb: Vec<_> = b.iter().map(|&l| raw_key(l)).collect();
            ka.cmp(&kb)
        })
    });
    words
}

/// All reduced words over infinitely many generators with weight
/// `|w| + sum of indices <= max_weight`, sorted by (weight, length, lex).
pub fn weight_words(max_weight: i32) -> Vec<RawWord> {
    fn extend(prefix: &mut RawWord, budget: i32, out: &mut Vec<RawWord>) {
        out.push(prefix.clone());
        for j in 1..budget {
            for letter in [j, -j] {
                if prefix.last() == Some(&-letter) {
                    continue;
                }
                prefix.push(letter);
                extend(prefix, budget - (j + 1), out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut vec![], max_weight, &mut out);
    let weight = |w: &RawWord| w.iter().map(|l| l.abs() + 1).sum::<i32>();
    out.sort_by(|a, b| {
        weight(a).cmp(&weight(b)).then(a.len().cmp(&b.len())).then_with(|| {
            let ka: Vec<_> = a.iter().map(|&l| raw_key(l)).collect();
            let kb: Vec<_> = b.iter().map(|&l| raw_key(l)).collect();
            ka.cmp(&kb)
        })
    });
    out
}

pub fn to_word(raw: &[i32]) -> Word {
    let letters = raw
        .iter()
        .map(|&l| {
            Letter::new(l.unsigned_abs(), if l > 0 { Sign::Plus } else { Sign::Minus }).unwrap()
        })
        .collect();
    Word::from_letters(letters).expect("oracle words are reduced")
}

/// Zigzag position -> integer label, written out case by case.
pub fn zigzag(position: usize) -> i64 {
    match position {
        0 => 0,
        p if p % 2 == 1 => (p as i64 + 1) / 2,
        p => -(p as i64) / 2,
    }
}
