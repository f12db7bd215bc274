use std::sync::Arc;

use crate::error::{usage, Result};
use crate::words::{self, Alphabet, Word};

/// Which Lyndon words of a given shape to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LyndonFilter {
    #[default]
    All,
    /// Words that are their own first-occurrence relabelling.
    Canonical,
    /// Words whose letters are exactly the `m` smallest of the alphabet, for
    /// some `m`: one representative per order-preserving renaming class.
    Dense,
}

impl LyndonFilter {
    pub fn keeps(self, w: &[u8]) -> bool {
        match self {
            LyndonFilter::All => true,
            LyndonFilter::Canonical => words::canonical_rename(w) == w,
            LyndonFilter::Dense => {
                let max = w.iter().copied().max().unwrap_or(0) as usize;
                words::distinct_letters(w) == max + 1
            }
        }
    }
}

/// Lyndon words of length `1..=max_len` over ranks `0..k`, in lexicographic
/// order (Duval's successor rule).
pub fn lyndon_words_up_to(max_len: usize, k: u8) -> impl Iterator<Item = Vec<u8>> {
    let mut next = (max_len >= 1 && k >= 1).then(|| vec![0u8]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut w = current.clone();
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
            next = Some(w);
        }
        Some(current)
    })
}

/// All Lyndon words of length exactly `n` over the first `k` letters of
/// `alphabet`, lexicographically ordered.
pub fn enumerate_lyndon(
    alphabet: &Arc<Alphabet>,
    n: usize,
    k: usize,
    filter: LyndonFilter,
) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(usage("enumerate_lyndon requires n >= 1"));
    }
    if k == 0 || k > alphabet.len() {
        return Err(usage(format!(
            "k = {k} must lie in 1..={} for alphabet {:?}",
            alphabet.len(),
            alphabet.symbols()
        )));
    }
    Ok(lyndon_words_up_to(n, k as u8)
        .filter(|w| w.len() == n && filter.keeps(w))
        .map(|w| Word::from_ranks_unchecked(alphabet, w))
        .collect())
}
