use std::collections::HashSet;

use serde::Serialize;

use super::is_lyndon;
use crate::error::{usage, Result};
use crate::words::{Alphabet, Word, MAX_ALPHABET};

/// ℓ(n) together with every Lyndon word of length `n` attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinProfileEntry {
    pub n: usize,
    pub ell: usize,
    /// One representative per order-preserving renaming class: the word uses
    /// exactly the letters `0..m`. Sorted lexicographically.
    pub extremal_words: Vec<Word>,
}

/// Minimum number of distinct Lyndon factors over all Lyndon words of length
/// `n` on any ordered alphabet.
///
/// Depth-first search over prenecklaces (prefixes of Lyndon words) on the
/// letters `0..`, keeping only words whose letter set is `{0, .., m-1}` so
/// that each order-preserving renaming class is visited once. Two bounds
/// prune the tree: the Lyndon factors of a prefix are Lyndon factors of every
/// extension, and a word with `d` distinct letters has at least `d + 1`
/// Lyndon factors (its letters and itself).
pub fn min_lyndon_profile(n: usize) -> Result<MinProfileEntry> {
    if n == 0 {
        return Err(usage("min_lyndon_profile requires n >= 1"));
    }
    let mut search = Search {
        n,
        best: usize::MAX,
        found: Vec::new(),
        word: vec![0],
        factors: HashSet::from([vec![0u8]]),
    };
    if n == 1 {
        search.best = 1;
        search.found.push(vec![0]);
    } else {
        search.dfs(1, 1);
    }
    let mut found = search.found;
    found.sort();
    let alphabet = Alphabet::digits(MAX_ALPHABET)?;
    Ok(MinProfileEntry {
        n,
        ell: search.best,
        extremal_words: found
            .into_iter()
            .map(|w| Word::from_ranks_unchecked(&alphabet, w))
            .collect(),
    })
}

struct Search {
    n: usize,
    best: usize,
    found: Vec<Vec<u8>>,
    word: Vec<u8>,
    factors: HashSet<Vec<u8>>,
}

impl Search {
    /// `period` is the length of the longest Lyndon prefix of `word`; `used`
    /// is the bitmask of letters occurring in it.
    fn dfs(&mut self, period: usize, used: u64) {
        let t = self.word.len();
        let top = 63 - used.leading_zeros() as usize;
        let gaps = top + 1 - used.count_ones() as usize;
        if gaps > self.n - t {
            return;
        }
        if t == self.n {
            if period == self.n {
                let count = self.factors.len();
                if count < self.best {
                    self.best = count;
                    self.found.clear();
                }
                if count == self.best {
                    self.found.push(self.word.clone());
                }
            }
            return;
        }
        // The finished word is one more Lyndon factor.
        if self.factors.len() + 1 > self.best {
            return;
        }
        let letter_cap = self.best.saturating_sub(2).min(MAX_ALPHABET - 1) as u8;
        let lo = self.word[t - period];
        for c in lo..=letter_cap.max(lo) {
            self.word.push(c);
            let added = self.add_lyndon_suffixes();
            let next_period = if c == lo { period } else { t + 1 };
            self.dfs(next_period, used | 1 << c);
            for f in added {
                self.factors.remove(&f);
            }
            self.word.pop();
        }
    }

    fn add_lyndon_suffixes(&mut self) -> Vec<Vec<u8>> {
        let mut added = Vec::new();
        for i in 0..self.word.len() {
            let suffix = &self.word[i..];
            if is_lyndon(suffix) && !self.factors.contains(suffix) {
                self.factors.insert(suffix.to_vec());
                added.push(suffix.to_vec());
            }
        }
        added
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lyndon::{is_lyndon_by_suffixes, lyndon_factor_count};
    use crate::words::{all_words, canonical_rename};

    fn rendered(e: &MinProfileEntry) -> Vec<String> {
        e.extremal_words.iter().map(|w| w.to_string()).collect()
    }

    /// Exhaustive over every word on `k` letters; keeps dense words only.
    fn brute_force(n: usize, k: u8) -> (usize, Vec<Vec<u8>>) {
        let mut best = usize::MAX;
        let mut found = Vec::new();
        for x in all_words(n, k) {
            let dense = super::super::LyndonFilter::Dense.keeps(&x);
            if !dense || !is_lyndon_by_suffixes(&x) {
                continue;
            }
            let c = lyndon_factor_count(&x);
            if c < best {
                best = c;
                found.clear();
            }
            if c == best {
                found.push(x);
            }
        }
        (best, found)
    }

    #[test]
    fn small_values() {
        let one = min_lyndon_profile(1).unwrap();
        assert_eq!((one.ell, rendered(&one)), (1, vec!["0".to_string()]));
        assert_eq!(min_lyndon_profile(8).unwrap().ell, 6);
        assert!(min_lyndon_profile(0).is_err());
    }

    #[test]
    fn length_six_minimizers() {
        let e = min_lyndon_profile(6).unwrap();
        assert_eq!(e.ell, 7);
        let mut listed = vec![
            "000001", "000101", "001101", "010111", "010102", "010202", "021022", "011111",
        ];
        listed.sort();
        assert_eq!(rendered(&e), listed);
        let canon = |ws: Vec<Vec<u8>>| {
            let mut c: Vec<Vec<u8>> = ws.iter().map(|w| canonical_rename(w)).collect();
            c.sort();
            c
        };
        let listed_ranks: Vec<Vec<u8>> = listed
            .iter()
            .map(|s| s.bytes().map(|b| b - b'0').collect())
            .collect();
        let ours: Vec<Vec<u8>> = e
            .extremal_words
            .iter()
            .map(|w| w.ranks().to_vec())
            .collect();
        assert_eq!(canon(ours), canon(listed_ranks));
    }

    #[test]
    fn search_matches_exhaustive_enumeration() {
        // ℓ(n) <= 7 for these n, so a minimizer has at most 6 letters.
        for n in 2..=7 {
            let e = min_lyndon_profile(n).unwrap();
            let (ell, words) = brute_force(n, 6.min(n as u8));
            assert_eq!(e.ell, ell, "n={n}");
            let ours: Vec<Vec<u8>> = e
                .extremal_words
                .iter()
                .map(|w| w.ranks().to_vec())
                .collect();
            assert_eq!(ours, words, "n={n}");
        }
    }
}
