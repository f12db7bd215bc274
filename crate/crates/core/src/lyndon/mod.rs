//! Lyndon words: recognition, least conjugates, the standard bisection,
//! Chen–Fox–Lyndon factorization and distinct-Lyndon-factor counting.

mod enumerate;
mod min_profile;

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::fibonacci;
use crate::words::{self, Word};

pub use enumerate::{enumerate_lyndon, lyndon_words_up_to, LyndonFilter};
pub use min_profile::{min_lyndon_profile, MinProfileEntry};

/// Linear-time test: `w` is nonempty and strictly smaller than each of its
/// nonempty proper suffixes.
pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    let mut k = 0;
    for j in 1..w.len() {
        match w[k].cmp(&w[j]) {
            std::cmp::Ordering::Less => k = 0,
            std::cmp::Ordering::Equal => k += 1,
            std::cmp::Ordering::Greater => return false,
        }
    }
    // The scanned prefix has period j - k; it is Lyndon iff that is |w|.
    k == 0
}

/// Definition via suffixes, quadratic.
pub fn is_lyndon_by_suffixes(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Definition via conjugacy: primitive and strictly smallest among its
/// rotations.
pub fn is_lyndon_by_conjugates(w: &[u8]) -> bool {
    if w.is_empty() || !words::is_primitive(w) {
        return false;
    }
    (1..w.len()).all(|i| {
        let rot = w[i..].iter().chain(&w[..i]);
        w.iter().lt(rot)
    })
}

/// Start offset of the lexicographically least rotation.
pub fn least_rotation(w: &[u8]) -> usize {
    let n = w.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let (a, b) = (w[(i + k) % n], w[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

pub fn rotate(w: &[u8], offset: usize) -> Vec<u8> {
    let mut out = w[offset..].to_vec();
    out.extend_from_slice(&w[..offset]);
    out
}

/// The unique Lyndon rotation of a primitive word.
pub fn lyndon_conjugate_ranks(w: &[u8]) -> Option<Vec<u8>> {
    if w.is_empty() || !words::is_primitive(w) {
        return None;
    }
    Some(rotate(w, least_rotation(w)))
}

/// Lengths of the Lyndon prefixes of `w`, increasing.
pub fn lyndon_prefix_lengths(w: &[u8]) -> Vec<usize> {
    let mut out = Vec::new();
    if w.is_empty() {
        return out;
    }
    out.push(1);
    let mut k = 0;
    for j in 1..w.len() {
        match w[k].cmp(&w[j]) {
            std::cmp::Ordering::Less => {
                k = 0;
                out.push(j + 1);
            }
            std::cmp::Ordering::Equal => k += 1,
            // No longer prefix is even a prefix of a Lyndon word.
            std::cmp::Ordering::Greater => break,
        }
    }
    out
}

/// The distinct Lyndon factors of `w`, as slices into `w`.
pub fn lyndon_factor_set(w: &[u8]) -> HashSet<&[u8]> {
    lyndon_factor_set_bounded(w, w.len())
}

/// Distinct Lyndon factors of `w` of length at most `max_len`.
pub fn lyndon_factor_set_bounded(w: &[u8], max_len: usize) -> HashSet<&[u8]> {
    let mut seen = HashSet::new();
    for i in 0..w.len() {
        let end = (i + max_len).min(w.len());
        for len in lyndon_prefix_lengths(&w[i..end]) {
            seen.insert(&w[i..i + len]);
        }
    }
    seen
}

/// 𝓛(w): the number of distinct Lyndon factors of `w`.
pub fn lyndon_factor_count(w: &[u8]) -> usize {
    lyndon_factor_set(w).len()
}

/// Chen–Fox–Lyndon factorization as consecutive `(start, end)` ranges,
/// computed by a single left-to-right scan.
pub fn cfl_ranges(w: &[u8]) -> Vec<(usize, usize)> {
    let n = w.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && w[k] <= w[j] {
            if w[k] < w[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        let period = j - k;
        while i <= k {
            out.push((i, i + period));
            i += period;
        }
    }
    out
}

impl Word {
    pub fn is_lyndon(&self) -> Result<bool> {
        self.require_nonempty("is_lyndon")?;
        let fast = is_lyndon(self.ranks());
        debug_assert_eq!(fast, is_lyndon_by_conjugates(self.ranks()));
        Ok(fast)
    }

    pub fn lyndon_conjugate(&self) -> Result<Word> {
        self.require_nonempty("lyndon_conjugate")?;
        lyndon_conjugate_ranks(self.ranks())
            .map(|r| self.with_ranks(r))
            .ok_or_else(|| {
                Error::Domain(format!(
                    "{self} is not primitive; it has no Lyndon conjugate"
                ))
            })
    }

    pub fn standard_bisection(&self) -> Result<StandardBisection> {
        if self.len() < 2 || !is_lyndon(self.ranks()) {
            return Err(usage(format!(
                "standard bisection needs a Lyndon word of length >= 2, got {self}"
            )));
        }
        let w = self.ranks();
        let split = lyndon_prefix_lengths(w)
            .into_iter()
            .rev()
            .find(|&len| len < w.len())
            .expect("the first letter is a proper Lyndon prefix");
        let (lambda, mu) = (&w[..split], &w[split..]);
        if !is_lyndon(mu) {
            return Err(Error::Domain(format!(
                "right part of the bisection of {self} is not Lyndon"
            )));
        }
        Ok(StandardBisection {
            lambda: self.with_ranks(lambda.to_vec()),
            mu: self.with_ranks(mu.to_vec()),
        })
    }

    pub fn distinct_lyndon_factors(&self) -> LyndonFactors {
        let mut factors: Vec<&[u8]> = lyndon_factor_set(self.ranks()).into_iter().collect();
        factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        LyndonFactors {
            count: factors.len(),
            factors: factors
                .into_iter()
                .map(|f| self.with_ranks(f.to_vec()))
                .collect(),
        }
    }

    pub fn cfl_factorize(&self) -> Result<CflFactorization> {
        self.require_nonempty("cfl_factorize")?;
        Ok(CflFactorization {
            factors: cfl_ranges(self.ranks())
                .into_iter()
                .map(|(s, e)| self.factor(s, e))
                .collect(),
        })
    }

    /// Two letters `a < b`, `w = a p b` and `p` central.
    pub fn is_sturmian_lyndon(&self) -> Result<bool> {
        if self.len() < 2 {
            return Err(usage("is_sturmian_lyndon requires a word of length >= 2"));
        }
        Ok(is_sturmian_lyndon(self.ranks()))
    }
}

pub fn is_sturmian_lyndon(w: &[u8]) -> bool {
    let n = w.len();
    n >= 2
        && words::distinct_letters(w) == 2
        && w[0] < w[n - 1]
        && w[1..n - 1].iter().all(|&c| c == w[0] || c == w[n - 1])
        && fibonacci::is_central_ranks(&w[1..n - 1])
}

/// `w = lambda · mu` with `lambda` the longest proper Lyndon prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardBisection {
    pub lambda: Word,
    pub mu: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LyndonFactors {
    /// Ordered by length, then lexicographically.
    pub factors: Vec<Word>,
    pub count: usize,
}

/// Nonincreasing Lyndon factors whose product is the factored word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CflFactorization {
    pub factors: Vec<Word>,
}

impl CflFactorization {
    pub fn is_single_factor(&self) -> bool {
        self.factors.len() == 1
    }
}
