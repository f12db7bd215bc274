//! Ordered alphabets, finite words and their elementary combinatorics.
//!
//! Letters are stored as ranks (`u8`) into an [`Alphabet`]; the numeric order
//! of ranks is the alphabet order, so the lexicographic order on words is the
//! standard slice order on `[u8]` (a proper prefix sorts first). Hot paths in
//! this crate operate on rank slices directly; [`Word`] is the checked,
//! alphabet-carrying value used at API boundaries.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{usage, Error, Result};

pub const MAX_ALPHABET: usize = 36;

/// Default alphabet of the command line: `a`..`z` then `0`..`9`.
pub const DEFAULT_SYMBOLS: &str = "abcdefghijklmnopqrstuvwxyz0123456789";

/// A finite alphabet whose declaration order is its total order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: &str) -> Result<Arc<Self>> {
        let symbols: Vec<char> = symbols.chars().collect();
        if symbols.is_empty() {
            return Err(usage("alphabet must contain at least one letter"));
        }
        if symbols.len() > MAX_ALPHABET {
            return Err(usage(format!(
                "alphabet has {} letters, at most {MAX_ALPHABET} are supported",
                symbols.len()
            )));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(usage(format!("duplicate letter {c:?} in alphabet")));
            }
        }
        Ok(Arc::new(Alphabet { symbols }))
    }

    /// The first `k` symbols of `0-9a-z`, handy for enumeration output.
    pub fn digits(k: usize) -> Result<Arc<Self>> {
        const DIGITS: &str = "0123456789abcdefghijklmnopqrstuvwxyz";
        if k == 0 || k > MAX_ALPHABET {
            return Err(usage(format!(
                "alphabet size {k} out of range 1..={MAX_ALPHABET}"
            )));
        }
        Alphabet::new(&DIGITS[..k])
    }

    pub fn binary_ab() -> Arc<Self> {
        Alphabet::new("ab").expect("static alphabet")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn rank(&self, c: char) -> Option<u8> {
        self.symbols.iter().position(|&s| s == c).map(|r| r as u8)
    }

    pub fn symbol(&self, rank: u8) -> char {
        self.symbols[rank as usize]
    }

    pub fn symbols(&self) -> String {
        self.symbols.iter().collect()
    }

    pub fn render(&self, ranks: &[u8]) -> String {
        ranks.iter().map(|&r| self.symbol(r)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbols())
    }
}

/// A finite word over an [`Alphabet`]. The empty word is a valid value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<u8>,
}

impl Word {
    /// Parses `text` letter by letter against `alphabet`.
    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<Self> {
        let letters = text
            .chars()
            .enumerate()
            .map(|(position, letter)| {
                alphabet.rank(letter).ok_or_else(|| Error::InvalidLetter {
                    letter,
                    position,
                    alphabet: alphabet.symbols(),
                })
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word {
            alphabet: Arc::clone(alphabet),
            letters,
        })
    }

    pub fn from_ranks(alphabet: &Arc<Alphabet>, letters: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&r| r as usize >= alphabet.len()) {
            return Err(usage(format!(
                "letter rank {bad} out of range for alphabet {:?}",
                alphabet.symbols()
            )));
        }
        Ok(Word {
            alphabet: Arc::clone(alphabet),
            letters,
        })
    }

    /// Caller guarantees every rank is in range.
    pub(crate) fn from_ranks_unchecked(alphabet: &Arc<Alphabet>, letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&r| (r as usize) < alphabet.len()));
        Word {
            alphabet: Arc::clone(alphabet),
            letters,
        }
    }

    pub fn empty(alphabet: &Arc<Alphabet>) -> Self {
        Word {
            alphabet: Arc::clone(alphabet),
            letters: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn ranks(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_ranks(self) -> Vec<u8> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same alphabet, different letters.
    pub fn with_ranks(&self, letters: Vec<u8>) -> Self {
        Word::from_ranks_unchecked(&self.alphabet, letters)
    }

    pub fn factor(&self, start: usize, end: usize) -> Self {
        self.with_ranks(self.letters[start..end].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Result<Self> {
        self.same_alphabet(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(self.with_ranks(letters))
    }

    pub(crate) fn same_alphabet(&self, other: &Word) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.alphabet.symbols(),
                right: other.alphabet.symbols(),
            })
        }
    }

    pub(crate) fn require_nonempty(&self, what: &str) -> Result<()> {
        if self.is_empty() {
            Err(usage(format!("{what} requires a nonempty word")))
        } else {
            Ok(())
        }
    }

    pub fn period_set(&self) -> Result<PeriodSet> {
        self.require_nonempty("period_set")?;
        Ok(PeriodSet {
            len: self.len(),
            periods: periods(&self.letters),
        })
    }

    pub fn is_primitive(&self) -> Result<bool> {
        self.require_nonempty("is_primitive")?;
        Ok(is_primitive(&self.letters))
    }

    /// Whether `self` is a prefix of `base^k` for some `k >= 1`.
    pub fn is_periodic_extension_of(&self, base: &Word) -> Result<bool> {
        self.same_alphabet(base)?;
        self.require_nonempty("is_periodic_extension")?;
        base.require_nonempty("is_periodic_extension")?;
        Ok(is_periodic_extension(&self.letters, &base.letters))
    }

    pub fn structural_views(&self) -> Result<StructuralViews> {
        self.require_nonempty("structural_views")?;
        let reversal: Vec<u8> = self.letters.iter().rev().copied().collect();
        let n = self.len();
        Ok(StructuralViews {
            is_palindrome: reversal == self.letters,
            reversal: self.with_ranks(reversal),
            last_dropped: self.factor(0, n - 1),
            interior: (n >= 2).then(|| self.factor(1, n - 1)),
        })
    }

    pub fn reversal(&self) -> Self {
        self.with_ranks(self.letters.iter().rev().copied().collect())
    }

    /// Interior `p` of `w = a p b`.
    pub fn interior(&self) -> Result<Self> {
        if self.len() < 2 {
            return Err(usage("interior requires a word of length at least 2"));
        }
        Ok(self.factor(1, self.len() - 1))
    }

    /// Relabels letters by order of first occurrence; two words are equal up
    /// to renaming iff their canonical forms coincide.
    pub fn canonical_rename(&self) -> Self {
        self.with_ranks(canonical_rename(&self.letters))
    }

    /// Order-preserving relabelling onto the smallest letters of the
    /// alphabet. Unlike [`Word::canonical_rename`] this keeps the Lyndon
    /// property.
    pub fn dense_rename(&self) -> Self {
        self.with_ranks(dense_rename(&self.letters))
    }

    pub fn complement(&self) -> Result<Self> {
        if self.alphabet.len() != 2 {
            return Err(usage(format!(
                "complement needs a binary alphabet, got {:?}",
                self.alphabet.symbols()
            )));
        }
        Ok(self.with_ranks(complement(&self.letters)))
    }

    pub fn factor_set(&self, max_len: usize) -> Result<FactorSet> {
        if max_len == 0 {
            return Err(usage("factor_set requires max_len >= 1"));
        }
        Ok(FactorSet::from_ranks(
            &self.alphabet,
            max_len,
            factors(&self.letters, max_len),
        ))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(&self.letters))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Word({:?} over {:?})",
            self.to_string(),
            self.alphabet.symbols()
        )
    }
}

/// Lexicographic order; `None` when the alphabets differ.
impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        compare_lex(self, other).ok()
    }
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    alphabet: String,
    word: String,
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WordRepr {
            alphabet: self.alphabet.symbols(),
            word: self.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = WordRepr::deserialize(deserializer)?;
        let alphabet = Alphabet::new(&repr.alphabet).map_err(serde::de::Error::custom)?;
        Word::parse(&repr.word, &alphabet).map_err(serde::de::Error::custom)
    }
}

pub fn compare_lex(u: &Word, v: &Word) -> Result<Ordering> {
    u.same_alphabet(v)?;
    Ok(u.letters.cmp(&v.letters))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralViews {
    pub reversal: Word,
    pub last_dropped: Word,
    /// `None` for single letters.
    pub interior: Option<Word>,
    pub is_palindrome: bool,
}

/// All periods `1..=|w|` of a nonempty word; `|w|` is always present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodSet {
    len: usize,
    periods: Vec<usize>,
}

impl PeriodSet {
    pub fn periods(&self) -> &[usize] {
        &self.periods
    }

    pub fn contains(&self, p: usize) -> bool {
        self.periods.binary_search(&p).is_ok()
    }

    pub fn smallest(&self) -> usize {
        self.periods[0]
    }

    pub fn is_unbordered(&self) -> bool {
        self.smallest() == self.len
    }
}

/// Distinct nonempty factors of bounded length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    alphabet: Arc<Alphabet>,
    max_len: usize,
    factors: BTreeSet<Vec<u8>>,
}

impl FactorSet {
    pub(crate) fn from_ranks(
        alphabet: &Arc<Alphabet>,
        max_len: usize,
        factors: BTreeSet<Vec<u8>>,
    ) -> Self {
        FactorSet {
            alphabet: Arc::clone(alphabet),
            max_len,
            factors,
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.alphabet == self.alphabet && self.factors.contains(w.ranks())
    }

    pub fn contains_ranks(&self, w: &[u8]) -> bool {
        self.factors.contains(w)
    }

    pub fn ranks(&self) -> &BTreeSet<Vec<u8>> {
        &self.factors
    }

    /// Members ordered by length, then lexicographically.
    pub fn words(&self) -> Vec<Word> {
        let mut out: Vec<&Vec<u8>> = self.factors.iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out.into_iter()
            .map(|f| Word::from_ranks_unchecked(&self.alphabet, f.clone()))
            .collect()
    }

    /// Factors present in `self` but not in `other`.
    pub fn difference(&self, other: &FactorSet) -> Vec<Word> {
        self.factors
            .difference(&other.factors)
            .map(|f| Word::from_ranks_unchecked(&self.alphabet, f.clone()))
            .collect()
    }

    pub fn restricted_to(&self, max_len: usize) -> FactorSet {
        FactorSet {
            alphabet: Arc::clone(&self.alphabet),
            max_len: max_len.min(self.max_len),
            factors: self
                .factors
                .iter()
                .filter(|f| f.len() <= max_len)
                .cloned()
                .collect(),
        }
    }
}

// ---- rank-slice primitives ----

/// `p` is a period of `w` iff `w[i + p] == w[i]` wherever defined; every
/// `p >= |w|` is a period.
pub fn has_period(w: &[u8], p: usize) -> bool {
    p >= 1 && (p >= w.len() || w[p..] == w[..w.len() - p])
}

/// Periods in `1..=|w|`, increasing. Empty for the empty word.
pub fn periods(w: &[u8]) -> Vec<usize> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    // Borders via the failure function: p is a period iff n - p is a border length.
    let fail = failure_function(w);
    let mut out = vec![n];
    let mut b = fail[n];
    while b > 0 {
        out.push(n - b);
        b = fail[b];
    }
    out.sort_unstable();
    out
}

/// `fail[i]` is the length of the longest proper border of `w[..i]`.
fn failure_function(w: &[u8]) -> Vec<usize> {
    let mut fail = vec![0usize; w.len() + 1];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = fail[k];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    fail
}

pub fn smallest_period(w: &[u8]) -> usize {
    let fail = failure_function(w);
    w.len() - fail[w.len()]
}

pub fn is_primitive(w: &[u8]) -> bool {
    let n = w.len();
    let p = smallest_period(w);
    // The primitive root has length p exactly when p divides n.
    !(p < n && n.is_multiple_of(p))
}

pub fn is_periodic_extension(z: &[u8], w: &[u8]) -> bool {
    !w.is_empty() && z.iter().enumerate().all(|(i, &c)| c == w[i % w.len()])
}

pub fn is_palindrome(w: &[u8]) -> bool {
    w.iter().eq(w.iter().rev())
}

pub fn canonical_rename(w: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    w.iter()
        .map(|&c| {
            if map[c as usize] == u8::MAX {
                map[c as usize] = next;
                next += 1;
            }
            map[c as usize]
        })
        .collect()
}

pub fn dense_rename(w: &[u8]) -> Vec<u8> {
    let mut used = [false; 256];
    for &c in w {
        used[c as usize] = true;
    }
    let mut map = [0u8; 256];
    let mut next = 0u8;
    for (c, &u) in used.iter().enumerate() {
        if u {
            map[c] = next;
            next += 1;
        }
    }
    w.iter().map(|&c| map[c as usize]).collect()
}

/// Swaps ranks 0 and 1.
pub fn complement(w: &[u8]) -> Vec<u8> {
    w.iter().map(|&c| 1 - c.min(1)).collect()
}

pub fn distinct_letters(w: &[u8]) -> usize {
    let mut seen = [false; 256];
    w.iter()
        .filter(|&&c| !std::mem::replace(&mut seen[c as usize], true))
        .count()
}

/// Every distinct nonempty factor of length at most `max_len`.
pub fn factors(w: &[u8], max_len: usize) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    for i in 0..w.len() {
        for j in i + 1..=(i + max_len).min(w.len()) {
            if !out.contains(&w[i..j]) {
                out.insert(w[i..j].to_vec());
            }
        }
    }
    out
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All words of length `n` over `k` letters, in lexicographic order.
pub fn all_words(n: usize, k: u8) -> impl Iterator<Item = Vec<u8>> {
    let total = (k as u64)
        .checked_pow(n as u32)
        .expect("word space too large");
    (0..total).map(move |mut x| {
        let mut w = vec![0u8; n];
        for slot in w.iter_mut().rev() {
            *slot = (x % k as u64) as u8;
            x /= k as u64;
        }
        w
    })
}
