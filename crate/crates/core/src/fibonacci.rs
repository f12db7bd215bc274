//! Fibonacci numbers and words, central words, and Fibonacci Lyndon words.
//!
//! A [`FibVariant`] fixes the two seed letters `f1`, `f2`; the recursion is
//! `f_n = f_{n-1} f_{n-2}` for `n >= 3`. The central word `p_n` is `f_n`
//! without its last two letters.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::lyndon::is_lyndon;
use crate::words::{self, has_period, Alphabet, Word};

/// Largest index accepted by [`fib_word`]; `F_32` is about 2.1 million.
pub const FIB_WORD_CAP: usize = 32;

/// Largest index for which `F_n` fits in a `u64`.
pub const FIB_NUMBER_CAP: usize = 93;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibVariant {
    alphabet: Arc<Alphabet>,
    f1: u8,
    f2: u8,
}

impl FibVariant {
    pub fn new(alphabet: &Arc<Alphabet>, f1: char, f2: char) -> Result<Self> {
        let rank = |c: char| {
            alphabet.rank(c).ok_or_else(|| {
                usage(format!(
                    "letter {c:?} is not in alphabet {:?}",
                    alphabet.symbols()
                ))
            })
        };
        let (f1, f2) = (rank(f1)?, rank(f2)?);
        if f1 == f2 {
            return Err(usage("Fibonacci seed letters must differ"));
        }
        Ok(FibVariant {
            alphabet: Arc::clone(alphabet),
            f1,
            f2,
        })
    }

    /// Parses a two-letter text such as `"ba"` (meaning `f1 = b`, `f2 = a`).
    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<Self> {
        let letters: Vec<char> = text.chars().collect();
        match letters.as_slice() {
            &[f1, f2] => FibVariant::new(alphabet, f1, f2),
            _ => Err(usage(format!(
                "Fibonacci variant must be two letters like \"ba\", got {text:?}"
            ))),
        }
    }

    /// `f1 = b`, `f2 = a` over `{a < b}`.
    pub fn ba() -> Self {
        FibVariant::new(&Alphabet::binary_ab(), 'b', 'a').expect("static variant")
    }

    /// `f1 = a`, `f2 = b` over `{a < b}`.
    pub fn ab() -> Self {
        FibVariant::new(&Alphabet::binary_ab(), 'a', 'b').expect("static variant")
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn seeds(&self) -> (u8, u8) {
        (self.f1, self.f2)
    }

    /// The smaller and larger of the two letters.
    pub fn letters(&self) -> (u8, u8) {
        (self.f1.min(self.f2), self.f1.max(self.f2))
    }

    fn word(&self, ranks: Vec<u8>) -> Word {
        Word::from_ranks_unchecked(&self.alphabet, ranks)
    }
}

impl fmt::Display for FibVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            self.alphabet.symbol(self.f1),
            self.alphabet.symbol(self.f2)
        )
    }
}

/// `F_0 = 0`, `F_1 = 1`, `F_n = F_{n-1} + F_{n-2}`.
pub fn fib_number(n: usize) -> Result<u64> {
    if n > FIB_NUMBER_CAP {
        return Err(usage(format!(
            "F_{n} overflows 64 bits (max n = {FIB_NUMBER_CAP})"
        )));
    }
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    Ok(a)
}

fn fib(n: usize) -> u64 {
    fib_number(n).expect("index within cap")
}

/// Ranks of `f_n` for seeds `(f1, f2)`, `n >= 1`.
pub fn fib_word_ranks(n: usize, f1: u8, f2: u8) -> Vec<u8> {
    assert!(n >= 1);
    let (mut prev, mut cur) = (vec![f1], vec![f2]);
    if n == 1 {
        return prev;
    }
    for _ in 2..n {
        let mut next = cur.clone();
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

pub fn fib_word(n: usize, v: &FibVariant) -> Result<Word> {
    if n == 0 || n > FIB_WORD_CAP {
        return Err(usage(format!(
            "fib_word index must lie in 1..={FIB_WORD_CAP}, got {n}"
        )));
    }
    Ok(v.word(fib_word_ranks(n, v.f1, v.f2)))
}

pub fn central_p_ranks(n: usize, f1: u8, f2: u8) -> Vec<u8> {
    let mut f = fib_word_ranks(n, f1, f2);
    f.truncate(f.len() - 2);
    f
}

/// `p_n`: `f_n` minus its last two letters, `n >= 3`.
pub fn central_p(n: usize, v: &FibVariant) -> Result<Word> {
    if n < 3 {
        return Err(usage(format!("central_p requires n >= 3, got {n}")));
    }
    Ok(fib_word(n, v)?.factor(0, fib(n) as usize - 2))
}

/// A central word with its coprime periods `p`, `q`; `|word| = p + q - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralWitness {
    pub p: usize,
    pub q: usize,
    pub word: Word,
}

/// The central word with periods `p` and `q` over `{a < b}` whose first
/// letter is `a`. Positions `i` and `i + p`, `i` and `i + q` are forced equal;
/// coprimality leaves at most two classes.
pub fn central_word(p: usize, q: usize) -> Result<CentralWitness> {
    if p == 0 || q == 0 {
        return Err(usage("central_word periods must be positive"));
    }
    if words::gcd(p, q) != 1 {
        return Err(Error::Domain(format!(
            "periods {p} and {q} are not coprime"
        )));
    }
    let len = p + q - 2;
    let mut parent: Vec<usize> = (0..len).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for step in [p, q] {
        for i in 0..len.saturating_sub(step) {
            let (a, b) = (find(&mut parent, i), find(&mut parent, i + step));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut class_letter: Vec<Option<u8>> = vec![None; len];
    let mut next = 0u8;
    let mut ranks = Vec::with_capacity(len);
    for i in 0..len {
        let root = find(&mut parent, i);
        let letter = *class_letter[root].get_or_insert_with(|| {
            next += 1;
            next - 1
        });
        ranks.push(letter);
    }
    debug_assert!(next <= 2);
    Ok(CentralWitness {
        p,
        q,
        word: Word::from_ranks_unchecked(&Alphabet::binary_ab(), ranks),
    })
}

/// True iff `z` has coprime periods `p`, `q` with `p + q = |z| + 2`.
pub fn is_central_ranks(z: &[u8]) -> bool {
    if words::distinct_letters(z) > 2 {
        return false;
    }
    let total = z.len() + 2;
    (1..total).any(|p| {
        let q = total - p;
        p <= q && words::gcd(p, q) == 1 && has_period(z, p) && has_period(z, q)
    })
}

impl Word {
    pub fn is_central(&self) -> bool {
        is_central_ranks(self.ranks())
    }

    /// The index `n` when `self` is a Fibonacci Lyndon word of length `F_n`.
    pub fn fib_lyndon_index(&self) -> Option<usize> {
        fib_lyndon_index(self.ranks())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FibLyndonKind {
    /// `a p_n b`
    Plain,
    /// `a c(p_n) b`
    Complement,
}

impl FromStr for FibLyndonKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(FibLyndonKind::Plain),
            "complement" => Ok(FibLyndonKind::Complement),
            other => Err(usage(format!("unknown Fibonacci Lyndon kind {other:?}"))),
        }
    }
}

/// Fibonacci Lyndon word of length `F_n` in ranks `0 < 1`, built from `p_n`
/// of the variant `f1 = 1`, `f2 = 0`.
pub fn fib_lyndon_ranks(n: usize, kind: FibLyndonKind) -> Vec<u8> {
    let mut p = central_p_ranks(n, 1, 0);
    if kind == FibLyndonKind::Complement {
        p = words::complement(&p);
    }
    let mut w = Vec::with_capacity(p.len() + 2);
    w.push(0);
    w.extend(p);
    w.push(1);
    w
}

/// `a p_n b` or `a c(p_n) b` where `p_n` comes from `v` and `a < b` are its
/// letters.
pub fn fib_lyndon(n: usize, kind: FibLyndonKind, v: &FibVariant) -> Result<Word> {
    if !(3..=FIB_WORD_CAP).contains(&n) {
        return Err(usage(format!(
            "fib_lyndon index must lie in 3..={FIB_WORD_CAP}, got {n}"
        )));
    }
    let (a, b) = v.letters();
    let p = central_p_ranks(n, v.f1, v.f2);
    let mut w = vec![a];
    w.extend(p.into_iter().map(|c| match kind {
        FibLyndonKind::Plain => c,
        FibLyndonKind::Complement => a + b - c,
    }));
    w.push(b);
    Ok(v.word(w))
}

fn fib_index_of_length(len: usize) -> Option<usize> {
    (3..FIB_NUMBER_CAP)
        .map(|n| (n, fib(n)))
        .take_while(|&(_, f)| f <= len as u64)
        .find(|&(_, f)| f == len as u64)
        .map(|(n, _)| n)
}

/// Recognizer by periods: `w` is Lyndon and binary, `|w| = F_n`, and
/// `a p_w` has period `F_{n-1}` while `p_w b` has period `F_{n-2}`, or the
/// other way round.
pub fn fib_lyndon_index(w: &[u8]) -> Option<usize> {
    if w.len() < 2 || words::distinct_letters(w) != 2 || !is_lyndon(w) {
        return None;
    }
    let n = fib_index_of_length(w.len())?;
    let (big, small) = (fib(n - 1) as usize, fib(n - 2) as usize);
    let (ap, pb) = (&w[..w.len() - 1], &w[1..]);
    let ok = (has_period(ap, big) && has_period(pb, small))
        || (has_period(ap, small) && has_period(pb, big));
    ok.then_some(n)
}

/// Recognizer by construction: the order-preserving relabelling of `w` is
/// one of the two Fibonacci Lyndon words of its length.
pub fn fib_lyndon_index_by_construction(w: &[u8]) -> Option<usize> {
    let n = fib_index_of_length(w.len())?;
    if n > FIB_WORD_CAP || words::distinct_letters(w) != 2 {
        return None;
    }
    let dense = words::dense_rename(w);
    [FibLyndonKind::Plain, FibLyndonKind::Complement]
        .into_iter()
        .any(|k| fib_lyndon_ranks(n, k) == dense)
        .then_some(n)
}

/// Length-`len` prefix of the infinite Fibonacci word, as ranks.
pub fn fib_infinite_prefix_ranks(len: usize, f1: u8, f2: u8) -> Vec<u8> {
    // f_n is a prefix of f_{n+1} for n >= 2.
    let (mut prev, mut cur) = (vec![f1], vec![f2]);
    while cur.len() < len {
        let mut next = cur.clone();
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur.truncate(len);
    cur
}

pub fn fib_infinite_prefix(len: usize, v: &FibVariant) -> Word {
    v.word(fib_infinite_prefix_ranks(len, v.f1, v.f2))
}

/// The unique `k >= 2` with `F_k <= n < F_{k+1}`: the number of Lyndon
/// factors of length at most `n` in a Fibonacci infinite word.
pub fn lf_closed(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(usage("lf_closed requires n >= 1"));
    }
    let mut k = 2;
    while fib(k + 1) <= n as u64 {
        k += 1;
    }
    Ok(k)
}

/// `⌈log_φ n⌉` in exact integer arithmetic.
///
/// Uses `φ^m = F_m φ + F_{m-1}`: `φ^m >= n` iff `F_m √5 >= 2(n - F_{m-1}) - F_m`,
/// decided by squaring. `φ^m` is irrational for `m >= 1`, so equality with an
/// integer only happens at `m = 0`.
pub fn ceil_log_phi(n: u64) -> u32 {
    assert!(n >= 1, "log of zero");
    let reaches = |m: usize| -> bool {
        if m == 0 {
            return n == 1;
        }
        let (fm, fm1) = (fib(m) as i128, fib(m - 1) as i128);
        let s = 2 * (n as i128 - fm1) - fm;
        s <= 0 || 5 * fm * fm >= s * s
    };
    (0..)
        .find(|&m| reaches(m))
        .expect("phi^m grows without bound") as u32
}

/// Floating-point `⌈ln n / ln φ⌉`, kept as an independent cross-check.
pub fn ceil_log_phi_float(n: u64) -> u32 {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    ((n as f64).ln() / phi.ln()).ceil() as u32
}
