//! Named, exhaustive checks of the combinatorial statements this crate
//! implements. Each check returns a [`CheckReport`]; a failing report always
//! carries concrete counterexample words.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{usage, Result};
use crate::fibonacci::{
    self, ceil_log_phi, ceil_log_phi_float, central_p_ranks, central_word, fib_lyndon_index,
    fib_lyndon_index_by_construction, fib_lyndon_ranks, fib_number, lf_closed, FibLyndonKind,
};
use crate::infinite::{
    all_lyndon_factors, factor_set_of_source, lyndon_profile, lyndon_profile_by_search, Exactness,
    InfiniteSource, DEFAULT_PREFIX_BUDGET,
};
use crate::lyndon::{
    cfl_ranges, is_lyndon, is_lyndon_by_conjugates, is_lyndon_by_suffixes, is_sturmian_lyndon,
    lyndon_conjugate_ranks, lyndon_factor_count, lyndon_words_up_to, min_lyndon_profile,
    LyndonFilter,
};
use crate::words::{
    self, all_words, canonical_rename, complement, gcd, has_period, is_palindrome,
    is_periodic_extension, periods, Alphabet, Word, DEFAULT_SYMBOLS,
};

/// Counterexamples kept per report.
pub const MAX_REPORTED: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Result of an open statement: enumerated support, never a proof.
    Evidence,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Evidence => "evidence",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub scope: String,
    pub verdict: Verdict,
    pub violations: Vec<Word>,
    /// Words that do not support an open statement; only set on evidence.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub exceptions: Vec<Word>,
    pub notes: Vec<String>,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// Everything except the timing, for comparing runs.
    pub fn outcome(&self) -> (&str, &str, Verdict, &[Word], &[Word], &[String]) {
        (
            &self.check_id,
            &self.scope,
            self.verdict,
            &self.violations,
            &self.exceptions,
            &self.notes,
        )
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.check_id, self.scope, self.verdict)?;
        if !self.violations.is_empty() {
            let listed: Vec<String> = self.violations.iter().map(Word::to_string).collect();
            write!(f, " violations: {}", listed.join(", "))?;
        }
        if !self.exceptions.is_empty() {
            let listed: Vec<String> = self.exceptions.iter().map(Word::to_string).collect();
            write!(f, " exceptions: {}", listed.join(", "))?;
        }
        Ok(())
    }
}

/// Collects counterexamples in a canonical order so that reports do not
/// depend on scheduling.
struct Collector {
    alphabet: Arc<Alphabet>,
    found: BTreeSet<(usize, Vec<u8>)>,
    total: usize,
    notes: Vec<String>,
}

impl Collector {
    fn new(alphabet: Arc<Alphabet>) -> Self {
        Collector {
            alphabet,
            found: BTreeSet::new(),
            total: 0,
            notes: Vec::new(),
        }
    }

    fn add(&mut self, w: Vec<u8>) {
        if self.found.insert((w.len(), w)) {
            self.total += 1;
        }
    }

    fn extend(&mut self, ws: impl IntoIterator<Item = Vec<u8>>) {
        for w in ws {
            self.add(w);
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(mut self, check_id: &str, scope: String, start: Instant) -> CheckReport {
        if self.total > MAX_REPORTED {
            self.note(format!(
                "{} violations, first {MAX_REPORTED} listed",
                self.total
            ));
        }
        let violations: Vec<Word> = self
            .found
            .into_iter()
            .take(MAX_REPORTED)
            .map(|(_, w)| Word::from_ranks_unchecked(&self.alphabet, w))
            .collect();
        CheckReport {
            check_id: check_id.to_string(),
            scope,
            verdict: if violations.is_empty() {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            violations,
            exceptions: Vec::new(),
            notes: self.notes,
            elapsed: start.elapsed(),
        }
    }
}

/// The first `k` default symbols: `a`, `b`, `c`, ...
pub fn sweep_alphabet(k: usize) -> Result<Arc<Alphabet>> {
    if k == 0 || k > DEFAULT_SYMBOLS.len() {
        return Err(usage(format!(
            "alphabet size must lie in 1..={}",
            DEFAULT_SYMBOLS.len()
        )));
    }
    Alphabet::new(&DEFAULT_SYMBOLS[..k])
}

/// One Lyndon word per order-preserving renaming class, over at most `k`
/// letters and of length at most `max_len`.
fn dense_lyndon_words(max_len: usize, k: usize) -> Vec<Vec<u8>> {
    lyndon_words_up_to(max_len, k as u8)
        .filter(|w| LyndonFilter::Dense.keeps(w))
        .collect()
}

/// Largest `n >= 3` with `F_n <= len`, for `len >= 2`.
fn fib_floor_index(len: usize) -> usize {
    let mut n = 3;
    while fib_number(n + 1).expect("small index") <= len as u64 {
        n += 1;
    }
    n
}

fn check_args(max_len: usize, max_alphabet: usize) -> Result<()> {
    if max_len < 2 {
        return Err(usage("max_len must be at least 2"));
    }
    if max_alphabet < 2 || max_alphabet > DEFAULT_SYMBOLS.len() {
        return Err(usage(format!(
            "max_alphabet must lie in 2..={}",
            DEFAULT_SYMBOLS.len()
        )));
    }
    Ok(())
}

/// Every Lyndon word `w` with `|w| >= F_n` (`n >= 3`) has `𝓛(w) >= n`, with
/// equality exactly for the Fibonacci Lyndon words of length `F_n`.
pub fn check_main_theorem(max_len: usize, max_alphabet: usize) -> Result<CheckReport> {
    check_args(max_len, max_alphabet)?;
    let start = Instant::now();
    let words = dense_lyndon_words(max_len, max_alphabet);
    let results: Vec<(Vec<u8>, bool, bool)> = words
        .par_iter()
        .filter(|w| w.len() >= 2)
        .map(|w| {
            let n = fib_floor_index(w.len());
            let count = lyndon_factor_count(w);
            let fib = fib_lyndon_index(w);
            let bad =
                count < n || (count == n && fib != Some(n)) || fib.is_some_and(|m| count != m);
            (w.clone(), bad, count == n)
        })
        .collect();
    let mut c = Collector::new(sweep_alphabet(max_alphabet)?);
    let mut equality = 0;
    for (w, bad, eq) in results.iter() {
        if *bad {
            c.add(w.clone());
        }
        equality += *eq as usize;
    }
    // Both Fibonacci Lyndon words of each length must appear and be tight.
    let seen: BTreeSet<&[u8]> = results
        .iter()
        .filter(|r| r.2)
        .map(|r| r.0.as_slice())
        .collect();
    let mut n = 3;
    while fib_number(n)? as usize <= max_len {
        for kind in [FibLyndonKind::Plain, FibLyndonKind::Complement] {
            let w = fib_lyndon_ranks(n, kind);
            if !seen.contains(w.as_slice()) {
                c.add(w);
            }
        }
        n += 1;
    }
    c.note(format!(
        "{} Lyndon words checked, {equality} equality cases",
        results.len()
    ));
    Ok(c.finish(
        "main_theorem",
        format!("max_len={max_len} max_alphabet={max_alphabet}"),
        start,
    ))
}

/// `𝓛(w) >= ⌈log_φ |w|⌉ + 1` for every Lyndon word, tight on Fibonacci
/// Lyndon words; the integer and floating-point ceilings agree.
pub fn check_log_phi(max_len: usize, max_alphabet: usize) -> Result<CheckReport> {
    check_args(max_len, max_alphabet)?;
    let start = Instant::now();
    let words = dense_lyndon_words(max_len, max_alphabet);
    let bad: Vec<Vec<u8>> = words
        .par_iter()
        .filter(|w| {
            let bound = ceil_log_phi(w.len() as u64) as usize + 1;
            let count = lyndon_factor_count(w);
            count < bound || (fib_lyndon_index(w).is_some() && count != bound)
        })
        .cloned()
        .collect();
    let mut c = Collector::new(sweep_alphabet(max_alphabet)?);
    c.extend(bad);
    let ceiling_range = (max_len as u64).max(100_000);
    let mismatched: Vec<u64> = (1..=ceiling_range)
        .into_par_iter()
        .filter(|&n| ceil_log_phi(n) != ceil_log_phi_float(n))
        .collect();
    if let Some(&n) = mismatched.first() {
        // A word of the offending length, replayable through `analyze`.
        c.add(vec![0; n as usize]);
        c.note(format!("ceil(log_phi) disagrees at n = {n}"));
    }
    let tight: Vec<String> = (3..)
        .map(|n| (n, fib_number(n).expect("small index") as usize))
        .take_while(|&(_, f)| f <= max_len)
        .map(|(_, f)| f.to_string())
        .collect();
    c.note(format!(
        "{} Lyndon words checked; equality at Fibonacci lengths {}; ceilings agree for n <= {ceiling_range}",
        words.len(),
        tight.join(",")
    ));
    Ok(c.finish(
        "log_phi",
        format!("max_len={max_len} max_alphabet={max_alphabet}"),
        start,
    ))
}

const LENGTH_SIX_MINIMIZERS: [&str; 8] = [
    "000001", "000101", "001101", "010111", "010102", "010202", "021022", "011111",
];

const KNOWN_ELL: [(usize, usize); 5] = [(2, 3), (3, 4), (5, 5), (6, 7), (8, 6)];

/// Recomputes `ℓ(n)` and its extremal words, compares with the known
/// values, and reports evidence for the conjecture that minimizers of every
/// length other than 6 are Sturmian Lyndon words.
pub fn check_ell_and_conjecture(n_max: usize) -> Result<CheckReport> {
    if n_max == 0 {
        return Err(usage("n_max must be at least 1"));
    }
    let start = Instant::now();
    let entries = (1..=n_max)
        .into_par_iter()
        .map(min_lyndon_profile)
        .collect::<Result<Vec<_>>>()?;
    let digits = Alphabet::digits(words::MAX_ALPHABET)?;
    let mut c = Collector::new(Arc::clone(&digits));
    let ranks = |w: &Word| w.ranks().to_vec();

    for &(n, ell) in KNOWN_ELL.iter().filter(|(n, _)| *n <= n_max) {
        let e = &entries[n - 1];
        if e.ell != ell {
            c.extend(e.extremal_words.iter().map(ranks));
            c.note(format!("l({n}) = {} but {ell} was expected", e.ell));
        }
    }
    if n_max >= 6 {
        let e = &entries[5];
        let listed: BTreeSet<Vec<u8>> = LENGTH_SIX_MINIMIZERS
            .iter()
            .map(|s| canonical_rename(&s.bytes().map(|b| b - b'0').collect::<Vec<u8>>()))
            .collect();
        let ours: BTreeSet<Vec<u8>> = e
            .extremal_words
            .iter()
            .map(|w| canonical_rename(w.ranks()))
            .collect();
        c.extend(listed.symmetric_difference(&ours).cloned());
        let ternary = e
            .extremal_words
            .iter()
            .filter(|w| words::distinct_letters(w.ranks()) == 3)
            .count();
        if ternary != 3 {
            c.extend(e.extremal_words.iter().map(ranks));
        }
        c.note(format!(
            "n=6: {} extremal words, {ternary} ternary",
            e.extremal_words.len()
        ));
    }
    if n_max >= 5 {
        let e = &entries[4];
        let fib: BTreeSet<Vec<u8>> = [FibLyndonKind::Plain, FibLyndonKind::Complement]
            .into_iter()
            .map(|k| fib_lyndon_ranks(5, k))
            .collect();
        let ours: BTreeSet<Vec<u8>> = e.extremal_words.iter().map(ranks).collect();
        c.extend(fib.symmetric_difference(&ours).cloned());
    }

    let exceptions: Vec<Word> = entries
        .iter()
        .filter(|e| e.n >= 2 && e.n != 6)
        .flat_map(|e| e.extremal_words.iter())
        .filter(|w| !is_sturmian_lyndon(w.ranks()))
        .cloned()
        .collect();
    let table: Vec<String> = entries
        .iter()
        .map(|e| format!("{}:{}", e.n, e.ell))
        .collect();
    c.note(format!("l(n) = {}", table.join(" ")));
    c.note(if exceptions.is_empty() {
        format!("conjecture: every minimizer for 2 <= n <= {n_max}, n != 6, is Sturmian Lyndon")
    } else {
        format!(
            "conjecture: {} minimizers are not Sturmian Lyndon",
            exceptions.len()
        )
    });
    let mut report = c.finish("ell_conjecture", format!("n_max={n_max}"), start);
    if report.verdict == Verdict::Pass {
        report.verdict = Verdict::Evidence;
    }
    report.exceptions = exceptions;
    Ok(report)
}

/// On both Fibonacci infinite words: searched Lyndon profiles equal the
/// closed form up to `F_{k_max}`, the witnesses are the Lyndon conjugates of
/// the finite Fibonacci words, and shorter Lyndon factors are prefixes or
/// suffixes of longer Fibonacci Lyndon words.
pub fn check_fibonacci_suite(k_max: usize) -> Result<CheckReport> {
    if !(3..=fibonacci::FIB_WORD_CAP).contains(&k_max) {
        return Err(usage(format!(
            "k_max must lie in 3..={}",
            fibonacci::FIB_WORD_CAP
        )));
    }
    let start = Instant::now();
    let n_max = fib_number(k_max)? as usize;
    let ab = Alphabet::binary_ab();
    let mut c = Collector::new(Arc::clone(&ab));
    for text in ["fib:ba", "fib:ab"] {
        let source = InfiniteSource::parse(text, &ab)?;
        let budget = DEFAULT_PREFIX_BUDGET.max(n_max);
        let searched = lyndon_profile_by_search(&source, n_max, budget)?;
        if searched.exactness != Exactness::Exact {
            c.add(source.prefix_ranks(n_max));
        }
        for n in 1..=n_max {
            if searched.count_at(n) != lf_closed(n)? {
                c.add(source.prefix_ranks(n));
            }
        }
        let (f1, f2) = match source.kind() {
            crate::infinite::SourceKind::Fibonacci { variant } => variant.seeds(),
            _ => unreachable!(),
        };
        let mut expected: BTreeMap<usize, BTreeSet<Vec<u8>>> = BTreeMap::new();
        for k in 1..=k_max {
            let conj =
                lyndon_conjugate_ranks(&fibonacci::fib_word_ranks(k, f1, f2)).expect("primitive");
            expected.entry(conj.len()).or_default().insert(conj);
        }
        for n in 1..=n_max {
            let got: BTreeSet<Vec<u8>> = searched
                .new_at(n)
                .iter()
                .map(|w| w.ranks().to_vec())
                .collect();
            let want = expected.remove(&n).unwrap_or_default();
            c.extend(got.symmetric_difference(&want).cloned());
        }
        let factors = searched.lyndon_factors();
        for k in 3..=k_max {
            let long =
                lyndon_conjugate_ranks(&fibonacci::fib_word_ranks(k, f1, f2)).expect("primitive");
            for f in factors.iter().filter(|f| f.len() < long.len()) {
                if !long.starts_with(f) && !long.ends_with(f) {
                    c.add(f.clone());
                }
            }
        }
    }
    c.note(format!(
        "closed form matches at all {n_max} lengths for both variants"
    ));
    Ok(c.finish(
        "fibonacci_suite",
        format!("k_max={k_max} n_max={n_max}"),
        start,
    ))
}

/// The two counterexample remarks: an aperiodic word with no Lyndon factor
/// of length 5, and two periodic words with equal Lyndon profiles but
/// different factor sets (also after exchanging the letters of one).
pub fn check_remarks() -> Result<CheckReport> {
    let start = Instant::now();
    let ab = Alphabet::binary_ab();
    let mut c = Collector::new(Arc::clone(&ab));

    let g = InfiniteSource::parse("morphic:a->aab;b->aaab;of=fib:ba", &ab)?;
    let f = InfiniteSource::parse("fib:ba", &ab)?;
    let pg = lyndon_profile(&g, 5, DEFAULT_PREFIX_BUDGET)?;
    let pf = lyndon_profile_by_search(&f, 5, DEFAULT_PREFIX_BUDGET)?;
    if pg.exactness != Exactness::Exact || !pg.new_at(5).is_empty() {
        c.extend(pg.new_at(5).iter().map(|w| w.ranks().to_vec()));
        c.add(g.prefix_ranks(16));
    }
    let f5: Vec<String> = pf.new_at(5).iter().map(Word::to_string).collect();
    if f5 != ["aabab"] {
        c.add(f.prefix_ranks(16));
    }
    c.note(format!(
        "g-image length-5 Lyndon factors: {}; Fibonacci: {{{}}}",
        pg.new_at(5).len(),
        f5.join(",")
    ));

    let x_u = vec![0, 0, 0, 0, 0, 1];
    let y_u = vec![0, 0, 0, 1, 0, 1];
    let digits = Alphabet::new("01")?;
    let periodic =
        |u: &[u8]| InfiniteSource::periodic(&Word::from_ranks_unchecked(&digits, u.to_vec()));
    let (x, y, cy) = (
        periodic(&x_u)?,
        periodic(&y_u)?,
        periodic(&complement(&y_u))?,
    );
    let n = 12;
    let px = lyndon_profile(&x, n, DEFAULT_PREFIX_BUDGET)?;
    let py = lyndon_profile(&y, n, DEFAULT_PREFIX_BUDGET)?;
    if px.cumulative != py.cumulative
        || px.witnesses.iter().flatten().count() != py.witnesses.iter().flatten().count()
    {
        c.add(x_u.clone());
        c.add(y_u.clone());
    }
    let fx = factor_set_of_source(&x, n, DEFAULT_PREFIX_BUDGET)?.factors;
    let fy = factor_set_of_source(&y, n, DEFAULT_PREFIX_BUDGET)?.factors;
    let fcy = factor_set_of_source(&cy, n, DEFAULT_PREFIX_BUDGET)?.factors;
    if fx.ranks() == fy.ranks() {
        c.add(y_u.clone());
    }
    if fx.ranks() == fcy.ranks() {
        c.add(complement(&y_u));
    }
    let shortest = |a: &words::FactorSet, b: &words::FactorSet| {
        a.difference(b)
            .into_iter()
            .next()
            .map(|w| w.to_string())
            .unwrap_or_default()
    };
    c.note(format!(
        "profiles of (000001)^w and (000101)^w agree to n={n}: {}; factors only in the first: {} (vs complement: {})",
        px.cumulative == py.cumulative,
        shortest(&fx, &fy),
        shortest(&fx, &fcy)
    ));
    Ok(c.finish("remarks", "n=12".to_string(), start))
}

/// Bounds for [`check_lemma_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaScope {
    /// Binary words for the period, Lyndon and factorization lemmas.
    pub max_len: usize,
    /// Central words with coprime periods `p + q <= central_sum`.
    pub central_sum: usize,
}

impl LemmaScope {
    pub fn new(max_len: usize) -> Self {
        LemmaScope {
            max_len,
            central_sum: max_len + 8,
        }
    }
}

impl fmt::Display for LemmaScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max_len={} central_sum={}",
            self.max_len, self.central_sum
        )
    }
}

/// Property lemmas on periods, Lyndon words, central words and the
/// factorization, exhaustively over binary words.
pub fn check_lemma_suite(scope: LemmaScope) -> Result<CheckReport> {
    if scope.max_len < 2 {
        return Err(usage("max_len must be at least 2"));
    }
    let start = Instant::now();
    let mut c = Collector::new(Alphabet::binary_ab());
    let binary: Vec<Vec<u8>> = (1..=scope.max_len).flat_map(|n| all_words(n, 2)).collect();
    let lyndon: Vec<Vec<u8>> = lyndon_words_up_to(scope.max_len, 2).collect();

    type Sub = fn(&[Vec<u8>], &[Vec<u8>], LemmaScope) -> (usize, Vec<Vec<u8>>);
    let subs: [(&str, Sub); 9] = [
        ("lyndon_characterizations", sub_characterizations),
        ("concatenation", sub_concatenation),
        ("extension", sub_extension),
        ("bisection", sub_bisection),
        ("fine_wilf", sub_fine_wilf),
        ("cmr_periods", sub_cmr),
        ("central_words", sub_central),
        ("fibonacci_recognizer", sub_recognizer),
        ("cfl_oracle", sub_cfl),
    ];
    let results: Vec<(usize, Vec<Vec<u8>>)> = subs
        .par_iter()
        .map(|(_, f)| f(&binary, &lyndon, scope))
        .collect();
    for ((name, _), (checked, bad)) in subs.iter().zip(results) {
        c.note(format!("{name}: {checked} cases, {} violations", bad.len()));
        c.extend(bad);
    }
    Ok(c.finish("lemmas", scope.to_string(), start))
}

fn sub_characterizations(
    binary: &[Vec<u8>],
    _: &[Vec<u8>],
    _: LemmaScope,
) -> (usize, Vec<Vec<u8>>) {
    let bad = binary
        .par_iter()
        .filter(|w| {
            let a = is_lyndon(w);
            a != is_lyndon_by_suffixes(w)
                || a != is_lyndon_by_conjugates(w)
                || (a && periods(w)[0] != w.len())
        })
        .cloned()
        .collect();
    (binary.len(), bad)
}

fn sub_concatenation(
    _: &[Vec<u8>],
    lyndon: &[Vec<u8>],
    scope: LemmaScope,
) -> (usize, Vec<Vec<u8>>) {
    let pairs: Vec<(&Vec<u8>, &Vec<u8>)> = lyndon
        .iter()
        .flat_map(|u| lyndon.iter().map(move |v| (u, v)))
        .filter(|(u, v)| u.len() + v.len() <= scope.max_len && u < v)
        .collect();
    let bad = pairs
        .par_iter()
        .filter_map(|(u, v)| {
            let uv = [u.as_slice(), v.as_slice()].concat();
            (!is_lyndon(&uv)).then_some(uv)
        })
        .collect();
    (pairs.len(), bad)
}

/// `w` Lyndon and `z a` a periodic extension of `w` with `a < b` imply
/// `z b` Lyndon; tested on three letters.
fn sub_extension(_: &[Vec<u8>], _: &[Vec<u8>], scope: LemmaScope) -> (usize, Vec<Vec<u8>>) {
    let len = scope.max_len.min(10);
    let ternary: Vec<Vec<u8>> = lyndon_words_up_to(len, 3).collect();
    let results: Vec<(usize, Vec<Vec<u8>>)> = ternary
        .par_iter()
        .map(|w| {
            let mut checked = 0;
            let mut bad = Vec::new();
            for m in 1..len {
                let za: Vec<u8> = (0..=m).map(|i| w[i % w.len()]).collect();
                debug_assert!(is_periodic_extension(&za, w));
                for b in za[m] + 1..3 {
                    let mut zb = za[..m].to_vec();
                    zb.push(b);
                    checked += 1;
                    if !is_lyndon(&zb) {
                        bad.push(zb);
                    }
                }
            }
            (checked, bad)
        })
        .collect();
    let checked = results.iter().map(|r| r.0).sum();
    (checked, results.into_iter().flat_map(|r| r.1).collect())
}

fn sub_bisection(_: &[Vec<u8>], lyndon: &[Vec<u8>], _: LemmaScope) -> (usize, Vec<Vec<u8>>) {
    let bad = lyndon
        .par_iter()
        .filter(|w| w.len() >= 2)
        .filter(|w| {
            let split = (1..w.len())
                .rev()
                .find(|&i| is_lyndon(&w[..i]))
                .expect("a letter is Lyndon");
            let (lambda, mu) = w.split_at(split);
            let count = lyndon_factor_count(w);
            !is_lyndon(mu)
                || !is_periodic_extension(&w[..w.len() - 1], lambda)
                || !(lambda < w.as_slice() && w.as_slice() < mu)
                || count < lyndon_factor_count(lambda) + 1
                || count < lyndon_factor_count(mu) + 1
        })
        .cloned()
        .collect();
    (lyndon.len(), bad)
}

fn sub_fine_wilf(binary: &[Vec<u8>], _: &[Vec<u8>], _: LemmaScope) -> (usize, Vec<Vec<u8>>) {
    let bad = binary
        .par_iter()
        .filter(|w| {
            let ps = periods(w);
            ps.iter().any(|&p| {
                ps.iter()
                    .any(|&q| p + q - gcd(p, q) <= w.len() && !has_period(w, gcd(p, q)))
            })
        })
        .cloned()
        .collect();
    (binary.len(), bad)
}

fn sub_cmr(binary: &[Vec<u8>], _: &[Vec<u8>], _: LemmaScope) -> (usize, Vec<Vec<u8>>) {
    let bad = binary
        .par_iter()
        .filter(|w| {
            let ps = periods(w);
            ps.iter().any(|&p| {
                ps.iter().filter(|&&q| q < p).any(|&q| {
                    let m = w.len() - q;
                    let (pre, suf) = (&w[..m], &w[w.len() - m..]);
                    [pre, suf]
                        .iter()
                        .any(|x| !has_period(x, q) || !has_period(x, p - q))
                })
            })
        })
        .cloned()
        .collect();
    (binary.len(), bad)
}

/// Central words: both periods, palindromic, the letters `a < b` around
/// them (or their complement) give Lyndon words, and for two periods
/// `>= 2` the word is an extremal Fine–Wilf word. `p_n` is the central word
/// for `F_{n-2}`, `F_{n-1}`.
fn sub_central(_: &[Vec<u8>], _: &[Vec<u8>], scope: LemmaScope) -> (usize, Vec<Vec<u8>>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for q in 1..scope.central_sum {
        for p in 1..=q.min(scope.central_sum - q) {
            if gcd(p, q) != 1 {
                continue;
            }
            checked += 1;
            let z = central_word(p, q).expect("coprime").word.into_ranks();
            let wrap = |inner: &[u8]| [&[0u8][..], inner, &[1u8][..]].concat();
            let ok = has_period(&z, p)
                && has_period(&z, q)
                && is_palindrome(&z)
                && is_lyndon(&wrap(&z))
                && is_lyndon(&wrap(&complement(&z)))
                && (p < 2 || z.is_empty() || !has_period(&z, 1));
            if !ok {
                bad.push(wrap(&z));
            }
        }
    }
    let mut n = 3;
    while fib_number(n).expect("small index") as usize <= scope.central_sum {
        let (a, b) = (
            fib_number(n - 2).unwrap() as usize,
            fib_number(n - 1).unwrap() as usize,
        );
        let z = central_word(a, b)
            .expect("consecutive Fibonacci numbers are coprime")
            .word
            .into_ranks();
        let p = central_p_ranks(n, 1, 0);
        checked += 1;
        if canonical_rename(&z) != canonical_rename(&p) {
            bad.push(p);
        }
        n += 1;
    }
    (checked, bad)
}

fn sub_recognizer(_: &[Vec<u8>], lyndon: &[Vec<u8>], _: LemmaScope) -> (usize, Vec<Vec<u8>>) {
    let bad = lyndon
        .par_iter()
        .filter(|w| fib_lyndon_index(w) != fib_lyndon_index_by_construction(w))
        .cloned()
        .collect();
    (lyndon.len(), bad)
}

/// Every factorization into nonincreasing Lyndon words, by exhaustive
/// search; the factorization is expected to be unique.
fn nonincreasing_lyndon_factorizations(w: &[u8]) -> Vec<Vec<(usize, usize)>> {
    fn go(
        w: &[u8],
        i: usize,
        prev: Option<&[u8]>,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if i == w.len() {
            out.push(acc.clone());
            return;
        }
        for j in i + 1..=w.len() {
            let f = &w[i..j];
            if prev.is_some_and(|p| f > p) || !is_lyndon_by_suffixes(f) {
                continue;
            }
            acc.push((i, j));
            go(w, j, Some(f), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(w, 0, None, &mut Vec::new(), &mut out);
    out
}

fn sub_cfl(binary: &[Vec<u8>], _: &[Vec<u8>], _: LemmaScope) -> (usize, Vec<Vec<u8>>) {
    let bad = binary
        .par_iter()
        .filter(|w| nonincreasing_lyndon_factorizations(w) != [cfl_ranges(w)])
        .cloned()
        .collect();
    (binary.len(), bad)
}

/// Two primitive words whose infinite powers have the same Lyndon factors
/// have the same factors of length up to `|u| + |v|`.
pub fn check_factor_set_theorem(max_period: usize) -> Result<CheckReport> {
    if max_period == 0 {
        return Err(usage("max_period must be at least 1"));
    }
    let start = Instant::now();
    let ab = Alphabet::binary_ab();
    let primitive: Vec<Vec<u8>> = (1..=max_period)
        .flat_map(|n| all_words(n, 2))
        .filter(|u| words::is_primitive(u))
        .collect();
    let sources = primitive
        .iter()
        .map(|u| InfiniteSource::periodic(&Word::from_ranks_unchecked(&ab, u.clone())))
        .collect::<Result<Vec<_>>>()?;
    let lyndon_sets: Vec<BTreeSet<Vec<u8>>> = sources
        .par_iter()
        .map(|s| all_lyndon_factors(s).expect("periodic"))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..primitive.len())
        .flat_map(|i| (i + 1..primitive.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| lyndon_sets[i] == lyndon_sets[j])
        .collect();
    let bad: Vec<Vec<u8>> = pairs
        .par_iter()
        .filter(|&&(i, j)| {
            let m = primitive[i].len() + primitive[j].len();
            let fi = factor_set_of_source(&sources[i], m, DEFAULT_PREFIX_BUDGET).expect("m >= 1");
            let fj = factor_set_of_source(&sources[j], m, DEFAULT_PREFIX_BUDGET).expect("m >= 1");
            fi.factors != fj.factors
        })
        .flat_map(|&(i, j)| [primitive[i].clone(), primitive[j].clone()])
        .collect();
    let mut c = Collector::new(ab);
    c.extend(bad);
    c.note(format!(
        "{} primitive words, {} pairs with equal Lyndon factor sets",
        primitive.len(),
        pairs.len()
    ));
    Ok(c.finish(
        "factor_set_theorem",
        format!("max_period={max_period}"),
        start,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Theorem,
    LogPhi,
    Ell,
    Fib,
    Remarks,
    Lemmas,
    FactorSets,
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "theorem" => Suite::Theorem,
            "logphi" => Suite::LogPhi,
            "ell" => Suite::Ell,
            "fib" => Suite::Fib,
            "remarks" => Suite::Remarks,
            "lemmas" => Suite::Lemmas,
            "factorsets" => Suite::FactorSets,
            other => return Err(usage(format!("unknown suite {other:?}"))),
        })
    }
}

/// Bounds for [`run_suite`]; the defaults are the desk-scale ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteBounds {
    pub binary_len: usize,
    pub ternary_len: usize,
    pub ell_n: usize,
    pub fib_k: usize,
    pub lemma: LemmaScope,
    pub factor_period: usize,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            binary_len: 18,
            ternary_len: 12,
            ell_n: 12,
            fib_k: 12,
            lemma: LemmaScope {
                max_len: 16,
                central_sum: 24,
            },
            factor_period: 6,
        }
    }
}

impl SuiteBounds {
    /// Uses `max_len` for the binary sweep and the lemma words, and scales
    /// the ternary sweep to two thirds of it.
    pub fn with_max_len(max_len: usize) -> Self {
        SuiteBounds {
            binary_len: max_len,
            ternary_len: (2 * max_len / 3).max(2),
            lemma: LemmaScope::new(max_len),
            ..SuiteBounds::default()
        }
    }
}

/// Runs the checks of `suite`, in a fixed order.
pub fn run_suite(suite: Suite, bounds: SuiteBounds) -> Result<Vec<CheckReport>> {
    let want = |s: Suite| suite == Suite::All || suite == s;
    let mut reports = Vec::new();
    if want(Suite::Theorem) {
        reports.push(check_main_theorem(bounds.binary_len, 2)?);
        reports.push(check_main_theorem(bounds.ternary_len, 3)?);
    }
    if want(Suite::LogPhi) {
        reports.push(check_log_phi(bounds.binary_len, 2)?);
        reports.push(check_log_phi(bounds.ternary_len, 3)?);
    }
    if want(Suite::Ell) {
        reports.push(check_ell_and_conjecture(bounds.ell_n)?);
    }
    if want(Suite::Fib) {
        reports.push(check_fibonacci_suite(bounds.fib_k)?);
    }
    if want(Suite::Remarks) {
        reports.push(check_remarks()?);
    }
    if want(Suite::Lemmas) {
        reports.push(check_lemma_suite(bounds.lemma)?);
    }
    if want(Suite::FactorSets) {
        reports.push(check_factor_set_theorem(bounds.factor_period)?);
    }
    Ok(reports)
}
