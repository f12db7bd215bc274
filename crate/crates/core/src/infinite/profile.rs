use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::source::{Exactness, InfiniteSource, SourceKind};
use crate::error::{usage, Result};
use crate::fibonacci::{self, fib_number};
use crate::lyndon::{lyndon_conjugate_ranks, lyndon_factor_set_bounded};
use crate::words::{self, Alphabet, FactorSet, Word};

/// `n ↦ 𝓛_x(n)`, the number of Lyndon factors of length at most `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LyndonProfile {
    pub n_max: usize,
    /// `cumulative[n - 1]` is `𝓛_x(n)`.
    pub cumulative: Vec<usize>,
    /// `witnesses[n - 1]`: the Lyndon factors of length exactly `n`.
    pub witnesses: Vec<Vec<Word>>,
    pub exactness: Exactness,
    /// Letters of the finite words the profile was read from.
    pub prefix_used: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub n: usize,
    pub count: usize,
    pub new_factors: Vec<String>,
    pub exactness: Exactness,
}

impl LyndonProfile {
    pub fn count_at(&self, n: usize) -> usize {
        self.cumulative[n - 1]
    }

    pub fn new_at(&self, n: usize) -> &[Word] {
        &self.witnesses[n - 1]
    }

    pub fn rows(&self) -> Vec<ProfileRow> {
        (1..=self.n_max)
            .map(|n| ProfileRow {
                n,
                count: self.count_at(n),
                new_factors: self.new_at(n).iter().map(Word::to_string).collect(),
                exactness: self.exactness,
            })
            .collect()
    }

    /// All witnesses, shortest first.
    pub fn lyndon_factors(&self) -> Vec<Vec<u8>> {
        self.witnesses
            .iter()
            .flatten()
            .map(|w| w.ranks().to_vec())
            .collect()
    }

    fn from_lyndon_set(
        alphabet: &Arc<Alphabet>,
        n_max: usize,
        factors: BTreeSet<Vec<u8>>,
        exactness: Exactness,
        prefix_used: usize,
    ) -> Self {
        let mut witnesses: Vec<Vec<Word>> = vec![Vec::new(); n_max];
        for f in factors {
            let slot = f.len() - 1;
            witnesses[slot].push(Word::from_ranks_unchecked(alphabet, f));
        }
        for ws in &mut witnesses {
            ws.sort_by(|a, b| a.ranks().cmp(b.ranks()));
        }
        let cumulative = witnesses
            .iter()
            .scan(0, |acc, ws| {
                *acc += ws.len();
                Some(*acc)
            })
            .collect();
        LyndonProfile {
            n_max,
            cumulative,
            witnesses,
            exactness,
            prefix_used,
        }
    }
}

fn check_budgets(n_max: usize, prefix_budget: usize) -> Result<()> {
    if n_max == 0 {
        return Err(usage("n_max must be at least 1"));
    }
    if prefix_budget < n_max {
        return Err(usage(format!(
            "prefix budget {prefix_budget} is smaller than n_max {n_max}"
        )));
    }
    Ok(())
}

/// Profile of `source` up to `n_max`. Fibonacci sources use the closed
/// form: their Lyndon factors are exactly the Lyndon conjugates of the
/// finite Fibonacci words. Other kinds read Lyndon factors off a cover (see
/// [`InfiniteSource::exact_cover`]), or off `prefix_budget` letters when no
/// cover can be certified.
pub fn lyndon_profile(
    source: &InfiniteSource,
    n_max: usize,
    prefix_budget: usize,
) -> Result<LyndonProfile> {
    check_budgets(n_max, prefix_budget)?;
    match source.kind() {
        SourceKind::Fibonacci { variant } => {
            let (f1, f2) = variant.seeds();
            let mut factors = BTreeSet::new();
            let mut longest = 0;
            for k in 1.. {
                if fib_number(k)? as usize > n_max {
                    break;
                }
                let f = fibonacci::fib_word_ranks(k, f1, f2);
                longest = f.len();
                factors.insert(lyndon_conjugate_ranks(&f).expect("Fibonacci words are primitive"));
            }
            Ok(LyndonProfile::from_lyndon_set(
                source.alphabet(),
                n_max,
                factors,
                Exactness::Exact,
                longest,
            ))
        }
        _ => lyndon_profile_by_search(source, n_max, prefix_budget),
    }
}

/// Profile by direct search for Lyndon factors in the source's cover, for
/// every kind (including Fibonacci).
pub fn lyndon_profile_by_search(
    source: &InfiniteSource,
    n_max: usize,
    prefix_budget: usize,
) -> Result<LyndonProfile> {
    check_budgets(n_max, prefix_budget)?;
    let (cover, exactness) = source.cover(n_max, prefix_budget);
    let mut factors = BTreeSet::new();
    for w in &cover {
        for f in lyndon_factor_set_bounded(w, n_max) {
            factors.insert(f.to_vec());
        }
    }
    let used = cover.iter().map(Vec::len).sum();
    Ok(LyndonProfile::from_lyndon_set(
        source.alphabet(),
        n_max,
        factors,
        exactness,
        used,
    ))
}

/// Exact set of all Lyndon factors of a purely or ultimately periodic word.
/// Such a word has no Lyndon factor longer than its period.
pub fn all_lyndon_factors(source: &InfiniteSource) -> Option<BTreeSet<Vec<u8>>> {
    let bound = match source.kind() {
        SourceKind::Periodic { u } => u.len(),
        SourceKind::UltimatelyPeriodic { head, u } => head.len() + u.len(),
        _ => return None,
    };
    let cover = source.exact_cover(bound)?;
    Some(
        cover
            .iter()
            .flat_map(|w| lyndon_factor_set_bounded(w, bound))
            .map(<[u8]>::to_vec)
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ComparisonVerdict {
    /// No margin is negative within the range.
    AtLeastFibonacci { equal: bool },
    /// An exact profile falls below the Fibonacci one at `first_negative`,
    /// which only an ultimately periodic word can do.
    UltimatelyPeriodic { first_negative: usize },
    /// A lower-bound profile falls below; more prefix might close the gap.
    Inconclusive { first_negative: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileComparison {
    pub source: String,
    pub n_max: usize,
    /// `margins[n - 1] = 𝓛_x(n) - 𝓛_f(n)`.
    pub margins: Vec<i64>,
    pub exactness: Exactness,
    pub verdict: ComparisonVerdict,
}

pub fn compare_profile_to_fib(
    source: &InfiniteSource,
    n_max: usize,
    prefix_budget: usize,
) -> Result<ProfileComparison> {
    let profile = lyndon_profile(source, n_max, prefix_budget)?;
    let margins = (1..=n_max)
        .map(|n| Ok(profile.count_at(n) as i64 - fibonacci::lf_closed(n)? as i64))
        .collect::<Result<Vec<i64>>>()?;
    let first_negative = margins.iter().position(|&m| m < 0).map(|i| i + 1);
    let verdict = match (first_negative, profile.exactness) {
        (None, _) => ComparisonVerdict::AtLeastFibonacci {
            equal: margins.iter().all(|&m| m == 0),
        },
        (Some(first_negative), Exactness::Exact) => {
            ComparisonVerdict::UltimatelyPeriodic { first_negative }
        }
        (Some(first_negative), Exactness::LowerBound) => {
            ComparisonVerdict::Inconclusive { first_negative }
        }
    };
    Ok(ProfileComparison {
        source: source.to_string(),
        n_max,
        margins,
        exactness: profile.exactness,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFactorSet {
    pub factors: FactorSet,
    pub exactness: Exactness,
}

pub fn factor_set_of_source(
    source: &InfiniteSource,
    max_len: usize,
    prefix_budget: usize,
) -> Result<SourceFactorSet> {
    if max_len == 0 {
        return Err(usage("factor_set_of_source requires max_len >= 1"));
    }
    let (cover, exactness) = source.cover(max_len, prefix_budget.max(max_len));
    let mut all = BTreeSet::new();
    for w in &cover {
        all.extend(words::factors(w, max_len));
    }
    Ok(SourceFactorSet {
        factors: FactorSet::from_ranks(source.alphabet(), max_len, all),
        exactness,
    })
}
