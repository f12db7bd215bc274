use serde::Serialize;

use super::source::InfiniteSource;
use crate::error::{usage, Result};
use crate::words::Word;

pub const DEFAULT_LETTER_BUDGET: usize = 65536;

/// The committed initial part of the Lyndon factorization of an infinite
/// word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StreamFactorization {
    pub source: String,
    pub finalized: Vec<Word>,
    /// Set when the rest of the word is certified to be `v^ω` for this
    /// Lyndon word `v`, so the factorization continues `v, v, ...` forever.
    pub periodic_tail: Option<Word>,
    /// Letters read but not yet part of a finalized factor.
    pub pending_len: usize,
    pub consumed: usize,
    pub letter_budget: usize,
    pub max_factors: usize,
    pub budget_exhausted: bool,
}

/// Runs the left-to-right Duval scan over `source`, reading at most
/// `letter_budget` letters, and stops once `max_factors` factors are
/// committed.
///
/// A group of factors is committed when the scan meets a letter that ends
/// it, which no later letter can undo. For periodic kinds the scan also
/// commits when the unread tail is provably a power of the current factor.
pub fn stream_cfl(
    source: &InfiniteSource,
    max_factors: usize,
    letter_budget: usize,
) -> Result<StreamFactorization> {
    if max_factors == 0 {
        return Err(usage("max_factors must be at least 1"));
    }
    if letter_budget == 0 {
        return Err(usage("letter_budget must be at least 1"));
    }
    let mut buf: Vec<u8> = Vec::new();
    let ensure = |buf: &mut Vec<u8>, len: usize| {
        if buf.len() < len {
            let target = len.max(2 * buf.len()).max(64).min(letter_budget);
            *buf = source.prefix_ranks(target);
        }
    };
    let mut out: Vec<(usize, usize)> = Vec::new();
    let mut periodic_tail = None;
    let mut budget_exhausted = false;
    let mut consumed = 1;
    let mut i = 0;
    ensure(&mut buf, 1);

    'groups: while out.len() < max_factors {
        let (mut j, mut k) = (i + 1, i);
        loop {
            let p = j - k;
            if j - i >= p && source.tail_is_power_of(i, &buf[i..i + p]) {
                periodic_tail = Some(buf[i..i + p].to_vec());
                while out.len() < max_factors {
                    out.push((i, i + p));
                    i += p;
                }
                break 'groups;
            }
            if j >= letter_budget {
                budget_exhausted = true;
                break 'groups;
            }
            ensure(&mut buf, j + 1);
            consumed = consumed.max(j + 1);
            match buf[k].cmp(&buf[j]) {
                std::cmp::Ordering::Less => k = i,
                std::cmp::Ordering::Equal => k += 1,
                std::cmp::Ordering::Greater => break,
            }
            j += 1;
        }
        let p = j - k;
        while i <= k && out.len() < max_factors {
            out.push((i, i + p));
            i += p;
        }
    }

    let alphabet = source.alphabet();
    let letters = source.prefix_ranks(i.max(consumed));
    let finalized = out
        .iter()
        .map(|&(a, b)| Word::from_ranks_unchecked(alphabet, letters[a..b].to_vec()))
        .collect();
    let consumed = consumed.max(i);
    Ok(StreamFactorization {
        source: source.to_string(),
        finalized,
        periodic_tail: periodic_tail.map(|v| Word::from_ranks_unchecked(alphabet, v)),
        pending_len: consumed - i,
        consumed,
        letter_budget,
        max_factors,
        budget_exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibonacci::FibVariant;
    use crate::lyndon::{cfl_ranges, least_rotation, rotate};
    use crate::words::{all_words, is_primitive, Alphabet};

    fn rendered(s: &StreamFactorization) -> Vec<String> {
        s.finalized.iter().map(Word::to_string).collect()
    }

    fn periodic(u: &str) -> InfiniteSource {
        let ab = Alphabet::binary_ab();
        InfiniteSource::periodic(&Word::parse(u, &ab).unwrap()).unwrap()
    }

    #[test]
    fn periodic_examples() {
        let s = stream_cfl(&periodic("ab"), 4, 100).unwrap();
        assert_eq!(rendered(&s), ["ab", "ab", "ab", "ab"]);
        assert_eq!(s.periodic_tail.unwrap().to_string(), "ab");
        assert!(!s.budget_exhausted);
        let s = stream_cfl(&periodic("ba"), 4, 100).unwrap();
        assert_eq!(rendered(&s), ["b", "ab", "ab", "ab"]);
        let s = stream_cfl(&periodic("a"), 3, 1).unwrap();
        assert_eq!(rendered(&s), ["a", "a", "a"]);
    }

    #[test]
    fn fibonacci_first_factors() {
        let fib = InfiniteSource::fibonacci(FibVariant::ba());
        let s = stream_cfl(&fib, 3, DEFAULT_LETTER_BUDGET).unwrap();
        assert_eq!(rendered(&s), ["ab", "aabab", "aabaababaabab"]);
        assert!(s.periodic_tail.is_none());
        // Budget runs out before a fourth factor of length 89 can close.
        let s = stream_cfl(&fib, 10, 200).unwrap();
        assert!(s.budget_exhausted);
        assert_eq!(s.consumed, 200);
        assert_eq!(s.finalized.len(), 4);
    }

    #[test]
    fn finalized_factors_agree_with_finite_oracle() {
        // Factors committed from a budget of n letters are an initial run of
        // the factorization of every longer prefix.
        let ab = Alphabet::binary_ab();
        let sources = [
            InfiniteSource::fibonacci(FibVariant::ba()),
            InfiniteSource::fibonacci(FibVariant::ab()),
            InfiniteSource::parse("morphic:a->ab;b->ba;seed=a", &ab).unwrap(),
            InfiniteSource::parse("ultper:head=bba,u=abb", &ab).unwrap(),
        ];
        for src in &sources {
            let long = src.prefix_ranks(400);
            let oracle: Vec<&[u8]> = cfl_ranges(&long)
                .into_iter()
                .map(|(a, b)| &long[a..b])
                .collect();
            let s = stream_cfl(src, 50, 200).unwrap();
            for (got, want) in s.finalized.iter().zip(&oracle) {
                assert_eq!(got.ranks(), *want, "{src}");
            }
            let mut joined: Vec<u8> = s
                .finalized
                .iter()
                .flat_map(|w| w.ranks().to_vec())
                .collect();
            joined.extend_from_slice(&long[joined.len()..joined.len() + s.pending_len]);
            assert_eq!(joined, &long[..s.consumed], "{src}");
            for w in s.finalized.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn periodic_sources_settle_on_lyndon_conjugate() {
        for n in 1..=8 {
            for u in all_words(n, 2).filter(|u| is_primitive(u)) {
                let ab = Alphabet::binary_ab();
                let src =
                    InfiniteSource::periodic(&Word::from_ranks(&ab, u.clone()).unwrap()).unwrap();
                let s = stream_cfl(&src, n + 3, DEFAULT_LETTER_BUDGET).unwrap();
                let conj = rotate(&u, least_rotation(&u));
                assert_eq!(s.periodic_tail.as_ref().unwrap().ranks(), &conj[..]);
                let tail_start = s
                    .finalized
                    .iter()
                    .position(|w| w.ranks() == &conj[..])
                    .unwrap();
                assert!(tail_start <= n);
                assert!(s.finalized[tail_start..]
                    .iter()
                    .all(|w| w.ranks() == &conj[..]));
            }
        }
    }

    #[test]
    fn finalization_is_monotone() {
        let ab = Alphabet::binary_ab();
        let mut sources = vec![
            InfiniteSource::fibonacci(FibVariant::ba()),
            InfiniteSource::parse("morphic:a->aab;b->aaab;of=fib:ba", &ab).unwrap(),
        ];
        for n in 1..=6 {
            for u in all_words(n, 2).filter(|u| is_primitive(u)) {
                sources.push(InfiniteSource::periodic(&Word::from_ranks(&ab, u).unwrap()).unwrap());
            }
        }
        for src in &sources {
            for budget in [1, 3, 10, 40, 150] {
                let small = stream_cfl(src, 20, budget).unwrap();
                let big = stream_cfl(src, 20, 2 * budget).unwrap();
                assert!(
                    big.finalized.starts_with(&small.finalized),
                    "{src} at {budget}"
                );
            }
        }
    }

    #[test]
    fn rejects_zero_budgets() {
        assert!(stream_cfl(&periodic("ab"), 0, 10).is_err());
        assert!(stream_cfl(&periodic("ab"), 1, 0).is_err());
    }
}
