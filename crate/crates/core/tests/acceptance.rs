//! Acceptance criteria. Each criterion runs the library check and an
//! independent brute-force oracle, then prints one pass/fail line.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use lynfib::fibonacci::lf_closed;
use lynfib::infinite::{
    lyndon_profile, lyndon_profile_by_search, stream_cfl, DEFAULT_LETTER_BUDGET,
    DEFAULT_PREFIX_BUDGET,
};
use lynfib::lyndon::min_lyndon_profile;
use lynfib::verify::{
    check_ell_and_conjecture, check_factor_set_theorem, check_fibonacci_suite, check_lemma_suite,
    check_log_phi, check_main_theorem, check_remarks, LemmaScope,
};
use lynfib::{Alphabet, CheckReport, Exactness, FibVariant, InfiniteSource, Verdict, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn require(report: CheckReport, allowed: &[Verdict]) -> Result<CheckReport, String> {
    ensure(allowed.contains(&report.verdict), || format!("{report}"))?;
    Ok(report)
}

// Naive oracles over letters 0 < 1 < 2 < ...

fn naive_is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

fn naive_lyndon_factors(w: &[u8], max_len: usize) -> HashSet<&[u8]> {
    let mut out = HashSet::new();
    for i in 0..w.len() {
        for j in i + 1..=w.len().min(i + max_len) {
            if naive_is_lyndon(&w[i..j]) {
                out.insert(&w[i..j]);
            }
        }
    }
    out
}

fn naive_least_rotation(w: &[u8]) -> Vec<u8> {
    (0..w.len())
        .map(|i| [&w[i..], &w[..i]].concat())
        .min()
        .unwrap_or_default()
}

fn fib_numbers(limit: usize) -> Vec<usize> {
    // fib[n] = F_n with F_1 = F_2 = 1.
    let mut fib = vec![0, 1, 1];
    while *fib.last().unwrap() <= limit {
        let n = fib.len();
        fib.push(fib[n - 1] + fib[n - 2]);
    }
    fib
}

/// `f_1 = 1`, `f_2 = 0`, `f_n = f_{n-1} f_{n-2}` (the `fib:ba` variant).
fn fib_word(n: usize) -> Vec<u8> {
    let (mut prev, mut cur) = (vec![1u8], vec![0u8]);
    if n == 1 {
        return prev;
    }
    for _ in 2..n {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn swap01(w: &[u8]) -> Vec<u8> {
    w.iter().map(|&c| 1 - c).collect()
}

/// The two Fibonacci Lyndon words of length `F_n`: least rotations of
/// `f_n` and of its letter exchange.
fn fib_lyndon_pair(n: usize) -> BTreeSet<Vec<u8>> {
    let f = fib_word(n);
    [naive_least_rotation(&f), naive_least_rotation(&swap01(&f))].into()
}

/// Every word of length `n` over `0..k`, in odometer order.
fn for_each_word(n: usize, k: u8, mut visit: impl FnMut(&[u8])) {
    let mut w = vec![0u8; n];
    loop {
        visit(&w);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            w[i] += 1;
            if w[i] < k {
                break;
            }
            w[i] = 0;
        }
    }
}

fn is_dense(w: &[u8]) -> bool {
    let letters: BTreeSet<u8> = w.iter().copied().collect();
    letters.len() == *letters.iter().last().unwrap() as usize + 1
}

/// Order-preserving relabelling onto `0..m`.
fn densify(w: &[u8]) -> Vec<u8> {
    let letters: Vec<u8> = w
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    w.iter()
        .map(|c| letters.iter().position(|x| x == c).unwrap() as u8)
        .collect()
}

/// First-occurrence relabelling.
fn first_occurrence(w: &[u8]) -> Vec<u8> {
    let mut seen: Vec<u8> = Vec::new();
    w.iter()
        .map(|c| match seen.iter().position(|x| x == c) {
            Some(i) => i as u8,
            None => {
                seen.push(*c);
                seen.len() as u8 - 1
            }
        })
        .collect()
}

/// Sweep of dense Lyndon words; returns (words checked, equality cases).
fn oracle_main_theorem(max_len: usize, k: u8) -> Result<(usize, usize), String> {
    let fib = fib_numbers(max_len);
    let fib_words: BTreeSet<Vec<u8>> = (3..fib.len())
        .filter(|&n| fib[n] <= max_len)
        .flat_map(fib_lyndon_pair)
        .collect();
    let (mut checked, mut equal) = (0, 0);
    for len in 2..=max_len {
        let n = (3..fib.len()).filter(|&n| fib[n] <= len).max().unwrap();
        let mut failure = None;
        for_each_word(len, k, |w| {
            if failure.is_some() || !naive_is_lyndon(w) || !is_dense(w) {
                return;
            }
            checked += 1;
            let count = naive_lyndon_factors(w, len).len();
            let tight = count == n;
            equal += tight as usize;
            let is_fib = fib_words.contains(w) && fib[n] == len;
            if count < n || tight != is_fib {
                failure = Some(format!("{w:?} has {count} Lyndon factors, n = {n}"));
            }
        });
        if let Some(f) = failure {
            return Err(f);
        }
    }
    Ok((checked, equal))
}

fn criterion_1() -> Outcome {
    let mut detail = Vec::new();
    for (max_len, k, expected_equal) in [(18, 2, 9), (12, 3, 7)] {
        require(
            check_main_theorem(max_len, k as usize).map_err(|e| e.to_string())?,
            &[Verdict::Pass],
        )?;
        let (checked, equal) = oracle_main_theorem(max_len, k)?;
        ensure(equal == expected_equal, || {
            format!("{equal} equality cases on {k} letters")
        })?;
        detail.push(format!(
            "k={k} len<={max_len}: {checked} words, {equal} tight"
        ));
    }
    Ok(detail.join("; "))
}

fn criterion_2() -> Outcome {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut detail = Vec::new();
    for (max_len, k) in [(18usize, 2u8), (12, 3)] {
        require(
            check_log_phi(max_len, k as usize).map_err(|e| e.to_string())?,
            &[Verdict::Pass],
        )?;
        let fib = fib_numbers(max_len);
        let mut tight = BTreeSet::new();
        for len in 1..=max_len {
            // Smallest e with phi^e >= len, found without a logarithm.
            let bound = (0..).find(|&e| phi.powi(e) >= len as f64 - 1e-9).unwrap() as usize + 1;
            let mut bad = None;
            for_each_word(len, k, |w| {
                if bad.is_some() || !naive_is_lyndon(w) || !is_dense(w) {
                    return;
                }
                let count = naive_lyndon_factors(w, len).len();
                if count < bound {
                    bad = Some(format!("{w:?}: {count} < {bound}"));
                }
                if count == bound {
                    tight.insert(len);
                }
            });
            if let Some(b) = bad {
                return Err(b);
            }
        }
        let fib_lengths: BTreeSet<usize> =
            fib[3..].iter().copied().filter(|&f| f <= max_len).collect();
        ensure(fib_lengths.is_subset(&tight), || {
            format!("bound not attained at {fib_lengths:?}")
        })?;
        detail.push(format!("k={k}: tight at {tight:?}"));
    }
    Ok(detail.join("; "))
}

/// Minimum Lyndon factor count over Lyndon words of length `n`, with its
/// minimizers relabelled densely. Alphabets grow until `k + 1` exceeds the
/// best count, since a word on `k` letters has at least `k + 1` Lyndon
/// factors.
fn oracle_ell(n: usize) -> (usize, BTreeSet<Vec<u8>>) {
    let mut best = usize::MAX;
    let mut minimizers = BTreeSet::new();
    let mut k = 1u8;
    while (k as usize) <= n && (k as usize) < best {
        for_each_word(n, k, |w| {
            if !naive_is_lyndon(w) {
                return;
            }
            let count = naive_lyndon_factors(w, n).len();
            if count < best {
                best = count;
                minimizers.clear();
            }
            if count == best {
                minimizers.insert(densify(w));
            }
        });
        k += 1;
    }
    (best, minimizers)
}

fn criterion_3() -> Outcome {
    const ELL: [usize; 12] = [1, 3, 4, 5, 5, 7, 6, 6, 7, 7, 7, 7];
    const SIX: [&str; 8] = [
        "000001", "000101", "001101", "010111", "010102", "010202", "021022", "011111",
    ];
    require(
        check_ell_and_conjecture(12).map_err(|e| e.to_string())?,
        &[Verdict::Pass, Verdict::Evidence],
    )?;
    for n in 1..=12 {
        let entry = min_lyndon_profile(n).map_err(|e| e.to_string())?;
        ensure(entry.ell == ELL[n - 1], || {
            format!("l({n}) = {}", entry.ell)
        })?;
        if n <= 8 {
            let (best, minimizers) = oracle_ell(n);
            ensure(best == entry.ell, || format!("oracle l({n}) = {best}"))?;
            let ours: BTreeSet<Vec<u8>> = entry
                .extremal_words
                .iter()
                .map(|w| w.ranks().to_vec())
                .collect();
            ensure(ours == minimizers, || {
                format!("minimizers of length {n} differ")
            })?;
        }
    }
    let (_, six) = oracle_ell(6);
    let listed: BTreeSet<Vec<u8>> = SIX
        .iter()
        .map(|s| first_occurrence(&s.bytes().map(|b| b - b'0').collect::<Vec<_>>()))
        .collect();
    let found: BTreeSet<Vec<u8>> = six.iter().map(|w| first_occurrence(w)).collect();
    ensure(listed == found, || format!("length-6 minimizers {found:?}"))?;
    let ternary = six.iter().filter(|w| w.contains(&2)).count();
    ensure(ternary == 3, || {
        format!("{ternary} ternary minimizers of length 6")
    })?;
    Ok(format!(
        "l(1..12) = {ELL:?}; brute force agrees for n <= 8; 8 minimizers at n = 6, 3 ternary"
    ))
}

fn criterion_4() -> Outcome {
    require(
        check_fibonacci_suite(12).map_err(|e| e.to_string())?,
        &[Verdict::Pass],
    )?;
    let n_max = 144;
    // A prefix with n_max + 1 distinct factors of length n_max holds every
    // factor of length <= n_max of the infinite word.
    let prefix = fib_word(18);
    let windows: HashSet<&[u8]> = prefix.windows(n_max).collect();
    ensure(windows.len() == n_max + 1, || {
        format!("{} windows of length {n_max}", windows.len())
    })?;
    let mut by_len: BTreeMap<usize, BTreeSet<Vec<u8>>> = BTreeMap::new();
    for n in 1..=n_max {
        let distinct: HashSet<&[u8]> = prefix.windows(n).collect();
        for f in distinct.into_iter().filter(|f| naive_is_lyndon(f)) {
            by_len.entry(n).or_default().insert(f.to_vec());
        }
    }
    let fib = fib_numbers(n_max);
    let source = InfiniteSource::fibonacci(FibVariant::ba());
    let closed =
        lyndon_profile(&source, n_max, DEFAULT_PREFIX_BUDGET).map_err(|e| e.to_string())?;
    let searched = lyndon_profile_by_search(&source, n_max, DEFAULT_PREFIX_BUDGET)
        .map_err(|e| e.to_string())?;
    ensure(
        closed.cumulative == searched.cumulative && closed.witnesses == searched.witnesses,
        || "closed form and search disagree".into(),
    )?;
    ensure(searched.exactness == Exactness::Exact, || {
        "search is not exact".into()
    })?;
    let mut cumulative = 0;
    for n in 1..=n_max {
        let found = by_len.remove(&n).unwrap_or_default();
        cumulative += found.len();
        ensure(
            cumulative == lf_closed(n).unwrap() && cumulative == searched.count_at(n),
            || {
                format!(
                    "count at {n}: oracle {cumulative}, closed {}",
                    lf_closed(n).unwrap()
                )
            },
        )?;
        let expected: BTreeSet<Vec<u8>> = (1..fib.len())
            .filter(|&k| fib[k] == n)
            .map(|k| naive_least_rotation(&fib_word(k)))
            .collect();
        ensure(found == expected, || {
            format!("witnesses of length {n}: {found:?}")
        })?;
        let witnesses: BTreeSet<Vec<u8>> = searched
            .new_at(n)
            .iter()
            .map(|w| w.ranks().to_vec())
            .collect();
        ensure(witnesses == expected, || {
            format!("library witnesses of length {n}")
        })?;
    }
    let witnesses: Vec<String> = (1..=12)
        .flat_map(|n| closed.new_at(n).iter().map(Word::to_string))
        .collect();
    Ok(format!(
        "profile = closed form to n = {n_max}; witnesses up to 12: {}",
        witnesses.join(",")
    ))
}

/// Lyndon factorization by the definition: greedily the longest Lyndon
/// prefix.
fn naive_cfl(w: &[u8]) -> Vec<&[u8]> {
    let mut out = Vec::new();
    let mut rest = w;
    while !rest.is_empty() {
        let len = (1..=rest.len())
            .rev()
            .find(|&l| naive_is_lyndon(&rest[..l]))
            .unwrap();
        out.push(&rest[..len]);
        rest = &rest[len..];
    }
    out
}

fn criterion_5() -> Outcome {
    let ab = Alphabet::binary_ab();
    let fib = InfiniteSource::fibonacci(FibVariant::ba());
    let s = stream_cfl(&fib, 3, DEFAULT_LETTER_BUDGET).map_err(|e| e.to_string())?;
    let got: Vec<String> = s.finalized.iter().map(Word::to_string).collect();
    ensure(got == ["ab", "aabab", "aabaababaabab"], || {
        format!("stream gave {got:?}")
    })?;
    let prefix = fib.prefix_ranks(200);
    let oracle = naive_cfl(&prefix);
    for (w, o) in s.finalized.iter().zip(&oracle) {
        ensure(w.ranks() == *o, || {
            format!("{w} differs from the prefix factorization")
        })?;
    }
    // Stable: the same three factors lead the factorization of a longer prefix.
    let longer = fib.prefix_ranks(400);
    ensure(naive_cfl(&longer)[..3] == oracle[..3], || {
        "prefix factors are unstable".into()
    })?;

    let mut sources = 0;
    for n in 1..=8 {
        for_each_word(n, 2, |u| {
            let root = (1..=n)
                .find(|&p| n % p == 0 && u.chunks(p).all(|c| c == &u[..p]))
                .unwrap();
            if root != n {
                return;
            }
            sources += 1;
            let src =
                InfiniteSource::periodic(&Word::from_ranks(&ab, u.to_vec()).unwrap()).unwrap();
            let mut budget = 1;
            while budget <= 256 {
                let small = stream_cfl(&src, 2 * n + 2, budget).unwrap();
                let big = stream_cfl(&src, 2 * n + 2, 2 * budget).unwrap();
                assert!(
                    big.finalized.starts_with(&small.finalized),
                    "{src} at budget {budget}"
                );
                budget *= 2;
            }
        });
    }
    Ok(format!(
        "fib:ba -> {}; matches the 200-letter prefix; monotone on {sources} periodic sources",
        got.join(" | ")
    ))
}

fn criterion_6() -> Outcome {
    require(
        check_remarks().map_err(|e| e.to_string())?,
        &[Verdict::Pass],
    )?;
    // g(f) with g: 0 -> 001, 1 -> 0001.
    let f = fib_word(20);
    let image: Vec<u8> = f
        .iter()
        .flat_map(|&c| {
            if c == 0 {
                vec![0, 0, 1]
            } else {
                vec![0, 0, 0, 1]
            }
        })
        .collect();
    let image_five: Vec<&[u8]> = naive_lyndon_factors(&image, 5)
        .into_iter()
        .filter(|w| w.len() == 5)
        .collect();
    ensure(image_five.is_empty(), || {
        format!("g(f) has Lyndon factors {image_five:?}")
    })?;
    let fib_five: Vec<&[u8]> = naive_lyndon_factors(&f, 5)
        .into_iter()
        .filter(|w| w.len() == 5)
        .collect();
    ensure(fib_five == [&[0, 0, 1, 0, 1][..]], || {
        format!("f has {fib_five:?}")
    })?;
    let ab = Alphabet::binary_ab();
    let g = InfiniteSource::parse("morphic:a->aab;b->aaab;of=fib:ba", &ab)
        .map_err(|e| e.to_string())?;
    let profile = lyndon_profile(&g, 5, DEFAULT_PREFIX_BUDGET).map_err(|e| e.to_string())?;
    ensure(
        profile.exactness == Exactness::Exact && profile.new_at(5).is_empty(),
        || "library profile of g(f) at 5".into(),
    )?;

    let (x, y) = ([0u8, 0, 0, 0, 0, 1], [0u8, 0, 0, 1, 0, 1]);
    let power = |u: &[u8]| u.repeat(4);
    let counts = |w: &[u8]| {
        let set = naive_lyndon_factors(w, 12);
        (1..=12)
            .map(|n| set.iter().filter(|f| f.len() <= n).count())
            .collect::<Vec<_>>()
    };
    let factors = |w: &[u8]| -> BTreeSet<Vec<u8>> {
        (1..=12)
            .flat_map(|n| w.windows(n).map(<[u8]>::to_vec).collect::<Vec<_>>())
            .collect()
    };
    let (px, py) = (power(&x), power(&y));
    ensure(counts(&px) == counts(&py), || {
        "periodic profiles differ".into()
    })?;
    ensure(factors(&px) != factors(&py), || "factor sets agree".into())?;
    ensure(factors(&px) != factors(&power(&swap01(&y))), || {
        "factor sets agree after exchange".into()
    })?;
    Ok("g(f) has no Lyndon factor of length 5, f has aabab; (000001)^w and (000101)^w share profiles, not factors".into())
}

fn criterion_7() -> Outcome {
    let scope = LemmaScope {
        max_len: 16,
        central_sum: 24,
    };
    let report = require(
        check_lemma_suite(scope).map_err(|e| e.to_string())?,
        &[Verdict::Pass],
    )?;
    for len in 1..=12 {
        let mut bad = None;
        for_each_word(len, 2, |w| {
            let fast: Vec<&[u8]> = lynfib::lyndon::cfl_ranges(w)
                .into_iter()
                .map(|(a, b)| &w[a..b])
                .collect();
            if bad.is_none() && fast != naive_cfl(w) {
                bad = Some(w.to_vec());
            }
        });
        ensure(bad.is_none(), || format!("factorization of {bad:?}"))?;
    }
    Ok(format!(
        "{} sub-checks at {scope}; factorization matches the definition for binary words up to 12",
        report.notes.len()
    ))
}

fn criterion_8() -> Outcome {
    let report = require(
        check_factor_set_theorem(6).map_err(|e| e.to_string())?,
        &[Verdict::Pass],
    )?;
    let mut primitive = Vec::new();
    for n in 1..=6 {
        for_each_word(n, 2, |u| {
            if (1..n).all(|p| n % p != 0 || u.chunks(p).any(|c| c != &u[..p])) {
                primitive.push(u.to_vec());
            }
        });
    }
    // Lyndon factors of u^w are at most |u| long.
    let lyndon_sets: Vec<BTreeSet<Vec<u8>>> = primitive
        .iter()
        .map(|u| {
            naive_lyndon_factors(&u.repeat(3), u.len())
                .into_iter()
                .map(<[u8]>::to_vec)
                .collect()
        })
        .collect();
    let factors = |u: &[u8], m: usize| -> BTreeSet<Vec<u8>> {
        let w = u.repeat(m / u.len() + 2);
        (1..=m)
            .flat_map(|n| w.windows(n).map(<[u8]>::to_vec).collect::<Vec<_>>())
            .collect()
    };
    let mut pairs = 0;
    for i in 0..primitive.len() {
        for j in i + 1..primitive.len() {
            if lyndon_sets[i] != lyndon_sets[j] {
                continue;
            }
            pairs += 1;
            let m = primitive[i].len() + primitive[j].len();
            ensure(
                factors(&primitive[i], m) == factors(&primitive[j], m),
                || format!("{:?} and {:?}", primitive[i], primitive[j]),
            )?;
        }
    }
    let expected = format!("{} pairs with equal Lyndon factor sets", pairs);
    ensure(report.notes.iter().any(|n| n.contains(&expected)), || {
        format!("library notes {:?}", report.notes)
    })?;
    Ok(format!(
        "{} primitive words, {pairs} pairs with equal Lyndon factor sets",
        primitive.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("main theorem sweep", criterion_1),
        ("log_phi bound", criterion_2),
        ("minimum Lyndon factor counts", criterion_3),
        ("Fibonacci profile", criterion_4),
        ("streaming factorization", criterion_5),
        ("counterexamples", criterion_6),
        ("lemma suite", criterion_7),
        ("factor set theorem", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!(
                "criterion {} ({name}): pass [{elapsed:.2?}] {detail}",
                i + 1
            ),
            Err(reason) => {
                failed += 1;
                println!(
                    "criterion {} ({name}): FAIL [{elapsed:.2?}] {reason}",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
