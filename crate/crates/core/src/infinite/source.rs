use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::fibonacci::{self, FibVariant};
use crate::words::{self, Alphabet, Word};

/// Whether a computed quantity is the true value for the infinite word or
/// only what a finite prefix shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    LowerBound,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::Exact => "exact",
            Exactness::LowerBound => "lower_bound",
        })
    }
}

/// A non-erasing morphism given by the images of finitely many letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismSpec {
    images: BTreeMap<u8, Vec<u8>>,
}

impl MorphismSpec {
    pub fn new(images: impl IntoIterator<Item = (u8, Vec<u8>)>) -> Result<Self> {
        let images: BTreeMap<u8, Vec<u8>> = images.into_iter().collect();
        if images.is_empty() {
            return Err(usage("a morphism needs at least one letter image"));
        }
        if images.values().any(Vec::is_empty) {
            return Err(usage("morphism images must be nonempty (non-erasing)"));
        }
        Ok(MorphismSpec { images })
    }

    pub fn image(&self, letter: u8) -> Option<&[u8]> {
        self.images.get(&letter).map(Vec::as_slice)
    }

    pub fn apply(&self, w: &[u8]) -> Vec<u8> {
        w.iter()
            .flat_map(|c| self.images[c].iter().copied())
            .collect()
    }

    pub fn min_image_len(&self) -> usize {
        self.images.values().map(Vec::len).min().unwrap_or(1)
    }

    /// Checks that every letter reachable from `start` has an image.
    fn check_closed(&self, start: &BTreeSet<u8>, alphabet: &Alphabet) -> Result<()> {
        let mut seen = start.clone();
        let mut stack: Vec<u8> = start.iter().copied().collect();
        while let Some(c) = stack.pop() {
            let image = self.images.get(&c).ok_or_else(|| {
                usage(format!(
                    "morphism has no image for letter {:?}",
                    alphabet.symbol(c)
                ))
            })?;
            for &d in image {
                if seen.insert(d) {
                    stack.push(d);
                }
            }
        }
        Ok(())
    }

    fn render(&self, alphabet: &Alphabet) -> String {
        self.images
            .iter()
            .map(|(&c, img)| format!("{}->{}", alphabet.symbol(c), alphabet.render(img)))
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceKind {
    /// `u^ω`, `u` primitive.
    Periodic {
        u: Vec<u8>,
    },
    /// `head · u^ω` with the shortest possible head.
    UltimatelyPeriodic {
        head: Vec<u8>,
        u: Vec<u8>,
    },
    /// Fixed point of a morphism prolongable on `seed`.
    Morphic {
        morphism: MorphismSpec,
        seed: u8,
    },
    /// Image of another source under a morphism.
    MorphicImage {
        morphism: MorphismSpec,
        base: Box<InfiniteSource>,
    },
    Fibonacci {
        variant: FibVariant,
    },
}

/// A declarative description of an infinite word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfiniteSource {
    alphabet: Arc<Alphabet>,
    kind: SourceKind,
}

impl InfiniteSource {
    pub fn periodic(u: &Word) -> Result<Self> {
        check_period_word(u)?;
        Ok(InfiniteSource {
            alphabet: Arc::clone(u.alphabet()),
            kind: SourceKind::Periodic {
                u: u.ranks().to_vec(),
            },
        })
    }

    pub fn ultimately_periodic(head: &Word, u: &Word) -> Result<Self> {
        check_period_word(u)?;
        head.same_alphabet(u)?;
        let alphabet = Arc::clone(u.alphabet());
        let mut head = head.ranks().to_vec();
        let mut u = u.ranks().to_vec();
        // head·c·(u'c)^ω equals head·(c·u')^ω.
        while head.last().is_some() && head.last() == u.last() {
            head.pop();
            u.rotate_right(1);
        }
        Ok(InfiniteSource {
            alphabet,
            kind: SourceKind::UltimatelyPeriodic { head, u },
        })
    }

    pub fn morphic(alphabet: &Arc<Alphabet>, morphism: MorphismSpec, seed: u8) -> Result<Self> {
        let image = morphism
            .image(seed)
            .ok_or_else(|| usage("morphism has no image for the seed letter"))?;
        if image.len() < 2 || image[0] != seed {
            return Err(usage(format!(
                "morphism is not prolongable on {:?}: its image must start with it and have length >= 2",
                alphabet.symbol(seed)
            )));
        }
        morphism.check_closed(&BTreeSet::from([seed]), alphabet)?;
        Ok(InfiniteSource {
            alphabet: Arc::clone(alphabet),
            kind: SourceKind::Morphic { morphism, seed },
        })
    }

    pub fn morphic_image(morphism: MorphismSpec, base: InfiniteSource) -> Result<Self> {
        morphism.check_closed(&base.letters(), &base.alphabet)?;
        Ok(InfiniteSource {
            alphabet: Arc::clone(&base.alphabet),
            kind: SourceKind::MorphicImage {
                morphism,
                base: Box::new(base),
            },
        })
    }

    pub fn fibonacci(variant: FibVariant) -> Self {
        InfiniteSource {
            alphabet: Arc::clone(variant.alphabet()),
            kind: SourceKind::Fibonacci { variant },
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn kind(&self) -> &SourceKind {
        &self.kind
    }

    /// Letters that may occur.
    pub fn letters(&self) -> BTreeSet<u8> {
        match &self.kind {
            SourceKind::Periodic { u } => u.iter().copied().collect(),
            SourceKind::UltimatelyPeriodic { head, u } => head.iter().chain(u).copied().collect(),
            SourceKind::Morphic { morphism, seed } => {
                let mut seen = BTreeSet::from([*seed]);
                let mut stack = vec![*seed];
                while let Some(c) = stack.pop() {
                    for &d in morphism.image(c).unwrap_or_default() {
                        if seen.insert(d) {
                            stack.push(d);
                        }
                    }
                }
                seen
            }
            SourceKind::MorphicImage { morphism, base } => base
                .letters()
                .into_iter()
                .flat_map(|c| morphism.image(c).unwrap_or_default().to_vec())
                .collect(),
            SourceKind::Fibonacci { variant } => {
                let (a, b) = variant.letters();
                BTreeSet::from([a, b])
            }
        }
    }

    /// The exact length-`len` prefix, as ranks.
    pub fn prefix_ranks(&self, len: usize) -> Vec<u8> {
        match &self.kind {
            SourceKind::Periodic { u } => (0..len).map(|i| u[i % u.len()]).collect(),
            SourceKind::UltimatelyPeriodic { head, u } => (0..len)
                .map(|i| {
                    if i < head.len() {
                        head[i]
                    } else {
                        u[(i - head.len()) % u.len()]
                    }
                })
                .collect(),
            SourceKind::Morphic { morphism, seed } => {
                let mut w = vec![*seed];
                while w.len() < len {
                    // The length-len prefix of m(w) depends only on w[..len].
                    w.truncate(len);
                    w = morphism.apply(&w);
                }
                w.truncate(len);
                w
            }
            SourceKind::MorphicImage { morphism, base } => {
                let mut w = morphism.apply(&base.prefix_ranks(len));
                w.truncate(len);
                w
            }
            SourceKind::Fibonacci { variant } => {
                let (f1, f2) = variant.seeds();
                fibonacci::fib_infinite_prefix_ranks(len, f1, f2)
            }
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word::from_ranks_unchecked(&self.alphabet, self.prefix_ranks(len))
    }

    /// Kinds whose factor sets this crate can compute exactly.
    pub fn exactness(&self) -> Exactness {
        match &self.kind {
            SourceKind::Periodic { .. }
            | SourceKind::UltimatelyPeriodic { .. }
            | SourceKind::Fibonacci { .. } => Exactness::Exact,
            SourceKind::MorphicImage { base, .. } => base.exactness(),
            SourceKind::Morphic { .. } => Exactness::LowerBound,
        }
    }

    /// Finite words whose factors of length at most `max_len` are exactly
    /// the factors of length at most `max_len` of this infinite word, when
    /// such a cover can be certified.
    ///
    /// * periodic kinds: a prefix of length `|head| + |u| + max_len - 1`
    ///   contains every factor of bounded length;
    /// * Fibonacci: a Fibonacci word has exactly `m + 1` factors of length
    ///   `m` (it is Sturmian), so a prefix showing `max_len + 1` distinct
    ///   factors of length `max_len` contains them all, and every shorter
    ///   factor extends to one of them;
    /// * morphic images: a factor of length `m >= 2` of `g(x)` meets at most
    ///   `(m - 2) / min|g(c)| + 2` consecutive images, so the images of the
    ///   factors of `x` of that length cover it.
    pub fn exact_cover(&self, max_len: usize) -> Option<Vec<Vec<u8>>> {
        let max_len = max_len.max(1);
        match &self.kind {
            SourceKind::Periodic { u } => Some(vec![self.prefix_ranks(u.len() + max_len - 1)]),
            SourceKind::UltimatelyPeriodic { head, u } => {
                Some(vec![self.prefix_ranks(head.len() + u.len() + max_len - 1)])
            }
            SourceKind::Fibonacci { .. } => Some(vec![self.fibonacci_window(max_len)]),
            SourceKind::MorphicImage { morphism, base } => {
                let span = if max_len == 1 {
                    1
                } else {
                    (max_len - 2) / morphism.min_image_len() + 2
                };
                let base_cover = base.exact_cover(span)?;
                let mut base_factors: BTreeSet<&[u8]> = BTreeSet::new();
                for w in &base_cover {
                    for i in 0..w.len().saturating_sub(span - 1) {
                        base_factors.insert(&w[i..i + span]);
                    }
                }
                Some(
                    base_factors
                        .into_iter()
                        .map(|v| morphism.apply(v))
                        .collect(),
                )
            }
            SourceKind::Morphic { .. } => None,
        }
    }

    fn fibonacci_window(&self, max_len: usize) -> Vec<u8> {
        let mut len = 4 * max_len + 16;
        loop {
            let w = self.prefix_ranks(len);
            let distinct: BTreeSet<&[u8]> = w.windows(max_len).collect();
            if distinct.len() == max_len + 1 {
                return w;
            }
            len *= 2;
        }
    }

    /// The cover used for factor computations, plus how far it can be trusted.
    pub(crate) fn cover(&self, max_len: usize, prefix_budget: usize) -> (Vec<Vec<u8>>, Exactness) {
        match self.exact_cover(max_len) {
            Some(cover) => (cover, Exactness::Exact),
            None => (
                vec![self.prefix_ranks(prefix_budget)],
                Exactness::LowerBound,
            ),
        }
    }

    /// True when the suffix starting at `start` is `v^ω`; only decidable
    /// (and only ever true) for the periodic kinds.
    pub(crate) fn tail_is_power_of(&self, start: usize, v: &[u8]) -> bool {
        let (head, u): (&[u8], &[u8]) = match &self.kind {
            SourceKind::Periodic { u } => (&[], u),
            SourceKind::UltimatelyPeriodic { head, u } => (head, u),
            _ => return false,
        };
        if start < head.len() || v.len() != u.len() {
            return false;
        }
        let offset = (start - head.len()) % u.len();
        v.iter()
            .enumerate()
            .all(|(i, &c)| c == u[(offset + i) % u.len()])
    }

    /// Parses the command-line grammar: `periodic:ab`,
    /// `ultper:head=aab,u=ab`, `morphic:a->aab;b->aaab;seed=a`,
    /// `morphic:a->aab;b->aaab;of=<source>`, `fib:ba`.
    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<Self> {
        let fail = |reason: String| Error::Source {
            input: text.to_string(),
            reason,
        };
        let (kind, body) = text
            .split_once(':')
            .ok_or_else(|| fail("expected <kind>:<parameters>".into()))?;
        let word = |s: &str| Word::parse(s, alphabet);
        match kind {
            "periodic" => InfiniteSource::periodic(&word(body)?),
            "ultper" => {
                let mut head = None;
                let mut u = None;
                for part in body.split(',') {
                    match part.split_once('=') {
                        Some(("head", h)) => head = Some(word(h)?),
                        Some(("u", p)) => u = Some(word(p)?),
                        _ => return Err(fail(format!("unexpected parameter {part:?}"))),
                    }
                }
                let u = u.ok_or_else(|| fail("missing u=".into()))?;
                let head = head.unwrap_or_else(|| Word::empty(alphabet));
                InfiniteSource::ultimately_periodic(&head, &u)
            }
            "morphic" => {
                let (rules, tail) = match body.find(";of=") {
                    Some(pos) => (&body[..pos], Some(&body[pos + 4..])),
                    None => (body, None),
                };
                let mut images = Vec::new();
                let mut seed = None;
                for part in rules.split(';').filter(|p| !p.is_empty()) {
                    if let Some(s) = part.strip_prefix("seed=") {
                        let letter = word(s)?;
                        if letter.len() != 1 {
                            return Err(fail("seed must be a single letter".into()));
                        }
                        seed = Some(letter.ranks()[0]);
                    } else if let Some((from, to)) = part.split_once("->") {
                        let from = word(from)?;
                        if from.len() != 1 {
                            return Err(fail(format!("rule {part:?} must map a single letter")));
                        }
                        images.push((from.ranks()[0], word(to)?.into_ranks()));
                    } else {
                        return Err(fail(format!("unexpected rule {part:?}")));
                    }
                }
                let morphism = MorphismSpec::new(images)?;
                match (seed, tail) {
                    (Some(seed), None) => InfiniteSource::morphic(alphabet, morphism, seed),
                    (None, Some(base)) => InfiniteSource::morphic_image(
                        morphism,
                        InfiniteSource::parse(base, alphabet)?,
                    ),
                    _ => Err(fail(
                        "give exactly one of seed=<letter> or of=<source>".into(),
                    )),
                }
            }
            "fib" => Ok(InfiniteSource::fibonacci(FibVariant::parse(
                body, alphabet,
            )?)),
            other => Err(fail(format!("unknown source kind {other:?}"))),
        }
    }
}

fn check_period_word(u: &Word) -> Result<()> {
    if u.is_empty() {
        return Err(usage("the periodic part must be nonempty"));
    }
    if !words::is_primitive(u.ranks()) {
        return Err(usage(format!("the periodic part {u} must be primitive")));
    }
    Ok(())
}

impl fmt::Display for InfiniteSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.alphabet;
        match &self.kind {
            SourceKind::Periodic { u } => write!(f, "periodic:{}", a.render(u)),
            SourceKind::UltimatelyPeriodic { head, u } => {
                write!(f, "ultper:head={},u={}", a.render(head), a.render(u))
            }
            SourceKind::Morphic { morphism, seed } => {
                write!(f, "morphic:{};seed={}", morphism.render(a), a.symbol(*seed))
            }
            SourceKind::MorphicImage { morphism, base } => {
                write!(f, "morphic:{};of={base}", morphism.render(a))
            }
            SourceKind::Fibonacci { variant } => write!(f, "fib:{variant}"),
        }
    }
}

impl Serialize for InfiniteSource {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}
