//! Command-line front end: argument parsing, dispatch and rendering.
//!
//! [`run`] takes its streams as parameters so that the whole command line
//! can be driven from tests.

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use lynfib::fibonacci::{self, FibLyndonKind, FibVariant};
use lynfib::infinite::{
    compare_profile_to_fib, lyndon_profile, stream_cfl, ComparisonVerdict, InfiniteSource,
    DEFAULT_LETTER_BUDGET, DEFAULT_PREFIX_BUDGET,
};
use lynfib::lyndon::{enumerate_lyndon, min_lyndon_profile, LyndonFilter};
use lynfib::verify::{run_suite, Suite, SuiteBounds};
use lynfib::{Alphabet, Error, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "lynfib",
    version,
    about = "Lyndon words, Fibonacci words and their factor counts"
)]
struct Cli {
    /// Ordered alphabet; the order of the characters defines the letter order
    #[arg(long, global = true, default_value = "ab")]
    alphabet: String,

    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,

    /// Worker threads for the enumeration-heavy commands
    #[arg(long, global = true, env = "LYNFIB_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FilterArg {
    All,
    Canonical,
    Dense,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FibKind {
    Word,
    Central,
    LyndonPlain,
    LyndonComplement,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lyndon test, periods, standard bisection and distinct Lyndon factors
    Analyze { word: String },
    /// Factorization into nonincreasing Lyndon words
    Cfl { word: String },
    /// Lyndon words of one length
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Number of letters, taken from the front of the alphabet
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "all")]
        filter: FilterArg,
    },
    /// Fewest distinct Lyndon factors of a Lyndon word of each length
    Ell {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Finite Fibonacci words and their relatives
    Fib {
        #[arg(long)]
        n: usize,
        /// Seed letters f1 f2
        #[arg(long, default_value = "ba")]
        variant: String,
        #[arg(long, value_enum, default_value = "word")]
        kind: FibKind,
    },
    /// Central word with two coprime periods
    Central {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Lyndon factor counts of an infinite word by length
    Profile {
        #[arg(long)]
        source: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_PREFIX_BUDGET)]
        prefix_budget: usize,
    },
    /// Initial Lyndon factors of an infinite word
    Stream {
        #[arg(long)]
        source: String,
        #[arg(long, default_value_t = 10)]
        max_factors: usize,
        #[arg(long, default_value_t = DEFAULT_LETTER_BUDGET)]
        letter_budget: usize,
    },
    /// Profile of an infinite word minus the Fibonacci profile
    Compare {
        #[arg(long)]
        source: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_PREFIX_BUDGET)]
        prefix_budget: usize,
    },
    /// Exhaustive checks; exits 1 if any check fails
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Longest words in the sweeps (defaults: binary 18, ternary 12, lemmas 16)
        #[arg(long)]
        max_len: Option<usize>,
        /// Same as --format json
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut buf: Vec<u8> = Vec::new();
    let result = match cli.jobs {
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut buf)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => dispatch(&cli, &mut buf),
    };
    let result = result.and_then(|code| {
        out.write_all(&buf)?;
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let alphabet = Alphabet::new(&cli.alphabet)?;
    let fmt = cli.format;
    match &cli.command {
        Command::Analyze { word } => analyze(&Word::parse(word, &alphabet)?, fmt, out),
        Command::Cfl { word } => cfl(&Word::parse(word, &alphabet)?, fmt, out),
        Command::Enumerate { n, k, filter } => enumerate(&alphabet, *n, *k, *filter, fmt, out),
        Command::Ell { max_n } => ell(*max_n, fmt, out),
        Command::Fib { n, variant, kind } => fib(&alphabet, *n, variant, *kind, fmt, out),
        Command::Central { p, q } => central(&alphabet, *p, *q, fmt, out),
        Command::Profile {
            source,
            n_max,
            prefix_budget,
        } => profile(
            &InfiniteSource::parse(source, &alphabet)?,
            *n_max,
            *prefix_budget,
            fmt,
            out,
        ),
        Command::Stream {
            source,
            max_factors,
            letter_budget,
        } => stream(
            &InfiniteSource::parse(source, &alphabet)?,
            *max_factors,
            *letter_budget,
            fmt,
            out,
        ),
        Command::Compare {
            source,
            n_max,
            prefix_budget,
        } => compare(
            &InfiniteSource::parse(source, &alphabet)?,
            *n_max,
            *prefix_budget,
            fmt,
            out,
        ),
        Command::Verify {
            suite,
            max_len,
            json,
        } => {
            let fmt = if *json { Format::Json } else { fmt };
            verify(suite, *max_len, fmt, out)
        }
    }
}

fn strings(ws: &[Word]) -> Vec<String> {
    ws.iter().map(Word::to_string).collect()
}

fn write_json(out: &mut dyn Write, v: &Value) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, v).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(EXIT_OK)
}

fn write_csv<R: Serialize>(out: &mut dyn Write, rows: &[R]) -> Outcome {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(EXIT_OK)
}

fn analyze(w: &Word, fmt: Format, out: &mut dyn Write) -> Outcome {
    let is_lyndon = w.is_lyndon()?;
    let periods = w.period_set()?;
    let bisection = if is_lyndon && w.len() >= 2 {
        Some(w.standard_bisection()?)
    } else {
        None
    };
    let factors = w.distinct_lyndon_factors();
    let listed = strings(&factors.factors);
    match fmt {
        Format::Json => write_json(
            out,
            &json!({
                "word": w.to_string(),
                "is_lyndon": is_lyndon,
                "periods": periods.periods(),
                "bisection": bisection.as_ref().map(|b| json!({
                    "lambda": b.lambda.to_string(),
                    "mu": b.mu.to_string(),
                })),
                "lyndon_factors": listed,
                "count": factors.count,
            }),
        ),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                word: String,
                is_lyndon: bool,
                periods: String,
                lambda: String,
                mu: String,
                count: usize,
                lyndon_factors: String,
            }
            let (lambda, mu) = bisection
                .as_ref()
                .map(|b| (b.lambda.to_string(), b.mu.to_string()))
                .unwrap_or_default();
            let periods: Vec<String> = periods.periods().iter().map(usize::to_string).collect();
            write_csv(
                out,
                &[Row {
                    word: w.to_string(),
                    is_lyndon,
                    periods: periods.join(";"),
                    lambda,
                    mu,
                    count: factors.count,
                    lyndon_factors: listed.join(";"),
                }],
            )
        }
        Format::Text => {
            writeln!(out, "word: {w}")?;
            writeln!(out, "is_lyndon: {is_lyndon}")?;
            let periods: Vec<String> = periods.periods().iter().map(usize::to_string).collect();
            writeln!(out, "periods: {}", periods.join(" "))?;
            match &bisection {
                Some(b) => writeln!(out, "bisection: ({}, {})", b.lambda, b.mu)?,
                None => writeln!(out, "bisection: none")?,
            }
            writeln!(out, "count: {}", factors.count)?;
            writeln!(out, "lyndon_factors: {}", listed.join(" "))?;
            Ok(EXIT_OK)
        }
    }
}

fn cfl(w: &Word, fmt: Format, out: &mut dyn Write) -> Outcome {
    let factors = strings(&w.cfl_factorize()?.factors);
    match fmt {
        Format::Json => write_json(out, &json!({ "word": w.to_string(), "factors": factors })),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                index: usize,
                factor: &'a str,
            }
            let rows: Vec<Row> = factors
                .iter()
                .enumerate()
                .map(|(index, factor)| Row { index, factor })
                .collect();
            write_csv(out, &rows)
        }
        Format::Text => {
            writeln!(out, "{}", factors.join(" "))?;
            Ok(EXIT_OK)
        }
    }
}

fn enumerate(
    alphabet: &Arc<Alphabet>,
    n: usize,
    k: Option<usize>,
    filter: FilterArg,
    fmt: Format,
    out: &mut dyn Write,
) -> Outcome {
    let k = k.unwrap_or(alphabet.len());
    let filter = match filter {
        FilterArg::All => LyndonFilter::All,
        FilterArg::Canonical => LyndonFilter::Canonical,
        FilterArg::Dense => LyndonFilter::Dense,
    };
    let words = strings(&enumerate_lyndon(alphabet, n, k, filter)?);
    match fmt {
        Format::Json => write_json(
            out,
            &json!({ "n": n, "k": k, "count": words.len(), "words": words }),
        ),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                word: &'a str,
            }
            let rows: Vec<Row> = words.iter().map(|w| Row { word: w }).collect();
            write_csv(out, &rows)
        }
        Format::Text => {
            for w in &words {
                writeln!(out, "{w}")?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn ell(max_n: usize, fmt: Format, out: &mut dyn Write) -> Outcome {
    use rayon::prelude::*;
    if max_n == 0 {
        return Err(Failure::Usage("--max-n must be at least 1".into()));
    }
    let entries = (1..=max_n)
        .into_par_iter()
        .map(min_lyndon_profile)
        .collect::<Result<Vec<_>, Error>>()?;
    #[derive(Serialize)]
    struct Row {
        n: usize,
        ell: usize,
        num_extremal: usize,
        extremal_words: String,
    }
    let rows: Vec<Row> = entries
        .iter()
        .map(|e| Row {
            n: e.n,
            ell: e.ell,
            num_extremal: e.extremal_words.len(),
            extremal_words: strings(&e.extremal_words).join(";"),
        })
        .collect();
    match fmt {
        Format::Json => {
            let rows: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "n": e.n,
                        "ell": e.ell,
                        "num_extremal": e.extremal_words.len(),
                        "extremal_words": strings(&e.extremal_words),
                    })
                })
                .collect();
            write_json(out, &Value::Array(rows))
        }
        Format::Csv => write_csv(out, &rows),
        Format::Text => {
            writeln!(out, "{:>3} {:>4} {:>4}  extremal words", "n", "ell", "#")?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>3} {:>4} {:>4}  {}",
                    r.n,
                    r.ell,
                    r.num_extremal,
                    r.extremal_words.replace(';', " ")
                )?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn single_word(fields: Value, word: &Word, fmt: Format, out: &mut dyn Write) -> Outcome {
    match fmt {
        Format::Json => {
            let mut v = fields;
            v["word"] = json!(word.to_string());
            v["length"] = json!(word.len());
            write_json(out, &v)
        }
        Format::Csv => {
            let mut header: Vec<String> = Vec::new();
            let mut values: Vec<String> = Vec::new();
            if let Value::Object(map) = &fields {
                for (k, v) in map {
                    header.push(k.clone());
                    values.push(match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    });
                }
            }
            header.extend(["word".to_string(), "length".to_string()]);
            values.extend([word.to_string(), word.len().to_string()]);
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&header)?;
            w.write_record(&values)?;
            w.flush()?;
            Ok(EXIT_OK)
        }
        Format::Text => {
            writeln!(out, "{word}")?;
            Ok(EXIT_OK)
        }
    }
}

fn fib(
    alphabet: &Arc<Alphabet>,
    n: usize,
    variant: &str,
    kind: FibKind,
    fmt: Format,
    out: &mut dyn Write,
) -> Outcome {
    let v = FibVariant::parse(variant, alphabet)?;
    let (word, kind_name) = match kind {
        FibKind::Word => (fibonacci::fib_word(n, &v)?, "word"),
        FibKind::Central => (fibonacci::central_p(n, &v)?, "central"),
        FibKind::LyndonPlain => (
            fibonacci::fib_lyndon(n, FibLyndonKind::Plain, &v)?,
            "lyndon-plain",
        ),
        FibKind::LyndonComplement => (
            fibonacci::fib_lyndon(n, FibLyndonKind::Complement, &v)?,
            "lyndon-complement",
        ),
    };
    single_word(
        json!({ "n": n, "variant": v.to_string(), "kind": kind_name }),
        &word,
        fmt,
        out,
    )
}

fn central(
    alphabet: &Arc<Alphabet>,
    p: usize,
    q: usize,
    fmt: Format,
    out: &mut dyn Write,
) -> Outcome {
    if alphabet.len() < 2 {
        return Err(Failure::Usage(
            "central words need an alphabet of at least two letters".into(),
        ));
    }
    let witness = fibonacci::central_word(p, q)?;
    let word = Word::from_ranks(alphabet, witness.word.into_ranks())?;
    single_word(json!({ "p": p, "q": q }), &word, fmt, out)
}

fn profile(
    source: &InfiniteSource,
    n_max: usize,
    prefix_budget: usize,
    fmt: Format,
    out: &mut dyn Write,
) -> Outcome {
    let p = lyndon_profile(source, n_max, prefix_budget)?;
    let rows = p.rows();
    match fmt {
        Format::Json => write_json(
            out,
            &json!({
                "source": source.to_string(),
                "n_max": n_max,
                "prefix_budget": prefix_budget,
                "prefix_used": p.prefix_used,
                "exactness": p.exactness,
                "rows": rows,
            }),
        ),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                n: usize,
                count: usize,
                new_factors: String,
                exactness: String,
            }
            let rows: Vec<Row> = rows
                .iter()
                .map(|r| Row {
                    n: r.n,
                    count: r.count,
                    new_factors: r.new_factors.join(";"),
                    exactness: r.exactness.to_string(),
                })
                .collect();
            write_csv(out, &rows)
        }
        Format::Text => {
            writeln!(
                out,
                "source: {source} ({}, prefix budget {prefix_budget})",
                p.exactness
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>4} {:>4}  {}",
                    r.n,
                    r.count,
                    r.new_factors.join(" ")
                )?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn stream(
    source: &InfiniteSource,
    max_factors: usize,
    letter_budget: usize,
    fmt: Format,
    out: &mut dyn Write,
) -> Outcome {
    let s = stream_cfl(source, max_factors, letter_budget)?;
    let factors = strings(&s.finalized);
    let tail = s.periodic_tail.as_ref().map(Word::to_string);
    match fmt {
        Format::Json => write_json(
            out,
            &json!({
                "source": s.source,
                "finalized": factors,
                "periodic_tail": tail,
                "pending_len": s.pending_len,
                "consumed": s.consumed,
                "max_factors": s.max_factors,
                "letter_budget": s.letter_budget,
                "budget_exhausted": s.budget_exhausted,
            }),
        ),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                index: usize,
                factor: &'a str,
            }
            let rows: Vec<Row> = factors
                .iter()
                .enumerate()
                .map(|(index, factor)| Row { index, factor })
                .collect();
            write_csv(out, &rows)
        }
        Format::Text => {
            writeln!(out, "{}", factors.join(" "))?;
            if let Some(v) = &tail {
                writeln!(out, "tail: ({v})^omega")?;
            }
            writeln!(
                out,
                "consumed {} letters, {} pending{}",
                s.consumed,
                s.pending_len,
                if s.budget_exhausted {
                    ", budget exhausted"
                } else {
                    ""
                }
            )?;
            Ok(EXIT_OK)
        }
    }
}

fn compare(
    source: &InfiniteSource,
    n_max: usize,
    prefix_budget: usize,
    fmt: Format,
    out: &mut dyn Write,
) -> Outcome {
    let c = compare_profile_to_fib(source, n_max, prefix_budget)?;
    match fmt {
        Format::Json => write_json(
            out,
            &json!({
                "source": c.source,
                "n_max": c.n_max,
                "prefix_budget": prefix_budget,
                "exactness": c.exactness,
                "margins": c.margins,
                "verdict": c.verdict,
            }),
        ),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                n: usize,
                margin: i64,
            }
            let rows: Vec<Row> = c
                .margins
                .iter()
                .enumerate()
                .map(|(i, &margin)| Row { n: i + 1, margin })
                .collect();
            write_csv(out, &rows)
        }
        Format::Text => {
            let margins: Vec<String> = c.margins.iter().map(i64::to_string).collect();
            writeln!(out, "margins: {}", margins.join(" "))?;
            writeln!(out, "exactness: {}", c.exactness)?;
            let verdict = match c.verdict {
                ComparisonVerdict::AtLeastFibonacci { equal: true } => {
                    "equal to Fibonacci".to_string()
                }
                ComparisonVerdict::AtLeastFibonacci { equal: false } => {
                    "at least Fibonacci".to_string()
                }
                ComparisonVerdict::UltimatelyPeriodic { first_negative } => {
                    format!("below Fibonacci from n={first_negative}: ultimately periodic")
                }
                ComparisonVerdict::Inconclusive { first_negative } => {
                    format!("below Fibonacci from n={first_negative} on the prefix: inconclusive")
                }
            };
            writeln!(out, "verdict: {verdict}")?;
            Ok(EXIT_OK)
        }
    }
}

fn verify(suite: &str, max_len: Option<usize>, fmt: Format, out: &mut dyn Write) -> Outcome {
    let suite: Suite = suite.parse()?;
    let bounds = match max_len {
        Some(n) => SuiteBounds::with_max_len(n),
        None => SuiteBounds::default(),
    };
    let reports = run_suite(suite, bounds)?;
    let code = if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    match fmt {
        Format::Json => {
            write_json(
                out,
                &serde_json::to_value(&reports).map_err(std::io::Error::from)?,
            )?;
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                check_id: String,
                scope: String,
                verdict: String,
                violations: String,
                elapsed_ms: u128,
            }
            let rows: Vec<Row> = reports
                .iter()
                .map(|r| Row {
                    check_id: r.check_id.clone(),
                    scope: r.scope.clone(),
                    verdict: r.verdict.to_string(),
                    violations: strings(&r.violations).join(";"),
                    elapsed_ms: r.elapsed.as_millis(),
                })
                .collect();
            write_csv(out, &rows)?;
        }
        Format::Text => {
            for r in &reports {
                writeln!(out, "{r} ({} ms)", r.elapsed.as_millis())?;
                for note in &r.notes {
                    writeln!(out, "    {note}")?;
                }
            }
        }
    }
    Ok(code)
}
