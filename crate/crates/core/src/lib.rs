pub mod error;
pub mod fibonacci;
pub mod infinite;
pub mod lyndon;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use fibonacci::{FibLyndonKind, FibVariant};
pub use infinite::{Exactness, InfiniteSource, LyndonProfile, MorphismSpec, StreamFactorization};
pub use lyndon::{CflFactorization, LyndonFactors, MinProfileEntry, StandardBisection};
pub use verify::{CheckReport, Verdict};
pub use words::{compare_lex, Alphabet, FactorSet, PeriodSet, Word};
