//! Infinite words given by finite descriptions: their prefixes, Lyndon
//! profiles, factor sets and streaming Lyndon factorizations.

mod profile;
mod source;
mod stream;

pub use profile::{
    all_lyndon_factors, compare_profile_to_fib, factor_set_of_source, lyndon_profile,
    lyndon_profile_by_search, ComparisonVerdict, LyndonProfile, ProfileComparison, ProfileRow,
    SourceFactorSet,
};
pub use source::{Exactness, InfiniteSource, MorphismSpec, SourceKind};
pub use stream::{stream_cfl, StreamFactorization, DEFAULT_LETTER_BUDGET};

pub const DEFAULT_PREFIX_BUDGET: usize = 4096;
