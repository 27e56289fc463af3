//! Vincular pattern posets on permutations.
//!
//! A vincular (dashed) pattern is a permutation with adjacency constraints:
//! matched entries must sit next to each other in the text wherever the
//! pattern carries no dash. A scheme fixes those constraints for every
//! pattern length at once and induces a partial order on permutations as
//! the transitive closure of one-entry coverings. This crate provides
//!
//! * pattern containment and occurrence enumeration under any scheme
//!   ([`vincular`]),
//! * interval construction with Hasse edges, DOT and JSON export
//!   ([`poset`]),
//! * Möbius function evaluation, both as a brute-force recursion over an
//!   interval and as the closed form for quasi-consecutive intervals whose
//!   bottom occurs exactly once in the top ([`mod@mobius`]).
//!
//! The quasi-consecutive order, where only the gap after the first matched
//! entry is unconstrained, is the main object of study; the narrative guide
//! under `book/` walks through the theory with runnable examples.

mod error;
pub mod mobius;
pub mod permutation;
pub mod poset;
pub mod vincular;

pub use error::Error;
pub use mobius::{
    mobius, mobius_bruteforce, mobius_closed_form, CaseLabel, Direction, Method,
    MobiusEvaluation, Strategy,
};
pub use permutation::{order_isomorphic, standardize, Permutation, MAX_LEN};
pub use poset::{interval, leq, CoverCache, Interval};
pub use vincular::{
    contains, count_occurrences, covered_by, occurrences, AdjacencyVector, DashedPermutation,
    Occurrence, VincularScheme,
};

// The guide's code blocks double as doctests so the book cannot drift from
// the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/permutations.md")]
    mod permutations {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    mod patterns {}
    #[doc = include_str!("../../../book/src/posets.md")]
    mod posets {}
    #[doc = include_str!("../../../book/src/mobius.md")]
    mod mobius {}
}
