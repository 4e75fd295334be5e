//! Exact combinatorics of permutation patterns realized by signed shift maps.
//!
//! A signed shift is the left shift on infinite `k`-ary words, ordered by a
//! linear order that flips direction after every letter whose slope sign is
//! negative. This crate decides which permutations are realized as ordinal
//! patterns of such maps, constructs witness words and the order intervals of
//! words inducing a given pattern, and evaluates the closed-form counting
//! formulas for positive and negative shifts, cross-validated by brute-force
//! oracles.
//!
//! The main entry points are:
//!
//! * [`words`]: eventually periodic words, the signature-twisted order, and
//!   word utilities (primitivity, canonical forms, extremal words).
//! * [`patterns`]: permutations, marked cycles, and ordinal patterns of words.
//! * [`segmentations`]: the segmentation engine deciding whether a pattern is
//!   realized, with minimal-alphabet statistics and classification.
//! * [`intervals`]: interval decompositions of the words inducing a pattern,
//!   plus witness construction.
//! * [`enumeration`]: exact counting formulas (primitive words, interval
//!   counts, pattern counts by minimal alphabet, tent-map bounds, entropy
//!   diagnostics).
//! * [`oracle`]: brute-force pattern enumeration independent of the
//!   segmentation engine.

pub mod enumeration;
pub mod intervals;
pub mod oracle;
pub mod patterns;
pub mod segmentations;
pub mod words;

use thiserror::Error;

/// Errors produced by parsing and by operations on mismatched domains.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size mismatch: {0} vs {1}")]
    AlphabetMismatch(u8, u8),
    #[error("invalid signature `{0}`: {1}")]
    BadSignature(String, String),
    #[error("invalid word `{0}`: {1}")]
    BadWord(String, String),
    #[error("invalid permutation `{0}`: {1}")]
    BadPermutation(String, String),
    #[error("invalid marked cycle `{0}`: {1}")]
    BadMarkedCycle(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;
