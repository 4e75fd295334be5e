//! Brute-force enumeration of realized patterns, independent of the
//! segmentation engine.
//!
//! Two methods. The word scan evaluates the pattern of every word
//! `ζ d^{2⌈n/2⌉} ω_σ` and `ζ d^{2⌈n/2⌉} Ω_σ` over all prefixes `ζ` of length
//! `n - 1` and all periods `d` of length up to `n - 1`; this family contains
//! every witness word, so the scan is complete as well as sound. Map sampling
//! iterates the signed sawtooth map on exact rationals and is sound only.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::patterns::{pat, Permutation};
use crate::words::{extremal_words, Sign, Signature};

/// How a pattern set was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    WordScan,
    MapSampling,
}

/// Result of a brute-force enumeration run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleReport {
    pub signature: String,
    pub n: usize,
    pub method: OracleMethod,
    /// Candidate words (before deduplication) or orbits evaluated.
    pub candidates: usize,
    /// Sorted one-line pattern strings.
    pub patterns: Vec<String>,
}

impl OracleReport {
    pub fn new(
        sig: &Signature,
        n: usize,
        method: OracleMethod,
        candidates: usize,
        set: &BTreeSet<Permutation>,
    ) -> OracleReport {
        OracleReport {
            signature: sig.to_string(),
            n,
            method,
            candidates,
            patterns: set.iter().map(|p| p.to_string()).collect(),
        }
    }
}

/// Number of candidate words the word scan evaluates before deduplication.
pub fn word_scan_candidates(sig: &Signature, n: usize) -> u64 {
    if n == 1 {
        return 1;
    }
    let k = sig.k() as u64;
    let prefixes = k.pow(n as u32 - 1);
    let periods: u64 = (1..n).map(|c| k.pow(c as u32)).sum();
    2 * prefixes * periods
}

fn words_of_length(len: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k as u8).map(move |c| {
                    let mut next = w.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out
}

/// All patterns of length `n` realized by `Σ_σ`, by exhaustive word scan.
pub fn oracle_word_scan(sig: &Signature, n: usize) -> BTreeSet<Permutation> {
    assert!(n >= 1);
    if n == 1 {
        return BTreeSet::from([Permutation::identity(1)]);
    }
    let k = sig.k();
    let (omega_min, omega_max) = extremal_words(sig);
    let m = n.div_ceil(2);
    let prefixes = words_of_length(n - 1, k);
    let periods: Vec<Vec<u8>> = (1..n).flat_map(|c| words_of_length(c, k)).collect();

    prefixes
        .par_iter()
        .map(|zeta| {
            // Dedup candidates by canonical form; repeated periods collapse.
            let mut seen = BTreeSet::new();
            let mut found = BTreeSet::new();
            for d in &periods {
                let mut body = zeta.clone();
                for _ in 0..2 * m {
                    body.extend_from_slice(d);
                }
                for tail in [&omega_min, &omega_max] {
                    let w = tail.prepend(&body).canonicalize();
                    if !seen.insert(w.clone()) {
                        continue;
                    }
                    if let Some(pattern) = pat(&w, sig, n).expect("same alphabet") {
                        found.insert(pattern);
                    }
                }
            }
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// The signed sawtooth map on `[0, 1]` evaluated at `a/b`, keeping the
/// denominator fixed: the branch index is `t = min(⌊ka/b⌋, k-1)` and the
/// image is `(ka - tb)/b` on rising branches, `((t+1)b - ka)/b` on falling.
fn sawtooth_step(a: u64, b: u64, sig: &Signature) -> u64 {
    let k = sig.k() as u64;
    let t = (k * a / b).min(k - 1);
    match sig.sign(t as u8) {
        Sign::Plus => k * a - t * b,
        Sign::Minus => (t + 1) * b - k * a,
    }
}

/// Patterns of length `n` realized by rational orbits of the sawtooth map
/// with denominator at most `denominator_bound`. Sound but not complete.
pub fn oracle_map_sampling(
    sig: &Signature,
    n: usize,
    denominator_bound: u64,
) -> BTreeSet<Permutation> {
    assert!(n >= 1);
    (1..=denominator_bound)
        .into_par_iter()
        .map(|b| {
            let mut found = BTreeSet::new();
            for a in 0..b {
                if gcd(a, b) != 1 {
                    continue;
                }
                let mut orbit = Vec::with_capacity(n);
                let mut x = a;
                for _ in 0..n {
                    orbit.push(x);
                    x = sawtooth_step(x, b, sig);
                }
                // A repeated numerator means the pattern is undefined.
                let mut sorted = orbit.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let values: Vec<usize> = orbit.iter().map(|&v| v as usize).collect();
                found.insert(Permutation::standardize(&values));
            }
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// Orbits the map-sampling oracle evaluates: the Farey count
/// `sum of phi(b) for b <= bound`, by a totient sieve.
pub fn map_sampling_candidates(denominator_bound: u64) -> u64 {
    let bound = denominator_bound as usize;
    let mut phi: Vec<u64> = (0..=bound as u64).collect();
    for p in 2..=bound {
        if phi[p] == p as u64 {
            let mut m = p;
            while m <= bound {
                phi[m] -= phi[m] / p as u64;
                m += p;
            }
        }
    }
    phi[1..].iter().sum()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
