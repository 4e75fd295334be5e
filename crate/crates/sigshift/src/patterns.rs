//! Permutations, marked cycles, and ordinal patterns of words.
//!
//! A permutation `π` of length `n` corresponds to the marked cycle obtained by
//! writing, at position `π_i`, the entry `π_{i+1}`, with a `⋆` at position
//! `π_n`. Ascent/descent statistics of the marked cycle skip over the `⋆` and
//! drive the minimal-alphabet formulas in [`crate::segmentations`].

use std::cmp::Ordering;
use std::fmt;

use crate::words::{compare_unchecked, PeriodicWord, Signature};
use crate::{Error, Result};

/// A permutation of `{1, .., n}` in one-line notation.
///
/// Text form is compact digits `52413` for `n ≤ 9` or a comma list
/// `5,2,4,1,3`. Ordering is lexicographic on the one-line form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u8>,
}

impl Permutation {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        let n = entries.len();
        let text = || format!("{entries:?}");
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::BadPermutation(
                text(),
                "length must be 1..=255".into(),
            ));
        }
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(Error::BadPermutation(
                    text(),
                    format!("entries must be a bijection on 1..={n}"),
                ));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn identity(n: usize) -> Self {
        Permutation::new((1..=n as u8).collect()).expect("valid")
    }

    /// Parses compact digits (`n ≤ 9`) or a comma list.
    pub fn parse(s: &str) -> Result<Self> {
        let entries = if s.contains(',') {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u8>()
                        .map_err(|e| Error::BadPermutation(s.into(), e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) => Ok(d as u8),
                    None => Err(Error::BadPermutation(
                        s.into(),
                        format!("unexpected character `{c}`"),
                    )),
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(entries)
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// 1-based entry `π_i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1] as usize
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn last(&self) -> usize {
        *self.entries.last().unwrap() as usize
    }

    /// The complement `π^c` with entries `n + 1 - π_i`.
    pub fn complement(&self) -> Permutation {
        let n = self.entries.len() as u8;
        Permutation {
            entries: self.entries.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Rank-reduction of a sequence of distinct values to a permutation.
    pub fn standardize(values: &[usize]) -> Permutation {
        let entries = values
            .iter()
            .map(|&v| 1 + values.iter().filter(|&&u| u < v).count() as u8)
            .collect();
        Permutation { entries }
    }

    /// All permutations of length `n` (Heap's algorithm), for exhaustive scans.
    pub fn all_of_size(n: usize) -> Vec<Permutation> {
        assert!((1..=10).contains(&n));
        let mut current: Vec<u8> = (1..=n as u8).collect();
        let mut out = Vec::with_capacity((1..=n).product());
        let mut ks = vec![0usize; n];
        out.push(Permutation {
            entries: current.clone(),
        });
        let mut i = 0;
        while i < n {
            if ks[i] < i {
                if i % 2 == 0 {
                    current.swap(0, i);
                } else {
                    current.swap(ks[i], i);
                }
                out.push(Permutation {
                    entries: current.clone(),
                });
                ks[i] += 1;
                i = 0;
            } else {
                ks[i] = 0;
                i += 1;
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.len() <= 9 {
            for &v in &self.entries {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// A cyclic permutation with one entry replaced by a distinguished `⋆`.
///
/// Built from `π` by `marked_cycle`; the `⋆` sits at position `π_n` and is a
/// sentinel, never compared as a value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedCycle {
    /// `entries[j]` is the value at 1-based position `j + 1`; `None` is `⋆`.
    entries: Vec<Option<u8>>,
}

/// How one position of a marked cycle compares to the next entry, skipping `⋆`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarStep {
    Ascent,
    Descent,
    /// No comparison: the position holds `⋆`, or the skipped `⋆` is final.
    None,
}

impl MarkedCycle {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// Value at 1-based position `j`, or `None` for the `⋆`.
    pub fn at(&self, j: usize) -> Option<usize> {
        self.entries[j - 1].map(|v| v as usize)
    }

    /// 1-based position of the `⋆` (equals `π_n`).
    pub fn star_position(&self) -> usize {
        1 + self.entries.iter().position(|e| e.is_none()).unwrap()
    }

    /// Classifies position `j ∈ 1..n`: compares the value at `j` with the
    /// next non-`⋆` entry. A position holding `⋆`, or whose skipped `⋆` has
    /// nothing after it, compares nothing.
    pub fn step(&self, j: usize) -> StarStep {
        let n = self.n();
        debug_assert!(j >= 1 && j < n);
        let Some(a) = self.at(j) else {
            return StarStep::None;
        };
        let b = match self.at(j + 1) {
            Some(b) => b,
            None if j + 2 <= n => self.at(j + 2).expect("only one star"),
            None => return StarStep::None,
        };
        if a < b {
            StarStep::Ascent
        } else {
            StarStep::Descent
        }
    }

    /// Positions `j` with an ascent under the `⋆`-skipping rule.
    pub fn star_ascents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&j| self.step(j) == StarStep::Ascent)
            .collect()
    }

    /// Positions `j` with a descent under the `⋆`-skipping rule.
    pub fn star_descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&j| self.step(j) == StarStep::Descent)
            .collect()
    }

    /// Parses e.g. `34*12`, or a comma list with `*`.
    pub fn parse(s: &str) -> Result<Self> {
        let entries = if s.contains(',') {
            s.split(',')
                .map(|part| match part.trim() {
                    "*" => Ok(None),
                    v => v
                        .parse::<u8>()
                        .map(Some)
                        .map_err(|e| Error::BadMarkedCycle(s.into(), e.to_string())),
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| match c {
                    '*' => Ok(None),
                    _ => c.to_digit(10).map(|d| Some(d as u8)).ok_or_else(|| {
                        Error::BadMarkedCycle(s.into(), format!("unexpected character `{c}`"))
                    }),
                })
                .collect::<Result<Vec<_>>>()?
        };
        let cycle = MarkedCycle { entries };
        // Round-trip through the inverse checks all structural invariants.
        cycle.to_permutation().map(|_| cycle)
    }

    /// Inverts the bijection `π ↦ π̂⋆`.
    pub fn to_permutation(&self) -> Result<Permutation> {
        let n = self.entries.len();
        let text = || self.to_string();
        if n == 0 {
            return Err(Error::BadMarkedCycle(text(), "empty".into()));
        }
        if self.entries.iter().filter(|e| e.is_none()).count() != 1 {
            return Err(Error::BadMarkedCycle(
                text(),
                "exactly one `*` required".into(),
            ));
        }
        let mut present = vec![false; n + 1];
        for &e in self.entries.iter().flatten() {
            if e == 0 || e as usize > n || present[e as usize] {
                return Err(Error::BadMarkedCycle(
                    text(),
                    format!("values must be distinct and within 1..={n}"),
                ));
            }
            present[e as usize] = true;
        }
        // The missing value is π_1; follow v ↦ entries[v] until the star.
        let first = (1..=n).find(|&v| !present[v]).unwrap();
        let mut entries = Vec::with_capacity(n);
        let mut v = first;
        for _ in 0..n {
            entries.push(v as u8);
            match self.entries[v - 1] {
                Some(next) => v = next as usize,
                None => break,
            }
        }
        if entries.len() != n {
            return Err(Error::BadMarkedCycle(
                text(),
                "entries do not form a single marked cycle".into(),
            ));
        }
        Permutation::new(entries)
    }
}

impl fmt::Display for MarkedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.len() <= 9 {
            for e in &self.entries {
                match e {
                    Some(v) => write!(f, "{v}")?,
                    None => f.write_str("*")?,
                }
            }
            Ok(())
        } else {
            let parts: Vec<String> = self
                .entries
                .iter()
                .map(|e| match e {
                    Some(v) => v.to_string(),
                    None => "*".into(),
                })
                .collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// The marked cycle `π̂⋆` with `π̂⋆_{π_i} = π_{i+1}` and a `⋆` at `π_n`.
pub fn marked_cycle(pi: &Permutation) -> MarkedCycle {
    let n = pi.n();
    let mut entries = vec![None; n];
    for i in 1..n {
        entries[pi.at(i) - 1] = Some(pi.at(i + 1) as u8);
    }
    MarkedCycle { entries }
}

/// Inverse of [`marked_cycle`]; fails on malformed cycles.
pub fn inverse_marked_cycle(m: &MarkedCycle) -> Result<Permutation> {
    m.to_permutation()
}

/// The ordinal pattern of the first `n` shifts of `w` under the twisted order,
/// or `None` if two shifts coincide.
pub fn pat(w: &PeriodicWord, sig: &Signature, n: usize) -> Result<Option<Permutation>> {
    assert!(n >= 1);
    if w.alphabet() as usize > sig.k() {
        return Err(Error::AlphabetMismatch(w.alphabet(), sig.k() as u8));
    }
    let mut shifts = Vec::with_capacity(n);
    let mut cur = w.clone();
    for _ in 0..n {
        shifts.push(cur.clone());
        cur = cur.shift();
    }
    let mut ranks = vec![1u8; n];
    for i in 0..n {
        for j in i + 1..n {
            match compare_unchecked(&shifts[i], &shifts[j], sig) {
                Ordering::Less => ranks[j] += 1,
                Ordering::Greater => ranks[i] += 1,
                Ordering::Equal => return Ok(None),
            }
        }
    }
    Ok(Some(Permutation { entries: ranks }))
}

/// The complement/reverse transport `(π, σ) ↦ (π^c, σ^r)`; a pattern is
/// realized by `σ` iff its complement is realized by the reversed signature.
pub fn complement_transport(pi: &Permutation, sig: &Signature) -> (Permutation, Signature) {
    (pi.complement(), sig.reversed())
}
