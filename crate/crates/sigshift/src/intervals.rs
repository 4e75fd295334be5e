//! Interval decomposition of the words inducing a pattern, and witness words.
//!
//! Each valid segmentation of `π̂⋆` contributes one order interval of words
//! `ζ w`: the suffix `w` ranges strictly between `q^∞` and `p^∞`, with the
//! extremal word substituted (and the end closed) when `π_n` is `1` or `n`.
//! Prepending `ζ` reverses the order when `ζ` has an odd number of negative
//! letters, so endpoints are sorted after prepending.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::enumeration::interval_count_closed;
use crate::patterns::{pat, Permutation};
use crate::segmentations::{enumerate_segmentations, PrefixData, Segmentation};
use crate::words::{compare, extremal_words, PeriodicWord, Signature};
use crate::Result;
use std::cmp::Ordering;

/// One order interval of words inducing a fixed pattern, with its generating
/// segmentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllowedInterval {
    pub lower: PeriodicWord,
    pub upper: PeriodicWord,
    pub lower_closed: bool,
    pub upper_closed: bool,
    pub pattern: Permutation,
    pub segmentation: Segmentation,
    pub prefix: PrefixData,
}

impl AllowedInterval {
    /// Order test with the closed/open flags.
    pub fn contains(&self, w: &PeriodicWord, sig: &Signature) -> Result<bool> {
        let lo = compare(&self.lower, w, sig)?;
        let hi = compare(w, &self.upper, sig)?;
        Ok(
            (lo == Ordering::Less || (lo == Ordering::Equal && self.lower_closed))
                && (hi == Ordering::Less || (hi == Ordering::Equal && self.upper_closed)),
        )
    }

    /// Text form `[110(0), (1))` with brackets encoding closedness.
    pub fn display(&self) -> String {
        format!(
            "{}{}, {}{}",
            if self.lower_closed { '[' } else { '(' },
            self.lower,
            self.upper,
            if self.upper_closed { ']' } else { ')' },
        )
    }
}

/// The disjoint intervals of words inducing `π`, one per valid segmentation,
/// sorted by lower endpoint. Empty iff `π` is not realized.
pub fn allowed_intervals(pi: &Permutation, sig: &Signature) -> Vec<AllowedInterval> {
    let n = pi.n();
    let (omega_min, omega_max) = extremal_words(sig);
    let mut out = Vec::new();
    for (seg, data) in enumerate_segmentations(pi, sig, true) {
        let zeta = data.zeta.letters();
        let k = sig.k() as u8;
        let periodic =
            |letters: &[u8]| PeriodicWord::purely_periodic(letters.to_vec(), k).expect("nonempty");
        // Suffix bounds by the position of π_n: open at p^∞/q^∞ ends, closed
        // at extremal-word ends. Length 1 keeps both extremal endpoints.
        let (lo_suffix, lo_closed, hi_suffix, hi_closed) = if n == 1 {
            (omega_min.clone(), true, omega_max.clone(), true)
        } else if pi.last() == 1 {
            let p = data.p.as_ref().expect("last value is not n");
            (omega_min.clone(), true, periodic(p.letters()), false)
        } else if pi.last() == n {
            let q = data.q.as_ref().expect("last value is not 1");
            (periodic(q.letters()), false, omega_max.clone(), true)
        } else {
            let p = data.p.as_ref().unwrap();
            let q = data.q.as_ref().unwrap();
            (periodic(q.letters()), false, periodic(p.letters()), false)
        };
        let mut lower = (lo_suffix.prepend(zeta).canonicalize(), lo_closed);
        let mut upper = (hi_suffix.prepend(zeta).canonicalize(), hi_closed);
        let ord = compare(&lower.0, &upper.0, sig).expect("same alphabet");
        if ord == Ordering::Greater {
            std::mem::swap(&mut lower, &mut upper);
        }
        assert_ne!(
            compare(&lower.0, &upper.0, sig).expect("same alphabet"),
            Ordering::Greater,
            "interval endpoints out of order for {pi}"
        );
        out.push(AllowedInterval {
            lower: lower.0,
            upper: upper.0,
            lower_closed: lower.1,
            upper_closed: upper.1,
            pattern: pi.clone(),
            segmentation: seg,
            prefix: data,
        });
    }
    out.sort_by(|a, b| {
        compare(&a.lower, &b.lower, sig)
            .expect("same alphabet")
            .then(compare(&a.upper, &b.upper, sig).expect("same alphabet"))
    });
    out
}

/// A word inducing `π`, or `None` if `π` is not realized.
///
/// Deterministic choice: the valid segmentation with lexicographically
/// smallest prefix; the word is `ζ p^{2m} ω_σ` when `π_n ≠ n` and
/// `ζ q^{2m} Ω_σ` otherwise, with `m = ⌈n/2⌉`. The induced pattern is
/// asserted before returning.
pub fn witness(pi: &Permutation, sig: &Signature) -> Option<PeriodicWord> {
    let n = pi.n();
    let (omega_min, omega_max) = extremal_words(sig);
    if n == 1 {
        return Some(omega_min);
    }
    let chosen = enumerate_segmentations(pi, sig, true)
        .into_iter()
        .min_by(|(_, a), (_, b)| a.zeta.letters().cmp(b.zeta.letters()))?;
    let data = chosen.1;
    let m = n.div_ceil(2);
    let (block, tail) = if pi.last() != n {
        (data.p.as_ref().unwrap(), &omega_min)
    } else {
        (data.q.as_ref().unwrap(), &omega_max)
    };
    let mut letters = data.zeta.letters().to_vec();
    for _ in 0..2 * m {
        letters.extend_from_slice(block.letters());
    }
    let word = tail.prepend(&letters).canonicalize();
    assert_eq!(
        pat(&word, sig, n).expect("same alphabet").as_ref(),
        Some(pi),
        "witness construction must induce its pattern"
    );
    Some(word)
}

/// Total number of allowed intervals for patterns of length `n`: the number
/// of pairs `(π, E)` with `E` a valid segmentation of `π̂⋆`.
///
/// Closed form for `n ≥ 3`; the `n = 2` case falls outside the formula (its
/// correction term is not even integral for `σ₀ = σ_{k-1} = -`) and is
/// counted directly.
pub fn interval_count(n: usize, sig: &Signature) -> BigInt {
    assert!(n >= 2);
    if n >= 3 {
        interval_count_closed(n, sig)
    } else {
        BigInt::from(count_valid_segmentation_pairs(n, sig))
    }
}

/// Direct count of `(π, valid E)` pairs by exhaustive enumeration.
pub fn count_valid_segmentation_pairs(n: usize, sig: &Signature) -> usize {
    Permutation::all_of_size(n)
        .par_iter()
        .map(|pi| enumerate_segmentations(pi, sig, true).len())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn sig(s: &str) -> Signature {
        Signature::parse(s).unwrap()
    }

    fn shapes(pi: &str, s: &str) -> Vec<String> {
        allowed_intervals(&p(pi), &sig(s))
            .iter()
            .map(|i| i.display())
            .collect()
    }

    #[test]
    fn tent_intervals_231() {
        assert_eq!(shapes("231", "+-"), vec!["((01), 01(0)]", "[11(0), (1))"]);
    }

    #[test]
    fn tent_intervals_312() {
        assert_eq!(shapes("312", "+-"), vec!["((10), 1(0))"]);
    }

    #[test]
    fn forbidden_has_no_intervals() {
        assert!(allowed_intervals(&p("615423"), &sig("--")).is_empty());
    }

    #[test]
    fn membership_respects_flags() {
        let s = sig("+-");
        let ints = allowed_intervals(&p("2413"), &s);
        let w = PeriodicWord::parse("1101(1)", 2).unwrap();
        let hits: Vec<bool> = ints.iter().map(|i| i.contains(&w, &s).unwrap()).collect();
        assert_eq!(
            hits.iter().filter(|&&h| h).count(),
            1,
            "exactly one interval"
        );

        // An open endpoint is excluded, a closed one included.
        for i in &ints {
            assert_eq!(i.contains(&i.lower, &s).unwrap(), i.lower_closed);
            assert_eq!(i.contains(&i.upper, &s).unwrap(), i.upper_closed);
        }
    }

    #[test]
    fn witness_examples() {
        let s = sig("+-");
        let w = witness(&p("356124"), &s).unwrap();
        assert_eq!(pat(&w, &s, 6).unwrap().unwrap(), p("356124"));

        // The construction from the other valid prefix also induces the
        // pattern: 01100 (1100)^6 0^∞.
        let mut letters = vec![0, 1, 1, 0, 0];
        for _ in 0..6 {
            letters.extend_from_slice(&[1, 1, 0, 0]);
        }
        let alt = PeriodicWord::new(letters, vec![0], 2).unwrap();
        assert_eq!(pat(&alt, &s, 6).unwrap().unwrap(), p("356124"));

        assert_eq!(
            witness(&p("1"), &sig("++")).unwrap(),
            PeriodicWord::parse("(0)", 2).unwrap()
        );
        assert!(witness(&p("615423"), &sig("--")).is_none());
    }

    #[test]
    fn interval_count_examples() {
        assert_eq!(interval_count(3, &sig("+-")), BigInt::from(8));
        assert_eq!(interval_count(5, &sig("+-")), BigInt::from(56));
        assert_eq!(interval_count(3, &sig("++")), BigInt::from(6));
        assert_eq!(count_valid_segmentation_pairs(3, &sig("++")), 6);
    }

    #[test]
    fn interval_count_length_two() {
        assert_eq!(interval_count(2, &sig("++")), BigInt::from(2));
        assert_eq!(interval_count(2, &sig("+-")), BigInt::from(3));
        assert_eq!(interval_count(2, &sig("-+")), BigInt::from(3));
        assert_eq!(interval_count(2, &sig("--")), BigInt::from(4));
    }
}
