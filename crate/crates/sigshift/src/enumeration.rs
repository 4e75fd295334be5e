//! Closed-form counting: primitive words, interval counts, pattern counts by
//! minimal alphabet, tent-map bounds, and the entropy diagnostic.
//!
//! Everything is computed in arbitrary precision. The alternating sums behind
//! `b(n, k)` overflow 64-bit integers well inside the ranges the CLI exposes,
//! and the tent-map lower bound is a half-integer, so counts are `BigInt` and
//! bounds are `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::patterns::Permutation;
use crate::segmentations::{
    canonical_segmentation, classify, enumerate_segmentations, Classification,
};
use crate::words::{Sign, Signature};

/// Möbius function by trial factorization; inputs stay tiny (word lengths).
pub fn mobius(mut m: u64) -> i64 {
    assert!(m >= 1);
    let mut mu = 1i64;
    let mut f = 2u64;
    while f * f <= m {
        if m.is_multiple_of(f) {
            m /= f;
            if m.is_multiple_of(f) {
                return 0;
            }
            mu = -mu;
        }
        f += 1;
    }
    if m > 1 {
        mu = -mu;
    }
    mu
}

/// Binomial coefficient by the Pascal recurrence, zero when `r > n`.
pub fn binomial(n: usize, r: usize) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one()];
        for i in 1..row.len() {
            next.push(&row[i - 1] + &row[i]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row[r].clone()
}

fn pow(base: usize, exp: usize) -> BigInt {
    BigInt::from(base).pow(exp as u32)
}

/// Number of primitive words of length `t` over `k` letters:
/// `ψ_k(t) = Σ_{d|t} μ(d) k^{t/d}`.
pub fn psi(k: usize, t: usize) -> BigInt {
    assert!(k >= 1 && t >= 1);
    let mut sum = BigInt::zero();
    for d in 1..=t {
        if t.is_multiple_of(d) {
            sum += mobius(d as u64) * pow(k, t / d);
        }
    }
    sum
}

/// Number of primitive binary words of length `m` with an odd number of
/// ones: `ψ̄₂(m) = ½ Σ_{d|m, d odd} μ(d) 2^{m/d}`.
pub fn psi_bar(m: usize) -> BigInt {
    assert!(m >= 1);
    let mut sum = BigInt::zero();
    for d in (1..=m).step_by(2) {
        if m.is_multiple_of(d) {
            sum += mobius(d as u64) * pow(2, m / d);
        }
    }
    debug_assert!((&sum % BigInt::from(2)).is_zero());
    sum / 2
}

/// `a(n, k) = Σ_{i=1}^{n-1} k^{n-i-1} ψ_k(i)`: eventually periodic words of
/// total description length `n - 1` with primitive period.
pub fn a_count(n: usize, k: usize) -> BigInt {
    assert!(n >= 2);
    (1..n).map(|i| pow(k, n - i - 1) * psi(k, i)).sum()
}

/// Closed-form interval count for `n ≥ 3`, split on the outer signs of `σ`.
pub(crate) fn interval_count_closed(n: usize, sig: &Signature) -> BigInt {
    assert!(n >= 3);
    let k = sig.k();
    let correction = match (sig.first(), sig.last()) {
        (Sign::Plus, Sign::Plus) => BigInt::from(k - 2) * pow(k, n - 2),
        (Sign::Minus, Sign::Minus) => BigInt::from(k * k - 2) * pow(k, n - 3),
        _ => BigInt::from(k - 1) * pow(k, n - 2),
    };
    a_count(n, k) + correction
}

/// Pairs `(π, E)` with `π` cornered, `E` a valid negative segmentation not
/// refining the canonical one: `|C_{n,k}| = 2 Σ_{j=1}^{k-1} j^{n-3}`.
pub fn cornered_pairs(n: usize, k: usize) -> BigInt {
    assert!(n >= 3 && k >= 2);
    BigInt::from(2) * (1..k).map(|j| pow(j, n - 3)).sum::<BigInt>()
}

/// The collapsed analogue of [`cornered_pairs`], summed over odd suffix
/// lengths `c`.
pub fn collapsed_pairs(n: usize, k: usize) -> BigInt {
    assert!(n >= 3 && k >= 2);
    let mut sum = BigInt::zero();
    for c in (1..=(n - 1) / 2).step_by(2) {
        for j in 1..k {
            sum += binomial(c + k - j - 2, k - j) * pow(j, n - 2 * c - 1) * psi(j, c);
        }
    }
    BigInt::from(2) * sum
}

/// Pairs `(π, E)` with `E` a valid negative `k`-segmentation refining the
/// canonical segmentation of `π`:
/// `p(n, k) = I_n(Σ_{-k}) - |C_{n,k}| - |D_{n,k}|`.
pub fn p_count(n: usize, k: usize) -> BigInt {
    assert!(n >= 3 && k >= 2, "p(n, k) is defined for n >= 3, k >= 2");
    interval_count_closed(n, &Signature::all_minus(k))
        - cornered_pairs(n, k)
        - collapsed_pairs(n, k)
}

/// Number of patterns of length `n` whose minimal negative alphabet is `k`.
pub fn b_negative(n: usize, k: usize) -> BigInt {
    assert!(n >= 3 && k >= 2);
    let mut sum = BigInt::zero();
    for j in 2..=k {
        let term = binomial(n, k - j) * p_count(n, j);
        if (k - j).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// Number of patterns of length `n` whose minimal positive alphabet is `k`.
pub fn b_positive(n: usize, k: usize) -> BigInt {
    assert!(n >= 3 && k >= 2);
    let mut sum = BigInt::zero();
    for j in 2..=k {
        let term = binomial(n, k - j) * interval_count_closed(n, &Signature::all_plus(j));
        if (k - j).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// Exact lower and upper bounds on the number of tent-map patterns of
/// length `n`; the lower bound `½ I_n` can be a half-integer.
pub fn tent_bounds(n: usize) -> (BigRational, BigRational) {
    assert!(n >= 3);
    let tent = Signature::parse("+-").expect("valid");
    let intervals = interval_count_closed(n, &tent);
    let lower = BigRational::new(intervals, BigInt::from(2));
    let mut correction = BigInt::zero();
    for c in 1..=(n - 1) / 2 {
        correction += pow(2, n - 2 * c - 1) * psi_bar(c);
    }
    let upper = &lower + BigRational::from_integer(correction);
    (lower, upper)
}

/// One row of the entropy diagnostic for a signature.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntropyPoint {
    pub n: usize,
    /// `I_n(Σ_σ)` as a decimal string.
    pub intervals: String,
    /// `log I_n / (n - 1)`, the permutation-entropy estimate; tends to `log k`.
    pub growth: f64,
    /// `I_n / (n k^{n-1})`, which approaches 1.
    pub ratio: f64,
}

/// Entropy diagnostic for `n = 2..=n_max`. The growth column estimates the
/// topological entropy `log k`; the ratio column is exact in
/// [`entropy_ratio`] and rounded here for display.
pub fn entropy_estimate(sig: &Signature, n_max: usize) -> Vec<EntropyPoint> {
    assert!(n_max >= 3);
    (2..=n_max)
        .map(|n| {
            let intervals = crate::intervals::interval_count(n, sig);
            let growth = big_to_f64(&intervals).ln() / (n - 1) as f64;
            let ratio = entropy_ratio(n, sig);
            EntropyPoint {
                n,
                intervals: intervals.to_string(),
                growth,
                ratio: big_to_f64(ratio.numer()) / big_to_f64(ratio.denom()),
            }
        })
        .collect()
}

/// The exact normalized interval count `I_n(Σ_σ) / (n k^{n-1})`.
pub fn entropy_ratio(n: usize, sig: &Signature) -> BigRational {
    let intervals = crate::intervals::interval_count(n, sig);
    BigRational::new(intervals, BigInt::from(n) * pow(sig.k(), n - 1))
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().expect("within f64 range at desk scale")
}

/// Which counting family a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableFamily {
    /// `b(n, k)`: negative-shift pattern counts by minimal alphabet.
    Negative,
    /// `b'(n, k)`: positive-shift pattern counts by minimal alphabet.
    Positive,
    /// `I_n(Σ_{-k})`: allowed-interval counts of the negative shift.
    Intervals,
}

/// A table of exact counts, rows indexed by pattern length `n`, columns by
/// alphabet size `k`. Cells are decimal strings so they serialize exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountTable {
    pub family: TableFamily,
    pub n_range: (usize, usize),
    pub k_range: (usize, usize),
    pub rows: Vec<Vec<String>>,
}

impl CountTable {
    /// Builds the table for `3 ≤ n ≤ n_max`, `2 ≤ k ≤ k_max`.
    pub fn build(family: TableFamily, n_max: usize, k_max: usize) -> CountTable {
        assert!(n_max >= 3 && k_max >= 2);
        let cell = |n: usize, k: usize| match family {
            TableFamily::Negative => b_negative(n, k),
            TableFamily::Positive => b_positive(n, k),
            TableFamily::Intervals => interval_count_closed(n, &Signature::all_minus(k)),
        };
        let rows = (3..=n_max)
            .map(|n| (2..=k_max).map(|k| cell(n, k).to_string()).collect())
            .collect();
        CountTable {
            family,
            n_range: (3, n_max),
            k_range: (2, k_max),
            rows,
        }
    }

    pub fn get(&self, n: usize, k: usize) -> &str {
        &self.rows[n - self.n_range.0][k - self.k_range.0]
    }

    /// CSV with an `n` column followed by one column per `k`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n");
        for k in self.k_range.0..=self.k_range.1 {
            out.push_str(&format!(",k={k}"));
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&(self.n_range.0 + i).to_string());
            for cell in row {
                out.push(',');
                out.push_str(cell);
            }
            out.push('\n');
        }
        out
    }

    /// Row sum; for the `b` families this equals `n!` once `k_max ≥ n - 1`.
    pub fn row_sum(&self, n: usize) -> BigInt {
        self.rows[n - self.n_range.0]
            .iter()
            .map(|c| c.parse::<BigInt>().expect("decimal cell"))
            .sum()
    }
}

/// Direct enumeration of the cornered pairs counted by [`cornered_pairs`].
pub fn cornered_pairs_direct(n: usize, k: usize) -> usize {
    refinement_scan(n, k, |class| class.is_cornered(), false)
}

/// Direct enumeration of the collapsed pairs counted by [`collapsed_pairs`].
pub fn collapsed_pairs_direct(n: usize, k: usize) -> usize {
    refinement_scan(n, k, |class| class == Classification::Collapsed, false)
}

/// Direct enumeration of the refining pairs counted by [`p_count`].
pub fn p_count_direct(n: usize, k: usize) -> usize {
    refinement_scan(n, k, |_| true, true)
}

fn refinement_scan(
    n: usize,
    k: usize,
    class_filter: impl Fn(Classification) -> bool + Sync,
    want_refining: bool,
) -> usize {
    assert!(n >= 3 && k >= 2);
    let sig = Signature::all_minus(k);
    Permutation::all_of_size(n)
        .par_iter()
        .map(|pi| {
            if !class_filter(classify(pi)) {
                return 0;
            }
            let valid = enumerate_segmentations(pi, &sig, true);
            if valid.is_empty() {
                return 0;
            }
            let canon = canonical_segmentation(pi);
            valid
                .iter()
                .filter(|(seg, _)| seg.refines(&canon) == want_refining)
                .count()
        })
        .sum()
}

/// True if the direct collapsed-pair scan at `(n, k)` contains the given
/// permutation with the given valid non-refining segmentation.
pub fn collapsed_scan_contains(n: usize, k: usize, pi: &Permutation, indices: &[usize]) -> bool {
    let sig = Signature::all_minus(k);
    assert_eq!(pi.n(), n);
    if classify(pi) != Classification::Collapsed {
        return false;
    }
    let canon = canonical_segmentation(pi);
    enumerate_segmentations(pi, &sig, true)
        .iter()
        .any(|(seg, _)| seg.indices() == indices && !seg.refines(&canon))
}
