//! Eventually periodic infinite words and the signature-twisted order.
//!
//! Words live over the alphabet `{0, .., k-1}`. An infinite word is stored as
//! a finite prefix followed by a nonempty period repeated forever, which keeps
//! every operation exact: two such words can be compared letter by letter, and
//! agreement over `|prefix_a| + |prefix_b| + lcm(|period_a|, |period_b|)`
//! letters implies they agree everywhere.
//!
//! The order depends on a [`Signature`]: after scanning a letter whose sign is
//! `-`, the direction of the comparison flips.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::{Error, Result};

/// Slope sign of one branch of a signed shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// A sign sequence `σ ∈ {+,-}^k` with `k ≥ 2`, indexing a signed shift.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    signs: Vec<Sign>,
}

impl Signature {
    pub fn new(signs: Vec<Sign>) -> Result<Self> {
        if signs.len() < 2 {
            return Err(Error::BadSignature(
                format!("{} signs", signs.len()),
                "at least 2 signs are required".into(),
            ));
        }
        if signs.len() > u8::MAX as usize {
            return Err(Error::BadSignature(
                format!("{} signs", signs.len()),
                "alphabet size must fit in u8".into(),
            ));
        }
        Ok(Signature { signs })
    }

    /// The all-positive signature `+^k` (the ordinary `k`-shift).
    pub fn all_plus(k: usize) -> Self {
        Signature::new(vec![Sign::Plus; k]).expect("k >= 2")
    }

    /// The all-negative signature `-^k` (the `-k`-shift).
    pub fn all_minus(k: usize) -> Self {
        Signature::new(vec![Sign::Minus; k]).expect("k >= 2")
    }

    /// Parses a string over `+-`, e.g. `+--+`.
    pub fn parse(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(Error::BadSignature(
                    s.into(),
                    format!("unexpected character `{other}`"),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        Signature::new(signs).map_err(|e| match e {
            Error::BadSignature(_, msg) => Error::BadSignature(s.into(), msg),
            other => other,
        })
    }

    /// Alphabet size `k`.
    pub fn k(&self) -> usize {
        self.signs.len()
    }

    pub fn sign(&self, letter: u8) -> Sign {
        self.signs[letter as usize]
    }

    pub fn is_minus(&self, letter: u8) -> bool {
        self.signs[letter as usize] == Sign::Minus
    }

    pub fn first(&self) -> Sign {
        self.signs[0]
    }

    pub fn last(&self) -> Sign {
        *self.signs.last().unwrap()
    }

    /// The reversed signature `σ^r`, paired with pattern complementation.
    pub fn reversed(&self) -> Signature {
        let mut signs = self.signs.clone();
        signs.reverse();
        Signature { signs }
    }

    /// All `2^k` signatures of length `k`, in lexicographic order with `+ < -`.
    pub fn all_of_length(k: usize) -> Vec<Signature> {
        assert!((2..32).contains(&k));
        (0..1u32 << k)
            .map(|bits| {
                let signs = (0..k)
                    .map(|i| {
                        if bits >> (k - 1 - i) & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect();
                Signature { signs }
            })
            .collect()
    }

    /// True if `self` contains `other` as a (not necessarily consecutive)
    /// subsequence.
    pub fn contains_subsequence(&self, other: &Signature) -> bool {
        let mut it = self.signs.iter();
        other.signs.iter().all(|s| it.any(|t| t == s))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

/// A finite word over `{0, .., k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord {
    letters: Vec<u8>,
    alphabet: u8,
}

impl FiniteWord {
    pub fn new(letters: Vec<u8>, alphabet: u8) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l >= alphabet) {
            return Err(Error::BadWord(
                format!("{letters:?}"),
                format!("letter {bad} outside alphabet of size {alphabet}"),
            ));
        }
        Ok(FiniteWord { letters, alphabet })
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters whose sign under `sig` is `-`.
    pub fn sign_norm(&self, sig: &Signature) -> Result<usize> {
        if self.alphabet as usize > sig.k() {
            return Err(Error::AlphabetMismatch(self.alphabet, sig.k() as u8));
        }
        Ok(self.letters.iter().filter(|&&l| sig.is_minus(l)).count())
    }

    /// True iff the word is not a proper power `a^m` with `m > 1`.
    pub fn is_primitive(&self) -> bool {
        assert!(
            !self.is_empty(),
            "primitivity is undefined for the empty word"
        );
        primitive_root_len(&self.letters) == self.letters.len()
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", letter_char(l))?;
        }
        Ok(())
    }
}

/// Length of the shortest `d` with `w = d^m`; equals `|w|` iff `w` is primitive.
pub(crate) fn primitive_root_len(w: &[u8]) -> usize {
    let n = w.len();
    for d in 1..n {
        if n.is_multiple_of(d) && w.iter().enumerate().all(|(i, &c)| c == w[i % d]) {
            return d;
        }
    }
    n
}

fn letter_char(l: u8) -> char {
    debug_assert!(l < 10, "text form only supports alphabets up to 10 letters");
    (b'0' + l) as char
}

/// An eventually periodic infinite word `u v^∞`: finite prefix `u` (possibly
/// empty) followed by a nonempty period `v` repeated forever.
///
/// Text form is `u(v)` with letters as digits, e.g. `1101(1)`, `(01)`,
/// `10(0)`. Structural equality distinguishes representations; use
/// [`PeriodicWord::canonicalize`] or [`compare`] for semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicWord {
    prefix: Vec<u8>,
    period: Vec<u8>,
    alphabet: u8,
}

impl PeriodicWord {
    pub fn new(prefix: Vec<u8>, period: Vec<u8>, alphabet: u8) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::BadWord(
                format!("{prefix:?}()"),
                "period must be nonempty".into(),
            ));
        }
        if let Some(&bad) = prefix.iter().chain(&period).find(|&&l| l >= alphabet) {
            return Err(Error::BadWord(
                format!("{prefix:?}({period:?})"),
                format!("letter {bad} outside alphabet of size {alphabet}"),
            ));
        }
        Ok(PeriodicWord {
            prefix,
            period,
            alphabet,
        })
    }

    /// The purely periodic word `v^∞`.
    pub fn purely_periodic(period: Vec<u8>, alphabet: u8) -> Result<Self> {
        PeriodicWord::new(Vec::new(), period, alphabet)
    }

    /// Parses the `u(v)` text form, validating letters against `alphabet`.
    pub fn parse(s: &str, alphabet: u8) -> Result<Self> {
        let err = |msg: &str| Error::BadWord(s.into(), msg.into());
        let open = s.find('(').ok_or_else(|| err("missing `(`"))?;
        if !s.ends_with(')') {
            return Err(err("missing trailing `)`"));
        }
        let digits = |part: &str| -> Result<Vec<u8>> {
            part.chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) => Ok(d as u8),
                    None => Err(err(&format!("unexpected character `{c}`"))),
                })
                .collect()
        };
        let prefix = digits(&s[..open])?;
        let period = digits(&s[open + 1..s.len() - 1])?;
        if period.is_empty() {
            return Err(err("period must be nonempty"));
        }
        PeriodicWord::new(prefix, period, alphabet)
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    /// Letter at 0-based position `i`.
    pub fn letter(&self, i: usize) -> u8 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// Drops the first letter; rotates the period if the prefix is empty.
    pub fn shift(&self) -> PeriodicWord {
        if self.prefix.is_empty() {
            let mut period = self.period.clone();
            period.rotate_left(1);
            PeriodicWord {
                prefix: Vec::new(),
                period,
                alphabet: self.alphabet,
            }
        } else {
            PeriodicWord {
                prefix: self.prefix[1..].to_vec(),
                period: self.period.clone(),
                alphabet: self.alphabet,
            }
        }
    }

    /// Prepends finite letters, keeping the same tail.
    pub fn prepend(&self, letters: &[u8]) -> PeriodicWord {
        let mut prefix = letters.to_vec();
        prefix.extend_from_slice(&self.prefix);
        PeriodicWord {
            prefix,
            period: self.period.clone(),
            alphabet: self.alphabet,
        }
    }

    /// The unique normal form: primitive period and shortest possible prefix.
    ///
    /// Two words denote the same infinite sequence iff their canonical forms
    /// are structurally equal, which makes canonical words usable as set and
    /// map keys for interval endpoints and witnesses.
    pub fn canonicalize(&self) -> PeriodicWord {
        let root = primitive_root_len(&self.period);
        let mut period = self.period[..root].to_vec();
        let mut prefix = self.prefix.clone();
        // u'c (v'c)^∞ = u' (cv')^∞: absorb the last prefix letter into a
        // rotated period until the prefix can no longer shrink.
        while prefix.last() == period.last() && !prefix.is_empty() {
            prefix.pop();
            period.rotate_right(1);
        }
        PeriodicWord {
            prefix,
            period,
            alphabet: self.alphabet,
        }
    }

    pub fn is_canonical(&self) -> bool {
        primitive_root_len(&self.period) == self.period.len()
            && (self.prefix.is_empty() || self.prefix.last() != self.period.last())
    }
}

impl fmt::Display for PeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.prefix {
            write!(f, "{}", letter_char(l))?;
        }
        f.write_str("(")?;
        for &l in &self.period {
            write!(f, "{}", letter_char(l))?;
        }
        f.write_str(")")
    }
}

/// Compares two words in the signature-twisted order.
///
/// Letters are scanned from the front; each letter with negative sign flips
/// the direction of the eventual comparison. If the words agree over
/// `|prefix_w| + |prefix_v| + lcm(|period_w|, |period_v|)` letters they agree
/// forever, so `Equal` is decided exactly.
pub fn compare(w: &PeriodicWord, v: &PeriodicWord, sig: &Signature) -> Result<Ordering> {
    if w.alphabet != v.alphabet {
        return Err(Error::AlphabetMismatch(w.alphabet, v.alphabet));
    }
    if w.alphabet as usize > sig.k() {
        return Err(Error::AlphabetMismatch(w.alphabet, sig.k() as u8));
    }
    Ok(compare_unchecked(w, v, sig))
}

pub(crate) fn compare_unchecked(w: &PeriodicWord, v: &PeriodicWord, sig: &Signature) -> Ordering {
    let bound = w.prefix.len() + v.prefix.len() + w.period.len().lcm(&v.period.len());
    let mut flip = false;
    for i in 0..bound {
        let a = w.letter(i);
        let b = v.letter(i);
        if a != b {
            let ord = a.cmp(&b);
            return if flip { ord.reverse() } else { ord };
        }
        if sig.is_minus(a) {
            flip = !flip;
        }
    }
    Ordering::Equal
}

/// The smallest and largest words `(ω_σ, Ω_σ)` of the twisted order.
pub fn extremal_words(sig: &Signature) -> (PeriodicWord, PeriodicWord) {
    let k = sig.k() as u8;
    let top = k - 1;
    let omega_min = match (sig.first(), sig.last()) {
        (Sign::Plus, _) => PeriodicWord::new(vec![], vec![0], k),
        (Sign::Minus, Sign::Plus) => PeriodicWord::new(vec![0], vec![top], k),
        (Sign::Minus, Sign::Minus) => PeriodicWord::new(vec![], vec![0, top], k),
    };
    let omega_max = match (sig.last(), sig.first()) {
        (Sign::Plus, _) => PeriodicWord::new(vec![], vec![top], k),
        (Sign::Minus, Sign::Plus) => PeriodicWord::new(vec![top], vec![0], k),
        (Sign::Minus, Sign::Minus) => PeriodicWord::new(vec![], vec![top, 0], k),
    };
    (omega_min.unwrap(), omega_max.unwrap())
}
