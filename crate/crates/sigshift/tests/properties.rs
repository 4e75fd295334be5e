//! Property tests for the word order and pattern extraction.

use std::cmp::Ordering;

use proptest::prelude::*;

use sigshift::patterns::{pat, Permutation};
use sigshift::words::{compare, extremal_words, PeriodicWord, Signature};

#[derive(Debug, Clone)]
struct Scene {
    sig: Signature,
    words: Vec<PeriodicWord>,
}

fn word_strategy(k: u8) -> impl Strategy<Value = PeriodicWord> {
    (
        prop::collection::vec(0..k, 0..6),
        prop::collection::vec(0..k, 1..6),
    )
        .prop_map(move |(prefix, period)| PeriodicWord::new(prefix, period, k).unwrap())
}

fn scene_strategy(words: usize) -> impl Strategy<Value = Scene> {
    (2usize..=3)
        .prop_flat_map(move |k| {
            (
                prop::sample::select(Signature::all_of_length(k)),
                prop::collection::vec(word_strategy(k as u8), words),
            )
        })
        .prop_map(|(sig, words)| Scene { sig, words })
}

/// Reference comparator scanning ten times the proven agreement bound.
fn compare_long(a: &PeriodicWord, b: &PeriodicWord, sig: &Signature) -> Ordering {
    let bound = 10 * (a.prefix().len() + b.prefix().len() + a.period().len() * b.period().len());
    let mut flip = false;
    for i in 0..bound.max(8) {
        let (x, y) = (a.letter(i), b.letter(i));
        if x != y {
            let ord = x.cmp(&y);
            return if flip { ord.reverse() } else { ord };
        }
        if sig.is_minus(x) {
            flip = !flip;
        }
    }
    Ordering::Equal
}

proptest! {
    #[test]
    fn comparison_agrees_with_long_scan(scene in scene_strategy(2)) {
        let [a, b] = &scene.words[..] else { unreachable!() };
        prop_assert_eq!(
            compare(a, b, &scene.sig).unwrap(),
            compare_long(a, b, &scene.sig)
        );
    }

    #[test]
    fn comparison_is_antisymmetric_and_transitive(scene in scene_strategy(3)) {
        let [a, b, c] = &scene.words[..] else { unreachable!() };
        let sig = &scene.sig;
        let ab = compare(a, b, sig).unwrap();
        prop_assert_eq!(ab, compare(b, a, sig).unwrap().reverse());
        if ab == Ordering::Less && compare(b, c, sig).unwrap() == Ordering::Less {
            prop_assert_eq!(compare(a, c, sig).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn sign_flip_law(scene in scene_strategy(2)) {
        let [a, b] = &scene.words[..] else { unreachable!() };
        let sig = &scene.sig;
        if a.letter(0) == b.letter(0) {
            let whole = compare(a, b, sig).unwrap();
            let tails = compare(&a.shift(), &b.shift(), sig).unwrap();
            if sig.is_minus(a.letter(0)) {
                prop_assert_eq!(whole, tails.reverse());
            } else {
                prop_assert_eq!(whole, tails);
            }
        }
    }

    #[test]
    fn extremal_words_bound_everything(scene in scene_strategy(1)) {
        let w = &scene.words[0];
        let sig = &scene.sig;
        let (lo, hi) = extremal_words(sig);
        prop_assert_ne!(compare(&lo, w, sig).unwrap(), Ordering::Greater);
        prop_assert_ne!(compare(w, &hi, sig).unwrap(), Ordering::Greater);
    }

    #[test]
    fn canonical_form_is_a_complete_invariant(scene in scene_strategy(2)) {
        let [a, b] = &scene.words[..] else { unreachable!() };
        let lex = Signature::all_plus(a.alphabet() as usize);
        let equal_words = compare(a, b, &lex).unwrap() == Ordering::Equal;
        prop_assert_eq!(a.canonicalize() == b.canonicalize(), equal_words);
        // Canonicalization never changes the word, under any signature.
        prop_assert_eq!(
            compare(a, &a.canonicalize(), &scene.sig).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn pat_is_shift_consistent(scene in scene_strategy(1), n in 2usize..=6) {
        let w = &scene.words[0];
        let sig = &scene.sig;
        if let Some(full) = pat(w, sig, n).unwrap() {
            let tail = pat(&w.shift(), sig, n - 1).unwrap().expect("suffix stays defined");
            let expected: Vec<usize> = (2..=n).map(|i| full.at(i)).collect();
            prop_assert_eq!(tail, Permutation::standardize(&expected));
        }
    }

    #[test]
    fn shift_drops_exactly_one_letter(scene in scene_strategy(1)) {
        let w = &scene.words[0];
        let shifted = w.shift();
        for i in 0..24 {
            prop_assert_eq!(shifted.letter(i), w.letter(i + 1));
        }
    }
}
