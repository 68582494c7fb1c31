mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{cat, rseq, seq};
use relbunch::seqred::{is_reduced, red, red_concat, reduce_once, Seq};

/// One-step local confluence, exhaustively for every sequence up to length 7.
#[test]
fn one_step_diamond() {
    for s in Seq::all_up_to(7) {
        let next: Vec<Seq> = reduce_once(&s).into_iter().collect();
        for (i, t1) in next.iter().enumerate() {
            let mut from1: BTreeSet<Seq> = reduce_once(t1);
            from1.insert(t1.clone());
            for t2 in &next[i + 1..] {
                let mut from2 = reduce_once(t2);
                from2.insert(t2.clone());
                assert!(from1.intersection(&from2).next().is_some(), "{s}: {t1} and {t2} do not rejoin");
            }
        }
    }
}

proptest! {
    #[test]
    fn red_is_reduced_and_idempotent(s in seq(12)) {
        let r = red(&s);
        prop_assert!(is_reduced(&r.as_seq()));
        prop_assert_eq!(red(&r.as_seq()), r);
    }

    #[test]
    fn reduction_steps_preserve_red(s in seq(10)) {
        for t in reduce_once(&s) {
            prop_assert_eq!(red(&t), red(&s));
        }
    }

    #[test]
    fn concatenation(z in seq(10), w in seq(10)) {
        prop_assert_eq!(red(&cat(z.letters(), w.letters())), red_concat(&red(&z), &red(&w)));
    }

    #[test]
    fn cancellation(x in rseq(6), y in rseq(6), w in rseq(4)) {
        let same = red_concat(&x, &w) == red_concat(&y, &w);
        prop_assert_eq!(same, x == y);
    }

    #[test]
    fn replacement(z1 in seq(6), z2 in seq(6), w in seq(4), y in seq(6)) {
        if red(&cat(z1.letters(), w.letters())) == red(&cat(z2.letters(), w.letters())) {
            prop_assert_eq!(red(&cat(z1.letters(), y.letters())), red(&cat(z2.letters(), y.letters())));
        }
    }
}
