#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relbunch::seqred::{red, Letter, RSeq, Seq};
use relbunch::syntax::{Atom, Bunch, Formula};

pub fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        4 => (1u32..=5).prop_map(Atom::p),
        1 => prop::sample::select(vec!["A", "B", "C", "q"]).prop_map(Atom::named),
    ]
}

pub fn formula() -> impl Strategy<Value = Formula> {
    atom().prop_map(Formula::atom).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::fusion(a, b)),
        ]
    })
}

pub fn bunch() -> impl Strategy<Value = Bunch> {
    formula().prop_map(Bunch::leaf).prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Bunch::comma(x, y)),
            (inner.clone(), inner).prop_map(|(x, y)| Bunch::semi(x, y)),
        ]
    })
}

pub fn letter() -> impl Strategy<Value = Letter> {
    prop::sample::select(Letter::ALL.to_vec())
}

pub fn seq(max_len: usize) -> impl Strategy<Value = Seq> {
    prop::collection::vec(letter(), 0..=max_len).prop_map(Seq::new)
}

pub fn rseq(max_len: usize) -> impl Strategy<Value = RSeq> {
    seq(max_len).prop_map(|s| red(&s))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cat(a: &[Letter], b: &[Letter]) -> Seq {
    Seq::new([a, b].concat())
}
