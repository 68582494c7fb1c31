mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::Rng;

use relbunch::deriv::{
    apply_depth_to_tree, apply_rseq_to_tree, check, extract_derived_rule, parse_tree, render_tree, CheckOptions,
    ProofTree, RuleName, System,
};
use relbunch::harness::{gen_depth_substitution, gen_derivation, gen_rseq_substitution, tree_bunches, GenConfig, SubstKind};
use relbunch::seqred::{red, Letter, RSeq, Seq};
use relbunch::subst::{DepthSubstitution, RseqSubstitution, Substitution};
use relbunch::syntax::{Bunch, Consecution, Path};

fn cfg(system: System, seed: u64) -> GenConfig {
    GenConfig {
        system,
        ..GenConfig::default()
    }
    .with_seed(seed)
}

// Hole depth and sequence, recomputed by walking the antecedent.
fn hole_depth(b: &Bunch, h: &Path) -> i64 {
    let mut depth = 0;
    let mut cur = b;
    for &step in h.steps() {
        cur = match (cur, step) {
            (Bunch::Semi(x, _), 0) => {
                depth -= 1;
                x
            }
            (Bunch::Semi(_, y), _) | (Bunch::Comma(_, y), 1) => y,
            (Bunch::Comma(x, _), _) => x,
            (Bunch::Leaf(_), _) => panic!("hole path runs into a formula"),
        };
    }
    depth
}

fn hole_seq(b: &Bunch, h: &Path) -> RSeq {
    let mut word = Vec::new();
    let mut cur = b;
    for &step in h.steps() {
        cur = match (cur, step) {
            (Bunch::Semi(x, _), 0) => {
                word.insert(0, Letter::Lambda);
                x
            }
            (Bunch::Semi(_, y), _) => {
                word.insert(0, Letter::Rho);
                y
            }
            (Bunch::Comma(x, y), s) => if s == 0 { x } else { y },
            (Bunch::Leaf(_), _) => panic!("hole path runs into a formula"),
        };
    }
    red(&Seq::new(word))
}

fn hole_of(t: &ProofTree) -> Option<&Path> {
    match t {
        ProofTree::Node { hole, .. } => hole.as_ref(),
        ProofTree::Leaf(_) => None,
    }
}

/// The depth each open leaf of `orig` is evaluated at, reading resolved holes
/// from `image`.
fn leaf_depths(orig: &ProofTree, image: &ProofTree, n: i64, out: &mut Vec<i64>) {
    use RuleName::*;
    let Some(rule) = orig.rule() else {
        out.push(n);
        return;
    };
    let c = || hole_depth(&orig.conclusion().antecedent, hole_of(image).expect("hole recorded"));
    let offsets = match rule {
        ImpI => vec![1],
        ImpE | FusI => vec![-1, 0],
        OrE => vec![c(), 0, 0],
        AndE | FusE | Cut => vec![c(), 0],
        _ => vec![0; orig.premises().len()],
    };
    for ((p, q), k) in orig.premises().iter().zip(image.premises()).zip(offsets) {
        leaf_depths(p, q, n + k, out);
    }
}

/// The substitution each open leaf of `orig` sees.
fn leaf_substs(orig: &ProofTree, image: &ProofTree, s: &RseqSubstitution, out: &mut Vec<RseqSubstitution>) {
    use RuleName::*;
    let Some(rule) = orig.rule() else {
        out.push(s.clone());
        return;
    };
    let one = |w: Option<Letter>, y: Option<Letter>| {
        let r = |c: Option<Letter>| c.map_or_else(RSeq::empty, RSeq::single);
        s.shift(r(w), r(y))
    };
    let to_hole = || {
        let x = hole_seq(&orig.conclusion().antecedent, hole_of(image).expect("hole recorded"));
        s.shift(RSeq::empty(), x)
    };
    let subs = match rule {
        ImpI => vec![one(Some(Letter::Lambda), None)],
        ImpE | FusI => vec![one(None, Some(Letter::Lambda)), one(None, Some(Letter::Rho))],
        OrE => vec![to_hole(), s.clone(), s.clone()],
        AndE | FusE | Cut => vec![to_hole(), s.clone()],
        NegI => vec![s.clone(), one(Some(Letter::N), None)],
        _ => vec![s.clone(); orig.premises().len()],
    };
    for ((p, q), sub) in orig.premises().iter().zip(image.premises()).zip(subs) {
        leaf_substs(p, q, &sub, out);
    }
}

// Replaces random non-root subderivations by open leaves.
fn prune<R: Rng>(rng: &mut R, t: &ProofTree, is_root: bool) -> ProofTree {
    match t {
        ProofTree::Node { .. } if !is_root && rng.gen_bool(0.3) => ProofTree::Leaf(t.conclusion().clone()),
        ProofTree::Node {
            rule,
            premises,
            conclusion,
            hole,
        } => ProofTree::Node {
            rule: *rule,
            premises: premises.iter().map(|p| prune(rng, p, false)).collect(),
            conclusion: conclusion.clone(),
            hole: hole.clone(),
        },
        leaf => leaf.clone(),
    }
}

fn image_of<A: relbunch::annotate::Annotation>(s: &impl Substitution<A>, at: &A, c: &Consecution) -> Consecution {
    Consecution::new(s.apply_bunch(at, &c.antecedent), s.apply_formula(at, &c.succedent))
}

#[test]
fn generated_derivations_check() {
    for system in [System::B, System::R] {
        for seed in 0..200 {
            let t = gen_derivation(&cfg(system, seed));
            let report = check(&t, system);
            assert!(report.valid, "{system} seed {seed}: {report}");
            assert!(report.open_leaves.is_empty());
            assert!(t.rule_count() <= GenConfig::default().max_rule_nodes);
        }
    }
}

#[test]
fn generator_covers_every_rule() {
    let opts = CheckOptions::default();
    for system in [System::B, System::R] {
        let mut seen = BTreeSet::new();
        for seed in 0..1000 {
            let t = gen_derivation(&cfg(system, seed));
            relbunch::deriv::rule_nodes(&t).iter().for_each(|(_, n)| {
                seen.insert(n.rule().unwrap());
            });
        }
        let missing: Vec<_> = RuleName::rules_of(system, &opts).into_iter().filter(|r| !seen.contains(r)).collect();
        assert!(missing.is_empty(), "{system}: never generated {missing:?}");
    }
}

#[test]
fn generation_is_deterministic() {
    for seed in 0..100 {
        let a = render_tree(&gen_derivation(&cfg(System::R, seed)));
        let b = render_tree(&gen_derivation(&cfg(System::R, seed)));
        assert_eq!(a, b);
        assert_eq!(render_tree(&parse_tree(&a).unwrap()), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn depth_action_keeps_derivations_valid(seed in 0u64..5000, n in -3i64..=3) {
        let c = cfg(System::B, seed);
        let t = gen_derivation(&c);
        let d = gen_depth_substitution(&mut common::rng(seed), &c, SubstKind::Random, &tree_bunches(&t));
        let image = apply_depth_to_tree(&d, n, &t).unwrap();
        prop_assert!(check(&image, System::B).valid);
        prop_assert_eq!(image.conclusion(), &image_of(&d, &n, t.conclusion()));
    }

    #[test]
    fn rseq_action_at_empty_keeps_derivations_valid(seed in 0u64..5000) {
        let c = cfg(System::B, seed);
        let t = gen_derivation(&c);
        let s = gen_rseq_substitution(&mut common::rng(seed), &c, SubstKind::Random, &tree_bunches(&t));
        let image = apply_rseq_to_tree(&s, &RSeq::empty(), &t).unwrap();
        prop_assert!(check(&image, System::B).valid);
        prop_assert_eq!(image.conclusion(), &image_of(&s, &RSeq::empty(), t.conclusion()));
    }

    #[test]
    fn derived_rules_close_under_depth_action(seed in 0u64..5000, n in -3i64..=3) {
        let c = cfg(System::B, seed);
        let mut rng = common::rng(seed);
        let t = prune(&mut rng, &gen_derivation(&c), true);
        let opts = CheckOptions::default();
        let rule = extract_derived_rule(&t, System::B, &opts).unwrap();
        let d: DepthSubstitution = gen_depth_substitution(&mut rng, &c, SubstKind::Random, &tree_bunches(&t));
        let image = apply_depth_to_tree(&d, n, &t).unwrap();
        let moved = extract_derived_rule(&image, System::B, &opts).unwrap();
        let mut depths = Vec::new();
        leaf_depths(&t, &image, n, &mut depths);
        let expected: Vec<_> = rule.premises.iter().zip(&depths).map(|(p, k)| image_of(&d, k, p)).collect();
        prop_assert_eq!(moved.premises, expected);
        prop_assert_eq!(moved.conclusion, image_of(&d, &n, &rule.conclusion));
    }

    #[test]
    fn derived_rules_close_under_rseq_action(seed in 0u64..5000) {
        let c = cfg(System::B, seed);
        let mut rng = common::rng(seed);
        let t = prune(&mut rng, &gen_derivation(&c), true);
        let opts = CheckOptions::default();
        let rule = extract_derived_rule(&t, System::B, &opts).unwrap();
        let s = gen_rseq_substitution(&mut rng, &c, SubstKind::Random, &tree_bunches(&t));
        let eps = RSeq::empty();
        let image = apply_rseq_to_tree(&s, &eps, &t).unwrap();
        let moved = extract_derived_rule(&image, System::B, &opts).unwrap();
        let mut subs = Vec::new();
        leaf_substs(&t, &image, &s, &mut subs);
        let expected: Vec<_> = rule.premises.iter().zip(&subs).map(|(p, sub)| image_of(sub, &eps, p)).collect();
        prop_assert_eq!(moved.premises, expected);
        prop_assert_eq!(moved.conclusion, image_of(&s, &eps, &rule.conclusion));
    }
}
