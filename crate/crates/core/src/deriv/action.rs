//! The depth and rseq substitution actions on proof trees.

use crate::annotate::annotation_at;
use crate::seqred::{Letter, RSeq, ShiftSpec};
use crate::subst::{DepthSubstitution, RseqSubstitution, Substitution};
use crate::syntax::{Consecution, Node, Path};

use super::rules::match_rule;
use super::{CheckOptions, DerivError, ProofTree, RuleName, TreePath};

fn subst_consecution<A: crate::annotate::Annotation, S: Substitution<A>>(s: &S, ann: &A, c: &Consecution) -> Consecution {
    Consecution::new(s.apply_bunch(ann, &c.antecedent), s.apply_formula(ann, &c.succedent))
}

// Arity, rule membership and hole resolution shared by both actions.
fn resolve(rule: RuleName, premises: &[ProofTree], conclusion: &Consecution, hint: Option<&Path>, path: &TreePath) -> Result<Option<Path>, DerivError> {
    if rule.is_r_only() {
        return Err(DerivError::UnsupportedRule {
            path: path.clone(),
            rule,
        });
    }
    if premises.len() != rule.premise_count() {
        return Err(DerivError::Arity {
            path: path.clone(),
            rule,
            expected: rule.premise_count(),
            found: premises.len(),
        });
    }
    if !rule.has_context() {
        return Ok(None);
    }
    let prem: Vec<&Consecution> = premises.iter().map(ProofTree::conclusion).collect();
    let opts = CheckOptions {
        structural_bidirectional: true,
        ..CheckOptions::default()
    };
    match_rule(rule, &prem, conclusion, hint, &opts).map_err(|_| DerivError::UnresolvableHole {
        path: path.clone(),
        rule,
    })
}

/// Depth offsets of each premise relative to the conclusion's depth `n`.
pub fn premise_depth_offsets(rule: RuleName, conclusion: &Consecution, hole: Option<&Path>) -> Vec<i64> {
    use RuleName::*;
    let hole_depth = || {
        let h = hole.expect("context rules carry a resolved hole");
        annotation_at::<i64>(Node::Bunch(&conclusion.antecedent), h).expect("resolved hole is a valid path")
    };
    match rule {
        ImpI => vec![1],
        ImpE | FusI => vec![-1, 0],
        OrE => vec![hole_depth(), 0, 0],
        AndE | FusE | Cut => vec![hole_depth(), 0],
        _ => vec![0; rule.premise_count()],
    }
}

/// Shifts applied to the substitution for each premise.
pub fn premise_rseq_shifts(rule: RuleName, conclusion: &Consecution, hole: Option<&Path>) -> Vec<ShiftSpec> {
    use RuleName::*;
    let plain = ShiftSpec::default;
    let one = |w: Option<Letter>, y: Option<Letter>| ShiftSpec::new(vec![(w, y)]);
    let to_hole = || {
        let h = hole.expect("context rules carry a resolved hole");
        let x: RSeq = annotation_at(Node::Bunch(&conclusion.antecedent), h).expect("resolved hole is a valid path");
        ShiftSpec::from_empty_to(&x)
    };
    match rule {
        ImpI => vec![one(Some(Letter::Lambda), None)],
        ImpE | FusI => vec![one(None, Some(Letter::Lambda)), one(None, Some(Letter::Rho))],
        OrE => vec![to_hole(), plain(), plain()],
        AndE | FusE | Cut => vec![to_hole(), plain()],
        NegI => vec![plain(), one(Some(Letter::N), None)],
        _ => vec![plain(); rule.premise_count()],
    }
}

/// `d^n` on a B-derivation: each premise moves to the depth its rule assigns.
pub fn apply_depth_to_tree(d: &DepthSubstitution, n: i64, t: &ProofTree) -> Result<ProofTree, DerivError> {
    fn go(d: &DepthSubstitution, n: i64, t: &ProofTree, path: TreePath) -> Result<ProofTree, DerivError> {
        match t {
            ProofTree::Leaf(c) => Ok(ProofTree::Leaf(subst_consecution(d, &n, c))),
            ProofTree::Node {
                rule,
                premises,
                conclusion,
                hole,
            } => {
                let hole = resolve(*rule, premises, conclusion, hole.as_ref(), &path)?;
                let offsets = premise_depth_offsets(*rule, conclusion, hole.as_ref());
                let premises = premises
                    .iter()
                    .zip(offsets)
                    .enumerate()
                    .map(|(i, (p, k))| go(d, n + k, p, path.child(i)))
                    .collect::<Result<_, _>>()?;
                Ok(ProofTree::Node {
                    rule: *rule,
                    premises,
                    conclusion: subst_consecution(d, &n, conclusion),
                    hole,
                })
            }
        }
    }
    go(d, n, t, TreePath::default())
}

/// `σ^x̄` on a B-derivation: every premise is evaluated at the same `x̄`
/// under the shifted substitution its rule assigns.
pub fn apply_rseq_to_tree(s: &RseqSubstitution, x: &RSeq, t: &ProofTree) -> Result<ProofTree, DerivError> {
    fn go(s: &RseqSubstitution, x: &RSeq, t: &ProofTree, path: TreePath) -> Result<ProofTree, DerivError> {
        match t {
            ProofTree::Leaf(c) => Ok(ProofTree::Leaf(subst_consecution(s, x, c))),
            ProofTree::Node {
                rule,
                premises,
                conclusion,
                hole,
            } => {
                let hole = resolve(*rule, premises, conclusion, hole.as_ref(), &path)?;
                let shifts = premise_rseq_shifts(*rule, conclusion, hole.as_ref());
                let premises = premises
                    .iter()
                    .zip(shifts)
                    .enumerate()
                    .map(|(i, (p, spec))| go(&s.shift_composite(&spec), x, p, path.child(i)))
                    .collect::<Result<_, _>>()?;
                Ok(ProofTree::Node {
                    rule: *rule,
                    premises,
                    conclusion: subst_consecution(s, x, conclusion),
                    hole,
                })
            }
        }
    }
    go(s, x, t, TreePath::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deriv::{check, System};
    use crate::syntax::{parse_consecution, parse_formula, Atom, Formula};
    use std::collections::BTreeMap;

    fn c(text: &str) -> Consecution {
        parse_consecution(text).unwrap()
    }

    fn f(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    fn modus_ponens(a: &str, b: &str) -> ProofTree {
        let imp = f(&format!("{a} -> {b}"));
        ProofTree::node(
            RuleName::ImpE,
            vec![ProofTree::id(imp.clone()), ProofTree::id(f(a))],
            Consecution::new(
                crate::syntax::Bunch::semi(imp.into(), f(a).into()),
                f(b),
            ),
        )
    }

    #[test]
    fn depth_action_on_modus_ponens() {
        let t = modus_ponens("p", "q");
        let mut d = DepthSubstitution::identity();
        d.insert(0, Atom::named("p"), f("s"));
        let image = apply_depth_to_tree(&d, 0, &t).unwrap();
        assert_eq!(image.conclusion(), &c("(s -> q) ; s |- q"));
        assert_eq!(image.premises()[0].conclusion(), &c("s -> q |- s -> q"));
        assert_eq!(image.premises()[1].conclusion(), &c("s |- s"));
        assert!(check(&image, System::B).valid);

        let empty = DepthSubstitution::identity();
        assert_eq!(apply_depth_to_tree(&empty, 5, &t).unwrap(), t);
    }

    #[test]
    fn rseq_action_on_modus_ponens() {
        let t = modus_ponens("p", "p");
        let table = BTreeMap::from([
            ((RSeq::empty(), Atom::named("p")), f("q")),
            (("P".parse().unwrap(), Atom::named("p")), f("p")),
        ]);
        let s = RseqSubstitution::from_table(table);
        let image = apply_rseq_to_tree(&s, &RSeq::empty(), &t).unwrap();
        assert_eq!(image.conclusion(), &c("(p -> q) ; p |- q"));
        assert_eq!(image.premises()[0].conclusion(), &c("p -> q |- p -> q"));
        assert!(check(&image, System::B).valid);
    }

    #[test]
    fn rseq_action_can_fail_off_the_empty_sequence() {
        let t = modus_ponens("p", "p");
        let table = BTreeMap::from([
            (("lP".parse().unwrap(), Atom::named("p")), f("a")),
            (("Pl".parse().unwrap(), Atom::named("p")), f("b")),
        ]);
        let s = RseqSubstitution::from_table(table);
        let image = apply_rseq_to_tree(&s, &"l".parse().unwrap(), &t).unwrap();
        let report = check(&image, System::B);
        assert!(!report.valid);
        assert_eq!(report.failures[0].path, TreePath::default());
    }

    #[test]
    fn r_only_rules_are_rejected() {
        let t = ProofTree::node(
            RuleName::SC,
            vec![ProofTree::Leaf(c("A ; B |- C"))],
            c("B ; A |- C"),
        );
        let d = DepthSubstitution::identity();
        assert!(matches!(
            apply_depth_to_tree(&d, 0, &t),
            Err(DerivError::UnsupportedRule { .. })
        ));
    }

    #[test]
    fn unresolvable_hole() {
        let t = ProofTree::node(
            RuleName::Cut,
            vec![ProofTree::Leaf(c("A |- B")), ProofTree::Leaf(c("C |- D"))],
            c("A |- D"),
        );
        let d = DepthSubstitution::identity();
        assert!(matches!(
            apply_depth_to_tree(&d, 0, &t),
            Err(DerivError::UnresolvableHole { .. })
        ));
    }
}
