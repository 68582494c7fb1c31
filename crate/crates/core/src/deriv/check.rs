//! Whole-tree checking, open leaves and derived rules.

use crate::syntax::Consecution;

use super::rules::match_rule;
use super::{CheckOptions, CheckReport, DerivError, DerivedRule, Failure, FailureKind, ProofTree, System, TreePath};

pub fn check(t: &ProofTree, system: System) -> CheckReport {
    check_with(t, system, &CheckOptions::default())
}

/// Checks every rule node bottom-up and collects all failures.
pub fn check_with(t: &ProofTree, system: System, opts: &CheckOptions) -> CheckReport {
    fn go(t: &ProofTree, path: TreePath, system: System, opts: &CheckOptions, out: &mut Vec<Failure>) {
        let ProofTree::Node {
            rule,
            premises,
            conclusion,
            hole,
        } = t
        else {
            return;
        };
        for (i, p) in premises.iter().enumerate() {
            go(p, path.child(i), system, opts, out);
        }
        if premises.len() != rule.premise_count() {
            out.push(Failure {
                path,
                kind: FailureKind::Malformed,
                reason: format!(
                    "{rule} needs {} premises, found {}",
                    rule.premise_count(),
                    premises.len()
                ),
            });
            return;
        }
        if !rule.in_system(system, opts) {
            out.push(Failure {
                path,
                kind: FailureKind::NotInSystem,
                reason: format!("{rule} is not a rule of {system}"),
            });
            return;
        }
        let prem: Vec<&Consecution> = premises.iter().map(ProofTree::conclusion).collect();
        if let Err(reason) = match_rule(*rule, &prem, conclusion, hole.as_ref(), opts) {
            out.push(Failure {
                path,
                kind: FailureKind::Instance,
                reason,
            });
        }
    }

    let mut failures = Vec::new();
    if t.rule_count() == 0 {
        failures.push(Failure {
            path: TreePath::default(),
            kind: FailureKind::NoRuleNode,
            reason: "a derivation needs at least one rule node".into(),
        });
    } else {
        go(t, TreePath::default(), system, opts, &mut failures);
    }
    CheckReport {
        valid: failures.is_empty(),
        failures,
        open_leaves: open_leaves(t),
    }
}

/// Leaves not justified by (id), left to right.
pub fn open_leaves(t: &ProofTree) -> Vec<Consecution> {
    fn go(t: &ProofTree, out: &mut Vec<Consecution>) {
        match t {
            ProofTree::Leaf(c) => out.push(c.clone()),
            ProofTree::Node { premises, .. } => premises.iter().for_each(|p| go(p, out)),
        }
    }
    let mut out = Vec::new();
    go(t, &mut out);
    out
}

pub fn extract_derived_rule(t: &ProofTree, system: System, opts: &CheckOptions) -> Result<DerivedRule, DerivError> {
    let report = check_with(t, system, opts);
    if !report.valid {
        let reasons: Vec<String> = report.failures.iter().map(|f| f.to_string()).collect();
        return Err(DerivError::Invalid(reasons.join("; ")));
    }
    Ok(DerivedRule {
        premises: report.open_leaves,
        conclusion: t.conclusion().clone(),
    })
}

/// Every rule node with its tree path, in preorder.
pub fn rule_nodes(t: &ProofTree) -> Vec<(TreePath, &ProofTree)> {
    fn go<'a>(t: &'a ProofTree, path: TreePath, out: &mut Vec<(TreePath, &'a ProofTree)>) {
        if let ProofTree::Node { premises, .. } = t {
            out.push((path.clone(), t));
            for (i, p) in premises.iter().enumerate() {
                go(p, path.child(i), out);
            }
        }
    }
    let mut out = Vec::new();
    go(t, TreePath::default(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deriv::RuleName;
    use crate::syntax::{parse_consecution, parse_formula};

    fn c(text: &str) -> Consecution {
        parse_consecution(text).unwrap()
    }

    fn fus_tree(rule: RuleName) -> ProofTree {
        ProofTree::node(
            rule,
            vec![ProofTree::Leaf(c("A |- B")), ProofTree::Leaf(c("C |- D"))],
            c("A ; C |- B * D"),
        )
    }

    #[test]
    fn fusion_example_and_mislabelled_variant() {
        let report = check(&fus_tree(RuleName::FusI), System::B);
        assert!(report.valid);
        assert_eq!(report.open_leaves, vec![c("A |- B"), c("C |- D")]);

        let report = check(&fus_tree(RuleName::OrE), System::B);
        assert!(!report.valid);
        assert_eq!(report.failures[0].kind, FailureKind::Malformed);

        let report = check(&fus_tree(RuleName::AndI), System::B);
        assert_eq!(report.failures[0].kind, FailureKind::Instance);
        assert_eq!(report.failures[0].path, TreePath::default());
    }

    #[test]
    fn bare_consecution_has_no_rule_node() {
        let report = check(&ProofTree::Leaf(c("A |- A | B")), System::B);
        assert!(!report.valid);
        assert_eq!(report.failures[0].kind, FailureKind::NoRuleNode);
    }

    #[test]
    fn identity_and_closed_proofs() {
        let id = ProofTree::id(parse_formula("A").unwrap());
        assert!(check(&id, System::B).valid);

        let t = ProofTree::node(RuleName::OrI1, vec![id], c("A |- A | B"));
        let rule = extract_derived_rule(&t, System::B, &CheckOptions::default()).unwrap();
        assert!(rule.premises.is_empty());
        assert_eq!(rule.conclusion, c("A |- A | B"));
    }

    #[test]
    fn reports_every_failing_node() {
        let bad_leaf = ProofTree::node(RuleName::Id, vec![], c("A |- B"));
        let t = ProofTree::node(
            RuleName::FusI,
            vec![bad_leaf.clone(), bad_leaf],
            c("A ; A |- C"),
        );
        let report = check(&t, System::B);
        let paths: Vec<String> = report.failures.iter().map(|f| f.path.to_string()).collect();
        assert_eq!(paths, vec!["0", "1", "."]);
    }

    #[test]
    fn r_only_rules_rejected_in_b() {
        let t = ProofTree::node(
            RuleName::SC,
            vec![ProofTree::Leaf(c("A ; B |- C"))],
            c("B ; A |- C"),
        );
        assert_eq!(check(&t, System::B).failures[0].kind, FailureKind::NotInSystem);
        assert!(check(&t, System::R).valid);
    }
}
