//! Proof trees for the natural deduction systems B and R: rule checking,
//! derived rules, and the depth and rseq substitution actions on trees.

mod action;
mod check;
mod rules;
mod sexpr;

use std::fmt;

use thiserror::Error;

use crate::syntax::{Consecution, Path};

pub use action::{apply_depth_to_tree, apply_rseq_to_tree, premise_depth_offsets, premise_rseq_shifts};
pub use check::{check, check_with, extract_derived_rule, open_leaves, rule_nodes};
pub use rules::{match_rule, same_context};
pub use sexpr::{parse_tree, render_tree, SexprError};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum RuleName {
    Id,
    ImpI,
    ImpE,
    OrI1,
    OrI2,
    OrE,
    AndI,
    AndE,
    FusI,
    FusE,
    NegI,
    NegE,
    Cut,
    EB,
    EC,
    EW,
    EK,
    NegI2,
    SB,
    SC,
    SW,
}

impl RuleName {
    pub const ALL: [RuleName; 21] = [
        RuleName::Id,
        RuleName::ImpI,
        RuleName::ImpE,
        RuleName::OrI1,
        RuleName::OrI2,
        RuleName::OrE,
        RuleName::AndI,
        RuleName::AndE,
        RuleName::FusI,
        RuleName::FusE,
        RuleName::NegI,
        RuleName::NegE,
        RuleName::Cut,
        RuleName::EB,
        RuleName::EC,
        RuleName::EW,
        RuleName::EK,
        RuleName::NegI2,
        RuleName::SB,
        RuleName::SC,
        RuleName::SW,
    ];

    /// Total number of consecutions in the rule, conclusion included.
    pub fn arity(self) -> usize {
        use RuleName::*;
        match self {
            Id => 1,
            ImpI | OrI1 | OrI2 | NegE | EB | EC | EW | EK | SB | SC | SW => 2,
            ImpE | AndI | FusI | NegI | AndE | FusE | Cut | NegI2 => 3,
            OrE => 4,
        }
    }

    pub fn premise_count(self) -> usize {
        self.arity() - 1
    }

    pub fn name(self) -> &'static str {
        use RuleName::*;
        match self {
            Id => "id",
            ImpI => "impI",
            ImpE => "impE",
            OrI1 => "orI1",
            OrI2 => "orI2",
            OrE => "orE",
            AndI => "andI",
            AndE => "andE",
            FusI => "fusI",
            FusE => "fusE",
            NegI => "negI",
            NegE => "negE",
            Cut => "cut",
            EB => "eB",
            EC => "eC",
            EW => "eW",
            EK => "eK",
            NegI2 => "negI2",
            SB => "sB",
            SC => "sC",
            SW => "sW",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleName> {
        RuleName::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Rules whose conclusion has the form `Y(X) ⊩ C` with a highlighted hole.
    pub fn has_context(self) -> bool {
        use RuleName::*;
        matches!(self, OrE | AndE | FusE | Cut) || self.is_structural()
    }

    pub fn is_structural(self) -> bool {
        use RuleName::*;
        matches!(self, EB | EC | EW | EK | SB | SC | SW)
    }

    /// Rules that only R has.
    pub fn is_r_only(self) -> bool {
        use RuleName::*;
        matches!(self, NegI2 | SB | SC | SW)
    }

    pub fn in_system(self, system: System, opts: &CheckOptions) -> bool {
        match system {
            System::B => !self.is_r_only(),
            System::R => !(opts.r_without_negi && self == RuleName::NegI),
        }
    }

    pub fn rules_of(system: System, opts: &CheckOptions) -> Vec<RuleName> {
        RuleName::ALL
            .into_iter()
            .filter(|r| r.in_system(system, opts))
            .collect()
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for RuleName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleName::from_name(s).ok_or_else(|| format!("unknown rule {s:?}"))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum System {
    #[default]
    B,
    R,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::B => "B",
            System::R => "R",
        })
    }
}

impl std::str::FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B" | "b" => Ok(System::B),
            "R" | "r" => Ok(System::R),
            _ => Err(format!("unknown system {s:?} (expected B or R)")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct CheckOptions {
    /// Also accept structural rules read from conclusion back to premise.
    pub structural_bidirectional: bool,
    /// Drop B's negation introduction from R, keeping only `negI2`.
    pub r_without_negi: bool,
}

/// A derivation or pseudoderivation. Every tree is rooted at a consecution;
/// `Leaf` is a consecution with no rule above it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ProofTree {
    Leaf(Consecution),
    Node {
        rule: RuleName,
        premises: Vec<ProofTree>,
        conclusion: Consecution,
        hole: Option<Path>,
    },
}

impl ProofTree {
    /// `(id) A ⊩ A`.
    pub fn id(a: crate::syntax::Formula) -> ProofTree {
        ProofTree::Node {
            rule: RuleName::Id,
            premises: Vec::new(),
            conclusion: Consecution::identity(a),
            hole: None,
        }
    }

    pub fn node(rule: RuleName, premises: Vec<ProofTree>, conclusion: Consecution) -> ProofTree {
        ProofTree::Node {
            rule,
            premises,
            conclusion,
            hole: None,
        }
    }

    pub fn with_hole(self, path: Path) -> ProofTree {
        match self {
            ProofTree::Node {
                rule,
                premises,
                conclusion,
                ..
            } => ProofTree::Node {
                rule,
                premises,
                conclusion,
                hole: Some(path),
            },
            leaf => leaf,
        }
    }

    pub fn conclusion(&self) -> &Consecution {
        match self {
            ProofTree::Leaf(c) => c,
            ProofTree::Node { conclusion, .. } => conclusion,
        }
    }

    pub fn rule(&self) -> Option<RuleName> {
        match self {
            ProofTree::Leaf(_) => None,
            ProofTree::Node { rule, .. } => Some(*rule),
        }
    }

    pub fn premises(&self) -> &[ProofTree] {
        match self {
            ProofTree::Leaf(_) => &[],
            ProofTree::Node { premises, .. } => premises,
        }
    }

    pub fn rule_count(&self) -> usize {
        match self {
            ProofTree::Leaf(_) => 0,
            ProofTree::Node { premises, .. } => {
                1 + premises.iter().map(ProofTree::rule_count).sum::<usize>()
            }
        }
    }
}

impl fmt::Display for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_tree(self))
    }
}

/// Premise indices from the root down to a node.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TreePath(pub Vec<usize>);

impl TreePath {
    pub fn child(&self, i: usize) -> TreePath {
        let mut steps = self.0.clone();
        steps.push(i);
        TreePath(steps)
    }
}

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(".");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FailureKind {
    /// Wrong number of premises for the rule.
    Malformed,
    /// The rule is not part of the chosen system.
    NotInSystem,
    /// The node does not instantiate the rule schema.
    Instance,
    /// The tree has no rule node at all.
    NoRuleNode,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureKind::Malformed => "malformed",
            FailureKind::NotInSystem => "not in system",
            FailureKind::Instance => "not an instance",
            FailureKind::NoRuleNode => "no rule node",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Failure {
    pub path: TreePath,
    pub kind: FailureKind,
    pub reason: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}: {}", self.path, self.kind, self.reason)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckReport {
    pub valid: bool,
    pub failures: Vec<Failure>,
    pub open_leaves: Vec<Consecution>,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.valid { "valid" } else { "invalid" })?;
        for failure in &self.failures {
            writeln!(f, "  {failure}")?;
        }
        if !self.open_leaves.is_empty() {
            writeln!(f, "open leaves:")?;
            for leaf in &self.open_leaves {
                writeln!(f, "  {leaf}")?;
            }
        }
        Ok(())
    }
}

/// A pair of open leaves and root, witnessing a derivable rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivedRule {
    pub premises: Vec<Consecution>,
    pub conclusion: Consecution,
}

impl fmt::Display for DerivedRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let premises: Vec<String> = self.premises.iter().map(|c| c.to_string()).collect();
        write!(f, "<{{{}}} | {}>", premises.join("; "), self.conclusion)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivError {
    #[error("derivation is invalid: {0}")]
    Invalid(String),
    #[error("at {path}: no hole makes the {rule} instance match")]
    UnresolvableHole { path: TreePath, rule: RuleName },
    #[error("at {path}: rule {rule} is outside B, so the action is undefined")]
    UnsupportedRule { path: TreePath, rule: RuleName },
    #[error("at {path}: {rule} needs {expected} premises, found {found}")]
    Arity {
        path: TreePath,
        rule: RuleName,
        expected: usize,
        found: usize,
    },
}
