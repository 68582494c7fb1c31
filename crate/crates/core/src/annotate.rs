//! Depth- and rseq-annotated parsing trees, hole information for contexts,
//! and the three variable-sharing relations.

use std::fmt;

use crate::seqred::{Letter, RSeq};
use crate::syntax::{Atom, Bunch, Formula, Node, NodeKind, Path, PathError};

/// A label propagated from a node to its children. Depths and reduced
/// sequences are the two instances; substitutions are keyed by them too.
pub trait Annotation: Clone + Ord + fmt::Display + Send + Sync {
    fn root() -> Self;

    /// The annotation of child `index` of a node of `kind` annotated `self`.
    fn step(&self, kind: NodeKind, index: u8) -> Self;
}

impl Annotation for i64 {
    fn root() -> Self {
        0
    }

    fn step(&self, kind: NodeKind, index: u8) -> Self {
        match (kind, index) {
            (NodeKind::Semi | NodeKind::Fusion, 0) => self - 1,
            (NodeKind::Imp, _) => self + 1,
            _ => *self,
        }
    }
}

impl Annotation for RSeq {
    fn root() -> Self {
        RSeq::empty()
    }

    fn step(&self, kind: NodeKind, index: u8) -> Self {
        match (kind, index) {
            (NodeKind::Semi | NodeKind::Fusion, 0) => self.prepend(Letter::Lambda),
            (NodeKind::Semi | NodeKind::Fusion, _) => self.prepend(Letter::Rho),
            (NodeKind::Imp, 0) => self.prepend(Letter::L),
            (NodeKind::Imp, _) => self.prepend(Letter::R),
            (NodeKind::Neg, _) => self.prepend(Letter::N),
            _ => self.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry<'a, A> {
    pub path: Path,
    pub node: Node<'a>,
    pub annotation: A,
}

/// One entry per parse-tree node, in preorder, starting from `root_ann`.
pub fn annotations_from<'a, A: Annotation>(root: Node<'a>, root_ann: A) -> Vec<Entry<'a, A>> {
    fn go<'a, A: Annotation>(node: Node<'a>, path: Path, ann: A, out: &mut Vec<Entry<'a, A>>) {
        let kind = node.kind();
        let children = node.children();
        out.push(Entry {
            path: path.clone(),
            node,
            annotation: ann.clone(),
        });
        for (i, child) in children.into_iter().enumerate() {
            let i = i as u8;
            go(child, path.child(i), ann.step(kind, i), out);
        }
    }
    let mut out = Vec::new();
    go(root, Path::root(), root_ann, &mut out);
    out
}

pub type DepthAnnotation<'a> = Vec<Entry<'a, i64>>;
pub type RseqAnnotation<'a> = Vec<Entry<'a, RSeq>>;

pub fn depth_annotations(root: Node<'_>) -> DepthAnnotation<'_> {
    annotations_from(root, 0)
}

pub fn rseq_annotations(root: Node<'_>) -> RseqAnnotation<'_> {
    annotations_from(root, RSeq::empty())
}

/// `(atom, annotation, path)` for every atom occurrence.
pub fn atom_occurrences<A: Annotation>(root: Node<'_>) -> Vec<(Atom, A, Path)> {
    annotations_from(root, A::root())
        .into_iter()
        .filter_map(|e| match e.node.as_formula() {
            Some(Formula::Atom(p)) => Some((p.clone(), e.annotation, e.path)),
            _ => None,
        })
        .collect()
}

/// The annotation of the node at `path`, computed along the path only.
pub fn annotation_at<A: Annotation>(root: Node<'_>, path: &Path) -> Result<A, PathError> {
    let mut node = root;
    let mut ann = A::root();
    for (i, &step) in path.steps().iter().enumerate() {
        let kind = node.kind();
        node = node.child(step).ok_or_else(|| PathError::NoSuchChild {
            path: path.clone(),
            step: i,
        })?;
        ann = ann.step(kind, step);
    }
    Ok(ann)
}

/// Depth `c` and sequence `x̄` of a highlighted subbunch occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleInfo {
    pub path: Path,
    pub depth: i64,
    pub seq: RSeq,
}

pub fn hole_info(b: &Bunch, path: &Path) -> Result<HoleInfo, PathError> {
    if b.subbunch(path).is_none() {
        return Err(PathError::NotSubbunch(path.clone()));
    }
    Ok(HoleInfo {
        path: path.clone(),
        depth: annotation_at(Node::Bunch(b), path)?,
        seq: annotation_at(Node::Bunch(b), path)?,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShareMode {
    Plain,
    Depth,
    Rseq,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SharedAt {
    Anywhere,
    Depth(i64),
    Seq(RSeq),
}

/// A shared atom, with one occurrence on each side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub atom: Atom,
    pub at: SharedAt,
    pub left: Path,
    pub right: Path,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.at {
            SharedAt::Anywhere => write!(f, "{}", self.atom),
            SharedAt::Depth(n) => write!(f, "{} @ {n}", self.atom),
            SharedAt::Seq(x) => write!(f, "{} @ {x}", self.atom),
        }
    }
}

/// The least witness by (atom, left path) that `x` and `a` share a variable
/// in the given mode, if any.
pub fn sharing_report(x: &Bunch, a: &Formula, mode: ShareMode) -> Option<Witness> {
    match mode {
        ShareMode::Plain => {
            let left = atom_occurrences::<i64>(Node::Bunch(x));
            let right = atom_occurrences::<i64>(Node::Formula(a));
            first_witness(left, right, |_, _| true, |_| SharedAt::Anywhere)
        }
        ShareMode::Depth => {
            let left = atom_occurrences::<i64>(Node::Bunch(x));
            let right = atom_occurrences::<i64>(Node::Formula(a));
            first_witness(left, right, |m, n| m == n, |n| SharedAt::Depth(*n))
        }
        ShareMode::Rseq => {
            let left = atom_occurrences::<RSeq>(Node::Bunch(x));
            let right = atom_occurrences::<RSeq>(Node::Formula(a));
            first_witness(left, right, |u, v| u == v, |u| SharedAt::Seq(u.clone()))
        }
    }
}

fn first_witness<A>(
    left: Vec<(Atom, A, Path)>,
    right: Vec<(Atom, A, Path)>,
    agree: impl Fn(&A, &A) -> bool,
    label: impl Fn(&A) -> SharedAt,
) -> Option<Witness> {
    left.iter()
        .filter_map(|(p, u, lpath)| {
            right
                .iter()
                .find(|(q, v, _)| p == q && agree(u, v))
                .map(|(_, _, rpath)| Witness {
                    atom: p.clone(),
                    at: label(u),
                    left: lpath.clone(),
                    right: rpath.clone(),
                })
        })
        .min_by(|a, b| (&a.atom, &a.left).cmp(&(&b.atom, &b.left)))
}
