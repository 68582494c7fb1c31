mod common;

use proptest::prelude::*;

use common::{bunch, formula};
use relbunch::annotate::{depth_annotations, hole_info, rseq_annotations, sharing_report, ShareMode};
use relbunch::seqred::{is_reduced, red, Letter, Seq};
use relbunch::syntax::{Bunch, Formula, Node, Path};

// Unreduced words and depths, recomputed from scratch along each path.
fn walk_formula(a: &Formula, path: Path, word: Vec<Letter>, depth: i64, out: &mut Vec<(Path, Vec<Letter>, i64)>) {
    out.push((path.clone(), word.clone(), depth));
    let with = |c: Letter| [vec![c], word.clone()].concat();
    match a {
        Formula::Atom(_) => {}
        Formula::Neg(x) => walk_formula(x, path.child(0), with(Letter::N), depth, out),
        Formula::And(x, y) | Formula::Or(x, y) => {
            walk_formula(x, path.child(0), word.clone(), depth, out);
            walk_formula(y, path.child(1), word.clone(), depth, out);
        }
        Formula::Imp(x, y) => {
            walk_formula(x, path.child(0), with(Letter::L), depth + 1, out);
            walk_formula(y, path.child(1), with(Letter::R), depth + 1, out);
        }
        Formula::Fusion(x, y) => {
            walk_formula(x, path.child(0), with(Letter::Lambda), depth - 1, out);
            walk_formula(y, path.child(1), with(Letter::Rho), depth, out);
        }
    }
}

fn walk_bunch(b: &Bunch, path: Path, word: Vec<Letter>, depth: i64, out: &mut Vec<(Path, Vec<Letter>, i64)>) {
    match b {
        Bunch::Leaf(a) => walk_formula(a, path, word, depth, out),
        Bunch::Comma(x, y) => {
            out.push((path.clone(), word.clone(), depth));
            walk_bunch(x, path.child(0), word.clone(), depth, out);
            walk_bunch(y, path.child(1), word, depth, out);
        }
        Bunch::Semi(x, y) => {
            out.push((path.clone(), word.clone(), depth));
            walk_bunch(x, path.child(0), [vec![Letter::Lambda], word.clone()].concat(), depth - 1, out);
            walk_bunch(y, path.child(1), [vec![Letter::Rho], word].concat(), depth, out);
        }
    }
}

proptest! {
    #[test]
    fn annotations_agree_with_recomputation(b in bunch()) {
        let mut expected = Vec::new();
        walk_bunch(&b, Path::root(), Vec::new(), 0, &mut expected);
        let depths = depth_annotations(Node::Bunch(&b));
        let seqs = rseq_annotations(Node::Bunch(&b));
        prop_assert_eq!(depths.len(), expected.len());
        prop_assert_eq!(seqs.len(), expected.len());
        for ((path, word, depth), (d, s)) in expected.iter().zip(depths.iter().zip(&seqs)) {
            prop_assert_eq!(&d.path, path);
            prop_assert_eq!(&s.path, path);
            prop_assert_eq!(d.annotation, *depth);
            prop_assert!(is_reduced(&s.annotation.as_seq()));
            prop_assert_eq!(&s.annotation, &red(&Seq::new(word.clone())));
        }
    }

    #[test]
    fn hole_info_matches_annotations(b in bunch()) {
        let depths = depth_annotations(Node::Bunch(&b));
        let seqs = rseq_annotations(Node::Bunch(&b));
        for path in b.subbunch_paths() {
            let info = hole_info(&b, &path).unwrap();
            let d = depths.iter().find(|e| e.path == path).unwrap();
            let s = seqs.iter().find(|e| e.path == path).unwrap();
            prop_assert_eq!(info.depth, d.annotation);
            prop_assert_eq!(&info.seq, &s.annotation);
        }
    }

    #[test]
    fn sharing_modes_are_nested(x in bunch(), a in formula()) {
        let plain = sharing_report(&x, &a, ShareMode::Plain);
        let depth = sharing_report(&x, &a, ShareMode::Depth);
        let rseq = sharing_report(&x, &a, ShareMode::Rseq);
        if let Some(w) = &rseq {
            // both occurrences carry the same sequence, hence the same depth
            let left: i64 = relbunch::annotate::annotation_at(Node::Bunch(&x), &w.left).unwrap();
            let right: i64 = relbunch::annotate::annotation_at(Node::Formula(&a), &w.right).unwrap();
            prop_assert_eq!(left, right);
            prop_assert!(depth.is_some());
        }
        if depth.is_some() {
            prop_assert!(plain.is_some());
        }
        let shared = x.vars().intersection(&a.vars()).next().is_some();
        prop_assert_eq!(plain.is_some(), shared);
    }
}
