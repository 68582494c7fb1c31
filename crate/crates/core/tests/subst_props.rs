mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::{bunch, cat, formula, rseq};
use relbunch::annotate::{annotation_at, annotations_from};
use relbunch::seqred::{red, red_concat, RSeq};
use relbunch::subst::{solve_bounded, solve_prefix, DepthSubstitution, RseqSubstitution, Substitution};
use relbunch::syntax::{replace_at, Atom, Bunch, Formula, Node};

fn depth_sub() -> impl Strategy<Value = DepthSubstitution> {
    prop::collection::btree_map((-5i64..=5, (1u32..=4).prop_map(Atom::p)), formula(), 0..10)
        .prop_map(DepthSubstitution::from_table)
}

// Keys are drawn from the occurrences of `b` read from each root in `roots`,
// so that the lookups under test actually hit the table.
fn keyed_on(b: &Bunch, roots: &[RSeq], images: &[Formula]) -> RseqSubstitution {
    let mut table = BTreeMap::new();
    let mut images = images.iter().cycle();
    for root in roots {
        for e in annotations_from(Node::Bunch(b), root.clone()) {
            if let Some(Formula::Atom(p)) = e.node.as_formula() {
                table.insert((e.annotation, p.clone()), images.next().unwrap().clone());
            }
        }
    }
    RseqSubstitution::from_table(table)
}

proptest! {
    #[test]
    fn empty_tables_are_identities(b in bunch(), n in -4i64..=4, x in rseq(5)) {
        prop_assert_eq!(DepthSubstitution::identity().apply_bunch(&n, &b), b.clone());
        prop_assert_eq!(RseqSubstitution::identity().apply_bunch(&x, &b), b);
    }

    #[test]
    fn depth_shift_law(d in depth_sub(), b in bunch(), x in -4i64..=4, n in -4i64..=4) {
        prop_assert_eq!(d.shift(x).apply_bunch(&n, &b), d.apply_bunch(&(n + x), &b));
    }

    #[test]
    fn rseq_shift_law(
        b in bunch(),
        z in rseq(4),
        w in rseq(3),
        y in rseq(3),
        images in prop::collection::vec(formula(), 1..6),
    ) {
        let x = red_concat(&z, &w);
        let target = red_concat(&z, &y);
        let s = keyed_on(&b, &[target.clone(), x.clone()], &images);
        prop_assert_eq!(s.shift(w, y).apply_bunch(&x, &b), s.apply_bunch(&target, &b));
    }

    #[test]
    fn depth_hole_law(d in depth_sub(), y in bunch(), x in bunch(), pick in any::<prop::sample::Index>(), n in -3i64..=3) {
        let paths = y.subbunch_paths();
        let h = pick.get(&paths);
        let c: i64 = annotation_at(Node::Bunch(&y), h).unwrap();
        let yx = replace_at(&y, h, x.clone()).unwrap();
        let image = d.apply_bunch(&n, &yx);
        prop_assert_eq!(image.subbunch(h).unwrap(), &d.apply_bunch(&(n + c), &x));
    }

    #[test]
    fn rseq_hole_law(
        y in bunch(),
        x in bunch(),
        pick in any::<prop::sample::Index>(),
        w in rseq(4),
        images in prop::collection::vec(formula(), 1..6),
    ) {
        let paths = y.subbunch_paths();
        let h = pick.get(&paths);
        let xbar: RSeq = annotation_at(Node::Bunch(&y), h).unwrap();
        let inner = red_concat(&xbar, &w);
        let s = keyed_on(&x, std::slice::from_ref(&inner), &images);
        let yx = replace_at(&y, h, x.clone()).unwrap();
        let image = s.apply_bunch(&w, &yx);
        prop_assert_eq!(image.subbunch(h).unwrap(), &s.apply_bunch(&inner, &x));
    }

    #[test]
    fn solver_agrees_with_enumeration(x in rseq(3), w in rseq(2)) {
        let all = solve_bounded(&x, &w);
        for z in &all {
            prop_assert_eq!(red(&cat(z.letters(), w.letters())), x.clone());
        }
        match solve_prefix(&x, &w) {
            Some(z) => {
                prop_assert_eq!(red_concat(&z, &w), x);
                prop_assert!(all.contains(&z.as_seq()));
            }
            None => prop_assert!(all.is_empty()),
        }
    }

    #[test]
    fn enumerated_solutions_agree(
        x in rseq(2),
        w in rseq(2),
        y in rseq(2),
        images in prop::collection::vec(formula(), 1..4),
    ) {
        let p = Atom::p(1);
        let all = solve_bounded(&x, &w);
        let mut table = BTreeMap::new();
        let mut images = images.iter().cycle();
        for z in &all {
            table.insert((red(&cat(z.letters(), y.letters())), p.clone()), images.next().unwrap().clone());
        }
        let s = RseqSubstitution::from_table(table);
        let values: std::collections::BTreeSet<_> =
            all.iter().map(|z| s.lookup(&red(&cat(z.letters(), y.letters())), &p)).collect();
        prop_assert!(values.len() <= 1);
        if let Some(v) = values.into_iter().next() {
            prop_assert_eq!(s.shift(w, y).lookup(&x, &p), v);
        }
    }
}
