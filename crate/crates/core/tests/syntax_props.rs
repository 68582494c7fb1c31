mod common;

use proptest::prelude::*;

use common::{bunch, formula};
use relbunch::syntax::{
    parse_bunch, parse_consecution, parse_formula, replace_at, subterm_at, Bunch, Consecution, Node,
};

proptest! {
    #[test]
    fn formulas_roundtrip(a in formula()) {
        prop_assert_eq!(parse_formula(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn bunches_roundtrip(b in bunch()) {
        let text = b.to_string();
        let back = parse_bunch(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, b);
    }

    #[test]
    fn consecutions_roundtrip(x in bunch(), a in formula()) {
        let c = Consecution::new(x, a);
        prop_assert_eq!(parse_consecution(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn replacing_a_subbunch_by_itself(b in bunch()) {
        for path in b.subbunch_paths() {
            let here = match subterm_at(&b, &path).unwrap() {
                Node::Bunch(x) => x.clone(),
                Node::Formula(a) => Bunch::leaf(a.clone()),
            };
            prop_assert_eq!(replace_at(&b, &path, here).unwrap(), b.clone());
        }
    }

    #[test]
    fn structural_vars_are_unions(x in bunch(), y in bunch()) {
        let union: std::collections::BTreeSet<_> = x.vars().union(&y.vars()).cloned().collect();
        prop_assert_eq!(Bunch::comma(x.clone(), y.clone()).vars(), union.clone());
        prop_assert_eq!(Bunch::semi(x, y).vars(), union);
    }
}
