//! Characteristic formulas of bunches and the fusion-free translation `τ`.

use crate::syntax::{Bunch, Formula};

/// Comma becomes `∧`, semicolon becomes `∘`.
pub fn cf(b: &Bunch) -> Formula {
    match b {
        Bunch::Leaf(a) => a.clone(),
        Bunch::Comma(x, y) => Formula::and(cf(x), cf(y)),
        Bunch::Semi(x, y) => Formula::fusion(cf(x), cf(y)),
    }
}

/// `τ(A∘B) = ¬(τA → ¬τB)`, homomorphic on every other connective.
pub fn tau(a: &Formula) -> Formula {
    match a {
        Formula::Atom(_) => a.clone(),
        Formula::Neg(x) => Formula::neg(tau(x)),
        Formula::And(x, y) => Formula::and(tau(x), tau(y)),
        Formula::Or(x, y) => Formula::or(tau(x), tau(y)),
        Formula::Imp(x, y) => Formula::imp(tau(x), tau(y)),
        Formula::Fusion(x, y) => Formula::neg(Formula::imp(tau(x), Formula::neg(tau(y)))),
    }
}

pub fn tau_bunch(b: &Bunch) -> Formula {
    tau(&cf(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_bunch, parse_formula};

    fn f(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    fn b(text: &str) -> Bunch {
        parse_bunch(text).unwrap()
    }

    #[test]
    fn characteristic_formula() {
        assert_eq!(cf(&b("A, B")), f("A & B"));
        assert_eq!(cf(&b("A ; B")), f("A * B"));
        assert_eq!(cf(&b("A")), f("A"));
        assert_eq!(cf(&b("A ; (B, C)")), f("A * (B & C)"));
    }

    #[test]
    fn translation() {
        assert_eq!(tau(&f("A * B")), f("~(A -> ~B)"));
        assert_eq!(tau(&f("p")), f("p"));
        assert_eq!(tau_bunch(&b("p ; q")), f("~(p -> ~q)"));
        assert_eq!(tau(&f("~(A * B) | C")), f("~~(A -> ~B) | C"));
        let plain = f("(p1 -> ~p2) & (p3 | p1)");
        assert_eq!(tau(&plain), plain);
    }
}
