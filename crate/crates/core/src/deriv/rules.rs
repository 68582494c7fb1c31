//! Matching a single rule node against its schema.

use crate::syntax::{Bunch, Consecution, Formula, Path};

use super::{CheckOptions, RuleName};

fn sub<'a>(b: &'a Bunch, steps: &[u8]) -> Option<&'a Bunch> {
    match steps.split_first() {
        None => Some(b),
        Some((&s, rest)) => match b {
            Bunch::Leaf(_) => None,
            Bunch::Comma(x, y) | Bunch::Semi(x, y) => sub(if s == 0 { x } else { y }, rest),
        },
    }
}

/// True when `a` and `b` agree everywhere except possibly below `path`, and
/// `path` is a subbunch position in both.
pub fn same_context(a: &Bunch, b: &Bunch, path: &[u8]) -> bool {
    let Some((&s, rest)) = path.split_first() else {
        return true;
    };
    let (ax, ay, bx, by) = match (a, b) {
        (Bunch::Comma(ax, ay), Bunch::Comma(bx, by)) | (Bunch::Semi(ax, ay), Bunch::Semi(bx, by)) => {
            (ax, ay, bx, by)
        }
        _ => return false,
    };
    if s == 0 {
        ay == by && same_context(ax, bx, rest)
    } else {
        ax == bx && same_context(ay, by, rest)
    }
}

fn is_leaf_of(b: &Bunch, a: &Formula) -> bool {
    b.as_formula() == Some(a)
}

fn pair_of_leaves(b: &Bunch, a: &Formula, c: &Formula, semi: bool) -> bool {
    match (b, semi) {
        (Bunch::Comma(x, y), false) | (Bunch::Semi(x, y), true) => is_leaf_of(x, a) && is_leaf_of(y, c),
        _ => false,
    }
}

fn split(b: &Bunch, semi: bool) -> Option<(&Bunch, &Bunch)> {
    match (b, semi) {
        (Bunch::Comma(x, y), false) | (Bunch::Semi(x, y), true) => Some((x, y)),
        _ => None,
    }
}

// `p` is the premise-side occurrence, `q` the conclusion-side one.
fn structural_ok(rule: RuleName, p: &Bunch, q: &Bunch) -> bool {
    use RuleName::*;
    let semi = matches!(rule, SB | SC | SW);
    match rule {
        EB | SB => {
            // X,(Y,Z) ⇜ (X,Y),Z
            let Some((x, yz)) = split(p, semi) else { return false };
            let Some((y, z)) = split(yz, semi) else { return false };
            let Some((xy, z2)) = split(q, semi) else { return false };
            let Some((x2, y2)) = split(xy, semi) else { return false };
            x == x2 && y == y2 && z == z2
        }
        EC | SC => {
            let (Some((x, y)), Some((y2, x2))) = (split(p, semi), split(q, semi)) else {
                return false;
            };
            x == x2 && y == y2
        }
        EW | SW => split(p, semi).is_some_and(|(x, x2)| x == x2 && x == q),
        EK => split(q, false).is_some_and(|(x, _)| x == p),
        _ => false,
    }
}

fn context_fits(rule: RuleName, prem: &[&Consecution], concl: &Consecution, h: &Path, opts: &CheckOptions) -> bool {
    use RuleName::*;
    let steps = h.steps();
    let Some(filled) = sub(&concl.antecedent, steps) else {
        return false;
    };
    let side = |p: &Consecution| {
        p.succedent == concl.succedent && same_context(&p.antecedent, &concl.antecedent, steps)
    };
    fn at<'c>(p: &'c Consecution, steps: &[u8]) -> Option<&'c Bunch> {
        sub(&p.antecedent, steps)
    }
    match rule {
        OrE => {
            let Formula::Or(a, b) = &prem[0].succedent else { return false };
            prem[0].antecedent == *filled
                && side(prem[1])
                && side(prem[2])
                && at(prem[1], steps).is_some_and(|y| is_leaf_of(y, a))
                && at(prem[2], steps).is_some_and(|y| is_leaf_of(y, b))
        }
        AndE | FusE => {
            let (a, b) = match (&prem[0].succedent, rule) {
                (Formula::And(a, b), AndE) | (Formula::Fusion(a, b), FusE) => (a, b),
                _ => return false,
            };
            prem[0].antecedent == *filled
                && side(prem[1])
                && at(prem[1], steps).is_some_and(|y| pair_of_leaves(y, a, b, rule == FusE))
        }
        Cut => {
            prem[0].antecedent == *filled
                && side(prem[1])
                && at(prem[1], steps).is_some_and(|y| is_leaf_of(y, &prem[0].succedent))
        }
        _ if rule.is_structural() => {
            side(prem[0])
                && at(prem[0], steps).is_some_and(|p| {
                    structural_ok(rule, p, filled)
                        || (opts.structural_bidirectional && structural_ok(rule, filled, p))
                })
        }
        _ => false,
    }
}

fn simple_rule(rule: RuleName, prem: &[&Consecution], concl: &Consecution) -> Result<(), String> {
    use RuleName::*;
    let ant = &concl.antecedent;
    let succ = &concl.succedent;
    let fail = |shape: &str| Err(format!("expected {shape}"));
    match rule {
        Id => {
            if is_leaf_of(ant, succ) {
                Ok(())
            } else {
                fail("A |- A")
            }
        }
        ImpI => {
            let Formula::Imp(a, b) = succ else {
                return fail("conclusion X |- A -> B");
            };
            match &prem[0].antecedent {
                Bunch::Semi(x, l) if **x == *ant && is_leaf_of(l, a) && prem[0].succedent == **b => Ok(()),
                _ => fail("premise X ; A |- B for conclusion X |- A -> B"),
            }
        }
        ImpE => {
            let Bunch::Semi(x, y) = ant else {
                return fail("conclusion X ; Y |- B");
            };
            let ok = matches!(&prem[0].succedent, Formula::Imp(a, b) if **a == prem[1].succedent && **b == *succ)
                && prem[0].antecedent == **x
                && prem[1].antecedent == **y;
            if ok {
                Ok(())
            } else {
                fail("premises X |- A -> B and Y |- A for conclusion X ; Y |- B")
            }
        }
        OrI1 | OrI2 => {
            let Formula::Or(a, b) = succ else {
                return fail("conclusion X |- A | B");
            };
            let picked = if rule == OrI1 { a } else { b };
            if prem[0].antecedent == *ant && prem[0].succedent == **picked {
                Ok(())
            } else {
                fail("premise X |- disjunct with the same antecedent")
            }
        }
        AndI | FusI => {
            let parts = match (ant, succ, rule) {
                (Bunch::Comma(x, y), Formula::And(a, b), AndI) | (Bunch::Semi(x, y), Formula::Fusion(a, b), FusI) => {
                    Some((x, y, a, b))
                }
                _ => None,
            };
            match parts {
                Some((x, y, a, b))
                    if prem[0].antecedent == **x
                        && prem[0].succedent == **a
                        && prem[1].antecedent == **y
                        && prem[1].succedent == **b =>
                {
                    Ok(())
                }
                _ if rule == AndI => fail("premises X |- A, Y |- B for conclusion X, Y |- A & B"),
                _ => fail("premises X |- A, Y |- B for conclusion X ; Y |- A * B"),
            }
        }
        NegI => {
            let Formula::Neg(a) = succ else {
                return fail("conclusion X |- ~A");
            };
            let ok = prem[0].antecedent == *ant
                && is_leaf_of(&prem[1].antecedent, a)
                && matches!(&prem[1].succedent, Formula::Neg(b) if **b == prem[0].succedent);
            if ok {
                Ok(())
            } else {
                fail("premises X |- B and A |- ~B for conclusion X |- ~A")
            }
        }
        NegE => match &prem[0].succedent {
            Formula::Neg(inner) if prem[0].antecedent == *ant && matches!(&**inner, Formula::Neg(a) if **a == *succ) => {
                Ok(())
            }
            _ => fail("premise X |- ~~A for conclusion X |- A"),
        },
        NegI2 => {
            let (Bunch::Semi(x, y), Formula::Neg(a)) = (ant, succ) else {
                return fail("conclusion X ; Y |- ~A");
            };
            let ok = matches!(&prem[0].antecedent, Bunch::Semi(x2, l) if x2 == x && is_leaf_of(l, a))
                && matches!(&prem[0].succedent, Formula::Neg(b) if **b == prem[1].succedent)
                && prem[1].antecedent == **y;
            if ok {
                Ok(())
            } else {
                fail("premises X ; A |- ~B and Y |- B for conclusion X ; Y |- ~A")
            }
        }
        _ => unreachable!("context rules are matched separately"),
    }
}

/// Checks that `concl` follows from `prem` by one application of `rule`.
/// For rules with a context, returns the hole that made it match: `hint`
/// first, then every subbunch position of the conclusion antecedent in
/// preorder (leftmost-outermost). The caller guarantees the premise count.
pub fn match_rule(
    rule: RuleName,
    prem: &[&Consecution],
    concl: &Consecution,
    hint: Option<&Path>,
    opts: &CheckOptions,
) -> Result<Option<Path>, String> {
    debug_assert_eq!(prem.len(), rule.premise_count());
    if !rule.has_context() {
        return simple_rule(rule, prem, concl).map(|()| None);
    }
    if let Some(h) = hint {
        if context_fits(rule, prem, concl, h, opts) {
            return Ok(Some(h.clone()));
        }
    }
    concl
        .antecedent
        .subbunch_paths()
        .into_iter()
        .find(|h| Some(h) != hint && context_fits(rule, prem, concl, h, opts))
        .map(Some)
        .ok_or_else(|| match hint {
            Some(h) => format!("no hole matches the {rule} schema (hint {h} also fails)"),
            None => format!("no hole matches the {rule} schema"),
        })
}
