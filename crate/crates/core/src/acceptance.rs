//! The acceptance suite. Each criterion runs at its full stated scale and
//! reports pass or fail with a short detail line. Used by the `acceptance`
//! test target and by `relbunch selftest`.
//!
//! Reference values come from oracles that avoid the code under test where
//! possible: normal forms from exhaustive or random-order rewriting rather
//! than the stack reducer, shift solutions from brute-force enumeration.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::annotate::{annotation_at, annotations_from, sharing_report, ShareMode};
use crate::deriv::{
    apply_depth_to_tree, apply_rseq_to_tree, check, check_with, parse_tree, render_tree, CheckOptions, ProofTree,
    System,
};
use crate::exec::Exec;
use crate::harness::{
    find_strong_rseq_counterexample, gen_bunch, gen_depth_substitution, gen_derivation, gen_formula, gen_rseq,
    gen_rseq_substitution, gen_seq, tree_bunches, GenConfig, SubstKind,
};
use crate::seqred::{oracle_red_all_orders, red, red_concat, reduce_once, Letter, RSeq, Seq};
use crate::subst::{solve_bounded, solve_prefix, DepthSubstitution, RseqSubstitution, Substitution};
use crate::syntax::{
    parse_bunch, parse_consecution, parse_formula, replace_at, subterm_at, Atom, Bunch, Consecution, Formula, Node,
    Path,
};
use crate::translate::{cf, tau, tau_bunch};

pub const CORPUS_SIZE: u64 = 1_000;
pub const SUBSTITUTIONS_PER_TREE: u64 = 20;
pub const RANDOM_INSTANCES: u64 = 10_000;

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "confluence, all sequences up to length 7"),
    (2, "cancellation, reduced x, y <= 4 and w <= 3"),
    (3, "concatenation and replacement corollaries"),
    (4, "strong depth invariance of B derivations"),
    (5, "weak rseq invariance at the empty sequence"),
    (6, "strong rseq invariance fails (->E witness)"),
    (7, "plain, depth and rseq sharing on closed proofs"),
    (8, "shift laws, hole laws, well-definedness"),
    (9, "worked examples and fixture derivations"),
    (10, "translation: variables, fusion-free, identity"),
    (11, "parser roundtrip and generator determinism"),
];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {:<48} {:>8.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub fn run(id: u8, exec: Exec) -> Outcome {
    let title = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, t)| *t)
        .unwrap_or("unknown criterion");
    let start = Instant::now();
    let result = match id {
        1 => confluence(exec),
        2 => cancellation(exec),
        3 => corollaries(exec),
        4 => depth_invariance(exec),
        5 => rseq_invariance(exec),
        6 => strong_rseq_failure(),
        7 => sharing(exec),
        8 => shift_and_hole_laws(exec),
        9 => fixtures(),
        10 => translation(exec),
        11 => roundtrip_and_determinism(exec),
        _ => Err(format!("no criterion {id}")),
    };
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    Outcome {
        id,
        title,
        passed,
        detail,
        elapsed,
    }
}

pub fn run_all(exec: Exec) -> Vec<Outcome> {
    CRITERIA.iter().map(|(id, _)| run(*id, exec)).collect()
}

// Turns per-case failures into a verdict line.
fn verdict(cases: usize, failures: Vec<String>) -> Result<String, String> {
    if failures.is_empty() {
        Ok(format!("{cases} cases, 0 failures"))
    } else {
        Err(format!(
            "{} of {cases} cases failed; first: {}",
            failures.len(),
            failures[0]
        ))
    }
}

fn within(limit: Duration, start: Instant, ok: Result<String, String>) -> Result<String, String> {
    let took = start.elapsed();
    match ok {
        Ok(detail) if took > limit => Err(format!("{detail}, but took {took:.1?} (limit {limit:?})")),
        other => other,
    }
}

fn collect_failures<T: Sync>(exec: Exec, items: &[T], f: impl Fn(&T) -> Result<(), String> + Sync + Send) -> Vec<String> {
    exec.failures(items, f).into_iter().map(|(_, e)| e).collect()
}

fn seeded(tag: u64, i: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(tag.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ i)
}

/// Normal form by exhaustive search over every rewrite order.
fn exhaustive_nf(s: &Seq) -> Result<RSeq, String> {
    let all = oracle_red_all_orders(s, s.len()).map_err(|e| e.to_string())?;
    match all.len() {
        1 => Ok(all.into_iter().next().unwrap()),
        _ => Err(format!("{s} has {} normal forms", all.len())),
    }
}

/// Normal form by contracting randomly chosen redexes until none remain.
fn random_order_nf<R: Rng>(rng: &mut R, s: &Seq) -> RSeq {
    let mut cur = s.clone();
    loop {
        let next: Vec<Seq> = reduce_once(&cur).into_iter().collect();
        match next.choose(rng) {
            Some(n) => cur = n.clone(),
            None => return RSeq::new(cur).expect("no redex left"),
        }
    }
}

// Rewrites run backwards: ρ ← lλ, l ← ρr, and ε ← rλ | λr | nn.
fn expand<R: Rng>(rng: &mut R, s: &Seq) -> Seq {
    use Letter::*;
    let mut letters = s.letters().to_vec();
    for _ in 0..rng.gen_range(1..=4) {
        let i = rng.gen_range(0..=letters.len());
        match rng.gen_range(0..3) {
            0 if i < letters.len() && letters[i] == Rho => {
                letters.splice(i..=i, [L, Lambda]);
            }
            1 if i < letters.len() && letters[i] == L => {
                letters.splice(i..=i, [Rho, R]);
            }
            _ => {
                let pair = *[[R, Lambda], [Lambda, R], [N, N]].choose(rng).unwrap();
                letters.splice(i..i, pair);
            }
        }
    }
    Seq::new(letters)
}

fn confluence(exec: Exec) -> Result<String, String> {
    let start = Instant::now();
    let seqs: Vec<Seq> = Seq::all_up_to(7).collect();
    let failures = collect_failures(exec, &seqs, |s| {
        let all = oracle_red_all_orders(s, 7).map_err(|e| e.to_string())?;
        let expected = red(s);
        if all.len() == 1 && all.contains(&expected) {
            Ok(())
        } else {
            Err(format!("{s}: normal forms {all:?}, red gives {expected}"))
        }
    });
    within(Duration::from_secs(60), start, verdict(seqs.len(), failures))
}

fn cancellation(exec: Exec) -> Result<String, String> {
    let xs = RSeq::all_up_to(4);
    let ws = RSeq::all_up_to(3);
    // For fixed w̄ the statement says x̄ ↦ red(x̄w̄) is injective.
    let failures = collect_failures(exec, &ws, |w| {
        let mut seen: HashMap<RSeq, &RSeq> = HashMap::new();
        for x in &xs {
            let joined = Seq::new([x.letters(), w.letters()].concat());
            let nf = exhaustive_nf(&joined)?;
            if let Some(other) = seen.insert(nf.clone(), x) {
                return Err(format!("red({other}{w}) = red({x}{w}) = {nf}"));
            }
        }
        Ok(())
    });
    let pairs = xs.len() * xs.len() * ws.len();
    verdict(pairs, failures).map(|d| format!("{d} ({} x, {} w)", xs.len(), ws.len()))
}

fn corollaries(exec: Exec) -> Result<String, String> {
    let concat = collect_failures(exec, &(0..RANDOM_INSTANCES).collect::<Vec<_>>(), |&i| {
        let mut rng = seeded(3, i);
        let (z, w) = (gen_seq(&mut rng, 8), gen_seq(&mut rng, 8));
        let joined = Seq::new([z.letters(), w.letters()].concat());
        let lhs = random_order_nf(&mut rng, &joined);
        let rhs = red_concat(&red(&z), &red(&w));
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("red({z}{w}) = {lhs} but red(red({z})red({w})) = {rhs}"))
        }
    });
    let replace = collect_failures(exec, &(0..RANDOM_INSTANCES).collect::<Vec<_>>(), |&i| {
        let mut rng = seeded(33, i);
        let z1 = gen_seq(&mut rng, 6);
        let z2 = expand(&mut rng, &red(&z1).as_seq());
        let w = gen_seq(&mut rng, 4);
        let y = gen_seq(&mut rng, 6);
        let with = |z: &Seq, t: &Seq| Seq::new([z.letters(), t.letters()].concat());
        let premise = (
            random_order_nf(&mut rng, &with(&z1, &w)),
            random_order_nf(&mut rng, &with(&z2, &w)),
        );
        if premise.0 != premise.1 {
            return Err(format!("instance generator broke: red({z1}{w}) != red({z2}{w})"));
        }
        let (a, b) = (red(&with(&z1, &y)), red(&with(&z2, &y)));
        if a == b {
            Ok(())
        } else {
            Err(format!("z1 = {z1}, z2 = {z2}, w = {w}, y = {y}: {a} vs {b}"))
        }
    });
    let n = RANDOM_INSTANCES as usize;
    let a = verdict(n, concat).map_err(|e| format!("concatenation: {e}"))?;
    let b = verdict(n, replace).map_err(|e| format!("replacement: {e}"))?;
    Ok(format!("concatenation {a}; replacement {b}"))
}

fn corpus(system: System, exec: Exec) -> Vec<ProofTree> {
    let cfg = GenConfig {
        system,
        ..GenConfig::default()
    };
    exec.map_range(CORPUS_SIZE, |seed| gen_derivation(&cfg.with_seed(seed)))
}

fn image_of(d: &impl Substitution<i64>, n: i64, c: &Consecution) -> Consecution {
    Consecution::new(d.apply_bunch(&n, &c.antecedent), d.apply_formula(&n, &c.succedent))
}

fn depth_invariance(exec: Exec) -> Result<String, String> {
    let start = Instant::now();
    let trees = corpus(System::B, exec);
    let cfg = GenConfig::default();
    let indexed: Vec<(u64, &ProofTree)> = (0..).zip(trees.iter()).collect();
    let failures = collect_failures(exec, &indexed, |(i, t)| {
        if !check(t, System::B).valid {
            return Err(format!("corpus tree {i} is not a valid B derivation"));
        }
        let mut rng = seeded(4, *i);
        let companion = tree_bunches(t);
        for k in 0..SUBSTITUTIONS_PER_TREE {
            let d = gen_depth_substitution(&mut rng, &cfg, SubstKind::Random, &companion);
            for n in -3..=3 {
                let image = apply_depth_to_tree(&d, n, t).map_err(|e| format!("tree {i}: {e}"))?;
                let report = check(&image, System::B);
                if !report.valid {
                    return Err(format!("tree {i}, substitution {k}, n = {n}: {}", report.failures[0]));
                }
                if *image.conclusion() != image_of(&d, n, t.conclusion()) {
                    return Err(format!("tree {i}, substitution {k}, n = {n}: wrong root"));
                }
            }
        }
        Ok(())
    });
    let cases = trees.len() * SUBSTITUTIONS_PER_TREE as usize * 7;
    within(Duration::from_secs(300), start, verdict(cases, failures))
}

fn rseq_invariance(exec: Exec) -> Result<String, String> {
    let trees = corpus(System::B, exec);
    let cfg = GenConfig::default();
    let eps = RSeq::empty();
    let indexed: Vec<(u64, &ProofTree)> = (0..).zip(trees.iter()).collect();
    let failures = collect_failures(exec, &indexed, |(i, t)| {
        let mut rng = seeded(5, *i);
        let companion = tree_bunches(t);
        for k in 0..SUBSTITUTIONS_PER_TREE {
            let s = gen_rseq_substitution(&mut rng, &cfg, SubstKind::Random, &companion);
            let image = apply_rseq_to_tree(&s, &eps, t).map_err(|e| format!("tree {i}: {e}"))?;
            let report = check(&image, System::B);
            if !report.valid {
                return Err(format!("tree {i}, substitution {k}: {}", report.failures[0]));
            }
            let root = t.conclusion();
            let expected = Consecution::new(s.apply_bunch(&eps, &root.antecedent), s.apply_formula(&eps, &root.succedent));
            if *image.conclusion() != expected {
                return Err(format!("tree {i}, substitution {k}: wrong root"));
            }
        }
        Ok(())
    });
    verdict(trees.len() * SUBSTITUTIONS_PER_TREE as usize, failures)
}

fn strong_rseq_failure() -> Result<String, String> {
    let start = Instant::now();
    let (t, s, x) = find_strong_rseq_counterexample(1).ok_or("no counterexample within budget 1")?;
    let took = start.elapsed();
    if x.is_empty() {
        return Err("returned the empty sequence".into());
    }
    if !check(&t, System::B).valid {
        return Err("source derivation is invalid".into());
    }
    let image = apply_rseq_to_tree(&s, &x, &t).map_err(|e| e.to_string())?;
    let report = check(&image, System::B);
    if report.valid {
        return Err("image derivation is valid".into());
    }
    if took > Duration::from_secs(1) {
        return Err(format!("search took {took:?}"));
    }
    Ok(format!(
        "{} at x = {x}: image fails at {}",
        t.conclusion(),
        report.failures[0].path
    ))
}

fn sharing(exec: Exec) -> Result<String, String> {
    let b_trees = corpus(System::B, exec);
    let r_trees = corpus(System::R, exec);
    let modes = [ShareMode::Plain, ShareMode::Depth, ShareMode::Rseq];
    let b_fail = collect_failures(exec, &b_trees, |t| {
        let c = t.conclusion();
        for mode in modes {
            if sharing_report(&c.antecedent, &c.succedent, mode).is_none() {
                return Err(format!("{c}: no {mode:?} sharing"));
            }
        }
        Ok(())
    });
    let r_opts = CheckOptions::default();
    let r_fail = collect_failures(exec, &r_trees, |t| {
        let c = t.conclusion();
        if !check_with(t, System::R, &r_opts).valid {
            return Err(format!("corpus tree for {c} is not a valid R derivation"));
        }
        match sharing_report(&c.antecedent, &c.succedent, ShareMode::Plain) {
            Some(_) => Ok(()),
            None => Err(format!("R: {c}: no shared variable")),
        }
    });
    let n = b_trees.len() * modes.len();
    let b = verdict(n, b_fail).map_err(|e| format!("B: {e}"))?;
    let r = verdict(r_trees.len(), r_fail).map_err(|e| format!("R plain: {e}"))?;
    Ok(format!("B {b}; R plain {r}"))
}

// A random table keyed by every atom occurrence of `b` read from `root`.
fn table_for<R: Rng>(rng: &mut R, b: &Bunch, roots: &[RSeq]) -> RseqSubstitution {
    let mut table = std::collections::BTreeMap::new();
    for root in roots {
        for e in annotations_from(Node::Bunch(b), root.clone()) {
            if let Some(Formula::Atom(p)) = e.node.as_formula() {
                if rng.gen_bool(0.7) {
                    table.insert((e.annotation, p.clone()), gen_formula(rng, 1, 6));
                }
            }
        }
    }
    RseqSubstitution::from_table(table)
}

fn depth_table<R: Rng>(rng: &mut R) -> DepthSubstitution {
    let mut d = DepthSubstitution::identity();
    for _ in 0..rng.gen_range(0..12) {
        let n = rng.gen_range(-6..=6);
        let p = Atom::p(rng.gen_range(1..=4));
        d.insert(n, p, gen_formula(rng, 1, 6));
    }
    d
}

fn random_hole<R: Rng>(rng: &mut R, y: &Bunch) -> Path {
    y.subbunch_paths().choose(rng).unwrap().clone()
}

fn shift_and_hole_laws(exec: Exec) -> Result<String, String> {
    let ids: Vec<u64> = (0..RANDOM_INSTANCES).collect();
    let n = ids.len();

    let depth_shift = collect_failures(exec, &ids, |&i| {
        let mut rng = seeded(81, i);
        let d = depth_table(&mut rng);
        let x = gen_bunch(&mut rng, 3, 3, 4);
        let (k, m) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        if d.shift(k).apply_bunch(&m, &x) == d.apply_bunch(&(m + k), &x) {
            Ok(())
        } else {
            Err(format!("d_{k} at {m} on {x}"))
        }
    });

    let rseq_shift = collect_failures(exec, &ids, |&i| {
        let mut rng = seeded(82, i);
        let (z, w, y) = (gen_rseq(&mut rng, 3), gen_rseq(&mut rng, 3), gen_rseq(&mut rng, 3));
        let x = red_concat(&z, &w);
        let target = red_concat(&z, &y);
        let b = gen_bunch(&mut rng, 3, 2, 4);
        let s = table_for(&mut rng, &b, &[target.clone(), x.clone()]);
        let lhs = s.shift(w.clone(), y.clone()).apply_bunch(&x, &b);
        if lhs == s.apply_bunch(&target, &b) {
            Ok(())
        } else {
            Err(format!("z = {z}, w = {w}, y = {y} on {b}"))
        }
    });

    let depth_hole = collect_failures(exec, &ids, |&i| {
        let mut rng = seeded(83, i);
        let d = depth_table(&mut rng);
        let y = gen_bunch(&mut rng, 3, 2, 4);
        let h = random_hole(&mut rng, &y);
        let x = gen_bunch(&mut rng, 2, 2, 4);
        let yx = replace_at(&y, &h, x.clone()).map_err(|e| e.to_string())?;
        let c: i64 = annotation_at(Node::Bunch(&y), &h).map_err(|e| e.to_string())?;
        let m = rng.gen_range(-3..=3);
        let image = d.apply_bunch(&m, &yx);
        let at_hole = image.subbunch(&h).ok_or("hole vanished")?;
        if *at_hole == d.apply_bunch(&(m + c), &x) {
            Ok(())
        } else {
            Err(format!("{yx} at {h}, depth {c}"))
        }
    });

    let rseq_hole = collect_failures(exec, &ids, |&i| {
        let mut rng = seeded(84, i);
        let y = gen_bunch(&mut rng, 3, 2, 4);
        let h = random_hole(&mut rng, &y);
        let x = gen_bunch(&mut rng, 2, 2, 4);
        let yx = replace_at(&y, &h, x.clone()).map_err(|e| e.to_string())?;
        let xbar: RSeq = annotation_at(Node::Bunch(&y), &h).map_err(|e| e.to_string())?;
        let w = gen_rseq(&mut rng, 3);
        let inner = red_concat(&xbar, &w);
        let s = table_for(&mut rng, &x, std::slice::from_ref(&inner));
        let image = s.apply_bunch(&w, &yx);
        let at_hole = image.subbunch(&h).ok_or("hole vanished")?;
        if *at_hole == s.apply_bunch(&inner, &x) {
            Ok(())
        } else {
            Err(format!("{yx} at {h} from {w}"))
        }
    });

    // Brute-force solution sets for every reduced x̄ (len <= 2), w̄ (len <= 1).
    let xs = RSeq::all_up_to(2);
    let ws = RSeq::all_up_to(1);
    let pairs: Vec<(RSeq, RSeq)> = xs
        .iter()
        .flat_map(|x| ws.iter().map(move |w| (x.clone(), w.clone())))
        .collect();
    let solutions: HashMap<(RSeq, RSeq), Vec<Seq>> = pairs
        .iter()
        .cloned()
        .zip(exec.map(&pairs, |(x, w)| solve_bounded(x, w)))
        .collect();
    let well_defined = collect_failures(exec, &ids, |&i| {
        let mut rng = seeded(85, i);
        let (x, w) = pairs.choose(&mut rng).unwrap().clone();
        let y = gen_rseq(&mut rng, 2);
        let p = Atom::p(rng.gen_range(1..=3));
        let sols = &solutions[&(x.clone(), w.clone())];
        let mut table = std::collections::BTreeMap::new();
        for z in sols {
            let key = red(&Seq::new([z.letters(), y.letters()].concat()));
            table.insert((key, p.clone()), gen_formula(&mut rng, 1, 6));
        }
        table.insert((x.clone(), p.clone()), gen_formula(&mut rng, 1, 6));
        let s = RseqSubstitution::from_table(table);
        let values: BTreeSet<Formula> = sols
            .iter()
            .map(|z| s.lookup(&red(&Seq::new([z.letters(), y.letters()].concat())), &p))
            .collect();
        if values.len() > 1 {
            return Err(format!("x = {x}, w = {w}, y = {y}: {} distinct values", values.len()));
        }
        let shifted = s.shift(w.clone(), y.clone()).lookup(&x, &p);
        let expected = values.into_iter().next().unwrap_or_else(|| s.lookup(&x, &p));
        if solve_prefix(&x, &w).is_some() != !sols.is_empty() {
            return Err(format!("solver disagrees with enumeration on x = {x}, w = {w}"));
        }
        if shifted == expected {
            Ok(())
        } else {
            Err(format!("x = {x}, w = {w}, y = {y}: shifted lookup {shifted}, expected {expected}"))
        }
    });

    let parts = [
        ("depth shift", depth_shift),
        ("rseq shift", rseq_shift),
        ("depth hole", depth_hole),
        ("rseq hole", rseq_hole),
        ("well-definedness", well_defined),
    ];
    let mut lines = Vec::new();
    for (name, failures) in parts {
        let line = verdict(n, failures).map_err(|e| format!("{name}: {e}"))?;
        lines.push(format!("{name} {line}"));
    }
    Ok(lines.join("; "))
}

pub const FUSION_EXAMPLE: &str = include_str!("../fixtures/fusI_example.deriv");
pub const FUSION_AS_OR_ELIM: &str = include_str!("../fixtures/fusI_as_orE.deriv");
pub const FUSION_FROM_NEGATED_CONDITIONAL: &str = include_str!("../fixtures/fusion_from_negated_conditional.deriv");
pub const NEGATED_CONDITIONAL_FROM_FUSION: &str = include_str!("../fixtures/negated_conditional_from_fusion.deriv");
pub const MODUS_PONENS: &str = include_str!("../fixtures/modus_ponens.deriv");

fn fixtures() -> Result<String, String> {
    let fail = |what: &str| Err(what.to_string());
    let parse = |text: &str| parse_tree(text).map_err(|e| e.to_string());

    // (a) depth of p in p ; q
    let b = parse_bunch("p ; q").map_err(|e| e.to_string())?;
    if annotation_at::<i64>(Node::Bunch(&b), &Path::new(vec![0])) != Ok(-1) {
        return fail("(a) depth of p in p ; q is not -1");
    }

    // (b) A -> B ; (C -> A ; C)
    let b = parse_bunch("(A -> B) ; ((C -> A) ; C)").map_err(|e| e.to_string())?;
    let mut seen: HashMap<String, BTreeSet<String>> = HashMap::new();
    for e in annotations_from(Node::Bunch(&b), RSeq::empty()) {
        if let Some(Formula::Atom(p)) = e.node.as_formula() {
            seen.entry(p.to_string()).or_default().insert(e.annotation.to_string());
        }
    }
    let want = |s: &str| BTreeSet::from([s.to_string()]);
    if seen["A"] != want("P") || seen["B"] != want("e") || seen["C"] != want("PP") {
        return Err(format!("(b) annotations {seen:?}"));
    }

    // (c) (p -> p) ; p |- p  becomes  (p -> q) ; p |- q
    let t = parse(MODUS_PONENS)?;
    let p = Atom::named("p");
    let s = RseqSubstitution::from_table(std::collections::BTreeMap::from([
        ((RSeq::empty(), p.clone()), Formula::atom(Atom::named("q"))),
        ((RSeq::single(Letter::Rho), p), Formula::atom(Atom::named("p"))),
    ]));
    let image = apply_rseq_to_tree(&s, &RSeq::empty(), &t).map_err(|e| e.to_string())?;
    let expected = parse_consecution("(p -> q) ; p |- q").map_err(|e| e.to_string())?;
    if *image.conclusion() != expected || !check(&image, System::B).valid {
        return Err(format!("(c) image root {} or check failed", image.conclusion()));
    }

    // (d) fusion introduction and its mislabelled variant
    if !check(&parse(FUSION_EXAMPLE)?, System::B).valid {
        return fail("(d) fusion example rejected");
    }
    if check(&parse(FUSION_AS_OR_ELIM)?, System::B).valid {
        return fail("(d) orE-labelled variant accepted");
    }

    // (e) the two R derivations relating fusion and ~(A -> ~B)
    for (name, text) in [
        ("fusion_from_negated_conditional", FUSION_FROM_NEGATED_CONDITIONAL),
        ("negated_conditional_from_fusion", NEGATED_CONDITIONAL_FROM_FUSION),
    ] {
        let report = check(&parse(text)?, System::R);
        if !report.valid || !report.open_leaves.is_empty() {
            return Err(format!("(e) {name}: {report}"));
        }
    }
    Ok("(a)-(e) all hold".into())
}

fn translation(exec: Exec) -> Result<String, String> {
    let ids: Vec<u64> = (0..RANDOM_INSTANCES).collect();
    let failures = collect_failures(exec, &ids, |&i| {
        let mut rng = seeded(10, i);
        let x = gen_bunch(&mut rng, 3, 3, 6);
        let t = tau_bunch(&x);
        if t.vars() != x.vars() {
            return Err(format!("vars differ on {x}"));
        }
        if !t.is_fusion_free() {
            return Err(format!("tau({x}) contains fusion"));
        }
        if tau(&t) != t {
            return Err(format!("tau not the identity on tau({x})"));
        }
        if cf(&x).vars() != x.vars() {
            return Err(format!("cf changes variables of {x}"));
        }
        let a = loop {
            let a = gen_formula(&mut rng, 3, 6);
            if a.is_fusion_free() {
                break a;
            }
        };
        if tau(&a) != a {
            return Err(format!("tau moves the fusion-free {a}"));
        }
        Ok(())
    });
    verdict(ids.len(), failures)
}

fn entity(seed: u64) -> String {
    let mut rng = seeded(11, seed);
    match seed % 4 {
        0 => gen_formula(&mut rng, 4, 6).to_string(),
        1 => gen_bunch(&mut rng, 3, 3, 6).to_string(),
        2 => Consecution::new(gen_bunch(&mut rng, 3, 3, 6), gen_formula(&mut rng, 3, 6)).to_string(),
        _ => render_tree(&gen_derivation(&GenConfig::default().with_seed(seed))),
    }
}

fn roundtrip_and_determinism(exec: Exec) -> Result<String, String> {
    let ids: Vec<u64> = (0..RANDOM_INSTANCES).collect();
    let failures = collect_failures(exec, &ids, |&i| {
        let text = entity(i);
        if entity(i) != text {
            return Err(format!("seed {i} generated two different entities"));
        }
        let again = match i % 4 {
            0 => parse_formula(&text).map(|e| e.to_string()).map_err(|e| e.to_string()),
            1 => parse_bunch(&text).map(|e| e.to_string()).map_err(|e| e.to_string()),
            2 => parse_consecution(&text).map(|e| e.to_string()).map_err(|e| e.to_string()),
            _ => parse_tree(&text).map(|t| render_tree(&t)).map_err(|e| e.to_string()),
        }
        .map_err(|e| format!("seed {i}: {text:?} does not parse: {e}"))?;
        if again == text {
            Ok(())
        } else {
            Err(format!("seed {i}: {text:?} re-renders as {again:?}"))
        }
    });
    let subtree_check = {
        // structural equality, not only text, on a sample of each kind
        let f = gen_formula(&mut seeded(11, 0), 4, 6);
        let b = gen_bunch(&mut seeded(11, 1), 3, 3, 6);
        parse_formula(&f.to_string()).ok() == Some(f.clone())
            && parse_bunch(&b.to_string()).ok() == Some(b.clone())
            && subterm_at(&b, &Path::root()).is_ok()
    };
    if !subtree_check {
        return Err("structural roundtrip failed".into());
    }
    verdict(ids.len(), failures)
}
