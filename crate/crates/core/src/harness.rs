//! Seeded generators for formulas, bunches, substitutions and valid
//! derivations, plus the search for a strong rseq-invariance failure.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::annotate::{atom_occurrences, Annotation};
use crate::deriv::{apply_rseq_to_tree, check, ProofTree, RuleName, System};
use crate::seqred::{red, Letter, RSeq, Seq};
use crate::subst::{fresh_injective_depth, fresh_injective_rseq, DepthSubstitution, RseqSubstitution};
use crate::syntax::{replace_at, Atom, Bunch, Consecution, Formula, Node, Path};

/// Generated antecedents never exceed this many leaves.
pub const MAX_BUNCH_LEAVES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_formula_depth: usize,
    pub max_rule_nodes: usize,
    pub atom_pool: u32,
    pub system: System,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_formula_depth: 3,
            max_rule_nodes: 8,
            atom_pool: 4,
            system: System::B,
        }
    }
}

impl GenConfig {
    pub fn with_seed(&self, seed: u64) -> GenConfig {
        GenConfig { seed, ..self.clone() }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub fn gen_atom<R: Rng>(rng: &mut R, pool: u32) -> Atom {
    Atom::p(rng.gen_range(1..=pool.max(1)))
}

pub fn gen_formula<R: Rng>(rng: &mut R, depth: usize, pool: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        return Formula::Atom(gen_atom(rng, pool));
    }
    let sub = |rng: &mut R| gen_formula(rng, depth - 1, pool);
    match rng.gen_range(0..5) {
        0 => Formula::neg(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::imp(sub(rng), sub(rng)),
        _ => Formula::fusion(sub(rng), sub(rng)),
    }
}

/// A random bunch with at most `2^shape_depth` leaves.
pub fn gen_bunch<R: Rng>(rng: &mut R, shape_depth: usize, formula_depth: usize, pool: u32) -> Bunch {
    if shape_depth == 0 || rng.gen_bool(0.3) {
        return Bunch::Leaf(gen_formula(rng, formula_depth, pool));
    }
    let x = gen_bunch(rng, shape_depth - 1, formula_depth, pool);
    let y = gen_bunch(rng, shape_depth - 1, formula_depth, pool);
    if rng.gen_bool(0.5) {
        Bunch::comma(x, y)
    } else {
        Bunch::semi(x, y)
    }
}

pub fn gen_seq<R: Rng>(rng: &mut R, max_len: usize) -> Seq {
    let len = rng.gen_range(0..=max_len);
    Seq::new((0..len).map(|_| *Letter::ALL.choose(rng).unwrap()).collect())
}

/// A reduced sequence obtained by reducing a random word of length at most
/// `max_len`.
pub fn gen_rseq<R: Rng>(rng: &mut R, max_len: usize) -> RSeq {
    red(&gen_seq(rng, max_len))
}

struct Forge<'a, R> {
    rng: &'a mut R,
    cfg: &'a GenConfig,
    pool: Vec<ProofTree>,
}

fn semi_of(c: &Consecution) -> Option<(&Bunch, &Formula)> {
    match &c.antecedent {
        Bunch::Semi(x, l) => l.as_formula().map(|a| (&**x, a)),
        _ => None,
    }
}

fn build(rule: RuleName, premises: Vec<ProofTree>, antecedent: Bunch, succedent: Formula) -> ProofTree {
    ProofTree::node(rule, premises, Consecution::new(antecedent, succedent))
}

fn build_at(rule: RuleName, premises: Vec<ProofTree>, antecedent: Bunch, succedent: Formula, hole: Path) -> ProofTree {
    build(rule, premises, antecedent, succedent).with_hole(hole)
}

fn ant(t: &ProofTree) -> Bunch {
    t.conclusion().antecedent.clone()
}

fn succ(t: &ProofTree) -> Formula {
    t.conclusion().succedent.clone()
}

fn and_i(t1: ProofTree, t2: ProofTree) -> ProofTree {
    let (x, a, y, b) = (ant(&t1), succ(&t1), ant(&t2), succ(&t2));
    build(RuleName::AndI, vec![t1, t2], Bunch::comma(x, y), Formula::and(a, b))
}

fn fus_i(t1: ProofTree, t2: ProofTree) -> ProofTree {
    let (x, a, y, b) = (ant(&t1), succ(&t1), ant(&t2), succ(&t2));
    build(RuleName::FusI, vec![t1, t2], Bunch::semi(x, y), Formula::fusion(a, b))
}

fn imp_e(t1: ProofTree, t2: ProofTree) -> ProofTree {
    let Formula::Imp(_, b) = succ(&t1) else {
        unreachable!("major premise of impE proves a conditional")
    };
    let (x, y) = (ant(&t1), ant(&t2));
    build(RuleName::ImpE, vec![t1, t2], Bunch::semi(x, y), *b)
}

fn or_i(first: bool, t: ProofTree, other: Formula) -> ProofTree {
    let (x, a) = (ant(&t), succ(&t));
    if first {
        build(RuleName::OrI1, vec![t], x, Formula::or(a, other))
    } else {
        build(RuleName::OrI2, vec![t], x, Formula::or(other, a))
    }
}

fn neg_i_double(t: ProofTree) -> ProofTree {
    let (x, b) = (ant(&t), succ(&t));
    let nb = Formula::neg(b);
    build(RuleName::NegI, vec![t, ProofTree::id(nb.clone())], x, Formula::neg(nb))
}

impl<R: Rng> Forge<'_, R> {
    fn formula(&mut self) -> Formula {
        gen_formula(self.rng, self.cfg.max_formula_depth, self.cfg.atom_pool)
    }

    fn small_formula(&mut self) -> Formula {
        gen_formula(self.rng, 1, self.cfg.atom_pool)
    }

    fn pick(&mut self) -> ProofTree {
        self.pool.choose(self.rng).expect("pool is never empty").clone()
    }

    fn pick_where(&mut self, pred: impl Fn(&ProofTree) -> bool) -> Option<ProofTree> {
        let hits: Vec<&ProofTree> = self.pool.iter().filter(|t| pred(t)).collect();
        hits.choose(self.rng).map(|t| (*t).clone())
    }

    /// A pool tree and a subbunch position of its antecedent satisfying `pred`.
    fn pick_position(&mut self, pred: impl Fn(&Bunch) -> bool) -> Option<(ProofTree, Path)> {
        let mut hits = Vec::new();
        for (i, t) in self.pool.iter().enumerate() {
            let b = &t.conclusion().antecedent;
            for h in b.subbunch_paths() {
                if pred(b.subbunch(&h).unwrap()) {
                    hits.push((i, h));
                }
            }
        }
        hits.choose(self.rng).map(|(i, h)| (self.pool[*i].clone(), h.clone()))
    }

    fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    fn apply(&mut self, rule: RuleName) -> Option<ProofTree> {
        use RuleName::*;
        let t = match rule {
            Id => {
                let a = self.formula();
                ProofTree::id(a)
            }
            ImpI => match self.pick_where(|t| semi_of(t.conclusion()).is_some()) {
                Some(t) => {
                    let (x, a) = semi_of(t.conclusion()).map(|(x, a)| (x.clone(), a.clone())).unwrap();
                    let b = succ(&t);
                    build(ImpI, vec![t], x, Formula::imp(a, b))
                }
                None => {
                    let (a, b) = (self.small_formula(), self.small_formula());
                    let ab = Formula::imp(a.clone(), b);
                    let t = imp_e(ProofTree::id(ab.clone()), ProofTree::id(a));
                    build(ImpI, vec![t], Bunch::Leaf(ab.clone()), ab)
                }
            },
            ImpE => {
                let major = if self.coin() {
                    self.pick_where(|t| matches!(t.conclusion().succedent, Formula::Imp(..)))
                } else {
                    None
                };
                match major {
                    Some(t1) => {
                        let Formula::Imp(a, _) = succ(&t1) else { unreachable!() };
                        let t2 = self
                            .pick_where(|t| t.conclusion().succedent == *a)
                            .unwrap_or_else(|| ProofTree::id(*a));
                        imp_e(t1, t2)
                    }
                    None => {
                        let t2 = self.pick();
                        let b = self.small_formula();
                        imp_e(ProofTree::id(Formula::imp(succ(&t2), b)), t2)
                    }
                }
            }
            OrI1 | OrI2 => {
                let (t, b) = (self.pick(), self.small_formula());
                or_i(rule == OrI1, t, b)
            }
            OrE => {
                let t1 = match self.pick_where(|t| matches!(t.conclusion().succedent, Formula::Or(..))) {
                    Some(t) => t,
                    None => {
                        let (t, b, first) = (self.pick(), self.small_formula(), self.coin());
                        or_i(first, t, b)
                    }
                };
                let Formula::Or(a, b) = succ(&t1) else { unreachable!() };
                let (a, b) = (*a, *b);
                let x = ant(&t1);
                let ab = Formula::or(a.clone(), b.clone());
                let t2 = or_i(true, ProofTree::id(a.clone()), b.clone());
                let t3 = or_i(false, ProofTree::id(b), a);
                if self.coin() {
                    build_at(OrE, vec![t1, t2, t3], x, ab, Path::root())
                } else {
                    // put the hole inside a context Z op _
                    let s = self.pick();
                    let semi = self.coin();
                    let join = |s: ProofTree, t: ProofTree| if semi { fus_i(s, t) } else { and_i(s, t) };
                    let (t2, t3) = (join(s.clone(), t2), join(s.clone(), t3));
                    let z = ant(&s);
                    let antecedent = if semi { Bunch::semi(z, x) } else { Bunch::comma(z, x) };
                    let c = succ(&t2);
                    build_at(OrE, vec![t1, t2, t3], antecedent, c, Path::new(vec![1]))
                }
            }
            AndI => {
                let (t1, t2) = (self.pick(), self.pick());
                and_i(t1, t2)
            }
            FusI => {
                let (t1, t2) = (self.pick(), self.pick());
                fus_i(t1, t2)
            }
            AndE | FusE => {
                let fusion = rule == FusE;
                let t1 = match self.pick_where(|t| match t.conclusion().succedent {
                    Formula::And(..) => !fusion,
                    Formula::Fusion(..) => fusion,
                    _ => false,
                }) {
                    Some(t) => t,
                    None => {
                        let (t1, t2) = (self.pick(), self.pick());
                        if fusion {
                            fus_i(t1, t2)
                        } else {
                            and_i(t1, t2)
                        }
                    }
                };
                let (a, b) = match succ(&t1) {
                    Formula::And(a, b) | Formula::Fusion(a, b) => (*a, *b),
                    _ => unreachable!(),
                };
                let target = if fusion {
                    Bunch::semi(a.clone().into(), b.clone().into())
                } else {
                    Bunch::comma(a.clone().into(), b.clone().into())
                };
                let (t2, h) = match self.pick_position(|y| *y == target) {
                    Some(found) => found,
                    None => {
                        let (ia, ib) = (ProofTree::id(a), ProofTree::id(b));
                        (if fusion { fus_i(ia, ib) } else { and_i(ia, ib) }, Path::root())
                    }
                };
                let antecedent = replace_at(&t2.conclusion().antecedent, &h, ant(&t1)).ok()?;
                let c = succ(&t2);
                build_at(rule, vec![t1, t2], antecedent, c, h)
            }
            NegI => {
                let t1 = self.pick();
                let nb = Formula::neg(succ(&t1));
                match self.pick_where(|t| {
                    t.conclusion().succedent == nb && t.conclusion().antecedent.as_formula().is_some()
                }) {
                    Some(t2) => {
                        let a = t2.conclusion().antecedent.as_formula().unwrap().clone();
                        let x = ant(&t1);
                        build(NegI, vec![t1, t2], x, Formula::neg(a))
                    }
                    None => neg_i_double(t1),
                }
            }
            NegE => {
                let t = match self.pick_where(|t| {
                    matches!(&t.conclusion().succedent, Formula::Neg(inner) if matches!(**inner, Formula::Neg(_)))
                }) {
                    Some(t) => t,
                    None => {
                        let t = self.pick();
                        neg_i_double(t)
                    }
                };
                let Formula::Neg(inner) = succ(&t) else { unreachable!() };
                let Formula::Neg(a) = *inner else { unreachable!() };
                let x = ant(&t);
                build(NegE, vec![t], x, *a)
            }
            Cut => {
                let t1 = self.pick();
                let a = succ(&t1);
                let (t2, h) = self
                    .pick_position(|y| y.as_formula() == Some(&a))
                    .unwrap_or_else(|| (ProofTree::id(a), Path::root()));
                let antecedent = replace_at(&t2.conclusion().antecedent, &h, ant(&t1)).ok()?;
                let c = succ(&t2);
                build_at(Cut, vec![t1, t2], antecedent, c, h)
            }
            NegI2 => {
                let found = self.pick_where(|t| {
                    semi_of(t.conclusion()).is_some() && matches!(t.conclusion().succedent, Formula::Neg(_))
                });
                let (t1, t2) = match found {
                    Some(t1) => {
                        let Formula::Neg(b) = succ(&t1) else { unreachable!() };
                        let t2 = self
                            .pick_where(|t| t.conclusion().succedent == *b)
                            .unwrap_or_else(|| ProofTree::id(*b));
                        (t1, t2)
                    }
                    None => {
                        let t2 = self.pick();
                        let a = self.small_formula();
                        let major = ProofTree::id(Formula::imp(a.clone(), Formula::neg(succ(&t2))));
                        (imp_e(major, ProofTree::id(a)), t2)
                    }
                };
                let (x, a) = semi_of(t1.conclusion()).map(|(x, a)| (x.clone(), a.clone())).unwrap();
                let y = ant(&t2);
                build(NegI2, vec![t1, t2], Bunch::semi(x, y), Formula::neg(a))
            }
            _ => return self.structural(rule),
        };
        Some(t)
    }

    fn structural(&mut self, rule: RuleName) -> Option<ProofTree> {
        use RuleName::*;
        let semi = matches!(rule, SB | SC | SW);
        let split = move |b: &Bunch| -> Option<(Bunch, Bunch)> {
            match (b, semi) {
                (Bunch::Comma(x, y), false) | (Bunch::Semi(x, y), true) => Some(((**x).clone(), (**y).clone())),
                _ => None,
            }
        };
        let join = move |x: Bunch, y: Bunch| if semi { Bunch::semi(x, y) } else { Bunch::comma(x, y) };
        let intro = move |t1: ProofTree, t2: ProofTree| if semi { fus_i(t1, t2) } else { and_i(t1, t2) };

        let fits = move |b: &Bunch| match rule {
            EB | SB => split(b).is_some_and(|(_, yz)| split(&yz).is_some()),
            EC | SC => split(b).is_some(),
            EW | SW => split(b).is_some_and(|(x, y)| x == y),
            _ => true,
        };
        let (t, h) = match self.pick_position(fits) {
            Some(found) if self.coin() || rule == EK => found,
            _ => {
                let t = match rule {
                    EB | SB => {
                        let (t1, t2, t3) = (self.pick(), self.pick(), self.pick());
                        intro(t1, intro(t2, t3))
                    }
                    EC | SC => {
                        let (t1, t2) = (self.pick(), self.pick());
                        intro(t1, t2)
                    }
                    _ => {
                        let t1 = self.pick();
                        intro(t1.clone(), t1)
                    }
                };
                (t, Path::root())
            }
        };
        let old = t.conclusion().antecedent.subbunch(&h)?.clone();
        let new = match rule {
            EB | SB => {
                let (x, yz) = split(&old)?;
                let (y, z) = split(&yz)?;
                join(join(x, y), z)
            }
            EC | SC => {
                let (x, y) = split(&old)?;
                join(y, x)
            }
            EW | SW => split(&old)?.0,
            EK => {
                let y = Bunch::Leaf(self.small_formula());
                Bunch::comma(old, y)
            }
            _ => return None,
        };
        let antecedent = replace_at(&t.conclusion().antecedent, &h, new).ok()?;
        let c = succ(&t);
        Some(build_at(rule, vec![t], antecedent, c, h))
    }
}

/// A closed derivation valid in `cfg.system`, built forward from (id)
/// leaves. Deterministic in `cfg`.
pub fn gen_derivation(cfg: &GenConfig) -> ProofTree {
    gen_derivation_with(&mut cfg.rng(), cfg)
}

pub fn gen_derivation_with<R: Rng>(rng: &mut R, cfg: &GenConfig) -> ProofTree {
    let rules = RuleName::rules_of(cfg.system, &Default::default());
    let mut forge = Forge {
        rng,
        cfg,
        pool: Vec::new(),
    };
    for _ in 0..3 {
        let a = forge.formula();
        forge.pool.push(ProofTree::id(a));
    }
    let mut best = forge.pool[0].clone();
    let max_nodes = cfg.max_rule_nodes.max(1);
    for _ in 0..6 * max_nodes + 12 {
        let rule = *rules.choose(forge.rng).unwrap();
        let Some(t) = forge.apply(rule) else { continue };
        if t.rule_count() > max_nodes || t.conclusion().antecedent.leaf_count() > MAX_BUNCH_LEAVES {
            continue;
        }
        if t.rule_count() >= best.rule_count() {
            best = t.clone();
        }
        forge.pool.push(t);
    }
    best
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubstKind {
    Empty,
    Random,
    FreshInjective,
}

/// Every antecedent and succedent in the tree, succedents as leaves.
pub fn tree_bunches(t: &ProofTree) -> Vec<Bunch> {
    fn go(t: &ProofTree, out: &mut Vec<Bunch>) {
        let c = t.conclusion();
        out.push(c.antecedent.clone());
        out.push(Bunch::Leaf(c.succedent.clone()));
        t.premises().iter().for_each(|p| go(p, out));
    }
    let mut out = Vec::new();
    go(t, &mut out);
    out
}

fn random_table<A: Annotation, R: Rng>(
    rng: &mut R,
    cfg: &GenConfig,
    companion: &[Bunch],
    mut noise_key: impl FnMut(&mut R) -> A,
) -> BTreeMap<(A, Atom), Formula> {
    let mut table = BTreeMap::new();
    for b in companion {
        for (p, ann, _) in atom_occurrences::<A>(Node::Bunch(b)) {
            if rng.gen_bool(0.5) {
                let image = gen_formula(rng, 2, cfg.atom_pool + 2);
                table.entry((ann, p)).or_insert(image);
            }
        }
    }
    for _ in 0..4 {
        let key = (noise_key(rng), gen_atom(rng, cfg.atom_pool));
        let image = gen_formula(rng, 2, cfg.atom_pool + 2);
        table.insert(key, image);
    }
    table
}

pub fn gen_depth_substitution<R: Rng>(rng: &mut R, cfg: &GenConfig, kind: SubstKind, companion: &[Bunch]) -> DepthSubstitution {
    match kind {
        SubstKind::Empty => DepthSubstitution::identity(),
        SubstKind::FreshInjective => fresh_injective_depth(companion),
        SubstKind::Random => DepthSubstitution::from_table(random_table(rng, cfg, companion, |r| r.gen_range(-4..=4))),
    }
}

pub fn gen_rseq_substitution<R: Rng>(rng: &mut R, cfg: &GenConfig, kind: SubstKind, companion: &[Bunch]) -> RseqSubstitution {
    match kind {
        SubstKind::Empty => RseqSubstitution::identity(),
        SubstKind::FreshInjective => fresh_injective_rseq(companion),
        SubstKind::Random => RseqSubstitution::from_table(random_table(rng, cfg, companion, |r| gen_rseq(r, 3))),
    }
}

/// Seeded wrappers: the table depends only on `cfg.seed`, `kind` and the
/// companion bunches.
pub fn gen_depth_substitution_seeded(cfg: &GenConfig, kind: SubstKind, companion: &[Bunch]) -> DepthSubstitution {
    gen_depth_substitution(&mut cfg.rng(), cfg, kind, companion)
}

pub fn gen_rseq_substitution_seeded(cfg: &GenConfig, kind: SubstKind, companion: &[Bunch]) -> RseqSubstitution {
    gen_rseq_substitution(&mut cfg.rng(), cfg, kind, companion)
}

/// `(p1 -> p1) ; p1 |- p1` by →E from two identities.
pub fn modus_ponens_witness() -> ProofTree {
    let p = Formula::p(1);
    let pp = Formula::imp(p.clone(), p.clone());
    imp_e(ProofTree::id(pp), ProofTree::id(p))
}

/// A B-derivation, an rseq-substitution and a nonempty `x̄` such that the
/// action at `x̄` produces an invalid tree. The →E witness is tried first,
/// then seeded random candidates; each candidate costs one unit of budget.
pub fn find_strong_rseq_counterexample(budget: usize) -> Option<(ProofTree, RseqSubstitution, RSeq)> {
    let p = Atom::p(1);
    let seq = |s: &str| -> RSeq { s.parse().expect("literal is reduced") };
    let witness = (
        modus_ponens_witness(),
        RseqSubstitution::from_table(BTreeMap::from([
            ((seq("lP"), p.clone()), Formula::p(2)),
            ((seq("Pl"), p), Formula::p(3)),
        ])),
        seq("l"),
    );
    let cfg = GenConfig {
        seed: 0x5eed,
        max_rule_nodes: 4,
        ..GenConfig::default()
    };
    let mut rng = cfg.rng();
    let candidates = std::iter::once(witness).chain(std::iter::from_fn(move || {
        let t = gen_derivation_with(&mut rng, &cfg);
        let s = gen_rseq_substitution(&mut rng, &cfg, SubstKind::Random, &tree_bunches(&t));
        let x = std::iter::repeat_with(|| gen_rseq(&mut rng, 3)).find(|x| !x.is_empty()).unwrap();
        Some((t, s, x))
    }));
    candidates.take(budget).find(|(t, s, x)| {
        !x.is_empty()
            && check(t, System::B).valid
            && apply_rseq_to_tree(s, x, t).is_ok_and(|image| !check(&image, System::B).valid)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deriv::check;

    #[test]
    fn single_node_budget_gives_an_identity() {
        let cfg = GenConfig {
            max_rule_nodes: 1,
            ..GenConfig::default()
        };
        for seed in 0..20 {
            let t = gen_derivation(&cfg.with_seed(seed));
            assert_eq!(t.rule(), Some(RuleName::Id));
            assert!(check(&t, System::B).valid);
        }
    }

    #[test]
    fn generated_trees_check() {
        for system in [System::B, System::R] {
            let cfg = GenConfig {
                system,
                ..GenConfig::default()
            };
            for seed in 0..200 {
                let t = gen_derivation(&cfg.with_seed(seed));
                let report = check(&t, system);
                assert!(report.valid, "seed {seed}: {report}\n{t}");
                assert!(report.open_leaves.is_empty());
                assert!(t.rule_count() <= cfg.max_rule_nodes);
            }
        }
    }

    #[test]
    fn same_seed_same_output() {
        let cfg = GenConfig::default().with_seed(42);
        assert_eq!(gen_derivation(&cfg), gen_derivation(&cfg));
        let companion = tree_bunches(&gen_derivation(&cfg));
        assert_eq!(
            gen_depth_substitution_seeded(&cfg, SubstKind::Random, &companion),
            gen_depth_substitution_seeded(&cfg, SubstKind::Random, &companion)
        );
    }

    #[test]
    fn substitution_kinds() {
        let cfg = GenConfig::default();
        let b: Bunch = "p1 ; p1".parse().unwrap();
        assert_eq!(
            gen_depth_substitution_seeded(&cfg, SubstKind::Empty, std::slice::from_ref(&b)),
            DepthSubstitution::identity()
        );
        let d = gen_depth_substitution_seeded(&cfg, SubstKind::FreshInjective, &[b]);
        let images: Vec<&Formula> = d.table().values().collect();
        assert_eq!(images.len(), 2);
        assert_ne!(images[0], images[1]);
    }

    #[test]
    fn counterexample_search() {
        assert!(find_strong_rseq_counterexample(0).is_none());
        let (t, s, x) = find_strong_rseq_counterexample(1).unwrap();
        assert_eq!(t, modus_ponens_witness());
        assert!(!x.is_empty());
        let image = apply_rseq_to_tree(&s, &x, &t).unwrap();
        assert!(!check(&image, System::B).valid);
    }
}
