//! Depth substitutions and rseq-substitutions, their extension to bunches,
//! and the shifted substitutions `d_x` and `σ_{w̄↦ȳ}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::annotate::{atom_occurrences, Annotation};
use crate::seqred::{red_concat, red_slice, Letter, RSeq, Seq, SeqError, ShiftSpec};
use crate::syntax::{parse_formula, Atom, Bunch, Formula, Node, NodeKind, ParseError};

/// Anything that maps an (annotation, atom) pair to a formula.
pub trait Substitution<A: Annotation> {
    fn lookup(&self, ann: &A, atom: &Atom) -> Formula;

    fn apply_formula(&self, ann: &A, a: &Formula) -> Formula {
        match a {
            Formula::Atom(p) => self.lookup(ann, p),
            Formula::Neg(x) => Formula::neg(self.apply_formula(&ann.step(NodeKind::Neg, 0), x)),
            Formula::And(x, y) => Formula::and(
                self.apply_formula(&ann.step(NodeKind::And, 0), x),
                self.apply_formula(&ann.step(NodeKind::And, 1), y),
            ),
            Formula::Or(x, y) => Formula::or(
                self.apply_formula(&ann.step(NodeKind::Or, 0), x),
                self.apply_formula(&ann.step(NodeKind::Or, 1), y),
            ),
            Formula::Imp(x, y) => Formula::imp(
                self.apply_formula(&ann.step(NodeKind::Imp, 0), x),
                self.apply_formula(&ann.step(NodeKind::Imp, 1), y),
            ),
            Formula::Fusion(x, y) => Formula::fusion(
                self.apply_formula(&ann.step(NodeKind::Fusion, 0), x),
                self.apply_formula(&ann.step(NodeKind::Fusion, 1), y),
            ),
        }
    }

    fn apply_bunch(&self, ann: &A, b: &Bunch) -> Bunch {
        match b {
            Bunch::Leaf(a) => Bunch::Leaf(self.apply_formula(ann, a)),
            Bunch::Comma(x, y) => Bunch::comma(
                self.apply_bunch(&ann.step(NodeKind::Comma, 0), x),
                self.apply_bunch(&ann.step(NodeKind::Comma, 1), y),
            ),
            Bunch::Semi(x, y) => Bunch::semi(
                self.apply_bunch(&ann.step(NodeKind::Semi, 0), x),
                self.apply_bunch(&ann.step(NodeKind::Semi, 1), y),
            ),
        }
    }
}

/// A formula or a bunch; substitution preserves which one it is.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Term {
    Formula(Formula),
    Bunch(Bunch),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Formula(a) => write!(f, "{a}"),
            Term::Bunch(b) => write!(f, "{b}"),
        }
    }
}

/// `d : ℤ × At → 𝓛` with identity outside a finite table.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct DepthSubstitution {
    table: BTreeMap<(i64, Atom), Formula>,
}

impl DepthSubstitution {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_table(table: BTreeMap<(i64, Atom), Formula>) -> Self {
        DepthSubstitution { table }
    }

    pub fn insert(&mut self, depth: i64, atom: Atom, image: Formula) {
        self.table.insert((depth, atom), image);
    }

    pub fn table(&self) -> &BTreeMap<(i64, Atom), Formula> {
        &self.table
    }

    /// `d_x`, with `d_x^n(p) = d^{n+x}(p)`.
    pub fn shift(&self, x: i64) -> DepthSubstitution {
        DepthSubstitution {
            table: self
                .table
                .iter()
                .map(|((n, p), a)| ((n - x, p.clone()), a.clone()))
                .collect(),
        }
    }

    /// Parses lines of the form `<integer> <atom> := <formula>`.
    pub fn parse(text: &str) -> Result<Self, SubstFileError> {
        let mut sub = DepthSubstitution::identity();
        for (line_no, key, atom, image) in binding_lines(text)? {
            let depth = key.parse::<i64>().map_err(|_| SubstFileError::Line {
                line: line_no,
                message: format!("expected an integer depth, found {key:?}"),
            })?;
            sub.insert(depth, atom, image);
        }
        Ok(sub)
    }
}

impl Substitution<i64> for DepthSubstitution {
    fn lookup(&self, n: &i64, atom: &Atom) -> Formula {
        self.table
            .get(&(*n, atom.clone()))
            .cloned()
            .unwrap_or_else(|| Formula::Atom(atom.clone()))
    }
}

impl fmt::Display for DepthSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((n, p), a) in &self.table {
            writeln!(f, "{n} {p} := {a}")?;
        }
        Ok(())
    }
}

pub fn apply_depth_formula(d: &DepthSubstitution, n: i64, a: &Formula) -> Formula {
    d.apply_formula(&n, a)
}

pub fn apply_depth_bunch(d: &DepthSubstitution, n: i64, b: &Bunch) -> Bunch {
    d.apply_bunch(&n, b)
}

pub fn apply_depth(d: &DepthSubstitution, n: i64, t: &Term) -> Term {
    match t {
        Term::Formula(a) => Term::Formula(d.apply_formula(&n, a)),
        Term::Bunch(b) => Term::Bunch(d.apply_bunch(&n, b)),
    }
}

pub fn shift_depth(d: &DepthSubstitution, x: i64) -> DepthSubstitution {
    d.shift(x)
}

/// Finds some `z̄` with `red(z̄w̄) = x̄`, returned in reduced form.
///
/// By cancellation the reduced solution is unique when it exists. `w̄` is
/// peeled from the right: `λ`, `r` and `n` have right inverses (`rλ`, `λr`,
/// `nn` vanish), while a trailing `l` or `ρ` of `w̄` never reduces away and
/// must match the last letter of the target.
pub fn solve_prefix(x: &RSeq, w: &RSeq) -> Option<RSeq> {
    let mut target = x.clone();
    for &c in w.letters().iter().rev() {
        target = match c {
            Letter::Lambda => target.append(Letter::R),
            Letter::R => target.append(Letter::Lambda),
            Letter::N => target.append(Letter::N),
            Letter::L | Letter::Rho => {
                let letters = target.letters();
                if letters.last() != Some(&c) {
                    return None;
                }
                RSeq::new(Seq::new(letters[..letters.len() - 1].to_vec()))
                    .expect("prefix of a reduced sequence is reduced")
            }
        };
    }
    debug_assert_eq!(&red_concat(&target, w), x);
    Some(target)
}

/// Brute-force counterpart of [`solve_prefix`]: every `z̄` (reduced or not)
/// of length at most `|x̄| + |w̄| + 2` with `red(z̄w̄) = x̄`.
pub fn solve_bounded(x: &RSeq, w: &RSeq) -> Vec<Seq> {
    let bound = x.len() + w.len() + 2;
    Seq::all_up_to(bound)
        .filter(|z| red_slice(&[z.letters(), w.letters()].concat()) == *x)
        .collect()
}

#[derive(Debug)]
enum RseqInner {
    Table(BTreeMap<(RSeq, Atom), Formula>),
    Shift {
        base: RseqSubstitution,
        from: RSeq,
        to: RSeq,
    },
}

/// `σ : rseq × At → 𝓛`, either a finite table with identity default or a
/// shift `σ_{w̄↦ȳ}` of another substitution evaluated lazily.
#[derive(Clone, Debug)]
pub struct RseqSubstitution(Arc<RseqInner>);

impl Default for RseqSubstitution {
    fn default() -> Self {
        RseqSubstitution::identity()
    }
}

impl RseqSubstitution {
    pub fn identity() -> Self {
        Self::from_table(BTreeMap::new())
    }

    pub fn from_table(table: BTreeMap<(RSeq, Atom), Formula>) -> Self {
        RseqSubstitution(Arc::new(RseqInner::Table(table)))
    }

    /// `σ_{w̄↦ȳ}`.
    pub fn shift(&self, from: RSeq, to: RSeq) -> Self {
        RseqSubstitution(Arc::new(RseqInner::Shift {
            base: self.clone(),
            from,
            to,
        }))
    }

    /// Folds single-letter shifts left to right.
    pub fn shift_composite(&self, spec: &ShiftSpec) -> Self {
        spec.pairs.iter().fold(self.clone(), |acc, (w, y)| {
            let as_rseq = |c: &Option<Letter>| c.map_or_else(RSeq::empty, RSeq::single);
            acc.shift(as_rseq(w), as_rseq(y))
        })
    }

    /// The table at the bottom of the shift chain.
    pub fn base_table(&self) -> &BTreeMap<(RSeq, Atom), Formula> {
        match &*self.0 {
            RseqInner::Table(t) => t,
            RseqInner::Shift { base, .. } => base.base_table(),
        }
    }

    pub fn shift_depth(&self) -> usize {
        match &*self.0 {
            RseqInner::Table(_) => 0,
            RseqInner::Shift { base, .. } => 1 + base.shift_depth(),
        }
    }

    /// Parses lines of the form `<seq-literal> <atom> := <formula>`.
    pub fn parse(text: &str) -> Result<Self, SubstFileError> {
        let mut table = BTreeMap::new();
        for (line_no, key, atom, image) in binding_lines(text)? {
            let seq: RSeq = key.parse().map_err(|e: SeqError| SubstFileError::Line {
                line: line_no,
                message: e.to_string(),
            })?;
            table.insert((seq, atom), image);
        }
        Ok(Self::from_table(table))
    }
}

impl Substitution<RSeq> for RseqSubstitution {
    fn lookup(&self, x: &RSeq, atom: &Atom) -> Formula {
        match &*self.0 {
            RseqInner::Table(t) => t
                .get(&(x.clone(), atom.clone()))
                .cloned()
                .unwrap_or_else(|| Formula::Atom(atom.clone())),
            RseqInner::Shift { base, from, to } => match solve_prefix(x, from) {
                Some(z) => base.lookup(&red_concat(&z, to), atom),
                None => base.lookup(x, atom),
            },
        }
    }
}

impl fmt::Display for RseqSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            RseqInner::Table(t) => {
                for ((x, p), a) in t {
                    writeln!(f, "{x} {p} := {a}")?;
                }
                Ok(())
            }
            RseqInner::Shift { base, from, to } => {
                write!(f, "{base}")?;
                writeln!(f, "# shifted {from} -> {to}")
            }
        }
    }
}

pub fn apply_rseq_formula(s: &RseqSubstitution, x: &RSeq, a: &Formula) -> Formula {
    s.apply_formula(x, a)
}

pub fn apply_rseq_bunch(s: &RseqSubstitution, x: &RSeq, b: &Bunch) -> Bunch {
    s.apply_bunch(x, b)
}

pub fn apply_rseq(s: &RseqSubstitution, x: &RSeq, t: &Term) -> Term {
    match t {
        Term::Formula(a) => Term::Formula(s.apply_formula(x, a)),
        Term::Bunch(b) => Term::Bunch(s.apply_bunch(x, b)),
    }
}

pub fn shift_rseq(s: &RseqSubstitution, w: RSeq, y: RSeq) -> RseqSubstitution {
    s.shift(w, y)
}

pub fn shift_rseq_composite(s: &RseqSubstitution, spec: &ShiftSpec) -> RseqSubstitution {
    s.shift_composite(spec)
}

/// Fresh atoms `p_{m+1}, p_{m+2}, …` past the largest index in `inputs`, one
/// per distinct (annotation, atom) pair occurring there, in sorted order.
fn fresh_table<A: Annotation>(inputs: &[Bunch]) -> BTreeMap<(A, Atom), Formula> {
    let mut keys = std::collections::BTreeSet::new();
    let mut max_index = 0;
    for b in inputs {
        for (p, ann, _) in atom_occurrences::<A>(Node::Bunch(b)) {
            max_index = max_index.max(p.index().unwrap_or(0));
            keys.insert((ann, p));
        }
    }
    keys.into_iter()
        .enumerate()
        .map(|(i, key)| (key, Formula::p(max_index + 1 + i as u32)))
        .collect()
}

/// Atomic and injective on every (depth, atom) pair occurring in `inputs`.
pub fn fresh_injective_depth(inputs: &[Bunch]) -> DepthSubstitution {
    DepthSubstitution::from_table(fresh_table::<i64>(inputs))
}

/// Atomic and injective on every (sequence, atom) pair occurring in `inputs`.
pub fn fresh_injective_rseq(inputs: &[Bunch]) -> RseqSubstitution {
    RseqSubstitution::from_table(fresh_table::<RSeq>(inputs))
}

#[derive(Debug, Error)]
pub enum SubstFileError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
}

// (line number, key, atom, image) for every non-blank, non-comment line.
fn binding_lines(text: &str) -> Result<Vec<(usize, String, Atom, Formula)>, SubstFileError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (lhs, rhs) = line.split_once(":=").ok_or_else(|| SubstFileError::Line {
            line: line_no,
            message: "expected `<key> <atom> := <formula>`".into(),
        })?;
        let mut parts = lhs.split_whitespace();
        let (Some(key), Some(atom_text), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(SubstFileError::Line {
                line: line_no,
                message: "expected `<key> <atom>` before `:=`".into(),
            });
        };
        let atom = match parse_formula(atom_text) {
            Ok(Formula::Atom(p)) => p,
            _ => {
                return Err(SubstFileError::Line {
                    line: line_no,
                    message: format!("{atom_text:?} is not an atom"),
                })
            }
        };
        let image = parse_formula(rhs).map_err(|source| SubstFileError::Formula {
            line: line_no,
            source,
        })?;
        out.push((line_no, key.to_string(), atom, image));
    }
    Ok(out)
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

    fn r(text: &str) -> RSeq {
        text.parse().unwrap()
    }

    fn depth_sub(entries: &[(i64, &str, &str)]) -> DepthSubstitution {
        let mut d = DepthSubstitution::identity();
        for (n, p, a) in entries {
            d.insert(*n, Atom::named(p), f(a));
        }
        d
    }

    fn rseq_sub(entries: &[(&str, &str, &str)]) -> RseqSubstitution {
        RseqSubstitution::from_table(
            entries
                .iter()
                .map(|(x, p, a)| ((r(x), Atom::named(p)), f(a)))
                .collect(),
        )
    }

    #[test]
    fn depth_clauses() {
        let d = depth_sub(&[(1, "p", "q")]);
        assert_eq!(apply_depth_formula(&d, 0, &f("p -> p")), f("q -> q"));
        assert_eq!(apply_depth_formula(&d, 0, &f("p & p")), f("p & p"));
        let d = depth_sub(&[(-1, "p", "q")]);
        assert_eq!(apply_depth_bunch(&d, 0, &b("p ; p")), b("q ; p"));
        let d = depth_sub(&[(-1, "p", "q")]);
        assert_eq!(apply_depth_formula(&d, 0, &f("p * p")), f("q * p"));
    }

    #[test]
    fn depth_shift() {
        let d = depth_sub(&[(1, "p", "q")]);
        assert_eq!(apply_depth_formula(&d.shift(1), 0, &f("p")), f("q"));
        assert_eq!(d.shift(0), d);
        assert_eq!(d.shift(1).shift(-1), d);
    }

    #[test]
    fn rseq_clauses() {
        let s = rseq_sub(&[("P", "p", "p"), ("e", "p", "q")]);
        assert_eq!(apply_rseq_bunch(&s, &RSeq::empty(), &b("(p -> p) ; p")), b("(p -> q) ; p"));
        assert_eq!(apply_rseq_formula(&s, &RSeq::empty(), &f("p")), f("q"));

        let s = rseq_sub(&[("lr", "p", "s1"), ("lr", "q", "s2")]);
        assert_eq!(apply_rseq_formula(&s, &r("r"), &f("p & q")), f("p & q"));
        assert_eq!(apply_rseq_formula(&s, &r("lr"), &f("p & q")), f("s1 & s2"));

        let s = rseq_sub(&[("e", "p", "q")]);
        assert_eq!(apply_rseq_formula(&s, &RSeq::empty(), &f("~~p")), f("~~q"));
    }

    #[test]
    fn prefix_solver_examples() {
        // σ_{ε↦λ} at r: z̄ = r.
        assert_eq!(solve_prefix(&r("r"), &RSeq::empty()), Some(r("r")));
        // σ_{λ↦ε} at ρ: z̄ = l since lλ ⇝ ρ.
        assert_eq!(solve_prefix(&r("P"), &r("L")), Some(r("l")));
        // σ_{λ↦ε} at x̄λ: z̄ = x̄.
        assert_eq!(solve_prefix(&r("PnL"), &r("L")), Some(r("Pn")));
        assert_eq!(solve_prefix(&r("r"), &r("l")), None);
        assert_eq!(solve_prefix(&r("rl"), &r("l")), Some(r("r")));
    }

    #[test]
    fn shifted_lookups() {
        let base = rseq_sub(&[("e", "p", "a0"), ("l", "p", "a1"), ("Pn", "p", "a2")]);
        let p = Atom::named("p");

        let s = base.shift(RSeq::empty(), r("L"));
        assert_eq!(s.lookup(&r("r"), &p), f("a0"));

        let s = base.shift(r("L"), RSeq::empty());
        assert_eq!(s.lookup(&r("P"), &p), f("a1"));
        assert_eq!(s.lookup(&r("PnL"), &p), f("a2"));

        let s = base.shift(r("l"), r("n"));
        // no z̄ with z̄l ⇝ r, so the base value at r is used
        assert_eq!(s.lookup(&r("r"), &p), f("p"));
    }

    #[test]
    fn composite_shifts() {
        let base = rseq_sub(&[("e", "p", "a0"), ("L", "p", "a1")]);
        let p = Atom::named("p");
        let same = base.shift_composite(&ShiftSpec::default());
        assert_eq!(same.lookup(&RSeq::empty(), &p), f("a0"));

        let single = ShiftSpec::new(vec![(None, Some(Letter::Lambda))]);
        let s = base.shift_composite(&single);
        assert_eq!(s.lookup(&RSeq::empty(), &p), base.shift(RSeq::empty(), r("L")).lookup(&RSeq::empty(), &p));

        let cancel = ShiftSpec::new(vec![(None, Some(Letter::Lambda)), (Some(Letter::Lambda), None)]);
        let s = base.shift_composite(&cancel);
        assert_eq!(s.lookup(&RSeq::empty(), &p), f("a0"));
        assert_eq!(s.shift_depth(), 2);
    }

    #[test]
    fn fresh_injective_examples() {
        let d = fresh_injective_depth(&[b("p1 ; p1")]);
        let keys: Vec<_> = d.table().keys().cloned().collect();
        assert_eq!(keys, vec![(-1, Atom::p(1)), (0, Atom::p(1))]);
        assert_eq!(d.table()[&(-1, Atom::p(1))], Formula::p(2));
        assert_eq!(d.table()[&(0, Atom::p(1))], Formula::p(3));

        let s = fresh_injective_rseq(&[b("p1 -> p1")]);
        let table = s.base_table();
        assert_eq!(table.len(), 2);
        assert_ne!(table[&(r("l"), Atom::p(1))], table[&(r("r"), Atom::p(1))]);
        assert_eq!(
            apply_rseq_formula(&s, &RSeq::empty(), &f("p1 -> p1")),
            f("p2 -> p3")
        );
    }

    #[test]
    fn substitution_files() {
        let d = DepthSubstitution::parse("# depth\n1 p1 := p2 -> p3\n\n-2 q := ~q\n").unwrap();
        assert_eq!(d.table().len(), 2);
        assert_eq!(d.lookup(&-2, &Atom::named("q")), f("~q"));
        assert_eq!(DepthSubstitution::parse(&d.to_string()).unwrap(), d);

        let s = RseqSubstitution::parse("e p1 := p2\nlP p1 := p3\n").unwrap();
        assert_eq!(s.lookup(&r("lP"), &Atom::p(1)), f("p3"));
        assert!(RseqSubstitution::parse("lL p1 := p2").is_err());
        assert!(DepthSubstitution::parse("x p1 := p2").is_err());
        assert!(DepthSubstitution::parse("1 p1 = p2").is_err());
        assert!(DepthSubstitution::parse("1 p1 := p2 ;").is_err());
    }
}
