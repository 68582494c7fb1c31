//! Sequences over `{l, r, λ, ρ, n}` and the five-rule reduction system
//!
//! ```text
//! lλ ⇝ ρ     rλ ⇝ ε     λr ⇝ ε     ρr ⇝ l     nn ⇝ ε
//! ```
//!
//! The system is terminating and confluent, so every sequence has exactly
//! one reduced form. [`red`] computes it with a single left-to-right stack
//! pass; [`oracle_red_all_orders`] explores every rewrite order and is kept
//! as an independent check.
//!
//! ASCII spelling: `l r L P n` for `l r λ ρ n`, and `e` for the empty
//! sequence.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    L,
    R,
    Lambda,
    Rho,
    N,
}

impl Letter {
    pub const ALL: [Letter; 5] = [Letter::L, Letter::R, Letter::Lambda, Letter::Rho, Letter::N];

    pub fn to_char(self) -> char {
        match self {
            Letter::L => 'l',
            Letter::R => 'r',
            Letter::Lambda => 'L',
            Letter::Rho => 'P',
            Letter::N => 'n',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        Some(match c {
            'l' => Letter::L,
            'r' => Letter::R,
            'L' => Letter::Lambda,
            'P' => Letter::Rho,
            'n' => Letter::N,
            _ => return None,
        })
    }
}

/// Result of the rule whose redex is `ab`, if any. `Some(None)` means the
/// redex is erased.
fn contract(a: Letter, b: Letter) -> Option<Option<Letter>> {
    use Letter::*;
    match (a, b) {
        (L, Lambda) => Some(Some(Rho)),
        (R, Lambda) => Some(None),
        (Lambda, R) => Some(None),
        (Rho, R) => Some(Some(L)),
        (N, N) => Some(None),
        _ => None,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("invalid sequence letter {0:?} (expected one of l r L P n, or e for empty)")]
    BadLetter(char),
    #[error("sequence {0} is not reduced")]
    NotReduced(Seq),
    #[error("sequence of length {len} exceeds the oracle limit {limit}")]
    LimitExceeded { len: usize, limit: usize },
}

/// An arbitrary, possibly reducible, sequence.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Seq(Vec<Letter>);

impl Seq {
    pub fn empty() -> Seq {
        Seq(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Seq {
        Seq(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &[Letter]) -> Seq {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Seq(v)
    }

    /// Every sequence of length exactly `len`, in lexicographic order.
    pub fn all_of_len(len: usize) -> impl Iterator<Item = Seq> {
        let total = 5usize.pow(len as u32);
        (0..total).map(move |mut code| {
            let mut v = vec![Letter::L; len];
            for slot in v.iter_mut().rev() {
                *slot = Letter::ALL[code % 5];
                code /= 5;
            }
            Seq(v)
        })
    }

    /// Every sequence of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = Seq> {
        (0..=max_len).flat_map(Seq::all_of_len)
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.0, f)
    }
}

fn fmt_letters(letters: &[Letter], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if letters.is_empty() {
        return f.write_str("e");
    }
    for l in letters {
        write!(f, "{}", l.to_char())?;
    }
    Ok(())
}

fn parse_letters(text: &str) -> Result<Vec<Letter>, SeqError> {
    let text = text.trim();
    if text == "e" || text.is_empty() {
        return Ok(Vec::new());
    }
    text.chars()
        .map(|c| Letter::from_char(c).ok_or(SeqError::BadLetter(c)))
        .collect()
}

impl FromStr for Seq {
    type Err = SeqError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_letters(s).map(Seq)
    }
}

impl From<RSeq> for Seq {
    fn from(r: RSeq) -> Self {
        Seq(r.0)
    }
}

/// A reduced sequence: contains none of `lλ`, `rλ`, `λr`, `ρr`, `nn`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RSeq(Vec<Letter>);

impl RSeq {
    pub fn empty() -> RSeq {
        RSeq(Vec::new())
    }

    pub fn new(seq: Seq) -> Result<RSeq, SeqError> {
        if is_reduced(&seq) {
            Ok(RSeq(seq.0))
        } else {
            Err(SeqError::NotReduced(seq))
        }
    }

    pub fn single(letter: Letter) -> RSeq {
        RSeq(vec![letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_seq(&self) -> Seq {
        Seq(self.0.clone())
    }

    /// `red(c · self)`.
    pub fn prepend(&self, c: Letter) -> RSeq {
        red_letters([c].iter().chain(self.0.iter()).copied())
    }

    /// `red(self · c)`.
    pub fn append(&self, c: Letter) -> RSeq {
        let mut stack = self.0.clone();
        push_reducing(&mut stack, c);
        RSeq(stack)
    }

    /// Every reduced sequence of length at most `max_len`.
    pub fn all_up_to(max_len: usize) -> Vec<RSeq> {
        Seq::all_up_to(max_len)
            .filter(is_reduced)
            .map(|s| RSeq(s.0))
            .collect()
    }
}

impl fmt::Display for RSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.0, f)
    }
}

impl FromStr for RSeq {
    type Err = SeqError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RSeq::new(s.parse()?)
    }
}

pub fn is_reduced(s: &Seq) -> bool {
    s.0.windows(2).all(|w| contract(w[0], w[1]).is_none())
}

/// All sequences reachable from `s` by exactly one rule application.
pub fn reduce_once(s: &Seq) -> BTreeSet<Seq> {
    let mut out = BTreeSet::new();
    for i in 0..s.0.len().saturating_sub(1) {
        if let Some(result) = contract(s.0[i], s.0[i + 1]) {
            let mut v = s.0[..i].to_vec();
            v.extend(result);
            v.extend_from_slice(&s.0[i + 2..]);
            out.insert(Seq(v));
        }
    }
    out
}

// Push onto a reduced stack, contracting at the top while a redex forms.
fn push_reducing(stack: &mut Vec<Letter>, mut c: Letter) {
    loop {
        match stack.last().and_then(|&top| contract(top, c)) {
            Some(Some(result)) => {
                stack.pop();
                c = result;
            }
            Some(None) => {
                stack.pop();
                return;
            }
            None => {
                stack.push(c);
                return;
            }
        }
    }
}

fn red_letters(letters: impl IntoIterator<Item = Letter>) -> RSeq {
    let mut stack = Vec::new();
    for c in letters {
        push_reducing(&mut stack, c);
    }
    RSeq(stack)
}

/// The unique reduced form of `s`, computed by always contracting the
/// leftmost redex.
pub fn red(s: &Seq) -> RSeq {
    red_letters(s.0.iter().copied())
}

/// `red(a · b)` for reduced `a`, `b`.
pub fn red_concat(a: &RSeq, b: &RSeq) -> RSeq {
    let mut stack = a.0.clone();
    for &c in &b.0 {
        push_reducing(&mut stack, c);
    }
    RSeq(stack)
}

/// `red` of an arbitrary letter slice.
pub fn red_slice(letters: &[Letter]) -> RSeq {
    red_letters(letters.iter().copied())
}

pub const DEFAULT_ORACLE_LIMIT: usize = 10;

/// Every reduced sequence reachable from `s` under any rewrite order, by
/// breadth-first closure under [`reduce_once`].
pub fn oracle_red_all_orders(s: &Seq, limit: usize) -> Result<BTreeSet<RSeq>, SeqError> {
    if s.len() > limit {
        return Err(SeqError::LimitExceeded {
            len: s.len(),
            limit,
        });
    }
    let mut seen = BTreeSet::new();
    let mut normal = BTreeSet::new();
    let mut queue = VecDeque::from([s.clone()]);
    seen.insert(s.clone());
    while let Some(cur) = queue.pop_front() {
        let next = reduce_once(&cur);
        if next.is_empty() {
            normal.insert(RSeq(cur.0));
            continue;
        }
        for t in next {
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    Ok(normal)
}

/// A letter or the empty sequence, as used in composite shifts.
pub type StarLetter = Option<Letter>;

/// A composite shift `x₁…xₙ ↦ y₁…yₙ` over the alphabet extended with ε,
/// applied pair by pair from left to right.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct ShiftSpec {
    pub pairs: Vec<(StarLetter, StarLetter)>,
}

impl ShiftSpec {
    pub fn new(pairs: Vec<(StarLetter, StarLetter)>) -> Self {
        ShiftSpec { pairs }
    }

    /// The single-letter pairs equivalent to one shift `ε ↦ y`.
    pub fn from_empty_to(target: &RSeq) -> Self {
        ShiftSpec {
            pairs: target.letters().iter().rev().map(|&c| (None, Some(c))).collect(),
        }
    }

    pub fn then(mut self, other: &ShiftSpec) -> Self {
        self.pairs.extend_from_slice(&other.pairs);
        self
    }
}

impl fmt::Display for ShiftSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = |c: &StarLetter| c.map_or('e', Letter::to_char);
        let src: String = self.pairs.iter().map(|(a, _)| letter(a)).collect();
        let dst: String = self.pairs.iter().map(|(_, b)| letter(b)).collect();
        if self.pairs.is_empty() {
            f.write_str("e* -> e*")
        } else {
            write!(f, "{src} -> {dst}")
        }
    }
}
