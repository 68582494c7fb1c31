//! The object language: atoms, formulas, bunches, consecutions, and paths
//! addressing occurrences inside them.
//!
//! Concrete syntax is ASCII. `~` is negation, `&` conjunction, `|`
//! disjunction, `->` the conditional and `*` fusion. Bunches combine with
//! `,` (extensional) and `;` (intensional) and a consecution is written
//! `X |- A`. Every binary operator needs its own pair of parentheses except
//! at the outermost level.

use std::collections::BTreeSet;
use std::fmt;
use std::num::NonZeroU32;
use std::sync::Arc;

use thiserror::Error;

/// A propositional variable.
///
/// `p<k>` atoms carry their index; any other identifier is a named atom.
/// Indexed atoms sort before named ones, and by index among themselves.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Atom {
    Indexed(NonZeroU32),
    Named(Arc<str>),
}

impl Atom {
    /// `p<index>`. Panics on index 0.
    pub fn p(index: u32) -> Atom {
        Atom::Indexed(NonZeroU32::new(index).expect("atom indices start at 1"))
    }

    pub fn named(name: &str) -> Atom {
        match parse_indexed(name) {
            Some(Ok(index)) => Atom::Indexed(index),
            _ => Atom::Named(Arc::from(name)),
        }
    }

    pub fn index(&self) -> Option<u32> {
        match self {
            Atom::Indexed(i) => Some(i.get()),
            Atom::Named(_) => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Indexed(i) => write!(f, "p{i}"),
            Atom::Named(name) => f.write_str(name),
        }
    }
}

// `Some(Ok)` for a well-formed `p<digits>`, `Some(Err)` for `p0`, `None` otherwise.
fn parse_indexed(ident: &str) -> Option<Result<NonZeroU32, ()>> {
    let digits = ident.strip_prefix('p')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some(digits.parse::<u32>().ok().and_then(NonZeroU32::new).ok_or(()))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Atom(Atom),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Fusion(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(atom: Atom) -> Formula {
        Formula::Atom(atom)
    }

    pub fn p(index: u32) -> Formula {
        Formula::Atom(Atom::p(index))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn fusion(a: Formula, b: Formula) -> Formula {
        Formula::Fusion(Box::new(a), Box::new(b))
    }

    /// True when no fusion occurs anywhere in the formula.
    pub fn is_fusion_free(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Neg(a) => a.is_fusion_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_fusion_free() && b.is_fusion_free()
            }
            Formula::Fusion(..) => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Neg(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Fusion(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Neg(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Fusion(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn binary_parts(&self) -> Option<(&Formula, &'static str, &Formula)> {
        match self {
            Formula::And(a, b) => Some((a, "&", b)),
            Formula::Or(a, b) => Some((a, "|", b)),
            Formula::Imp(a, b) => Some((a, "->", b)),
            Formula::Fusion(a, b) => Some((a, "*", b)),
            _ => None,
        }
    }

    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.binary_parts().is_some() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl From<Atom> for Formula {
    fn from(atom: Atom) -> Self {
        Formula::Atom(atom)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p) => write!(f, "{p}"),
            Formula::Neg(a) => {
                f.write_str("~")?;
                a.fmt_inner(f)
            }
            _ => {
                let (a, op, b) = self.binary_parts().expect("binary connective");
                a.fmt_inner(f)?;
                write!(f, " {op} ")?;
                b.fmt_inner(f)
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Bunch {
    Leaf(Formula),
    Comma(Box<Bunch>, Box<Bunch>),
    Semi(Box<Bunch>, Box<Bunch>),
}

impl Bunch {
    pub fn leaf(a: Formula) -> Bunch {
        Bunch::Leaf(a)
    }

    pub fn comma(x: Bunch, y: Bunch) -> Bunch {
        Bunch::Comma(Box::new(x), Box::new(y))
    }

    pub fn semi(x: Bunch, y: Bunch) -> Bunch {
        Bunch::Semi(Box::new(x), Box::new(y))
    }

    pub fn as_formula(&self) -> Option<&Formula> {
        match self {
            Bunch::Leaf(a) => Some(a),
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Bunch::Leaf(a) => a.collect_vars(out),
            Bunch::Comma(x, y) | Bunch::Semi(x, y) => {
                x.collect_vars(out);
                y.collect_vars(out);
            }
        }
    }

    /// Number of formula leaves.
    pub fn leaf_count(&self) -> usize {
        match self {
            Bunch::Leaf(_) => 1,
            Bunch::Comma(x, y) | Bunch::Semi(x, y) => x.leaf_count() + y.leaf_count(),
        }
    }

    /// Every subbunch position, in preorder (root first, then left before
    /// right). These are exactly the paths accepted by [`replace_at`].
    pub fn subbunch_paths(&self) -> Vec<Path> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.collect_subbunch_paths(&mut prefix, &mut out);
        out
    }

    fn collect_subbunch_paths(&self, prefix: &mut Vec<u8>, out: &mut Vec<Path>) {
        out.push(Path(prefix.clone()));
        if let Bunch::Comma(x, y) | Bunch::Semi(x, y) = self {
            prefix.push(0);
            x.collect_subbunch_paths(prefix, out);
            prefix.pop();
            prefix.push(1);
            y.collect_subbunch_paths(prefix, out);
            prefix.pop();
        }
    }

    /// The subbunch at `path`, if the path only passes through bunch
    /// operators.
    pub fn subbunch(&self, path: &Path) -> Option<&Bunch> {
        let mut node = self;
        for &step in path.steps() {
            node = match (node, step) {
                (Bunch::Comma(x, _) | Bunch::Semi(x, _), 0) => x,
                (Bunch::Comma(_, y) | Bunch::Semi(_, y), 1) => y,
                _ => return None,
            };
        }
        Some(node)
    }

    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bunch::Leaf(a) => a.fmt_inner(f),
            _ => write!(f, "({self})"),
        }
    }
}

impl From<Formula> for Bunch {
    fn from(a: Formula) -> Self {
        Bunch::Leaf(a)
    }
}

impl fmt::Display for Bunch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bunch::Leaf(a) => write!(f, "{a}"),
            Bunch::Comma(x, y) => {
                x.fmt_inner(f)?;
                f.write_str(", ")?;
                y.fmt_inner(f)
            }
            Bunch::Semi(x, y) => {
                x.fmt_inner(f)?;
                f.write_str(" ; ")?;
                y.fmt_inner(f)
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Consecution {
    pub antecedent: Bunch,
    pub succedent: Formula,
}

impl Consecution {
    pub fn new(antecedent: Bunch, succedent: Formula) -> Self {
        Consecution {
            antecedent,
            succedent,
        }
    }

    /// `A |- A`.
    pub fn identity(a: Formula) -> Self {
        Consecution::new(Bunch::Leaf(a.clone()), a)
    }
}

impl fmt::Display for Consecution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.antecedent, self.succedent)
    }
}

/// A position inside a bunch or formula: child indices from the root, with
/// unary nodes using 0. A formula leaf and its formula share a position.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Path(Vec<u8>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn new(steps: Vec<u8>) -> Path {
        Path(steps)
    }

    pub fn steps(&self) -> &[u8] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, step: u8) -> Path {
        let mut steps = self.0.clone();
        steps.push(step);
        Path(steps)
    }

    pub fn parse(text: &str) -> Result<Path, ParseError> {
        let text = text.trim();
        if text.is_empty() || text == "." {
            return Ok(Path::root());
        }
        let mut steps = Vec::new();
        let mut offset = 0;
        for part in text.split('.') {
            match part {
                "0" => steps.push(0),
                "1" => steps.push(1),
                _ => {
                    return Err(ParseError::new(
                        offset,
                        format!("path steps must be 0 or 1, found {part:?}"),
                    ))
                }
            }
            offset += part.len() + 1;
        }
        Ok(Path(steps))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(".");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

/// A borrowed node of a parse tree: either a (non-leaf or leaf) bunch or a
/// formula strictly inside a leaf.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Node<'a> {
    Bunch(&'a Bunch),
    Formula(&'a Formula),
}

/// The kind of a parse-tree node, which decides how annotations propagate to
/// its children.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NodeKind {
    Atom,
    Neg,
    And,
    Or,
    Imp,
    Fusion,
    Comma,
    Semi,
}

impl<'a> Node<'a> {
    pub fn kind(&self) -> NodeKind {
        match self.as_formula() {
            Some(Formula::Atom(_)) => NodeKind::Atom,
            Some(Formula::Neg(_)) => NodeKind::Neg,
            Some(Formula::And(..)) => NodeKind::And,
            Some(Formula::Or(..)) => NodeKind::Or,
            Some(Formula::Imp(..)) => NodeKind::Imp,
            Some(Formula::Fusion(..)) => NodeKind::Fusion,
            None => match self {
                Node::Bunch(Bunch::Comma(..)) => NodeKind::Comma,
                Node::Bunch(Bunch::Semi(..)) => NodeKind::Semi,
                _ => unreachable!("leaf bunches always expose a formula"),
            },
        }
    }

    /// The formula at this node, looking through a leaf bunch.
    pub fn as_formula(&self) -> Option<&'a Formula> {
        match *self {
            Node::Bunch(Bunch::Leaf(a)) => Some(a),
            Node::Bunch(_) => None,
            Node::Formula(a) => Some(a),
        }
    }

    pub fn children(&self) -> Vec<Node<'a>> {
        if let Some(a) = self.as_formula() {
            return match a {
                Formula::Atom(_) => vec![],
                Formula::Neg(x) => vec![Node::Formula(x)],
                Formula::And(x, y)
                | Formula::Or(x, y)
                | Formula::Imp(x, y)
                | Formula::Fusion(x, y) => vec![Node::Formula(x), Node::Formula(y)],
            };
        }
        match *self {
            Node::Bunch(Bunch::Comma(x, y) | Bunch::Semi(x, y)) => {
                vec![Node::Bunch(x), Node::Bunch(y)]
            }
            _ => unreachable!(),
        }
    }

    pub fn child(&self, step: u8) -> Option<Node<'a>> {
        self.children().get(step as usize).copied()
    }
}

impl fmt::Display for Node<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Bunch(b) => write!(f, "{b}"),
            Node::Formula(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("path {path} does not address a node (step {step} has no such child)")]
    NoSuchChild { path: Path, step: usize },
    #[error("path {0} does not address a subbunch position")]
    NotSubbunch(Path),
}

/// The node addressed by `path` in `b`.
pub fn subterm_at<'a>(b: &'a Bunch, path: &Path) -> Result<Node<'a>, PathError> {
    let mut node = Node::Bunch(b);
    for (i, &step) in path.steps().iter().enumerate() {
        node = node.child(step).ok_or_else(|| PathError::NoSuchChild {
            path: path.clone(),
            step: i,
        })?;
    }
    Ok(node)
}

/// `b` with the subbunch occurrence at `path` replaced by `new`.
pub fn replace_at(b: &Bunch, path: &Path, new: Bunch) -> Result<Bunch, PathError> {
    fn go(b: &Bunch, steps: &[u8], new: Bunch, path: &Path) -> Result<Bunch, PathError> {
        let Some((&step, rest)) = steps.split_first() else {
            return Ok(new);
        };
        match (b, step) {
            (Bunch::Comma(x, y), 0) => Ok(Bunch::comma(go(x, rest, new, path)?, (**y).clone())),
            (Bunch::Comma(x, y), 1) => Ok(Bunch::comma((**x).clone(), go(y, rest, new, path)?)),
            (Bunch::Semi(x, y), 0) => Ok(Bunch::semi(go(x, rest, new, path)?, (**y).clone())),
            (Bunch::Semi(x, y), 1) => Ok(Bunch::semi((**x).clone(), go(y, rest, new, path)?)),
            _ => Err(PathError::NotSubbunch(path.clone())),
        }
    }
    go(b, path.steps(), new, path)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum BinOp {
    And,
    Or,
    Imp,
    Fusion,
    Comma,
    Semi,
}

impl BinOp {
    fn is_bunch_op(self) -> bool {
        matches!(self, BinOp::Comma | BinOp::Semi)
    }

    fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Imp => "->",
            BinOp::Fusion => "*",
            BinOp::Comma => ",",
            BinOp::Semi => ";",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    LParen,
    RParen,
    Tilde,
    Op(BinOp),
    Turnstile,
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b if b.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'~' => Token::Tilde,
            b'&' => Token::Op(BinOp::And),
            b'*' => Token::Op(BinOp::Fusion),
            b',' => Token::Op(BinOp::Comma),
            b';' => Token::Op(BinOp::Semi),
            b'|' if bytes.get(i + 1) == Some(&b'-') => {
                i += 1;
                Token::Turnstile
            }
            b'|' => Token::Op(BinOp::Or),
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Op(BinOp::Imp)
            }
            b if b.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_alphanumeric() {
                    i += 1;
                }
                Token::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::new(i, format!("unexpected character {ch:?}")));
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

// Either side of the formula/bunch boundary.
enum Item {
    Formula(Formula),
    Bunch(Bunch),
}

impl Item {
    fn into_bunch(self) -> Bunch {
        match self {
            Item::Formula(a) => Bunch::Leaf(a),
            Item::Bunch(b) => b,
        }
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: tokenize(text)?,
            pos: 0,
            len: text.len(),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        tok
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.offset(), message)
    }

    fn operand(&mut self) -> Result<Item, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Token::Ident(name)) => match parse_indexed(&name) {
                Some(Err(())) => Err(ParseError::new(at, "atom indices start at p1")),
                Some(Ok(i)) => Ok(Item::Formula(Formula::Atom(Atom::Indexed(i)))),
                None => Ok(Item::Formula(Formula::Atom(Atom::Named(Arc::from(name))))),
            },
            Some(Token::Tilde) => match self.operand()? {
                Item::Formula(a) => Ok(Item::Formula(Formula::neg(a))),
                Item::Bunch(_) => Err(ParseError::new(at, "negation applied to a bunch")),
            },
            Some(Token::LParen) => {
                let item = self.binary()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(item),
                    _ => Err(ParseError::new(at, "unbalanced parenthesis")),
                }
            }
            Some(Token::RParen) => Err(ParseError::new(at, "unexpected ')'")),
            Some(Token::Op(op)) => Err(ParseError::new(
                at,
                format!("expected an operand, found '{}'", op.symbol()),
            )),
            Some(Token::Turnstile) => Err(ParseError::new(at, "expected an operand, found '|-'")),
            None => Err(ParseError::new(at, "unexpected end of input")),
        }
    }

    // operand [op operand], without chaining.
    fn binary(&mut self) -> Result<Item, ParseError> {
        let lhs = self.operand()?;
        let Some(Token::Op(op)) = self.peek().cloned() else {
            return Ok(lhs);
        };
        let op_at = self.offset();
        self.pos += 1;
        let rhs = self.operand()?;
        if let Some(Token::Op(next)) = self.peek() {
            return Err(self.error(format!(
                "'{}' after '{}' needs explicit parentheses",
                next.symbol(),
                op.symbol()
            )));
        }
        if op.is_bunch_op() {
            let (x, y) = (lhs.into_bunch(), rhs.into_bunch());
            return Ok(Item::Bunch(match op {
                BinOp::Comma => Bunch::comma(x, y),
                _ => Bunch::semi(x, y),
            }));
        }
        let (Item::Formula(a), Item::Formula(b)) = (lhs, rhs) else {
            return Err(ParseError::new(
                op_at,
                format!("connective '{}' applied to a bunch", op.symbol()),
            ));
        };
        Ok(Item::Formula(match op {
            BinOp::And => Formula::and(a, b),
            BinOp::Or => Formula::or(a, b),
            BinOp::Imp => Formula::imp(a, b),
            _ => Formula::fusion(a, b),
        }))
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(Token::RParen) => Err(self.error("unbalanced parenthesis")),
            Some(_) => Err(self.error("trailing input")),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let item = p.binary()?;
    p.expect_end()?;
    match item {
        Item::Formula(a) => Ok(a),
        Item::Bunch(_) => Err(ParseError::new(
            0,
            "bunch operator inside a formula (',' and ';' are not connectives)",
        )),
    }
}

pub fn parse_bunch(text: &str) -> Result<Bunch, ParseError> {
    let mut p = Parser::new(text)?;
    let item = p.binary()?;
    p.expect_end()?;
    Ok(item.into_bunch())
}

pub fn parse_consecution(text: &str) -> Result<Consecution, ParseError> {
    let mut p = Parser::new(text)?;
    let antecedent = p.binary()?.into_bunch();
    match p.bump() {
        Some(Token::Turnstile) => {}
        _ => {
            p.pos -= 1;
            return Err(p.error("expected '|-'"));
        }
    }
    let succ_at = p.offset();
    let succedent = match p.binary()? {
        Item::Formula(a) => a,
        Item::Bunch(_) => {
            return Err(ParseError::new(
                succ_at,
                "the succedent of a consecution must be a formula",
            ))
        }
    };
    p.expect_end()?;
    Ok(Consecution::new(antecedent, succedent))
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl std::str::FromStr for Bunch {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_bunch(s)
    }
}

impl std::str::FromStr for Consecution {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_consecution(s)
    }
}
