//! S-expression files for proof trees.
//!
//! ```text
//! tree := (id "<formula>")
//!       | (leaf "<consecution>")
//!       | (rule <name> <tree>* (concl "<consecution>") [(hole "<path>")])
//! ```
//! `;;` starts a comment that runs to the end of the line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::syntax::{parse_consecution, parse_formula, Bunch, Consecution, Path};

use super::{ProofTree, RuleName};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct SexprError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug)]
enum Sexp {
    List(Vec<Sexp>, usize),
    Sym(String, usize),
    Str(String, usize),
}

impl Sexp {
    fn pos(&self) -> usize {
        match self {
            Sexp::List(_, p) | Sexp::Sym(_, p) | Sexp::Str(_, p) => *p,
        }
    }
}

struct Reader<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn err(&self, pos: usize, message: impl Into<String>) -> SexprError {
        let before = &self.text[..pos.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        SexprError {
            line,
            col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_blank(&mut self) -> Result<(), SexprError> {
        loop {
            let rest = &self.text[self.pos..];
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with(";;") {
                self.pos += trimmed.find('\n').unwrap_or(trimmed.len());
            } else if trimmed.starts_with(';') {
                return Err(self.err(self.pos, "single `;` outside a string (comments start with `;;`)"));
            } else {
                return Ok(());
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, SexprError> {
        self.skip_blank()?;
        let start = self.pos;
        match self.peek() {
            None => Err(self.err(start, "unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_blank()?;
                    match self.peek() {
                        Some(')') => {
                            self.pos += 1;
                            return Ok(Sexp::List(items, start));
                        }
                        None => return Err(self.err(start, "unclosed `(`")),
                        _ => items.push(self.read()?),
                    }
                }
            }
            Some(')') => Err(self.err(start, "unexpected `)`")),
            Some('"') => {
                self.pos += 1;
                let mut out = String::new();
                let mut chars = self.text[self.pos..].char_indices();
                while let Some((i, ch)) = chars.next() {
                    match ch {
                        '"' => {
                            self.pos += i + 1;
                            return Ok(Sexp::Str(out, start));
                        }
                        '\\' => match chars.next() {
                            Some((_, c @ ('"' | '\\'))) => out.push(c),
                            _ => return Err(self.err(self.pos + i, "bad escape in string")),
                        },
                        c => out.push(c),
                    }
                }
                Err(self.err(start, "unterminated string"))
            }
            Some(_) => {
                let rest = &self.text[self.pos..];
                let len = rest
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')' || c == '"' || c == ';')
                    .unwrap_or(rest.len());
                self.pos += len;
                Ok(Sexp::Sym(rest[..len].to_string(), start))
            }
        }
    }
}

fn tagged<'s>(s: &'s Sexp, tag: &str) -> Option<&'s [Sexp]> {
    match s {
        Sexp::List(items, _) => match items.first() {
            Some(Sexp::Sym(t, _)) if t == tag => Some(&items[1..]),
            _ => None,
        },
        _ => None,
    }
}

fn single_string<'s>(r: &Reader, s: &'s Sexp, args: &'s [Sexp], tag: &str) -> Result<&'s str, SexprError> {
    match args {
        [Sexp::Str(text, _)] => Ok(text),
        _ => Err(r.err(s.pos(), format!("`{tag}` takes exactly one string"))),
    }
}

fn consecution(r: &Reader, s: &Sexp, text: &str) -> Result<Consecution, SexprError> {
    parse_consecution(text).map_err(|e| r.err(s.pos(), format!("in {text:?}: {e}")))
}

fn tree(r: &Reader, s: &Sexp) -> Result<ProofTree, SexprError> {
    if let Some(args) = tagged(s, "id") {
        let text = single_string(r, s, args, "id")?;
        let a = parse_formula(text).map_err(|e| r.err(s.pos(), format!("in {text:?}: {e}")))?;
        return Ok(ProofTree::id(a));
    }
    if let Some(args) = tagged(s, "leaf") {
        let text = single_string(r, s, args, "leaf")?;
        return Ok(ProofTree::Leaf(consecution(r, s, text)?));
    }
    let Some(args) = tagged(s, "rule") else {
        return Err(r.err(s.pos(), "expected `(id ...)`, `(leaf ...)` or `(rule ...)`"));
    };
    let rule = match args.first() {
        Some(Sexp::Sym(name, pos)) => {
            RuleName::from_name(name).ok_or_else(|| r.err(*pos, format!("unknown rule {name:?}")))?
        }
        _ => return Err(r.err(s.pos(), "`rule` needs a rule name")),
    };
    let mut premises = Vec::new();
    let mut conclusion = None;
    let mut hole = None;
    for item in &args[1..] {
        if let Some(a) = tagged(item, "concl") {
            if conclusion.is_some() {
                return Err(r.err(item.pos(), "duplicate `concl`"));
            }
            conclusion = Some(consecution(r, item, single_string(r, item, a, "concl")?)?);
        } else if let Some(a) = tagged(item, "hole") {
            let text = single_string(r, item, a, "hole")?;
            hole = Some(Path::parse(text).map_err(|e| r.err(item.pos(), e.to_string()))?);
        } else if conclusion.is_some() {
            return Err(r.err(item.pos(), "premises must come before `concl`"));
        } else {
            premises.push(tree(r, item)?);
        }
    }
    let conclusion = conclusion.ok_or_else(|| r.err(s.pos(), "`rule` needs a `(concl ...)`"))?;
    Ok(ProofTree::Node {
        rule,
        premises,
        conclusion,
        hole,
    })
}

pub fn parse_tree(text: &str) -> Result<ProofTree, SexprError> {
    let mut r = Reader { text, pos: 0 };
    let s = r.read()?;
    r.skip_blank()?;
    if r.pos < text.len() {
        return Err(r.err(r.pos, "trailing input after the tree"));
    }
    tree(&r, &s)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render_tree(t: &ProofTree) -> String {
    fn go(t: &ProofTree, indent: usize, out: &mut String) {
        let pad = " ".repeat(indent);
        match t {
            ProofTree::Leaf(c) => {
                let _ = write!(out, "{pad}(leaf {})", quote(&c.to_string()));
            }
            ProofTree::Node {
                rule: RuleName::Id,
                premises,
                conclusion,
                hole: None,
            } if premises.is_empty() && matches!(&conclusion.antecedent, Bunch::Leaf(a) if *a == conclusion.succedent) => {
                let _ = write!(out, "{pad}(id {})", quote(&conclusion.succedent.to_string()));
            }
            ProofTree::Node {
                rule,
                premises,
                conclusion,
                hole,
            } => {
                let _ = write!(out, "{pad}(rule {rule}");
                for p in premises {
                    out.push('\n');
                    go(p, indent + 2, out);
                }
                let _ = write!(out, "\n{pad}  (concl {})", quote(&conclusion.to_string()));
                if let Some(h) = hole {
                    let _ = write!(out, "\n{pad}  (hole {})", quote(&h.to_string()));
                }
                out.push(')');
            }
        }
    }
    let mut out = String::new();
    go(t, 0, &mut out);
    out
}
