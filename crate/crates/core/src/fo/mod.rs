//! First-order terms and formulas with a small concrete syntax.
//!
//! Connectives are shared with [`crate::condition`]; quantifiers are written
//! `forall x. φ` / `∀x. φ` (and `exists` / `∃`), extend as far right as
//! possible, and may bind several variables (`∀x, y. φ`). `=` is equality,
//! `true`/`⊤` and `false`/`⊥` are the constants.
//!
//! An identifier followed by `(` must be a declared relation or function.
//! A bare identifier is a bound variable if a quantifier binds it, otherwise
//! a declared constant or proposition, otherwise a free variable.

mod models;
mod translate;

pub use models::{enumerate_models, ModelError, MAX_INTERPRETATIONS};
pub use translate::{translate_atom, translate_formula, TranslateError, TranslationTemplate};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::vocab::SymbolKind;

/// Symbol names with their kinds.
pub type Signature = BTreeMap<String, SymbolKind>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("`{symbol}` expects {expected} arguments, found {found}")]
    ArityError {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("`{symbol}` is a {kind} and cannot be used as a {used_as}")]
    KindError {
        symbol: String,
        kind: &'static str,
        used_as: &'static str,
    },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.free_vars(out)),
        }
    }

    /// Constant and function names occurring in the term.
    pub fn symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(_) => {}
            Term::Const(c) => {
                out.insert(c.clone());
            }
            Term::App(f, args) => {
                out.insert(f.clone());
                args.iter().for_each(|a| a.symbols(out));
            }
        }
    }

    fn rename_var(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(v) if v == from => Term::Var(to.to_string()),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.rename_var(from, to)).collect())
            }
            other => other.clone(),
        }
    }

    fn substitute(&self, sub: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => sub.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.substitute(sub)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                write_list(f, args)?;
                f.write_str(")")
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    /// Relation or proposition applied to its arguments.
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Quant(Quantifier, String, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(name.into(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Quant(Quantifier::Forall, var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Quant(Quantifier::Exists, var.into(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(_, args) => args.iter().for_each(|a| a.free_vars(out)),
            Formula::Eq(l, r) => {
                l.free_vars(out);
                r.free_vars(out);
            }
            Formula::Not(f) => f.collect_free(out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_free(out);
                r.collect_free(out);
            }
            Formula::Quant(_, v, body) => {
                let mut inner = BTreeSet::new();
                body.collect_free(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Quant(_, v, _) => {
                out.insert(v.clone());
            }
            Formula::Atom(_, args) => args.iter().for_each(|a| a.free_vars(&mut out)),
            Formula::Eq(l, r) => {
                l.free_vars(&mut out);
                r.free_vars(&mut out);
            }
            _ => {}
        });
        out
    }

    /// Non-logical symbols: relations, propositions, functions and constants.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(name, args) => {
                out.insert(name.clone());
                args.iter().for_each(|a| a.symbols(&mut out));
            }
            Formula::Eq(l, r) => {
                l.symbols(&mut out);
                r.symbols(&mut out);
            }
            _ => {}
        });
        out
    }

    /// Quantifiers in pre-order.
    pub fn quantifiers(&self) -> Vec<Quantifier> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Quant(q, _, _) = f {
                out.push(*q);
            }
        });
        out
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.quantifiers().is_empty()
    }

    fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        match self {
            Formula::Not(g) | Formula::Quant(_, _, g) => g.visit(f),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.visit(f);
                r.visit(f);
            }
            _ => {}
        }
    }

    /// Capture-avoiding simultaneous substitution of free variables.
    pub fn substitute(&self, sub: &BTreeMap<String, Term>) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(n, args) => {
                Formula::Atom(n.clone(), args.iter().map(|a| a.substitute(sub)).collect())
            }
            Formula::Eq(l, r) => Formula::Eq(l.substitute(sub), r.substitute(sub)),
            Formula::Not(f) => Formula::not(f.substitute(sub)),
            Formula::And(l, r) => Formula::and(l.substitute(sub), r.substitute(sub)),
            Formula::Or(l, r) => Formula::or(l.substitute(sub), r.substitute(sub)),
            Formula::Implies(l, r) => Formula::implies(l.substitute(sub), r.substitute(sub)),
            Formula::Iff(l, r) => Formula::iff(l.substitute(sub), r.substitute(sub)),
            Formula::Quant(q, v, body) => {
                let mut inner = sub.clone();
                inner.remove(v);
                let body_free = body.free_vars();
                let mut incoming = BTreeSet::new();
                for (x, t) in &inner {
                    if body_free.contains(x) {
                        t.free_vars(&mut incoming);
                    }
                }
                if incoming.contains(v) {
                    let mut avoid = incoming;
                    avoid.extend(body.all_vars());
                    avoid.extend(inner.keys().cloned());
                    let fresh = fresh_var(v, &avoid);
                    let renamed = body.rename_free(v, &fresh);
                    Formula::Quant(*q, fresh, Box::new(renamed.substitute(&inner)))
                } else {
                    Formula::Quant(*q, v.clone(), Box::new(body.substitute(&inner)))
                }
            }
        }
    }

    fn rename_free(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(n, args) => {
                Formula::Atom(n.clone(), args.iter().map(|a| a.rename_var(from, to)).collect())
            }
            Formula::Eq(l, r) => Formula::Eq(l.rename_var(from, to), r.rename_var(from, to)),
            Formula::Not(f) => Formula::not(f.rename_free(from, to)),
            Formula::And(l, r) => Formula::and(l.rename_free(from, to), r.rename_free(from, to)),
            Formula::Or(l, r) => Formula::or(l.rename_free(from, to), r.rename_free(from, to)),
            Formula::Implies(l, r) => {
                Formula::implies(l.rename_free(from, to), r.rename_free(from, to))
            }
            Formula::Iff(l, r) => Formula::iff(l.rename_free(from, to), r.rename_free(from, to)),
            Formula::Quant(_, v, _) if v == from => self.clone(),
            Formula::Quant(q, v, body) => {
                Formula::Quant(*q, v.clone(), Box::new(body.rename_free(from, to)))
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Quant(..) => 0,
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            _ => 5,
        }
    }
}

/// A variable name derived from `base` that is not in `avoid`.
pub fn fresh_var(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '\'');
    let stem = if stem.is_empty() || stem.starts_with('#') { "z" } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|c| !avoid.contains(c))
        .expect("unbounded candidate supply")
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r, op, right_assoc) = match self {
            Formula::True => return f.write_str("⊤"),
            Formula::False => return f.write_str("⊥"),
            Formula::Atom(n, args) if args.is_empty() => return f.write_str(n),
            Formula::Atom(n, args) => {
                write!(f, "{n}(")?;
                write_list(f, args)?;
                return f.write_str(")");
            }
            Formula::Eq(l, r) => return write!(f, "{l} = {r}"),
            Formula::Not(g) => {
                return if g.precedence() < 5 {
                    write!(f, "¬({g})")
                } else {
                    write!(f, "¬{g}")
                };
            }
            Formula::Quant(q, v, body) => {
                let sym = match q {
                    Quantifier::Forall => "∀",
                    Quantifier::Exists => "∃",
                };
                return write!(f, "{sym}{v}. {body}");
            }
            Formula::And(l, r) => (l, r, "∧", false),
            Formula::Or(l, r) => (l, r, "∨", false),
            Formula::Implies(l, r) => (l, r, "→", true),
            Formula::Iff(l, r) => (l, r, "↔", false),
        };
        let p = self.precedence();
        let (lp, rp) = if right_assoc {
            (l.precedence() <= p, r.precedence() < p)
        } else {
            (l.precedence() < p, r.precedence() <= p)
        };
        if lp {
            write!(f, "({l})")?;
        } else {
            write!(f, "{l}")?;
        }
        write!(f, " {op} ")?;
        if rp {
            write!(f, "({r})")
        } else {
            write!(f, "{r}")
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Comma,
    Dot,
    Equals,
    Forall,
    Exists,
    True,
    False,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, FormulaError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        let next2 = chars.get(i + 2).map(|&(_, c)| c);
        let (tok, width) = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' | '¬' | '~' => (Tok::Not, 1),
            '∧' => (Tok::And, 1),
            '∨' => (Tok::Or, 1),
            '→' => (Tok::Implies, 1),
            '↔' => (Tok::Iff, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '.' => (Tok::Dot, 1),
            '=' => (Tok::Equals, 1),
            '∀' => (Tok::Forall, 1),
            '∃' => (Tok::Exists, 1),
            '⊤' => (Tok::True, 1),
            '⊥' => (Tok::False, 1),
            '&' if next == Some('&') => (Tok::And, 2),
            '|' if next == Some('|') => (Tok::Or, 2),
            '-' if next == Some('>') => (Tok::Implies, 2),
            '<' if next == Some('-') && next2 == Some('>') => (Tok::Iff, 3),
            c if c.is_alphabetic() || c == '_' || c == '#' => {
                let start = i;
                i += 1;
                while i < chars.len()
                    && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'')
                {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                let tok = match word.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                };
                out.push((pos, tok));
                continue;
            }
            _ => {
                return Err(FormulaError::Syntax {
                    position: pos,
                    expected: "term, connective or parenthesis".into(),
                })
            }
        };
        out.push((pos, tok));
        i += width;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    signature: &'a Signature,
    bound: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn error(&self, expected: &str) -> FormulaError {
        FormulaError::Syntax {
            position: self.toks.get(self.pos).map(|&(p, _)| p).unwrap_or(self.end),
            expected: expected.to_string(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), FormulaError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn iff(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.implies()?;
        while self.eat(&Tok::Iff) {
            lhs = Formula::iff(lhs, self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            return Ok(Formula::implies(lhs, self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => self.quantified(),
            _ => self.primary(),
        }
    }

    fn quantified(&mut self) -> Result<Formula, FormulaError> {
        let q = if self.eat(&Tok::Forall) {
            Quantifier::Forall
        } else {
            self.expect(&Tok::Exists, "quantifier")?;
            Quantifier::Exists
        };
        let mut vars = Vec::new();
        loop {
            match self.peek().cloned() {
                Some(Tok::Ident(v)) => {
                    self.pos += 1;
                    vars.push(v);
                }
                _ => return Err(self.error("variable")),
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.eat(&Tok::Dot);
        let depth = self.bound.len();
        self.bound.extend(vars.iter().cloned());
        let body = self.iff();
        self.bound.truncate(depth);
        let mut body = body?;
        for v in vars.into_iter().rev() {
            body = Formula::Quant(q, v, Box::new(body));
        }
        Ok(body)
    }

    fn is_bound(&self, name: &str) -> bool {
        self.bound.iter().any(|b| b == name)
    }

    fn primary(&mut self) -> Result<Formula, FormulaError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::True) => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Tok::Ident(name)) if !self.is_bound(&name) => {
                match self.signature.get(&name).copied() {
                    Some(SymbolKind::Relation(k)) => {
                        self.pos += 1;
                        let args = self.arguments(&name)?;
                        check_arity(&name, k, args.len())?;
                        Ok(Formula::Atom(name, args))
                    }
                    Some(SymbolKind::Proposition) => {
                        self.pos += 1;
                        if self.peek() == Some(&Tok::LParen) {
                            let args = self.arguments(&name)?;
                            check_arity(&name, 0, args.len())?;
                        }
                        Ok(Formula::Atom(name, Vec::new()))
                    }
                    _ => self.equation(),
                }
            }
            Some(Tok::Ident(_)) => self.equation(),
            _ => Err(self.error("formula")),
        }
    }

    fn equation(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.term()?;
        self.expect(&Tok::Equals, "`=`")?;
        let rhs = self.term()?;
        Ok(Formula::Eq(lhs, rhs))
    }

    fn arguments(&mut self, name: &str) -> Result<Vec<Term>, FormulaError> {
        if !self.eat(&Tok::LParen) {
            return Ok(Vec::new());
        }
        let mut args = Vec::new();
        if self.eat(&Tok::RParen) {
            return Err(FormulaError::ArityError {
                symbol: name.to_string(),
                expected: self.signature.get(name).map(|k| k.arity()).unwrap_or(1),
                found: 0,
            });
        }
        loop {
            args.push(self.term()?);
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.expect(&Tok::RParen, "`,` or `)`")?;
            return Ok(args);
        }
    }

    fn term(&mut self) -> Result<Term, FormulaError> {
        let name = match self.peek().cloned() {
            Some(Tok::Ident(n)) => n,
            _ => return Err(self.error("term")),
        };
        self.pos += 1;
        let has_args = self.peek() == Some(&Tok::LParen);
        if self.is_bound(&name) && !has_args {
            return Ok(Term::Var(name));
        }
        match self.signature.get(&name).copied() {
            Some(SymbolKind::Function(k)) => {
                let args = self.arguments(&name)?;
                check_arity(&name, k, args.len())?;
                Ok(Term::App(name, args))
            }
            Some(SymbolKind::Constant) => {
                if has_args {
                    let found = self.arguments(&name)?.len();
                    return Err(FormulaError::ArityError {
                        symbol: name,
                        expected: 0,
                        found,
                    });
                }
                Ok(Term::Const(name))
            }
            Some(kind @ (SymbolKind::Relation(_) | SymbolKind::Proposition)) => {
                Err(FormulaError::KindError {
                    symbol: name,
                    kind: kind.name(),
                    used_as: "term",
                })
            }
            None if has_args => Err(FormulaError::UnknownSymbol(name)),
            None => Ok(Term::Var(name)),
        }
    }
}

fn check_arity(name: &str, expected: usize, found: usize) -> Result<(), FormulaError> {
    if expected != found {
        return Err(FormulaError::ArityError {
            symbol: name.to_string(),
            expected,
            found,
        });
    }
    Ok(())
}

/// Parses `text` against `signature`.
pub fn parse_fo_formula(text: &str, signature: &Signature) -> Result<Formula, FormulaError> {
    let mut parser = Parser {
        toks: tokenize(text)?,
        pos: 0,
        end: text.len(),
        signature,
        bound: Vec::new(),
    };
    let f = parser.iff()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.error("end of input or connective"));
    }
    Ok(f)
}
