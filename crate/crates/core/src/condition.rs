//! Boolean conditions over potential-symbol names.
//!
//! Grammar (loosest binding last):
//!
//! ```text
//! iff     := implies ( ("<->" | "↔") implies )*        left-assoc
//! implies := or ( ("->" | "→") implies )?              right-assoc
//! or      := and ( ("||" | "∨") and )*
//! and     := unary ( ("&&" | "∧") unary )*
//! unary   := ("!" | "¬") unary | ident | "(" iff ")"
//! ```

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolCondition {
    Var(String),
    Not(Box<BoolCondition>),
    And(Box<BoolCondition>, Box<BoolCondition>),
    Or(Box<BoolCondition>, Box<BoolCondition>),
    Implies(Box<BoolCondition>, Box<BoolCondition>),
    Iff(Box<BoolCondition>, Box<BoolCondition>),
}

impl BoolCondition {
    pub fn var(name: impl Into<String>) -> Self {
        BoolCondition::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: BoolCondition) -> Self {
        BoolCondition::Not(Box::new(c))
    }

    pub fn and(l: BoolCondition, r: BoolCondition) -> Self {
        BoolCondition::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: BoolCondition, r: BoolCondition) -> Self {
        BoolCondition::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: BoolCondition, r: BoolCondition) -> Self {
        BoolCondition::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: BoolCondition, r: BoolCondition) -> Self {
        BoolCondition::Iff(Box::new(l), Box::new(r))
    }

    /// Folds `items` into a left-nested conjunction. `None` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = BoolCondition>) -> Option<Self> {
        items.into_iter().reduce(BoolCondition::and)
    }

    pub fn disjunction(items: impl IntoIterator<Item = BoolCondition>) -> Option<Self> {
        items.into_iter().reduce(BoolCondition::or)
    }

    /// Top-level conjuncts, flattening nested `∧`.
    pub fn conjuncts(&self) -> Vec<&BoolCondition> {
        match self {
            BoolCondition::And(l, r) => {
                let mut out = l.conjuncts();
                out.extend(r.conjuncts());
                out
            }
            other => vec![other],
        }
    }

    /// All leaf names, sorted.
    pub fn symbols(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            BoolCondition::Var(n) => {
                out.insert(n);
            }
            BoolCondition::Not(c) => c.collect_symbols(out),
            BoolCondition::And(l, r)
            | BoolCondition::Or(l, r)
            | BoolCondition::Implies(l, r)
            | BoolCondition::Iff(l, r) => {
                l.collect_symbols(out);
                r.collect_symbols(out);
            }
        }
    }

    /// Evaluates under the assignment `name ↦ is_present(name)`.
    pub fn evaluate<F: Fn(&str) -> bool>(&self, is_present: &F) -> bool {
        match self {
            BoolCondition::Var(n) => is_present(n),
            BoolCondition::Not(c) => !c.evaluate(is_present),
            BoolCondition::And(l, r) => l.evaluate(is_present) && r.evaluate(is_present),
            BoolCondition::Or(l, r) => l.evaluate(is_present) || r.evaluate(is_present),
            BoolCondition::Implies(l, r) => !l.evaluate(is_present) || r.evaluate(is_present),
            BoolCondition::Iff(l, r) => l.evaluate(is_present) == r.evaluate(is_present),
        }
    }

    /// Fails with the first leaf not accepted by `declared`.
    pub fn check_symbols<F: Fn(&str) -> bool>(&self, declared: F) -> Result<(), ConditionError> {
        match self.symbols().into_iter().find(|s| !declared(s)) {
            Some(s) => Err(ConditionError::UnknownSymbol(s.to_string())),
            None => Ok(()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            BoolCondition::Iff(..) => 1,
            BoolCondition::Implies(..) => 2,
            BoolCondition::Or(..) => 3,
            BoolCondition::And(..) => 4,
            BoolCondition::Not(_) | BoolCondition::Var(_) => 5,
        }
    }
}

impl fmt::Display for BoolCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r, op, right_assoc) = match self {
            BoolCondition::Var(n) => return f.write_str(n),
            BoolCondition::Not(c) => {
                return if c.precedence() < 5 {
                    write!(f, "¬({c})")
                } else {
                    write!(f, "¬{c}")
                };
            }
            BoolCondition::And(l, r) => (l, r, "∧", false),
            BoolCondition::Or(l, r) => (l, r, "∨", false),
            BoolCondition::Implies(l, r) => (l, r, "→", true),
            BoolCondition::Iff(l, r) => (l, r, "↔", false),
        };
        let p = self.precedence();
        let (left_paren, right_paren) = if right_assoc {
            (l.precedence() <= p, r.precedence() < p)
        } else {
            (l.precedence() < p, r.precedence() <= p)
        };
        write_operand(f, l, left_paren)?;
        write!(f, " {op} ")?;
        write_operand(f, r, right_paren)
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, c: &BoolCondition, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({c})")
    } else {
        write!(f, "{c}")
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
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ConditionError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let syntax = |position: usize, expected: &str| ConditionError::Syntax {
        position,
        expected: expected.to_string(),
    };
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
            '&' if next == Some('&') => (Tok::And, 2),
            '|' if next == Some('|') => (Tok::Or, 2),
            '-' if next == Some('>') => (Tok::Implies, 2),
            '<' if next == Some('-') && next2 == Some('>') => (Tok::Iff, 3),
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i].1) {
                    i += 1;
                }
                let name: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Ident(name)));
                continue;
            }
            _ => return Err(syntax(pos, "identifier, connective or parenthesis")),
        };
        out.push((pos, tok));
        i += width;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.pos).map(|&(p, _)| p).unwrap_or(self.end)
    }

    fn error(&self, expected: &str) -> ConditionError {
        ConditionError::Syntax {
            position: self.position(),
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

    fn iff(&mut self) -> Result<BoolCondition, ConditionError> {
        let mut lhs = self.implies()?;
        while self.eat(&Tok::Iff) {
            lhs = BoolCondition::iff(lhs, self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<BoolCondition, ConditionError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            return Ok(BoolCondition::implies(lhs, self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<BoolCondition, ConditionError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            lhs = BoolCondition::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<BoolCondition, ConditionError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            lhs = BoolCondition::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<BoolCondition, ConditionError> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(BoolCondition::not(self.unary()?))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(BoolCondition::Var(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("`)`"));
                }
                Ok(inner)
            }
            _ => Err(self.error("identifier, negation or `(`")),
        }
    }
}

/// Parses a condition in the dialect documented at the module level.
pub fn parse_condition(text: &str) -> Result<BoolCondition, ConditionError> {
    let mut parser = Parser {
        toks: tokenize(text)?,
        pos: 0,
        end: text.len(),
    };
    let cond = parser.iff()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.error("end of input or connective"));
    }
    Ok(cond)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(n: &str) -> BoolCondition {
        BoolCondition::var(n)
    }

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_condition("B && A").unwrap(),
            BoolCondition::and(v("B"), v("A"))
        );
        let phi = parse_condition("B ∧ A ∧ M ∧ L ∧ R ∧ (f ∨ F) ∧ (p ∨ P)").unwrap();
        assert_eq!(phi.conjuncts().len(), 7);
        assert_eq!(phi.conjuncts()[5], &BoolCondition::or(v("f"), v("F")));
        assert_eq!(
            parse_condition("!(B && A)").unwrap(),
            BoolCondition::not(BoolCondition::and(v("B"), v("A")))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_condition("a || b && c").unwrap(),
            BoolCondition::or(v("a"), BoolCondition::and(v("b"), v("c")))
        );
        assert_eq!(
            parse_condition("a -> b -> c").unwrap(),
            BoolCondition::implies(v("a"), BoolCondition::implies(v("b"), v("c")))
        );
        assert_eq!(
            parse_condition("a <-> b -> c").unwrap(),
            BoolCondition::iff(v("a"), BoolCondition::implies(v("b"), v("c")))
        );
        assert_eq!(
            parse_condition("¬a ∧ b").unwrap(),
            BoolCondition::and(BoolCondition::not(v("a")), v("b"))
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert_eq!(
            parse_condition("B && "),
            Err(ConditionError::Syntax {
                position: 5,
                expected: "identifier, negation or `(`".into()
            })
        );
        assert!(matches!(
            parse_condition("(B"),
            Err(ConditionError::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            parse_condition("B C"),
            Err(ConditionError::Syntax { position: 2, .. })
        ));
        assert!(parse_condition("B & C").is_err());
    }

    #[test]
    fn evaluation() {
        let c = parse_condition("¬U").unwrap();
        assert!(c.evaluate(&|n| ["B", "D"].contains(&n)));
        let c = parse_condition("P ∧ ¬p").unwrap();
        assert!(c.evaluate(&|n| n == "P"));
        assert!(!c.evaluate(&|n| n == "P" || n == "p"));
    }

    #[test]
    fn unknown_symbols() {
        let c = parse_condition("B && X").unwrap();
        assert_eq!(
            c.check_symbols(|n| n == "B"),
            Err(ConditionError::UnknownSymbol("X".into()))
        );
    }

    fn arb_condition() -> impl Strategy<Value = BoolCondition> {
        let leaf = prop::sample::select(vec!["a", "b", "c", "D'"]).prop_map(BoolCondition::var);
        leaf.prop_recursive(6, 64, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(BoolCondition::not),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| BoolCondition::and(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| BoolCondition::or(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| BoolCondition::implies(l, r)),
                (inner.clone(), inner).prop_map(|(l, r)| BoolCondition::iff(l, r)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(c in arb_condition()) {
            let printed = c.to_string();
            prop_assert_eq!(parse_condition(&printed).unwrap(), c);
        }
    }
}
