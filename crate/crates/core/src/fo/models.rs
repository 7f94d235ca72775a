use std::collections::BTreeMap;

use thiserror::Error;

use super::{Formula, Quantifier, Signature, Term};
use crate::vocab::SymbolKind;

/// Largest interpretation space [`enumerate_models`] will walk.
pub const MAX_INTERPRETATIONS: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("interpretation space too large ({0} > {MAX_INTERPRETATIONS})")]
    TooLarge(u128),
    #[error("domain size must be between 1 and 4, got {0}")]
    DomainSize(usize),
    #[error("symbol `{0}` is not in the signature")]
    UnknownSymbol(String),
}

struct Table {
    offset: usize,
    arity: usize,
}

enum CTerm {
    Var(usize),
    Cell(usize, Vec<CTerm>),
}

enum CFormula {
    True,
    False,
    Atom(usize, Vec<CTerm>),
    Eq(CTerm, CTerm),
    Not(Box<CFormula>),
    And(Box<CFormula>, Box<CFormula>),
    Or(Box<CFormula>, Box<CFormula>),
    Implies(Box<CFormula>, Box<CFormula>),
    Iff(Box<CFormula>, Box<CFormula>),
    Quant(Quantifier, usize, Box<CFormula>),
}

struct Compiler<'a> {
    tables: &'a BTreeMap<String, Table>,
    scope: Vec<String>,
    slots: usize,
}

impl Compiler<'_> {
    fn table(&self, name: &str) -> Result<&Table, ModelError> {
        self.tables
            .get(name)
            .ok_or_else(|| ModelError::UnknownSymbol(name.to_string()))
    }

    fn slot(&self, var: &str) -> usize {
        self.scope.iter().rposition(|v| v == var).expect("closed formula")
    }

    fn term(&self, t: &Term) -> Result<CTerm, ModelError> {
        match t {
            Term::Var(v) => Ok(CTerm::Var(self.slot(v))),
            Term::Const(c) => Ok(CTerm::Cell(self.table(c)?.offset, Vec::new())),
            Term::App(f, args) => {
                let table = self.table(f)?;
                debug_assert_eq!(table.arity, args.len());
                let args = args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                Ok(CTerm::Cell(table.offset, args))
            }
        }
    }

    fn formula(&mut self, f: &Formula) -> Result<CFormula, ModelError> {
        let bin = |c: &mut Self, l: &Formula, r: &Formula| -> Result<_, ModelError> {
            Ok((Box::new(c.formula(l)?), Box::new(c.formula(r)?)))
        };
        Ok(match f {
            Formula::True => CFormula::True,
            Formula::False => CFormula::False,
            Formula::Atom(name, args) => {
                let table = self.table(name)?;
                let offset = table.offset;
                let args = args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                CFormula::Atom(offset, args)
            }
            Formula::Eq(l, r) => CFormula::Eq(self.term(l)?, self.term(r)?),
            Formula::Not(g) => CFormula::Not(Box::new(self.formula(g)?)),
            Formula::And(l, r) => {
                let (l, r) = bin(self, l, r)?;
                CFormula::And(l, r)
            }
            Formula::Or(l, r) => {
                let (l, r) = bin(self, l, r)?;
                CFormula::Or(l, r)
            }
            Formula::Implies(l, r) => {
                let (l, r) = bin(self, l, r)?;
                CFormula::Implies(l, r)
            }
            Formula::Iff(l, r) => {
                let (l, r) = bin(self, l, r)?;
                CFormula::Iff(l, r)
            }
            Formula::Quant(q, v, body) => {
                self.scope.push(v.clone());
                let slot = self.scope.len() - 1;
                self.slots = self.slots.max(self.scope.len());
                let body = self.formula(body);
                self.scope.pop();
                CFormula::Quant(*q, slot, Box::new(body?))
            }
        })
    }
}

struct Eval<'a> {
    cells: &'a [usize],
    n: usize,
    env: Vec<usize>,
}

impl Eval<'_> {
    fn index(&self, offset: usize, args: &[CTerm]) -> usize {
        let mut idx = 0;
        for a in args {
            idx = idx * self.n + self.term(a);
        }
        offset + idx
    }

    fn term(&self, t: &CTerm) -> usize {
        match t {
            CTerm::Var(s) => self.env[*s],
            CTerm::Cell(offset, args) => self.cells[self.index(*offset, args)],
        }
    }

    fn holds(&mut self, f: &CFormula) -> bool {
        match f {
            CFormula::True => true,
            CFormula::False => false,
            CFormula::Atom(offset, args) => self.cells[self.index(*offset, args)] == 1,
            CFormula::Eq(l, r) => self.term(l) == self.term(r),
            CFormula::Not(g) => !self.holds(g),
            CFormula::And(l, r) => self.holds(l) && self.holds(r),
            CFormula::Or(l, r) => self.holds(l) || self.holds(r),
            CFormula::Implies(l, r) => !self.holds(l) || self.holds(r),
            CFormula::Iff(l, r) => self.holds(l) == self.holds(r),
            CFormula::Quant(q, slot, body) => {
                let saved = self.env[*slot];
                let mut result = matches!(q, Quantifier::Forall);
                for d in 0..self.n {
                    self.env[*slot] = d;
                    if self.holds(body) != result {
                        result = !result;
                        break;
                    }
                }
                self.env[*slot] = saved;
                result
            }
        }
    }
}

/// Counts the interpretations of `signature` over the domain `{0..n-1}`
/// that satisfy `phi`. Free variables are read universally.
pub fn enumerate_models(
    signature: &Signature,
    phi: &Formula,
    domain_size: usize,
) -> Result<u64, ModelError> {
    let n = domain_size;
    if !(1..=4).contains(&n) {
        return Err(ModelError::DomainSize(n));
    }
    let mut tables = BTreeMap::new();
    let mut radices: Vec<usize> = Vec::new();
    let mut space: u128 = 1;
    for (name, kind) in signature {
        let (arity, radix) = match kind {
            SymbolKind::Proposition => (0, 2),
            SymbolKind::Relation(k) => (*k, 2),
            SymbolKind::Function(k) => (*k, n),
            SymbolKind::Constant => (0, n),
        };
        let cells = n.pow(arity as u32);
        tables.insert(name.clone(), Table { offset: radices.len(), arity });
        for _ in 0..cells {
            space = space.saturating_mul(radix as u128);
        }
        if space > MAX_INTERPRETATIONS {
            return Err(ModelError::TooLarge(space));
        }
        radices.extend(std::iter::repeat_n(radix, cells));
    }

    let mut closed = phi.clone();
    for v in phi.free_vars().into_iter().rev() {
        closed = Formula::forall(v, closed);
    }
    let mut compiler = Compiler {
        tables: &tables,
        scope: Vec::new(),
        slots: 0,
    };
    let compiled = compiler.formula(&closed)?;

    let mut cells = vec![0usize; radices.len()];
    let mut count = 0u64;
    let mut env = vec![0; compiler.slots];
    loop {
        let mut eval = Eval { cells: &cells, n, env };
        if eval.holds(&compiled) {
            count += 1;
        }
        env = eval.env;
        // odometer step
        let mut i = 0;
        loop {
            if i == cells.len() {
                return Ok(count);
            }
            cells[i] += 1;
            if cells[i] < radices[i] {
                break;
            }
            cells[i] = 0;
            i += 1;
        }
    }
}
