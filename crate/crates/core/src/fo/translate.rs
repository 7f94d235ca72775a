use std::collections::BTreeMap;

use thiserror::Error;

use super::{parse_fo_formula, Formula, FormulaError, Signature, Term};
use crate::spec::TaskSpec;
use crate::vocab::{Mapping, MappingEntry, Permutation, PotentialSymbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("student symbol `{0}` has no match in the solution space")]
    UnmappedSymbol(String),
    #[error("`{0}` is not canonical and has no translation template")]
    MissingTranslation(String),
    #[error("`{0}` is translated by a formula template and cannot appear inside a term")]
    TemplateInTerm(String),
    #[error("template for `{symbol}` expects {expected} arguments, found {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
}

/// A formula over the canonical signature with `#1..#k` standing for the
/// arguments of the translated symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslationTemplate {
    pub formula: Formula,
    pub arity: usize,
}

impl TranslationTemplate {
    /// Parses template text. The symbol's parameter names and `#i` markers
    /// are both accepted for the arguments.
    pub fn parse(
        text: &str,
        params: &[String],
        signature: &Signature,
    ) -> Result<Self, FormulaError> {
        let parsed = parse_fo_formula(text, signature)?;
        let sub: BTreeMap<String, Term> = params
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), Term::var(format!("#{}", i + 1))))
            .collect();
        Ok(TranslationTemplate {
            formula: parsed.substitute(&sub),
            arity: params.len(),
        })
    }

    /// Free variables that are not argument markers.
    pub fn stray_variables(&self) -> Vec<String> {
        self.formula
            .free_vars()
            .into_iter()
            .filter(|v| match v.strip_prefix('#').and_then(|n| n.parse::<usize>().ok()) {
                Some(i) => i == 0 || i > self.arity,
                None => true,
            })
            .collect()
    }

    pub fn instantiate(&self, args: &[Term]) -> Formula {
        let sub: BTreeMap<String, Term> = args
            .iter()
            .enumerate()
            .map(|(i, t)| (format!("#{}", i + 1), t.clone()))
            .collect();
        self.formula.substitute(&sub)
    }
}

struct Target<'a> {
    symbol: &'a PotentialSymbol,
    permutation: Permutation,
}

fn target<'a>(name: &str, entry: &MappingEntry, spec: &'a TaskSpec) -> Result<Target<'a>, TranslateError> {
    let matched = entry
        .matched
        .as_deref()
        .ok_or_else(|| TranslateError::UnmappedSymbol(name.to_string()))?;
    let symbol = spec
        .symbol(matched)
        .ok_or_else(|| TranslateError::UnmappedSymbol(name.to_string()))?;
    let arity = symbol.kind.arity();
    let permutation = entry
        .applied_permutation
        .clone()
        .unwrap_or_else(|| Permutation::identity(arity));
    Ok(Target { symbol, permutation })
}

fn reorder(t: &Target<'_>, args: Vec<Term>) -> Result<Vec<Term>, TranslateError> {
    if args.len() != t.symbol.kind.arity() || t.permutation.len() != args.len() {
        return Err(TranslateError::ArityMismatch {
            symbol: t.symbol.name.clone(),
            expected: t.symbol.kind.arity(),
            found: args.len(),
        });
    }
    Ok(t.permutation.apply(&args))
}

/// Rewrites one atom over a student symbol into the canonical vocabulary.
///
/// Arguments are reordered by the entry's permutation first; a canonical
/// match renames the atom, otherwise the template is instantiated.
pub fn translate_atom(
    name: &str,
    args: &[Term],
    entry: &MappingEntry,
    spec: &TaskSpec,
) -> Result<Formula, TranslateError> {
    let t = target(name, entry, spec)?;
    let args = reorder(&t, args.to_vec())?;
    match &t.symbol.translation {
        Some(template) => Ok(template.instantiate(&args)),
        None if t.symbol.canonical => Ok(Formula::Atom(t.symbol.name.clone(), args)),
        None => Err(TranslateError::MissingTranslation(t.symbol.name.clone())),
    }
}

/// Translates a formula over the student vocabulary of `mapping` into the
/// canonical vocabulary of `spec`.
pub fn translate_formula(
    phi: &Formula,
    mapping: &Mapping,
    spec: &TaskSpec,
) -> Result<Formula, TranslateError> {
    let tr = Translator { mapping, spec };
    tr.formula(phi)
}

struct Translator<'a> {
    mapping: &'a Mapping,
    spec: &'a TaskSpec,
}

impl Translator<'_> {
    fn entry(&self, name: &str) -> Result<&MappingEntry, TranslateError> {
        self.mapping
            .entry(name)
            .ok_or_else(|| TranslateError::UnmappedSymbol(name.to_string()))
    }

    fn term(&self, term: &Term) -> Result<Term, TranslateError> {
        match term {
            Term::Var(_) => Ok(term.clone()),
            Term::Const(c) => {
                let t = target(c, self.entry(c)?, self.spec)?;
                self.renamed(&t)?;
                Ok(Term::Const(t.symbol.name.clone()))
            }
            Term::App(f, args) => {
                let t = target(f, self.entry(f)?, self.spec)?;
                self.renamed(&t)?;
                let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                Ok(Term::App(t.symbol.name.clone(), reorder(&t, args)?))
            }
        }
    }

    fn renamed(&self, t: &Target<'_>) -> Result<(), TranslateError> {
        match (&t.symbol.translation, t.symbol.canonical) {
            (None, true) => Ok(()),
            (Some(_), _) => Err(TranslateError::TemplateInTerm(t.symbol.name.clone())),
            (None, false) => Err(TranslateError::MissingTranslation(t.symbol.name.clone())),
        }
    }

    fn formula(&self, phi: &Formula) -> Result<Formula, TranslateError> {
        Ok(match phi {
            Formula::True | Formula::False => phi.clone(),
            Formula::Atom(name, args) => {
                let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                translate_atom(name, &args, self.entry(name)?, self.spec)?
            }
            Formula::Eq(l, r) => Formula::Eq(self.term(l)?, self.term(r)?),
            Formula::Not(f) => Formula::not(self.formula(f)?),
            Formula::And(l, r) => Formula::and(self.formula(l)?, self.formula(r)?),
            Formula::Or(l, r) => Formula::or(self.formula(l)?, self.formula(r)?),
            Formula::Implies(l, r) => Formula::implies(self.formula(l)?, self.formula(r)?),
            Formula::Iff(l, r) => Formula::iff(self.formula(l)?, self.formula(r)?),
            Formula::Quant(q, v, body) => Formula::Quant(*q, v.clone(), Box::new(self.formula(body)?)),
        })
    }
}
