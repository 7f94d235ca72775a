mod common;

use std::collections::BTreeMap;

use vocab_bridge_core::fo::{
    enumerate_models, parse_fo_formula, translate_atom, translate_formula, Formula, Quantifier,
    Signature, Term, TranslateError,
};
use vocab_bridge_core::similarity::Scorer;
use vocab_bridge_core::vocab::{Mapping, MappingEntry};
use vocab_bridge_core::{map_attempt, Category, TaskSpec};

fn setup() -> (TaskSpec, Mapping, Signature) {
    let spec = common::task("book-collection");
    let attempt = common::attempt("book-formula-vocabulary");
    let mapping = map_attempt(&attempt, &spec, &Scorer::Lexical, &spec.thresholds).unwrap();
    let student: Signature = attempt.symbols.iter().map(|s| (s.name.clone(), s.kind)).collect();
    (spec, mapping, student)
}

/// Student symbols described by their translation over the canonical vocabulary.
const COUPLING: [(&str, &str); 3] = [
    ("P", "∀x (P(x) ↔ x = p)"),
    ("F", "∀x ∀y (F(x, y) ↔ x = f(y) ∧ B(y))"),
    ("G", "∀x ∀y (G(x, y) ↔ y = f(x) ∧ B(x))"),
];

fn fixture_formulas(student: &Signature) -> Vec<Formula> {
    let text = std::fs::read_to_string(common::fixtures().join("formulas/book-collection.txt")).unwrap();
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with("//"))
        .map(|l| parse_fo_formula(l, student).unwrap_or_else(|e| panic!("{l}: {e}")))
        .collect()
}

fn signature_of(formula: &Formula, all: &Signature) -> Signature {
    formula
        .symbols()
        .into_iter()
        .map(|s| {
            let kind = all[&s];
            (s, kind)
        })
        .collect()
}

#[test]
fn mapping_of_formula_vocabulary() {
    let (_, mapping, _) = setup();
    let matched = |n: &str| mapping.entry(n).unwrap().matched.clone().unwrap();
    assert_eq!(matched("P"), "P");
    assert_eq!(matched("F"), "F");
    assert_eq!(matched("G"), "F");
    assert_eq!(mapping.entry("G").unwrap().applied_permutation.as_ref().unwrap().positions(), &[2, 1]);
    assert!(mapping.entries.iter().all(|e| e.category == Category::C1));
}

#[test]
fn atom_examples() {
    let (spec, mapping, student) = setup();
    let canonical = spec.signature();
    let xy = [Term::var("x"), Term::var("y")];
    let cases = [
        ("P", &xy[..1], "x = p"),
        ("F", &xy[..], "x = f(y) ∧ B(y)"),
        ("G", &xy[..], "y = f(x) ∧ B(x)"),
        ("L", &xy[..1], "L(x)"),
    ];
    for (name, args, expected) in cases {
        let got = translate_atom(name, args, mapping.entry(name).unwrap(), &spec).unwrap();
        assert_eq!(got, parse_fo_formula(expected, &canonical).unwrap(), "{name}");
    }
    let phi = parse_fo_formula("∀x (P(x) → L(x))", &student).unwrap();
    assert_eq!(
        translate_formula(&phi, &mapping, &spec).unwrap(),
        parse_fo_formula("∀x (x = p → L(x))", &canonical).unwrap()
    );
    let phi = parse_fo_formula("∀x (B(x) → L(f(x)))", &student).unwrap();
    assert_eq!(translate_formula(&phi, &mapping, &spec).unwrap(), phi);
}

#[test]
fn translation_errors() {
    let (spec, mapping, _) = setup();
    let unmatched = Mapping {
        entries: vec![MappingEntry::unmatched("Q")],
    };
    let phi = Formula::atom("Q", vec![]);
    assert!(matches!(
        translate_formula(&phi, &unmatched, &spec),
        Err(TranslateError::UnmappedSymbol(_))
    ));
    // a templated symbol cannot be used as a term
    let mut entry = mapping.entry("p").unwrap().clone();
    entry.matched = Some("P".into());
    entry.applied_permutation = None;
    let bad = Mapping { entries: vec![entry] };
    let phi = Formula::Eq(Term::var("x"), Term::Const("p".into()));
    assert!(translate_formula(&phi, &bad, &spec).is_err());
}

#[test]
fn translation_soundness_on_fixture_formulas() {
    let (spec, mapping, student) = setup();
    let mut all = student.clone();
    all.extend(spec.signature());
    let coupling: BTreeMap<&str, Formula> = COUPLING
        .iter()
        .map(|(s, text)| (*s, parse_fo_formula(text, &all).unwrap()))
        .collect();
    let formulas = fixture_formulas(&student);
    assert_eq!(formulas.len(), 20);
    for phi in &formulas {
        let translated = translate_formula(phi, &mapping, &spec).unwrap();
        // quantifiers of phi are preserved; templates add none
        assert_eq!(phi.quantifiers(), translated.quantifiers());
        assert!(translated.symbols().iter().all(|s| spec.symbol(s).unwrap().canonical));

        let axioms = phi
            .symbols()
            .into_iter()
            .filter_map(|s| coupling.get(s.as_str()).cloned())
            .reduce(Formula::and)
            .unwrap_or(Formula::True);
        let original = Formula::and(axioms.clone(), phi.clone());
        let rewritten = Formula::and(axioms, translated.clone());
        let signature = signature_of(&Formula::and(original.clone(), rewritten.clone()), &all);
        let canonical_only = signature_of(&translated, &all);
        for n in 1..=3 {
            let a = enumerate_models(&signature, &original, n).unwrap();
            let b = enumerate_models(&signature, &rewritten, n).unwrap();
            assert_eq!(a, b, "{phi} vs {translated} at size {n}");
            // every student-only symbol is defined by its coupling axiom
            assert!(signature
                .keys()
                .filter(|k| !canonical_only.contains_key(*k))
                .all(|k| coupling.contains_key(k.as_str())));
            let c = enumerate_models(&canonical_only, &translated, n).unwrap();
            assert_eq!(a, c, "{phi} at size {n}");
        }
    }
}

#[test]
fn quantifier_counts() {
    let (_, _, student) = setup();
    let phi = parse_fo_formula("∀x ∃y G(x, y)", &student).unwrap();
    assert_eq!(phi.quantifiers(), vec![Quantifier::Forall, Quantifier::Exists]);
}
