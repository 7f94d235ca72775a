mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use vocab_bridge_core::checker::{check_solution, evaluate_condition, Status, Verdict};
use vocab_bridge_core::condition::parse_condition;
use vocab_bridge_core::similarity::{Scorer, Thresholds};
use vocab_bridge_core::vocab::{signature_compatible, Permutation};
use vocab_bridge_core::{
    best_match, map_attempt, Attempt, Category, MatchError, StudentSymbol, SymbolKind, TaskSpec,
};

fn run(spec: &TaskSpec, attempt: &Attempt) -> Verdict {
    let scorer = Scorer::new(&spec.scorer);
    let mapping = map_attempt(attempt, spec, &scorer, &spec.thresholds).unwrap();
    check_solution(&mapping, spec)
}

fn prop(name: &str, description: &str) -> StudentSymbol {
    StudentSymbol::new(name, SymbolKind::Proposition, vec![], description).unwrap()
}

#[test]
fn book_collection_canonical_attempt_is_accepted() {
    let spec = common::task("book-collection");
    let v = run(&spec, &common::attempt("book-canonical"));
    assert_eq!(v.status, Status::Accepted, "{v:#?}");
    assert!(v.faults_fired.is_empty());
    assert!(v.suggestions_fired.is_empty());
    let mapping = v.canonical_mapping.unwrap();
    assert_eq!(mapping["Book"], "B");
    assert_eq!(mapping["writer"], "f");
    assert_eq!(mapping["pm"], "p");
}

#[test]
fn relation_instead_of_constant_gets_suggestion() {
    let spec = common::task("book-collection");
    let v = run(&spec, &common::attempt("book-relation-p"));
    assert_eq!(v.status, Status::Accepted);
    assert_eq!(v.suggestions_fired.len(), 1);
    assert!(v.suggestions_fired[0].starts_with("Instead of a relation, you could use a constant"));
}

#[test]
fn missing_author_fires_type_fault() {
    let spec = common::task("book-collection");
    let v = run(&spec, &common::attempt("book-missing-a"));
    assert_eq!(v.status, Status::RejectedPhase2);
    assert_eq!(v.faults_fired.len(), 1);
    assert!(v.faults_fired[0].starts_with("Think again about what types"));
    assert!(v.canonical_mapping.is_none());
}

#[test]
fn duplicate_book_is_rejected_as_multiset() {
    let spec = common::task("book-collection");
    let v = run(&spec, &common::attempt("book-duplicate-b"));
    assert_eq!(v.status, Status::RejectedPhase2);
    assert_eq!(v.duplicates.len(), 1);
    assert_eq!(v.duplicates[0].symbol, "B");
    assert_eq!(v.duplicates[0].students, vec!["Book", "Tome"]);
    assert!(v.diagnostics[0].contains("Book") && v.diagnostics[0].contains("Tome"));
}

#[test]
fn permuted_description_records_permutation() {
    let spec = common::task("book-collection");
    let s = StudentSymbol::new(
        "F",
        SymbolKind::Relation(2),
        vec!["a".into(), "b".into()],
        "book a was written by author b",
    )
    .unwrap();
    let e = best_match(&s, &spec, &Scorer::Lexical, &spec.thresholds).unwrap();
    assert_eq!(e.matched.as_deref(), Some("F"));
    assert!(e.category.is_positive());
    assert_eq!(e.matched_description, Some(1));
    assert_eq!(e.applied_permutation, Some(Permutation::new(vec![2, 1]).unwrap()));

    let v = run(&spec, &common::attempt("book-permuted-f"));
    assert_eq!(v.status, Status::Accepted);
    assert!(v.suggestions_fired[0].starts_with("Instead of a relation, you could use a function"));
}

#[test]
fn incompatible_signature_is_unmatched() {
    let spec = common::task("book-collection");
    let s = StudentSymbol::new(
        "T",
        SymbolKind::Relation(3),
        vec!["a".into(), "b".into(), "c".into()],
        "a b c",
    )
    .unwrap();
    let e = best_match(&s, &spec, &Scorer::Lexical, &spec.thresholds).unwrap();
    assert_eq!(e.matched, None);
    assert_eq!(e.category, Category::C5);
    assert_eq!(e.score, 0.0);
}

#[test]
fn grammar_scorer_matches_paraphrases() {
    let spec = common::task("software-system");
    let e = best_match(&prop("U", "the ui behaves properly"), &spec, &Scorer::Grammar, &spec.thresholds).unwrap();
    assert_eq!((e.matched.as_deref(), e.category), (Some("U"), Category::C1));
    let e = best_match(&prop("X", "The sun is shining"), &spec, &Scorer::Grammar, &spec.thresholds).unwrap();
    assert_eq!(e.category, Category::C5);
    // d* itself belongs to its own C1 grammar
    let e = best_match(&prop("B", "The backend works correctly"), &spec, &Scorer::Grammar, &spec.thresholds).unwrap();
    assert_eq!((e.matched.as_deref(), e.category), (Some("B"), Category::C1));
}

#[test]
fn software_system_feedback() {
    let spec = common::task("software-system");
    let v = run(&spec, &common::attempt("software-missing-u"));
    assert_eq!(v.status, Status::RejectedPhase2);
    assert_eq!(v.faults_fired.len(), 1);
    assert!(v.faults_fired[0].starts_with("Did you make sure that the statement"));
    assert!(v.faults_fired[0].contains("neither the database nor the user interface"));

    let v = run(&spec, &common::attempt("software-complete"));
    assert_eq!(v.status, Status::Accepted, "{v:#?}");

    let v = run(&spec, &common::attempt("software-vague"));
    assert_eq!(v.status, Status::RejectedPhase1);
    let s = v.per_symbol.iter().find(|s| s.name == "S").unwrap();
    assert_eq!(s.category, Category::C4);
    assert!(s.feedback.as_deref().unwrap().contains("S"));
    let x = v.per_symbol.iter().find(|s| s.name == "X").unwrap();
    assert_eq!(x.category, Category::C5);
    assert!(x.feedback.is_some());
    // every negative symbol is reported
    assert_eq!(v.per_symbol.iter().filter(|s| s.feedback.is_some()).count(), 2);
}

#[test]
fn lecture_paraphrases_are_accepted() {
    let spec = common::task("lecture-participation");
    let v = run(&spec, &common::attempt("lecture-paraphrase"));
    assert_eq!(v.status, Status::Accepted, "{v:#?}");
    assert!(v.suggestions_fired.is_empty());
    let matched: BTreeSet<&str> = v.per_symbol.iter().filter_map(|s| s.matched.as_deref()).collect();
    assert_eq!(matched, BTreeSet::from(["B", "K", "W"]));
    assert!(v.per_symbol.iter().all(|s| s.positive));
}

#[test]
fn two_backends_map_to_one_symbol() {
    let spec = common::task("software-system");
    let attempt = Attempt::new(vec![
        prop("B1", "the backend works"),
        prop("B2", "the back end is working properly"),
        prop("D", "the database works"),
        prop("U", "the ui works"),
    ])
    .unwrap();
    let v = run(&spec, &attempt);
    assert_eq!(v.status, Status::RejectedPhase2);
    assert_eq!(v.duplicates[0].symbol, "B");
}

#[test]
fn empty_attempt_is_an_error() {
    let spec = common::task("software-system");
    let attempt = Attempt { symbols: vec![] };
    assert!(matches!(
        map_attempt(&attempt, &spec, &Scorer::Grammar, &Thresholds::default()),
        Err(MatchError::Invalid(_))
    ));
}

#[test]
fn condition_examples() {
    let spec = common::task("book-collection");
    let present = |names: &[&str]| names.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    assert!(evaluate_condition(&spec.completeness, &present(&["B", "A", "M", "L", "R", "f", "p"])));
    assert!(!evaluate_condition(&spec.completeness, &present(&["B", "M", "L", "R", "f", "p"])));
    let not_u = parse_condition("¬U").unwrap();
    assert!(evaluate_condition(&not_u, &present(&["B", "D"])));
}

fn arb_description() -> impl Strategy<Value = String> {
    prop::sample::select(vec![
        "the backend works",
        "the backend works correctly",
        "the db is running",
        "the ui behaves properly",
        "the screen works",
        "the system works",
        "the sun is shining",
        "the database functions properly",
        "the data storage is up",
    ])
    .prop_map(str::to_string)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn engine_properties(descriptions in prop::collection::vec(arb_description(), 1..5), rotate in 0usize..5) {
        let spec = common::task("software-system");
        let symbols: Vec<StudentSymbol> = descriptions
            .iter()
            .enumerate()
            .map(|(i, d)| prop(&format!("S{i}"), d))
            .collect();
        let attempt = Attempt::new(symbols.clone()).unwrap();
        let scorer = Scorer::Grammar;
        let mapping = map_attempt(&attempt, &spec, &scorer, &spec.thresholds).unwrap();

        // per-symbol independence under reordering
        let mut rotated = symbols.clone();
        let k = rotate % rotated.len();
        rotated.rotate_left(k);
        let other = map_attempt(&Attempt::new(rotated).unwrap(), &spec, &scorer, &spec.thresholds).unwrap();
        for e in &mapping.entries {
            let o = other.entry(&e.student).unwrap();
            prop_assert_eq!((&e.matched, e.category, e.score), (&o.matched, o.category, o.score));
        }
        for (s, e) in symbols.iter().zip(&mapping.entries) {
            if let Some(m) = &e.matched {
                prop_assert!(signature_compatible(s, spec.symbol(m).unwrap()));
            }
        }

        let v = check_solution(&mapping, &spec);
        if v.status == Status::Accepted {
            prop_assert!(v.faults_fired.is_empty());
            prop_assert!(v.duplicates.is_empty());
            prop_assert!(v.per_symbol.iter().all(|s| s.positive));
            let present: BTreeSet<String> = v.canonical_mapping.unwrap().into_values().collect();
            prop_assert!(spec.solution_set().contains(&present));
        } else if v.status == Status::RejectedPhase2 && v.duplicates.is_empty() {
            let present: BTreeSet<String> = mapping.entries.iter().filter_map(|e| e.matched.clone()).collect();
            prop_assert!(!spec.solution_set().contains(&present) || !v.faults_fired.is_empty());
        }
    }
}
