mod common;

use std::collections::BTreeSet;

use vocab_bridge_core::spec::{Diagnostic, Logic, SpecError};
use vocab_bridge_core::vocab::Permutation;
use vocab_bridge_core::{parse_task_spec, validate_spec, SymbolKind};

fn set(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[test]
fn book_collection_parses() {
    let spec = common::task("book-collection");
    assert_eq!(spec.id, "book-collection");
    assert_eq!(spec.logic, Logic::FirstOrder);
    assert_eq!(spec.symbols.len(), 9);
    assert_eq!(spec.symbol("f").unwrap().kind, SymbolKind::Function(1));
    assert_eq!(spec.symbol("p").unwrap().kind, SymbolKind::Constant);
    assert_eq!(spec.symbol("R").unwrap().kind, SymbolKind::Relation(2));
    let f = spec.symbol("F").unwrap();
    assert_eq!(f.descriptions.len(), 2);
    assert_eq!(
        f.descriptions[1].effective_permutation(),
        Permutation::new(vec![2, 1]).unwrap()
    );
    assert_eq!(f.descriptions[1].canonical(), "book #1 was written by author #2.");
    assert!(!f.canonical);
    assert!(spec.symbol("B").unwrap().canonical);
    assert_eq!(spec.faults.len(), 3);
    assert!(spec.faults[0].text.starts_with("Think again about what types"));
    assert!(spec.faults[1].text.contains("The Principia Mathematica was written by a mathematician"));
    assert_eq!(spec.suggestions.len(), 2);
    assert_eq!(spec.redundancies, vec![vec!["F", "f"], vec!["P", "p"]]);
    assert_eq!(validate_spec(&spec), vec![]);
}

#[test]
fn book_collection_solution_sets() {
    let spec = common::task("book-collection");
    let all = spec.solution_set().enumerate().unwrap();
    // every superset combination of {f, F} x {p, P}
    assert_eq!(all.len(), 9);
    let minimal: BTreeSet<BTreeSet<String>> = spec
        .solution_set()
        .redundancy_free()
        .unwrap()
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect();
    let expected: BTreeSet<BTreeSet<String>> = [
        ["B", "A", "M", "L", "R", "f", "p"],
        ["B", "A", "M", "L", "R", "f", "P"],
        ["B", "A", "M", "L", "R", "F", "p"],
        ["B", "A", "M", "L", "R", "F", "P"],
    ]
    .iter()
    .map(|s| set(s))
    .collect();
    assert_eq!(minimal, expected);

    // membership agrees with the explicit list over all 2^9 subsets
    let names = spec.symbol_names();
    for mask in 0u32..(1 << names.len()) {
        let present: BTreeSet<String> = names
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, n)| n.to_string())
            .collect();
        let core = set(&["B", "A", "M", "L", "R"]);
        let explicit = core.is_subset(&present)
            && (present.contains("f") || present.contains("F"))
            && (present.contains("p") || present.contains("P"));
        assert_eq!(spec.solution_set().contains(&present), explicit, "{present:?}");
    }
}

#[test]
fn lecture_participation_parses() {
    let spec = common::task("lecture-participation");
    assert_eq!(spec.logic, Logic::Propositional);
    assert_eq!(spec.symbol_names(), vec!["B", "K", "W"]);
    assert_eq!(spec.completeness.to_string(), "B ∧ K ∧ W");
    assert!(spec.pending_grammars().is_empty());
    assert_eq!(spec.solution_set().enumerate().unwrap(), vec![vec!["B", "K", "W"]]);
    assert_eq!(validate_spec(&spec), vec![]);
}

const MINIMAL: &str = r#"<Task id="t" logic="propositional">
  <Symbols>
    <Proposition symbol="B"><Description>The backend works</Description></Proposition>
    SECOND
  </Symbols>
  <CompletenessCondition>COND</CompletenessCondition>
  REDUNDANCIES
</Task>"#;

fn minimal(second: &str, cond: &str, redundancies: &str) -> String {
    MINIMAL
        .replace("SECOND", second)
        .replace("COND", cond)
        .replace("REDUNDANCIES", redundancies)
}

#[test]
fn duplicate_symbols_are_rejected() {
    let doc = minimal(
        r#"<Proposition symbol="B"><Description>The backend runs</Description></Proposition>"#,
        "B",
        "",
    );
    assert!(matches!(parse_task_spec(&doc), Err(SpecError::DuplicateSymbol(n)) if n == "B"));
}

#[test]
fn validation_diagnostics() {
    let spec = parse_task_spec(&minimal("", "B ∧ ¬B", "")).unwrap();
    assert_eq!(validate_spec(&spec), vec![Diagnostic::Unsatisfiable]);

    let second = r#"<Proposition symbol="f"><Description>The frontend works</Description></Proposition>"#;
    let spec = parse_task_spec(&minimal(second, "B", "<Redundancies><Set>f</Set></Redundancies>")).unwrap();
    assert_eq!(
        validate_spec(&spec),
        vec![Diagnostic::RedundancySetTooSmall {
            members: vec!["f".into()]
        }]
    );

    let spec = parse_task_spec(&minimal(second, "B", "<Redundancies><Set>f,Q</Set></Redundancies>")).unwrap();
    assert_eq!(
        validate_spec(&spec),
        vec![Diagnostic::UnknownRedundancyMember { name: "Q".into() }]
    );
}

#[test]
fn unknown_condition_symbols_are_errors() {
    let err = parse_task_spec(&minimal("", "B ∧ Z", "")).unwrap_err();
    assert!(matches!(err, SpecError::Condition { .. }), "{err}");
}

#[test]
fn bad_permutations_and_arities() {
    let doc = r#"<Task id="t" logic="first-order">
      <Symbols>
        <Relation symbol="R" arity="2">
          <Description>u likes v</Description>
          <Description permutation="u,u">v is liked by u</Description>
        </Relation>
      </Symbols>
      <CompletenessCondition>R</CompletenessCondition>
    </Task>"#;
    assert!(matches!(
        parse_task_spec(doc),
        Err(SpecError::BadPermutation { description: 1, .. })
    ));
    let doc = r#"<Task id="t" logic="first-order">
      <Symbols><Relation symbol="R" arity="0"><Description>x</Description></Relation></Symbols>
      <CompletenessCondition>R</CompletenessCondition>
    </Task>"#;
    assert!(matches!(parse_task_spec(doc), Err(SpecError::ArityMismatch(_))));
    assert!(matches!(parse_task_spec("<Task"), Err(SpecError::Xml(_))));
}
