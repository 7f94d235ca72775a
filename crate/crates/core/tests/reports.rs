mod common;

use proptest::prelude::*;
use serde::Deserialize;
use vocab_bridge_core::report::{
    binary_report, multiclass_report, percent, BinaryReport, Rational, ReportError,
};
use vocab_bridge_core::vocab::Polarity;
use vocab_bridge_core::Category;

#[derive(Deserialize)]
struct Counts {
    n: u64,
    n_pos: u64,
    n_neg: u64,
}

#[derive(Deserialize)]
struct Tables {
    counts: std::collections::BTreeMap<String, Counts>,
    binary: Vec<serde_json::Map<String, serde_json::Value>>,
    multiclass: Vec<serde_json::Map<String, serde_json::Value>>,
}

fn tables() -> Tables {
    let text = std::fs::read_to_string(common::fixtures().join("tables/evaluation.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// "92.90" as 9290 hundredths of a percent.
fn hundredths(row: &serde_json::Map<String, serde_json::Value>, key: &str) -> i64 {
    let text = row[key].as_str().unwrap();
    let (whole, frac) = text.split_once('.').unwrap();
    whole.parse::<i64>().unwrap() * 100 + frac.parse::<i64>().unwrap()
}

fn rendered(r: Rational) -> i64 {
    percent(r).trim_end_matches('%').replace('.', "").parse().unwrap()
}

fn count(pct: i64, n: u64) -> u64 {
    ((pct as u128 * n as u128 + 5_000) / 10_000) as u64
}

#[test]
fn table_rows_are_consistent() {
    let t = tables();
    for row in &t.binary {
        let c = &t.counts[row["logic"].as_str().unwrap()];
        let (correct, fp, fneg) = (
            hundredths(row, "correct"),
            hundredths(row, "false_pos"),
            hundredths(row, "false_neg"),
        );
        assert!((correct + fp + fneg - 10_000).abs() <= 1, "{row:?}");
        let r = BinaryReport::from_counts(c.n_pos, c.n_neg, count(fp, c.n), count(fneg, c.n)).unwrap();
        assert_eq!(r.correct + r.false_pos + r.false_neg, Rational::from_integer(1));
        assert!((rendered(r.correct) - correct).abs() <= 1, "{row:?}");
    }
    for row in &t.multiclass {
        let c = &t.counts[row["logic"].as_str().unwrap()];
        let (correct, high, low) = (
            hundredths(row, "correct"),
            hundredths(row, "too_high"),
            hundredths(row, "too_low"),
        );
        assert!((correct + high + low - 10_000).abs() <= 1, "{row:?}");
        let (h, l) = (count(high, c.n), count(low, c.n));
        let mut rows = vec![(Category::C2, Category::C1); h as usize];
        rows.extend(vec![(Category::C1, Category::C2); l as usize]);
        rows.extend(vec![(Category::C1, Category::C1); (c.n - h - l) as usize]);
        let r = multiclass_report(&rows).unwrap();
        assert_eq!(r.correct + r.too_high + r.too_low, Rational::from_integer(1));
        assert!((rendered(r.correct) - correct).abs() <= 1, "{row:?}");
    }
}

#[test]
fn conditional_ratio_is_recomputed_from_counts() {
    let t = tables();
    let c = &t.counts["propositional"];
    let row = &t.binary[0];
    let r = BinaryReport::from_counts(
        c.n_pos,
        c.n_neg,
        count(hundredths(row, "false_pos"), c.n),
        count(hundredths(row, "false_neg"), c.n),
    )
    .unwrap();
    assert!((rendered(r.p_pos_given_pos) - hundredths(row, "p_pos_given_pos")).abs() <= 5);
    assert_eq!(percent(r.p_pos_given_pos), "72.06%");
}

#[test]
fn all_negative_predictor_on_propositional_counts() {
    let rows: Vec<(Category, Polarity)> = std::iter::repeat_n((Category::C1, Polarity::Negative), 1879)
        .chain(std::iter::repeat_n((Category::C5, Polarity::Negative), 6050))
        .collect();
    let r = binary_report(&rows).unwrap();
    assert_eq!(percent(r.correct), "76.30%");
    assert_eq!(percent(r.false_pos), "0.00%");
    assert_eq!(percent(r.false_neg), "23.70%");
    assert_eq!(percent(r.p_pos_given_pos), "0.00%");
    assert_eq!(percent(r.p_neg_given_neg), "100.00%");
}

#[test]
fn empty_rows_are_errors() {
    assert_eq!(binary_report(&[]), Err(ReportError::EmptyDataset));
    assert_eq!(multiclass_report(&[]), Err(ReportError::EmptyDataset));
}

#[test]
fn display_contains_all_columns() {
    let r = binary_report(&[(Category::C1, Polarity::Positive), (Category::C4, Polarity::Positive)]).unwrap();
    let text = r.to_string();
    for col in ["correct", "false-pos.", "false-neg.", "P[pos|pos]", "P[neg|neg]", "50.00%"] {
        assert!(text.contains(col), "{text}");
    }
}

fn arb_category() -> impl Strategy<Value = Category> {
    prop::sample::select(Category::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn report_identities(rows in prop::collection::vec((arb_category(), arb_category()), 1..60)) {
        let one = Rational::from_integer(1);
        let m = multiclass_report(&rows).unwrap();
        prop_assert_eq!(m.correct + m.too_high + m.too_low, one);

        let collapsed: Vec<(Category, Polarity)> =
            rows.iter().map(|&(l, p)| (l, p.polarity())).collect();
        let b = binary_report(&collapsed).unwrap();
        prop_assert_eq!(b.correct + b.false_pos + b.false_neg, one);
        let n = Rational::from_integer(b.n);
        if b.n_pos > 0 {
            let n_pos = Rational::from_integer(b.n_pos);
            prop_assert_eq!(b.p_pos_given_pos, (n_pos - b.false_neg * n) / n_pos);
        }
        if b.n_neg > 0 {
            let n_neg = Rational::from_integer(b.n_neg);
            prop_assert_eq!(b.p_neg_given_neg, (n_neg - b.false_pos * n) / n_neg);
        }
        // collapse coherence
        prop_assert_eq!(b.n, m.n);
        prop_assert_eq!((b.n_pos, b.n_neg), (m.n_pos, m.n_neg));
        prop_assert_eq!(b.p_pos_given_pos, m.p_pos_given_pos);
        prop_assert_eq!(b.p_neg_given_neg, m.p_neg_given_neg);
    }
}
