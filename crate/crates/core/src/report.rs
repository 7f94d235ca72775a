//! Binary and multi-class evaluation reports in exact rational arithmetic.

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::vocab::{Category, Polarity};

pub type Rational = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("empty dataset")]
    EmptyDataset,
    #[error("inconsistent counts: {0}")]
    Inconsistent(String),
}

/// A ratio of counts; an empty denominator is read as vacuously 100%.
fn ratio(num: u64, den: u64) -> Rational {
    if den == 0 {
        Rational::from_integer(1)
    } else {
        Rational::new(num, den)
    }
}

/// Percentage with two decimals, rounding half up.
pub fn percent(r: Rational) -> String {
    let num = *r.numer() as u128;
    let den = *r.denom() as u128;
    let hundredths = (2 * 10_000 * num + den) / (2 * den);
    format!("{}.{:02}%", hundredths / 100, hundredths % 100)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryReport {
    pub n: u64,
    pub n_pos: u64,
    pub n_neg: u64,
    pub correct: Rational,
    pub false_pos: Rational,
    pub false_neg: Rational,
    /// P[positive | labelled positive].
    pub p_pos_given_pos: Rational,
    /// P[negative | labelled negative].
    pub p_neg_given_neg: Rational,
}

impl BinaryReport {
    /// Builds a report from label totals and error counts.
    pub fn from_counts(
        n_pos: u64,
        n_neg: u64,
        false_pos: u64,
        false_neg: u64,
    ) -> Result<Self, ReportError> {
        let n = n_pos + n_neg;
        if n == 0 {
            return Err(ReportError::EmptyDataset);
        }
        if false_pos > n_neg || false_neg > n_pos {
            return Err(ReportError::Inconsistent(format!(
                "{false_pos} false positives of {n_neg} negatives, {false_neg} false negatives of {n_pos} positives"
            )));
        }
        Ok(BinaryReport {
            n,
            n_pos,
            n_neg,
            correct: Rational::new(n - false_pos - false_neg, n),
            false_pos: Rational::new(false_pos, n),
            false_neg: Rational::new(false_neg, n),
            p_pos_given_pos: ratio(n_pos - false_neg, n_pos),
            p_neg_given_neg: ratio(n_neg - false_pos, n_neg),
        })
    }

    fn columns(&self) -> [(&'static str, Rational); 5] {
        [
            ("correct", self.correct),
            ("false-pos.", self.false_pos),
            ("false-neg.", self.false_neg),
            ("P[pos|pos]", self.p_pos_given_pos),
            ("P[neg|neg]", self.p_neg_given_neg),
        ]
    }
}

/// Binary report over `(label, predicted polarity)` rows.
pub fn binary_report(rows: &[(Category, Polarity)]) -> Result<BinaryReport, ReportError> {
    let (mut n_pos, mut n_neg, mut fp, mut fneg) = (0, 0, 0, 0);
    for &(label, predicted) in rows {
        match (label.polarity(), predicted) {
            (Polarity::Positive, Polarity::Negative) => {
                n_pos += 1;
                fneg += 1;
            }
            (Polarity::Positive, Polarity::Positive) => n_pos += 1,
            (Polarity::Negative, Polarity::Positive) => {
                n_neg += 1;
                fp += 1;
            }
            (Polarity::Negative, Polarity::Negative) => n_neg += 1,
        }
    }
    BinaryReport::from_counts(n_pos, n_neg, fp, fneg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MulticlassReport {
    pub n: u64,
    pub n_pos: u64,
    pub n_neg: u64,
    pub correct: Rational,
    /// Predicted a strictly better category than the label.
    pub too_high: Rational,
    /// Predicted a strictly worse category than the label.
    pub too_low: Rational,
    pub p_pos_given_pos: Rational,
    pub p_neg_given_neg: Rational,
}

impl MulticlassReport {
    fn columns(&self) -> [(&'static str, Rational); 5] {
        [
            ("correct", self.correct),
            ("too-high", self.too_high),
            ("too-low", self.too_low),
            ("P[pos|pos]", self.p_pos_given_pos),
            ("P[neg|neg]", self.p_neg_given_neg),
        ]
    }
}

/// Multi-class report over `(label, predicted category)` rows.
pub fn multiclass_report(rows: &[(Category, Category)]) -> Result<MulticlassReport, ReportError> {
    if rows.is_empty() {
        return Err(ReportError::EmptyDataset);
    }
    let n = rows.len() as u64;
    let (mut correct, mut high, mut low) = (0, 0, 0);
    let (mut n_pos, mut n_neg, mut pos_ok, mut neg_ok) = (0, 0, 0, 0);
    for &(label, predicted) in rows {
        match predicted.rank().cmp(&label.rank()) {
            std::cmp::Ordering::Equal => correct += 1,
            std::cmp::Ordering::Less => high += 1,
            std::cmp::Ordering::Greater => low += 1,
        }
        if label.is_positive() {
            n_pos += 1;
            pos_ok += u64::from(predicted.is_positive());
        } else {
            n_neg += 1;
            neg_ok += u64::from(!predicted.is_positive());
        }
    }
    Ok(MulticlassReport {
        n,
        n_pos,
        n_neg,
        correct: Rational::new(correct, n),
        too_high: Rational::new(high, n),
        too_low: Rational::new(low, n),
        p_pos_given_pos: ratio(pos_ok, n_pos),
        p_neg_given_neg: ratio(neg_ok, n_neg),
    })
}

fn write_table(
    f: &mut fmt::Formatter<'_>,
    title: &str,
    n: u64,
    columns: &[(&str, Rational)],
) -> fmt::Result {
    writeln!(f, "{title} (n = {n})")?;
    let header: Vec<String> = columns.iter().map(|(h, _)| format!("{h:>11}")).collect();
    writeln!(f, "{}", header.join(" |"))?;
    let values: Vec<String> = columns
        .iter()
        .map(|(_, v)| format!("{:>11}", percent(*v)))
        .collect();
    writeln!(f, "{}", values.join(" |"))
}

impl fmt::Display for BinaryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_table(f, "binary", self.n, &self.columns())
    }
}

impl fmt::Display for MulticlassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_table(f, "multi-class", self.n, &self.columns())
    }
}
