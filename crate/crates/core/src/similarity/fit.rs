use super::{Mode, ScoreResult, Scorer, SimilarityError, Thresholds};
use crate::dataset::LabeledPair;
use crate::spec::TaskSpec;
use crate::vocab::{Category, Polarity};

const LATTICE_STEP: f64 = 0.1;
const SIMPLEX_STEP: f64 = 0.05;
const MAX_ITERATIONS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub thresholds: Thresholds,
    pub correct: usize,
    pub total: usize,
    pub accuracy: f64,
}

/// Scores `pairs` and fits thresholds maximizing the number of correctly
/// classified pairs. Thresholds not involved in `mode` keep the values of
/// `base`.
pub fn fit_thresholds(
    pairs: &[LabeledPair],
    scorer: &Scorer,
    spec: Option<&TaskSpec>,
    mode: Mode,
    base: Thresholds,
) -> Result<FitResult, SimilarityError> {
    if pairs.is_empty() {
        return Err(SimilarityError::EmptyDataset);
    }
    let scores = scorer.score_pairs(spec, pairs)?;
    let scored: Vec<(ScoreResult, Category)> =
        scores.into_iter().zip(pairs.iter().map(|p| p.category)).collect();
    fit_thresholds_scored(&scored, mode, base)
}

/// Fits thresholds to already scored pairs labelled with categories.
pub fn fit_thresholds_scored(
    scored: &[(ScoreResult, Category)],
    mode: Mode,
    base: Thresholds,
) -> Result<FitResult, SimilarityError> {
    if scored.is_empty() {
        return Err(SimilarityError::EmptyDataset);
    }
    let total = scored.len();
    let (thresholds, correct) = match mode {
        Mode::Binary => {
            let objective = BinaryObjective::new(scored);
            let (t, correct) = objective.fit();
            (Thresholds { binary: t, ..base }, correct)
        }
        Mode::Multiclass => {
            let objective = MulticlassObjective::new(scored);
            let (t, correct) = objective.fit();
            (Thresholds { multiclass: t, ..base }, correct)
        }
    };
    Ok(FitResult {
        thresholds,
        correct,
        total,
        accuracy: correct as f64 / total as f64,
    })
}

/// Exhaustive binary search space: `0`, the midpoints between adjacent
/// distinct scores, and a value above the largest score when possible.
pub fn midpoint_scan(scores: &[f64]) -> Vec<f64> {
    let mut distinct: Vec<f64> = scores.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    let mut out = vec![0.0];
    out.extend(distinct.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    if let Some(&max) = distinct.last() {
        if max < 1.0 {
            out.push((max + 1.0) / 2.0);
        }
    }
    out
}

struct BinaryObjective {
    sorted: Vec<f64>,
    pos_prefix: Vec<usize>,
    fixed_correct: usize,
}

impl BinaryObjective {
    fn new(scored: &[(ScoreResult, Category)]) -> Self {
        let mut fixed_correct = 0;
        let mut numeric: Vec<(f64, bool)> = Vec::new();
        for (r, label) in scored {
            match r.direct_category {
                Some(c) => fixed_correct += usize::from(c.polarity() == label.polarity()),
                None => numeric.push((r.score, label.polarity() == Polarity::Positive)),
            }
        }
        numeric.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut pos_prefix = vec![0];
        for &(_, pos) in &numeric {
            pos_prefix.push(pos_prefix.last().unwrap() + usize::from(pos));
        }
        BinaryObjective {
            sorted: numeric.into_iter().map(|(s, _)| s).collect(),
            pos_prefix,
            fixed_correct,
        }
    }

    fn correct(&self, t: f64) -> usize {
        let below = self.sorted.partition_point(|&s| s < t);
        let pos_below = self.pos_prefix[below];
        let n_pos = *self.pos_prefix.last().unwrap();
        self.fixed_correct + (below - pos_below) + (n_pos - pos_below)
    }

    fn fit(&self) -> (f64, usize) {
        let mut best = (0.0, self.correct(0.0));
        for start in midpoint_scan(&self.sorted) {
            let (x, value) = nelder_mead(
                |x| self.correct(x[0]) as f64,
                vec![start],
                |x| x[0] = x[0].clamp(0.0, 1.0),
            );
            if value as usize > best.1 {
                best = (x[0], value as usize);
            }
        }
        best
    }
}

struct MulticlassObjective {
    /// Numeric scores per label category, sorted.
    by_label: [Vec<f64>; 5],
    fixed_correct: usize,
    candidates: Vec<f64>,
}

impl MulticlassObjective {
    fn new(scored: &[(ScoreResult, Category)]) -> Self {
        let mut by_label: [Vec<f64>; 5] = Default::default();
        let mut fixed_correct = 0;
        let mut all = Vec::new();
        for (r, label) in scored {
            match r.direct_category {
                Some(c) => fixed_correct += usize::from(c == *label),
                None => {
                    by_label[usize::from(label.rank()) - 1].push(r.score);
                    all.push(r.score);
                }
            }
        }
        for v in &mut by_label {
            v.sort_by(f64::total_cmp);
        }
        MulticlassObjective {
            by_label,
            fixed_correct,
            candidates: midpoint_scan(&all),
        }
    }

    fn correct(&self, t: &[f64]) -> usize {
        let below = |v: &Vec<f64>, x: f64| v.partition_point(|&s| s < x);
        let bounds = [f64::INFINITY, t[0], t[1], t[2], t[3], f64::NEG_INFINITY];
        let mut correct = self.fixed_correct;
        for (i, v) in self.by_label.iter().enumerate() {
            let hi = if i == 0 { v.len() } else { below(v, bounds[i]) };
            let lo = if i == 4 { 0 } else { below(v, bounds[i + 1]) };
            correct += hi.saturating_sub(lo);
        }
        correct
    }

    fn fit(&self) -> ([f64; 4], usize) {
        let levels: Vec<f64> = (0..=10).map(|i| i as f64 * LATTICE_STEP).collect();
        let mut starts = vec![Thresholds::default().multiclass.to_vec()];
        for a in 0..levels.len() {
            for b in 0..=a {
                for c in 0..=b {
                    for d in 0..=c {
                        starts.push(vec![levels[a], levels[b], levels[c], levels[d]]);
                    }
                }
            }
        }
        let mut best = (starts[0].clone(), self.correct(&starts[0]));
        for start in starts {
            let (x, value) = nelder_mead(|x| self.correct(x) as f64, start, project_monotone);
            if value as usize > best.1 {
                best = (x, value as usize);
            }
        }
        let (x, value) = self.polish(best.0, best.1);
        ([x[0], x[1], x[2], x[3]], value)
    }

    /// Coordinate-wise scan over the midpoint candidates until no single
    /// threshold change improves the count.
    fn polish(&self, mut x: Vec<f64>, mut value: usize) -> (Vec<f64>, usize) {
        loop {
            let mut improved = false;
            for i in 0..4 {
                for &c in &self.candidates {
                    let mut y = x.clone();
                    y[i] = c;
                    project_monotone(&mut y);
                    let v = self.correct(&y);
                    if v > value {
                        x = y;
                        value = v;
                        improved = true;
                    }
                }
            }
            if !improved {
                return (x, value);
            }
        }
    }
}

fn project_monotone(x: &mut [f64]) {
    for v in x.iter_mut() {
        *v = v.clamp(0.0, 1.0);
    }
    x.sort_by(|a, b| b.total_cmp(a));
}

/// Maximizes `f` with the downhill simplex method, projecting every
/// evaluated point with `project`. Returns the best point evaluated.
fn nelder_mead<F, P>(f: F, start: Vec<f64>, project: P) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
    P: Fn(&mut [f64]),
{
    let n = start.len();
    let eval = |mut x: Vec<f64>| {
        project(&mut x);
        let v = f(&x);
        (x, v)
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![eval(start.clone())];
    for i in 0..n {
        let mut x = start.clone();
        x[i] += if x[i] + SIMPLEX_STEP <= 1.0 { SIMPLEX_STEP } else { -SIMPLEX_STEP };
        simplex.push(eval(x));
    }
    let mut best = simplex[0].clone();
    let track = |p: &(Vec<f64>, f64), best: &mut (Vec<f64>, f64)| {
        if p.1 > best.1 {
            *best = p.clone();
        }
    };
    for p in &simplex {
        track(p, &mut best);
    }

    let combine = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
    };
    for _ in 0..MAX_ITERATIONS {
        // descending by value: best first
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let worst = simplex[n].clone();
        if simplex[0].1 == worst.1 && spread(&simplex) < 1e-9 {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|p| p.0[j]).sum::<f64>() / n as f64)
            .collect();
        let reflected = eval(combine(&centroid, &worst.0, -1.0));
        track(&reflected, &mut best);
        if reflected.1 > simplex[0].1 {
            let expanded = eval(combine(&centroid, &worst.0, -2.0));
            track(&expanded, &mut best);
            simplex[n] = if expanded.1 > reflected.1 { expanded } else { reflected };
        } else if reflected.1 > simplex[n - 1].1 {
            simplex[n] = reflected;
        } else {
            let contracted = eval(combine(&centroid, &worst.0, 0.5));
            track(&contracted, &mut best);
            if contracted.1 > worst.1 {
                simplex[n] = contracted;
            } else {
                let head = simplex[0].0.clone();
                for p in simplex.iter_mut().skip(1) {
                    *p = eval(combine(&head, &p.0, 0.5));
                    track(p, &mut best);
                }
            }
        }
    }
    best
}

fn spread(simplex: &[(Vec<f64>, f64)]) -> f64 {
    let head = &simplex[0].0;
    simplex
        .iter()
        .flat_map(|p| p.0.iter().zip(head).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn numeric(rows: &[(f64, Category)]) -> Vec<(ScoreResult, Category)> {
        rows.iter().map(|&(s, c)| (ScoreResult::numeric(s), c)).collect()
    }

    #[test]
    fn separable_binary() {
        let rows = numeric(&[
            (0.9, Category::C1),
            (0.8, Category::C2),
            (0.2, Category::C4),
            (0.1, Category::C5),
        ]);
        let fit = fit_thresholds_scored(&rows, Mode::Binary, Thresholds::default()).unwrap();
        assert_eq!(fit.correct, 4);
        assert!(fit.thresholds.binary > 0.2 && fit.thresholds.binary <= 0.8);
    }

    #[test]
    fn all_negative() {
        let rows = numeric(&[(0.3, Category::C5), (0.7, Category::C4), (0.1, Category::C5)]);
        let fit = fit_thresholds_scored(&rows, Mode::Binary, Thresholds::default()).unwrap();
        assert_eq!(fit.accuracy, 1.0);
        assert!(fit.thresholds.binary > 0.7);
    }

    #[test]
    fn direct_categories_bypass_thresholds() {
        let rows: Vec<_> = Category::ALL
            .iter()
            .map(|&c| (ScoreResult::direct(c), c))
            .collect();
        let fit = fit_thresholds_scored(&rows, Mode::Multiclass, Thresholds::default()).unwrap();
        assert_eq!(fit.accuracy, 1.0);
    }

    #[test]
    fn multiclass_separable() {
        let rows = numeric(&[
            (0.95, Category::C1),
            (0.92, Category::C1),
            (0.75, Category::C2),
            (0.55, Category::C3),
            (0.5, Category::C3),
            (0.35, Category::C4),
            (0.05, Category::C5),
        ]);
        let fit = fit_thresholds_scored(&rows, Mode::Multiclass, Thresholds::default()).unwrap();
        assert_eq!(fit.correct, rows.len());
        assert!(fit.thresholds.validate().is_ok());
    }

    #[test]
    fn empty() {
        assert_eq!(
            fit_thresholds_scored(&[], Mode::Binary, Thresholds::default()),
            Err(SimilarityError::EmptyDataset)
        );
    }
}
