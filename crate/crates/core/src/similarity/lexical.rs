use std::collections::BTreeSet;

use super::ScoreResult;

/// Jaccard similarity of the whitespace-separated token sets. Two empty
/// strings are identical, so their similarity is 1.
pub fn jaccard(a: &str, b: &str) -> f64 {
    let sa: BTreeSet<&str> = a.split_whitespace().collect();
    let sb: BTreeSet<&str> = b.split_whitespace().collect();
    let union = sa.union(&sb).count();
    if union == 0 {
        return 1.0;
    }
    sa.intersection(&sb).count() as f64 / union as f64
}

/// Character-level edit distance.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let subst = prev[j] + usize::from(ca != cb);
            cur[j + 1] = subst.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// `0.5 * jaccard + 0.5 * (1 - levenshtein / max_len)`.
pub fn lexical_score(d: &str, d_star: &str) -> ScoreResult {
    let max_len = d.chars().count().max(d_star.chars().count());
    let distance = if max_len == 0 {
        0.0
    } else {
        levenshtein(d, d_star) as f64 / max_len as f64
    };
    ScoreResult::numeric(0.5 * jaccard(d, d_star) + 0.5 * (1.0 - distance))
}
