//! Epsilon-free context-free grammars over words.
//!
//! Text format, one rule per line:
//!
//! ```text
//! // comment
//! S -> U W
//! U -> "user interface" | "UI"
//! W -> works C | "is working" C
//! C -> correctly | properly
//! ```
//!
//! Tokens starting with an upper-case letter are nonterminals. Everything
//! else is a terminal; quoted strings may hold several words and are split
//! on whitespace. Terminals are lower-cased. The first rule's left-hand side
//! is the start symbol and repeated left-hand sides add alternatives.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::vocab::normalize_description;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("nonterminal `{0}` derives no terminal string")]
    UnproductiveNonterminal(String),
    #[error("nonterminal `{0}` is not reachable from the start symbol")]
    UnreachableNonterminal(String),
    #[error("line {line}: empty alternatives are not allowed")]
    EpsilonNotAllowed { line: usize },
    #[error("grammar has no rules")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GSym {
    Terminal(usize),
    Nonterminal(usize),
}

/// A validated grammar. Symbols are interned as indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Grammar {
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    /// Alternatives per nonterminal.
    rules: Vec<Vec<Vec<GSym>>>,
    start: usize,
}

impl Grammar {
    pub fn nonterminals(&self) -> impl Iterator<Item = &str> {
        self.nonterminals.iter().map(String::as_str)
    }

    pub fn terminals(&self) -> impl Iterator<Item = &str> {
        self.terminals.iter().map(String::as_str)
    }

    pub fn start(&self) -> &str {
        &self.nonterminals[self.start]
    }

    pub fn alternatives(&self, nonterminal: &str) -> Option<&[Vec<GSym>]> {
        let i = self.nonterminals.iter().position(|n| n == nonterminal)?;
        Some(&self.rules[i])
    }

    fn terminal_id(&self, word: &str) -> Option<usize> {
        self.terminals.iter().position(|t| t == word)
    }

    fn longest_rule(&self) -> usize {
        self.rules
            .iter()
            .flatten()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = std::iter::once(self.start)
            .chain((0..self.nonterminals.len()).filter(|&i| i != self.start));
        for n in order {
            let alts: Vec<String> = self.rules[n]
                .iter()
                .map(|alt| {
                    alt.iter()
                        .map(|s| match s {
                            GSym::Nonterminal(i) => self.nonterminals[*i].clone(),
                            GSym::Terminal(i) => format!("\"{}\"", self.terminals[*i]),
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            writeln!(f, "{} -> {}", self.nonterminals[n], alts.join(" | "))?;
        }
        Ok(())
    }
}

enum RawSym {
    Nonterminal(String),
    Terminals(Vec<String>),
}

fn split_alternatives(rhs: &str, line: usize) -> Result<Vec<Vec<RawSym>>, GrammarError> {
    let mut alts = vec![Vec::new()];
    let mut chars = rhs.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '|' {
            chars.next();
            alts.push(Vec::new());
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some(c) => s.push(c),
                    None => {
                        return Err(GrammarError::Syntax {
                            line,
                            message: "unterminated string".into(),
                        })
                    }
                }
            }
            let words: Vec<String> = normalize_description(&s)
                .split(' ')
                .filter(|w| !w.is_empty())
                .map(str::to_string)
                .collect();
            if words.is_empty() {
                return Err(GrammarError::EpsilonNotAllowed { line });
            }
            alts.last_mut().unwrap().push(RawSym::Terminals(words));
        } else {
            let mut tok = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() || c == '|' || c == '"' {
                    break;
                }
                tok.push(c);
                chars.next();
            }
            let sym = if tok.chars().next().is_some_and(char::is_uppercase) {
                RawSym::Nonterminal(tok)
            } else {
                RawSym::Terminals(vec![normalize_description(&tok)])
            };
            alts.last_mut().unwrap().push(sym);
        }
    }
    if alts.iter().any(Vec::is_empty) {
        return Err(GrammarError::EpsilonNotAllowed { line });
    }
    Ok(alts)
}

/// Parses and validates a grammar.
pub fn parse_grammar(text: &str) -> Result<Grammar, GrammarError> {
    let mut nonterminals: Vec<String> = Vec::new();
    let mut nt_index: HashMap<String, usize> = HashMap::new();
    let mut terminals: Vec<String> = Vec::new();
    let mut t_index: HashMap<String, usize> = HashMap::new();
    let mut rules: Vec<Vec<Vec<GSym>>> = Vec::new();
    let mut defined: Vec<bool> = Vec::new();

    let mut intern_nt = |name: &str, rules: &mut Vec<Vec<Vec<GSym>>>, defined: &mut Vec<bool>| {
        if let Some(&i) = nt_index.get(name) {
            return i;
        }
        let i = nonterminals.len();
        nonterminals.push(name.to_string());
        nt_index.insert(name.to_string(), i);
        rules.push(Vec::new());
        defined.push(false);
        i
    };

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw_line.find("//") {
            Some(i) if !raw_line[..i].contains('"') => &raw_line[..i],
            _ => raw_line,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let (lhs, rhs) = content.split_once("->").ok_or_else(|| GrammarError::Syntax {
            line,
            message: "expected `Nonterminal -> alternatives`".into(),
        })?;
        let lhs = lhs.trim();
        if lhs.is_empty()
            || lhs.contains(char::is_whitespace)
            || !lhs.chars().next().is_some_and(char::is_uppercase)
        {
            return Err(GrammarError::Syntax {
                line,
                message: format!("left-hand side `{lhs}` must be a single nonterminal"),
            });
        }
        let head = intern_nt(lhs, &mut rules, &mut defined);
        defined[head] = true;
        for alt in split_alternatives(rhs, line)? {
            let mut seq = Vec::new();
            for sym in alt {
                match sym {
                    RawSym::Nonterminal(n) => {
                        seq.push(GSym::Nonterminal(intern_nt(&n, &mut rules, &mut defined)))
                    }
                    RawSym::Terminals(words) => {
                        for w in words {
                            let next = terminals.len();
                            let id = *t_index.entry(w.clone()).or_insert_with(|| {
                                terminals.push(w);
                                next
                            });
                            seq.push(GSym::Terminal(id));
                        }
                    }
                }
            }
            if !rules[head].contains(&seq) {
                rules[head].push(seq);
            }
        }
    }
    if nonterminals.is_empty() {
        return Err(GrammarError::Empty);
    }
    let grammar = Grammar {
        nonterminals,
        terminals,
        rules,
        start: 0,
    };
    grammar.validate()?;
    Ok(grammar)
}

impl Grammar {
    fn validate(&self) -> Result<(), GrammarError> {
        let n = self.nonterminals.len();
        let mut productive = vec![false; n];
        let mut changed = true;
        while changed {
            changed = false;
            for (i, alts) in self.rules.iter().enumerate() {
                if productive[i] {
                    continue;
                }
                let ok = alts.iter().any(|alt| {
                    alt.iter().all(|s| match s {
                        GSym::Terminal(_) => true,
                        GSym::Nonterminal(j) => productive[*j],
                    })
                });
                if ok {
                    productive[i] = true;
                    changed = true;
                }
            }
        }
        let undefined = (0..n).find(|&i| !productive[i] && self.rules[i].is_empty());
        if let Some(i) = undefined.or_else(|| productive.iter().position(|p| !p)) {
            return Err(GrammarError::UnproductiveNonterminal(
                self.nonterminals[i].clone(),
            ));
        }
        let mut reachable = vec![false; n];
        let mut stack = vec![self.start];
        reachable[self.start] = true;
        while let Some(i) = stack.pop() {
            for s in self.rules[i].iter().flatten() {
                if let GSym::Nonterminal(j) = s {
                    if !reachable[*j] {
                        reachable[*j] = true;
                        stack.push(*j);
                    }
                }
            }
        }
        if let Some(i) = reachable.iter().position(|r| !r) {
            return Err(GrammarError::UnreachableNonterminal(
                self.nonterminals[i].clone(),
            ));
        }
        Ok(())
    }

    /// Distinct derivable strings, shortest first and lexicographic within a
    /// length, truncated at `max_count`.
    pub fn enumerate(&self, max_count: usize) -> Vec<String> {
        if max_count == 0 {
            return Vec::new();
        }
        let rules = self.binarized();
        let n = rules.len();
        // by_len[l][nt] = strings of exactly l + 1 terminals derivable from nt
        let mut by_len: Vec<Vec<HashSet<Vec<usize>>>> = Vec::new();
        let mut out: Vec<String> = Vec::new();
        let max_rule = self.longest_rule();
        let mut last_nonempty = 0usize;
        let mut len = 0usize;
        loop {
            len += 1;
            // A string longer than every nonempty level so far is built from
            // parts of at most `last_nonempty` tokens, so once the lengths in
            // (m, max_rule * m] are all empty no longer string exists.
            if last_nonempty > 0 && len > max_rule * last_nonempty {
                break;
            }
            let mut level: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); n];
            // Unit productions derive from the same length, so iterate to a fixpoint.
            loop {
                let mut changed = false;
                for (nt, alts) in rules.iter().enumerate() {
                    for alt in alts {
                        let produced = self.expand(alt, len, &by_len, &level);
                        for s in produced {
                            if level[nt].insert(s) {
                                changed = true;
                            }
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            if level.iter().any(|s| !s.is_empty()) {
                last_nonempty = len;
            }
            let mut strings: Vec<String> = level[self.start]
                .iter()
                .map(|s| self.render(s))
                .collect();
            strings.sort();
            out.extend(strings);
            by_len.push(level);
            if out.len() >= max_count {
                out.truncate(max_count);
                break;
            }
        }
        out
    }

    /// The rules with every alternative longer than two symbols split into a
    /// chain of fresh nonterminals, appended after the declared ones.
    fn binarized(&self) -> Vec<Vec<Vec<GSym>>> {
        let mut rules = self.rules.clone();
        for nt in 0..self.rules.len() {
            for a in 0..rules[nt].len() {
                let alt = rules[nt][a].clone();
                if alt.len() <= 2 {
                    continue;
                }
                let mut tail = rules.len();
                rules[nt][a] = vec![alt[0], GSym::Nonterminal(tail)];
                for i in 1..alt.len() - 2 {
                    rules.push(vec![vec![alt[i], GSym::Nonterminal(tail + 1)]]);
                    tail += 1;
                }
                rules.push(vec![alt[alt.len() - 2..].to_vec()]);
            }
        }
        rules
    }

    fn render(&self, ids: &[usize]) -> String {
        ids.iter()
            .map(|&t| self.terminals[t].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// All terminal strings of exactly `len` tokens derivable from `alt`,
    /// using completed shorter levels plus the current partial level.
    fn expand(
        &self,
        alt: &[GSym],
        len: usize,
        by_len: &[Vec<HashSet<Vec<usize>>>],
        current: &[HashSet<Vec<usize>>],
    ) -> Vec<Vec<usize>> {
        if alt.len() > len {
            return Vec::new();
        }
        let mut results = Vec::new();
        let mut prefix = Vec::with_capacity(len);
        self.expand_rec(alt, len, by_len, current, &mut prefix, &mut results);
        results
    }

    fn expand_rec(
        &self,
        alt: &[GSym],
        remaining: usize,
        by_len: &[Vec<HashSet<Vec<usize>>>],
        current: &[HashSet<Vec<usize>>],
        prefix: &mut Vec<usize>,
        results: &mut Vec<Vec<usize>>,
    ) {
        let Some((first, rest)) = alt.split_first() else {
            if remaining == 0 {
                results.push(prefix.clone());
            }
            return;
        };
        // every remaining symbol needs at least one token
        if remaining < alt.len() {
            return;
        }
        match first {
            GSym::Terminal(t) => {
                prefix.push(*t);
                self.expand_rec(rest, remaining - 1, by_len, current, prefix, results);
                prefix.pop();
            }
            GSym::Nonterminal(nt) => {
                let max_here = remaining - rest.len();
                for l in 1..=max_here {
                    let set = if l - 1 < by_len.len() {
                        &by_len[l - 1][*nt]
                    } else {
                        &current[*nt]
                    };
                    for s in set {
                        let mark = prefix.len();
                        prefix.extend_from_slice(s);
                        self.expand_rec(rest, remaining - l, by_len, current, prefix, results);
                        prefix.truncate(mark);
                    }
                }
            }
        }
    }

    /// Whether the whitespace-separated token sequence of `text` is derivable.
    pub fn accepts(&self, text: &str) -> bool {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return false;
        }
        let Some(ids) = tokens
            .iter()
            .map(|t| self.terminal_id(t))
            .collect::<Option<Vec<usize>>>()
        else {
            return false;
        };
        Binarized::from(self).recognize(&ids)
    }
}

/// The grammar rewritten so every rule is `A -> t`, `A -> B` or `A -> B C`,
/// which is what the chart parser consumes.
struct Binarized {
    count: usize,
    start: usize,
    terminal_rules: BTreeMap<usize, Vec<usize>>,
    binary_rules: Vec<(usize, usize, usize)>,
    /// unit_closure[b] = every a with a =>* b through unit rules (including b).
    unit_closure: Vec<Vec<usize>>,
}

impl From<&Grammar> for Binarized {
    fn from(g: &Grammar) -> Self {
        let mut count = g.nonterminals.len();
        let mut terminal_nt: HashMap<usize, usize> = HashMap::new();
        let mut terminal_rules: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut binary_rules = Vec::new();
        let mut unit_rules: Vec<(usize, usize)> = Vec::new();

        let fresh = |count: &mut usize| {
            *count += 1;
            *count - 1
        };

        for (head, alts) in g.rules.iter().enumerate() {
            for alt in alts {
                if let [GSym::Terminal(t)] = alt.as_slice() {
                    terminal_rules.entry(*t).or_default().push(head);
                    continue;
                }
                let mut syms: Vec<usize> = Vec::with_capacity(alt.len());
                for s in alt {
                    match s {
                        GSym::Nonterminal(n) => syms.push(*n),
                        GSym::Terminal(t) => {
                            let nt = *terminal_nt.entry(*t).or_insert_with(|| {
                                let nt = fresh(&mut count);
                                terminal_rules.entry(*t).or_default().push(nt);
                                nt
                            });
                            syms.push(nt);
                        }
                    }
                }
                match syms.len() {
                    1 => unit_rules.push((head, syms[0])),
                    _ => {
                        let mut lhs = head;
                        for i in 0..syms.len() - 2 {
                            let rest = fresh(&mut count);
                            binary_rules.push((lhs, syms[i], rest));
                            lhs = rest;
                        }
                        let k = syms.len();
                        binary_rules.push((lhs, syms[k - 2], syms[k - 1]));
                    }
                }
            }
        }

        let mut unit_closure: Vec<Vec<usize>> = (0..count).map(|b| vec![b]).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in &unit_rules {
                for target in 0..count {
                    if unit_closure[target].contains(&b) && !unit_closure[target].contains(&a) {
                        unit_closure[target].push(a);
                        changed = true;
                    }
                }
            }
        }
        Binarized {
            count,
            start: g.start,
            terminal_rules,
            binary_rules,
            unit_closure,
        }
    }
}

impl Binarized {
    fn close(&self, cell: &mut [bool]) {
        let direct: Vec<usize> = (0..self.count).filter(|&i| cell[i]).collect();
        for b in direct {
            for &a in &self.unit_closure[b] {
                cell[a] = true;
            }
        }
    }

    fn recognize(&self, tokens: &[usize]) -> bool {
        let n = tokens.len();
        // chart[i][l - 1] covers tokens[i..i + l]
        let mut chart = vec![vec![vec![false; self.count]; n]; n];
        for (i, t) in tokens.iter().enumerate() {
            if let Some(heads) = self.terminal_rules.get(t) {
                for &h in heads {
                    chart[i][0][h] = true;
                }
            }
            self.close(&mut chart[i][0]);
        }
        for l in 2..=n {
            for i in 0..=n - l {
                let mut cell = vec![false; self.count];
                for split in 1..l {
                    let left = &chart[i][split - 1];
                    let right = &chart[i + split][l - split - 1];
                    for &(a, b, c) in &self.binary_rules {
                        if left[b] && right[c] {
                            cell[a] = true;
                        }
                    }
                }
                self.close(&mut cell);
                chart[i][l - 1] = cell;
            }
        }
        chart[0][n - 1][self.start]
    }
}

/// Derivable strings in shortlex order, at most `max_count` of them.
pub fn enumerate_derivations(grammar: &Grammar, max_count: usize) -> Vec<String> {
    grammar.enumerate(max_count)
}

/// Whether `text` (normalized, space-separated) is derivable from the grammar.
pub fn membership(grammar: &Grammar, text: &str) -> bool {
    grammar.accepts(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) const EXAMPLE_UI: &str = r#"
        // descriptions of "The user interface works correctly"
        S -> U W
        U -> "user interface" | "user-interface" | "UI"
        W -> works C | "is working" C | behaves C | "is behaving" C
        C -> correctly | properly
    "#;

    /// Independent oracle: exhaustive leftmost rewriting up to a length bound.
    fn brute_force(g: &Grammar, max_tokens: usize) -> Vec<String> {
        // Leftmost rewriting over all sentential forms of bounded length;
        // forms never shrink, so the search space is finite.
        let mut seen: HashSet<Vec<GSym>> = HashSet::new();
        let mut queue = vec![vec![GSym::Nonterminal(g.start)]];
        let mut set: HashSet<Vec<usize>> = HashSet::new();
        while let Some(form) = queue.pop() {
            if form.len() > max_tokens || !seen.insert(form.clone()) {
                continue;
            }
            match form.iter().position(|s| matches!(s, GSym::Nonterminal(_))) {
                None => {
                    set.insert(
                        form.iter()
                            .map(|s| match s {
                                GSym::Terminal(t) => *t,
                                _ => unreachable!(),
                            })
                            .collect(),
                    );
                }
                Some(i) => {
                    let GSym::Nonterminal(nt) = form[i] else {
                        unreachable!()
                    };
                    for alt in &g.rules[nt] {
                        let mut next = form[..i].to_vec();
                        next.extend_from_slice(alt);
                        next.extend_from_slice(&form[i + 1..]);
                        queue.push(next);
                    }
                }
            }
        }
        let mut strings: Vec<(usize, String)> =
            set.iter().map(|s| (s.len(), g.render(s))).collect();
        strings.sort();
        strings.into_iter().map(|(_, s)| s).collect()
    }

    #[test]
    fn parses_example_grammar() {
        let g = parse_grammar(EXAMPLE_UI).unwrap();
        let mut nts: Vec<&str> = g.nonterminals().collect();
        nts.sort();
        assert_eq!(nts, vec!["C", "S", "U", "W"]);
        assert_eq!(g.start(), "S");
        assert!(g.terminals().any(|t| t == "ui"));
    }

    #[test]
    fn rejects_bad_grammars() {
        assert_eq!(
            parse_grammar("S -> S"),
            Err(GrammarError::UnproductiveNonterminal("S".into()))
        );
        assert_eq!(
            parse_grammar("S -> a\nT -> b"),
            Err(GrammarError::UnreachableNonterminal("T".into()))
        );
        assert_eq!(
            parse_grammar("S -> a | | b"),
            Err(GrammarError::EpsilonNotAllowed { line: 1 })
        );
        assert_eq!(
            parse_grammar("S -> \"\""),
            Err(GrammarError::EpsilonNotAllowed { line: 1 })
        );
        assert_eq!(
            parse_grammar("S -> A"),
            Err(GrammarError::UnproductiveNonterminal("A".into()))
        );
        assert!(matches!(
            parse_grammar("S a b"),
            Err(GrammarError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_grammar("s -> a"),
            Err(GrammarError::Syntax { line: 1, .. })
        ));
        assert_eq!(parse_grammar("// nothing\n"), Err(GrammarError::Empty));
    }

    #[test]
    fn enumerates_example_grammar() {
        let g = parse_grammar(EXAMPLE_UI).unwrap();
        let all = enumerate_derivations(&g, 100);
        assert_eq!(all.len(), 24);
        assert_eq!(all, brute_force(&g, 10));
        assert!(all.contains(&"ui is working properly".to_string()));
        assert_eq!(all[0], "ui behaves correctly");
    }

    #[test]
    fn small_enumerations() {
        let g = parse_grammar("S -> a | b").unwrap();
        assert_eq!(enumerate_derivations(&g, 1), vec!["a"]);
        assert_eq!(enumerate_derivations(&g, 10), vec!["a", "b"]);
        let g = parse_grammar("S -> a S | a").unwrap();
        assert_eq!(enumerate_derivations(&g, 3), vec!["a", "a a", "a a a"]);
    }

    #[test]
    fn enumeration_terminates_on_unit_cycles() {
        let g = parse_grammar("S -> A | b\nA -> S | a").unwrap();
        assert_eq!(enumerate_derivations(&g, 100), vec!["a", "b"]);
    }

    #[test]
    fn membership_examples() {
        let g = parse_grammar(EXAMPLE_UI).unwrap();
        assert!(membership(&g, "ui behaves properly"));
        assert!(membership(&g, "user interface is working correctly"));
        assert!(!membership(&g, "the ui behaves properly"));
        assert!(!membership(&g, "the printer works"));
        assert!(!membership(&g, ""));
        let g = parse_grammar("S -> a").unwrap();
        assert!(membership(&g, "a"));
        assert!(!membership(&g, "a a"));
    }

    #[test]
    fn membership_with_units_and_long_rules() {
        let g = parse_grammar("S -> A | x y z w\nA -> B\nB -> c S d | e").unwrap();
        assert!(membership(&g, "e"));
        assert!(membership(&g, "c e d"));
        assert!(membership(&g, "c c x y z w d d"));
        assert!(!membership(&g, "c e"));
    }

    #[test]
    fn display_round_trips() {
        let g = parse_grammar(EXAMPLE_UI).unwrap();
        let again = parse_grammar(&g.to_string()).unwrap();
        assert_eq!(enumerate_derivations(&again, 100), enumerate_derivations(&g, 100));
    }

    fn arb_grammar() -> impl Strategy<Value = String> {
        let alt = prop::collection::vec(
            prop::sample::select(vec!["a", "b", "c", "A", "B"]),
            1..4,
        );
        let rule = prop::collection::vec(alt, 1..3);
        (rule.clone(), rule.clone(), rule).prop_map(|(s, a, b)| {
            let fmt = |alts: Vec<Vec<&str>>| {
                alts.into_iter()
                    .map(|a| a.join(" "))
                    .collect::<Vec<_>>()
                    .join(" | ")
            };
            format!(
                "S -> {} | A | B\nA -> {} | a\nB -> {} | b",
                fmt(s),
                fmt(a),
                fmt(b)
            )
        })
    }

    proptest! {
        #[test]
        fn enumeration_agrees_with_brute_force_and_membership(text in arb_grammar()) {
            let g = parse_grammar(&text).unwrap();
            let all = enumerate_derivations(&g, 60);
            let exhausted = all.len() < 60 || all.iter().any(|s| s.split(' ').count() > 4);
            let got: Vec<String> = all
                .iter()
                .filter(|s| s.split(' ').count() <= 4)
                .cloned()
                .collect();
            let expected = brute_force(&g, 4);
            if exhausted {
                prop_assert_eq!(&got, &expected);
            } else {
                prop_assert_eq!(&got[..], &expected[..got.len()]);
            }
            for s in &all {
                prop_assert!(membership(&g, s), "{} not accepted", s);
            }
        }
    }
}
