use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::ParsedSentence;
use crate::lexicon::WordLists;
use crate::templates::Role;

/// Inclusive range of 1-based token indices.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct TokenSpan {
    pub start: usize,
    pub end: usize,
}

impl TokenSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start >= 1 && start <= end);
        TokenSpan { start, end }
    }

    pub fn single(index: usize) -> Self {
        TokenSpan::new(index, index)
    }

    pub fn contains(&self, index: usize) -> bool {
        (self.start..=self.end).contains(&index)
    }

    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }

    /// Number of tokens strictly between two disjoint spans.
    pub fn gap(&self, other: &TokenSpan) -> usize {
        if self.end < other.start {
            other.start - self.end - 1
        } else if other.end < self.start {
            self.start - other.end - 1
        } else {
            0
        }
    }
}

impl fmt::Display for TokenSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}-{}", self.start, self.end)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mention {
    pub role: Role,
    pub span: TokenSpan,
    pub lemma: String,
}

impl Mention {
    pub fn new(role: Role, span: TokenSpan, lemma: impl Into<String>) -> Self {
        Mention {
            role,
            span,
            lemma: lemma.into(),
        }
    }

    /// The span token closest to the root: its head lies outside the span.
    /// Leftmost wins among equally shallow candidates.
    pub fn head_token(&self, sentence: &ParsedSentence) -> usize {
        self.span
            .indices()
            .filter(|&i| {
                sentence
                    .token(i)
                    .is_some_and(|t| t.head == 0 || !self.span.contains(t.head))
            })
            .min_by_key(|&i| (sentence.ancestors(i).len(), i))
            .unwrap_or(self.span.start)
    }
}

/// Finds feature and evaluation mentions. Longer matches are placed first;
/// among equal lengths the earlier one wins, and no two mentions overlap.
pub fn match_mentions(sentence: &ParsedSentence, lists: &WordLists) -> Vec<Mention> {
    let keys = sentence.keys();
    let n = keys.len();
    let longest = lists
        .features
        .longest_entry()
        .max(lists.evaluations.longest_entry());

    let mut found = Vec::new();
    for start in 0..n {
        for len in 1..=longest.min(n - start) {
            let lemma = keys[start..start + len].join(" ");
            let role = if lists.features.contains(&lemma) {
                Role::Feature
            } else if lists.evaluations.contains(&lemma) {
                Role::Evaluation
            } else {
                continue;
            };
            found.push(Mention::new(
                role,
                TokenSpan::new(start + 1, start + len),
                lemma,
            ));
        }
    }
    found.sort_by(|a, b| {
        b.span
            .len()
            .cmp(&a.span.len())
            .then(a.span.start.cmp(&b.span.start))
    });

    let mut taken = vec![false; n + 1];
    let mut accepted = Vec::new();
    for m in found {
        if m.span.indices().any(|i| taken[i]) {
            continue;
        }
        for i in m.span.indices() {
            taken[i] = true;
        }
        accepted.push(m);
    }
    accepted.sort_by_key(|m| m.span.start);
    accepted
}

/// Merges runs of same-role mentions whose spans touch.
pub fn merge_adjacent(mentions: &[Mention]) -> Vec<Mention> {
    let mut merged: Vec<Mention> = Vec::with_capacity(mentions.len());
    for m in mentions {
        match merged.last_mut() {
            Some(last) if last.role == m.role && last.span.end + 1 == m.span.start => {
                last.span.end = m.span.end;
                last.lemma.push(' ');
                last.lemma.push_str(&m.lemma);
            }
            _ => merged.push(m.clone()),
        }
    }
    merged
}
