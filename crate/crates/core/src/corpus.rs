//! Dependency-parsed review corpora.
//!
//! A [`Review`] holds one or more [`ParsedSentence`]s, each a single-rooted
//! dependency tree over 1-based token indices. Trees coming out of
//! [`crate::conllu::parse_conllu`] are always valid; [`validate_tree`] can be
//! used on hand-built sentences.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Relation label carried by the root token.
pub const ROOT_RELATION: &str = "root";

/// Category assigned to reviews without a `# category` line.
pub const UNKNOWN_CATEGORY: &str = "unknown";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependencyToken {
    pub index: usize,
    pub surface: String,
    pub lemma: String,
    pub pos: String,
    pub ner: Option<String>,
    /// Index of the governing token, 0 for the root.
    pub head: usize,
    pub relation: String,
}

impl DependencyToken {
    pub fn new(
        index: usize,
        surface: impl Into<String>,
        lemma: impl Into<String>,
        pos: impl Into<String>,
        head: usize,
        relation: impl Into<String>,
    ) -> Self {
        DependencyToken {
            index,
            surface: surface.into(),
            lemma: lemma.into(),
            pos: pos.into(),
            ner: None,
            head,
            relation: relation.into(),
        }
    }

    /// Lemma as used for lexicon lookups and corpus statistics.
    pub fn key(&self) -> String {
        normalize_lemma(&self.lemma)
    }

    pub fn is_root(&self) -> bool {
        self.head == 0
    }
}

/// Lexicon lookups are case-insensitive.
pub fn normalize_lemma(lemma: &str) -> String {
    lemma.trim().to_lowercase()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedSentence {
    pub sentence_id: String,
    pub tokens: Vec<DependencyToken>,
}

impl ParsedSentence {
    pub fn new(sentence_id: impl Into<String>, tokens: Vec<DependencyToken>) -> Self {
        ParsedSentence {
            sentence_id: sentence_id.into(),
            tokens,
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token by 1-based index.
    pub fn token(&self, index: usize) -> Option<&DependencyToken> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    pub fn root(&self) -> Option<&DependencyToken> {
        self.tokens.iter().find(|t| t.head == 0)
    }

    /// Chain of ancestors of `index`, nearest first, ending at the root.
    /// Assumes a valid tree.
    pub fn ancestors(&self, index: usize) -> Vec<usize> {
        let mut chain = Vec::new();
        let mut current = index;
        while let Some(token) = self.token(current) {
            if token.head == 0 || chain.len() > self.tokens.len() {
                break;
            }
            chain.push(token.head);
            current = token.head;
        }
        chain
    }

    pub fn keys(&self) -> Vec<String> {
        self.tokens.iter().map(DependencyToken::key).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Review {
    pub review_id: String,
    pub category: String,
    pub sentences: Vec<ParsedSentence>,
}

impl Review {
    pub fn new(review_id: impl Into<String>, category: impl Into<String>) -> Self {
        Review {
            review_id: review_id.into(),
            category: category.into(),
            sentences: Vec::new(),
        }
    }
}

/// One violated tree invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    NoRoot,
    MultipleRoots(Vec<usize>),
    NonContiguous { position: usize, index: usize },
    SelfLoop(usize),
    DanglingHead { token: usize, head: usize },
    Cycle(Vec<usize>),
    EmptyRelation(usize),
    RootRelation { token: usize, relation: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "sentence has no tokens"),
            Violation::NoRoot => write!(f, "no root token"),
            Violation::MultipleRoots(roots) => write!(f, "multiple roots {roots:?}"),
            Violation::NonContiguous { position, index } => {
                write!(f, "token at position {position} has index {index}")
            }
            Violation::SelfLoop(token) => write!(f, "token {token} is its own head"),
            Violation::DanglingHead { token, head } => {
                write!(f, "token {token} points at missing head {head}")
            }
            Violation::Cycle(members) => write!(f, "cycle through tokens {members:?}"),
            Violation::EmptyRelation(token) => write!(f, "token {token} has an empty relation"),
            Violation::RootRelation { token, relation } => write!(
                f,
                "token {token} has relation {relation:?} inconsistent with its head"
            ),
        }
    }
}

/// Lists every tree invariant the sentence violates. An empty result means
/// the sentence is a valid single-rooted tree.
pub fn validate_tree(sentence: &ParsedSentence) -> Vec<Violation> {
    let mut violations = Vec::new();
    let tokens = &sentence.tokens;
    if tokens.is_empty() {
        violations.push(Violation::Empty);
        return violations;
    }
    let n = tokens.len();

    for (position, token) in tokens.iter().enumerate() {
        if token.index != position + 1 {
            violations.push(Violation::NonContiguous {
                position: position + 1,
                index: token.index,
            });
        }
    }

    let roots: Vec<usize> = tokens
        .iter()
        .filter(|t| t.head == 0)
        .map(|t| t.index)
        .collect();
    match roots.len() {
        0 => violations.push(Violation::NoRoot),
        1 => {}
        _ => violations.push(Violation::MultipleRoots(roots)),
    }

    for token in tokens {
        if token.head == token.index {
            violations.push(Violation::SelfLoop(token.index));
        } else if token.head > n {
            violations.push(Violation::DanglingHead {
                token: token.index,
                head: token.head,
            });
        }
        if token.relation.is_empty() {
            violations.push(Violation::EmptyRelation(token.index));
        } else if (token.relation == ROOT_RELATION) != (token.head == 0) {
            violations.push(Violation::RootRelation {
                token: token.index,
                relation: token.relation.clone(),
            });
        }
    }

    // Cycle detection only makes sense over positional indices.
    if violations
        .iter()
        .any(|v| matches!(v, Violation::NonContiguous { .. }))
    {
        return violations;
    }
    violations.extend(find_cycles(tokens));
    violations
}

fn find_cycles(tokens: &[DependencyToken]) -> Vec<Violation> {
    const UNSEEN: u8 = 0;
    const ACTIVE: u8 = 1;
    const DONE: u8 = 2;

    let n = tokens.len();
    let mut state = vec![UNSEEN; n + 1];
    let mut cycles = Vec::new();
    for start in 1..=n {
        if state[start] != UNSEEN {
            continue;
        }
        let mut path = Vec::new();
        let mut current = start;
        loop {
            if current == 0 || current > n || state[current] == DONE {
                break;
            }
            if state[current] == ACTIVE {
                let from = path.iter().position(|&i| i == current).unwrap_or(0);
                let mut members = path[from..].to_vec();
                members.sort_unstable();
                // Self-loops are reported separately.
                if members.len() > 1 {
                    cycles.push(Violation::Cycle(members));
                }
                break;
            }
            state[current] = ACTIVE;
            path.push(current);
            current = tokens[current - 1].head;
        }
        for i in path {
            state[i] = DONE;
        }
    }
    cycles
}
