use std::path::PathBuf;

use thiserror::Error;

use crate::corpus::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("sentence {sentence_id}: invalid dependency tree ({})", join_violations(.violations))]
    Structural {
        sentence_id: String,
        violations: Vec<Violation>,
    },

    #[error("review id {0:?} appears in more than one block")]
    DuplicateReview(String),

    #[error("corpus contains no counting units")]
    EmptyCorpus,

    #[error("{0} lexicon has no entries")]
    EmptyLexicon(String),

    #[error("{lemma:?} is listed as both {first} and {second}")]
    LexiconConflict {
        lemma: String,
        first: String,
        second: String,
    },

    #[error("line {line}: {what} {value} is outside {range}")]
    Range {
        line: usize,
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("{lemma:?} appears in more than one synonym set (line {line})")]
    SynonymOverlap { lemma: String, line: usize },

    #[error("template schema error on line {line}: {message}")]
    Schema { line: usize, message: String },

    #[error("duplicate template id {0:?}")]
    DuplicateTemplate(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("division by zero computing PMI for {word:?} (no smoothing and zero frequency)")]
    DivideByZero { word: String },

    #[error("{0} is undefined: {1}")]
    UndefinedMetric(&'static str, &'static str),

    #[error("gold set error: {0}")]
    GoldSet(String),

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
