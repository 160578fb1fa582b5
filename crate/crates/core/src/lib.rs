//! Extraction of product-feature opinion tags from dependency-parsed reviews.
//!
//! Reviews are read from CoNLL-U, evaluation terms are filtered by a
//! similarity- and co-occurrence-based polarity score, and each feature is
//! paired with its evaluation (plus optional negation and degree adverb)
//! through dependency rules and a library of syntactic templates.

pub mod conllu;
pub mod corpus;
pub mod error;
pub mod evaluation;
pub mod extraction;
pub mod lexicon;
pub mod polarity;
pub mod stats;
pub mod templates;

pub use conllu::{parse_conllu, parse_conllu_with, write_conllu, RelationMap};
pub use corpus::{validate_tree, DependencyToken, ParsedSentence, Review, Violation};
pub use error::{Error, Result};
pub use evaluation::{
    category_report, match_tags, parse_gold, GoldAnnotation, MatchCounts, MetricsReport,
    MetricsRow, Strictness,
};
pub use extraction::{
    extract, read_tags_jsonl, write_tags_jsonl, ExtractOptions, FeatureTag, Resources,
};
pub use lexicon::{SentimentLexicon, WordKind, WordList, WordLists};
pub use polarity::{classify, PmiVariant, PolarityConfig, PolarityLabel, PolarityVerdict};
pub use stats::{collect_stats, CorpusStats, CountingUnit};
pub use templates::{Role, SyntacticTemplate, TemplateLibrary};
