//! The two dependency rules and the linkage test between mentions.

use crate::corpus::ParsedSentence;
use crate::lexicon::WordList;
use crate::templates::Role;

use super::mentions::{Mention, TokenSpan};

/// POS tag required of a degree adverb.
pub const ADVERB_POS: &str = "ADV";
/// Relation label of an adverbial modifier.
pub const ADVERBIAL_RELATION: &str = "advmod";

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linkage {
    Direct,
    Indirect,
}

/// Rule 1: the nearest adverbial modifier of the evaluation term to its left.
pub fn find_adverb(
    evaluation: &Mention,
    sentence: &ParsedSentence,
    adverbs: &WordList,
) -> Option<Mention> {
    sentence.tokens[..evaluation.span.start - 1]
        .iter()
        .rev()
        .find(|t| {
            evaluation.span.contains(t.head)
                && t.pos == ADVERB_POS
                && t.relation == ADVERBIAL_RELATION
                && adverbs.contains(&t.key())
        })
        .map(|t| Mention::new(Role::Adverb, TokenSpan::single(t.index), t.key()))
}

/// Tokens on the tree path between the two mentions' head tokens, in order
/// from `from` to `to`, excluding tokens inside either span.
pub fn dependency_path(from: &Mention, to: &Mention, sentence: &ParsedSentence) -> Vec<usize> {
    let a = from.head_token(sentence);
    let b = to.head_token(sentence);
    let mut up_a = vec![a];
    up_a.extend(sentence.ancestors(a));
    let mut up_b = vec![b];
    up_b.extend(sentence.ancestors(b));

    let Some((ia, ib)) = up_a
        .iter()
        .enumerate()
        .find_map(|(ia, x)| up_b.iter().position(|y| y == x).map(|ib| (ia, ib)))
    else {
        return Vec::new();
    };
    let mut path: Vec<usize> = up_a[..=ia].to_vec();
    path.extend(up_b[..ib].iter().rev());
    path.retain(|&i| !from.span.contains(i) && !to.span.contains(i));
    path
}

/// Rule 2: when neither mention holds the sentence root, the first negation
/// word between them (tree path first, then surface order) that is not also
/// a degree adverb.
pub fn find_negation(
    feature: &Mention,
    evaluation: &Mention,
    sentence: &ParsedSentence,
    negations: &WordList,
    adverbs: &WordList,
) -> Option<Mention> {
    let root = sentence.root()?.index;
    if feature.span.contains(root) || evaluation.span.contains(root) {
        return None;
    }
    let is_negation = |i: &usize| {
        sentence.token(*i).is_some_and(|t| {
            let key = t.key();
            negations.contains(&key) && !adverbs.contains(&key)
        })
    };
    let (left, right) = if feature.span.start < evaluation.span.start {
        (feature.span, evaluation.span)
    } else {
        (evaluation.span, feature.span)
    };
    dependency_path(feature, evaluation, sentence)
        .into_iter()
        .find(is_negation)
        .or_else(|| (left.end + 1..right.start).find(is_negation))
        .map(|i| {
            let key = sentence.token(i).map(|t| t.key()).unwrap_or_default();
            Mention::new(Role::Negation, TokenSpan::single(i), key)
        })
}

/// Direct when one mention's head token is governed by a token of the other.
pub fn linkage(a: &Mention, b: &Mention, sentence: &ParsedSentence) -> Linkage {
    let governed_by = |x: &Mention, y: &Mention| {
        sentence
            .token(x.head_token(sentence))
            .is_some_and(|t| t.head != 0 && y.span.contains(t.head))
    };
    if governed_by(a, b) || governed_by(b, a) {
        Linkage::Direct
    } else {
        Linkage::Indirect
    }
}
