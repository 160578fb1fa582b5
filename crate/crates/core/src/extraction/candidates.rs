use crate::corpus::ParsedSentence;
use crate::lexicon::WordLists;
use crate::templates::{Role, Slot, TemplateLibrary};

use super::mentions::Mention;
use super::rules::{find_adverb, find_negation, linkage, Linkage};

#[derive(Debug, Clone, PartialEq)]
pub struct CandidatePair {
    pub feature: Mention,
    pub evaluation: Mention,
    pub negation: Option<Mention>,
    pub adverb: Option<Mention>,
    pub linkage: Linkage,
    /// Tokens strictly between the feature and evaluation spans.
    pub window_span: usize,
    /// Matching template ids, in library order.
    pub templates: Vec<String>,
}

impl CandidatePair {
    /// Role-bearing mentions in surface order.
    pub fn elements(&self) -> Vec<&Mention> {
        let mut elements: Vec<&Mention> = [Some(&self.feature), Some(&self.evaluation)]
            .into_iter()
            .chain([self.negation.as_ref(), self.adverb.as_ref()])
            .flatten()
            .collect();
        elements.sort_by_key(|m| m.span.start);
        elements
    }
}

/// Pairs every feature with every evaluation in the sentence. Indirect pairs
/// further apart than the library window are dropped; direct pairs are kept
/// at any distance. Negation detection can be switched off.
pub fn pair_candidates(
    mentions: &[Mention],
    sentence: &ParsedSentence,
    lists: &WordLists,
    library: &TemplateLibrary,
    detect_negation: bool,
) -> Vec<CandidatePair> {
    let features = mentions.iter().filter(|m| m.role == Role::Feature);
    let mut pairs = Vec::new();
    for feature in features {
        for evaluation in mentions.iter().filter(|m| m.role == Role::Evaluation) {
            let link = linkage(feature, evaluation, sentence);
            let window_span = feature.span.gap(&evaluation.span);
            if link == Linkage::Indirect && window_span > library.max_window() {
                continue;
            }
            let adverb = find_adverb(evaluation, sentence, &lists.adverbs)
                .filter(|a| !feature.span.contains(a.span.start));
            let negation = if detect_negation {
                find_negation(
                    feature,
                    evaluation,
                    sentence,
                    &lists.negations,
                    &lists.adverbs,
                )
            } else {
                None
            };
            pairs.push(CandidatePair {
                feature: feature.clone(),
                evaluation: evaluation.clone(),
                negation,
                adverb,
                linkage: link,
                window_span,
                templates: Vec::new(),
            });
        }
    }
    pairs
}

fn align(slots: &[Slot], elements: &[(Role, &str, &str)]) -> bool {
    match (slots.split_first(), elements.split_first()) {
        (None, None) => true,
        (None, Some(_)) => false,
        (Some((slot, rest)), None) => slot.optional && align(rest, elements),
        (Some((slot, rest)), Some((&(role, pos, rel), tail))) => {
            (slot.accepts(role, pos, rel) && align(rest, tail))
                || (slot.optional && align(rest, elements))
        }
    }
}

/// Ids of all templates whose slots align, in order, with the candidate's
/// elements. Each element's POS and relation are those of its head token.
pub fn match_templates(
    candidate: &CandidatePair,
    sentence: &ParsedSentence,
    library: &TemplateLibrary,
) -> Vec<String> {
    let elements: Vec<(Role, &str, &str)> = candidate
        .elements()
        .into_iter()
        .filter_map(|m| {
            let t = sentence.token(m.head_token(sentence))?;
            Some((m.role, t.pos.as_str(), t.relation.as_str()))
        })
        .collect();
    library
        .templates()
        .iter()
        .filter(|t| align(&t.slots, &elements))
        .map(|t| t.id.clone())
        .collect()
}

/// Drops templates too short to cover an indirect candidate's window.
pub fn admit_window(candidate: &mut CandidatePair, library: &TemplateLibrary) {
    if candidate.linkage == Linkage::Direct {
        return;
    }
    let span = candidate.window_span;
    candidate
        .templates
        .retain(|id| library.get(id).is_some_and(|t| t.len() >= span));
}
