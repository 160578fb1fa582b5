//! Document-style frequency counts over counting units.
//!
//! A unit is either a sentence or a sliding window of `k` tokens. Each word
//! is counted at most once per unit, and every unordered pair of distinct
//! words in a unit adds one to the joint count.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::corpus::{ParsedSentence, Review};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum CountingUnit {
    #[default]
    Sentence,
    /// Sliding window of `k` consecutive tokens; sentences shorter than `k`
    /// form a single unit.
    Window(usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusStats {
    total_units: u64,
    unigram: HashMap<String, u64>,
    cooccur: HashMap<(String, String), u64>,
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl CorpusStats {
    pub fn total_units(&self) -> u64 {
        self.total_units
    }

    pub fn unigram(&self, word: &str) -> u64 {
        self.unigram.get(word).copied().unwrap_or(0)
    }

    /// Joint count of two words. A word always co-occurs with itself.
    pub fn cooccur(&self, a: &str, b: &str) -> u64 {
        if a == b {
            return self.unigram(a);
        }
        self.cooccur.get(&pair_key(a, b)).copied().unwrap_or(0)
    }

    pub fn vocabulary_size(&self) -> usize {
        self.unigram.len()
    }

    pub fn vocabulary(&self) -> impl Iterator<Item = (&str, u64)> {
        self.unigram.iter().map(|(w, &c)| (w.as_str(), c))
    }

    /// All distinct-word pairs sorted by count descending, then
    /// lexicographically.
    pub fn top_pairs(&self, k: usize) -> Vec<(&str, &str, u64)> {
        let mut pairs: Vec<_> = self
            .cooccur
            .iter()
            .map(|((a, b), &c)| (a.as_str(), b.as_str(), c))
            .collect();
        pairs.sort_by(|x, y| y.2.cmp(&x.2).then_with(|| (x.0, x.1).cmp(&(y.0, y.1))));
        pairs.truncate(k);
        pairs
    }

    fn add_unit(&mut self, words: &BTreeSet<String>) {
        self.total_units += 1;
        let words: Vec<&String> = words.iter().collect();
        for (i, a) in words.iter().enumerate() {
            *self.unigram.entry((*a).clone()).or_insert(0) += 1;
            for b in &words[i + 1..] {
                *self
                    .cooccur
                    .entry(((*a).clone(), (*b).clone()))
                    .or_insert(0) += 1;
            }
        }
    }

    fn merge(mut self, other: CorpusStats) -> CorpusStats {
        self.total_units += other.total_units;
        for (w, c) in other.unigram {
            *self.unigram.entry(w).or_insert(0) += c;
        }
        for (p, c) in other.cooccur {
            *self.cooccur.entry(p).or_insert(0) += c;
        }
        self
    }
}

fn units(sentence: &ParsedSentence, unit: CountingUnit) -> Vec<BTreeSet<String>> {
    let keys = sentence.keys();
    match unit {
        CountingUnit::Sentence => vec![keys.into_iter().collect()],
        CountingUnit::Window(k) => {
            if keys.len() <= k {
                vec![keys.into_iter().collect()]
            } else {
                keys.windows(k)
                    .map(|w| w.iter().cloned().collect())
                    .collect()
            }
        }
    }
}

/// Counts unit frequencies over the corpus. Work is split per review and
/// merged by summation, so the result does not depend on review order.
pub fn collect_stats(corpus: &[Review], unit: CountingUnit) -> Result<CorpusStats> {
    if let CountingUnit::Window(0) = unit {
        return Err(Error::Config(
            "counting window must be at least 1 token".into(),
        ));
    }
    let stats = corpus
        .par_iter()
        .map(|review| {
            let mut stats = CorpusStats::default();
            for sentence in review.sentences.iter().filter(|s| !s.is_empty()) {
                for words in units(sentence, unit) {
                    stats.add_unit(&words);
                }
            }
            stats
        })
        .reduce(CorpusStats::default, CorpusStats::merge);
    if stats.total_units == 0 {
        return Err(Error::EmptyCorpus);
    }
    Ok(stats)
}
