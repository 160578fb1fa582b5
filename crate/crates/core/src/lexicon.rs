//! Word resources: the four matching lists and the sentiment reference
//! lexicon (polarity references, synonym sets, similarity table).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::corpus::normalize_lemma;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordKind {
    Feature,
    Evaluation,
    Adverb,
    Negation,
}

impl fmt::Display for WordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordKind::Feature => "feature",
            WordKind::Evaluation => "evaluation",
            WordKind::Adverb => "adverb",
            WordKind::Negation => "negation",
        })
    }
}

/// A set of lemma entries. Multi-word entries are stored with single spaces
/// between their lemmas and only match contiguous token runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordList {
    kind: WordKind,
    entries: BTreeSet<String>,
    longest: usize,
}

fn clean_entry(line: &str, lowercase: bool) -> String {
    let joined = line.split_whitespace().collect::<Vec<_>>().join(" ");
    if lowercase {
        normalize_lemma(&joined)
    } else {
        joined
    }
}

impl WordList {
    /// One entry per line; `#` starts a comment line. Entries are lowercased.
    pub fn parse(text: &str, kind: WordKind) -> Result<Self> {
        Self::parse_with_case(text, kind, true)
    }

    pub fn parse_with_case(text: &str, kind: WordKind, lowercase: bool) -> Result<Self> {
        let entries = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| clean_entry(l, lowercase));
        Self::build(kind, entries)
    }

    pub fn from_entries<I, S>(kind: WordKind, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self::build(
            kind,
            entries.into_iter().map(|e| clean_entry(e.as_ref(), true)),
        )
    }

    fn build(kind: WordKind, entries: impl Iterator<Item = String>) -> Result<Self> {
        let entries: BTreeSet<String> = entries.filter(|e| !e.is_empty()).collect();
        if entries.is_empty() {
            return Err(Error::EmptyLexicon(kind.to_string()));
        }
        let longest = entries
            .iter()
            .map(|e| e.split(' ').count())
            .max()
            .unwrap_or(1);
        Ok(WordList {
            kind,
            entries,
            longest,
        })
    }

    pub fn kind(&self) -> WordKind {
        self.kind
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.entries.contains(lemma)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of lemmas in the longest entry.
    pub fn longest_entry(&self) -> usize {
        self.longest
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str)
    }
}

/// The four lists used by the extractor, checked for cross-list conflicts.
#[derive(Debug, Clone)]
pub struct WordLists {
    pub features: WordList,
    pub evaluations: WordList,
    pub adverbs: WordList,
    pub negations: WordList,
}

impl WordLists {
    /// Feature and evaluation entries must not appear in any other list.
    /// Adverbs and negations may overlap; the negation rule skips such words.
    pub fn new(
        features: WordList,
        evaluations: WordList,
        adverbs: WordList,
        negations: WordList,
    ) -> Result<Self> {
        let lists = [&features, &evaluations, &adverbs, &negations];
        for (i, a) in lists.iter().enumerate() {
            for b in &lists[i + 1..] {
                let exclusive = matches!(a.kind, WordKind::Feature | WordKind::Evaluation)
                    || matches!(b.kind, WordKind::Feature | WordKind::Evaluation);
                if !exclusive {
                    continue;
                }
                if let Some(lemma) = a.entries.intersection(&b.entries).next() {
                    return Err(Error::LexiconConflict {
                        lemma: lemma.clone(),
                        first: a.kind.to_string(),
                        second: b.kind.to_string(),
                    });
                }
            }
        }
        Ok(WordLists {
            features,
            evaluations,
            adverbs,
            negations,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub lemma: String,
    /// Signed intensity: positive for commendatory, negative for derogatory,
    /// magnitude in (0, 1].
    pub intensity: f64,
}

impl Reference {
    pub fn is_commendatory(&self) -> bool {
        self.intensity > 0.0
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SentimentLexicon {
    references: Vec<Reference>,
    synonyms: Vec<BTreeSet<String>>,
    synonym_index: HashMap<String, usize>,
    similarity: HashMap<(String, String), f64>,
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

fn polarity_name(intensity: f64) -> &'static str {
    if intensity > 0.0 {
        "commendatory"
    } else {
        "derogatory"
    }
}

impl SentimentLexicon {
    /// Reads the three sentiment resources.
    ///
    /// * references: `lemma<TAB>+|-[<TAB>intensity]`, intensity in (0, 1],
    ///   default 1.0; the polarity column gives the sign.
    /// * synonyms: one set per line, members tab-separated.
    /// * similarity: `lemma1<TAB>lemma2<TAB>value`, value in [0, 1].
    pub fn parse(references: &str, synonyms: &str, similarity: &str) -> Result<Self> {
        let mut lexicon = SentimentLexicon::default();
        for (line, fields) in tsv_rows(references) {
            if fields.len() < 2 || fields.len() > 3 {
                return Err(Error::Parse {
                    line,
                    message: "expected `lemma<TAB>+|-[<TAB>intensity]`".into(),
                });
            }
            let sign = match fields[1] {
                "+" => 1.0,
                "-" => -1.0,
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("polarity must be + or -, got {other:?}"),
                    })
                }
            };
            let magnitude = match fields.get(2) {
                Some(v) => parse_value(v, line)?,
                None => 1.0,
            };
            if !(magnitude > 0.0 && magnitude <= 1.0) {
                return Err(Error::Range {
                    line,
                    what: "intensity",
                    value: magnitude,
                    range: "(0, 1]",
                });
            }
            lexicon.add_reference(fields[0], sign * magnitude, line)?;
        }
        for (line, fields) in tsv_rows(synonyms) {
            lexicon.add_synonym_set(&fields, line)?;
        }
        for (line, fields) in tsv_rows(similarity) {
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line,
                    message: "expected `lemma1<TAB>lemma2<TAB>value`".into(),
                });
            }
            let value = parse_value(fields[2], line)?;
            lexicon.add_similarity(fields[0], fields[1], value, line)?;
        }
        Ok(lexicon)
    }

    /// Builds a lexicon from in-memory parts; positions stand in for line
    /// numbers in errors.
    pub fn from_parts(
        references: &[(&str, f64)],
        synonyms: &[Vec<&str>],
        similarity: &[(&str, &str, f64)],
    ) -> Result<Self> {
        let mut lexicon = SentimentLexicon::default();
        for (i, (lemma, intensity)) in references.iter().enumerate() {
            lexicon.add_reference(lemma, *intensity, i + 1)?;
        }
        for (i, set) in synonyms.iter().enumerate() {
            lexicon.add_synonym_set(set, i + 1)?;
        }
        for (i, (a, b, v)) in similarity.iter().enumerate() {
            lexicon.add_similarity(a, b, *v, i + 1)?;
        }
        Ok(lexicon)
    }

    fn add_reference(&mut self, lemma: &str, intensity: f64, line: usize) -> Result<()> {
        if !(intensity.abs() > 0.0 && intensity.abs() <= 1.0) {
            return Err(Error::Range {
                line,
                what: "intensity",
                value: intensity,
                range: "[-1, 0) or (0, 1]",
            });
        }
        let lemma = normalize_lemma(lemma);
        if let Some(existing) = self.references.iter().find(|r| r.lemma == lemma) {
            if existing.is_commendatory() != (intensity > 0.0) {
                return Err(Error::LexiconConflict {
                    lemma,
                    first: polarity_name(existing.intensity).into(),
                    second: polarity_name(intensity).into(),
                });
            }
            return Ok(());
        }
        self.references.push(Reference { lemma, intensity });
        Ok(())
    }

    fn add_synonym_set<S: AsRef<str>>(&mut self, members: &[S], line: usize) -> Result<()> {
        let set: BTreeSet<String> = members
            .iter()
            .map(|m| normalize_lemma(m.as_ref()))
            .filter(|m| !m.is_empty())
            .collect();
        if set.is_empty() {
            return Ok(());
        }
        if let Some(lemma) = set.iter().find(|m| self.synonym_index.contains_key(*m)) {
            return Err(Error::SynonymOverlap {
                lemma: lemma.clone(),
                line,
            });
        }
        let id = self.synonyms.len();
        for m in &set {
            self.synonym_index.insert(m.clone(), id);
        }
        self.synonyms.push(set);
        Ok(())
    }

    fn add_similarity(&mut self, a: &str, b: &str, value: f64, line: usize) -> Result<()> {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Range {
                line,
                what: "similarity",
                value,
                range: "[0, 1]",
            });
        }
        let key = ordered(&normalize_lemma(a), &normalize_lemma(b));
        match self.similarity.get(&key) {
            Some(&existing) if existing != value => Err(Error::Parse {
                line,
                message: format!(
                    "similarity of {:?}/{:?} already given as {existing}",
                    key.0, key.1
                ),
            }),
            _ => {
                self.similarity.insert(key, value);
                Ok(())
            }
        }
    }

    /// All references in file order.
    pub fn references(&self) -> &[Reference] {
        &self.references
    }

    pub fn commendatory(&self) -> impl Iterator<Item = &Reference> {
        self.references.iter().filter(|r| r.is_commendatory())
    }

    pub fn derogatory(&self) -> impl Iterator<Item = &Reference> {
        self.references.iter().filter(|r| !r.is_commendatory())
    }

    pub fn reference(&self, lemma: &str) -> Option<&Reference> {
        self.references.iter().find(|r| r.lemma == lemma)
    }

    pub fn is_empty(&self) -> bool {
        self.references.is_empty()
    }

    pub fn synonym_set(&self, lemma: &str) -> Option<&BTreeSet<String>> {
        self.synonym_index.get(lemma).map(|&i| &self.synonyms[i])
    }

    pub fn synonym_sets(&self) -> &[BTreeSet<String>] {
        &self.synonyms
    }

    pub fn table_similarity(&self, a: &str, b: &str) -> Option<f64> {
        self.similarity.get(&ordered(a, b)).copied()
    }

    /// The same lexicon with commendatory and derogatory roles exchanged.
    pub fn swapped(&self) -> Self {
        let mut swapped = self.clone();
        for r in &mut swapped.references {
            r.intensity = -r.intensity;
        }
        swapped
    }
}

/// The synonym set containing `word`, or `{word}` when it belongs to none.
pub fn expand_synonyms(word: &str, lexicon: &SentimentLexicon) -> BTreeSet<String> {
    match lexicon.synonym_set(word) {
        Some(set) => set.clone(),
        None => BTreeSet::from([word.to_string()]),
    }
}

fn tsv_rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(n, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        let fields = trimmed
            .split('\t')
            .map(str::trim)
            .filter(|f| !f.is_empty())
            .collect();
        Some((n + 1, fields))
    })
}

fn parse_value(text: &str, line: usize) -> Result<f64> {
    text.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Parse {
            line,
            message: format!("{text:?} is not a number"),
        })
}
