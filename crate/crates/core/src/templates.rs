//! Syntactic templates.
//!
//! One template per line:
//!
//! ```text
//! id | SLOT; SLOT; ...
//! SLOT = ROLE:pos1|pos2:rel1|rel2[:opt]
//! ```
//!
//! `ROLE` is one of `FEATURE`, `NEGATION`, `ADVERB`, `EVALUATION`, `ANY`;
//! `*` in the POS or relation position accepts any tag. Slots are listed in
//! surface order. Blank lines and lines starting with `#` are ignored.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Floor for the indirect-pair window when no template is longer.
pub const DEFAULT_MAX_WINDOW: usize = 5;

/// The library shipped with the crate.
pub const DEFAULT_TEMPLATES: &str = include_str!("../resources/default_templates.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Feature,
    Negation,
    Adverb,
    Evaluation,
    Any,
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "FEATURE" => Ok(Role::Feature),
            "NEGATION" => Ok(Role::Negation),
            "ADVERB" => Ok(Role::Adverb),
            "EVALUATION" => Ok(Role::Evaluation),
            "ANY" => Ok(Role::Any),
            other => Err(format!("unknown role {other:?}")),
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Feature => "FEATURE",
            Role::Negation => "NEGATION",
            Role::Adverb => "ADVERB",
            Role::Evaluation => "EVALUATION",
            Role::Any => "ANY",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TagSet {
    Any,
    Only(BTreeSet<String>),
}

impl TagSet {
    pub fn accepts(&self, tag: &str) -> bool {
        match self {
            TagSet::Any => true,
            TagSet::Only(tags) => tags.contains(tag),
        }
    }

    fn parse(text: &str) -> std::result::Result<Self, String> {
        let text = text.trim();
        if text == "*" {
            return Ok(TagSet::Any);
        }
        let tags: BTreeSet<String> = text.split('|').map(|t| t.trim().to_string()).collect();
        if tags.iter().any(String::is_empty) {
            return Err(format!("empty tag in {text:?}"));
        }
        Ok(TagSet::Only(tags))
    }
}

impl fmt::Display for TagSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TagSet::Any => f.write_str("*"),
            TagSet::Only(tags) => {
                let tags: Vec<&str> = tags.iter().map(String::as_str).collect();
                f.write_str(&tags.join("|"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub role: Role,
    pub pos: TagSet,
    pub relations: TagSet,
    pub optional: bool,
}

impl Slot {
    /// Whether an element with this role, POS and relation fits the slot.
    pub fn accepts(&self, role: Role, pos: &str, relation: &str) -> bool {
        (self.role == Role::Any || self.role == role)
            && self.pos.accepts(pos)
            && self.relations.accepts(relation)
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.role, self.pos, self.relations)?;
        if self.optional {
            f.write_str(":opt")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntacticTemplate {
    pub id: String,
    pub slots: Vec<Slot>,
}

impl SyntacticTemplate {
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    fn check(&self) -> std::result::Result<(), String> {
        let count = |role| self.slots.iter().filter(|s| s.role == role).count();
        for role in [Role::Feature, Role::Evaluation] {
            if count(role) != 1 {
                return Err(format!(
                    "needs exactly one {role} slot, found {}",
                    count(role)
                ));
            }
            if self.slots.iter().any(|s| s.role == role && s.optional) {
                return Err(format!("{role} slot cannot be optional"));
            }
        }
        for role in [Role::Negation, Role::Adverb] {
            if count(role) > 1 {
                return Err(format!("at most one {role} slot allowed"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for SyntacticTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slots: Vec<String> = self.slots.iter().map(ToString::to_string).collect();
        write!(f, "{} | {}", self.id, slots.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateLibrary {
    templates: Vec<SyntacticTemplate>,
    max_window: usize,
}

fn parse_slot(text: &str) -> std::result::Result<Slot, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(format!("slot {text:?} must be ROLE:POS:REL[:opt]"));
    }
    let optional = match parts.get(3).map(|p| p.trim()) {
        None => false,
        Some("opt") => true,
        Some(other) => return Err(format!("unknown slot flag {other:?}")),
    };
    Ok(Slot {
        role: parts[0].parse()?,
        pos: TagSet::parse(parts[1])?,
        relations: TagSet::parse(parts[2])?,
        optional,
    })
}

impl TemplateLibrary {
    /// Parses a library; the window limit is the longer of `window_floor`
    /// and the longest template.
    pub fn parse(text: &str, window_floor: usize) -> Result<Self> {
        let mut templates = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let schema = |message: String| Error::Schema {
                line: n + 1,
                message,
            };
            let (id, body) = line
                .split_once('|')
                .ok_or_else(|| schema("expected `id | slots`".into()))?;
            let id = id.trim();
            if id.is_empty() {
                return Err(schema("empty template id".into()));
            }
            let slots = body
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(parse_slot)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(schema)?;
            let template = SyntacticTemplate {
                id: id.to_string(),
                slots,
            };
            template.check().map_err(schema)?;
            templates.push(template);
        }
        Self::new(templates, window_floor)
    }

    pub fn new(templates: Vec<SyntacticTemplate>, window_floor: usize) -> Result<Self> {
        if window_floor == 0 {
            return Err(Error::Config("window limit must be positive".into()));
        }
        if templates.is_empty() {
            return Err(Error::EmptyLexicon("template".into()));
        }
        let mut seen = HashSet::new();
        for t in &templates {
            if !seen.insert(t.id.as_str()) {
                return Err(Error::DuplicateTemplate(t.id.clone()));
            }
            t.check()
                .map_err(|message| Error::Schema { line: 0, message })?;
        }
        let longest = templates
            .iter()
            .map(SyntacticTemplate::len)
            .max()
            .unwrap_or(0);
        Ok(TemplateLibrary {
            templates,
            max_window: window_floor.max(longest),
        })
    }

    /// The shipped library with the default window floor.
    pub fn default_library() -> Self {
        Self::parse(DEFAULT_TEMPLATES, DEFAULT_MAX_WINDOW).expect("shipped templates are valid")
    }

    pub fn templates(&self) -> &[SyntacticTemplate] {
        &self.templates
    }

    pub fn get(&self, id: &str) -> Option<&SyntacticTemplate> {
        self.templates.iter().find(|t| t.id == id)
    }

    pub fn max_window(&self) -> usize {
        self.max_window
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }
}
