//! Regex patterns for structured PII attributes.
//!
//! The built-in set covers the synthetic identifier formats the data
//! generator emits: social security numbers (3-2-4), phone numbers,
//! passport numbers (one letter + 8 digits), driver license numbers
//! (two letters + 7 digits), credit card numbers (4x4 groups), bank
//! account numbers (10-12 digits), ZIP codes, and dates of birth
//! (`YYYY-MM-DD` or `Month D, YYYY`). All numeric patterns carry word
//! boundaries so a ZIP never fires inside a longer digit run.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::LazyLock;

use regex::Regex;

use super::{DetectError, MatchMethod, PiiMatch};

/// An ordered set of compiled per-attribute patterns.
#[derive(Debug, Clone)]
pub struct PatternSet {
    // Sorted by attribute id; the id order is also the tie-break priority
    // for equal-length matches at the same position.
    patterns: Vec<(String, Regex)>,
}

static BUILTIN: LazyLock<PatternSet> = LazyLock::new(|| {
    PatternSet::from_json_str(include_str!("../../data/patterns.json"))
        .expect("bundled patterns must compile")
});

impl PatternSet {
    /// The bundled pattern set matching the generator's canonical formats.
    pub fn builtin() -> &'static PatternSet {
        &BUILTIN
    }

    /// Parse a `{ attribute_id: regex_source }` JSON map. Sources are taken
    /// bit-exact; anchors and character classes are compiled as written.
    pub fn from_json_str(json: &str) -> Result<PatternSet, DetectError> {
        let raw: BTreeMap<String, String> = serde_json::from_str(json)?;
        let mut patterns = Vec::with_capacity(raw.len());
        for (id, source) in raw {
            let regex = Regex::new(&source).map_err(|source| DetectError::Pattern {
                attribute_id: id.clone(),
                source,
            })?;
            patterns.push((id, regex));
        }
        Ok(PatternSet { patterns })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<PatternSet, DetectError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| DetectError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    /// Whether `attribute_id` has a structured pattern in this set.
    pub fn is_structured(&self, attribute_id: &str) -> bool {
        self.patterns.iter().any(|(id, _)| id == attribute_id)
    }

    /// Whether `text` as a whole is a valid value for the attribute.
    pub fn validates(&self, attribute_id: &str, text: &str) -> bool {
        self.patterns
            .iter()
            .find(|(id, _)| id == attribute_id)
            .map(|(_, re)| re.find(text).is_some_and(|m| m.as_str() == text))
            .unwrap_or(false)
    }

    /// All non-overlapping structured matches, left to right, preferring the
    /// longest match at each position.
    pub fn detect(&self, text: &str) -> Vec<PiiMatch> {
        let mut candidates: Vec<PiiMatch> = Vec::new();
        for (priority, (id, regex)) in self.patterns.iter().enumerate() {
            for m in regex.find_iter(text) {
                candidates.push(PiiMatch {
                    attribute_id: id.clone(),
                    matched_text: m.as_str().to_string(),
                    span: (m.start(), m.end()),
                    method: MatchMethod::Pattern,
                    priority,
                });
            }
        }
        candidates.sort_by(|a, b| {
            a.span
                .0
                .cmp(&b.span.0)
                .then((b.span.1 - b.span.0).cmp(&(a.span.1 - a.span.0)))
                .then(a.priority.cmp(&b.priority))
        });
        let mut taken: Vec<PiiMatch> = Vec::new();
        let mut claimed_end = 0usize;
        for c in candidates {
            if c.span.0 >= claimed_end {
                claimed_end = c.span.1;
                taken.push(c);
            }
        }
        taken
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ssn_matches_three_two_four() {
        let matches = PatternSet::builtin().detect("My SSN is 123-45-6789.");
        assert_eq!(matches.len(), 1);
        assert_eq!(matches[0].attribute_id, "S9");
        assert_eq!(matches[0].matched_text, "123-45-6789");
    }

    #[test]
    fn empty_input_yields_nothing() {
        assert!(PatternSet::builtin().detect("").is_empty());
    }

    #[test]
    fn phones_come_back_in_document_order() {
        let matches = PatternSet::builtin().detect("Call 555-0123-4567 or 555-0199-8888");
        assert_eq!(matches.len(), 2);
        assert!(matches.iter().all(|m| m.attribute_id == "S7"));
        assert_eq!(matches[0].matched_text, "555-0123-4567");
        assert_eq!(matches[1].matched_text, "555-0199-8888");
        assert!(matches[0].span.1 <= matches[1].span.0);
    }

    #[test]
    fn zip_does_not_fire_inside_card_groups() {
        let matches = PatternSet::builtin().detect("card 1111-2222-3333-4444 on file");
        assert_eq!(matches.len(), 1);
        assert_eq!(matches[0].attribute_id, "A13");
    }

    #[test]
    fn bank_run_does_not_spawn_zip_matches() {
        let matches = PatternSet::builtin().detect("account 48203917265 ok");
        assert_eq!(matches.len(), 1);
        assert_eq!(matches[0].attribute_id, "A12");
        assert_eq!(matches[0].matched_text, "48203917265");
    }

    #[test]
    fn textual_birth_date_matches() {
        let matches = PatternSet::builtin().detect("born June 23, 1987 in town");
        assert_eq!(matches.len(), 1);
        assert_eq!(matches[0].attribute_id, "S4");
        assert_eq!(matches[0].matched_text, "June 23, 1987");
    }

    #[test]
    fn matched_text_revalidates_against_its_pattern() {
        let text = "zip 83412, SSN 321-54-9876, phone (415) 283-9047, DL AB1234567, \
                    passport K12345678, dob 1987-06-23, card 1111 2222 3333 4444";
        let set = PatternSet::builtin();
        let matches = set.detect(text);
        assert_eq!(matches.len(), 7);
        for m in &matches {
            assert!(set.validates(&m.attribute_id, &m.matched_text), "{m:?}");
            assert_eq!(&text[m.span.0..m.span.1], m.matched_text);
        }
    }
}
