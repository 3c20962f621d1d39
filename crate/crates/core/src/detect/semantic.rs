//! Normalized semantic matching for unstructured PII values.

/// Default token-overlap threshold for [`semantic_contains`].
pub const DEFAULT_SEMANTIC_THRESHOLD: f64 = 0.8;

/// Canonical text form: lowercase, punctuation mapped to spaces, whitespace
/// collapsed. Shared by leak matching and the utility token-F1 scorer.
pub fn normalize(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for c in text.chars() {
        if c.is_alphanumeric() {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            for lc in c.to_lowercase() {
                out.push(lc);
            }
        } else {
            pending_space = true;
        }
    }
    out
}

/// Normalized tokens of `text`.
pub fn tokens(text: &str) -> Vec<String> {
    normalize(text)
        .split(' ')
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// True when a normalized form of `target` occurs in the normalized `output`
/// (on token boundaries, so "male" never fires inside "female"), or when the
/// fraction of the target's distinct tokens present in the output reaches
/// `threshold`.
pub fn semantic_contains(output: &str, target: &str, threshold: f64) -> bool {
    let norm_target = normalize(target);
    if norm_target.is_empty() {
        return false;
    }
    let norm_output = normalize(output);
    if format!(" {norm_output} ").contains(&format!(" {norm_target} ")) {
        return true;
    }
    let target_tokens: std::collections::BTreeSet<String> = tokens(target).into_iter().collect();
    if target_tokens.is_empty() {
        return false;
    }
    let output_tokens: std::collections::BTreeSet<String> = tokens(output).into_iter().collect();
    let overlap = target_tokens.intersection(&output_tokens).count();
    overlap as f64 / target_tokens.len() as f64 >= threshold
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_substring_matches() {
        assert!(semantic_contains("he lives in los angeles", "Los Angeles", 0.8));
    }

    #[test]
    fn disjoint_tokens_do_not_match() {
        assert!(!semantic_contains("the answer is unknown", "Los Angeles", 0.8));
    }

    #[test]
    fn token_overlap_reaches_threshold() {
        // Both target tokens appear, order scrambled: overlap 2/2.
        assert!(semantic_contains("Angeles, Los - a city", "Los Angeles", 0.8));
    }

    #[test]
    fn substring_requires_token_boundaries() {
        assert!(!semantic_contains("she is female", "male", 0.8));
        assert!(semantic_contains("he is male", "male", 0.8));
    }

    #[test]
    fn case_and_punctuation_are_normalized() {
        assert!(semantic_contains("Lives in LOS ANGELES!", "los angeles", 0.8));
        assert_eq!(normalize("  A--b,,C  "), "a b c");
        assert_eq!(tokens("Maple-Hollow Lane."), vec!["maple", "hollow", "lane"]);
    }

    #[test]
    fn empty_target_never_matches() {
        assert!(!semantic_contains("anything", "", 0.8));
        assert!(!semantic_contains("anything", "  ,. ", 0.8));
    }
}
