//! Answer extraction from raw response text.
//!
//! Integer scanning rules:
//! * a digit run preceded or followed by a letter or underscore is part of a
//!   word ("v2", "3rd") and is ignored, along with any ".digits" tail;
//! * a minus sign (ASCII or U+2212) binds to the number only when it
//!   immediately precedes the digits and is not itself preceded by a letter
//!   or digit, so "-3" parses negative but "7-3" and "x-3" do not;
//! * thousands groups ",ddd" are absorbed when the leading group has at most
//!   three digits ("1,234" is one token; "19, 20" is two);
//! * a decimal tail is consumed with the token; a nonzero fraction
//!   disqualifies it as an integer answer ("19.5" yields nothing, "19.0"
//!   yields 19).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use endpoint_client::{ExtractedAnswer, TrialScorer};
use probe_forge::{names, GroundTruth, ProbeInstance};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractionMode {
    /// Extracted value = last integer token; correct iff it equals the
    /// ground truth.
    StrictLastNumber,
    /// Correct iff the ground truth appears as a standalone integer
    /// anywhere in the response.
    ContainsCorrect,
}

impl fmt::Display for ExtractionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractionMode::StrictLastNumber => f.write_str("strict_last_number"),
            ExtractionMode::ContainsCorrect => f.write_str("contains_correct"),
        }
    }
}

impl FromStr for ExtractionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "strict_last_number" | "strict" => Ok(ExtractionMode::StrictLastNumber),
            "contains_correct" | "contains" => Ok(ExtractionMode::ContainsCorrect),
            other => Err(format!("unknown extraction mode: {other}")),
        }
    }
}

fn is_wordy(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// All standalone integers in `text`, in order of appearance.
pub fn scan_integers(text: &str) -> Vec<i64> {
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let c = chars[i];
        if !c.is_ascii_digit() {
            i += 1;
            continue;
        }
        // digit run glued to a word: skip the whole word and any ".digits"
        // tails ("v2", "v2.0", "3rd")
        if i > 0 && is_wordy(chars[i - 1]) {
            while i < n && is_wordy(chars[i]) {
                i += 1;
            }
            while i + 1 < n && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < n && is_wordy(chars[i]) {
                    i += 1;
                }
            }
            continue;
        }

        let negative = i > 0
            && (chars[i - 1] == '-' || chars[i - 1] == '\u{2212}')
            && (i == 1 || !is_wordy(chars[i - 2]));

        let start = i;
        let mut digits = String::new();
        while i < n && chars[i].is_ascii_digit() {
            digits.push(chars[i]);
            i += 1;
        }
        // thousands groups
        if i - start <= 3 {
            while i + 3 < n
                && chars[i] == ','
                && chars[i + 1].is_ascii_digit()
                && chars[i + 2].is_ascii_digit()
                && chars[i + 3].is_ascii_digit()
                && (i + 4 >= n || !chars[i + 4].is_ascii_digit())
            {
                digits.push(chars[i + 1]);
                digits.push(chars[i + 2]);
                digits.push(chars[i + 3]);
                i += 4;
            }
        }
        // decimal tail
        let mut fraction_nonzero = false;
        let mut had_fraction = false;
        if i + 1 < n && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
            had_fraction = true;
            i += 1;
            while i < n && chars[i].is_ascii_digit() {
                if chars[i] != '0' {
                    fraction_nonzero = true;
                }
                i += 1;
            }
        }
        // token glued to a trailing word: not a standalone number
        if i < n && is_wordy(chars[i]) {
            while i < n && is_wordy(chars[i]) {
                i += 1;
            }
            continue;
        }
        if had_fraction && fraction_nonzero {
            continue;
        }
        if digits.len() > 18 {
            continue;
        }
        if let Ok(mut v) = digits.parse::<i64>() {
            if negative {
                v = -v;
            }
            out.push(v);
        }
    }
    out
}

/// Extracts an integer answer and scores it against the ground truth.
/// Never fails: number-free responses come back as (None, false).
pub fn extract_answer(raw: &str, mode: ExtractionMode, truth: i64) -> (Option<i64>, bool) {
    let numbers = scan_integers(raw);
    match mode {
        ExtractionMode::StrictLastNumber => {
            let last = numbers.last().copied();
            (last, last == Some(truth))
        }
        ExtractionMode::ContainsCorrect => {
            if numbers.contains(&truth) {
                (Some(truth), true)
            } else {
                (numbers.last().copied(), false)
            }
        }
    }
}

/// Text-valued answers (attribute probes): the extracted value is the last
/// domain value mentioned; under `ContainsCorrect` any mention of the truth
/// counts.
pub fn extract_text(
    raw: &str,
    mode: ExtractionMode,
    truth: &str,
    domain: &[&str],
) -> (Option<String>, bool) {
    let lower = raw.to_lowercase();
    let mut last: Option<(usize, &str)> = None;
    let mut truth_seen = false;
    for value in domain {
        for (pos, _) in lower.match_indices(&value.to_lowercase()) {
            let before_ok = pos == 0
                || !lower[..pos].chars().next_back().map(is_wordy).unwrap_or(false);
            let end = pos + value.len();
            let after_ok =
                end >= lower.len() || !lower[end..].chars().next().map(is_wordy).unwrap_or(false);
            if before_ok && after_ok {
                if last.map(|(p, _)| pos > p).unwrap_or(true) {
                    last = Some((pos, value));
                }
                if *value == truth {
                    truth_seen = true;
                }
            }
        }
    }
    match mode {
        ExtractionMode::StrictLastNumber => {
            let extracted = last.map(|(_, v)| v.to_string());
            let correct = extracted.as_deref() == Some(truth);
            (extracted, correct)
        }
        ExtractionMode::ContainsCorrect => {
            if truth_seen {
                (Some(truth.to_string()), true)
            } else {
                (last.map(|(_, v)| v.to_string()), false)
            }
        }
    }
}

/// Per-entity integer extraction for multi-entity probes. For each entity
/// name, the value is the last "Name<sep>number" binding in the response,
/// where the separator may contain no letters (so "Widget=40", "Widget: 40",
/// and "Widget 40" bind, but "Widget and Gadget=55" does not bind 55 to
/// Widget). An optional plural "s" after the name is accepted.
pub fn extract_entities(raw: &str, entity_names: &[String]) -> BTreeMap<String, Option<i64>> {
    let lower = raw.to_lowercase();
    let chars: Vec<char> = lower.chars().collect();
    let mut out = BTreeMap::new();
    for name in entity_names {
        let needle = name.to_lowercase();
        let mut found: Option<i64> = None;
        for (byte_pos, _) in lower.match_indices(&needle) {
            // char index of the match
            let cpos = lower[..byte_pos].chars().count();
            let before_ok = cpos == 0 || !is_wordy(chars[cpos - 1]);
            let mut after = cpos + needle.chars().count();
            if after < chars.len() && chars[after] == 's' {
                after += 1;
            }
            if !before_ok || (after < chars.len() && is_wordy(chars[after])) {
                continue;
            }
            // scan a short separator window for the value
            let mut j = after;
            let window_end = (after + 12).min(chars.len());
            let mut bound = None;
            while j < window_end {
                let c = chars[j];
                if c.is_ascii_digit() || c == '-' || c == '\u{2212}' {
                    let tail: String = chars[j..].iter().collect();
                    bound = scan_integers(&tail).into_iter().next();
                    break;
                }
                if c.is_alphabetic() {
                    break;
                }
                j += 1;
            }
            if bound.is_some() {
                found = bound;
            }
        }
        out.insert(name.clone(), found);
    }
    out
}

/// Probe-aware scorer: routes each probe's ground-truth shape to the right
/// extraction, and plugs into the trial runner.
#[derive(Debug, Clone, Copy)]
pub struct Extractor {
    pub mode: ExtractionMode,
}

impl Extractor {
    pub fn new(mode: ExtractionMode) -> Self {
        Self { mode }
    }

    /// Fraction of the probe answered correctly: 0/1 for scalar probes, the
    /// per-item mean for multi-entity probes.
    pub fn value(&self, raw: &str, probe: &ProbeInstance) -> f64 {
        match &probe.ground_truth {
            GroundTruth::Numeric(v) => {
                let (_, ok) = extract_answer(raw, self.mode, *v);
                f64::from(u8::from(ok))
            }
            GroundTruth::Text(v) => {
                let domain = names::attribute_values(probe.spec.surface);
                let (_, ok) = extract_text(raw, self.mode, v, domain);
                f64::from(u8::from(ok))
            }
            GroundTruth::Entities(m) => {
                let names: Vec<String> = m.keys().cloned().collect();
                let extracted = extract_entities(raw, &names);
                let hits = m
                    .iter()
                    .filter(|(k, v)| extracted.get(*k).copied().flatten() == Some(**v))
                    .count();
                hits as f64 / m.len() as f64
            }
        }
    }
}

impl TrialScorer for Extractor {
    fn score(&self, raw: &str, probe: &ProbeInstance) -> (Option<ExtractedAnswer>, bool) {
        match &probe.ground_truth {
            GroundTruth::Numeric(v) => {
                let (extracted, ok) = extract_answer(raw, self.mode, *v);
                (extracted.map(ExtractedAnswer::Int), ok)
            }
            GroundTruth::Text(v) => {
                let domain = names::attribute_values(probe.spec.surface);
                let (extracted, ok) = extract_text(raw, self.mode, v, domain);
                (extracted.map(ExtractedAnswer::Text), ok)
            }
            GroundTruth::Entities(m) => {
                let names: Vec<String> = m.keys().cloned().collect();
                let extracted = extract_entities(raw, &names);
                let all_found: Option<BTreeMap<String, i64>> = extracted
                    .iter()
                    .map(|(k, v)| v.map(|v| (k.clone(), v)))
                    .collect();
                let ok = all_found.as_ref() == Some(m);
                (all_found.map(ExtractedAnswer::Entities), ok)
            }
        }
    }
}
