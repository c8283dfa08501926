//! Text normalization: markup stripping, foreign-run replacement, PII
//! masking, and consecutive-duplicate-paragraph collapsing.
//!
//! `clean_document` applies the four rules in a fixed order —
//! markup → foreign runs → PII → paragraphs — and is idempotent.
//! Sentinel tokens inserted by one rule are never re-matched by
//! another: tag stripping skips the policy's sentinels, foreign-run
//! replacement skips them, and the PII patterns cannot match them.

use std::collections::BTreeSet;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use unicode_properties::{GeneralCategory, UnicodeGeneralCategory};

use crate::corpus::Document;
use crate::script::{is_letter, ScriptClass};

/// Cleaning policy. Defaults match the pipeline's target setup:
/// Hebrew and Latin letters are kept, anything else in runs of two or
/// more letters becomes the foreign sentinel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CleanPolicy {
    pub allowed_scripts: BTreeSet<ScriptClass>,
    pub min_foreign_run: usize,
    pub foreign_token: String,
    pub url_token: String,
    pub email_token: String,
    pub phone_token: String,
}

impl Default for CleanPolicy {
    fn default() -> Self {
        CleanPolicy {
            allowed_scripts: [ScriptClass::Hebrew, ScriptClass::Latin, ScriptClass::Common]
                .into_iter()
                .collect(),
            min_foreign_run: 2,
            foreign_token: "<foreign>".to_string(),
            url_token: "<url>".to_string(),
            email_token: "<email>".to_string(),
            phone_token: "<phone>".to_string(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CleanError {
    #[error("invalid clean policy: {0}")]
    InvalidPolicy(String),
}

impl CleanPolicy {
    pub fn sentinels(&self) -> [&str; 4] {
        [
            &self.foreign_token,
            &self.url_token,
            &self.email_token,
            &self.phone_token,
        ]
    }

    pub fn validate(&self) -> Result<(), CleanError> {
        if self.min_foreign_run < 1 {
            return Err(CleanError::InvalidPolicy(
                "min_foreign_run must be at least 1".into(),
            ));
        }
        for s in self.sentinels() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(CleanError::InvalidPolicy(format!(
                    "sentinel token {s:?} must be non-empty and whitespace-free"
                )));
            }
        }
        Ok(())
    }
}

// Tag syntax is single-line: attribute text may not contain <, >, or a
// newline, so line-level operations can never splice a new tag together.
static TAG_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"</?[A-Za-z][^<>\n]*>").expect("static regex"));
static URL_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)(?:https?://|www\.)[^\s<>]+").expect("static regex"));
static EMAIL_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"[A-Za-z0-9._%+\-]+@[A-Za-z0-9](?:[A-Za-z0-9.\-]*[A-Za-z0-9])?\.[A-Za-z]{2,}")
        .expect("static regex")
});
// 7..=15 digits with short separator gaps and an optional +/( prefix;
// boundary digits are checked at the call site since the regex crate
// has no lookaround.
static PHONE_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?:\+|\()?[0-9](?:[ \-().]{0,2}[0-9]){6,14}").expect("static regex")
});

/// Replace every maximal run of at least `min_foreign_run` letters
/// whose script is outside the allowed set with the foreign sentinel.
/// Digits, punctuation, and whitespace never start or extend a run;
/// combining marks attach to the run of the letter before them.
pub fn replace_foreign_runs(text: &str, policy: &CleanPolicy) -> String {
    let sentinels = policy.sentinels();
    let mut out = String::with_capacity(text.len());
    // pending foreign run: buffered chars + how many of them are letters
    let mut run = String::new();
    let mut run_letters = 0usize;

    let flush = |out: &mut String, run: &mut String, run_letters: &mut usize| {
        if *run_letters >= policy.min_foreign_run {
            out.push_str(&policy.foreign_token);
        } else {
            out.push_str(run);
        }
        run.clear();
        *run_letters = 0;
    };

    let mut rest = text;
    'outer: while !rest.is_empty() {
        for s in sentinels {
            if rest.starts_with(s) {
                flush(&mut out, &mut run, &mut run_letters);
                out.push_str(s);
                rest = &rest[s.len()..];
                continue 'outer;
            }
        }
        let c = rest.chars().next().expect("non-empty");
        rest = &rest[c.len_utf8()..];
        if is_letter(c) && !policy.allowed_scripts.contains(&ScriptClass::of(c)) {
            run.push(c);
            run_letters += 1;
        } else if !run.is_empty() && is_combining_mark(c) {
            run.push(c);
        } else {
            flush(&mut out, &mut run, &mut run_letters);
            out.push(c);
        }
    }
    flush(&mut out, &mut run, &mut run_letters);
    out
}

fn is_combining_mark(c: char) -> bool {
    matches!(
        c.general_category(),
        GeneralCategory::NonspacingMark
            | GeneralCategory::SpacingMark
            | GeneralCategory::EnclosingMark
    )
}

/// Remove XML/HTML-style tags and Unicode control/format characters;
/// normalize space separators (NBSP and friends) to a plain space.
/// Newlines and tabs survive. Default sentinel tokens are preserved.
pub fn strip_markup(text: &str) -> String {
    let policy = CleanPolicy::default();
    strip_markup_keeping(text, &policy.sentinels())
}

/// `strip_markup` with an explicit set of sentinel tokens to preserve.
pub fn strip_markup_keeping(text: &str, keep: &[&str]) -> String {
    // control/format removal first: a format char can otherwise hide a
    // tag from this pass that a second pass would then remove
    let mut cleaned = String::with_capacity(text.len());
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\r' => {
                if chars.peek() == Some(&'\n') {
                    // \r\n collapses to \n
                } else {
                    // bare \r dropped with the other controls
                }
            }
            '\n' | '\t' => cleaned.push(c),
            _ => match c.general_category() {
                GeneralCategory::Control | GeneralCategory::Format => {}
                GeneralCategory::SpaceSeparator => cleaned.push(' '),
                _ => cleaned.push(c),
            },
        }
    }
    // tag removal can expose new tag syntax, so iterate to a fixed point
    loop {
        let next = TAG_RE.replace_all(&cleaned, |caps: &regex::Captures| {
            let m = caps.get(0).expect("whole match").as_str();
            if keep.contains(&m) {
                m.to_string()
            } else {
                String::new()
            }
        });
        if next == cleaned {
            return cleaned;
        }
        cleaned = next.into_owned();
    }
}

/// Replace URLs, email addresses, and phone numbers with their
/// sentinels. Idempotent: sentinels contain nothing the patterns match.
pub fn mask_pii(text: &str, policy: &CleanPolicy) -> String {
    let masked = replace_urls(text, &policy.url_token);
    let masked = EMAIL_RE.replace_all(&masked, policy.email_token.as_str());
    replace_phones(&masked, &policy.phone_token)
}

fn replace_urls(text: &str, token: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut last = 0;
    for m in URL_RE.find_iter(text) {
        let mut end = m.end();
        // back off trailing punctuation that is unlikely to be part of
        // the address
        while end > m.start() {
            let c = text[..end].chars().next_back().expect("non-empty match");
            if matches!(c, '.' | ',' | ';' | ':' | '!' | '?' | ')' | ']' | '}' | '"' | '\'') {
                end -= c.len_utf8();
            } else {
                break;
            }
        }
        if end == m.start() {
            continue;
        }
        out.push_str(&text[last..m.start()]);
        out.push_str(token);
        last = end;
    }
    out.push_str(&text[last..]);
    out
}

fn replace_phones(text: &str, token: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut last = 0;
    for m in PHONE_RE.find_iter(text) {
        // reject matches embedded in a longer digit run
        let before_digit = text[..m.start()]
            .chars()
            .next_back()
            .map(|c| c.is_ascii_digit())
            .unwrap_or(false);
        let after_digit = text[m.end()..]
            .chars()
            .next()
            .map(|c| c.is_ascii_digit())
            .unwrap_or(false);
        out.push_str(&text[last..m.start()]);
        if before_digit || after_digit {
            out.push_str(m.as_str());
        } else {
            out.push_str(token);
        }
        last = m.end();
    }
    out.push_str(&text[last..]);
    out
}

/// Collapse any run of more than two consecutive identical paragraphs
/// (newline-delimited) down to a single instance. Runs of length two
/// are left alone.
pub fn collapse_repeated_paragraphs(text: &str) -> String {
    let parts: Vec<&str> = text.split('\n').collect();
    let mut kept: Vec<&str> = Vec::with_capacity(parts.len());
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j + 1 < parts.len() && parts[j + 1] == parts[i] {
            j += 1;
        }
        let run = j - i + 1;
        let keep = if run > 2 { 1 } else { run };
        for _ in 0..keep {
            kept.push(parts[i]);
        }
        i = j + 1;
    }
    kept.join("\n")
}

/// Full cleaning pass over one document:
/// markup → foreign runs → PII → paragraph collapsing.
pub fn clean_document(doc: &Document, policy: &CleanPolicy) -> Document {
    let text = strip_markup_keeping(&doc.text, &policy.sentinels());
    let text = replace_foreign_runs(&text, policy);
    let text = mask_pii(&text, policy);
    let text = collapse_repeated_paragraphs(&text);
    Document {
        id: doc.id.clone(),
        source: doc.source.clone(),
        text,
        meta: doc.meta.clone(),
    }
}
