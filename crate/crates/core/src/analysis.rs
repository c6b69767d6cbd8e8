//! Text analysis shared by indexing and query parsing.
//!
//! A field's text is lowercased character by character and then split into
//! maximal runs of Unicode alphanumeric characters. There is no stemming and
//! no stopword list. The number of tokens produced is the field length used
//! by every length-normalization term downstream.

use serde::{Deserialize, Serialize};

/// One normalized term occurrence within a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub text: String,
    pub position: u32,
}

/// Produces the token stream for a piece of field text.
///
/// The same analyzer must be used at index time and at query time, otherwise
/// query terms will not line up with the dictionary.
pub trait Analyzer {
    fn analyze(&self, text: &str) -> Vec<Token>;

    /// Token texts only, in order.
    fn terms(&self, text: &str) -> Vec<String> {
        self.analyze(text).into_iter().map(|t| t.text).collect()
    }
}

/// Alphanumeric-run tokenizer with lowercasing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StandardAnalyzer;

impl Analyzer for StandardAnalyzer {
    fn analyze(&self, text: &str) -> Vec<Token> {
        tokenize(text)
    }

    fn terms(&self, text: &str) -> Vec<String> {
        let mut out = Vec::new();
        for_each_term(text, |t| out.push(t.to_owned()));
        out
    }
}

/// Tokenizes `text` with the standard rule.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut position = 0u32;
    for_each_term(text, |t| {
        tokens.push(Token {
            text: t.to_owned(),
            position,
        });
        position += 1;
    });
    tokens
}

/// Number of tokens `tokenize(text)` would produce, without allocating them.
pub fn token_count(text: &str) -> u32 {
    let mut n = 0;
    for_each_term(text, |_| n += 1);
    n
}

/// Calls `f` with each normalized term of `text`, reusing one buffer.
pub(crate) fn for_each_term(text: &str, mut f: impl FnMut(&str)) {
    let mut buf = String::new();
    for ch in text.chars() {
        // Lowercasing can expand one char into several, and some expansions
        // (e.g. a combining dot) are not alphanumeric, so split after mapping.
        for lc in ch.to_lowercase() {
            if lc.is_alphanumeric() {
                buf.push(lc);
            } else if !buf.is_empty() {
                f(&buf);
                buf.clear();
            }
        }
    }
    if !buf.is_empty() {
        f(&buf);
    }
}
