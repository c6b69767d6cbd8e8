//! Boolean query parsing.
//!
//! Grammar: whitespace-separated items. `+item` is required, `-item` is
//! excluded, a bare item is optional but scores. A `field:` prefix on an item
//! is dropped; the query always runs against the fields it was parsed for.
//! Each item is analyzed and every resulting token becomes its own clause
//! carrying the item's occurrence flag. Items that analyze to nothing vanish.

use std::collections::HashSet;
use std::fmt;

use crate::analysis::{Analyzer, StandardAnalyzer};
use crate::error::{Error, Result};
use crate::index::validate_field_name;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Occur {
    Must,
    Should,
    Not,
}

impl Occur {
    fn prefix(self) -> &'static str {
        match self {
            Occur::Must => "+",
            Occur::Should => "",
            Occur::Not => "-",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub term: String,
    pub occur: Occur,
}

impl Clause {
    pub fn new(term: impl Into<String>, occur: Occur) -> Self {
        Self {
            term: term.into(),
            occur,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanQuery {
    clauses: Vec<Clause>,
    target_fields: Vec<String>,
}

impl BooleanQuery {
    /// Builds a query from already-analyzed clauses.
    pub fn new<I, S>(clauses: Vec<Clause>, target_fields: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let target_fields: Vec<String> = target_fields.into_iter().map(Into::into).collect();
        if target_fields.is_empty() {
            return Err(Error::InvalidParams(
                "query needs at least one target field".into(),
            ));
        }
        let mut seen = HashSet::new();
        for f in &target_fields {
            validate_field_name(f)?;
            if !seen.insert(f.as_str()) {
                return Err(Error::DuplicateField(f.clone()));
            }
        }
        Ok(Self {
            clauses,
            target_fields,
        })
    }

    /// Parses `raw` with the standard analyzer.
    pub fn parse<I, S>(raw: &str, target_fields: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::parse_with(raw, target_fields, &StandardAnalyzer)
    }

    /// Parses `raw` using `analyzer` for term normalization. Only an invalid
    /// field list can fail; every query string parses.
    pub fn parse_with<I, S, A>(raw: &str, target_fields: I, analyzer: &A) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        A: Analyzer + ?Sized,
    {
        let mut clauses = Vec::new();
        for item in raw.split_whitespace() {
            let (occur, rest) = match item.as_bytes()[0] {
                b'+' => (Occur::Must, &item[1..]),
                b'-' => (Occur::Not, &item[1..]),
                _ => (Occur::Should, item),
            };
            let rest = match rest.split_once(':') {
                Some((field, term)) if !field.is_empty() => term,
                _ => rest,
            };
            clauses.extend(
                analyzer
                    .terms(rest)
                    .into_iter()
                    .map(|term| Clause { term, occur }),
            );
        }
        Self::new(clauses, target_fields)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn target_fields(&self) -> &[String] {
        &self.target_fields
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn has_must(&self) -> bool {
        self.clauses.iter().any(|c| c.occur == Occur::Must)
    }

    /// True when at least one clause can contribute candidates and score.
    pub fn has_positive(&self) -> bool {
        self.clauses.iter().any(|c| c.occur != Occur::Not)
    }
}

impl fmt::Display for BooleanQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", c.occur.prefix(), c.term)?;
        }
        Ok(())
    }
}
