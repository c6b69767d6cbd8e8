//! Inverted index and collection statistics.
//!
//! Documents are ingested through an [`IndexBuilder`] and frozen into an
//! immutable [`InvertedIndex`] by [`IndexBuilder::commit`]. Each declared
//! field keeps its own term dictionary and per-document lengths, so document
//! frequencies are field-level: `doc_freq(f, t)` counts documents whose
//! field `f` contains `t`.

mod builder;
mod persist;
mod stats;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

pub use builder::IndexBuilder;
pub use stats::{format_stats, load_stats, parse_stats, write_stats, CollectionStats};

use crate::error::{Error, Result};

/// Dense internal document ordinal, assigned in ingestion order from 0.
pub type DocId = u32;

/// A document to ingest: an external id plus named text fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    #[serde(rename = "id")]
    pub ext_id: String,
    pub fields: BTreeMap<String, String>,
}

impl Document {
    pub fn new(ext_id: impl Into<String>) -> Self {
        Self {
            ext_id: ext_id.into(),
            fields: BTreeMap::new(),
        }
    }

    pub fn with_field(mut self, name: impl Into<String>, text: impl Into<String>) -> Self {
        self.fields.insert(name.into(), text.into());
        self
    }

    /// Parses one line of the JSONL corpus format.
    pub fn from_json_line(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }
}

/// Occurrence count of a term in one field of one document. `tf` is never 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Posting {
    pub doc: DocId,
    pub tf: u32,
}

/// Dictionary and lengths for a single field.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct FieldIndex {
    pub(crate) name: String,
    pub(crate) terms: HashMap<String, Vec<Posting>>,
    /// Token length of this field for every document, indexed by `DocId`.
    pub(crate) lengths: Vec<u32>,
}

/// Committed, read-only index. Safe to share across threads.
#[derive(Debug, Clone)]
pub struct InvertedIndex {
    pub(crate) fields: Vec<FieldIndex>,
    field_ids: HashMap<String, usize>,
    ext_ids: Vec<String>,
    doc_ids: HashMap<String, DocId>,
    stats: CollectionStats,
}

pub(crate) fn validate_field_name(name: &str) -> Result<()> {
    if name.is_empty() || name.contains(['\t', '\n', '\r']) {
        return Err(Error::InvalidFieldName(name.to_owned()));
    }
    Ok(())
}

impl InvertedIndex {
    /// Assembles an index from finished per-field data. Statistics are always
    /// derived here, so a built index and a reloaded one share one code path.
    pub(crate) fn from_parts(fields: Vec<FieldIndex>, ext_ids: Vec<String>) -> Self {
        let field_ids = fields
            .iter()
            .enumerate()
            .map(|(i, f)| (f.name.clone(), i))
            .collect();
        let doc_ids = ext_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i as DocId))
            .collect();
        let stats = CollectionStats::compute(ext_ids.len() as u64, &fields);
        Self {
            fields,
            field_ids,
            ext_ids,
            doc_ids,
            stats,
        }
    }

    pub fn n_docs(&self) -> u32 {
        self.ext_ids.len() as u32
    }

    /// Field names in declaration order.
    pub fn field_names(&self) -> impl Iterator<Item = &str> + '_ {
        self.fields.iter().map(|f| f.name.as_str())
    }

    pub fn has_field(&self, field: &str) -> bool {
        self.field_ids.contains_key(field)
    }

    pub(crate) fn field(&self, field: &str) -> Option<&FieldIndex> {
        self.field_ids.get(field).map(|&i| &self.fields[i])
    }

    pub fn stats(&self) -> &CollectionStats {
        &self.stats
    }

    /// Number of documents whose `field` contains `term`; 0 for unknown fields.
    pub fn doc_freq(&self, field: &str, term: &str) -> u64 {
        self.postings(field, term).len() as u64
    }

    /// Postings for `term` in `field`, sorted by doc ascending. Empty when
    /// either is unknown.
    pub fn postings(&self, field: &str, term: &str) -> &[Posting] {
        self.field(field)
            .and_then(|f| f.terms.get(term))
            .map_or(&[], Vec::as_slice)
    }

    /// Token length of `field` in document `doc` (0 if the document lacks it).
    pub fn field_length(&self, doc: DocId, field: &str) -> Result<u32> {
        let f = self
            .field(field)
            .ok_or_else(|| Error::UnknownField(field.to_owned()))?;
        f.lengths
            .get(doc as usize)
            .copied()
            .ok_or(Error::DocOutOfRange {
                doc,
                n_docs: self.n_docs(),
            })
    }

    pub fn ext_id(&self, doc: DocId) -> Option<&str> {
        self.ext_ids.get(doc as usize).map(String::as_str)
    }

    pub fn doc_id(&self, ext_id: &str) -> Option<DocId> {
        self.doc_ids.get(ext_id).copied()
    }

    /// Number of distinct terms in `field`.
    pub fn vocabulary_size(&self, field: &str) -> usize {
        self.field(field).map_or(0, |f| f.terms.len())
    }

    /// Terms of `field` in arbitrary order.
    pub fn terms(&self, field: &str) -> impl Iterator<Item = &str> + '_ {
        self.field(field)
            .into_iter()
            .flat_map(|f| f.terms.keys().map(String::as_str))
    }
}
