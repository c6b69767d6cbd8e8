use std::collections::HashMap;

use super::{validate_field_name, DocId, Document, FieldIndex, InvertedIndex, Posting};
use crate::analysis::for_each_term;
use crate::error::{Error, Result};

/// Single-writer accumulator for documents. Nothing is visible to readers
/// until [`commit`](IndexBuilder::commit).
#[derive(Debug)]
pub struct IndexBuilder {
    fields: Vec<FieldIndex>,
    field_ids: HashMap<String, usize>,
    ext_ids: Vec<String>,
    seen: HashMap<String, DocId>,
}

impl IndexBuilder {
    /// Creates a builder for the given schema. Field order is kept.
    pub fn new<I, S>(fields: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut builder = Self {
            fields: Vec::new(),
            field_ids: HashMap::new(),
            ext_ids: Vec::new(),
            seen: HashMap::new(),
        };
        for name in fields {
            let name = name.into();
            validate_field_name(&name)?;
            if builder.field_ids.contains_key(&name) {
                return Err(Error::DuplicateField(name));
            }
            builder.field_ids.insert(name.clone(), builder.fields.len());
            builder.fields.push(FieldIndex {
                name,
                terms: HashMap::new(),
                lengths: Vec::new(),
            });
        }
        Ok(builder)
    }

    pub fn len(&self) -> usize {
        self.ext_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ext_ids.is_empty()
    }

    /// Tokenizes and indexes `doc`, returning its ordinal.
    ///
    /// The document is validated before anything is written, so a rejected
    /// document leaves the builder unchanged. Declared fields the document
    /// lacks get length 0.
    pub fn add_document(&mut self, doc: &Document) -> Result<DocId> {
        if doc.ext_id.is_empty() {
            return Err(Error::EmptyDocumentId);
        }
        if self.seen.contains_key(&doc.ext_id) {
            return Err(Error::DuplicateDocument(doc.ext_id.clone()));
        }
        let mut slots = Vec::with_capacity(doc.fields.len());
        for (name, text) in &doc.fields {
            validate_field_name(name)?;
            let slot = *self
                .field_ids
                .get(name)
                .ok_or_else(|| Error::UnknownField(name.clone()))?;
            slots.push((slot, text.as_str()));
        }
        let doc_id = DocId::try_from(self.ext_ids.len())
            .map_err(|_| Error::CorruptIndex("document count exceeds u32 range".into()))?;

        for field in &mut self.fields {
            field.lengths.push(0);
        }
        let mut counts: HashMap<String, u32> = HashMap::new();
        for (slot, text) in slots {
            let mut len = 0u32;
            for_each_term(text, |term| {
                len += 1;
                match counts.get_mut(term) {
                    Some(tf) => *tf += 1,
                    None => {
                        counts.insert(term.to_owned(), 1);
                    }
                }
            });
            let field = &mut self.fields[slot];
            field.lengths[doc_id as usize] = len;
            for (term, tf) in counts.drain() {
                field
                    .terms
                    .entry(term)
                    .or_default()
                    .push(Posting { doc: doc_id, tf });
            }
        }

        self.seen.insert(doc.ext_id.clone(), doc_id);
        self.ext_ids.push(doc.ext_id.clone());
        Ok(doc_id)
    }

    /// Freezes the builder into a searchable index and computes statistics.
    pub fn commit(self) -> InvertedIndex {
        // Ordinals are handed out in increasing order, so every postings
        // list is already sorted by doc.
        InvertedIndex::from_parts(self.fields, self.ext_ids)
    }
}
