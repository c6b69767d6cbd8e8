//! Single-file index persistence.
//!
//! Layout: 8-byte magic, little-endian `u32` format version, then a bincode
//! payload. Term dictionaries are written in sorted order so identical
//! indexes produce identical files.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{validate_field_name, FieldIndex, InvertedIndex, Posting};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"FIELDRNK";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct StoredField {
    name: String,
    lengths: Vec<u32>,
    terms: Vec<(String, Vec<Posting>)>,
    total_len: u64,
}

#[derive(Serialize, Deserialize)]
struct StoredIndex {
    n_docs: u64,
    ext_ids: Vec<String>,
    fields: Vec<StoredField>,
}

impl InvertedIndex {
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        let fields = self
            .fields
            .iter()
            .map(|f| {
                let mut terms: Vec<_> = f
                    .terms
                    .iter()
                    .map(|(t, list)| (t.clone(), list.clone()))
                    .collect();
                terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
                StoredField {
                    name: f.name.clone(),
                    lengths: f.lengths.clone(),
                    terms,
                    total_len: self.stats().field_total_len[&f.name],
                }
            })
            .collect();
        let stored = StoredIndex {
            n_docs: self.stats().n_docs,
            ext_ids: self.ext_ids.clone(),
            fields,
        };
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        bincode::serialize_into(&mut w, &stored).map_err(|e| match *e {
            bincode::ErrorKind::Io(io) => Error::Io(io),
            other => Error::CorruptIndex(other.to_string()),
        })?;
        w.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic).map_err(|_| Error::BadMagic)?;
        if &magic != MAGIC {
            return Err(Error::BadMagic);
        }
        let mut version = [0u8; 4];
        r.read_exact(&mut version)
            .map_err(|_| Error::CorruptIndex("truncated header".into()))?;
        let version = u32::from_le_bytes(version);
        if version != FORMAT_VERSION {
            return Err(Error::UnsupportedVersion(version));
        }
        let stored: StoredIndex =
            bincode::deserialize_from(r).map_err(|e| Error::CorruptIndex(e.to_string()))?;
        Self::from_stored(stored)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_to(BufWriter::new(File::create(path)?))
    }

    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(BufReader::new(File::open(path)?))
    }

    fn from_stored(stored: StoredIndex) -> Result<Self> {
        let corrupt = |msg: String| Err(Error::CorruptIndex(msg));
        let n = stored.ext_ids.len();
        if stored.n_docs != n as u64 {
            return corrupt(format!("header says {} docs, table has {n}", stored.n_docs));
        }
        let mut fields = Vec::with_capacity(stored.fields.len());
        for f in stored.fields {
            validate_field_name(&f.name)?;
            if f.lengths.len() != n {
                return corrupt(format!(
                    "field `{}` has {} lengths",
                    f.name,
                    f.lengths.len()
                ));
            }
            let total: u64 = f.lengths.iter().map(|&l| u64::from(l)).sum();
            if total != f.total_len {
                return corrupt(format!("field `{}` length total mismatch", f.name));
            }
            for (term, list) in &f.terms {
                let sorted = list.windows(2).all(|w| w[0].doc < w[1].doc);
                let in_range = list.iter().all(|p| (p.doc as usize) < n && p.tf > 0);
                if list.is_empty() || !sorted || !in_range {
                    return corrupt(format!("bad postings for `{term}` in `{}`", f.name));
                }
            }
            let n_terms = f.terms.len();
            let terms: std::collections::HashMap<_, _> = f.terms.into_iter().collect();
            if terms.len() != n_terms {
                return corrupt(format!("duplicate term in `{}`", f.name));
            }
            fields.push(FieldIndex {
                name: f.name,
                terms,
                lengths: f.lengths,
            });
        }
        let index = InvertedIndex::from_parts(fields, stored.ext_ids);
        if index.fields.len() != index.field_ids.len() {
            return corrupt("duplicate field name".into());
        }
        if index.doc_ids.len() != n {
            return corrupt("duplicate document id".into());
        }
        Ok(index)
    }
}
