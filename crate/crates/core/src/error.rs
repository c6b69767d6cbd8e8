use std::io;

use thiserror::Error;

use crate::index::DocId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("document id must not be empty")]
    EmptyDocumentId,

    #[error("duplicate document id `{0}`")]
    DuplicateDocument(String),

    #[error("invalid field name {0:?}: must be non-empty and free of tabs and newlines")]
    InvalidFieldName(String),

    #[error("duplicate field `{0}`")]
    DuplicateField(String),

    #[error("unknown field `{0}`")]
    UnknownField(String),

    #[error("document ordinal {doc} out of range (index holds {n_docs} documents)")]
    DocOutOfRange { doc: DocId, n_docs: u32 },

    #[error("document frequency {df} is invalid for a collection of {n_docs} documents")]
    InvalidDocFreq { df: u64, n_docs: u64 },

    #[error(
        "average length {avg} for field `{field}` is not usable; load collection statistics first"
    )]
    MissingAverageLength { field: String, avg: f64 },

    #[error("invalid ranking parameters: {0}")]
    InvalidParams(String),

    #[error("stats file line {line}: {msg}")]
    StatsParse { line: usize, msg: String },

    #[error("corpus line {line}: {msg}")]
    CorpusParse { line: usize, msg: String },

    #[error("queries line {line}: {msg}")]
    QueriesParse { line: usize, msg: String },

    #[error("run file: {0}")]
    RunFormat(String),

    #[error("not an index file (bad magic header)")]
    BadMagic,

    #[error("unsupported index format version {0}")]
    UnsupportedVersion(u32),

    #[error("corrupt index: {0}")]
    CorruptIndex(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
