//! Field-aware full-text search with BM25 and BM25F ranking.
//!
//! ```
//! use fieldrank_core::{BooleanQuery, Bm25Params, Document, IndexBuilder, Ranking, search};
//!
//! let mut builder = IndexBuilder::new(["body"]).unwrap();
//! builder.add_document(&Document::new("d0").with_field("body", "the cat sat")).unwrap();
//! builder.add_document(&Document::new("d1").with_field("body", "a dog")).unwrap();
//! let index = builder.commit();
//!
//! let query = BooleanQuery::parse("+dog -cat", ["body"]).unwrap();
//! let hits = search(&index, &query, &Ranking::Bm25(Bm25Params::default()), 10).unwrap();
//! assert_eq!(hits[0].ext_id, "d1");
//! ```

pub mod analysis;
pub mod error;
pub mod index;
pub mod query;
pub mod scoring;
pub mod trec;

pub use analysis::{tokenize, Analyzer, StandardAnalyzer, Token};
pub use error::{Error, Result};
pub use index::{
    load_stats, write_stats, CollectionStats, DocId, Document, IndexBuilder, InvertedIndex, Posting,
};
pub use query::{BooleanQuery, Clause, Occur};
pub use scoring::{search, Bm25Params, Bm25fParams, Hit, Ranking, Searcher};
pub use trec::{QueryTopic, RunLine};
