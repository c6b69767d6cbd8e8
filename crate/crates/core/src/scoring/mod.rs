//! BM25 and BM25F ranking with boolean candidate filtering.
//!
//! A candidate must contain every MUST term, or at least one SHOULD term when
//! there are no MUST terms, and no NOT term. Candidates are scored by summing
//! the per-term weights of MUST and SHOULD clauses in query order; NOT
//! clauses never add score. A query without MUST or SHOULD clauses matches
//! nothing.
//!
//! In BM25F mode a document matches a term if any searched field contains
//! it, and idf uses the document frequency of a single field (by default the
//! searched field with the longest average length).

mod formulas;
mod params;
mod search;

pub use formulas::{bm25_term_score, bm25f_field_weight, bm25f_term_score, idf};
pub use params::{Bm25Params, Bm25fParams, Ranking, DEFAULT_B, DEFAULT_BOOST, DEFAULT_K1};
pub use search::{hit_order, search, Hit, Searcher};
