//! Boolean candidate selection and ranked retrieval.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use super::formulas::{bm25_tf_weight, bm25f_saturation, bm25f_weight_with, idf};
use super::params::{Bm25Params, Bm25fParams, Ranking};
use crate::error::{Error, Result};
use crate::index::{DocId, InvertedIndex, Posting};
use crate::query::{BooleanQuery, Occur};

#[derive(Debug, Clone, PartialEq)]
pub struct Hit {
    pub doc: DocId,
    pub ext_id: String,
    pub score: f64,
}

/// Descending score, then ascending ordinal.
pub fn hit_order(a_score: f64, a_doc: DocId, b_score: f64, b_doc: DocId) -> Ordering {
    b_score.total_cmp(&a_score).then(a_doc.cmp(&b_doc))
}

/// Documents matching one term across the searched fields.
///
/// `docs` is sorted ascending; `tfs` holds `n_fields` frequencies per doc,
/// row-major in the same order.
struct TermMatches {
    docs: Vec<DocId>,
    tfs: Vec<u32>,
}

impl TermMatches {
    fn merge(lists: &[&[Posting]]) -> Self {
        let width = lists.len();
        if width == 1 {
            return Self {
                docs: lists[0].iter().map(|p| p.doc).collect(),
                tfs: lists[0].iter().map(|p| p.tf).collect(),
            };
        }
        let mut cursors = vec![0usize; width];
        let mut docs = Vec::new();
        let mut tfs = Vec::new();
        loop {
            let next = lists
                .iter()
                .zip(&cursors)
                .filter_map(|(list, &c)| list.get(c).map(|p| p.doc))
                .min();
            let Some(doc) = next else { break };
            docs.push(doc);
            for (list, c) in lists.iter().zip(cursors.iter_mut()) {
                match list.get(*c) {
                    Some(p) if p.doc == doc => {
                        tfs.push(p.tf);
                        *c += 1;
                    }
                    _ => tfs.push(0),
                }
            }
        }
        Self { docs, tfs }
    }
}

/// Runs queries against a committed index.
///
/// Average field lengths come from the index's own statistics unless
/// replaced with [`Searcher::with_average_lengths`], e.g. by values read
/// from a stats file.
#[derive(Debug, Clone)]
pub struct Searcher<'a> {
    index: &'a InvertedIndex,
    avg_override: Option<BTreeMap<String, f64>>,
}

impl<'a> Searcher<'a> {
    pub fn new(index: &'a InvertedIndex) -> Self {
        Self {
            index,
            avg_override: None,
        }
    }

    pub fn with_average_lengths(mut self, averages: BTreeMap<String, f64>) -> Self {
        self.avg_override = Some(averages);
        self
    }

    pub fn index(&self) -> &'a InvertedIndex {
        self.index
    }

    pub fn avg_len(&self, field: &str) -> Option<f64> {
        match &self.avg_override {
            Some(m) => m.get(field).copied(),
            None => self.index.stats().avg_len(field),
        }
    }

    /// Top `top_k` hits for `query`, best first; ties go to the lower ordinal.
    pub fn search(
        &self,
        query: &BooleanQuery,
        ranking: &Ranking,
        top_k: usize,
    ) -> Result<Vec<Hit>> {
        let mut scored = self.score_candidates(query, ranking)?;
        let by_rank = |a: &(DocId, f64), b: &(DocId, f64)| hit_order(a.1, a.0, b.1, b.0);
        if top_k == 0 {
            return Ok(Vec::new());
        }
        if scored.len() > top_k {
            scored.select_nth_unstable_by(top_k - 1, by_rank);
            scored.truncate(top_k);
        }
        scored.sort_unstable_by(by_rank);
        Ok(scored
            .into_iter()
            .map(|(doc, score)| Hit {
                doc,
                ext_id: self.index.ext_id(doc).unwrap_or_default().to_owned(),
                score,
            })
            .collect())
    }

    /// Every candidate with its score, in ascending ordinal order.
    pub fn score_candidates(
        &self,
        query: &BooleanQuery,
        ranking: &Ranking,
    ) -> Result<Vec<(DocId, f64)>> {
        let fields = self.searched_fields(query, ranking)?;
        if !query.has_positive() || self.index.n_docs() == 0 {
            return Ok(Vec::new());
        }

        let mut matches: HashMap<&str, TermMatches> = HashMap::new();
        for clause in query.clauses() {
            matches.entry(clause.term.as_str()).or_insert_with(|| {
                let lists: Vec<&[Posting]> = fields
                    .iter()
                    .map(|f| self.index.postings(f, &clause.term))
                    .collect();
                TermMatches::merge(&lists)
            });
        }
        let docs_of = |occur: Occur| {
            query
                .clauses()
                .iter()
                .filter(move |c| c.occur == occur)
                .map(|c| matches[c.term.as_str()].docs.as_slice())
        };

        let mut candidates = if query.has_must() {
            let mut it = docs_of(Occur::Must);
            let first = it.next().unwrap_or_default().to_vec();
            it.fold(first, |acc, docs| intersect(&acc, docs))
        } else {
            docs_of(Occur::Should).fold(Vec::new(), |acc, docs| union(&acc, docs))
        };
        let excluded = docs_of(Occur::Not).fold(Vec::new(), |acc, docs| union(&acc, docs));
        candidates = difference(&candidates, &excluded);
        if candidates.is_empty() {
            return Ok(Vec::new());
        }

        let mut scores = vec![0.0f64; candidates.len()];
        let scorer = TermScorer::new(self, ranking, fields)?;
        for clause in query.clauses().iter().filter(|c| c.occur != Occur::Not) {
            let m = &matches[clause.term.as_str()];
            if m.docs.is_empty() {
                continue;
            }
            let idf = scorer.idf(&clause.term)?;
            let width = fields.len();
            let (mut i, mut j) = (0, 0);
            while i < candidates.len() && j < m.docs.len() {
                match candidates[i].cmp(&m.docs[j]) {
                    Ordering::Less => i += 1,
                    Ordering::Greater => j += 1,
                    Ordering::Equal => {
                        let tfs = &m.tfs[j * width..(j + 1) * width];
                        scores[i] += idf * scorer.tf_weight(candidates[i], tfs)?;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        Ok(candidates.into_iter().zip(scores).collect())
    }

    fn searched_fields<'q>(
        &self,
        query: &'q BooleanQuery,
        ranking: &Ranking,
    ) -> Result<&'q [String]> {
        let fields = query.target_fields();
        match ranking {
            Ranking::Bm25(p) => {
                p.validate()?;
                if fields.len() != 1 {
                    return Err(Error::InvalidParams(format!(
                        "BM25 searches exactly one field, query targets {}",
                        fields.len()
                    )));
                }
            }
            Ranking::Bm25f(p) => {
                p.validate()?;
                if p.fields.as_slice() != fields {
                    return Err(Error::InvalidParams(format!(
                        "BM25F fields {:?} differ from query fields {:?}",
                        p.fields, fields
                    )));
                }
            }
        }
        for f in fields {
            if !self.index.has_field(f) {
                return Err(Error::UnknownField(f.clone()));
            }
        }
        Ok(fields)
    }
}

/// Per-search scoring state: resolved averages, lengths and df source.
enum TermScorer<'s> {
    Bm25 {
        params: Bm25Params,
        field: &'s str,
        lengths: &'s [u32],
        avg: f64,
        index: &'s InvertedIndex,
    },
    Bm25f {
        params: &'s Bm25fParams,
        lengths: Vec<&'s [u32]>,
        avgs: Vec<f64>,
        df_field: &'s str,
        index: &'s InvertedIndex,
    },
}

impl<'s> TermScorer<'s> {
    fn new(searcher: &Searcher<'s>, ranking: &'s Ranking, fields: &'s [String]) -> Result<Self> {
        let index = searcher.index;
        let lengths_of = |f: &str| -> Result<&'s [u32]> {
            index
                .field(f)
                .map(|fi| fi.lengths.as_slice())
                .ok_or_else(|| Error::UnknownField(f.to_owned()))
        };
        Ok(match ranking {
            Ranking::Bm25(params) => {
                let field = fields[0].as_str();
                TermScorer::Bm25 {
                    params: *params,
                    field,
                    lengths: lengths_of(field)?,
                    // NaN flags a missing average; it only errors once a
                    // matching document actually needs it.
                    avg: searcher.avg_len(field).unwrap_or(f64::NAN),
                    index,
                }
            }
            Ranking::Bm25f(params) => {
                let df_idx = params.df_field_index(|f| searcher.avg_len(f));
                TermScorer::Bm25f {
                    params,
                    lengths: fields
                        .iter()
                        .map(|f| lengths_of(f))
                        .collect::<Result<_>>()?,
                    avgs: fields
                        .iter()
                        .map(|f| searcher.avg_len(f).unwrap_or(f64::NAN))
                        .collect(),
                    df_field: params.fields[df_idx].as_str(),
                    index,
                }
            }
        })
    }

    fn idf(&self, term: &str) -> Result<f64> {
        let (index, df_field) = match self {
            TermScorer::Bm25 { index, field, .. } => (index, *field),
            TermScorer::Bm25f {
                index, df_field, ..
            } => (index, *df_field),
        };
        idf(u64::from(index.n_docs()), index.doc_freq(df_field, term))
    }

    fn tf_weight(&self, doc: DocId, tfs: &[u32]) -> Result<f64> {
        match self {
            TermScorer::Bm25 {
                params,
                field,
                lengths,
                avg,
                ..
            } => bm25_tf_weight(tfs[0], lengths[doc as usize], *avg, params, field),
            TermScorer::Bm25f {
                params,
                lengths,
                avgs,
                ..
            } => {
                let w = bm25f_weight_with(tfs, |c| lengths[c][doc as usize], avgs, params)?;
                Ok(bm25f_saturation(w, params.k1))
            }
        }
    }
}

/// Convenience wrapper: search with the index's own statistics.
pub fn search(
    index: &InvertedIndex,
    query: &BooleanQuery,
    ranking: &Ranking,
    top_k: usize,
) -> Result<Vec<Hit>> {
    Searcher::new(index).search(query, ranking, top_k)
}

fn intersect(a: &[DocId], b: &[DocId]) -> Vec<DocId> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn union(a: &[DocId], b: &[DocId]) -> Vec<DocId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn difference(a: &[DocId], b: &[DocId]) -> Vec<DocId> {
    let mut out = Vec::with_capacity(a.len());
    let mut j = 0;
    for &doc in a {
        while j < b.len() && b[j] < doc {
            j += 1;
        }
        if j == b.len() || b[j] != doc {
            out.push(doc);
        }
    }
    out
}
