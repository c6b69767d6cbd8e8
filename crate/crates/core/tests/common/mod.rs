//! Shared fixtures for integration tests: random corpora and a straight-line
//! reference scorer that works from raw document text, never from the index.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::Path;

use fieldrank_core::{
    load_stats, write_stats, Bm25Params, Bm25fParams, BooleanQuery, Clause, Document, Hit,
    IndexBuilder, InvertedIndex, Occur, Ranking, Searcher,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub const FIELD_NAMES: [&str; 3] = ["title", "body", "anchor"];

#[derive(Debug, Clone)]
pub struct Corpus {
    pub fields: Vec<String>,
    pub docs: Vec<Document>,
}

impl Corpus {
    pub fn index(&self) -> InvertedIndex {
        let mut b = IndexBuilder::new(self.fields.iter().cloned()).unwrap();
        for d in &self.docs {
            b.add_document(d).unwrap();
        }
        b.commit()
    }

    pub fn canonical() -> Self {
        Corpus {
            fields: vec!["body".into()],
            docs: [("d0", "the cat sat"), ("d1", "the cat cat"), ("d2", "dog")]
                .into_iter()
                .map(|(id, t)| Document::new(id).with_field("body", t))
                .collect(),
        }
    }
}

pub fn word(i: usize) -> String {
    format!("w{i}")
}

/// Up to 50 docs, 1–3 fields, vocabulary of at most 30 words. Term choice is
/// skewed so some terms land in more than half the documents (negative idf).
pub fn random_corpus<R: Rng>(rng: &mut R) -> Corpus {
    let n_fields = rng.gen_range(1..=3);
    let fields: Vec<String> = FIELD_NAMES[..n_fields]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let vocab = rng.gen_range(1..=30);
    let n_docs = rng.gen_range(1..=50);
    let max_len: Vec<usize> = (0..n_fields).map(|_| rng.gen_range(1..=15)).collect();
    let docs = (0..n_docs)
        .map(|i| {
            let mut doc = Document::new(format!("doc-{i}"));
            for (f, name) in fields.iter().enumerate() {
                if rng.gen_bool(0.15) {
                    continue;
                }
                let len = rng.gen_range(0..=max_len[f]);
                let words: Vec<String> = (0..len).map(|_| word(skewed(rng, vocab))).collect();
                doc = doc.with_field(name.clone(), words.join(" "));
            }
            doc
        })
        .collect();
    Corpus { fields, docs }
}

fn skewed<R: Rng>(rng: &mut R, vocab: usize) -> usize {
    let u: f64 = rng.gen();
    ((u * u * vocab as f64) as usize).min(vocab - 1)
}

/// 1–5 clauses over the vocabulary plus an occasional unseen term.
pub fn random_clauses<R: Rng>(rng: &mut R) -> Vec<Clause> {
    let n = rng.gen_range(1..=5);
    (0..n)
        .map(|_| {
            let term = if rng.gen_bool(0.1) {
                "unseen".to_owned()
            } else {
                word(skewed(rng, 30))
            };
            let occur = match rng.gen_range(0..8) {
                0 | 1 => Occur::Must,
                2 | 3 => Occur::Not,
                _ => Occur::Should,
            };
            Clause::new(term, occur)
        })
        .collect()
}

pub fn query_string(clauses: &[Clause]) -> String {
    clauses
        .iter()
        .map(|c| {
            let p = match c.occur {
                Occur::Must => "+",
                Occur::Should => "",
                Occur::Not => "-",
            };
            format!("{p}{}", c.term)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn random_ranking<R: Rng>(rng: &mut R, corpus: &Corpus) -> (Vec<String>, Ranking) {
    let k1 = [0.5, 1.2, 2.0, rng.gen_range(0.1..3.0)][rng.gen_range(0..4)];
    if rng.gen_bool(0.4) {
        let field = corpus.fields.choose(rng).unwrap().clone();
        let b = [0.0, 0.75, 1.0, rng.gen_range(0.0..=1.0)][rng.gen_range(0..4)];
        let p = Bm25Params::new(k1, b)
            .unwrap()
            .with_plus_one(rng.gen_bool(0.5));
        (vec![field], Ranking::Bm25(p))
    } else {
        let mut fields = corpus.fields.clone();
        fields.shuffle(rng);
        fields.truncate(rng.gen_range(1..=fields.len()));
        let n = fields.len();
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..=1.0)).collect();
        let boost: Vec<f64> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.1) {
                    0.0
                } else {
                    rng.gen_range(0.1..5.0)
                }
            })
            .collect();
        let mut p = Bm25fParams::new(fields.clone())
            .unwrap()
            .with_k1(k1)
            .unwrap()
            .with_b(b)
            .unwrap()
            .with_boost(boost)
            .unwrap();
        if rng.gen_bool(0.3) {
            p = p
                .with_df_field(fields.choose(rng).unwrap().clone())
                .unwrap();
        }
        (fields, Ranking::Bm25f(p))
    }
}

// ---------------------------------------------------------------------------
// Reference scorer
// ---------------------------------------------------------------------------

/// Lowercased alphanumeric runs, written independently of the library.
fn ref_tokens(text: &str) -> Vec<String> {
    let lowered: String = text.chars().flat_map(char::to_lowercase).collect();
    lowered
        .split(|c: char| !c.is_alphanumeric())
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect()
}

pub struct Reference {
    ext_ids: Vec<String>,
    /// tokens[doc][field name]
    tokens: Vec<BTreeMap<String, Vec<String>>>,
    avg: BTreeMap<String, f64>,
}

impl Reference {
    pub fn new(corpus: &Corpus) -> Self {
        let tokens: Vec<BTreeMap<String, Vec<String>>> = corpus
            .docs
            .iter()
            .map(|d| {
                corpus
                    .fields
                    .iter()
                    .map(|f| {
                        (
                            f.clone(),
                            d.fields.get(f).map(|t| ref_tokens(t)).unwrap_or_default(),
                        )
                    })
                    .collect()
            })
            .collect();
        let n = tokens.len() as f64;
        let mut avg = BTreeMap::new();
        if !tokens.is_empty() {
            for f in &corpus.fields {
                let total: usize = tokens.iter().map(|d| d[f].len()).sum();
                avg.insert(f.clone(), total as f64 / n);
            }
        }
        Reference {
            ext_ids: corpus.docs.iter().map(|d| d.ext_id.clone()).collect(),
            tokens,
            avg,
        }
    }

    pub fn n(&self) -> usize {
        self.tokens.len()
    }

    pub fn avg(&self, field: &str) -> f64 {
        self.avg[field]
    }

    pub fn tf(&self, doc: usize, field: &str, term: &str) -> u32 {
        self.tokens[doc][field]
            .iter()
            .filter(|t| *t == term)
            .count() as u32
    }

    pub fn len(&self, doc: usize, field: &str) -> u32 {
        self.tokens[doc][field].len() as u32
    }

    pub fn df(&self, field: &str, term: &str) -> u64 {
        (0..self.n())
            .filter(|&d| self.tf(d, field, term) > 0)
            .count() as u64
    }

    pub fn idf(&self, df: u64) -> f64 {
        let n = self.n() as f64;
        let df = df as f64;
        ((n - df + 0.5) / (df + 0.5)).ln()
    }

    fn matches(&self, doc: usize, fields: &[String], term: &str) -> bool {
        fields.iter().any(|f| self.tf(doc, f, term) > 0)
    }

    /// Per-term score exactly as the ranking formulas read.
    pub fn term_score(&self, doc: usize, term: &str, fields: &[String], ranking: &Ranking) -> f64 {
        match ranking {
            Ranking::Bm25(p) => {
                let f = &fields[0];
                let tf = self.tf(doc, f, term) as f64;
                if tf == 0.0 {
                    return 0.0;
                }
                let idf = self.idf(self.df(f, term));
                let dl = self.len(doc, f) as f64;
                let base = tf / (p.k1 * ((1.0 - p.b) + p.b * dl / self.avg(f)) + tf);
                let base = if p.plus_one {
                    base * (p.k1 + 1.0)
                } else {
                    base
                };
                idf * base
            }
            Ranking::Bm25f(p) => {
                let mut weight = 0.0;
                for (i, f) in p.fields.iter().enumerate() {
                    let tf = self.tf(doc, f, term) as f64;
                    if tf == 0.0 {
                        continue;
                    }
                    let l = self.len(doc, f) as f64;
                    weight += tf * p.boost[i] / ((1.0 - p.b[i]) + p.b[i] * l / self.avg(f));
                }
                if weight == 0.0 {
                    return 0.0;
                }
                let df_field = match &p.df_field {
                    Some(f) => f.clone(),
                    None => {
                        // longest average, earliest field on ties
                        let mut best = p.fields[0].clone();
                        for f in &p.fields {
                            if self.avg(f) > self.avg(&best) {
                                best = f.clone();
                            }
                        }
                        best
                    }
                };
                self.idf(self.df(&df_field, term)) * weight / (p.k1 + weight)
            }
        }
    }

    /// Loops over every document: filter, score, sort, truncate.
    pub fn search(
        &self,
        clauses: &[Clause],
        fields: &[String],
        ranking: &Ranking,
        top_k: usize,
    ) -> Vec<RefHit> {
        let has_must = clauses.iter().any(|c| c.occur == Occur::Must);
        let has_should = clauses.iter().any(|c| c.occur == Occur::Should);
        if !has_must && !has_should {
            return Vec::new();
        }
        let mut hits = Vec::new();
        for d in 0..self.n() {
            let m = |c: &Clause| self.matches(d, fields, &c.term);
            let keep = if has_must {
                clauses.iter().filter(|c| c.occur == Occur::Must).all(m)
            } else {
                clauses.iter().filter(|c| c.occur == Occur::Should).any(m)
            } && !clauses.iter().filter(|c| c.occur == Occur::Not).any(m);
            if !keep {
                continue;
            }
            let mut score = 0.0;
            let mut scale = 0.0;
            for c in clauses.iter().filter(|c| c.occur != Occur::Not) {
                if m(c) {
                    let s = self.term_score(d, &c.term, fields, ranking);
                    score += s;
                    scale += s.abs();
                }
            }
            hits.push((d, score, scale));
        }
        hits.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        hits.truncate(top_k);
        hits.into_iter()
            .map(|(d, score, scale)| RefHit {
                id: self.ext_ids[d].clone(),
                score,
                scale,
            })
            .collect()
    }
}

/// A reference result. `scale` is the sum of absolute per-term scores, the
/// magnitude rounding error is proportional to when terms cancel.
#[derive(Debug, Clone, PartialEq)]
pub struct RefHit {
    pub id: String,
    pub score: f64,
    pub scale: f64,
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Compares engine hits (truncated to `top_k`) with the untruncated
/// reference ranking.
///
/// Scores must agree within `tol` relative to the larger of the score and the
/// reference scale, both rank by rank and per document. Documents whose
/// reference scores agree within that tolerance are tied, so their relative
/// order (and which of them survives truncation) may differ: association
/// order in the arithmetic can move a true tie by an ulp.
pub fn compare_hits(
    got: &[Hit],
    reference: &[RefHit],
    top_k: usize,
    tol: f64,
) -> Result<(), String> {
    let want = &reference[..reference.len().min(top_k)];
    if got.len() != want.len() {
        return Err(format!("{} hits, reference has {}", got.len(), want.len()));
    }
    let by_id: BTreeMap<&str, &RefHit> = reference.iter().map(|r| (r.id.as_str(), r)).collect();
    let agree = |a: f64, b: f64, scale: f64| (a - b).abs() <= tol * a.abs().max(b.abs()).max(scale);
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        let Some(r) = by_id.get(g.ext_id.as_str()) else {
            return Err(format!(
                "rank {i}: {} is not a reference candidate",
                g.ext_id
            ));
        };
        if !agree(g.score, w.score, w.scale.max(r.scale)) {
            return Err(format!(
                "rank {i}: got {} {} want {} {}",
                g.ext_id, g.score, w.id, w.score
            ));
        }
        if !agree(g.score, r.score, r.scale) {
            return Err(format!(
                "rank {i}: {} scored {} vs reference {}",
                g.ext_id, g.score, r.score
            ));
        }
        if g.ext_id != w.id && !agree(r.score, w.score, r.scale.max(w.scale)) {
            return Err(format!(
                "rank {i}: got {} want {} and they are not tied",
                g.ext_id, w.id
            ));
        }
    }
    let mut ids: Vec<&str> = got.iter().map(|h| h.ext_id.as_str()).collect();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != got.len() {
        return Err("duplicate document in results".into());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Index access paths
// ---------------------------------------------------------------------------

/// Where a test's index comes from: straight from the builder, or written to
/// disk together with its stats file and read back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Memory,
    Reloaded,
}

pub struct Prepared {
    pub index: InvertedIndex,
    pub averages: Option<BTreeMap<String, f64>>,
}

impl Prepared {
    pub fn searcher(&self) -> Searcher<'_> {
        let s = Searcher::new(&self.index);
        match &self.averages {
            Some(a) => s.with_average_lengths(a.clone()),
            None => s,
        }
    }

    pub fn search(&self, query: &BooleanQuery, ranking: &Ranking, top_k: usize) -> Vec<Hit> {
        self.searcher().search(query, ranking, top_k).unwrap()
    }
}

impl Backend {
    pub fn prepare(self, corpus: &Corpus, scratch: &Path) -> Prepared {
        let index = corpus.index();
        match self {
            Backend::Memory => Prepared {
                index,
                averages: None,
            },
            Backend::Reloaded => {
                let idx_path = scratch.join("index.bin");
                let stats_path = scratch.join("index.bin.stats");
                index.save(&idx_path).unwrap();
                write_stats(index.stats(), &stats_path).unwrap();
                let reloaded = InvertedIndex::open(&idx_path).unwrap();
                let averages = load_stats(&stats_path).unwrap();
                assert_eq!(averages, index.stats().field_avg_len);
                Prepared {
                    index: reloaded,
                    averages: Some(averages),
                }
            }
        }
    }
}
