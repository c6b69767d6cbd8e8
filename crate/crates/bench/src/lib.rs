//! Synthetic corpora and query workloads shared by the benchmarks.

use fieldrank_core::{Document, IndexBuilder, InvertedIndex};
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FIELDS: [&str; 2] = ["title", "body"];

/// Draws words from a Zipf-like distribution over a fixed vocabulary, so a
/// few terms have long postings lists and most are rare.
pub struct Generator {
    rng: ChaCha8Rng,
    words: WeightedIndex<f64>,
}

impl Generator {
    pub fn new(seed: u64, vocabulary: usize) -> Self {
        let weights: Vec<f64> = (1..=vocabulary).map(|r| 1.0 / r as f64).collect();
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            words: WeightedIndex::new(weights).expect("non-empty vocabulary"),
        }
    }

    fn text(&mut self, len: usize) -> String {
        let mut s = String::with_capacity(len * 6);
        for i in 0..len {
            if i > 0 {
                s.push(' ');
            }
            let w = self.words.sample(&mut self.rng);
            s.push_str(&format!("t{w}"));
        }
        s
    }

    pub fn document(&mut self, n: usize) -> Document {
        let title_len = self.rng.gen_range(2..=10);
        let body_len = self.rng.gen_range(20..=300);
        let title = self.text(title_len);
        let body = self.text(body_len);
        Document::new(format!("doc{n}"))
            .with_field("title", title)
            .with_field("body", body)
    }

    pub fn corpus(&mut self, n_docs: usize) -> Vec<Document> {
        (0..n_docs).map(|n| self.document(n)).collect()
    }

    /// A query of `n_terms` terms; every third term is required.
    pub fn query(&mut self, n_terms: usize) -> String {
        (0..n_terms)
            .map(|i| {
                let w = self.words.sample(&mut self.rng);
                if i % 3 == 2 {
                    format!("+t{w}")
                } else {
                    format!("t{w}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn build_index(docs: &[Document]) -> InvertedIndex {
    let mut builder = IndexBuilder::new(FIELDS).expect("valid fields");
    for doc in docs {
        builder.add_document(doc).expect("unique ids");
    }
    builder.commit()
}
