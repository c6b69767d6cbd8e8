//! Scalar BM25 / BM25F term weights.
//!
//! All logarithms are natural. idf is left unclamped, so terms present in
//! more than half the collection receive negative weight.

use super::params::{Bm25Params, Bm25fParams};
use crate::error::{Error, Result};

/// `ln((N - df + 0.5) / (df + 0.5))`.
pub fn idf(n_docs: u64, df: u64) -> Result<f64> {
    if n_docs == 0 || df > n_docs {
        return Err(Error::InvalidDocFreq { df, n_docs });
    }
    let n = n_docs as f64;
    let df = df as f64;
    Ok(((n - df + 0.5) / (df + 0.5)).ln())
}

/// Saturated, length-normalized tf for BM25, without the idf factor.
pub(crate) fn bm25_tf_weight(
    tf: u32,
    doc_len: u32,
    avg_len: f64,
    params: &Bm25Params,
    field: &str,
) -> Result<f64> {
    if tf == 0 {
        return Ok(0.0);
    }
    check_avg(avg_len, field)?;
    let tf = f64::from(tf);
    let norm = (1.0 - params.b) + params.b * (f64::from(doc_len) / avg_len);
    let denom = params.k1 * norm + tf;
    Ok(if params.plus_one {
        tf * (params.k1 + 1.0) / denom
    } else {
        tf / denom
    })
}

/// BM25 contribution of one term to one document:
/// `idf · tf / (k1·((1 − b) + b·doc_len/avg_len) + tf)`, times `k1 + 1` with
/// the plus-one variant. Zero when `tf == 0`.
pub fn bm25_term_score(
    tf: u32,
    doc_len: u32,
    avg_len: f64,
    df: u64,
    n_docs: u64,
    params: &Bm25Params,
) -> Result<f64> {
    if tf == 0 {
        return Ok(0.0);
    }
    let w = bm25_tf_weight(tf, doc_len, avg_len, params, "<field>")?;
    Ok(idf(n_docs, df)? * w)
}

/// Accumulated BM25F pseudo-frequency of a term over the searched fields:
/// `Σ tf_c · boost_c / ((1 − b_c) + b_c · len_c / avg_c)`.
///
/// The slices are positional, aligned with `params.fields`.
pub fn bm25f_field_weight(
    tf: &[u32],
    field_len: &[u32],
    avg_len: &[f64],
    params: &Bm25fParams,
) -> Result<f64> {
    let n = params.fields.len();
    if tf.len() != n || field_len.len() != n || avg_len.len() != n {
        return Err(Error::InvalidParams(format!(
            "expected {n} per-field values, got tf={} len={} avg={}",
            tf.len(),
            field_len.len(),
            avg_len.len()
        )));
    }
    bm25f_weight_with(tf, |c| field_len[c], avg_len, params)
}

/// [`bm25f_field_weight`] with field lengths fetched lazily by field
/// position, so the search loop needs no per-document buffer. Slices must
/// already be aligned with `params.fields`.
pub(crate) fn bm25f_weight_with(
    tf: &[u32],
    field_len: impl Fn(usize) -> u32,
    avg_len: &[f64],
    params: &Bm25fParams,
) -> Result<f64> {
    let mut weight = 0.0;
    for c in 0..tf.len() {
        if tf[c] == 0 {
            continue;
        }
        check_avg(avg_len[c], &params.fields[c])?;
        let b = params.b[c];
        let norm = (1.0 - b) + b * (f64::from(field_len(c)) / avg_len[c]);
        weight += f64::from(tf[c]) * params.boost[c] / norm;
    }
    Ok(weight)
}

/// `idf · weight / (k1 + weight)`.
pub fn bm25f_term_score(weight: f64, df: u64, n_docs: u64, k1: f64) -> Result<f64> {
    let idf = idf(n_docs, df)?;
    Ok(idf * bm25f_saturation(weight, k1))
}

#[inline]
pub(crate) fn bm25f_saturation(weight: f64, k1: f64) -> f64 {
    weight / (k1 + weight)
}

fn check_avg(avg_len: f64, field: &str) -> Result<()> {
    if avg_len.is_finite() && avg_len > 0.0 {
        Ok(())
    } else {
        Err(Error::MissingAverageLength {
            field: field.to_owned(),
            avg: avg_len,
        })
    }
}
