//! Collection statistics and the plain-text stats file.
//!
//! The stats file holds one `field<TAB>average` line per field, sorted by
//! field name, with averages printed in shortest round-trip decimal form.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use super::FieldIndex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CollectionStats {
    pub n_docs: u64,
    pub field_total_len: BTreeMap<String, u64>,
    /// Empty when `n_docs == 0`.
    pub field_avg_len: BTreeMap<String, f64>,
    pub doc_freq: HashMap<String, HashMap<String, u64>>,
}

impl CollectionStats {
    pub(crate) fn compute(n_docs: u64, fields: &[FieldIndex]) -> Self {
        let mut stats = CollectionStats {
            n_docs,
            ..Default::default()
        };
        for field in fields {
            let total: u64 = field.lengths.iter().map(|&l| u64::from(l)).sum();
            stats.field_total_len.insert(field.name.clone(), total);
            if n_docs > 0 {
                stats
                    .field_avg_len
                    .insert(field.name.clone(), total as f64 / n_docs as f64);
            }
            let df = field
                .terms
                .iter()
                .map(|(term, list)| (term.clone(), list.len() as u64))
                .collect();
            stats.doc_freq.insert(field.name.clone(), df);
        }
        stats
    }

    pub fn doc_freq(&self, field: &str, term: &str) -> u64 {
        self.doc_freq
            .get(field)
            .and_then(|m| m.get(term))
            .copied()
            .unwrap_or(0)
    }

    pub fn avg_len(&self, field: &str) -> Option<f64> {
        self.field_avg_len.get(field).copied()
    }

    /// The field with the largest average length; ties go to the name that
    /// sorts first. `None` when no averages exist.
    pub fn longest_field(&self) -> Option<&str> {
        let mut best: Option<(&str, f64)> = None;
        for (name, &avg) in &self.field_avg_len {
            if best.map_or(true, |(_, b)| avg > b) {
                best = Some((name, avg));
            }
        }
        best.map(|(name, _)| name)
    }
}

/// Renders the stats file contents for `stats`.
pub fn format_stats(stats: &CollectionStats) -> String {
    let mut out = String::new();
    for (field, avg) in &stats.field_avg_len {
        out.push_str(field);
        out.push('\t');
        out.push_str(&avg.to_string());
        out.push('\n');
    }
    out
}

pub fn write_stats(stats: &CollectionStats, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_stats(stats))?;
    Ok(())
}

/// Parses stats file contents into a field → average length map.
pub fn parse_stats(text: &str) -> Result<BTreeMap<String, f64>> {
    let mut averages = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: String| Error::StatsParse { line: line_no, msg };
        let (field, value) = line
            .split_once('\t')
            .ok_or_else(|| err("expected `field<TAB>average`".into()))?;
        if field.is_empty() {
            return Err(err("empty field name".into()));
        }
        if value.contains('\t') {
            return Err(err("too many columns".into()));
        }
        let avg: f64 = value
            .parse()
            .map_err(|e| err(format!("bad average {value:?}: {e}")))?;
        if !avg.is_finite() || avg < 0.0 {
            return Err(err(format!(
                "average must be finite and non-negative, got {avg}"
            )));
        }
        if averages.insert(field.to_owned(), avg).is_some() {
            return Err(err(format!("duplicate field `{field}`")));
        }
    }
    Ok(averages)
}

pub fn load_stats(path: impl AsRef<Path>) -> Result<BTreeMap<String, f64>> {
    parse_stats(&fs::read_to_string(path)?)
}
