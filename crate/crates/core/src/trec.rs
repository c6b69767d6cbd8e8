//! TREC topic input and run-file output.
//!
//! Queries are read as `query_id<TAB>query text`, one per line. Run lines use
//! the standard six whitespace-separated columns:
//! `query_id Q0 doc_id rank score tag`.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scoring::Hit;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryTopic {
    pub id: String,
    pub text: String,
}

/// Parses a TAB-separated queries file. Blank lines are skipped.
pub fn parse_queries(text: &str) -> Result<Vec<QueryTopic>> {
    let mut topics = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |msg: &str| Error::QueriesParse {
            line: i + 1,
            msg: msg.to_owned(),
        };
        let (id, query) = line
            .split_once('\t')
            .ok_or_else(|| err("expected `query_id<TAB>query text`"))?;
        if id.is_empty() {
            return Err(err("empty query id"));
        }
        if id.chars().any(char::is_whitespace) {
            return Err(err("query id must not contain whitespace"));
        }
        topics.push(QueryTopic {
            id: id.to_owned(),
            text: query.to_owned(),
        });
    }
    Ok(topics)
}

pub fn read_queries(path: impl AsRef<Path>) -> Result<Vec<QueryTopic>> {
    parse_queries(&fs::read_to_string(path)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunLine {
    pub query_id: String,
    pub ext_id: String,
    /// 1-based.
    pub rank: usize,
    pub score: f64,
    pub tag: String,
}

impl RunLine {
    /// Converts ranked hits for one query into run lines with ranks 1..=n.
    pub fn from_hits(query_id: &str, hits: &[Hit], tag: &str) -> Result<Vec<RunLine>> {
        check_column("query id", query_id)?;
        check_column("run tag", tag)?;
        hits.iter()
            .enumerate()
            .map(|(i, hit)| {
                check_column("document id", &hit.ext_id)?;
                Ok(RunLine {
                    query_id: query_id.to_owned(),
                    ext_id: hit.ext_id.clone(),
                    rank: i + 1,
                    score: hit.score,
                    tag: tag.to_owned(),
                })
            })
            .collect()
    }
}

impl fmt::Display for RunLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} Q0 {} {} {:.6} {}",
            self.query_id, self.ext_id, self.rank, self.score, self.tag
        )
    }
}

pub fn write_run<W: Write>(mut w: W, lines: &[RunLine]) -> Result<()> {
    for line in lines {
        writeln!(w, "{line}")?;
    }
    Ok(())
}

fn check_column(what: &str, value: &str) -> Result<()> {
    if value.is_empty() || value.chars().any(char::is_whitespace) {
        return Err(Error::RunFormat(format!(
            "{what} {value:?} cannot be written as a single run-file column"
        )));
    }
    Ok(())
}
