use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use fieldrank_core::trec::{read_queries, write_run};
use fieldrank_core::{
    load_stats, write_stats, BooleanQuery, Document, Error, IndexBuilder, InvertedIndex, RunLine,
    Searcher,
};
use rayon::prelude::*;

use crate::args::{stats_path_for, RankingArgs};

/// Builds an index from a JSONL corpus and writes `<out>` and `<out>.stats`.
/// Returns the one-line summary.
pub fn index(corpus: &Path, out: &Path, fields: &[String]) -> Result<String> {
    let file =
        File::open(corpus).with_context(|| format!("opening corpus {}", corpus.display()))?;
    let mut builder = IndexBuilder::new(fields.iter().cloned())?;
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.with_context(|| format!("reading {}", corpus.display()))?;
        if line.trim().is_empty() {
            continue;
        }
        let at = |msg: String| Error::CorpusParse { line: i + 1, msg };
        let doc = Document::from_json_line(&line).map_err(|e| at(e.to_string()))?;
        builder.add_document(&doc).map_err(|e| at(e.to_string()))?;
    }
    if builder.is_empty() {
        eprintln!("warning: corpus {} contains no documents", corpus.display());
    }
    let index = builder.commit();
    index
        .save(out)
        .with_context(|| format!("writing index {}", out.display()))?;
    let stats_path = stats_path_for(out);
    write_stats(index.stats(), &stats_path)
        .with_context(|| format!("writing stats {}", stats_path.display()))?;

    let stats = index.stats();
    let mut summary = format!("{} docs", stats.n_docs);
    for field in index.field_names() {
        if let Some(avg) = stats.avg_len(field) {
            summary.push_str(&format!("; {field} avg {avg:.4}"));
        }
    }
    Ok(summary)
}

struct Loaded {
    index: InvertedIndex,
    averages: std::collections::BTreeMap<String, f64>,
}

fn open(index_path: &Path, ranking: &RankingArgs) -> Result<Loaded> {
    let index = InvertedIndex::open(index_path)
        .with_context(|| format!("opening index {}", index_path.display()))?;
    let stats_path = ranking.stats_path(index_path);
    let averages = load_stats(&stats_path)
        .with_context(|| format!("loading stats {}", stats_path.display()))?;
    Ok(Loaded { index, averages })
}

/// Prints `ext_id<TAB>score` for each hit, best first.
pub fn search<W: Write>(
    index_path: &Path,
    query: &str,
    ranking_args: &RankingArgs,
    top_k: usize,
    out: &mut W,
) -> Result<()> {
    let ranking = ranking_args.ranking()?;
    let loaded = open(index_path, ranking_args)?;
    let searcher = Searcher::new(&loaded.index).with_average_lengths(loaded.averages);
    let query = BooleanQuery::parse(query, ranking_args.fields.iter().cloned())?;
    for hit in searcher.search(&query, &ranking, top_k)? {
        writeln!(out, "{}\t{:.6}", hit.ext_id, hit.score)?;
    }
    Ok(())
}

/// Scores every query in `queries` and writes a TREC run, queries in file
/// order. Returns the number of run lines written.
pub fn run<W: Write>(
    index_path: &Path,
    queries: &Path,
    tag: &str,
    ranking_args: &RankingArgs,
    top_k: usize,
    out: W,
) -> Result<usize> {
    let ranking = ranking_args.ranking()?;
    if tag.is_empty() || tag.chars().any(char::is_whitespace) {
        bail!("run tag {tag:?} must be a single non-empty word");
    }
    let topics =
        read_queries(queries).with_context(|| format!("reading queries {}", queries.display()))?;
    let loaded = open(index_path, ranking_args)?;
    let searcher = Searcher::new(&loaded.index).with_average_lengths(loaded.averages);
    let fields = &ranking_args.fields;

    let per_query: Vec<Vec<RunLine>> = topics
        .par_iter()
        .map(|topic| -> Result<Vec<RunLine>> {
            let query = BooleanQuery::parse(&topic.text, fields.iter().cloned())?;
            let hits = searcher
                .search(&query, &ranking, top_k)
                .with_context(|| format!("query {}", topic.id))?;
            Ok(RunLine::from_hits(&topic.id, &hits, tag)?)
        })
        .collect::<Result<_>>()?;

    let lines: Vec<RunLine> = per_query.into_iter().flatten().collect();
    let mut w = BufWriter::new(out);
    write_run(&mut w, &lines)?;
    w.flush()?;
    Ok(lines.len())
}

pub fn run_to_path(
    index_path: &Path,
    queries: &Path,
    tag: &str,
    ranking_args: &RankingArgs,
    top_k: usize,
    out: &Path,
) -> Result<usize> {
    // Score into memory first so a failing query leaves no partial file.
    let mut buf = Vec::new();
    let n = run(index_path, queries, tag, ranking_args, top_k, &mut buf)?;
    fs::write(out, buf).with_context(|| format!("writing run {}", out.display()))?;
    Ok(n)
}
