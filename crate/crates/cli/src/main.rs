mod args;
mod commands;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use args::{RankingArgs, UsageError};

const QUERY_HELP: &str = "\
Query syntax: whitespace-separated terms. `+term` must appear, `-term` must not \
appear, a bare term is optional but adds to the score. A `field:` prefix on a \
term is ignored; --fields decides where terms are searched. Punctuation splits \
terms, so `U.S.A.` becomes three optional terms. A query made only of `-` terms \
matches nothing.";

#[derive(Parser, Debug)]
#[command(
    name = "fieldrank",
    version,
    about = "BM25 / BM25F search over a JSONL corpus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Index a JSONL corpus (`{"id": ..., "fields": {...}}` per line); writes OUT and OUT.stats
    Index {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Fields to index, comma-separated
        #[arg(long, value_delimiter = ',', required = true)]
        fields: Vec<String>,
    },
    /// Run one query and print `id<TAB>score` per hit
    #[command(after_help = QUERY_HELP)]
    Search {
        #[arg(long)]
        index: PathBuf,
        /// Query text; may start with `-`, e.g. `--query -spam`
        #[arg(long, allow_hyphen_values = true)]
        query: String,
        #[command(flatten)]
        ranking: RankingArgs,
        #[arg(long, default_value_t = 10)]
        top_k: usize,
    },
    /// Run a `query_id<TAB>text` file and write a TREC run
    #[command(after_help = QUERY_HELP)]
    Run {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        queries: PathBuf,
        /// Run label for the last column
        #[arg(long)]
        tag: String,
        /// Output file [default: stdout]
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        ranking: RankingArgs,
        #[arg(long, default_value_t = 1000)]
        top_k: usize,
    },
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Index {
            corpus,
            out,
            fields,
        } => {
            let summary = commands::index(&corpus, &out, &fields)?;
            println!("{summary}");
        }
        Command::Search {
            index,
            query,
            ranking,
            top_k,
        } => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            commands::search(&index, &query, &ranking, top_k, &mut lock)?;
            lock.flush()?;
        }
        Command::Run {
            index,
            queries,
            tag,
            out,
            ranking,
            top_k,
        } => match out {
            Some(path) => {
                let n = commands::run_to_path(&index, &queries, &tag, &ranking, top_k, &path)?;
                eprintln!("wrote {n} run lines to {}", path.display());
            }
            None => {
                commands::run(&index, &queries, &tag, &ranking, top_k, io::stdout().lock())?;
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) if err.downcast_ref::<UsageError>().is_some() => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
