use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use fieldrank_core::scoring::{DEFAULT_B, DEFAULT_K1};
use fieldrank_core::{Bm25Params, Bm25fParams, Ranking};

/// Bad flag combination or value; reported with exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Bm25,
    Bm25f,
}

#[derive(Debug, Clone, Args)]
pub struct RankingArgs {
    /// Ranking function
    #[arg(long, value_enum, default_value_t = Mode::Bm25)]
    pub mode: Mode,

    /// Field(s) to search, comma-separated; exactly one for bm25
    #[arg(long, value_delimiter = ',', required = true)]
    pub fields: Vec<String>,

    /// Saturation constant [default: 2]
    #[arg(long)]
    pub k1: Option<f64>,

    /// Length normalization: one value for bm25, one per field (in --fields order) for bm25f [default: 0.75]
    #[arg(long, value_delimiter = ',')]
    pub b: Option<Vec<f64>>,

    /// Per-field boosts in --fields order (bm25f only) [default: 1]
    #[arg(long, value_delimiter = ',')]
    pub boost: Option<Vec<f64>>,

    /// Multiply BM25 term weights by (k1 + 1) (bm25 only)
    #[arg(long)]
    pub plus_one: bool,

    /// Field whose document frequency feeds idf (bm25f only) [default: longest average length]
    #[arg(long)]
    pub df_field: Option<String>,

    /// Stats file with average field lengths [default: <index>.stats]
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

impl RankingArgs {
    pub fn ranking(&self) -> Result<Ranking, UsageError> {
        let k1 = self.k1.unwrap_or(DEFAULT_K1);
        match self.mode {
            Mode::Bm25 => {
                if self.fields.len() != 1 {
                    return usage(format!(
                        "bm25 searches exactly one field, got {}",
                        self.fields.len()
                    ));
                }
                if self.boost.is_some() {
                    return usage("--boost only applies to bm25f");
                }
                if self.df_field.is_some() {
                    return usage("--df-field only applies to bm25f");
                }
                let b = match self.b.as_deref() {
                    None => DEFAULT_B,
                    Some([b]) => *b,
                    Some(v) => return usage(format!("bm25 takes one --b value, got {}", v.len())),
                };
                Bm25Params::new(k1, b)
                    .map(|p| Ranking::Bm25(p.with_plus_one(self.plus_one)))
                    .map_err(|e| UsageError(e.to_string()))
            }
            Mode::Bm25f => {
                if self.plus_one {
                    return usage("--plus-one only applies to bm25");
                }
                let n = self.fields.len();
                for (flag, values) in [("--b", &self.b), ("--boost", &self.boost)] {
                    if let Some(v) = values {
                        if v.len() != n {
                            return usage(format!(
                                "{flag} needs one value per field in --fields order: {n} fields, {} values",
                                v.len()
                            ));
                        }
                    }
                }
                let build = || {
                    let mut p = Bm25fParams::new(self.fields.clone())?.with_k1(k1)?;
                    if let Some(b) = &self.b {
                        p = p.with_b(b.clone())?;
                    }
                    if let Some(boost) = &self.boost {
                        p = p.with_boost(boost.clone())?;
                    }
                    if let Some(df) = &self.df_field {
                        p = p.with_df_field(df.clone())?;
                    }
                    Ok::<_, fieldrank_core::Error>(p)
                };
                build()
                    .map(Ranking::Bm25f)
                    .map_err(|e| UsageError(e.to_string()))
            }
        }
    }

    pub fn stats_path(&self, index: &Path) -> PathBuf {
        self.stats.clone().unwrap_or_else(|| stats_path_for(index))
    }
}

/// `<index>.stats`, the stats file written next to an index.
pub fn stats_path_for(index: &Path) -> PathBuf {
    let mut s = OsString::from(index.as_os_str());
    s.push(".stats");
    PathBuf::from(s)
}
