use std::collections::HashSet;

use crate::error::{Error, Result};

pub const DEFAULT_K1: f64 = 2.0;
pub const DEFAULT_B: f64 = 0.75;
pub const DEFAULT_BOOST: f64 = 1.0;

/// Parameters for single-field BM25.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bm25Params {
    pub k1: f64,
    pub b: f64,
    /// Multiply each term weight by `k1 + 1`, so a single occurrence in a
    /// document of average length scores exactly its idf.
    pub plus_one: bool,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Self {
            k1: DEFAULT_K1,
            b: DEFAULT_B,
            plus_one: false,
        }
    }
}

impl Bm25Params {
    pub fn new(k1: f64, b: f64) -> Result<Self> {
        let params = Self {
            k1,
            b,
            plus_one: false,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_plus_one(mut self, on: bool) -> Self {
        self.plus_one = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_k1(self.k1)?;
        check_b(self.b, "b")
    }
}

/// Parameters for multi-field BM25F. `b` and `boost` are positional: entry
/// `i` belongs to `fields[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bm25fParams {
    pub k1: f64,
    pub fields: Vec<String>,
    pub b: Vec<f64>,
    pub boost: Vec<f64>,
    /// Field whose document frequency feeds idf. `None` picks the searched
    /// field with the longest average length at search time.
    pub df_field: Option<String>,
}

impl Bm25fParams {
    /// Defaults for every field: `k1 = 2`, `b = 0.75`, `boost = 1`.
    pub fn new<I, S>(fields: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let fields: Vec<String> = fields.into_iter().map(Into::into).collect();
        let n = fields.len();
        let params = Self {
            k1: DEFAULT_K1,
            fields,
            b: vec![DEFAULT_B; n],
            boost: vec![DEFAULT_BOOST; n],
            df_field: None,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_k1(mut self, k1: f64) -> Result<Self> {
        self.k1 = k1;
        self.validate()?;
        Ok(self)
    }

    pub fn with_b(mut self, b: Vec<f64>) -> Result<Self> {
        self.b = b;
        self.validate()?;
        Ok(self)
    }

    pub fn with_boost(mut self, boost: Vec<f64>) -> Result<Self> {
        self.boost = boost;
        self.validate()?;
        Ok(self)
    }

    pub fn with_df_field(mut self, field: impl Into<String>) -> Result<Self> {
        self.df_field = Some(field.into());
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_k1(self.k1)?;
        if self.fields.is_empty() {
            return Err(Error::InvalidParams(
                "BM25F needs at least one field".into(),
            ));
        }
        let mut seen = HashSet::new();
        for f in &self.fields {
            if !seen.insert(f.as_str()) {
                return Err(Error::DuplicateField(f.clone()));
            }
        }
        let n = self.fields.len();
        if self.b.len() != n || self.boost.len() != n {
            return Err(Error::InvalidParams(format!(
                "{} fields but {} b values and {} boosts; per-field arrays must align with the field list",
                n,
                self.b.len(),
                self.boost.len()
            )));
        }
        for (f, &b) in self.fields.iter().zip(&self.b) {
            check_b(b, &format!("b for `{f}`"))?;
        }
        for (f, &boost) in self.fields.iter().zip(&self.boost) {
            if !(boost.is_finite() && boost >= 0.0) {
                return Err(Error::InvalidParams(format!(
                    "boost for `{f}` must be finite and >= 0, got {boost}"
                )));
            }
        }
        if let Some(df) = &self.df_field {
            if !seen.contains(df.as_str()) {
                return Err(Error::InvalidParams(format!(
                    "df field `{df}` is not one of the searched fields"
                )));
            }
        }
        Ok(())
    }

    /// Position in `fields` of the field used for document frequency.
    ///
    /// Without an explicit choice this is the field with the largest average
    /// length according to `avg_len`; ties and missing averages resolve to the
    /// earliest field in the list.
    pub fn df_field_index(&self, avg_len: impl Fn(&str) -> Option<f64>) -> usize {
        if let Some(df) = &self.df_field {
            if let Some(i) = self.fields.iter().position(|f| f == df) {
                return i;
            }
        }
        let mut best = 0;
        let mut best_avg = f64::NEG_INFINITY;
        for (i, f) in self.fields.iter().enumerate() {
            if let Some(avg) = avg_len(f) {
                if avg > best_avg {
                    best = i;
                    best_avg = avg;
                }
            }
        }
        best
    }
}

/// Ranking function and its parameters for one search.
#[derive(Debug, Clone, PartialEq)]
pub enum Ranking {
    Bm25(Bm25Params),
    Bm25f(Bm25fParams),
}

fn check_k1(k1: f64) -> Result<()> {
    if k1.is_finite() && k1 > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "k1 must be finite and > 0, got {k1}"
        )))
    }
}

fn check_b(b: f64, what: &str) -> Result<()> {
    if (0.0..=1.0).contains(&b) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "{what} must lie in [0, 1], got {b}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let p = Bm25Params::default();
        assert_eq!((p.k1, p.b, p.plus_one), (2.0, 0.75, false));
        let f = Bm25fParams::new(["title", "body"]).unwrap();
        assert_eq!(f.k1, 2.0);
        assert_eq!(f.b, [0.75, 0.75]);
        assert_eq!(f.boost, [1.0, 1.0]);
        assert_eq!(f.df_field, None);
    }

    #[test]
    fn bm25_ranges() {
        assert!(Bm25Params::new(0.0, 0.5).is_err());
        assert!(Bm25Params::new(-1.0, 0.5).is_err());
        assert!(Bm25Params::new(1.2, 1.5).is_err());
        assert!(Bm25Params::new(1.2, -0.1).is_err());
        assert!(Bm25Params::new(f64::NAN, 0.5).is_err());
        assert!(Bm25Params::new(1.2, 0.0).is_ok());
        assert!(Bm25Params::new(1.2, 1.0).is_ok());
    }

    #[test]
    fn bm25f_arrays_must_align() {
        let p = Bm25fParams::new(["title", "body"]).unwrap();
        assert!(p.clone().with_b(vec![0.5]).is_err());
        assert!(p.clone().with_boost(vec![1.0, 2.0, 3.0]).is_err());
        assert!(p.clone().with_b(vec![0.5, 1.1]).is_err());
        assert!(p.clone().with_boost(vec![-1.0, 1.0]).is_err());
        assert!(p.clone().with_boost(vec![0.0, 1.0]).is_ok());
        assert!(p.clone().with_df_field("anchor").is_err());
        assert!(p.with_df_field("title").is_ok());
        assert!(Bm25fParams::new(Vec::<String>::new()).is_err());
        assert!(Bm25fParams::new(["a", "a"]).is_err());
    }

    #[test]
    fn df_field_resolution() {
        let p = Bm25fParams::new(["title", "body", "anchor"]).unwrap();
        let avg = |f: &str| match f {
            "title" => Some(1.5),
            "body" => Some(40.0),
            "anchor" => Some(40.0),
            _ => None,
        };
        assert_eq!(p.df_field_index(avg), 1);
        assert_eq!(p.df_field_index(|_| None), 0);
        let explicit = p.with_df_field("title").unwrap();
        assert_eq!(explicit.df_field_index(avg), 0);
    }
}
