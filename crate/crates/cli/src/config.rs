use clap::ValueEnum;
use quiddity::{EvenMode, Generator, ZeroPolicy};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// One pretty-printed JSON document.
    Json,
    /// A header object, then one object per line.
    Jsonl,
    /// A `#` config comment, a header row, then one row per quiddity.
    Csv,
    /// Human-readable text.
    #[default]
    Text,
}

/// Every input that shapes a run's output. Each report embeds it, so a
/// claim such as "no counterexample" always carries the bounds it was
/// checked under.
///
/// The worker count is recorded but not serialized: output is identical
/// for every worker count and embedding it would break that.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuple: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<EvenMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_policy: Option<ZeroPolicy>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub canonical: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub irreducible: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub even: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub strict: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inverse: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub resume: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoint: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_shards: Option<usize>,
    pub format: Format,
    pub work_limit: u64,
    #[serde(skip)]
    pub workers: Option<usize>,
}
