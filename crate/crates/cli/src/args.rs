//! Command-line flags. Every descriptor, context and run field may also come
//! from a TOML config file; flags take precedence.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Deserializer};

#[derive(Parser, Debug)]
#[command(name = "tamezeta", version, about = "Continuation data and values of Dirichlet series of tame power series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Poles, residues, special values and Bernoulli polynomials as a JSON report.
    Analyze(AnalyzeArgs),
    /// Numerical values of the continued Dirichlet series at given points.
    Eval(EvalArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug, Default)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub descriptor: DescriptorSpec,
    #[command(flatten)]
    pub context: ContextSpec,
    #[command(flatten)]
    pub run: RunSpec,
    /// TOML file supplying any of the settings above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

pub type EvalArgs = AnalyzeArgs;

#[derive(Args, Debug, Default)]
pub struct SelftestArgs {
    /// Working precision in bits (default 128).
    #[arg(long)]
    pub precision: Option<u32>,
    /// "all", "none" or a comma-separated list of catalog names.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Emit the summary as JSON instead of text lines.
    #[arg(long)]
    pub json: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Deserialize, Debug, Default, Clone, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct DescriptorSpec {
    /// hurwitz, eta, dirichletL, lerch, barnes, ehrhart, central-binomial or zeta-even.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Barnes weights, e.g. 1,1.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(deserialize_with = "text_or_list")]
    pub a: Option<String>,
    /// Character modulus.
    #[arg(long)]
    pub modulus: Option<u32>,
    /// Character values χ(1),…,χ(k).
    #[arg(long, allow_hyphen_values = true)]
    #[serde(deserialize_with = "text_or_list")]
    pub chi: Option<String>,
    /// Power q of the denominator (1 − z^k)^q.
    #[arg(long)]
    pub power: Option<u32>,
    /// Lerch parameter with |w| ≤ 1.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(deserialize_with = "text_or_list")]
    pub w: Option<String>,
    /// Ehrhart numerator coefficients g_0, g_1, … with g_0 = 1.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(deserialize_with = "text_or_list")]
    pub g: Option<String>,
    /// Ehrhart period.
    #[arg(long)]
    pub p: Option<u32>,
    /// Ehrhart dimension.
    #[arg(long)]
    pub d: Option<u32>,
    /// Numerator coefficients of a rational α, lowest degree first.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(deserialize_with = "text_or_list")]
    pub num: Option<String>,
    /// Denominator coefficients of a rational α, lowest degree first.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(deserialize_with = "text_or_list")]
    pub den: Option<String>,
}

#[derive(Args, Deserialize, Debug, Default, Clone, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct ContextSpec {
    /// Working precision in bits.
    #[arg(long)]
    pub precision: Option<u32>,
    /// Target tolerance.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Cap on truncation orders and summed terms.
    #[arg(long)]
    pub max_terms: Option<usize>,
}

#[derive(Args, Deserialize, Debug, Default, Clone, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct RunSpec {
    /// Argument t (analyze: the point t0).
    #[arg(long, allow_hyphen_values = true)]
    #[serde(deserialize_with = "text_or_list")]
    pub t0: Option<String>,
    /// Evaluation points, comma-separated, e.g. -1.5,0.5+2i.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(deserialize_with = "text_or_list")]
    pub s: Option<String>,
    /// Number K of special values v_0..v_K.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum)]
    pub method: Option<MethodName>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum MethodName {
    #[default]
    Hasse,
    Oracle,
    Direct,
    Incgamma,
    Compare,
}

impl MethodName {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodName::Hasse => "hasse",
            MethodName::Oracle => "oracle",
            MethodName::Direct => "direct",
            MethodName::Incgamma => "incgamma",
            MethodName::Compare => "compare",
        }
    }
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Accepts a string, a number, or an array of them, joined by commas.
fn text_or_list<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Atom {
        Int(i64),
        Float(f64),
        Text(String),
    }
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Value {
        One(Atom),
        Many(Vec<Atom>),
    }
    let text = |a: Atom| match a {
        Atom::Int(i) => i.to_string(),
        Atom::Float(f) => f.to_string(),
        Atom::Text(s) => s,
    };
    Ok(Some(match Value::deserialize(d)? {
        Value::One(a) => text(a),
        Value::Many(v) => v.into_iter().map(text).collect::<Vec<_>>().join(","),
    }))
}
