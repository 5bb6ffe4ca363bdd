//! Serializable report rows and the JSON / CSV writers.

use std::io::Write;

use serde::{Deserialize, Serialize};

use hk_core::HKProfile;

/// Output envelope shared by every subcommand. Only `timing_ms` varies
/// between identical invocations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report<R> {
    pub command: String,
    pub parameters: serde_json::Map<String, serde_json::Value>,
    pub rows: Vec<R>,
    pub timing_ms: f64,
}

/// Columns of a CSV table; vectors are `;`-joined.
pub trait CsvRow {
    fn header() -> &'static [&'static str];
    fn record(&self) -> Vec<String>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub q: u64,
    pub hk: u64,
    pub a: u64,
    pub iota: u64,
    pub iota_from_duality: bool,
    pub m: u64,
    #[serde(rename = "L")]
    pub l: u64,
    pub maximal_rank: bool,
    pub strategy: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub formula: Option<u64>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none", default)]
    pub matches: Option<bool>,
    pub theta_dims: Vec<u64>,
    pub ranks: Vec<u64>,
    pub kernel_dims: Vec<u64>,
}

impl ProfileRow {
    pub fn new(p: &HKProfile, formula: Option<(u64, bool)>) -> Self {
        ProfileRow {
            q: p.q,
            hk: p.hk_value,
            a: p.a_q,
            iota: p.iota_q,
            iota_from_duality: p.iota_from_duality,
            m: p.m_q,
            l: p.l_q,
            maximal_rank: p.maximal_rank,
            strategy: format!("{:?}", p.strategy).to_lowercase(),
            formula: formula.map(|f| f.0),
            matches: formula.map(|f| f.1),
            theta_dims: p.theta_quotient_dims.clone(),
            ranks: p.ranks.clone(),
            kernel_dims: p.kernel_dims.clone(),
        }
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

impl CsvRow for ProfileRow {
    fn header() -> &'static [&'static str] {
        &[
            "q",
            "hk",
            "a",
            "iota",
            "iota_from_duality",
            "m",
            "L",
            "maximal_rank",
            "strategy",
            "formula",
            "match",
            "theta_dims",
            "ranks",
            "kernel_dims",
        ]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.hk.to_string(),
            self.a.to_string(),
            self.iota.to_string(),
            self.iota_from_duality.to_string(),
            self.m.to_string(),
            self.l.to_string(),
            self.maximal_rank.to_string(),
            self.strategy.clone(),
            opt(&self.formula),
            opt(&self.matches),
            join(&self.theta_dims),
            join(&self.ranks),
            join(&self.kernel_dims),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HankelRow {
    pub identity: String,
    pub field: String,
    pub k: u64,
    pub holds: bool,
}

impl CsvRow for HankelRow {
    fn header() -> &'static [&'static str] {
        &["identity", "field", "k", "holds"]
    }

    fn record(&self) -> Vec<String> {
        vec![self.identity.clone(), self.field.clone(), self.k.to_string(), self.holds.to_string()]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaRow {
    /// Number of variables, `n + 1`.
    pub vars: u32,
    /// Exact value as `num/den`.
    pub beta: String,
    pub approx: f64,
}

impl CsvRow for BetaRow {
    fn header() -> &'static [&'static str] {
        &["vars", "beta", "approx"]
    }

    fn record(&self) -> Vec<String> {
        vec![self.vars.to_string(), self.beta.clone(), format!("{:.12}", self.approx)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: u32,
    pub d: u32,
    pub q: u64,
    pub m: u64,
    /// Decimal string: `L(q)` outgrows `u64` for large `n`.
    #[serde(rename = "L")]
    pub l: String,
}

impl CsvRow for BoundRow {
    fn header() -> &'static [&'static str] {
        &["n", "d", "q", "m", "L"]
    }

    fn record(&self) -> Vec<String> {
        vec![self.n.to_string(), self.d.to_string(), self.q.to_string(), self.m.to_string(), self.l.clone()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyRow {
    pub p: u64,
    pub n: u32,
    pub d: u32,
    pub q: u64,
    pub polynomial: String,
    pub hk: u64,
    pub passed: bool,
    /// Names of failed properties.
    pub failures: Vec<String>,
}

impl CsvRow for PropertyRow {
    fn header() -> &'static [&'static str] {
        &["p", "n", "d", "q", "polynomial", "hk", "passed", "failures"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.n.to_string(),
            self.d.to_string(),
            self.q.to_string(),
            self.polynomial.clone(),
            self.hk.to_string(),
            self.passed.to_string(),
            self.failures.join(";"),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn write<R: Serialize + CsvRow, W: Write>(report: &Report<R>, format: Format, out: W) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(R::header())?;
            for row in &report.rows {
                w.write_record(row.record())?;
            }
            w.flush()
        }
    }
}
