//! Result files. Field elements are decimal strings; matrices are lists of
//! rows. Blow-up certificates list one `d x d` block per basis matrix, so
//! entry `(j, k)` of block `i` is the coefficient of `B_i (x) E_jk`.

use serde::{Deserialize, Serialize};

pub type MatJson = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<RankSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ncrank: Option<NcrankSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wong: Option<WongSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_ok: Option<bool>,
    /// Wall-clock time; not covered by the determinism guarantee.
    pub timing_ms: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub trials: usize,
    pub sample_size: u64,
    pub cap_dim: usize,
    pub deterministic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankSection {
    pub rank: usize,
    /// Coefficients of a combination of the basis achieving `rank`.
    pub coeffs: Vec<String>,
    pub trials: usize,
    pub sample_size: u64,
    pub failure_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertJson {
    pub degree: usize,
    pub coeffs: Vec<MatJson>,
    pub achieved_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub u: MatJson,
    pub w: MatJson,
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NcrankSection {
    pub ncrk: usize,
    pub n: usize,
    pub start_rank: usize,
    /// `[degree, rank / degree]` per visited state.
    pub trace: Vec<[usize; 2]>,
    pub max_degree: usize,
    /// `(n+1)! / (s+1)!` for the starting rank `s`.
    pub degree_limit: String,
    pub full_cert: CertJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shrunk: Option<WitnessJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainJson {
    /// Positions of `C_1..C_l` in the basis.
    pub indices: Vec<usize>,
    pub vectors: MatJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WongSection {
    pub pivot: MatJson,
    pub pivot_rank: usize,
    pub stage_dims: Vec<usize>,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_escape: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsSection {
    pub n: u32,
    pub m: u32,
    pub sigma_factorial: String,
    pub sigma_derksen: String,
    pub beta_derksen: String,
    pub beta_explicit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSection {
    pub enumeration_field: String,
    pub exhaustive: bool,
    pub ncrk_lower: usize,
    pub ncrk_upper: usize,
    pub rank_lower: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

/// Verdict of `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verified: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}
