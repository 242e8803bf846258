//! Machine-readable reports written to standard output. Field order is fixed
//! by the struct declarations and containers are vectors, so serialization is
//! byte-deterministic for identical inputs.

use serde::Serialize;

#[derive(Serialize)]
pub struct InputDigest {
    pub file: String,
    pub sha256: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar_context: Option<u64>,
}

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub command: &'static str,
    pub inputs: Vec<InputDigest>,
    /// All analysis numbers come from exact arithmetic.
    pub exact: bool,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &'static str, inputs: Vec<InputDigest>, result: T) -> Self {
        Report {
            command,
            inputs,
            exact: true,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

#[derive(Serialize)]
pub struct CheckResult {
    pub phi1_involution: bool,
    pub phi2_involution: bool,
    pub transversal: bool,
    pub f: Vec<Vec<String>>,
    pub f_reversible_by_phi1: bool,
    pub f_reversible_by_phi2: bool,
    pub all_passed: bool,
}

#[derive(Serialize)]
pub struct ClassifyResult {
    pub case: String,
    pub trace: String,
    pub normal_form_phi1: Vec<Vec<String>>,
    pub normal_form_phi2: Vec<Vec<String>>,
    pub conjugacy: Vec<Vec<String>>,
    pub conjugacy_verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suspension: Option<SuspensionInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigen: Option<EigenInfo>,
}

#[derive(Serialize)]
pub struct SuspensionInfo {
    pub core_dim: usize,
    pub trivial_dim: usize,
}

#[derive(Serialize)]
pub struct EigenInfo {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_plus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_minus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_cos: Option<String>,
    pub beta: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct ChainsResult {
    pub k_max: usize,
    pub all_links_hold: bool,
    pub finite_chain: bool,
    pub distinct_fix_count_even: usize,
    pub distinct_fix_count_odd: usize,
    pub subspaces: Vec<Vec<Vec<String>>>,
    pub links: Vec<LinkInfo>,
    pub coincidences: Vec<(String, String)>,
}

#[derive(Serialize)]
pub struct LinkInfo {
    pub source: String,
    pub target: String,
    pub source_subspace: usize,
    pub target_subspace: usize,
    pub relation: String,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct PeriodicResult {
    pub k_max: usize,
    pub certificates: Vec<CertificateInfo>,
}

#[derive(Serialize)]
pub struct CertificateInfo {
    pub flavor: String,
    pub k: usize,
    pub l: usize,
    pub period_divisor: usize,
    pub point: Vec<String>,
}

#[derive(Serialize)]
pub struct SymmetriesResult {
    pub symmetry_dim: usize,
    pub reversing_dim: usize,
    pub symmetry_basis: Vec<Vec<Vec<String>>>,
    pub reversing_basis: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize)]
pub struct ConjugateResult {
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Serialize)]
pub struct OrbitResult {
    pub point: Vec<String>,
    pub steps: i64,
    pub points: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct PlotResult {
    pub out: String,
    pub fixed_line_count: usize,
    pub fixed_line_labels: Vec<String>,
    pub dashed_line_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_points: Option<usize>,
}
