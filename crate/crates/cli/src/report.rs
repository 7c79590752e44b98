use orbitcode::{AnalysisReport, FieldSpec, Poly, Subspace};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Analysis output: the report plus the inputs needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub field: FieldParams,
    pub polynomial: String,
    pub primitive: bool,
    /// Canonical basis rows of the starting subspace.
    pub start: Vec<String>,
    pub oracle_run: bool,
    pub agreement: Option<bool>,
    pub report: AnalysisReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub q: u64,
    pub characteristic: u64,
    /// Modulus of `F_q` over its prime field, when `q` is not prime.
    pub base_modulus: Option<String>,
    pub n: usize,
    pub k: usize,
}

impl ReportDocument {
    pub fn new(base: &FieldSpec, p: &Poly, u: &Subspace, report: AnalysisReport) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            field: FieldParams {
                q: base.size() as u64,
                characteristic: base.characteristic() as u64,
                base_modulus: base.modulus().map(|m| m.to_string()),
                n: u.ambient_dim(),
                k: u.dim(),
            },
            polynomial: p.to_string(),
            primitive: report.mode == orbitcode::AnalysisMode::Primitive,
            start: u.matrix().to_string().lines().map(String::from).collect(),
            oracle_run: report.verified.is_some(),
            agreement: report.agrees(),
            report,
        }
    }
}
