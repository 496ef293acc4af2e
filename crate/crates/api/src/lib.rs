//! Wire types for the polarmap HTTP/JSON protocol.
//!
//! Every numeric value travels as an exact rational string (`a/b` or `a`)
//! or as a machine integer; floating point never appears in a report. The
//! plot artifacts (CSV, SVG) are carried as opaque strings and are the only
//! approximate outputs of the system.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

/// Default seed for every seeded operation.
pub const DEFAULT_SEED: u64 = 17;

/// Optional per-request resource limits; unset fields fall back to the
/// server's environment (`POLARMAP_MAX_STEPS`, `POLARMAP_MAX_BASIS`) and
/// then to built-in defaults.
#[derive(Serialize, Deserialize, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_basis: Option<usize>,
}

/// One job: a command plus its parameters. Serialized with an internal
/// `command` tag, so a jobs file is one of these JSON objects per line.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum JobSpec {
    Polar {
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<usize>,
        k: u32,
        point: String,
    },
    Euler {
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<usize>,
        s: u32,
    },
    Reciprocity {
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<usize>,
        s: u32,
    },
    Regularity {
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<usize>,
        /// A single order, or the whole profile when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        limits: Option<Limits>,
    },
    Cone {
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<usize>,
    },
    /// With `d` and `n`: the closed formula. With `poly`: the formula plus
    /// the exact seeded intersection count.
    ImageDegree {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d: Option<u32>,
        p: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        poly: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        limits: Option<Limits>,
    },
    ImageDim {
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<usize>,
        p: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        limits: Option<Limits>,
    },
    Class {
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<usize>,
        p: u32,
    },
    Flexes {
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        limits: Option<Limits>,
    },
    Implicitize {
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        limits: Option<Limits>,
    },
    Plot {
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<usize>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        points: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        resolution: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        chart: Option<usize>,
    },
}

impl JobSpec {
    pub fn command_name(&self) -> &'static str {
        match self {
            JobSpec::Polar { .. } => "polar",
            JobSpec::Euler { .. } => "euler",
            JobSpec::Reciprocity { .. } => "reciprocity",
            JobSpec::Regularity { .. } => "regularity",
            JobSpec::Cone { .. } => "cone",
            JobSpec::ImageDegree { .. } => "image-degree",
            JobSpec::ImageDim { .. } => "image-dim",
            JobSpec::Class { .. } => "class",
            JobSpec::Flexes { .. } => "flexes",
            JobSpec::Implicitize { .. } => "implicitize",
            JobSpec::Plot { .. } => "plot",
        }
    }

    /// Service endpoint serving this job.
    pub fn endpoint(&self) -> String {
        format!("/v1/{}", self.command_name())
    }
}

/// Response envelope. `result` is one of the typed payloads below,
/// serialized as a JSON value; `timing_ms` is excluded from determinism
/// comparisons.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub result: serde_json::Value,
    pub warnings: Vec<String>,
    pub timing_ms: u64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ErrorBody {
    pub error: ApiError,
}

/// `class` is one of `parse`, `precondition`, `resource`, `degenerate`;
/// the CLI turns it into its exit status.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ApiError {
    pub class: String,
    pub message: String,
}

// ---- typed result payloads ----

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PolarResult {
    pub k: u32,
    /// Canonical representative of the base point.
    pub point: Vec<String>,
    /// The cycle's defining form, in canonical text.
    pub form: String,
    /// Primitive integer Chow coordinates, decimal strings.
    pub chow: Vec<String>,
    /// Monomial labels aligned with `chow`.
    pub chow_basis: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct EulerResult {
    pub s: u32,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ReciprocityResult {
    pub s: u32,
    pub holds: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RegularityEntry {
    pub p: u32,
    pub regular: bool,
    /// Pure-power leading terms certifying emptiness of the base locus.
    pub pure_power_leads: Vec<String>,
    /// Variables with no pure power: witnesses of a nonempty base locus.
    pub missing_vars: Vec<usize>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RegularityResult {
    pub degree: u32,
    pub profile: Vec<RegularityEntry>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ConeResult {
    pub is_cone: bool,
    pub vertex_space: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ImageDegreeResult {
    pub d: u32,
    pub p: u32,
    pub n: u32,
    pub formula: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bezout_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ImageDimResult {
    pub p: u32,
    pub dimension: i64,
    /// Regularity of the map at `p`; when false the dimension refers to
    /// the closure of the image of the rational map.
    pub regular: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ClassResult {
    pub d: u32,
    pub p: u32,
    pub class_coeff: u32,
    pub ratio_to_gauss: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FlexesResult {
    pub d: u32,
    pub resultant_degree: u32,
    pub count_with_multiplicity: u32,
    pub squarefree_degree: u32,
    pub formula: u32,
    pub rational_flexes: Vec<Vec<String>>,
    pub coordinate_change: Vec<Vec<i64>>,
    pub seed: u64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ImplicitizeResult {
    pub p: u32,
    /// Generators of the image ideal in the Chow coordinates, re-indexed
    /// as x0.. in the kept block.
    pub generators: Vec<String>,
    pub degrees: Vec<u32>,
    /// Number of Chow coordinates of the image space.
    pub chow_dim: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PlotResult {
    pub objects: Vec<String>,
    pub segments: usize,
    pub resolution: usize,
    pub chart: usize,
    pub csv: String,
    pub svg: String,
}
