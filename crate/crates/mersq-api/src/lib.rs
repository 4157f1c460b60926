//! Request/response types for the mersq HTTP API, shared by the service
//! and its clients. Responses reuse the core report types directly
//! ([`mersq_core::SolutionSet`], [`mersq_core::catalog::CatalogRow`]);
//! this crate adds the request shapes, the error envelope, and the route
//! table.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use mersq_core::ntcore::{self, MersennePrime};
use mersq_core::solver::{EquationInstance, admissible_l, admissible_q};
use mersq_core::{Error as CoreError, SearchBounds};

pub mod routes {
    pub const HEALTH: &str = "/healthz";
    pub const SOLVE: &str = "/api/v1/solve";
    pub const VERIFY: &str = "/api/v1/verify";
    pub const SEARCH: &str = "/api/v1/search";
    pub const TABLE1: &str = "/api/v1/tables/table1";
    pub const TABLE2: &str = "/api/v1/tables/table2";
    pub const SOLVABLE: &str = "/api/v1/tables/solvable";
    pub const MERSENNE: &str = "/api/v1/mersenne";
}

pub mod codes {
    pub const INVALID_INPUT: &str = "invalid_input";
    pub const CAP_EXCEEDED: &str = "cap_exceeded";
    pub const INTERNAL: &str = "internal";
}

/// Why a request could not be served.
#[derive(Debug)]
pub enum RequestError {
    /// Malformed shape: missing/conflicting fields, unparseable numbers.
    Shape(String),
    /// Well-formed but domain-invalid (composite l, non-Mersenne p, cap).
    Domain(CoreError),
}

impl fmt::Display for RequestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RequestError::Shape(msg) => f.write_str(msg),
            RequestError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RequestError {}

impl From<CoreError> for RequestError {
    fn from(e: CoreError) -> Self {
        RequestError::Domain(e)
    }
}

impl RequestError {
    /// The stable machine code the error envelope carries.
    pub fn code(&self) -> &'static str {
        match self {
            RequestError::Domain(CoreError::CapExceeded { .. }) => codes::CAP_EXCEEDED,
            _ => codes::INVALID_INPUT,
        }
    }
}

/// An equation instance given either by exponents (p, q) or by Mersenne
/// values (mp, mq); exactly one form per side.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mp: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mq: Option<String>,
    pub l: u64,
}

impl InstanceSpec {
    pub fn from_exponents(p: u32, q: u32, l: u64) -> Self {
        Self {
            p: Some(p),
            q: Some(q),
            l,
            ..Self::default()
        }
    }

    pub fn resolve(&self) -> Result<EquationInstance, RequestError> {
        let mp = resolve_side("p", self.p, self.mp.as_deref())?;
        let mq = resolve_side("q", self.q, self.mq.as_deref())?;
        Ok(EquationInstance::new(mp, mq, BigUint::from(self.l))?)
    }
}

fn resolve_side(
    name: &str,
    exponent: Option<u32>,
    value: Option<&str>,
) -> Result<MersennePrime, RequestError> {
    match (exponent, value) {
        (Some(p), None) => Ok(MersennePrime::new(p)?),
        (None, Some(v)) => {
            let parsed = mersq_core::serde_util::parse_biguint(v).map_err(RequestError::Shape)?;
            Ok(MersennePrime::from_value(&parsed)?)
        }
        _ => Err(RequestError::Shape(format!(
            "give exactly one of {name} (exponent) or m{name} (value)"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveRequest {
    #[serde(flatten)]
    pub instance: InstanceSpec,
    #[serde(default)]
    pub positive_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRequest {
    #[serde(flatten)]
    pub instance: InstanceSpec,
    pub x: u32,
    pub y: u32,
    /// Decimal, like every big integer on this wire.
    pub z: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyResponse {
    pub holds: bool,
    /// M_p^x + (M_q+1)^y
    pub lhs: String,
    /// (l*z)^2
    pub rhs: String,
}

fn default_exp_max() -> u32 {
    12
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRequest {
    #[serde(flatten)]
    pub instance: InstanceSpec,
    #[serde(default = "default_exp_max")]
    pub x_max: u32,
    #[serde(default = "default_exp_max")]
    pub y_max: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_max: Option<String>,
}

impl SearchRequest {
    pub fn bounds(&self) -> Result<SearchBounds, RequestError> {
        let mut bounds = SearchBounds::new(self.x_max, self.y_max);
        if let Some(z) = &self.z_max {
            bounds.z_max =
                Some(mersq_core::serde_util::parse_biguint(z).map_err(RequestError::Shape)?);
        }
        Ok(bounds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleQ {
    pub q: u32,
    pub mq: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleL {
    pub l: String,
    pub z: String,
}

/// Everything the equation cares about for one exponent p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MersenneReport {
    pub p: u32,
    pub p_is_prime: bool,
    pub value: String,
    pub value_is_prime: bool,
    pub mod4_residue: u8,
    /// Present only when 2^p - 1 is a Mersenne prime.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub admissible_q: Option<Vec<AdmissibleQ>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub admissible_l: Option<Vec<AdmissibleL>>,
}

impl MersenneReport {
    /// Builds the report; fails only when the l-enumeration overruns the
    /// factorization cap (2^p + 1 beyond 2^64).
    pub fn build(p: u32) -> Result<Self, RequestError> {
        let value = ntcore::mersenne_number(p);
        let p_is_prime = ntcore::is_prime_u64(p as u64);
        let mersenne = if p_is_prime {
            MersennePrime::new(p).ok()
        } else {
            None
        };
        let mut report = Self {
            p,
            p_is_prime,
            value: value.to_string(),
            value_is_prime: mersenne.is_some(),
            mod4_residue: ntcore::mod4_residue(&value),
            admissible_q: None,
            admissible_l: None,
        };
        if let Some(mp) = mersenne {
            report.admissible_q = Some(
                admissible_q(&mp, mp.p() + 2)
                    .into_iter()
                    .map(|q| AdmissibleQ {
                        q,
                        mq: ntcore::mersenne_number(q).to_string(),
                    })
                    .collect(),
            );
            let two_p_plus_1 = (BigUint::from(1u32) << p) + 1u32;
            report.admissible_l = Some(
                admissible_l(&mp)?
                    .into_iter()
                    .map(|l| {
                        let z = &two_p_plus_1 / &l;
                        AdmissibleL {
                            l: l.to_string(),
                            z: z.to_string(),
                        }
                    })
                    .collect(),
            );
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MersenneExponentRow {
    pub p: u32,
    pub value: String,
}

impl MersenneExponentRow {
    pub fn list(p_limit: u32) -> Vec<Self> {
        mersq_core::catalog::mersenne_exponents(p_limit)
            .into_iter()
            .map(|p| Self {
                p,
                value: ntcore::mersenne_number(p).to_string(),
            })
            .collect()
    }
}

/// The JSON error envelope every non-2xx response carries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: ErrorDetail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDetail {
    pub code: String,
    pub message: String,
}

impl ErrorBody {
    pub fn new(code: &str, message: impl Into<String>) -> Self {
        Self {
            error: ErrorDetail {
                code: code.to_string(),
                message: message.into(),
            },
        }
    }
}
