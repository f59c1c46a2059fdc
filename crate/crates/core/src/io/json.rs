//! JSON documents. Rationals are written as `"num/den"` strings (integers
//! without the denominator) so no value passes through floating point.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::instance::{InstanceError, Payload, UcpDecisionInstance, Utility};
use crate::rational::Rational;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    UnsupportedVersion(u32),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

/// Serialized decision instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub schema_version: u32,
    pub payload: Payload,
    pub utility: Utility,
    pub k: usize,
    pub threshold: Rational,
}

impl InstanceDocument {
    pub fn from_instance(inst: &UcpDecisionInstance) -> Self {
        InstanceDocument {
            schema_version: SCHEMA_VERSION,
            payload: inst.payload().clone(),
            utility: inst.utility().clone(),
            k: inst.k(),
            threshold: inst.threshold().clone(),
        }
    }

    /// Validates the document into an instance.
    pub fn into_instance(self) -> Result<UcpDecisionInstance, JsonError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(JsonError::UnsupportedVersion(self.schema_version));
        }
        Ok(UcpDecisionInstance::new(self.payload, self.utility, self.k, self.threshold)?)
    }

    pub fn to_json(inst: &UcpDecisionInstance) -> String {
        serde_json::to_string_pretty(&Self::from_instance(inst)).expect("documents always serialize")
    }

    pub fn parse(text: &str) -> Result<UcpDecisionInstance, JsonError> {
        from_json::<InstanceDocument>(text)?.into_instance()
    }
}

/// Parses any of the JSON input formats (points, metrics, UFL, sparse
/// systems, partitions).
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, JsonError> {
    Ok(serde_json::from_str(text)?)
}
