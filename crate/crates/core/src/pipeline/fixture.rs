use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("malformed partition fixture: {0}")]
    Json(#[from] serde_json::Error),
}

/// Original-circuit gate indices per partition. Qubit maps are always
/// re-derived from the circuit.
///
/// ```json
/// {"partitions": [[0, 2, 3], [1]]}
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFixture {
    pub partitions: Vec<Vec<usize>>,
}

impl GroupFixture {
    /// Blank input is an empty fixture.
    pub fn parse(text: &str) -> Result<Self, FixtureError> {
        if text.trim().is_empty() {
            return Ok(GroupFixture::default());
        }
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}
