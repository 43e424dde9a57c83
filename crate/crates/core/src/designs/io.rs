//! JSON form of a design: `{"v": n, "blocks": [[...], ...]}`.

use serde::{Deserialize, Serialize};

use super::{DesignError, IncidenceStructure};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignJson {
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl DesignJson {
    pub fn from_design(d: &IncidenceStructure) -> Self {
        DesignJson {
            v: d.v(),
            blocks: d.blocks().to_vec(),
        }
    }

    pub fn to_design(&self) -> Result<IncidenceStructure, DesignError> {
        IncidenceStructure::new(self.v, self.blocks.clone())
    }
}
