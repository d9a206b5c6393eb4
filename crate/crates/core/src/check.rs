use std::fmt;

use serde::Serialize;

/// Outcome of a family-level property checked through a finite degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub holds: bool,
    /// Largest degree examined.
    pub through: usize,
    pub witness: Option<String>,
}

impl FamilyCheck {
    pub fn verified(through: usize) -> Self {
        FamilyCheck { holds: true, through, witness: None }
    }

    pub fn failed(through: usize, witness: String) -> Self {
        FamilyCheck { holds: false, through, witness: Some(witness) }
    }
}

impl fmt::Display for FamilyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "verified through {}", self.through),
            Some(w) => write!(f, "false: {w}"),
        }
    }
}
