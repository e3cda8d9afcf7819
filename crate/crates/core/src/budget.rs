use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource caps shared by every potentially explosive computation.
///
/// Exceeding any cap surfaces as [`Error::Budget`]; the decision drivers turn
/// that into an UNDECIDED verdict instead of guessing.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of S-pairs processed by a single Gröbner basis call.
    pub spair_cap: u64,
    /// Maximum number of minors generated for a single chart or Fitting ideal.
    pub minor_cap: u64,
    /// Last stage of the subscheme enumeration visited by the search.
    pub enum_stage_cap: u32,
    /// Maximum number of enumerated candidates examined by the search.
    pub candidate_cap: u64,
    /// Wall-clock limit in seconds, measured from [`Budget::start`].
    pub wall_seconds: Option<f64>,
    #[serde(skip)]
    deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            spair_cap: 200_000,
            minor_cap: 20_000,
            enum_stage_cap: 2,
            candidate_cap: 20_000,
            wall_seconds: None,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            spair_cap: u64::MAX,
            minor_cap: u64::MAX,
            enum_stage_cap: u32::MAX,
            candidate_cap: u64::MAX,
            wall_seconds: None,
            deadline: None,
        }
    }

    /// Arms the wall-clock deadline. Without this call `wall_seconds` is ignored.
    pub fn start(mut self) -> Self {
        self.deadline = self
            .wall_seconds
            .map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0)));
        self
    }

    pub fn with_minor_cap(mut self, cap: u64) -> Self {
        self.minor_cap = cap;
        self
    }

    pub fn with_spair_cap(mut self, cap: u64) -> Self {
        self.spair_cap = cap;
        self
    }

    pub fn with_candidate_cap(mut self, cap: u64) -> Self {
        self.candidate_cap = cap;
        self
    }

    pub fn with_stage_cap(mut self, cap: u32) -> Self {
        self.enum_stage_cap = cap;
        self
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Budget {
                resource: "wall-clock",
                cap: self.wall_seconds.unwrap_or(0.0) as u64,
            }),
            _ => Ok(()),
        }
    }

    pub fn check_spairs(&self, used: u64) -> Result<()> {
        if used > self.spair_cap {
            return Err(Error::Budget {
                resource: "S-pair",
                cap: self.spair_cap,
            });
        }
        Ok(())
    }

    pub fn check_minors(&self, used: u64) -> Result<()> {
        if used > self.minor_cap {
            return Err(Error::Budget {
                resource: "minor",
                cap: self.minor_cap,
            });
        }
        Ok(())
    }
}
