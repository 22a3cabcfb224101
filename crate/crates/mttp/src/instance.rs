//! Instance sizing: the team count and the week arithmetic derived from it.

use thiserror::Error;

/// A validated team count for one tournament instance.
///
/// Team counts are even and at least 4; a season then has `2n - 2` weeks,
/// split into two mirrored halves of `n - 1` weeks each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InstanceSize(usize);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("team count must be even, got {0}")]
    OddTeamCount(usize),
    #[error("team count must be at least 4, got {0}")]
    TooFewTeams(usize),
}

impl InstanceSize {
    pub fn new(teams: usize) -> Result<Self, InstanceError> {
        if teams < 4 {
            return Err(InstanceError::TooFewTeams(teams));
        }
        if !teams.is_multiple_of(2) {
            return Err(InstanceError::OddTeamCount(teams));
        }
        Ok(InstanceSize(teams))
    }

    pub fn teams(self) -> usize {
        self.0
    }

    /// Weeks in a full season: `2n - 2`.
    pub fn weeks(self) -> usize {
        2 * self.0 - 2
    }

    /// Weeks in one half of the season: `n - 1`.
    pub fn half_weeks(self) -> usize {
        self.0 - 1
    }
}

impl std::fmt::Display for InstanceSize {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
