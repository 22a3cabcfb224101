//! Solver library for the mirrored traveling tournament problem with a
//! trip-count objective.
//!
//! A season for `n` teams (n even) spans `2n-2` weeks. Each team's venue
//! pattern is a row of home/away flags whose second half is the bitwise
//! complement of the first, and the full tournament pairs every two teams
//! twice, once at each venue, with the second half of the season repeating
//! the first half's pairings. The objective is the total number of trips
//! across all teams, where a trip is one venue change in the walk that
//! starts and ends at a team's home city.
//!
//! Modules:
//! - [`instance`], [`travel`], [`schedule`], [`tournament`]: domain types
//!   and the trip-count objective.
//! - [`validate`]: non-short-circuiting validators producing [`validate::Violation`]s.
//! - [`patterns`]: seeded random generation of feasible venue patterns and
//!   complement-paired travel matrices.
//! - [`scheduler`]: backtracking construction of an opponent schedule
//!   consistent with a travel matrix.
//! - [`ga`]: the elitist genetic algorithm over travel matrices.
//! - [`bounds`]: the naive trip lower bound and published reference results.
//! - [`oracle`]: exhaustive ground truth for small team counts.
//! - [`fileio`]: the JSON tournament file format used by the CLI.

pub mod bounds;
pub mod fileio;
pub mod ga;
pub mod instance;
pub mod oracle;
pub mod patterns;
pub mod schedule;
pub mod scheduler;
pub mod tournament;
pub mod travel;
pub mod validate;

pub use instance::InstanceSize;
pub use schedule::ScheduleMatrix;
pub use tournament::Tournament;
pub use travel::{TravelMatrix, TravelSequence, Venue};
pub use validate::{Violation, ViolationKind};
