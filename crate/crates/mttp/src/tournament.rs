//! A full tournament: instance size, venue patterns, and opponent schedule.

use crate::instance::InstanceSize;
use crate::schedule::ScheduleMatrix;
use crate::travel::TravelMatrix;

/// A travel matrix and schedule matrix for one instance.
///
/// Construction does not validate; run the pair through
/// [`crate::validate::tournament`] to check every invariant, including venue
/// consistency (each game has exactly one home and one away side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    pub size: InstanceSize,
    pub travel: TravelMatrix,
    pub schedule: ScheduleMatrix,
}

impl Tournament {
    pub fn new(size: InstanceSize, travel: TravelMatrix, schedule: ScheduleMatrix) -> Self {
        Tournament {
            size,
            travel,
            schedule,
        }
    }

    pub fn total_trips(&self) -> u32 {
        self.travel.total_trips()
    }

    pub fn fairness_spread(&self) -> u32 {
        self.travel.fairness_spread()
    }
}
