//! Fixtures and an independent trip oracle shared by the integration suite.
#![allow(dead_code)]

use mttp::{InstanceSize, ScheduleMatrix, Tournament, TravelMatrix};

/// Counts venue changes by simulating the season walk: the team starts at
/// its home city, spends each away week in that week's opponent city, and
/// returns home after the final game. Consecutive away weeks are spent in
/// distinct cities, so every away-to-away transition moves.
///
/// Kept free of the library's run-counting formula so the two can disagree.
pub fn venue_walk_trips(bits: &[u8]) -> u32 {
    // City 0 is home; away weeks are tagged with their own week number.
    let mut walk = vec![0usize];
    for (week, &bit) in bits.iter().enumerate() {
        walk.push(if bit == 1 { week + 1 } else { 0 });
    }
    walk.push(0);
    walk.windows(2).filter(|leg| leg[0] != leg[1]).count() as u32
}

/// Four-team venue patterns totalling 17 trips.
pub fn four_team_travel_rows() -> Vec<Vec<u8>> {
    vec![
        vec![0, 0, 0, 1, 1, 1],
        vec![1, 0, 0, 0, 1, 1],
        vec![0, 1, 1, 1, 0, 0],
        vec![1, 1, 1, 0, 0, 0],
    ]
}

/// Opponent rows consistent with [`four_team_travel_rows`], 0-based.
pub fn four_team_schedule_rows() -> Vec<Vec<usize>> {
    vec![
        vec![1, 2, 3, 1, 2, 3],
        vec![0, 3, 2, 0, 3, 2],
        vec![3, 0, 1, 3, 0, 1],
        vec![2, 1, 0, 2, 1, 0],
    ]
}

/// The known 17-trip four-team tournament.
pub fn four_team_tournament() -> Tournament {
    let n = InstanceSize::new(4).unwrap();
    let travel = TravelMatrix::from_bit_rows(&four_team_travel_rows()).unwrap();
    let schedule = ScheduleMatrix::new(four_team_schedule_rows());
    Tournament::new(n, travel, schedule)
}
