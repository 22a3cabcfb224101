//! Opponent assignments: who each team plays in each week.

/// Per-team opponent ids over the season, one row per team.
///
/// Opponents are 0-based team indices internally; the file format and all
/// user-facing output use 1-based ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScheduleMatrix {
    cells: Vec<Vec<usize>>,
}

impl ScheduleMatrix {
    pub fn new(cells: Vec<Vec<usize>>) -> Self {
        ScheduleMatrix { cells }
    }

    /// Builds the full season from first-half opponents by repeating them in
    /// the second half.
    pub fn from_first_half(half: Vec<Vec<usize>>) -> Self {
        let cells = half
            .into_iter()
            .map(|row| {
                let mut full = row.clone();
                full.extend(row);
                full
            })
            .collect();
        ScheduleMatrix { cells }
    }

    pub fn team_count(&self) -> usize {
        self.cells.len()
    }

    pub fn row(&self, team: usize) -> &[usize] {
        &self.cells[team]
    }

    pub fn opponent(&self, team: usize, week: usize) -> usize {
        self.cells[team][week]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.cells
    }
}
