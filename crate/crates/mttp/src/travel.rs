//! Venue patterns: per-team home/away sequences and the travel matrix, plus
//! the trip-count objective.

use thiserror::Error;

/// Where a team plays in one week.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Venue {
    Home,
    Away,
}

impl Venue {
    pub fn flipped(self) -> Venue {
        match self {
            Venue::Home => Venue::Away,
            Venue::Away => Venue::Home,
        }
    }

    /// 0 for home, 1 for away.
    pub fn as_bit(self) -> u8 {
        match self {
            Venue::Home => 0,
            Venue::Away => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Option<Venue> {
        match bit {
            0 => Some(Venue::Home),
            1 => Some(Venue::Away),
            _ => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("venue flag must be 0 or 1, got {0}")]
pub struct BadVenueBit(pub u8);

/// One team's ordered venue flags over a season.
///
/// The objective and the run statistics are defined for a sequence of any
/// length; shape and feasibility checks live in [`crate::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TravelSequence(Vec<Venue>);

impl TravelSequence {
    pub fn new(venues: Vec<Venue>) -> Self {
        TravelSequence(venues)
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self, BadVenueBit> {
        bits.iter()
            .map(|&b| Venue::from_bit(b).ok_or(BadVenueBit(b)))
            .collect::<Result<Vec<_>, _>>()
            .map(TravelSequence)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.0.iter().map(|v| v.as_bit()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, week: usize) -> Venue {
        self.0[week]
    }

    pub fn iter(&self) -> impl Iterator<Item = Venue> + '_ {
        self.0.iter().copied()
    }

    pub fn flip_at(&mut self, week: usize) {
        self.0[week] = self.0[week].flipped();
    }

    /// The swapping operator: flip the home/away role of every game.
    pub fn complement(&self) -> TravelSequence {
        TravelSequence(self.0.iter().map(|v| v.flipped()).collect())
    }

    pub fn away_count(&self) -> u32 {
        self.0.iter().filter(|&&v| v == Venue::Away).count() as u32
    }

    /// Number of maximal blocks of consecutive away weeks.
    pub fn away_runs(&self) -> u32 {
        let mut runs = 0;
        let mut prev = Venue::Home;
        for v in self.iter() {
            if v == Venue::Away && prev == Venue::Home {
                runs += 1;
            }
            prev = v;
        }
        runs
    }

    /// Trips taken over the season walk that starts and ends at home.
    ///
    /// Consecutive away weeks are at distinct opponents' cities, so every
    /// away week costs one trip and every maximal away block costs one more
    /// for the return leg: `away_count + away_runs`. Consecutive home weeks
    /// cost nothing.
    pub fn trips(&self) -> u32 {
        self.away_count() + self.away_runs()
    }

    /// Length of the longest block of equal consecutive flags.
    pub fn longest_run(&self) -> usize {
        let mut longest = 0;
        let mut current = 0;
        let mut prev = None;
        for v in self.iter() {
            if Some(v) == prev {
                current += 1;
            } else {
                current = 1;
                prev = Some(v);
            }
            longest = longest.max(current);
        }
        longest
    }

    /// Maximal runs longer than `limit`, as `(start_week, length)` pairs.
    pub fn runs_over(&self, limit: usize) -> Vec<(usize, usize)> {
        let mut over = Vec::new();
        let mut start = 0;
        let mut current = 0;
        let mut prev = None;
        for (w, v) in self.iter().enumerate() {
            if Some(v) == prev {
                current += 1;
            } else {
                if current > limit {
                    over.push((start, current));
                }
                start = w;
                current = 1;
                prev = Some(v);
            }
        }
        if current > limit {
            over.push((start, current));
        }
        over
    }

    /// True when the second half is the bitwise complement of the first.
    /// Odd-length sequences can never satisfy this.
    pub fn is_mirrored_complement(&self) -> bool {
        if !self.len().is_multiple_of(2) {
            return false;
        }
        let half = self.len() / 2;
        (0..half).all(|w| self.0[half + w] == self.0[w].flipped())
    }

    /// Weeks in the second half that fail the mirrored-complement rule.
    pub fn mirror_breaks(&self) -> Vec<usize> {
        if !self.len().is_multiple_of(2) {
            return (0..self.len()).collect();
        }
        let half = self.len() / 2;
        (0..half)
            .filter(|&w| self.0[half + w] != self.0[w].flipped())
            .map(|w| half + w)
            .collect()
    }
}

/// All teams' venue patterns, one row per team.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TravelMatrix {
    rows: Vec<TravelSequence>,
}

impl TravelMatrix {
    pub fn new(rows: Vec<TravelSequence>) -> Self {
        TravelMatrix { rows }
    }

    pub fn from_bit_rows(bit_rows: &[Vec<u8>]) -> Result<Self, BadVenueBit> {
        bit_rows
            .iter()
            .map(|r| TravelSequence::from_bits(r))
            .collect::<Result<Vec<_>, _>>()
            .map(TravelMatrix::new)
    }

    pub fn team_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, team: usize) -> &TravelSequence {
        &self.rows[team]
    }

    pub fn rows(&self) -> &[TravelSequence] {
        &self.rows
    }

    pub fn flip(&mut self, team: usize, week: usize) {
        self.rows[team].flip_at(week);
    }

    /// Per-team trip counts in row order.
    pub fn team_trips(&self) -> Vec<u32> {
        self.rows.iter().map(TravelSequence::trips).collect()
    }

    /// The objective: sum of every team's trips.
    pub fn total_trips(&self) -> u32 {
        self.rows.iter().map(TravelSequence::trips).sum()
    }

    /// Largest minus smallest per-team trip count; 0 for an empty matrix.
    pub fn fairness_spread(&self) -> u32 {
        let trips = self.team_trips();
        match (trips.iter().max(), trips.iter().min()) {
            (Some(max), Some(min)) => max - min,
            _ => 0,
        }
    }

    /// Index of the row holding this row's bitwise complement, if present.
    pub fn complement_partner(&self, team: usize) -> Option<usize> {
        let complement = self.rows[team].complement();
        self.rows
            .iter()
            .position(|r| *r == complement)
            .filter(|&p| p != team)
    }

    /// Flat 0/1 encoding of every row, usable as an exact cache key.
    pub fn bit_key(&self) -> Vec<u8> {
        self.rows.iter().flat_map(|r| r.to_bits()).collect()
    }
}
