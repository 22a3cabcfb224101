//! Exhaustive ground truth for small instances.
//!
//! Everything here is deliberately independent of the production search:
//! matrices are enumerated outright, and scheduling feasibility is decided
//! by a plain index-order backtracker (no value ordering heuristics, no
//! budget) or, for four teams, by enumerating every weekly matching.

use itertools::Itertools;
use thiserror::Error;

use crate::instance::InstanceSize;
use crate::schedule::ScheduleMatrix;
use crate::tournament::Tournament;
use crate::travel::{TravelMatrix, TravelSequence};
use crate::validate::MAX_RUN;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("exhaustive search supports 4 or 6 teams, got {0}")]
    UnsupportedSize(usize),
}

/// Every travel sequence satisfying the row invariants for `n`, in
/// ascending bit order: each first half is completed by its complement and
/// kept when no run exceeds the cap.
pub fn valid_sequences(n: InstanceSize) -> Vec<TravelSequence> {
    let half = n.half_weeks();
    let mut out = Vec::new();
    for pattern in 0u32..(1 << half) {
        let mut bits: Vec<u8> = (0..half).map(|w| ((pattern >> w) & 1) as u8).collect();
        let mirror: Vec<u8> = bits.iter().map(|b| 1 - b).collect();
        bits.extend(mirror);
        let seq = TravelSequence::from_bits(&bits).expect("bits are 0/1");
        if seq.longest_run() <= MAX_RUN {
            out.push(seq);
        }
    }
    out
}

/// Valid sequences grouped into complement pairs, each pair listed once
/// with its lexicographically smaller member first.
pub fn complement_classes(n: InstanceSize) -> Vec<(TravelSequence, TravelSequence)> {
    valid_sequences(n)
        .into_iter()
        .filter_map(|seq| {
            let comp = seq.complement();
            (seq.to_bits() < comp.to_bits()).then_some((seq, comp))
        })
        .collect()
}

/// Index-order backtracking matcher: weeks ascending, lowest unmatched
/// team first, partners ascending. Complete (no budget); first-half only,
/// mirrored mechanically.
pub fn naive_schedule(a: &TravelMatrix, n: InstanceSize) -> Option<ScheduleMatrix> {
    // One step either pairs the lowest unmatched team of week w or, with
    // the week complete, moves on to week w+1.
    fn extend(
        a: &TravelMatrix,
        teams: usize,
        half: usize,
        w: usize,
        assign: &mut Vec<usize>,
        played: &mut Vec<Vec<bool>>,
        weeks: &mut Vec<Vec<usize>>,
    ) -> bool {
        if w == half {
            return true;
        }
        let Some(i) = (0..teams).find(|&i| assign[i] == usize::MAX) else {
            weeks.push(assign.clone());
            let mut fresh = vec![usize::MAX; teams];
            if extend(a, teams, half, w + 1, &mut fresh, played, weeks) {
                return true;
            }
            weeks.pop();
            return false;
        };
        for j in i + 1..teams {
            if assign[j] != usize::MAX || played[i][j] || a.row(i).get(w) == a.row(j).get(w) {
                continue;
            }
            assign[i] = j;
            assign[j] = i;
            played[i][j] = true;
            if extend(a, teams, half, w, assign, played, weeks) {
                return true;
            }
            played[i][j] = false;
            assign[i] = usize::MAX;
            assign[j] = usize::MAX;
        }
        false
    }

    let teams = n.teams();
    let half = n.half_weeks();
    let mut played = vec![vec![false; teams]; teams];
    let mut weeks: Vec<Vec<usize>> = Vec::with_capacity(half);
    let mut assign = vec![usize::MAX; teams];
    if extend(a, teams, half, 0, &mut assign, &mut played, &mut weeks) {
        let mut cells = vec![vec![0usize; half]; teams];
        for w in 0..half {
            for i in 0..teams {
                cells[i][w] = weeks[w][i];
            }
        }
        Some(ScheduleMatrix::from_first_half(cells))
    } else {
        None
    }
}

/// Minimum total trips over every valid, schedulable complement-paired
/// matrix for 4 or 6 teams, with one witness tournament.
///
/// A matrix in this space is determined up to row order by its set of n/2
/// complement pairs, and neither the objective nor schedulability depends
/// on row order, so unordered pair combinations are enumerated.
pub fn exhaustive_min_trips(n: InstanceSize) -> Result<(u32, Tournament), OracleError> {
    if !matches!(n.teams(), 4 | 6) {
        return Err(OracleError::UnsupportedSize(n.teams()));
    }
    let classes = complement_classes(n);
    let pairs = n.teams() / 2;
    let mut best: Option<(u32, Tournament)> = None;
    for combo in classes.iter().combinations(pairs) {
        let trips: u32 = combo.iter().flat_map(|(p, q)| [p.trips(), q.trips()]).sum();
        if best.as_ref().is_some_and(|(b, _)| trips >= *b) {
            continue;
        }
        let mut rows: Vec<TravelSequence> = combo.iter().map(|(p, _)| p.clone()).collect();
        rows.extend(combo.iter().map(|(_, q)| q.clone()));
        let a = TravelMatrix::new(rows);
        if let Some(b) = naive_schedule(&a, n) {
            best = Some((trips, Tournament::new(n, a, b)));
        }
    }
    // Every size in range has schedulable matrices, so a witness exists.
    Ok(best.expect("nonempty schedulable space"))
}

/// Four-team schedulability by enumerating all three perfect matchings for
/// each of the three first-half weeks and testing venue compatibility and
/// pair coverage directly.
pub fn exhaustive_schedulability(a: &TravelMatrix) -> Result<bool, OracleError> {
    if a.team_count() != 4 || a.rows().iter().any(|r| r.len() != 6) {
        return Err(OracleError::UnsupportedSize(a.team_count()));
    }
    const MATCHINGS: [[(usize, usize); 2]; 3] =
        [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

    for pick in (0..3).map(|_| 0..3usize).multi_cartesian_product() {
        let mut met = [[false; 4]; 4];
        let mut ok = true;
        'weeks: for (w, &m) in pick.iter().enumerate() {
            for (i, j) in MATCHINGS[m] {
                if a.row(i).get(w) == a.row(j).get(w) || met[i][j] {
                    ok = false;
                    break 'weeks;
                }
                met[i][j] = true;
            }
        }
        if ok && met.iter().flatten().filter(|&&m| m).count() == 6 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate;

    fn n(teams: usize) -> InstanceSize {
        InstanceSize::new(teams).unwrap()
    }

    #[test]
    fn four_team_space_has_eight_sequences_in_four_classes() {
        assert_eq!(valid_sequences(n(4)).len(), 8);
        assert_eq!(complement_classes(n(4)).len(), 4);
    }

    #[test]
    fn classes_pair_each_sequence_with_its_complement() {
        for (p, q) in complement_classes(n(6)) {
            assert_eq!(p.complement(), q);
            assert!(p.to_bits() < q.to_bits());
        }
    }

    #[test]
    fn four_team_minimum_is_seventeen() {
        let (min, witness) = exhaustive_min_trips(n(4)).unwrap();
        assert_eq!(min, 17);
        assert_eq!(witness.total_trips(), 17);
        assert_eq!(validate::tournament(&witness), vec![]);
    }

    #[test]
    fn six_team_minimum_is_forty_eight() {
        let (min, witness) = exhaustive_min_trips(n(6)).unwrap();
        assert_eq!(min, 48);
        assert_eq!(witness.total_trips(), 48);
        assert_eq!(validate::tournament(&witness), vec![]);
    }

    #[test]
    fn unsupported_sizes_are_rejected() {
        assert_eq!(
            exhaustive_min_trips(n(8)),
            Err(OracleError::UnsupportedSize(8))
        );
    }

    #[test]
    fn known_four_team_matrix_has_a_matching_assignment() {
        let a = TravelMatrix::from_bit_rows(&[
            vec![0, 0, 0, 1, 1, 1],
            vec![1, 0, 0, 0, 1, 1],
            vec![0, 1, 1, 1, 0, 0],
            vec![1, 1, 1, 0, 0, 0],
        ])
        .unwrap();
        assert_eq!(exhaustive_schedulability(&a), Ok(true));
    }

    #[test]
    fn duplicate_rows_can_never_be_scheduled() {
        let a = TravelMatrix::from_bit_rows(&[
            vec![0, 0, 0, 1, 1, 1],
            vec![0, 0, 0, 1, 1, 1],
            vec![1, 1, 1, 0, 0, 0],
            vec![1, 1, 1, 0, 0, 0],
        ])
        .unwrap();
        assert_eq!(exhaustive_schedulability(&a), Ok(false));
        assert!(naive_schedule(&a, n(4)).is_none());
    }

    #[test]
    fn naive_schedules_are_mirrored_and_consistent() {
        let a = TravelMatrix::from_bit_rows(&[
            vec![0, 0, 1, 1, 0, 1, 1, 0, 0, 1],
            vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
            vec![1, 0, 1, 1, 0, 0, 1, 0, 0, 1],
            vec![1, 1, 0, 0, 1, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
            vec![0, 1, 0, 0, 1, 1, 0, 1, 1, 0],
        ])
        .unwrap();
        let b = naive_schedule(&a, n(6)).unwrap();
        let t = crate::tournament::Tournament::new(n(6), a, b);
        assert_eq!(validate::tournament(&t), vec![]);
    }
}
