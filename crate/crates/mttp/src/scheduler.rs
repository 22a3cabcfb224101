//! Opponent assignment: given a feasible travel matrix, find a mirrored
//! double round robin whose venues agree with it, or prove there is none.
//!
//! Only the first half is searched. Week by week, a perfect matching is
//! built over teams whose venue flags differ and who have not met yet;
//! the second half repeats the first half's opponents, with venues swapped
//! automatically by the complement structure of the travel rows.

use std::collections::HashMap;

use thiserror::Error;

use crate::instance::InstanceSize;
use crate::schedule::ScheduleMatrix;
use crate::travel::{TravelMatrix, Venue};
use crate::validate::{self, Violation};

/// Search-node cap guarding pathological inputs; one node per attempted
/// pairing.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum ScheduleError {
    #[error("travel matrix fails validation with {} violation(s)", .0.len())]
    InvalidTravel(Vec<Violation>),
}

/// Where and how hard the search failed. `budget_exhausted` distinguishes
/// an abandoned search from a proven dead end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    /// Deepest first-half week (0-based) the search entered.
    pub deepest_week: usize,
    /// Pairings attempted before giving up.
    pub nodes: u64,
    /// True when the node budget ran out before the search space did.
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleOutcome {
    Feasible(ScheduleMatrix),
    Infeasible(InfeasibilityCertificate),
}

impl ScheduleOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ScheduleOutcome::Feasible(_))
    }
}

struct Search {
    teams: usize,
    half: usize,
    /// away_mask[w]: bit i set when team i is away in week w.
    away_mask: Vec<u64>,
    /// played[i]: bit j set when i and j already meet in the first half.
    played: Vec<u64>,
    /// Completed weeks; each entry maps team to opponent.
    weeks: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
    deepest_week: usize,
    exhausted: bool,
}

impl Search {
    fn new(a: &TravelMatrix, n: InstanceSize, budget: u64) -> Self {
        let teams = n.teams();
        let half = n.half_weeks();
        let mut away_mask = vec![0u64; half];
        for (w, mask) in away_mask.iter_mut().enumerate() {
            for i in 0..teams {
                if a.row(i).get(w) == Venue::Away {
                    *mask |= 1 << i;
                }
            }
        }
        Search {
            teams,
            half,
            away_mask,
            played: vec![0u64; teams],
            weeks: Vec::with_capacity(half),
            nodes: 0,
            budget,
            deepest_week: 0,
            exhausted: false,
        }
    }

    /// Opponents team i may still face in week w.
    fn candidates(&self, i: usize, w: usize) -> u64 {
        let all = (1u64 << self.teams) - 1;
        let opposite = if (self.away_mask[w] >> i) & 1 == 1 {
            !self.away_mask[w] & all
        } else {
            self.away_mask[w]
        };
        opposite & !self.played[i] & !(1 << i)
    }

    fn solve_week(&mut self, w: usize) -> bool {
        if w == self.half {
            return true;
        }
        self.deepest_week = self.deepest_week.max(w);
        let all = (1u64 << self.teams) - 1;
        let mut assign = vec![usize::MAX; self.teams];
        self.match_week(w, &mut assign, all)
    }

    fn match_week(&mut self, w: usize, assign: &mut Vec<usize>, unmatched: u64) -> bool {
        if unmatched == 0 {
            self.weeks.push(assign.clone());
            for (i, &opp) in assign.iter().enumerate() {
                self.played[i] |= 1 << opp;
            }
            if self.solve_week(w + 1) {
                return true;
            }
            for (i, &opp) in assign.iter().enumerate() {
                self.played[i] &= !(1u64 << opp);
            }
            self.weeks.pop();
            return false;
        }
        if self.exhausted {
            return false;
        }

        // Minimum-remaining-values team choice; lowest id wins ties because
        // iteration ascends and replacement is strict.
        let mut pick = usize::MAX;
        let mut pick_cands = 0u64;
        let mut pick_count = u32::MAX;
        let mut rest = unmatched;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let cands = self.candidates(i, w) & unmatched;
            let count = cands.count_ones();
            if count < pick_count {
                pick = i;
                pick_cands = cands;
                pick_count = count;
                if count == 0 {
                    return false;
                }
            }
        }

        let mut cands = pick_cands;
        while cands != 0 {
            let j = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return false;
            }
            assign[pick] = j;
            assign[j] = pick;
            if self.match_week(w, assign, unmatched & !(1 << pick) & !(1 << j)) {
                return true;
            }
            assign[pick] = usize::MAX;
            assign[j] = usize::MAX;
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Searches for an opponent assignment consistent with `a`.
///
/// Rejects invalid travel matrices outright; infeasibility of a valid
/// matrix is a verdict, not an error.
pub fn build_schedule(
    a: &TravelMatrix,
    n: InstanceSize,
    budget: u64,
) -> Result<ScheduleOutcome, ScheduleError> {
    let violations = validate::travel(a, n);
    if !violations.is_empty() {
        return Err(ScheduleError::InvalidTravel(violations));
    }

    let mut search = Search::new(a, n, budget);
    if search.solve_week(0) {
        let teams = n.teams();
        let half = n.half_weeks();
        let mut cells = vec![vec![0usize; half]; teams];
        for (w, week) in search.weeks.iter().enumerate() {
            for (i, &opp) in week.iter().enumerate() {
                cells[i][w] = opp;
            }
        }
        let schedule = ScheduleMatrix::from_first_half(cells);
        Ok(ScheduleOutcome::Feasible(schedule))
    } else {
        Ok(ScheduleOutcome::Infeasible(InfeasibilityCertificate {
            deepest_week: search.deepest_week,
            nodes: search.nodes,
            budget_exhausted: search.exhausted,
        }))
    }
}

/// Memoizing front end over [`build_schedule`] for the solver loop.
///
/// Verdicts are cached by the travel matrix bits. A budget-exhausted
/// verdict is not proven, so it is reported as unschedulable but never
/// cached; a later query with the same matrix re-runs the search.
pub struct Scheduler {
    budget: u64,
    cache: HashMap<Vec<u8>, bool>,
}

impl Scheduler {
    pub fn new(budget: u64) -> Self {
        Scheduler {
            budget,
            cache: HashMap::new(),
        }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// True iff a schedule exists for `a`. Invalid matrices are never
    /// schedulable.
    pub fn is_schedulable(&mut self, a: &TravelMatrix, n: InstanceSize) -> bool {
        let key = a.bit_key();
        if let Some(&known) = self.cache.get(&key) {
            return known;
        }
        match build_schedule(a, n, self.budget) {
            Ok(ScheduleOutcome::Feasible(_)) => {
                self.cache.insert(key, true);
                true
            }
            Ok(ScheduleOutcome::Infeasible(cert)) => {
                if !cert.budget_exhausted {
                    self.cache.insert(key, false);
                }
                false
            }
            Err(ScheduleError::InvalidTravel(_)) => {
                self.cache.insert(key, false);
                false
            }
        }
    }

    /// Full outcome for `a`, uncached.
    pub fn schedule(
        &self,
        a: &TravelMatrix,
        n: InstanceSize,
    ) -> Result<ScheduleOutcome, ScheduleError> {
        build_schedule(a, n, self.budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::Tournament;

    fn n4() -> InstanceSize {
        InstanceSize::new(4).unwrap()
    }

    fn four_team_travel() -> TravelMatrix {
        TravelMatrix::from_bit_rows(&[
            vec![0, 0, 0, 1, 1, 1],
            vec![1, 0, 0, 0, 1, 1],
            vec![0, 1, 1, 1, 0, 0],
            vec![1, 1, 1, 0, 0, 0],
        ])
        .unwrap()
    }

    #[test]
    fn known_four_team_matrix_is_feasible_and_consistent() {
        let a = four_team_travel();
        let outcome = build_schedule(&a, n4(), DEFAULT_NODE_BUDGET).unwrap();
        let ScheduleOutcome::Feasible(b) = outcome else {
            panic!("expected a schedule");
        };
        let t = Tournament::new(n4(), a, b);
        assert_eq!(validate::tournament(&t), vec![]);
    }

    #[test]
    fn known_six_team_matrix_is_feasible_and_consistent() {
        let n6 = InstanceSize::new(6).unwrap();
        let a = TravelMatrix::from_bit_rows(&[
            vec![0, 0, 1, 1, 0, 1, 1, 0, 0, 1],
            vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
            vec![1, 0, 1, 1, 0, 0, 1, 0, 0, 1],
            vec![1, 1, 0, 0, 1, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
            vec![0, 1, 0, 0, 1, 1, 0, 1, 1, 0],
        ])
        .unwrap();
        let outcome = build_schedule(&a, n6, DEFAULT_NODE_BUDGET).unwrap();
        let ScheduleOutcome::Feasible(b) = outcome else {
            panic!("expected a schedule");
        };
        let t = Tournament::new(n6, a, b);
        assert_eq!(validate::tournament(&t), vec![]);
    }

    #[test]
    fn second_half_mirrors_first() {
        let a = four_team_travel();
        let ScheduleOutcome::Feasible(b) = build_schedule(&a, n4(), DEFAULT_NODE_BUDGET).unwrap()
        else {
            panic!("expected a schedule");
        };
        for i in 0..4 {
            for w in 0..3 {
                assert_eq!(b.opponent(i, w), b.opponent(i, w + 3));
            }
        }
    }

    #[test]
    fn output_is_deterministic() {
        let a = four_team_travel();
        let first = build_schedule(&a, n4(), DEFAULT_NODE_BUDGET).unwrap();
        let second = build_schedule(&a, n4(), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn invalid_travel_is_rejected_before_search() {
        let a = TravelMatrix::from_bit_rows(&[
            vec![0, 0, 0, 1, 1, 1],
            vec![0, 0, 0, 1, 1, 1],
            vec![1, 1, 1, 0, 0, 0],
            vec![1, 1, 1, 0, 0, 0],
        ])
        .unwrap();
        assert!(matches!(
            build_schedule(&a, n4(), DEFAULT_NODE_BUDGET),
            Err(ScheduleError::InvalidTravel(_))
        ));
    }

    #[test]
    fn zero_budget_reports_exhaustion_not_proof() {
        let a = four_team_travel();
        let outcome = build_schedule(&a, n4(), 0).unwrap();
        let ScheduleOutcome::Infeasible(cert) = outcome else {
            panic!("expected exhaustion");
        };
        assert!(cert.budget_exhausted);
        assert_eq!(cert.nodes, 1);
    }

    #[test]
    fn exhausted_verdicts_are_not_cached() {
        let a = four_team_travel();
        let mut tight = Scheduler::new(0);
        assert!(!tight.is_schedulable(&a, n4()));
        assert!(tight.cache.is_empty());

        let mut roomy = Scheduler::new(DEFAULT_NODE_BUDGET);
        assert!(roomy.is_schedulable(&a, n4()));
        assert!(roomy.is_schedulable(&a, n4()));
        assert_eq!(roomy.cache.len(), 1);
    }
}
