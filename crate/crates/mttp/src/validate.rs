//! Non-short-circuiting validators for travel matrices and full tournaments.
//!
//! Validators accept arbitrary grids and report every breach they can
//! localize; they never panic on malformed shapes. Team and week numbers in
//! [`Violation`] are 1-based to match all user-facing output.

use crate::instance::InstanceSize;
use crate::tournament::Tournament;
use crate::travel::{TravelMatrix, Venue};

/// Limit on consecutive equal venue flags in any travel sequence.
pub const MAX_RUN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// More than [`MAX_RUN`] consecutive home games or away games.
    RunLength,
    /// A row's second half is not the bitwise complement of its first half,
    /// or no other row carries this row's complement pattern.
    MirrorComplement,
    /// A week's home and away games are not split evenly.
    ColumnBalance,
    /// Two teams share an identical venue pattern.
    DuplicateRow,
    /// A team scheduled against itself.
    SelfPlay,
    /// Opponent entries do not agree pairwise.
    SymmetryBroken,
    /// A half-season row is not a permutation of all other teams.
    NotRoundRobin,
    /// Second-half opponents do not repeat the first half.
    NotMirrored,
    /// Both sides of a game at home, or both away.
    VenueInconsistent,
    /// Row or column counts do not match the declared instance size, or an
    /// id is out of range.
    BadShape,
}

impl std::fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ViolationKind::RunLength => "RunLength",
            ViolationKind::MirrorComplement => "MirrorComplement",
            ViolationKind::ColumnBalance => "ColumnBalance",
            ViolationKind::DuplicateRow => "DuplicateRow",
            ViolationKind::SelfPlay => "SelfPlay",
            ViolationKind::SymmetryBroken => "SymmetryBroken",
            ViolationKind::NotRoundRobin => "NotRoundRobin",
            ViolationKind::NotMirrored => "NotMirrored",
            ViolationKind::VenueInconsistent => "VenueInconsistent",
            ViolationKind::BadShape => "BadShape",
        };
        f.write_str(name)
    }
}

/// One localized constraint breach. `team` and `week` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub team: Option<usize>,
    pub week: Option<usize>,
    pub detail: String,
}

impl Violation {
    fn new(kind: ViolationKind, team: Option<usize>, week: Option<usize>, detail: String) -> Self {
        Violation {
            kind,
            team,
            week,
            detail,
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.kind)?;
        match (self.team, self.week) {
            (Some(t), Some(w)) => write!(f, " team {t}, week {w}")?,
            (Some(t), None) => write!(f, " team {t}")?,
            (None, Some(w)) => write!(f, " week {w}")?,
            (None, None) => {}
        }
        write!(f, ": {}", self.detail)
    }
}

/// Checks every travel-matrix invariant: shape, run lengths, mirrored
/// halves, weekly home/away balance, distinct rows, and complement pairing.
///
/// Returns an empty list exactly when the matrix is a feasible genome for
/// instance size `n`.
pub fn travel(a: &TravelMatrix, n: InstanceSize) -> Vec<Violation> {
    let mut out = Vec::new();
    let teams = n.teams();
    let weeks = n.weeks();

    if a.team_count() != teams {
        out.push(Violation::new(
            ViolationKind::BadShape,
            None,
            None,
            format!("expected {teams} travel rows, found {}", a.team_count()),
        ));
    }

    let mut shape_ok = a.team_count() == teams;
    for (i, row) in a.rows().iter().enumerate() {
        if row.len() != weeks {
            shape_ok = false;
            out.push(Violation::new(
                ViolationKind::BadShape,
                Some(i + 1),
                None,
                format!("expected {weeks} weeks, found {}", row.len()),
            ));
        }

        for (start, len) in row.runs_over(MAX_RUN) {
            let side = match row.get(start) {
                Venue::Home => "home",
                Venue::Away => "away",
            };
            out.push(Violation::new(
                ViolationKind::RunLength,
                Some(i + 1),
                Some(start + 1),
                format!("{len} consecutive {side} games exceed the limit of {MAX_RUN}"),
            ));
        }

        if row.len() == weeks {
            for w in row.mirror_breaks() {
                out.push(Violation::new(
                    ViolationKind::MirrorComplement,
                    Some(i + 1),
                    Some(w + 1),
                    format!(
                        "week {} must flip the venue of week {}",
                        w + 1,
                        w + 1 - n.half_weeks()
                    ),
                ));
            }
        }
    }

    // Duplicate rows are detectable regardless of shape.
    for i in 0..a.team_count() {
        for j in (i + 1)..a.team_count() {
            if a.row(i) == a.row(j) {
                out.push(Violation::new(
                    ViolationKind::DuplicateRow,
                    Some(j + 1),
                    None,
                    format!("identical venue pattern to team {}", i + 1),
                ));
            }
        }
    }

    // Column balance and complement pairing only make sense on a full grid.
    if shape_ok {
        for w in 0..weeks {
            let aways = a.rows().iter().filter(|r| r.get(w) == Venue::Away).count();
            if aways != teams / 2 {
                out.push(Violation::new(
                    ViolationKind::ColumnBalance,
                    None,
                    Some(w + 1),
                    format!("{aways} away games, expected {}", teams / 2),
                ));
            }
        }

        for i in 0..teams {
            if a.complement_partner(i).is_none() {
                out.push(Violation::new(
                    ViolationKind::MirrorComplement,
                    Some(i + 1),
                    None,
                    "no other row is this row's bitwise complement".to_string(),
                ));
            }
        }
    }

    out
}

/// Checks every tournament invariant: the travel checks plus schedule shape,
/// no self-play, pairwise symmetry, round robin per half, mirrored halves,
/// and venue consistency between the two matrices.
pub fn tournament(t: &Tournament) -> Vec<Violation> {
    let mut out = travel(&t.travel, t.size);
    let travel_ok = out.is_empty();
    let teams = t.size.teams();
    let weeks = t.size.weeks();
    let half = t.size.half_weeks();
    let b = &t.schedule;

    if b.team_count() != teams {
        out.push(Violation::new(
            ViolationKind::BadShape,
            None,
            None,
            format!("expected {teams} schedule rows, found {}", b.team_count()),
        ));
    }
    let mut shape_ok = b.team_count() == teams;
    for (i, row) in b.rows().iter().enumerate() {
        if row.len() != weeks {
            shape_ok = false;
            out.push(Violation::new(
                ViolationKind::BadShape,
                Some(i + 1),
                None,
                format!("expected {weeks} schedule weeks, found {}", row.len()),
            ));
        }
    }
    if !shape_ok {
        return out;
    }

    for i in 0..teams {
        for w in 0..weeks {
            let opp = b.opponent(i, w);
            if opp >= teams {
                out.push(Violation::new(
                    ViolationKind::BadShape,
                    Some(i + 1),
                    Some(w + 1),
                    format!("opponent id {} out of range 1..={teams}", opp + 1),
                ));
                continue;
            }
            if opp == i {
                out.push(Violation::new(
                    ViolationKind::SelfPlay,
                    Some(i + 1),
                    Some(w + 1),
                    "team scheduled against itself".to_string(),
                ));
                continue;
            }
            if b.opponent(opp, w) != i {
                out.push(Violation::new(
                    ViolationKind::SymmetryBroken,
                    Some(i + 1),
                    Some(w + 1),
                    format!(
                        "team {} plays team {}, but team {} plays team {}",
                        i + 1,
                        opp + 1,
                        opp + 1,
                        b.opponent(opp, w) + 1
                    ),
                ));
            }
        }
    }

    for i in 0..teams {
        for (name, range) in [("first", 0..half), ("second", half..weeks)] {
            let mut seen = vec![false; teams];
            let mut ok = true;
            for w in range {
                let opp = b.opponent(i, w);
                if opp >= teams || opp == i || seen[opp] {
                    ok = false;
                    break;
                }
                seen[opp] = true;
            }
            if !(ok && seen.iter().filter(|&&s| s).count() == teams - 1) {
                out.push(Violation::new(
                    ViolationKind::NotRoundRobin,
                    Some(i + 1),
                    None,
                    format!("{name} half does not meet every other team exactly once"),
                ));
            }
        }
    }

    for i in 0..teams {
        for w in 0..half {
            if b.opponent(i, w) != b.opponent(i, w + half) {
                out.push(Violation::new(
                    ViolationKind::NotMirrored,
                    Some(i + 1),
                    Some(w + half + 1),
                    format!("opponent differs from week {}", w + 1),
                ));
            }
        }
    }

    // Venue consistency is checked once per well-formed game; asymmetric
    // cells are already reported above and carry no well-defined game.
    if travel_ok {
        for i in 0..teams {
            for w in 0..weeks {
                let opp = b.opponent(i, w);
                if opp < teams && opp > i && b.opponent(opp, w) == i {
                    let vi = t.travel.row(i).get(w);
                    let vo = t.travel.row(opp).get(w);
                    if vi == vo {
                        let side = match vi {
                            Venue::Home => "home",
                            Venue::Away => "away",
                        };
                        out.push(Violation::new(
                            ViolationKind::VenueInconsistent,
                            Some(i + 1),
                            Some(w + 1),
                            format!("teams {} and {} are both {side}", i + 1, opp + 1),
                        ));
                    }
                }
            }
        }
    }

    out
}
