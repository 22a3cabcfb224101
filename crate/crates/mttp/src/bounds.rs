//! Trip lower bounds and published reference results used by the
//! benchmark report.

use crate::instance::InstanceSize;

/// One row of the published comparison table: the result obtained by the
/// reference solver (`obtained`), the literature lower bound
/// (`lower_bound`), and the best previously known result (`known`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub n: usize,
    pub obtained: u32,
    pub lower_bound: u32,
    pub known: u32,
}

impl ReferenceRow {
    /// obtained − lower_bound; nonnegative since the bound is valid.
    pub fn gap_vs_lower_bound(&self) -> i64 {
        i64::from(self.obtained) - i64::from(self.lower_bound)
    }

    /// obtained − known; negative when the reference solver improved on
    /// the previously known result.
    pub fn gap_vs_known(&self) -> i64 {
        i64::from(self.obtained) - i64::from(self.known)
    }
}

/// Every team plays n−1 away games and needs at least ⌈(n−1)/3⌉ separate
/// away runs under the three-in-a-row cap, so each away run's return leg
/// is counted once.
pub fn naive_lower_bound(n: InstanceSize) -> u32 {
    let opponents = (n.teams() - 1) as u32;
    (n.teams() as u32) * (opponents + opponents.div_ceil(3))
}

/// The published comparison table for n = 4..20.
pub fn reference_table() -> &'static [ReferenceRow] {
    const TABLE: [ReferenceRow; 9] = [
        ReferenceRow {
            n: 4,
            obtained: 17,
            lower_bound: 17,
            known: 17,
        },
        ReferenceRow {
            n: 6,
            obtained: 48,
            lower_bound: 48,
            known: 48,
        },
        ReferenceRow {
            n: 8,
            obtained: 80,
            lower_bound: 80,
            known: 80,
        },
        ReferenceRow {
            n: 10,
            obtained: 130,
            lower_bound: 130,
            known: 130,
        },
        ReferenceRow {
            n: 12,
            obtained: 192,
            lower_bound: 192,
            known: 192,
        },
        ReferenceRow {
            n: 14,
            obtained: 253,
            lower_bound: 252,
            known: 256,
        },
        ReferenceRow {
            n: 16,
            obtained: 348,
            lower_bound: 342,
            known: 342,
        },
        ReferenceRow {
            n: 18,
            obtained: 432,
            lower_bound: 432,
            known: 434,
        },
        ReferenceRow {
            n: 20,
            obtained: 521,
            lower_bound: 520,
            known: 526,
        },
    ];
    &TABLE
}

/// Reference row for a team count, when tabulated.
pub fn reference_for(n: InstanceSize) -> Option<&'static ReferenceRow> {
    reference_table().iter().find(|row| row.n == n.teams())
}
