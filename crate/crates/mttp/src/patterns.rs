//! Random generation of feasible venue sequences and assembly of full
//! travel matrices from seed rows plus their complements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::InstanceSize;
use crate::travel::{TravelMatrix, TravelSequence, Venue};
use crate::validate::MAX_RUN;

/// The solver's deterministic generator. ChaCha8 is seedable from a single
/// 64-bit value and produces the same stream on every platform.
pub type SolverRng = ChaCha8Rng;

/// Builds the solver generator for a given seed.
pub fn rng_from_seed(seed: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Attempt cap for every rejection-sampling loop in this crate.
pub const RETRY_LIMIT: usize = 1000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerationError {
    #[error("no legal venue sequence found in {RETRY_LIMIT} attempts")]
    SequenceRetries,
    #[error("no {needed}th distinct seed row found in {RETRY_LIMIT} attempts")]
    SeedRetries { needed: usize },
}

/// Swaps home and away in every week: the bitwise complement.
pub fn swap_complement(seq: &TravelSequence) -> TravelSequence {
    seq.complement()
}

/// Draws a travel sequence satisfying every row invariant: length 2n-2,
/// no run over [`MAX_RUN`], second half the complement of the first.
///
/// The first n-1 flags are sampled left to right, forcing a flip whenever
/// the last [`MAX_RUN`] flags are equal; the second half is mirrored by
/// complement. A run can still straddle the halfway boundary, so the full
/// sequence is rechecked and resampled on failure.
pub fn random_sequence(
    n: InstanceSize,
    rng: &mut SolverRng,
) -> Result<TravelSequence, GenerationError> {
    let half = n.half_weeks();
    for _ in 0..RETRY_LIMIT {
        let mut flags: Vec<Venue> = Vec::with_capacity(n.weeks());
        for w in 0..half {
            let forced = w >= MAX_RUN && flags[w - MAX_RUN..w].iter().all(|&v| v == flags[w - 1]);
            let next = if forced {
                flags[w - 1].flipped()
            } else if rng.random::<bool>() {
                Venue::Away
            } else {
                Venue::Home
            };
            flags.push(next);
        }
        for w in 0..half {
            flags.push(flags[w].flipped());
        }
        let seq = TravelSequence::new(flags);
        if seq.longest_run() <= MAX_RUN {
            return Ok(seq);
        }
    }
    Err(GenerationError::SequenceRetries)
}

/// Lays out seed rows 0..n/2 followed by their complements, so row n/2+k
/// is the complement partner of row k.
pub fn pair_with_complements(seeds: Vec<TravelSequence>) -> TravelMatrix {
    let complements: Vec<TravelSequence> = seeds.iter().map(swap_complement).collect();
    let mut rows = seeds;
    rows.extend(complements);
    TravelMatrix::new(rows)
}

/// Builds a full travel matrix: n/2 seed rows drawn at random, mutually
/// distinct and mutually non-complementary, completed by their complements.
///
/// A seed equal to the complement of an earlier seed would make its own
/// complement row duplicate that earlier seed, so both collisions are
/// rejected. The result always passes every travel-matrix check.
pub fn build_individual(
    n: InstanceSize,
    rng: &mut SolverRng,
) -> Result<TravelMatrix, GenerationError> {
    let pairs = n.teams() / 2;
    let mut seeds: Vec<TravelSequence> = Vec::with_capacity(pairs);
    while seeds.len() < pairs {
        let mut accepted = false;
        for _ in 0..RETRY_LIMIT {
            let cand = random_sequence(n, rng)?;
            let comp = cand.complement();
            if seeds.iter().all(|s| *s != cand && *s != comp) {
                seeds.push(cand);
                accepted = true;
                break;
            }
        }
        if !accepted {
            return Err(GenerationError::SeedRetries {
                needed: seeds.len() + 1,
            });
        }
    }
    Ok(pair_with_complements(seeds))
}
