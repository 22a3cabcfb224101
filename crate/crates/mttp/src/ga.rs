//! The evolutionary search loop: elitist generations, ratio-weighted
//! crossover over seed rows, four-cell mutation, and lazy schedulability
//! screening of incumbents.

use rand::Rng;
use thiserror::Error;

use crate::instance::InstanceSize;
use crate::patterns::{self, SolverRng, RETRY_LIMIT};
use crate::schedule::ScheduleMatrix;
use crate::scheduler::{ScheduleError, ScheduleOutcome, Scheduler};
use crate::travel::{TravelMatrix, TravelSequence};
use crate::validate::{self, MAX_RUN};

/// Fitness sentinel for individuals proven unschedulable. Real trip counts
/// never reach it.
pub const BANNED: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum GaError {
    #[error("invalid parameters: {0}")]
    BadParams(&'static str),
    #[error("individual fails travel validation with {0} violation(s)")]
    InvalidIndividual(usize),
    #[error("parents have different instance sizes")]
    SizeMismatch,
    #[error(transparent)]
    Generation(#[from] patterns::GenerationError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaParams {
    pub population: usize,
    pub elite: usize,
    pub mutation_prob: f64,
    pub max_iterations: u32,
    /// Early-stop trip count; the run ends once a schedulable individual
    /// reaches it.
    pub target: Option<u32>,
    pub node_budget: u64,
    pub seed: u64,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population: 4,
            elite: 2,
            mutation_prob: 0.8,
            max_iterations: 5000,
            target: None,
            node_budget: crate::scheduler::DEFAULT_NODE_BUDGET,
            seed: 0,
        }
    }
}

impl GaParams {
    /// Crossover draws two distinct elite parents, so at least two elites
    /// must survive each generation.
    pub fn validate(&self) -> Result<(), GaError> {
        if self.elite < 2 {
            return Err(GaError::BadParams("elite must be at least 2"));
        }
        if self.elite >= self.population {
            return Err(GaError::BadParams("elite must be below population"));
        }
        if !(0.0..=1.0).contains(&self.mutation_prob) {
            return Err(GaError::BadParams("mutation_prob must lie in [0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedulability {
    Unknown,
    Yes,
    No,
}

/// One member of the population: a feasible travel matrix plus cached
/// bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    pub travel: TravelMatrix,
    /// partner_map[i] holds the row carrying row i's complement.
    pub partner_map: Vec<usize>,
    /// Total trips, or [`BANNED`] once proven unschedulable.
    pub fitness: u32,
    pub schedulable: Schedulability,
}

impl Individual {
    /// Wraps a travel matrix after checking every row and matrix invariant.
    /// Distinct rows make the complement pairing unique, so the partner map
    /// is recovered by search.
    pub fn new(travel: TravelMatrix, n: InstanceSize) -> Result<Self, GaError> {
        let violations = validate::travel(&travel, n);
        if !violations.is_empty() {
            return Err(GaError::InvalidIndividual(violations.len()));
        }
        let partner_map = (0..n.teams())
            .map(|i| travel.complement_partner(i).expect("validated pairing"))
            .collect();
        let fitness = travel.total_trips();
        Ok(Individual {
            travel,
            partner_map,
            fitness,
            schedulable: Schedulability::Unknown,
        })
    }
}

/// Applies the four coupled venue flips of one mutation: team `t` and its
/// complement partner `p`, in week `w` and its mirror week.
pub fn mutation_flips(a: &TravelMatrix, t: usize, p: usize, w: usize, half: usize) -> TravelMatrix {
    let mut m = a.clone();
    m.flip(t, w);
    m.flip(t, w + half);
    m.flip(p, w);
    m.flip(p, w + half);
    m
}

/// Flipping mirrored weeks of both partners preserves the mirror and the
/// column balance, so only run lengths and row distinctness can break.
fn mutated_rows_ok(m: &TravelMatrix, t: usize, p: usize) -> bool {
    for &i in &[t, p] {
        if m.row(i).longest_run() > MAX_RUN {
            return false;
        }
        for j in 0..m.team_count() {
            if j != i && m.row(j) == m.row(i) {
                return false;
            }
        }
    }
    true
}

/// Mutates one random (team, first-half week) cell group, resampling until
/// the result keeps all invariants. Returns the input unchanged (second
/// value true) when no legal flip is found within the attempt cap.
pub fn mutate(ind: &Individual, n: InstanceSize, rng: &mut SolverRng) -> (Individual, bool) {
    let teams = n.teams();
    let half = n.half_weeks();
    for _ in 0..RETRY_LIMIT {
        let t = rng.random_range(0..teams);
        let w = rng.random_range(0..half);
        let p = ind.partner_map[t];
        let travel = mutation_flips(&ind.travel, t, p, w, half);
        if mutated_rows_ok(&travel, t, p) {
            debug_assert!(validate::travel(&travel, n).is_empty());
            let fitness = travel.total_trips();
            return (
                Individual {
                    travel,
                    partner_map: ind.partner_map.clone(),
                    fitness,
                    schedulable: Schedulability::Unknown,
                },
                false,
            );
        }
    }
    (ind.clone(), true)
}

/// Seed-row count the parent `fit_a` contributes, weighting parents by
/// inverse fitness and keeping both contributions nonzero.
pub fn crossover_ratio(fit_a: u32, fit_b: u32, pairs: usize) -> usize {
    let wa = 1.0 / f64::from(fit_a.max(1));
    let wb = 1.0 / f64::from(fit_b.max(1));
    let raw = (pairs as f64 * wa / (wa + wb)).round() as i64;
    raw.clamp(1, pairs as i64 - 1) as usize
}

/// Recombines two parents: k seed rows drawn from the fitter-weighted
/// parent `a`, the rest from `b`, each draw rejected when it duplicates or
/// complements an already-chosen row; exhausted slots fall back to fresh
/// random rows. The second value counts fallback rows.
pub fn crossover(
    a: &Individual,
    b: &Individual,
    n: InstanceSize,
    rng: &mut SolverRng,
) -> Result<(Individual, u64), GaError> {
    let teams = n.teams();
    if a.travel.team_count() != teams || b.travel.team_count() != teams {
        return Err(GaError::SizeMismatch);
    }
    let pairs = teams / 2;
    let k = crossover_ratio(a.fitness, b.fitness, pairs);

    let compatible = |chosen: &[TravelSequence], row: &TravelSequence| {
        chosen.iter().all(|c| c != row && *c != row.complement())
    };

    let mut chosen: Vec<TravelSequence> = Vec::with_capacity(pairs);
    let mut fallback_rows = 0u64;
    for (source, want) in [(a, k), (b, pairs - k)] {
        for _ in 0..want {
            let mut took = false;
            for _ in 0..RETRY_LIMIT {
                let row = source.travel.row(rng.random_range(0..teams));
                if compatible(&chosen, row) {
                    chosen.push(row.clone());
                    took = true;
                    break;
                }
            }
            if !took {
                for _ in 0..RETRY_LIMIT {
                    let row = patterns::random_sequence(n, rng)?;
                    if compatible(&chosen, &row) {
                        chosen.push(row);
                        fallback_rows += 1;
                        took = true;
                        break;
                    }
                }
            }
            if !took {
                return Err(GaError::Generation(
                    patterns::GenerationError::SeedRetries {
                        needed: chosen.len() + 1,
                    },
                ));
            }
        }
    }

    let child = Individual::new(patterns::pair_with_complements(chosen), n)?;
    Ok((child, fallback_rows))
}

/// Counters accumulated over one [`evolve`] run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvolveStats {
    /// Generations actually executed (history entries beyond the initial
    /// population).
    pub iterations: u32,
    pub mutations: u64,
    pub mutation_fallbacks: u64,
    pub crossover_fallback_rows: u64,
    pub schedulability_checks: u64,
}

/// A finished run whose best individual is schedulable.
#[derive(Debug, Clone)]
pub struct Solved {
    pub best: Individual,
    pub schedule: ScheduleMatrix,
    pub history: Vec<u32>,
    pub stats: EvolveStats,
}

/// A finished run that never found a schedulable individual.
#[derive(Debug, Clone)]
pub struct NoFeasible {
    /// Lowest-trip matrix encountered, kept for diagnostics.
    pub best_candidate: Individual,
    pub history: Vec<u32>,
    pub stats: EvolveStats,
}

#[derive(Debug, Clone)]
pub enum EvolveOutcome {
    Solved(Solved),
    NoFeasible(NoFeasible),
}

impl EvolveOutcome {
    pub fn history(&self) -> &[u32] {
        match self {
            EvolveOutcome::Solved(s) => &s.history,
            EvolveOutcome::NoFeasible(f) => &f.history,
        }
    }

    pub fn stats(&self) -> &EvolveStats {
        match self {
            EvolveOutcome::Solved(s) => &s.stats,
            EvolveOutcome::NoFeasible(f) => &f.stats,
        }
    }
}

/// Screens population incumbents lazily: while some unscreened individual
/// beats the best schedulable fitness, schedule it; failures are banned
/// with the sentinel and the next pretender is screened in turn.
fn screen_incumbents(
    pop: &mut [Individual],
    best: &mut Option<(Individual, ScheduleMatrix)>,
    scheduler: &mut Scheduler,
    n: InstanceSize,
    stats: &mut EvolveStats,
) -> Result<(), GaError> {
    loop {
        let best_fitness = best.as_ref().map_or(BANNED, |(ind, _)| ind.fitness);
        let candidate = pop
            .iter_mut()
            .filter(|ind| ind.schedulable == Schedulability::Unknown && ind.fitness < best_fitness)
            .min_by_key(|ind| ind.fitness);
        let Some(ind) = candidate else {
            return Ok(());
        };
        stats.schedulability_checks += 1;
        if scheduler.is_schedulable(&ind.travel, n) {
            match scheduler.schedule(&ind.travel, n)? {
                ScheduleOutcome::Feasible(schedule) => {
                    ind.schedulable = Schedulability::Yes;
                    *best = Some((ind.clone(), schedule));
                }
                // The verdict was proven feasible; a rerun cannot disagree,
                // but stay total rather than panic.
                ScheduleOutcome::Infeasible(_) => {
                    ind.schedulable = Schedulability::No;
                    ind.fitness = BANNED;
                }
            }
        } else {
            ind.schedulable = Schedulability::No;
            ind.fitness = BANNED;
        }
    }
}

fn track_candidate(best_candidate: &mut Option<Individual>, ind: &Individual) {
    let better = best_candidate
        .as_ref()
        .is_none_or(|cur| ind.fitness < cur.fitness);
    if better {
        *best_candidate = Some(ind.clone());
    }
}

/// Runs the full evolutionary loop for one seed.
///
/// Each generation keeps the `elite` best individuals, fills the rest with
/// crossover children of two distinct elites, and mutates each child with
/// probability `mutation_prob`. The recorded history holds the best known
/// fitness after every generation, starting with the initial population;
/// it is non-increasing, with [`BANNED`] entries before the first
/// schedulable individual appears.
pub fn evolve(n: InstanceSize, params: &GaParams) -> Result<EvolveOutcome, GaError> {
    params.validate()?;
    let mut rng = patterns::rng_from_seed(params.seed);
    let mut scheduler = Scheduler::new(params.node_budget);
    let mut stats = EvolveStats::default();

    let mut pop: Vec<Individual> = Vec::with_capacity(params.population);
    let mut best_candidate: Option<Individual> = None;
    for _ in 0..params.population {
        let ind = Individual::new(patterns::build_individual(n, &mut rng)?, n)?;
        track_candidate(&mut best_candidate, &ind);
        pop.push(ind);
    }

    let mut best: Option<(Individual, ScheduleMatrix)> = None;
    let mut history: Vec<u32> = Vec::with_capacity(params.max_iterations as usize + 1);

    screen_incumbents(&mut pop, &mut best, &mut scheduler, n, &mut stats)?;
    pop.sort_by_key(|ind| ind.fitness);
    history.push(pop.first().map_or(BANNED, |ind| ind.fitness));

    let target_met = |best: &Option<(Individual, ScheduleMatrix)>| matches!((best, params.target), (Some((ind, _)), Some(t)) if ind.fitness <= t);

    while stats.iterations < params.max_iterations && !target_met(&best) {
        let mut next: Vec<Individual> = pop[..params.elite].to_vec();
        for _ in 0..params.population - params.elite {
            let first = rng.random_range(0..params.elite);
            let mut second = rng.random_range(0..params.elite - 1);
            if second >= first {
                second += 1;
            }
            let (child, fallbacks) = crossover(&pop[first], &pop[second], n, &mut rng)?;
            stats.crossover_fallback_rows += fallbacks;
            let child = if rng.random::<f64>() < params.mutation_prob {
                stats.mutations += 1;
                let (mutated, fell_back) = mutate(&child, n, &mut rng);
                stats.mutation_fallbacks += u64::from(fell_back);
                mutated
            } else {
                child
            };
            track_candidate(&mut best_candidate, &child);
            next.push(child);
        }
        pop = next;
        screen_incumbents(&mut pop, &mut best, &mut scheduler, n, &mut stats)?;
        pop.sort_by_key(|ind| ind.fitness);
        history.push(pop.first().map_or(BANNED, |ind| ind.fitness));
        stats.iterations += 1;
    }

    Ok(match best {
        Some((ind, schedule)) => EvolveOutcome::Solved(Solved {
            best: ind,
            schedule,
            history,
            stats,
        }),
        None => EvolveOutcome::NoFeasible(NoFeasible {
            best_candidate: best_candidate.expect("population is nonempty"),
            history,
            stats,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::Tournament;

    fn n(teams: usize) -> InstanceSize {
        InstanceSize::new(teams).unwrap()
    }

    fn six_team_matrix() -> TravelMatrix {
        TravelMatrix::from_bit_rows(&[
            vec![0, 0, 1, 1, 0, 1, 1, 0, 0, 1],
            vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
            vec![1, 0, 1, 1, 0, 0, 1, 0, 0, 1],
            vec![1, 1, 0, 0, 1, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
            vec![0, 1, 0, 0, 1, 1, 0, 1, 1, 0],
        ])
        .unwrap()
    }

    #[test]
    fn individual_recovers_partner_map_from_any_row_order() {
        let ind = Individual::new(six_team_matrix(), n(6)).unwrap();
        assert_eq!(ind.partner_map, vec![3, 4, 5, 0, 1, 2]);

        let crossed = TravelMatrix::from_bit_rows(&[
            vec![0, 0, 0, 1, 1, 1],
            vec![1, 0, 0, 0, 1, 1],
            vec![0, 1, 1, 1, 0, 0],
            vec![1, 1, 1, 0, 0, 0],
        ])
        .unwrap();
        let ind = Individual::new(crossed, n(4)).unwrap();
        assert_eq!(ind.partner_map, vec![3, 2, 1, 0]);
        assert_eq!(ind.fitness, 17);
    }

    #[test]
    fn mutation_flips_change_exactly_the_coupled_cells() {
        let a = six_team_matrix();
        let m = mutation_flips(&a, 0, 3, 0, 5);
        assert_eq!(m.row(0).to_bits(), vec![1, 0, 1, 1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(m.row(3).to_bits(), vec![0, 1, 0, 0, 1, 1, 0, 1, 1, 0]);
        for i in [1, 2, 4, 5] {
            assert_eq!(m.row(i), a.row(i));
        }
        // Balance survives the coupled flips...
        for w in 0..10 {
            let aways = (0..6)
                .filter(|&i| m.row(i).get(w) == crate::travel::Venue::Away)
                .count();
            assert_eq!(aways, 3);
        }
        // ...but this particular flip collides with rows 3 and 6, which the
        // validators catch and the mutation operator therefore rejects.
        let v = validate::travel(&m, n(6));
        assert!(v
            .iter()
            .any(|x| x.kind == validate::ViolationKind::DuplicateRow));
    }

    #[test]
    fn double_flip_restores_the_matrix() {
        let a = six_team_matrix();
        let twice = mutation_flips(&mutation_flips(&a, 2, 5, 1, 5), 2, 5, 1, 5);
        assert_eq!(twice.bit_key(), a.bit_key());
    }

    #[test]
    fn mutate_outputs_always_pass_validation() {
        for teams in [4, 6, 8] {
            let mut rng = patterns::rng_from_seed(21 + teams as u64);
            let mut ind = Individual::new(
                patterns::build_individual(n(teams), &mut rng).unwrap(),
                n(teams),
            )
            .unwrap();
            for _ in 0..300 {
                let (next, _) = mutate(&ind, n(teams), &mut rng);
                assert_eq!(validate::travel(&next.travel, n(teams)), vec![]);
                ind = next;
            }
        }
    }

    #[test]
    fn ratio_favors_the_fitter_parent() {
        assert_eq!(crossover_ratio(17, 17, 2), 1);
        assert_eq!(crossover_ratio(48, 52, 3), 2);
        assert_eq!(crossover_ratio(52, 48, 3), 1);
        assert_eq!(crossover_ratio(BANNED, 50, 5), 1);
        assert_eq!(crossover_ratio(50, BANNED, 5), 4);
        // Half rounds away from zero.
        assert_eq!(crossover_ratio(100, 100, 5), 3);
    }

    #[test]
    fn crossover_children_pass_validation() {
        for teams in [4, 6, 8] {
            let mut rng = patterns::rng_from_seed(77 + teams as u64);
            let a = Individual::new(
                patterns::build_individual(n(teams), &mut rng).unwrap(),
                n(teams),
            )
            .unwrap();
            let b = Individual::new(
                patterns::build_individual(n(teams), &mut rng).unwrap(),
                n(teams),
            )
            .unwrap();
            for _ in 0..100 {
                let (child, _) = crossover(&a, &b, n(teams), &mut rng).unwrap();
                assert_eq!(validate::travel(&child.travel, n(teams)), vec![]);
            }
        }
    }

    #[test]
    fn crossover_of_an_individual_with_itself_is_valid() {
        let mut rng = patterns::rng_from_seed(5);
        let a = Individual::new(six_team_matrix(), n(6)).unwrap();
        let (child, _) = crossover(&a, &a, n(6), &mut rng).unwrap();
        assert_eq!(validate::travel(&child.travel, n(6)), vec![]);
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let mut rng = patterns::rng_from_seed(3);
        let a = Individual::new(six_team_matrix(), n(6)).unwrap();
        let b = Individual::new(patterns::build_individual(n(4), &mut rng).unwrap(), n(4)).unwrap();
        assert!(matches!(
            crossover(&a, &b, n(6), &mut rng),
            Err(GaError::SizeMismatch)
        ));
    }

    #[test]
    fn params_are_validated() {
        let ok = GaParams::default();
        assert!(ok.validate().is_ok());
        assert!(GaParams { elite: 1, ..ok }.validate().is_err());
        assert!(GaParams { elite: 4, ..ok }.validate().is_err());
        assert!(GaParams {
            mutation_prob: 1.5,
            ..ok
        }
        .validate()
        .is_err());
    }

    #[test]
    fn evolve_solves_four_teams_and_validates() {
        let params = GaParams {
            max_iterations: 1000,
            target: Some(17),
            seed: 1,
            ..GaParams::default()
        };
        let outcome = evolve(n(4), &params).unwrap();
        let EvolveOutcome::Solved(solved) = outcome else {
            panic!("expected a schedulable solution");
        };
        assert_eq!(solved.best.fitness, 17);
        let t = Tournament::new(n(4), solved.best.travel.clone(), solved.schedule.clone());
        assert_eq!(validate::tournament(&t), vec![]);
        assert!(solved.history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn evolve_is_deterministic() {
        let params = GaParams {
            max_iterations: 60,
            seed: 42,
            ..GaParams::default()
        };
        let first = evolve(n(6), &params).unwrap();
        let second = evolve(n(6), &params).unwrap();
        assert_eq!(first.history(), second.history());
        let (EvolveOutcome::Solved(a), EvolveOutcome::Solved(b)) = (first, second) else {
            panic!("six teams should be solvable");
        };
        assert_eq!(a.best.travel.bit_key(), b.best.travel.bit_key());
        assert_eq!(a.schedule, b.schedule);
        assert_eq!(a.stats, b.stats);
    }
}
