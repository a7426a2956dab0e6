//! Best-response dynamics.
//!
//! Agents that are indifferent keep their current action, so the fixed
//! points of both schedules are exactly the Nash equilibria.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::game::{first_deviator, Action, ActionProfile, BestResponse, Population};

/// Generator used for asynchronous activations, recorded with every run.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64 (rand_chacha 0.3), activation = gen_range(0..n)";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    /// One uniformly random agent revises per step.
    Asynchronous { seed: u64 },
    /// All agents revise simultaneously.
    Synchronous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    ConvergedToNash { profile: ActionProfile, steps: usize },
    CycleDetected { period: usize },
    StepLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrajectoryPoint {
    pub step: usize,
    /// Agents at `+1` after this step; `z = plus / n`.
    pub plus: usize,
    pub activated: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsRun {
    pub schedule: Schedule,
    pub rng_algorithm: Option<&'static str>,
    pub n: usize,
    pub trajectory: Vec<TrajectoryPoint>,
    pub outcome: Outcome,
}

fn revise(pop: &Population, current: Action, i: usize, plus_total: usize) -> Action {
    let others = plus_total - usize::from(current == Action::Plus);
    match pop.best_response_at(i, others) {
        BestResponse::Only(a) => a,
        BestResponse::Either => current,
    }
}

/// Activates one uniformly chosen agent, moves it to its best response and
/// returns its index.
pub fn step_async<R: Rng + ?Sized>(pop: &Population, x: &mut ActionProfile, rng: &mut R) -> Result<usize> {
    pop.check_profile(x)?;
    let mut plus = x.plus_count();
    Ok(activate(pop, x, &mut plus, rng))
}

fn activate<R: Rng + ?Sized>(pop: &Population, x: &mut ActionProfile, plus: &mut usize, rng: &mut R) -> usize {
    let i = rng.gen_range(0..pop.n());
    let current = x.get(i);
    let next = revise(pop, current, i, *plus);
    if next != current {
        x.set(i, next);
        match next {
            Action::Plus => *plus += 1,
            Action::Minus => *plus -= 1,
        }
    }
    i
}

/// Every agent moves to its best response against `x` at once.
pub fn step_sync(pop: &Population, x: &ActionProfile) -> Result<ActionProfile> {
    pop.check_profile(x)?;
    let plus = x.plus_count();
    Ok(ActionProfile::new(
        (0..pop.n()).map(|i| revise(pop, x.get(i), i, plus)).collect(),
    ))
}

pub fn run(pop: &Population, x0: &ActionProfile, schedule: Schedule, step_limit: usize) -> Result<DynamicsRun> {
    pop.check_profile(x0)?;
    if step_limit == 0 {
        return Err(Error::ZeroStepLimit);
    }
    let (trajectory, outcome) = match schedule {
        Schedule::Asynchronous { seed } => run_async(pop, x0.clone(), seed, step_limit),
        Schedule::Synchronous => run_sync(pop, x0.clone(), step_limit),
    };
    Ok(DynamicsRun {
        schedule,
        rng_algorithm: matches!(schedule, Schedule::Asynchronous { .. }).then_some(RNG_ALGORITHM),
        n: pop.n(),
        trajectory,
        outcome,
    })
}

fn settled(pop: &Population, x: &ActionProfile) -> bool {
    first_deviator(pop, x).expect("profile length checked").is_none()
}

fn run_async(pop: &Population, mut x: ActionProfile, seed: u64, limit: usize) -> (Vec<TrajectoryPoint>, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut plus = x.plus_count();
    let mut trajectory = vec![TrajectoryPoint { step: 0, plus, activated: None }];
    if settled(pop, &x) {
        return (trajectory, Outcome::ConvergedToNash { profile: x, steps: 0 });
    }
    for step in 1..=limit {
        let before = plus;
        let i = activate(pop, &mut x, &mut plus, &mut rng);
        trajectory.push(TrajectoryPoint { step, plus, activated: Some(i) });
        // Only a switch can turn a non-equilibrium into an equilibrium.
        if plus != before && settled(pop, &x) {
            return (trajectory, Outcome::ConvergedToNash { profile: x, steps: step });
        }
    }
    (trajectory, Outcome::StepLimit)
}

fn run_sync(pop: &Population, mut x: ActionProfile, limit: usize) -> (Vec<TrajectoryPoint>, Outcome) {
    let mut trajectory = vec![TrajectoryPoint { step: 0, plus: x.plus_count(), activated: None }];
    let mut seen: HashMap<ActionProfile, usize> = HashMap::new();
    seen.insert(x.clone(), 0);
    for step in 1..=limit {
        if settled(pop, &x) {
            return (trajectory, Outcome::ConvergedToNash { profile: x, steps: step - 1 });
        }
        x = step_sync(pop, &x).expect("profile length checked");
        trajectory.push(TrajectoryPoint { step, plus: x.plus_count(), activated: None });
        if let Some(first) = seen.insert(x.clone(), step) {
            return (trajectory, Outcome::CycleDetected { period: step - first });
        }
    }
    if settled(pop, &x) {
        let steps = limit;
        return (trajectory, Outcome::ConvergedToNash { profile: x, steps });
    }
    (trajectory, Outcome::StepLimit)
}
