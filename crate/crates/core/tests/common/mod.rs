//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use cac_core::rational::{int, ratio};
use cac_core::{Agent, AgentKind, BigRational, Population};
use rand::Rng;

/// A weight that is either an engineered tie (`2m − (n−1)` for some count
/// `m`, so some agent is exactly indifferent), a small random rational, or
/// occasionally far enough out to make the agent stubborn.
pub fn random_weight<R: Rng>(rng: &mut R, n: usize) -> BigRational {
    let n = n as i64;
    match rng.gen_range(0..10) {
        0..=3 => int(2 * rng.gen_range(0..n) - (n - 1)),
        4..=8 => {
            let q = rng.gen_range(1..=6);
            ratio(rng.gen_range(-(n + 1) * q..=(n + 1) * q), q)
        }
        _ => int(rng.gen_range(-3 * n..=3 * n)),
    }
}

pub fn random_kind<R: Rng>(rng: &mut R) -> AgentKind {
    if rng.gen_bool(0.5) {
        AgentKind::Coordinating
    } else {
        AgentKind::AntiCoordinating
    }
}

pub fn random_population<R: Rng>(rng: &mut R, n: usize) -> Population {
    let agents = (0..n)
        .map(|_| Agent::new(random_kind(rng), random_weight(rng, n)))
        .collect();
    Population::new(agents).unwrap()
}

pub fn random_pure<R: Rng>(rng: &mut R, n: usize, kind: AgentKind) -> Population {
    let agents = (0..n).map(|_| Agent::new(kind, random_weight(rng, n))).collect();
    Population::new(agents).unwrap()
}

/// Mixed instance with at least one agent of each kind.
pub fn random_mixed<R: Rng>(rng: &mut R, n: usize) -> Population {
    assert!(n >= 2);
    let split = rng.gen_range(1..n);
    let agents = (0..n)
        .map(|i| {
            let kind = if i < split { AgentKind::Coordinating } else { AgentKind::AntiCoordinating };
            Agent::new(kind, random_weight(rng, n))
        })
        .collect();
    Population::new(agents).unwrap()
}

/// Coordinating agents with thresholds in `[0, 1]` on a grid that mixes
/// exact switching points `m/(n−1)` with off-grid rationals.
pub fn random_coordination_no_stubborn<R: Rng>(rng: &mut R, n: usize) -> Population {
    let den = (n as i64 - 1) * rng.gen_range(1..=3);
    Population::from_thresholds((0..n).map(|_| (AgentKind::Coordinating, ratio(rng.gen_range(0..=den), den))))
        .unwrap()
}

/// Midpoint discretisation of the uniform distribution on `[0, 1]`.
pub fn uniform_thresholds(m: usize) -> Vec<BigRational> {
    (0..m as i64).map(|j| ratio(2 * j + 1, 2 * m as i64)).collect()
}
