//! Ground truth by exhaustion: brute-force Nash search and exact-potential checks.

use num::{BigRational, Zero};
use rayon::prelude::*;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::game::{utility, ActionProfile, Population};
use crate::rational::int;
use crate::solver::{classify_game, GameClass};

/// Default cap for [`brute_force_nash`]; `2^20` profiles.
pub const DEFAULT_MAX_N: usize = 20;

/// Cap for the potential checks, which visit every profile and deviation.
pub const POTENTIAL_MAX_N: usize = 12;

#[derive(Debug, Clone)]
pub struct OracleReport {
    /// Every Nash profile in increasing bitmask order. Left empty in
    /// count-only mode.
    pub nash_profiles: Vec<ActionProfile>,
    pub count: u64,
    pub elapsed: Duration,
}

/// Per-agent acceptance tables indexed by the number of other `+1` players.
struct Tables {
    n: usize,
    plus_ok: Vec<u64>,
    minus_ok: Vec<u64>,
}

impl Tables {
    fn new(pop: &Population) -> Self {
        let n = pop.n();
        let mut plus_ok = vec![0u64; n];
        let mut minus_ok = vec![0u64; n];
        for i in 0..n {
            for m in 0..n {
                let br = pop.best_response_at(i, m);
                if br.contains(crate::game::Action::Plus) {
                    plus_ok[i] |= 1 << m;
                }
                if br.contains(crate::game::Action::Minus) {
                    minus_ok[i] |= 1 << m;
                }
            }
        }
        Tables { n, plus_ok, minus_ok }
    }

    fn is_nash(&self, mask: u64) -> bool {
        let k = mask.count_ones() as usize;
        (0..self.n).all(|i| {
            if mask >> i & 1 == 1 {
                self.plus_ok[i] >> (k - 1) & 1 == 1
            } else {
                k < self.n && self.minus_ok[i] >> k & 1 == 1
            }
        })
    }
}

fn check_size(pop: &Population, limit: usize) -> Result<()> {
    // Bitmasks are u64 and per-agent tables index by count, so 63 is a hard ceiling.
    if pop.n() > limit || pop.n() > 63 {
        Err(Error::TooLarge {
            n: pop.n(),
            limit: limit.min(63),
        })
    } else {
        Ok(())
    }
}

/// Scans all `2^n` profiles and keeps those where every agent best-responds.
pub fn brute_force_nash(pop: &Population, max_n: usize) -> Result<OracleReport> {
    check_size(pop, max_n)?;
    let start = Instant::now();
    let tables = Tables::new(pop);
    let masks: Vec<u64> = (0..1u64 << pop.n())
        .into_par_iter()
        .filter(|&m| tables.is_nash(m))
        .collect();
    let nash_profiles: Vec<_> = masks
        .into_iter()
        .map(|m| ActionProfile::from_mask(m, pop.n()))
        .collect();
    Ok(OracleReport {
        count: nash_profiles.len() as u64,
        nash_profiles,
        elapsed: start.elapsed(),
    })
}

/// [`brute_force_nash`] without materialising the profiles.
pub fn brute_force_count(pop: &Population, max_n: usize) -> Result<OracleReport> {
    check_size(pop, max_n)?;
    let start = Instant::now();
    let tables = Tables::new(pop);
    let count = (0..1u64 << pop.n())
        .into_par_iter()
        .filter(|&m| tables.is_nash(m))
        .count() as u64;
    Ok(OracleReport {
        nash_profiles: Vec::new(),
        count,
        elapsed: start.elapsed(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Potential {
    /// `Φ_c(x) = ½ Σ_{i≠j} x_i x_j − Σ_i d_i x_i`.
    Coordination,
    /// `Φ_a = −Φ_c`.
    AntiCoordination,
}

pub fn potential_value_coord(pop: &Population, x: &ActionProfile) -> Result<BigRational> {
    pop.check_profile(x)?;
    let total: i64 = x.actions().iter().map(|a| a.value()).sum();
    // ½ Σ_{i≠j} x_i x_j = ((Σ x)^2 − n) / 2, an integer since Σx ≡ n (mod 2).
    let pairs = (total * total - pop.n() as i64) / 2;
    let linear = pop
        .agents()
        .iter()
        .zip(x.actions())
        .fold(BigRational::zero(), |acc, (agent, a)| acc + &agent.weight * int(a.value()));
    Ok(int(pairs) - linear)
}

pub fn potential_value_anti(pop: &Population, x: &ActionProfile) -> Result<BigRational> {
    potential_value_coord(pop, x).map(|v| -v)
}

pub fn potential_value(pop: &Population, x: &ActionProfile, which: Potential) -> Result<BigRational> {
    match which {
        Potential::Coordination => potential_value_coord(pop, x),
        Potential::AntiCoordination => potential_value_anti(pop, x),
    }
}

/// Checks `u_i(y_i, x_{−i}) − u_i(x) = Φ(y_i, x_{−i}) − Φ(x)` for every
/// profile and unilateral deviation, with `Φ` chosen from the game class
/// (`Φ_c` for coordination and mixed games, `Φ_a` for anti-coordination).
pub fn verify_exact_potential(pop: &Population) -> Result<bool> {
    let which = match classify_game(pop) {
        GameClass::PureAntiCoordination => Potential::AntiCoordination,
        GameClass::PureCoordination | GameClass::Mixed => Potential::Coordination,
    };
    verify_exact_potential_with(pop, which)
}

pub fn verify_exact_potential_with(pop: &Population, which: Potential) -> Result<bool> {
    check_size(pop, POTENTIAL_MAX_N)?;
    let n = pop.n();
    for mask in 0..1u64 << n {
        let x = ActionProfile::from_mask(mask, n);
        let phi_x = potential_value(pop, &x, which)?;
        for i in 0..n {
            let y = x.with_flip(i);
            let du = utility(pop, &y, i)? - utility(pop, &x, i)?;
            let dphi = potential_value(pop, &y, which)? - &phi_x;
            if du != dphi {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact-potential existence test: around every 4-cycle
/// `x → (y_i, x_{−i}) → (y_i, y_j, x_{−ij}) → (y_j, x_{−j}) → x`
/// the deviating players' utility changes must sum to zero.
pub fn four_cycle_potential_test(pop: &Population) -> Result<bool> {
    check_size(pop, POTENTIAL_MAX_N)?;
    let n = pop.n();
    for mask in 0..1u64 << n {
        let x = ActionProfile::from_mask(mask, n);
        for i in 0..n {
            for j in i + 1..n {
                let xi = x.with_flip(i);
                let xij = xi.with_flip(j);
                let xj = x.with_flip(j);
                let total = (utility(pop, &xi, i)? - utility(pop, &x, i)?)
                    + (utility(pop, &xij, j)? - utility(pop, &xi, j)?)
                    + (utility(pop, &xj, i)? - utility(pop, &xij, i)?)
                    + (utility(pop, &x, j)? - utility(pop, &xj, j)?);
                if !total.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
