//! Characterisation of all pure Nash equilibria through fraction triples.
//!
//! For a candidate count `k = n z*` of `+1` players write
//! `a = (k−1)/(n−1)` and `b = k/(n−1)`. A profile with `k` players at `+1`
//! is an equilibrium exactly when
//!
//! * no coordinating threshold lies strictly inside `(a, b)`, i.e.
//!   `F_c(a) = F_c⁻(b)`, and then `z_c* = F_c(a)`;
//! * `G_a⁻(a) ≥ z_a* ≥ G_a(b)`;
//! * `k = n_c z_c* + n_a z_a*`.
//!
//! Coordinating agents are fully determined by `(a, b)`. Anti-coordinating
//! agents with thresholds in the closed window `[a, b]` are free, and any
//! choice of the right number of them at `+1` completes an equilibrium.

use itertools::Itertools;
use num::{BigInt, BigRational, BigUint, One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::distribution::{build_ccdf, build_cdf, StepFunction};
use crate::error::{Error, Result};
use crate::game::{Action, ActionProfile, AgentKind, FractionTriple, Population};

/// Above this many equilibria, [`enumerate_equilibria`] insists on a limit.
pub const ENUMERATION_GUARD: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GameClass {
    PureCoordination,
    PureAntiCoordination,
    Mixed,
}

impl std::fmt::Display for GameClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GameClass::PureCoordination => "coordination",
            GameClass::PureAntiCoordination => "anti-coordination",
            GameClass::Mixed => "mixed",
        })
    }
}

pub fn classify_game(pop: &Population) -> GameClass {
    match (pop.n_coord(), pop.n_anti()) {
        (_, 0) => GameClass::PureCoordination,
        (0, _) => GameClass::PureAntiCoordination,
        _ => GameClass::Mixed,
    }
}

/// One solution triple together with the data needed to build and count
/// its equilibria.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRecord {
    pub triple: FractionTriple,
    /// `a = (k−1)/(n−1)`.
    pub lower: BigRational,
    /// `b = k/(n−1)`.
    pub upper: BigRational,
    /// Anti-coordinating agents with `r_i > b`; they always play `+1`.
    pub forced_plus_anti: usize,
    /// Anti-coordinating agents with `a ≤ r_i ≤ b`.
    pub free_anti: usize,
    pub needed_plus_among_free: usize,
    pub equilibrium_count: BigUint,
}

impl SolutionRecord {
    pub fn z(&self) -> BigRational {
        self.triple.z()
    }

    /// `(z_1, z_2) = (G_a(b), G_a⁻(a))`, the window of admissible `z_a`.
    pub fn anti_window(&self) -> Option<(BigRational, BigRational)> {
        let n_a = self.triple.n_anti;
        (n_a > 0).then(|| {
            let frac = |c: usize| BigRational::new(BigInt::from(c), BigInt::from(n_a));
            (
                frac(self.forced_plus_anti),
                frac(self.forced_plus_anti + self.free_anti),
            )
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumSet {
    pub class: GameClass,
    /// Sorted by `z*`.
    pub records: Vec<SolutionRecord>,
    pub total_count: BigUint,
}

impl EquilibriumSet {
    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn solutions(&self) -> impl Iterator<Item = BigRational> + '_ {
        self.records.iter().map(SolutionRecord::z)
    }

    pub fn contains_triple(&self, triple: &FractionTriple) -> bool {
        self.records.iter().any(|r| r.triple == *triple)
    }
}

struct Distributions {
    coord_cdf: Option<StepFunction>,
    anti_ccdf: Option<StepFunction>,
}

impl Distributions {
    fn of(pop: &Population) -> Self {
        let coord = pop.thresholds_of(AgentKind::Coordinating);
        let anti = pop.thresholds_of(AgentKind::AntiCoordinating);
        Distributions {
            coord_cdf: build_cdf(&coord).ok(),
            anti_ccdf: build_ccdf(&anti).ok(),
        }
    }
}

fn window(k: usize, n: usize) -> (BigRational, BigRational) {
    let den = BigInt::from(n - 1);
    (
        BigRational::new(BigInt::from(k as i64 - 1), den.clone()),
        BigRational::new(BigInt::from(k), den),
    )
}

fn record_for(pop: &Population, dists: &Distributions, k: usize) -> Option<SolutionRecord> {
    let n = pop.n();
    let (lower, upper) = window(k, n);

    let plus_coord = match &dists.coord_cdf {
        Some(f_c) => {
            let at_lower = f_c.eval_count(&lower);
            if at_lower != f_c.eval_left_count(&upper) {
                return None;
            }
            at_lower
        }
        None => 0,
    };

    let (forced, free) = match &dists.anti_ccdf {
        Some(g_a) => {
            let forced = g_a.eval_count(&upper);
            let ceiling = g_a.eval_left_count(&lower);
            (forced, ceiling - forced)
        }
        None => (0, 0),
    };

    let needed = k.checked_sub(plus_coord)?.checked_sub(forced)?;
    if needed > free {
        return None;
    }
    Some(SolutionRecord {
        triple: FractionTriple {
            plus: k,
            plus_coord,
            plus_anti: forced + needed,
            n,
            n_coord: pop.n_coord(),
            n_anti: pop.n_anti(),
        },
        lower,
        upper,
        forced_plus_anti: forced,
        free_anti: free,
        needed_plus_among_free: needed,
        equilibrium_count: binomial(free as u64, needed as u64),
    })
}

/// All fraction triples admitting a Nash equilibrium. An empty set means the
/// game has no pure equilibrium.
pub fn solve_triples(pop: &Population) -> EquilibriumSet {
    let dists = Distributions::of(pop);
    let records: Vec<SolutionRecord> = (0..=pop.n())
        .into_par_iter()
        .filter_map(|k| record_for(pop, &dists, k))
        .collect();
    let total_count = records.iter().map(|r| &r.equilibrium_count).sum();
    EquilibriumSet {
        class: classify_game(pop),
        records,
        total_count,
    }
}

pub fn count_equilibria(pop: &Population) -> BigUint {
    solve_triples(pop).total_count
}

fn check_record(pop: &Population, rec: &SolutionRecord) -> Result<()> {
    let k = rec.triple.plus;
    if rec.triple.n != pop.n() || k > pop.n() {
        return Err(Error::RecordMismatch);
    }
    match record_for(pop, &Distributions::of(pop), k) {
        Some(expected) if expected == *rec => Ok(()),
        _ => Err(Error::RecordMismatch),
    }
}

/// Actions fixed by the record plus the indices of the free anti agents.
fn skeleton(pop: &Population, rec: &SolutionRecord) -> (ActionProfile, Vec<usize>) {
    let mut x = ActionProfile::all(Action::Minus, pop.n());
    let mut free = Vec::with_capacity(rec.free_anti);
    for i in 0..pop.n() {
        let r = pop.threshold(i);
        match pop.kind(i) {
            AgentKind::Coordinating => {
                if *r <= rec.lower {
                    x.set(i, Action::Plus);
                }
            }
            AgentKind::AntiCoordinating => {
                if *r > rec.upper {
                    x.set(i, Action::Plus);
                } else if *r >= rec.lower {
                    free.push(i);
                }
            }
        }
    }
    (x, free)
}

/// The canonical equilibrium of a record: free anti agents with the lowest
/// indices take `+1`.
pub fn construct_equilibrium(pop: &Population, rec: &SolutionRecord) -> Result<ActionProfile> {
    check_record(pop, rec)?;
    let (mut x, free) = skeleton(pop, rec);
    for &i in free.iter().take(rec.needed_plus_among_free) {
        x.set(i, Action::Plus);
    }
    Ok(x)
}

/// Streams every equilibrium of `rec`, ordered lexicographically by the set
/// of free agents placed at `+1`. Without a `limit`, records with more than
/// [`ENUMERATION_GUARD`] equilibria are refused.
pub fn enumerate_equilibria<'a>(
    pop: &'a Population,
    rec: &'a SolutionRecord,
    limit: Option<usize>,
) -> Result<impl Iterator<Item = ActionProfile> + 'a> {
    if limit.is_none() && rec.equilibrium_count > BigUint::from(ENUMERATION_GUARD) {
        return Err(Error::EnumerationTooLarge {
            count: rec.equilibrium_count.to_string(),
            limit: ENUMERATION_GUARD,
        });
    }
    enumerate_unbounded(pop, rec).map(move |it| it.take(limit.unwrap_or(usize::MAX)))
}

/// [`enumerate_equilibria`] without the size guard.
pub fn enumerate_unbounded<'a>(
    pop: &'a Population,
    rec: &'a SolutionRecord,
) -> Result<impl Iterator<Item = ActionProfile> + 'a> {
    check_record(pop, rec)?;
    let (base, free) = skeleton(pop, rec);
    Ok(free
        .into_iter()
        .combinations(rec.needed_plus_among_free)
        .map(move |chosen| {
            let mut x = base.clone();
            for i in chosen {
                x.set(i, Action::Plus);
            }
            x
        }))
}

/// Smallest `z* = k/n` with `z* − 1/n < G_a((k−1)/(n−1))` and
/// `z* ≥ G_a(k/(n−1))`, for the CCDF of a pure anti-coordination game.
pub fn anti_first_crossing(g_a: &StepFunction, n: usize) -> Result<BigRational> {
    if g_a.denominator() != n || n < 2 {
        return Err(Error::NotPureAnti {
            expected: n,
            got: g_a.denominator(),
        });
    }
    let k = (0..=n)
        .find(|&k| {
            let (lower, upper) = window(k, n);
            let below = k == 0 || k - 1 < g_a.eval_count(&lower);
            below && k >= g_a.eval_count(&upper)
        })
        .expect("k = n always satisfies both inequalities");
    Ok(BigRational::new(BigInt::from(k), BigInt::from(n)))
}

/// `C(n, k)` by the multiplicative formula.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// `C(n, k)` as a `u64` where it fits.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    binomial(n, k).to_u64()
}
