//! Pure Nash equilibria of mixed coordination/anti-coordination threshold
//! games on complete interaction graphs.
//!
//! * [`game`]: agents, profiles, utilities, best responses.
//! * [`distribution`]: exact threshold CDF/CCDF step functions.
//! * [`solver`]: every equilibrium fraction triple, with construction,
//!   enumeration and counting of the equilibria behind each one.
//! * [`oracle`]: exhaustive search and exact-potential checks.
//! * [`continuum`]: fixed points of the infinite-population map `H_α`.
//! * [`dynamics`]: synchronous and asynchronous best-response dynamics.

pub mod continuum;
pub mod distribution;
pub mod dynamics;
pub mod error;
pub mod game;
pub mod oracle;
pub mod rational;
pub mod solver;

pub use distribution::{build_ccdf, build_cdf, Orientation, StepFunction};
pub use error::{Error, Result};
pub use game::{
    best_response, count_plus_others, fractions, is_nash, is_stubborn, nash_condition_appendix,
    threshold_of, utility, weight_of_threshold, Action, ActionProfile, Agent, AgentKind,
    BestResponse, FractionTriple, Population,
};
pub use rational::parse_rational;
pub use solver::{
    anti_first_crossing, classify_game, construct_equilibrium, count_equilibria,
    enumerate_equilibria, solve_triples, EquilibriumSet, GameClass, SolutionRecord,
};

pub use num::{BigRational, BigUint};
