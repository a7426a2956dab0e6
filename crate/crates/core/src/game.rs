//! Game semantics: agents, action profiles, utilities and best responses.
//!
//! Every agent `i` carries a kind `δ_i ∈ {+1, -1}` and a weight `d_i`. Its
//! utility against the rest of a complete interaction graph is
//! `δ_i (Σ_{j≠i} x_i x_j − d_i x_i)`, and its threshold is
//! `r_i = 1/2 + d_i / (2(n−1))`. All comparisons here are exact.

use num::{BigInt, BigRational, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{floor_clamped, int, is_integral};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AgentKind {
    Coordinating,
    AntiCoordinating,
}

impl AgentKind {
    /// `δ_i`: `+1` for coordinating agents, `-1` for anti-coordinating ones.
    pub fn sign(self) -> i64 {
        match self {
            AgentKind::Coordinating => 1,
            AgentKind::AntiCoordinating => -1,
        }
    }

    fn orient(self, ord: Ordering) -> Ordering {
        match self {
            AgentKind::Coordinating => ord,
            AgentKind::AntiCoordinating => ord.reverse(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Minus,
    Plus,
}

impl Action {
    pub fn value(self) -> i64 {
        match self {
            Action::Minus => -1,
            Action::Plus => 1,
        }
    }

    pub fn flipped(self) -> Action {
        match self {
            Action::Minus => Action::Plus,
            Action::Plus => Action::Minus,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Minus => "-",
            Action::Plus => "+",
        })
    }
}

/// The set-valued best response of one agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BestResponse {
    Only(Action),
    Either,
}

impl BestResponse {
    pub fn contains(self, action: Action) -> bool {
        match self {
            BestResponse::Only(a) => a == action,
            BestResponse::Either => true,
        }
    }

    fn from_sign(sign: Ordering) -> Self {
        match sign {
            Ordering::Greater => BestResponse::Only(Action::Plus),
            Ordering::Less => BestResponse::Only(Action::Minus),
            Ordering::Equal => BestResponse::Either,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agent {
    pub kind: AgentKind,
    pub weight: BigRational,
}

impl Agent {
    pub fn new(kind: AgentKind, weight: BigRational) -> Self {
        Agent { kind, weight }
    }
}

/// The exact switching point `r_i (n−1)` of an agent, pre-reduced so that
/// comparisons against an integer count of `+1` neighbours are integer ops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pivot {
    floor: i64,
    integral: bool,
}

impl Pivot {
    fn new(pivot: &BigRational, n: usize) -> Self {
        let hi = n as i64;
        let floor = floor_clamped(pivot, -1, hi);
        let raw_floor = pivot.floor().to_integer();
        let integral = is_integral(pivot) && raw_floor == BigInt::from(floor);
        Pivot { floor, integral }
    }

    /// Sign of `m − r_i (n−1)`.
    fn compare(self, m: usize) -> Ordering {
        let m = m as i64;
        if self.integral {
            m.cmp(&self.floor)
        } else if m > self.floor {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

/// A game instance on the complete graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Population {
    agents: Vec<Agent>,
    thresholds: Vec<BigRational>,
    pivots: Vec<Pivot>,
    n_coord: usize,
}

impl Population {
    pub fn new(agents: Vec<Agent>) -> Result<Self> {
        let n = agents.len();
        if n < 2 {
            return Err(Error::TooFewAgents(n));
        }
        let thresholds = agents
            .iter()
            .map(|a| threshold_of(&a.weight, n))
            .collect::<Result<Vec<_>>>()?;
        let n_minus_one = int(n as i64 - 1);
        let pivots = thresholds
            .iter()
            .map(|r| Pivot::new(&(r * &n_minus_one), n))
            .collect();
        let n_coord = agents
            .iter()
            .filter(|a| a.kind == AgentKind::Coordinating)
            .count();
        Ok(Population {
            agents,
            thresholds,
            pivots,
            n_coord,
        })
    }

    /// Builds a population from thresholds, converting each with
    /// `d_i = (2 r_i − 1)(n − 1)`.
    pub fn from_thresholds(
        entries: impl IntoIterator<Item = (AgentKind, BigRational)>,
    ) -> Result<Self> {
        let entries: Vec<_> = entries.into_iter().collect();
        let n = entries.len();
        if n < 2 {
            return Err(Error::TooFewAgents(n));
        }
        let agents = entries
            .into_iter()
            .map(|(kind, r)| Agent::new(kind, weight_of_threshold(&r, n)))
            .collect();
        Population::new(agents)
    }

    /// All agents of one kind with the same weight.
    pub fn uniform(kind: AgentKind, n: usize, weight: BigRational) -> Result<Self> {
        Population::new(vec![Agent::new(kind, weight); n])
    }

    pub fn n(&self) -> usize {
        self.agents.len()
    }

    pub fn n_coord(&self) -> usize {
        self.n_coord
    }

    pub fn n_anti(&self) -> usize {
        self.n() - self.n_coord
    }

    /// Fraction of coordinating agents.
    pub fn alpha(&self) -> BigRational {
        BigRational::new(BigInt::from(self.n_coord), BigInt::from(self.n()))
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn agent(&self, i: usize) -> Result<&Agent> {
        self.check_index(i)?;
        Ok(&self.agents[i])
    }

    pub fn kind(&self, i: usize) -> AgentKind {
        self.agents[i].kind
    }

    pub fn thresholds(&self) -> &[BigRational] {
        &self.thresholds
    }

    pub fn threshold(&self, i: usize) -> &BigRational {
        &self.thresholds[i]
    }

    /// Thresholds of the agents of `kind`, in index order.
    pub fn thresholds_of(&self, kind: AgentKind) -> Vec<BigRational> {
        self.agents
            .iter()
            .zip(&self.thresholds)
            .filter(|(a, _)| a.kind == kind)
            .map(|(_, r)| r.clone())
            .collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, n: self.n() })
        }
    }

    pub(crate) fn check_profile(&self, x: &ActionProfile) -> Result<()> {
        if x.len() == self.n() {
            Ok(())
        } else {
            Err(Error::ProfileLength {
                got: x.len(),
                expected: self.n(),
            })
        }
    }

    /// Best response of agent `i` when `plus_others` of the other agents play `+1`.
    pub fn best_response_at(&self, i: usize, plus_others: usize) -> BestResponse {
        let sign = self.kind(i).orient(self.pivots[i].compare(plus_others));
        BestResponse::from_sign(sign)
    }
}

/// `r = 1/2 + d / (2(n−1))`.
pub fn threshold_of(weight: &BigRational, n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::TooFewAgents(n));
    }
    let half = BigRational::new(1.into(), 2.into());
    Ok(half + weight / int(2 * (n as i64 - 1)))
}

/// Inverse of [`threshold_of`]: `d = (2r − 1)(n − 1)`.
pub fn weight_of_threshold(threshold: &BigRational, n: usize) -> BigRational {
    (threshold * int(2) - int(1)) * int(n as i64 - 1)
}

/// A configuration `x ∈ {−1, +1}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionProfile(Vec<Action>);

impl ActionProfile {
    pub fn new(actions: Vec<Action>) -> Self {
        ActionProfile(actions)
    }

    pub fn all(action: Action, n: usize) -> Self {
        ActionProfile(vec![action; n])
    }

    /// Bit `i` of `mask` set means agent `i` plays `+1`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        ActionProfile(
            (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Action::Plus
                    } else {
                        Action::Minus
                    }
                })
                .collect(),
        )
    }

    /// Inverse of [`ActionProfile::from_mask`]; `None` beyond 64 agents.
    pub fn to_mask(&self) -> Option<u64> {
        if self.len() > 64 {
            return None;
        }
        Some(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, a)| **a == Action::Plus)
                .fold(0u64, |m, (i, _)| m | 1 << i),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn actions(&self) -> &[Action] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Action {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, action: Action) {
        self.0[i] = action;
    }

    pub fn plus_count(&self) -> usize {
        self.0.iter().filter(|a| **a == Action::Plus).count()
    }

    /// Copy with agent `i` switched to the other action.
    pub fn with_flip(&self, i: usize) -> Self {
        let mut y = self.clone();
        y.0[i] = y.0[i].flipped();
        y
    }
}

impl fmt::Display for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Accepts `"+-+"` or comma separated `"1,-1,+1"`.
impl FromStr for ActionProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidProfile(s.to_string());
        let actions = if s.contains(',') {
            s.split(',')
                .map(|t| match t.trim() {
                    "1" | "+1" | "+" => Ok(Action::Plus),
                    "-1" | "-" => Ok(Action::Minus),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| match c {
                    '+' => Ok(Action::Plus),
                    '-' => Ok(Action::Minus),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>>>()?
        };
        if actions.is_empty() {
            return Err(bad());
        }
        Ok(ActionProfile(actions))
    }
}

/// Counts of `+1` players overall and per kind, i.e. `(z, z_c, z_a)`
/// kept as integer numerators over `n`, `n_c` and `n_a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FractionTriple {
    pub plus: usize,
    pub plus_coord: usize,
    pub plus_anti: usize,
    pub n: usize,
    pub n_coord: usize,
    pub n_anti: usize,
}

impl FractionTriple {
    pub fn z(&self) -> BigRational {
        BigRational::new(self.plus.into(), self.n.into())
    }

    /// `None` when there are no coordinating agents.
    pub fn z_coord(&self) -> Option<BigRational> {
        (self.n_coord > 0).then(|| BigRational::new(self.plus_coord.into(), self.n_coord.into()))
    }

    /// `None` when there are no anti-coordinating agents.
    pub fn z_anti(&self) -> Option<BigRational> {
        (self.n_anti > 0).then(|| BigRational::new(self.plus_anti.into(), self.n_anti.into()))
    }

    /// `n z = n_c z_c + n_a z_a`, checked on the integer numerators.
    pub fn is_balanced(&self) -> bool {
        self.plus == self.plus_coord + self.plus_anti
            && self.plus_coord <= self.n_coord
            && self.plus_anti <= self.n_anti
            && self.n == self.n_coord + self.n_anti
    }
}

impl fmt::Display for FractionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<BigRational>| v.map_or_else(|| "undefined".to_string(), |r| r.to_string());
        write!(
            f,
            "(z = {}, z_c = {}, z_a = {})",
            self.z(),
            show(self.z_coord()),
            show(self.z_anti())
        )
    }
}

/// `u_i(x) = δ_i (Σ_{j≠i} x_i x_j − d_i x_i)`.
pub fn utility(pop: &Population, x: &ActionProfile, i: usize) -> Result<BigRational> {
    pop.check_profile(x)?;
    let agent = pop.agent(i)?;
    let xi = x.get(i).value();
    let total: i64 = x.actions().iter().map(|a| a.value()).sum();
    let pair_sum = xi * (total - xi);
    let raw = int(pair_sum) - &agent.weight * int(xi);
    Ok(raw * int(agent.kind.sign()))
}

/// `n_i^+`: agents other than `i` playing `+1`.
pub fn count_plus_others(x: &ActionProfile, i: usize) -> Result<usize> {
    if i >= x.len() {
        return Err(Error::IndexOutOfRange { index: i, n: x.len() });
    }
    Ok(x.plus_count() - usize::from(x.get(i) == Action::Plus))
}

pub fn best_response(pop: &Population, x: &ActionProfile, i: usize) -> Result<BestResponse> {
    pop.check_profile(x)?;
    pop.check_index(i)?;
    Ok(pop.best_response_at(i, count_plus_others(x, i)?))
}

/// The constant action of a stubborn agent, i.e. one whose best response is
/// the same singleton for every possible `n_i^+ ∈ {0, …, n−1}`.
pub fn is_stubborn(pop: &Population, i: usize) -> Result<Option<Action>> {
    pop.check_index(i)?;
    // The sign is monotone in n_i^+, so the two extremes decide it.
    let low = pop.best_response_at(i, 0);
    let high = pop.best_response_at(i, pop.n() - 1);
    Ok(match (low, high) {
        (BestResponse::Only(a), BestResponse::Only(b)) if a == b => Some(a),
        _ => None,
    })
}

pub fn fractions(pop: &Population, x: &ActionProfile) -> Result<FractionTriple> {
    pop.check_profile(x)?;
    let (mut plus_coord, mut plus_anti) = (0, 0);
    for (agent, action) in pop.agents().iter().zip(x.actions()) {
        if *action == Action::Plus {
            match agent.kind {
                AgentKind::Coordinating => plus_coord += 1,
                AgentKind::AntiCoordinating => plus_anti += 1,
            }
        }
    }
    Ok(FractionTriple {
        plus: plus_coord + plus_anti,
        plus_coord,
        plus_anti,
        n: pop.n(),
        n_coord: pop.n_coord(),
        n_anti: pop.n_anti(),
    })
}

/// First agent not playing a best response, if any.
pub fn first_deviator(pop: &Population, x: &ActionProfile) -> Result<Option<usize>> {
    pop.check_profile(x)?;
    let plus = x.plus_count();
    Ok((0..pop.n()).find(|&i| {
        let action = x.get(i);
        let others = plus - usize::from(action == Action::Plus);
        !pop.best_response_at(i, others).contains(action)
    }))
}

pub fn is_nash(pop: &Population, x: &ActionProfile) -> Result<bool> {
    Ok(first_deviator(pop, x)?.is_none())
}

/// Nash test written directly as threshold inequalities on
/// `z̃ = n^+ / (n−1)`:
///
/// * coordinating at `+1`: `r_i ≤ z̃ − 1/(n−1)`
/// * coordinating at `−1`: `r_i ≥ z̃`
/// * anti-coordinating at `+1`: `r_i ≥ z̃ − 1/(n−1)`
/// * anti-coordinating at `−1`: `r_i ≤ z̃`
///
/// Independent of the pivot arithmetic behind [`is_nash`]; the two must agree.
pub fn nash_condition_appendix(pop: &Population, x: &ActionProfile) -> Result<bool> {
    pop.check_profile(x)?;
    let n_minus_one = BigInt::from(pop.n() - 1);
    let z_tilde = BigRational::new(BigInt::from(x.plus_count()), n_minus_one.clone());
    let step = BigRational::new(BigInt::from(1), n_minus_one);
    let z_shifted = &z_tilde - &step;
    Ok(pop.agents().iter().enumerate().all(|(i, agent)| {
        let r = pop.threshold(i);
        match (agent.kind, x.get(i)) {
            (AgentKind::Coordinating, Action::Plus) => *r <= z_shifted,
            (AgentKind::Coordinating, Action::Minus) => *r >= z_tilde,
            (AgentKind::AntiCoordinating, Action::Plus) => *r >= z_shifted,
            (AgentKind::AntiCoordinating, Action::Minus) => *r <= z_tilde,
        }
    }))
}

/// Sign of `δ_i (2 n_i^+ − (n−1) − d_i)` evaluated on the raw weight; kept
/// for cross-checking the pivot shortcut.
pub fn best_response_sign_exact(pop: &Population, i: usize, plus_others: usize) -> Ordering {
    let agent = &pop.agents()[i];
    let lhs = int(2 * plus_others as i64 - (pop.n() as i64 - 1)) - &agent.weight;
    let signed = lhs * int(agent.kind.sign());
    if signed.is_zero() {
        Ordering::Equal
    } else if signed.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}
