//! Exact empirical threshold distributions.
//!
//! `F(z) = |{i : r_i ≤ z}| / m` and `G(z) = |{i : r_i > z}| / m` are
//! right-continuous step functions with jumps at the distinct thresholds.
//! Both are stored as the same cumulative table; the orientation only
//! decides which side of the count is reported.

use num::{BigInt, BigRational};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Cdf,
    Ccdf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    /// Distinct jump locations with the number of thresholds `≤` each.
    jumps: Vec<(BigRational, usize)>,
    denom: usize,
    orientation: Orientation,
}

/// One discontinuity (or continuity point) with both one-sided values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Breakpoint {
    pub z: BigRational,
    pub left: BigRational,
    pub value: BigRational,
}

pub fn build_cdf(thresholds: &[BigRational]) -> Result<StepFunction> {
    StepFunction::new(thresholds, Orientation::Cdf)
}

pub fn build_ccdf(thresholds: &[BigRational]) -> Result<StepFunction> {
    StepFunction::new(thresholds, Orientation::Ccdf)
}

impl StepFunction {
    pub fn new(thresholds: &[BigRational], orientation: Orientation) -> Result<Self> {
        if thresholds.is_empty() {
            return Err(Error::EmptyThresholds);
        }
        let mut sorted = thresholds.to_vec();
        sorted.sort();
        let mut jumps: Vec<(BigRational, usize)> = Vec::new();
        for (idx, r) in sorted.into_iter().enumerate() {
            match jumps.last_mut() {
                Some((loc, count)) if *loc == r => *count = idx + 1,
                _ => jumps.push((r, idx + 1)),
            }
        }
        Ok(StepFunction {
            jumps,
            denom: thresholds.len(),
            orientation,
        })
    }

    pub fn denominator(&self) -> usize {
        self.denom
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// The same threshold multiset viewed with the other orientation.
    pub fn complement(&self) -> StepFunction {
        let orientation = match self.orientation {
            Orientation::Cdf => Orientation::Ccdf,
            Orientation::Ccdf => Orientation::Cdf,
        };
        StepFunction {
            orientation,
            ..self.clone()
        }
    }

    pub fn jump_locations(&self) -> impl Iterator<Item = &BigRational> {
        self.jumps.iter().map(|(z, _)| z)
    }

    /// Number of thresholds `≤ z`.
    pub fn count_le(&self, z: &BigRational) -> usize {
        let idx = self.jumps.partition_point(|(loc, _)| loc <= z);
        if idx == 0 {
            0
        } else {
            self.jumps[idx - 1].1
        }
    }

    /// Number of thresholds `< z`.
    pub fn count_lt(&self, z: &BigRational) -> usize {
        let idx = self.jumps.partition_point(|(loc, _)| loc < z);
        if idx == 0 {
            0
        } else {
            self.jumps[idx - 1].1
        }
    }

    /// Numerator of `eval(z)` over [`StepFunction::denominator`].
    pub fn eval_count(&self, z: &BigRational) -> usize {
        match self.orientation {
            Orientation::Cdf => self.count_le(z),
            Orientation::Ccdf => self.denom - self.count_le(z),
        }
    }

    /// Numerator of `eval_left(z)` over [`StepFunction::denominator`].
    pub fn eval_left_count(&self, z: &BigRational) -> usize {
        match self.orientation {
            Orientation::Cdf => self.count_lt(z),
            Orientation::Ccdf => self.denom - self.count_lt(z),
        }
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        self.fraction(self.eval_count(z))
    }

    /// `lim_{t → z⁻} f(t)`.
    pub fn eval_left(&self, z: &BigRational) -> BigRational {
        self.fraction(self.eval_left_count(z))
    }

    /// Whether the function is constant on `[a, b)`.
    pub fn is_flat_on(&self, a: &BigRational, b: &BigRational) -> bool {
        self.eval_count(a) == self.eval_left_count(b)
    }

    fn fraction(&self, count: usize) -> BigRational {
        BigRational::new(BigInt::from(count), BigInt::from(self.denom))
    }

    /// Every jump with its left limit and right value, for staircase plots.
    pub fn breakpoints(&self) -> Vec<Breakpoint> {
        self.jumps
            .iter()
            .map(|(z, _)| Breakpoint {
                z: z.clone(),
                left: self.eval_left(z),
                value: self.eval(z),
            })
            .collect()
    }

    /// `(z, f(z))` on `resolution + 1` evenly spaced points of `[lo, hi]`.
    pub fn sample(
        &self,
        lo: &BigRational,
        hi: &BigRational,
        resolution: usize,
    ) -> Vec<(BigRational, BigRational)> {
        let steps = resolution.max(1);
        let width = hi - lo;
        (0..=steps)
            .map(|j| {
                let z = lo + &width * BigRational::new(BigInt::from(j), BigInt::from(steps));
                let v = self.eval(&z);
                (z, v)
            })
            .collect()
    }
}
