//! Infinite-population limit.
//!
//! With continuous threshold distributions the equilibria are the fixed
//! points of `H_α(z) = α F_c(z) + (1 − α) G_a(z)` on `[0, 1]`, completed to
//! triples by `z_c = F_c(z)` and `z_a = G_a(z)`.

use rayon::prelude::*;
use libm::erfc;
use std::f64::consts::SQRT_2;

use crate::distribution::StepFunction;
use crate::error::{Error, Result};

/// A threshold distribution. `cdf` is `F`, `ccdf` is `G = 1 − F`.
#[derive(Debug, Clone, PartialEq)]
pub enum ContinuumDistribution {
    Uniform { lo: f64, hi: f64 },
    Gaussian { mean: f64, std_dev: f64 },
    /// Linear interpolation between `(z, F(z))` knots; `0` before the first
    /// knot and `1` after the last.
    PiecewiseLinear(Vec<(f64, f64)>),
    EmpiricalStep(StepFunction),
}

impl ContinuumDistribution {
    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidDistribution(format!("uniform needs lo < hi, got [{lo}, {hi}]")));
        }
        Ok(ContinuumDistribution::Uniform { lo, hi })
    }

    pub fn gaussian(mean: f64, std_dev: f64) -> Result<Self> {
        if !(mean.is_finite() && std_dev.is_finite() && std_dev > 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "normal needs a finite mean and positive std dev, got ({mean}, {std_dev})"
            )));
        }
        Ok(ContinuumDistribution::Gaussian { mean, std_dev })
    }

    pub fn piecewise_linear(knots: Vec<(f64, f64)>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidDistribution(format!("piecewise-linear: {msg}")));
        if knots.len() < 2 {
            return bad("needs at least two knots");
        }
        if knots.iter().any(|(z, f)| !z.is_finite() || !f.is_finite()) {
            return bad("knots must be finite");
        }
        if knots.windows(2).any(|w| w[1].0 <= w[0].0 || w[1].1 < w[0].1) {
            return bad("knot positions must increase and values must not decrease");
        }
        if knots[0].1 != 0.0 || knots[knots.len() - 1].1 != 1.0 {
            return bad("values must run from 0 to 1");
        }
        Ok(ContinuumDistribution::PiecewiseLinear(knots))
    }

    pub fn is_continuous(&self) -> bool {
        !matches!(self, ContinuumDistribution::EmpiricalStep(_))
    }

    pub fn cdf(&self, z: f64) -> f64 {
        match self {
            ContinuumDistribution::Uniform { lo, hi } => ((z - lo) / (hi - lo)).clamp(0.0, 1.0),
            ContinuumDistribution::Gaussian { mean, std_dev } => {
                0.5 * erfc(-(z - mean) / (std_dev * SQRT_2))
            }
            ContinuumDistribution::PiecewiseLinear(knots) => {
                let idx = knots.partition_point(|(kz, _)| *kz <= z);
                if idx == 0 {
                    0.0
                } else if idx == knots.len() {
                    1.0
                } else {
                    let (z0, f0) = knots[idx - 1];
                    let (z1, f1) = knots[idx];
                    f0 + (f1 - f0) * (z - z0) / (z1 - z0)
                }
            }
            ContinuumDistribution::EmpiricalStep(step) => ratio_of(step, z, false),
        }
    }

    pub fn ccdf(&self, z: f64) -> f64 {
        match self {
            // Evaluated directly so the upper tail keeps full relative precision.
            ContinuumDistribution::Gaussian { mean, std_dev } => {
                0.5 * erfc((z - mean) / (std_dev * SQRT_2))
            }
            ContinuumDistribution::EmpiricalStep(step) => ratio_of(step, z, true),
            _ => 1.0 - self.cdf(z),
        }
    }
}

fn ratio_of(step: &StepFunction, z: f64, complement: bool) -> f64 {
    let Some(q) = num::BigRational::from_float(z) else {
        return if (z > 0.0) != complement { 1.0 } else { 0.0 };
    };
    let le = step.count_le(&q) as f64 / step.denominator() as f64;
    if complement {
        1.0 - le
    } else {
        le
    }
}

/// A fixed point of `H_α` with its triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumSolution {
    pub z_star: f64,
    pub z_c_star: f64,
    pub z_a_star: f64,
    /// `|H_α(z*) − z*|`.
    pub residual: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

pub fn h_alpha(
    alpha: f64,
    coord: &ContinuumDistribution,
    anti: &ContinuumDistribution,
    z: f64,
) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(h_unchecked(alpha, coord, anti, z))
}

fn h_unchecked(alpha: f64, coord: &ContinuumDistribution, anti: &ContinuumDistribution, z: f64) -> f64 {
    // Skip a side entirely at the pure endpoints so 0 · F never matters.
    if alpha == 1.0 {
        coord.cdf(z)
    } else if alpha == 0.0 {
        anti.ccdf(z)
    } else {
        alpha * coord.cdf(z) + (1.0 - alpha) * anti.ccdf(z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Number of uniform cells the unit interval is split into.
    pub cells: usize,
    pub tolerance: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            cells: 10_000,
            tolerance: 1e-12,
        }
    }
}

/// Fixed points of `H_α` on `[0, 1]`, sorted by `z*`.
///
/// The interval is scanned for sign changes of `h(z) = H_α(z) − z`, each
/// bracket is bisected, and grid nodes where `|h| ≤ tolerance` are reported
/// as they are. A run of consecutive such nodes (a whole segment of fixed
/// points) is reported by its two endpoints. Tangential roots strictly
/// between nodes can be missed; raise `cells` to resolve them.
pub fn solve_continuum(
    alpha: f64,
    coord: &ContinuumDistribution,
    anti: &ContinuumDistribution,
    opts: &ScanOptions,
) -> Result<Vec<ContinuumSolution>> {
    check_alpha(alpha)?;
    if !coord.is_continuous() || !anti.is_continuous() {
        return Err(Error::DiscontinuousDistribution);
    }
    let cells = opts.cells.max(1);
    let tol = opts.tolerance;
    let h = |z: f64| h_unchecked(alpha, coord, anti, z) - z;

    let nodes: Vec<(f64, f64)> = (0..=cells)
        .into_par_iter()
        .map(|j| {
            let z = j as f64 / cells as f64;
            (z, h(z))
        })
        .collect();

    let mut roots = Vec::new();
    let mut j = 0;
    while j <= cells {
        let (z, hz) = nodes[j];
        if hz.abs() <= tol {
            let start = j;
            while j < cells && nodes[j + 1].1.abs() <= tol {
                j += 1;
            }
            roots.push(z);
            if j > start {
                roots.push(nodes[j].0);
            }
        } else if j < cells {
            let (z1, h1) = nodes[j + 1];
            if h1.abs() > tol && (hz > 0.0) != (h1 > 0.0) {
                roots.push(bisect(&h, z, hz, z1, tol));
            }
        }
        j += 1;
    }

    Ok(roots
        .into_iter()
        .map(|z| ContinuumSolution {
            z_star: z,
            z_c_star: coord.cdf(z),
            z_a_star: anti.ccdf(z),
            residual: h(z).abs(),
        })
        .collect())
}

fn bisect(h: &impl Fn(f64) -> f64, mut lo: f64, h_lo: f64, mut hi: f64, tol: f64) -> f64 {
    let lo_positive = h_lo > 0.0;
    let mut best = (lo, h_lo.abs());
    loop {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        let hm = h(mid);
        if hm.abs() < best.1 {
            best = (mid, hm.abs());
        }
        if hm == 0.0 || (hi - lo <= tol && hm.abs() <= tol) {
            return mid;
        }
        if (hm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let h_hi = h(hi).abs();
    if h_hi < best.1 {
        hi
    } else {
        best.0
    }
}

/// `(z, f(z))` on `points` evenly spaced nodes of `[lo, hi]`.
pub fn sample_curve(f: impl Fn(f64) -> f64, lo: f64, hi: f64, points: usize) -> Vec<(f64, f64)> {
    let steps = points.max(2) - 1;
    (0..=steps)
        .map(|j| {
            let z = lo + (hi - lo) * j as f64 / steps as f64;
            (z, f(z))
        })
        .collect()
}

/// Converts an exact step distribution into a continuum one, for plotting.
pub fn from_step(step: StepFunction) -> ContinuumDistribution {
    ContinuumDistribution::EmpiricalStep(step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::build_cdf;
    use crate::rational::ratio;

    fn unif() -> ContinuumDistribution {
        ContinuumDistribution::uniform(0.0, 1.0).unwrap()
    }

    #[test]
    fn uniform_h_is_linear() {
        for a in 0..=10 {
            let alpha = a as f64 / 10.0;
            for j in 0..=20 {
                let z = j as f64 / 20.0;
                let expected = (2.0 * alpha - 1.0) * z + (1.0 - alpha);
                assert!((h_alpha(alpha, &unif(), &unif(), z).unwrap() - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn pure_endpoints() {
        let c = ContinuumDistribution::gaussian(0.3, 0.1).unwrap();
        let a = ContinuumDistribution::gaussian(0.6, 0.2).unwrap();
        for z in [0.0, 0.25, 0.5, 0.9] {
            assert_eq!(h_alpha(1.0, &c, &a, z).unwrap(), c.cdf(z));
            assert_eq!(h_alpha(0.0, &c, &a, z).unwrap(), a.ccdf(z));
        }
        assert_eq!(h_alpha(1.5, &c, &a, 0.0), Err(Error::AlphaOutOfRange(1.5)));
        assert!(h_alpha(-0.1, &c, &a, 0.0).is_err());
    }

    #[test]
    fn gaussian_cdf_accuracy() {
        // Φ(1) and Φ(-2) to 16 digits.
        let g = ContinuumDistribution::gaussian(0.0, 1.0).unwrap();
        assert!((g.cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-14);
        assert!((g.cdf(-2.0) - 0.022_750_131_948_179_2).abs() < 1e-15);
        assert!((g.cdf(0.7) + g.ccdf(0.7) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn uniform_root_is_half() {
        for a in 1..=9 {
            let sols = solve_continuum(a as f64 / 10.0, &unif(), &unif(), &ScanOptions::default()).unwrap();
            assert_eq!(sols.len(), 1, "alpha = {a}/10");
            assert!((sols[0].z_star - 0.5).abs() <= 1e-10);
            assert!(sols[0].residual <= 1e-12);
        }
    }

    #[test]
    fn coordination_only_uniform_is_a_segment() {
        let sols = solve_continuum(1.0, &unif(), &unif(), &ScanOptions::default()).unwrap();
        let zs: Vec<_> = sols.iter().map(|s| s.z_star).collect();
        assert_eq!(zs, vec![0.0, 1.0]);
    }

    #[test]
    fn gaussian_minority_coordinators_single_root() {
        let d = ContinuumDistribution::gaussian(0.3, 0.1).unwrap();
        let sols = solve_continuum(0.2, &d, &d, &ScanOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        let s = sols[0];
        assert!(s.residual <= 1e-12);
        assert!((s.z_c_star - d.cdf(s.z_star)).abs() < 1e-15);
        assert!((0.2 * s.z_c_star + 0.8 * s.z_a_star - s.z_star).abs() <= 1e-12);
    }

    #[test]
    fn shared_distribution_makes_h_monotone() {
        let dists = [
            ContinuumDistribution::gaussian(0.3, 0.1).unwrap(),
            ContinuumDistribution::piecewise_linear(vec![(0.0, 0.0), (0.2, 0.6), (1.0, 1.0)]).unwrap(),
            unif(),
        ];
        for d in &dists {
            for alpha in [0.0, 0.1, 0.3, 0.45, 0.55, 0.8, 1.0] {
                let curve = sample_curve(|z| h_alpha(alpha, d, d, z).unwrap(), 0.0, 1.0, 2001);
                let rising = curve.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-15);
                let falling = curve.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-15);
                if alpha > 0.5 {
                    assert!(rising, "alpha {alpha}");
                } else if alpha < 0.5 {
                    assert!(falling, "alpha {alpha}");
                    let sols = solve_continuum(alpha, d, d, &ScanOptions::default()).unwrap();
                    assert_eq!(sols.len(), 1, "alpha {alpha}");
                }
            }
        }
    }

    #[test]
    fn piecewise_linear() {
        let d = ContinuumDistribution::piecewise_linear(vec![(0.0, 0.0), (0.5, 0.8), (1.0, 1.0)]).unwrap();
        assert_eq!(d.cdf(-1.0), 0.0);
        assert!((d.cdf(0.25) - 0.4).abs() < 1e-15);
        assert!((d.cdf(0.75) - 0.9).abs() < 1e-15);
        assert_eq!(d.cdf(2.0), 1.0);
        assert!(ContinuumDistribution::piecewise_linear(vec![(0.0, 0.0)]).is_err());
        assert!(ContinuumDistribution::piecewise_linear(vec![(0.0, 0.0), (1.0, 0.5)]).is_err());
        assert!(ContinuumDistribution::piecewise_linear(vec![(0.0, 0.0), (0.0, 1.0)]).is_err());
        let sols = solve_continuum(0.5, &d, &unif(), &ScanOptions::default()).unwrap();
        assert!(!sols.is_empty());
        assert!(sols.iter().all(|s| s.residual <= 1e-12));
    }

    #[test]
    fn step_distributions_are_refused() {
        let step = from_step(build_cdf(&[ratio(1, 2)]).unwrap());
        assert_eq!(step.cdf(0.4), 0.0);
        assert_eq!(step.cdf(0.5), 1.0);
        assert_eq!(step.ccdf(0.4), 1.0);
        assert_eq!(
            solve_continuum(0.5, &step, &unif(), &ScanOptions::default()),
            Err(Error::DiscontinuousDistribution)
        );
    }

    #[test]
    fn bad_parameters() {
        assert!(ContinuumDistribution::uniform(1.0, 1.0).is_err());
        assert!(ContinuumDistribution::gaussian(0.0, 0.0).is_err());
        assert!(ContinuumDistribution::gaussian(f64::NAN, 1.0).is_err());
    }
}
