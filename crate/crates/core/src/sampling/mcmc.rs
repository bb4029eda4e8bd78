//! Metropolis sampling of eigenvalue angles from Weyl-type densities.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;

/// Target density of the eigenvalue angles.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeylDensity {
    /// `prod_{i<j} (cos t_i - cos t_j)^2 prod_i sin^2 t_i`, angles of `USp(2n)`.
    Usp,
    /// `prod_{i<j} (cos t_i - cos t_j)^2 prod_i sin^2(t_i / 2)`, angles of `SO(2n+1)`.
    SoOdd,
    /// `prod_{i<j} |e^{i t_i} - e^{i t_j}|^beta`: `U(n)` for 2, COE for 1,
    /// CSE for 4, independent uniform angles for 0.
    Circular { beta: f64 },
}

impl WeylDensity {
    pub fn for_family(family: Family) -> Result<Self> {
        match family {
            Family::Usp => Ok(WeylDensity::Usp),
            Family::SoOdd => Ok(WeylDensity::SoOdd),
            Family::U => Ok(WeylDensity::Circular { beta: 2.0 }),
            Family::Coe => Ok(WeylDensity::Circular { beta: 1.0 }),
            Family::Cse => Ok(WeylDensity::Circular { beta: 4.0 }),
            Family::OEven | Family::Sphere => {
                Err(Error::UnsupportedFamily(format!("no Weyl sampler for {family}")))
            }
        }
    }

    fn pair_term(&self, a: f64, b: f64) -> f64 {
        match self {
            WeylDensity::Usp | WeylDensity::SoOdd => 2.0 * (a.cos() - b.cos()).abs().ln(),
            WeylDensity::Circular { beta } => {
                if *beta == 0.0 {
                    0.0
                } else {
                    beta * (2.0 * (0.5 * (a - b)).sin()).abs().ln()
                }
            }
        }
    }

    fn single_term(&self, a: f64) -> f64 {
        match self {
            WeylDensity::Usp => 2.0 * a.sin().abs().ln(),
            WeylDensity::SoOdd => 2.0 * (0.5 * a).sin().abs().ln(),
            WeylDensity::Circular { .. } => 0.0,
        }
    }

    /// Log density terms involving angle `i`, with `t_i` replaced by `value`.
    fn local(&self, angles: &[f64], i: usize, value: f64) -> f64 {
        let mut s = self.single_term(value);
        for (j, &b) in angles.iter().enumerate() {
            if j != i {
                s += self.pair_term(value, b);
            }
        }
        s
    }

    pub fn log_density(&self, angles: &[f64]) -> f64 {
        let mut s = 0.0;
        for i in 0..angles.len() {
            s += self.single_term(angles[i]);
            for j in i + 1..angles.len() {
                s += self.pair_term(angles[i], angles[j]);
            }
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainParams {
    /// Sweeps discarded before recording.
    pub burn_in: usize,
    /// Sweeps between recorded states.
    pub thin: usize,
    pub samples: usize,
    /// Half-width of the uniform proposal for a single angle.
    pub step: f64,
}

impl Default for ChainParams {
    fn default() -> Self {
        ChainParams { burn_in: 500, thin: 5, samples: 10_000, step: 1.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McmcReport {
    pub angles: Vec<Vec<f64>>,
    pub acceptance_rate: f64,
    /// Lag-one autocorrelation of `sum_i cos t_i` over the recorded states.
    pub lag1_autocorrelation: f64,
    pub warning: Option<String>,
}

/// Single-angle random-walk Metropolis on `[0, 2 pi)^n`.
pub fn weyl_mcmc<R: Rng + ?Sized>(density: WeylDensity, n: usize, params: ChainParams, rng: &mut R) -> Result<McmcReport> {
    if n == 0 || params.thin == 0 || !(params.step > 0.0) {
        return Err(Error::InvalidParameter("chain needs n >= 1, thin >= 1 and step > 0".into()));
    }
    let mut angles: Vec<f64> = (0..n).map(|i| PI * (i as f64 + 0.5) / n as f64).collect();
    let mut accepted = 0usize;
    let mut proposed = 0usize;
    let mut recorded = Vec::with_capacity(params.samples);
    let total_sweeps = params.burn_in + params.thin * params.samples;
    for sweep in 0..total_sweeps {
        for _ in 0..n {
            let i = rng.random_range(0..n);
            let proposal = (angles[i] + rng.random_range(-params.step..params.step)).rem_euclid(TAU);
            let delta = density.local(&angles, i, proposal) - density.local(&angles, i, angles[i]);
            proposed += 1;
            if delta.is_finite() && (delta >= 0.0 || rng.random::<f64>() < delta.exp()) {
                angles[i] = proposal;
                accepted += 1;
            }
        }
        if sweep >= params.burn_in && (sweep - params.burn_in + 1) % params.thin == 0 {
            recorded.push(angles.clone());
        }
    }
    let acceptance_rate = accepted as f64 / proposed.max(1) as f64;
    let trace: Vec<f64> = recorded.iter().map(|a| a.iter().map(|t| t.cos()).sum()).collect();
    let lag1_autocorrelation = lag1(&trace);
    let warning = (!(0.1..=0.9).contains(&acceptance_rate))
        .then(|| format!("acceptance rate {acceptance_rate:.3} outside [0.1, 0.9]"));
    Ok(McmcReport { angles: recorded, acceptance_rate, lag1_autocorrelation, warning })
}

fn lag1(x: &[f64]) -> f64 {
    if x.len() < 3 {
        return 0.0;
    }
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let var: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
    if var == 0.0 {
        return 0.0;
    }
    x.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum::<f64>() / var
}
