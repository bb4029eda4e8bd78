//! Normal CDF, Kolmogorov distance to the standard normal, DKW bands and
//! the regression slope used for the linearity check.

use serde::{Deserialize, Serialize};
use libm::erfc;

use crate::error::{Error, Result};

/// Default DKW confidence parameter.
pub const DEFAULT_DELTA: f64 = 0.01;

/// Standard normal CDF, `erfc(-x / sqrt 2) / 2`.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Half-width `sqrt(ln(2 / delta) / (2 m))` of the DKW band.
pub fn dkw_epsilon(count: usize, delta: f64) -> f64 {
    ((2.0 / delta).ln() / (2.0 * count as f64)).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KolmogorovReport {
    pub d_stat: f64,
    pub count: usize,
    pub delta: f64,
    pub dkw_epsilon: f64,
    pub bound_compared: f64,
    pub passed: bool,
}

/// `sup_x |F_m(x) - Phi(x)|` for the empirical CDF `F_m` of `values`.
pub fn ks_statistic(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("empty sample".into()));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidParameter("sample contains NaN".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len() as f64;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let phi = normal_cdf(w);
            ((i as f64 + 1.0) / m - phi).abs().max((phi - i as f64 / m).abs())
        })
        .fold(0.0, f64::max))
}

/// Kolmogorov distance of a sample from the standard normal, with the DKW
/// band, compared against `bound`: passes when `d + epsilon <= bound`.
pub fn kolmogorov_distance(values: &[f64], bound: f64, delta: f64) -> Result<KolmogorovReport> {
    if values.len() < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 samples, got {}", values.len())));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} not in (0, 1)")));
    }
    let d_stat = ks_statistic(values)?;
    let eps = dkw_epsilon(values.len(), delta);
    Ok(KolmogorovReport {
        d_stat,
        count: values.len(),
        delta,
        dkw_epsilon: eps,
        bound_compared: bound,
        passed: d_stat + eps <= bound,
    })
}

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub count: usize,
}

impl MeanEstimate {
    pub fn from_samples(values: &[f64]) -> Self {
        let m = values.len() as f64;
        let mean = values.iter().sum::<f64>() / m;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0).max(1.0);
        MeanEstimate { mean, std_error: (var / m).sqrt(), count: values.len() }
    }

    /// Whether `target` lies within `k` standard errors of the mean.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.std_error
    }
}

/// Least-squares slope of `W'` on `W` through the origin, with a
/// heteroscedasticity-robust standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeEstimate {
    pub slope: f64,
    pub std_error: f64,
    pub count: usize,
}

pub fn linearity_check(pairs: &[(f64, f64)]) -> Result<SlopeEstimate> {
    if pairs.len() < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 pairs, got {}", pairs.len())));
    }
    let sxx: f64 = pairs.iter().map(|(w, _)| w * w).sum();
    let first = pairs[0].0;
    if sxx == 0.0 || pairs.iter().all(|(w, _)| *w == first) {
        return Err(Error::Degenerate("all W values are equal".into()));
    }
    let sxy: f64 = pairs.iter().map(|(w, w2)| w * w2).sum();
    let slope = sxy / sxx;
    let meat: f64 = pairs.iter().map(|(w, w2)| (w * (w2 - slope * w)).powi(2)).sum();
    let m = pairs.len() as f64;
    let correction = m / (m - 1.0);
    Ok(SlopeEstimate { slope, std_error: (correction * meat).sqrt() / sxx, count: pairs.len() })
}

/// One estimated quantity compared with its predicted value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub expected: f64,
    pub observed: f64,
    pub std_error: f64,
    /// `|observed - expected| / std_error`.
    pub z: f64,
    pub passed: bool,
}

impl Comparison {
    pub fn new(expected: f64, observed: f64, std_error: f64, max_z: f64) -> Self {
        let z = (observed - expected).abs() / std_error;
        Comparison { expected, observed, std_error, z, passed: z <= max_z || observed == expected }
    }
}

/// Empirical checks of `E(W'|W) = (1 - a) W`, `E(W' - W)^2 = 2a` and
/// `E(W' - W)^4 = e4` on a batch of exchangeable pairs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairIdentityReport {
    pub count: usize,
    pub slope: Comparison,
    pub second_moment: Comparison,
    pub fourth_moment: Comparison,
    pub passed: bool,
}

pub fn pair_identity_check(pairs: &[(f64, f64)], a: f64, e4: f64, max_z: f64) -> Result<PairIdentityReport> {
    let fit = linearity_check(pairs)?;
    let second: Vec<f64> = pairs.iter().map(|(w, w2)| (w2 - w).powi(2)).collect();
    let fourth: Vec<f64> = second.iter().map(|d| d * d).collect();
    let m2 = MeanEstimate::from_samples(&second);
    let m4 = MeanEstimate::from_samples(&fourth);
    let slope = Comparison::new(1.0 - a, fit.slope, fit.std_error, max_z);
    let second_moment = Comparison::new(2.0 * a, m2.mean, m2.std_error, max_z);
    let fourth_moment = Comparison::new(e4, m4.mean, m4.std_error, max_z);
    Ok(PairIdentityReport {
        count: pairs.len(),
        slope,
        second_moment,
        fourth_moment,
        passed: slope.passed && second_moment.passed && fourth_moment.passed,
    })
}
