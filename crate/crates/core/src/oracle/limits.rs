//! One-sided limits at `theta = 0` by Richardson extrapolation in `theta^2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitEstimate {
    pub value: f64,
    pub error: f64,
}

/// Extrapolates `f(theta)` to `theta = 0` from its values on a decreasing
/// ladder of angles, treating `f` as a smooth function of `h = theta^2`.
///
/// The error estimate is the change contributed by the last ladder point.
pub fn numeric_limit<F>(f: F, ladder: &[f64]) -> Result<LimitEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    if ladder.len() < 2 {
        return Err(Error::InvalidParameter("limit ladder needs at least two angles".into()));
    }
    let h: Vec<f64> = ladder.iter().map(|t| t * t).collect();
    let mut table: Vec<f64> = ladder.iter().map(|&t| f(t)).collect::<Result<_>>()?;
    let mut diagonal = vec![table[0]];
    // Neville's scheme evaluated at h = 0; after pass k, table[i] is the
    // interpolant through points i - k ..= i.
    for k in 1..h.len() {
        for i in (k..h.len()).rev() {
            let (hi, hj) = (h[i], h[i - k]);
            table[i] = (hj * table[i] - hi * table[i - 1]) / (hj - hi);
        }
        diagonal.push(table[k]);
    }
    if diagonal.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonConvergence("non-finite value on the limit ladder".into()));
    }
    let m = diagonal.len() - 1;
    let value = diagonal[m];
    let error = (diagonal[m] - diagonal[m - 1]).abs();
    if m >= 2 {
        let previous = (diagonal[m - 1] - diagonal[m - 2]).abs();
        let floor = 1e-12 * value.abs().max(1.0);
        if error > previous && error > floor {
            return Err(Error::NonConvergence(format!(
                "successive estimates diverge ({previous:e} then {error:e})"
            )));
        }
    }
    Ok(LimitEstimate { value, error })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LADDER: [f64; 3] = [1e-2, 1e-3, 1e-4];

    #[test]
    fn cosine_tends_to_one() {
        let r = numeric_limit(|t| Ok(t.cos()), &LADDER).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn even_function_with_offset() {
        let r = numeric_limit(|t| Ok(0.25 + 3.0 * t * t - t.powi(4)), &LADDER).unwrap();
        assert!((r.value - 0.25).abs() < 1e-14);
    }

    #[test]
    fn divergent_ladder_is_reported() {
        let r = numeric_limit(|t| Ok((1.0 / t).sin() / t), &[1e-1, 3e-2, 1e-2, 3e-3]);
        assert!(matches!(r, Err(Error::NonConvergence(_))));
    }

    #[test]
    fn short_ladder_is_rejected() {
        assert!(numeric_limit(|t| Ok(t), &[0.1]).is_err());
    }
}
