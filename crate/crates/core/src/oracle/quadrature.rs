//! Gram-Schmidt orthogonalization of `m_(1,1) < m_(2)` under the circular
//! beta-ensemble inner product `<f, g> = int f conj(g) prod_{i<j} |x_i - x_j|^beta`.

use std::f64::consts::TAU;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramSchmidtReport {
    pub n_vars: usize,
    pub beta: f64,
    pub nodes: usize,
    /// `c` in `P_(2) = m_(2) + c m_(1,1)`, at `2 * nodes` nodes per axis.
    pub c: f64,
    /// Change in `c` between `nodes` and `2 * nodes`.
    pub change: f64,
}

/// Change in `c` under node doubling above which the quadrature is
/// declared unconverged.
pub const GRID_TOLERANCE: f64 = 1e-6;

fn weight(angles: &[f64], beta: f64) -> f64 {
    let mut w = 1.0;
    for i in 0..angles.len() {
        for j in i + 1..angles.len() {
            w *= (2.0 * (0.5 * (angles[i] - angles[j])).sin()).abs().powf(beta);
        }
    }
    w
}

fn monomials(angles: &[f64]) -> (Complex64, Complex64) {
    let xs: Vec<Complex64> = angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
    let m2 = xs.iter().map(|x| x * x).sum();
    let mut m11 = Complex64::new(0.0, 0.0);
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            m11 += xs[i] * xs[j];
        }
    }
    (m2, m11)
}

/// `(<m_(2), m_(1,1)>, <m_(1,1), m_(1,1)>)` up to a common positive factor.
///
/// The integrand is homogeneous of degree zero, so the first angle is fixed
/// at 0; the remaining angles are ordered, which puts every zero of the
/// weight on the boundary of the integration region.
fn inner_products(n_vars: usize, beta: f64, nodes: usize) -> Result<(f64, f64)> {
    let rule = GaussLegendre::new(
        NonZeroUsize::new(nodes).ok_or_else(|| Error::InvalidParameter("nodes must be positive".into()))?,
    );
    let integrand = |angles: &[f64]| {
        let (m2, m11) = monomials(angles);
        let w = weight(angles, beta);
        ((m2 * m11.conj()).re * w, m11.norm_sqr() * w)
    };
    match n_vars {
        2 => {
            let cross = rule.integrate(0.0, TAU, |t| integrand(&[0.0, t]).0);
            let norm = rule.integrate(0.0, TAU, |t| integrand(&[0.0, t]).1);
            Ok((cross, norm))
        }
        3 => {
            let nested = |pick: fn((f64, f64)) -> f64| {
                rule.integrate(0.0, TAU, |s| rule.integrate(s, TAU, |t| pick(integrand(&[0.0, s, t]))))
            };
            Ok((nested(|p| p.0), nested(|p| p.1)))
        }
        _ => Err(Error::InvalidParameter(format!("Gram-Schmidt oracle supports 2 or 3 variables, got {n_vars}"))),
    }
}

fn coefficient(n_vars: usize, beta: f64, nodes: usize) -> Result<f64> {
    let (cross, norm) = inner_products(n_vars, beta, nodes)?;
    Ok(-cross / norm)
}

/// Recovers `c` in `P_(2) = m_(2) + c m_(1,1)` by orthogonalizing `m_(2)`
/// against `m_(1,1)`, checking convergence under node doubling.
pub fn jack_gram_schmidt(n_vars: usize, beta: f64, nodes: usize) -> Result<GramSchmidtReport> {
    if !(beta >= 0.0) {
        return Err(Error::InvalidParameter(format!("beta = {beta} must be nonnegative")));
    }
    let coarse = coefficient(n_vars, beta, nodes)?;
    let fine = coefficient(n_vars, beta, 2 * nodes)?;
    let change = (fine - coarse).abs();
    if !(change < GRID_TOLERANCE) {
        return Err(Error::NonConvergence(format!(
            "Gram-Schmidt coefficient moved by {change:e} under node doubling"
        )));
    }
    Ok(GramSchmidtReport { n_vars, beta, nodes, c: fine, change })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_case_gives_one() {
        for n in [2, 3] {
            let r = jack_gram_schmidt(n, 2.0, 24).unwrap();
            assert!((r.c - 1.0).abs() < 1e-10, "n={n}: {}", r.c);
        }
    }

    #[test]
    fn coe_and_cse_coefficients() {
        for n in [2, 3] {
            let coe = jack_gram_schmidt(n, 1.0, 40).unwrap();
            assert!((coe.c - 2.0 / 3.0).abs() < 1e-6, "n={n}: {}", coe.c);
            let cse = jack_gram_schmidt(n, 4.0, 40).unwrap();
            assert!((cse.c - 4.0 / 3.0).abs() < 1e-6, "n={n}: {}", cse.c);
        }
    }

    #[test]
    fn coarse_grid_is_flagged() {
        assert!(matches!(jack_gram_schmidt(3, 1.0, 1), Err(Error::NonConvergence(_))));
        assert!(jack_gram_schmidt(4, 1.0, 10).is_err());
    }
}
