//! Least-squares recovery of the expansion of `(p1 + conj p1)^2` in Schur
//! or Jack characters, from evaluations at random torus points.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::characters::{schur_evaluate, table};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::partitions::Signature;
use crate::sampling::chunk_rng;
use crate::spherical::{jack_evaluate, JackContext};

/// Condition number above which the fit is rejected.
pub const MAX_CONDITION: f64 = 1e8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieriReport {
    pub family: Family,
    pub n: usize,
    pub points: usize,
    pub labels: Vec<Signature>,
    pub coefficients: Vec<f64>,
    /// Coefficients stored in the built-in table, in the same order.
    pub table_coefficients: Vec<f64>,
    pub max_deviation: f64,
    pub residual: f64,
    pub condition_number: f64,
}

fn basis_value(family: Family, label: &Signature, xs: &[Complex64]) -> Result<Complex64> {
    let n = xs.len();
    match family {
        Family::U => schur_evaluate(label, xs),
        Family::Coe => jack_evaluate(label, xs, &JackContext::coe(n)),
        Family::Cse => jack_evaluate(label, xs, &JackContext::cse(n)),
        other => Err(Error::UnsupportedFamily(format!("no least-squares expansion for {other}"))),
    }
}

/// Fits `(p1 + conj p1)^2 = sum_phi c_phi P_phi` over `points` random
/// points of the torus, using the labels of the built-in table.
pub fn pieri_least_squares(family: Family, n: usize, points: usize, seed: u64) -> Result<PieriReport> {
    let t = table(family, n)?;
    let labels: Vec<Signature> = t.components.iter().map(|c| c.label.clone()).collect();
    let k = labels.len();
    if points < 3 * k {
        return Err(Error::InvalidParameter(format!("need at least {} points, got {points}", 3 * k)));
    }
    let mut rng = chunk_rng(seed, 0);
    let mut a = DMatrix::<Complex64>::zeros(points, k);
    let mut b = DVector::<Complex64>::zeros(points);
    for row in 0..points {
        let xs: Vec<Complex64> =
            (0..n).map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))).collect();
        let p1: Complex64 = xs.iter().sum();
        b[row] = (p1 + p1.conj()).powi(2);
        for (col, label) in labels.iter().enumerate() {
            a[(row, col)] = basis_value(family, label, &xs)?;
        }
    }
    let svd = a.clone().svd(true, true);
    let max_sv = svd.singular_values.max();
    let min_sv = svd.singular_values.min();
    let condition_number = if min_sv > 0.0 { max_sv / min_sv } else { f64::INFINITY };
    if !(condition_number <= MAX_CONDITION) {
        return Err(Error::IllConditioned(condition_number));
    }
    let x = svd
        .solve(&b, 0.0)
        .map_err(|e| Error::NonConvergence(format!("least-squares solve failed: {e}")))?;
    let residual = (&a * &x - &b).norm() / b.norm();
    let coefficients: Vec<f64> = x.iter().map(|z| z.re).collect();
    let table_coefficients: Vec<f64> =
        t.components.iter().map(|c| c.expansion_coeff.unwrap_or(f64::NAN)).collect();
    let max_deviation = coefficients
        .iter()
        .zip(&table_coefficients)
        .map(|(c, d)| (c - d).abs())
        .fold(0.0, f64::max);
    Ok(PieriReport {
        family,
        n,
        points,
        labels,
        coefficients,
        table_coefficients,
        max_deviation,
        residual,
        condition_number,
    })
}
