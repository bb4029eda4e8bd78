//! Monte-Carlo estimates of multiplicities `m_phi(tau^r)` as Haar integrals
//! of normalized characters.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characters::{table, CaseKind, IrrepComponent, SpaceKind};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::partitions::Signature;
use crate::sampling::sample_power_sums;

/// Number of blocks in the jackknife standard error.
pub const JACKKNIFE_BLOCKS: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityEstimate {
    pub family: Family,
    pub n: usize,
    pub label: Signature,
    pub r: usize,
    pub estimate: f64,
    pub std_error: f64,
    pub count: usize,
}

/// Block-jackknife standard error of the mean.
fn jackknife_std_error(values: &[f64], blocks: usize) -> f64 {
    let blocks = blocks.min(values.len()).max(2);
    let size = values.len() / blocks;
    if size == 0 {
        return f64::NAN;
    }
    let used = size * blocks;
    let total: f64 = values[..used].iter().sum();
    let leave_out: Vec<f64> = values[..used]
        .chunks(size)
        .map(|c| (total - c.iter().sum::<f64>()) / (used - size) as f64)
        .collect();
    let mean = leave_out.iter().sum::<f64>() / blocks as f64;
    let b = blocks as f64;
    ((b - 1.0) / b * leave_out.iter().map(|v| (v - mean).powi(2)).sum::<f64>()).sqrt()
}

/// `sqrt(dim_phi dim_tau^r) E[base^r conj(omega_phi)]` over `count` draws,
/// where `omega` are normalized characters (spherical functions) and `base`
/// is `omega_tau`, or `omega_tau + conj omega_tau` in the complex case.
/// Dimensions are squared for groups.
pub fn monte_carlo_multiplicity(
    family: Family,
    n: usize,
    label: &Signature,
    r: usize,
    count: usize,
    seed: u64,
) -> Result<MultiplicityEstimate> {
    if count < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 draws, got {count}")));
    }
    let t = table(family, n)?;
    let tau_dual = t.tau.label.dual();
    let (phi, conjugate): (&IrrepComponent, bool) = if let Some(c) = t.components.iter().find(|c| &c.label == label) {
        (c, false)
    } else if &t.tau.label == label {
        (&t.tau, false)
    } else if t.case_kind == CaseKind::Complex && &tau_dual == label {
        (&t.tau, true)
    } else {
        return Err(Error::UnknownComponent(label.to_string()));
    };
    let hilbert_dim = |d: f64| match t.space_kind {
        SpaceKind::Group => d * d,
        SpaceKind::SymmetricSpace => d,
    };
    let scale = (hilbert_dim(phi.dim) * hilbert_dim(t.tau.dim).powi(r as i32)).sqrt();
    let sums = sample_power_sums(family, n, count, seed)?;
    let values: Vec<f64> = sums
        .iter()
        .map(|s| {
            let w = t.tau.ratio_at(s);
            let base = match t.case_kind {
                CaseKind::Real => w,
                CaseKind::Complex => w + w.conj(),
            };
            let mut omega = phi.ratio_at(s);
            if conjugate {
                omega = omega.conj();
            }
            let v: Complex64 = base.powi(r as i32) * omega.conj() * scale;
            v.re
        })
        .collect();
    let estimate = values.iter().sum::<f64>() / count as f64;
    Ok(MultiplicityEstimate {
        family,
        n,
        label: label.clone(),
        r,
        estimate,
        std_error: jackknife_std_error(&values, JACKKNIFE_BLOCKS),
        count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jackknife_matches_naive_for_iid() {
        use rand::Rng;
        let mut rng = crate::sampling::chunk_rng(3, 0);
        let values: Vec<f64> = (0..10_000).map(|_| rng.random::<f64>()).collect();
        let se = jackknife_std_error(&values, 100);
        let m = crate::stats::MeanEstimate::from_samples(&values);
        assert!((se / m.std_error - 1.0).abs() < 0.2);
    }

    #[test]
    fn recovers_table_multiplicities() {
        for f in Family::ALL {
            let n = 3;
            let t = table(f, n).unwrap();
            for c in &t.components {
                let e = monte_carlo_multiplicity(f, n, &c.label, 2, 20_000, 5).unwrap();
                assert!(
                    (e.estimate - c.multiplicity).abs() < 5.0 * e.std_error + 1e-9,
                    "{f} {}: {} +- {} vs {}",
                    c.label,
                    e.estimate,
                    e.std_error,
                    c.multiplicity
                );
            }
        }
    }

    #[test]
    fn first_power_pairs_with_tau() {
        let t = table(Family::U, 3).unwrap();
        let e = monte_carlo_multiplicity(Family::U, 3, &t.tau.label.dual(), 1, 20_000, 2).unwrap();
        assert!((e.estimate - 1.0).abs() < 5.0 * e.std_error);
        assert!(monte_carlo_multiplicity(Family::U, 3, &Signature::new(vec![3, 0, 0]).unwrap(), 2, 10, 0).is_err());
    }
}
