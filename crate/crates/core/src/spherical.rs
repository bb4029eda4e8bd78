//! Spherical functions: Gegenbauer polynomials for the sphere and degree-two
//! Jack polynomials for the circular ensembles (`alpha = 2` for COE,
//! `alpha = 1/2` for CSE), with their principal specializations, dimensions
//! and the multiplicity tables built from the `(P_(1) + conj)^2` expansions.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::characters::{CaseKind, DecompositionTable, IrrepComponent, SpaceKind, TracePoly};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::partitions::{boxes, shift_to_partition, Partition, Signature};

/// `C_l^rho(x)` by the three-term recurrence.
pub fn gegenbauer(l: usize, rho: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if l == 0 {
        return prev;
    }
    let mut cur = 2.0 * rho * x;
    for k in 2..=l {
        let kf = k as f64;
        let next = (2.0 * x * (kf + rho - 1.0) * cur - (kf + 2.0 * rho - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// The degree-`l` spherical function of `S^{n-1}` at last coordinate `x`,
/// `C_l^{(n-2)/2}(x) / C_l^{(n-2)/2}(1)`, for `n >= 3`.
pub fn sphere_spherical_function(l: usize, n: usize, x: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::SizeTooSmall { min: 3, got: n });
    }
    let rho = 0.5 * (n as f64 - 2.0);
    Ok(gegenbauer(l, rho, x) / gegenbauer(l, rho, 1.0))
}

/// Dimension of the space of degree-`l` spherical harmonics on `S^{n-1}`.
pub fn sphere_harmonic_dim(l: usize, n: usize) -> f64 {
    if l == 0 {
        return 1.0;
    }
    if n == 2 {
        return 2.0;
    }
    // (2l + n - 2) (l + n - 3)! / ((n - 2)! l!)
    let mut binom = 1.0;
    for k in 1..=l {
        binom *= (n as f64 - 3.0 + k as f64) / k as f64;
    }
    (2.0 * l as f64 + n as f64 - 2.0) * binom / (n as f64 - 2.0)
}

/// Jack parameter and number of eigenvalue variables of a circular ensemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JackContext {
    pub alpha: Rational64,
    pub n_vars: usize,
}

impl JackContext {
    pub fn new(alpha: Rational64, n_vars: usize) -> Result<Self> {
        if alpha <= Rational64::from_integer(0) {
            return Err(Error::InvalidParameter(format!("Jack parameter {alpha} must be positive")));
        }
        Ok(JackContext { alpha, n_vars })
    }

    pub fn coe(n: usize) -> Self {
        JackContext { alpha: Rational64::from_integer(2), n_vars: n }
    }

    pub fn cse(n: usize) -> Self {
        JackContext { alpha: Rational64::new(1, 2), n_vars: n }
    }

    pub fn alpha_f64(&self) -> f64 {
        *self.alpha.numer() as f64 / *self.alpha.denom() as f64
    }

    fn alpha_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.alpha.numer()), BigInt::from(*self.alpha.denom()))
    }
}

fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn check_rows(lambda: &Partition, ctx: &JackContext) -> Result<()> {
    if lambda.rows() > ctx.n_vars {
        return Err(Error::TooManyRows { rows: lambda.rows(), n_vars: ctx.n_vars });
    }
    Ok(())
}

/// `P_lambda(1, ..., 1; alpha) = prod_s (n + alpha a'(s) - l'(s)) / (alpha a(s) + l(s) + 1)`.
pub fn jack_principal_specialization(lambda: &Partition, ctx: &JackContext) -> Result<BigRational> {
    check_rows(lambda, ctx)?;
    let alpha = ctx.alpha_big();
    let n = big(ctx.n_vars as i64);
    let mut value = BigRational::one();
    for cell in boxes(lambda) {
        let s = cell.stats;
        let num = &n + &alpha * big(s.co_arm as i64) - big(s.co_leg as i64);
        let den = &alpha * big(s.arm as i64) + big(s.leg as i64 + 1);
        value = value * num / den;
    }
    Ok(value)
}

/// Dimension of the spherical representation labelled by `lambda`:
/// `prod_s (n + alpha a' - l')(n + alpha a' - l' + alpha - 1) / ((alpha a + l + 1)(alpha a + l + alpha))`.
pub fn jack_dimension(lambda: &Partition, ctx: &JackContext) -> Result<BigRational> {
    check_rows(lambda, ctx)?;
    let alpha = ctx.alpha_big();
    let n = big(ctx.n_vars as i64);
    let one = BigRational::one();
    let mut value = BigRational::one();
    for cell in boxes(lambda) {
        let s = cell.stats;
        let up = &n + &alpha * big(s.co_arm as i64) - big(s.co_leg as i64);
        let down = &alpha * big(s.arm as i64) + big(s.leg as i64) + &one;
        let num = &up * (&up + &alpha - &one);
        let den = &down * (&down + &alpha - &one);
        value = value * num / den;
    }
    Ok(value)
}

/// Principal specialization and dimension of a signature label, through the
/// shift `P_lambda = (x_1 ... x_n)^{-k} P_{lambda + (k)^n}`.
pub fn jack_label_data(label: &Signature, ctx: &JackContext) -> Result<(f64, f64)> {
    let (partition, _) = shift_to_partition(label, ctx.n_vars)?;
    let spec = jack_principal_specialization(&partition, ctx)?;
    let dim = jack_dimension(&partition, ctx)?;
    Ok((to_f64(&spec), to_f64(&dim)))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Converts the coefficient of `P_phi` in `(P_(1) + conj)^2` into the
/// multiplicity `m_phi`.
pub fn m_from_p_expansion(coeff: f64, phi: &Signature, tau_dim: f64, ctx: &JackContext) -> Result<f64> {
    let (spec, dim) = jack_label_data(phi, ctx)?;
    if dim == 0.0 {
        return Err(Error::Degenerate(format!("dimension of {phi} is zero")));
    }
    let n = ctx.n_vars as f64;
    Ok(coeff * spec / (n * n) * tau_dim / dim.sqrt())
}

/// Coefficient `2 / (alpha + 1)` of `m_(1,1)` in `P_(2)`.
pub fn p2_mixed_coefficient(alpha: f64) -> f64 {
    2.0 / (alpha + 1.0)
}

/// Constant `n(n-1)/(n + alpha - 1)` in `P_(1,0..,0,-1) = |p1|^2 - n + constant` on the torus.
pub fn hook_constant(n: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    nf * (nf - 1.0) / (nf + alpha - 1.0)
}

/// Evaluates the degree-two Jack polynomials used by the tables directly
/// from their monomial expansions, at arbitrary nonzero points.
pub fn jack_evaluate(label: &Signature, xs: &[Complex64], ctx: &JackContext) -> Result<Complex64> {
    let n = ctx.n_vars;
    if xs.len() != n || label.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: xs.len().min(label.len()) });
    }
    let alpha = ctx.alpha_f64();
    let one = Complex64::new(1.0, 0.0);
    let m2 = |v: &[Complex64]| v.iter().map(|x| x * x).sum::<Complex64>();
    let m11 = |v: &[Complex64]| {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                s += v[i] * v[j];
            }
        }
        s
    };
    let inv: Vec<Complex64> = xs.iter().map(|x| one / x).collect();
    let p2 = |v: &[Complex64]| m2(v) + m11(v) * p2_mixed_coefficient(alpha);
    let parts = label.parts();
    let head = |v: &[i64]| Signature::from_head_tail(v, &[], n).ok().as_ref() == Some(label);
    let tail = |v: &[i64]| Signature::from_head_tail(&[], v, n).ok().as_ref() == Some(label);
    if label.is_zero() {
        Ok(one)
    } else if head(&[1]) {
        Ok(xs.iter().sum())
    } else if tail(&[-1]) {
        Ok(inv.iter().sum())
    } else if head(&[2]) {
        Ok(p2(xs))
    } else if tail(&[-2]) {
        Ok(p2(&inv))
    } else if head(&[1, 1]) {
        Ok(m11(xs))
    } else if tail(&[-1, -1]) {
        Ok(m11(&inv))
    } else if n >= 2 && parts[0] == 1 && parts[n - 1] == -1 && parts[1..n - 1].iter().all(|&p| p == 0) {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                if i != k {
                    s += xs[i] / xs[k];
                }
            }
        }
        Ok(s + hook_constant(n, alpha))
    } else {
        Err(Error::UnknownComponent(label.to_string()))
    }
}

/// Sphere `S^{n-1}`: `x^2 = 1/n + ((n-1)/n) omega_2(x)`.
pub fn sphere_table(n: usize) -> Result<DecompositionTable> {
    Family::Sphere.check_n(n)?;
    let nf = n as f64;
    let l = |d: i64| Signature::new(vec![d]).expect("single part");
    let omega2 = TracePoly { sq: nf / (nf - 1.0), constant: -1.0 / (nf - 1.0), ..Default::default() };
    let tau_dim = nf;
    let dim2 = sphere_harmonic_dim(2, n);
    let coeff2 = (nf - 1.0) / nf;
    let trivial = IrrepComponent::trivial(1, 1.0).with_expansion_coeff(1.0 / nf);
    Ok(DecompositionTable {
        family: Some(Family::Sphere),
        n,
        case_kind: CaseKind::Real,
        space_kind: SpaceKind::SymmetricSpace,
        alpha_param: None,
        trace_dim: 1.0,
        deficit_scale: 1.0,
        tau: IrrepComponent::from_poly(l(1), TracePoly::linear(1.0), 1.0).with_dim(tau_dim),
        components: vec![
            trivial,
            IrrepComponent::from_poly(l(2), omega2, 1.0)
                .with_dim(dim2)
                .with_multiplicity(coeff2 * tau_dim / dim2.sqrt())
                .with_expansion_coeff(coeff2),
        ],
    })
}

fn jack_table(family: Family, ctx: JackContext) -> Result<DecompositionTable> {
    let n = ctx.n_vars;
    family.check_n(n)?;
    let nf = n as f64;
    let alpha = ctx.alpha_f64();
    let label = |h: &[i64], t: &[i64]| Signature::from_head_tail(h, t, n).expect("fits n variables");
    let p2 = TracePoly { sq: 1.0 / (alpha + 1.0), t2: alpha / (alpha + 1.0), ..Default::default() };
    let p11 = TracePoly { sq: 0.5, t2: -0.5, ..Default::default() };
    let hook = TracePoly { abs_sq: 1.0, constant: hook_constant(n, alpha) - nf, ..Default::default() };
    let tau_label = label(&[1], &[]);
    let (_, tau_dim) = jack_label_data(&tau_label, &ctx)?;
    let entries = [
        (label(&[2], &[]), p2, 1.0),
        (label(&[1, 1], &[]), p11, 2.0 * alpha / (alpha + 1.0)),
        (label(&[1], &[-1]), hook, 2.0),
        (label(&[], &[-2]), p2.conj(), 1.0),
        (label(&[], &[-1, -1]), p11.conj(), 2.0 * alpha / (alpha + 1.0)),
    ];
    let constant = 2.0 * alpha * nf / (nf + alpha - 1.0);
    let trivial_label = Signature::zeros(n);
    let mut components = vec![IrrepComponent::trivial(n, m_from_p_expansion(
        constant,
        &trivial_label,
        tau_dim,
        &ctx,
    )?)
    .with_expansion_coeff(constant)];
    for (lab, poly, coeff) in entries {
        let (_, dim) = jack_label_data(&lab, &ctx)?;
        let m = m_from_p_expansion(coeff, &lab, tau_dim, &ctx)?;
        components.push(
            IrrepComponent::from_poly(lab, poly, nf)
                .with_dim(dim)
                .with_multiplicity(m)
                .with_expansion_coeff(coeff),
        );
    }
    Ok(DecompositionTable {
        family: Some(family),
        n,
        case_kind: CaseKind::Complex,
        space_kind: SpaceKind::SymmetricSpace,
        alpha_param: Some(alpha),
        trace_dim: nf,
        deficit_scale: 2.0,
        tau: IrrepComponent::from_poly(tau_label, TracePoly::linear(1.0), nf).with_dim(tau_dim),
        components,
    })
}

/// Circular orthogonal ensemble (`alpha = 2`).
pub fn coe_table(n: usize) -> Result<DecompositionTable> {
    jack_table(Family::Coe, JackContext::coe(n))
}

/// Circular symplectic ensemble (`alpha = 1/2`).
pub fn cse_table(n: usize) -> Result<DecompositionTable> {
    jack_table(Family::Cse, JackContext::cse(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{tensor_square_character_identity, torus_eigenvalues, PowerSums};
    use crate::family::ClassParameter;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn part(v: &[i64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn rat(x: &BigRational) -> f64 {
        to_f64(x)
    }

    #[test]
    fn gegenbauer_low_degrees() {
        for rho in [0.5, 1.0, 2.5] {
            for x in [-0.7, 0.0, 0.4, 1.0] {
                assert_eq!(gegenbauer(0, rho, x), 1.0);
                assert_relative_eq!(gegenbauer(1, rho, x), 2.0 * rho * x, epsilon = 1e-15);
                assert_relative_eq!(
                    gegenbauer(2, rho, x),
                    -rho + 2.0 * rho * (1.0 + rho) * x * x,
                    epsilon = 1e-13
                );
            }
        }
    }

    fn generating_partial_sum(rho: f64, x: f64, t: f64, max_l: usize) -> f64 {
        (0..=max_l).map(|l| gegenbauer(l, rho, x) * t.powi(l as i32)).sum()
    }

    #[test]
    fn gegenbauer_generating_function() {
        let t: f64 = 0.1;
        let (rho, x) = (1.5, 0.3);
        let exact = (1.0 - 2.0 * x * t + t * t).powf(-rho);
        assert!((generating_partial_sum(rho, x, t, 12) - exact).abs() < 1e-10);
    }

    #[test]
    fn gegenbauer_at_one_is_binomial_coefficient() {
        // coefficient of t^l in (1 - t)^{-2 rho} is (2 rho)_l / l!
        for rho in [0.5, 1.0, 3.5] {
            let mut coeff = 1.0;
            for l in 0..10 {
                assert_relative_eq!(gegenbauer(l, rho, 1.0), coeff, max_relative = 1e-12);
                coeff *= (2.0 * rho + l as f64) / (l as f64 + 1.0);
            }
        }
    }

    #[test]
    fn sphere_omega2_matches_gegenbauer() {
        for n in 3..9 {
            let table = sphere_table(n).unwrap();
            for x in [-0.8, 0.1, 0.95] {
                let theta = ClassParameter::from_sphere_coordinate(x).unwrap();
                let omega = 1.0 - table.deviations(&theta)[1];
                let nf = n as f64;
                assert_relative_eq!(omega, (nf * x * x - 1.0) / (nf - 1.0), epsilon = 1e-14);
                assert_relative_eq!(omega, sphere_spherical_function(2, n, x).unwrap(), epsilon = 1e-13);
                assert_relative_eq!(table.a(&theta), 1.0 - x, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn sphere_dimensions_and_multiplicity() {
        assert_eq!(sphere_harmonic_dim(1, 7), 7.0);
        assert_eq!(sphere_harmonic_dim(2, 6), 20.0);
        let t = sphere_table(6).unwrap();
        assert_relative_eq!(t.components[1].multiplicity, (10.0f64 / 8.0).sqrt(), max_relative = 1e-14);
        for n in 2..30 {
            let nf = n as f64;
            let t = sphere_table(n).unwrap();
            let m = (2.0 * (nf - 1.0) / (nf + 2.0)).sqrt();
            assert_relative_eq!(t.components[1].multiplicity, m, max_relative = 1e-13);
        }
    }

    #[test]
    fn principal_specialization_examples() {
        for n in 2..9 {
            let nf = n as f64;
            for ctx in [JackContext::coe(n), JackContext::cse(n)] {
                assert_eq!(rat(&jack_principal_specialization(&part(&[1]), &ctx).unwrap()), nf);
                assert_eq!(rat(&jack_principal_specialization(&Partition::empty(), &ctx).unwrap()), 1.0);
                assert_eq!(rat(&jack_dimension(&Partition::empty(), &ctx).unwrap()), 1.0);
            }
            let coe = JackContext::coe(n);
            assert_relative_eq!(
                rat(&jack_principal_specialization(&part(&[2]), &coe).unwrap()),
                nf * (nf + 2.0) / 3.0,
                max_relative = 1e-15
            );
            assert_relative_eq!(
                rat(&jack_dimension(&part(&[1]), &coe).unwrap()),
                nf * (nf + 1.0) / 2.0,
                max_relative = 1e-15
            );
            assert_relative_eq!(
                rat(&jack_dimension(&part(&[1]), &JackContext::cse(n)).unwrap()),
                nf * (2.0 * nf - 1.0),
                max_relative = 1e-15
            );
        }
        assert!(jack_dimension(&part(&[1, 1, 1]), &JackContext::coe(2)).is_err());
    }

    #[test]
    fn alpha_one_reduces_to_schur() {
        // s_lambda(1^n) and dim(lambda)^2 for U(n)
        let ctx = JackContext::new(Rational64::from_integer(1), 4).unwrap();
        let spec = rat(&jack_principal_specialization(&part(&[2, 1]), &ctx).unwrap());
        assert_relative_eq!(spec, 20.0, max_relative = 1e-15);
        let dim = rat(&jack_dimension(&part(&[2, 1]), &ctx).unwrap());
        assert_relative_eq!(dim, 400.0, max_relative = 1e-15);
    }

    #[test]
    fn w_normalization_matches_ensemble_coefficients() {
        for n in 2..20 {
            let nf = n as f64;
            let (_, d) = jack_label_data(&Signature::from_head_tail(&[1], &[], n).unwrap(), &JackContext::coe(n)).unwrap();
            assert_relative_eq!((d / 2.0).sqrt() / nf, 0.5 * (1.0 + 1.0 / nf).sqrt(), max_relative = 1e-14);
            let (_, d) = jack_label_data(&Signature::from_head_tail(&[1], &[], n).unwrap(), &JackContext::cse(n)).unwrap();
            assert_relative_eq!((d / 2.0).sqrt() / nf, (1.0 - 0.5 / nf).sqrt(), max_relative = 1e-14);
        }
    }

    #[test]
    fn trivial_multiplicity_is_two() {
        for n in 2..15 {
            for t in [coe_table(n).unwrap(), cse_table(n).unwrap()] {
                t.validate().unwrap();
                assert_relative_eq!(t.components[0].multiplicity, 2.0, max_relative = 1e-14);
                assert!(t.components.iter().all(|c| c.multiplicity >= 0.0));
            }
        }
    }

    #[test]
    fn coe_multiplicities_closed_forms() {
        for n in 2..12 {
            let nf = n as f64;
            let t = coe_table(n).unwrap();
            let m2 = 6f64.sqrt() * (nf + 1.0).sqrt() * (nf + 2.0).sqrt() / (3.0 * nf.sqrt() * (nf + 3.0).sqrt());
            let m11 = 2.0 * 3f64.sqrt() * (nf - 1.0).sqrt() * (nf + 1.0).sqrt() / (3.0 * nf);
            let mh = 2.0 * (nf - 1.0).sqrt() * (nf + 2.0) / (nf * (nf + 3.0).sqrt());
            assert_relative_eq!(t.components[1].multiplicity, m2, max_relative = 1e-13);
            assert_relative_eq!(t.components[2].multiplicity, m11, max_relative = 1e-13);
            assert_relative_eq!(t.components[3].multiplicity, mh, max_relative = 1e-13);
            assert_relative_eq!(t.components[4].multiplicity, m2, max_relative = 1e-13);
            assert_relative_eq!(t.components[5].multiplicity, m11, max_relative = 1e-13);
        }
    }

    #[test]
    fn table_norms_are_principal_specializations() {
        for n in 2..9 {
            for (t, ctx) in [(coe_table(n).unwrap(), JackContext::coe(n)), (cse_table(n).unwrap(), JackContext::cse(n))] {
                let ones = vec![Complex64::new(1.0, 0.0); n];
                for c in &t.components {
                    let (spec, _) = jack_label_data(&c.label, &ctx).unwrap();
                    let (_, norm) = c.poly().unwrap();
                    assert_relative_eq!(norm, spec, max_relative = 1e-13);
                    assert_relative_eq!(jack_evaluate(&c.label, &ones, &ctx).unwrap().re, spec, max_relative = 1e-13);
                }
            }
        }
    }

    #[test]
    fn identity_class_ratios_are_one() {
        for n in 2..7 {
            for t in [coe_table(n).unwrap(), cse_table(n).unwrap(), sphere_table(n).unwrap()] {
                let ones = PowerSums::identity(t.trace_dim);
                for c in &t.components {
                    assert_relative_eq!(c.ratio_at(&ones).re, 1.0, epsilon = 1e-13);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn jack_polys_match_monomial_expansions(
            angles in prop::collection::vec(0.0..(2.0 * PI), 4)
        ) {
            for (t, ctx) in [(coe_table(4).unwrap(), JackContext::coe(4)), (cse_table(4).unwrap(), JackContext::cse(4))] {
                let xs = torus_eigenvalues(t.family.unwrap(), &angles);
                let sums = PowerSums::from_eigenvalues(&xs);
                for c in &t.components {
                    let (poly, _) = c.poly().unwrap();
                    let direct = jack_evaluate(&c.label, &xs, &ctx).unwrap();
                    prop_assert!((poly.eval(&sums) - direct).norm() < 1e-10);
                }
                prop_assert!(tensor_square_character_identity(&t, &sums).unwrap() < 1e-10);
            }
        }

        #[test]
        fn sphere_identity(x in -1.0f64..1.0, n in 2usize..20) {
            let t = sphere_table(n).unwrap();
            prop_assert!(tensor_square_character_identity(&t, &PowerSums::scalar(x)).unwrap() < 1e-12);
        }

        #[test]
        fn gegenbauer_generating_function_grid(
            l_rho in 0usize..4, x in -1.0f64..1.0, t in -0.3f64..0.3
        ) {
            let rho = [0.5, 1.0, 1.5, 4.0][l_rho];
            let exact = (1.0 - 2.0 * x * t + t * t).powf(-rho);
            let approx = generating_partial_sum(rho, x, t, 60);
            prop_assert!((approx - exact).abs() < 1e-10);
        }
    }
}
