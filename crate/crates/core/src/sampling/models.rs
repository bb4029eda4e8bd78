//! Per-family draws of `W` (with the power sums it came from) and of the
//! exchangeable pair `W' = W(alpha g)`.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::haar::{
    complex_traces, haar_orthogonal, haar_symplectic, haar_unitary, quaternion_dual, real_traces,
    CMatrix, Component, RMatrix,
};
use crate::characters::PowerSums;
use crate::family::{ClassParameter, Family};

/// One draw: the statistic `W` and the power sums of the eigenvalue
/// variables it is built from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Draw {
    pub w: f64,
    pub sums: PowerSums,
}

/// `W = coefficient * Re p1`.
pub fn w_coefficient(family: Family, n: usize) -> f64 {
    let nf = n as f64;
    match family {
        Family::Usp | Family::SoOdd | Family::OEven => 1.0,
        Family::U => std::f64::consts::SQRT_2,
        Family::Coe => (1.0 + 1.0 / nf).sqrt(),
        Family::Cse => 2.0 * (1.0 - 0.5 / nf).sqrt(),
        Family::Sphere => nf.sqrt(),
    }
}

fn finish(family: Family, n: usize, sums: PowerSums) -> Draw {
    Draw { w: w_coefficient(family, n) * sums.p1.re, sums }
}

fn complex_sums(g: &CMatrix, scale: f64) -> PowerSums {
    let (p1, p2) = complex_traces(g);
    PowerSums { p1: p1 * scale, p2: p2 * scale }
}

fn real_sums(g: &RMatrix) -> PowerSums {
    let (p1, p2) = real_traces(g);
    PowerSums { p1: Complex64::new(p1, 0.0), p2: Complex64::new(p2, 0.0) }
}

fn unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Last coordinate of a uniform point on `S^{n-1}`.
pub fn sphere_sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> f64 {
    unit_vector(n, rng)[n - 1]
}

fn coe_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let u = haar_unitary(n, rng);
    &u * u.transpose()
}

fn cse_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let u = haar_unitary(2 * n, rng);
    &u * quaternion_dual(&u)
}

/// A COE draw: `M = u u^T` with `u` Haar on `U(n)`.
pub fn coe_sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Draw {
    finish(Family::Coe, n, complex_sums(&coe_matrix(n, rng), 1.0))
}

/// A CSE draw: `M = u u^D` with `u` Haar on `U(2n)`; each of the `n`
/// eigenvalues of `M` is doubly degenerate, so the power sums are halved.
pub fn cse_sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Draw {
    finish(Family::Cse, n, complex_sums(&cse_matrix(n, rng), 0.5))
}

/// One draw of `W` from the family's Haar (or invariant) measure.
pub fn draw<R: Rng + ?Sized>(family: Family, n: usize, rng: &mut R) -> Draw {
    match family {
        Family::Usp => finish(family, n, complex_sums(&haar_symplectic(n, rng), 1.0)),
        Family::SoOdd => finish(family, n, real_sums(&haar_orthogonal(2 * n + 1, rng, Component::Special))),
        Family::OEven => finish(family, n, real_sums(&haar_orthogonal(2 * n, rng, Component::Full))),
        Family::U => finish(family, n, complex_sums(&haar_unitary(n, rng), 1.0)),
        Family::Coe => coe_sample(n, rng),
        Family::Cse => cse_sample(n, rng),
        Family::Sphere => {
            let x = sphere_sample(n, rng);
            finish(family, n, PowerSums::scalar(x))
        }
    }
}

fn diag_phase(dim: usize, entries: &[(usize, f64)]) -> CMatrix {
    let mut d = CMatrix::identity(dim, dim);
    for &(i, angle) in entries {
        d[(i, i)] = Complex64::from_polar(1.0, angle);
    }
    d
}

fn plane_rotation(dim: usize, theta: f64) -> RMatrix {
    let mut r = RMatrix::identity(dim, dim);
    let (s, c) = theta.sin_cos();
    r[(0, 0)] = c;
    r[(0, 1)] = -s;
    r[(1, 0)] = s;
    r[(1, 1)] = c;
    r
}

fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// One exchangeable pair: `g` from the invariant measure and `alpha`
/// uniform on the class (or double coset) of `theta`.
pub fn draw_pair<R: Rng + ?Sized>(family: Family, n: usize, theta: &ClassParameter, rng: &mut R) -> (Draw, Draw) {
    let t = theta.theta();
    match family {
        Family::Usp => {
            let g = haar_symplectic(n, rng);
            let h = haar_symplectic(n, rng);
            let alpha = &h * diag_phase(2 * n, &[(n - 1, t), (2 * n - 1, -t)]) * h.adjoint();
            let moved = &alpha * &g;
            (finish(family, n, complex_sums(&g, 1.0)), finish(family, n, complex_sums(&moved, 1.0)))
        }
        Family::SoOdd | Family::OEven => {
            let (dim, component) = if family == Family::SoOdd {
                (2 * n + 1, Component::Special)
            } else {
                (2 * n, Component::Full)
            };
            let g = haar_orthogonal(dim, rng, component);
            let h = haar_orthogonal(dim, rng, component);
            let alpha = &h * plane_rotation(dim, t) * h.transpose();
            let moved = &alpha * &g;
            (finish(family, n, real_sums(&g)), finish(family, n, real_sums(&moved)))
        }
        Family::U => {
            let g = haar_unitary(n, rng);
            let h = haar_unitary(n, rng);
            let alpha = &h * diag_phase(n, &[(n - 2, t), (n - 1, -t)]) * h.adjoint();
            let moved = &alpha * &g;
            (finish(family, n, complex_sums(&g, 1.0)), finish(family, n, complex_sums(&moved, 1.0)))
        }
        Family::Coe => {
            let m = coe_matrix(n, rng);
            // the left factor of the double coset K alpha_0 K drops out of the trace
            let k = to_complex(&haar_orthogonal(n, rng, Component::Full));
            let alpha = diag_phase(n, &[(n - 2, 0.5 * t), (n - 1, -0.5 * t)]) * k;
            let moved = &alpha * &m * alpha.transpose();
            (finish(family, n, complex_sums(&m, 1.0)), finish(family, n, complex_sums(&moved, 1.0)))
        }
        Family::Cse => {
            let m = cse_matrix(n, rng);
            let k = haar_symplectic(n, rng);
            let alpha = diag_phase(
                2 * n,
                &[(n - 2, 0.5 * t), (n - 1, -0.5 * t), (2 * n - 2, 0.5 * t), (2 * n - 1, -0.5 * t)],
            ) * k;
            let moved = &alpha * &m * quaternion_dual(&alpha);
            (finish(family, n, complex_sums(&m, 0.5)), finish(family, n, complex_sums(&moved, 0.5)))
        }
        Family::Sphere => {
            let x = sphere_sample(n, rng);
            let u = unit_vector(n - 1, rng)[0];
            let (s, c) = t.sin_cos();
            let moved = (c * x + s * (1.0 - x * x).max(0.0).sqrt() * u).clamp(-1.0, 1.0);
            (finish(family, n, PowerSums::scalar(x)), finish(family, n, PowerSums::scalar(moved)))
        }
    }
}

/// `(W, W')` for one exchangeable pair.
pub fn exchangeable_pair<R: Rng + ?Sized>(family: Family, n: usize, theta: &ClassParameter, rng: &mut R) -> (f64, f64) {
    let (a, b) = draw_pair(family, n, theta, rng);
    (a.w, b.w)
}
