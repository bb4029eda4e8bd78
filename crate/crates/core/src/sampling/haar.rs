//! Haar-distributed matrices on `U(n)`, `O(n)`/`SO(n)` and `USp(2n)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

pub type CMatrix = DMatrix<Complex64>;
pub type RMatrix = DMatrix<f64>;

/// Which connected component(s) of the orthogonal group to sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Component {
    /// Haar measure on all of `O(n)`.
    Full,
    /// Haar measure on `SO(n)`.
    Special,
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar unitary from the QR factorization of a complex Ginibre matrix, with
/// the phases of `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let z = CMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar orthogonal matrix from the QR factorization of a real Gaussian
/// matrix, with the signs of `diag(R)` moved into `Q`.
pub fn haar_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R, component: Component) -> RMatrix {
    let z = RMatrix::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if component == Component::Special && q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// The standard symplectic form `J = [[0, I], [-I, 0]]` of size `2n`.
pub fn symplectic_form(n: usize) -> CMatrix {
    CMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if j == i + n {
            Complex64::new(1.0, 0.0)
        } else if i == j + n {
            Complex64::new(-1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Quaternion dual `X^D = J X^T J^{-1}`.
pub fn quaternion_dual(x: &CMatrix) -> CMatrix {
    let n = x.nrows() / 2;
    let j = symplectic_form(n);
    // J^{-1} = -J
    -(&j * x.transpose() * &j)
}

/// Haar element of `USp(2n) = U(2n) ∩ Sp(2n, C)`, by quaternionic
/// Gram-Schmidt: columns come in pairs `(a; c)` and `(-conj c; conj a)`.
pub fn haar_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let dim = 2 * n;
    let partner = |v: &DVector<Complex64>| {
        DVector::from_fn(dim, |i, _| if i < n { -v[i + n].conj() } else { v[i - n].conj() })
    };
    loop {
        let mut g = CMatrix::zeros(dim, dim);
        let mut ok = true;
        for k in 0..n {
            let mut v = DVector::from_fn(dim, |_, _| complex_gaussian(rng));
            for col in (0..k).chain(n..n + k) {
                let basis = g.column(col).clone_owned();
                let proj = basis.dotc(&v);
                v -= basis * proj;
            }
            let norm = v.norm();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            v /= Complex64::new(norm, 0.0);
            let w = partner(&v);
            g.set_column(k, &v);
            g.set_column(n + k, &w);
        }
        if ok {
            return g;
        }
    }
}

/// `max |g^H g - I|`.
pub fn unitarity_residual(g: &CMatrix) -> f64 {
    let n = g.nrows();
    (g.adjoint() * g - CMatrix::identity(n, n)).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |g^T g - I|`.
pub fn orthogonality_residual(g: &RMatrix) -> f64 {
    let n = g.nrows();
    (g.transpose() * g - RMatrix::identity(n, n)).iter().map(|z| z.abs()).fold(0.0, f64::max)
}

/// `max |g J g^T - J|`.
pub fn symplectic_residual(g: &CMatrix) -> f64 {
    let j = symplectic_form(g.nrows() / 2);
    (g * &j * g.transpose() - &j).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `(Tr g, Tr g^2)` without forming `g^2`.
pub fn complex_traces(g: &CMatrix) -> (Complex64, Complex64) {
    let n = g.nrows();
    let mut t2 = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            t2 += g[(i, j)] * g[(j, i)];
        }
    }
    (g.trace(), t2)
}

pub fn real_traces(g: &RMatrix) -> (f64, f64) {
    let n = g.nrows();
    let mut t2 = 0.0;
    for i in 0..n {
        for j in 0..n {
            t2 += g[(i, j)] * g[(j, i)];
        }
    }
    (g.trace(), t2)
}
