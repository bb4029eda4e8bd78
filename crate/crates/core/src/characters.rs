//! Character ratios and tensor-square decomposition tables for the defining
//! representations of `USp(2n)`, `SO(2n+1)`, `O(2n)` and `U(n)`.
//!
//! Every component character that appears in a built-in table is a quadratic
//! polynomial in the power sums `p1 = Tr g` and `p2 = Tr g^2` (and their
//! conjugates). Storing that polynomial lets one representation serve three
//! purposes: evaluation at arbitrary eigenvalues (identity checks and
//! Monte-Carlo), cancellation-free evaluation of `1 - ratio` on the
//! one-parameter classes, and the exact small-angle expansion used for limits.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{ClassParameter, Family};
use crate::partitions::{shift_to_partition, Signature};
use crate::spherical;

/// Whether the defining character is real valued (`W = chi`) or not
/// (`W = (chi + conj chi) / sqrt 2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    Group,
    SymmetricSpace,
}

/// First and second power sums of a multiset of eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerSums {
    pub p1: Complex64,
    pub p2: Complex64,
}

impl PowerSums {
    pub fn from_eigenvalues(xs: &[Complex64]) -> Self {
        PowerSums {
            p1: xs.iter().sum(),
            p2: xs.iter().map(|x| x * x).sum(),
        }
    }

    /// Power sums of the identity element acting on a space of dimension `dim`.
    pub fn identity(dim: f64) -> Self {
        PowerSums { p1: Complex64::new(dim, 0.0), p2: Complex64::new(dim, 0.0) }
    }

    /// Power sums of a real scalar coordinate (the sphere's `x`).
    pub fn scalar(x: f64) -> Self {
        PowerSums { p1: Complex64::new(x, 0.0), p2: Complex64::new(x * x, 0.0) }
    }
}

/// `sq p1^2 + sq_conj conj(p1)^2 + abs_sq |p1|^2 + t2 p2 + t2_conj conj(p2)
///  + t1 p1 + t1_conj conj(p1) + constant`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TracePoly {
    pub sq: f64,
    pub sq_conj: f64,
    pub abs_sq: f64,
    pub t2: f64,
    pub t2_conj: f64,
    pub t1: f64,
    pub t1_conj: f64,
    pub constant: f64,
}

impl TracePoly {
    pub fn constant(c: f64) -> Self {
        TracePoly { constant: c, ..Default::default() }
    }

    pub fn linear(c: f64) -> Self {
        TracePoly { t1: c, ..Default::default() }
    }

    /// The polynomial of the complex-conjugate character.
    pub fn conj(&self) -> Self {
        TracePoly {
            sq: self.sq_conj,
            sq_conj: self.sq,
            abs_sq: self.abs_sq,
            t2: self.t2_conj,
            t2_conj: self.t2,
            t1: self.t1_conj,
            t1_conj: self.t1,
            constant: self.constant,
        }
    }

    pub fn eval(&self, s: &PowerSums) -> Complex64 {
        let (p1, p2) = (s.p1, s.p2);
        p1 * p1 * self.sq
            + (p1 * p1).conj() * self.sq_conj
            + p1.norm_sqr() * self.abs_sq
            + p2 * self.t2
            + p2.conj() * self.t2_conj
            + p1 * self.t1
            + p1.conj() * self.t1_conj
            + self.constant
    }

    fn quadratic_weight(&self) -> f64 {
        self.sq + self.sq_conj + self.abs_sq
    }

    fn square_trace_weight(&self) -> f64 {
        self.t2 + self.t2_conj
    }

    /// `P(identity) - P(class)` for a class whose first power sum falls
    /// short of `trace_dim` by `point.d1` (and the second by `point.d2()`).
    pub fn deficit(&self, trace_dim: f64, point: ClassPoint) -> f64 {
        let d1 = point.d1;
        self.quadratic_weight() * d1 * (2.0 * trace_dim - d1)
            + self.square_trace_weight() * point.d2()
            + (self.t1 + self.t1_conj) * d1
    }

    /// Coefficients `(lambda, mu)` with `deficit = lambda d1 - mu d1^2`
    /// exactly on the one-parameter classes.
    pub fn deficit_expansion(&self, trace_dim: f64) -> (f64, f64) {
        let q = self.quadratic_weight();
        let t = self.square_trace_weight();
        (2.0 * trace_dim * q + 4.0 * t + self.t1 + self.t1_conj, q + t)
    }
}

/// A point of the one-parameter family of classes, recorded by how far its
/// first power sum falls short of the identity's.
///
/// On the circle classes `(1, ..., 1, e^{i theta}, e^{-i theta})` the
/// shortfall is `d1 = 2(1 - cos theta)` and the second power sum falls short
/// by `d2 = 4 d1 - d1^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassPoint {
    pub d1: f64,
}

impl ClassPoint {
    pub fn d2(&self) -> f64 {
        4.0 * self.d1 - self.d1 * self.d1
    }
}

/// How a component's normalized character depends on the class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Ratio {
    /// `poly(class) / norm`, where `norm = poly(identity)`.
    Trace { poly: TracePoly, norm: f64 },
    /// A class-independent value, for user-supplied or synthetic tables.
    Fixed { value: f64 },
}

/// One irreducible component (or spherical function) of a decomposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrrepComponent {
    pub label: Signature,
    pub multiplicity: f64,
    pub dim: f64,
    pub is_trivial: bool,
    /// Coefficient of the unnormalized character in the expansion of the
    /// square of the defining character, when known.
    pub expansion_coeff: Option<f64>,
    pub ratio: Ratio,
}

impl IrrepComponent {
    pub fn trivial(n_vars: usize, multiplicity: f64) -> Self {
        IrrepComponent {
            label: Signature::zeros(n_vars),
            multiplicity,
            dim: 1.0,
            is_trivial: true,
            expansion_coeff: None,
            ratio: Ratio::Trace { poly: TracePoly::constant(1.0), norm: 1.0 },
        }
    }

    /// A component whose character is `poly`; the norm is its value at the
    /// identity of a space with trace `trace_dim`.
    pub fn from_poly(label: Signature, poly: TracePoly, trace_dim: f64) -> Self {
        let norm = poly.eval(&PowerSums::identity(trace_dim)).re;
        IrrepComponent {
            label,
            multiplicity: 1.0,
            dim: norm,
            is_trivial: false,
            expansion_coeff: None,
            ratio: Ratio::Trace { poly, norm },
        }
    }

    pub fn with_multiplicity(mut self, m: f64) -> Self {
        self.multiplicity = m;
        self
    }

    pub fn with_dim(mut self, dim: f64) -> Self {
        self.dim = dim;
        self
    }

    pub fn with_expansion_coeff(mut self, c: f64) -> Self {
        self.expansion_coeff = Some(c);
        self
    }

    pub fn poly(&self) -> Option<(&TracePoly, f64)> {
        match &self.ratio {
            Ratio::Trace { poly, norm } => Some((poly, *norm)),
            Ratio::Fixed { .. } => None,
        }
    }

    /// `1 - ratio` at a class point.
    pub fn deviation(&self, trace_dim: f64, point: ClassPoint) -> f64 {
        match &self.ratio {
            Ratio::Trace { poly, norm } => poly.deficit(trace_dim, point) / norm,
            Ratio::Fixed { value } => 1.0 - value,
        }
    }

    /// Normalized character value at arbitrary power sums.
    pub fn ratio_at(&self, sums: &PowerSums) -> Complex64 {
        match &self.ratio {
            Ratio::Trace { poly, norm } => poly.eval(sums) / norm,
            Ratio::Fixed { value } => Complex64::new(*value, 0.0),
        }
    }

    /// Normalized `(lambda, mu)` of [`TracePoly::deficit_expansion`].
    pub fn deviation_expansion(&self, trace_dim: f64) -> Option<(f64, f64)> {
        self.poly().map(|(poly, norm)| {
            let (l, m) = poly.deficit_expansion(trace_dim);
            (l / norm, m / norm)
        })
    }
}

/// Decomposition of the square of the defining character (or of
/// `chi + conj chi` in the complex case) into irreducible components.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionTable {
    pub family: Option<Family>,
    pub n: usize,
    pub case_kind: CaseKind,
    pub space_kind: SpaceKind,
    pub alpha_param: Option<f64>,
    /// Value of the first power sum at the identity.
    pub trace_dim: f64,
    /// `d1 = deficit_scale * (1 - cos theta)`.
    pub deficit_scale: f64,
    pub tau: IrrepComponent,
    pub components: Vec<IrrepComponent>,
}

/// A table evaluated at one class, in the shape emitted by `decompose`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub family: Option<Family>,
    pub n: usize,
    pub case: CaseKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_param: Option<f64>,
    pub theta: f64,
    pub a: f64,
    pub tau: ComponentReport,
    pub components: Vec<ComponentReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub label: Signature,
    pub multiplicity: f64,
    pub dim: f64,
    pub is_trivial: bool,
    pub ratio_at_theta: f64,
}

impl DecompositionTable {
    pub fn class_point(&self, theta: &ClassParameter) -> ClassPoint {
        ClassPoint { d1: self.deficit_scale * theta.one_minus_cos() }
    }

    /// `a = 1 - ratio_tau(theta)`.
    pub fn a(&self, theta: &ClassParameter) -> f64 {
        self.tau.deviation(self.trace_dim, self.class_point(theta))
    }

    /// `1 - ratio` for every component, in table order.
    pub fn deviations(&self, theta: &ClassParameter) -> Vec<f64> {
        let point = self.class_point(theta);
        self.components.iter().map(|c| c.deviation(self.trace_dim, point)).collect()
    }

    pub fn trivial(&self) -> Option<&IrrepComponent> {
        self.components.iter().find(|c| c.is_trivial)
    }

    pub fn required_trivial_multiplicity(&self) -> f64 {
        match self.case_kind {
            CaseKind::Real => 1.0,
            CaseKind::Complex => 2.0,
        }
    }

    /// Structural checks applied to every table before evaluation.
    pub fn validate(&self) -> Result<()> {
        let trivial: Vec<_> = self.components.iter().filter(|c| c.is_trivial).collect();
        if trivial.len() != 1 {
            return Err(Error::InvalidTable(format!(
                "expected exactly one trivial component, found {}",
                trivial.len()
            )));
        }
        let want = self.required_trivial_multiplicity();
        if (trivial[0].multiplicity - want).abs() > 1e-9 {
            return Err(Error::InvalidTable(format!(
                "trivial multiplicity {} (expected {want})",
                trivial[0].multiplicity
            )));
        }
        if let Ratio::Fixed { value } = trivial[0].ratio {
            if value != 1.0 {
                return Err(Error::InvalidTable("trivial ratio must be 1".into()));
            }
        }
        for c in self.components.iter().chain(std::iter::once(&self.tau)) {
            if !(c.multiplicity >= 0.0 && c.multiplicity.is_finite()) {
                return Err(Error::InvalidTable(format!(
                    "component {} has multiplicity {}",
                    c.label, c.multiplicity
                )));
            }
            if !(c.dim > 0.0) {
                return Err(Error::InvalidTable(format!("component {} has dim {}", c.label, c.dim)));
            }
            match &c.ratio {
                Ratio::Fixed { value } if !(-1.0..=1.0).contains(value) => {
                    return Err(Error::InvalidTable(format!(
                        "component {} has ratio {value} outside [-1, 1]",
                        c.label
                    )));
                }
                Ratio::Trace { norm, .. } if *norm == 0.0 => {
                    return Err(Error::InvalidTable(format!("component {} has norm 0", c.label)));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, theta: &ClassParameter) -> TableReport {
        let point = self.class_point(theta);
        let report = |c: &IrrepComponent| ComponentReport {
            label: c.label.clone(),
            multiplicity: c.multiplicity,
            dim: c.dim,
            is_trivial: c.is_trivial,
            ratio_at_theta: 1.0 - c.deviation(self.trace_dim, point),
        };
        TableReport {
            family: self.family,
            n: self.n,
            case: self.case_kind,
            alpha_param: self.alpha_param,
            theta: theta.theta(),
            a: self.a(theta),
            tau: report(&self.tau),
            components: self.components.iter().map(report).collect(),
        }
    }
}

/// The built-in table of a family.
pub fn table(family: Family, n: usize) -> Result<DecompositionTable> {
    match family {
        Family::Usp => usp_table(n),
        Family::SoOdd => so_odd_table(n),
        Family::OEven => o_even_table(n),
        Family::U => u_table(n),
        Family::Sphere => spherical::sphere_table(n),
        Family::Coe => spherical::coe_table(n),
        Family::Cse => spherical::cse_table(n),
    }
}

fn label(head: &[i64], tail: &[i64], n: usize) -> Signature {
    Signature::from_head_tail(head, tail, n).expect("built-in labels fit n variables")
}

fn half_square(sign_t2: f64, constant: f64) -> TracePoly {
    TracePoly { sq: 0.5, t2: 0.5 * sign_t2, constant, ..Default::default() }
}

/// Real-case group table: `tau^2 = 1 + phi2 + phi3`, each multiplicity one.
fn real_group_table(
    family: Family,
    n: usize,
    trace_dim: f64,
    phi2: (Signature, TracePoly),
    phi3: (Signature, TracePoly),
) -> Result<DecompositionTable> {
    let component = |(l, p): (Signature, TracePoly)| {
        IrrepComponent::from_poly(l, p, trace_dim).with_expansion_coeff(1.0)
    };
    Ok(DecompositionTable {
        family: Some(family),
        n,
        case_kind: CaseKind::Real,
        space_kind: SpaceKind::Group,
        alpha_param: None,
        trace_dim,
        deficit_scale: 2.0,
        tau: IrrepComponent::from_poly(label(&[1], &[], n), TracePoly::linear(1.0), trace_dim),
        components: vec![
            IrrepComponent::trivial(n, 1.0).with_expansion_coeff(1.0),
            component(phi2),
            component(phi3),
        ],
    })
}

/// `USp(2n)`: `tau^2 = 1 + Sym^2 + (Lambda^2 minus trivial)`.
pub fn usp_table(n: usize) -> Result<DecompositionTable> {
    Family::Usp.check_n(n)?;
    real_group_table(
        Family::Usp,
        n,
        2.0 * n as f64,
        (label(&[2], &[], n), half_square(1.0, 0.0)),
        (label(&[1, 1], &[], n), half_square(-1.0, -1.0)),
    )
}

/// `SO(2n+1)`: `tau^2 = 1 + (Sym^2 minus trivial) + Lambda^2`.
pub fn so_odd_table(n: usize) -> Result<DecompositionTable> {
    Family::SoOdd.check_n(n)?;
    real_group_table(
        Family::SoOdd,
        n,
        2.0 * n as f64 + 1.0,
        (label(&[2], &[], n), half_square(1.0, -1.0)),
        (label(&[1, 1], &[], n), half_square(-1.0, 0.0)),
    )
}

/// `O(2n)`: `tau^2 = 1 + Lambda^2 + (Sym^2 minus trivial)`.
pub fn o_even_table(n: usize) -> Result<DecompositionTable> {
    Family::OEven.check_n(n)?;
    real_group_table(
        Family::OEven,
        n,
        2.0 * n as f64,
        (label(&[1, 1], &[], n), half_square(-1.0, 0.0)),
        (label(&[2], &[], n), half_square(1.0, -1.0)),
    )
}

/// `U(n)`: `(chi + conj chi)^2 = 2 + s_(2) + s_(1,1) + conj + 2 s_(1,0..,0,-1)`.
pub fn u_table(n: usize) -> Result<DecompositionTable> {
    Family::U.check_n(n)?;
    let nf = n as f64;
    let s2 = half_square(1.0, 0.0);
    let s11 = half_square(-1.0, 0.0);
    let hook = TracePoly { abs_sq: 1.0, constant: -1.0, ..Default::default() };
    let component = |l: Signature, p: TracePoly, m: f64| {
        IrrepComponent::from_poly(l, p, nf).with_multiplicity(m).with_expansion_coeff(m)
    };
    Ok(DecompositionTable {
        family: Some(Family::U),
        n,
        case_kind: CaseKind::Complex,
        space_kind: SpaceKind::Group,
        alpha_param: None,
        trace_dim: nf,
        deficit_scale: 2.0,
        tau: IrrepComponent::from_poly(label(&[1], &[], n), TracePoly::linear(1.0), nf),
        components: vec![
            IrrepComponent::trivial(n, 2.0).with_expansion_coeff(2.0),
            component(label(&[2], &[], n), s2, 1.0),
            component(label(&[1, 1], &[], n), s11, 1.0),
            component(label(&[], &[-2], n), s2.conj(), 1.0),
            component(label(&[], &[-1, -1], n), s11.conj(), 1.0),
            component(label(&[1], &[-1], n), hook, 2.0),
        ],
    })
}

/// `s_lambda(x_1, ..., x_n)` by the Jacobi-Trudi determinant in complete
/// homogeneous symmetric polynomials, which is regular at repeated
/// eigenvalues.
pub fn schur_evaluate(lambda: &Signature, xs: &[Complex64]) -> Result<Complex64> {
    let (partition, power) = shift_to_partition(lambda, xs.len())?;
    let rows = partition.parts();
    let prefactor = xs.iter().product::<Complex64>().powi(power as i32);
    if rows.is_empty() {
        return Ok(prefactor);
    }
    let max_degree = rows[0] + rows.len();
    let mut h = vec![Complex64::new(0.0, 0.0); max_degree + 1];
    h[0] = Complex64::new(1.0, 0.0);
    for &x in xs {
        for k in 1..=max_degree {
            let prev = h[k - 1];
            h[k] += x * prev;
        }
    }
    let l = rows.len();
    let m = DMatrix::from_fn(l, l, |i, j| {
        let k = rows[i] as i64 - i as i64 + j as i64;
        if k < 0 {
            Complex64::new(0.0, 0.0)
        } else {
            h[k as usize]
        }
    });
    Ok(m.determinant() * prefactor)
}

/// `|lhs - sum_phi c_phi chi^phi(x)|`, where `lhs` is the square of the
/// defining character (real case) or of `chi + conj chi` (complex case) and
/// `c_phi` the expansion coefficients of the table.
pub fn tensor_square_character_identity(table: &DecompositionTable, sums: &PowerSums) -> Result<f64> {
    let (tau_poly, _) = table
        .tau
        .poly()
        .ok_or_else(|| Error::InvalidTable("defining character is not a trace polynomial".into()))?;
    let chi = tau_poly.eval(sums);
    let base = match table.case_kind {
        CaseKind::Real => chi,
        CaseKind::Complex => chi + chi.conj(),
    };
    let mut rhs = Complex64::new(0.0, 0.0);
    for c in &table.components {
        let coeff = c.expansion_coeff.ok_or_else(|| {
            Error::InvalidTable(format!("component {} lacks an expansion coefficient", c.label))
        })?;
        let (poly, _) = c
            .poly()
            .ok_or_else(|| Error::InvalidTable(format!("component {} has a fixed ratio", c.label)))?;
        rhs += poly.eval(sums) * coeff;
    }
    Ok((base * base - rhs).norm())
}

/// Eigenvalues of a random element of the family's maximal torus (or of the
/// eigenvalue variables of a symmetric space), from `n` angles.
pub fn torus_eigenvalues(family: Family, angles: &[f64]) -> Vec<Complex64> {
    let e = |t: f64| Complex64::from_polar(1.0, t);
    match family {
        Family::Usp | Family::OEven => angles.iter().flat_map(|&t| [e(t), e(-t)]).collect(),
        Family::SoOdd => std::iter::once(Complex64::new(1.0, 0.0))
            .chain(angles.iter().flat_map(|&t| [e(t), e(-t)]))
            .collect(),
        Family::U | Family::Coe | Family::Cse => angles.iter().map(|&t| e(t)).collect(),
        Family::Sphere => vec![Complex64::new(angles.first().map_or(1.0, |t| t.cos()), 0.0)],
    }
}
