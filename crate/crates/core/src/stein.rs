//! Stein bounds for exchangeable pairs and the increment moments they are
//! built from, evaluated on any [`DecompositionTable`].

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::characters::{CaseKind, DecompositionTable};
use crate::error::{Error, Result};
use crate::family::{ClassParameter, Family};
use crate::oracle::limits::{numeric_limit, LimitEstimate};
use crate::partitions::Signature;

/// Smallest `a` accepted by the evaluators.
pub const MIN_A: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub family: Option<Family>,
    pub n: usize,
    pub theta: f64,
    pub a: f64,
    pub term1: f64,
    pub term2: f64,
    pub total: f64,
    /// `theta -> 0` limit of `term1`.
    pub limit_term1: Option<f64>,
    /// `c` with `term2 ~ (c (1 - cos theta))^{1/4}` as `theta -> 0`.
    pub limit_coeff_term2: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub a: f64,
    /// `E (W' - W)^2`.
    pub e2: f64,
    /// `E (W' - W)^4`.
    pub e4: f64,
    /// `Var E[(W' - W)^2 | g]`.
    pub condvar: f64,
}

/// Closed-form bounds of a built-in family, with the `theta -> 0` limit of
/// the first error term computed three ways.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub family: Family,
    pub n: usize,
    /// Limit of `term1` from the exact small-angle expansion of the table.
    pub exact_limit: f64,
    /// Limit of `term1` by Richardson extrapolation of the evaluator.
    pub richardson_limit: f64,
    pub richardson_error: f64,
    /// Simplified closed form of the limit as a function of `n`.
    pub closed_form_limit: f64,
    /// The published (possibly weaker) bound for this family and size.
    pub stated_bound: f64,
    pub limit_coeff_term2: f64,
    pub closed_form_coeff_term2: f64,
}

fn check_a(a: f64, upper: Option<f64>) -> Result<()> {
    if !(a >= MIN_A) || upper.is_some_and(|u| a > u) {
        return Err(Error::AOutOfRange(a));
    }
    Ok(())
}

struct Weights {
    bracket_const: f64,
    fourth_const: f64,
    fourth_slope: f64,
    prefactor: f64,
}

fn weights(case: CaseKind) -> Weights {
    match case {
        CaseKind::Real => Weights { bracket_const: 2.0, fourth_const: 8.0, fourth_slope: 6.0, prefactor: 1.0 },
        CaseKind::Complex => Weights { bracket_const: 2.0, fourth_const: 2.0, fourth_slope: 1.5, prefactor: 0.5 },
    }
}

/// Evaluates the bound of the table's case kind.
pub fn bound(table: &DecompositionTable, theta: &ClassParameter) -> Result<BoundReport> {
    table.validate()?;
    let a = table.a(theta);
    check_a(a, Some(1.0 + 1e-12))?;
    let w = weights(table.case_kind);
    let devs = table.deviations(theta);
    let mut sum1 = 0.0;
    let mut sum2 = 0.0;
    let mut scale2 = 0.0;
    for (c, dev) in table.components.iter().zip(&devs) {
        let m2 = c.multiplicity * c.multiplicity;
        if !c.is_trivial {
            let b = w.bracket_const - dev / a;
            sum1 += m2 * b * b;
        }
        let t = m2 * (w.fourth_const - w.fourth_slope * dev / a);
        sum2 += t;
        scale2 += t.abs();
    }
    let term1 = w.prefactor * sum1.sqrt();
    if sum2 < 0.0 {
        if sum2 < -1e-12 * scale2 {
            return Err(Error::NegativeRadicand(sum2 / PI));
        }
        sum2 = 0.0;
    }
    let term2 = (sum2 / PI).powf(0.25);
    let (limit_term1, limit_coeff_term2) = limits(table).map_or((None, None), |(l, c)| (Some(l), Some(c)));
    Ok(BoundReport {
        family: table.family,
        n: table.n,
        theta: theta.theta(),
        a,
        term1,
        term2,
        total: term1 + term2,
        limit_term1,
        limit_coeff_term2,
    })
}

/// Bound for a table whose defining character is real valued.
pub fn real_bound(table: &DecompositionTable, theta: &ClassParameter) -> Result<BoundReport> {
    if table.case_kind != CaseKind::Real {
        return Err(Error::InvalidTable("real_bound needs a real-case table".into()));
    }
    bound(table, theta)
}

/// Bound for a table whose defining character is not real valued.
pub fn complex_bound(table: &DecompositionTable, theta: &ClassParameter) -> Result<BoundReport> {
    if table.case_kind != CaseKind::Complex {
        return Err(Error::InvalidTable("complex_bound needs a complex-case table".into()));
    }
    bound(table, theta)
}

/// `theta -> 0` limits `(term1, c)` from the exact expansion
/// `1 - ratio = lambda d1 - mu d1^2`, when every component has one.
fn limits(table: &DecompositionTable) -> Option<(f64, f64)> {
    let (lt, mt) = table.tau.deviation_expansion(table.trace_dim)?;
    let w = weights(table.case_kind);
    let mut sum1 = 0.0;
    let mut curvature = 0.0;
    for c in &table.components {
        let (l, m) = c.deviation_expansion(table.trace_dim)?;
        let m2 = c.multiplicity * c.multiplicity;
        if !c.is_trivial {
            let b = w.bracket_const - l / lt;
            sum1 += m2 * b * b;
        }
        curvature += m2 * (w.fourth_const * mt - w.fourth_slope * m);
    }
    let coeff = -table.deficit_scale * curvature / (PI * lt);
    Some((w.prefactor * sum1.sqrt(), coeff))
}

/// Increment moments `E(W'-W)^2`, `E(W'-W)^4` and the conditional variance.
pub fn moments(table: &DecompositionTable, theta: &ClassParameter) -> Result<MomentReport> {
    table.validate()?;
    let a = table.a(theta);
    check_a(a, None)?;
    let w = weights(table.case_kind);
    let devs = table.deviations(theta);
    let mut e4 = 0.0;
    let mut condvar = 0.0;
    for (c, dev) in table.components.iter().zip(&devs) {
        let m2 = c.multiplicity * c.multiplicity;
        e4 += m2 * (w.fourth_const * a - w.fourth_slope * dev);
        if !c.is_trivial {
            // 1 + r_phi - 2 r_tau
            let d = 2.0 * a - dev;
            condvar += m2 * d * d;
        }
    }
    Ok(MomentReport { a, e2: 2.0 * a, e4, condvar: w.prefactor * w.prefactor * condvar })
}

/// Multiplicities `m_phi(tau^r)` keyed by component label.
pub type MultiplicityMap = BTreeMap<Signature, f64>;

fn binomial(k: usize, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64)
}

/// `E(W'-W)^k` as the alternating sum over `r` of
/// `(-1)^{k-r} C(k, r) sum_phi m_phi(tau^r) m_phi(tau^{k-r}) ratio_phi`,
/// with the factor `2^{-k/2}` in the complex case.
pub fn kth_moment(
    mult_tables: &[MultiplicityMap],
    ratios: &BTreeMap<Signature, f64>,
    k: usize,
    case: CaseKind,
) -> Result<f64> {
    if k % 2 != 0 {
        return Err(Error::InvalidParameter(format!("moment order {k} must be even")));
    }
    if mult_tables.len() <= k {
        return Err(Error::MissingMultiplicityTable(mult_tables.len()));
    }
    let mut total = 0.0;
    for r in 0..=k {
        let sign = if (k - r) % 2 == 0 { 1.0 } else { -1.0 };
        let mut inner = 0.0;
        for (label, m) in &mult_tables[r] {
            let Some(other) = mult_tables[k - r].get(label) else { continue };
            let ratio = ratios.get(label).ok_or_else(|| Error::UnknownComponent(label.to_string()))?;
            inner += m * other * ratio;
        }
        total += sign * binomial(k, r) * inner;
    }
    Ok(match case {
        CaseKind::Real => total,
        CaseKind::Complex => total / 2f64.powi(k as i32 / 2),
    })
}

/// Ratios of every component of the table, of `tau`, and (complex case) of
/// the conjugate of `tau`.
pub fn table_ratios(table: &DecompositionTable, theta: &ClassParameter) -> BTreeMap<Signature, f64> {
    let point = table.class_point(theta);
    let mut out: BTreeMap<Signature, f64> = table
        .components
        .iter()
        .map(|c| (c.label.clone(), 1.0 - c.deviation(table.trace_dim, point)))
        .collect();
    let r_tau = 1.0 - table.tau.deviation(table.trace_dim, point);
    out.insert(table.tau.label.clone(), r_tau);
    if table.case_kind == CaseKind::Complex {
        out.insert(table.tau.label.dual(), r_tau);
    }
    out
}

/// Multiplicity maps for `r = 0..=4` derived from a table: `tau^0`, `tau`,
/// the table itself, and the entries of `tau^3`, `tau^4` that pair with
/// `tau` and the trivial component.
pub fn moment_tables(table: &DecompositionTable) -> Result<Vec<MultiplicityMap>> {
    let trivial = table
        .trivial()
        .ok_or_else(|| Error::InvalidTable("table has no trivial component".into()))?
        .label
        .clone();
    let fourth: f64 = table.components.iter().map(|c| c.multiplicity * c.multiplicity).sum();
    let tau = table.tau.label.clone();
    let single = |entries: Vec<(Signature, f64)>| entries.into_iter().collect::<MultiplicityMap>();
    let (first, third) = match table.case_kind {
        CaseKind::Real => (single(vec![(tau.clone(), 1.0)]), single(vec![(tau, fourth)])),
        CaseKind::Complex => (
            single(vec![(tau.clone(), 1.0), (tau.dual(), 1.0)]),
            single(vec![(tau.clone(), 0.5 * fourth), (tau.dual(), 0.5 * fourth)]),
        ),
    };
    Ok(vec![
        single(vec![(trivial.clone(), 1.0)]),
        first,
        table.components.iter().map(|c| (c.label.clone(), c.multiplicity)).collect(),
        third,
        single(vec![(trivial, fourth)]),
    ])
}

/// The published bound of each family.
pub fn stated_bound(family: Family, n: usize) -> f64 {
    let nf = n as f64;
    match family {
        Family::Usp | Family::SoOdd => SQRT_2 / nf,
        Family::OEven => SQRT_2 / (nf - 1.0),
        Family::U => 2.0 / (nf - 1.0),
        Family::Sphere => 2.0 * SQRT_2 / (nf - 1.0),
        Family::Coe | Family::Cse => 4.0 / nf,
    }
}

/// Closed form of the `theta -> 0` limit of the first error term.
pub fn closed_form_limit(family: Family, n: usize) -> f64 {
    let nf = n as f64;
    match family {
        Family::Usp => 2.0 * SQRT_2 / (2.0 * nf + 1.0),
        Family::SoOdd => SQRT_2 / nf,
        Family::OEven => 8f64.sqrt() / (2.0 * nf - 1.0),
        Family::U => 2.0 * (nf * nf + 2.0).sqrt() / (nf * nf - 1.0),
        Family::Sphere => 2.0 * SQRT_2 / ((nf - 1.0) * (nf + 2.0)).sqrt(),
        Family::Coe => {
            let num = nf.powi(3) + 2.0 * nf * nf + 5.0 * nf + 6.0;
            let den = nf.powi(3) + 4.0 * nf * nf + nf - 6.0;
            (8.0 * num / den).sqrt() / nf
        }
        Family::Cse => {
            let num = 4.0 * nf.powi(3) - 4.0 * nf * nf + 5.0 * nf - 3.0;
            let den = 4.0 * nf.powi(3) - 8.0 * nf * nf + nf + 3.0;
            (8.0 * num / den).sqrt() / (2.0 * nf)
        }
    }
}

/// Closed form of `c` in `term2 ~ (c (1 - cos theta))^{1/4}`.
pub fn closed_form_coeff_term2(family: Family, n: usize) -> f64 {
    let nf = n as f64;
    match family {
        Family::Usp => 24.0 / (PI * (2.0 * nf + 1.0)),
        Family::SoOdd => 12.0 * (2.0 * nf + 1.0) / (PI * nf * (2.0 * nf + 3.0)),
        Family::OEven => 24.0 * nf / (PI * (nf + 1.0) * (2.0 * nf - 1.0)),
        Family::U => 12.0 * (2.0 * nf - 1.0) / (PI * (nf * nf - 1.0)),
        Family::Sphere => 12.0 * nf / (PI * (nf + 2.0)),
        Family::Coe => 24.0 * (nf + 1.0).powi(2) / (PI * nf * nf * (nf + 3.0)),
        Family::Cse => 6.0 * (2.0 * nf - 1.0) * (4.0 * nf - 5.0) / (PI * nf * nf * (2.0 * nf - 3.0)),
    }
}

/// Limits of a built-in table, cross-checked by Richardson extrapolation.
pub fn limit_report(table: &DecompositionTable) -> Result<LimitReport> {
    let family = table
        .family
        .ok_or_else(|| Error::UnsupportedFamily("limit report needs a built-in family".into()))?;
    let (exact_limit, coeff) = limits(table)
        .ok_or_else(|| Error::InvalidTable("table lacks small-angle expansions".into()))?;
    let LimitEstimate { value, error } = numeric_limit(
        |t| {
            let theta = ClassParameter::new(t)?;
            Ok(bound(table, &theta)?.term1)
        },
        &[1e-2, 1e-3, 1e-4],
    )?;
    Ok(LimitReport {
        family,
        n: table.n,
        exact_limit,
        richardson_limit: value,
        richardson_error: error,
        closed_form_limit: closed_form_limit(family, table.n),
        stated_bound: stated_bound(family, table.n),
        limit_coeff_term2: coeff,
        closed_form_coeff_term2: closed_form_coeff_term2(family, table.n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{table, IrrepComponent, Ratio, SpaceKind};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn theta(t: f64) -> ClassParameter {
        ClassParameter::new(t).unwrap()
    }

    /// A real table whose `tau` has ratio `1 - a` and a single nontrivial
    /// component with the given ratio.
    fn synthetic(a: f64, ratio: f64) -> DecompositionTable {
        let fixed = |label: Vec<i64>, value: f64| IrrepComponent {
            label: Signature::new(label).unwrap(),
            multiplicity: 1.0,
            dim: 1.0,
            is_trivial: false,
            expansion_coeff: None,
            ratio: Ratio::Fixed { value },
        };
        let mut trivial = fixed(vec![0], 1.0);
        trivial.is_trivial = true;
        DecompositionTable {
            family: None,
            n: 1,
            case_kind: CaseKind::Real,
            space_kind: SpaceKind::Group,
            alpha_param: None,
            trace_dim: 1.0,
            deficit_scale: 2.0,
            tau: fixed(vec![1], 1.0 - a),
            components: vec![trivial, fixed(vec![2], ratio)],
        }
    }

    #[test]
    fn synthetic_tables() {
        let t = synthetic(0.3, 0.7);
        let r = real_bound(&t, &theta(1.0)).unwrap();
        assert_relative_eq!(r.term1, 1.0, epsilon = 1e-15);
        assert_relative_eq!(r.term2, (10.0 / PI).powf(0.25), epsilon = 1e-15);
        assert!(r.limit_term1.is_none());
        let t = synthetic(0.3, 1.0 - 0.6);
        assert!(real_bound(&t, &theta(1.0)).unwrap().term1.abs() < 1e-15);
    }

    #[test]
    fn inconsistent_table_has_negative_radicand() {
        let t = synthetic(0.1, -1.0);
        assert!(matches!(real_bound(&t, &theta(1.0)), Err(Error::NegativeRadicand(_))));
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let mut t = synthetic(0.3, 0.7);
        t.components[0].multiplicity = 2.0;
        assert!(matches!(real_bound(&t, &theta(1.0)), Err(Error::InvalidTable(_))));
        let mut t = synthetic(0.3, 0.7);
        t.components[1].multiplicity = -1.0;
        assert!(real_bound(&t, &theta(1.0)).is_err());
        let t = synthetic(0.3, 1.5);
        assert!(real_bound(&t, &theta(1.0)).is_err());
        let t = synthetic(0.0, 0.7);
        assert!(matches!(real_bound(&t, &theta(1.0)), Err(Error::AOutOfRange(_))));
        assert!(complex_bound(&synthetic(0.3, 0.7), &theta(1.0)).is_err());
    }

    #[test]
    fn usp_term1_matches_closed_form() {
        for n in [2usize, 3, 7] {
            let t = table(Family::Usp, n).unwrap();
            for th in [0.2f64, 1.0, 2.0] {
                let c = th.cos();
                let r = real_bound(&t, &theta(th)).unwrap();
                let want = 2.0 * (4.0 * c * c - 4.0 * c + 2.0).sqrt() / (2.0 * n as f64 + 1.0);
                assert_relative_eq!(r.term1, want, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn e2_is_twice_a_and_term2_matches_e4() {
        for f in Family::ALL {
            for n in [2usize, 4, 9] {
                let t = table(f, n).unwrap();
                for th in [0.1, 0.7, 1.3] {
                    let p = theta(th);
                    let m = moments(&t, &p).unwrap();
                    assert_eq!(m.e2, 2.0 * t.a(&p));
                    if m.a <= 1.0 {
                        let b = bound(&t, &p).unwrap();
                        assert_relative_eq!(b.term2, (m.e4 / (PI * m.a)).powf(0.25), max_relative = 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn kth_moment_agrees_with_closed_moments() {
        for f in Family::ALL {
            for n in [2usize, 3, 6] {
                let t = table(f, n).unwrap();
                let tabs = moment_tables(&t).unwrap();
                for th in [0.3, 1.1, 2.8] {
                    let p = theta(th);
                    let ratios = table_ratios(&t, &p);
                    let m = moments(&t, &p).unwrap();
                    let k2 = kth_moment(&tabs, &ratios, 2, t.case_kind).unwrap();
                    let k4 = kth_moment(&tabs, &ratios, 4, t.case_kind).unwrap();
                    assert!((k2 - m.e2).abs() < 1e-12, "{f} n={n}");
                    assert!((k4 - m.e4).abs() < 1e-12 * (1.0 + m.e4.abs()), "{f} n={n}");
                }
            }
        }
    }

    #[test]
    fn kth_moment_vanishes_at_identity() {
        let t = table(Family::U, 4).unwrap();
        let tabs = moment_tables(&t).unwrap();
        let ones: BTreeMap<Signature, f64> =
            table_ratios(&t, &theta(1.0)).into_keys().map(|k| (k, 1.0)).collect();
        for k in [2, 4] {
            assert!(kth_moment(&tabs, &ones, k, CaseKind::Complex).unwrap().abs() < 1e-12);
        }
        assert!(matches!(
            kth_moment(&tabs[..3], &ones, 4, CaseKind::Complex),
            Err(Error::MissingMultiplicityTable(3))
        ));
    }

    #[test]
    fn limits_match_closed_forms() {
        for f in Family::ALL {
            for n in [2usize, 3, 5, 10, 50, 100] {
                let r = limit_report(&table(f, n).unwrap()).unwrap();
                assert_relative_eq!(r.exact_limit, r.closed_form_limit, max_relative = 1e-12);
                assert_relative_eq!(r.limit_coeff_term2, r.closed_form_coeff_term2, max_relative = 1e-10);
                assert!((r.richardson_limit - r.exact_limit).abs() < 1e-6 * r.exact_limit);
                assert!(r.exact_limit <= r.stated_bound * (1.0 + 1e-12), "{f} n={n}");
            }
        }
    }

    #[test]
    fn term1_converges_to_limit() {
        for f in Family::ALL {
            for n in [2usize, 7, 40, 100] {
                let t = table(f, n).unwrap();
                let b = bound(&t, &theta(1e-4)).unwrap();
                let limit = b.limit_term1.unwrap();
                assert!((b.term1 - limit).abs() < 1e-6 * limit, "{f} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn bounds_are_even_and_periodic(th in 0.01f64..3.1, n in 2usize..15) {
            for f in [Family::Usp, Family::SoOdd, Family::OEven, Family::Sphere] {
                let t = table(f, n).unwrap();
                if t.a(&theta(th)) > 1.0 {
                    continue;
                }
                let b = bound(&t, &theta(th)).unwrap();
                let neg = bound(&t, &theta(-th)).unwrap();
                let wrap = bound(&t, &theta(2.0 * PI - th)).unwrap();
                prop_assert!((b.total - neg.total).abs() < 1e-12 * b.total);
                prop_assert!((b.total - wrap.total).abs() < 1e-9 * b.total);
                prop_assert!(b.total >= b.term1 && b.term2 >= 0.0);
            }
        }
    }
}
