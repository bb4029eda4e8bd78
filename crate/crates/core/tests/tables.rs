use std::f64::consts::PI;

use approx::assert_relative_eq;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use steinchar::characters::{table, CaseKind, DecompositionTable, IrrepComponent, Ratio, SpaceKind};
use steinchar::family::{ClassParameter, Family};
use steinchar::partitions::{Partition, Signature};
use steinchar::spherical::{jack_dimension, jack_principal_specialization, JackContext};
use steinchar::stein::{bound, limit_report, real_bound};
use steinchar::Error;

fn theta(t: f64) -> ClassParameter {
    ClassParameter::new(t).unwrap()
}

fn ratio_of_tau(t: &DecompositionTable, th: f64) -> f64 {
    1.0 - t.a(&theta(th))
}

#[test]
fn defining_character_ratios_at_sample_classes() {
    assert_relative_eq!(ratio_of_tau(&table(Family::SoOdd, 2).unwrap(), PI / 2.0), 0.6, epsilon = 1e-15);
    assert_relative_eq!(ratio_of_tau(&table(Family::OEven, 3).unwrap(), PI), 1.0 / 3.0, epsilon = 1e-15);
    let usp = table(Family::Usp, 2).unwrap();
    assert_relative_eq!(usp.a(&theta(PI)), 1.0, epsilon = 1e-15);
    assert!(bound(&usp, &theta(PI)).is_ok());
}

#[test]
fn sphere_multiplicity_at_six() {
    let t = table(Family::Sphere, 6).unwrap();
    let m2 = t.components.iter().find(|c| !c.is_trivial).unwrap().multiplicity;
    assert_relative_eq!(m2, (10.0f64 / 8.0).sqrt(), epsilon = 1e-14);
}

#[test]
fn circular_ensemble_trivial_multiplicity_is_two() {
    for family in [Family::U, Family::Coe, Family::Cse] {
        for n in [2, 5, 11] {
            let t = table(family, n).unwrap();
            assert_relative_eq!(t.trivial().unwrap().multiplicity, 2.0, epsilon = 1e-13);
        }
    }
}

#[test]
fn conjugate_components_share_multiplicity_and_ratio() {
    for family in [Family::U, Family::Coe, Family::Cse] {
        let t = table(family, 5).unwrap();
        let report = t.evaluate(&theta(0.8));
        for c in &report.components {
            let dual = report.components.iter().find(|d| d.label == c.label.dual()).unwrap();
            assert_relative_eq!(c.multiplicity, dual.multiplicity, epsilon = 1e-14);
            assert_relative_eq!(c.ratio_at_theta, dual.ratio_at_theta, epsilon = 1e-14);
        }
    }
}

#[test]
fn jack_single_box_values() {
    let one = Partition::new(vec![1]).unwrap();
    for n in [2usize, 3, 7] {
        let nf = n as f64;
        for ctx in [JackContext::coe(n), JackContext::cse(n)] {
            assert_eq!(jack_principal_specialization(&one, &ctx).unwrap().to_f64().unwrap(), nf);
        }
        assert_eq!(jack_dimension(&one, &JackContext::coe(n)).unwrap().to_f64().unwrap(), nf * (nf + 1.0) / 2.0);
        assert_eq!(jack_dimension(&one, &JackContext::cse(n)).unwrap().to_f64().unwrap(), nf * (2.0 * nf - 1.0));
        let two = Partition::new(vec![2]).unwrap();
        let p = jack_principal_specialization(&two, &JackContext::new(Rational64::from_integer(2), n).unwrap()).unwrap();
        assert_relative_eq!(p.to_f64().unwrap(), nf * (nf + 2.0) / 3.0, epsilon = 1e-12);
    }
}

#[test]
fn tables_round_trip_through_json() {
    for family in Family::ALL {
        let t = table(family, 4).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        let back: DecompositionTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
    }
}

fn synthetic(ratio: f64) -> DecompositionTable {
    DecompositionTable {
        family: None,
        n: 1,
        case_kind: CaseKind::Real,
        space_kind: SpaceKind::Group,
        alpha_param: None,
        trace_dim: 1.0,
        deficit_scale: 1.0,
        tau: IrrepComponent {
            label: Signature::new(vec![1]).unwrap(),
            multiplicity: 1.0,
            dim: 1.0,
            is_trivial: false,
            expansion_coeff: None,
            ratio: Ratio::Fixed { value: 0.7 },
        },
        components: vec![
            IrrepComponent::trivial(1, 1.0),
            IrrepComponent {
                label: Signature::new(vec![2]).unwrap(),
                multiplicity: 1.0,
                dim: 1.0,
                is_trivial: false,
                expansion_coeff: None,
                ratio: Ratio::Fixed { value: ratio },
            },
        ],
    }
}

#[test]
fn user_supplied_tables() {
    let r = real_bound(&synthetic(0.7), &theta(1.0)).unwrap();
    assert_relative_eq!(r.a, 0.3, epsilon = 1e-15);
    assert_relative_eq!(r.term1, 1.0, epsilon = 1e-15);
    assert_relative_eq!(r.term2, (10.0 / PI).powf(0.25), epsilon = 1e-15);
    let flat = real_bound(&synthetic(0.4), &theta(1.0)).unwrap();
    assert!(flat.term1.abs() < 1e-15);
    let mut bad = synthetic(0.7);
    bad.components[0].multiplicity = 2.0;
    assert!(matches!(real_bound(&bad, &theta(1.0)), Err(Error::InvalidTable(_))));
}

#[test]
fn precondition_errors() {
    assert!(matches!(table(Family::Coe, 1), Err(Error::SizeTooSmall { min: 2, got: 1 })));
    assert!(matches!(ClassParameter::new(0.0), Err(Error::IdentityClass(_))));
    let u2 = table(Family::U, 2).unwrap();
    assert!(matches!(bound(&u2, &theta(PI)), Err(Error::AOutOfRange(_))));
    assert!(matches!(
        steinchar::stein::complex_bound(&table(Family::Usp, 3).unwrap(), &theta(1.0)),
        Err(Error::InvalidParameter(_)) | Err(Error::InvalidTable(_))
    ));
}

#[test]
fn limit_reports_for_large_n() {
    for family in Family::ALL {
        let r = limit_report(&table(family, 200).unwrap()).unwrap();
        assert!(r.exact_limit <= r.stated_bound * (1.0 + 1e-12));
        assert_relative_eq!(r.exact_limit, r.closed_form_limit, max_relative = 1e-12);
    }
}
