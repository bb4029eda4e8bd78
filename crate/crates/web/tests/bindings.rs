use serde_json::Value;
use steinchar_web::{bound_curve, decomposition, sample_histogram};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn bound_curve_reports_limit_and_points() {
    let v = parse(bound_curve("usp", 4, 12).unwrap());
    assert!((v["stated_bound"].as_f64().unwrap() - 2f64.sqrt() / 4.0).abs() < 1e-15);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 12);
    assert!(points.iter().all(|p| p["total"].as_f64().unwrap() > p["term1"].as_f64().unwrap()));
}

#[test]
fn bound_curve_skips_undefined_classes() {
    let v = parse(bound_curve("u", 2, 10).unwrap());
    let thetas: Vec<f64> = v["points"].as_array().unwrap().iter().map(|p| p["theta"].as_f64().unwrap()).collect();
    assert!(!thetas.is_empty() && thetas.len() < 10);
}

#[test]
fn histogram_integrates_to_sample_fraction() {
    let v = parse(sample_histogram("coe", 5, 20_000, 7, 16).unwrap());
    let edges = v["edges"].as_array().unwrap();
    let density = v["density"].as_array().unwrap();
    assert_eq!(edges.len(), 17);
    let mass: f64 = density.iter().map(|d| d.as_f64().unwrap() * 0.5).sum();
    assert!(mass > 0.99 && mass <= 1.0 + 1e-12);
    assert_eq!(v["kolmogorov"]["passed"], Value::Bool(true));
}

#[test]
fn decomposition_lists_components() {
    let v = parse(decomposition("u", 3, 1.0).unwrap());
    assert_eq!(v["components"].as_array().unwrap().len(), 6);
}
