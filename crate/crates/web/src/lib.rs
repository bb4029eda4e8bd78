//! Browser bindings: bound curves, sample histograms with a Kolmogorov
//! check, and decomposition tables. Every function returns a JSON string.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use steinchar::stein::{limit_report, stated_bound};
use steinchar::{
    bound, kolmogorov_distance, sample_w, table, BoundReport, ClassParameter, Family, KolmogorovReport,
    DEFAULT_DELTA,
};

fn to_js<T: Serialize>(value: &T) -> Result<String, JsValue> {
    serde_json::to_string(value).map_err(|e| JsValue::from_str(&e.to_string()))
}

fn err(e: steinchar::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn family(name: &str) -> Result<Family, JsValue> {
    name.parse::<Family>().map_err(err)
}

#[derive(Serialize)]
struct BoundCurve {
    stated_bound: f64,
    exact_limit: f64,
    points: Vec<BoundReport>,
}

/// Bound reports at `points` values of theta evenly spaced in `(0, pi]`,
/// skipping classes where the bound is undefined, with the theta -> 0 limit.
#[wasm_bindgen]
pub fn bound_curve(family_name: &str, n: usize, points: usize) -> Result<String, JsValue> {
    let t = table(family(family_name)?, n).map_err(err)?;
    let limit = limit_report(&t).map_err(err)?;
    let points = points.max(1);
    let curve = (1..=points)
        .filter_map(|i| {
            let theta = std::f64::consts::PI * i as f64 / points as f64;
            ClassParameter::new(theta).ok().and_then(|p| bound(&t, &p).ok())
        })
        .collect();
    to_js(&BoundCurve { stated_bound: limit.stated_bound, exact_limit: limit.exact_limit, points: curve })
}

#[derive(Serialize)]
struct Histogram {
    edges: Vec<f64>,
    density: Vec<f64>,
    normal_density: Vec<f64>,
    kolmogorov: KolmogorovReport,
}

/// Histogram of `count` draws of `W` on `[-4, 4]`, with the Kolmogorov
/// distance to the standard normal compared against the stated bound.
#[wasm_bindgen]
pub fn sample_histogram(family_name: &str, n: usize, count: usize, seed: u64, bins: usize) -> Result<String, JsValue> {
    let f = family(family_name)?;
    let bins = bins.max(1);
    let batch = sample_w(f, n, count, seed).map_err(err)?;
    let kolmogorov = kolmogorov_distance(&batch.values, stated_bound(f, n), DEFAULT_DELTA).map_err(err)?;
    let (lo, hi) = (-4.0, 4.0);
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &w in &batch.values {
        if (lo..hi).contains(&w) {
            counts[((w - lo) / width) as usize] += 1;
        }
    }
    let edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
    let density = counts.iter().map(|&c| c as f64 / (count as f64 * width)).collect();
    let normal_density = (0..bins)
        .map(|i| {
            let x = lo + width * (i as f64 + 0.5);
            (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
        })
        .collect();
    to_js(&Histogram { edges, density, normal_density, kolmogorov })
}

/// The decomposition table of a family evaluated at `theta`.
#[wasm_bindgen]
pub fn decomposition(family_name: &str, n: usize, theta: f64) -> Result<String, JsValue> {
    let t = table(family(family_name)?, n).map_err(err)?;
    to_js(&t.evaluate(&ClassParameter::new(theta).map_err(err)?))
}
