mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use steinchar::oracle::{jack_gram_schmidt, monte_carlo_multiplicity, pieri_least_squares};
use steinchar::stein::{limit_report, moments, stated_bound};
use steinchar::{
    bound, kolmogorov_distance, pair_identity_check, sample_pairs, sample_w, table, ClassParameter,
    Family, KolmogorovReport, PairIdentityReport,
};

use output::{Csv, Format};

const AFTER_HELP: &str = "\
Configuration precedence: command-line flags, then environment variables
(STEINCHAR_FORMAT, STEINCHAR_OUT, STEINCHAR_SEED, STEINCHAR_COUNT), then
built-in defaults.

Families: usp, so-odd, o-even, u, sphere, coe, cse.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
errors or violated preconditions.";

#[derive(Parser)]
#[command(name = "steinchar", version, about = "Normal-approximation bounds for traces of random matrices", after_help = AFTER_HELP)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "STEINCHAR_FORMAT", default_value = "json")]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, env = "STEINCHAR_OUT")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilySize {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, env = "STEINCHAR_COUNT", default_value_t = 200_000)]
    count: usize,
    #[arg(long, env = "STEINCHAR_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Error terms of the bound at one class, or the theta -> 0 limit.
    Bound {
        #[command(flatten)]
        target: FamilySize,
        /// Class angle; omitted implies --limit.
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        /// Report the theta -> 0 limit and the stated bound.
        #[arg(long)]
        limit: bool,
    },
    /// Sample W, compare its Kolmogorov distance plus the DKW band with the
    /// stated bound, and optionally check the exchangeable-pair identities.
    Verify {
        #[command(flatten)]
        target: FamilySize,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = steinchar::DEFAULT_DELTA)]
        delta: f64,
        /// Also draw exchangeable pairs at this class angle.
        #[arg(long)]
        theta: Option<f64>,
        /// Standard errors allowed in the pair checks.
        #[arg(long, default_value_t = 3.0)]
        max_z: f64,
    },
    /// Draw W, or pairs (W, W') when --theta is given.
    Sample {
        #[command(flatten)]
        target: FamilySize,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long)]
        theta: Option<f64>,
    },
    /// Decomposition table evaluated at one class angle.
    Decompose {
        #[command(flatten)]
        target: FamilySize,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        theta: f64,
    },
    /// Independent recomputation of the table coefficients.
    Oracle {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, env = "STEINCHAR_COUNT", default_value_t = 100_000)]
        count: usize,
        #[arg(long, env = "STEINCHAR_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Stated bounds and exact limits of every family for a list of sizes.
    Table {
        #[arg(long, value_delimiter = ',', default_value = "2,5,10,50")]
        n: Vec<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    GramSchmidt,
    Pieri,
    Multiplicity,
    All,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: steinchar::Error| e.to_string())
}

enum Failure {
    Usage(String),
}

impl From<steinchar::Error> for Failure {
    fn from(e: steinchar::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Emitted {
    json: serde_json::Value,
    csv: Csv,
    passed: bool,
}

fn emit<T: Serialize>(value: &T, csv: Csv, passed: bool) -> Result<Emitted, Failure> {
    let json = serde_json::to_value(value).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(Emitted { json, csv, passed })
}

fn theta_param(theta: f64) -> Result<ClassParameter, Failure> {
    Ok(ClassParameter::new(theta)?)
}

#[derive(Serialize)]
struct VerifyReport {
    family: Family,
    n: usize,
    count: usize,
    seed: u64,
    stated_bound: f64,
    kolmogorov: KolmogorovReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairs: Option<PairIdentityReport>,
    passed: bool,
}

#[derive(Serialize)]
struct OracleCheck {
    name: String,
    expected: f64,
    observed: f64,
    tolerance: f64,
    passed: bool,
}

#[derive(Serialize)]
struct TableRow {
    family: Family,
    n: usize,
    stated_bound: f64,
    exact_limit: f64,
}

fn run_bound(target: &FamilySize, theta: Option<f64>, limit: bool) -> Result<Emitted, Failure> {
    let t = table(target.family, target.n)?;
    match theta {
        Some(th) if !limit => {
            let r = bound(&t, &theta_param(th)?)?;
            let csv = Csv::record(
                &["family", "n", "theta", "a", "term1", "term2", "total"],
                vec![
                    r.family.map_or(String::new(), |f| f.to_string()),
                    r.n.to_string(),
                    output::float(r.theta),
                    output::float(r.a),
                    output::float(r.term1),
                    output::float(r.term2),
                    output::float(r.total),
                ],
            );
            emit(&r, csv, true)
        }
        _ => {
            let r = limit_report(&t)?;
            let csv = Csv::record(
                &["family", "n", "stated_bound", "exact_limit", "richardson_limit", "closed_form_limit", "limit_coeff_term2"],
                vec![
                    r.family.to_string(),
                    r.n.to_string(),
                    output::float(r.stated_bound),
                    output::float(r.exact_limit),
                    output::float(r.richardson_limit),
                    output::float(r.closed_form_limit),
                    output::float(r.limit_coeff_term2),
                ],
            );
            emit(&r, csv, true)
        }
    }
}

fn run_verify(
    target: &FamilySize,
    sampling: &Sampling,
    delta: f64,
    theta: Option<f64>,
    max_z: f64,
) -> Result<Emitted, Failure> {
    let t = table(target.family, target.n)?;
    let stated = stated_bound(target.family, target.n);
    let batch = sample_w(target.family, target.n, sampling.count, sampling.seed)?;
    let kolmogorov = kolmogorov_distance(&batch.values, stated, delta)?;
    let pairs = match theta {
        Some(th) => {
            let p = theta_param(th)?;
            let m = moments(&t, &p)?;
            let batch = sample_pairs(target.family, target.n, &p, sampling.count, sampling.seed)?;
            Some(pair_identity_check(&batch.pairs, m.a, m.e4, max_z)?)
        }
        None => None,
    };
    let passed = kolmogorov.passed && pairs.is_none_or(|p| p.passed);
    let report = VerifyReport {
        family: target.family,
        n: target.n,
        count: sampling.count,
        seed: sampling.seed,
        stated_bound: stated,
        kolmogorov,
        theta: theta.map(|th| ClassParameter::new(th).map_or(th, |p| p.theta())),
        pairs,
        passed,
    };
    let mut header = vec!["family", "n", "count", "seed", "stated_bound", "d_stat", "dkw_epsilon"];
    let mut row = vec![
        report.family.to_string(),
        report.n.to_string(),
        report.count.to_string(),
        report.seed.to_string(),
        output::float(stated),
        output::float(kolmogorov.d_stat),
        output::float(kolmogorov.dkw_epsilon),
    ];
    if let Some(p) = pairs {
        header.extend(["slope", "slope_expected", "second_moment", "second_expected", "fourth_moment", "fourth_expected"]);
        for c in [p.slope, p.second_moment, p.fourth_moment] {
            row.push(output::float(c.observed));
            row.push(output::float(c.expected));
        }
    }
    header.push("passed");
    row.push(passed.to_string());
    emit(&report, Csv::record(&header, row), passed)
}

fn run_sample(target: &FamilySize, sampling: &Sampling, theta: Option<f64>) -> Result<Emitted, Failure> {
    match theta {
        Some(th) => {
            let batch = sample_pairs(target.family, target.n, &theta_param(th)?, sampling.count, sampling.seed)?;
            let rows = batch.pairs.iter().map(|(w, w2)| vec![output::float(*w), output::float(*w2)]).collect();
            emit(&batch, Csv::new(&["w", "w_prime"], rows), true)
        }
        None => {
            let batch = sample_w(target.family, target.n, sampling.count, sampling.seed)?;
            let rows = batch.values.iter().map(|w| vec![output::float(*w)]).collect();
            emit(&batch, Csv::new(&["w"], rows), true)
        }
    }
}

fn run_decompose(target: &FamilySize, theta: f64) -> Result<Emitted, Failure> {
    let t = table(target.family, target.n)?;
    let report = t.evaluate(&theta_param(theta)?);
    let rows = std::iter::once(("tau", &report.tau))
        .chain(report.components.iter().map(|c| ("component", c)))
        .map(|(role, c)| {
            vec![
                role.to_string(),
                c.label.to_string(),
                output::float(c.multiplicity),
                output::float(c.dim),
                c.is_trivial.to_string(),
                output::float(c.ratio_at_theta),
            ]
        })
        .collect();
    let csv = Csv::new(&["role", "label", "multiplicity", "dim", "is_trivial", "ratio_at_theta"], rows);
    emit(&report, csv, true)
}

fn run_oracle(suite: Suite, n: usize, count: usize, seed: u64) -> Result<Emitted, Failure> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::GramSchmidt | Suite::All) {
        for (beta, alpha) in [(1.0, 2.0), (4.0, 0.5), (2.0, 1.0)] {
            for vars in [2, 3] {
                let r = jack_gram_schmidt(vars, beta, 40)?;
                let expected = 2.0 / (alpha + 1.0);
                checks.push(OracleCheck {
                    name: format!("gram-schmidt beta={beta} vars={vars}"),
                    expected,
                    observed: r.c,
                    tolerance: 1e-6,
                    passed: (r.c - expected).abs() <= 1e-6,
                });
            }
        }
    }
    if matches!(suite, Suite::Pieri | Suite::All) {
        for family in [Family::U, Family::Coe, Family::Cse] {
            let r = pieri_least_squares(family, n, 60, seed)?;
            for ((label, observed), expected) in r.labels.iter().zip(&r.coefficients).zip(&r.table_coefficients) {
                checks.push(OracleCheck {
                    name: format!("pieri {family} n={n} {label}"),
                    expected: *expected,
                    observed: *observed,
                    tolerance: 1e-8,
                    passed: (observed - expected).abs() <= 1e-8 && r.residual < 1e-8,
                });
            }
        }
    }
    if matches!(suite, Suite::Multiplicity | Suite::All) {
        for family in Family::ALL {
            let t = table(family, n)?;
            for c in &t.components {
                let e = monte_carlo_multiplicity(family, n, &c.label, 2, count, seed)?;
                let tolerance = 3.0 * e.std_error;
                checks.push(OracleCheck {
                    name: format!("multiplicity {family} n={n} {}", c.label),
                    expected: c.multiplicity,
                    observed: e.estimate,
                    tolerance,
                    passed: (e.estimate - c.multiplicity).abs() <= tolerance.max(1e-12),
                });
            }
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                output::float(c.expected),
                output::float(c.observed),
                output::float(c.tolerance),
                c.passed.to_string(),
            ]
        })
        .collect();
    emit(&checks, Csv::new(&["name", "expected", "observed", "tolerance", "passed"], rows), passed)
}

fn run_table(sizes: &[usize]) -> Result<Emitted, Failure> {
    let mut rows = Vec::new();
    for &n in sizes {
        for family in Family::ALL {
            let r = limit_report(&table(family, n)?)?;
            rows.push(TableRow { family, n, stated_bound: r.stated_bound, exact_limit: r.exact_limit });
        }
    }
    let csv_rows = rows
        .iter()
        .map(|r| vec![r.family.to_string(), r.n.to_string(), output::float(r.stated_bound), output::float(r.exact_limit)])
        .collect();
    emit(&rows, Csv::new(&["family", "n", "stated_bound", "exact_limit"], csv_rows), true)
}

fn run(cli: &Cli) -> Result<Emitted, Failure> {
    match &cli.command {
        Command::Bound { target, theta, limit } => run_bound(target, *theta, *limit),
        Command::Verify { target, sampling, delta, theta, max_z } => {
            run_verify(target, sampling, *delta, *theta, *max_z)
        }
        Command::Sample { target, sampling, theta } => run_sample(target, sampling, *theta),
        Command::Decompose { target, theta } => run_decompose(target, *theta),
        Command::Oracle { suite, n, count, seed } => run_oracle(*suite, *n, *count, *seed),
        Command::Table { n } => run_table(n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emitted = match run(&cli) {
        Ok(e) => e,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.format {
        Format::Json => output::json(&emitted.json),
        Format::Csv => emitted.csv.render(),
    };
    if let Err(e) = output::write(cli.out.as_deref(), &text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if emitted.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
