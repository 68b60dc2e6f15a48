//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use qhankel::asym::{
    constants_report, decay_experiment, exponent_sum_constant, exponent_sum_constant_closed, threshold,
    threshold_closed_form, weighted_exponent_report, DecayReport,
};
use qhankel::exact::{parse_rational, BigFloat};
use qhankel::suites::{run_suite, SuiteConfig, SuiteReport};
use qhankel::{Error, Exec, Rational, Result};

const EXEC: Exec = Exec::Parallel;

struct Outcome {
    passed: bool,
    summary: String,
}

fn rat(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn decimal(s: &str) -> Rational {
    let (i, f) = s.split_once('.').unwrap_or((s, ""));
    Rational::new(format!("{i}{f}").parse::<BigInt>().unwrap(), num_traits::pow(BigInt::from(10), f.len()))
}

fn within(x: &BigFloat, target: &str, tol: &str) -> bool {
    x.within(&decimal(target), &rat(tol))
}

fn suite(name: &str) -> Result<SuiteReport> {
    run_suite(name, &SuiteConfig::default(), EXEC)
}

fn suite_summary(r: &SuiteReport) -> String {
    match &r.first_failure {
        None => format!("{}: {} checks", r.suite, r.checks),
        Some(f) => format!("{}: first failure {} (lhs {}, rhs {})", r.suite, f.identity, f.lhs, f.rhs),
    }
}

fn thresholds() -> Result<Outcome> {
    let expected = [(2, true, "3.27694460"), (2, false, "9.43194241"), (1, true, "1.53237645"), (1, false, "1.80828115")];
    let mut passed = true;
    let mut shown = Vec::new();
    for (d, lz, value) in expected {
        let g = threshold(d, lz, 128)?;
        let h = threshold_closed_form(d, lz, 128)?;
        passed &= within(&g, value, "1/100000000") && within(&h, value, "1/100000000");
        shown.push(format!("{:.9}", g.to_f64()));
    }
    passed &= matches!(threshold(3, true, 128), Err(Error::DegreeExcluded(3)));
    passed &= constants_report(128)?.passed();
    Ok(Outcome { passed, summary: format!("thresholds {}", shown.join(", ")) })
}

fn constant_identity() -> Result<Outcome> {
    let lhs = exponent_sum_constant(128)?;
    let rhs = exponent_sum_constant_closed(128)?;
    let diff = lhs.sub(&rhs);
    let passed = diff.within(&rat("0"), &rat("1/1000000000000"));
    Ok(Outcome { passed, summary: format!("both sides {:.15}, |difference| <= {:.1e}", lhs.to_f64(), diff.abs_upper().to_f64()) })
}

fn operator_identities() -> Result<Outcome> {
    let a = suite("lemma-dl")?;
    let b = suite("operator-relation")?;
    Ok(Outcome { passed: a.passed && b.passed, summary: format!("{}; {}", suite_summary(&a), suite_summary(&b)) })
}

fn leading_terms() -> Result<Outcome> {
    let r = suite("leading")?;
    let rows = r.details["rows"].as_array().cloned().unwrap_or_default();
    let exact = rows.iter().all(|row| row["q_order_equals_e0"] == true);
    Ok(Outcome { passed: r.passed && exact && !rows.is_empty(), summary: format!("{}, q-order = e0 in all {} rows: {exact}", suite_summary(&r), rows.len()) })
}

fn plain(name: &str) -> Result<Outcome> {
    let r = suite(name)?;
    Ok(Outcome { passed: r.passed && r.checks > 0, summary: suite_summary(&r) })
}

fn lambda_one_pattern() -> Result<Outcome> {
    let r = suite("conjecture-lambda1")?;
    let verdict = r.details["conjecture"].as_str().unwrap_or("missing").to_string();
    Ok(Outcome { passed: verdict == "agreed", summary: format!("conjecture: {verdict} for n = 2..8") })
}

fn weighted_sum() -> Result<Outcome> {
    let rep = weighted_exponent_report(&[1_000, 10_000], EXEC)?;
    let target = 0.05301135;
    let dev = |i: usize| ((rep.rows[i].ratio - target) / target).abs();
    let passed = dev(1) < 0.03 && dev(1) < dev(0);
    Ok(Outcome {
        passed,
        summary: format!("ratio {:.9} at 10^3, {:.9} at 10^4; deviations {:.2e}, {:.2e}", rep.rows[0].ratio, rep.rows[1].ratio, dev(0), dev(1)),
    })
}

fn ratio_range(rep: &DecayReport, lo: f64, hi: f64) -> (bool, f64, f64) {
    let rows: Vec<_> = rep.rows.iter().filter(|r| r.n >= 16).collect();
    let ok = rows.iter().all(|r| r.ratio - r.ratio_err >= lo && r.ratio + r.ratio_err <= hi);
    let min = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let max = rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    (ok, min, max)
}

fn decay() -> Result<Outcome> {
    let zero = decay_experiment(&rat("2"), &rat("1"), &rat("0"), 24, None, EXEC)?;
    let half = decay_experiment(&rat("2"), &rat("1"), &rat("1/2"), 24, None, EXEC)?;
    let (in_range0, min0, max0) = ratio_range(&zero, 0.25, 0.60);
    let (in_range1, min1, max1) = ratio_range(&half, 0.14, 0.45);
    let positive = zero.rows.iter().all(|r| r.positive);
    let certified = zero.rows.iter().chain(&half.rows).all(|r| r.log_err < 0.5);
    let (r16, r24) = (zero.row(16).unwrap(), zero.row(24).unwrap());
    let increasing = r24.ratio - r24.ratio_err > r16.ratio + r16.ratio_err;
    let passed = in_range0 && in_range1 && positive && certified && increasing;
    Ok(Outcome {
        passed,
        summary: format!(
            "lambda=0: ratios in [{min0:.4}, {max0:.4}] {}, V_n > 0 {positive}, ratio(24) = {:.6} vs ratio(16) = {:.6} increasing {increasing}; lambda=1/2: ratios in [{min1:.4}, {max1:.4}] {}",
            if in_range0 { "inside [0.25, 0.60]" } else { "outside [0.25, 0.60]" },
            r24.ratio,
            r16.ratio,
            if in_range1 { "inside [0.14, 0.45]" } else { "outside [0.14, 0.45]" },
        ),
    })
}

type Check = fn() -> Result<Outcome>;

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, Check); 13] = [
        (1, "thresholds", Duration::from_secs(1), thresholds),
        (2, "constant identity", Duration::from_secs(1), constant_identity),
        (3, "difference operator identities", Duration::from_secs(60), operator_identities),
        (4, "q-order and leading coefficients", Duration::from_secs(600), leading_terms),
        (5, "cyclotomic divisibility", Duration::from_secs(600), || plain("cyclotomic")),
        (6, "w divisibility", Duration::from_secs(300), || plain("w-divisibility")),
        (7, "K_n determinant vs recurrence", Duration::from_secs(60), || plain("kdet")),
        (8, "degree bounds", Duration::from_secs(600), || plain("degree-bounds")),
        (9, "lambda = 1 exponent pattern", Duration::from_secs(600), lambda_one_pattern),
        (10, "weighted exponent sum", Duration::from_secs(60), weighted_sum),
        (11, "decay of |V_n|", Duration::from_secs(900), decay),
        (12, "Kronecker scan", Duration::from_secs(60), || plain("kronecker")),
        (13, "numeric/symbolic coherence", Duration::from_secs(60), || plain("numeric-coherence")),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (passed, summary) = match outcome {
            Ok(o) => (o.passed && elapsed <= limit, o.summary),
            Err(e) => (false, format!("error: {e}")),
        };
        let status = if passed { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {status} {name} [{:.2} s, limit {} s]: {summary}", elapsed.as_secs_f64(), limit.as_secs());
        if !passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 13 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
