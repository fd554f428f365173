//! Identity sweeps behind `eulerian verify`, `descent verify` and
//! `verify --all`. Every check is exact; a report lists each mismatch with
//! the expected and actual values.

use eulerspline::descent::{self, DescentRoute};
use eulerspline::eulerian::{
    self, RefinedRoute, DEFAULT_MAX_REFINED_DEGREE, DEFAULT_MAX_SYMMETRIC_DEGREE,
};
use eulerspline::geometry;
use eulerspline::numcore::{
    binomial, factorial, format_rational, natural_to_rational, rat, Rational,
};
use eulerspline::splinecore::{self, SplineOrder};
use eulerspline::Natural;
use serde_json::{json, Value};

/// Outcome of one named suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: String,
    pub cases_run: u64,
    pub cases_failed: u64,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    pub expected: String,
    pub actual: String,
}

impl VerifyReport {
    fn new(suite: &str) -> Self {
        VerifyReport {
            suite: suite.to_string(),
            cases_run: 0,
            cases_failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, case: impl FnOnce() -> String, expected: String, actual: String) {
        self.cases_run += 1;
        if expected != actual {
            self.cases_failed += 1;
            self.failures.push(Failure {
                case: case(),
                expected,
                actual,
            });
        }
    }

    fn check_rational(
        &mut self,
        case: impl FnOnce() -> String,
        expected: &Rational,
        actual: &Rational,
    ) {
        self.check(case, format_rational(expected), format_rational(actual));
    }

    fn check_result<T: ToString>(
        &mut self,
        case: impl FnOnce() -> String,
        expected: &str,
        actual: eulerspline::Result<T>,
    ) {
        let actual = match actual {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        self.check(case, expected.to_string(), actual);
    }

    /// Records a non-negativity condition.
    fn check_nonnegative(&mut self, case: impl FnOnce() -> String, value: &Rational) {
        self.cases_run += 1;
        if value < &Rational::from_integer(0.into()) {
            self.cases_failed += 1;
            self.failures.push(Failure {
                case: case(),
                expected: ">= 0".into(),
                actual: format_rational(value),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.cases_failed == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "cases_run": self.cases_run,
            "cases_failed": self.cases_failed,
            "failures": self.failures.iter().map(|f| json!({
                "case": f.case,
                "expected": f.expected,
                "actual": f.actual,
            })).collect::<Vec<_>>(),
        })
    }
}

fn rows_text(values: &[Natural]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Spline identities for orders `1..=d_max + 1` on the grid `m/7`.
pub fn bspline_suite(d_max: u32) -> VerifyReport {
    let mut r = VerifyReport::new("bspline");
    let zero = rat(0);
    for d in 1..=d_max + 1 {
        let order = SplineOrder::new(d).expect("positive order");
        for m in -7..=(d as i64 + 1) * 7 {
            let x = Rational::new(m.into(), 7.into());
            r.check_rational(
                || format!("explicit=recurrence d={d} x={}", format_rational(&x)),
                &splinecore::bspline_eval_explicit(order, &x),
                &splinecore::bspline_eval_recurrence(order, &x),
            );
            r.check_rational(
                || format!("partition d={d} x={}", format_rational(&x)),
                &zero,
                &splinecore::partition_residual(order, &x),
            );
            if d >= 2 {
                r.check_rational(
                    || format!("two-scale d={d} x={}", format_rational(&x)),
                    &zero,
                    &splinecore::two_scale_residual(order, &x),
                );
            }
        }
        for k in 1..=d as i64 {
            r.check_rational(
                || format!("integral d={d} k={k}"),
                &splinecore::bspline_eval_explicit(SplineOrder::successor_of(d), &rat(k)),
                &splinecore::bspline_integrate(order, &rat(k - 1), &rat(k)),
            );
        }
        if d >= 2 {
            for g in 1..=4 {
                let witness = splinecore::log_concavity_witness(order, g).expect("positive grid");
                for (m, v) in witness.iter().enumerate() {
                    r.check_nonnegative(|| format!("log-concave d={d} x={}/{g}", m + 1), v);
                }
            }
        }
    }
    r
}

/// Eulerian and refined Eulerian route agreement for `d <= d_max`.
pub fn eulerian_suite(d_max: u32) -> VerifyReport {
    let mut r = VerifyReport::new("eulerian");
    for d in 1..=d_max {
        let spline = eulerian::eulerian_row_spline(d);
        if d <= DEFAULT_MAX_SYMMETRIC_DEGREE {
            let brute = eulerian::eulerian_bruteforce(d).map(|row| rows_text(row.values()));
            let expected = match &spline {
                Ok(row) => rows_text(row.values()),
                Err(e) => format!("error: {e}"),
            };
            r.check_result(|| format!("row spline=brute d={d}"), &expected, brute);
        }
        match &spline {
            Ok(row) => {
                r.check(
                    || format!("row invariants d={d}"),
                    "true".into(),
                    row.satisfies_invariants().to_string(),
                );
            }
            Err(e) => r.check(|| format!("row d={d}"), "ok".into(), format!("error: {e}")),
        }
        for k in 1..=d as i64 {
            r.check_result(
                || format!("two-scale d={d} k={k}"),
                "0",
                eulerian::eulerian_two_scale_residual(d, k).map(|v| format_rational(&v)),
            );
        }
        let explicit = eulerian::refined_triangle(d, RefinedRoute::Explicit);
        let lambda = eulerian::refined_triangle(d, RefinedRoute::Lambda);
        let text = |t: &eulerspline::Result<eulerian::RefinedTriangle>| match t {
            Ok(t) => t
                .rows()
                .iter()
                .map(|row| rows_text(row))
                .collect::<Vec<_>>()
                .join(" | "),
            Err(e) => format!("error: {e}"),
        };
        r.check(
            || format!("refined explicit=lambda d={d}"),
            text(&explicit),
            text(&lambda),
        );
        if d <= DEFAULT_MAX_REFINED_DEGREE {
            let brute = eulerian::refined_bruteforce(d);
            r.check(
                || format!("refined explicit=brute d={d}"),
                text(&explicit),
                text(&brute),
            );
        }
        if let Ok(t) = &explicit {
            r.check(
                || format!("refined invariants d={d}"),
                "true".into(),
                t.satisfies_invariants().to_string(),
            );
        }
    }
    r
}

/// Descent routes, conservation, log-concavity and the two-scale identity
/// for `d <= d_max`, `n <= n_max`. Enumeration is included wherever it
/// fits in `budget`.
pub fn descent_suite(d_max: u32, n_max: u32, budget: u64) -> VerifyReport {
    let mut r = VerifyReport::new("descent");
    for d in 1..=d_max {
        for n in 1..=n_max {
            let text = |t: eulerspline::Result<descent::DescentTable>| match t {
                Ok(t) => rows_text(t.values()),
                Err(e) => format!("error: {e}"),
            };
            let spline = descent::descent_table(d, n, DescentRoute::Spline, budget);
            let reference = text(spline.clone());
            for route in [
                DescentRoute::Explicit,
                DescentRoute::Recurrence,
                DescentRoute::Refined,
            ] {
                r.check(
                    || format!("{route:?}=spline d={d} n={n}"),
                    reference.clone(),
                    text(descent::descent_table(d, n, route, budget)),
                );
            }
            let total = factorial(d as u64) * num_traits::pow(Natural::from(n), d as usize);
            if total <= Natural::from(budget) {
                r.check(
                    || format!("brute=spline d={d} n={n}"),
                    reference.clone(),
                    text(descent::indexed_bruteforce(d, n, budget)),
                );
            }
            if let Ok(t) = &spline {
                r.check(
                    || format!("conservation d={d} n={n}"),
                    t.expected_total().to_string(),
                    t.total().to_string(),
                );
                r.check(
                    || format!("polynomial at 1 d={d} n={n}"),
                    t.expected_total().to_string(),
                    format_rational(&t.polynomial().eval(&rat(1))),
                );
                r.check(
                    || format!("first entry d={d} n={n}"),
                    "1".into(),
                    t.get(0).to_string(),
                );
                r.check(
                    || format!("unimodal d={d} n={n}"),
                    "true".into(),
                    t.is_unimodal().to_string(),
                );
                for (i, v) in descent::log_concavity_verdict(t).iter().enumerate() {
                    r.check_nonnegative(|| format!("log-concave d={d} n={n} k={}", i + 1), v);
                }
            }
            if n == 1 {
                for k in 0..=d as i64 {
                    let a = eulerian::eulerian_spline(d, k + 1).map(|v| v.to_string());
                    let a = a.unwrap_or_else(|e| format!("error: {e}"));
                    r.check_result(
                        || format!("n=1 reduction d={d} k={k}"),
                        &a,
                        descent::descent_spline(d, 1, k),
                    );
                }
            }
            for k in 0..=d as i64 {
                r.check_result(
                    || format!("two-scale d={d} n={n} k={k}"),
                    "0",
                    descent::descent_two_scale_residual(d, n, k).map(|v| format_rational(&v)),
                );
            }
        }
    }
    r
}

/// Minkowski volume polynomials against refined Eulerian and descent
/// numbers for `d <= d_max`.
pub fn geometry_suite(d_max: u32, n_max: u32) -> VerifyReport {
    let mut r = VerifyReport::new("geometry");
    for d in 1..=d_max {
        for k in 0..=d {
            let poly = match geometry::minkowski_poly(d, k) {
                Ok(p) => p,
                Err(e) => {
                    r.check(
                        || format!("minkowski d={d} k={k}"),
                        "ok".into(),
                        format!("error: {e}"),
                    );
                    continue;
                }
            };
            r.check(
                || format!("degree d={d} k={k}"),
                "true".into(),
                poly.degree().is_none_or(|g| g <= d as usize).to_string(),
            );
            for j in 0..=d {
                let expected = eulerian::refined_explicit(d, k, j)
                    .map(|a| natural_to_rational(&(binomial(d as u64, j as i64) * a)));
                match expected {
                    Ok(e) => r.check_rational(
                        || format!("coefficient d={d} k={k} j={j}"),
                        &e,
                        &poly.coefficient(j as usize),
                    ),
                    Err(e) => r.check(
                        || format!("coefficient d={d} k={k} j={j}"),
                        "ok".into(),
                        format!("error: {e}"),
                    ),
                }
            }
            for n in 1..=n_max {
                let lambda = rat(n as i64 - 1);
                let expected = descent::descent_spline(d, n, k as i64)
                    .map(|v| format_rational(&natural_to_rational(&v)))
                    .unwrap_or_else(|e| format!("error: {e}"));
                r.check(
                    || format!("polynomial at n-1 d={d} k={k} n={n}"),
                    expected,
                    format_rational(&poly.eval(&lambda)),
                );
            }
        }
    }
    r
}
