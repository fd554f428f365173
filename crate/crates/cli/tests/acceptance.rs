//! Acceptance gate. Each criterion runs at its pinned bound and tolerance
//! and prints one PASS/FAIL line; the process fails if any criterion does.

use std::process::Command;
use std::time::Instant;

use eulerspline::descent::{self, DescentRoute, DEFAULT_ENUMERATION_BUDGET};
use eulerspline::eulerian::{self, RefinedRoute};
use eulerspline::geometry::{self, SliceSpec};
use eulerspline::numcore::{binomial, factorial, natural_to_rational, rat, Rational};
use eulerspline::splinecore::{self, SplineOrder};
use eulerspline::Natural;

/// Monte Carlo sample count per (slice, seed).
const MC_SAMPLES: u64 = 1_000_000;
/// Seeds used for the stochastic bridge.
const MC_SEEDS: [u64; 3] = [1, 2, 3];
/// Allowed deviation in standard errors.
const MC_SIGMAS: u32 = 4;
/// Number of (slice, seed) pairs allowed outside the band.
const MC_ALLOWED_MISSES: usize = 1;
/// Random rationals per order in the spline two-scale check.
const TWO_SCALE_SAMPLES: usize = 200;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
    }
}

/// Criterion 1: A(d,k) = d! B_{d+1}(k) against enumeration of S_d, 1 <= k <= d <= 8.
fn eulerian_routes() -> Outcome {
    let mut cases = 0;
    for d in 1..=8u32 {
        let brute = eulerian::eulerian_bruteforce(d).expect("within bound");
        for k in 1..=d as i64 {
            cases += 1;
            let spline = eulerian::eulerian_spline(d, k).expect("integral value");
            if spline != brute.get(k) {
                return fail(format!(
                    "d={d} k={k}: spline {spline} vs brute {}",
                    brute.get(k)
                ));
            }
        }
    }
    ok(format!("{cases} entries bit-exact"))
}

/// Criterion 2: Refined numbers by alternating sum, lambda extraction and S_{d+1}
/// enumeration, d <= 7.
fn refined_routes() -> Outcome {
    let mut cases = 0;
    for d in 1..=7u32 {
        let brute = eulerian::refined_bruteforce(d).expect("within bound");
        let lambda = eulerian::refined_triangle(d, RefinedRoute::Lambda).expect("integral");
        for k in 0..=d {
            for j in 0..=d {
                cases += 1;
                let e = eulerian::refined_explicit(d, k, j).expect("non-negative");
                if e != lambda.get(k, j) || e != brute.get(k, j) {
                    return fail(format!(
                        "d={d} k={k} j={j}: explicit {e}, lambda {}, brute {}",
                        lambda.get(k, j),
                        brute.get(k, j)
                    ));
                }
            }
        }
    }
    ok(format!("{cases} entries, three routes bit-exact"))
}

/// Criterion 3: Five descent routes, d <= 6, n <= 4.
fn descent_routes() -> Outcome {
    let mut cases = 0;
    for d in 1..=6u32 {
        for n in 1..=4u32 {
            let brute = descent::indexed_bruteforce(d, n, DEFAULT_ENUMERATION_BUDGET)
                .expect("within budget");
            let recurrence = descent::descent_recurrence_table(d, n).expect("recurrence");
            for k in 0..=d {
                cases += 1;
                let values = [
                    descent::descent_spline(d, n, k as i64).expect("spline"),
                    descent::descent_explicit(d, n, k).expect("explicit"),
                    recurrence.get(k as i64),
                    descent::descent_via_refined(d, n, k).expect("refined"),
                    brute.get(k as i64),
                ];
                if values.iter().any(|v| *v != values[0]) {
                    return fail(format!("d={d} n={n} k={k}: {values:?}"));
                }
            }
        }
    }
    ok(format!("{cases} entries, five routes bit-exact"))
}

/// Criterion 4: sum_k D(d,n,k) = n^d d!, d <= 10, n <= 6, spline route.
fn conservation() -> Outcome {
    for d in 1..=10u32 {
        for n in 1..=6u32 {
            let t = descent::descent_table(d, n, DescentRoute::Spline, 0).expect("spline");
            let expected = num_traits::pow(Natural::from(n), d as usize) * factorial(d as u64);
            if t.total() != expected {
                return fail(format!("d={d} n={n}: total {} vs {expected}", t.total()));
            }
        }
    }
    ok("60 rows conserve n^d d!")
}

/// Criterion 5: Log-concavity of D(d,n,.) for d <= 12, n <= 6 and of B_d on grids of
/// denominator <= 8 for d <= 8.
fn log_concavity() -> Outcome {
    let zero = rat(0);
    let mut cases = 0;
    for d in 1..=12u32 {
        for n in 1..=6u32 {
            let t = descent::descent_table(d, n, DescentRoute::Spline, 0).expect("spline");
            for (i, v) in descent::log_concavity_verdict(&t).iter().enumerate() {
                cases += 1;
                if *v < zero {
                    return fail(format!("D d={d} n={n} k={}: {v}", i + 1));
                }
            }
        }
    }
    for d in 2..=8u32 {
        for g in 1..=8u32 {
            let w =
                splinecore::log_concavity_witness(SplineOrder::new(d).unwrap(), g).expect("grid");
            for (m, v) in w.iter().enumerate() {
                cases += 1;
                if *v < zero {
                    return fail(format!("B_{d} at {}/{g}: {v}", m + 1));
                }
            }
        }
    }
    ok(format!("{cases} exact inequalities hold"))
}

/// Deterministic stream of rationals in [-1, d+1] for the spline checks.
struct Sampler(u64);

impl Sampler {
    fn next(&mut self) -> u64 {
        // 64-bit LCG (Knuth MMIX constants), upper bits only
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn rational_in(&mut self, lo: i64, hi: i64) -> Rational {
        let q = 1 + (self.next() % 97) as i64;
        let span = ((hi - lo) * q) as u64;
        let p = lo * q + (self.next() % (span + 1)) as i64;
        Rational::new(p.into(), q.into())
    }
}

/// Criterion 6: Two-scale residuals vanish for A (d <= 12), D (d <= 10, n <= 3) and
/// B_d at 200 random rationals (2 <= d <= 12).
fn two_scale() -> Outcome {
    let zero = rat(0);
    for d in 1..=12u32 {
        for k in 1..=d as i64 {
            let r = eulerian::eulerian_two_scale_residual(d, k).expect("residual");
            if r != zero {
                return fail(format!("A d={d} k={k}: residual {r}"));
            }
        }
    }
    for d in 1..=10u32 {
        for n in 1..=3u32 {
            for k in 0..=d as i64 {
                let r = descent::descent_two_scale_residual(d, n, k).expect("residual");
                if r != zero {
                    return fail(format!("D d={d} n={n} k={k}: residual {r}"));
                }
            }
        }
    }
    let mut sampler = Sampler(0x5EED);
    for d in 2..=12u32 {
        let order = SplineOrder::new(d).unwrap();
        for _ in 0..TWO_SCALE_SAMPLES {
            let x = sampler.rational_in(-1, d as i64 + 1);
            let r = splinecore::two_scale_residual(order, &x);
            if r != zero {
                return fail(format!("B_{d}({x}): residual {r}"));
            }
        }
    }
    ok("A, D and B_d refinement residuals all zero")
}

/// Criterion 7: integral_{k-1}^{k} B_d = B_{d+1}(k), 1 <= k <= d <= 10.
fn integral_bridge() -> Outcome {
    for d in 1..=10u32 {
        for k in 1..=d as i64 {
            let lhs =
                splinecore::bspline_integrate(SplineOrder::new(d).unwrap(), &rat(k - 1), &rat(k));
            let rhs = splinecore::bspline_eval_explicit(SplineOrder::successor_of(d), &rat(k));
            if lhs != rhs {
                return fail(format!("d={d} k={k}: {lhs} vs {rhs}"));
            }
        }
    }
    ok("55 integrals bit-exact")
}

/// Criterion 8: Minkowski polynomial coefficients equal C(d,j) times the refined
/// numbers, d <= 6.
fn geometry_exact() -> Outcome {
    let mut cases = 0;
    for d in 1..=6u32 {
        let refined = eulerian::refined_bruteforce(d).expect("within bound");
        for k in 0..=d {
            let poly = geometry::minkowski_poly(d, k).expect("interpolation");
            for j in 0..=d {
                cases += 1;
                let expected =
                    natural_to_rational(&(binomial(d as u64, j as i64) * refined.get(k, j)));
                if poly.coefficient(j as usize) != expected {
                    return fail(format!(
                        "d={d} k={k} j={j}: {} vs {expected}",
                        poly.coefficient(j as usize)
                    ));
                }
            }
        }
    }
    ok(format!("{cases} coefficients bit-exact"))
}

/// Criterion 9: Monte Carlo slab volumes within 4 standard errors, at most one miss.
fn geometry_stochastic() -> Outcome {
    let mut slices: Vec<(String, SliceSpec, Rational)> = Vec::new();
    for d in 1..=6u32 {
        for k in 1..=d {
            let exact = natural_to_rational(&eulerian::eulerian_spline(d, k as i64).unwrap());
            slices.push((
                format!("T^{d}_{k}"),
                SliceSpec::unit_slice(d, k).unwrap(),
                exact,
            ));
        }
    }
    for d in 1..=4u32 {
        for n in 1..=3u32 {
            for k in 0..=d {
                let exact = natural_to_rational(&descent::descent_spline(d, n, k as i64).unwrap());
                slices.push((
                    format!("X^{d}_{{{n},{k}}}"),
                    SliceSpec::dilated_slice(d, n, k).unwrap(),
                    exact,
                ));
            }
        }
    }
    let mut misses = Vec::new();
    for (name, spec, exact) in &slices {
        for seed in MC_SEEDS {
            let est = geometry::mc_volume(spec, MC_SAMPLES, seed).expect("estimate");
            if !est.within(exact, MC_SIGMAS) {
                misses.push(format!("{name} seed {seed}: {} vs {exact}", est.estimate));
            }
        }
    }
    let pairs = slices.len() * MC_SEEDS.len();
    if misses.len() <= MC_ALLOWED_MISSES {
        ok(format!(
            "{pairs} (slice, seed) pairs, {} outside 4 sigma {:?}",
            misses.len(),
            misses
        ))
    } else {
        fail(format!(
            "{} of {pairs} pairs outside 4 sigma: {misses:?}",
            misses.len()
        ))
    }
}

/// Criterion 10: `verify --all` exits 0 and its output is byte-identical across runs.
fn cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_eulerspline");
    let run = || {
        Command::new(bin)
            .args(["verify", "--all"])
            .output()
            .expect("spawn CLI")
    };
    let first = run();
    let second = run();
    if first.status.code() != Some(0) {
        return fail(format!(
            "exit {:?}: {}",
            first.status.code(),
            String::from_utf8_lossy(&first.stdout)
        ));
    }
    if first.stdout != second.stdout || second.status.code() != Some(0) {
        return fail("repeated runs differ");
    }
    let json = Command::new(bin)
        .args(["verify", "--all", "--format", "json"])
        .output()
        .expect("spawn CLI");
    let report: serde_json::Value = serde_json::from_slice(&json.stdout).expect("json report");
    if json.status.code() != Some(0) || report["cases_failed"] != 0 {
        return fail(format!("json report: {}", report["cases_failed"]));
    }
    ok(format!(
        "exit 0, {} bytes identical, {} cases",
        first.stdout.len(),
        report["cases_run"]
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "AC1 Eulerian spline = S_d enumeration (d <= 8)",
            eulerian_routes,
        ),
        (
            "AC2 refined explicit = lambda = S_(d+1) enumeration (d <= 7)",
            refined_routes,
        ),
        (
            "AC3 descent five-route equivalence (d <= 6, n <= 4)",
            descent_routes,
        ),
        (
            "AC4 conservation sum_k D = n^d d! (d <= 10, n <= 6)",
            conservation,
        ),
        (
            "AC5 log-concavity of D (d <= 12, n <= 6) and B_d grids",
            log_concavity,
        ),
        ("AC6 two-scale residuals for A, D and B_d", two_scale),
        ("AC7 integral bridge (d <= 10)", integral_bridge),
        (
            "AC8 Minkowski coefficients = C(d,j) refined (d <= 6)",
            geometry_exact,
        ),
        (
            "AC9 Monte Carlo slab volumes within 4 sigma",
            geometry_stochastic,
        ),
        (
            "AC10 CLI verify --all exit 0 and deterministic",
            cli_determinism,
        ),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {name} ({:.2?}): {}",
            start.elapsed(),
            outcome.detail
        );
        if !outcome.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
