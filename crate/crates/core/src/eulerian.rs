//! Eulerian numbers `A(d, k)` (permutations of `1..=d` with `k - 1`
//! descents) and refined Eulerian numbers (additionally fixing the last
//! letter), computed from B-spline values, closed alternating sums, a
//! polynomial coefficient extraction, and exhaustive enumeration.
//!
//! Refined numbers are keyed by `(k, j)` and hold the count of permutations
//! of `1..=d+1` with `k` descents whose last letter is `d + 1 - j`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numcore::{
    binomial, binomial_int, factorial, integer_to_natural, natural_to_rational, rat,
    rational_to_natural, Natural, Rational,
};
use crate::perm::{descents, fold_permutations};
use crate::polyring::Polynomial;
use crate::splinecore::{bspline, SplineOrder};

/// Largest `d` for which `S_d` is enumerated by default.
pub const DEFAULT_MAX_SYMMETRIC_DEGREE: u32 = 10;
/// Largest `d` for which the refined enumeration over `S_{d+1}` runs by default.
pub const DEFAULT_MAX_REFINED_DEGREE: u32 = 8;

/// `A(d, k)` for `k = 1..=d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianRow {
    pub d: u32,
    values: Vec<Natural>,
}

impl EulerianRow {
    pub fn new(d: u32, values: Vec<Natural>) -> Self {
        assert_eq!(values.len(), d as usize, "an Eulerian row has d entries");
        EulerianRow { d, values }
    }

    /// `A(d, k)`, zero outside `1..=d`.
    pub fn get(&self, k: i64) -> Natural {
        if k < 1 || k > self.d as i64 {
            Natural::zero()
        } else {
            self.values[k as usize - 1].clone()
        }
    }

    /// Entries for `k = 1..=d`.
    pub fn values(&self) -> &[Natural] {
        &self.values
    }

    /// Row sum, reversal symmetry and positivity.
    pub fn satisfies_invariants(&self) -> bool {
        let sum: Natural = self.values.iter().sum();
        let symmetric = self.values.iter().eq(self.values.iter().rev());
        sum == factorial(self.d as u64) && symmetric && self.values.iter().all(|v| !v.is_zero())
    }
}

/// Refined Eulerian numbers of `S_{d+1}`, indexed by `(k, j)` with
/// `0 <= k, j <= d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedTriangle {
    pub d: u32,
    values: Vec<Vec<Natural>>,
}

impl RefinedTriangle {
    pub fn new(d: u32, values: Vec<Vec<Natural>>) -> Self {
        let n = d as usize + 1;
        assert!(values.len() == n && values.iter().all(|r| r.len() == n));
        RefinedTriangle { d, values }
    }

    /// Count of permutations of `1..=d+1` with `k` descents ending in `d+1-j`.
    pub fn get(&self, k: u32, j: u32) -> Natural {
        self.values
            .get(k as usize)
            .and_then(|row| row.get(j as usize))
            .cloned()
            .unwrap_or_else(Natural::zero)
    }

    /// Rows indexed by `k`, columns by `j`.
    pub fn rows(&self) -> &[Vec<Natural>] {
        &self.values
    }

    /// Every last letter is shared by `d!` permutations, `(d+1)!` in total.
    pub fn satisfies_invariants(&self) -> bool {
        let per_letter = factorial(self.d as u64);
        let n = self.d as usize + 1;
        let columns_ok = (0..n).all(|j| {
            let col: Natural = self.values.iter().map(|row| &row[j]).sum();
            col == per_letter
        });
        let total: Natural = self.values.iter().flatten().sum();
        columns_ok && total == factorial(self.d as u64 + 1)
    }
}

fn check_degree(d: u32) -> Result<()> {
    if d == 0 {
        Err(Error::InvalidArgument(
            "dimension d must be at least 1".into(),
        ))
    } else {
        Ok(())
    }
}

fn check_refined_indices(d: u32, k: u32, j: u32) -> Result<()> {
    check_degree(d)?;
    if k > d || j > d {
        return Err(Error::InvalidArgument(format!(
            "refined indices need 0 <= k, j <= d (got d={d}, k={k}, j={j})"
        )));
    }
    Ok(())
}

/// `A(d, k) = d! * B_{d+1}(k)`; zero for `k <= 0` or `k > d`.
pub fn eulerian_spline(d: u32, k: i64) -> Result<Natural> {
    check_degree(d)?;
    if k <= 0 || k > d as i64 {
        return Ok(Natural::zero());
    }
    let v =
        natural_to_rational(&factorial(d as u64)) * bspline(SplineOrder::successor_of(d), &rat(k));
    rational_to_natural(&v, &format!("d!*B_(d+1)(k) at d={d}, k={k}"))
}

/// The full row `A(d, 1..=d)` through the spline route.
pub fn eulerian_row_spline(d: u32) -> Result<EulerianRow> {
    let values = (1..=d as i64)
        .map(|k| eulerian_spline(d, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(EulerianRow::new(d, values))
}

/// Histogram of descents over all of `S_d`, with the default bound.
pub fn eulerian_bruteforce(d: u32) -> Result<EulerianRow> {
    eulerian_bruteforce_bounded(d, DEFAULT_MAX_SYMMETRIC_DEGREE)
}

pub fn eulerian_bruteforce_bounded(d: u32, max_d: u32) -> Result<EulerianRow> {
    check_degree(d)?;
    if d > max_d {
        return Err(Error::TooLarge {
            requested: format!("S_{d}"),
            bound: format!("S_{max_d}"),
        });
    }
    let n = d as usize;
    let counts = fold_permutations(
        n,
        || vec![0u64; n],
        |acc, p| acc[descents(p)] += 1,
        merge_counts,
    );
    Ok(EulerianRow::new(
        d,
        counts.into_iter().map(Natural::from).collect(),
    ))
}

fn merge_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Alternating sum `sum_{i=0}^{k} C(d+1,i) (-1)^i (k-i)^j (k-i+1)^(d-j)`
/// with `0^0 = 1`.
pub fn refined_explicit(d: u32, k: u32, j: u32) -> Result<Natural> {
    check_refined_indices(d, k, j)?;
    let mut sum = BigInt::zero();
    for i in 0..=k {
        let m = BigInt::from(k - i);
        let term = binomial_int(d as u64 + 1, i as i64)
            * num_traits::pow(m.clone(), j as usize)
            * num_traits::pow(m + 1, (d - j) as usize);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    integer_to_natural(
        &sum,
        &format!("refined alternating sum at d={d}, k={k}, j={j}"),
    )
}

/// `P(lambda) = sum_{i=0}^{k} C(d+1,i) (-1)^i ((lambda+1)(k-i) + 1)^d`,
/// which equals `d! (lambda+1)^d B_{d+1}(k + 1/(lambda+1))` for
/// `lambda >= 0`: the truncated powers with `i > k` vanish there.
pub fn refined_lambda_polynomial(d: u32, k: u32) -> Result<Polynomial> {
    check_refined_indices(d, k, 0)?;
    let mut p = Polynomial::zero();
    for i in 0..=k {
        let m = rat((k - i) as i64);
        // (lambda + 1) m + 1 = (m + 1) + m lambda
        let base = Polynomial::linear(&m + Rational::one(), m).pow(d);
        let mut c = Rational::from_integer(binomial_int(d as u64 + 1, i as i64));
        if i % 2 == 1 {
            c = -c;
        }
        p = &p + &base.scale(&c);
    }
    Ok(p)
}

fn extract_refined(p: &Polynomial, d: u32, k: u32, j: u32) -> Result<Natural> {
    let c = p.coefficient(j as usize) / natural_to_rational(&binomial(d as u64, j as i64));
    rational_to_natural(&c, &format!("[lambda^{j}] extraction at d={d}, k={k}"))
}

/// Refined number from `[lambda^j] P(lambda) / C(d, j)`.
pub fn refined_lambda_extraction(d: u32, k: u32, j: u32) -> Result<Natural> {
    check_refined_indices(d, k, j)?;
    let p = refined_lambda_polynomial(d, k)?;
    extract_refined(&p, d, k, j)
}

/// Which computation produces a refined triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefinedRoute {
    Explicit,
    Lambda,
    Brute,
}

pub fn refined_triangle(d: u32, route: RefinedRoute) -> Result<RefinedTriangle> {
    check_degree(d)?;
    match route {
        RefinedRoute::Brute => refined_bruteforce(d),
        RefinedRoute::Explicit => {
            let rows = (0..=d)
                .map(|k| (0..=d).map(|j| refined_explicit(d, k, j)).collect())
                .collect::<Result<Vec<Vec<_>>>>()?;
            Ok(RefinedTriangle::new(d, rows))
        }
        RefinedRoute::Lambda => {
            let rows = (0..=d)
                .map(|k| {
                    let p = refined_lambda_polynomial(d, k)?;
                    (0..=d).map(|j| extract_refined(&p, d, k, j)).collect()
                })
                .collect::<Result<Vec<Vec<_>>>>()?;
            Ok(RefinedTriangle::new(d, rows))
        }
    }
}

/// Counts permutations of `1..=d+1` by (descents, last letter).
pub fn refined_bruteforce(d: u32) -> Result<RefinedTriangle> {
    refined_bruteforce_bounded(d, DEFAULT_MAX_REFINED_DEGREE)
}

pub fn refined_bruteforce_bounded(d: u32, max_d: u32) -> Result<RefinedTriangle> {
    check_degree(d)?;
    if d > max_d {
        return Err(Error::TooLarge {
            requested: format!("S_{}", d + 1),
            bound: format!("S_{}", max_d + 1),
        });
    }
    let n = d as usize + 1;
    let counts = fold_permutations(
        n,
        || vec![0u64; n * n],
        |acc, p| {
            let k = descents(p);
            let j = n - p[n - 1] as usize;
            acc[k * n + j] += 1;
        },
        merge_counts,
    );
    let rows = counts
        .chunks(n)
        .map(|row| row.iter().map(|&c| Natural::from(c)).collect())
        .collect();
    Ok(RefinedTriangle::new(d, rows))
}

/// `A(d,k) - 2^(-d) sum_{j=0}^{d+1} C(d+1,j) A(d, 2k-j)`, with Eulerian
/// numbers from the spline route and zero outside `1..=d`.
pub fn eulerian_two_scale_residual(d: u32, k: i64) -> Result<Rational> {
    check_degree(d)?;
    let mut sum = Natural::zero();
    for j in 0..=d as i64 + 1 {
        let a = eulerian_spline(d, 2 * k - j)?;
        if !a.is_zero() {
            sum += a * binomial(d as u64 + 1, j);
        }
    }
    let scaled = natural_to_rational(&sum) / Rational::from_integer(BigInt::one() << d);
    Ok(natural_to_rational(&eulerian_spline(d, k)?) - scaled)
}
