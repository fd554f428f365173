//! Descent numbers `D(d, n, k)` of indexed permutations and the descent
//! polynomial `sum_k D(d, n, k) t^k`.
//!
//! An indexed permutation pairs a permutation `pi` of `1..=d` with indices
//! `e_1..e_d` in `0..n`. Position `i < d` is a descent when `e_i > e_{i+1}`,
//! or when `e_i == e_{i+1}` and `pi_i > pi_{i+1}`; position `d` is a descent
//! when `e_d != 0`. `D(d, n, k)` counts those with exactly `k` descents.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::eulerian::refined_explicit;
use crate::numcore::{
    binomial, binomial_int, factorial, integer_to_natural, natural_to_rational, rat,
    rational_to_natural, Natural, Rational,
};
use crate::perm::next_permutation;
use crate::polyring::Polynomial;
use crate::splinecore::{bspline, SplineOrder};

/// Default cap on the number of indexed permutations enumerated.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// `D(d, n, k)` for `k = 0..=d` together with its generating polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentTable {
    pub d: u32,
    pub n: u32,
    values: Vec<Natural>,
    polynomial: Polynomial,
}

impl DescentTable {
    pub fn new(d: u32, n: u32, values: Vec<Natural>) -> Self {
        assert_eq!(
            values.len(),
            d as usize + 1,
            "a descent table has d + 1 entries"
        );
        let polynomial = Polynomial::new(values.iter().map(natural_to_rational).collect());
        DescentTable {
            d,
            n,
            values,
            polynomial,
        }
    }

    pub fn values(&self) -> &[Natural] {
        &self.values
    }

    /// `D(d, n, k)`, zero outside `0..=d`.
    pub fn get(&self, k: i64) -> Natural {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.values.get(k))
            .cloned()
            .unwrap_or_else(Natural::zero)
    }

    /// The descent polynomial in `t`.
    pub fn polynomial(&self) -> &Polynomial {
        &self.polynomial
    }

    /// `n^d * d!`, the number of indexed permutations.
    pub fn expected_total(&self) -> Natural {
        num_traits::pow(Natural::from(self.n), self.d as usize) * factorial(self.d as u64)
    }

    pub fn total(&self) -> Natural {
        self.values.iter().sum()
    }

    /// True when the sequence rises weakly then falls weakly.
    pub fn is_unimodal(&self) -> bool {
        let v = &self.values;
        let mut i = 1;
        while i < v.len() && v[i] >= v[i - 1] {
            i += 1;
        }
        while i < v.len() && v[i] <= v[i - 1] {
            i += 1;
        }
        i >= v.len()
    }
}

/// Indexed permutation `(pi, e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedPermutation {
    letters: Vec<u8>,
    indices: Vec<u32>,
}

impl IndexedPermutation {
    pub fn new(letters: Vec<u8>, indices: Vec<u32>, n: u32) -> Result<Self> {
        let d = letters.len();
        let mut seen = vec![false; d + 1];
        let bijective = letters.iter().all(|&l| {
            let ok = (1..=d).contains(&(l as usize)) && !seen[l as usize];
            if ok {
                seen[l as usize] = true;
            }
            ok
        });
        if !bijective || indices.len() != d || indices.iter().any(|&e| e >= n) {
            return Err(Error::InvalidArgument(format!(
                "({letters:?}, {indices:?}) is not an indexed permutation with indices below {n}"
            )));
        }
        Ok(IndexedPermutation { letters, indices })
    }

    pub fn descents(&self) -> usize {
        indexed_descents(&self.letters, &self.indices)
    }
}

#[inline]
fn indexed_descents(letters: &[u8], indices: &[u32]) -> usize {
    let d = letters.len();
    let mut count = usize::from(indices.last().is_some_and(|&e| e != 0));
    for i in 1..d {
        let (a, b) = (indices[i - 1], indices[i]);
        if a > b || (a == b && letters[i - 1] > letters[i]) {
            count += 1;
        }
    }
    count
}

fn check_dims(d: u32, n: u32) -> Result<()> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "descent numbers need d >= 1 and n >= 1 (got d={d}, n={n})"
        )));
    }
    Ok(())
}

/// `d! * n^d * B_{d+1}(k + 1/n)`; zero for `k < 0` or `k > d`.
pub fn descent_spline(d: u32, n: u32, k: i64) -> Result<Natural> {
    check_dims(d, n)?;
    if k < 0 || k > d as i64 {
        return Ok(Natural::zero());
    }
    let scale = factorial(d as u64) * num_traits::pow(Natural::from(n), d as usize);
    let x = rat(k) + Rational::new(BigInt::one(), BigInt::from(n));
    let v = natural_to_rational(&scale) * bspline(SplineOrder::successor_of(d), &x);
    rational_to_natural(&v, &format!("d!*n^d*B_(d+1)(k+1/n) at d={d}, n={n}, k={k}"))
}

/// `sum_{i=0}^{k} C(d+1,i) (-1)^i (n(k-i) + 1)^d`.
pub fn descent_explicit(d: u32, n: u32, k: u32) -> Result<Natural> {
    check_dims(d, n)?;
    if k > d {
        return Err(Error::InvalidArgument(format!("k={k} exceeds d={d}")));
    }
    let mut sum = BigInt::zero();
    for i in 0..=k {
        let base = BigInt::from(n as u64 * (k - i) as u64 + 1);
        let term = binomial_int(d as u64 + 1, i as i64) * num_traits::pow(base, d as usize);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    integer_to_natural(
        &sum,
        &format!("descent alternating sum at d={d}, n={n}, k={k}"),
    )
}

/// Builds dimensions `1..=d` with
/// `D(m,n,k) = (nk+1) D(m-1,n,k) + (n(m-k) + n-1) D(m-1,n,k-1)`
/// from the base row `(1, n-1)`.
pub fn descent_recurrence_table(d: u32, n: u32) -> Result<DescentTable> {
    check_dims(d, n)?;
    let n_big = Natural::from(n);
    let mut row = vec![Natural::one(), Natural::from(n - 1)];
    for (k, v) in row.iter().enumerate() {
        let direct = descent_explicit(1, n, k as u32)?;
        if *v != direct {
            return Err(Error::Inconsistent(format!(
                "recurrence base D(1,{n},{k}) = {v} but the alternating sum gives {direct}"
            )));
        }
    }
    for m in 2..=d {
        let mut next = Vec::with_capacity(m as usize + 1);
        for k in 0..=m {
            let mut v = Natural::zero();
            if k < m {
                v += (&n_big * k + 1u32) * &row[k as usize];
            }
            if k >= 1 {
                let weight = &n_big * (m - k) + (n - 1);
                v += weight * &row[k as usize - 1];
            }
            next.push(v);
        }
        row = next;
        let level = DescentTable::new(m, n, row.clone());
        if level.total() != level.expected_total() {
            return Err(Error::Inconsistent(format!(
                "recurrence row d={m}, n={n} sums to {} instead of {}",
                level.total(),
                level.expected_total()
            )));
        }
    }
    Ok(DescentTable::new(d, n, row))
}

/// `sum_{j=0}^{d} C(d,j) A_{d+1,k,d+1-j} (n-1)^j` from the refined
/// Eulerian numbers.
pub fn descent_via_refined(d: u32, n: u32, k: u32) -> Result<Natural> {
    check_dims(d, n)?;
    let mut sum = Natural::zero();
    let base = Natural::from(n - 1);
    for j in 0..=d {
        let refined = refined_explicit(d, k, j)?;
        if refined.is_zero() {
            continue;
        }
        sum += binomial(d as u64, j as i64) * refined * num_traits::pow(base.clone(), j as usize);
    }
    Ok(sum)
}

/// Histogram of descents over all `n^d d!` indexed permutations.
pub fn indexed_bruteforce(d: u32, n: u32, budget: u64) -> Result<DescentTable> {
    check_dims(d, n)?;
    let total = factorial(d as u64) * num_traits::pow(Natural::from(n), d as usize);
    if total > Natural::from(budget) {
        return Err(Error::TooLarge {
            requested: format!("{total} indexed permutations"),
            bound: budget.to_string(),
        });
    }
    let du = d as usize;
    // One work unit per (first letter, first index) pair.
    let counts = (0..d as usize * n as usize)
        .into_par_iter()
        .map(|unit| {
            let first = (unit / n as usize) as u8 + 1;
            let first_index = (unit % n as usize) as u32;
            let mut hist = vec![0u64; du + 1];
            let mut letters: Vec<u8> = std::iter::once(first)
                .chain((1..=d as u8).filter(|&x| x != first))
                .collect();
            let mut indices = vec![0u32; du];
            loop {
                indices.iter_mut().for_each(|e| *e = 0);
                indices[0] = first_index;
                loop {
                    hist[indexed_descents(&letters, &indices)] += 1;
                    if !advance_indices(&mut indices[1..], n) {
                        break;
                    }
                }
                if !next_permutation(&mut letters[1..]) {
                    break;
                }
            }
            hist
        })
        .reduce(
            || vec![0u64; du + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(DescentTable::new(
        d,
        n,
        counts.into_iter().map(Natural::from).collect(),
    ))
}

/// Odometer step over `0..n` digits; `false` after the last state.
fn advance_indices(digits: &mut [u32], n: u32) -> bool {
    for e in digits.iter_mut().rev() {
        *e += 1;
        if *e < n {
            return true;
        }
        *e = 0;
    }
    false
}

/// Route used to build a [`DescentTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescentRoute {
    Spline,
    Explicit,
    Recurrence,
    Refined,
    Brute,
}

pub fn descent_table(d: u32, n: u32, route: DescentRoute, budget: u64) -> Result<DescentTable> {
    check_dims(d, n)?;
    let per_k = |f: &dyn Fn(u32) -> Result<Natural>| -> Result<DescentTable> {
        let values = (0..=d).map(f).collect::<Result<Vec<_>>>()?;
        Ok(DescentTable::new(d, n, values))
    };
    match route {
        DescentRoute::Spline => per_k(&|k| descent_spline(d, n, k as i64)),
        DescentRoute::Explicit => per_k(&|k| descent_explicit(d, n, k)),
        DescentRoute::Refined => per_k(&|k| descent_via_refined(d, n, k)),
        DescentRoute::Recurrence => descent_recurrence_table(d, n),
        DescentRoute::Brute => indexed_bruteforce(d, n, budget),
    }
}

/// `values[k]^2 - values[k-1] values[k+1]` for interior `k`.
pub fn log_concavity_verdict(table: &DescentTable) -> Vec<Rational> {
    table
        .values()
        .windows(3)
        .map(|w| natural_to_rational(&(&w[1] * &w[1])) - natural_to_rational(&(&w[0] * &w[2])))
        .collect()
}

/// `D(d,2n,k) - sum_{j=0}^{d+1} C(d+1,j) D(d,n,2k-j)` through the spline
/// route, out-of-range terms zero.
pub fn descent_two_scale_residual(d: u32, n: u32, k: i64) -> Result<Rational> {
    check_dims(d, n)?;
    let mut sum = Natural::zero();
    for j in 0..=d as i64 + 1 {
        let v = descent_spline(d, n, 2 * k - j)?;
        if !v.is_zero() {
            sum += v * binomial(d as u64 + 1, j);
        }
    }
    Ok(natural_to_rational(&descent_spline(d, 2 * n, k)?) - natural_to_rational(&sum))
}
