//! Volumes of slabs of the cube `s * [0,1]^d`, normalized so the unit cube
//! has volume `d!`.
//!
//! Two bridges back to the combinatorics: a seeded Monte Carlo estimate of
//! any slab, and the exact volume polynomial of the Minkowski combination
//! `lambda * T_k + T_{k+1}` of two adjacent unit-cube slices, recovered by
//! interpolating exact spline evaluations.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numcore::{
    binomial, factorial, format_rational, natural_to_rational, rat, sqrt_upper_bound, Natural,
    Rational,
};
use crate::polyring::{interpolate, Polynomial};
use crate::splinecore::{bspline, SplineOrder};

/// Samples drawn from one generator stream before moving to the next block.
pub const MC_BLOCK_SIZE: u64 = 1 << 16;

/// Bits of resolution of each uniform coordinate.
const COORD_BITS: u32 = 53;

/// Binary digits kept when rounding the standard error outward.
const STDERR_BITS: u32 = 48;

/// `{x in s*[0,1]^d : lower <= sum x_i <= upper}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceSpec {
    pub d: u32,
    pub scale: u32,
    pub lower: Rational,
    pub upper: Rational,
}

impl SliceSpec {
    pub fn new(d: u32, scale: u32, lower: Rational, upper: Rational) -> Result<Self> {
        if d == 0 || scale == 0 {
            return Err(Error::InvalidArgument(
                "dimension and scale must be positive".into(),
            ));
        }
        let top = rat(d as i64 * scale as i64);
        if lower.is_negative() || lower > upper || upper > top {
            return Err(Error::InvalidArgument(format!(
                "slab bounds must satisfy 0 <= {} <= {} <= {}",
                format_rational(&lower),
                format_rational(&upper),
                format_rational(&top)
            )));
        }
        Ok(SliceSpec {
            d,
            scale,
            lower,
            upper,
        })
    }

    /// `s*[0,1]^d` with bounds clipped to `[0, s*d]`; clipping does not
    /// change the body.
    pub fn clipped(d: u32, scale: u32, lower: Rational, upper: Rational) -> Result<Self> {
        let top = rat(d as i64 * scale as i64);
        Self::new(d, scale, lower.max(Rational::zero()), upper.min(top))
    }

    pub fn whole_cube(d: u32, scale: u32) -> Result<Self> {
        Self::new(d, scale, Rational::zero(), rat(d as i64 * scale as i64))
    }

    /// Unit-cube slice `k - 1 <= sum x_i <= k`, `1 <= k <= d`.
    pub fn unit_slice(d: u32, k: u32) -> Result<Self> {
        if k == 0 || k > d {
            return Err(Error::InvalidArgument(format!(
                "slice index {k} outside 1..={d}"
            )));
        }
        Self::new(d, 1, rat(k as i64 - 1), rat(k as i64))
    }

    /// Slice `(k-1)n + 1 <= sum x_i <= kn + 1` of `n*[0,1]^d`, `0 <= k <= d`.
    pub fn dilated_slice(d: u32, n: u32, k: u32) -> Result<Self> {
        if k > d {
            return Err(Error::InvalidArgument(format!(
                "slice index {k} outside 0..={d}"
            )));
        }
        let (n_i, k_i) = (n as i64, k as i64);
        Self::clipped(d, n, rat((k_i - 1) * n_i + 1), rat(k_i * n_i + 1))
    }

    /// Normalized volume of the whole scaled cube, `d! * s^d`.
    pub fn cube_volume(&self) -> Natural {
        factorial(self.d as u64) * num_traits::pow(BigUint::from(self.scale), self.d as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeEstimate {
    pub estimate: Rational,
    /// `d! s^d sqrt(p(1-p)/samples)` rounded up to a dyadic rational.
    pub standard_error: Rational,
    pub samples: u64,
    pub seed: u64,
    pub hits: u64,
}

impl VolumeEstimate {
    /// `|estimate - exact| <= sigmas * standard_error`.
    pub fn within(&self, exact: &Rational, sigmas: u32) -> bool {
        (&self.estimate - exact).abs() <= &self.standard_error * rat(sigmas as i64)
    }
}

/// Monte Carlo estimate of the normalized volume of `spec`.
///
/// Sample `i` belongs to block `i / MC_BLOCK_SIZE`; block `b` draws from a
/// SplitMix64 stream seeded with `seed + b`, each point taking `d`
/// consecutive outputs `u` as coordinates `s * (u >> 11) / 2^53`. The
/// result is therefore the same for any thread count.
pub fn mc_volume(spec: &SliceSpec, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "at least one sample is required".into(),
        ));
    }
    let d = spec.d as usize;
    // A point with integer coordinates m_i has sum s*M/2^53 where
    // M = sum m_i, so the slab test reduces to lo <= M <= hi.
    let unit = Rational::from_integer(BigInt::one() << COORD_BITS);
    let per_scale = unit / rat(spec.scale as i64);
    let max_sum = (d as u128) * ((1u128 << COORD_BITS) - 1);
    let lo = clamp_u128((&spec.lower * &per_scale).ceil().to_integer(), max_sum + 1);
    let hi = clamp_u128((&spec.upper * &per_scale).floor().to_integer(), max_sum);

    let blocks = samples.div_ceil(MC_BLOCK_SIZE);
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * MC_BLOCK_SIZE;
            let len = MC_BLOCK_SIZE.min(samples - start);
            let mut rng = SplitMix64::seed_from_u64(seed.wrapping_add(b));
            let mut hits = 0u64;
            for _ in 0..len {
                let mut sum = 0u128;
                for _ in 0..d {
                    sum += (rng.next_u64() >> (64 - COORD_BITS)) as u128;
                }
                if lo <= sum && sum <= hi {
                    hits += 1;
                }
            }
            hits
        })
        .sum();

    let volume = natural_to_rational(&spec.cube_volume());
    let n = rat(samples as i64);
    let p = rat(hits as i64) / &n;
    let variance = &p * (Rational::one() - &p) / &n;
    Ok(VolumeEstimate {
        estimate: &volume * &p,
        standard_error: volume * sqrt_upper_bound(&variance, STDERR_BITS),
        samples,
        seed,
        hits,
    })
}

fn clamp_u128(v: BigInt, cap: u128) -> u128 {
    if v.is_negative() {
        0
    } else {
        v.to_u128().map_or(cap, |x| x.min(cap))
    }
}

/// Exact `V(lambda T_k + T_{k+1}) = d! (lambda+1)^d B_{d+1}(k + 1/(lambda+1))`
/// at a non-negative rational `lambda`.
pub fn minkowski_volume(d: u32, k: u32, lambda: &Rational) -> Rational {
    let grow = lambda + Rational::one();
    let x = rat(k as i64) + grow.recip();
    natural_to_rational(&factorial(d as u64))
        * num_traits::pow(grow, d as usize)
        * bspline(SplineOrder::successor_of(d), &x)
}

/// The volume polynomial of `lambda T_k + T_{k+1}` in `lambda`, from exact
/// values at `lambda = 0, 1, ..., d`.
pub fn minkowski_poly(d: u32, k: u32) -> Result<Polynomial> {
    if d == 0 || k > d {
        return Err(Error::InvalidArgument(format!(
            "minkowski polynomial needs d >= 1 and 0 <= k <= d (got d={d}, k={k})"
        )));
    }
    let points: Vec<(Rational, Rational)> = (0..=d as i64)
        .map(|node| {
            let lambda = rat(node);
            let v = minkowski_volume(d, k, &lambda);
            (lambda, v)
        })
        .collect();
    interpolate(&points)
}

/// Mixed volume `V(T_k, d-j; T_{k+1}, j)`, the coefficient of
/// `lambda^(d-j) mu^j` in `V(lambda T_k + mu T_{k+1})` divided by `C(d, j)`.
pub fn mixed_volume(d: u32, k: u32, j: u32) -> Result<Rational> {
    if j > d {
        return Err(Error::InvalidArgument(format!("j={j} exceeds d={d}")));
    }
    let poly = minkowski_poly(d, k)?;
    mixed_volume_from_poly(&poly, d, j)
}

pub fn mixed_volume_from_poly(poly: &Polynomial, d: u32, j: u32) -> Result<Rational> {
    let power = (d - j) as usize;
    let v = poly.coefficient(power) / natural_to_rational(&binomial(d as u64, power as i64));
    if v.is_negative() {
        return Err(Error::NegativeResult {
            what: format!("mixed volume d={d}, j={j}"),
            value: format_rational(&v),
        });
    }
    Ok(v)
}
