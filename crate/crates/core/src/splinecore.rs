//! Cardinal B-splines `B_d` on the integer knots `0, 1, ..., d`, evaluated
//! exactly at rational arguments.
//!
//! `B_1` is the indicator of `[0, 1)` and `B_d` is the convolution of
//! `B_{d-1}` with `B_1`: a piecewise polynomial of degree `d - 1` supported
//! on `[0, d]`. Two independent evaluation routes are provided (the
//! truncated-power sum and the order recurrence) and they must agree
//! bit-exactly everywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numcore::{binomial_int, factorial, rat, truncated_pow, Rational};
use crate::polyring::Polynomial;

/// Order `d >= 1` of a cardinal B-spline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplineOrder(u32);

impl SplineOrder {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument(
                "spline order must be at least 1".into(),
            ));
        }
        Ok(SplineOrder(d))
    }

    /// Order `m + 1`, always valid.
    pub fn successor_of(m: u32) -> Self {
        SplineOrder(m + 1)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// The polynomial that coincides with `B_d` on `[j, j + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecePoly {
    pub order: SplineOrder,
    pub piece_index: u32,
    pub poly: Polynomial,
}

/// Support test `0 <= x < d`; the right endpoint is excluded because the
/// order-one spline is right-continuous and higher orders vanish there.
fn in_support(d: u32, x: &Rational) -> bool {
    !x.is_negative() && *x < rat(d as i64)
}

fn inv_factorial(n: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(factorial(n as u64)))
}

/// `B_d(x)` from the truncated-power sum
/// `(1/(d-1)!) * sum_i C(d,i) (-1)^i (x - i)_+^(d-1)`.
pub fn bspline_eval_explicit(order: SplineOrder, x: &Rational) -> Rational {
    let d = order.get();
    if !in_support(d, x) {
        return Rational::zero();
    }
    let mut sum = Rational::zero();
    for i in 0..=d {
        let shifted = x - rat(i as i64);
        if !shifted.is_positive() && !(shifted.is_zero() && d == 1) {
            // every later term is truncated as well
            break;
        }
        let term = truncated_pow(&shifted, d - 1) * binomial_int(d as u64, i as i64);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum * inv_factorial(d - 1)
}

/// `B_d(x)` from the order recurrence
/// `B_r(y) = y/(r-1) B_{r-1}(y) + (r-y)/(r-1) B_{r-1}(y-1)`
/// starting at the right-continuous indicator `B_1`.
pub fn bspline_eval_recurrence(order: SplineOrder, x: &Rational) -> Rational {
    let d = order.get();
    // level[m] holds B_r(x - m) for m = 0..=d-r.
    let mut level: Vec<Rational> = (0..d)
        .map(|m| {
            let y = x - rat(m as i64);
            if in_support(1, &y) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    for r in 2..=d {
        let denom = rat(r as i64 - 1);
        let next: Vec<Rational> = (0..=(d - r) as usize)
            .map(|m| {
                let y = x - rat(m as i64);
                let left = &level[m];
                let right = &level[m + 1];
                let mut acc = Rational::zero();
                if !left.is_zero() {
                    acc += &y * left;
                }
                if !right.is_zero() {
                    acc += (rat(r as i64) - &y) * right;
                }
                acc / &denom
            })
            .collect();
        level = next;
    }
    level.swap_remove(0)
}

/// Default evaluation route used by the combinatorial modules.
pub fn bspline(order: SplineOrder, x: &Rational) -> Rational {
    bspline_eval_explicit(order, x)
}

/// The polynomial piece of `B_d` on `[j, j + 1)`, built from the truncated
/// terms that are active there (`i <= j`).
pub fn bspline_piece(order: SplineOrder, j: u32) -> Result<PiecePoly> {
    let d = order.get();
    if j >= d {
        return Err(Error::IndexOutOfSupport { d, j });
    }
    let mut poly = Polynomial::zero();
    for i in 0..=j {
        let base = Polynomial::linear(rat(-(i as i64)), Rational::one()).pow(d - 1);
        let mut c = Rational::from_integer(binomial_int(d as u64, i as i64));
        if i % 2 == 1 {
            c = -c;
        }
        poly = &poly + &base.scale(&c);
    }
    Ok(PiecePoly {
        order,
        piece_index: j,
        poly: poly.scale(&inv_factorial(d - 1)),
    })
}

/// All pieces of `B_d`, index `j` covering `[j, j + 1)`.
pub fn bspline_pieces(order: SplineOrder) -> Vec<PiecePoly> {
    (0..order.get())
        .map(|j| bspline_piece(order, j).expect("piece index within support"))
        .collect()
}

/// Exact `integral_a^b B_d(x) dx` from the antiderivatives of the pieces.
/// Reversed limits give the negated integral.
pub fn bspline_integrate(order: SplineOrder, a: &Rational, b: &Rational) -> Rational {
    if a > b {
        return -bspline_integrate(order, b, a);
    }
    let d = order.get();
    let lo = a.clone().max(Rational::zero());
    let hi = b.clone().min(rat(d as i64));
    if lo >= hi {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    for piece in bspline_pieces(order) {
        let left = rat(piece.piece_index as i64);
        let right = rat(piece.piece_index as i64 + 1);
        let from = lo.clone().max(left);
        let to = hi.clone().min(right);
        if from >= to {
            continue;
        }
        let anti = piece.poly.antiderivative();
        total += anti.eval(&to) - anti.eval(&from);
    }
    total
}

/// `B_d(x) - sum_{j=0}^{d} 2^(1-d) C(d,j) B_d(2x - j)`.
pub fn two_scale_residual(order: SplineOrder, x: &Rational) -> Rational {
    let d = order.get();
    let two_x = x * rat(2);
    let mut refined = Rational::zero();
    for j in 0..=d {
        let v = bspline(order, &(&two_x - rat(j as i64)));
        if !v.is_zero() {
            refined += v * binomial_int(d as u64, j as i64);
        }
    }
    let weight = Rational::new(BigInt::one(), BigInt::one() << (d - 1));
    bspline(order, x) - refined * weight
}

/// `sum_k B_d(x - k) - 1`, summing only the translates whose argument lies
/// in `[0, d]`.
pub fn partition_residual(order: SplineOrder, x: &Rational) -> Rational {
    let d = order.get() as i64;
    let k_max = x.floor().to_integer();
    let k_min = (x - rat(d)).ceil().to_integer();
    let mut sum = Rational::zero();
    let mut k = k_min;
    while k <= k_max {
        sum += bspline(order, &(x - Rational::from_integer(k.clone())));
        k += 1;
    }
    sum - Rational::one()
}

/// `B_d(x)^2 - B_d(x - h) B_d(x + h)` at every interior grid point
/// `x = m/g` of `(0, d)` with `h = 1/g`.
pub fn log_concavity_witness(order: SplineOrder, grid_denominator: u32) -> Result<Vec<Rational>> {
    if grid_denominator == 0 {
        return Err(Error::InvalidArgument(
            "grid denominator must be positive".into(),
        ));
    }
    let g = grid_denominator as i64;
    let d = order.get() as i64;
    // Values on the closed grid 0..=d*g so neighbours are shared.
    let values: Vec<Rational> = (0..=d * g)
        .map(|m| bspline(order, &Rational::new(m.into(), g.into())))
        .collect();
    Ok((1..(d * g) as usize)
        .map(|m| &values[m] * &values[m] - &values[m - 1] * &values[m + 1])
        .collect())
}

/// `B_d(x)` for each `x`, in input order. Work is spread over the rayon
/// pool; the result does not depend on the schedule.
pub fn bspline_eval_many(order: SplineOrder, xs: &[Rational]) -> Vec<Rational> {
    use rayon::prelude::*;
    xs.par_iter().map(|x| bspline(order, x)).collect()
}
