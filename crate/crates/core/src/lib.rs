//! Exact computation of Eulerian numbers, refined Eulerian numbers and
//! descent polynomials of indexed permutations through cardinal B-splines,
//! with every quantity available along several independent routes.
//!
//! - [`numcore`]: big rationals, binomials, factorials, truncated powers.
//! - [`polyring`]: dense polynomials over the rationals and interpolation.
//! - [`splinecore`]: exact evaluation, pieces and integrals of `B_d`.
//! - [`eulerian`]: `A(d, k)` and the refined triangle.
//! - [`descent`]: `D(d, n, k)` and the descent polynomial.
//! - [`geometry`]: slab volumes of the cube, Monte Carlo and Minkowski.

pub mod descent;
pub mod error;
pub mod eulerian;
pub mod geometry;
pub mod numcore;
mod perm;
pub mod polyring;
pub mod splinecore;

pub use error::{Error, Result};
pub use numcore::{Natural, Rational};
pub use polyring::Polynomial;
pub use splinecore::SplineOrder;
