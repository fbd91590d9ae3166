//! Computation, bounding and cross-verification of constants arising in
//! multivariate polynomial inequalities over convex bodies of low dimension.
//!
//! The crate is organised by subject:
//!
//! * [`geometry`]: convex body representations, support functional, widths,
//!   chords, membership and the gauge.
//! * [`minkowski`]: the generalized Minkowski functional `α(K, x)`.
//! * [`chebyshev`]: Chebyshev polynomials, the growth envelope
//!   `C_n(K, x) = T_n(α(K, x))` and the extremal ridge polynomial.
//! * [`bernstein`]: inscribed-ellipse gradient bounds and gradient-set sampling.
//! * [`polarization`]: min–max estimators for linear polarization constants and
//!   metric Chebyshev constants of spheres.
//! * [`potential`]: sphere logarithmic integrals, rendezvous game values and
//!   Harris constants.
//!
//! All stochastic routines take an explicit seed; identical inputs produce
//! identical outputs regardless of the size of the rayon thread pool.

pub mod acceptance;
pub mod bernstein;
pub mod chebyshev;
pub mod error;
pub mod field;
pub mod geometry;
pub mod lp;
pub mod minkowski;
pub mod optimize;
pub mod polarization;
pub mod poly;
pub mod potential;
pub mod quadrature;
pub mod report;
pub mod sampling;

pub use error::{Error, Result};
pub use field::Field;
pub use geometry::{ConvexBody, Direction, Point};
pub use report::{BoundReport, Table};
