//! Exact scalars: rationals, Gaussian rationals, polynomials over Q(i), and
//! rational-endpoint interval arithmetic.

mod gaussian;
mod interval;
mod poly;
mod rational;
pub mod transcendental;

pub use gaussian::GaussianRational;
pub use interval::{interval_contains_zero, Interval, RatInterval};
pub use poly::Poly;
pub use rational::{rat_normalize, Rational};
