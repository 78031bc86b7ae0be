//! Exact scalars: rationals, cyclotomic numbers and rational functions in q.

mod cyclo;
mod rational;
mod scalar;

pub use cyclo::{euler_phi, CycloElem};
pub use rational::Rational;
pub use scalar::{RatFunc, Scalar};
