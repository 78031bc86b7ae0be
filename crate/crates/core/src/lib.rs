#![allow(clippy::needless_range_loop, clippy::suspicious_arithmetic_impl)]

pub mod algebra;
pub mod cartan;
pub mod catalog;
pub mod error;
pub mod field;
pub mod forms;
pub mod groups;
pub mod json;
pub mod linalg;
pub mod modules;
pub mod poly;
pub mod report;
pub mod scalars;
pub mod suite;
pub mod twist;

pub use error::{Error, Result};
pub use field::Field;
pub use num_traits::{One, Zero};
pub use report::Report;
pub use scalars::{CycloElem, Rational, Scalar};

pub type ScalarMatrix = linalg::Matrix<Scalar>;
pub type ScalarHopf = algebra::HopfData<Scalar>;
pub type ScalarTwisted = twist::TwistedAlgebra<Scalar>;
pub type ScalarDatum = cartan::CartanDatum<Scalar>;
pub type ScalarRepresentation = modules::Representation<Scalar>;
