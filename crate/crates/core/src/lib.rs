pub mod bounds;
pub mod chevalley;
pub mod curvature;
pub mod error;
pub mod hwmodule;
pub mod linalg;
pub mod rootsys;
pub mod scalar;

pub use error::{Error, Result};

/// Exact rational numbers used for roots, weights and inner products.
pub type Rational = num_rational::Ratio<i128>;

/// The exact field Q(sqrt 2).
pub type ExactSqrt2 = scalar::Sqrt2Ext<Rational>;

/// Double-precision maximizer output.
pub type MaxReport64 = curvature::MaxReport<f64>;
