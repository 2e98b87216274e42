use std::fmt::Debug;

use num_traits::{Float, FloatConst};

/// Real scalar used for state-vector amplitudes and numeric fits.
pub trait Scalar: Float + FloatConst + Send + Sync + Debug + 'static {
    /// Comparison tolerance for exact dyadic quantities at this precision.
    const TOLERANCE: f64;

    fn from_f64(v: f64) -> Self;

    fn to_f64(self) -> f64;
}

impl Scalar for f64 {
    const TOLERANCE: f64 = 1e-9;

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    const TOLERANCE: f64 = 1e-5;

    fn from_f64(v: f64) -> Self {
        v as f32
    }

    fn to_f64(self) -> f64 {
        self as f64
    }
}
