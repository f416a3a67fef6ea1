use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};
use rand::distr::{Distribution, StandardUniform};
use rand::RngCore;

/// Floating-point scalar behind all simulation math: `f32` or `f64`.
///
/// The crate-root `*64` aliases pin the double-precision instantiations
/// used by the command-line tool.
pub trait Real: Float + FloatConst + Debug + Display + Send + Sync + 'static {
    /// Uniform deviate in [0, 1), drawn at this type's native resolution.
    fn uniform<R: RngCore + ?Sized>(rng: &mut R) -> Self;

    /// Widening conversion for reporting and hashing.
    fn to_f64(self) -> f64;

    /// Conversion from an `f64` constant.
    fn from_f64(value: f64) -> Self;
}

impl Real for f32 {
    fn uniform<R: RngCore + ?Sized>(rng: &mut R) -> Self {
        StandardUniform.sample(rng)
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn from_f64(value: f64) -> Self {
        value as f32
    }
}

impl Real for f64 {
    fn uniform<R: RngCore + ?Sized>(rng: &mut R) -> Self {
        StandardUniform.sample(rng)
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn from_f64(value: f64) -> Self {
        value
    }
}
