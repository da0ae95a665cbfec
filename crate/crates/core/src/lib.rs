//! Hybrid classical-quantum state preparation.
//!
//! A signal is compressed classically into a sparse transform-domain vector,
//! loaded with a sparse state preparation circuit and decompressed on the
//! quantum side with an inverse QFT or an inverse packet Haar transform.

pub mod circuit;
pub mod error;
pub mod io;
pub mod loaders;
pub mod pipeline;
pub mod qsynth;
pub mod signals;
pub mod statesim;
pub mod transforms;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Coefficients with magnitude below this are treated as exact zeros after a
/// forward transform of a unit-norm signal.
pub const NUMERICAL_ZERO: f64 = 1e-13;

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn log2_exact(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::InvalidLength(len));
    }
    Ok(len.trailing_zeros() as usize)
}
