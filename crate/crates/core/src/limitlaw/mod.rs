//! Singularity data, limit constants and limit-law distances.
//!
//! All real arithmetic runs on MPFR floats at [`PRECISION`] bits. Exact
//! counts and probabilities are converted to floats only at the last step.

mod asymptotic;
mod distance;
mod singularity;

use rug::Float;

pub use asymptotic::{
    asymptotic_s3, exact_to_asymptotic_ratio, implied_amplitude, Asymptotic, S3_AMPLITUDE,
};
pub use distance::{
    binomial_row, distance_report, distribution, gaussian_cdf, gaussian_density, ks_distance,
    ks_distance_row, llt_distance, llt_distance_row, pathological_row, DistanceReport,
    Distribution, GaussianLaw,
};
pub use singularity::{
    limit_constants, rho, rho_at, rho_derivatives, rho_derivatives_fd, roots_at, LimitConstants,
    Root, SingularityData, FD_STEP, S_BAND,
};

/// Mantissa bits for every float computation.
pub const PRECISION: u32 = 128;

pub(crate) fn real<T>(value: T) -> Float
where
    Float: rug::Assign<T>,
{
    Float::with_val(PRECISION, value)
}

/// Parses a decimal literal at full precision (avoids f64 rounding of constants).
pub(crate) fn decimal(text: &str) -> Float {
    real(Float::parse(text).expect("valid decimal literal"))
}

pub(crate) fn check_k(k: usize) -> crate::Result<()> {
    if k != 2 && k != 3 {
        return Err(crate::Error::invalid(format!(
            "limit laws are available for k = 2, 3 only (got k = {k})"
        )));
    }
    Ok(())
}
