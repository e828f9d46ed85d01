//! `S_3(n) ~ 10.4724 · 4! / (n (n-1) ... (n-4)) · ((5 + √21)/2)^n`.

use rug::{Float, Integer};

use super::{decimal, real};
use crate::exactcount::count_table;
use crate::{Error, Result};

/// Amplitude constant of the 3-noncrossing asymptotic formula.
pub const S3_AMPLITUDE: &str = "10.4724";

#[derive(Debug, Clone, PartialEq)]
pub struct Asymptotic {
    pub n: usize,
    pub value: Float,
    pub ln_value: Float,
}

fn growth() -> Float {
    (real(21u32).sqrt() + 5u32) / 2u32
}

fn ln_falling5(n: usize) -> Float {
    (0..5).fold(real(0u32), |acc, i| acc + real((n - i) as u64).ln())
}

fn check_n(n: usize) -> Result<()> {
    if n < 5 {
        return Err(Error::invalid(format!(
            "asymptotic formula needs n >= 5 (got {n})"
        )));
    }
    Ok(())
}

/// The asymptotic formula, evaluated through its logarithm.
pub fn asymptotic_s3(n: usize) -> Result<Asymptotic> {
    check_n(n)?;
    let amplitude = decimal(S3_AMPLITUDE) * 24u32;
    let ln_value = amplitude.ln() - ln_falling5(n) + growth().ln() * n as u64;
    Ok(Asymptotic {
        n,
        value: real(ln_value.exp_ref()),
        ln_value,
    })
}

/// `S_3(n) · (n)_5 · γ^{-n} / 4!`, the amplitude implied by an exact count.
pub fn implied_amplitude(n: usize, exact: &Integer) -> Result<Float> {
    check_n(n)?;
    let ln = real(exact).ln() + ln_falling5(n) - growth().ln() * n as u64;
    Ok(ln.exp() / 24u32)
}

/// `S_3(n)` divided by its asymptotic value.
pub fn exact_to_asymptotic_ratio(n: usize) -> Result<Float> {
    let exact = count_table(3, n)?;
    let asym = asymptotic_s3(n)?;
    Ok((real(exact.total()).ln() - asym.ln_value).exp())
}
