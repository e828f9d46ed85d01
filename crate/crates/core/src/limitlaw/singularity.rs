//! The dominant singularity `ρ_k(s)` of `Σ_n Σ_h S'_k(n,h) e^{hs} z^n`.
//!
//! With `w = e^{s/2}` the generating function is the matchings series
//! evaluated at `y = (w z / (e^s z² - z + 1))²`. The matchings series has its
//! dominant singularity at `y = 1/4` (k = 2) or `y = 1/16` (k = 3), i.e. at
//! `w z / (e^s z² - z + 1) = ±1/c` with `c = 2` or `c = 4`. Clearing
//! denominators gives the quadratics
//!
//! ```text
//! e^s z² - (1 + c w) z + 1 = 0        (roots ζ3, ζ4; ρ_k = ζ3)
//! e^s z² + (c w - 1) z + 1 = 0        (roots ζ5, ζ6)
//! e^s z² - z + 1 = 0                  (roots ζ1, ζ2, poles of the prefactor)
//! ```

use rug::Float;

use super::{check_k, real};
use crate::{Error, Result};

/// Largest `|s|` accepted by [`rho`].
pub const S_BAND: f64 = 0.1;

/// Step for the central finite-difference check of the derivatives.
pub const FD_STEP: f64 = 1e-4;

fn outer_scale(k: usize) -> u32 {
    match k {
        2 => 2,
        3 => 4,
        _ => unreachable!("k checked by caller"),
    }
}

fn check_band(s: &Float) -> Result<()> {
    if !s.is_finite() || s.clone().abs() > S_BAND {
        return Err(Error::OutOfBand(s.to_f64()));
    }
    Ok(())
}

/// `ρ_k(s) = (c w + 1 - √((c w + 1)² - 4 w²)) / (2 w²)`, `w = e^{s/2}`.
pub fn rho(k: usize, s: &Float) -> Result<Float> {
    check_k(k)?;
    check_band(s)?;
    let w = real(s / 2u32).exp();
    let w2 = real(w.square_ref());
    let mu_plus = real(&w * outer_scale(k)) + 1u32;
    let theta = (real(mu_plus.square_ref()) - real(&w2 * 4u32)).sqrt();
    Ok((mu_plus - theta) / (w2 * 2u32))
}

pub fn rho_at(k: usize, s: f64) -> Result<Float> {
    rho(k, &real(s))
}

/// `(ρ'(0), ρ''(0))` from the differentiated closed forms.
///
/// k = 2: `-1 + 2√5/5` and `3/4 - 33√5/100`;
/// k = 3: `-3/2 + 13√21/42` and `1 - 94√21/441`.
pub fn rho_derivatives(k: usize) -> Result<(Float, Float)> {
    check_k(k)?;
    Ok(match k {
        2 => {
            let r5 = real(5u32).sqrt();
            (
                real(&r5 * 2u32) / 5u32 - 1u32,
                real(3u32) / 4u32 - real(&r5 * 33u32) / 100u32,
            )
        }
        _ => {
            let r21 = real(21u32).sqrt();
            (
                real(&r21 * 13u32) / 42u32 - real(3u32) / 2u32,
                1u32 - real(&r21 * 94u32) / 441u32,
            )
        }
    })
}

/// Central finite differences of `ρ_k` at zero with the given step.
pub fn rho_derivatives_fd(k: usize, step: &Float) -> Result<(Float, Float)> {
    let plus = rho(k, step)?;
    let minus = rho(k, &real(-step))?;
    let center = rho(k, &real(0u32))?;
    let first = real(&plus - &minus) / real(step * 2u32);
    let second = (plus - real(&center * 2u32) + minus) / real(step.square_ref());
    Ok((first, second))
}

/// A possibly complex root.
#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub re: Float,
    pub im: Float,
}

impl Root {
    pub fn modulus(&self) -> Float {
        real(self.re.hypot_ref(&self.im))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|a z² + b z + c|`.
    pub fn residual(&self, a: &Float, b: &Float, c: &Float) -> Float {
        let re2 = real(self.re.square_ref()) - real(self.im.square_ref());
        let im2 = real(&self.re * &self.im) * 2u32;
        let re = real(a * &re2) + real(b * &self.re) + c;
        let im = real(a * &im2) + real(b * &self.im);
        real(re.hypot_ref(&im))
    }
}

/// Roots `(-b - √D)/(2a)` and `(-b + √D)/(2a)` of `a z² + b z + c`.
fn quadratic_roots(a: &Float, b: &Float, c: &Float) -> (Root, Root) {
    let disc = real(b.square_ref()) - real(a * c) * 4u32;
    let two_a = real(a * 2u32);
    let center = real(-b) / &two_a;
    if disc >= 0u32 {
        let half = disc.sqrt() / &two_a;
        (
            Root {
                re: real(&center - &half),
                im: real(0u32),
            },
            Root {
                re: center + half,
                im: real(0u32),
            },
        )
    } else {
        let half = (-disc).sqrt() / &two_a;
        (
            Root {
                re: center.clone(),
                im: real(-&half),
            },
            Root {
                re: center,
                im: half,
            },
        )
    }
}

/// The six singularities ζ1..ζ6 at a real `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityData {
    pub k: usize,
    pub s: Float,
    pub rho: Float,
    pub roots: [Root; 6],
}

impl SingularityData {
    /// Coefficients `(a, b, c)` of the quadratic defining ζ_{i+1}.
    pub fn quadratic_for(&self, i: usize) -> (Float, Float, Float) {
        let es = real(self.s.exp_ref());
        let w = real(&self.s / 2u32).exp();
        let cw = real(&w * outer_scale(self.k));
        let b = match i {
            0 | 1 => real(-1i32),
            2 | 3 => -(cw + 1u32),
            4 | 5 => cw - 1u32,
            _ => panic!("root index {i} out of range"),
        };
        (es, b, real(1u32))
    }

    pub fn residuals(&self) -> [Float; 6] {
        std::array::from_fn(|i| {
            let (a, b, c) = self.quadratic_for(i);
            self.roots[i].residual(&a, &b, &c)
        })
    }

    /// Index (0-based) of the minimal-modulus root among ζ3..ζ6.
    pub fn dominant_index(&self) -> usize {
        (2..6)
            .min_by(|&x, &y| {
                self.roots[x]
                    .modulus()
                    .partial_cmp(&self.roots[y].modulus())
                    .expect("finite moduli")
            })
            .expect("non-empty range")
    }
}

pub fn roots_at(k: usize, s: &Float) -> Result<SingularityData> {
    check_k(k)?;
    check_band(s)?;
    let es = real(s.exp_ref());
    let w = real(s / 2u32).exp();
    let cw = real(&w * outer_scale(k));
    let one = real(1u32);
    let (z1, z2) = quadratic_roots(&es, &real(-1i32), &one);
    let (z3, z4) = quadratic_roots(&es, &real(-(real(&cw + 1u32))), &one);
    let (z6, z5) = quadratic_roots(&es, &real(&cw - 1u32), &one);
    Ok(SingularityData {
        k,
        s: real(s),
        rho: rho(k, s)?,
        roots: [z1, z2, z3, z4, z5, z6],
    })
}

/// Mean and variance densities of the arc count together with the growth
/// data of `S_k(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitConstants {
    pub k: usize,
    /// `μ = -ρ'(0)/ρ(0)`
    pub mu: Float,
    /// `σ² = μ² - ρ''(0)/ρ(0)`
    pub sigma2: Float,
    /// `1/ρ(0)`
    pub gamma: Float,
    pub rho0: Float,
    pub rho_prime: Float,
    pub rho_second: Float,
    /// Degree of the falling factorial in the asymptotic formula (k = 3).
    pub subexp_exponent: Option<u32>,
    /// Constant in front of `γ^n / (n)_5`, i.e. `10.4724 · 4!` (k = 3).
    pub amplitude: Option<Float>,
}

impl LimitConstants {
    /// Expected fraction of unpaired positions, `1 - 2μ`.
    pub fn unpaired_fraction(&self) -> Float {
        1u32 - real(&self.mu * 2u32)
    }
}

pub fn limit_constants(k: usize) -> Result<LimitConstants> {
    let rho0 = rho(k, &real(0u32))?;
    let (rho_prime, rho_second) = rho_derivatives(k)?;
    let mu = -(real(&rho_prime / &rho0));
    let sigma2 = real(mu.square_ref()) - real(&rho_second / &rho0);
    let gamma = real(rho0.recip_ref());
    let (subexp_exponent, amplitude) = if k == 3 {
        (Some(5), Some(super::decimal(super::S3_AMPLITUDE) * 24u32))
    } else {
        (None, None)
    };
    Ok(LimitConstants {
        k,
        mu,
        sigma2,
        gamma,
        rho0,
        rho_prime,
        rho_second,
        subexp_exponent,
        amplitude,
    })
}
