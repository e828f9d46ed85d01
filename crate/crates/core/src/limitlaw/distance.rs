//! Exact arc-count distributions and their distances to the Gaussian.
//!
//! The CDF comparison uses a continuity correction: the lattice CDF at `h`
//! is compared with `Φ((h + 1/2 - μn) / √(σ²n))`. The local comparison is
//! `|√(σ²n) P(X_n = h) - φ((h - μn) / √(σ²n))|`. Both use the asymptotic
//! densities `μ`, `σ²`, not the finite-n moments.

use rug::{Float, Integer, Rational};

use super::{check_k, limit_constants, real};
use crate::exactcount::count_table;
use crate::{Error, Result};

/// `Φ(x) = (1 + erf(x/√2)) / 2`.
pub fn gaussian_cdf(x: &Float) -> Float {
    let scaled = real(x / real(2u32).sqrt());
    (scaled.erf() + 1u32) / 2u32
}

/// `φ(x) = e^{-x²/2} / √(2π)`.
pub fn gaussian_density(x: &Float) -> Float {
    let root_two_pi = (real(rug::float::Constant::Pi) * 2u32).sqrt();
    (-(real(x.square_ref()) / 2u32)).exp() / root_two_pi
}

/// Normal law with mean `μn` and variance `σ²n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianLaw {
    pub mean: Float,
    pub sd: Float,
}

impl GaussianLaw {
    pub fn scaled(n: usize, mean_density: &Float, var_density: &Float) -> Self {
        GaussianLaw {
            mean: real(mean_density * n as u64),
            sd: real(var_density * n as u64).sqrt(),
        }
    }

    /// Standardized position of lattice point `h`.
    pub fn standardize(&self, h: f64) -> Float {
        (real(h) - &self.mean) / &self.sd
    }

    /// `Φ((h + 1/2 - mean) / sd)`.
    pub fn corrected_cdf(&self, h: usize) -> Float {
        gaussian_cdf(&self.standardize(h as f64 + 0.5))
    }

    /// Standard normal density at the standardized `h`.
    pub fn standard_density(&self, h: usize) -> Float {
        gaussian_density(&self.standardize(h as f64))
    }

    /// Density of the scaled law at `h`, comparable to `P(X = h)`.
    pub fn density(&self, h: usize) -> Float {
        self.standard_density(h) / &self.sd
    }
}

fn row_total(row: &[Integer]) -> Result<Integer> {
    let total: Integer = row.iter().sum();
    if total == 0 {
        return Err(Error::invalid("row sums to zero"));
    }
    Ok(total)
}

/// `sup_h |P(X <= h) - Φ((h + 1/2 - mean)/sd)|` for a (possibly signed) row.
pub fn ks_distance_row(row: &[Integer], law: &GaussianLaw) -> Result<Float> {
    let total = real(&row_total(row)?);
    let mut partial = Integer::new();
    let mut best = real(0u32);
    for (h, count) in row.iter().enumerate() {
        partial += count;
        let cdf = real(&partial) / &total;
        let gap = (cdf - law.corrected_cdf(h)).abs();
        if gap > best {
            best = gap;
        }
    }
    Ok(best)
}

/// `sup_h |sd · P(X = h) - φ((h - mean)/sd)|` and the `h` attaining it.
pub fn llt_distance_row(row: &[Integer], law: &GaussianLaw) -> Result<(Float, usize)> {
    let total = real(&row_total(row)?);
    let mut best = (real(0u32), 0);
    for (h, count) in row.iter().enumerate() {
        let scaled = real(count) / &total * &law.sd;
        let gap = (scaled - law.standard_density(h)).abs();
        if gap > best.0 {
            best = (gap, h);
        }
    }
    Ok(best)
}

/// Exact law of the arc count `X_n` of a uniform k-noncrossing structure.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    pub k: usize,
    pub n: usize,
    pub counts: Vec<Integer>,
    pub probabilities: Vec<Rational>,
    pub mean_exact: Rational,
    pub variance_exact: Rational,
    pub mean: Float,
    pub variance: Float,
}

impl Distribution {
    pub fn mode(&self) -> usize {
        // first maximum
        let mut best = 0;
        for (h, c) in self.counts.iter().enumerate() {
            if *c > self.counts[best] {
                best = h;
            }
        }
        best
    }

    pub fn probability_sum(&self) -> Rational {
        self.probabilities.iter().sum()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::invalid("distribution needs n >= 1"));
    }
    Ok(())
}

pub fn distribution(n: usize, k: usize) -> Result<Distribution> {
    check_k(k)?;
    check_n(n)?;
    let table = count_table(k, n)?;
    let total = table.total();
    let probabilities: Vec<Rational> = table
        .by_arcs()
        .iter()
        .map(|c| Rational::from((c.clone(), total.clone())))
        .collect();
    let sum: Rational = probabilities.iter().sum();
    assert_eq!(sum, 1, "probabilities must sum to one");

    let mut first = Integer::new();
    let mut second = Integer::new();
    for (h, c) in table.by_arcs().iter().enumerate() {
        let h = h as u64;
        first += Integer::from(c * h);
        second += Integer::from(c * (h * h));
    }
    let mean_exact = Rational::from((first, total.clone()));
    let second_moment = Rational::from((second, total.clone()));
    let variance_exact = second_moment - Rational::from(mean_exact.square_ref());
    Ok(Distribution {
        k,
        n,
        counts: table.by_arcs().to_vec(),
        probabilities,
        mean: real(&mean_exact),
        variance: real(&variance_exact),
        mean_exact,
        variance_exact,
    })
}

/// Finite-n moments and both limit-law distances for one `(n, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    pub n: usize,
    pub k: usize,
    pub mean: f64,
    pub variance: f64,
    pub ks_distance: f64,
    pub llt_distance: f64,
    /// Arc count where the local deviation is largest.
    pub llt_argmax: usize,
}

pub fn distance_report(n: usize, k: usize) -> Result<DistanceReport> {
    if n < 2 {
        return Err(Error::invalid("distances need n >= 2"));
    }
    let dist = distribution(n, k)?;
    let c = limit_constants(k)?;
    let law = GaussianLaw::scaled(n, &c.mu, &c.sigma2);
    let ks = ks_distance_row(&dist.counts, &law)?;
    let (llt, llt_argmax) = llt_distance_row(&dist.counts, &law)?;
    Ok(DistanceReport {
        n,
        k,
        mean: dist.mean.to_f64(),
        variance: dist.variance.to_f64(),
        ks_distance: ks.to_f64(),
        llt_distance: llt.to_f64(),
        llt_argmax,
    })
}

pub fn ks_distance(n: usize, k: usize) -> Result<f64> {
    Ok(distance_report(n, k)?.ks_distance)
}

pub fn llt_distance(n: usize, k: usize) -> Result<f64> {
    Ok(distance_report(n, k)?.llt_distance)
}

/// `binom(n, h)`, `h = 0..=n`.
pub fn binomial_row(n: usize) -> Vec<Integer> {
    (0..=n as u32)
        .map(|h| Integer::from(Integer::binomial_u(n as u32, h)))
        .collect()
}

/// `a_{n,h} = binom(n,h) + 2 (-1)^h binom(n,h)`: satisfies a central but not
/// a local limit theorem.
pub fn pathological_row(n: usize) -> Vec<Integer> {
    binomial_row(n)
        .into_iter()
        .enumerate()
        .map(|(h, b)| if h % 2 == 0 { b * 3u32 } else { -b })
        .collect()
}
