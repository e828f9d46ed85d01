//! Truncated power series with exact rational coefficients, and the
//! coefficientwise check of the bivariate functional equation
//!
//! ```text
//! Σ_n Σ_h S'_k(n,h) w^{2h} x^n
//!     = 1/(w²x² - x + 1) · Σ_n f_k(2n,0) (w x / (w²x² - x + 1))^{2n}
//! ```
//!
//! `w` is a fixed rational parameter; only `x` is a series variable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use crate::exactcount::Counter;
use crate::{Error, Result};

/// Power series in `x` known through `x^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![Rational::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, Rational::from(1))
    }

    /// `c · x^power`, truncated away entirely if `power > order`.
    pub fn monomial(order: usize, power: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Takes the first `order + 1` coefficients, padding with zeros.
    pub fn from_coeffs<I, T>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<Rational>,
    {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| *c != 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect(),
        }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        if self.coeffs[0] == 0 {
            return Err(Error::NotInvertible);
        }
        let order = self.order();
        let a0_inv = Rational::from(self.coeffs[0].recip_ref());
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        out.push(a0_inv.clone());
        for n in 1..=order {
            let mut acc = Rational::new();
            for i in 1..=n {
                if self.coeffs[i] != 0 {
                    acc += Rational::from(&self.coeffs[i] * &out[n - i]);
                }
            }
            out.push(-acc * &a0_inv);
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn assert_same_order(&self, other: &Self) {
        assert_eq!(
            self.order(),
            other.order(),
            "series truncation orders differ"
        );
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;

    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.assert_same_order(rhs);
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| Rational::from(a + b))
                .collect(),
        }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;

    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.assert_same_order(rhs);
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| Rational::from(a - b))
                .collect(),
        }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;

    fn neg(self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| Rational::from(-a)).collect(),
        }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;

    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.assert_same_order(rhs);
        let order = self.order();
        let mut out = TruncSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if *b != 0 {
                    out.coeffs[i + j] += Rational::from(a * b);
                }
            }
        }
        out
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid(format!(
            "crossing bound k = {k} must be >= 2"
        )));
    }
    Ok(())
}

/// Coefficient of `x^n` is `Σ_h S'_k(n,h) w^{2h}`, `n = 0..=order`.
pub fn lhs_series(k: usize, w: &Rational, order: usize) -> Result<TruncSeries> {
    check_k(k)?;
    let counter = Counter::new(k, order)?;
    let w2 = Rational::from(w.square_ref());
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let table = counter.table(n)?;
        // Horner in w² over the arc counts
        let mut acc = Rational::new();
        for count in table.by_arcs().iter().rev() {
            acc *= &w2;
            acc += count;
        }
        coeffs.push(acc);
    }
    Ok(TruncSeries { coeffs })
}

/// `1/(w²x² - x + 1) · Σ_{n <= order/2} f_k(2n,0) (w x/(w²x² - x + 1))^{2n}`.
///
/// The argument has valuation one, so its `2n`-th power vanishes below
/// `x^{2n}` and later terms cannot reach `x^order`. For `w = 0` only the
/// `n = 0` term survives.
pub fn rhs_series(k: usize, w: &Rational, order: usize) -> Result<TruncSeries> {
    check_k(k)?;
    let counter = Counter::new(k, order)?;
    let w2 = Rational::from(w.square_ref());
    let denominator = TruncSeries::from_coeffs(order, [Rational::from(1), Rational::from(-1), w2]);
    let inv_den = denominator.inv()?;
    let argument = &TruncSeries::monomial(order, 1, w.clone()) * &inv_den;
    let argument_sq = &argument * &argument;

    let terms = if *w == 0 { 0 } else { order / 2 };
    let mut sum = TruncSeries::zero(order);
    let mut power = TruncSeries::one(order);
    for n in 0..=terms {
        let weight = Rational::from(counter.perfect(n).clone());
        sum = &sum + &power.scale(&weight);
        power = &power * &argument_sq;
    }
    Ok(&inv_den * &sum)
}

/// First coefficient where the two sides disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub k: usize,
    pub w: Rational,
    pub order: usize,
    pub mismatch: Option<Mismatch>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares both sides of the functional equation through `x^order`.
pub fn verify_identity(k: usize, w: &Rational, order: usize) -> Result<IdentityCheck> {
    let lhs = lhs_series(k, w, order)?;
    let rhs = rhs_series(k, w, order)?;
    Ok(IdentityCheck {
        k,
        w: w.clone(),
        order,
        mismatch: first_mismatch(&lhs, &rhs),
    })
}

pub(crate) fn first_mismatch(lhs: &TruncSeries, rhs: &TruncSeries) -> Option<Mismatch> {
    lhs.coeffs
        .iter()
        .zip(&rhs.coeffs)
        .position(|(a, b)| a != b)
        .map(|index| Mismatch {
            index,
            lhs: lhs.coeffs[index].clone(),
            rhs: rhs.coeffs[index].clone(),
        })
}

/// Parses `"3/2"`, `"-1"` or `"7"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parsed = match text.split_once('/') {
        Some((num, den)) => {
            let num: Integer = num
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad numerator in {text:?}")))?;
            let den: Integer = den
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad denominator in {text:?}")))?;
            if den == 0 {
                return Err(Error::invalid(format!("zero denominator in {text:?}")));
            }
            Rational::from((num, den))
        }
        None => Rational::from(
            text.parse::<Integer>()
                .map_err(|_| Error::invalid(format!("not a rational: {text:?}")))?,
        ),
    };
    Ok(parsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(num: i64, den: i64) -> Rational {
        Rational::from((num, den))
    }

    fn ints(s: &TruncSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert_eq!(*c.denom(), 1);
                c.numer().to_i64().unwrap()
            })
            .collect()
    }

    #[test]
    fn product_of_conjugates() {
        let a = TruncSeries::from_coeffs(4, [1, 1]);
        let b = TruncSeries::from_coeffs(4, [1, -1]);
        assert_eq!(ints(&(&a * &b)), [1, 0, -1, 0, 0]);
    }

    #[test]
    fn geometric_inverse() {
        let a = TruncSeries::from_coeffs(6, [1, -1]);
        assert_eq!(ints(&a.inv().unwrap()), [1; 7]);
    }

    #[test]
    fn binomial_cube() {
        let a = TruncSeries::from_coeffs(5, [1, 1]);
        assert_eq!(ints(&a.pow(3)), [1, 3, 3, 1, 0, 0]);
        assert_eq!(ints(&a.pow(0)), [1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn zero_constant_term_is_rejected() {
        let a = TruncSeries::from_coeffs(3, [0, 1]);
        assert_eq!(a.inv(), Err(Error::NotInvertible));
    }

    #[test]
    #[should_panic(expected = "orders differ")]
    fn mismatched_orders_panic() {
        let _ = &TruncSeries::one(2) + &TruncSeries::one(3);
    }

    #[test]
    fn lhs_examples() {
        let s = lhs_series(3, &q(1, 1), 4).unwrap();
        assert_eq!(ints(&s), [1, 1, 1, 2, 5]);
        let s = lhs_series(2, &q(0, 1), 5).unwrap();
        assert_eq!(ints(&s), [1; 6]);
        let s = lhs_series(2, &q(1, 1), 8).unwrap();
        assert_eq!(*s.coeff(8), 82);
    }

    #[test]
    fn rhs_examples() {
        for k in [2, 3, 4] {
            for w in [q(0, 1), q(1, 1), q(3, 2)] {
                assert_eq!(*rhs_series(k, &w, 0).unwrap().coeff(0), 1);
            }
        }
        assert_eq!(
            rhs_series(3, &q(1, 1), 10).unwrap(),
            lhs_series(3, &q(1, 1), 10).unwrap()
        );
        assert_eq!(
            rhs_series(2, &q(2, 1), 12).unwrap(),
            lhs_series(2, &q(2, 1), 12).unwrap()
        );
    }

    #[test]
    fn identity_examples() {
        assert!(verify_identity(3, &q(1, 1), 30).unwrap().holds());
        assert!(verify_identity(2, &q(1, 1), 30).unwrap().holds());
        assert!(verify_identity(3, &q(3, 2), 24).unwrap().holds());
        assert!(verify_identity(2, &q(0, 1), 10).unwrap().holds());
    }

    #[test]
    fn identity_reports_first_mismatch() {
        let lhs = lhs_series(3, &q(1, 1), 8).unwrap();
        // perturb x^5 by one structure
        let mut coeffs = lhs.coeffs().to_vec();
        coeffs[5] += 1;
        let rhs = TruncSeries::from_coeffs(8, coeffs);
        let m = first_mismatch(&lhs, &rhs).unwrap();
        assert_eq!(m.index, 5);
        assert_eq!(m.lhs, 13);
        assert_eq!(m.rhs, 14);
    }

    #[test]
    fn fractional_w_has_denominators() {
        let s = lhs_series(2, &q(1, 2), 6).unwrap();
        // n = 3: S'(3,0) + S'(3,1) w² = 1 + 1/4
        assert_eq!(*s.coeff(3), q(5, 4));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/2").unwrap(), q(3, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), q(-4, 1));
        assert_eq!(parse_rational("6/4").unwrap(), q(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn display_is_readable() {
        let a = TruncSeries::from_coeffs(3, [q(1, 1), q(0, 1), q(-1, 2)]);
        assert_eq!(a.to_string(), "1 + (-1/2)x^2 + O(x^4)");
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(
            head in prop_oneof![-9i64..=-1, 1i64..=9],
            tail in proptest::collection::vec(-9i64..=9, 0..12),
        ) {
            let order = 12;
            let a = TruncSeries::from_coeffs(order, std::iter::once(head).chain(tail));
            let inv = a.inv().unwrap();
            prop_assert_eq!(&a * &inv, TruncSeries::one(order));
            prop_assert_eq!(&inv * &a, TruncSeries::one(order));
        }

        #[test]
        fn pow_matches_repeated_product(
            coeffs in proptest::collection::vec(-5i64..=5, 1..6),
            exp in 0u32..6,
        ) {
            let a = TruncSeries::from_coeffs(8, coeffs);
            let mut expect = TruncSeries::one(8);
            for _ in 0..exp {
                expect = &expect * &a;
            }
            prop_assert_eq!(a.pow(exp), expect);
        }
    }
}
