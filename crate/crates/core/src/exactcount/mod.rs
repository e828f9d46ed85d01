//! Exact counts of k-noncrossing matchings and RNA structures.
//!
//! Notation follows the usual conventions: `f_k(n, ℓ)` counts k-noncrossing
//! partial matchings on `n` points with `ℓ` isolated points (1-arcs allowed),
//! `S_k(n, ℓ)` counts k-noncrossing structures (no 1-arcs) with `ℓ` isolated
//! points, `S'_k(n, h) = S_k(n, n - 2h)` counts those with `h` arcs and
//! `S_k(n)` counts all structures on `n` points.
//!
//! Structures are obtained from matchings by inclusion–exclusion over the
//! 1-arcs, so every count here is an alternating sum evaluated in exact
//! integer arithmetic.

mod tables;
mod walks;

use rug::Integer;

use crate::{Error, Result};

pub use tables::{BinomialTable, CatalanTable};
pub use walks::closed_walk_counts;

/// Arc-count table of k-noncrossing structures on `n` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    k: usize,
    n: usize,
    by_arcs: Vec<Integer>,
    total: Integer,
}

impl CountTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `S'_k(n, h)` for `h = 0..=n/2`.
    pub fn by_arcs(&self) -> &[Integer] {
        &self.by_arcs
    }

    /// `S'_k(n, h)`, or `None` past `n/2` arcs.
    pub fn arcs(&self, h: usize) -> Option<&Integer> {
        self.by_arcs.get(h)
    }

    /// `S_k(n, ℓ)`; zero when `n - ℓ` is odd or `ℓ > n`.
    pub fn isolated(&self, ell: usize) -> Integer {
        if ell > self.n || (self.n - ell) % 2 == 1 {
            return Integer::new();
        }
        self.by_arcs[(self.n - ell) / 2].clone()
    }

    /// `S_k(n)`.
    pub fn total(&self) -> &Integer {
        &self.total
    }

    pub fn max_arcs(&self) -> usize {
        self.n / 2
    }
}

/// `f_k(n, ℓ)` together with its arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingCount {
    pub k: usize,
    pub n: usize,
    pub ell: usize,
    pub value: Integer,
}

/// How `f_k(2m, 0)` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingRoute {
    /// Catalan closed forms (k = 2, 3 only).
    Closed,
    /// Weyl-chamber walk DP (any k).
    Walks,
}

/// Memoized counting context for a fixed `k` and all `n <= max_n`.
///
/// Holds Pascal's triangle and the perfect-matching numbers `f_k(2m, 0)`;
/// everything else is assembled from those two tables.
#[derive(Debug, Clone)]
pub struct Counter {
    k: usize,
    route: MatchingRoute,
    binom: BinomialTable,
    perfect: Vec<Integer>,
}

impl Counter {
    /// Closed forms for k = 2, 3 and the walk DP for larger k.
    pub fn new(k: usize, max_n: usize) -> Result<Self> {
        let route = if k <= 3 {
            MatchingRoute::Closed
        } else {
            MatchingRoute::Walks
        };
        Self::with_route(k, max_n, route)
    }

    pub fn with_route(k: usize, max_n: usize, route: MatchingRoute) -> Result<Self> {
        check_k(k)?;
        let max_m = max_n / 2;
        let perfect = match route {
            MatchingRoute::Closed => closed_perfect(k, max_m)?,
            MatchingRoute::Walks => closed_walk_counts(k - 1, max_m),
        };
        Ok(Counter {
            k,
            route,
            binom: BinomialTable::up_to(max_n),
            perfect,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn route(&self) -> MatchingRoute {
        self.route
    }

    pub fn max_n(&self) -> usize {
        self.binom.max_n()
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.max_n() {
            return Err(Error::invalid(format!(
                "n = {n} beyond the prepared range {}",
                self.max_n()
            )));
        }
        Ok(())
    }

    /// `f_k(2m, 0)`.
    pub fn perfect(&self, m: usize) -> &Integer {
        &self.perfect[m]
    }

    /// `f_k(n, ℓ) = binom(n, ℓ) f_k(n - ℓ, 0)`.
    pub fn matchings(&self, n: usize, ell: usize) -> Result<Integer> {
        self.check_n(n)?;
        Ok(self.matchings_unchecked(n, ell))
    }

    fn matchings_unchecked(&self, n: usize, ell: usize) -> Integer {
        if ell > n || (n - ell) % 2 == 1 {
            return Integer::new();
        }
        Integer::from(self.binom.get_ref(n, ell) * &self.perfect[(n - ell) / 2])
    }

    /// `Σ_ℓ f_k(n, ℓ)`, all k-noncrossing partial matchings on `n` points.
    pub fn all_matchings(&self, n: usize) -> Result<Integer> {
        self.check_n(n)?;
        Ok(self.all_matchings_unchecked(n))
    }

    fn all_matchings_unchecked(&self, n: usize) -> Integer {
        (0..=n / 2)
            .map(|m| Integer::from(self.binom.get_ref(n, 2 * m) * &self.perfect[m]))
            .sum()
    }

    /// `S_k(n, ℓ) = Σ_b (-1)^b binom(n-b, b) f_k(n-2b, ℓ)`.
    pub fn structures_isolated(&self, n: usize, ell: usize) -> Result<Integer> {
        self.check_n(n)?;
        Ok(self.structures_isolated_unchecked(n, ell))
    }

    fn structures_isolated_unchecked(&self, n: usize, ell: usize) -> Integer {
        if ell > n || (n - ell) % 2 == 1 {
            return Integer::new();
        }
        let mut acc = Integer::new();
        for b in 0..=(n - ell) / 2 {
            let term = Integer::from(
                self.binom.get_ref(n - b, b) * &self.matchings_unchecked(n - 2 * b, ell),
            );
            if b % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        assert!(
            acc >= 0,
            "negative inclusion-exclusion residue for k={}, n={n}, ell={ell}",
            self.k
        );
        acc
    }

    /// `S_k(n)` by the double sum `Σ_b (-1)^b binom(n-b, b) Σ_ℓ f_k(n-2b, ℓ)`,
    /// independent of the per-arc rows.
    pub fn total_by_double_sum(&self, n: usize) -> Result<Integer> {
        self.check_n(n)?;
        let mut acc = Integer::new();
        for b in 0..=n / 2 {
            let term = Integer::from(
                self.binom.get_ref(n - b, b) * &self.all_matchings_unchecked(n - 2 * b),
            );
            if b % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Ok(acc)
    }

    pub fn table(&self, n: usize) -> Result<CountTable> {
        self.check_n(n)?;
        let by_arcs: Vec<Integer> = (0..=n / 2)
            .map(|h| self.structures_isolated_unchecked(n, n - 2 * h))
            .collect();
        let total = self.total_by_double_sum(n)?;
        let row_sum: Integer = by_arcs.iter().sum();
        assert_eq!(
            row_sum, total,
            "row sum disagrees with the double-sum total for k={}, n={n}",
            self.k
        );
        Ok(CountTable {
            k: self.k,
            n,
            by_arcs,
            total,
        })
    }

    pub fn matching_count(&self, n: usize, ell: usize) -> Result<MatchingCount> {
        Ok(MatchingCount {
            k: self.k,
            n,
            ell,
            value: self.matchings(n, ell)?,
        })
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

fn check_ell(n: usize, ell: usize) -> Result<()> {
    if ell > n {
        return Err(Error::invalid(format!("ell = {ell} exceeds n = {n}")));
    }
    Ok(())
}

fn closed_perfect(k: usize, max_m: usize) -> Result<Vec<Integer>> {
    match k {
        2 => {
            let cat = CatalanTable::up_to(max_m);
            Ok((0..=max_m).map(|m| cat.get(m).clone()).collect())
        }
        3 => {
            let cat = CatalanTable::up_to(max_m + 2);
            Ok((0..=max_m)
                .map(|m| {
                    Integer::from(cat.get(m + 2) * cat.get(m))
                        - Integer::from(cat.get(m + 1).square_ref())
                })
                .collect())
        }
        _ => Err(Error::invalid(format!(
            "closed forms exist for k = 2, 3 only (got k = {k})"
        ))),
    }
}

/// The `m`-th Catalan number.
pub fn catalan(m: usize) -> Integer {
    CatalanTable::up_to(m).get(m).clone()
}

/// `f_k(n, ℓ)` from the Catalan closed forms; `k` must be 2 or 3.
pub fn f_closed(k: usize, n: usize, ell: usize) -> Result<Integer> {
    if k != 2 && k != 3 {
        return Err(Error::invalid(format!(
            "closed forms exist for k = 2, 3 only (got k = {k})"
        )));
    }
    check_ell(n, ell)?;
    if (n - ell) % 2 == 1 {
        return Ok(Integer::new());
    }
    let m = (n - ell) / 2;
    let perfect = closed_perfect(k, m)?;
    Ok(Integer::from(Integer::binomial_u(n as u32, ell as u32)) * &perfect[m])
}

/// `f_k(n, ℓ)` for any `k >= 2`, with `f_k(2m, 0)` from the walk DP.
pub fn f_general(k: usize, n: usize, ell: usize) -> Result<Integer> {
    check_k(k)?;
    check_ell(n, ell)?;
    if (n - ell) % 2 == 1 {
        return Ok(Integer::new());
    }
    let m = (n - ell) / 2;
    let walks = closed_walk_counts(k - 1, m);
    Ok(Integer::from(Integer::binomial_u(n as u32, ell as u32)) * &walks[m])
}

/// `S_k(n, ℓ)`, zero when `n - ℓ` is odd.
pub fn s_count_iso(k: usize, n: usize, ell: usize) -> Result<Integer> {
    check_ell(n, ell)?;
    Counter::new(k, n)?.structures_isolated(n, ell)
}

pub fn count_table(k: usize, n: usize) -> Result<CountTable> {
    Counter::new(k, n)?.table(n)
}
