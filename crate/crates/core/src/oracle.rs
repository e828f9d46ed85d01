//! Brute-force enumeration of diagrams, the ground truth for the exact counts.
//!
//! Two modes are needed because structures and matchings are different
//! objects: structures are partial matchings without 1-arcs, matchings are
//! perfect and may use 1-arcs.

use crate::{Error, Result};

/// Largest `n` the oracle accepts unless configured otherwise.
pub const DEFAULT_CAP: usize = 14;

/// A partial matching on `1..=n`, arcs sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Diagram {
    /// A structure: vertex-disjoint arcs `(i, j)` with `1 <= i`, `i + 2 <= j <= n`.
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        Self::build(n, arcs, 2)
    }

    /// Like [`Diagram::new`] but 1-arcs `(i, i+1)` are allowed.
    pub fn with_short_arcs(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        Self::build(n, arcs, 1)
    }

    fn build(n: usize, mut arcs: Vec<(usize, usize)>, min_len: usize) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for &(i, j) in &arcs {
            if i < 1 || j > n || i >= j {
                return Err(Error::invalid(format!(
                    "arc ({i},{j}) is not inside 1..={n}"
                )));
            }
            if j - i < min_len {
                return Err(Error::invalid(format!("({i},{j}) is a 1-arc")));
            }
            for v in [i, j] {
                if seen[v] {
                    return Err(Error::invalid(format!("vertex {v} has degree > 1")));
                }
                seen[v] = true;
            }
        }
        arcs.sort_unstable();
        Ok(Diagram { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_short_arc(&self) -> bool {
        self.arcs.iter().any(|&(i, j)| j == i + 1)
    }

    pub fn crossing_number(&self) -> usize {
        max_mutual_crossing(&self.arcs)
    }
}

/// Size of the largest set of mutually crossing arcs.
pub fn crossing_number(d: &Diagram) -> usize {
    d.crossing_number()
}

/// `arcs` must be sorted by left endpoint and vertex-disjoint.
///
/// A mutually crossing family `i_1 < ... < i_c < j_1 < ... < j_c` is fixed by
/// its first arc `(i_1, j_1)`: the others open inside it and close after it,
/// with right endpoints increasing in left-endpoint order. Any such run is
/// mutually crossing, so the answer is one plus the longest increasing run of
/// right endpoints among those arcs, maximized over the first arc.
fn max_mutual_crossing(arcs: &[(usize, usize)]) -> usize {
    let mut best = 0;
    for (a, &(i1, j1)) in arcs.iter().enumerate() {
        let inner: Vec<usize> = arcs[a + 1..]
            .iter()
            .filter(|&&(i, j)| i < j1 && j > j1)
            .map(|&(i, j)| {
                debug_assert!(i > i1);
                j
            })
            .collect();
        best = best.max(1 + longest_increasing(&inner));
    }
    best
}

fn longest_increasing(xs: &[usize]) -> usize {
    // patience sorting; tails[l] = least tail of an increasing run of length l+1
    let mut tails: Vec<usize> = Vec::new();
    for &x in xs {
        let pos = tails.partition_point(|&t| t < x);
        if pos == tails.len() {
            tails.push(x);
        } else {
            tails[pos] = x;
        }
    }
    tails.len()
}

/// What the oracle enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Partial matchings without 1-arcs (RNA structures).
    Structures,
    /// Perfect matchings, 1-arcs allowed.
    Matchings,
}

#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Oracle { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, n: usize, k: usize) -> Result<()> {
        if k < 2 {
            return Err(Error::invalid(format!(
                "crossing bound k = {k} must be >= 2"
            )));
        }
        if n > self.cap {
            return Err(Error::CapExceeded {
                what: "n",
                value: n as u64,
                cap: self.cap as u64,
            });
        }
        Ok(())
    }

    /// Calls `visit` once per diagram on `n` points with crossing number
    /// below `k`, in lexicographic order of the choice sequence (vertex left
    /// isolated first, then partners in increasing order).
    pub fn visit<F>(&self, n: usize, k: usize, mode: Mode, mut visit: F) -> Result<()>
    where
        F: FnMut(&[(usize, usize)]),
    {
        self.check(n, k)?;
        let mut used = vec![false; n + 2];
        let mut arcs = Vec::with_capacity(n / 2);
        backtrack(1, n, k, mode, &mut used, &mut arcs, &mut visit);
        Ok(())
    }

    pub fn enumerate(&self, n: usize, k: usize, mode: Mode) -> Result<Vec<Diagram>> {
        let mut out = Vec::new();
        self.visit(n, k, mode, |arcs| {
            out.push(Diagram {
                n,
                arcs: arcs.to_vec(),
            })
        })?;
        Ok(out)
    }

    /// Diagram counts indexed by number of arcs, `0..=n/2`.
    pub fn histogram(&self, n: usize, k: usize, mode: Mode) -> Result<Vec<u64>> {
        let mut hist = vec![0u64; n / 2 + 1];
        self.visit(n, k, mode, |arcs| hist[arcs.len()] += 1)?;
        Ok(hist)
    }
}

fn backtrack<F>(
    v: usize,
    n: usize,
    k: usize,
    mode: Mode,
    used: &mut [bool],
    arcs: &mut Vec<(usize, usize)>,
    visit: &mut F,
) where
    F: FnMut(&[(usize, usize)]),
{
    let Some(v) = (v..=n).find(|&u| !used[u]) else {
        visit(arcs);
        return;
    };
    let min_len = match mode {
        Mode::Structures => {
            backtrack(v + 1, n, k, mode, used, arcs, visit);
            2
        }
        Mode::Matchings => 1,
    };
    for j in v + min_len..=n {
        if used[j] {
            continue;
        }
        arcs.push((v, j));
        // adding an arc never lowers the crossing number, so prune here
        if max_mutual_crossing(arcs) < k {
            used[v] = true;
            used[j] = true;
            backtrack(v + 1, n, k, mode, used, arcs, visit);
            used[v] = false;
            used[j] = false;
        }
        arcs.pop();
    }
}

/// All k-noncrossing structures on `n` points (default cap).
pub fn enumerate_structures(n: usize, k: usize) -> Result<Vec<Diagram>> {
    Oracle::default().enumerate(n, k, Mode::Structures)
}

/// Structure counts by number of arcs (default cap).
pub fn histogram_by_arcs(n: usize, k: usize) -> Result<Vec<u64>> {
    Oracle::default().histogram(n, k, Mode::Structures)
}

/// Number of k-noncrossing perfect matchings on `n` points (default cap).
pub fn count_matchings(n: usize, k: usize) -> Result<u64> {
    Ok(Oracle::default()
        .histogram(n, k, Mode::Matchings)?
        .iter()
        .sum())
}
