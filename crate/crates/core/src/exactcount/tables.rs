//! Memoized Catalan numbers and Pascal's triangle.

use rug::Integer;

/// Catalan numbers `C_0..=C_max`, built with `C_{m+1} = C_m * 2(2m+1) / (m+2)`.
#[derive(Debug, Clone)]
pub struct CatalanTable {
    values: Vec<Integer>,
}

impl CatalanTable {
    pub fn up_to(max: usize) -> Self {
        let mut values = Vec::with_capacity(max + 1);
        values.push(Integer::from(1));
        for m in 0..max {
            let mut next = Integer::from(&values[m] * (2 * (2 * m as u64 + 1)));
            // exact: (m+2) always divides C_m * 2(2m+1)
            next.div_exact_u_mut(m as u32 + 2);
            values.push(next);
        }
        CatalanTable { values }
    }

    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, m: usize) -> &Integer {
        &self.values[m]
    }
}

/// Rows `0..=max_n` of Pascal's triangle, filled by addition only.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<Integer>>,
}

impl BinomialTable {
    pub fn up_to(max_n: usize) -> Self {
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![Integer::from(1)]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(Integer::from(1));
            for j in 1..n {
                row.push(Integer::from(&prev[j - 1] + &prev[j]));
            }
            row.push(Integer::from(1));
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `binom(n, j)`, zero when `j > n`.
    pub fn get(&self, n: usize, j: usize) -> Integer {
        if j > n {
            Integer::new()
        } else {
            self.rows[n][j].clone()
        }
    }

    pub(crate) fn get_ref(&self, n: usize, j: usize) -> &Integer {
        &self.rows[n][j]
    }
}
