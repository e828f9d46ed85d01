//! Closed walks in the Weyl chamber, counted as oscillating tableaux.
//!
//! A perfect matching on `2m` points is k-noncrossing exactly when its
//! oscillating tableau (a sequence of shapes from the empty shape back to the
//! empty shape, each step adding or removing one box) never has `k` or more
//! rows. Writing a shape `λ` with at most `k - 1` rows as
//! `x_i = λ_i + k - i`, the tableaux become lattice walks with unit steps
//! confined to `x_1 > x_2 > ... > x_{k-1} > 0`.

use std::collections::HashMap;

use rug::Integer;

type Shape = Vec<u32>;

/// Number of closed walks of every even length `2m`, `m = 0..=max_m`, for
/// shapes with at most `rows` rows. Entry `m` equals `f_{rows+1}(2m, 0)`.
pub fn closed_walk_counts(rows: usize, max_m: usize) -> Vec<Integer> {
    assert!(rows >= 1, "need at least one row");
    let horizon = 2 * max_m;
    let mut counts = vec![Integer::from(1)];
    let mut layer: HashMap<Shape, Integer> = HashMap::new();
    layer.insert(vec![0; rows], Integer::from(1));

    for step in 1..=horizon {
        // a walk that must close by `horizon` can never exceed this size
        let budget = (horizon - step) as u32;
        let mut next: HashMap<Shape, Integer> = HashMap::with_capacity(layer.len() * 2);
        for (shape, count) in &layer {
            let size: u32 = shape.iter().sum();
            for i in 0..rows {
                if size < budget && (i == 0 || shape[i - 1] > shape[i]) {
                    let mut grown = shape.clone();
                    grown[i] += 1;
                    *next.entry(grown).or_default() += count;
                }
                if shape[i] > 0 && (i + 1 == rows || shape[i + 1] < shape[i]) {
                    let mut shrunk = shape.clone();
                    shrunk[i] -= 1;
                    *next.entry(shrunk).or_default() += count;
                }
            }
        }
        layer = next;
        if step % 2 == 0 {
            let closed = layer.get(&vec![0; rows]).cloned().unwrap_or_default();
            counts.push(closed);
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_row_gives_catalan() {
        let got: Vec<u64> = closed_walk_counts(1, 8)
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect();
        assert_eq!(got, [1, 1, 2, 5, 14, 42, 132, 429, 1430]);
    }

    #[test]
    fn two_rows_small_values() {
        // C_{m+2} C_m - C_{m+1}^2 for m = 0..5
        let got: Vec<u64> = closed_walk_counts(2, 5)
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect();
        assert_eq!(got, [1, 1, 3, 14, 84, 594]);
    }

    #[test]
    fn enough_rows_counts_every_matching() {
        // (2m-1)!! once rows >= m
        let got: Vec<u64> = closed_walk_counts(4, 4)
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect();
        assert_eq!(got, [1, 1, 3, 15, 105]);
    }
}
