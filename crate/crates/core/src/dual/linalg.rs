//! Exact Gaussian elimination.

use crate::Scalar;

/// Row-reduces `rows` in place and returns the rank.
fn eliminate<S: Scalar>(rows: &mut [Vec<S>], cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = S::one() / rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..rows[r].len() {
                let delta = factor.clone() * rows[rank][c].clone();
                rows[r][c] = rows[r][c].clone() - delta;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank<S: Scalar>(mut rows: Vec<Vec<S>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    eliminate(&mut rows, cols)
}

/// Solves the square system `a · x = b`; `None` if `a` is singular.
pub fn solve<S: Scalar>(a: Vec<Vec<S>>, b: Vec<S>) -> Option<Vec<S>> {
    let n = a.len();
    let mut rows: Vec<Vec<S>> = a
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs);
            row
        })
        .collect();
    if eliminate(&mut rows, n) < n {
        return None;
    }
    Some(
        rows.into_iter()
            .map(|mut r| r.pop().expect("augmented column"))
            .collect(),
    )
}
