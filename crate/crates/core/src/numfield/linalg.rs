//! Rank over ℚ by fraction-exact Gaussian elimination.

use num_traits::Zero;

use super::{AlgebraicNumber, Rat};

/// Rank of a list of rational row vectors.
pub fn rational_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let cols = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            let pivot_row = m[rank].clone();
            for (x, y) in m[r][col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                *x -= &factor * y;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Dimension of the ℚ-span of `values`. Values are ℚ-independent iff the
/// result equals `values.len()`.
pub fn q_linear_rank(values: &[AlgebraicNumber]) -> usize {
    let rows: Vec<Vec<Rat>> = values.iter().map(|v| v.coeffs().to_vec()).collect();
    rational_rank(&rows)
}
