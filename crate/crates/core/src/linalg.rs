//! Dense exact row reduction.

use crate::scalar::Coefficient;

/// Reduced row echelon form of `rows`, in place. Returns the pivot column
/// of each nonzero row, in order; zero rows are removed.
pub fn row_reduce<C: Coefficient>(rows: &mut Vec<Vec<C>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = C::one() / rows[rank][col].clone();
        for entry in rows[rank].iter_mut() {
            *entry = entry.clone() * inv.clone();
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (entry, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *entry = entry.clone() - factor.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

pub fn rank<C: Coefficient>(rows: &[Vec<C>]) -> usize {
    let mut rows = rows.to_vec();
    row_reduce(&mut rows).len()
}
