//! Fraction-free exact rank.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank of an integer matrix by Bareiss elimination.
///
/// All intermediate entries stay integral (each is a minor of the input),
/// so the result is exact without rational arithmetic.
pub fn exact_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev_pivot = BigInt::from(1);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for c in col + 1..ncols {
                row[c] = (&pivot * &row[c] - &factor * &pivot_row[c]) / &prev_pivot;
            }
            row[col] = BigInt::zero();
        }
        // Columns left of `col` in rows below the pivot are already zero;
        // the remaining ones in the pivot row never get read again.
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}

/// Convenience for small-integer matrices.
pub fn exact_rank_i64(rows: &[Vec<i64>]) -> usize {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    exact_rank(&big)
}
