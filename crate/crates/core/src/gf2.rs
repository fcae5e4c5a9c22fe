//! Dense linear systems over GF(2).

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<bool>),
    Inconsistent,
    Underdetermined { rank: usize },
}

/// Solve `A w = b`; `rows[i]` holds row `i` of `A`.
pub fn solve(n_vars: usize, rows: &[Vec<bool>], rhs: &[bool]) -> Solution {
    let words = n_vars.div_ceil(64).max(1);
    let mut m: Vec<(Vec<u64>, bool)> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut bits = vec![0u64; words];
            for (j, &x) in r.iter().enumerate() {
                if x {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            (bits, b)
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n_vars {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (r..m.len()).find(|&i| m[i].0[w] & bit != 0) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row.0[w] & bit != 0 {
                for (a, b) in row.0.iter_mut().zip(&pivot.0) {
                    *a ^= b;
                }
                row.1 ^= pivot.1;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|(_, b)| *b) {
        return Solution::Inconsistent;
    }
    if r < n_vars {
        return Solution::Underdetermined { rank: r };
    }
    let mut x = vec![false; n_vars];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i].1;
    }
    Solution::Unique(x)
}
