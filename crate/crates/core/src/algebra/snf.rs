//! Smith normal form over `Z` with tracking of the generator change.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Result of diagonalizing a relation matrix `M` (rows are relations).
///
/// `gens[i]` expresses the `i`-th new generator in the old basis, so
/// `Z^c / rowspace(M)` is `(+) Z/diag[i]` with `gens[i]` generating the
/// `i`-th summand.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub gens: Vec<Vec<BigInt>>,
}

pub fn smith(m: &[Vec<BigInt>], cols: usize) -> Smith {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    // W = V^{-1}; a column op `col_x += t col_y` on `a` is `row_y -= t row_x` on W
    let mut w: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        swap_cols(&mut a, t, bj);
        w.swap(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                // col_j += (-q) col_t  =>  row_t(W) += q row_j(W)
                for k in 0..cols {
                    let v = &q * &w[j][k];
                    w[t][k] += v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest nonzero of row/column t onto the diagonal
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                } else if best.1 != t {
                    swap_cols(&mut a, t, best.1);
                    w.swap(t, best.1);
                }
                continue;
            }
            // divisibility: fold an offending row into row t and repeat
            let piv = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for j in t..cols {
                a[t][j] = -a[t][j].clone();
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    // free part: remaining generators have diagonal 0
    while diag.len() < cols {
        diag.push(BigInt::zero());
    }
    Smith { diag, gens: w }
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x == y {
        return;
    }
    for row in a.iter_mut() {
        row.swap(x, y);
    }
}
